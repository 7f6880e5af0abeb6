"""m-adic digit encoding of scalars in [0, 1].

Values are scaled to an integer with exact decimal arithmetic and then split
into digits by repeated division, so no digit depends on float drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from src.configs.logging_config import get_logger
from src.configs.schema import char_to_digit, digit_to_char
from src.configs.settings import Config
from src.errors import DomainError, OutOfBoundsError

logger = get_logger(__name__)


def _check_base(base: int) -> None:
    if not Config.MIN_BASE <= base <= Config.MAX_BASE:
        raise DomainError(
            f"base must lie in [{Config.MIN_BASE}, {Config.MAX_BASE}], got {base}"
        )


@dataclass(frozen=True)
class DigitCode:
    """An observation's base-B digits, most significant first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if len(self.digits) < 1:
            raise DomainError("a digit code needs at least one digit")
        for digit in self.digits:
            if not 0 <= digit < self.base:
                raise DomainError(f"digit {digit} outside [0, {self.base})")

    @property
    def precision(self) -> int:
        return len(self.digits)

    def prefix(self, level: int) -> tuple[int, ...]:
        return self.digits[:level]

    def key(self, level: int | None = None) -> str:
        """Digit string of the first ``level`` digits, e.g. ``"347"``."""
        digits = self.digits if level is None else self.digits[:level]
        return "".join(digit_to_char(d) for d in digits)

    @classmethod
    def from_key(cls, text: str, base: int) -> "DigitCode":
        """Parse a digit string written by :meth:`key`."""
        digits = []
        for char in text:
            value = char_to_digit(char, base)
            if value is None:
                raise DomainError(f"character {char!r} is not a base-{base} digit")
            digits.append(value)
        return cls(base=base, digits=tuple(digits))

    def __str__(self) -> str:
        return self.key()


@dataclass(frozen=True)
class NormalizationBounds:
    """Affine bounds mapping ``[lo, hi]`` onto ``[0, 1]``."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise DomainError("normalization bounds must not be NaN")
        if self.lo > self.hi:
            raise DomainError(f"lo ({self.lo}) exceeds hi ({self.hi})")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @classmethod
    def fit(cls, values: Iterable[float]) -> "NormalizationBounds":
        values = [float(v) for v in values]
        if not values:
            raise DomainError("cannot fit bounds on zero values")
        return cls(lo=min(values), hi=max(values))

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def encode(value: float, base: int = Config.BASE, precision: int = Config.PRECISION) -> DigitCode:
    """
    Encode a value in [0, 1] as ``precision`` base-``base`` digits.

    The value is read through its shortest decimal representation, scaled by
    ``base ** precision`` exactly, rounded half away from zero and clamped to
    ``base ** precision - 1``.

    Raises
    ------
    DomainError
        If the value is NaN or outside [0, 1], or precision < 1.
    """
    _check_base(base)
    if precision < 1:
        raise DomainError(f"precision must be >= 1, got {precision}")
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise DomainError(f"value {value!r} outside [0, 1]")

    scale = base ** precision
    scaled = (Decimal(repr(value)) * scale).to_integral_value(rounding=ROUND_HALF_UP)
    integer = min(int(scaled), scale - 1)

    digits = [0] * precision
    for position in range(precision - 1, -1, -1):
        integer, digits[position] = divmod(integer, base)
    return DigitCode(base=base, digits=tuple(digits))


def encode_many(
    values: Iterable[float],
    base: int = Config.BASE,
    precision: int = Config.PRECISION,
) -> list[DigitCode]:
    return [encode(v, base, precision) for v in values]


def decode(code: DigitCode) -> float:
    """Return sum(d_i * B^-i), the left end of the code's finest bin."""
    integer = 0
    for digit in code.digits:
        integer = integer * code.base + digit
    return integer / code.base ** code.precision


def normalize(values: Sequence[float], bounds: NormalizationBounds) -> list[float]:
    """
    Map values affinely from ``[bounds.lo, bounds.hi]`` onto ``[0, 1]``.

    Degenerate bounds map every value to 0.

    Raises
    ------
    OutOfBoundsError
        If a value lies outside the bounds, which signals stale bounds.
    """
    result: list[float] = []
    span = bounds.hi - bounds.lo
    for raw in values:
        value = float(raw)
        if math.isnan(value) or not bounds.contains(value):
            raise OutOfBoundsError(
                f"value {value!r} outside bounds [{bounds.lo!r}, {bounds.hi!r}]"
            )
        if bounds.degenerate:
            result.append(0.0)
        else:
            result.append(min(1.0, max(0.0, (value - bounds.lo) / span)))
    return result


def truncate(code: DigitCode, new_precision: int) -> DigitCode:
    """
    Keep the first ``new_precision`` digits of ``code``.

    Raises
    ------
    DomainError
        If new_precision < 1 or exceeds the code's precision.
    """
    if not 1 <= new_precision <= code.precision:
        raise DomainError(
            f"cannot truncate precision {code.precision} code to {new_precision} digits"
        )
    return DigitCode(base=code.base, digits=code.digits[:new_precision])
