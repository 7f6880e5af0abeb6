"""Baire (longest common prefix) distance over digit codes.

Distances are carried as the integer prefix length; the real value
``B ** -lcp`` is derived on demand and never compared.
"""

from __future__ import annotations

from dataclasses import dataclass

from src.encoding.codec import DigitCode
from src.errors import BaseMismatchError


@dataclass(frozen=True)
class BaireProximity:
    """Exact Baire distance: ``lcp`` digits shared, out of ``cap`` comparable."""

    lcp: int
    base: int
    cap: int

    def __post_init__(self) -> None:
        if not 0 <= self.lcp <= self.cap:
            raise ValueError(f"lcp {self.lcp} outside [0, {self.cap}]")

    @property
    def value(self) -> float:
        return 1.0 / self.base ** self.lcp

    def as_dict(self) -> dict[str, float | int]:
        return {"lcp": self.lcp, "distance": self.value}


def _check_bases(*codes: DigitCode) -> None:
    bases = {code.base for code in codes}
    if len(bases) > 1:
        raise BaseMismatchError(f"codes mix bases {sorted(bases)}")


def lcp(a: DigitCode, b: DigitCode) -> int:
    """Length of the longest common digit prefix of ``a`` and ``b``."""
    _check_bases(a, b)
    length = 0
    for x, y in zip(a.digits, b.digits):
        if x != y:
            break
        length += 1
    return length


def baire_distance(a: DigitCode, b: DigitCode) -> BaireProximity:
    """Baire distance, comparing up to the shorter code's precision."""
    return BaireProximity(lcp=lcp(a, b), base=a.base, cap=min(a.precision, b.precision))


def check_ultrametric_triplet(a: DigitCode, b: DigitCode, c: DigitCode) -> bool:
    """Strong triangle inequality d(a,c) <= max(d(a,b), d(b,c)) in lcp form."""
    _check_bases(a, b, c)
    return lcp(a, c) >= min(lcp(a, b), lcp(b, c))


def check_isosceles(a: DigitCode, b: DigitCode, c: DigitCode) -> bool:
    """True when the two largest distances of the triplet are equal."""
    _check_bases(a, b, c)
    smallest, middle, _ = sorted((lcp(a, b), lcp(b, c), lcp(a, c)))
    return smallest == middle
