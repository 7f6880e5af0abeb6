"""Tests for settings and logging configuration."""

import logging
import sys
from pathlib import Path

import pytest

from src.configs.logging_config import ROOT_LOGGER_NAME, configure_logging, get_logger
from src.configs.settings import Config, RunConfig, _env_int
from src.errors import ParameterError


class TestEnvironment:
    def test_env_int_reads_variable(self, monkeypatch):
        monkeypatch.setenv("MADIC_TEST_VALUE", "12")
        assert _env_int("MADIC_TEST_VALUE", 3) == 12

    def test_env_int_falls_back_when_blank(self, monkeypatch):
        monkeypatch.setenv("MADIC_TEST_VALUE", " ")
        assert _env_int("MADIC_TEST_VALUE", 3) == 3

    def test_env_int_rejects_garbage(self, monkeypatch):
        monkeypatch.setenv("MADIC_TEST_VALUE", "ten")
        with pytest.raises(ParameterError):
            _env_int("MADIC_TEST_VALUE", 3)

    def test_base_bounds(self):
        assert (Config.MIN_BASE, Config.MAX_BASE) == (2, 36)


class TestRunConfig:
    def test_default_paths_follow_input(self):
        config = RunConfig(input_path=Path("data/points.csv"))
        assert config.resolved_index_path == Path("data/points.madic")
        assert config.resolved_spec_path == Path("data/points.proj")

    def test_spec_follows_explicit_index(self):
        config = RunConfig(input_path=Path("points.csv"), index_path=Path("out/idx.madic"))
        assert config.resolved_spec_path == Path("out/idx.proj")

    @pytest.mark.parametrize(
        "overrides",
        [{"precision": 0}, {"base": 1}, {"base": 37}, {"axis_count": 0}],
    )
    def test_invalid_values(self, overrides):
        with pytest.raises(ParameterError):
            RunConfig(input_path=Path("x.csv"), **overrides)

    def test_frozen(self):
        config = RunConfig(input_path=Path("x.csv"))
        with pytest.raises(AttributeError):
            config.base = 2


class TestLogging:
    def test_child_logger_namespace(self):
        assert get_logger("src.main").name == f"{ROOT_LOGGER_NAME}.src.main"

    def test_console_goes_to_stderr_once(self):
        configure_logging(level="DEBUG")
        configure_logging(level="DEBUG")
        logger = logging.getLogger(ROOT_LOGGER_NAME)
        assert len(logger.handlers) == 1
        assert logger.handlers[0].stream is sys.stderr

    def test_file_handler(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        configure_logging(level=logging.INFO, log_file=log_file, log_to_console=False)
        get_logger("test").info("hello file")
        for handler in logging.getLogger(ROOT_LOGGER_NAME).handlers:
            handler.flush()
        assert "hello file" in log_file.read_text(encoding="utf-8")
