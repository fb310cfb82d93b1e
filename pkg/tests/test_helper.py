"""Unit tests for the configuration helpers and the run logger."""

import re
from pathlib import Path

import pytest

from src.algebra.scalars import Poly
from src.cumulants.functional import CONSTANT_SYMBOL, MOMENT_PREFIX, GenericFunctional
from src.partitions.partition import BLOCK_SEPARATOR, ELEMENT_SEPARATOR, format_partition, parse_partition
from src.utilis.helper import check_param, get_constant, get_param, get_param_info, job_id, load_config, resolve_param
from src.utilis.logger import SICumulantsLogger


def test_symbols_match_the_constants_file() -> None:
	"""Use to test that the code uses the text symbols recorded in the constants file."""
	assert get_constant("symbols", "constant") == CONSTANT_SYMBOL
	assert get_constant("symbols", "moment_prefix") == MOMENT_PREFIX
	assert get_constant("symbols", "block_separator") == BLOCK_SEPARATOR
	assert get_constant("symbols", "element_separator") == ELEMENT_SEPARATOR
	assert (CONSTANT_SYMBOL, MOMENT_PREFIX, BLOCK_SEPARATOR, ELEMENT_SEPARATOR) == ("1", "m_", "/", ",")
	assert format_partition(parse_partition("1,3/2")) == "1,3/2"
	assert GenericFunctional(("x",)).moment(("x", "1", "x")) == Poly.variable("m_xx")


def test_parameters_carry_limits() -> None:
	"""Use to test the value/min/max layout of the parameters file."""
	assert get_param("enumeration", "max_n") == 13
	info = get_param_info("poset", "max_elements")
	assert info["min"] <= info["value"] <= info["max"]
	assert check_param("enumeration", "max_n", 10) == 10
	with pytest.raises(ValueError, match="outside the allowed range"):
		check_param("enumeration", "max_n", 17)


def test_unknown_keys_raise() -> None:
	"""Use to test the KeyError messages for unknown sections, parameters and constants."""
	with pytest.raises(KeyError, match="Section"):
		get_param("nothing", "max_n")
	with pytest.raises(KeyError, match="Parameter"):
		get_param("enumeration", "nothing")
	with pytest.raises(KeyError, match="Constant"):
		get_constant("reference", "nothing")
	with pytest.raises(FileNotFoundError, match="Config file not found"):
		load_config("does/not/exist.yml")


def test_resolve_param_precedence(monkeypatch: pytest.MonkeyPatch) -> None:
	"""Use to test flag over environment over file."""
	monkeypatch.delenv("SI_MAX_N", raising=False)
	assert resolve_param("enumeration", "max_n", None, "SI_MAX_N") == 13
	monkeypatch.setenv("SI_MAX_N", "9")
	assert resolve_param("enumeration", "max_n", None, "SI_MAX_N") == 9
	assert resolve_param("enumeration", "max_n", 5, "SI_MAX_N") == 5
	monkeypatch.setenv("SI_MAX_N", "many")
	with pytest.raises(ValueError, match="must be an integer"):
		resolve_param("enumeration", "max_n", None, "SI_MAX_N")


def test_job_id_format() -> None:
	"""Use to test that job ids are a UTC timestamp and a short random suffix."""
	assert re.fullmatch(r"\d{8}T\d{6}Z_[0-9a-f]{8}", job_id())
	assert job_id("20240101T000000Z").startswith("20240101T000000Z_")


def test_logger_context_manager(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
	"""Use to test that the run log is written and closed for a non-cloud environment."""
	monkeypatch.chdir(tmp_path)
	manager = SICumulantsLogger(execution_env="test", bucket_name=None, folder_name="unit", console=False)
	with manager as logger:
		logger.info("hello")
	assert manager.log_path == Path("logs") / "unit" / "console.log"
	assert "hello" in (tmp_path / manager.log_path).read_text(encoding="utf-8")
	assert not logger.handlers
	with pytest.raises(ValueError, match="Unknown log level"):
		SICumulantsLogger("test", None, "unit", level="loud")
