"""Test CLI argument parsing and request resolution."""
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.experiments.cli import (  # noqa: E402
    RunRequest,
    UsageError,
    build_parser,
    default_output,
    execute,
    resolve_request,
)
from src.simulation.beam_physics import PhysicsConfig, dump_physics_config, ideal_limit_config  # noqa: E402
from src.utils.config import ARTIFACTS_DIR, CONFIG_ENV_VAR, DEFAULT_THRESHOLD  # noqa: E402
from src.utils.errors import DomainError  # noqa: E402


def request_for(argv: list[str]) -> RunRequest:
    return resolve_request(build_parser().parse_args(argv))


@pytest.mark.unit
@pytest.mark.parametrize("argv", [
    [],
    ["fold"],
    ["factor", "--bogus"],
    ["factor", "--n", "abc"],
    ["factor", "--physics", "laser"],
    ["replay"],
])
def test_parser_errors_raise_usage_error(argv):
    with pytest.raises(UsageError):
        build_parser().parse_args(argv)


@pytest.mark.unit
def test_defaults(canonical_n, monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    request = request_for(["factor"])
    assert request.n == canonical_n
    assert request.m_max == 14
    assert (request.l_min, request.l_max) == (2, 200)
    assert request.threshold == DEFAULT_THRESHOLD
    assert request.physics is None
    assert request.timing.T_us == 100.0
    assert request.factors == [3, 7, 151]


@pytest.mark.unit
def test_beam_physics_resolution(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    assert request_for(["signal", "--physics", "beam"]).physics == PhysicsConfig()
    seeded = request_for(["signal", "--physics", "beam", "--seed", "9"])
    assert seeded.physics.seed == 9


@pytest.mark.unit
def test_config_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "small_cloud.conf"
    path.write_text(dump_physics_config(PhysicsConfig(cloud_diameter_mm=2.0)))
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert request_for(["signal", "--physics", "beam"]).physics.cloud_diameter_mm == 2.0
    # --config wins over the environment
    other = tmp_path / "other.conf"
    other.write_text("cloud_diameter_mm = 3.0\n")
    request = request_for(["signal", "--physics", "beam", "--config", str(other)])
    assert request.physics.cloud_diameter_mm == 3.0


@pytest.mark.unit
def test_adapt_compare_ideal_uses_axis_limit():
    assert request_for(["adapt-compare"]).physics == ideal_limit_config()


@pytest.mark.unit
def test_invalid_values_are_domain_errors():
    with pytest.raises(DomainError):
        request_for(["signal", "--l", "0"])
    with pytest.raises(DomainError):
        request_for(["factor", "--threshold", "1.5"])
    with pytest.raises(DomainError):
        request_for(["schedule", "--T-us", "-1"])


@pytest.mark.unit
def test_default_output_paths():
    assert default_output("factor") == ARTIFACTS_DIR / "factor.csv"
    assert default_output("schedule") == ARTIFACTS_DIR / "schedule.txt"


@pytest.mark.unit
def test_execute_factor_summary():
    text, summary = execute(request_for(["factor", "--n", "15", "--m-max", "3", "--l-max", "3"]))
    assert text.splitlines()[0] == "l,C,abs_C,is_divisor,classified"
    assert summary == {"rows": 2, "claimed_factors": [3]}


@pytest.mark.unit
def test_execute_schedule_summary(canonical_n):
    text, summary = execute(request_for(["schedule", "--l", "151", "--m", "2"]))
    assert summary == {"pulses": 5}
    assert text.startswith(f"# gaussfactor-schedule N={canonical_n} l=151 m=2")
