"""Dagster pipeline that regenerates every figure table into the artifacts directory."""
import sys
from pathlib import Path

from dagster import (
    AssetMaterialization,
    Config,
    MetadataValue,
    Output,
    job,
    op,
    repository,
)

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.experiments.cli import RunRequest, execute, write_outputs  # noqa: E402
from src.simulation.beam_physics import PhysicsConfig  # noqa: E402
from src.utils.config import (  # noqa: E402
    ARTIFACTS_DIR,
    DEFAULT_L_MAX,
    DEFAULT_L_MIN,
    DEFAULT_M,
    DEFAULT_N,
)
from src.utils.logging_utils import setup_logging  # noqa: E402

logger = setup_logging(name=__name__)


class FigureConfig(Config):
    """Pipeline configuration."""
    n: int = DEFAULT_N
    M: int = DEFAULT_M
    l_min: int = DEFAULT_L_MIN
    l_max: int = DEFAULT_L_MAX
    threads: int = 4
    output_dir: str = str(ARTIFACTS_DIR / "figures")


def _produce(context, name: str, request: RunRequest, output_dir: str):
    """Run one request, write CSV + manifest and materialize it."""
    out = Path(output_dir) / f"{name}.csv"
    text, summary = execute(request)
    manifest = write_outputs(request, text, summary, out)
    context.log.info(f"Wrote {out} ({summary})")
    yield AssetMaterialization(
        asset_key=name,
        metadata={
            "rows": MetadataValue.int(text.count("\n") - 1),
            "file_path": MetadataValue.path(str(out)),
            "manifest": MetadataValue.path(str(manifest)),
        },
    )


@op
def figure_settings(context, config: FigureConfig) -> dict:
    """Resolve shared settings."""
    context.log.info(f"Regenerating figure tables for N={config.n}, M={config.M}")
    return config.model_dump()


@op
def signal_traces(context, settings: dict):
    """Factor and non-factor traces, ideal and in the Gaussian beam."""
    physics = PhysicsConfig(adaptation="off")
    for l in (151, 150):
        for mode, config in (("ideal", None), ("beam", physics)):
            request = RunRequest(
                command="signal", n=settings["n"], l=l, m_max=settings["M"], physics=config
            )
            yield from _produce(context, f"signal_l{l}_{mode}", request, settings["output_dir"])
    yield Output({"status": "success"})


@op
def factorization_pattern(context, settings: dict):
    """|C| over the trial range."""
    request = RunRequest(
        command="factor",
        n=settings["n"],
        m_max=settings["M"],
        l_min=settings["l_min"],
        l_max=settings["l_max"],
        threads=settings["threads"],
    )
    yield from _produce(context, "factorization", request, settings["output_dir"])
    yield Output({"status": "success"})


@op
def contrast_curve(context, settings: dict):
    """Contrast versus truncation order."""
    request = RunRequest(
        command="contrast",
        n=settings["n"],
        m_max=settings["M"],
        l_min=settings["l_min"],
        l_max=settings["l_max"],
        threads=settings["threads"],
    )
    yield from _produce(context, "contrast", request, settings["output_dir"])
    yield Output({"status": "success"})


@op
def adaptation_comparison(context, settings: dict):
    """Mean factor signal with and without parabolic adaptation."""
    request = RunRequest(
        command="adapt-compare", n=settings["n"], m_max=settings["M"], physics=PhysicsConfig()
    )
    yield from _produce(context, "adaptation", request, settings["output_dir"])
    yield Output({"status": "success"})


@job
def figure_pipeline():
    """Regenerate all figure tables."""
    settings = figure_settings()
    signal_traces(settings)
    factorization_pattern(settings)
    contrast_curve(settings)
    adaptation_comparison(settings)


@repository
def gaussfactor_repository():
    """Dagster repository."""
    return [figure_pipeline]
