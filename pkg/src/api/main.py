"""FastAPI application serving pulse schedules and Gauss sum factorization."""
import sys
from contextlib import asynccontextmanager
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from fastapi import FastAPI  # noqa: E402
from fastapi.responses import Response  # noqa: E402

from src import __version__  # noqa: E402
from src.api.monitoring import get_metrics, get_metrics_content_type, publish_defaults  # noqa: E402
from src.api.router_experiment import router  # noqa: E402
from src.api.schemas import HealthResponse  # noqa: E402
from src.utils.config import (  # noqa: E402
    DEFAULT_L_MAX,
    DEFAULT_L_MIN,
    DEFAULT_M,
    DEFAULT_N,
    DEFAULT_T_US,
    DEFAULT_TAU_PI_US,
    DEFAULT_THRESHOLD,
)
from src.utils.logging_utils import setup_logging  # noqa: E402

logger = setup_logging(name=__name__)

SERVICE_NAME = "gaussfactor API"

REQUEST_DEFAULTS = {
    "N": DEFAULT_N,
    "M": DEFAULT_M,
    "l_min": DEFAULT_L_MIN,
    "l_max": DEFAULT_L_MAX,
    "threshold": round(DEFAULT_THRESHOLD, 6),
    "T_us": DEFAULT_T_US,
    "tau_pi_us": DEFAULT_TAU_PI_US,
}


@asynccontextmanager
async def lifespan(app: FastAPI):
    publish_defaults(REQUEST_DEFAULTS)
    logger.info(
        f"gaussfactor service v{__version__} up "
        f"(N={DEFAULT_N}, M={DEFAULT_M}, l={DEFAULT_L_MIN}..{DEFAULT_L_MAX})"
    )
    yield
    logger.info("gaussfactor service stopped")


app = FastAPI(
    title=SERVICE_NAME,
    description="Pulse schedules and Gauss sum factorization for a cold-atom Ramsey interferometer",
    version=__version__,
    lifespan=lifespan,
)
app.include_router(router)


@app.get("/health", response_model=HealthResponse)
async def health():
    return HealthResponse(status="healthy", version=__version__)


@app.get("/metrics")
async def metrics():
    """Prometheus exposition, including the request defaults."""
    return Response(content=get_metrics(), media_type=get_metrics_content_type())


@app.get("/")
async def root():
    """Service map and the defaults filled into partial requests."""
    return {
        "service": SERVICE_NAME,
        "version": __version__,
        "endpoints": {
            "schedule": "/schedule",
            "factor": "/factor",
            "health": "/health",
            "metrics": "/metrics",
            "docs": "/docs",
        },
        "defaults": REQUEST_DEFAULTS,
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
