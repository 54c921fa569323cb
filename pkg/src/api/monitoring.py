"""Prometheus metrics for the gaussfactor service."""
from prometheus_client import CONTENT_TYPE_LATEST, Counter, Gauge, Histogram, Info, generate_latest

request_count = Counter(
    "gaussfactor_requests_total",
    "Requests by endpoint and outcome (ok, rejected, error)",
    ["endpoint", "status"]
)

request_latency = Histogram(
    "gaussfactor_request_duration_seconds",
    "Request latency",
    ["endpoint"],
    buckets=[0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0]
)

trials_evaluated = Counter(
    "gaussfactor_trials_total",
    "Trial factors evaluated by /factor"
)

active_requests = Gauge(
    "gaussfactor_active_requests",
    "Requests in flight"
)

service_defaults = Info(
    "gaussfactor_defaults",
    "Defaults applied to requests that omit a field"
)


def publish_defaults(defaults: dict[str, object]) -> None:
    """Expose the request defaults as label values."""
    service_defaults.info({key: str(value) for key, value in defaults.items()})


def get_metrics():
    """Get Prometheus metrics."""
    return generate_latest()


def get_metrics_content_type():
    """Get Prometheus metrics content type."""
    return CONTENT_TYPE_LATEST
