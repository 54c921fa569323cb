"""Figure runners, run manifests and the command-line interface."""
