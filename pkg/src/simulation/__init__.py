"""Two-level pulse simulation and the Gaussian-beam ensemble model."""
