"""Statistical checks and oracles for urn simulations."""
