"""Shared pytest configuration."""


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large Monte Carlo checks; deselect with -m 'not slow'")
