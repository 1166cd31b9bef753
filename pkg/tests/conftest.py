"""Shared fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from neutrino_lgi.oscillation import OscillationParams

from . import PROJECT_ROOT


@pytest.fixture
def reference_params() -> OscillationParams:
    return OscillationParams.reference()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def project_cwd(monkeypatch: pytest.MonkeyPatch):
    """Run from the repository root so config/default_config.json is found."""
    monkeypatch.chdir(PROJECT_ROOT)
    for name in ("NEUTRINO_LGI_CONFIG", "NEUTRINO_LGI_WORKERS", "NEUTRINO_LGI_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    yield PROJECT_ROOT


def random_params(rng: np.random.Generator) -> OscillationParams:
    """A parameter point inside the small-parameter regime."""
    dm31 = rng.uniform(1.5e-3, 3.5e-3) * rng.choice([-1.0, 1.0])
    alpha = rng.uniform(0.0, 0.05)
    return OscillationParams(
        dm21_sq=alpha * abs(dm31),
        dm31_sq=dm31,
        theta12=rng.uniform(0.0, np.pi / 2),
        theta13=rng.uniform(0.0, 0.2),
        theta23=rng.uniform(0.0, np.pi / 2),
        delta_cp=rng.uniform(0.0, 2 * np.pi),
        energy=rng.uniform(0.5, 10.0),
        potential=rng.uniform(0.0, 3.0e-13),
    )


def any_params(rng: np.random.Generator) -> OscillationParams:
    """A parameter point anywhere in the physical domain."""
    return OscillationParams(
        dm21_sq=rng.uniform(1e-6, 1e-3),
        dm31_sq=rng.uniform(1e-4, 1e-2) * rng.choice([-1.0, 1.0]),
        theta12=rng.uniform(0.0, np.pi / 2),
        theta13=rng.uniform(0.0, np.pi / 2),
        theta23=rng.uniform(0.0, np.pi / 2),
        delta_cp=rng.uniform(0.0, 2 * np.pi),
        energy=rng.uniform(0.05, 20.0),
        potential=rng.uniform(0.0, 1.0e-12),
    )
