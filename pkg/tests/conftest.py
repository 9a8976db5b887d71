import os
import tempfile

import pytest

# the package logger opens its file handler at import time
os.environ.setdefault("CONIC_HEAT_LOG_DIR", tempfile.mkdtemp(prefix="conic-heat-logs-"))

from conic_heat.spectral import Spectrum, flat_cone_spectrum, spindle_spectrum  # noqa: E402


@pytest.fixture(scope="session")
def sphere_spectrum() -> Spectrum:
    return spindle_spectrum(1.0, 3000.0)


@pytest.fixture(scope="session")
def spindle_half_spectrum() -> Spectrum:
    return spindle_spectrum(0.5, 3000.0)


@pytest.fixture(scope="session")
def flat_cone_half_spectrum() -> Spectrum:
    return flat_cone_spectrum(0.5, 10000.0)
