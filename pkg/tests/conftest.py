import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from snfkit import kernels  # noqa: E402


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run a test once per available kernel backend."""
    before = kernels.BACKEND
    kernels.use(request.param)
    yield request.param
    kernels.use(before)
