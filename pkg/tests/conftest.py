import pytest

from pdakit import _kernels


@pytest.fixture(params=_kernels.available_backends())
def kernel_backend(request):
    """Run a test under every built kernel backend."""
    previous = _kernels.backend_name()
    _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous)
