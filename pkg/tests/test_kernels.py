import numpy as np
import pytest

from bohrkit import _fallback
from bohrkit._backend import BACKEND

if BACKEND == "cython":
    from bohrkit import _kernels as compiled
else:
    compiled = None
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _rand(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@needs_compiled
@pytest.mark.parametrize("n", [0, 1, 7, 64, 257])
def test_backends_agree(n):
    rng = np.random.default_rng(n)
    a, b = _rand(rng, n + 1), _rand(rng, n // 2 + 1)
    phi = _rand(rng, n + 1) * 0.3
    phi[0] = 0
    den = np.r_[1.0, 0.4 * _rand(rng, 4)]
    z = 0.7 * np.exp(1j * rng.random(11) * 6)
    tol = dict(rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(compiled.cauchy_product(a, b, n), _fallback.cauchy_product(a, b, n), **tol)
    np.testing.assert_allclose(compiled.compose_horner(a[:5], phi), _fallback.compose_horner(a[:5], phi), **tol)
    np.testing.assert_allclose(compiled.reciprocal(den), _fallback.reciprocal(den), **tol)
    assert compiled.majorant_sum(a, 0.6) == pytest.approx(_fallback.majorant_sum(a, 0.6), rel=1e-14)
    np.testing.assert_allclose(compiled.polyval_many(a, z), _fallback.polyval_many(a, z), **tol)
    np.testing.assert_allclose(
        compiled.rational_series(a[:3], den, n), _fallback.rational_series(a[:3], den, n), **tol
    )


@needs_compiled
def test_rational_series_inverts_denominator():
    den = np.array([2.0, -1.0, 0.25], dtype=np.complex128)
    for mod in (compiled, _fallback):
        s = mod.rational_series(den, den, 12)
        np.testing.assert_allclose(s, np.r_[1.0, np.zeros(12)], atol=1e-15)


def test_fallback_selected_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['bohrkit._kernels'] = None\n"
        "import bohrkit, bohrkit.series as ps\n"
        "print(bohrkit.BACKEND, ps.majorant_eval(ps.polynomial([1, 2]), 0.5).upper)"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.split() == ["numpy", "2.0"]
