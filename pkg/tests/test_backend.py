"""Backend selection and compiled/pure-Python kernel equivalence."""

import os
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor

import pytest
from mpmath import mpf

from sqcos import _kernel_py, active_backend, backend, compiled_available
from sqcos.bounds import geometric_grid
from sqcos.series import eval_series

needs_compiled = pytest.mark.skipif(not compiled_available(),
                                    reason="compiled kernel not built")


def test_active_backend_reported():
    assert active_backend() in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("n,alt", [(0, True), (0, False), (7, True),
                                   (7, False), (20, True)])
def test_cos_kernels_bit_identical(n, alt):
    # both backends round every value-path operation to nearest-even at
    # the same precision, so sums, tails and bookkeeping match exactly
    tol = mpf("1e-45")
    for x in geometric_grid(mpf("1e-3"), mpf(800), 25):
        py = _kernel_py.cos_series(n, x, alt, 420, tol, 10000)
        cy = backend.cos_series(n, x, alt, 420, tol, 10000)
        assert py.total == cy.total
        assert py.tail == cy.tail
        assert (py.max_exp, py.terms, py.ops, py.converged) == \
            (cy.max_exp, cy.terms, cy.ops, cy.converged)


@needs_compiled
@pytest.mark.parametrize("n", [0, 1, 8, 13])
def test_sinc_kernels_bit_identical(n):
    tol = mpf("1e-45")
    for x in geometric_grid(mpf("1e-3"), mpf(60), 25):
        py = _kernel_py.sinc_series(n, x, 480, tol, 10000)
        cy = backend.sinc_series(n, x, 480, tol, 10000)
        assert py.total == cy.total
        assert py.tail == cy.tail
        assert (py.max_exp, py.terms, py.ops, py.converged) == \
            (cy.max_exp, cy.terms, cy.ops, cy.converged)


@needs_compiled
def test_python_backend_forced_in_subprocess():
    code = (
        "import sqcos, mpmath\n"
        "assert sqcos.active_backend() == 'python'\n"
        "v = sqcos.eval_series(2, -1)\n"
        "print(mpmath.nstr(v.value, 30))\n"
    )
    env = dict(os.environ, SQCOS_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    here = eval_series(2, -1)
    import mpmath
    assert out.stdout.strip() == mpmath.nstr(here.value, 30)


def test_unknown_backend_env_rejected():
    code = "import sqcos"
    env = dict(os.environ, SQCOS_BACKEND="sparkles")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.returncode != 0
    assert "SQCOS_BACKEND" in out.stderr


def test_concurrent_evaluations_match_sequential():
    points = [mpf(p) for p in ("-7.5", "-1", "0.125", "3", "42", "511")]
    sequential = [eval_series(4, x) for x in points]
    with ThreadPoolExecutor(max_workers=6) as pool:
        parallel = list(pool.map(lambda x: eval_series(4, x), points))
    for s, p in zip(sequential, parallel):
        assert s.value == p.value
        assert s.abs_error == p.abs_error
