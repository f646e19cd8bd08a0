"""Kernel backend selection: compiled MPFR core with pure-Python fallback.

The compiled extension (sqcos._kernel, Cython over libmpfr) is preferred
when importable; the mpmath kernels in sqcos._kernel_py are the fallback
and the reference. Both execute the same correctly-rounded operation
sequence, so a given call returns bit-identical results on either path.

Selection can be forced with the environment variable SQCOS_BACKEND:
"auto" (default), "compiled", or "python".
"""

from __future__ import annotations

import os

from mpmath import mp, mpf

from . import _kernel_py
from ._kernel_py import RawSum

try:
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

_MODE = os.environ.get("SQCOS_BACKEND", "auto").lower()
if _MODE not in ("auto", "compiled", "python"):
    raise RuntimeError(f"SQCOS_BACKEND must be auto, compiled or python, not {_MODE!r}")
if _MODE == "compiled" and _compiled is None:
    raise RuntimeError("SQCOS_BACKEND=compiled but the sqcos._kernel extension is not built")

_USE_COMPILED = _compiled is not None and _MODE != "python"

# unsigned-long safety caps for the compiled term-recurrence multipliers
_COS_MAX_TERMS_COMPILED = 1_000_000
_SINC_MAX_TERMS_COMPILED = 800_000
_MAX_ORDER_COMPILED = 100_000


def active_backend() -> str:
    """Name of the kernel backend in use: "compiled" or "python"."""
    return "compiled" if _USE_COMPILED else "python"


def compiled_available() -> bool:
    return _compiled is not None


def _to_man_exp(v: mpf) -> tuple[int, int]:
    sign, man, exp, _ = v._mpf_
    man = int(man)
    return (-man if sign else man), exp


def _from_man_exp(man_hex: str, exp: int, prec: int) -> mpf:
    man = int(man_hex, 16)
    if man == 0:
        return mpf(0)
    with mp.workprec(max(prec, man.bit_length()) + 8):
        return mpf(man) * mpf(2) ** exp


def cos_series(n: int, x: mpf, alt: bool, prec: int, tol: mpf,
               max_terms: int) -> RawSum:
    """Dispatch the real-argument derivative-series kernel. x must be > 0."""
    if (_USE_COMPILED and max_terms <= _COS_MAX_TERMS_COMPILED
            and n <= _MAX_ORDER_COMPILED):
        x_man, x_exp = _to_man_exp(x)
        t_man, t_exp = _to_man_exp(tol)
        out = _compiled.cos_series(n, format(x_man, "x"), x_exp, alt,
                                   prec, format(t_man, "x"), t_exp, max_terms)
        return _unpack(out, prec)
    return _kernel_py.cos_series(n, x, alt, prec, tol, max_terms)


def sinc_series(n: int, x: mpf, prec: int, tol: mpf, max_terms: int) -> RawSum:
    """Dispatch the sinc-derivative series kernel. x must be > 0."""
    if (_USE_COMPILED and max_terms <= _SINC_MAX_TERMS_COMPILED
            and n <= _MAX_ORDER_COMPILED):
        x_man, x_exp = _to_man_exp(x)
        t_man, t_exp = _to_man_exp(tol)
        out = _compiled.sinc_series(n, format(x_man, "x"), x_exp,
                                    prec, format(t_man, "x"), t_exp, max_terms)
        return _unpack(out, prec)
    return _kernel_py.sinc_series(n, x, prec, tol, max_terms)


def cos_series_complex(n, z, prec, tol, max_terms) -> RawSum:
    """Complex-argument series; pure Python only (used for spot checks)."""
    return _kernel_py.cos_series_complex(n, z, prec, tol, max_terms)


def _unpack(out, prec: int) -> RawSum:
    (converged, total_man, total_exp, tail_man, tail_exp,
     max_exp, terms, ops) = out
    return RawSum(
        total=_from_man_exp(total_man, total_exp, prec),
        tail=_from_man_exp(tail_man, tail_exp, 80),
        max_exp=max_exp,
        terms=terms,
        ops=ops,
        converged=bool(converged),
        directional=True,
    )
