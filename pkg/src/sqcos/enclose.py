"""Thin wrapper over mpmath's interval context for rigorous enclosures.

Used where an independent, certified evaluation of elementary functions
(cos, sin, cosh, sinh, sqrt) is needed: the interval endpoints are
directed-rounded, so midpoint/radius form a sound value/error pair
without trusting any ulp claim.
"""

from __future__ import annotations

import threading

from mpmath import iv, mp, mpf

_LOCK = threading.Lock()


def iv_eval(fn, prec: int) -> tuple[mpf, mpf]:
    """Evaluate ``fn(iv_context)`` at ``prec`` bits; return (midpoint, radius).

    ``fn`` receives the interval context and must return one interval.
    The global interval context is mutated under a lock and restored.
    """
    with _LOCK:
        old = iv.prec
        try:
            iv.prec = prec
            result = fn(iv)
        finally:
            iv.prec = old
    with mp.workprec(prec + 16):
        lo = mpf(result.a)
        hi = mpf(result.b)
        mid = (lo + hi) / 2
        rad = (hi - lo) / 2
        # one-ulp pad for the midpoint arithmetic itself
        pad = mpf(2) ** (-prec) * (abs(mid) + rad) + mpf(2) ** (-2 * prec)
        return mid, rad + pad
