"""Fixed Gauss-Legendre quadrature on [0, 1] at arbitrary precision.

Nodes and weights are computed once per (node count, precision) by
Newton iteration on the Legendre polynomial and cached. The rule is used
on entire integrands only, so a fixed high-order rule with the classical
derivative-bound remainder is sufficient; no adaptivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
from mpmath import mp, mpf


@dataclass(frozen=True)
class QuadratureSpec:
    """A fixed-interval rule: node count and declared degree of exactness.

    ``scheme_order`` defaults to the Gauss-Legendre exactness 2m - 1 and
    may not exceed it; ``node_count`` must be at least scheme_order / 2.
    """

    node_count: int = 64
    scheme_order: int | None = None

    def __post_init__(self):
        if not isinstance(self.node_count, int) or self.node_count < 1:
            raise ValueError("node_count must be a positive integer")
        if self.scheme_order is None:
            object.__setattr__(self, "scheme_order", 2 * self.node_count - 1)
        if not isinstance(self.scheme_order, int) or self.scheme_order < 1:
            raise ValueError("scheme_order must be a positive integer")
        if self.scheme_order > 2 * self.node_count - 1:
            raise ValueError("scheme_order cannot exceed 2 * node_count - 1")
        if self.node_count < self.scheme_order / 2:
            raise ValueError("node_count must be >= scheme_order / 2")


DEFAULT_QUADRATURE = QuadratureSpec()


def _legendre_pair(m: int, x: mpf) -> tuple[mpf, mpf]:
    # returns (P_m(x), P_{m-1}(x)) by the three-term recurrence
    p_prev, p = mpf(1), x
    for k in range(1, m):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


@lru_cache(maxsize=8)
def gauss_legendre_01(m: int, prec: int) -> tuple[tuple[mpf, ...], tuple[mpf, ...]]:
    """Nodes and weights of the m-point Gauss-Legendre rule on [0, 1].

    Computed at ``prec + 60`` bits; each node's Newton residual is driven
    below 2^-(prec+50), so node and weight errors are far below one ulp
    at ``prec`` bits. Uses the symmetry of the rule about 1/2.
    """
    prec_hi = prec + 60
    nodes, weights = [], []
    with mp.workprec(prec_hi):
        tol = mpf(2) ** (-(prec + 50))
        for i in range(1, m // 2 + 2 if m % 2 else m // 2 + 1):
            # Chebyshev-flavored initial guess on [-1, 1]
            x = mpmath.cos(mpmath.pi * (i - mpf(1) / 4) / (m + mpf(1) / 2))
            for _ in range(200):
                p, p_prev = _legendre_pair(m, x)
                dp = m * (x * p - p_prev) / (x * x - 1)
                dx = p / dp
                x -= dx
                if abs(dx) < tol:
                    break
            else:
                raise RuntimeError(f"Newton failed for Legendre root {i} of {m}")
            p, p_prev = _legendre_pair(m, x)
            dp = m * (x * p - p_prev) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append((1 - x) / 2)  # descending x -> ascending node
            weights.append(w / 2)
        # mirror about 1/2 (m even: all mirrored; m odd: center stays)
        full_n = list(nodes)
        full_w = list(weights)
        skip = 1 if m % 2 else 0
        for node, weight in zip(reversed(nodes[:len(nodes) - skip]),
                                reversed(weights[:len(weights) - skip])):
            full_n.append(1 - node)
            full_w.append(weight)
    return tuple(full_n), tuple(full_w)


@lru_cache(maxsize=8)
def _gl_remainder_prefactor(m: int) -> Fraction:
    # classical m-point Gauss-Legendre remainder constant on a unit interval:
    # (m!)^4 / ((2m+1) ((2m)!)^3), multiplying max |f^(2m)|
    return Fraction(factorial(m) ** 4,
                    (2 * m + 1) * factorial(2 * m) ** 3)


def gl_remainder_bound(m: int, deriv_bound: mpf) -> mpf:
    """Upper bound on the GL error given a bound on |f^(2m)| over [0, 1]."""
    q = _gl_remainder_prefactor(m)
    with mp.workprec(120):
        v = mpf(q.numerator) / q.denominator * deriv_bound
        return v * (1 + mpf(2) ** -100)
