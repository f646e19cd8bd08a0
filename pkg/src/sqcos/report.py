"""Verification report records and their CSV/JSON serialization.

Every inequality check produces one :class:`BoundReport`. Reports are
self-describing: the parameters and domain description are enough to
replay the check. Numbers serialize as 30-significant-digit decimal
strings so reports are diffable and auditable; booleans as true/false.

The slack convention, used uniformly: for an inequality LHS <= RHS, the
per-point slack is (upper enclosure of RHS) - (lower enclosure of LHS).
A negative slack at a point would certify a counterexample; min_slack is
the minimum over all checked points and ``passed`` is ``min_slack >= 0``
(no certified violation anywhere).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

import mpmath
from mpmath import mp, mpc, mpf

INEQUALITY_TAGS = (
    "MAIN_1",        # uniform derivative bound n!/(2n)! on x > 0
    "GENERAL_12",    # two-index bound with prefactor n!(2m)!/((2n)!m!)
    "COSH_13",       # cosh-weighted bound on [a, infinity)
    "MONOTONE_15",   # |C^(n)| decreasing on the negative half-axis
    "COEFF",         # exact coefficient inequality
    "GRONWALL_0",    # sinc derivative bound 1/(n+1)
    "IDENT_PYTH",    # C^2 + 4z C'^2 = 1 residual check
    "IDENT_ODE",     # C + 2C' + 4z C'' = 0 residual check
)

SIG_DIGITS = 30


def format_number(x) -> str:
    """Deterministic 30-significant-digit decimal string (complex allowed)."""
    if not isinstance(x, (mpf, mpc)):
        # convert once, away from the ambient (possibly low) precision
        with mp.workprec(120):
            x = mpmath.mpmathify(x)
    if isinstance(x, mpc) and x.imag != 0:
        re = mpmath.nstr(x.real, SIG_DIGITS)
        im = mpmath.nstr(x.imag, SIG_DIGITS)
        sign = "+" if x.imag >= 0 else "-"
        return f"({re} {sign} {im.lstrip('-')}j)"
    if isinstance(x, mpc):
        x = x.real
    return mpmath.nstr(x, SIG_DIGITS)


def parse_number(s: str):
    """Parse a string produced by :func:`format_number`."""
    with mp.workprec(120):
        return mpmath.mpmathify(s.strip())


@dataclass(frozen=True)
class BoundReport:
    """Outcome of certifying one inequality over one domain.

    ``min_slack`` follows the module-level slack convention; ``passed``
    is exactly ``min_slack >= 0``. ``worst_point`` is the checked point
    attaining the minimum and always lies inside the stated domain.
    """

    inequality_id: str
    params: dict
    domain: dict
    min_slack: mpf
    worst_point: mpf | mpc
    passed: bool

    def __post_init__(self):
        if self.inequality_id not in INEQUALITY_TAGS:
            raise ValueError(f"unknown inequality tag {self.inequality_id!r}")
        if self.passed != (self.min_slack >= 0):
            raise ValueError("passed must equal (min_slack >= 0)")

    def to_record(self) -> dict:
        return {
            "inequality_id": self.inequality_id,
            "params": self.params,
            "domain": self.domain,
            "min_slack": format_number(self.min_slack),
            "worst_point": format_number(self.worst_point),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SupremumResult:
    """Certified enclosure of the maximum of |C^(n)| over an interval.

    ``location`` is the evaluated point with the best certified lower
    bound; the true supremum lies in [enclosure_lo, enclosure_hi].
    """

    location: mpf
    enclosure_lo: mpf
    enclosure_hi: mpf

    def __post_init__(self):
        if not self.enclosure_lo <= self.enclosure_hi:
            raise ValueError("enclosure must satisfy lo <= hi")

    @property
    def enclosure(self) -> tuple[mpf, mpf]:
        return (self.enclosure_lo, self.enclosure_hi)

    @property
    def width(self) -> mpf:
        return self.enclosure_hi - self.enclosure_lo


_FIELDS = ["inequality_id", "params", "domain", "min_slack", "worst_point", "passed"]


def records_to_json(records: Iterable[dict]) -> str:
    return json.dumps(list(records), indent=2, sort_keys=False)


def records_from_json(text: str) -> list[dict]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("expected a top-level JSON array of records")
    return data


def records_to_csv(records: Iterable[dict]) -> str:
    records = list(records)
    fields = _FIELDS if all(set(r) == set(_FIELDS) for r in records) else None
    if fields is None:
        fields = sorted({k for r in records for k in r}) if records else _FIELDS
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = {}
        for key in fields:
            value = rec.get(key, "")
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            elif isinstance(value, bool):
                value = "true" if value else "false"
            row[key] = value
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for row in reader:
        rec = {}
        for key, value in row.items():
            if value is None:
                continue
            if value.startswith(("{", "[")):
                rec[key] = json.loads(value)
            elif value in ("true", "false"):
                rec[key] = value == "true"
            else:
                rec[key] = value
        out.append(rec)
    return out
