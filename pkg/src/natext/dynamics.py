"""Folner windows and topological entropy estimates.

The window ladder is the box family F_n = [0, n)^d on a grid carrier
(identical counts over N^d and Z^d, since only constraints inside the
window are checked); the free carrier on one generator uses its length
ladder, which is the same thing.  Free carriers on two or more
generators have no Folner ladder and raise NotAmenableFamily.

Estimates are ln(N_n) / |F_n| with N_n the number of locally admissible
windows.  In one dimension the successive difference ln N_n - ln N_{n-1}
converges geometrically to the transfer-matrix growth rate and is the
summary value; the raw quotient carries a Theta(1/n) bias from boundary
effects and is reported alongside, not as the summary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .carriers import Carrier, FreeCarrier, GridCarrier
from .errors import NatextError, NotAmenableFamily, NotSingleGenerator
from .subshift import SubshiftSpec, nn_view, window_count


def folner_window(carrier: Carrier, n: int) -> list:
    """The n-th Folner window of the carrier's ladder."""
    if n < 1:
        raise ValueError("window index starts at 1")
    if isinstance(carrier, GridCarrier):
        return carrier.box((n,) * carrier.d)
    if isinstance(carrier, FreeCarrier):
        if carrier.n_gens == 1:
            return carrier.ball(n - 1)
        raise NotAmenableFamily(
            "a free carrier on two or more generators has no Folner ladder"
        )
    raise NatextError(f"no Folner ladder for carrier kind {carrier.kind!r}")


def folner_dimension(carrier: Carrier) -> int:
    if isinstance(carrier, GridCarrier):
        return carrier.d
    if isinstance(carrier, FreeCarrier) and carrier.n_gens == 1:
        return 1
    raise NotAmenableFamily("no Folner ladder for this carrier")


def folner_defect(carrier: Carrier, n: int, gen: int) -> Fraction:
    """Exact |F s \\ F| + |F \\ F s| over |F| for the generator translate."""
    window = folner_window(carrier, n)
    f = set(window)
    g = carrier.generator(gen)
    fs = {carrier.place(t, g) for t in f}
    return Fraction(len(f.symmetric_difference(fs)), len(f))


@dataclass(frozen=True)
class EntropyEstimate:
    n: int
    window_size: int
    count: int
    estimate: float
    method: str

    def to_json(self) -> dict:
        return {"n": self.n, "window_size": self.window_size,
                "count": self.count, "estimate": self.estimate,
                "method": self.method}


def _count_method(spec: SubshiftSpec, carrier: Carrier) -> str:
    line = (isinstance(carrier, GridCarrier) and carrier.d == 1) or (
        isinstance(carrier, FreeCarrier) and carrier.n_gens == 1
    )
    if line and isinstance(carrier, GridCarrier) and nn_view(spec) is not None:
        return "transfer"
    return "enumeration"


def entropy_estimate(spec: SubshiftSpec, n: int, carrier: Carrier | None = None) -> EntropyEstimate:
    carrier = carrier or spec.carrier()
    window = folner_window(carrier, n)
    count = window_count(spec, window, carrier).count
    est = math.log(count) / len(window) if count > 0 else float("-inf")
    return EntropyEstimate(n, len(window), count, est,
                           _count_method(spec, carrier))


def entropy_series(spec: SubshiftSpec, n_max: int, carrier: Carrier | None = None) -> list:
    carrier = carrier or spec.carrier()
    return [entropy_estimate(spec, n, carrier) for n in range(1, n_max + 1)]


def entropy_summary(spec: SubshiftSpec, n_max: int, carrier: Carrier | None = None) -> dict:
    """Series plus a summary growth rate.

    One-dimensional ladders summarize with the successive difference
    ln N_n - ln N_{n-1} at n_max; higher dimensions report the raw
    quotient at n_max.
    """
    carrier = carrier or spec.carrier()
    series = entropy_series(spec, n_max, carrier)
    d = folner_dimension(carrier)
    if d == 1 and n_max >= 2 and series[-1].count > 0 and series[-2].count > 0:
        value = math.log(series[-1].count) - math.log(series[-2].count)
        method = "difference"
    else:
        value = series[-1].estimate
        method = "quotient"
    return {
        "schema": 1,
        "n_max": n_max,
        "dimension": d,
        "summary_value": value,
        "summary_method": method,
        "series": [e.to_json() for e in series],
    }


def eigen_entropy(spec: SubshiftSpec) -> float:
    """Growth rate ln(spectral radius) of the one-generator transfer
    matrix, as an independent numerical oracle."""
    if len(spec.gen_names) != 1:
        raise NotSingleGenerator("transfer matrix needs one generator")
    allowed = nn_view(spec)
    if allowed is None:
        raise NatextError("transfer matrix needs an edge-local spec")
    import numpy as np

    k = spec.n_values
    a = np.zeros((k, k))
    for i, j in allowed[0]:
        a[i][j] = 1.0
    radius = max(abs(np.linalg.eigvals(a)))
    if radius == 0:
        return float("-inf")
    return float(math.log(radius))


def entropy_compare(spec_a: SubshiftSpec, spec_b: SubshiftSpec, n_max: int,
                    carrier_a: Carrier | None = None,
                    carrier_b: Carrier | None = None) -> dict:
    """Window-count comparison of two systems along the ladder."""
    sa = entropy_series(spec_a, n_max, carrier_a)
    sb = entropy_series(spec_b, n_max, carrier_b)
    per_n = []
    same = True
    for ea, eb in zip(sa, sb):
        per_n.append({"n": ea.n, "count_a": ea.count, "count_b": eb.count})
        if ea.count != eb.count:
            same = False
    return {
        "schema": 1,
        "counts_identical": same,
        "max_estimate_gap": max(
            (abs(ea.estimate - eb.estimate) for ea, eb in zip(sa, sb)),
            default=0.0,
        ),
        "per_n": per_n,
    }
