"""Independent floating-point evaluation of the integrals and series.

Nothing here touches the exact Gamma ladders: binomials go through libm's
lgamma, integrals through equally spaced sampling (exact for trigonometric
polynomials by discrete orthogonality) or Gauss-Legendre nodes.  Agreement
with the exact engine is therefore evidence, not circularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sums import (
    SumSpec,
    antisym_A_bound,
    even_A_antisym_exact,
    even_A_coefficient,
    even_A_support,
    odd_A_coefficient_direct,
)

__all__ = [
    "QuadratureResult",
    "trig_integral_full",
    "trig_integral_halfrange",
    "float_binomial",
    "shifted_series_eval",
    "identity_report",
]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    samples: int
    est_error: float


def _product(spec: SumSpec, t: float, kind: str = "cos") -> float:
    fn = math.cos if kind == "cos" else math.sin
    pq = spec.pq
    out = 1.0
    for i, li in enumerate(spec.l, start=1):
        if li:
            out *= (2.0 * fn(math.pi * t - math.pi * (i - 1) * pq)) ** (spec.r * li)
    return out


def trig_integral_full(spec: SumSpec) -> QuadratureResult:
    """Integral over one period of the cosine-power product, as the mean over
    N equally spaced samples.

    The integrand is a trigonometric polynomial of degree r*n, so any N
    above the degree is exact up to roundoff; N = r*n + 1 is used and a
    doubled-N evaluation bounds the roundoff.
    """
    deg = spec.r * spec.n
    n1 = deg + 1
    v1 = math.fsum(_product(spec, j / n1) for j in range(n1)) / n1
    n2 = 2 * n1
    v2 = math.fsum(_product(spec, j / n2) for j in range(n2)) / n2
    est = abs(v1 - v2) + 1e-15 * (1.0 + abs(v2))
    return QuadratureResult(value=v2, samples=n2, est_error=est)


def _gauss(spec: SumSpec, lo: float, hi: float, kind: str, nodes: int) -> float:
    x, w = np.polynomial.legendre.leggauss(nodes)
    mid, rad = (lo + hi) / 2.0, (hi - lo) / 2.0
    return rad * math.fsum(
        wi * _product(spec, mid + rad * xi, kind)
        for xi, wi in zip(x.tolist(), w.tolist())
    )


def trig_integral_halfrange(
    spec: SumSpec,
    lo: float = -0.5,
    hi: float = 0.5,
    kind: str = "cos",
    nodes: int | None = None,
) -> QuadratureResult:
    """Gauss-Legendre integral of the cosine- or sine-power product over
    [lo, hi]; est_error from node-count doubling."""
    if kind not in ("cos", "sin"):
        raise ValueError("kind must be 'cos' or 'sin'")
    if nodes is None:
        nodes = max(32, spec.r * spec.n + 24)
    v1 = _gauss(spec, lo, hi, kind, nodes)
    v2 = _gauss(spec, lo, hi, kind, 2 * nodes)
    est = abs(v1 - v2) + 1e-15 * (1.0 + abs(v2))
    return QuadratureResult(value=v2, samples=2 * nodes, est_error=est)


def _signed_loggamma(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign); sign 0 flags a pole at a non-positive integer."""
    if x > 0:
        return math.lgamma(x), 1
    if x == math.floor(x):
        return math.inf, 0
    sign = -1 if math.floor(x) % 2 else 1
    return math.lgamma(x), sign


def float_binomial(l: int, x: float) -> float:
    """l! / (Gamma(x+1) Gamma(l-x+1)) in doubles, via lgamma with explicit
    sign tracking; 0 at the Gamma poles."""
    la, sa = _signed_loggamma(x + 1.0)
    lb, sb = _signed_loggamma(l - x + 1.0)
    if sa == 0 or sb == 0:
        return 0.0
    return sa * sb * math.exp(math.lgamma(l + 1.0) - la - lb)


def shifted_series_eval(l: int, s, t: float, K: int) -> complex:
    """Truncated shifted expansion sum_{|k| <= K} C(l, l/2+k+s) e^(2 pi i (k+s) t),
    with k integer for even l and half-integer for odd l.

    Converges to (2 cos(pi t))^l for |t| < 1/2; the binomials are float-Gamma
    evaluations, independent of the exact ladders.
    """
    if abs(t) >= 0.5:
        raise ValueError("the expansion holds on the open interval |t| < 1/2")
    sf = float(s)
    half_l = l / 2.0
    if l % 2 == 0:
        ks = [float(k) for k in range(-K, K + 1)]
    else:
        ks = [k + 0.5 for k in range(-K - 1, K + 1)]
    re = []
    im = []
    for k in ks:
        c = float_binomial(l, half_l + k + sf)
        phase = 2.0 * math.pi * (k + sf) * t
        re.append(c * math.cos(phase))
        im.append(c * math.sin(phase))
    return complex(math.fsum(re), math.fsum(im))


def _odd_total_integral(spec: SumSpec, nodes: int | None = None) -> float:
    """Integral form of the total odd-A cosine expansion.

    Trading the second cosine for its half-integer expansion flips the sign
    of the integrand each time t - p/q crosses a half-odd integer, so the
    period integral splits at those points with alternating signs.
    """
    pq = spec.pq
    cuts = [-0.5]
    z = math.floor(pq)
    while pq - 0.5 + z < 0.5:
        c = pq - 0.5 + z
        if c > -0.5:
            cuts.append(c)
        z += 1
    cuts.append(0.5)
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        if b - a < 1e-12:
            continue
        sign = -1.0 if math.floor((a + b) / 2.0 - pq + 0.5) % 2 else 1.0
        total += sign * trig_integral_halfrange(spec, a, b, "cos", nodes).value
    return total


def identity_report(spec: SumSpec, odd_A_cut: int = 199) -> list[dict]:
    """Cross-checks of every expansion against an independent integral.

    Returns one dict per check with lhs (integral side), rhs (coefficient
    side), and abs_err.  The odd-A coefficient sum is truncated at
    |A| <= odd_A_cut; the other two sides are finite.
    """
    checks = []

    lhs = trig_integral_full(spec).value
    rhs = math.fsum(
        spec.weight_cos(A) * even_A_coefficient(spec, A) for A in even_A_support(spec)
    )
    checks.append(
        {"check": "even-expansion", "lhs": lhs, "rhs": rhs, "abs_err": abs(lhs - rhs)}
    )

    lhs = _odd_total_integral(spec)
    rhs = math.fsum(
        2.0 * spec.weight_cos(A) * float(odd_A_coefficient_direct(spec, A))
        for A in range(1, odd_A_cut + 1, 2)
    )
    checks.append(
        {"check": "odd-expansion", "lhs": lhs, "rhs": rhs, "abs_err": abs(lhs - rhs)}
    )

    lhs = (
        trig_integral_halfrange(spec, 0.0, 0.5, "cos").value
        - trig_integral_halfrange(spec, 0.0, 0.5, "sin").value
    )
    bound = antisym_A_bound(spec)
    rhs = math.fsum(
        spec.weight_sin(A) * float(even_A_antisym_exact(spec, A))
        for A in range(-bound, bound + 1, 2)
    )
    checks.append(
        {
            "check": "antisym-expansion",
            "lhs": lhs,
            "rhs": rhs,
            "abs_err": abs(lhs - rhs),
        }
    )
    return checks
