"""Multiple binomial sums indexed by the even/odd area variable A.

Every evaluator here computes one A-coefficient of a cosine (or, for the
antisymmetric family, sine) expansion of a product of cosine powers

    prod_i (2 cos(pi t - pi (i-1) p/q))^(r l_i)

with the first one or two summation variables eliminated in favour of A.
Even-A coefficients are plain integers; the remaining families carry one,
two, or four powers of 1/pi, tracked exactly through ScaledValue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .exact import (
    SHIFT_HALF,
    HalfInt,
    ScaledValue,
    Shift,
    newton_binomial,
    shifted_binomial,
    sinc_at,
)

__all__ = [
    "SumSpec",
    "Window",
    "Family",
    "CoeffTable",
    "half_window",
    "even_A_coefficient",
    "even_A_support",
    "support_bound",
    "odd_A_coefficient_direct",
    "odd_A_coefficient_sinc",
    "even_A_shifted_partial",
    "even_A_antisym_partial",
    "even_A_antisym_exact",
    "antisym_A_bound",
    "four_shifted_coefficient",
    "sum_rule_even",
    "chu_vandermonde_partial",
    "build_coeff_table",
]


class Window(str, Enum):
    """Truncation conventions for the infinite half-integer sums.

    'paper' is the one-sided window [-m+1/2, m+1/2]; 'symmetric' extends it
    to [-m-1/2, m+1/2] so the A -> -A (anti)symmetry is exact at every
    finite truncation, not only in the limit.
    """

    PAPER = "paper"
    SYMMETRIC = "symmetric"


def half_window(m: int, window: Window = Window.SYMMETRIC) -> list[HalfInt]:
    """Half-integers of the truncation window at size m, ascending."""
    if m < 1:
        raise ValueError("window size m must be >= 1")
    lo = -2 * m - 1 if window is Window.SYMMETRIC else -2 * m + 1
    return [HalfInt(d) for d in range(lo, 2 * m + 2, 2)]


@dataclass(frozen=True)
class SumSpec:
    """Parameter bundle (r, l_1..l_j, p/q) of one integral/sum family.

    q = None is the q -> infinity sentinel: the phase weight e^(i pi A p/q)
    is identically 1 and no limiting process is involved.
    """

    r: int
    l: tuple[int, ...]
    p: int = 0
    q: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(v) for v in self.l))
        if self.r < 2 or self.r % 2:
            raise ValueError("r must be a positive even integer")
        if len(self.l) < 2:
            raise ValueError("need at least two parts l_1, l_2")
        if any(v < 0 for v in self.l):
            raise ValueError("parts must be non-negative")
        if self.q is None:
            object.__setattr__(self, "p", 0)
        else:
            if self.q < 1:
                raise ValueError("q must be positive (or None for infinity)")
            f = Fraction(self.p, self.q)
            object.__setattr__(self, "p", f.numerator)
            object.__setattr__(self, "q", f.denominator)

    @property
    def n(self) -> int:
        return sum(self.l)

    @property
    def j(self) -> int:
        return len(self.l)

    @property
    def pq(self) -> float:
        return 0.0 if self.q is None else self.p / self.q

    def weight_cos(self, A: int) -> float:
        """cos(pi A p / q); 1 for the q = infinity sentinel."""
        if self.q is None:
            return 1.0
        return math.cos(math.pi * A * self.p / self.q)

    def weight_sin(self, A: int) -> float:
        if self.q is None:
            return 0.0
        return math.sin(math.pi * A * self.p / self.q)

    def _half(self, i: int) -> int:
        """r*l_i/2 for the 1-based factor index i."""
        return self.r * self.l[i - 1] // 2


def _tail_lattice(spec: SumSpec, start: int = 3) -> Iterator[tuple[int, int, int]]:
    """Sweep k_start..k_j over their full ranges.

    Yields (s2, s1, w) with running s2 = sum (i-2) k_i, s1 = sum (i-1) k_i
    and w = prod C(r l_i, r l_i/2 + k_i); the linear forms are accumulated
    per axis instead of being re-summed at every lattice point.
    """
    axes = [(i, spec._half(i)) for i in range(start, spec.j + 1)]

    def rec(pos: int, s2: int, s1: int, w: int) -> Iterator[tuple[int, int, int]]:
        if pos == len(axes):
            yield s2, s1, w
            return
        i, half = axes[pos]
        n = 2 * half
        for k in range(-half, half + 1):
            yield from rec(
                pos + 1,
                s2 + (i - 2) * k,
                s1 + (i - 1) * k,
                w * newton_binomial(n, half + k),
            )

    yield from rec(0, 0, 0, 1)


def even_A_coefficient(spec: SumSpec, A: int) -> int:
    """Coefficient of e^(i pi A p/q) for even A: the finite multiple sum of
    integer-entry binomials.  0 outside the support."""
    if A % 2:
        raise ValueError("A must be even")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    a = A // 2
    total = 0
    for s2, s1, w in _tail_lattice(spec):
        total += (
            newton_binomial(n1, h1 + a + s2) * newton_binomial(n2, h2 - a - s1) * w
        )
    return total


def even_A_support(spec: SumSpec) -> list[int]:
    """All even A with nonzero coefficient, by scanning entry feasibility.

    Every lattice term is a product of non-negative binomials, so A is in the
    support iff some k_3..k_j puts both eliminated entries inside range.
    """
    h1, h2 = spec._half(1), spec._half(2)
    sup: set[int] = set()
    for s2, s1, _w in _tail_lattice(spec):
        lo = max(-h1 - s2, -h2 - s1)
        hi = min(h1 - s2, h2 - s1)
        sup.update(2 * a for a in range(lo, hi + 1))
    return sorted(sup)


def support_bound(spec: SumSpec, g: int | None = None) -> int:
    """|A| bound (g-1) * r * floor(n^2/4) of the stated summation range,
    read with g = j when no composition context is given."""
    if g is None:
        g = spec.j
    return (g - 1) * spec.r * (spec.n**2 // 4)


def _zero(shift: Shift = SHIFT_HALF) -> ScaledValue:
    return ScaledValue.zero(shift)


def odd_A_coefficient_direct(spec: SumSpec, A: int) -> ScaledValue:
    """Coefficient of e^(i pi A p/q) for odd A: both eliminated entries are
    half-integers, so the value carries 1/pi^2 (scale_exp 2)."""
    if A % 2 == 0:
        raise ValueError("A must be odd")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    total = _zero()
    for s2, s1, w in _tail_lattice(spec):
        e1 = HalfInt(n1 + A + 2 * s2)
        e2 = HalfInt(n2 - A - 2 * s1)
        total += (
            shifted_binomial(n1, e1, SHIFT_HALF)
            * shifted_binomial(n2, e2, SHIFT_HALF)
            * w
        )
    return total


def odd_A_coefficient_sinc(spec: SumSpec, A: int) -> ScaledValue:
    """The same odd-A coefficient in its alternative finite form: k_1 runs
    over integers and a sinc factor at the half-integer A/2 - k_1 + s2
    supplies one of the two 1/pi powers.  Exactly equal to
    odd_A_coefficient_direct for every odd A."""
    if A % 2 == 0:
        raise ValueError("A must be odd")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    total = _zero()
    for k1 in range(-h1, h1 + 1):
        w1 = newton_binomial(n1, h1 + k1)
        for s2, s1, w in _tail_lattice(spec):
            arg = HalfInt(A - 2 * k1 + 2 * s2)
            e2 = HalfInt(n2 - A - 2 * s1)
            total += (
                sinc_at(arg)
                * shifted_binomial(n2, e2, SHIFT_HALF)
                * (w1 * w)
            )
    return total


def even_A_shifted_partial(
    spec: SumSpec, A: int, m: int, window: Window = Window.SYMMETRIC
) -> ScaledValue:
    """Even-A coefficient of the expansion in which k_1 runs over
    half-integers, truncated to the size-m window.

    Carries 1/pi^2; pi^2 times its value converges, as m grows, to the
    integer even_A_coefficient(spec, A).
    """
    if A % 2:
        raise ValueError("A must be even")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    a = A // 2
    total = _zero()
    for k1 in half_window(m, window):
        w1 = shifted_binomial(n1, HalfInt(n1) + k1, SHIFT_HALF)
        for s2, s1, w in _tail_lattice(spec):
            arg = HalfInt(A + 2 * s2) - k1
            e2 = h2 - a - s1
            total += sinc_at(arg) * w1 * (newton_binomial(n2, e2) * w)
    return total


def even_A_antisym_partial(
    spec: SumSpec, A: int, m: int, window: Window = Window.SYMMETRIC
) -> ScaledValue:
    """Even-A coefficient of the sine expansion obtained from the [0,1]
    integration range: the sinc factor is replaced by 1/(pi d) with
    d = A/2 - k_1 + s2 a half-integer.

    The overall -i prefactor is not stored; the returned value is the real
    coefficient multiplying -i e^(i pi A p/q).  Antisymmetric under A -> -A
    at symmetric truncation.
    """
    if A % 2:
        raise ValueError("A must be even")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    a = A // 2
    total = _zero()
    for k1 in half_window(m, window):
        w1 = shifted_binomial(n1, HalfInt(n1) + k1, SHIFT_HALF)
        for s2, s1, w in _tail_lattice(spec):
            d = (HalfInt(A + 2 * s2) - k1).as_fraction()
            factor = ScaledValue(1 / d, 1, SHIFT_HALF)
            e2 = h2 - a - s1
            total += factor * w1 * (newton_binomial(n2, e2) * w)
    return total


def even_A_antisym_exact(spec: SumSpec, A: int) -> ScaledValue:
    """Exact m -> infinity limit of even_A_antisym_partial: k_1 is back to a
    finite integer range and the weight is (1 - cos(pi d))/(pi d) with
    integer d, i.e. 0 for even d (the indeterminate d = 0 term vanishes too)
    and 2/(pi d) for odd d.  Carries a single 1/pi."""
    if A % 2:
        raise ValueError("A must be even")
    h1, h2 = spec._half(1), spec._half(2)
    n1, n2 = 2 * h1, 2 * h2
    a = A // 2
    total = _zero()
    for k1 in range(-h1, h1 + 1):
        w1 = newton_binomial(n1, h1 + k1)
        for s2, s1, w in _tail_lattice(spec):
            d = a - k1 + s2
            if d % 2 == 0:
                continue
            e2 = h2 - a - s1
            total += ScaledValue(Fraction(2, d), 1, SHIFT_HALF) * (
                w1 * newton_binomial(n2, e2) * w
            )
    return total


def antisym_A_bound(spec: SumSpec) -> int:
    """|A| beyond which even_A_antisym_exact vanishes identically."""
    s1_max = sum((i - 1) * spec._half(i) for i in range(3, spec.j + 1))
    return 2 * (spec._half(2) + s1_max)


def four_shifted_coefficient(
    spec: SumSpec, A: int, m: int, window: Window = Window.SYMMETRIC
) -> ScaledValue:
    """Even-A coefficient of the four-fold shifted expansion: k_3 and k_4 run
    over half-integers (truncated to size-m windows), which makes both
    eliminated entries half-integers as well; four 1/pi powers total."""
    if A % 2:
        raise ValueError("A must be even")
    if spec.j < 4:
        raise ValueError("need at least four parts for the four-shifted form")
    h1, h2, h3, h4 = (spec._half(i) for i in (1, 2, 3, 4))
    n1, n2, n3, n4 = 2 * h1, 2 * h2, 2 * h3, 2 * h4
    total = _zero()
    for k3 in half_window(m, window):
        w3 = shifted_binomial(n3, HalfInt(n3) + k3, SHIFT_HALF)
        for k4 in half_window(m, window):
            w4 = shifted_binomial(n4, HalfInt(n4) + k4, SHIFT_HALF)
            w34 = w3 * w4
            base2 = k3 + 2 * k4
            base1 = 2 * k3 + 3 * k4
            for s2, s1, w in _tail_lattice(spec, start=5):
                e1 = HalfInt(n1 + A) + base2 + s2
                e2 = HalfInt(n2 - A) - base1 - s1
                total += (
                    shifted_binomial(n1, e1, SHIFT_HALF)
                    * shifted_binomial(n2, e2, SHIFT_HALF)
                    * w34
                    * w
                )
    return total


def sum_rule_even(spec: SumSpec) -> int:
    """Sum of all even-A coefficients; equals C(rn, rn/2) exactly (the q ->
    infinity collapse of the expansion to an overall binomial count)."""
    return sum(even_A_coefficient(spec, A) for A in even_A_support(spec))


def chu_vandermonde_partial(
    l1: int, l2: int, l1p: int, l2p: int, shift: Shift, m: int
) -> ScaledValue:
    """Partial sum over k in [-m, m] of C(l1, l1p+k+s) C(l2, l2p-k-s).

    Converges to C(l1+l2, l1p+l2p) as m grows; with s = 0 it terminates and
    is exact (scale_exp 0) once m >= l1 + l2.
    """
    if not (0 <= l1p <= l1 and 0 <= l2p <= l2):
        raise ValueError("need 0 <= l1p <= l1 and 0 <= l2p <= l2")
    if m < 0:
        raise ValueError("m must be >= 0")
    total = _zero(shift)
    for k in range(-m, m + 1):
        a = shifted_binomial(l1, l1p + k + shift.s, shift)
        # C(l2, l2p-k-s) = C(l2, l2-l2p+k+s) by the Gamma-argument exchange
        b = shifted_binomial(l2, l2 - l2p + k + shift.s, shift)
        total += a * b
    return total


class Family(str, Enum):
    """Coefficient families exposed by the table builder and the CLI."""

    EVEN = "even"
    ODD = "odd"
    ODD_SINC = "odd-sinc"
    SHIFTED = "shifted"
    ANTISYM = "antisym"
    ANTISYM_EXACT = "antisym-exact"
    FOUR = "four"


_FAMILY_PARITY = {
    Family.EVEN: 0,
    Family.ODD: 1,
    Family.ODD_SINC: 1,
    Family.SHIFTED: 0,
    Family.ANTISYM: 0,
    Family.ANTISYM_EXACT: 0,
    Family.FOUR: 0,
}

_FAMILY_NEEDS_M = {Family.SHIFTED, Family.ANTISYM, Family.FOUR}


@dataclass(frozen=True)
class CoeffTable:
    """One coefficient family evaluated over a set of A values."""

    spec: SumSpec
    family: Family
    entries: dict[int, ScaledValue]

    @property
    def parity(self) -> str:
        return "odd" if _FAMILY_PARITY[self.family] else "even"

    @property
    def antisymmetric(self) -> bool:
        return self.family in (Family.ANTISYM, Family.ANTISYM_EXACT)


def coefficient(
    spec: SumSpec,
    family: Family,
    A: int,
    m: int | None = None,
    window: Window = Window.SYMMETRIC,
) -> ScaledValue:
    """Evaluate one coefficient of the requested family."""
    family = Family(family)
    if family in _FAMILY_NEEDS_M:
        if m is None:
            raise ValueError(f"family {family.value} needs a truncation m")
    if family is Family.EVEN:
        return ScaledValue(Fraction(even_A_coefficient(spec, A)), 0, SHIFT_HALF)
    if family is Family.ODD:
        return odd_A_coefficient_direct(spec, A)
    if family is Family.ODD_SINC:
        return odd_A_coefficient_sinc(spec, A)
    if family is Family.SHIFTED:
        return even_A_shifted_partial(spec, A, m, window)
    if family is Family.ANTISYM:
        return even_A_antisym_partial(spec, A, m, window)
    if family is Family.ANTISYM_EXACT:
        return even_A_antisym_exact(spec, A)
    if family is Family.FOUR:
        return four_shifted_coefficient(spec, A, m, window)
    raise ValueError(f"unknown family {family!r}")


def default_A_range(spec: SumSpec, family: Family) -> list[int]:
    """A values a table covers when no explicit range is requested."""
    family = Family(family)
    if family is Family.EVEN:
        return even_A_support(spec)
    if family is Family.ANTISYM_EXACT:
        b = antisym_A_bound(spec)
        return list(range(-b, b + 1, 2))
    raise ValueError(f"family {family.value} has no finite default A range")


def build_coeff_table(
    spec: SumSpec,
    family: Family,
    A_values: list[int] | None = None,
    m: int | None = None,
    window: Window = Window.SYMMETRIC,
) -> CoeffTable:
    family = Family(family)
    if A_values is None:
        A_values = default_A_range(spec, family)
    parity = _FAMILY_PARITY[family]
    bad = [A for A in A_values if A % 2 != parity]
    if bad:
        raise ValueError(
            f"family {family.value} takes {'odd' if parity else 'even'} A only; got {bad[0]}"
        )
    entries = {A: coefficient(spec, family, A, m, window) for A in A_values}
    return CoeffTable(spec=spec, family=family, entries=entries)
