"""Rate / packet-count analysis across scheme families.

Three tools live here.  memory_share combines r schemes with weights
lambda_i summing to 1 into a scheme whose memory ratio and rate are the
weighted averages and whose packet count is the plain sum F_1 + .. + F_r;
that sum is how intermediate memory points are usually reached from a pair
of lattice points, and it is what the digit-vector families beat.

compare_general / compare_special bound the rate and packet-count ratios of
a single family-z scheme against such a two-point mixture of the classical
q-ary baselines.  At a lattice point (memory ratio exactly 1-((q-z)/q)^t,
resp. z/q) the packet ratio is exact: w^t / ((q-1)^t + 1) in the general
case and w/q in the t=1 case; the rate ratio is bounded by
1 / (lambda w^{2t}).  Between lattice points the scheme itself needs
mixing and the packet bound relaxes to 1/(q-z)^t + 1/(q-z-1)^t.  The
"advantage" flag records lambda * w^{2t} > 1, the regime where both ratios
certify a strict win.  Tabulated values print the closed-form bounds; the
exact ratios are exposed alongside.

enumerate_schemes exhaustively solves the family equations K(q, z, m, t) and
ratio(q, z, t) for a target user count and memory ratio, in exact rational
arithmetic, and keeps the (rate, F)-non-dominated rows: a parameterization
that another one beats or ties on both axes never surfaces by default.
estimate_m_range inverts K = C(m,t) q^t to the open interval
( t K^{1/t} / (e q),  t K^{1/t} / q ) that must contain m, which is the
sub-exponential growth statement F = O(w^t q^{t K^{1/t} / q}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .constructions import ConstructionParams, Family, theorem_params
from .core import PdaParams

MAX_EXACT_F_BITS = 4096


def _w(q: int, z: int) -> int:
    return (q - 1) // (q - z)


def _check_qz(q: int, z: int) -> None:
    if q < 2 or not 1 <= z <= q - 1:
        raise ValueError("need q >= 2 and 1 <= z <= q-1")


@dataclass(frozen=True)
class SchemeMetrics:
    """(M/N, R, F) triple; F exact when small enough, ln F always."""

    ratio: Fraction
    rate: Fraction
    f: int | None
    ln_f: float

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise ValueError("memory ratio must lie strictly between 0 and 1")
        if self.rate <= 0:
            raise ValueError("rate must be positive")

    @classmethod
    def exact(cls, ratio: Fraction, rate: Fraction, f: int) -> "SchemeMetrics":
        ln_f = math.log(f)
        return cls(Fraction(ratio), Fraction(rate),
                   f if f.bit_length() <= MAX_EXACT_F_BITS else None, ln_f)

    @classmethod
    def from_params(cls, params: PdaParams) -> "SchemeMetrics":
        return cls.exact(params.ratio, params.rate, params.f)


@dataclass(frozen=True)
class MemoryShareSpec:
    """Component schemes with positive weights summing exactly to 1."""

    components: tuple[tuple[SchemeMetrics, Fraction], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("memory sharing needs at least one component")
        comps = tuple((m, Fraction(w)) for m, w in self.components)
        for _, w in comps:
            if not 0 < w <= 1:
                raise ValueError("weights must lie in (0, 1]")
        if sum(w for _, w in comps) != 1:
            raise ValueError("weights must sum exactly to 1")
        comps = tuple(sorted(comps, key=lambda cw: cw[0].ratio))
        object.__setattr__(self, "components", comps)


def memory_share(spec: MemoryShareSpec) -> SchemeMetrics:
    """Convex combination of ratios and rates; packet counts add up."""
    ratio = sum((w * m.ratio for m, w in spec.components), Fraction(0))
    rate = sum((w * m.rate for m, w in spec.components), Fraction(0))
    if all(m.f is not None for m, _ in spec.components):
        f_total = sum(m.f for m, _ in spec.components)
        ln_f = math.log(f_total)
        f_out = f_total if f_total.bit_length() <= MAX_EXACT_F_BITS else None
    else:
        logs = [m.ln_f for m, _ in spec.components]
        top = max(logs)
        ln_f = top + math.log(sum(math.exp(l - top) for l in logs))
        f_out = None
    return SchemeMetrics(ratio, rate, f_out, ln_f)


@dataclass(frozen=True)
class ComparisonResult:
    """Ratios of one family-z scheme to a two-point baseline mixture.

    r_bound and f_value_or_bound are what the tabulated sweeps print; at a
    lattice point f_value_or_bound is the bound 1/(q-z)^t for the general
    baseline and the exact value w/q for the t = 1 baseline.  f_exact keeps
    the exact packet ratio in all cases; r_exact is only defined at a
    lattice point.
    """

    baseline: str  # "szg" (general, any t) | "yctc" (t = 1)
    q: int
    z: int
    t: int
    lam: float
    exact_case: bool
    w: int
    advantage: bool
    r_bound: float
    f_value_or_bound: float
    r_exact: float | None
    f_exact: Fraction | None


def compare_general(q: int, z: int, t: int, lam: float,
                    exact_case: bool = True) -> ComparisonResult:
    """Family-z scheme versus the mixed general q-ary baseline.

    exact_case=False treats a target ratio strictly between the z and z+1
    lattice points (the scheme side then mixes adjacent z as well); only the
    packet bound changes.
    """
    _check_qz(q, z)
    if t < 1:
        raise ValueError("t must be at least 1")
    if not 0 < lam < 1:
        raise ValueError("lambda must lie strictly between 0 and 1")
    w = _w(q, z)
    r_bound = 1.0 / (lam * w**(2 * t))
    advantage = lam * w**(2 * t) > 1
    if exact_case:
        f_bound = 1.0 / (q - z)**t
        f_exact = Fraction(w**t, (q - 1)**t + 1)
        rz = ((q - z) / w)**t
        r_exact = rz / (lam * (q - 1)**t + (1 - lam) / (q - 1)**t)
    else:
        if q - z < 2:
            raise ValueError(
                "between-lattice case needs q - z >= 2 (z+1 must stay below q)")
        w2 = _w(q, z + 1)
        f_bound = 1.0 / (q - z)**t + 1.0 / (q - z - 1)**t
        f_exact = Fraction(w**t + w2**t, (q - 1)**t + 1)
        r_exact = None
    return ComparisonResult("szg", q, z, t, lam, exact_case, w, advantage,
                            r_bound, f_bound, r_exact, f_exact)


def compare_special(q: int, z: int, lam: float,
                    exact_case: bool = True) -> ComparisonResult:
    """Family-z scheme (t = 1) versus the mixed t = 1 baseline.

    At a lattice point the packet ratio is the exact value w/q, not a bound.
    """
    _check_qz(q, z)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie strictly between 0 and 1")
    w = _w(q, z)
    r_bound = 1.0 / (lam * w**2)
    advantage = lam * w**2 > 1
    if exact_case:
        f_exact = Fraction(w, q)
        f_value = w / q
        rz = (q - z) / w
        r_exact = rz / (lam * (q - 1) + (1 - lam) / (q - 1))
    else:
        if q - z < 2:
            raise ValueError(
                "between-lattice case needs q - z >= 2 (z+1 must stay below q)")
        w2 = _w(q, z + 1)
        f_exact = Fraction(w + w2, q)
        f_value = 1.0 / (q - z) + 1.0 / (q - z - 1)
        r_exact = None
    return ComparisonResult("yctc", q, z, 1, lam, exact_case, w, advantage,
                            r_bound, f_value, r_exact, f_exact)


@dataclass(frozen=True)
class SchemeRow:
    """One admissible parameterization for a target (K, M/N)."""

    family: Family
    q: int
    z: int
    m: int
    t: int
    rate: Fraction
    f: int
    ln_f: float


def _solve_binomial(target: int, t: int) -> int | None:
    """m with C(m, t) == target and m > t, if any."""
    m = t + 1
    while comb(m, t) < target:
        m += 1
    return m if comb(m, t) == target else None


def enumerate_schemes(k: int, ratio: Fraction,
                      include_dominated: bool = False) -> list[SchemeRow]:
    """All family tuples hitting user count k and memory ratio exactly.

    The search runs q up to k, z below q, and t up to floor(log2 k) + 1;
    m is solved from each family's user-count equation.  Rows that another
    row beats or ties on both rate and packet count are dropped unless
    include_dominated is set.  Result is sorted by ascending rate, then q.
    """
    if k < 2:
        raise ValueError("K must be at least 2")
    ratio = Fraction(ratio)
    if not 0 < ratio < 1:
        raise ValueError("memory ratio must lie strictly between 0 and 1")
    t_max = int(math.log2(k)) + 1
    rows: list[SchemeRow] = []

    def add(family: Family, q: int, z: int, m: int, t: int) -> None:
        params = theorem_params(family, ConstructionParams(q, z, m, t))
        assert params.k == k and params.ratio == ratio
        rows.append(SchemeRow(family, q, z, m, t, params.rate, params.f,
                              math.log(params.f)))

    # ratio and its complement as reduced integer pairs keeps the scan cheap
    rnum, rden = ratio.numerator, ratio.denominator
    cnum, cden = (1 - ratio).numerator, (1 - ratio).denominator
    for q in range(2, k + 1):
        for z in range(1, q):
            w = _w(q, z)
            if z * rden == q * rnum:  # ratio == z/q
                if k % q == 0 and k // q - 1 >= 1:
                    # special: K = (m+1) q
                    add(Family.SPECIAL, q, z, k // q - 1, 1)
                if k % q == 0 and (k // q - 1) % w == 0 and k // q - 1 >= w:
                    # ext-special: K = (m w + 1) q
                    add(Family.EXT_SPECIAL, q, z, (k // q - 1) // w, 1)
            g = math.gcd(q - z, q)
            a, b = (q - z) // g, q // g
            at, bt = a, b
            for t in range(1, t_max + 1):
                if bt > cden or at > cnum:
                    break
                if at == cnum and bt == cden:  # ratio == 1 - ((q-z)/q)^t
                    # general: K = C(m,t) q^t
                    if k % q**t == 0:
                        m = _solve_binomial(k // q**t, t)
                        if m is not None:
                            add(Family.GENERAL, q, z, m, t)
                    # ext-general: K = C(m,t) w^t q^t
                    if k % (w**t * q**t) == 0:
                        m = _solve_binomial(k // (w**t * q**t), t)
                        if m is not None:
                            add(Family.EXT_GENERAL, q, z, m, t)
                at *= a
                bt *= b

    if not include_dominated:
        rows = [
            r for r in rows
            if not any(
                (o.rate, o.f) != (r.rate, r.f)
                and o.rate <= r.rate and o.f <= r.f
                for o in rows
            )
        ]
    rows.sort(key=lambda r: (r.rate, r.q, r.z, r.m, r.t, r.family.value))
    return rows


def estimate_m_range(k: int, q: int, t: int) -> tuple[float, float]:
    """Open interval bounding the dimension m that yields K = C(m,t) q^t."""
    if k < 1 or q < 2 or t < 1:
        raise ValueError("need K >= 1, q >= 2, t >= 1")
    root = t * k**(1.0 / t)
    return (root / (math.e * q), root / q)
