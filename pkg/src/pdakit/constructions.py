"""Parametric families of placement delivery arrays.

Five generators are provided.  The baseline subset family ("mn") indexes
rows by the t-subsets of the K users: cell (T, k) is a star when k is in T,
otherwise it carries the symbol of the (t+1)-subset T + {k}.  It reaches the
lowest rate for its memory point but its packet count C(K, t) explodes with
K.

The other four families live on digit vectors over Z_q and are driven by a
generator tuple (q, z, m, t), with z in [1, q-1] the cached fraction
numerator and w = floor((q-1)/(q-z)) a replication factor:

    family        K                  F        M/N              R
    general       C(m,t) q^t         w^t q^m  1 - ((q-z)/q)^t  ((q-z)/w)^t
    special       (m+1) q            w q^m    z/q              (q-z)/w
    ext-general   C(m,t) w^t q^t     q^m      1 - ((q-z)/q)^t  (q-z)^t
    ext-special   (m w + 1) q        q^m      z/q              q - z

Rows of "general" are vectors (a_0..a_{m-1}, e_0..e_{t-1}) with a_l in Z_q
and e_i in [0, w); columns are (b_0..b_{t-1}, d_0 < .. < d_{t-1} < m) with
b_i in Z_q.  Cell (a, b) is a star when some a_{d_i} lies in the window
{b_i, b_i - 1, .., b_i - (z-1)} mod q; otherwise its symbol is the vector a
with coordinate d_i replaced by b_i - e_i (q-z) and t trailing digits
a_{d_i} - b_i - 1 (all mod q), encoded as a mixed-radix integer.  "special"
appends, for t = 1, a closing block of q columns keyed by the digit sum of
the row.  The "ext" variants move the e digits from the row index to the
column index, shrinking F to q^m at the price of rate.  Enumeration orders
(rows: e outermost then a, first digit fastest; columns: d outermost, then
e, then b) are fixed so a given tuple always yields the identical array.

theorem_params evaluates the closed-form (K, F, Z, S) of each family in
exact big-integer arithmetic without building anything, so it stays usable
where F has hundreds of digits.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import PdaArray, PdaParams

DEFAULT_CELL_CAP = 10_000_000


class ParamDomainError(ValueError):
    """Construction parameters outside the family's domain."""


class SizeCapError(RuntimeError):
    """Requested array exceeds the cell-count cap."""


class Family(str, enum.Enum):
    MN = "mn"
    GENERAL = "general"
    SPECIAL = "special"
    EXT_GENERAL = "ext-general"
    EXT_SPECIAL = "ext-special"

    def __str__(self) -> str:
        return self.value


VECTOR_FAMILIES = (Family.GENERAL, Family.SPECIAL,
                   Family.EXT_GENERAL, Family.EXT_SPECIAL)


@dataclass(frozen=True)
class ConstructionParams:
    """Generator tuple; t is fixed to 1 for the two "special" families."""

    q: int
    z: int
    m: int
    t: int = 1

    @property
    def w(self) -> int:
        return (self.q - 1) // (self.q - self.z)


def _check_qz(q: int, z: int) -> None:
    if q < 2:
        raise ParamDomainError("q must be at least 2")
    if not 1 <= z <= q - 1:
        raise ParamDomainError("z must satisfy 1 <= z <= q-1")


def _check_domain(family: Family, p: ConstructionParams) -> None:
    _check_qz(p.q, p.z)
    if p.m < 1:
        raise ParamDomainError("m must be at least 1")
    if family in (Family.GENERAL, Family.EXT_GENERAL):
        if not 1 <= p.t <= p.m - 1:
            raise ParamDomainError("t must satisfy 1 <= t < m")
    elif p.t != 1:
        raise ParamDomainError(f"family {family} fixes t = 1")


def theorem_params(family: Family, p: ConstructionParams) -> PdaParams:
    """Closed-form (K, F, Z, S) of a vector family, exact big integers."""
    family = Family(family)
    _check_domain(family, p)
    q, z, m, t, w = p.q, p.z, p.m, p.t, p.w
    if family is Family.GENERAL:
        return PdaParams(
            k=comb(m, t) * q**t,
            f=w**t * q**m,
            z=w**t * (q**m - q**(m - t) * (q - z)**t),
            s=(q - z)**t * q**m,
        )
    if family is Family.SPECIAL:
        return PdaParams(
            k=(m + 1) * q,
            f=w * q**m,
            z=z * w * q**(m - 1),
            s=(q - z) * q**m,
        )
    if family is Family.EXT_GENERAL:
        return PdaParams(
            k=comb(m, t) * w**t * q**t,
            f=q**m,
            z=q**m - (q - z)**t * q**(m - t),
            s=(q - z)**t * q**m,
        )
    if family is Family.EXT_SPECIAL:
        return PdaParams(
            k=(m * w + 1) * q,
            f=q**m,
            z=z * q**(m - 1),
            s=(q - z) * q**m,
        )
    raise ParamDomainError(f"{family} takes (K, t), use mn_params")


def mn_params(k: int, t: int) -> PdaParams:
    """Closed-form parameters of the subset family."""
    if k < 2:
        raise ParamDomainError("K must be at least 2")
    if not 1 <= t <= k - 1:
        raise ParamDomainError("t must satisfy 1 <= t <= K-1")
    return PdaParams(k=k, f=comb(k, t), z=comb(k - 1, t - 1), s=comb(k, t + 1))


def _check_cap(params: PdaParams, max_cells: int) -> None:
    cells = params.f * params.k
    if cells > max_cells:
        raise SizeCapError(
            f"array would hold {cells} cells, above the cap of {max_cells}")


def _row_digits(idx: np.ndarray, radix: int, count: int,
                unit: int = 1) -> np.ndarray:
    """Digits of idx in the given radix, first digit fastest-varying."""
    out = np.empty((idx.shape[0], count), dtype=np.int64)
    for i in range(count):
        out[:, i] = (idx // (unit * radix**i)) % radix
    return out


def _vector_block(A: np.ndarray, E, q: int, z: int, t: int,
                  wa: np.ndarray, we: np.ndarray, base: np.ndarray,
                  delta: tuple[int, ...], b: tuple[int, ...]) -> np.ndarray:
    """One column of the digit-vector cell rule; 0 marks the stars.

    E is (F, t) row digits or a length-t tuple of column digits; both index
    the same replacement rule.
    """
    f = A.shape[0]
    star = np.zeros(f, dtype=bool)
    sym = base.copy()
    for i, d in enumerate(delta):
        a_d = A[:, d]
        star |= ((b[i] - a_d) % q) < z
        eps = E[:, i] if isinstance(E, np.ndarray) else E[i]
        sym += ((b[i] - eps * (q - z)) % q - a_d) * wa[d]
        sym += ((a_d - b[i] - 1) % q) * we[i]
    np.add(sym, 1, out=sym)
    sym[star] = 0
    return sym


def _weights(q: int, z: int, m: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    # mixed radix: m leading digits in base q, t trailing in base q-z
    wa = np.array([(q**(m - 1 - l)) * (q - z)**t for l in range(m)],
                  dtype=np.int64)
    we = np.array([(q - z)**(t - 1 - i) for i in range(t)], dtype=np.int64)
    return wa, we


def construct_general(q: int, z: int, m: int, t: int,
                      max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """Rows (a, e), columns (b, d); F = w^t q^m, K = C(m,t) q^t."""
    p = ConstructionParams(q, z, m, t)
    params = theorem_params(Family.GENERAL, p)
    _check_cap(params, max_cells)
    w = p.w
    idx = np.arange(params.f, dtype=np.int64)
    A = _row_digits(idx, q, m)
    E = _row_digits(idx, w, t, unit=q**m)
    wa, we = _weights(q, z, m, t)
    base = A @ wa
    grid = np.empty((params.f, params.k), dtype=np.int64)
    col = 0
    for delta in itertools.combinations(range(m), t):
        for beta in range(q**t):
            b = tuple((beta // q**i) % q for i in range(t))
            grid[:, col] = _vector_block(A, E, q, z, t, wa, we, base, delta, b)
            col += 1
    return PdaArray(grid)


def _closing_block(A: np.ndarray, u: np.ndarray, q: int, z: int,
                   base: np.ndarray) -> np.ndarray:
    """The q extra columns keyed by the row digit sum u; t = 1 throughout."""
    f = A.shape[0]
    block = np.empty((f, q), dtype=np.int64)
    for b in range(q):
        star = ((u - b) % q) < z
        sym = base + (b - u - 1) % q + 1
        sym[star] = 0
        block[:, b] = sym
    return block


def construct_special(q: int, z: int, m: int,
                      max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """General t=1 block plus a closing digit-sum block; K = (m+1) q."""
    p = ConstructionParams(q, z, m, t=1)
    params = theorem_params(Family.SPECIAL, p)
    _check_cap(params, max_cells)
    w = p.w
    idx = np.arange(params.f, dtype=np.int64)
    A = _row_digits(idx, q, m)
    E = _row_digits(idx, w, 1, unit=q**m)
    wa, we = _weights(q, z, m, 1)
    base = A @ wa
    grid = np.empty((params.f, params.k), dtype=np.int64)
    col = 0
    for delta in itertools.combinations(range(m), 1):
        for b in range(q):
            grid[:, col] = _vector_block(A, E, q, z, 1, wa, we, base,
                                         delta, (b,))
            col += 1
    u = (A.sum(axis=1) - E[:, 0] * (q - z)) % q
    grid[:, col:] = _closing_block(A, u, q, z, base)
    return PdaArray(grid)


def construct_ext_general(q: int, z: int, m: int, t: int,
                          max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """Rows are bare a-vectors; the e digits move into the column index."""
    p = ConstructionParams(q, z, m, t)
    params = theorem_params(Family.EXT_GENERAL, p)
    _check_cap(params, max_cells)
    w = p.w
    idx = np.arange(params.f, dtype=np.int64)
    A = _row_digits(idx, q, m)
    wa, we = _weights(q, z, m, t)
    base = A @ wa
    grid = np.empty((params.f, params.k), dtype=np.int64)
    col = 0
    for delta in itertools.combinations(range(m), t):
        for eta in range(w**t):
            eps = tuple((eta // w**i) % w for i in range(t))
            for beta in range(q**t):
                b = tuple((beta // q**i) % q for i in range(t))
                grid[:, col] = _vector_block(A, eps, q, z, t, wa, we, base,
                                             delta, b)
                col += 1
    return PdaArray(grid)


def construct_ext_special(q: int, z: int, m: int,
                          max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """Ext-general t=1 block plus the closing digit-sum block."""
    p = ConstructionParams(q, z, m, t=1)
    params = theorem_params(Family.EXT_SPECIAL, p)
    _check_cap(params, max_cells)
    w = p.w
    idx = np.arange(params.f, dtype=np.int64)
    A = _row_digits(idx, q, m)
    wa, we = _weights(q, z, m, 1)
    base = A @ wa
    grid = np.empty((params.f, params.k), dtype=np.int64)
    col = 0
    for delta in itertools.combinations(range(m), 1):
        for eps in range(w):
            for b in range(q):
                grid[:, col] = _vector_block(A, (eps,), q, z, 1, wa, we, base,
                                             delta, (b,))
                col += 1
    u = A.sum(axis=1) % q
    grid[:, col:] = _closing_block(A, u, q, z, base)
    return PdaArray(grid)


def _subset_rank(sub: tuple[int, ...], k: int) -> int:
    """1-based lexicographic rank of a subset of [1..k]."""
    r = len(sub)
    rank = 0
    prev = 0
    for i, s in enumerate(sub):
        c = r - i
        rank += comb(k - prev, c) - comb(k - s + 1, c)
        prev = s
    return rank + 1


def construct_mn(k: int, t: int,
                 max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """Subset family: rows are the t-subsets of [1..K] in lexicographic
    order; cell (T, u) is a star when u is in T, else the rank of T + {u}
    among the (t+1)-subsets."""
    params = mn_params(k, t)
    _check_cap(params, max_cells)
    grid = np.zeros((params.f, k), dtype=np.int64)
    for j, subset in enumerate(itertools.combinations(range(1, k + 1), t)):
        members = set(subset)
        for u in range(1, k + 1):
            if u not in members:
                grid[j, u - 1] = _subset_rank(tuple(sorted(subset + (u,))), k)
    return PdaArray(grid)


def construct(family: Family, p: ConstructionParams,
              max_cells: int = DEFAULT_CELL_CAP) -> PdaArray:
    """Dispatch a vector family from its generator tuple."""
    family = Family(family)
    if family is Family.GENERAL:
        return construct_general(p.q, p.z, p.m, p.t, max_cells)
    if family is Family.SPECIAL:
        return construct_special(p.q, p.z, p.m, max_cells)
    if family is Family.EXT_GENERAL:
        return construct_ext_general(p.q, p.z, p.m, p.t, max_cells)
    if family is Family.EXT_SPECIAL:
        return construct_ext_special(p.q, p.z, p.m, max_cells)
    raise ParamDomainError("mn takes (K, t); call construct_mn")


def standard_sweep(max_cells: int = 1_000_000):
    """Yield (family, params) over the reference grid q in [2,6],
    z in [1,q-1], t in {1,2}, m in [t+1,4], keeping arrays of at most
    max_cells cells.  The two "special" families are swept at their fixed
    t = 1."""
    for family in VECTOR_FAMILIES:
        ts = (1, 2) if family in (Family.GENERAL, Family.EXT_GENERAL) else (1,)
        for q in range(2, 7):
            for z in range(1, q):
                for t in ts:
                    for m in range(t + 1, 5):
                        p = ConstructionParams(q, z, m, t)
                        tp = theorem_params(family, p)
                        if tp.f * tp.k <= max_cells:
                            yield family, p
