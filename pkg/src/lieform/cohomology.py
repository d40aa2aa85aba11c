"""Chevalley-Eilenberg cohomology over GF(2) with trivial or adjoint coefficients.

Cochains of degree n are stored on strictly increasing n-tuples of basis
indices, which is exactly alternation in characteristic 2.  The coordinate
of ``(tuple, m)`` is ``tuple_index * dim(M) + m`` with tuples in
lexicographic order.

Weight convention: a cochain coordinate ``phi(x_t1, ..., x_tn) = m`` has
weight ``w(m) - (w(t1) + ... + w(tn))``, so positive weight means the map
raises degree.  Filtered deformations are built from positive-weight
2-cochains in this sense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .algebra import LIE, AlgebraError, AlgebraTable, LinearMap
from .gf2 import BitMatrix, EchelonBasis, bits_of, column_kernel, rank_of

MAX_DEGREE = 3
TRIVIAL, ADJOINT = "trivial", "adjoint"


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class Module:
    kind: str
    dim: int
    action: tuple[tuple[int, ...], ...]  # action[x][m] = x . m as a bitset
    weights: tuple[int, ...] | None


def module(L: AlgebraTable, kind: str) -> Module:
    if L.kind != LIE:
        raise AlgebraError("cohomology needs a Lie table")
    if kind == TRIVIAL:
        return Module(TRIVIAL, 1, tuple((0,) for _ in range(L.dim)), (0,))
    if kind == ADJOINT:
        return Module(ADJOINT, L.dim, L.products, L.weights)
    raise CochainError(f"unsupported module {kind!r}")


class CochainSpace:
    def __init__(self, L: AlgebraTable, kind: str, degree: int):
        if degree < 0:
            raise CochainError("degree must be non-negative")
        self.L = L
        self.M = module(L, kind)
        self.kind = kind
        self.degree = degree
        self.tuples = list(combinations(range(L.dim), degree))
        self.index = {t: k for k, t in enumerate(self.tuples)}

    @property
    def dim(self) -> int:
        return len(self.tuples) * self.M.dim

    def coordinate(self, tup: Sequence[int], m: int) -> int:
        return self.index[tuple(tup)] * self.M.dim + m

    def split(self, coord: int) -> tuple[tuple[int, ...], int]:
        t, m = divmod(coord, self.M.dim)
        return self.tuples[t], m

    def coordinate_weight(self, coord: int) -> int:
        if self.L.weights is None:
            raise AlgebraError("no grading defined")
        tup, m = self.split(coord)
        return self.M.weights[m] - sum(self.L.weights[i] for i in tup)

    def weight_mask(self, weight: int | None) -> int:
        if weight is None:
            return (1 << self.dim) - 1
        return sum(1 << c for c in range(self.dim) if self.coordinate_weight(c) == weight)

    def occupied_weights(self) -> list[int]:
        if self.L.weights is None:
            raise AlgebraError("no grading defined")
        return sorted({self.coordinate_weight(c) for c in range(self.dim)})

    def cochain(self, bits: int = 0) -> Cochain:
        return Cochain(self, bits)

    def from_values(self, values: Mapping[Sequence[int], int]) -> Cochain:
        """Cochain from ``{basis-index tuple: module bitset}``; tuples in any order."""
        bits = 0
        for tup, val in values.items():
            tup = tuple(sorted(tup))
            if len(set(tup)) != len(tup):
                if val:
                    raise CochainError(f"nonzero value on repeated arguments {tup}")
                continue
            base = self.index[tup] * self.M.dim
            bits ^= val << base
        return Cochain(self, bits)

    def from_function(self, fn) -> Cochain:
        return self.from_values({t: fn(*t) for t in self.tuples})


@dataclass(frozen=True)
class Cochain:
    space: CochainSpace = field(compare=False)
    bits: int

    @property
    def degree(self) -> int:
        return self.space.degree

    def value(self, *args: int) -> int:
        """Value on basis elements (indices, any order)."""
        tup = tuple(sorted(args))
        if len(set(tup)) != len(tup):
            return 0
        dm = self.space.M.dim
        return (self.bits >> (self.space.index[tup] * dm)) & ((1 << dm) - 1)

    def evaluate(self, *vectors: int) -> int:
        """Multilinear value on arbitrary vectors of L (bitsets)."""
        out = 0

        def rec(pos, chosen):
            nonlocal out
            if pos == len(vectors):
                out ^= self.value(*chosen)
                return
            for i in bits_of(vectors[pos]):
                rec(pos + 1, chosen + (i,))

        rec(0, ())
        return out

    def __add__(self, other: Cochain) -> Cochain:
        self._check(other)
        return Cochain(self.space, self.bits ^ other.bits)

    def _check(self, other):
        if (self.space.L, self.space.kind, self.degree) != (other.space.L, other.space.kind, other.degree):
            raise CochainError("cochains live in different spaces")

    def __bool__(self) -> bool:
        return self.bits != 0

    def weights(self) -> set[int]:
        return {self.space.coordinate_weight(c) for c in bits_of(self.bits)}

    def weight_component(self, weight: int) -> Cochain:
        return Cochain(self.space, self.bits & self.space.weight_mask(weight))

    def is_homogeneous(self, weight: int) -> bool:
        return self.weights() <= {weight}

    def nonzero_values(self) -> dict[tuple[int, ...], int]:
        out: dict[tuple[int, ...], int] = {}
        dm = self.space.M.dim
        for c in bits_of(self.bits):
            t, m = divmod(c, dm)
            tup = self.space.tuples[t]
            out[tup] = out.get(tup, 0) | (1 << m)
        return out

    def to_json(self) -> list:
        return [[list(t), list(bits_of(v))] for t, v in sorted(self.nonzero_values().items())]


# ---------------------------------------------------------------------------
# the differential
# ---------------------------------------------------------------------------


def _table_key(L: AlgebraTable):
    return (L.dim, L.products, L.weights)


_SPACES: dict = {}


def cochain_space(L: AlgebraTable, kind: str, degree: int) -> CochainSpace:
    key = (_table_key(L), kind, degree)
    sp = _SPACES.get(key)
    if sp is None:
        sp = _SPACES[key] = CochainSpace(L, kind, degree)
    return sp


@lru_cache(maxsize=64)
def _coboundary_columns_cached(key, kind: str, degree: int, weight: int | None) -> tuple[int, ...]:
    L = _TABLES[key]
    return tuple(_coboundary_columns(L, kind, degree, weight))


_TABLES: dict = {}


def coboundary_columns(L: AlgebraTable, kind: str, degree: int, weight: int | None = None) -> tuple[int, ...]:
    """Columns of d: C^degree -> C^(degree+1); column c is the bitset of d(e_c).

    With ``weight`` set, columns of other weights are left zero (d preserves weight).
    """
    if degree > MAX_DEGREE:
        raise CochainError(f"degree {degree} exceeds the supported maximum {MAX_DEGREE}")
    key = _table_key(L)
    _TABLES[key] = L
    return _coboundary_columns_cached(key, kind, degree, weight)


def _coboundary_columns(L: AlgebraTable, kind: str, degree: int, weight: int | None) -> list[int]:
    src = cochain_space(L, kind, degree)
    dst = cochain_space(L, kind, degree + 1)
    M = src.M
    dm = M.dim
    act = M.action
    P = L.products
    keep = src.weight_mask(weight)
    cols = [0] * src.dim
    index = src.index
    for r, T in enumerate(dst.tuples):
        shift = r * dm
        # x_i . phi(..., x_i omitted, ...)
        for i in range(len(T)):
            rest = T[:i] + T[i + 1 :]
            base = index[rest] * dm
            row_act = act[T[i]]
            for m in range(dm):
                c = base + m
                if (keep >> c) & 1 and row_act[m]:
                    cols[c] ^= row_act[m] << shift
        # phi([x_i, x_j], rest)
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                br = P[T[i]][T[j]]
                if not br:
                    continue
                rest = T[:i] + T[i + 1 : j] + T[j + 1 :]
                for k in bits_of(br):
                    if k in rest:
                        continue
                    S = tuple(sorted(rest + (k,)))
                    base = index[S] * dm
                    for m in range(dm):
                        c = base + m
                        if (keep >> c) & 1:
                            cols[c] ^= 1 << (shift + m)
    return cols


def coboundary_matrix(L: AlgebraTable, kind: str, degree: int) -> BitMatrix:
    dst = cochain_space(L, kind, degree + 1)
    return BitMatrix.from_columns(coboundary_columns(L, kind, degree), dst.dim)


def coboundary(c: Cochain) -> Cochain:
    sp = c.space
    cols = coboundary_columns(sp.L, sp.kind, sp.degree)
    out = 0
    for k in bits_of(c.bits):
        out ^= cols[k]
    return Cochain(cochain_space(sp.L, sp.kind, sp.degree + 1), out)


def coboundary_direct(c: Cochain) -> Cochain:
    """d(c) evaluated straight from the defining sum, without the matrix."""
    sp = c.space
    L, M = sp.L, sp.M
    dst = cochain_space(L, sp.kind, sp.degree + 1)
    values = {}
    for T in dst.tuples:
        v = 0
        for i in range(len(T)):
            rest = T[:i] + T[i + 1 :]
            val = c.value(*rest)
            for m in bits_of(val):
                v ^= M.action[T[i]][m]
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                rest = T[:i] + T[i + 1 : j] + T[j + 1 :]
                v ^= c.evaluate(L.products[T[i]][T[j]], *[1 << t for t in rest])
        values[T] = v
    return dst.from_values(values)


def is_cocycle(c: Cochain) -> bool:
    return not coboundary(c)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


@dataclass
class CohomologyReport:
    algebra: str
    module: str
    degree: int
    dimZ: int
    dimB: int
    dimH: int
    weight: int | None = None
    by_weight: dict[int, int] | None = None
    representatives: list[Cochain] = field(default_factory=list)

    def to_json(self) -> dict:
        data = {
            "algebra": self.algebra,
            "module": self.module,
            "degree": self.degree,
            "dimZ": self.dimZ,
            "dimB": self.dimB,
            "dimH": self.dimH,
        }
        if self.weight is not None:
            data["weight"] = self.weight
        data["by_weight"] = {str(k): v for k, v in sorted(self.by_weight.items())} if self.by_weight else {}
        data["representatives"] = [r.to_json() for r in self.representatives]
        return data


def _check_degree(n: int) -> None:
    if not 0 <= n <= MAX_DEGREE:
        raise CochainError(f"degree must be in 0..{MAX_DEGREE}")


def _name(L: AlgebraTable) -> str:
    p = L.provenance
    if isinstance(p, dict) and "construct" in p:
        return p["construct"]
    return f"dim{L.dim}"


def _restricted(L, kind, n, weight):
    """Coboundary columns of d_n and d_(n-1), restricted to the weight-``weight`` part."""
    space = cochain_space(L, kind, n)
    mask = space.weight_mask(weight)
    cols = coboundary_columns(L, kind, n, weight)
    active = [c for c in range(space.dim) if (mask >> c) & 1]
    dn = [cols[c] for c in active]
    prev = coboundary_columns(L, kind, n - 1, weight) if n > 0 else ()
    return space, active, dn, prev


def cohomology(
    L: AlgebraTable,
    kind: str,
    n: int,
    weight: int | None = None,
    representatives: bool = True,
    by_weight: bool = False,
) -> CohomologyReport:
    _check_degree(n)
    space, active, dn, prev = _restricted(L, kind, n, weight)
    kernel = column_kernel(dn)
    dimZ = len(kernel)
    dimB = rank_of(prev)
    reps = []
    if representatives:
        eb = EchelonBasis()
        for b in prev:
            eb.add(b)
        for z in kernel:
            v = 0
            for k in bits_of(z):
                v |= 1 << active[k]
            if eb.add(v):
                reps.append(Cochain(space, v))
    report = CohomologyReport(_name(L), kind, n, dimZ, dimB, dimZ - dimB, weight=weight, representatives=reps)
    if by_weight and weight is None and L.weights is not None:
        report.by_weight = weight_decomposition(L, kind, n)
    return report


def graded_cohomology(L: AlgebraTable, kind: str, n: int, weight: int, representatives: bool = True) -> CohomologyReport:
    if L.weights is None:
        raise AlgebraError("no grading defined")
    return cohomology(L, kind, n, weight=weight, representatives=representatives)


def weight_decomposition(L: AlgebraTable, kind: str, n: int) -> dict[int, int]:
    if L.weights is None:
        raise AlgebraError("no grading defined")
    out = {}
    for lam in cochain_space(L, kind, n).occupied_weights():
        d = cohomology(L, kind, n, weight=lam, representatives=False).dimH
        if d:
            out[lam] = d
    return out


def positive_cohomology(L: AlgebraTable, kind: str, n: int, representatives: bool = True) -> CohomologyReport:
    if L.weights is None:
        raise AlgebraError("no grading defined")
    parts = {}
    reps = []
    dz = db = 0
    for lam in cochain_space(L, kind, n).occupied_weights():
        if lam <= 0:
            continue
        r = cohomology(L, kind, n, weight=lam, representatives=representatives)
        dz += r.dimZ
        db += r.dimB
        if r.dimH:
            parts[lam] = r.dimH
        reps += r.representatives
    rep = CohomologyReport(_name(L), kind, n, dz, db, dz - db, by_weight=parts, representatives=reps)
    return rep


def is_coboundary(c: Cochain) -> Cochain | None:
    """A preimage x with d(x) = c, or None; ``c`` must be a cocycle."""
    if not is_cocycle(c):
        raise CochainError("cochain is not a cocycle")
    sp = c.space
    if sp.degree == 0:
        return Cochain(sp, 0) if not c.bits else None
    prev = coboundary_columns(sp.L, sp.kind, sp.degree - 1)
    eb = EchelonBasis(track=True)
    for col in prev:
        eb.add(col)
    combo = eb.express(c.bits)
    if combo is None:
        return None
    return Cochain(cochain_space(sp.L, sp.kind, sp.degree - 1), combo)


def cohomologically_independent(cochains: Sequence[Cochain]) -> bool:
    """True iff the cochains are cocycles whose span meets the coboundaries only in 0."""
    if not cochains:
        return True
    sp = cochains[0].space
    for c in cochains:
        if not is_cocycle(c):
            return False
    prev = coboundary_columns(sp.L, sp.kind, sp.degree - 1) if sp.degree else ()
    eb = EchelonBasis()
    for b in prev:
        eb.add(b)
    return all(eb.add(c.bits) for c in cochains)


# ---------------------------------------------------------------------------
# cocycles of current algebras built from data on the factors
# ---------------------------------------------------------------------------


def wrap_cocycle(phi: Cochain, u: int, A: AlgebraTable, LA: AlgebraTable) -> Cochain:
    """(x1 (x) a1, ..., xk (x) ak) -> phi(x1, ..., xk) (x) a1...ak u on LA = L (x) A."""
    L = phi.space.L
    if phi.space.kind != ADJOINT:
        raise CochainError("wrap_cocycle needs adjoint coefficients")
    if LA.dim != L.dim * A.dim:
        raise CochainError("LA must be the current algebra L (x) A")
    nA = A.dim
    target = cochain_space(LA, ADJOINT, phi.degree)

    def value(*ps):
        xs = [p // nA for p in ps]
        prod_a = u
        for p in ps:
            prod_a = A.mul(prod_a, 1 << (p % nA))
        val = phi.value(*xs)
        out = 0
        for k in bits_of(val):
            out |= prod_a << (k * nA)
        return out

    return target.from_function(value)


def wrap_centroid(omega: LinearMap, alpha, L: AlgebraTable, A: AlgebraTable, LA: AlgebraTable) -> Cochain:
    """x (x) a -> omega(x) (x) d(a) for a LinearMap ``alpha`` = d;
    (x (x) a, y (x) b) -> omega([x, y]) (x) alpha(a, b) for a bilinear ``alpha``."""
    nA = A.dim

    def tensor(xs, a):
        out = 0
        for k in bits_of(xs):
            out |= a << (k * nA)
        return out

    if isinstance(alpha, LinearMap):
        target = cochain_space(LA, ADJOINT, 1)
        return target.from_function(lambda p: tensor(omega.images[p // nA], alpha.images[p % nA]))
    target = cochain_space(LA, ADJOINT, 2)

    def value(p, q):
        i, a = divmod(p, nA)
        j, b = divmod(q, nA)
        return tensor(omega(L.products[i][j]), alpha(1 << a, 1 << b))

    return target.from_function(value)


def derivation_cochain(L: AlgebraTable, d: LinearMap) -> Cochain:
    """A linear map L -> L viewed as an adjoint 1-cochain."""
    return cochain_space(L, ADJOINT, 1).from_function(lambda i: d.images[i])
