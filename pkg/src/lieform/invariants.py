"""Structural invariants of Lie tables: center, derivations, centroid,
invariant forms, the 2-envelope, tori, absolute zero divisors, simplicity."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numba import njit

from .algebra import LIE, AlgebraError, AlgebraTable, LinearMap, span_closure
from .commutative import BilinearForm, _solve_kernel
from .gf2 import DimensionError, EchelonBasis, Subspace, bits_of, column_kernel, reduced_echelon

SCAN_CAP = 16


def _require_lie(L: AlgebraTable) -> None:
    if L.kind != LIE:
        raise AlgebraError("a Lie table is required")


def _check_cap(L: AlgebraTable) -> None:
    if L.dim > SCAN_CAP:
        raise DimensionError(f"exhaustive scans are capped at dimension {SCAN_CAP}, got {L.dim}")


# ---------------------------------------------------------------------------
# linear invariants
# ---------------------------------------------------------------------------


def center(L: AlgebraTable) -> Subspace:
    _require_lie(L)
    n = L.dim
    cols = [sum(L.products[j][i] << (i * n) for i in range(n)) for j in range(n)]
    return Subspace.span(n, column_kernel(cols))


def commutant(L: AlgebraTable) -> Subspace:
    _require_lie(L)
    return Subspace.span(L.dim, [L.products[i][j] for i, j in combinations(range(L.dim), 2)])


@dataclass(frozen=True)
class MapBasis:
    dim: int
    basis: tuple[LinearMap, ...]


def _maps_from_kernel(n: int, kernel: list[int]) -> MapBasis:
    maps = tuple(LinearMap.unflat(b, n, n) for b in reduced_echelon(kernel))
    return MapBasis(len(maps), maps)


def derivation_algebra(L: AlgebraTable) -> MapBasis:
    """Maps d with d[x, y] = [dx, y] + [x, dy]; unknown (a, k) is the
    coefficient of x_k in d(x_a), matching LinearMap.flat."""
    _require_lie(L)
    n, P = L.dim, L.products
    cols = [0] * (n * n)
    for p, (i, j) in enumerate(combinations(range(n), 2)):
        shift = p * n
        for a in bits_of(P[i][j]):
            for k in range(n):
                cols[a * n + k] ^= 1 << (shift + k)
        for k in range(n):
            cols[i * n + k] ^= P[k][j] << shift
            cols[j * n + k] ^= P[i][k] << shift
    return _maps_from_kernel(n, column_kernel(cols))


def centroid(L: AlgebraTable) -> MapBasis:
    """Maps w with w[x, y] = [x, w(y)] on all basis pairs."""
    _require_lie(L)
    n, P = L.dim, L.products
    cols = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            shift = (i * n + j) * n
            for a in bits_of(P[i][j]):
                for k in range(n):
                    cols[a * n + k] ^= 1 << (shift + k)
            for k in range(n):
                cols[j * n + k] ^= P[i][k] << shift
    return _maps_from_kernel(n, column_kernel(cols))


@dataclass(frozen=True)
class FormBasis:
    dim: int
    basis: tuple[BilinearForm, ...]


def invariant_symmetric_forms(L: AlgebraTable) -> FormBasis:
    """Symmetric B with B([x, y], z) = B(y, [x, z]) on all basis triples."""
    _require_lie(L)
    n, P = L.dim, L.products
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    var = {}
    for k, (i, j) in enumerate(pairs):
        var[(i, j)] = var[(j, i)] = k
    rows = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                r = 0
                for k in bits_of(P[x][y]):
                    r ^= 1 << var[(k, z)]
                for k in bits_of(P[x][z]):
                    r ^= 1 << var[(y, k)]
                if r:
                    rows.append(r)
    forms = []
    for sol in _solve_kernel(len(pairs), rows):
        vals = [[0] * n for _ in range(n)]
        for k in bits_of(sol):
            i, j = pairs[k]
            vals[i][j] = vals[j][i] = 1
        forms.append(BilinearForm(n, n, 1, tuple(tuple(r) for r in vals)))
    return FormBasis(len(forms), tuple(forms))


# ---------------------------------------------------------------------------
# the 2-envelope inside Der(L)
# ---------------------------------------------------------------------------


@dataclass
class EnvelopeTable:
    """Closure of ad(L) in Der(L) under commutators and D -> D^2.

    Elements are handled through coordinates over ``basis`` (bitsets).  The
    square of c = sum c_i a_i is sum c_i sq_i + sum_{i<j} c_i c_j [a_i, a_j];
    it is additive only on commuting families.
    """

    L: AlgebraTable
    der_dim: int
    basis: list[LinearMap]
    squares: list[int] = field(default_factory=list)  # coordinates of a_i^2
    brackets: dict = field(default_factory=dict)  # (i, j) -> coordinates of [a_i, a_j], i < j

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __post_init__(self):
        self._eb = EchelonBasis(track=True)
        for b in self.basis:
            if not self._eb.add(b.flat()):
                raise AlgebraError("envelope basis is dependent")

    def coordinates(self, m: LinearMap) -> int:
        c = self._eb.express(m.flat())
        if c is None:
            raise AlgebraError("map is outside the envelope")
        return c

    def contains(self, m: LinearMap) -> bool:
        return self._eb.contains(m.flat())

    def element(self, coords: int) -> LinearMap:
        n = self.L.dim
        flat = 0
        for k in bits_of(coords):
            flat ^= self.basis[k].flat()
        return LinearMap.unflat(flat, n, n)

    def bracket(self, c1: int, c2: int) -> int:
        out = 0
        for i in bits_of(c1):
            for j in bits_of(c2):
                if i < j:
                    out ^= self.brackets[(i, j)]
                elif j < i:
                    out ^= self.brackets[(j, i)]
        return out

    def square(self, coords: int) -> int:
        out = 0
        idx = list(bits_of(coords))
        for i in idx:
            out ^= self.squares[i]
        for i, j in combinations(idx, 2):
            out ^= self.brackets[(i, j)]
        return out

    def ad(self, x: int) -> LinearMap:
        return self.L.ad(x)


def two_envelope(L: AlgebraTable) -> EnvelopeTable:
    _require_lie(L)
    if center(L).dim:
        raise AlgebraError("the algebra has a nonzero center; ad is not faithful")
    n = L.dim
    eb = EchelonBasis()
    basis: list[LinearMap] = []
    queue: list[LinearMap] = []

    def push(m: LinearMap) -> None:
        if not m.is_zero() and eb.add(m.flat()):
            basis.append(m)
            queue.append(m)

    for i in range(n):
        push(L.ad(1 << i))
    while queue:
        m = queue.pop(0)
        push(m.compose(m))
        for b in list(basis):
            push(m.commutator(b))
    env = EnvelopeTable(L, derivation_algebra(L).dim, basis)
    env.squares = [env.coordinates(b.compose(b)) for b in basis]
    env.brackets = {(i, j): env.coordinates(basis[i].commutator(basis[j])) for i, j in combinations(range(len(basis)), 2)}
    return env


@dataclass
class TorusCertificate:
    elements: list[int]  # envelope coordinates of a basis of the span
    dim: int
    abelian: bool
    squaring_closed: bool
    squaring_injective: bool

    @property
    def valid(self) -> bool:
        return self.abelian and self.squaring_closed and self.squaring_injective

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "abelian": self.abelian,
            "squaring_closed": self.squaring_closed,
            "squaring_injective": self.squaring_injective,
            "valid": self.valid,
        }


def verify_torus(env: EnvelopeTable, elements: list[LinearMap | int]) -> TorusCertificate:
    coords = [e if isinstance(e, int) else env.coordinates(e) for e in elements]
    seen = EchelonBasis()
    basis = [c for c in coords if seen.add(c)]
    span = EchelonBasis(track=True)
    for b in basis:
        span.add(b)
    abelian = all(not env.bracket(a, b) for a, b in combinations(basis, 2))
    sq_rows = [span.express(env.square(b)) for b in basis]
    closed = all(r is not None for r in sq_rows)
    injective = closed and _invertible(sq_rows, len(basis))
    return TorusCertificate(basis, len(basis), abelian, closed, injective)


def _invertible(rows: list[int], k: int) -> bool:
    eb = EchelonBasis()
    return all(eb.add(r) for r in rows) and len(rows) == k


def square_table(env: EnvelopeTable) -> np.ndarray:
    """sq[c] = coordinates of the square of the element with coordinates c."""
    d = env.dim
    if d > 24:
        raise DimensionError("envelope too large for an exhaustive squaring table")
    xs = np.arange(1 << d, dtype=np.int64)
    sq = np.zeros_like(xs)
    bit = [(xs >> i) & 1 for i in range(d)]
    for i in range(d):
        sq ^= bit[i] * env.squares[i]
    for (i, j), c in env.brackets.items():
        if c:
            sq ^= (bit[i] & bit[j]) * c
    return sq


def toral_elements(env: EnvelopeTable) -> np.ndarray:
    """Coordinates of all nonzero t with t^[2] = t."""
    sq = square_table(env)
    xs = np.arange(len(sq), dtype=np.int64)
    return xs[(sq == xs) & (xs != 0)]


def _commute_matrix(env: EnvelopeTable, elems: np.ndarray) -> np.ndarray:
    d = env.dim
    X = ((elems[:, None] >> np.arange(d)) & 1).astype(np.int64)
    B = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), c in env.brackets.items():
        for k in bits_of(c):
            B[i, j, k] = B[j, i, k] = 1
    nonzero = np.zeros((len(elems), len(elems)), dtype=bool)
    for k in range(d):
        nonzero |= ((X @ B[:, :, k] @ X.T) & 1).astype(bool)
    return ~nonzero


def greedy_torus(env: EnvelopeTable) -> TorusCertificate:
    """A split torus spanned by commuting toral elements.

    Commuting toral elements span a subspace on which squaring is the
    identity, hence a torus.  Each toral element seeds one greedy pass over
    the commuting graph; the largest span found is certified.
    """
    tor = toral_elements(env)
    if len(tor) == 0:
        return verify_torus(env, [])
    comm = _commute_matrix(env, tor)
    best: list[int] = []
    best_dim = 0
    for seed in range(len(tor)):
        chosen = [seed]
        span = EchelonBasis()
        span.add(int(tor[seed]))
        for c in np.nonzero(comm[seed])[0]:
            if all(comm[c, k] for k in chosen) and span.add(int(tor[c])):
                chosen.append(int(c))
        if len(chosen) > best_dim:
            best_dim = len(chosen)
            best = [int(tor[k]) for k in chosen]
    cert = verify_torus(env, best)
    assert cert.valid
    return cert


# ---------------------------------------------------------------------------
# exhaustive scans
# ---------------------------------------------------------------------------


def _ad_array(L: AlgebraTable) -> np.ndarray:
    n = L.dim
    ad = np.zeros((n, n, n), dtype=np.uint8)  # ad[x][row k][col j] = coeff of x_k in [x, x_j]
    for x in range(n):
        for j in range(n):
            for k in bits_of(L.products[x][j]):
                ad[x, k, j] = 1
    return ad


def _all_vectors(n: int) -> np.ndarray:
    xs = np.arange(1 << n, dtype=np.int64)
    return ((xs[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def absolute_zero_divisors(L: AlgebraTable) -> tuple[list[int], Subspace]:
    """All x with (ad x)^2 = 0, and the subalgebra they generate."""
    _require_lie(L)
    _check_cap(L)
    n = L.dim
    ad = _ad_array(L).reshape(n, n * n).astype(np.int64)
    found = []
    chunk = 1 << 12
    for start in range(0, 1 << n, chunk):
        xs = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        X = ((xs[:, None] >> np.arange(n)) & 1).astype(np.int64)
        M = ((X @ ad) & 1).reshape(-1, n, n)
        sq = np.matmul(M, M) & 1
        found.extend(xs[~sq.reshape(len(xs), -1).any(axis=1)].tolist())
    sub = span_closure(L, Subspace.span(n, found), mode="subalgebra")
    return found, sub


@njit(cache=True)
def _ideal_dims(prod_cols, n):
    """For every nonzero v, the dimension of the ideal generated by v.

    prod_cols[i][k] = [x_k, x_i] as a bitset.
    """
    total = 1 << n
    out = np.zeros(total, dtype=np.int64)
    piv = np.zeros(64, dtype=np.int64)
    members = np.zeros(64, dtype=np.int64)
    for v in range(1, total):
        for b in range(n):
            piv[b] = 0
        count = 0
        # insert v
        low = v & -v
        b = 0
        while (low >> b) != 1:
            b += 1
        piv[b] = v
        members[0] = v
        count = 1
        head = 0
        while head < count:
            u = members[head]
            head += 1
            for i in range(n):
                w = 0
                x = u
                k = 0
                while x:
                    if x & 1:
                        w ^= prod_cols[i, k]
                    x >>= 1
                    k += 1
                # reduce w against the pivots
                while w:
                    low = w & -w
                    b = 0
                    while (low >> b) != 1:
                        b += 1
                    if piv[b] == 0:
                        piv[b] = w
                        members[count] = w
                        count += 1
                        break
                    w ^= piv[b]
        out[v] = count
    return out


@njit(cache=True)
def _module_dims(mult_rows, n):
    """Rank of {M v : M in the multiplication algebra} for every v.

    mult_rows[m][j] is column j of the m-th basis matrix as a bitset.
    """
    total = 1 << n
    nm = mult_rows.shape[0]
    out = np.zeros(total, dtype=np.int64)
    piv = np.zeros(64, dtype=np.int64)
    for v in range(1, total):
        for b in range(n):
            piv[b] = 0
        r = 0
        for m in range(nm):
            w = 0
            x = v
            j = 0
            while x:
                if x & 1:
                    w ^= mult_rows[m, j]
                x >>= 1
                j += 1
            while w:
                low = w & -w
                b = 0
                while (low >> b) != 1:
                    b += 1
                if piv[b] == 0:
                    piv[b] = w
                    r += 1
                    break
                w ^= piv[b]
        out[v] = r
    return out


def multiplication_algebra(L: AlgebraTable) -> list[LinearMap]:
    """Basis of the associative algebra with 1 generated by the ad x."""
    n = L.dim
    gens = L.ad_basis()
    eb = EchelonBasis()
    basis: list[LinearMap] = []
    queue: list[LinearMap] = []
    for m in [LinearMap.identity(n)] + gens:
        if eb.add(m.flat()):
            basis.append(m)
            queue.append(m)
    while queue:
        m = queue.pop()
        for g in gens:
            p = g.compose(m)
            if eb.add(p.flat()):
                basis.append(p)
                queue.append(p)
    return basis


@dataclass
class SimplicityVerdict:
    simple: bool
    witness_vector: int | None = None
    witness_ideal: Subspace | None = None
    method: str = "ideal-closure"

    def to_json(self) -> dict:
        data = {"simple": self.simple, "method": self.method}
        if self.witness_vector is not None:
            data["witness_vector"] = list(bits_of(self.witness_vector))
            data["witness_ideal_dim"] = self.witness_ideal.dim
        return data


def _threads() -> None:
    t = os.environ.get("LIEFORM_THREADS")
    if t:
        import numba

        numba.set_num_threads(max(1, min(int(t), numba.config.NUMBA_NUM_THREADS)))


def is_simple_gf2(L: AlgebraTable, method: str = "ideal-closure") -> SimplicityVerdict:
    """Exhaustive GF(2) test: every nonzero v must generate the whole algebra.

    ``method`` is "ideal-closure" (iterated brackets) or "module-rank" (rank of
    the cyclic submodule under the multiplication algebra).
    """
    _require_lie(L)
    _check_cap(L)
    _threads()
    n = L.dim
    if not any(L.products[i][j] for i in range(n) for j in range(n)):
        v = 1
        return SimplicityVerdict(False, v, Subspace.span(n, [v]), method)
    if method == "ideal-closure":
        cols = np.array([[L.products[k][i] for k in range(n)] for i in range(n)], dtype=np.int64)
        dims = _ideal_dims(cols, n)
    elif method == "module-rank":
        mult = multiplication_algebra(L)
        rows = np.array([list(m.images) for m in mult], dtype=np.int64)
        dims = _module_dims(rows, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    bad = np.nonzero(dims[1:] < n)[0]
    if len(bad) == 0:
        return SimplicityVerdict(True, method=method)
    v = int(bad[0]) + 1
    return SimplicityVerdict(False, v, span_closure(L, Subspace.span(n, [v]), mode="ideal"), method)


def ideal_dimensions(L: AlgebraTable, method: str = "ideal-closure") -> np.ndarray:
    """Dimension of the ideal generated by each vector (index = bitset)."""
    _require_lie(L)
    _check_cap(L)
    n = L.dim
    if method == "ideal-closure":
        cols = np.array([[L.products[k][i] for k in range(n)] for i in range(n)], dtype=np.int64)
        return _ideal_dims(cols, n)
    mult = multiplication_algebra(L)
    return _module_dims(np.array([list(m.images) for m in mult], dtype=np.int64), n)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def invariant_report(L: AlgebraTable, deep: bool = False) -> dict:
    """The JSON invariant summary; ``deep`` adds the exhaustive scans."""
    _require_lie(L)
    if deep:
        _check_cap(L)
    z = center(L)
    report = {
        "dim": L.dim,
        "center": z.dim,
        "commutant": commutant(L).dim,
        "der_dim": derivation_algebra(L).dim,
        "centroid_dim": centroid(L).dim,
        "inv_form_dim": invariant_symmetric_forms(L).dim,
        "envelope_dim": None,
        "torus_rank_lb": None,
        "azd_subalg_dim": None,
        "simple_gf2": None,
    }
    if z.dim == 0:
        env = two_envelope(L)
        report["envelope_dim"] = env.dim
        if deep:
            report["torus_rank_lb"] = greedy_torus(env).dim
    if deep:
        report["azd_subalg_dim"] = absolute_zero_divisors(L)[1].dim
        report["simple_gf2"] = is_simple_gf2(L).simple
        report["caveat"] = "simplicity and zero divisors are checked over GF(2) only"
    return report
