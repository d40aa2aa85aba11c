"""Low-degree invariants of commutative unital algebras over GF(2).

Every space here is the nullspace of an explicitly assembled constraint
matrix whose columns are the unknown coefficients.  Constraint rows are
bitsets over the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product

from .algebra import COMM, AlgebraError, AlgebraTable, LinearMap, leibniz_failure
from .gf2 import EchelonBasis, Subspace, bits_of, column_kernel, rank_of, reduced_echelon


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear map GF(2)^n1 x GF(2)^n2 -> GF(2)^m; ``values[i][j]`` is a bitset."""

    n1: int
    n2: int
    target: int
    values: tuple[tuple[int, ...], ...]

    def __call__(self, a: int, b: int) -> int:
        out = 0
        for i in bits_of(a):
            row = self.values[i]
            for j in bits_of(b):
                out ^= row[j]
        return out

    def is_symmetric(self) -> bool:
        return self.n1 == self.n2 and all(
            self.values[i][j] == self.values[j][i] for i in range(self.n1) for j in range(i)
        )

    def is_alternating(self) -> bool:
        return self.is_symmetric() and not any(self.values[i][i] for i in range(self.n1))

    def __add__(self, other: BilinearForm) -> BilinearForm:
        return BilinearForm(
            self.n1,
            self.n2,
            self.target,
            tuple(tuple(a ^ b for a, b in zip(r, s)) for r, s in zip(self.values, other.values)),
        )

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.values)

    def to_json(self) -> list:
        return [[i, j, list(bits_of(v))] for i in range(self.n1) for j in range(self.n2) if (v := self.values[i][j])]


def _require_comm(A: AlgebraTable) -> None:
    if A.kind != COMM:
        raise AlgebraError("an assoc-comm-unital table is required")


def _solve_kernel(nunknowns: int, rows: list[int]) -> list[int]:
    """Basis (bitsets over unknowns) of the solutions of the homogeneous system."""
    # kernel of the row system = kernel of the column map; transpose rows into columns
    cols = [0] * nunknowns
    for r_idx, r in enumerate(rows):
        for u in bits_of(r):
            cols[u] |= 1 << r_idx
    return reduced_echelon(column_kernel(cols))


def squares_subalgebra(A: AlgebraTable) -> Subspace:
    """Span of the squares; squaring is additive here, so basis squares suffice."""
    _require_comm(A)
    return Subspace.span(A.dim, [A.products[i][i] for i in range(A.dim)])


def constants(A: AlgebraTable, D: LinearMap) -> Subspace:
    """A^D, the kernel of D."""
    return D.kernel()


def image_of(D: LinearMap) -> Subspace:
    return D.image()


# ---------------------------------------------------------------------------
# cyclic cohomology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormSpace:
    dim: int
    basis: tuple[BilinearForm, ...]


def cyclic1(A: AlgebraTable, alternating: bool = False) -> FormSpace:
    """Symmetric (alternating) scalar forms with a(ab,c) + a(ca,b) + a(bc,a) = 0."""
    _require_comm(A)
    n = A.dim
    pairs = list(combinations(range(n), 2) if alternating else combinations_with_replacement(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}

    def var(i, j):
        if i > j:
            i, j = j, i
        return index.get((i, j))  # None for the forced-zero diagonal

    def term(x: int, c: int) -> int:
        # alpha(x, e_c) as a row over unknowns
        row = 0
        for k in bits_of(x):
            v = var(k, c)
            if v is not None:
                row ^= 1 << v
        return row

    rows = []
    P = A.products
    for a, b, c in product(range(n), repeat=3):
        row = term(P[a][b], c) ^ term(P[c][a], b) ^ term(P[b][c], a)
        if row:
            rows.append(row)
    sols = _solve_kernel(len(pairs), rows)
    forms = []
    for s in sols:
        vals = [[0] * n for _ in range(n)]
        for u in bits_of(s):
            i, j = pairs[u]
            vals[i][j] = vals[j][i] = 1
        forms.append(BilinearForm(n, n, 1, tuple(tuple(r) for r in vals)))
    return FormSpace(len(forms), tuple(forms))


# ---------------------------------------------------------------------------
# derivations and Harrison cohomology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapSpace:
    dim: int
    basis: tuple[LinearMap, ...]


def derivations_comm(A: AlgebraTable) -> MapSpace:
    """Solve D(ab) = D(a)b + aD(b); unknown (i, k) = coefficient of e_k in D(e_i)."""
    _require_comm(A)
    n = A.dim
    P = A.products

    def var(i, k):
        return i * n + k

    rows = []
    for a in range(n):
        for b in range(a, n):
            for k in range(n):
                row = 0
                for m in bits_of(P[a][b]):
                    row ^= 1 << var(m, k)
                for m in range(n):
                    if (P[m][b] >> k) & 1:
                        row ^= 1 << var(a, m)
                    if (P[a][m] >> k) & 1:
                        row ^= 1 << var(b, m)
                if row:
                    rows.append(row)
    sols = _solve_kernel(n * n, rows)
    maps = tuple(LinearMap.unflat(s, n, n) for s in sols)
    return MapSpace(len(maps), maps)


@dataclass(frozen=True)
class HarrisonReport:
    dim: int
    dim_cocycles: int
    dim_coboundaries: int
    representatives: tuple[BilinearForm, ...]


def _sym_pairs(n):
    return list(combinations_with_replacement(range(n), 2))


def _harrison_cochain_index(n):
    pairs = _sym_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    return pairs, index


def harrison_coboundary(A: AlgebraTable, omega: LinearMap) -> BilinearForm:
    """(a, b) -> a w(b) + w(ab) + w(a) b."""
    n = A.dim
    vals = tuple(
        tuple(A.mul(1 << a, omega.images[b]) ^ omega(A.products[a][b]) ^ A.mul(omega.images[a], 1 << b) for b in range(n))
        for a in range(n)
    )
    return BilinearForm(n, n, n, vals)


def _form_to_bits(alpha: BilinearForm, index, n) -> int:
    out = 0
    for (i, j), k in index.items():
        out |= alpha.values[i][j] << (k * n)
    return out


def _bits_to_form(bits: int, pairs, n) -> BilinearForm:
    vals = [[0] * n for _ in range(n)]
    mask = (1 << n) - 1
    for k, (i, j) in enumerate(pairs):
        v = (bits >> (k * n)) & mask
        vals[i][j] = vals[j][i] = v
    return BilinearForm(n, n, n, tuple(tuple(r) for r in vals))


def harrison2(A: AlgebraTable) -> HarrisonReport:
    """Symmetric Hochschild 2-cocycles modulo 2-coboundaries.

    Representatives are adjusted by a coboundary so that alpha(1, A) = 0.
    """
    _require_comm(A)
    n = A.dim
    P = A.products
    pairs, index = _harrison_cochain_index(n)

    def var(i, j, k):
        if i > j:
            i, j = j, i
        return index[(i, j)] * n + k

    def alpha_row(x: int, y: int, k: int) -> int:
        # coordinate k of alpha(x, y) as a row over unknowns
        row = 0
        for i in bits_of(x):
            for j in bits_of(y):
                row ^= 1 << var(i, j, k)
        return row

    def left_mult_row(a: int, b: int, c: int, k: int) -> int:
        # coordinate k of e_a * alpha(e_b, e_c)
        row = 0
        for m in range(n):
            if (P[a][m] >> k) & 1:
                row ^= 1 << var(b, c, m)
        return row

    rows = []
    for a, b, c in product(range(n), repeat=3):
        for k in range(n):
            row = (
                left_mult_row(a, b, c, k)
                ^ alpha_row(P[a][b], 1 << c, k)
                ^ alpha_row(1 << a, P[b][c], k)
                ^ left_mult_row(c, a, b, k)
            )
            if row:
                rows.append(row)
    nvars = len(pairs) * n
    cocycles = _solve_kernel(nvars, rows)

    cob = []
    for i in range(n):
        for k in range(n):
            omega = LinearMap(n, n, tuple((1 << k) if m == i else 0 for m in range(n)))
            cob.append(_form_to_bits(harrison_coboundary(A, omega), index, n))
    dim_b = rank_of(cob)

    basis = EchelonBasis()
    for b in cob:
        basis.add(b)
    reps = []
    for z in cocycles:
        if basis.add(z):
            reps.append(normalize_unit(A, _bits_to_form(z, pairs, n)))
    return HarrisonReport(len(cocycles) - dim_b, len(cocycles), dim_b, tuple(reps))


def normalize_unit(A: AlgebraTable, alpha: BilinearForm) -> BilinearForm:
    """Add a coboundary so that alpha(1, .) = 0; returns alpha unchanged if impossible."""
    from .gf2 import BitMatrix, BitVector, solve

    n, u = A.dim, A.unit
    # column (i, kk) = coboundary of the elementary map e_i -> e_kk, restricted to (1, .)
    columns = []
    for i in range(n):
        for kk in range(n):
            omega = LinearMap(n, n, tuple((1 << kk) if m == i else 0 for m in range(n)))
            row_u = harrison_coboundary(A, omega).values[u]
            columns.append(sum(row_u[b] << (b * n) for b in range(n)))
    rhs = sum(alpha.values[u][b] << (b * n) for b in range(n))
    m = BitMatrix.from_columns(columns, n * n)
    x = solve(m, BitVector(n * n, rhs))
    if x is None:
        return alpha
    return alpha + harrison_coboundary(A, LinearMap.unflat(x.bits, n, n))


def harrison_cocycle_defect(A: AlgebraTable, alpha: BilinearForm) -> tuple[int, int, int] | None:
    """First basis triple where the Harrison cocycle identity fails, if any."""
    n = A.dim
    for a, b, c in product(range(n), repeat=3):
        ea, eb, ec = 1 << a, 1 << b, 1 << c
        v = A.mul(ea, alpha(eb, ec)) ^ alpha(A.mul(ea, eb), ec) ^ alpha(ea, A.mul(eb, ec)) ^ A.mul(alpha(ea, eb), ec)
        if v:
            return (a, b, c)
    return None


# ---------------------------------------------------------------------------
# the space of linear functionals xi attached to (A, D, U)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XiSpace:
    ambient: int
    basis: tuple[int, ...]  # each xi as a bitset of its values on the basis of A

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> list[int]:
        out = []
        for coeffs in range(1 << self.dim):
            xi = 0
            for k in bits_of(coeffs):
                xi ^= self.basis[k]
            out.append(xi)
        return out


def functional(xi: int, a: int) -> int:
    """Value of the functional with value-bitset ``xi`` on the vector ``a``."""
    return (xi & a).bit_count() & 1


def long_identity(A: AlgebraTable, D: LinearMap, xi: int, a: int, b: int, c: int) -> int:
    """The three-term expression that must vanish for admissible xi."""

    def t(p, q):
        out = 0
        if functional(xi, p):
            out ^= q
        if functional(xi, q):
            out ^= p
        if functional(xi, A.mul(p, q)):
            out ^= 1 << A.unit
        return out

    return A.mul(t(a, b), D(c)) ^ A.mul(t(c, a), D(b)) ^ A.mul(t(b, c), D(a))


def xi_space(A: AlgebraTable, D: LinearMap, U: Subspace) -> XiSpace:
    """Functionals vanishing on A^[2], D(A), U with xi(a)D(b)+xi(b)D(a) in U and the
    three-term identity on all basis triples."""
    _require_comm(A)
    n = A.dim
    bad = leibniz_failure(A, D)
    if bad is not None:
        raise AlgebraError(f"D is not a derivation (fails on basis pair {bad})")
    for u in U.basis:
        if D(u) not in U:
            raise AlgebraError("U is not D-invariant")

    rows: list[int] = []
    for space in (squares_subalgebra(A), D.image(), U):
        rows.extend(space.basis)

    # xi(a)D(b) + xi(b)D(a) in U: reduce modulo U's echelon basis, then the
    # coordinates outside U's pivots must vanish
    reduced = [U.reduce(D.images[i]) for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            for k in bits_of(reduced[a] | reduced[b]):
                row = 0
                if (reduced[b] >> k) & 1:
                    row ^= 1 << a
                if (reduced[a] >> k) & 1:
                    row ^= 1 << b
                if row:
                    rows.append(row)

    # three-term identity, linear in xi; coefficient vector per unknown
    P = A.products
    unit = 1 << A.unit
    for a, b, c in combinations_with_replacement(range(n), 3):
        coef = [0] * n
        for (p, q, r) in ((a, b, c), (c, a, b), (b, c, a)):
            Dr = D.images[r]
            coef[p] ^= A.mul(1 << q, Dr)
            coef[q] ^= A.mul(1 << p, Dr)
            for m in bits_of(P[p][q]):
                coef[m] ^= A.mul(unit, Dr)
        for k in range(n):
            row = 0
            for m in range(n):
                if (coef[m] >> k) & 1:
                    row |= 1 << m
            if row:
                rows.append(row)
    sols = _solve_kernel(n, rows)
    return XiSpace(n, tuple(sols))


def xi_defect(A: AlgebraTable, D: LinearMap, U: Subspace, xi: int) -> str | None:
    """Independent check of every defining condition for a single functional."""
    n = A.dim
    for space, name in ((squares_subalgebra(A), "A^[2]"), (D.image(), "D(A)"), (U, "U")):
        for v in space.basis:
            if functional(xi, v):
                return f"does not vanish on {name}"
    for a in range(n):
        for b in range(n):
            v = 0
            if functional(xi, 1 << a):
                v ^= D.images[b]
            if functional(xi, 1 << b):
                v ^= D.images[a]
            if v not in U:
                return f"membership in U fails at ({a}, {b})"
    for a, b, c in product(range(n), repeat=3):
        if long_identity(A, D, xi, 1 << a, 1 << b, 1 << c):
            return f"three-term identity fails at ({a}, {b}, {c})"
    return None
