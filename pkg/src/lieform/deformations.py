"""Massey brackets, filtered deformations and the explicit families built on
s (x) A + g (x) U + K D."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product

from .algebra import LIE, AlgebraTable, LinearMap, make_table, validate
from .cohomology import (
    ADJOINT,
    Cochain,
    CochainError,
    coboundary,
    coboundary_columns,
    cochain_space,
    is_cocycle,
)
from .commutative import functional, squares_subalgebra, xi_space
from .constructions import E, F, H, divided_powers, s_current_extension, special_derivation
from .gf2 import EchelonBasis, Subspace, bits_of


class DeformationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Massey brackets
# ---------------------------------------------------------------------------


def _check_pair(phi: Cochain, psi: Cochain) -> None:
    for c in (phi, psi):
        if c.degree != 2 or c.space.kind != ADJOINT:
            raise CochainError("Massey brackets take adjoint 2-cochains")
    if phi.space.L != psi.space.L:
        raise CochainError("cochains live on different algebras")


def massey_half(phi: Cochain, psi: Cochain) -> Cochain:
    """(x, y, z) -> phi(psi(x,y), z) + phi(psi(z,x), y) + phi(psi(y,z), x)."""
    _check_pair(phi, psi)
    L = phi.space.L
    target = cochain_space(L, ADJOINT, 3)
    if not phi.bits or not psi.bits:
        return target.cochain(0)

    def value(x, y, z):
        return (
            phi.evaluate(psi.value(x, y), 1 << z)
            ^ phi.evaluate(psi.value(z, x), 1 << y)
            ^ phi.evaluate(psi.value(y, z), 1 << x)
        )

    return target.from_function(value)


def obstruction_pair(phi: Cochain, psi: Cochain) -> Cochain:
    return massey_half(phi, psi) + massey_half(psi, phi)


# ---------------------------------------------------------------------------
# deforming a graded table
# ---------------------------------------------------------------------------


@dataclass
class DeformationResult:
    table: AlgebraTable
    jacobi_ok: bool
    failing_triple: tuple[int, int, int] | None
    graded_ok: bool

    def to_json(self) -> dict:
        data = {"jacobi_ok": self.jacobi_ok, "graded_ok": self.graded_ok}
        if self.failing_triple is not None:
            data["failing_triple"] = [self.table.labels[i] for i in self.failing_triple]
        return data


def deform(L: AlgebraTable, mus: list[Cochain]) -> DeformationResult:
    """{x, y} = [x, y] + sum of mu(x, y), with every mu of positive weight."""
    if L.kind != LIE or L.weights is None:
        raise DeformationError("deform needs a graded Lie table")
    if not validate(L, limit=1).ok:
        raise DeformationError("the graded table is not a graded Lie algebra")
    total = 0
    for mu in mus:
        if mu.degree != 2 or mu.space.kind != ADJOINT or mu.space.L != L:
            raise DeformationError("each mu must be an adjoint 2-cochain on L")
        bad = [w for w in mu.weights() if w <= 0]
        if bad:
            raise DeformationError(f"mu has non-positive weight {min(bad)}")
        total ^= mu.bits
    mu = cochain_space(L, ADJOINT, 2).cochain(total)
    n, P, w = L.dim, L.products, L.weights
    rows = [list(r) for r in P]
    for (i, j), val in mu.nonzero_values().items():
        rows[i][j] ^= val
        rows[j][i] ^= val
    table = make_table(n, LIE, lambda i, j: rows[i][j], labels=L.labels, weights=None, provenance=L.provenance)

    # the associated graded algebra must be L again: the correction terms sit
    # strictly above the weight of the graded product
    graded_ok = all(
        all(w[k] > w[i] + w[j] for k in bits_of(rows[i][j] ^ P[i][j])) for i in range(n) for j in range(n)
    )
    report = validate(table, limit=1)
    fail = next((v.witness for v in report.violations if v.axiom == "jacobi"), None)
    return DeformationResult(table, report.ok, fail, graded_ok)


# ---------------------------------------------------------------------------
# the family on s (x) A + g (x) U + K D
# ---------------------------------------------------------------------------


@dataclass
class ExtensionDeformation:
    """Parameters of a filtered deformation of s (x) A + g (x) U + K D.

    ``xi`` is a functional on A given as a bitset over the basis; ``lam`` is a
    linear map A -> A whose image must lie in U.
    """

    A: AlgebraTable
    D: LinearMap
    U: Subspace
    v: int = 0
    w: int = 0
    xi: int = 0
    lam: LinearMap | None = None
    _graded: AlgebraTable | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.lam is None:
            self.lam = LinearMap.zero(self.A.dim, self.A.dim)

    @property
    def graded(self) -> AlgebraTable:
        if self._graded is None:
            self._graded = s_current_extension(self.A, self.D, self.U)
        return self._graded

    def params_json(self) -> dict:
        return {
            "v": list(bits_of(self.v)),
            "w": list(bits_of(self.w)),
            "xi": list(bits_of(self.xi)),
            "lambda": [list(bits_of(x)) for x in self.lam.images],
        }


class _Basis:
    """Index helpers for s (x) A + g (x) U + K D."""

    def __init__(self, spec: ExtensionDeformation):
        self.nA = spec.A.dim
        self.U = spec.U
        self.base = 3 * self.nA
        self.D = self.base + spec.U.dim

    def s(self, x: int, a: int) -> int:
        return a << (x * self.nA)

    def g(self, u: int) -> int:
        if not u:
            return 0
        coords = self.U.coordinates(u)
        if coords is None:
            raise DeformationError("a g-component falls outside U")
        return coords << self.base


def _xi_pair(spec: ExtensionDeformation, a: int, b: int) -> int:
    """xi(a)D(b) + xi(b)D(a)."""
    out = 0
    if functional(spec.xi, a):
        out ^= spec.D(b)
    if functional(spec.xi, b):
        out ^= spec.D(a)
    return out


def cocycle_v(spec: ExtensionDeformation) -> Cochain:
    """(e (x) a, h (x) b) -> f (x) abv."""
    B, A = _Basis(spec), spec.A
    vals = {}
    for a, b in product(range(B.nA), repeat=2):
        vals[(B.nA * E + a, B.nA * H + b)] = B.s(F, A.mul(A.mul(1 << a, 1 << b), spec.v))
    return cochain_space(spec.graded, ADJOINT, 2).from_values(vals)


def cocycle_w(spec: ExtensionDeformation) -> Cochain:
    """(e (x) a, D) -> f (x) aw."""
    B, A = _Basis(spec), spec.A
    vals = {(B.nA * E + a, B.D): B.s(F, A.mul(1 << a, spec.w)) for a in range(B.nA)}
    return cochain_space(spec.graded, ADJOINT, 2).from_values(vals)


def cocycle_xi(spec: ExtensionDeformation) -> Cochain:
    """The weight-2 cocycle attached to xi."""
    B, A = _Basis(spec), spec.A
    n = B.nA
    vals: dict = {}

    def put(p, q, val):
        vals[(p, q)] = vals.get((p, q), 0) ^ val

    for a, b in combinations(range(n), 2):
        pair = _xi_pair(spec, 1 << a, 1 << b)
        dterm = (1 << B.D) if functional(spec.xi, A.mul(1 << a, 1 << b)) else 0
        put(n * E + a, n * E + b, B.s(H, pair) ^ dterm)
        put(n * H + a, n * H + b, B.g(pair))
    for a, b in product(range(n), repeat=2):
        put(n * E + a, n * H + b, B.s(F, spec.D(1 << a)) if functional(spec.xi, 1 << b) else 0)
        put(n * E + a, n * F + b, B.g(_xi_pair(spec, 1 << a, 1 << b)))
    return cochain_space(spec.graded, ADJOINT, 2).from_values(vals)


def cochain_lambda(spec: ExtensionDeformation) -> Cochain:
    """(e (x) a, e (x) b) -> g (x) lambda(ab), of weight 4."""
    B, A = _Basis(spec), spec.A
    n = B.nA
    vals = {
        (n * E + a, n * E + b): B.g(spec.lam(A.mul(1 << a, 1 << b)))
        for a, b in combinations(range(n), 2)
    }
    return cochain_space(spec.graded, ADJOINT, 2).from_values(vals)


def deformation_cochains(spec: ExtensionDeformation) -> list[Cochain]:
    out = [cocycle_v(spec), cocycle_w(spec), cocycle_xi(spec)]
    if spec.U.dim:
        out.append(cochain_lambda(spec))
    elif not spec.lam.is_zero():
        raise DeformationError("lambda must vanish when U = 0")
    return [c for c in out if c.bits]


def cubic_constraint_defect(spec: ExtensionDeformation) -> tuple[int, int, int] | None:
    """First basis triple (a, b, c) violating
    (xi(ab)D(c) + xi(ca)D(b) + xi(bc)D(a)) v + (xi(ab)c + xi(ca)b + xi(bc)a) w
        = c lam(ab) + b lam(ca) + a lam(bc)."""
    A, D, lam, xi = spec.A, spec.D, spec.lam, spec.xi
    for a, b, c in combinations_with_replacement(range(A.dim), 3):
        a_, b_, c_ = 1 << a, 1 << b, 1 << c
        ab, ca, bc = A.mul(a_, b_), A.mul(c_, a_), A.mul(b_, c_)
        s1 = s2 = 0
        for p, q in ((ab, c_), (ca, b_), (bc, a_)):
            if functional(xi, p):
                s1 ^= D(q)
                s2 ^= q
        lhs = A.mul(s1, spec.v) ^ A.mul(s2, spec.w)
        rhs = A.mul(c_, lam(ab)) ^ A.mul(b_, lam(ca)) ^ A.mul(a_, lam(bc))
        if lhs != rhs:
            return (a, b, c)
    return None


def derivation_constraint_defect(spec: ExtensionDeformation) -> int | None:
    """First basis element a violating xi(a)D(w) + xi(w)D(a) = lam(D(a)) + D(lam(a))."""
    A, D, lam = spec.A, spec.D, spec.lam
    for a in range(A.dim):
        a_ = 1 << a
        lhs = _xi_pair(spec, a_, spec.w)
        if lhs != lam(D(a_)) ^ D(lam(a_)):
            return a
    return None


def u0_constraint_defect(spec: ExtensionDeformation) -> tuple[int, int, int] | None:
    """First basis triple violating (xi(ab)c + xi(ca)b + xi(bc)a) w = 0."""
    A, xi = spec.A, spec.xi
    for a, b, c in combinations_with_replacement(range(A.dim), 3):
        a_, b_, c_ = 1 << a, 1 << b, 1 << c
        s = 0
        for p, q in ((A.mul(a_, b_), c_), (A.mul(c_, a_), b_), (A.mul(b_, c_), a_)):
            if functional(xi, p):
                s ^= q
        if A.mul(s, spec.w):
            return (a, b, c)
    return None


def parameter_defects(spec: ExtensionDeformation) -> list[str]:
    """Violations of the standing assumptions on v, xi and lambda."""
    A, D, U = spec.A, spec.D, spec.U
    out = []
    if D(spec.v):
        out.append("D(v) != 0")
    if spec.xi not in _xi_elements(A, D, U):
        out.append("xi is outside the admissible space")
    for a in range(A.dim):
        if spec.lam(1 << a) not in U:
            out.append(f"lambda({A.labels[a]}) is outside U")
            break
    for s in squares_subalgebra(A).basis:
        if spec.lam(s):
            out.append("lambda does not vanish on the squares")
            break
    return out


_XI_CACHE: dict = {}


def _xi_elements(A, D, U) -> set[int]:
    key = (A.products, D.images, U.basis)
    if key not in _XI_CACHE:
        _XI_CACHE[key] = set(xi_space(A, D, U).elements())
    return _XI_CACHE[key]


def build_deformation(spec: ExtensionDeformation, check: bool = True) -> DeformationResult:
    """The deformed bracket of the family; with ``check`` the constraints must hold."""
    if check:
        problems = parameter_defects(spec)
        if spec.U.dim:
            t = cubic_constraint_defect(spec)
            if t is not None:
                problems.append(f"cubic constraint fails on basis triple {t}")
            a = derivation_constraint_defect(spec)
            if a is not None:
                problems.append(f"derivation constraint fails on basis element {a}")
        else:
            t = u0_constraint_defect(spec)
            if t is not None:
                problems.append(f"xi-w constraint fails on basis triple {t}")
        if problems:
            raise DeformationError("; ".join(problems))
    return deform(spec.graded, deformation_cochains(spec))


def build_deformation_u0(A, D, v: int, w: int, xi: int, check: bool = True) -> DeformationResult:
    spec = ExtensionDeformation(A, D, Subspace.zero(A.dim), v=v, w=w, xi=xi)
    return build_deformation(spec, check=check)


def verdict(spec: ExtensionDeformation) -> dict:
    """Jacobi outcome next to the constraint checks, as a JSON-ready dict."""
    result = deform(spec.graded, deformation_cochains(spec))
    data = {"params": spec.params_json(), "jacobi_ok": result.jacobi_ok}
    if result.failing_triple is not None:
        data["failing_triple"] = [result.table.labels[i] for i in result.failing_triple]
    if spec.U.dim:
        cons = {
            "cubic_ok": cubic_constraint_defect(spec) is None,
            "derivation_ok": derivation_constraint_defect(spec) is None,
        }
    else:
        cons = {"xi_w_ok": u0_constraint_defect(spec) is None}
    data["constraints"] = cons
    data["constraints_ok"] = all(cons.values())
    return data


# ---------------------------------------------------------------------------
# enumeration over O1(2) with the special derivation
# ---------------------------------------------------------------------------


def _linear_maps_into(A: AlgebraTable, U: Subspace, zero_on: Subspace) -> list[LinearMap]:
    """All linear maps A -> U vanishing on ``zero_on`` (a coordinate subspace)."""
    free = [i for i in range(A.dim) if not (zero_on.basis and (1 << i) in zero_on)]
    values = [0] + [u for u in _all_elements(U) if u]
    maps = []
    for choice in product(values, repeat=len(free)):
        images = [0] * A.dim
        for i, u in zip(free, choice):
            images[i] = u
        maps.append(LinearMap(A.dim, A.dim, tuple(images)))
    return maps


def _all_elements(U: Subspace) -> list[int]:
    out = []
    for mask in range(1 << U.dim):
        v = 0
        for k in bits_of(mask):
            v ^= U.basis[k]
        out.append(v)
    return out


def enumerate_family(U_support: list[int], w_all: bool = False) -> list[dict]:
    """Verdicts over all parameters on O1(2) with D = the special derivation.

    v runs over Ker D, w over a complement of D(A) + U (all of A if ``w_all``),
    xi over the admissible functionals, lambda over maps A -> U vanishing on
    the squares.  ``U_support`` lists the basis indices spanning U.
    """
    A = divided_powers(2)
    D = special_derivation(2)
    U = Subspace.span(A.dim, [1 << i for i in U_support])
    graded = s_current_extension(A, D, U)
    kernel = _all_elements(D.kernel())
    image_plus_u = Subspace.span(A.dim, list(D.image().basis) + list(U.basis))
    if w_all:
        ws = list(range(1 << A.dim))
    else:
        from .gf2 import complement_basis

        comp = complement_basis(Subspace.full(A.dim), image_plus_u)
        ws = _all_elements(Subspace.span(A.dim, comp))
    xis = sorted(_xi_elements(A, D, U))
    lams = _linear_maps_into(A, U, squares_subalgebra(A)) if U.dim else [LinearMap.zero(A.dim, A.dim)]
    out = []
    for v, w, xi, lam in product(kernel, ws, xis, lams):
        spec = ExtensionDeformation(A, D, U, v=v, w=w, xi=xi, lam=lam, _graded=graded)
        out.append(verdict(spec))
    return out


# ---------------------------------------------------------------------------
# the 15-dimensional simple algebras
# ---------------------------------------------------------------------------

# products that differ from the graded algebra; "B" marks a beta-multiple,
# "Dl" a delta-multiple, labels as in o12_extension with U = <1, x>
_FIFTEEN_ROWS = [
    ("e*1", "e*x", [("B", "g*x")]),
    ("e*1", "e*x(2)", [("Dl", "g*1")]),
    ("e*1", "e*x(3)", [("Dl", "g*x"), ("", "d")]),
    ("e*x", "e*x(2)", [("Dl", "g*x"), ("", "d")]),
    ("e*x", "e*x(3)", [("", "h*1")]),
    ("e*x(2)", "e*x(3)", [("", "h*x")]),
    ("e*x", "h*x(3)", [("", "f*1")]),
    ("e*x(2)", "h*x(3)", [("", "f*x")]),
    ("e*x(3)", "h*x(3)", [("", "f*x(2)")]),
    ("e*x", "f*x(3)", [("", "g*1")]),
    ("e*x(3)", "f*x", [("", "g*1")]),
    ("e*x(2)", "f*x(3)", [("", "g*x")]),
    ("e*x(3)", "f*x(2)", [("", "g*x")]),
    ("h*x", "h*x(3)", [("", "g*1")]),
    ("h*x(2)", "h*x(3)", [("", "g*x")]),
    ("e*1", "d", [("B", "f*x(3)")]),
]


def fifteen_dim(beta: int, delta: int) -> AlgebraTable:
    """The deformed 15-dimensional algebra with parameters beta, delta in GF(2)."""
    from .constructions import o12_extension

    if beta not in (0, 1) or delta not in (0, 1):
        raise DeformationError("beta and delta must be 0 or 1")
    L = o12_extension([[0], [1]])
    rows = [list(r) for r in L.products]
    scale = {"": 1, "B": beta, "Dl": delta}
    for x, y, terms in _FIFTEEN_ROWS:
        i, j = L.index(x), L.index(y)
        val = 0
        for s, lab in terms:
            if scale[s]:
                val ^= 1 << L.index(lab)
        rows[i][j] = rows[j][i] = val
    return make_table(
        L.dim,
        LIE,
        lambda i, j: rows[i][j],
        labels=L.labels,
        weights=None,
        provenance={"construct": "fifteen_dim", "beta": beta, "delta": delta},
    )


def fifteen_dim_parameters(beta: int, delta: int) -> ExtensionDeformation:
    """The family parameters that reproduce fifteen_dim(beta, delta)."""
    A = divided_powers(2)
    D = special_derivation(2)
    U = Subspace.span(4, [1, 2])
    one, x, x2, x3 = 1, 2, 4, 8
    lam = LinearMap(4, 4, (0, beta * x, delta * one, delta * x))
    return ExtensionDeformation(A, D, U, v=0, w=beta * x3, xi=x3, lam=lam)


# ---------------------------------------------------------------------------
# second-order prolongation
# ---------------------------------------------------------------------------


@dataclass
class Prolongation:
    mu2: Cochain | None
    higher_vanish: bool | None = None
    result: DeformationResult | None = None

    @property
    def exists(self) -> bool:
        return self.mu2 is not None


def lambda_ansatz(spec: ExtensionDeformation) -> list[Cochain]:
    """Weight-4 cochains (e (x) a, e (x) b) -> g (x) lambda(ab) for lambda running
    over a basis of the maps A -> U vanishing on the squares."""
    A, U = spec.A, spec.U
    squares = squares_subalgebra(A)
    free = [i for i in range(A.dim) if (1 << i) not in squares]
    out = []
    for i in free:
        for u in U.basis:
            images = [0] * A.dim
            images[i] = u
            lam = LinearMap(A.dim, A.dim, tuple(images))
            sub = ExtensionDeformation(A, spec.D, U, lam=lam, _graded=spec.graded)
            out.append(cochain_lambda(sub))
    return out


def prolong_check(L: AlgebraTable, mu1: Cochain, ansatz: list[Cochain] | None = None) -> Prolongation:
    """Find mu2 with d(mu2) = massey_half(mu1, mu1), then check that the
    remaining brackets vanish and the resulting bracket satisfies Jacobi.

    ``ansatz`` spans the space searched for mu2; by default every cochain
    whose weight occurs in the obstruction.
    """
    if not is_cocycle(mu1):
        raise DeformationError("mu1 is not a cocycle")
    if any(w <= 0 for w in mu1.weights()):
        raise DeformationError("mu1 must have positive weight")
    space2 = cochain_space(L, ADJOINT, 2)
    obstruction = massey_half(mu1, mu1)
    cols = coboundary_columns(L, ADJOINT, 2)
    if ansatz is None:
        weights = obstruction.weights()
        ansatz = [space2.cochain(1 << c) for c in range(space2.dim) if space2.coordinate_weight(c) in weights]
    images = []
    for c in ansatz:
        img = 0
        for k in bits_of(c.bits):
            img ^= cols[k]
        images.append(img)
    eb = EchelonBasis(track=True)
    for img in images:
        eb.add(img)
    # express() reports coordinates over the vectors actually inserted, which
    # are exactly the images in order (dependent ones leave no pivot)
    combo = eb.express(obstruction.bits)
    if combo is None:
        return Prolongation(None)
    bits = 0
    for k in bits_of(combo):
        bits ^= ansatz[k].bits
    mu2 = space2.cochain(bits)
    if coboundary(mu2) != obstruction:
        raise AssertionError("prolongation solve produced a wrong witness")
    higher = obstruction_pair(mu1, mu2) + massey_half(mu2, mu2)
    result = deform(L, [c for c in (mu1, mu2) if c.bits])
    return Prolongation(mu2, not higher.bits, result)
