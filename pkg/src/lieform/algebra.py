"""Structure-constant tables of finite-dimensional algebras over GF(2)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .gf2 import BitMatrix, BitVector, DimensionError, EchelonBasis, Subspace, bits_of

LIE = "lie"
COMM = "assoc-comm-unital"
KINDS = (LIE, COMM)


class AlgebraError(ValueError):
    """Malformed algebra data (bad schema, shape mismatch, missing grading)."""


@dataclass(frozen=True)
class LinearMap:
    """GF(2)-linear map stored by the images of the source basis vectors."""

    source: int
    target: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source:
            raise DimensionError(f"expected {self.source} images, got {len(self.images)}")
        for im in self.images:
            if im < 0 or im >> self.target:
                raise DimensionError(f"image exceeds target dimension {self.target}")

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> LinearMap:
        return cls(m.ncols, m.nrows, tuple(m.columns()))

    @classmethod
    def identity(cls, n: int) -> LinearMap:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, source: int, target: int) -> LinearMap:
        return cls(source, target, (0,) * source)

    @property
    def matrix(self) -> BitMatrix:
        return BitMatrix.from_columns(self.images, self.target)

    def __call__(self, v: int) -> int:
        out = 0
        for i in bits_of(v):
            out ^= self.images[i]
        return out

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.source:
            raise DimensionError(f"vector length {v.length} != source {self.source}")
        return BitVector(self.target, self(v.bits))

    def compose(self, other: LinearMap) -> LinearMap:
        """``self`` after ``other``."""
        if other.target != self.source:
            raise DimensionError("composition shape mismatch")
        return LinearMap(other.source, self.target, tuple(self(im) for im in other.images))

    def __add__(self, other: LinearMap) -> LinearMap:
        if (self.source, self.target) != (other.source, other.target):
            raise DimensionError("shape mismatch")
        return LinearMap(self.source, self.target, tuple(a ^ b for a, b in zip(self.images, other.images)))

    def commutator(self, other: LinearMap) -> LinearMap:
        return self.compose(other) + other.compose(self)

    def is_zero(self) -> bool:
        return not any(self.images)

    def flat(self) -> int:
        """Images concatenated into one bitset (column-major flattening)."""
        out = 0
        for i, im in enumerate(self.images):
            out |= im << (i * self.target)
        return out

    @classmethod
    def unflat(cls, bits: int, source: int, target: int) -> LinearMap:
        mask = (1 << target) - 1
        return cls(source, target, tuple((bits >> (i * target)) & mask for i in range(source)))

    def kernel(self) -> Subspace:
        from .gf2 import column_kernel

        return Subspace.span(self.source, column_kernel(self.images))

    def image(self) -> Subspace:
        return Subspace.span(self.target, self.images)


@dataclass(frozen=True)
class GradingInfo:
    weights: tuple[int, ...]
    depth: int
    length: int


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    kind: str
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_json(self) -> dict:
        return {"kind": self.kind, "valid": self.ok, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    """Products of basis elements: ``products[i][j]`` is a bitset of length ``dim``.

    All ordered pairs are stored.  ``weights`` (optional) is an integer
    grading, one weight per basis element.
    """

    dim: int
    kind: str
    products: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    weights: tuple[int, ...] | None = None
    unit: int | None = None
    provenance: Any = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AlgebraError(f"unknown kind {self.kind!r}")
        if len(self.products) != self.dim or any(len(r) != self.dim for r in self.products):
            raise AlgebraError("product table must be dim x dim")
        for row in self.products:
            for p in row:
                if p < 0 or p >> self.dim:
                    raise AlgebraError("product exceeds dimension")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(self.dim)))
        if len(self.labels) != self.dim:
            raise AlgebraError("one label per basis element required")
        if self.weights is not None and len(self.weights) != self.dim:
            raise AlgebraError("one weight per basis element required")
        if self.kind == COMM and self.unit is None:
            raise AlgebraError("assoc-comm-unital tables need a unit index")
        if self.unit is not None and not 0 <= self.unit < self.dim:
            raise AlgebraError("unit index out of range")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (self.dim, self.kind, self.products, self.weights, self.unit) == (
            other.dim,
            other.kind,
            other.products,
            other.weights,
            other.unit,
        )

    def __hash__(self):
        return hash((self.dim, self.kind, self.products))

    # -- arithmetic -------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        """Bilinear product of two bitset vectors."""
        out = 0
        for i in bits_of(x):
            row = self.products[i]
            for j in bits_of(y):
                out ^= row[j]
        return out

    def product(self, i: int, j: int) -> BitVector:
        return BitVector(self.dim, self.products[i][j])

    def left(self, x: int) -> LinearMap:
        """Map y -> x*y (for Lie tables: y -> [x, y])."""
        return LinearMap(self.dim, self.dim, tuple(self.mul(x, 1 << j) for j in range(self.dim)))

    def ad(self, x: int) -> LinearMap:
        return self.left(x)

    def ad_basis(self) -> list[LinearMap]:
        return [LinearMap(self.dim, self.dim, tuple(self.products[i])) for i in range(self.dim)]

    def label_of(self, v: int) -> str:
        if not v:
            return "0"
        return " + ".join(self.labels[i] for i in bits_of(v))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"no basis element labelled {label!r}") from None

    def vec(self, *labels: str) -> int:
        out = 0
        for lab in labels:
            out ^= 1 << self.index(lab)
        return out

    def with_products(self, products, **changes) -> AlgebraTable:
        data = dict(
            dim=self.dim,
            kind=self.kind,
            products=tuple(tuple(r) for r in products),
            labels=self.labels,
            weights=self.weights,
            unit=self.unit,
            provenance=self.provenance,
        )
        data.update(changes)
        return AlgebraTable(**data)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                p = self.products[i][j]
                if p:
                    entries.append({"i": i, "j": j, "out": list(bits_of(p))})
        data: dict[str, Any] = {
            "dim": self.dim,
            "kind": self.kind,
            "labels": list(self.labels),
            "basis_order": "tensor factors index-major: (x_i (x) a_j) at i*dim(A)+j",
        }
        if self.weights is not None:
            data["weights"] = list(self.weights)
        if self.unit is not None:
            data["unit"] = self.unit
        data["products"] = entries
        if self.provenance is not None:
            data["provenance"] = self.provenance
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict) -> AlgebraTable:
        try:
            dim = int(data["dim"])
            kind = data["kind"]
            entries = data.get("products", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"missing or malformed field: {exc}") from None
        if dim < 0:
            raise AlgebraError("dim must be non-negative")
        table = [[0] * dim for _ in range(dim)]
        for pos, e in enumerate(entries):
            try:
                i, j, out = int(e["i"]), int(e["j"]), e["out"]
                vec = 0
                for k in out:
                    k = int(k)
                    if not 0 <= k < dim:
                        raise ValueError(f"output index {k} out of range")
                    vec ^= 1 << k
            except (KeyError, TypeError, ValueError) as exc:
                raise AlgebraError(f"products[{pos}]: {exc}") from None
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"products[{pos}]: index out of range")
            if i > j:
                i, j = j, i
            table[i][j] = vec
            table[j][i] = vec
        weights = data.get("weights")
        unit = data.get("unit")
        return cls(
            dim=dim,
            kind=kind,
            products=tuple(tuple(r) for r in table),
            labels=tuple(data.get("labels") or ()),
            weights=tuple(int(w) for w in weights) if weights is not None else None,
            unit=int(unit) if unit is not None else None,
            provenance=data.get("provenance"),
        )

    @classmethod
    def loads(cls, text: str) -> AlgebraTable:
        return cls.from_json(json.loads(text))


def make_table(
    dim: int,
    kind: str,
    rule,
    labels: Sequence[str] = (),
    weights: Sequence[int] | None = None,
    unit: int | None = None,
    provenance=None,
) -> AlgebraTable:
    """Build a table from ``rule(i, j) -> bitset``."""
    products = tuple(tuple(rule(i, j) for j in range(dim)) for i in range(dim))
    return AlgebraTable(
        dim=dim,
        kind=kind,
        products=products,
        labels=tuple(labels),
        weights=tuple(weights) if weights is not None else None,
        unit=unit,
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(table: AlgebraTable, limit: int | None = None) -> ValidationReport:
    """Check the axioms of ``table.kind`` and the grading constraint.

    Every violation carries a witness tuple of basis indices.  ``limit`` caps
    the number of recorded violations per axiom.
    """
    n, P = table.dim, table.products
    found: list[Violation] = []
    counts: dict[str, int] = {}

    def report(axiom, witness, detail=""):
        c = counts.get(axiom, 0)
        if limit is None or c < limit:
            found.append(Violation(axiom, tuple(witness), detail))
        counts[axiom] = c + 1

    for i in range(n):
        for j in range(i + 1, n):
            if P[i][j] != P[j][i]:
                report("symmetry", (i, j))

    if table.kind == LIE:
        for i in range(n):
            if P[i][i]:
                report("alternating", (i, i))
        for i, j, k in combinations(range(n), 3):
            if jacobi(table, 1 << i, 1 << j, 1 << k):
                report("jacobi", (i, j, k))
    else:
        for i in range(n):
            for j in range(n):
                pij = P[i][j]
                for k in range(n):
                    if table.mul(pij, 1 << k) != table.mul(1 << i, P[j][k]):
                        report("associativity", (i, j, k))
        u = table.unit
        for i in range(n):
            if P[u][i] != 1 << i or P[i][u] != 1 << i:
                report("unit", (u, i))

    if table.weights is not None:
        w = table.weights
        for i in range(n):
            for j in range(n):
                for k in bits_of(P[i][j]):
                    if w[k] != w[i] + w[j]:
                        report("grading", (i, j, k), f"weight {w[k]} != {w[i]} + {w[j]}")
    return ValidationReport(table.kind, tuple(found))


def jacobi(table: AlgebraTable, x: int, y: int, z: int) -> int:
    """The (signless) Jacobi sum [[x,y],z] + [[y,z],x] + [[z,x],y]."""
    m = table.mul
    return m(m(x, y), z) ^ m(m(y, z), x) ^ m(m(z, x), y)


def bracket(table: AlgebraTable, x: BitVector, y: BitVector) -> BitVector:
    if x.length != table.dim or y.length != table.dim:
        raise DimensionError(f"vectors must have length {table.dim}")
    return BitVector(table.dim, table.mul(x.bits, y.bits))


def is_derivation(table: AlgebraTable, d: LinearMap) -> bool:
    return leibniz_failure(table, d) is None


def leibniz_failure(table: AlgebraTable, d: LinearMap) -> tuple[int, int] | None:
    n = table.dim
    if d.source != n or d.target != n:
        raise DimensionError("derivation must be an endomorphism")
    for i in range(n):
        for j in range(i, n):
            p = table.products[i][j]
            lhs = d(p)
            rhs = table.mul(d.images[i], 1 << j) ^ table.mul(1 << i, d.images[j])
            if lhs != rhs:
                return (i, j)
    return None


# ---------------------------------------------------------------------------
# subspace utilities
# ---------------------------------------------------------------------------


def span_closure(
    table: AlgebraTable,
    seed: Subspace,
    mode: str | None = "ideal",
    maps: Iterable[LinearMap] = (),
) -> Subspace:
    """Least subspace containing ``seed`` closed under the listed operations.

    ``mode="ideal"`` closes under bracketing with all of the algebra,
    ``mode="subalgebra"`` under products of elements of the subspace itself,
    ``None`` only under the unary ``maps``.
    """
    if seed.ambient != table.dim:
        raise DimensionError(f"seed ambient {seed.ambient} != dim {table.dim}")
    if mode not in ("ideal", "subalgebra", None):
        raise ValueError(f"unknown closure mode {mode!r}")
    maps = list(maps)
    basis = EchelonBasis()
    members: list[int] = []
    queue: list[int] = []
    for b in seed.basis:
        if basis.add(b):
            members.append(b)
            queue.append(b)
    ads = table.ad_basis() if mode == "ideal" else None
    while queue:
        v = queue.pop()
        if mode == "ideal":
            candidates = [ad(v) for ad in ads]
        elif mode == "subalgebra":
            candidates = [table.mul(v, u) for u in members]
        else:
            candidates = []
        candidates += [m(v) for m in maps]
        for c in candidates:
            if c and basis.add(c):
                members.append(c)
                queue.append(c)
    return Subspace.span(table.dim, members)


def grading(table: AlgebraTable) -> GradingInfo:
    if table.weights is None:
        raise AlgebraError("no grading defined")
    w = table.weights
    neg = [-x for x in w if x < 0]
    pos = [x for x in w if x > 0]
    return GradingInfo(tuple(w), max(neg, default=0), max(pos, default=0))


def weight_component(table: AlgebraTable, w: int) -> Subspace:
    if table.weights is None:
        raise AlgebraError("no grading defined")
    return Subspace.coordinate(table.dim, [i for i, x in enumerate(table.weights) if x == w])
