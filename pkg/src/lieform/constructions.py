"""Builders for divided powers, Zassenhaus algebras, current algebras and
their extensions by derivations.

Index conventions (relied on by the cohomology and deformation modules):

* ``O1(n)`` has basis ``x^(i)``, ``0 <= i < 2**n``, at index ``i``; the unit is index 0.
* ``W1(n)`` has basis ``e_i``, ``-1 <= i <= 2**n - 2``, at index ``i + 1``.
  For ``n = 2`` the labels are ``e, h, f, g`` at indices 0..3.
* ``L (x) A`` puts ``x_i (x) a_j`` at index ``i * dim(A) + j``.
* ``extend`` appends ``D (x) u`` blocks (one per outer derivation, ``u`` running
  over the echelon basis of ``U``) and then the derivations of ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import COMM, LIE, AlgebraError, AlgebraTable, LinearMap, leibniz_failure, make_table
from .gf2 import Subspace, bits_of

E, H, F, G = 0, 1, 2, 3


def binomial_parity(n: int, k: int) -> int:
    """binom(n, k) mod 2 by Lucas: odd iff the bits of k are a subset of those of n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & ~n) == 0 else 0


def _power_label(i: int) -> str:
    if i == 0:
        return "1"
    if i == 1:
        return "x"
    return f"x({i})"


def divided_powers(n: int) -> AlgebraTable:
    if n < 1:
        raise ValueError("height n must be at least 1")
    size = 1 << n

    def rule(i, j):
        if i + j >= size or (i & j):
            return 0
        return 1 << (i + j)

    return make_table(
        size,
        COMM,
        rule,
        labels=[_power_label(i) for i in range(size)],
        unit=0,
        provenance={"construct": "divided_powers", "n": n},
    )


def ground_field() -> AlgebraTable:
    """The one-dimensional unital algebra K."""
    return make_table(1, COMM, lambda i, j: 1, labels=["1"], unit=0, provenance={"construct": "ground_field"})


def special_derivation(n: int) -> LinearMap:
    """x^(i) -> x^(i-1), 1 -> 0."""
    if n < 1:
        raise ValueError("height n must be at least 1")
    size = 1 << n
    return LinearMap(size, size, tuple(0 if i == 0 else 1 << (i - 1) for i in range(size)))


def _zassenhaus_rule(top: int):
    # index k <-> e_{k-1}; keep e_i with -1 <= i <= top
    def rule(a, b):
        i, j = a - 1, b - 1
        s = i + j
        if not -1 <= s <= top:
            return 0
        if binomial_parity(i + j + 2, i + 1):
            return 1 << (s + 1)
        return 0

    return rule


def _zassenhaus_labels(n: int, top: int) -> list[str]:
    if n == 2:
        return ["e", "h", "f", "g"][: top + 2]
    return [f"e{i}" for i in range(-1, top + 1)]


def zassenhaus(n: int) -> AlgebraTable:
    if n < 1:
        raise ValueError("n must be at least 1")
    top = (1 << n) - 2
    return make_table(
        top + 2,
        LIE,
        _zassenhaus_rule(top),
        labels=_zassenhaus_labels(n, top),
        weights=list(range(-1, top + 1)),
        provenance={"construct": "zassenhaus", "n": n},
    )


def zassenhaus_derived(n: int) -> AlgebraTable:
    """The commutant W1'(n), basis e_{-1} .. e_{2^n - 3}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    top = (1 << n) - 3
    return make_table(
        top + 2,
        LIE,
        _zassenhaus_rule(top),
        labels=_zassenhaus_labels(n, top),
        weights=list(range(-1, top + 1)),
        provenance={"construct": "zassenhaus_derived", "n": n},
    )


def simple3() -> AlgebraTable:
    """The 3-dimensional simple algebra W1'(2): [e,h]=e, [f,h]=f, [e,f]=h."""
    return zassenhaus_derived(2)


def current_algebra(L: AlgebraTable, A: AlgebraTable) -> AlgebraTable:
    if L.kind != LIE or A.kind != COMM:
        raise AlgebraError("current algebra needs a Lie table and an assoc-comm-unital table")
    nA = A.dim

    def rule(p, q):
        i, a = divmod(p, nA)
        j, b = divmod(q, nA)
        xy = L.products[i][j]
        ab = A.products[a][b]
        out = 0
        for k in bits_of(xy):
            out |= ab << (k * nA)
        return out

    labels = [f"{x}*{a}" for x in L.labels for a in A.labels]
    weights = [w for w in L.weights for _ in range(nA)] if L.weights is not None else None
    return make_table(
        L.dim * nA,
        LIE,
        rule,
        labels=labels,
        weights=weights,
        provenance={"construct": "current", "L": L.provenance, "A": A.provenance},
    )


def ad_squared(S: AlgebraTable, index: int) -> LinearMap:
    """(ad s)^2 for the basis element s = S[index]; x -> [[x, s], s]."""
    ad = S.ad(1 << index)
    return ad.compose(ad)


def adf_squared(S: AlgebraTable, f_index: int = F) -> LinearMap:
    return ad_squared(S, f_index)


@dataclass
class ExtensionSpec:
    """Data for S (x) A + D (x) U + E with homogeneous derivations."""

    S: AlgebraTable
    A: AlgebraTable
    outer: Sequence[LinearMap]
    U: Subspace
    inner: Sequence[LinearMap] = ()
    outer_weights: Sequence[int] = ()
    outer_labels: Sequence[str] = ()
    inner_labels: Sequence[str] = ()
    provenance: dict | None = field(default=None)


class ExtensionError(ValueError):
    pass


def _check_extension(spec: ExtensionSpec) -> None:
    S, A = spec.S, spec.A
    if S.kind != LIE or A.kind != COMM:
        raise ExtensionError("S must be Lie and A assoc-comm-unital")
    if spec.U.ambient != A.dim:
        raise ExtensionError("U must be a subspace of A")
    for k, D in enumerate(spec.outer):
        bad = leibniz_failure(S, D)
        if bad is not None:
            raise ExtensionError(f"outer derivation {k} violates Leibniz on basis pair {bad}")
    for k, Dk in enumerate(spec.outer):
        for D2 in spec.outer[k + 1 :]:
            if not Dk.commutator(D2).is_zero():
                raise ExtensionError("outer derivations must commute (D (x) U is abelian)")
    for k, Ek in enumerate(spec.inner):
        bad = leibniz_failure(A, Ek)
        if bad is not None:
            raise ExtensionError(f"derivation {k} of A violates Leibniz on basis pair {bad}")
        for u in spec.U.basis:
            if Ek(u) not in spec.U:
                raise ExtensionError(f"U is not invariant under derivation {k}")
    if spec.outer and S.weights is not None and len(spec.outer_weights) != len(spec.outer):
        raise ExtensionError("one weight per outer derivation required for graded S")


def extend(spec: ExtensionSpec) -> AlgebraTable:
    _check_extension(spec)
    S, A, U = spec.S, spec.A, spec.U
    nS, nA, nU = S.dim, A.dim, U.dim
    outer, inner = list(spec.outer), list(spec.inner)
    base = nS * nA
    n_outer = len(outer) * nU
    dim = base + n_outer + len(inner)

    def tensor(xs: int, a: int) -> int:
        # (sum of S-basis x_k) (x) a  as a bitset in S (x) A
        out = 0
        for k in bits_of(xs):
            out |= a << (k * nA)
        return out

    def outer_vec(k: int, u: int) -> int:
        coords = U.coordinates(u)
        if coords is None:
            raise ExtensionError("value outside U")
        return coords << (base + k * nU)

    inner_span = Subspace.span(nA * nA, [E_.flat() for E_ in inner]) if inner else None

    def inner_vec(m: LinearMap) -> int:
        if m.is_zero():
            return 0
        from .gf2 import EchelonBasis

        eb = EchelonBasis(track=True)
        for E_ in inner:
            eb.add(E_.flat())
        coords = eb.express(m.flat())
        if coords is None:
            raise ExtensionError("derivations of A do not close under commutator")
        return coords << (base + n_outer)

    def kind_of(p):
        if p < base:
            return ("sa",) + divmod(p, nA)
        p -= base
        if p < n_outer:
            k, r = divmod(p, nU)
            return ("du", k, U.basis[r])
        return ("e", p - n_outer)

    def rule(p, q):
        if p == q:
            return 0
        kp, kq = kind_of(p), kind_of(q)
        if kp[0] > kq[0]:
            kp, kq = kq, kp
        # ordering of tags: "du" < "e" < "sa"
        if kp[0] == "sa" and kq[0] == "sa":
            _, i, a = kp
            _, j, b = kq
            return tensor(S.products[i][j], A.products[a][b])
        if kp[0] == "du" and kq[0] == "sa":
            _, k, u = kp
            _, i, a = kq
            return tensor(outer[k].images[i], A.mul(1 << a, u))
        if kp[0] == "e" and kq[0] == "sa":
            _, k = kp
            _, i, a = kq
            return tensor(1 << i, inner[k].images[a])
        if kp[0] == "du" and kq[0] == "e":
            _, k, u = kp
            _, m = kq
            return outer_vec(k, inner[m](u))
        if kp[0] == "du" and kq[0] == "du":
            return 0
        if kp[0] == "e" and kq[0] == "e":
            return inner_vec(inner[kp[1]].commutator(inner[kq[1]]))
        raise AssertionError((kp, kq))

    outer_labels = list(spec.outer_labels) or [f"D{k}" for k in range(len(outer))]
    inner_labels = list(spec.inner_labels) or [f"E{k}" for k in range(len(inner))]
    labels = [f"{x}*{a}" for x in S.labels for a in A.labels]
    for k in range(len(outer)):
        for u in U.basis:
            labels.append(f"{outer_labels[k]}*{A.label_of(u).replace(' ', '')}")
    labels += inner_labels

    weights = None
    if S.weights is not None:
        weights = [w for w in S.weights for _ in range(nA)]
        for k in range(len(outer)):
            weights += [spec.outer_weights[k]] * nU
        weights += [0] * len(inner)

    return make_table(dim, LIE, rule, labels=labels, weights=weights, provenance=spec.provenance)


def s_current_extension(A: AlgebraTable, D: LinearMap, U: Subspace, A_name: str = "A") -> AlgebraTable:
    """s (x) A + g (x) U + K D with g = (ad f)^2 of weight 2 (the U = 0 case drops g)."""
    S = simple3()
    spec = ExtensionSpec(
        S=S,
        A=A,
        outer=[adf_squared(S)] if U.dim else [],
        U=U,
        inner=[D],
        outer_weights=[2] if U.dim else [],
        outer_labels=["g"],
        inner_labels=["D"],
        provenance={
            "construct": "extend",
            "S": "W1'(2)",
            "A": A_name,
            "U": [list(bits_of(u)) for u in U.basis],
            "E": ["D"],
        },
    )
    return extend(spec)


def o12_extension(U_support: Sequence[Sequence[int]] | None = None) -> AlgebraTable:
    """s (x) O1(2) + g (x) U + K d, the graded algebras of the rank-2 analysis."""
    A = divided_powers(2)
    U = Subspace.span(4, [sum(1 << i for i in s) for s in (U_support or [])])
    L = s_current_extension(A, special_derivation(2), U, A_name="O1(2)")
    labels = list(L.labels)
    labels[-1] = "d"
    return make_table(
        L.dim,
        LIE,
        lambda i, j: L.products[i][j],
        labels=labels,
        weights=L.weights,
        provenance={
            "construct": "extend",
            "S": "W1'(2)",
            "A": "O1(2)",
            "U": [list(bits_of(u)) for u in U.basis],
            "E": ["partial"],
        },
    )


def build_from_spec(spec: dict) -> AlgebraTable:
    """Build a table from a construction spec (the CLI ``build`` input)."""
    from .deformations import fifteen_dim

    try:
        kind = spec["construct"]
    except (KeyError, TypeError):
        raise AlgebraError("construction spec needs a 'construct' field") from None
    if kind == "divided_powers":
        return divided_powers(int(spec["n"]))
    if kind == "ground_field":
        return ground_field()
    if kind == "zassenhaus":
        return zassenhaus(int(spec["n"]))
    if kind == "zassenhaus_derived":
        return zassenhaus_derived(int(spec["n"]))
    if kind == "current":
        return current_algebra(build_from_spec(spec["L"]), build_from_spec(spec["A"]))
    if kind == "extend":
        if spec.get("S", "W1'(2)") != "W1'(2)" or spec.get("A", "O1(2)") != "O1(2)":
            raise AlgebraError("extend supports S = W1'(2), A = O1(2)")
        if spec.get("E", ["partial"]) != ["partial"]:
            raise AlgebraError("extend supports E = ['partial']")
        U = spec.get("U", [])
        # U given as basis indices of O1(2), e.g. [0, 1] for <1, x>
        return o12_extension([[i] for i in U])
    if kind == "fifteen_dim":
        return fifteen_dim(int(spec.get("beta", 0)), int(spec.get("delta", 0)))
    raise AlgebraError(f"unknown construction {kind!r}")
