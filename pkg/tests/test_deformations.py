from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieform.algebra import validate
from lieform.cohomology import ADJOINT, coboundary, cochain_space, cohomology, is_cocycle
from lieform.constructions import E, F, H, divided_powers, simple3, special_derivation, zassenhaus
from lieform.deformations import (
    DeformationError,
    ExtensionDeformation,
    build_deformation,
    cocycle_v,
    cocycle_w,
    cocycle_xi,
    deform,
    deformation_cochains,
    enumerate_family,
    fifteen_dim,
    fifteen_dim_parameters,
    lambda_ansatz,
    massey_half,
    obstruction_pair,
    prolong_check,
    verdict,
)
from lieform.gf2 import Subspace

A = divided_powers(2)
D = special_derivation(2)
U1X = Subspace.span(4, [1, 2])


def add_cochain(L, mu):
    rows = [list(r) for r in L.products]
    for (i, j), val in mu.nonzero_values().items():
        rows[i][j] ^= val
        rows[j][i] ^= val
    return L.with_products(rows, weights=None)


@pytest.mark.parametrize("L", [simple3(), zassenhaus(2)], ids=["s", "W1(2)"])
def test_jacobi_of_a_perturbed_bracket_is_d_mu_plus_half_bracket(L):
    """[,] + mu is Lie exactly when d(mu) = massey_half(mu, mu)."""
    sp = cochain_space(L, ADJOINT, 2)
    rng = np.random.default_rng(L.dim)
    lie = 0
    for _ in range(300):
        mu = sp.cochain(int(rng.integers(0, 1 << sp.dim)))
        ok = validate(add_cochain(L, mu)).ok
        assert ok == (coboundary(mu) == massey_half(mu, mu))
        lie += ok
    assert 0 < lie < 300


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**18 - 1), st.integers(0, 2**18 - 1), st.integers(0, 2**18 - 1))
def test_massey_half_is_bilinear(a, b, c):
    sp = cochain_space(simple3(), ADJOINT, 2)
    mask = (1 << sp.dim) - 1
    x, y, z = (sp.cochain(v & mask) for v in (a, b, c))
    assert massey_half(x + y, z) == massey_half(x, z) + massey_half(y, z)
    assert massey_half(z, x + y) == massey_half(z, x) + massey_half(z, y)
    assert obstruction_pair(x, y) == obstruction_pair(y, x)


def test_symmetrized_self_bracket_vanishes_in_char_2():
    for c in cohomology(simple3(), ADJOINT, 2).representatives:
        assert not obstruction_pair(c, c).bits


def test_deform_rejects_non_positive_weights():
    S = simple3()
    neg = cochain_space(S, ADJOINT, 2).from_values({(F, H): 1 << E})
    with pytest.raises(DeformationError):
        deform(S, [neg])


def test_deform_s_by_its_weight_two_class():
    S = simple3()
    mu = cochain_space(S, ADJOINT, 2).from_values({(E, H): 1 << F})
    res = deform(S, [mu])
    assert res.jacobi_ok and res.graded_ok
    assert res.table.mul(1, 2) == 1 | 4


@pytest.mark.parametrize("v,w,xi", list(product([0, 1], [0, 8], [0, 8])))
def test_family_cochains_are_cocycles(v, w, xi):
    spec = ExtensionDeformation(A, D, U1X, v=v, w=w, xi=xi)
    for c in (cocycle_v(spec), cocycle_w(spec), cocycle_xi(spec)):
        assert is_cocycle(c)
        assert c.weights() <= {2}


@pytest.mark.parametrize("beta,delta", list(product([0, 1], repeat=2)))
def test_fifteen_dim_is_the_family_member(beta, delta):
    res = build_deformation(fifteen_dim_parameters(beta, delta))
    assert res.jacobi_ok and res.graded_ok
    assert res.table == fifteen_dim(beta, delta)


def test_constraint_violations_are_refused():
    spec = ExtensionDeformation(A, D, U1X, v=1, xi=8)
    with pytest.raises(DeformationError):
        build_deformation(spec)
    assert not build_deformation(spec, check=False).jacobi_ok


def test_verdict_reports_a_failing_triple():
    out = verdict(ExtensionDeformation(A, D, U1X, v=1, xi=8))
    assert out["jacobi_ok"] is False and len(out["failing_triple"]) == 3
    assert out["constraints_ok"] is False


def test_lambda_must_vanish_for_u_zero():
    from lieform.algebra import LinearMap

    spec = ExtensionDeformation(A, D, Subspace.zero(4), lam=LinearMap(4, 4, (0, 1, 0, 0)))
    with pytest.raises(DeformationError):
        deformation_cochains(spec)


def _some_lambda_works(v, w, xi, verdicts):
    return any(
        r["constraints_ok"]
        for r in verdicts
        if (r["params"]["v"], r["params"]["w"], r["params"]["xi"]) == (v, w, xi)
    )


def test_prolongation_under_the_lambda_ansatz_matches_the_constraints():
    verdicts = enumerate_family([0, 1])
    for v, w, xi in product([0, 1], [0, 8], [0, 8]):
        spec = ExtensionDeformation(A, D, U1X, v=v, w=w, xi=xi)
        mus = deformation_cochains(spec)
        if not mus:
            continue
        mu1 = mus[0]
        for m in mus[1:]:
            mu1 = mu1 + m
        p = prolong_check(spec.graded, mu1, lambda_ansatz(spec))
        key = ([0] if v else [], [3] if w else [], [3] if xi else [])
        assert p.exists == _some_lambda_works(*key, verdicts)
        if p.exists:
            assert p.higher_vanish and p.result.jacobi_ok


def test_full_weight_four_ansatz_prolongs_beyond_the_family():
    """Without restricting mu2 to the lambda-cochains, v = 1 with xi != 0 also prolongs."""
    spec = ExtensionDeformation(A, D, U1X, v=1, xi=8)
    mu1 = cocycle_v(spec) + cocycle_xi(spec)
    assert not prolong_check(spec.graded, mu1, lambda_ansatz(spec)).exists
    full = prolong_check(spec.graded, mu1)
    assert full.exists and full.result.jacobi_ok


def test_u_zero_enumeration_has_no_disagreements():
    verdicts = enumerate_family([], w_all=True)
    assert len(verdicts) == 32
    assert all(v["jacobi_ok"] == v["constraints_ok"] for v in verdicts)
