from itertools import product

import numpy as np
import pytest

from lieform import oracles
from lieform.algebra import AlgebraError, LinearMap, is_derivation
from lieform.constructions import current_algebra, divided_powers, simple3, zassenhaus
from lieform.gf2 import DimensionError
from lieform.invariants import (
    absolute_zero_divisors,
    center,
    centroid,
    commutant,
    derivation_algebra,
    greedy_torus,
    ideal_dimensions,
    invariant_report,
    invariant_symmetric_forms,
    is_simple_gf2,
    two_envelope,
    verify_torus,
)

from conftest import small_lie_algebras

ALGEBRAS = small_lie_algebras()
SMALL = {k: v for k, v in ALGEBRAS.items() if v.dim <= 6}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_center_and_derivations_match_dense_routes(name):
    L = ALGEBRAS[name]
    assert center(L).dim == oracles.brute_center_dim(L)
    der = derivation_algebra(L)
    assert der.dim == oracles.dense_derivation_dim(L)
    for d in der.basis:
        assert is_derivation(L, d)


def test_derivations_of_the_fifteen_dimensional_algebra(fifteen):
    for L in fifteen.values():
        assert derivation_algebra(L).dim == oracles.dense_derivation_dim(L) == 19


@pytest.mark.parametrize("name", ["s", "W1(2)"])
def test_invariant_forms_match_enumeration(name):
    L = ALGEBRAS[name]
    assert invariant_symmetric_forms(L).dim == oracles.brute_invariant_forms(L)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_zero_divisors_match_enumeration(name):
    L = SMALL[name]
    got, sub = absolute_zero_divisors(L)
    assert sorted(got) == oracles.brute_zero_divisors(L)
    for x in got:
        assert x in sub


def test_centroid_of_s_is_the_scalars(s3):
    assert centroid(s3).dim == 1


def test_commutant_of_w12_is_s():
    assert commutant(zassenhaus(2)).dim == 3


# -- the 2-envelope ----------------------------------------------------------


@pytest.mark.parametrize("key", [(0, 0), (1, 1)])
def test_envelope_squares_and_brackets_match_the_maps(fifteen, key):
    env = two_envelope(fifteen[key])
    rng = np.random.default_rng(1)
    for _ in range(200):
        c1, c2 = (int(x) for x in rng.integers(1, 1 << env.dim, size=2))
        m1, m2 = env.element(c1), env.element(c2)
        assert env.element(env.square(c1)) == m1.compose(m1)
        assert env.element(env.bracket(c1, c2)) == m1.commutator(m2)


def test_envelope_lies_in_the_derivations(fifteen):
    L = fifteen[(1, 0)]
    env = two_envelope(L)
    assert env.dim == 19 == env.der_dim
    for m in env.basis:
        assert is_derivation(L, m)


def test_envelope_needs_trivial_center():
    from lieform.algebra import LIE, make_table

    with pytest.raises(AlgebraError):
        two_envelope(make_table(2, LIE, lambda i, j: 0))


def test_torus_flags_can_fail(s3):
    env = two_envelope(s3)
    ad = [s3.ad(1 << i) for i in range(3)]
    # e and f do not commute
    assert not verify_torus(env, [ad[0], ad[2]]).abelian
    # (ad e) is nilpotent: its square leaves the span
    cert = verify_torus(env, [ad[0]])
    assert not cert.squaring_closed and not cert.valid
    # ad h is toral: a 1-dimensional torus
    assert verify_torus(env, [ad[1]]).valid


def test_nilpotent_commuting_span_is_not_a_torus(s3):
    env = two_envelope(s3)
    e2 = s3.ad(1).compose(s3.ad(1))
    cert = verify_torus(env, [s3.ad(1), e2])
    assert cert.abelian and not cert.squaring_injective


def test_greedy_torus_is_certified(fifteen, s3):
    assert greedy_torus(two_envelope(s3)).dim == 2
    for L in fifteen.values():
        cert = greedy_torus(two_envelope(L))
        assert cert.valid and cert.dim >= 3


# -- simplicity ----------------------------------------------------------------


def test_both_simplicity_routes_agree_everywhere(fifteen):
    cases = [fifteen[(0, 1)], ALGEBRAS["W1(2)"], ALGEBRAS["s(x)O1(1)"], ALGEBRAS["ext U=<1,x>"]]
    for L in cases:
        a = ideal_dimensions(L, "ideal-closure")
        b = ideal_dimensions(L, "module-rank")
        assert np.array_equal(a, b)


def test_simplicity_verdicts(fifteen, s3):
    assert is_simple_gf2(s3).simple
    for L in fifteen.values():
        assert is_simple_gf2(L).simple
    v = is_simple_gf2(ALGEBRAS["s(x)O1(1)"])
    assert not v.simple and 0 < v.witness_ideal.dim < 6
    assert not is_simple_gf2(zassenhaus(2), method="module-rank").simple


def test_exhaustive_scans_are_capped():
    big = current_algebra(simple3(), divided_powers(3))
    with pytest.raises(DimensionError):
        is_simple_gf2(big)
    with pytest.raises(DimensionError):
        invariant_report(big, deep=True)


def test_invariant_report_of_the_fifteen_dimensional_algebra(fifteen):
    rep = invariant_report(fifteen[(0, 0)], deep=True)
    assert rep["der_dim"] == rep["envelope_dim"] == 19
    assert rep["center"] == 0 and rep["commutant"] == 15
    assert rep["inv_form_dim"] == 0 and rep["azd_subalg_dim"] == 7
    assert rep["simple_gf2"] is True and rep["torus_rank_lb"] >= 3
