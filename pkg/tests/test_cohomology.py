import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieform import oracles
from lieform.algebra import AlgebraError
from lieform.cohomology import (
    ADJOINT,
    TRIVIAL,
    CochainError,
    coboundary,
    coboundary_columns,
    coboundary_direct,
    cochain_space,
    cohomology,
    graded_cohomology,
    is_coboundary,
    is_cocycle,
    positive_cohomology,
    weight_decomposition,
    wrap_cocycle,
)
from lieform.constructions import E, F, H, current_algebra, divided_powers, o12_extension, simple3
from lieform.deformations import fifteen_dim

from conftest import small_lie_algebras

ALGEBRAS = small_lie_algebras()
MODULES = [TRIVIAL, ADJOINT]


def compose_is_zero(L, kind, n):
    first = coboundary_columns(L, kind, n)
    second = coboundary_columns(L, kind, n + 1)
    for col in first:
        acc = 0
        k = col
        while k:
            low = k & -k
            acc ^= second[low.bit_length() - 1]
            k ^= low
        if acc:
            return False
    return True


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("kind", MODULES)
def test_d_squared_vanishes(name, kind):
    L = ALGEBRAS[name]
    for n in range(3):
        assert compose_is_zero(L, kind, n), (name, kind, n)


def test_d_squared_vanishes_on_the_fifteen_dimensional_algebra():
    L = fifteen_dim(1, 1)
    for n in range(3):
        assert compose_is_zero(L, TRIVIAL, n)
    for n in range(2):
        assert compose_is_zero(L, ADJOINT, n)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("kind", MODULES)
def test_coboundary_matrix_matches_direct_formula(name, kind):
    L = ALGEBRAS[name]
    rng = np.random.default_rng(17)
    for n in range(3):
        sp = cochain_space(L, kind, n)
        for _ in range(8):
            bits = int("".join(rng.choice(["0", "1"], size=sp.dim)) or "0", 2) if sp.dim else 0
            c = sp.cochain(bits)
            assert coboundary(c) == coboundary_direct(c)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("kind", MODULES)
def test_dimensions_match_dense_tensor_route(name, kind):
    L = ALGEBRAS[name]
    for n in range(3):
        assert cohomology(L, kind, n, representatives=False).dimH == oracles.dense_cohomology_dim(L, kind, n)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("kind", MODULES)
def test_weight_components_sum_to_total(name, kind):
    L = ALGEBRAS[name]
    for n in range(4):
        if kind == ADJOINT and n == 3 and L.dim > 6:
            continue
        total = cohomology(L, kind, n, representatives=False).dimH
        assert sum(weight_decomposition(L, kind, n).values()) == total


def test_weight_components_sum_on_the_current_algebra():
    L = current_algebra(simple3(), divided_powers(2))
    for kind in MODULES:
        for n in (1, 2):
            total = cohomology(L, kind, n, representatives=False).dimH
            assert sum(weight_decomposition(L, kind, n).values()) == total


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_representatives_are_independent_cocycles(name):
    L = ALGEBRAS[name]
    rep = cohomology(L, ADJOINT, 2)
    assert len(rep.representatives) == rep.dimH
    for c in rep.representatives:
        assert is_cocycle(c)
        assert is_coboundary(c) is None


def test_is_coboundary_returns_a_preimage(s3):
    rng = np.random.default_rng(2)
    sp = cochain_space(s3, ADJOINT, 1)
    for _ in range(20):
        x = sp.cochain(int(rng.integers(0, 1 << sp.dim)))
        dx = coboundary(x)
        pre = is_coboundary(dx)
        assert pre is not None and coboundary(pre) == dx


def test_is_coboundary_rejects_non_cocycles(s3):
    sp = cochain_space(s3, ADJOINT, 1)
    c = sp.from_values({(E,): 1 << E})
    assert not is_cocycle(c)
    with pytest.raises(CochainError):
        is_coboundary(c)


def test_repeated_arguments_are_rejected(s3):
    with pytest.raises(CochainError):
        cochain_space(s3, ADJOINT, 2).from_values({(E, E): 1 << H})


def test_weight_of_cochains_follows_output_minus_inputs(s3):
    sp = cochain_space(s3, ADJOINT, 2)
    assert sp.from_values({(E, H): 1 << F}).weights() == {2}
    assert sp.from_values({(F, H): 1 << E}).weights() == {-2}


def test_degree_limit_is_enforced(s3):
    with pytest.raises(CochainError):
        cohomology(s3, ADJOINT, 4)


def test_grading_is_required_for_weights():
    from lieform.algebra import LIE, make_table

    L = make_table(2, LIE, lambda i, j: 0)
    with pytest.raises(AlgebraError):
        graded_cohomology(L, ADJOINT, 1, 0)


def test_positive_part_of_s_is_the_weight_two_class(s3):
    rep = positive_cohomology(s3, ADJOINT, 2)
    assert rep.dimH == 1 and rep.by_weight == {2: 1}


def test_wrapped_cocycles_are_cocycles():
    S = simple3()
    A = divided_powers(2)
    LA = current_algebra(S, A)
    for c in cohomology(S, ADJOINT, 2).representatives:
        for u in range(1, 16):
            assert is_cocycle(wrap_cocycle(c, u, A, LA))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30))
def test_coboundaries_are_cocycles_on_the_extension(seed):
    L = o12_extension([[0], [1]])
    rng = np.random.default_rng(seed)
    sp = cochain_space(L, ADJOINT, 1)
    x = sp.cochain(int("".join(rng.choice(["0", "1"], size=sp.dim)), 2))
    assert is_cocycle(coboundary(x))
