import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lcpalg import LieAlgebra, Metric, OneForm, Subspace
from lcpalg import linalg as la
from lcpalg.algebra import (
    ad_matrix,
    bracket_subspaces,
    center,
    check_representation,
    closed_one_form_basis,
    derived_algebra,
    direct_sum,
    is_closed,
    killing_form,
    restrict_algebra,
    semidirect_product,
    structural_flags,
    subspace_relations,
    trace_form,
    validate_algebra,
)
from lcpalg.constructions import so3_base, sol3, su2, su2_plus_r
from lcpalg.errors import MalformedInputError, RepresentationError

F = Fraction


def heis3():
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}})


def bad_algebra():
    # [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})


ALGEBRAS = [su2(), sol3(), heis3(), LieAlgebra.abelian(3), su2_plus_r(), so3_base()[0]]


# validate_algebra ---------------------------------------------------------


def test_abelian_and_su2_valid():
    assert validate_algebra(LieAlgebra.abelian(3)).valid
    assert validate_algebra(su2()).valid


def test_jacobi_failure_witness():
    rep = validate_algebra(bad_algebra())
    assert not rep.valid
    (trip, v), = rep.jacobi_violations
    assert trip == (0, 1, 2)
    assert list(v) == oracles.jacobiator(bad_algebra(), 0, 1, 2) == [0, 0, -1]


def test_antisymmetry_failure():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = 1  # [e1,e2]=e1 but [e2,e1]=0
    rep = validate_algebra(LieAlgebra(2, c))
    assert not rep.valid and rep.antisymmetry_violations


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: f"dim{L.dim}")
def test_validity_matches_oracle(L):
    assert validate_algebra(L).valid == oracles.is_lie_algebra(L)


def test_shape_checks():
    with pytest.raises(MalformedInputError):
        LieAlgebra(2, [[[0, 0]], [[0, 0]]])
    with pytest.raises(MalformedInputError):
        LieAlgebra.from_brackets(2, {(0, 0): {0: 1}})


# ad, trace form, Killing form --------------------------------------------


def test_ad_su2_e1():
    A = ad_matrix(su2(), (1, 0, 0))
    assert list(la.columns(A)) == [la.vec([0, 0, 0]), la.vec([0, 0, 1]), la.vec([0, -1, 0])]


def test_ad_sol3_b():
    assert ad_matrix(sol3(), (1, 0, 0)) == la.diag([0, 1, -1])


def test_ad_abelian_zero():
    assert la.is_zero_matrix(ad_matrix(LieAlgebra.abelian(3), (1, 2, 3)))


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: f"dim{L.dim}")
def test_ad_matches_oracle(L):
    x = tuple(range(1, L.dim + 1))
    assert la.mat(oracles.ad(L, x).tolist()) == ad_matrix(L, x)


def test_trace_forms():
    h = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    assert trace_form(h) == OneForm((1, 0))
    assert trace_form(su2()).is_zero()
    H, _ = so3_base()
    assert trace_form(H) == OneForm.dual(7, 3, -3)
    for L in ALGEBRAS:
        assert list(trace_form(L).coeffs) == oracles.trace_form(L)


def test_killing_forms():
    assert killing_form(su2()) == la.scale(-2, la.identity(3))
    assert la.is_zero_matrix(killing_form(LieAlgebra.abelian(2)))
    assert killing_form(sol3()) == la.diag([2, 0, 0])
    for L in ALGEBRAS:
        assert [list(r) for r in killing_form(L)] == oracles.killing(L)


vectors3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([su2(), sol3(), heis3()]), vectors3, vectors3, vectors3)
def test_ad_is_homomorphism_and_killing_invariant(L, x, y, z):
    lhs = ad_matrix(L, L.bracket(x, y))
    assert lhs == la.commutator(ad_matrix(L, x), ad_matrix(L, y))
    K = killing_form(L)
    assert la.bilinear(K, L.bracket(x, y), z) == -la.bilinear(K, y, L.bracket(x, z))


# structural flags ----------------------------------------------------------


def test_flags_su2():
    f = structural_flags(su2())
    assert (f.abelian, f.solvable, f.nilpotent, f.unimodular, f.compact_type, f.derived_dim) == (
        False, False, False, True, True, 3,
    )


def test_flags_r2():
    f = structural_flags(LieAlgebra.abelian(2))
    assert (f.abelian, f.solvable, f.nilpotent, f.unimodular, f.compact_type, f.derived_dim) == (
        True, True, True, True, True, 0,
    )


def test_flags_sol3():
    f = structural_flags(sol3())
    assert (f.solvable, f.nilpotent, f.unimodular, f.compact_type, f.derived_dim) == (True, False, True, False, 2)
    assert f.derived_series == (3, 2, 0)


def test_flags_heis_and_su2r():
    f = structural_flags(heis3())
    assert f.nilpotent and not f.abelian and not f.compact_type
    g = structural_flags(su2_plus_r())
    assert g.compact_type and g.unimodular and not g.solvable


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: f"dim{L.dim}")
def test_derived_dim_matches_oracle(L):
    assert derived_algebra(L).dim == oracles.derived_rank(L)


def test_center():
    assert center(su2()).dim == 0
    assert center(su2_plus_r()).equals(Subspace.coordinate(4, [3]))
    assert center(heis3()).equals(Subspace.coordinate(3, [2]))


# subspaces -----------------------------------------------------------------


def test_subspace_basics():
    U = Subspace([(1, 1, 0), (0, 1, 1)], 3)
    assert (1, 2, 1) in U and (1, 0, 0) not in U
    assert U.coords((1, 2, 1)) == (1, 1)
    with pytest.raises(MalformedInputError):
        Subspace([(1, 1, 0), (2, 2, 0)], 3)
    P = U.orthogonal_complement(la.identity(3))
    assert P.dim == 1 and (1, -1, 1) in P
    assert Subspace.span([(1, 1, 0), (2, 2, 0)], 3).dim == 1


def test_relations_sol3_u():
    M = Metric.identity(3)
    r = subspace_relations(sol3(), M, Subspace.coordinate(3, [2]))
    assert (r.is_subalgebra, r.is_ideal, r.is_abelian, r.perp_is_subalgebra, r.is_nilpotent_ideal) == (
        True, True, True, True, True,
    )


def test_relations_su2_line_witness():
    r = subspace_relations(su2(), Metric.identity(3), Subspace.coordinate(3, [0]))
    assert r.is_subalgebra and not r.is_ideal
    ideal = [w for w in r.witnesses if w[0] == "ideal"]
    assert ideal[0][1] == (0, 1) and ideal[0][2] == la.vec([0, 0, 1])


def test_relations_whole_space():
    for L in ALGEBRAS:
        r = subspace_relations(L, Metric.identity(L.dim), Subspace.whole(L.dim))
        assert r.is_ideal and r.perp_is_subalgebra
    r = subspace_relations(sol3(), None, Subspace.whole(3))
    assert r.perp_is_subalgebra is None


def test_bracket_subspaces_and_restriction():
    L = sol3()
    D = bracket_subspaces(L, Subspace.whole(3), Subspace.whole(3))
    assert D.equals(Subspace.coordinate(3, [1, 2]))
    h = restrict_algebra(L, Subspace.coordinate(3, [0, 1]))
    assert h.c[0][1] == la.vec([0, 1])


# semidirect products and representations ---------------------------------


def test_semidirect_sol2():
    H = LieAlgebra.abelian(1)
    G = semidirect_product(H, 1, [la.mat([[-1]])])
    assert G.c[0][1] == la.vec([0, -1])


def test_semidirect_sol3():
    H = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    G = semidirect_product(H, 1, [la.mat([[-1]]), la.mat([[0]])])
    assert validate_algebra(G).valid
    assert G.c[0][2] == la.vec([0, 0, -1]) and G.c[0][1] == la.vec([0, 1, 0])


def test_semidirect_representation_error():
    with pytest.raises(RepresentationError) as exc:
        semidirect_product(su2(), 1, [la.mat([[1]])] * 3)
    assert exc.value.pair == (0, 1)
    assert check_representation(su2(), [la.mat([[1]])] * 3) == (0, 1)


def test_semidirect_is_lie_algebra_oracle():
    H, _ = so3_base()
    alpha = [la.scale(x, la.identity(2)) for x in (0, 0, 0, 1, 0, 0, 0)]
    G = semidirect_product(H, 2, alpha)
    assert oracles.is_lie_algebra(G)


def test_direct_sum():
    L = direct_sum(su2(), LieAlgebra.abelian(1))
    assert L == su2_plus_r()


# closed forms ----------------------------------------------------------------


def test_closed_forms():
    assert len(closed_one_form_basis(LieAlgebra.abelian(3))) == 3
    assert len(closed_one_form_basis(su2())) == 0
    cf = closed_one_form_basis(sol3())
    assert len(cf) == 1 and cf[0] == OneForm((1, 0, 0))
    assert is_closed(sol3(), (0, 1, 0)) == (0, 1)
    assert is_closed(sol3(), (2, 0, 0)) is None


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: f"dim{L.dim}")
def test_closed_forms_vanish_on_brackets(L):
    cf = closed_one_form_basis(L)
    assert len(cf) == L.dim - oracles.derived_rank(L)
    for f in cf:
        for i, j in itertools.combinations(range(L.dim), 2):
            assert f(L.c[i][j]) == 0
