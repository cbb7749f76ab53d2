import pytest
from naive import left_module_ok, poisson_ok_data

from dgpoisson.construct import (DeformationData, DGVectorSpaceData, PreconditionError, TruncationOverflow,
                                 deformation_bracket, endomorphism_dgp, endomorphism_element,
                                 exterior_biderivation_bracket, exterior_gerstenhaber,
                                 gerstenhaber_differential, operator_matrix, opposite,
                                 opposite_module, regular_module, semidirect_first,
                                 semidirect_lie, semidirect_second, symmetric_dgp, tensor,
                                 tensor_module)
from dgpoisson.core import BilinearOp, DegreeMismatchError, Field, GradedLinearMap, GradedSpace
from dgpoisson.fixtures import (dg_line_pair, even_abelian_lie, lie2, moyal_truncated,
                                nilpotent_module, odd_abelian_lie, poisson_fixtures, sl2,
                                truncated_poly)
from dgpoisson.structures import (verify_dg_algebra, verify_dg_lie, verify_dg_poisson,
                                  verify_dg_poisson_module)

FX = poisson_fixtures()


def test_opposite_negates_bracket_only():
    A = FX["symplectic_pair"]
    Aop = opposite(A)
    assert Aop.product == A.product
    assert Aop.bracket == A.bracket.scaled(-1)
    assert verify_dg_poisson(Aop).passed
    assert opposite(Aop).bracket == A.bracket


def test_opposite_of_zero_bracket_is_unchanged():
    A = FX["k[x]_sq_zero"]
    assert opposite(A).bracket == A.bracket and opposite(A).product == A.product


@pytest.mark.parametrize("a,b", [("odd_line", "odd_line"), ("odd_line", "symplectic_pair"),
                                 ("k[x]_sq_zero", "koszul_pair"),
                                 ("ext_gerst_lie2", "gerst_alpha_lie2")])
def test_tensor_is_dg_poisson(a, b):
    T = tensor(FX[a], FX[b])
    assert T.space.dim == FX[a].space.dim * FX[b].space.dim
    assert verify_dg_poisson(T).passed
    assert poisson_ok_data(T)


def test_tensor_is_associative_on_the_nose():
    A = FX["odd_line"]
    left, right = tensor(tensor(A, A), A), tensor(A, tensor(A, A))
    assert left.space == right.space
    assert left.product == right.product and left.bracket == right.bracket
    assert left.differential == right.differential


def test_tensor_degree_mismatch():
    with pytest.raises(DegreeMismatchError, match="bracket degrees differ"):
        tensor(FX["k[x]_sq_zero"], FX["ext_gerst_lie2"])


def test_endomorphisms():
    V = dg_line_pair()
    E = endomorphism_dgp(V)
    assert E.space.dim == 4 and not E.commutative
    assert verify_dg_poisson(E, noncommutative=True).passed
    assert not verify_dg_poisson(E).passed       # composition is not commutative
    assert E.d(E.one()) == 0
    # operator matrices survive the round trip through End(V)
    d = V.differential
    e = endomorphism_element(E, V.space, operator_matrix(d))
    assert operator_matrix(d) == {("f", "e"): 1}
    assert e.degree() == 1


def test_endomorphisms_of_a_graded_three_dim_space():
    V3 = GradedSpace([("u", 0), ("v", 1), ("w", 2)])
    E = endomorphism_dgp(DGVectorSpaceData(V3, GradedLinearMap(V3, V3, 1, {"u": V3.basis("v")})))
    assert E.space.dim == 9
    assert verify_dg_poisson(E, noncommutative=True).passed


@pytest.mark.parametrize("L,N,dim", [(lie2(), 2, 6), (lie2(), 3, 10), (odd_abelian_lie(), 3, 2),
                                     (even_abelian_lie(), 3, 4), (sl2(), 2, 10)])
def test_symmetric_truncation(L, N, dim):
    S = symmetric_dgp(L, N)
    assert S.space.dim == dim
    assert verify_dg_poisson(S).passed


def test_symmetric_strict_and_bounds():
    with pytest.raises(TruncationOverflow):
        symmetric_dgp(lie2(), 2, strict=True)
    with pytest.raises(ValueError):
        symmetric_dgp(lie2(), 0)
    S = symmetric_dgp(lie2(), 2)
    # {a, b·b} = 2 b·b in S(lie2)
    assert S.br(S.b("a"), S.b("b·b")) == S.b("b·b") * 2


def test_exterior_gerstenhaber():
    G = exterior_gerstenhaber(lie2())
    assert G.p == -1 and G.space.degree_dims() == {0: 1, 1: 2, 2: 1}
    assert verify_dg_poisson(G).passed
    assert exterior_biderivation_bracket(lie2()) == G.bracket
    G3 = exterior_gerstenhaber(sl2())
    assert G3.space.dim == 8 and verify_dg_poisson(G3).passed
    assert exterior_biderivation_bracket(sl2()) == G3.bracket
    with pytest.raises(PreconditionError):
        exterior_gerstenhaber(odd_abelian_lie())


def test_gerstenhaber_differential():
    G = FX["ext_gerst_lie2"]
    Gd = gerstenhaber_differential(G, G.b("a∧b"))
    assert verify_dg_poisson(Gd).passed
    assert Gd.d(G.b("a")) == G.br(G.b("a∧b"), G.b("a"))
    G3 = exterior_gerstenhaber(sl2())
    with pytest.raises(PreconditionError) as err:
        gerstenhaber_differential(G3, G3.b("e∧f"))
    assert err.value.witness == G3.b("e∧f∧h") * 2
    ok = gerstenhaber_differential(G3, G3.b("e∧h"))
    assert verify_dg_poisson(ok).passed
    with pytest.raises(PreconditionError):
        gerstenhaber_differential(G, G.b("a"))
    with pytest.raises(PreconditionError):
        gerstenhaber_differential(FX["k[x]_sq_zero"], FX["k[x]_sq_zero"].b("x"))
    with pytest.raises(PreconditionError):
        gerstenhaber_differential(Gd, G.b("a∧b"))   # differential already nonzero


def test_moyal_bracket():
    D = moyal_truncated()
    res = deformation_bracket(D)
    S = D.algebra.space
    assert res.order == 1
    assert res.bracket.entry("x", "y") == S.basis("1")
    assert res.bracket.entry("y", "x") == -S.basis("1")
    assert res.report.passed
    assert S.field == Field(3)
    # {x^2, y} = 2x in characteristic 3
    assert res.bracket.entry("x^2", "y") == S.basis("x") * 2


def test_symmetric_coefficients_give_no_bracket():
    D = moyal_truncated()
    sym = DeformationData(D.algebra, (D.algebra.product,))
    res = deformation_bracket(sym)
    assert res.order is None and res.commutative_to_order


def test_inconsistent_deformation_is_reported():
    D = moyal_truncated()
    B1 = D.coefficients[0]
    bad_table = dict(B1.table)
    bad_table[("x", "x")] = D.algebra.space.basis("1")
    bad = DeformationData(D.algebra, (BilinearOp(0, bad_table, D.algebra.space),))
    res = deformation_bracket(bad)
    # a symmetric change to B_1 leaves the commutator bracket intact
    assert res.order == 1 and res.report.passed
    bad_table[("x", "y")] = D.algebra.space.basis("x")
    with pytest.raises(PreconditionError):
        deformation_bracket(DeformationData(D.algebra,
                                            (BilinearOp(0, bad_table, D.algebra.space),)))


def test_semidirect():
    L = lie2()
    SD = semidirect_lie(L)
    assert verify_dg_lie(SD).passed
    f, s = semidirect_first, semidirect_second
    b = SD.space.basis
    assert SD.bracket(b(f("a")), b(f("b"))) == 0
    assert SD.bracket(b(s("a")), b(s("b"))) == b(s("b"))
    assert SD.bracket(b(s("a")), b(f("b"))) == b(f("b"))
    odd = semidirect_lie(odd_abelian_lie())
    assert odd.space.degree(f("xi")) == 1 - odd.bracket_degree


def test_modules():
    A, B = FX["symplectic_pair"], FX["odd_line"]
    M = regular_module(A)
    Mop = opposite_module(A, M)
    assert Mop.right and verify_dg_poisson_module(Mop).passed
    back = opposite_module(opposite(A), Mop)
    assert not back.right
    assert back.action == M.action and back.lie_action == M.lie_action
    T = tensor_module(A, M, B, regular_module(B))
    assert verify_dg_poisson_module(T).passed and left_module_ok(T)
    N = nilpotent_module()
    TN = tensor_module(truncated_poly(2), N, truncated_poly(2), N)
    assert TN.space.dim == 4 and verify_dg_poisson_module(TN).passed
    with pytest.raises(PreconditionError):
        tensor_module(A, Mop, B, regular_module(B))


def test_algebra_verifier_alone():
    assert verify_dg_algebra(FX["koszul_pair"].algebra).passed
