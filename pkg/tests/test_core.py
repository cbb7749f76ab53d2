from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgpoisson.core import (QQ, BilinearOp, Element, Field, Fp, GradedLinearMap, GradedSpace,
                            StructureError, koszul_sign, lincomb, tensor_elements, tensor_space)

F5 = Field(5)
small = st.integers(-20, 20)
fracs = st.builds(Fraction, small, st.integers(1, 9))


def test_field_specs_roundtrip():
    for F in (QQ, Field(3), Field(101)):
        assert Field.from_spec(F.spec()) == F
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        Field(9)
    with pytest.raises(ValueError):
        Field.from_spec("R")


@given(fracs)
def test_rational_format_parse(c):
    assert QQ.parse(QQ.format(c)) == c


@given(st.integers(0, 4))
def test_prime_format_parse(v):
    c = F5(v)
    assert F5.parse(F5.format(c)) == c
    assert F5.parse(str(v)) == c


def test_scalar_rejections():
    with pytest.raises(ValueError):
        QQ.parse("0.5")
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(ValueError):
        F5.parse("1 mod 7")
    with pytest.raises(ZeroDivisionError):
        F5(1) / F5(5)


@given(small, small, st.integers(1, 4))
def test_fp_field_laws(a, b, c):
    x, y, z = F5(a), F5(b), F5(c)
    assert (x + y) * z == x * z + y * z
    assert (x * z) / z == x
    assert F5(Fraction(1, 2)) * 2 == 1
    assert x - y == -(y - x)


def test_fp_mixing_characteristics():
    with pytest.raises(ValueError):
        Fp(1, 3) + Fp(1, 5)


@given(small, small, small)
def test_koszul_sign_is_a_bicharacter(a, b, c):
    assert koszul_sign(a, b) == koszul_sign(b, a)
    assert koszul_sign(a + b, c) == koszul_sign(a, c) * koszul_sign(b, c)
    assert koszul_sign(a, b) in (1, -1)


def test_space_basics():
    S = GradedSpace([("1", 0), ("x", 1), ("y", 1)])
    assert S.dim == 3 and S.degree_dims() == {0: 1, 1: 2}
    assert list(S) == ["1", "x", "y"]
    with pytest.raises(ValueError):
        GradedSpace([("x", 0), ("x", 1)])
    with pytest.raises(KeyError):
        S.element({"z": 1})
    e = S.element({"x": 2, "y": 0})
    assert e.coeffs == {"x": 2} and e.degree() == 1 and e.is_homogeneous(1)
    assert not (S.basis("x") + S.basis("1")).is_homogeneous()
    assert S.zero() == 0 and not S.zero()


@given(st.lists(fracs, min_size=3, max_size=3), st.lists(fracs, min_size=3, max_size=3), fracs)
def test_element_vector_space_laws(u, v, c):
    S = GradedSpace([("a", 0), ("b", 0), ("c", 0)])
    x = S.element(dict(zip("abc", u)))
    y = S.element(dict(zip("abc", v)))
    assert x + y == y + x
    assert (x + y) * c == x * c + y * c
    assert x - x == 0
    assert lincomb(S, [(c, x), (1, y)]) == x * c + y


def test_maps_check_grading():
    S = GradedSpace([("e", 0), ("f", 1)])
    d = GradedLinearMap(S, S, 1, {"e": S.basis("f")})
    assert d(d(S.basis("e"))) == 0
    assert d.compose(d).is_zero()
    with pytest.raises(StructureError):
        GradedLinearMap(S, S, 0, {"e": S.basis("f")})
    with pytest.raises(StructureError):
        BilinearOp(0, {("e", "e"): S.basis("f")}, S)
    with pytest.raises(StructureError):
        BilinearOp(0, {("e", "g"): S.basis("e")}, S)
    assert GradedLinearMap.identity(S)(S.basis("f")) == S.basis("f")


coef3 = st.lists(st.integers(-3, 3), min_size=2, max_size=2)


@given(coef3, coef3, coef3, st.integers(-3, 3))
def test_bilinear_op_is_bilinear(a, b, c, k):
    S = GradedSpace([("u", 0), ("v", 0)])
    op = BilinearOp(0, {("u", "u"): S.basis("v"), ("u", "v"): S.element({"u": 2, "v": -1}),
                        ("v", "v"): S.basis("u")}, S)
    x, y, z = (S.element(dict(zip("uv", t))) for t in (a, b, c))
    assert op(x + y * k, z) == op(x, z) + op(y, z) * k
    assert op(z, x + y * k) == op(z, x) + op(z, y) * k


def test_tensor_space_names_are_associative():
    U = GradedSpace([("a", 0), ("b", 1)])
    V = GradedSpace([("c", 1)])
    W = GradedSpace([("d", 2)])
    left = tensor_space(tensor_space(U, V), W)
    right = tensor_space(U, tensor_space(V, W))
    assert left == right
    T = tensor_space(U, V)
    assert tensor_elements(T, U.basis("b"), V.basis("c") * 3).coeffs == {"b⊗c": 3}
    with pytest.raises(ValueError):
        tensor_space(U, GradedSpace([("z", 0)], F5))


def test_element_repr_uses_exact_scalars():
    S = GradedSpace([("x", 0)])
    assert repr(S.element({"x": Fraction(-1, 2)})) == "(-1/2)*x"
    assert repr(Element(S, {})) == "0"
