"""The shipped sample corpus, as builders.

The JSON files under ``dgpoisson/data`` are generated from these functions
(see ``write_corpus``); tests use the builders directly.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .construct import (
    DeformationData,
    DGVectorSpaceData,
    exterior_gerstenhaber,
    extend_biderivation,
    gerstenhaber_differential,
)
from .core import QQ, BilinearOp, Field, GradedLinearMap, GradedSpace
from .presentation import write
from .structures import DGAlgebraData, DGLieData, DGPoissonData, DGPoissonModuleData


def _op(space, degree, entries, left=None, target=None):
    """entries: {(x, y): {z: c}}"""
    left = left or space
    target = target or space
    return BilinearOp(degree, {k: target.element(v) for k, v in entries.items()},
                      left, space, target)


def _unit_products(names, unit="1"):
    out = {}
    for n in names:
        out[(unit, n)] = {n: 1}
        out[(n, unit)] = {n: 1}
    return out


def trivial_k(field: Field = QQ) -> DGPoissonData:
    S = GradedSpace([("1", 0)], field)
    return DGPoissonData.build(S, _op(S, 0, {("1", "1"): {"1": 1}}), _op(S, 0, {}), 0)


def truncated_poly(n: int, field: Field = QQ, p: int = 0) -> DGPoissonData:
    """k[x]/(x^n), |x| = 0, zero bracket and differential."""
    names = ["1", "x"] + [f"x^{i}" for i in range(2, n)]
    S = GradedSpace([(nm, 0) for nm in names], field)
    prod = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                prod[(names[i], names[j])] = {names[i + j]: 1}
    return DGPoissonData.build(S, _op(S, 0, prod), BilinearOp(p, {}, S), p)


def odd_line(field: Field = QQ) -> DGPoissonData:
    """{1, t} with |t| = 1, t^2 = 0, bracket of degree -2 with {t, t} = 1."""
    S = GradedSpace([("1", 0), ("t", 1)], field)
    prod = _unit_products(["1", "t"])
    return DGPoissonData.build(S, _op(S, 0, prod), _op(S, -2, {("t", "t"): {"1": 1}}), -2)


def symplectic_pair(field: Field = QQ) -> DGPoissonData:
    """Exterior algebra on odd x, y (degree 1) with {x, y} = {y, x} = 1, p = -2.

    In characteristic 0 a finite-dimensional Poisson algebra cannot have
    {x, y} = 1 with x, y of degree 0; putting the pair in odd degree with
    an even shifted bracket gives the finite odd symplectic plane.
    """
    names = ["1", "x", "y", "x·y"]
    S = GradedSpace([("1", 0), ("x", 1), ("y", 1), ("x·y", 2)], field)
    prod = _unit_products(names)
    prod[("x", "y")] = {"x·y": 1}
    prod[("y", "x")] = {"x·y": -1}
    mul = _op(S, 0, prod)

    def split(n):
        return {"1": None, "x": ("x",), "y": ("y",), "x·y": ("x", "y")}[n]

    def gen_bracket(a, b):
        return S.basis("1") if a != b else S.zero()

    full = extend_biderivation(S, mul, -2, gen_bracket, split)
    brk = BilinearOp(-2, {(u, v): full(u, v) for u in S for v in S}, S)
    return DGPoissonData.build(S, mul, brk, -2)


def koszul_pair(field: Field = QQ) -> DGPoissonData:
    """{1, x, xi} with |x| = 0, |xi| = -1, d(xi) = x, all non-unit products 0."""
    S = GradedSpace([("1", 0), ("x", 0), ("xi", -1)], field)
    d = GradedLinearMap(S, S, 1, {"xi": S.basis("x")})
    return DGPoissonData.build(S, _op(S, 0, _unit_products(["1", "x", "xi"])),
                               _op(S, 0, {}), 0, d)


def lie2(field: Field = QQ) -> DGLieData:
    """Two-dimensional nonabelian Lie algebra [a, b] = b."""
    S = GradedSpace([("a", 0), ("b", 0)], field)
    return DGLieData(S, _op(S, 0, {("a", "b"): {"b": 1}, ("b", "a"): {"b": -1}}), 0,
                     GradedLinearMap.zero(S, S, 1))


def sl2(field: Field = QQ) -> DGLieData:
    S = GradedSpace([("e", 0), ("f", 0), ("h", 0)], field)
    t = {("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
         ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
         ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2}}
    return DGLieData(S, _op(S, 0, t), 0, GradedLinearMap.zero(S, S, 1))


def broken_jacobi(field: Field = QQ) -> DGLieData:
    """sl2 with [h, f] = -f: antisymmetric but Jacobi fails."""
    S = GradedSpace([("e", 0), ("f", 0), ("h", 0)], field)
    t = {("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
         ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
         ("h", "f"): {"f": -1}, ("f", "h"): {"f": 1}}
    return DGLieData(S, _op(S, 0, t), 0, GradedLinearMap.zero(S, S, 1))


def odd_abelian_lie(field: Field = QQ) -> DGLieData:
    S = GradedSpace([("xi", 1)], field)
    return DGLieData(S, BilinearOp(0, {}, S), 0, GradedLinearMap.zero(S, S, 1))


def even_abelian_lie(field: Field = QQ) -> DGLieData:
    S = GradedSpace([("x", 0)], field)
    return DGLieData(S, BilinearOp(0, {}, S), 0, GradedLinearMap.zero(S, S, 1))


def exterior_lie2(field: Field = QQ) -> DGPoissonData:
    return exterior_gerstenhaber(lie2(field))


def gerstenhaber_lie2(field: Field = QQ) -> DGPoissonData:
    G = exterior_lie2(field)
    return gerstenhaber_differential(G, G.b("a∧b"))


def _moyal_name(i, j):
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "·".join(parts) or "1"


def moyal_truncated(prime: int = 3) -> DeformationData:
    """k[x, y]/(x^p, y^p) over GF(p), |x| = |y| = 0, with the Moyal-type
    coefficients B_i(a, b) = (1/i!) d_x^i a * d_y^i b for i < p.

    Truncated polynomials carry the bracket {x, y} = 1 only in positive
    characteristic, where d/dx kills x^p.
    """
    F = Field(prime)
    mons = [(i, j) for j in range(prime) for i in range(prime)]
    S = GradedSpace([(_moyal_name(i, j), 0) for i, j in mons], F)

    def mono(i, j, c=1):
        if i >= prime or j >= prime or i < 0 or j < 0:
            return {}
        return {_moyal_name(i, j): c}

    prod = {}
    for i1, j1 in mons:
        for i2, j2 in mons:
            v = mono(i1 + i2, j1 + j2)
            if v:
                prod[(_moyal_name(i1, j1), _moyal_name(i2, j2))] = v
    A = DGAlgebraData(S, _op(S, 0, prod), "1", GradedLinearMap.zero(S, S, 1), True)

    def falling(n, k):
        out = 1
        for t in range(k):
            out *= n - t
        return out

    coeffs = []
    for order in range(1, prime):
        fact = 1
        for t in range(2, order + 1):
            fact *= t
        table = {}
        for i1, j1 in mons:
            for i2, j2 in mons:
                # d_x^order (x^i1 y^j1) * d_y^order (x^i2 y^j2)
                c = falling(i1, order) * falling(j2, order)
                if c % prime == 0:
                    continue
                v = mono(i1 - order + i2, j1 + j2 - order, Fraction(c, fact))
                if v:
                    table[(_moyal_name(i1, j1), _moyal_name(i2, j2))] = v
        coeffs.append(_op(S, 0, table))
    return DeformationData(A, tuple(coeffs))


def nilpotent_module(field: Field = QQ) -> DGPoissonModuleData:
    """Two-dimensional module over k[x]/(x^2): x*m1 = m2, zero Lie action."""
    A = truncated_poly(2, field)
    M = GradedSpace([("m1", 0), ("m2", 0)], field)
    act = {("1", "m1"): {"m1": 1}, ("1", "m2"): {"m2": 1}, ("x", "m1"): {"m2": 1}}
    return DGPoissonModuleData(
        A, M, _op(M, 0, act, left=A.space, target=M),
        BilinearOp(0, {}, A.space, M, M), GradedLinearMap.zero(M, M, 1))


def dg_line_pair(field: Field = QQ) -> DGVectorSpaceData:
    """Two-dimensional DG space e (degree 0), f (degree 1), d e = f."""
    V = GradedSpace([("e", 0), ("f", 1)], field)
    return DGVectorSpaceData(V, GradedLinearMap(V, V, 1, {"e": V.basis("f")}))


def poisson_fixtures() -> dict[str, DGPoissonData]:
    """Every fixture DG Poisson algebra over Q, by file stem."""
    return {
        "trivial_k": trivial_k(),
        "k[x]_sq_zero": truncated_poly(2),
        "k[x]_cube_zero": truncated_poly(3),
        "odd_line": odd_line(),
        "symplectic_pair": symplectic_pair(),
        "koszul_pair": koszul_pair(),
        "ext_gerst_lie2": exterior_lie2(),
        "gerst_alpha_lie2": gerstenhaber_lie2(),
    }


def corpus() -> dict:
    """File name -> structure, for every shipped sample file."""
    out = {f"{k}.alg": A for k, A in poisson_fixtures().items()}
    out.update({
        "lie2.lie": lie2(),
        "sl2.lie": sl2(),
        "odd_abelian.lie": odd_abelian_lie(),
        "even_abelian.lie": even_abelian_lie(),
        "broken_jacobi.alg": broken_jacobi(),
        "moyal_trunc.def": moyal_truncated(),
        "nilpotent.mod": nilpotent_module(),
        "dg_line_pair.dgs": dg_line_pair(),
    })
    return out


def write_corpus(directory) -> list:
    """Regenerate the sample files in ``directory``; returns the paths written."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, obj in corpus().items():
        write(obj, d / name)
        paths.append(d / name)
    return paths
