"""Builders for DG Poisson algebras and modules: opposite, tensor, endomorphism,
truncated graded-symmetric, Gerstenhaber, deformation bracket, semidirect Lie,
and opposite/tensor modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .core import (
    BilinearOp,
    Element,
    GradedLinearMap,
    GradedSpace,
    StructureError,
    koszul_sign,
    tensor_elements,
    tensor_name,
    tensor_space,
)
from .structures import (
    DGAlgebraData,
    DGLieData,
    DGPoissonData,
    DGPoissonModuleData,
    VerificationReport,
    check_degree_match,
    verify_dg_lie,
    verify_dg_poisson,
)


class PreconditionError(ValueError):
    """Input violates a builder precondition; ``witness`` holds the evidence."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class TruncationOverflow(ArithmeticError):
    pass


@dataclass(frozen=True)
class DGVectorSpaceData:
    space: GradedSpace
    differential: GradedLinearMap

    def __post_init__(self):
        d = self.differential
        for x in self.space:
            if d(d.image(x)):
                raise StructureError(f"d_V^2 != 0 on {x!r}")


@dataclass(frozen=True)
class DeformationData:
    algebra: DGAlgebraData
    coefficients: tuple  # B_1, ..., B_N as BilinearOps of degree 0


# ---------------------------------------------------------------------------
# opposite / tensor
# ---------------------------------------------------------------------------

def opposite(A: DGPoissonData) -> DGPoissonData:
    """Same DG algebra, negated bracket."""
    return A.replace(bracket=A.bracket.scaled(-1))


def _tensor_tables(A: DGPoissonData, B: DGPoissonData, T: GradedSpace):
    da, db = A.space.degrees, B.space.degrees
    p = A.p
    prod, brk, diff = {}, {}, {}
    a_ = {x: A.b(x) for x in A.space}
    b_ = {y: B.b(y) for y in B.space}
    for a1, b1 in iproduct(A.space, B.space):
        n1 = tensor_name(a1, b1)
        diff[n1] = (tensor_elements(T, A.d(a_[a1]), b_[b1])
                    + tensor_elements(T, a_[a1], B.d(b_[b1])) * koszul_sign(da[a1], 1))
        for a2, b2 in iproduct(A.space, B.space):
            n2 = tensor_name(a2, b2)
            aa = A.mul(a_[a1], a_[a2])
            bb = B.mul(b_[b1], b_[b2])
            prod[(n1, n2)] = tensor_elements(T, aa, bb) * koszul_sign(db[b1], da[a2])
            brk[(n1, n2)] = (
                tensor_elements(T, A.br(a_[a1], a_[a2]), bb) * koszul_sign(da[a2] + p, db[b1])
                + tensor_elements(T, aa, B.br(b_[b1], b_[b2])) * koszul_sign(db[b1] + p, da[a2]))
    return prod, brk, diff


def tensor(A: DGPoissonData, B: DGPoissonData) -> DGPoissonData:
    """Koszul-twisted tensor product with the tensor Poisson bracket."""
    check_degree_match(A.p, B.p)
    T = tensor_space(A.space, B.space)
    prod, brk, diff = _tensor_tables(A, B, T)
    return DGPoissonData.build(
        T, BilinearOp(0, prod, T), BilinearOp(A.p, brk, T), A.p,
        GradedLinearMap(T, T, 1, diff), tensor_name(A.unit, B.unit),
        A.commutative and B.commutative)


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------

IDENTITY = "id"


def _unit_name(i, j):
    return f"E[{i},{j}]"


def endomorphism_dgp(V: DGVectorSpaceData) -> DGPoissonData:
    """Hom(V, V) with composition, the graded-commutator bracket (p = 0)
    and d(f) = d_V f - (-1)^{|f|} f d_V.

    Basis: matrix units E[i,j] (v_j -> v_i, degree |v_i| - |v_j|) with
    E[first,first] replaced by the identity ``id``.
    """
    S = V.space
    if S.dim < 1:
        raise PreconditionError("V must be nonzero")
    F = S.field
    names = list(S)
    first = names[0]
    units = [(i, j) for i in names for j in names]
    basis = []
    for i, j in units:
        deg = S.degree(i) - S.degree(j)
        basis.append((IDENTITY if (i, j) == (first, first) else _unit_name(i, j), deg))
    E = GradedSpace(basis, F)

    def unit_vec(i, j) -> Element:
        """Matrix unit as an element of E."""
        if (i, j) != (first, first):
            return E.basis(_unit_name(i, j))
        out = {IDENTITY: F.one}
        for k in names[1:]:
            out[_unit_name(k, k)] = -F.one
        return E.element(out)

    def as_matrix(name) -> dict:
        if name == IDENTITY:
            return {(k, k): F.one for k in names}
        i, j = name[2:-1].split(",")
        return {(i, j): F.one}

    def from_matrix(mat: dict) -> Element:
        out = E.zero()
        for (i, j), c in mat.items():
            out = out + unit_vec(i, j) * c
        return out

    def compose(m1: dict, m2: dict) -> dict:
        out = {}
        for (i, j), c in m1.items():
            for (k, l), e in m2.items():
                if j == k:
                    out[(i, l)] = out.get((i, l), 0) + c * e
        return {k: v for k, v in out.items() if v}

    dV = {}
    for j in names:
        for i, c in V.differential.image(j):
            dV[(i, j)] = c

    prod, brk, diff = {}, {}, {}
    for f in E:
        mf = as_matrix(f)
        fd = E.degree(f)
        diff[f] = (from_matrix(compose(dV, mf))
                   - from_matrix(compose(mf, dV)) * koszul_sign(fd, 1))
        for g in E:
            mg = as_matrix(g)
            fg = from_matrix(compose(mf, mg))
            gf = from_matrix(compose(mg, mf))
            prod[(f, g)] = fg
            brk[(f, g)] = fg - gf * koszul_sign(fd, E.degree(g))
    return DGPoissonData.build(E, BilinearOp(0, prod, E), BilinearOp(0, brk, E), 0,
                               GradedLinearMap(E, E, 1, diff), IDENTITY, commutative=False)


def endomorphism_element(E: DGPoissonData, V: GradedSpace, mat: dict) -> Element:
    """Element of endomorphism_dgp(V) from a sparse matrix {(i, j): c}."""
    F = V.field
    names = list(V)
    first = names[0]
    out = E.space.zero()
    for (i, j), c in mat.items():
        if (i, j) == (first, first):
            vec = {IDENTITY: F.one}
            for k in names[1:]:
                vec[_unit_name(k, k)] = -F.one
            out = out + E.space.element(vec) * c
        else:
            out = out + E.space.basis(_unit_name(i, j)) * c
    return out


def operator_matrix(op: GradedLinearMap) -> dict:
    out = {}
    for j in op.source:
        for i, c in op.image(j):
            out[(i, j)] = c
    return out


# ---------------------------------------------------------------------------
# biderivation extension (shared by the symmetric and exterior builders)
# ---------------------------------------------------------------------------

def extend_biderivation(space: GradedSpace, mul, p: int, gen_bracket, split):
    """Bracket on a graded-commutative algebra generated by degree-one words.

    ``split(name)`` returns None for the unit, (name,) for a generator and
    (first, rest) with name == first * rest for longer monomials.
    ``gen_bracket(x, y)`` gives the bracket of two generators.  The bracket
    is extended with the Poisson identity in the right slot and
    antisymmetry for the left slot.
    """
    deg = space.degrees
    zero = space.zero()

    @lru_cache(maxsize=None)
    def left_gen(x: str, v: str) -> Element:
        s = split(v)
        if s is None:
            return zero
        if len(s) == 1:
            return gen_bracket(x, v)
        b, c = s
        # {x, b c} = {x, b} c + (-1)^{(|x|+p)|b|} b {x, c}
        return (mul(left_gen(x, b), space.basis(c))
                + mul(space.basis(b), left_gen(x, c)) * koszul_sign(deg[x] + p, deg[b]))

    @lru_cache(maxsize=None)
    def full(u: str, v: str) -> Element:
        su = split(u)
        if su is None or split(v) is None:
            return zero
        if len(su) == 1:
            return left_gen(u, v)
        x, w = su
        # {x w, v} = -(-1)^{(|u|+p)(|v|+p)} {v, x w}
        # {v, x w} = {v, x} w + (-1)^{(|v|+p)|x|} x {v, w}
        # {v, x} = -(-1)^{(|v|+p)(|x|+p)} {x, v}
        v_x = left_gen(x, v) * (-koszul_sign(deg[v] + p, deg[x] + p))
        v_w = full(w, v) * (-koszul_sign(deg[v] + p, deg[w] + p))
        inner = (mul(v_x, space.basis(w))
                 + mul(space.basis(x), v_w) * koszul_sign(deg[v] + p, deg[x]))
        return inner * (-koszul_sign(deg[u] + p, deg[v] + p))

    return full


# ---------------------------------------------------------------------------
# graded symmetric algebra of a DG Lie algebra
# ---------------------------------------------------------------------------

def _sorted_merge_sign(seq, deg):
    """Sort seq (indices) by bubble sort, returning (sign, sorted) with the
    Koszul sign for each transposition; None if an odd index repeats."""
    seq = list(seq)
    sign = 1
    n = len(seq)
    for i in range(n):
        for j in range(n - 1 - i):
            if seq[j] > seq[j + 1]:
                sign *= koszul_sign(deg[seq[j]], deg[seq[j + 1]])
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
    for a, b in zip(seq, seq[1:]):
        if a == b and deg[a] % 2:
            return 0, None
    return sign, tuple(seq)


def _mono_name(gens, mono) -> str:
    return "1" if not mono else "·".join(gens[i] for i in mono)


def symmetric_dgp(L: DGLieData, N: int, strict: bool = False) -> DGPoissonData:
    """Graded symmetric algebra S(L) truncated to monomials of length <= N.

    Monomials of length > N span a Poisson ideal (brackets lower length by
    one and the unit brackets to zero), so by default the result is the
    quotient by that ideal.  ``strict=True`` instead raises
    TruncationOverflow whenever a product leaves the window.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    gens = list(L.space)
    gdeg = [L.space.degree(g) for g in gens]
    F = L.space.field
    p = L.bracket_degree
    monos = [()]
    frontier = [()]
    for _ in range(N):
        nxt = []
        for m in frontier:
            start = m[-1] if m else 0
            for i in range(start, len(gens)):
                if m and i == m[-1] and gdeg[i] % 2:
                    continue
                nxt.append(m + (i,))
        monos.extend(nxt)
        frontier = nxt
    names = {m: _mono_name(gens, m) for m in monos}
    S = GradedSpace([(names[m], sum(gdeg[i] for i in m)) for m in monos], F)
    of_name = {v: k for k, v in names.items()}
    gen_index = {g: i for i, g in enumerate(gens)}

    def mono_mul(m1, m2) -> Element:
        sign, m = _sorted_merge_sign(m1 + m2, gdeg)
        if m is None:
            return S.zero()
        if len(m) > N:
            if strict:
                raise TruncationOverflow(f"{names[m1]} * {names[m2]} leaves the window N={N}")
            return S.zero()
        return S.basis(names[m]) * sign

    prod = {}
    for m1 in monos:
        for m2 in monos:
            v = mono_mul(m1, m2)
            if v:
                prod[(names[m1], names[m2])] = v
    prod_op = BilinearOp(0, prod, S)

    def to_S(e: Element) -> Element:
        return S.element({names[(gen_index[k],)]: c for k, c in e.coeffs.items()})

    def split(name):
        m = of_name[name]
        if not m:
            return None
        if len(m) == 1:
            return (name,)
        return (names[m[:1]], names[m[1:]])

    def gen_bracket(x, y):
        return to_S(L.bracket(L.space.basis(gens[of_name[x][0]]),
                              L.space.basis(gens[of_name[y][0]])))

    full = extend_biderivation(S, prod_op, p, gen_bracket, split)
    brk = {}
    for u in S:
        for v in S:
            e = full(u, v)
            if e:
                brk[(u, v)] = e

    # differential: Leibniz from the generators
    diff = {}
    for m in monos:
        if not m:
            continue
        if len(m) == 1:
            diff[names[m]] = to_S(L.differential.image(gens[m[0]]))
            continue
        x, rest = names[m[:1]], names[m[1:]]
        diff[names[m]] = (prod_op(diff.get(x, S.zero()), S.basis(rest))
                          + prod_op(S.basis(x), diff.get(rest, S.zero()))
                          * koszul_sign(S.degree(x), 1))
    return DGPoissonData.build(S, prod_op, BilinearOp(p, brk, S), p,
                               GradedLinearMap(S, S, 1, diff), "1", True)


# ---------------------------------------------------------------------------
# Gerstenhaber algebras
# ---------------------------------------------------------------------------

def gerstenhaber_differential(G: DGPoissonData, alpha: Element) -> DGPoissonData:
    """G with differential d = [alpha, -] for alpha of degree 2, [alpha, alpha] = 0."""
    if G.p != -1:
        raise PreconditionError(f"bracket degree must be -1, got {G.p}")
    if not G.differential.is_zero():
        raise PreconditionError("G must have zero differential")
    if G.field.p == 2:
        raise PreconditionError("characteristic 2")
    if not alpha.is_homogeneous(2):
        raise PreconditionError("alpha must be homogeneous of degree 2", alpha)
    aa = G.br(alpha, alpha)
    if aa:
        raise PreconditionError(f"[alpha, alpha] = {aa!r} is not zero", aa)
    S = G.space
    d = GradedLinearMap(S, S, 1, {x: G.br(alpha, S.basis(x)) for x in S})
    return G.replace(differential=d)


def _wedge_tuple(names, seq):
    return "1" if not seq else "∧".join(names[i] for i in seq)


def _exterior_space(L: DGLieData):
    gens = list(L.space)
    n = len(gens)
    subsets = [()]
    for k in range(1, n + 1):
        from itertools import combinations
        subsets.extend(combinations(range(n), k))
    names = {s: _wedge_tuple(gens, s) for s in subsets}
    Lam = GradedSpace([(names[s], len(s)) for s in subsets], L.space.field)
    return gens, subsets, names, Lam


def _exterior_product(gens, subsets, names, Lam):
    odd = [1] * len(gens)

    def wedge_seq(seq) -> Element:
        sign, m = _sorted_merge_sign(seq, odd)
        if m is None:
            return Lam.zero()
        return Lam.basis(names[m]) * sign

    prod = {}
    for s1 in subsets:
        for s2 in subsets:
            v = wedge_seq(s1 + s2)
            if v:
                prod[(names[s1], names[s2])] = v
    return BilinearOp(0, prod, Lam), wedge_seq


def _check_ordinary_lie(L: DGLieData):
    if any(L.space.degree(x) for x in L.space):
        raise PreconditionError("Lie algebra must be concentrated in degree 0")
    if L.bracket_degree != 0 or not L.differential.is_zero():
        raise PreconditionError("need an ordinary Lie algebra (p = 0, d = 0)")
    rep = verify_dg_lie(L)
    if not rep.passed:
        raise PreconditionError("input is not a Lie algebra", rep)


def exterior_gerstenhaber(L: DGLieData) -> DGPoissonData:
    """Exterior algebra of an ordinary Lie algebra, graded by word length,
    with the degree -1 Schouten-type bracket given by the explicit sum
    over pairs (j <= l < k) of [a_j, a_k] wedged with the remaining factors."""
    _check_ordinary_lie(L)
    gens, subsets, names, Lam = _exterior_space(L)
    prod, wedge_seq = _exterior_product(gens, subsets, names, Lam)
    gi = {g: i for i, g in enumerate(gens)}

    def lie_br(i, j) -> dict:
        e = L.bracket(L.space.basis(gens[i]), L.space.basis(gens[j]))
        return {gi[k]: c for k, c in e.coeffs.items()}

    brk = {}
    for s1 in subsets:
        for s2 in subsets:
            alphas = s1 + s2
            l = len(s1)
            total = Lam.zero()
            for j in range(1, l + 1):
                for k in range(l + 1, len(alphas) + 1):
                    rest = tuple(a for idx, a in enumerate(alphas, 1) if idx not in (j, k))
                    sign = koszul_sign(j + k, 1)
                    for g, c in lie_br(alphas[j - 1], alphas[k - 1]).items():
                        total = total + wedge_seq((g,) + rest) * (c * sign)
            total = total * koszul_sign(l, 1)
            if total:
                brk[(names[s1], names[s2])] = total
    return DGPoissonData.build(Lam, prod, BilinearOp(-1, brk, Lam), -1, None, "1", True)


def exterior_biderivation_bracket(L: DGLieData) -> BilinearOp:
    """Independent path: the unique degree -1 biderivation extension of L's
    bracket to its exterior algebra."""
    _check_ordinary_lie(L)
    gens, subsets, names, Lam = _exterior_space(L)
    prod, _ = _exterior_product(gens, subsets, names, Lam)
    of_name = {v: k for k, v in names.items()}

    def split(name):
        s = of_name[name]
        if not s:
            return None
        if len(s) == 1:
            return (name,)
        return (names[s[:1]], names[s[1:]])

    def gen_bracket(x, y):
        e = L.bracket(L.space.basis(x), L.space.basis(y))
        return Lam.element(e.coeffs)

    full = extend_biderivation(Lam, prod, -1, gen_bracket, split)
    return BilinearOp(-1, {(u, v): full(u, v) for u in Lam for v in Lam}, Lam)


# ---------------------------------------------------------------------------
# deformations
# ---------------------------------------------------------------------------

@dataclass
class DeformationResult:
    order: int | None
    bracket: BilinearOp | None
    poisson: DGPoissonData | None
    report: VerificationReport | None

    @property
    def commutative_to_order(self) -> bool:
        return self.order is None


def deformation_bracket(D: DeformationData) -> DeformationResult:
    """Smallest m with B_m not graded-symmetric and the bracket
    {a,b} = B_m(a,b) - (-1)^{|a||b|} B_m(b,a)."""
    A = D.algebra
    S = A.space
    deg = S.degrees
    for m, Bm in enumerate(D.coefficients, 1):
        table = {}
        for x in S:
            for y in S:
                v = Bm.entry(x, y) - Bm.entry(y, x) * koszul_sign(deg[x], deg[y])
                if v:
                    table[(x, y)] = v
        if table:
            br = BilinearOp(0, table, S)
            P = DGPoissonData(A, DGLieData(S, br, 0, A.differential))
            rep = verify_dg_poisson(P)
            if not rep.passed:
                raise PreconditionError(
                    "deformation bracket is not a DG Poisson structure; "
                    "inconsistent B_i", rep)
            return DeformationResult(m, br, P, rep)
    return DeformationResult(None, None, None, None)


# ---------------------------------------------------------------------------
# semidirect product L x| L
# ---------------------------------------------------------------------------

def semidirect_first(x):
    return f"({x},0)"


def semidirect_second(x):
    return f"(0,{x})"


def semidirect_lie(L: DGLieData) -> DGLieData:
    """L x| L: the first copy L+0 is an abelian ideal, the second copy 0+L
    is a subalgebra isomorphic to L acting on the first by the bracket.

    The first copy is shifted down by p (degrees |x| - p) so that its
    enveloping generators have the degrees of the M-generators.
    """
    S = L.space
    p = L.bracket_degree
    T = GradedSpace([(semidirect_first(x), S.degree(x) - p) for x in S]
                    + [(semidirect_second(x), S.degree(x)) for x in S], S.field)

    def first(e):
        return T.element({semidirect_first(k): c for k, c in e.coeffs.items()})

    def second(e):
        return T.element({semidirect_second(k): c for k, c in e.coeffs.items()})

    brk = {}
    for a in S:
        for b in S:
            ab = L.bracket(S.basis(a), S.basis(b))
            brk[(semidirect_second(a), semidirect_second(b))] = second(ab)
            brk[(semidirect_second(a), semidirect_first(b))] = first(ab)
            # antisymmetry with shifted parities: |(b,0)| + p = |b|
            brk[(semidirect_first(b), semidirect_second(a))] = \
                first(ab) * (-koszul_sign(S.degree(b), S.degree(a) + p))
    diff = {}
    for x in S:
        dx = L.differential.image(x)
        diff[semidirect_first(x)] = first(dx)
        diff[semidirect_second(x)] = second(dx)
    return DGLieData(T, BilinearOp(p, brk, T), p, GradedLinearMap(T, T, 1, diff))


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def regular_module(A: DGPoissonData) -> DGPoissonModuleData:
    return DGPoissonModuleData(A, A.space, A.product, A.bracket, A.differential)


def zero_module(A: DGPoissonData) -> DGPoissonModuleData:
    Z = GradedSpace([], A.field)
    return DGPoissonModuleData(A, Z, BilinearOp(0, {}, A.space, Z, Z),
                               BilinearOp(A.p, {}, A.space, Z, Z),
                               GradedLinearMap.zero(Z, Z, 1))


def opposite_module(A: DGPoissonData, M: DGPoissonModuleData) -> DGPoissonModuleData:
    """Left module over A -> right module over A^op, and back.

    m *op a = (-1)^{|a||m|} a * m,  {m, a} = (-1)^{(|a|+p)(|m|+p)} {a, m}.
    """
    p = A.p
    da, dm = A.space.degrees, M.space.degrees
    act, lact = {}, {}
    for a in A.space:
        for m in M.space:
            s1 = koszul_sign(da[a], dm[m])
            s2 = koszul_sign(da[a] + p, dm[m] + p)
            if M.right:
                act[(a, m)] = M.action.entry(m, a) * s1
                lact[(a, m)] = M.lie_action.entry(m, a) * s2
            else:
                act[(m, a)] = M.action.entry(a, m) * s1
                lact[(m, a)] = M.lie_action.entry(a, m) * s2
    Aop = opposite(A)
    if M.right:
        return DGPoissonModuleData(Aop, M.space,
                                   BilinearOp(0, act, A.space, M.space, M.space),
                                   BilinearOp(p, lact, A.space, M.space, M.space),
                                   M.differential, right=False)
    return DGPoissonModuleData(Aop, M.space,
                               BilinearOp(0, act, M.space, A.space, M.space),
                               BilinearOp(p, lact, M.space, A.space, M.space),
                               M.differential, right=True)


def tensor_module(A: DGPoissonData, M: DGPoissonModuleData,
                  B: DGPoissonData, N: DGPoissonModuleData) -> DGPoissonModuleData:
    check_degree_match(A.p, B.p)
    if M.right or N.right:
        raise PreconditionError("tensor_module takes left modules")
    p = A.p
    AB = tensor(A, B)
    T = tensor_space(M.space, N.space)
    db = B.space.degrees
    dm = M.space.degrees
    act, lact, diff = {}, {}, {}
    for m in M.space:
        for n in N.space:
            mn = tensor_name(m, n)
            em, en = M.space.basis(m), N.space.basis(n)
            diff[mn] = (tensor_elements(T, M.d(em), en)
                        + tensor_elements(T, em, N.d(en)) * koszul_sign(dm[m], 1))
            for a in A.space:
                for b in B.space:
                    ab = tensor_name(a, b)
                    ea, eb = A.b(a), B.b(b)
                    am, bn = M.act(ea, em), N.act(eb, en)
                    act[(ab, mn)] = tensor_elements(T, am, bn) * koszul_sign(db[b], dm[m])
                    lact[(ab, mn)] = (
                        tensor_elements(T, M.lact(ea, em), bn) * koszul_sign(dm[m] + p, db[b])
                        + tensor_elements(T, am, N.lact(eb, en)) * koszul_sign(dm[m], db[b] + p))
    return DGPoissonModuleData(AB, T, BilinearOp(0, act, AB.space, T, T),
                               BilinearOp(p, lact, AB.space, T, T),
                               GradedLinearMap(T, T, 1, diff))
