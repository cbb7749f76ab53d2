"""Transport between DG Poisson modules and representations of the
enveloping algebra: M_a acts as a * -, H_a acts as {a, -}."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..construct import (DGVectorSpaceData, PreconditionError, endomorphism_dgp,
                         endomorphism_element, operator_matrix)
from ..core import BilinearOp, GradedLinearMap, GradedSpace, koszul_sign
from ..structures import DGPoissonModuleData, verify_dg_poisson_module
from .relations import build_relations
from .truncation import ue_truncated
from .universal import PTripleData, WindowReport, induced_map
from .words import H, M, gen_degree, word_degree


@dataclass
class UEModuleRep:
    space: GradedSpace
    differential: GradedLinearMap
    ops: dict                      # generator (kind, a) -> GradedLinearMap space -> space
    report: WindowReport = field(default_factory=WindowReport)

    def op(self, kind, a):
        return self.ops[(kind, a)]


def _zero_op(S, degree):
    return GradedLinearMap.zero(S, S, degree)


def _add(f: GradedLinearMap, g: GradedLinearMap, c=1) -> GradedLinearMap:
    table = {}
    for x in f.source:
        v = f.image(x) + g.image(x) * c
        if v:
            table[x] = v
    return GradedLinearMap(f.source, f.target, f.degree, table)


def operator_of(A, R: UEModuleRep, poly: dict, degree: int) -> GradedLinearMap:
    """Operator of an NC polynomial: the word g1...gk acts as rho(g1)...rho(gk)."""
    S = R.space
    out = _zero_op(S, degree)
    for w, c in poly.items():
        op = GradedLinearMap.identity(S)
        for s in w:
            op = op.compose(R.ops[s])
        out = _add(out, op, c)
    return out


def verify_ue_rep(A, R: UEModuleRep) -> WindowReport:
    """Relations (i)-(v) as operator identities, and d-compatibility
    d_M rho(s) - (-1)^{|s|} rho(s) d_M = rho(d s) on generators."""
    S, dM = R.space, R.differential
    r = WindowReport()
    for s in [(M, a) for a in A.space] + [(H, a) for a in A.space]:
        if s not in R.ops:
            raise PreconditionError(f"no operator for generator {s}")
        if R.ops[s].degree != gen_degree(A, s):
            raise PreconditionError(f"operator for {s} has the wrong degree", s)
    for rel in build_relations(A):
        deg = word_degree(A, next(iter(rel.poly)))
        op = operator_of(A, R, rel.poly, deg)
        for x in S:
            r.add(f"relation ({rel.clause})", tuple(rel.pair) + (x,), op.image(x))
    for kind, a in R.ops:
        rho = R.ops[(kind, a)]
        ds = {((kind, z),): c for z, c in A.d(A.b(a)).coeffs.items()}
        rho_ds = operator_of(A, R, ds, rho.degree + 1)
        sign = koszul_sign(rho.degree, 1)
        for x in S:
            lhs = dM(rho.image(x)) - rho(dM.image(x)) * sign
            r.add("d-compatibility", (kind, a, x), lhs - rho_ds.image(x))
    return r


def module_to_ue_rep(A, Mod: DGPoissonModuleData, L: int | None = None) -> UEModuleRep:
    if Mod.right:
        raise PreconditionError("module transport is implemented for left modules")
    S = Mod.space
    ops = {}
    for a in A.space:
        ea = A.b(a)
        ops[(M, a)] = GradedLinearMap(S, S, A.space.degree(a),
                                      {m: Mod.act(ea, S.basis(m)) for m in S})
        ops[(H, a)] = GradedLinearMap(S, S, A.space.degree(a) + A.p,
                                      {m: Mod.lact(ea, S.basis(m)) for m in S})
    R = UEModuleRep(S, Mod.differential, ops)
    R.report = verify_ue_rep(A, R)
    if L is not None:
        U = ue_truncated(A, L)
        phi = induced_map(A, module_triple(A, R), U, raise_on_relation=False)
        R.report.extend(phi.report)
    return R


def module_triple(A, R: UEModuleRep) -> PTripleData:
    """(End(M), a -> rho(M_a), a -> rho(H_a)) as a triple into the
    endomorphism DG algebra."""
    E = endomorphism_dgp(DGVectorSpaceData(R.space, R.differential))
    f = GradedLinearMap(A.space, E.space, 0, {
        a: endomorphism_element(E, R.space, operator_matrix(R.ops[(M, a)])) for a in A.space})
    g = GradedLinearMap(A.space, E.space, A.p, {
        a: endomorphism_element(E, R.space, operator_matrix(R.ops[(H, a)])) for a in A.space})
    return PTripleData(E.algebra, f, g)


def ue_rep_to_module(A, R: UEModuleRep) -> DGPoissonModuleData:
    rep = verify_ue_rep(A, R)
    if not rep.passed:
        v = rep.violations[0]
        raise PreconditionError(f"representation violates {v.axiom} at {v.witness}", v.witness)
    S = R.space
    act, lact = {}, {}
    for a in A.space:
        for m in S:
            act[(a, m)] = R.ops[(M, a)].image(m)
            lact[(a, m)] = R.ops[(H, a)].image(m)
    Mod = DGPoissonModuleData(A, S, BilinearOp(0, act, A.space, S, S),
                              BilinearOp(A.p, lact, A.space, S, S), R.differential)
    check = verify_dg_poisson_module(Mod)
    if not check.passed:
        v = check.violations[0]
        raise PreconditionError(f"transported module violates {v.axiom} at {v.witness}",
                                v.witness)
    return Mod
