"""Defining relations (i)-(v) of the universal enveloping algebra, instantiated
on all ordered pairs of basis symbols."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from ..core import koszul_sign
from ..linalg import viadd
from .words import H, M, gen_poly, word_degree


@dataclass(frozen=True)
class Relation:
    clause: str          # "i" .. "v"
    pair: tuple          # basis symbols the instance was built from
    poly: dict           # NC polynomial that must vanish

    def __repr__(self):
        return f"Relation({self.clause}, {self.pair}, {len(self.poly)} terms)"


class RelationSet(list):
    """List of Relation instances; every one is degree-homogeneous."""

    def by_clause(self, clause):
        return [r for r in self if r.clause == clause]


def _acc(poly, *terms):
    out = dict(poly)
    for w, c in terms:
        viadd(out, {w: c})
    return out


def build_relations(A) -> RelationSet:
    """(i)   M_{ab} - M_a M_b
    (ii)  H_{{a,b}} - H_a H_b + (-1)^{(|a|+p)(|b|+p)} H_b H_a
    (iii) H_{ab} - M_a H_b - (-1)^{|a||b|} M_b H_a
    (iv)  M_{{a,b}} - H_a M_b + (-1)^{(|a|+p)|b|} M_b H_a
    (v)   M_1 - 1
    """
    F = A.field
    one = F.one
    deg = A.space.degrees
    p = A.p
    out = RelationSet()
    for a, b in iproduct(A.space, A.space):
        ea, eb = A.b(a), A.b(b)
        ab, br = A.mul(ea, eb), A.br(ea, eb)
        Ma, Mb, Ha, Hb = (M, a), (M, b), (H, a), (H, b)
        s_ii = koszul_sign(deg[a] + p, deg[b] + p)
        s_iii = koszul_sign(deg[a], deg[b])
        s_iv = koszul_sign(deg[a] + p, deg[b])
        # terms are accumulated one by one: for a == b two words coincide
        rels = {
            "i": _acc(gen_poly(M, ab), ((Ma, Mb), -one)),
            "ii": _acc(gen_poly(H, br), ((Ha, Hb), -one), ((Hb, Ha), one * s_ii)),
            "iii": _acc(gen_poly(H, ab), ((Ma, Hb), -one), ((Mb, Ha), -one * s_iii)),
            "iv": _acc(gen_poly(M, br), ((Ha, Mb), -one), ((Mb, Ha), one * s_iv)),
        }
        for clause in ("i", "ii", "iii", "iv"):
            poly = rels[clause]
            if poly:
                assert len({word_degree(A, w) for w in poly}) == 1, (clause, a, b)
                out.append(Relation(clause, (a, b), poly))
    out.append(Relation("v", (A.unit,), {((M, A.unit),): one, (): -one}))
    return out
