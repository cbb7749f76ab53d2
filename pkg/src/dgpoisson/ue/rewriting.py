"""Oriented rewriting for the enveloping algebra.

Normal forms are words ``M_z H_{y1} ... H_{yk}`` with ``z`` a non-unit basis
symbol (or absent), every ``y`` a free H-generator, the ``y`` sorted by basis
order and no odd shifted generator repeated.  The oriented rules are

* ``M_1 -> 1``, ``M_a M_b -> M_{ab}``;
* ``H_z -> sum c M_w H_y`` for the H-generators that relation (iii) makes
  dependent (see :func:`reduce_h_generators`);
* ``H_a M_b -> M_{{a,b}} + (-1)^{(|a|+p)|b|} M_b H_a``;
* ``H_x H_y -> H_{{x,y}} + (-1)^{(|x|+p)(|y|+p)} H_y H_x`` when x > y, and
  ``H_x H_x -> 1/2 H_{{x,x}}`` when |x|+p is odd.

When the module of Kähler-type differentials is not free these rules alone
leave relations such as ``M_x H_x = 0`` in ``k[x]/(x^2)``.  Such residual
relations are collected, closed under multiplication by generators up to a
bound on the number of H-letters, and eliminated by linear reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from ..core import koszul_sign
from ..linalg import Echelon, viadd
from .relations import build_relations
from .words import H, M, word_str


class RewritingError(ArithmeticError):
    """Rewriting could not finish: a cycle, or the iteration guard tripped."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class TruncationOverflow(ArithmeticError):
    """A normal form would need more H-letters than the completion bound."""


@dataclass
class HReduction:
    free: tuple                       # basis symbols y with H_y kept
    dependent: dict                   # z -> {(w, y): c}: H_z = sum c M_w H_y
    module_rows: list = field(default_factory=list)  # relations among M_w H_y, y free


def _mul_table(A):
    return {(a, b): A.mul(A.b(a), A.b(b)).coeffs for a in A.space for b in A.space}


def _br_table(A):
    return {(a, b): A.br(A.b(a), A.b(b)).coeffs for a in A.space for b in A.space}


def reduce_h_generators(A) -> HReduction:
    """Solve relation (iii) for as many H-generators as possible.

    Works in W = span{M_w H_y} (M_1 H_y read as H_y).  The relation vectors
    H_{ab} - M_a H_b - (-1)^{|a||b|} M_b H_a, closed under left
    multiplication by M_c, span a subspace R.  Columns H_z are eliminated
    first (later basis symbols preferred); the eliminated z are the
    dependent generators.  A second elimination puts every column M_w H_z
    with z dependent above the rest, so each dependent H_z is rewritten in
    terms of free ones; if that fails the reduction is cyclic.
    """
    S = A.space
    u, idx, deg = A.unit, S.index, S.degrees
    mt = _mul_table(A)

    seeds = []
    for a in S:
        for b in S:
            v: dict = {}
            viadd(v, {(u, z): c for z, c in mt[(a, b)].items()})
            viadd(v, {(a, b): 1}, -1)
            viadd(v, {(b, a): koszul_sign(deg[a], deg[b])}, -1)
            if v:
                seeds.append({k: S.field(c) for k, c in v.items()})

    def lmul(c, vec):
        out: dict = {}
        for (w, y), x in vec.items():
            for z, e in mt[(c, w)].items():
                viadd(out, {(z, y): x * e})
        return out

    # closure of the span under M_c *
    closure = Echelon(lambda k: (idx[k[0]], idx[k[1]]), S.field.one)
    basis_rows, queue = [], list(seeds)
    while queue:
        v = queue.pop()
        if closure.add(v) is not None:
            basis_rows.append(v)
            queue.extend(lmul(c, v) for c in S if c != u)

    step1 = Echelon(lambda k: (k[0] == u, idx[k[1]] if k[0] == u else -1,
                               idx[k[0]], idx[k[1]]), S.field.one)
    step1.extend(basis_rows)
    dep = {y for (w, y) in step1.pivots if w == u}
    free = tuple(y for y in S if y not in dep)

    step2 = Echelon(lambda k: (k[1] in dep, idx[k[1]] if k[1] in dep else -1,
                               k[0] != u, idx[k[0]], idx[k[1]]), S.field.one)
    step2.extend(basis_rows)
    rows = {k: r for k, (r, _) in step2.rref().items()}

    dependent = {}
    for z in S:
        if z not in dep:
            continue
        row = rows.get((u, z))
        if row is None:
            raise RewritingError(f"H({z}) is dependent but not solvable", (u, z))
        rhs = {k: -c for k, c in row.items() if k != (u, z)}
        bad = [k for k in rhs if k[1] in dep]
        if bad:
            raise RewritingError(
                f"cyclic reduction: H({z}) needs M({bad[0][0]}) H({bad[0][1]})", bad[0])
        dependent[z] = rhs
    module_rows = [r for (w, y), r in rows.items() if y not in dep]
    return HReduction(free, dependent, module_rows)


def _vec_to_poly(vec, unit) -> dict:
    out = {}
    for (w, y), c in vec.items():
        word = ((H, y),) if w == unit else ((M, w), (H, y))
        out[word] = c
    return out


class RewritingSystem:
    """Normal forms in the enveloping algebra of a DG Poisson algebra.

    ``h_bound`` caps the number of H-letters for which residual relations
    are completed; inputs with longer normal forms raise TruncationOverflow.
    """

    MAX_STEPS = 200_000

    def __init__(self, A, h_bound: int = 4):
        self.A = A
        self.F = A.field
        self.unit = A.unit
        self.idx = A.space.index
        self.deg = A.space.degrees
        self.p = A.p
        self.half = self.F.one / self.F(2)
        self.mt = _mul_table(A)
        self.bt = _br_table(A)
        self.hred = reduce_h_generators(A)
        self.free = set(self.hred.free)
        self.subst = {z: _vec_to_poly(v, self.unit) for z, v in self.hred.dependent.items()}
        self.h_bound = h_bound
        self._local: dict = {}
        self._full: dict = {}
        self._steps = 0
        self.residual = Echelon(self.key, self.F.one)
        self._complete()

    # ---- ordering of canonical words ------------------------------------
    def key(self, w):
        hs = tuple(self.idx[a] for k, a in w if k == H)
        ms = tuple(self.idx[a] for k, a in w if k == M)
        return (len(hs), hs, ms)

    def is_canonical(self, w) -> bool:
        return self._rule(w) is None and w not in self.residual.rows

    # ---- one rewriting step ---------------------------------------------
    def _rule(self, w):
        """Return the rewrite of the first redex as [(word, coeff)], or None."""
        one = self.F.one
        for i, (kind, a) in enumerate(w):
            if kind == M and a == self.unit:
                return [(w[:i] + w[i + 1:], one)]
            if kind == H and a in self.subst:
                return [(w[:i] + sw + w[i + 1:], c) for sw, c in self.subst[a].items()]
        for i in range(len(w) - 1):
            (k1, a), (k2, b) = w[i], w[i + 1]
            if k1 == M and k2 == M:
                return [(w[:i] + ((M, z),) + w[i + 2:], c) for z, c in self.mt[(a, b)].items()]
            if k1 == H and k2 == M:
                s = koszul_sign(self.deg[a] + self.p, self.deg[b])
                out = [(w[:i] + ((M, z),) + w[i + 2:], c) for z, c in self.bt[(a, b)].items()]
                out.append((w[:i] + ((M, b), (H, a)) + w[i + 2:], one * s))
                return out
        for i in range(len(w) - 1):
            (k1, a), (k2, b) = w[i], w[i + 1]
            if k1 != H or k2 != H:
                continue
            ia, ib = self.idx[a], self.idx[b]
            if ia > ib:
                s = koszul_sign(self.deg[a] + self.p, self.deg[b] + self.p)
                out = [(w[:i] + ((H, z),) + w[i + 2:], c) for z, c in self.bt[(a, b)].items()]
                out.append((w[:i] + ((H, b), (H, a)) + w[i + 2:], one * s))
                return out
            if ia == ib and (self.deg[a] + self.p) % 2:
                return [(w[:i] + ((H, z),) + w[i + 2:], c * self.half)
                        for z, c in self.bt[(a, a)].items()]
        return None

    def local_word(self, w) -> dict:
        """Normal form of a word under the oriented rules only."""
        hit = self._local.get(w)
        if hit is not None:
            return hit
        self._steps += 1
        if self._steps > self.MAX_STEPS:
            raise RewritingError("rewriting exceeded its iteration guard", w)
        step = self._rule(w)
        if step is None:
            out = {w: self.F.one}
        else:
            out = {}
            for w2, c in step:
                viadd(out, self.local_word(w2), c)
        self._local[w] = out
        return out

    def local(self, poly: dict) -> dict:
        out: dict = {}
        for w, c in poly.items():
            viadd(out, self.local_word(w), c)
        return out

    # ---- completion of residual relations --------------------------------
    def _hcount(self, w):
        return sum(1 for k, _ in w if k == H)

    def _complete(self):
        A = self.A
        seeds = [self.local(_vec_to_poly(r, self.unit)) for r in self.hred.module_rows]
        seeds += [self.local(r.poly) for r in build_relations(A)]
        gens = [((M, c),) for c in A.space if c != self.unit]
        gens += [((H, y),) for y in self.hred.free]
        queue = [s for s in seeds if s]
        while queue:
            v = queue.pop()
            if max(self._hcount(w) for w in v) > self.h_bound:
                continue
            if self.residual.add(v) is None:
                continue
            for g in gens:
                for prod in ({g + w: c for w, c in v.items()}, {w + g: c for w, c in v.items()}):
                    r = self.local(prod)
                    if r and max(self._hcount(w) for w in r) <= self.h_bound:
                        queue.append(r)

    # ---- public normal form ------------------------------------------------
    def normal_form_word(self, w) -> dict:
        hit = self._full.get(w)
        if hit is not None:
            return hit
        loc = self.local_word(w)
        for t in loc:
            if self._hcount(t) > self.h_bound:
                raise TruncationOverflow(
                    f"{word_str(w)} needs {self._hcount(t)} H-letters, bound {self.h_bound}")
        out = self.residual.reduce(loc)[0]
        self._full[w] = out
        return out

    def normal_form(self, poly: dict) -> dict:
        out: dict = {}
        for w, c in poly.items():
            viadd(out, self.normal_form_word(w), c)
        return out

    def canonical_words(self, max_h: int | None = None):
        """All canonical words with at most ``max_h`` H-letters."""
        max_h = self.h_bound if max_h is None else max_h
        free = sorted(self.hred.free, key=self.idx.get)
        out = []
        for k in range(max_h + 1):
            for ys in combinations_with_replacement(free, k):
                hw = tuple((H, y) for y in ys)
                for z in [None] + [c for c in self.A.space if c != self.unit]:
                    w = hw if z is None else ((M, z),) + hw
                    if self._rule(w) is None and w not in self.residual.rows:
                        out.append(w)
        return out


def normal_form(A, poly: dict, h_bound: int = 4) -> dict:
    return RewritingSystem(A, h_bound).normal_form(poly)
