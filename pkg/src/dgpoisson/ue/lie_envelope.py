"""Enveloping algebra of a DG Lie algebra by sorting (PBW) rewriting.

Generators Z_v of degree |v| + p; Z_a Z_b with a after b rewrites to
Z_{[a,b]} + (-1)^{(|a|+p)(|b|+p)} Z_b Z_a, and Z_a Z_a with |a|+p odd to
(1/2) Z_{[a,a]}.  Every step shortens the word or removes an inversion, so
rewriting terminates; sorted words form a basis.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from ..core import Element, GradedSpace, koszul_sign
from ..linalg import viadd
from .truncation import OutOfWindow


def zword_str(w) -> str:
    return " ".join(f"Z({a})" for a in w) if w else "1"


class EnvelopeWindow:
    """Sorted words of length <= bound in U(g), as a partial target algebra."""

    def __init__(self, g, bound: int):
        self.g = g
        self.bound = bound
        S = g.space
        self.F = S.field
        self.p = g.bracket_degree
        self.idx = S.index
        self.deg = {a: S.degree(a) + self.p for a in S}
        self.half = self.F.one / self.F(2)
        self.bt = {(a, b): g.bracket(S.basis(a), S.basis(b)).coeffs for a in S for b in S}
        self._nf: dict = {}
        words = []
        for k in range(bound + 1):
            for w in combinations_with_replacement(sorted(S, key=self.idx.get), k):
                if any(x == y and self.deg[x] % 2 for x, y in zip(w, w[1:])):
                    continue
                words.append(w)
        self.words = words
        self.label = {w: zword_str(w) for w in words}
        self.space = GradedSpace([(self.label[w], sum(self.deg[a] for a in w)) for w in words],
                                 self.F)
        self.word_of = {v: k for k, v in self.label.items()}

    def nf(self, w) -> dict:
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        out: dict = {}
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if self.idx[a] > self.idx[b]:
                s = koszul_sign(self.deg[a], self.deg[b])
                for z, c in self.bt[(a, b)].items():
                    viadd(out, self.nf(w[:i] + (z,) + w[i + 2:]), c)
                viadd(out, self.nf(w[:i] + (b, a) + w[i + 2:]), self.F.one * s)
                break
            if a == b and self.deg[a] % 2:
                for z, c in self.bt[(a, a)].items():
                    viadd(out, self.nf(w[:i] + (z,) + w[i + 2:]), c * self.half)
                break
        else:
            out = {w: self.F.one}
        self._nf[w] = out
        return out

    def element(self, vec: dict) -> Element:
        return Element(self.space, {self.label[w]: c for w, c in vec.items()})

    def gen(self, e: Element) -> Element:
        """Z applied linearly to an element of g."""
        out: dict = {}
        for a, c in e.coeffs.items():
            viadd(out, self.nf((a,)), c)
        return self.element(out)

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for u, a in x.coeffs.items():
            wu = self.word_of[u]
            for v, b in y.coeffs.items():
                wv = self.word_of[v]
                if len(wu) + len(wv) > self.bound:
                    raise OutOfWindow(f"{u} * {v} exceeds length {self.bound}")
                viadd(out, self.nf(wu + wv), a * b)
        return self.element(out)

    def d(self, x: Element) -> Element:
        S = self.g.space
        out: dict = {}
        for u, c in x.coeffs.items():
            w = self.word_of[u]
            before = 0
            for i, a in enumerate(w):
                da = self.g.differential(S.basis(a))
                s = koszul_sign(before, 1)
                for z, e in da.coeffs.items():
                    viadd(out, self.nf(w[:i] + (z,) + w[i + 1:]), c * e * s)
                before += self.deg[a]
        return self.element(out)

    def one(self) -> Element:
        return self.space.basis("1")

    def dims_up_to(self, k: int) -> dict:
        """degree -> number of sorted words of length <= k."""
        out: dict = {}
        for w in self.words:
            if len(w) <= k:
                d = sum(self.deg[a] for a in w)
                out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))
