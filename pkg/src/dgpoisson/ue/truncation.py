"""Finite windows of the enveloping algebra.

``F_l`` is the image of words of length <= l in the generators M_a, H_a.
A window of length L records a basis of F_L adapted to the filtration, the
degree and level of each basis element, a free-algebra preimage of each, and
the product table wherever both levels sum to at most L.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..core import Element, GradedLinearMap, GradedSpace
from ..linalg import Echelon, viadd
from .rewriting import RewritingSystem
from .words import H, M, pmul, poly_differential, word_degree, word_str


class OutOfWindow(ArithmeticError):
    """A product would leave the computed window."""


class SizeGuardError(MemoryError):
    """A requested window exceeds the configured size guard."""


ENV_MAX_LEN = "DGPOISSON_MAX_LEN"
DEFAULT_MAX_LEN = 12


class FilteredBasis:
    """Basis built level by level, with coordinates and preimages.

    ``key`` orders ambient coordinates; basis vectors are echelon remainders.
    """

    def __init__(self, key, one):
        self.ech = Echelon(key, one)
        self.vectors: list[dict] = []
        self.preimages: list[dict] = []
        self.levels: list[int] = []
        self.leads: list = []

    def coords(self, v: dict):
        """(coordinates, remainder) of an ambient vector."""
        rem, comp = self.ech.reduce(v, {})
        return {i: -c for i, c in comp.items()}, rem

    def offer(self, v: dict, pre: dict, level: int) -> bool:
        coords, rem = self.coords(v)
        if not rem:
            return False
        pre = dict(pre)
        for i, c in coords.items():
            viadd(pre, self.preimages[i], -c)
        k = max(rem, key=self.ech.key)
        inv = self.ech.one / rem[k]
        self.ech.add(rem, {len(self.vectors): rem[k]})
        # stored row is rem * inv; keep the basis vector equal to the stored row
        self.vectors.append({w: c * inv for w, c in rem.items()})
        self.preimages.append({w: c * inv for w, c in pre.items()})
        self.levels.append(level)
        self.leads.append(k)
        return True

    def __len__(self):
        return len(self.vectors)


@dataclass
class UETruncation:
    """Window ``F_L`` of an enveloping algebra, from either engine."""

    algebra: object
    L: int
    provenance: str                    # "rewrite" | "oracle" | "document"
    space: GradedSpace
    levels: dict                       # label -> filtration level
    preimages: dict                    # label -> NC polynomial
    product: dict                      # (label, label) -> Element, defined pairs only
    differential: GradedLinearMap
    stable: Optional[bool] = None
    notes: list = field(default_factory=list)
    generators: dict = field(default_factory=dict)   # (kind, a) -> Element
    _coords: Optional[Callable] = field(default=None, repr=False, compare=False)

    @property
    def labels(self):
        return self.space.names

    @property
    def dim(self):
        return self.space.dim

    def one(self) -> Element:
        return self.space.basis("1")

    def defined(self, u: str, v: str) -> bool:
        return self.levels[u] + self.levels[v] <= self.L

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for u, a in x.coeffs.items():
            for v, b in y.coeffs.items():
                if not self.defined(u, v):
                    raise OutOfWindow(f"{u} * {v} leaves the window L={self.L}")
                e = self.product.get((u, v))
                if e is not None:
                    viadd(out, e.coeffs, a * b)
        return Element(self.space, out)

    def d(self, x: Element) -> Element:
        return self.differential(x)

    def coords(self, poly: dict) -> Element:
        """Express a free-algebra polynomial (terms of length <= L) in the basis."""
        if self._coords is None:
            raise RuntimeError("this window was loaded from a document and cannot reduce")
        return self._coords(poly)

    def gen(self, kind: str, a: str) -> Element:
        hit = self.generators.get((kind, a))
        if hit is not None:
            return hit
        return self.coords({((kind, a),): self.space.field.one})

    def M(self, e: Element) -> Element:
        return self._lin(M, e)

    def H(self, e: Element) -> Element:
        return self._lin(H, e)

    def _lin(self, kind, e):
        out = self.space.zero()
        for z, c in e.coeffs.items():
            out = out + self.gen(kind, z) * c
        return out

    def fill_generators(self) -> "UETruncation":
        if self.L >= 1:
            for a in self.algebra.space:
                for kind in (M, H):
                    self.generators[(kind, a)] = self.coords({((kind, a),): self.space.field.one})
        return self

    def dims(self) -> dict:
        """(level, degree) -> number of basis elements."""
        out: dict = {}
        for n in self.labels:
            k = (self.levels[n], self.space.degree(n))
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def filtration_dims(self) -> list[int]:
        return [sum(1 for n in self.labels if self.levels[n] <= l) for l in range(self.L + 1)]


def all_generators(A):
    return [(M, a) for a in A.space] + [(H, a) for a in A.space]


def ue_truncated(A, L: int, system: RewritingSystem | None = None) -> UETruncation:
    """Window F_L by rewriting to normal form."""
    if L < 0:
        raise ValueError("window length must be non-negative")
    cap = int(os.environ.get(ENV_MAX_LEN, DEFAULT_MAX_LEN))
    if L > cap:
        raise SizeGuardError(f"window length {L} exceeds the guard {cap} (set {ENV_MAX_LEN})")
    rs = system or RewritingSystem(A, h_bound=max(L, 1))
    F = A.field
    one = F.one
    rkey = lambda w: (len(w), rs.key(w))
    fb = FilteredBasis(rkey, one)
    fb.offer(rs.normal_form({(): one}), {(): one}, 0)
    gens = all_generators(A)
    frontier = [0]
    for level in range(1, L + 1):
        new = []
        for i in frontier:
            for g in gens:
                v = {}
                for w, c in fb.vectors[i].items():
                    viadd(v, rs.normal_form_word((g,) + w), c)
                if fb.offer(v, pmul({(g,): one}, fb.preimages[i]), level):
                    new.append(len(fb) - 1)
        frontier = new

    labels = [word_str(k) for k in fb.leads]
    degs = [word_degree(A, k) for k in fb.leads]
    space = GradedSpace(zip(labels, degs), F)

    def to_elem(coords):
        return Element(space, {labels[i]: c for i, c in coords.items()})

    def express(v, what):
        coords, rem = fb.coords(v)
        if rem:
            raise OutOfWindow(f"{what} is not in the window F_{L}")
        return to_elem(coords)

    def nf_vec(vec_a, vec_b):
        out = {}
        for w1, c1 in vec_a.items():
            for w2, c2 in vec_b.items():
                viadd(out, rs.normal_form_word(w1 + w2), c1 * c2)
        return out

    n = len(fb)
    product = {}
    for i in range(n):
        for j in range(n):
            if fb.levels[i] + fb.levels[j] <= L:
                product[(labels[i], labels[j])] = express(
                    nf_vec(fb.vectors[i], fb.vectors[j]), f"{labels[i]} * {labels[j]}")

    dtable = {}
    for i in range(n):
        dv = rs.normal_form(poly_differential(A, fb.vectors[i]))
        dtable[labels[i]] = express(dv, f"d({labels[i]})")
    diff = GradedLinearMap(space, space, 1, dtable)

    def coords(poly):
        return express(rs.normal_form(poly), "element")

    return UETruncation(
        algebra=A, L=L, provenance="rewrite", space=space,
        levels=dict(zip(labels, fb.levels)),
        preimages=dict(zip(labels, fb.preimages)),
        product=product, differential=diff, _coords=coords,
        notes=[f"free H-generators: {', '.join(rs.hred.free) or 'none'}",
               f"residual relations completed up to {rs.h_bound} H-letters: {len(rs.residual)}"]
    ).fill_generators()
