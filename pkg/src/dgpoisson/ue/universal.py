"""Property-P triples, the induced algebra maps out of a window, and the
target algebras used by the theorem checks (tensor and opposite of windows).

A *target* is anything with ``space``, ``mul(x, y)``, ``d(x)`` and
``one()``; DGAlgebraData, DGPoissonData and UETruncation all qualify.
Partial targets raise OutOfWindow from ``mul``; such identities are
recorded as deferrals instead of being checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (Element, GradedLinearMap, StructureError, koszul_sign, tensor_name,
                    tensor_space)
from ..linalg import viadd
from ..structures import VerificationReport
from .relations import build_relations
from .truncation import OutOfWindow, UETruncation
from .words import H, M, poly_differential


@dataclass(frozen=True)
class PTripleData:
    target: object
    f: GradedLinearMap     # A -> B, degree 0
    g: GradedLinearMap     # A -> B, degree p


@dataclass
class Deferral:
    check: str
    witness: tuple
    reason: str

    def to_dict(self):
        return {"check": self.check, "witness": list(self.witness), "reason": self.reason}


@dataclass
class WindowReport(VerificationReport):
    """VerificationReport that also lists identities skipped at the window edge."""

    deferrals: list = field(default_factory=list)

    def defer(self, check, witness, reason):
        self.deferrals.append(Deferral(check, tuple(witness), str(reason)))

    @property
    def coverage(self) -> float:
        total = self.checked + len(self.deferrals)
        return 1.0 if total == 0 else self.checked / total

    def extend(self, other):
        super().extend(other)
        self.deferrals.extend(getattr(other, "deferrals", []))
        return self

    def to_dict(self):
        out = super().to_dict()
        out["deferred"] = len(self.deferrals)
        out["coverage"] = round(self.coverage, 6)
        out["deferrals"] = [d.to_dict() for d in self.deferrals[:50]]
        return out

    def summary(self):
        s = super().summary()
        if self.deferrals:
            s += f" [{len(self.deferrals)} deferred at the window edge]"
        return s


class InconsistentTriple(ArithmeticError):
    """A relation instance has nonzero image under the generator map."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------------------
# targets built from windows
# ---------------------------------------------------------------------------

class TensorTarget:
    """B1 ⊗ B2 with (u1⊗u2)(v1⊗v2) = (-1)^{|u2||v1|} u1v1 ⊗ u2v2."""

    def __init__(self, B1, B2):
        self.B1, self.B2 = B1, B2
        self.space = tensor_space(B1.space, B2.space)
        self.split = {tensor_name(x, y): (x, y) for x in B1.space for y in B2.space}

    def pair(self, x: Element, y: Element) -> Element:
        out = {}
        for u, a in x.coeffs.items():
            for v, b in y.coeffs.items():
                out[tensor_name(u, v)] = a * b
        return Element(self.space, out)

    def mul(self, x: Element, y: Element) -> Element:
        S1, S2 = self.B1.space, self.B2.space
        out: dict = {}
        for t, a in x.coeffs.items():
            u1, u2 = self.split[t]
            for s, b in y.coeffs.items():
                v1, v2 = self.split[s]
                sign = koszul_sign(S2.degree(u2), S1.degree(v1))
                p = self.pair(self.B1.mul(S1.basis(u1), S1.basis(v1)),
                              self.B2.mul(S2.basis(u2), S2.basis(v2)))
                viadd(out, p.coeffs, a * b * sign)
        return Element(self.space, out)

    def d(self, x: Element) -> Element:
        S1, S2 = self.B1.space, self.B2.space
        out: dict = {}
        for t, a in x.coeffs.items():
            u1, u2 = self.split[t]
            viadd(out, self.pair(self.B1.d(S1.basis(u1)), S2.basis(u2)).coeffs, a)
            viadd(out, self.pair(S1.basis(u1), self.B2.d(S2.basis(u2))).coeffs,
                  a * koszul_sign(S1.degree(u1), 1))
        return Element(self.space, out)

    def one(self) -> Element:
        return self.pair(self.B1.one(), self.B2.one())


class OppositeTarget:
    """B^op: x ·op y = (-1)^{|x||y|} y x, same differential and unit."""

    def __init__(self, B):
        self.B = B
        self.space = B.space

    def mul(self, x: Element, y: Element) -> Element:
        S = self.space
        out: dict = {}
        for u, a in x.coeffs.items():
            for v, b in y.coeffs.items():
                e = self.B.mul(S.basis(v), S.basis(u))
                viadd(out, e.coeffs, a * b * koszul_sign(S.degree(u), S.degree(v)))
        return Element(S, out)

    def d(self, x):
        return self.B.d(x)

    def one(self):
        return self.B.one()


# ---------------------------------------------------------------------------
# property P
# ---------------------------------------------------------------------------

def canonical_triple(U: UETruncation) -> PTripleData:
    A = U.algebra
    f = GradedLinearMap(A.space, U.space, 0, {a: U.gen(M, a) for a in A.space})
    g = GradedLinearMap(A.space, U.space, A.p, {a: U.gen(H, a) for a in A.space})
    return PTripleData(U, f, g)


def _check(report, name, witness, thunk):
    try:
        report.add(name, witness, thunk())
    except OutOfWindow as e:
        report.defer(name, witness, e)


def verify_ptriple(A, T: PTripleData) -> WindowReport:
    """Clauses P1-P4 on all basis pairs of A."""
    B, f, g = T.target, T.f, T.g
    if f.source != A.space or g.source != A.space:
        raise StructureError("triple maps must be defined on the whole of A")
    if f.target != B.space or g.target != B.space:
        raise StructureError("triple maps must land in the target algebra")
    if f.degree != 0 or g.degree != A.p:
        raise StructureError(f"triple maps must have degrees 0 and {A.p}")
    p = A.p
    deg = A.space.degrees
    r = WindowReport()
    _check(r, "P1 unit", (A.unit,), lambda: f(A.one()) - B.one())
    for a in A.space:
        ea = A.b(a)
        _check(r, "P1 d", (a,), lambda: f(A.d(ea)) - B.d(f(ea)))
        _check(r, "P2 d", (a,), lambda: g(A.d(ea)) - B.d(g(ea)))
        for b in A.space:
            eb = A.b(b)
            s_hh = koszul_sign(deg[a] + p, deg[b] + p)
            s_hm = koszul_sign(deg[a] + p, deg[b])
            s_mm = koszul_sign(deg[a], deg[b])
            _check(r, "P1 product", (a, b),
                   lambda: f(A.mul(ea, eb)) - B.mul(f(ea), f(eb)))
            _check(r, "P2 bracket", (a, b),
                   lambda: g(A.br(ea, eb)) - B.mul(g(ea), g(eb)) + B.mul(g(eb), g(ea)) * s_hh)
            _check(r, "P3", (a, b),
                   lambda: f(A.br(ea, eb)) - B.mul(g(ea), f(eb)) + B.mul(f(eb), g(ea)) * s_hm)
            _check(r, "P4", (a, b),
                   lambda: g(A.mul(ea, eb)) - B.mul(f(ea), g(eb)) - B.mul(f(eb), g(ea)) * s_mm)
    return r


# ---------------------------------------------------------------------------
# induced map
# ---------------------------------------------------------------------------

@dataclass
class InducedMap:
    source: UETruncation
    target: object
    images: dict            # label -> Element of target (missing when deferred)
    report: WindowReport

    @property
    def complete(self) -> bool:
        return len(self.images) == self.source.dim

    def as_map(self) -> GradedLinearMap:
        if not self.complete:
            raise OutOfWindow("some basis images were deferred")
        return GradedLinearMap(self.source.space, self.target.space, 0, self.images)

    def __call__(self, x: Element) -> Element:
        out: dict = {}
        for u, c in x.coeffs.items():
            if u not in self.images:
                raise OutOfWindow(f"image of {u} was deferred")
            viadd(out, self.images[u].coeffs, c)
        return Element(self.target.space, out)


def evaluate(A, T: PTripleData, poly: dict, right_to_left: bool = False) -> Element:
    """Image of a free-algebra polynomial under M_a -> f(a), H_a -> g(a)."""
    B = T.target
    cache = {}

    def gen(s):
        if s not in cache:
            kind, a = s
            cache[s] = (T.f if kind == M else T.g)(A.b(a))
        return cache[s]

    out: dict = {}
    for w, c in poly.items():
        acc = B.one()
        for s in (reversed(w) if right_to_left else w):
            acc = B.mul(gen(s), acc) if right_to_left else B.mul(acc, gen(s))
        viadd(out, acc.coeffs, c)
    return Element(B.space, out)


def induced_map(A, T: PTripleData, U: UETruncation, check_multiplicative: bool = True,
                raise_on_relation: bool = True) -> InducedMap:
    """phi: U -> B with phi(M_a) = f(a), phi(H_a) = g(a).

    Checks, on the window: relation instances map to zero; both
    multiplicative extensions agree on the basis; phi d = d phi;
    phi M = f and phi H = g; and, if asked, phi(xy) = phi(x) phi(y).
    """
    B = T.target
    r = WindowReport()
    for rel in build_relations(A):
        if max(len(w) for w in rel.poly) > U.L:
            continue
        wit = (rel.clause,) + tuple(rel.pair)
        try:
            img = evaluate(A, T, rel.poly)
        except OutOfWindow as e:
            r.defer("relation", wit, e)
            continue
        r.add("relation", wit, img)
        if img and raise_on_relation:
            raise InconsistentTriple(
                f"relation ({rel.clause}) at {rel.pair} has nonzero image {img!r}", wit)

    images = {}
    for lab in U.labels:
        pre = U.preimages[lab]
        try:
            lr = evaluate(A, T, pre)
            rl = evaluate(A, T, pre, right_to_left=True)
        except OutOfWindow as e:
            r.defer("evaluation", (lab,), e)
            continue
        r.add("uniqueness", (lab,), lr - rl)
        images[lab] = lr
    phi = InducedMap(U, B, images, r)

    for lab in U.labels:
        try:
            r.add("differential", (lab,), phi(U.d(U.space.basis(lab))) - B.d(phi(U.space.basis(lab))))
        except OutOfWindow as e:
            r.defer("differential", (lab,), e)

    if U._coords is not None:
        for a in A.space:
            try:
                r.add("phi M = f", (a,), phi(U.gen(M, a)) - T.f.image(a))
                r.add("phi H = g", (a,), phi(U.gen(H, a)) - T.g.image(a))
            except OutOfWindow as e:
                r.defer("generators", (a,), e)

    if check_multiplicative:
        for u in U.labels:
            for v in U.labels:
                if not U.defined(u, v):
                    continue
                try:
                    lhs = phi(U.mul(U.space.basis(u), U.space.basis(v)))
                    rhs = B.mul(phi(U.space.basis(u)), phi(U.space.basis(v)))
                except OutOfWindow as e:
                    r.defer("multiplicative", (u, v), e)
                    continue
                r.add("multiplicative", (u, v), lhs - rhs)
    return phi


def verify_window(U: UETruncation) -> WindowReport:
    """Self-consistency of a window: d^2 = 0, every in-window relation
    instance and its differential evaluate to zero.  Uses only the stored
    tables, so it also applies to reloaded windows."""
    A = U.algebra
    T = canonical_triple(U)
    r = WindowReport()
    for lab in U.labels:
        e = U.space.basis(lab)
        r.add("d squared", (lab,), U.d(U.d(e)))
    for rel in build_relations(A):
        wit = (rel.clause,) + tuple(rel.pair)
        for name, poly in (("relation", rel.poly), ("d relation", poly_differential(A, rel.poly))):
            if not poly or max(len(w) for w in poly) > U.L:
                continue
            try:
                r.add(name, wit, evaluate(A, T, poly))
            except OutOfWindow as e:
                r.defer(name, wit, e)
    return r
