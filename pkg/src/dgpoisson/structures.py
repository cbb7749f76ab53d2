"""Structure-constant models of DG algebras, DG Lie and DG Poisson algebras and
their modules, exhaustive axiom verifiers, and cohomology.

Every verifier loops over basis tuples only; the identities are multilinear
so that is enough.  Failures come back as witnesses, never as bare booleans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .core import (
    BilinearOp,
    DegreeMismatchError,
    Element,
    GradedLinearMap,
    GradedSpace,
    StructureError,
    koszul_sign,
)
from .linalg import Echelon


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class Violation:
    axiom: str
    witness: tuple
    discrepancy: Element

    def to_dict(self):
        disc = self.discrepancy
        if isinstance(disc, Element):
            disc = {k: disc.space.field.format(v) for k, v in disc}
        return {"axiom": self.axiom, "witness": [str(w) for w in self.witness],
                "discrepancy": disc}


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def add(self, axiom: str, witness: tuple, discrepancy: Element) -> None:
        self.checked += 1
        if discrepancy:
            self.violations.append(Violation(axiom, tuple(witness), discrepancy))

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    def axioms_failed(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def sort(self, order: dict) -> "VerificationReport":
        def key(v):
            return (tuple(order.get(w, len(order)) if isinstance(w, str) else 0
                          for w in v.witness), v.axiom)
        self.violations.sort(key=key)
        return self

    def to_dict(self):
        return {
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "violations": [v.to_dict() for v in self.violations],
        }

    def summary(self) -> str:
        if self.passed:
            return f"PASS ({self.checked} identities checked)"
        lines = [f"FAIL ({len(self.violations)} of {self.checked} identities violated)"]
        for v in self.violations[:20]:
            lines.append(f"  {v.axiom} at {v.witness}: {v.discrepancy!r}")
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DGAlgebraData:
    space: GradedSpace
    product: BilinearOp
    unit: str
    differential: GradedLinearMap
    commutative: bool = True

    def __post_init__(self):
        if self.unit not in self.space:
            raise StructureError(f"unit {self.unit!r} is not a basis symbol")
        if self.space.degree(self.unit) != 0:
            raise StructureError("the unit must have degree 0")
        if self.product.degree != 0:
            raise StructureError("the product must have degree 0")
        if self.differential.degree != 1:
            raise StructureError("the differential must have degree 1")

    def mul(self, a: Element, b: Element) -> Element:
        return self.product(a, b)

    def d(self, a: Element) -> Element:
        return self.differential(a)

    def one(self) -> Element:
        return self.space.basis(self.unit)


@dataclass(frozen=True)
class DGLieData:
    space: GradedSpace
    bracket: BilinearOp
    bracket_degree: int
    differential: GradedLinearMap

    def __post_init__(self):
        if self.bracket.degree != self.bracket_degree:
            raise StructureError("bracket table degree differs from bracket_degree")
        if self.differential.degree != 1:
            raise StructureError("the differential must have degree 1")


@dataclass(frozen=True)
class DGPoissonData:
    algebra: DGAlgebraData
    lie: DGLieData

    def __post_init__(self):
        if self.algebra.space != self.lie.space:
            raise StructureError("algebra and Lie parts live on different spaces")
        if self.algebra.differential != self.lie.differential:
            raise StructureError("algebra and Lie parts have mismatched differentials")

    @classmethod
    def build(cls, space, product, bracket, p, differential=None, unit="1",
              commutative=True) -> "DGPoissonData":
        if differential is None:
            differential = GradedLinearMap.zero(space, space, 1)
        return cls(DGAlgebraData(space, product, unit, differential, commutative),
                   DGLieData(space, bracket, p, differential))

    # shorthand
    space = property(lambda self: self.algebra.space)
    product = property(lambda self: self.algebra.product)
    bracket = property(lambda self: self.lie.bracket)
    differential = property(lambda self: self.algebra.differential)
    unit = property(lambda self: self.algebra.unit)
    p = property(lambda self: self.lie.bracket_degree)
    commutative = property(lambda self: self.algebra.commutative)
    field = property(lambda self: self.algebra.space.field)

    def mul(self, a, b):
        return self.algebra.product(a, b)

    def br(self, a, b):
        return self.lie.bracket(a, b)

    def d(self, a):
        return self.algebra.differential(a)

    def one(self):
        return self.algebra.one()

    def b(self, name):
        return self.space.basis(name)

    def replace(self, *, product=None, bracket=None, differential=None,
                commutative=None) -> "DGPoissonData":
        return DGPoissonData.build(
            self.space,
            product if product is not None else self.product,
            bracket if bracket is not None else self.bracket,
            self.p,
            differential if differential is not None else self.differential,
            self.unit,
            self.commutative if commutative is None else commutative)


@dataclass(frozen=True)
class DGPoissonModuleData:
    """Left module by default; ``right=True`` stores m*a and {m,a} tables
    keyed (m, a) in ``action`` and ``lie_action``."""

    algebra: DGPoissonData
    space: GradedSpace
    action: BilinearOp
    lie_action: BilinearOp
    differential: GradedLinearMap
    right: bool = False

    def __post_init__(self):
        if self.action.degree != 0:
            raise StructureError("module action must have degree 0")
        if self.lie_action.degree != self.algebra.p:
            raise StructureError("Lie action degree must equal the bracket degree")

    def act(self, a: Element, m: Element) -> Element:
        return self.action(m, a) if self.right else self.action(a, m)

    def lact(self, a: Element, m: Element) -> Element:
        return self.lie_action(m, a) if self.right else self.lie_action(a, m)

    def d(self, m: Element) -> Element:
        return self.differential(m)


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def verify_dg_algebra(A: DGAlgebraData) -> VerificationReport:
    S = A.space
    r = VerificationReport()
    B = {n: S.basis(n) for n in S}
    one = A.one()
    deg = S.degrees
    for x in S:
        r.add("d_squared", (x,), A.d(A.d(B[x])))
        r.add("unit_left", (x,), A.mul(one, B[x]) - B[x])
        r.add("unit_right", (x,), A.mul(B[x], one) - B[x])
    for x, y in iproduct(S, S):
        xy = A.mul(B[x], B[y])
        lhs = A.d(xy)
        rhs = A.mul(A.d(B[x]), B[y]) + A.mul(B[x], A.d(B[y])) * koszul_sign(deg[x], 1)
        r.add("leibniz", (x, y), lhs - rhs)
        if A.commutative:
            r.add("graded_commutativity", (x, y),
                  xy - A.mul(B[y], B[x]) * koszul_sign(deg[x], deg[y]))
    for x, y, z in iproduct(S, S, S):
        r.add("associativity", (x, y, z),
              A.mul(A.mul(B[x], B[y]), B[z]) - A.mul(B[x], A.mul(B[y], B[z])))
    return r.sort(S.index)


def _shift(d, p):
    return d + p


def verify_dg_lie(L: DGLieData) -> VerificationReport:
    S = L.space
    p = L.bracket_degree
    r = VerificationReport()
    B = {n: S.basis(n) for n in S}
    br = L.bracket
    d = L.differential
    sh = {n: S.degrees[n] + p for n in S}

    def s(x, y):
        return koszul_sign(sh[x], sh[y])

    for x in S:
        r.add("d_squared", (x,), d(d(B[x])))
    for x, y in iproduct(S, S):
        r.add("antisymmetry", (x, y), br(B[x], B[y]) + br(B[y], B[x]) * s(x, y))
        r.add("bracket_differential", (x, y),
              d(br(B[x], B[y])) - br(d(B[x]), B[y])
              - br(B[x], d(B[y])) * koszul_sign(sh[x], 1))
    for x, y, z in iproduct(S, S, S):
        a, b, c = B[x], B[y], B[z]
        r.add("jacobi", (x, y, z),
              br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)) * s(x, y))
        r.add("jacobi_symmetric", (x, y, z),
              br(a, br(b, c)) * s(x, z) + br(b, br(c, a)) * s(y, x)
              + br(c, br(a, b)) * s(z, y))
    return r.sort(S.index)


def verify_dg_poisson(A: DGPoissonData, noncommutative: bool = False) -> VerificationReport:
    """Full DG Poisson check.  ``noncommutative=True`` waives graded
    commutativity of the product (the noncommutative variant)."""
    S = A.space
    r = VerificationReport()
    if not A.commutative and not noncommutative:
        r.add("commutative_flag", (), A.one())
    alg = A.algebra
    if noncommutative and alg.commutative:
        alg = DGAlgebraData(alg.space, alg.product, alg.unit, alg.differential, False)
    r.extend(verify_dg_algebra(alg))
    r.extend(verify_dg_lie(A.lie))
    B = {n: S.basis(n) for n in S}
    p = A.p
    deg = S.degrees
    for x, y, z in iproduct(S, S, S):
        a, b, c = B[x], B[y], B[z]
        r.add("poisson", (x, y, z),
              A.br(a, A.mul(b, c)) - A.mul(A.br(a, b), c)
              - A.mul(b, A.br(a, c)) * koszul_sign(deg[x] + p, deg[y]))
    return r.sort(S.index)


def verify_dg_poisson_module(M: DGPoissonModuleData,
                             check_algebra: bool = True) -> VerificationReport:
    A = M.algebra
    if check_algebra:
        pre = verify_dg_poisson(A, noncommutative=not A.commutative)
        if not pre.passed:
            raise StructureError("underlying algebra fails verification:\n" + pre.summary())
    r = VerificationReport()
    S, T = A.space, M.space
    p = A.p
    da, dm = A.space.degrees, T.degrees
    a_ = {n: S.basis(n) for n in S}
    m_ = {n: T.basis(n) for n in T}
    act, lact, d = M.act, M.lact, M.d
    one = A.one()

    for m in T:
        r.add("module_d_squared", (m,), d(d(m_[m])))
        r.add("module_unit", (m,), act(one, m_[m]) - m_[m])

    if not M.right:
        for x, m in iproduct(S, T):
            a, v = a_[x], m_[m]
            r.add("module_leibniz", (x, m),
                  d(act(a, v)) - act(A.d(a), v) - act(a, d(v)) * koszul_sign(da[x], 1))
            r.add("lie_module_differential", (x, m),
                  d(lact(a, v)) - lact(A.d(a), v)
                  - lact(a, d(v)) * koszul_sign(da[x] + p, 1))
        for x, y, m in iproduct(S, S, T):
            a, b, v = a_[x], a_[y], m_[m]
            r.add("module_associativity", (x, y, m),
                  act(A.mul(a, b), v) - act(a, act(b, v)))
            r.add("lie_module_jacobi", (x, y, m),
                  lact(A.br(a, b), v) - lact(a, lact(b, v))
                  + lact(b, lact(a, v)) * koszul_sign(da[x] + p, da[y] + p))
            r.add("poisson_module_iii", (x, y, m),
                  lact(a, act(b, v)) - act(A.br(a, b), v)
                  - act(b, lact(a, v)) * koszul_sign(da[x] + p, da[y]))
            r.add("poisson_module_iv", (x, y, m),
                  lact(A.mul(a, b), v) - act(a, lact(b, v))
                  - act(b, lact(a, v)) * koszul_sign(da[x], da[y]))
    else:
        # mirror images of the left axioms; act/lact still take (a, m)
        for x, m in iproduct(S, T):
            a, v = a_[x], m_[m]
            r.add("module_leibniz", (m, x),
                  d(act(a, v)) - act(a, d(v)) - act(A.d(a), v) * koszul_sign(dm[m], 1))
            r.add("lie_module_differential", (m, x),
                  d(lact(a, v)) - lact(a, d(v))
                  - lact(A.d(a), v) * koszul_sign(dm[m] + p, 1))
        for x, y, m in iproduct(S, S, T):
            a, b, v = a_[x], a_[y], m_[m]
            r.add("module_associativity", (m, x, y),
                  act(A.mul(a, b), v) - act(b, act(a, v)))
            r.add("lie_module_jacobi", (m, x, y),
                  lact(A.br(a, b), v) - lact(b, lact(a, v))
                  + lact(a, lact(b, v)) * koszul_sign(da[x] + p, da[y] + p))
            # {m*b, a} = m*{b,a} + (-1)^{(|a|+p)|b|} {m,a}*b
            r.add("poisson_module_iii", (m, y, x),
                  lact(a, act(b, v)) - act(A.br(b, a), v)
                  - act(b, lact(a, v)) * koszul_sign(da[x] + p, da[y]))
            # {m, ab} = {m,a}*b + (-1)^{|a||b|} {m,b}*a
            r.add("poisson_module_iv", (m, x, y),
                  lact(A.mul(a, b), v) - act(b, lact(a, v))
                  - act(a, lact(b, v)) * koszul_sign(da[x], da[y]))
    order = dict(T.index)
    order.update({k: v + len(T) for k, v in S.index.items()})
    return r.sort(order)


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------

def _vec(e: Element) -> dict:
    return dict(e.coeffs)


def _cocycle_classes(A: DGPoissonData):
    """Echelon of im d plus representative cocycles (pivot, row) in basis order."""
    S = A.space
    F = S.field
    key = S.index.__getitem__
    image = Echelon(key, F.one)
    kern_finder = Echelon(key, F.one)
    kernel = []
    for x in S:
        v = _vec(A.d(S.basis(x)))
        image.extend([v])
        if kern_finder.add(v, {x: F.one}) is None:
            kernel.append(kern_finder.last_syzygy)
    reps = Echelon(key, F.one)
    for z in kernel:
        rz, _ = image.reduce(z)
        if rz:
            reps.add(rz)
    rows = reps.rref()
    classes = []
    for piv in sorted(rows, key=key):
        rr, _ = image.reduce(rows[piv][0])
        classes.append((piv, rr))
    return image, classes


def cohomology(A: DGPoissonData) -> DGPoissonData:
    """Cohomology with the induced product and bracket and zero differential.

    Representatives are chosen by echelon reduction with pivots in basis
    order; classes are named ``[x]`` after the pivot symbol x.
    """
    S = A.space
    F = S.field
    image, classes = _cocycle_classes(A)
    H = GradedSpace([(f"[{piv}]", S.degree(piv)) for piv, _ in classes], F)
    rep_of = {f"[{piv}]": Element(S, row) for piv, row in classes}

    def to_class(e: Element) -> Element:
        rem, _ = image.reduce(_vec(e))
        out = {}
        for piv, row in classes:
            c = rem.get(piv)
            if c:
                out[f"[{piv}]"] = c
                for k, v in row.items():
                    rem[k] = rem.get(k, 0) - c * v
                    if not rem[k]:
                        del rem[k]
        if rem:
            raise AssertionError(f"induced operation not well defined: leftover {rem}")
        return Element(H, out)

    unit_cls = to_class(A.one())
    if unit_cls.is_zero():
        raise ValueError("the cohomology is the zero algebra (unit is exact)")
    if len(unit_cls.coeffs) != 1 or next(iter(unit_cls.coeffs.values())) != 1:
        raise AssertionError(f"unit class is not a basis vector: {unit_cls!r}")
    unit_name = next(iter(unit_cls.coeffs))

    prod, brk = {}, {}
    for u, v in iproduct(H, H):
        prod[(u, v)] = to_class(A.mul(rep_of[u], rep_of[v]))
        brk[(u, v)] = to_class(A.br(rep_of[u], rep_of[v]))
    return DGPoissonData.build(
        H, BilinearOp(0, prod, H), BilinearOp(A.p, brk, H), A.p,
        GradedLinearMap.zero(H, H, 1), unit_name, A.commutative)


def representative(A: DGPoissonData, cls: str) -> Element:
    """The chosen cocycle representing the class named ``[x]``."""
    _, classes = _cocycle_classes(A)
    for piv, row in classes:
        if f"[{piv}]" == cls:
            return Element(A.space, row)
    raise KeyError(cls)


def check_degree_match(p: int, q: int) -> None:
    if p != q:
        raise DegreeMismatchError(f"bracket degrees differ: {p} != {q}")
