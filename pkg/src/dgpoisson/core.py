"""Exact scalars, graded spaces with named bases, elements and graded maps.

Everything here is immutable after construction.  Basis names are strings;
the declaration order of a basis is the total order used for all
downstream tie-breaking (echelon pivots, word orders, report sorting).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class StructureError(ValueError):
    """A structure table is incomplete or inconsistent with its grading."""


class DegreeMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class Fp:
    """Element of the prime field Z/p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing prime fields of different characteristic")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._lift(other), self.p) / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class Field:
    """The rationals (``p is None``) or a prime field of odd characteristic."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p == 2:
                raise ValueError("characteristic 2 is not supported")
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not a prime")
        self.p = p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, field element or exact string."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, Fp):
                raise TypeError("cannot coerce a prime-field element into Q")
            if isinstance(x, float):
                raise TypeError("floating point scalars are not allowed")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("wrong characteristic")
            return x
        if isinstance(x, float):
            raise TypeError("floating point scalars are not allowed")
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    def parse(self, s: str):
        s = s.strip()
        if self.p is None:
            if "." in s or "e" in s.lower():
                raise ValueError(f"not an exact rational: {s!r}")
            return Fraction(s)
        if "mod" in s:
            v, p = s.split("mod")
            if int(p) != self.p:
                raise ValueError(f"scalar {s!r} is not in GF({self.p})")
            return Fp(int(v), self.p)
        return self(Fraction(s))

    def format(self, c) -> str:
        if self.p is None:
            c = Fraction(c)
            return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        return f"{self(c).v} mod {self.p}"

    def spec(self) -> str:
        return "Q" if self.p is None else f"Fp {self.p}"

    @classmethod
    def from_spec(cls, s: str) -> "Field":
        s = s.strip()
        if s == "Q":
            return cls()
        parts = s.split()
        if len(parts) == 2 and parts[0] == "Fp":
            return cls(int(parts[1]))
        raise ValueError(f"unknown field spec {s!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def koszul_sign(d1: int, d2: int) -> int:
    """(-1)^(d1*d2)."""
    return -1 if (d1 * d2) % 2 else 1


# ---------------------------------------------------------------------------
# Graded spaces and elements
# ---------------------------------------------------------------------------

class GradedSpace:
    """Finite graded vector space with an ordered basis of named symbols."""

    def __init__(self, basis: Iterable[tuple[str, int]], field: Field = QQ):
        self.names: tuple[str, ...] = ()
        self.degrees: dict[str, int] = {}
        names = []
        for name, deg in basis:
            if name in self.degrees:
                raise ValueError(f"duplicate basis symbol {name!r}")
            self.degrees[name] = int(deg)
            names.append(name)
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.field = field

    @property
    def dim(self) -> int:
        return len(self.names)

    def degree(self, name: str) -> int:
        return self.degrees[name]

    def __contains__(self, name):
        return name in self.degrees

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, GradedSpace) and self.names == other.names
                and self.degrees == other.degrees and self.field == other.field)

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        body = ", ".join(f"{n}:{self.degrees[n]}" for n in self.names)
        return f"GradedSpace([{body}])"

    def basis(self, name: str) -> "Element":
        return Element(self, {name: self.field.one})

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, coeffs: Mapping[str, object]) -> "Element":
        return Element(self, {k: self.field(v) for k, v in coeffs.items()})

    def degree_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for n in self.names:
            out[self.degrees[n]] = out.get(self.degrees[n], 0) + 1
        return dict(sorted(out.items()))


class Element:
    """Finitely supported linear combination of basis symbols of one space."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: GradedSpace, coeffs: Mapping[str, object]):
        self.space = space
        clean = {}
        for k, v in coeffs.items():
            if k not in space.degrees:
                raise KeyError(f"{k!r} is not a basis symbol")
            if v:
                clean[k] = v
        self.coeffs = clean

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Element(self.space, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.space, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "Element":
        c = self.space.field(c)
        return Element(self.space, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, name):
        return self.coeffs.get(name, self.space.field.zero)

    def __iter__(self):
        """Iterate (name, coeff) in basis order."""
        idx = self.space.index
        return iter(sorted(self.coeffs.items(), key=lambda kv: idx[kv[0]]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {self.space.degrees[k] for k in self.coeffs}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds <= {degree}

    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        f = self.space.field
        return " + ".join(f"({f.format(v)})*{k}" for k, v in self)


def lincomb(space: GradedSpace, terms: Iterable[tuple[object, Element]]) -> Element:
    out: dict[str, object] = {}
    for c, e in terms:
        for k, v in e.coeffs.items():
            out[k] = out.get(k, 0) + c * v
    return Element(space, out)


# ---------------------------------------------------------------------------
# Graded maps
# ---------------------------------------------------------------------------

class GradedLinearMap:
    """Linear map of fixed degree given by the images of basis symbols.

    Missing table entries mean zero.
    """

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 table: Mapping[str, Element] | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self.table: dict[str, Element] = {}
        for k, v in (table or {}).items():
            if k not in source:
                raise StructureError(f"{k!r} is not in the source basis")
            if v.space is not target and v.space != target:
                raise StructureError(f"image of {k!r} lives in the wrong space")
            want = source.degrees[k] + degree
            if not v.is_homogeneous(want):
                raise StructureError(
                    f"image of {k!r} is not homogeneous of degree {want}: {v!r}")
            if v:
                self.table[k] = Element(target, v.coeffs)

    def image(self, name: str) -> Element:
        return self.table.get(name, self.target.zero())

    def __call__(self, x: Element) -> Element:
        out: dict[str, object] = {}
        for k, c in x.coeffs.items():
            img = self.table.get(k)
            if img is None:
                continue
            for t, v in img.coeffs.items():
                out[t] = out.get(t, 0) + c * v
        return Element(self.target, out)

    def compose(self, other: "GradedLinearMap") -> "GradedLinearMap":
        """self after other."""
        return GradedLinearMap(other.source, self.target, self.degree + other.degree,
                               {k: self(other.image(k)) for k in other.source})

    def scaled(self, c) -> "GradedLinearMap":
        return GradedLinearMap(self.source, self.target, self.degree,
                               {k: v * c for k, v in self.table.items()})

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        return (isinstance(other, GradedLinearMap) and self.degree == other.degree
                and self.table == other.table)

    def __repr__(self):
        return f"GradedLinearMap(deg={self.degree}, {self.table})"

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {n: space.basis(n) for n in space})


class BilinearOp:
    """Bilinear map left x right -> target of fixed degree; missing entries are zero.

    ``left`` and ``target`` default to the right space, which covers
    products and brackets on one algebra; module actions use all three.
    """

    def __init__(self, degree: int, table: Mapping[tuple[str, str], Element] | None,
                 left: GradedSpace, right: GradedSpace | None = None,
                 target: GradedSpace | None = None):
        self.degree = degree
        self.left = left
        self.right = right if right is not None else left
        self.target = target if target is not None else self.right
        self.table: dict[tuple[str, str], Element] = {}
        for (x, y), v in (table or {}).items():
            if x not in self.left or y not in self.right:
                raise StructureError(f"table entry ({x!r}, {y!r}) names unknown symbols")
            want = self.left.degrees[x] + self.right.degrees[y] + degree
            if not v.is_homogeneous(want):
                raise StructureError(
                    f"entry ({x}, {y}) is not homogeneous of degree {want}: {v!r}")
            if v:
                self.table[(x, y)] = Element(self.target, v.coeffs)

    def entry(self, x: str, y: str) -> Element:
        if x not in self.left or y not in self.right:
            raise StructureError(f"({x!r}, {y!r}) is not in the table's domain")
        return self.table.get((x, y), self.target.zero())

    def __call__(self, a: Element, b: Element) -> Element:
        return apply_bilinear(self, a, b)

    def scaled(self, c) -> "BilinearOp":
        return BilinearOp(self.degree, {k: v * c for k, v in self.table.items()},
                          self.left, self.right, self.target)

    def __eq__(self, other):
        return (isinstance(other, BilinearOp) and self.degree == other.degree
                and self.table == other.table)

    def __repr__(self):
        return f"BilinearOp(deg={self.degree}, {len(self.table)} entries)"


def apply_bilinear(op: BilinearOp, a: Element, b: Element) -> Element:
    out: dict[str, object] = {}
    for x, ca in a.coeffs.items():
        for y, cb in b.coeffs.items():
            if x not in op.left or y not in op.right:
                raise StructureError(f"({x!r}, {y!r}) is not in the table's domain")
            img = op.table.get((x, y))
            if img is None:
                continue
            c = ca * cb
            for t, v in img.coeffs.items():
                out[t] = out.get(t, 0) + c * v
    return Element(op.target, out)


TENSOR_SEP = "⊗"


def tensor_name(v: str, w: str) -> str:
    return f"{v}{TENSOR_SEP}{w}"


def tensor_space(V: GradedSpace, W: GradedSpace) -> GradedSpace:
    """Basis of pairs, lexicographic in the factor orders, degrees added.

    Pair names are joined with a tensor sign, so (U⊗V)⊗W and U⊗(V⊗W)
    produce identical names and orders.
    """
    if V.field != W.field:
        raise ValueError("tensor factors live over different fields")
    return GradedSpace([(tensor_name(v, w), V.degrees[v] + W.degrees[w])
                        for v in V for w in W], V.field)


def tensor_elements(T: GradedSpace, a: Element, b: Element) -> Element:
    """a ⊗ b inside T = tensor_space(a.space, b.space), no sign."""
    out = {}
    for x, ca in a.coeffs.items():
        for y, cb in b.coeffs.items():
            out[tensor_name(x, y)] = ca * cb
    return Element(T, out)
