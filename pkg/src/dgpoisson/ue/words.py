"""Generators M_a / H_a, words, and noncommutative polynomials.

A generator is a pair ``("M", a)`` or ``("H", a)`` with ``a`` a basis name
of the Poisson algebra; a word is a tuple of generators (the empty word is
the unit); an NC polynomial is a dict word -> coefficient with no zeros.
"""

from __future__ import annotations

from ..core import koszul_sign
from ..linalg import viadd

M, H = "M", "H"


def gen_degree(A, g) -> int:
    """|M_a| = |a|, |H_a| = |a| + p."""
    kind, a = g
    d = A.space.degree(a)
    return d if kind == M else d + A.p


def word_degree(A, w) -> int:
    return sum(gen_degree(A, g) for g in w)


def word_str(w) -> str:
    return " ".join(f"{k}({a})" for k, a in w) if w else "1"


def parse_word(s: str):
    s = s.strip()
    if s == "1":
        return ()
    out = []
    for tok in s.split(" "):
        kind, rest = tok[0], tok[1:]
        if kind not in (M, H) or not (rest.startswith("(") and rest.endswith(")")):
            raise ValueError(f"bad word token {tok!r}")
        out.append((kind, rest[1:-1]))
    return tuple(out)


def word_key(A, w):
    """Length-lexicographic order, M-symbols before H-symbols, then basis order."""
    idx = A.space.index
    return (len(w), tuple((0 if k == M else 1, idx[a]) for k, a in w))


def pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def padd(p: dict, q: dict, c=1) -> dict:
    out = dict(p)
    viadd(out, q, c)
    return out


def gen_poly(kind: str, e) -> dict:
    """Linear combination sum c_z X_z for an Element e."""
    return {((kind, z),): c for z, c in e.coeffs.items()}


def poly_differential(A, p: dict) -> dict:
    """Leibniz extension of d(M_a) = M_{d a}, d(H_a) = H_{d a}."""
    out: dict = {}
    for w, c in p.items():
        sign_deg = 0
        for i, (kind, a) in enumerate(w):
            da = A.d(A.b(a))
            s = koszul_sign(sign_deg, 1)
            for z, e in da.coeffs.items():
                nw = w[:i] + ((kind, z),) + w[i + 1:]
                v = out.get(nw, 0) + c * e * s
                if v:
                    out[nw] = v
                else:
                    out.pop(nw, None)
            sign_deg += gen_degree(A, (kind, a))
    return out


def poly_str(p: dict, field) -> str:
    if not p:
        return "0"
    return " + ".join(f"({field.format(c)})*{word_str(w)}" for w, c in p.items())
