"""Brute-force reference: the free algebra modulo the ideal, by linear algebra.

V_L is spanned by all words of length <= L in the 2n generators M_a, H_a.
I_L is spanned by u r v for every relation instance r and words u, v with
every term of u r v of length <= L.  Columns are ordered longest first, so
the words left over after elimination form a basis adapted to the length
filtration.  The window is called stable when I_{L+1} meets V_L in I_L.
"""

from __future__ import annotations

import os
from itertools import product as iproduct

from ..core import Element, GradedLinearMap, GradedSpace
from ..linalg import Echelon
from .relations import build_relations
from .truncation import OutOfWindow, SizeGuardError, UETruncation, all_generators
from .words import poly_differential, word_degree, word_key, word_str

ENV_LIMIT = "DGPOISSON_ORACLE_MAX_WORDS"
DEFAULT_LIMIT = 60_000


def _words(gens, n):
    out = [()]
    for k in range(1, n + 1):
        out.extend(iproduct(gens, repeat=k))
    return out


def _count_words(g, n):
    return sum(g ** k for k in range(n + 1))


def _ideal_rows(rels, gens, L, lo=0):
    """u r v with |u| + |v| in [lo, L - len(r)]."""
    for r in rels:
        rl = max(len(w) for w in r.poly)
        for k in range(lo, L - rl + 1):
            for i in range(k + 1):
                for u in iproduct(gens, repeat=i):
                    for v in iproduct(gens, repeat=k - i):
                        yield {u + w + v: c for w, c in r.poly.items()}


def ideal_quotient_oracle(A, L: int, check_stability: bool = True,
                          max_words: int | None = None, slack: int = 0) -> UETruncation:
    """V_L modulo I_{L+slack} meet V_L.

    ``slack=0`` is the plain quotient V_L / I_L.  Positive slack lets ideal
    elements of length <= L be detected through longer intermediate words;
    the stability verdict then compares I_{L+slack+1} and I_{L+slack} on V_L.
    """
    gens = all_generators(A)
    Lx = L + slack
    top = Lx + 1 if check_stability else Lx
    limit = max_words or int(os.environ.get(ENV_LIMIT, DEFAULT_LIMIT))
    if _count_words(len(gens), top) > limit:
        raise SizeGuardError(
            f"{_count_words(len(gens), top)} words at length {top} exceed the guard {limit} "
            f"(set {ENV_LIMIT} to raise it)")

    key = lambda w: word_key(A, w)
    F = A.field
    rels = build_relations(A)
    ech = Echelon(key, F.one)
    ech.extend(_ideal_rows(rels, gens, Lx))
    rows_L = {w: r for w, r in ech.rows.items() if len(w) <= L}
    rank_L = len(rows_L)

    stable = None
    if check_stability:
        # rows already present at length L reduce to zero, so only add the rest
        ech.extend(_ideal_rows(rels, gens, Lx + 1, lo=Lx - 1))
        stable = sum(1 for w in ech.rows if len(w) <= L) == rank_L
        ech.rows = rows_L

    reps = [w for w in _words(gens, L) if w not in rows_L]
    labels = [word_str(w) for w in reps]
    space = GradedSpace([(word_str(w), word_degree(A, w)) for w in reps], F)

    def express(poly, what="element"):
        if any(len(w) > L for w in poly):
            raise OutOfWindow(f"{what} has terms longer than L={L}")
        rem, _ = ech.reduce(poly)
        return Element(space, {word_str(w): c for w, c in rem.items()})

    product = {}
    for u, lu in zip(reps, labels):
        for v, lv in zip(reps, labels):
            if len(u) + len(v) <= L:
                product[(lu, lv)] = express({u + v: F.one})
    dtable = {lu: express(poly_differential(A, {u: F.one})) for u, lu in zip(reps, labels)}

    return UETruncation(
        algebra=A, L=L, provenance="oracle", space=space,
        levels={lu: len(u) for u, lu in zip(reps, labels)},
        preimages={lu: {u: F.one} for u, lu in zip(reps, labels)},
        product=product, differential=GradedLinearMap(space, space, 1, dtable),
        stable=stable, _coords=express,
        notes=[f"ideal rank at length {L}: {rank_L}", f"slack {slack}"]
    ).fill_generators()
