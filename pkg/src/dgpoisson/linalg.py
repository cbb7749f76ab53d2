"""Sparse exact row echelon over a field.

Vectors are dicts ``column -> coeff`` with no stored zeros.  A column order
is given by a sort key; the pivot of a row is its *largest* column under
that key, so callers pick which columns get eliminated first.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable


def vadd(u: dict, v: dict, c=1) -> dict:
    """u + c*v as a new dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def viadd(u: dict, v: dict, c=1) -> None:
    """u += c*v in place."""
    for k, x in (list(v.items()) if v is u else v.items()):
        y = u.get(k, 0) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row is normalised to pivot coefficient 1.  An optional
    companion vector travels with every row through the same operations,
    which is how preimages/provenance of reduced rows are tracked.
    """

    def __init__(self, key: Callable[[Hashable], object], field_one=1):
        self.key = key
        self.rows: dict[Hashable, tuple[dict, dict | None]] = {}
        self.one = field_one

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return self.rows.keys()

    def _lead(self, v: dict):
        return max(v, key=self.key)

    def reduce(self, v: dict, companion: dict | None = None):
        """Reduce v fully modulo the stored rows.

        Returns (remainder, companion') where the remainder has no pivot
        columns in its support and companion' tracks the same subtraction.
        """
        v = dict(v)
        comp = dict(companion) if companion is not None else None
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v, comp
            k = max(hits, key=self.key)
            c = v[k]
            row, rcomp = self.rows[k]
            viadd(v, row, -c)
            if comp is not None and rcomp is not None:
                viadd(comp, rcomp, -c)

    def add(self, v: dict, companion: dict | None = None):
        """Insert v; returns the new pivot column or None if v was dependent.

        When v is dependent its reduced companion (a relation among the
        companions) is available as ``self.last_syzygy``.
        """
        r, comp = self.reduce(v, companion)
        if not r:
            self.last_syzygy = comp
            return None
        k = self._lead(r)
        inv = self.one / r[k]
        r = vscale(r, inv)
        if comp is not None:
            comp = vscale(comp, inv)
        self.rows[k] = (r, comp)
        self.last_syzygy = None
        return k

    def extend(self, vectors: Iterable[dict]) -> None:
        for v in vectors:
            if v:
                self.add(v)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def rref(self) -> dict:
        """Fully back-substituted rows: pivot -> (row, companion)."""
        out = {}
        for k in sorted(self.rows, key=self.key):
            row, comp = self.rows[k]
            # reduce non-pivot entries against lower pivots already reduced
            r = {k: row[k]}
            rest = {c: x for c, x in row.items() if c != k}
            cc = dict(comp) if comp is not None else None
            while True:
                hits = [c for c in rest if c in out]
                if not hits:
                    break
                c = max(hits, key=self.key)
                x = rest[c]
                lrow, lcomp = out[c]
                viadd(rest, lrow, -x)
                if cc is not None and lcomp is not None:
                    viadd(cc, lcomp, -x)
            r.update(rest)
            out[k] = (r, cc)
        return out


def rank(vectors: Iterable[dict], key=lambda k: k, one=1) -> int:
    e = Echelon(key, one)
    e.extend(vectors)
    return len(e)
