"""Independent brute-force axiom checker used as an oracle in the tests.

Works on plain nested dicts of structure constants rather than on the
package's Element/BilinearOp classes, so that a bug in one is unlikely to
be mirrored in the other.
"""

from __future__ import annotations

from itertools import product

from dgpoisson.core import BilinearOp, Element, GradedLinearMap
from dgpoisson.structures import DGPoissonModuleData


def _const(op):
    """BilinearOp -> {(x, y): {z: c}}"""
    return {k: dict(v.coeffs) for k, v in op.table.items()}


def _lin(m):
    return {k: dict(v.coeffs) for k, v in m.table.items()}


def _add(acc, vec, c):
    for z, v in vec.items():
        acc[z] = acc.get(z, 0) + c * v
        if not acc[z]:
            del acc[z]


def _bil(table, u, v):
    out = {}
    for x, a in u.items():
        for y, b in v.items():
            _add(out, table.get((x, y), {}), a * b)
    return out


def _app(table, u):
    out = {}
    for x, a in u.items():
        _add(out, table.get(x, {}), a)
    return out


def _comb(*terms):
    out = {}
    for c, vec in terms:
        _add(out, vec, c)
    return out


def sgn(n):
    return -1 if n % 2 else 1


def poisson_ok(space, unit, mul, br, d, p, commutative=True) -> bool:
    """True iff (mul, br, d) satisfy every DG Poisson axiom."""
    deg = space.degrees
    S = list(space)
    e = {x: {x: 1} for x in S}
    one = {unit: 1}
    for x in S:
        if _app(d, _app(d, e[x])):
            return False
        if _bil(mul, one, e[x]) != e[x] or _bil(mul, e[x], one) != e[x]:
            return False
    for x, y in product(S, S):
        m = _bil(mul, e[x], e[y])
        if commutative and _comb((1, m), (-sgn(deg[x] * deg[y]), _bil(mul, e[y], e[x]))):
            return False
        if _comb((1, _app(d, m)), (-1, _bil(mul, _app(d, e[x]), e[y])),
                 (-sgn(deg[x]), _bil(mul, e[x], _app(d, e[y])))):
            return False
        b = _bil(br, e[x], e[y])
        if _comb((1, b), (sgn((deg[x] + p) * (deg[y] + p)), _bil(br, e[y], e[x]))):
            return False
        if _comb((1, _app(d, b)), (-1, _bil(br, _app(d, e[x]), e[y])),
                 (-sgn(deg[x] + p), _bil(br, e[x], _app(d, e[y])))):
            return False
    for x, y, z in product(S, S, S):
        a, b, c = e[x], e[y], e[z]
        if _comb((1, _bil(mul, _bil(mul, a, b), c)), (-1, _bil(mul, a, _bil(mul, b, c)))):
            return False
        # Jacobi as "bracket with a is a derivation of the bracket"
        if _comb((1, _bil(br, a, _bil(br, b, c))), (-1, _bil(br, _bil(br, a, b), c)),
                 (-sgn((deg[x] + p) * (deg[y] + p)), _bil(br, b, _bil(br, a, c)))):
            return False
        if _comb((1, _bil(br, a, _bil(mul, b, c))), (-1, _bil(mul, _bil(br, a, b), c)),
                 (-sgn((deg[x] + p) * deg[y]), _bil(mul, b, _bil(br, a, c)))):
            return False
    return True


def poisson_ok_data(A) -> bool:
    return poisson_ok(A.space, A.unit, _const(A.product), _const(A.bracket),
                      _lin(A.differential), A.p, A.commutative)


def left_module_ok(Mod) -> bool:
    A = Mod.algebra
    p = A.p
    da = A.space.degrees
    mul, br, dA = _const(A.product), _const(A.bracket), _lin(A.differential)
    act, lact, d = _const(Mod.action), _const(Mod.lie_action), _lin(Mod.differential)
    ea = {x: {x: 1} for x in A.space}
    em = {m: {m: 1} for m in Mod.space}
    for m in Mod.space:
        if _app(d, _app(d, em[m])) or _bil(act, {A.unit: 1}, em[m]) != em[m]:
            return False
    for x, m in product(A.space, Mod.space):
        a, v = ea[x], em[m]
        if _comb((1, _app(d, _bil(act, a, v))), (-1, _bil(act, _app(dA, a), v)),
                 (-sgn(da[x]), _bil(act, a, _app(d, v)))):
            return False
        if _comb((1, _app(d, _bil(lact, a, v))), (-1, _bil(lact, _app(dA, a), v)),
                 (-sgn(da[x] + p), _bil(lact, a, _app(d, v)))):
            return False
    for x, y, m in product(A.space, A.space, Mod.space):
        a, b, v = ea[x], ea[y], em[m]
        if _comb((1, _bil(act, _bil(mul, a, b), v)), (-1, _bil(act, a, _bil(act, b, v)))):
            return False
        if _comb((1, _bil(lact, _bil(br, a, b), v)), (-1, _bil(lact, a, _bil(lact, b, v))),
                 (sgn((da[x] + p) * (da[y] + p)), _bil(lact, b, _bil(lact, a, v)))):
            return False
        if _comb((1, _bil(lact, a, _bil(act, b, v))), (-1, _bil(act, _bil(br, a, b), v)),
                 (-sgn((da[x] + p) * da[y]), _bil(act, b, _bil(lact, a, v)))):
            return False
        if _comb((1, _bil(lact, _bil(mul, a, b), v)), (-1, _bil(act, a, _bil(lact, b, v))),
                 (-sgn(da[x] * da[y]), _bil(act, b, _bil(lact, a, v)))):
            return False
    return True


# ---------------------------------------------------------------------------
# single-sign fault injection
# ---------------------------------------------------------------------------

def sign_flips(op):
    """Every copy of ``op`` with one structure constant negated: yields
    (key, target symbol, flipped op)."""
    for key, vec in op.table.items():
        for z, c in vec.coeffs.items():
            new = dict(op.table)
            new[key] = Element(vec.space, {**vec.coeffs, z: -c})
            if isinstance(op, BilinearOp):
                yield key, z, BilinearOp(op.degree, new, op.left, op.right, op.target)
            else:
                yield key, z, GradedLinearMap(op.source, op.target, op.degree, new)


def poisson_flips(A, limit=None):
    """Faulty copies of a DG Poisson algebra, one negated constant each."""
    out = []
    for name in ("product", "bracket", "differential"):
        for key, z, op in sign_flips(getattr(A, name)):
            out.append((name, key, z, A.replace(**{name: op})))
    return out if limit is None else _spread(out, limit)


def module_flips(Mod, limit=None):
    out = []
    for name in ("action", "lie_action", "differential"):
        for key, z, op in sign_flips(getattr(Mod, name)):
            parts = dict(action=Mod.action, lie_action=Mod.lie_action,
                         differential=Mod.differential)
            parts[name] = op
            out.append((name, key, z, DGPoissonModuleData(Mod.algebra, Mod.space,
                                                          right=Mod.right, **parts)))
    return out if limit is None else _spread(out, limit)


def _spread(items, limit):
    """Deterministic evenly spaced sample that keeps every table represented."""
    if len(items) <= limit:
        return items
    step = len(items) / limit
    return [items[int(i * step)] for i in range(limit)]
