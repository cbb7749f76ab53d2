from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from dgpoisson.core import Field
from dgpoisson.linalg import Echelon, rank, vadd, viadd, vscale

entries = st.integers(-3, 3)
rows = st.lists(st.lists(entries, min_size=4, max_size=4), min_size=0, max_size=6)


def dense_rank(mat, p=None):
    """Textbook Gaussian elimination, used as an oracle."""
    m = [[Fraction(x) if p is None else x % p for x in r] for r in mat]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                if p is None:
                    f = m[i][col] / m[rk][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
                else:
                    f = m[i][col] * pow(m[rk][col], -1, p)
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


def as_vec(r, F=None):
    return {j: (F(x) if F else Fraction(x)) for j, x in enumerate(r) if x}


@given(rows)
def test_rank_matches_dense_elimination(mat):
    assert rank([as_vec(r) for r in mat]) == dense_rank(mat)


@given(rows)
def test_rank_over_prime_field(mat):
    F = Field(3)
    vecs = [as_vec(r, F) for r in mat]
    vecs = [{k: v for k, v in x.items() if v} for x in vecs]
    assert rank(vecs, one=F.one) == dense_rank(mat, 3)


@given(rows, st.lists(entries, min_size=4, max_size=4))
def test_membership_and_syzygies(mat, probe):
    e = Echelon(lambda k: k, Fraction(1))
    for i, r in enumerate(mat):
        e.add(as_vec(r), {i: Fraction(1)})
        if e.last_syzygy is not None:
            # the companion records a relation among the inserted rows
            total = {}
            for j, c in e.last_syzygy.items():
                viadd(total, as_vec(mat[j]), c)
            assert total == {}
    inside = dense_rank(mat + [probe]) == dense_rank(mat)
    assert e.contains(as_vec(probe)) == inside


@given(rows)
def test_rref_rows_are_reduced(mat):
    e = Echelon(lambda k: k, Fraction(1))
    e.extend(as_vec(r) for r in mat)
    out = e.rref()
    for piv, (row, _) in out.items():
        assert row[piv] == 1
        assert all(c == piv or c not in out for c in row)
        assert max(row) == piv


def test_vector_helpers():
    u = {"a": 1, "b": 2}
    assert vadd(u, {"b": -2, "c": 1}) == {"a": 1, "c": 1}
    assert vscale(u, 0) == {}
    assert vscale(u, 3) == {"a": 3, "b": 6}
    viadd(u, u, -1)
    assert u == {}
