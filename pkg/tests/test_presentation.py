import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgpoisson import presentation as pres
from dgpoisson.core import BilinearOp, Field, GradedLinearMap, GradedSpace
from dgpoisson.fixtures import corpus, nilpotent_module, poisson_fixtures
from dgpoisson.structures import DGLieData
from dgpoisson.ue.truncation import ue_truncated
from dgpoisson.ue.universal import verify_window

DATA = resources.files("dgpoisson") / "data"


def roundtrip(obj):
    text = pres.to_json(obj)
    back = pres.from_json(text)
    assert pres.to_json(back) == text
    return back


@pytest.mark.parametrize("name", sorted(n for n in corpus() if not n.endswith(".mod")))
def test_corpus_roundtrip(name):
    roundtrip(corpus()[name])


def test_bare_module_roundtrip_against_its_algebra():
    Mod = corpus()["nilpotent.mod"]
    back = pres.load_module(json.loads(pres.to_json(Mod)), Mod.algebra)
    assert back.action == Mod.action and back.lie_action == Mod.lie_action


@pytest.mark.parametrize("name", sorted(corpus()))
def test_shipped_data_matches_fixtures(name):
    # the files under data/ are generated from the fixtures; catch drift
    assert (DATA / name).read_text(encoding="utf-8") == pres.to_json(corpus()[name]) + "\n"


def test_module_with_embedded_algebra():
    Mod = nilpotent_module()
    doc = pres.dump_module(Mod, embed_algebra=True)
    back = pres.load(json.loads(json.dumps(doc)))
    assert back.action == Mod.action and back.algebra.product == Mod.algebra.product
    with pytest.raises(pres.PresentationError, match="needs an algebra"):
        pres.load(pres.dump_module(Mod))


scalars_q = st.fractions(max_denominator=50).filter(bool)
fields = st.sampled_from([Field(), Field(5), Field(7)])


@given(fields, st.data())
def test_random_tables_roundtrip(F, data):
    S = GradedSpace([("a", 0), ("b", 1), ("c", -1)], F)
    names = list(S)
    table = {}
    for x in names:
        for y in names:
            if data.draw(st.booleans()):
                c = data.draw(scalars_q)
                if F.p and (c.denominator % F.p == 0 or c.numerator % F.p == 0):
                    continue
                z = data.draw(st.sampled_from(names))
                if S.degree(z) == S.degree(x) + S.degree(y):
                    v = F(c)
                    if v:
                        table[(x, y)] = S.element({z: v})
    L = DGLieData(S, BilinearOp(0, table, S), 0, GradedLinearMap.zero(S, S, 1))
    back = roundtrip(L)
    assert back.bracket == L.bracket
    assert back.space.field == F


@pytest.mark.parametrize("name", ["k[x]_sq_zero", "symplectic_pair", "odd_line"])
def test_reloaded_window_still_checks(name):
    U = ue_truncated(poisson_fixtures()[name], 3)
    V = roundtrip(U)
    assert V.dims() == U.dims() and V.L == U.L
    rep = verify_window(V)
    assert rep.passed and rep.checked > 0


def test_tampered_window_is_caught():
    U = ue_truncated(poisson_fixtures()["k[x]_sq_zero"], 2)
    doc = pres.dump_ue(U)
    # give M_x the image of H_x
    gens = doc["generators"]
    for row in gens:
        if row[0] == "M" and row[1] == "x":
            row[2] = {k: v for r in gens if r[0] == "H" and r[1] == "x" for k, v in r[2].items()}
    assert not verify_window(pres.load(doc)).passed


# ---------------------------------------------------------------------------
# error reporting
# ---------------------------------------------------------------------------

def test_json_syntax_error_has_location():
    with pytest.raises(pres.PresentationError, match=r"line 3, column"):
        pres.from_json('{\n "schema": "dgpoisson/1",\n "kind" "dg-lie"\n}', "x.lie")


@pytest.mark.parametrize("patch,match", [
    ({"schema": "other/2"}, "schema"),
    ({"kind": "monoid"}, "unknown kind"),
    ({"field": "GF(4)"}, "field"),
    ({"field": "Fp 2"}, "characteristic 2"),
    ({"field": "Fp 9"}, "not a prime"),
    ({"p": "zero"}, "p: expected an integer"),
    ({"basis": [["1", "zero"]]}, "basis"),
    ({"product": [["1", "y", {"1": "1"}]]}, r"product\[0\]: unknown symbol"),
    ({"product": [["1", "1", {"1": "1/0"}]]}, r"product\[0\]: bad scalar"),
    ({"product": [["1", "1", {"q": "1"}]]}, r"product\[0\]: unknown basis symbol"),
    ({"product": [["1", "1"]]}, r"product\[0\]: expected"),
    ({"product": [["1", "1", {"1": "1"}], ["1", "1", {"1": "1"}]]}, "duplicate"),
    ({"differential": [["x", {"x": "1"}]]}, "differential"),
])
def test_structural_errors_name_the_field(patch, match):
    doc = json.loads((DATA / "k[x]_sq_zero.alg").read_text())
    doc.update(patch)
    with pytest.raises(pres.PresentationError, match=match):
        pres.from_json(json.dumps(doc))


def test_missing_field_and_file():
    doc = json.loads((DATA / "lie2.lie").read_text())
    del doc["basis"]
    with pytest.raises(pres.PresentationError, match="basis: missing field"):
        pres.load(doc)
    with pytest.raises(pres.PresentationError, match="nowhere.alg"):
        pres.read("/nonexistent/nowhere.alg")


def test_rational_scalar_format():
    F = Field()
    assert F.format(F(Fraction(-3, 4))) == "-3/4" and F.format(F(2)) == "2"
