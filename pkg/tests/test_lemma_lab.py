import pytest

from pistar import catalog
from pistar.catalog import parse_element
from pistar.lemma_lab import (CANONICAL, CANONICAL_SECOND, PATTERNS, LemmaError, run_canonical,
                              run_descriptor, run_lemma, synthetic_instance)

EXPECTED = {5: (14, 1), 6: (14, -1), 7: (22, 1), 8: (22, -1), 9: (8, None), 10: (8, None),
            11: (8, None), 12: (8, None), 13: (14, None), 14: (14, None)}


@pytest.mark.parametrize("entry", CANONICAL, ids=lambda e: f"{e[0]}-A{e[1]}")
def test_canonical(entry):
    r = run_canonical(entry)
    dim, alpha = EXPECTED[entry[1]]
    assert r.verified and r.branch == "dependent"
    assert r.target == f"A{entry[1]}" and r.quotient_dim == dim
    if alpha is not None:
        assert r.alpha == alpha


@pytest.mark.parametrize("entry", CANONICAL_SECOND, ids=lambda e: f"case2-A{e[1]}")
def test_second_case(entry):
    r = run_canonical(entry)
    assert r.verified and r.target == f"A{entry[1]}"


@pytest.mark.parametrize("pattern", sorted(PATTERNS))
@pytest.mark.parametrize("sign", [1, -1])
def test_independent_branch(pattern, sign):
    r = run_lemma(*synthetic_instance(pattern), independent_sign=sign)
    assert r.branch == "independent" and r.verified
    firsts = {e[0]: e[1] for e in reversed(CANONICAL)}
    base = firsts[pattern]
    assert r.target == f"A{base if sign == 1 else base + 1}"


def test_iso_maps_center_to_center():
    r = run_canonical(CANONICAL[0])
    q, a5 = r.quotient, catalog.indexed_algebra(5)
    images = [sum((r.iso[i] * c for i, c in v.entries.items()), start=a5.alg.basis()[0] * 0)
              for v in q.center.rows]
    assert all(a5.center.member(img) for img in images)


def test_non_orthogonal_idempotents():
    a7 = catalog.indexed_algebra(7)
    es = [parse_element(a7, t) for t in ("e22+e77", "e22+e77", "e44+e55")]
    js = [parse_element(a7, t) for t in ("e12+e78", "e23+e67", "e34+e56", "e48+e15")]
    with pytest.raises(LemmaError):
        run_lemma("outer3", a7, es, js)


def test_arity_and_missing_e2_minus():
    a9 = catalog.indexed_algebra(9)
    es = [parse_element(a9, t) for t in ("e11+e44", "e22+e33")]
    js = [parse_element(a9, t) for t in ("e12", "e24")]
    with pytest.raises(LemmaError):
        run_lemma("innerF_FF", a9, es, js)
    with pytest.raises(LemmaError):
        run_lemma("innerF_FF", a9, es, js[:1], parse_element(a9, "e22-e33"))
    with pytest.raises(LemmaError):
        run_lemma("nope", a9, es, js)


def test_descriptor():
    desc = {"pattern": "innerF_FF", "algebra": "A9", "idempotents": ["e11+e44", "e22+e33"],
            "js": ["e12", "e24"], "e2_minus": "e22-e33"}
    r = run_descriptor(desc)
    assert r.verified and r.quotient_dim == 8 and r.target == "A9"
    with pytest.raises(LemmaError):
        run_descriptor({"pattern": "inner3"})
