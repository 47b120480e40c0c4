import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pistar import catalog
from pistar.catalog import parse_element
from pistar.evaluator import (IDENTITY, NONCENTRAL, PROPER_CENTRAL, EvaluationError, classify,
                              evaluate, evaluate_unchecked, first_nonzero, is_central, is_identity)
from pistar.linalg import Vector
from pistar.starpoly import SignedVar, StarPolynomial, check_multilinear, poly


def sv(text):
    return SignedVar(int(text[1:-1]), text[-1])


def brute_status(p, a):
    """Reference trichotomy: multiply out every basis tuple with a.mul."""
    _, slots = check_multilinear(p)
    spaces = [a.sign_space(s.sign).rows for s in slots]
    nonzero = False
    for combo in itertools.product(*spaces):
        env = dict(zip(slots, combo))
        total = Vector.zero(a.dim)
        for mono, c in p.terms.items():
            prod = env[mono[0]]
            for v in mono[1:]:
                prod = a.mul(prod, env[v])
            total = total + prod * c
        if total.is_zero():
            continue
        nonzero = True
        if not a.center.member(total):
            return NONCENTRAL
    return PROPER_CENTRAL if nonzero else IDENTITY


def test_examples():
    a1, a2, a3, a4 = (catalog.indexed_algebra(i, 3) for i in (1, 2, 3, 4))
    assert classify(poly("[x1- x2-, x3-]"), a1).status == IDENTITY
    assert classify(poly("x1+"), a2).status == PROPER_CENTRAL
    assert classify(poly("[x1+,x2+]"), a1).status == NONCENTRAL
    assert classify(poly("[x1-,x2-,x1+]"), a3).status == PROPER_CENTRAL
    assert is_central(poly("[x1+,x2+]"), a4) and not is_identity(poly("[x1+,x2+]"), a4)
    assert is_identity(poly("[x1-,x2-][x3-,x4-]"), catalog.indexed_algebra(3, 4))
    assert is_identity(poly("x1-"), catalog.field_algebra())


def test_lemma_witness_values():
    a5 = catalog.indexed_algebra(5)
    vals = ["e11+e66", "e12+e56", "e22+e55", "e23+e45", "e33+e44", "e36+e14"]
    s = {SignedVar(i, "+"): parse_element(a5, v) for i, v in enumerate(vals, 1)}
    assert evaluate(poly("[x1+,x2+][x3+,x4+][x5+,x6+]"), a5, s) == parse_element(a5, "e16")
    zero = {k: Vector.zero(a5.dim) for k in s}
    assert evaluate(poly("[x1+,x2+][x3+,x4+][x5+,x6+]"), a5, zero).is_zero()


def test_sign_check():
    a5 = catalog.indexed_algebra(5)
    bad = {sv("x1+"): parse_element(a5, "e12")}
    with pytest.raises(EvaluationError):
        evaluate(poly("x1+"), a5, bad)
    assert evaluate_unchecked(poly("x1+"), a5, bad) == parse_element(a5, "e12")


def test_witness_is_reported_and_correct():
    a1 = catalog.indexed_algebra(1)
    v = classify(poly("[x1+,x2+]"), a1)
    assert v.witness is not None
    assert evaluate(poly("[x1+,x2+]"), a1, v.witness) == v.value
    assert not a1.center.member(v.value)


def test_first_nonzero():
    a5 = catalog.indexed_algebra(5)
    p = poly("x1+ x2+")
    cands = [a5.plus.rows, a5.plus.rows]
    hit = first_nonzero(p, a5, cands)
    assert hit is not None and not hit[1].is_zero()
    assert first_nonzero(poly("[x1-x2-,x3-]"), catalog.indexed_algebra(1),
                         [catalog.indexed_algebra(1).minus.rows] * 3) is None


def test_parallel_matches_serial():
    a7 = catalog.indexed_algebra(7)
    p = poly("[x1+,x2+][x3-,x4+]")
    one, three = classify(p, a7, workers=1), classify(p, a7, workers=3)
    # shards run to completion, so only the work counter may differ
    assert (one.status, one.witness, one.value) == (three.status, three.witness, three.value)


def random_poly(rng, n, pattern=None):
    slots = [SignedVar(i, pattern[i - 1] if pattern else rng.choice("+-")) for i in range(1, n + 1)]
    terms = {}
    for perm in itertools.permutations(slots):
        if rng.random() < 0.5:
            terms[perm] = rng.randint(-2, 2)
    return StarPolynomial(terms)


ALGS = [1, 2, 4, 5, 9, 10, 13]


@pytest.mark.parametrize("i", ALGS)
def test_against_brute_force(i):
    a = catalog.indexed_algebra(i, 3)
    rng = random.Random(i)
    for _ in range(12):
        p = random_poly(rng, rng.randint(1, 3))
        if p.is_zero():
            continue
        assert classify(p, a, substitution="basis").status == brute_status(p, a), p.render()


@pytest.mark.parametrize("text", ["[x1+,x2+]", "[x1-,x2-]", "{x1-,x2-}", "x1+ x2-", "[x1-x2-,x3-]"])
@pytest.mark.parametrize("i", [1, 2, 9, 10, 13])
def test_structured_against_brute_force(text, i):
    a = catalog.indexed_algebra(i)
    p = poly(text)
    assert classify(p, a).status == brute_status(p, a)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_rational_values_respect_verdict(seed):
    rng = random.Random(seed)
    a = catalog.indexed_algebra(9)
    p = random_poly(rng, rng.randint(1, 3))
    if p.is_zero():
        return
    verdict = classify(p, a)
    _, slots = check_multilinear(p)
    s = {}
    for v in slots:
        space = a.sign_space(v.sign).rows
        acc = Vector.zero(a.dim)
        for r in space:
            acc = acc + r * Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        s[v] = acc
    value = evaluate(p, a, s)
    if verdict.status == IDENTITY:
        assert value.is_zero()
    elif verdict.status == PROPER_CENTRAL:
        assert a.center.member(value)


def test_not_multilinear():
    with pytest.raises(EvaluationError):
        classify(poly("x1+ x1+"), catalog.indexed_algebra(1))
