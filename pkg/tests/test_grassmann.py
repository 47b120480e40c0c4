import itertools

import pytest

from pistar import catalog
from pistar.algebra import check_star_isomorphism
from pistar.grassmann import (GrassmannTruncation, grassmann_algebra, grassmann_envelope,
                              merge_sign, regular_substitution_set)
from pistar.linalg import Vector


def test_defining_relations():
    g = GrassmannTruncation(2)
    e1, e2, e12 = g.generator(1), g.generator(2), g.index[(1, 2)]
    assert g.product(e1, e2) == (1, e12)
    assert g.product(e2, e1) == (-1, e12)
    assert g.product(e1, e1) is None


def test_k_zero_is_the_field():
    e0 = grassmann_algebra(0)
    assert e0.dim == 1 and e0.superinv.images == [{0: 1}]


def test_sharp_on_e1e2():
    e = grassmann_algebra(2)
    i = e.truncation.index[(1, 2)]
    assert e.superinv.images[i] == {i: 1}
    assert e.superinv.images[e.truncation.generator(1)] == {e.truncation.generator(1): -1}


@pytest.mark.parametrize("k", [3, 4])
def test_sign_coherence(k):
    g = GrassmannTruncation(k)
    for s, t in itertools.combinations(g.basis, 2):
        if set(s) & set(t):
            continue
        assert merge_sign(s, t) == (-1) ** (len(s) * len(t)) * merge_sign(t, s)


def test_trivially_graded_envelope_at_k0_is_the_base():
    a1 = catalog.indexed_algebra(1)
    from pistar.algebra import SuperStarAlgebra
    b = SuperStarAlgebra(a1.alg, [0] * a1.dim, a1.inv, name="A1")
    env = grassmann_envelope(b, 0)
    assert env.dim == a1.dim
    assert check_star_isomorphism(a1, env, [Vector.unit(env.dim, i) for i in range(a1.dim)]).ok


@pytest.mark.parametrize("k", [1, 2, 3])
def test_envelopes_match_direct_models(k):
    a3, d3 = catalog.indexed_algebra(3, k), catalog.m11_over_grassmann(k)
    assert check_star_isomorphism(a3, d3, catalog.a3_canonical_map(k, a3, d3)).ok
    a4, d4 = catalog.indexed_algebra(4, k), catalog.grassmann_exchange(k)
    assert check_star_isomorphism(a4, d4, catalog.a4_canonical_map(k, a4, d4)).ok


def test_envelope_dimension_at_k1():
    assert catalog.indexed_algebra(3, 1).dim == 4


def test_regular_candidates_use_one_generator_per_slot():
    a3 = catalog.indexed_algebra(3, 2)
    info = a3.envelope
    g = info.grassmann
    slots = regular_substitution_set(a3, ["-", "-"])
    for slot, gen in zip(slots, (1, 2)):
        used = set()
        for v in slot:
            for idx in v.entries:
                s = g.basis[info.pairs[idx][0]]
                used.update(s)
                assert a3.minus.member(v)
        assert used <= {gen}


def test_regular_candidates_a4_single_plus_slot():
    a4 = catalog.indexed_algebra(4, 2)
    (cands,) = regular_substitution_set(a4, ["+"])
    assert cands and all(a4.plus.member(v) and a4.star(v) == v for v in cands)
    g = a4.envelope.grassmann
    gens = {s for v in cands for idx in v.entries for s in g.basis[a4.envelope.pairs[idx][0]]}
    assert gens == {1}


def test_trivially_graded_candidates_are_plain_basis():
    from pistar.algebra import SuperStarAlgebra
    a1 = catalog.indexed_algebra(1)
    env = grassmann_envelope(SuperStarAlgebra(a1.alg, [0] * 4, a1.inv), 2)
    (plus,) = regular_substitution_set(env, ["+"])
    assert len(plus) == 3


def test_too_few_generators():
    with pytest.raises(ValueError):
        regular_substitution_set(catalog.indexed_algebra(3, 2), ["+", "+", "+"])
