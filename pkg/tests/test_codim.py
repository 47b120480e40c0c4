import random

import pytest

from pistar import catalog
from pistar.codim import (RowCapExceeded, codimensions, left_kernel,
                          pn_basis, sign_patterns)
from pistar.evaluator import IDENTITY, classify
from pistar.linalg import Vector
from pistar.starpoly import StarPolynomial


def test_pn_basis_sizes():
    assert [len(pn_basis(n)) for n in (1, 2, 3)] == [2, 8, 48]
    assert [str(v) for (v,) in pn_basis(1)] == ["x1+", "x1-"]
    assert len(sign_patterns(3)) == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_field(n):
    r = codimensions(catalog.field_algebra(), n)
    assert r.c_star == 1


def test_hand_oracles():
    r = codimensions(catalog.indexed_algebra(1), 1)
    assert (r.c_star, r.c_z, r.c_delta) == (2, 2, 0)
    r = codimensions(catalog.indexed_algebra(2), 1)
    assert (r.c_star, r.c_z, r.c_delta) == (2, 1, 1)
    r = codimensions(catalog.fplusf(), 1)
    assert (r.c_star, r.c_z, r.c_delta) == (2, 0, 2)


@pytest.mark.parametrize("i", [2, 5, 9])
def test_modes_and_workers_agree(i):
    a = catalog.indexed_algebra(i)
    base = codimensions(a, 3)
    for mode in ("modular", "modular-certified"):
        r = codimensions(a, 3, mode=mode)
        assert (r.c_star, r.c_z) == (base.c_star, base.c_z)
    par = codimensions(a, 3, workers=4)
    assert (par.c_star, par.c_z, par.c_delta) == (base.c_star, base.c_z, base.c_delta)
    assert codimensions(a, 3, mode="modular").mode == "modular-uncertified"


def test_row_cap(monkeypatch):
    a = catalog.indexed_algebra(1)
    with pytest.raises(RowCapExceeded):
        codimensions(a, 5)
    monkeypatch.setenv("PISTAR_ROW_CAP", "10")
    with pytest.raises(RowCapExceeded):
        codimensions(a, 3)
    assert codimensions(a, 3, cap=10 ** 6).c_star == 28


def test_bad_arguments():
    with pytest.raises(ValueError):
        codimensions(catalog.field_algebra(), 0)
    with pytest.raises(ValueError):
        codimensions(catalog.field_algebra(), 1, mode="fast")


@pytest.mark.parametrize("i", [1, 2, 5, 9, 13])
def test_left_kernel_consistency(i):
    a = catalog.indexed_algebra(i)
    rng = random.Random(100 + i)
    for n in (1, 2, 3):
        ker = left_kernel(a, n)
        basis = pn_basis(n)
        assert ker.dim == len(basis) - codimensions(a, n).c_star
        for _ in range(4):
            combo = Vector.zero(len(basis))
            for r in ker.rows:
                combo = combo + r * rng.randint(-2, 2)
            p = StarPolynomial({basis[k]: c for k, c in combo.entries.items()})
            block = {tuple(sorted(m)) for m in p.terms}
            if len(block) == 1:
                assert classify(p, a).status == IDENTITY
