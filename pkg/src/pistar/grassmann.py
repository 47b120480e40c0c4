"""Truncated Grassmann algebras and Grassmann envelopes of super *-algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    AlgebraError,
    Involution,
    StarAlgebra,
    StructureAlgebra,
    SuperStarAlgebra,
    check_superinvolution,
)
from .linalg import Subspace, Vector, add_scaled, nullspace


def subsets_in_order(k: int) -> list[tuple[int, ...]]:
    """All subsets of {1..k}, by size then lexicographically."""
    out: list[tuple[int, ...]] = []
    for size in range(k + 1):
        out.extend(itertools.combinations(range(1, k + 1), size))
    return out


def merge_sign(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    """Sign of e_S e_T = sign * e_{S u T}; 0 when S and T meet."""
    if set(s) & set(t):
        return 0
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def subset_label(s: tuple[int, ...]) -> str:
    return "1" if not s else "e{" + ",".join(map(str, s)) + "}"


class GrassmannTruncation:
    """E_k: the Grassmann algebra on k anticommuting generators."""

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("generator count must be non-negative")
        self.k = k
        self.basis = subsets_in_order(k)
        self.dim = len(self.basis)
        self.index = {s: i for i, s in enumerate(self.basis)}
        self.parity = [len(s) % 2 for s in self.basis]

    def product(self, i: int, j: int) -> tuple[int, int] | None:
        """e_i e_j as (sign, index), or None when it vanishes."""
        s, t = self.basis[i], self.basis[j]
        sign = merge_sign(s, t)
        if not sign:
            return None
        return sign, self.index[tuple(sorted(s + t))]

    def generator(self, i: int) -> int:
        return self.index[(i,)]

    def structure(self) -> dict:
        table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                p = self.product(i, j)
                if p is not None:
                    table[(i, j)] = {p[1]: p[0]}
        return table

    def sharp_images(self) -> list[dict]:
        """Images of e_S under the superinvolution extending e_i -> -e_i.

        Built from the axiom (ab)# = (-1)^{|a||b|} b# a# by peeling off the
        first generator, so no closed-form sign is assumed.
        """
        images: dict[tuple[int, ...], dict] = {(): {self.index[()]: 1}}
        for s in self.basis[1:]:
            head, tail = (s[0],), s[1:]
            a_img = {self.index[head]: -1}
            b_img = images[tail]
            sign = -1 if len(tail) % 2 else 1
            # e_S = e_head * e_tail exactly, since head precedes every tail index
            out: dict = {}
            for bi, bc in b_img.items():
                for ai, ac in a_img.items():
                    p = self.product(bi, ai)
                    if p is not None:
                        add_scaled(out, {p[1]: p[0]}, sign * bc * ac)
            images[s] = out
        return [images[s] for s in self.basis]


def grassmann_algebra(k: int) -> SuperStarAlgebra:
    g = GrassmannTruncation(k)
    alg = StructureAlgebra([subset_label(s) for s in g.basis], g.structure(),
                           unit={0: 1}, check=k <= 4)
    s = SuperStarAlgebra(alg, g.parity, Involution(g.sharp_images()), name=f"E({k})")
    s.truncation = g
    return s


@lru_cache(maxsize=None)
def _truncation(k: int) -> GrassmannTruncation:
    return GrassmannTruncation(k)


@dataclass
class EnvelopeInfo:
    """Bookkeeping attached to an envelope StarAlgebra."""

    base: SuperStarAlgebra
    k: int
    pairs: list[tuple[int, int]]          # envelope index -> (subset index, base index)
    lookup: dict[tuple[int, int], int]

    @property
    def grassmann(self) -> GrassmannTruncation:
        return _truncation(self.k)


def _super_center_pieces(b: SuperStarAlgebra) -> tuple[Subspace, Subspace]:
    """(C0, C1): c in B^(p) with c b = (-1)^{p|b|} b c for homogeneous basis b."""
    n = b.dim
    out = []
    for p in (0, 1):
        idx = [i for i in range(n) if b.parity[i] == p]
        eqs: dict = {}
        for col, k in enumerate(idx):
            for j in range(n):
                sign = -1 if p and b.parity[j] else 1
                diff = dict(b.alg._table[k].get(j, ()))
                add_scaled(diff, dict(b.alg._table[j].get(k, ())), -sign)
                for m, c in diff.items():
                    eqs.setdefault((j, m), {})[col] = c
        sol = nullspace([Vector(len(idx), e) for e in eqs.values()], len(idx))
        out.append(Subspace.span(n, [Vector(n, {idx[c]: v for c, v in r.entries.items()})
                                     for r in sol.rows]))
    return out[0], out[1]


def grassmann_envelope(b: SuperStarAlgebra, k: int, name: str | None = None) -> StarAlgebra:
    """E(B) truncated to E_k: span of e_S (x) b_j with |S| = parity(b_j) mod 2."""
    if b.superinv is None:
        raise AlgebraError("envelope needs a superinvolution on the base")
    report = check_superinvolution(b)
    if not report.ok:
        raise AlgebraError(f"base fails the superinvolution axioms: {report.counterexample}")
    g = _truncation(k)
    sharp = g.sharp_images()
    pairs = [(si, j) for si in range(g.dim) for j in range(b.dim)
             if g.parity[si] == b.parity[j]]
    lookup = {p: n for n, p in enumerate(pairs)}
    structure = {}
    for x, (si, i) in enumerate(pairs):
        for y, (tj, j) in enumerate(pairs):
            gp = g.product(si, tj)
            if gp is None:
                continue
            prod = b.alg._table[i].get(j)
            if not prod:
                continue
            sign, u = gp
            structure[(x, y)] = {lookup[(u, m)]: sign * c for m, c in prod}
    images = []
    for si, i in pairs:
        img: dict = {}
        for u, gc in sharp[si].items():
            for m, c in b.superinv.images[i].items():
                add_scaled(img, {lookup[(u, m)]: 1}, gc * c)
        images.append(img)
    labels = [f"{subset_label(g.basis[si])}⊗{b.alg.basis_labels[j]}" for si, j in pairs]
    unit = None
    if b.alg.unit is not None:
        unit = {lookup[(0, m)]: c for m, c in b.alg.unit.entries.items()}
    alg = StructureAlgebra(labels, structure, unit=unit, check=False)
    env = StarAlgebra(alg, Involution(images), name=name)
    env.envelope = EnvelopeInfo(b, k, pairs, lookup)
    c0, c1 = _super_center_pieces(b)
    rows = []
    for si, s in enumerate(g.basis):
        piece = c1 if len(s) % 2 else c0
        for r in piece.rows:
            rows.append(Vector(alg.dim, {lookup[(si, m)]: c for m, c in r.entries.items()}))
    # trace of the center of the untruncated envelope; the truncation's own
    # center is larger because top-degree monomials annihilate everything
    env._center = Subspace.span(alg.dim, rows)
    return env


def _sign_part(a: StarAlgebra, vectors, sign: str) -> list[Vector]:
    s = 1 if sign == "+" else -1
    projected = [v + a.star(v) * s for v in vectors]
    return Subspace.span(a.dim, projected).basis()


def regular_substitution_set(a: StarAlgebra, slot_signs) -> list[list[Vector]]:
    """Candidate values per slot for envelope algebras.

    Slot i (0-based) draws from the +/- part of span{1 (x) b even} together
    with the +/- part of span{e_{i+1} (x) b odd}.
    """
    info = a.envelope
    if info is None:
        raise AlgebraError("regular substitution needs an envelope algebra")
    signs = list(slot_signs)
    if len(signs) > info.k:
        raise ValueError(f"{len(signs)} slots need at least {len(signs)} generators, k={info.k}")
    g = info.grassmann
    base = info.base
    even = [Vector.unit(a.dim, info.lookup[(0, j)]) for j in base.even_indices()]
    out = []
    for i, sign in enumerate(signs):
        gi = g.generator(i + 1)
        odd = [Vector.unit(a.dim, info.lookup[(gi, j)]) for j in base.odd_indices()]
        out.append(_sign_part(a, even, sign) + _sign_part(a, odd, sign))
    return out
