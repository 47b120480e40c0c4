"""Finite-dimensional algebras given by structure constants, with involutions.

An algebra is a basis (a list of labels) plus the products ``b_i b_j`` as
sparse vectors.  Units are optional: most algebras we care about are
non-unital subalgebras of upper triangular matrices.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .linalg import (
    CoordinateSolver,
    DimensionError,
    RankAccumulator,
    Subspace,
    Vector,
    add_scaled,
    format_rational,
    nullspace,
    rational,
)


class AlgebraError(ValueError):
    """Structural failure: non-associative table, bad involution, bad ideal."""


class StructureAlgebra:
    """Associative algebra over Q by structure constants.

    ``structure`` maps ``(i, j)`` to the product ``b_i b_j`` given either as
    a :class:`Vector` or as a ``{k: coefficient}`` mapping.  Missing pairs
    multiply to zero.
    """

    def __init__(self, basis_labels: Sequence[str], structure: Mapping, unit=None,
                 check: bool = True):
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        n = self.dim
        self._table: list[dict[int, tuple]] = [dict() for _ in range(n)]
        for (i, j), prod in structure.items():
            entries = prod.entries if isinstance(prod, Vector) else {
                int(k): rational(c) for k, c in prod.items()}
            terms = tuple((k, c) for k, c in sorted(entries.items()) if c)
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k, _ in terms):
                raise DimensionError(f"structure constant ({i},{j}) out of range")
            if terms:
                self._table[i][j] = terms
        if unit is not None and not isinstance(unit, Vector):
            unit = Vector(n, {int(k): c for k, c in unit.items()})
        self.unit = unit
        if check:
            bad = self.associativity_counterexample()
            if bad is not None:
                raise AlgebraError(f"not associative on basis triple {bad}")
            if unit is not None and not self._is_unit(unit):
                raise AlgebraError("declared unit is not a two-sided identity")

    # -- arithmetic -----------------------------------------------------
    def mul_raw(self, u: Mapping, v: Mapping) -> dict:
        """Product of two raw sparse dicts (hot path, no checks)."""
        out: dict = {}
        table = self._table
        for i, a in u.items():
            row = table[i]
            if not row:
                continue
            for j, b in v.items():
                terms = row.get(j)
                if terms is None:
                    continue
                ab = a * b
                for k, c in terms:
                    val = out.get(k, 0) + ab * c
                    if val:
                        out[k] = val
                    else:
                        del out[k]
        return out

    def mul(self, u: Vector, v: Vector) -> Vector:
        if u.dim != self.dim or v.dim != self.dim:
            raise DimensionError(f"vectors must have length {self.dim}")
        return Vector(self.dim, self.mul_raw(u.entries, v.entries))

    def basis_vector(self, i: int) -> Vector:
        return Vector.unit(self.dim, i)

    def basis(self) -> list[Vector]:
        return [Vector.unit(self.dim, i) for i in range(self.dim)]

    def product_of_basis(self, i: int, j: int) -> Vector:
        return Vector(self.dim, dict(self._table[i].get(j, ())))

    def structure_items(self):
        for i, row in enumerate(self._table):
            for j in sorted(row):
                yield i, j, dict(row[j])

    def associativity_counterexample(self):
        n = self.dim
        for i, j, k in itertools.product(range(n), repeat=3):
            left = self.mul_raw(dict(self._table[i].get(j, ())), {k: 1})
            right = self.mul_raw({i: 1}, dict(self._table[j].get(k, ())))
            if left != right:
                return (i, j, k)
        return None

    def _is_unit(self, u: Vector) -> bool:
        return all(self.mul(u, b) == b and self.mul(b, u) == b for b in self.basis())

    def label(self, i: int) -> str:
        return self.basis_labels[i]

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def format_vector(self, v: Vector) -> str:
        return format_vector(v, self.basis_labels)

    def __repr__(self) -> str:
        return f"StructureAlgebra(dim={self.dim})"


def format_vector(v: Vector, labels: Sequence[str]) -> str:
    if v.is_zero():
        return "0"
    parts = []
    for k, c in v.items():
        if c == 1:
            parts.append(f"+{labels[k]}")
        elif c == -1:
            parts.append(f"-{labels[k]}")
        else:
            s = format_rational(c)
            parts.append(f"{'' if s.startswith('-') else '+'}{s}*{labels[k]}")
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def multiply(a, u: Vector, v: Vector) -> Vector:
    alg = a.alg if isinstance(a, (StarAlgebra, SuperStarAlgebra)) else a
    return alg.mul(u, v)


class Involution:
    """A linear map given by the images of the basis vectors."""

    def __init__(self, images: Sequence):
        self.dim = len(images)
        self.images: list[dict] = []
        for img in images:
            if isinstance(img, Vector):
                if img.dim != self.dim:
                    raise DimensionError("involution image of wrong length")
                self.images.append(dict(img.entries))
            else:
                self.images.append({int(k): rational(c) for k, c in img.items() if rational(c)})

    @classmethod
    def identity(cls, dim: int) -> "Involution":
        return cls([{i: 1} for i in range(dim)])

    def apply_raw(self, u: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            add_scaled(out, self.images[i], a)
        return out

    def apply(self, u: Vector) -> Vector:
        if u.dim != self.dim:
            raise DimensionError(f"vector must have length {self.dim}")
        return Vector(self.dim, self.apply_raw(u.entries))

    __call__ = apply

    def matrix(self) -> list[list]:
        """Dense matrix with the image of basis vector j in column j."""
        rows = [[0] * self.dim for _ in range(self.dim)]
        for j, img in enumerate(self.images):
            for i, c in img.items():
                rows[i][j] = c
        return rows


@dataclass
class CheckReport:
    """Outcome of an exhaustive axiom check on basis elements."""

    ok: bool
    failures: dict[str, bool] = field(default_factory=dict)
    counterexample: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class InvolutionReport(CheckReport):
    order_two: bool = True
    anti_mult: bool = True


def check_involution(alg: StructureAlgebra, m: Involution) -> InvolutionReport:
    if m.dim != alg.dim:
        raise DimensionError("involution and algebra dimensions differ")
    order_two, anti_mult, counter = True, True, None
    for i in range(alg.dim):
        back = m.apply_raw(m.images[i])
        if back != {i: 1}:
            order_two = False
            counter = counter or ("order_two", i)
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = m.apply_raw(dict(alg._table[i].get(j, ())))
            rhs = alg.mul_raw(m.images[j], m.images[i])
            if lhs != rhs:
                anti_mult = False
                if counter is None or counter[0] == "order_two":
                    counter = ("anti_mult", i, j)
                break
        if not anti_mult:
            break
    ok = order_two and anti_mult
    return InvolutionReport(ok=ok, failures={"order_two": order_two, "anti_mult": anti_mult},
                            counterexample=None if ok else counter,
                            order_two=order_two, anti_mult=anti_mult)


def center(alg: StructureAlgebra) -> Subspace:
    """Z(A): solve [z, b_i] = 0 for every basis element b_i."""
    n = alg.dim
    # equation (i, m): sum_k z_k * ([b_k, b_i])_m = 0
    eqs: dict[tuple[int, int], dict] = {}
    for k in range(n):
        for i in range(n):
            comm = dict(alg._table[k].get(i, ()))
            add_scaled(comm, dict(alg._table[i].get(k, ())), -1)
            for m, c in comm.items():
                eqs.setdefault((i, m), {})[k] = c
    return nullspace([Vector(n, e) for e in eqs.values()], n)


def plus_minus(alg: StructureAlgebra, inv: Involution) -> tuple[Subspace, Subspace]:
    report = check_involution(alg, inv)
    if not report.ok:
        raise AlgebraError(f"not an involution: {report.counterexample}")
    plus, minus = [], []
    for i in range(alg.dim):
        img = inv.images[i]
        plus.append(Vector(alg.dim, add_scaled({i: 1}, img, 1)))
        minus.append(Vector(alg.dim, add_scaled({i: 1}, img, -1)))
    return Subspace.span(alg.dim, plus), Subspace.span(alg.dim, minus)


class StarAlgebra:
    """An algebra together with an involution and its +/- eigenspaces."""

    def __init__(self, alg: StructureAlgebra, inv: Involution, name: str | None = None,
                 check: bool = True):
        if inv.dim != alg.dim:
            raise DimensionError("involution and algebra dimensions differ")
        self.alg = alg
        self.inv = inv
        self.name = name
        if check:
            self.plus, self.minus = plus_minus(alg, inv)
        else:
            self.plus, self.minus = _eigenspaces(alg, inv)
        # optional extras attached by constructors: matrix-unit embedding,
        # Grassmann-envelope bookkeeping, quotient representatives
        self.units: list[dict] | None = None
        self.envelope = None
        self._center: Subspace | None = None

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def basis_labels(self) -> list[str]:
        return self.alg.basis_labels

    def mul(self, u: Vector, v: Vector) -> Vector:
        return self.alg.mul(u, v)

    def star(self, u: Vector) -> Vector:
        return self.inv.apply(u)

    @property
    def center(self) -> Subspace:
        """Center used for centrality decisions.

        For a truncated Grassmann envelope this is the trace of the center of
        the full envelope (set by the envelope constructor), not the center
        of the truncation, which is too large.
        """
        if self._center is None:
            self._center = center(self.alg)
        return self._center

    def sign_space(self, sign: str) -> Subspace:
        return self.plus if sign == "+" else self.minus

    def format_vector(self, v: Vector) -> str:
        return self.alg.format_vector(v)

    def __repr__(self) -> str:
        return f"StarAlgebra({self.name or '?'}, dim={self.dim})"


def _eigenspaces(alg, inv):
    plus, minus = [], []
    for i in range(alg.dim):
        img = inv.images[i]
        plus.append(Vector(alg.dim, add_scaled({i: 1}, img, 1)))
        minus.append(Vector(alg.dim, add_scaled({i: 1}, img, -1)))
    return Subspace.span(alg.dim, plus), Subspace.span(alg.dim, minus)


def involve(a: StarAlgebra, u: Vector) -> Vector:
    return a.inv.apply(u)


# -- closures ---------------------------------------------------------------

def star_subalgebra_closure(a: StarAlgebra, gens: Iterable[Vector]) -> Subspace:
    """Smallest subspace containing ``gens`` closed under product and *."""
    n = a.dim
    basis: list[Vector] = []
    acc = Subspace.zero(n)
    ra = RankAccumulator(n)
    frontier: list[Vector] = []

    def absorb(v: Vector):
        if ra.insert(v):
            basis.append(v)
            frontier.append(v)

    for g in gens:
        absorb(g)
        absorb(a.star(g))
    while frontier:
        v = frontier.pop()
        for w in list(basis):
            absorb(a.mul(v, w))
            absorb(a.mul(w, v))
    acc = ra.subspace()
    return acc


def star_ideal_closure(a: StarAlgebra, sub: Subspace, gens: Iterable[Vector]) -> Subspace:
    """Smallest *-closed two-sided ideal of the subalgebra ``sub`` containing gens."""
    gens = list(gens)
    for g in gens:
        if not sub.member(g):
            raise AlgebraError("ideal generator lies outside the subalgebra")
    n = a.dim
    ra = RankAccumulator(n)
    frontier: list[Vector] = []
    sub_basis = sub.basis()

    def absorb(v: Vector):
        if ra.insert(v):
            frontier.append(v)

    for g in gens:
        absorb(g)
        absorb(a.star(g))
    while frontier:
        v = frontier.pop()
        absorb(a.star(v))
        for b in sub_basis:
            absorb(a.mul(b, v))
            absorb(a.mul(v, b))
    return ra.subspace()


class QuotientStarAlgebra(StarAlgebra):
    """B/I with basis given by coset representatives.

    ``representatives`` are rows of B's RREF basis that extend I's basis
    (greedy, in order), so the choice is deterministic.
    """

    def __init__(self, ambient: StarAlgebra, sub: Subspace, ideal: Subspace,
                 name: str | None = None):
        self.ambient = ambient
        self.sub = sub
        self.ideal = ideal
        ra = RankAccumulator(ambient.dim)
        for r in ideal.rows:
            ra.insert(r)
        reps = [r for r in sub.rows if ra.insert(r)]
        self.representatives = reps
        self._solver = CoordinateSolver(list(ideal.rows) + reps)
        structure = {}
        for i, u in enumerate(reps):
            for j, v in enumerate(reps):
                prod = self.project(ambient.mul(u, v))
                if prod:
                    structure[(i, j)] = prod
        images = [self.project(ambient.star(u)) for u in reps]
        labels = [f"[{ambient.format_vector(r)}]" for r in reps]
        alg = StructureAlgebra(labels, structure, check=False)
        super().__init__(alg, Involution(images), name=name, check=False)

    def project(self, v: Vector) -> Vector:
        """Coset coordinates of an element of B."""
        coords = self._solver.coords(v)
        k = self.ideal.dim
        return Vector(len(self.representatives), {i: c for i, c in enumerate(coords[k:]) if c})

    def lift(self, v: Vector) -> Vector:
        out = Vector.zero(self.ambient.dim)
        for i, c in v.entries.items():
            out = out + self.representatives[i] * c
        return out


def quotient(a: StarAlgebra, sub: Subspace, ideal: Subspace, name: str | None = None,
             check: bool = True) -> QuotientStarAlgebra:
    if not sub.contains(ideal):
        raise AlgebraError("ideal is not contained in the subalgebra")
    if check:
        for x in ideal.rows:
            if not ideal.member(a.star(x)):
                raise AlgebraError("ideal is not *-stable")
            for b in sub.rows:
                if not ideal.member(a.mul(b, x)) or not ideal.member(a.mul(x, b)):
                    raise AlgebraError("ideal is not two-sided")
        for u in sub.rows:
            if not sub.member(a.star(u)):
                raise AlgebraError("subalgebra is not *-stable")
            for v in sub.rows:
                if not sub.member(a.mul(u, v)):
                    raise AlgebraError("subspace is not closed under multiplication")
    return QuotientStarAlgebra(a, sub, ideal, name=name)


@dataclass
class IsoReport(CheckReport):
    bijective: bool = True
    multiplicative: bool = True
    star_compatible: bool = True


def check_star_isomorphism(a: StarAlgebra, b: StarAlgebra, m: Sequence[Vector]) -> IsoReport:
    """Check that the linear map sending basis i of ``a`` to ``m[i]`` is a *-isomorphism."""
    if len(m) != a.dim or a.dim != b.dim:
        return IsoReport(ok=False, failures={"dimension": False},
                         counterexample=("dimension", a.dim, b.dim, len(m)),
                         bijective=False, multiplicative=False, star_compatible=False)
    images = [dict(v.entries) for v in m]

    def apply(u: Mapping) -> dict:
        out: dict = {}
        for i, c in u.items():
            add_scaled(out, images[i], c)
        return out

    bijective = Subspace.span(b.dim, m).dim == b.dim
    multiplicative, star_ok, counter = True, True, None
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = apply(dict(a.alg._table[i].get(j, ())))
            rhs = b.alg.mul_raw(images[i], images[j])
            if lhs != rhs:
                multiplicative = False
                counter = ("multiplicative", i, j)
                break
        if not multiplicative:
            break
    for i in range(a.dim):
        if apply(a.inv.images[i]) != b.inv.apply_raw(images[i]):
            star_ok = False
            counter = counter or ("star", i)
            break
    if not bijective:
        counter = counter or ("bijective",)
    ok = bijective and multiplicative and star_ok
    return IsoReport(ok=ok, failures={"bijective": bijective, "multiplicative": multiplicative,
                                      "star_compatible": star_ok},
                     counterexample=None if ok else counter, bijective=bijective,
                     multiplicative=multiplicative, star_compatible=star_ok)


# -- constructions ----------------------------------------------------------

def _block_structure(parts: Sequence[StructureAlgebra], opposite: Sequence[bool]):
    offsets, off = [], 0
    for p in parts:
        offsets.append(off)
        off += p.dim
    structure = {}
    for p, o, op in zip(parts, offsets, opposite):
        for i, j, prod in p.structure_items():
            key = (o + j, o + i) if op else (o + i, o + j)
            structure[key] = {o + k: c for k, c in prod.items()}
    return structure, offsets


def direct_sum(a: StarAlgebra, b: StarAlgebra, name: str | None = None) -> StarAlgebra:
    structure, (oa, ob) = _block_structure([a.alg, b.alg], [False, False])
    labels = [f"({l},0)" for l in a.basis_labels] + [f"(0,{l})" for l in b.basis_labels]
    unit = None
    if a.alg.unit is not None and b.alg.unit is not None:
        unit = {**a.alg.unit.entries, **{ob + k: c for k, c in b.alg.unit.entries.items()}}
    alg = StructureAlgebra(labels, structure, unit=unit)
    images = [{oa + k: c for k, c in img.items()} for img in a.inv.images]
    images += [{ob + k: c for k, c in img.items()} for img in b.inv.images]
    return StarAlgebra(alg, Involution(images), name=name)


def opposite(a: StarAlgebra, name: str | None = None) -> StarAlgebra:
    structure, _ = _block_structure([a.alg], [True])
    alg = StructureAlgebra(list(a.basis_labels), structure, unit=a.alg.unit)
    return StarAlgebra(alg, Involution(a.inv.images), name=name)


def with_exchange(alg: StructureAlgebra, name: str | None = None) -> StarAlgebra:
    """A (+) A^op with the exchange involution (x, y)* = (y, x)."""
    structure, (o1, o2) = _block_structure([alg, alg], [False, True])
    labels = [f"({l},0)" for l in alg.basis_labels] + [f"(0,{l})" for l in alg.basis_labels]
    unit = None
    if alg.unit is not None:
        unit = {**alg.unit.entries, **{o2 + k: c for k, c in alg.unit.entries.items()}}
    total = StructureAlgebra(labels, structure, unit=unit)
    n = alg.dim
    images = [{n + i: 1} for i in range(n)] + [{i: 1} for i in range(n)]
    return StarAlgebra(total, Involution(images), name=name)


# -- superalgebras ------------------------------------------------------------

class SuperStarAlgebra:
    """Z/2-graded algebra on a homogeneous basis, with an optional superinvolution."""

    def __init__(self, alg: StructureAlgebra, parity: Sequence[int],
                 superinv: Involution | None = None, name: str | None = None):
        if len(parity) != alg.dim:
            raise DimensionError("parity list has wrong length")
        if any(p not in (0, 1) for p in parity):
            raise AlgebraError("parities must be 0 or 1")
        self.alg = alg
        self.parity = list(parity)
        self.superinv = superinv
        self.name = name

    @property
    def dim(self) -> int:
        return self.alg.dim

    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 0]

    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 1]

    def grading_counterexample(self):
        for i, j, prod in self.alg.structure_items():
            want = (self.parity[i] + self.parity[j]) % 2
            for k in prod:
                if self.parity[k] != want:
                    return (i, j, k)
        return None


def check_superinvolution(s: SuperStarAlgebra) -> CheckReport:
    if s.superinv is None:
        raise AlgebraError("superalgebra carries no superinvolution")
    bad = s.grading_counterexample()
    if bad is not None:
        raise AlgebraError(f"grading is not multiplicative at {bad}")
    m, alg, par = s.superinv, s.alg, s.parity
    failures = {"graded": True, "order_two": True, "super_anti_mult": True}
    counter = None
    for i in range(s.dim):
        if any(par[k] != par[i] for k in m.images[i]):
            failures["graded"] = False
            counter = counter or ("graded", i)
        if m.apply_raw(m.images[i]) != {i: 1}:
            failures["order_two"] = False
            counter = counter or ("order_two", i)
    for i in range(s.dim):
        for j in range(s.dim):
            lhs = m.apply_raw(dict(alg._table[i].get(j, ())))
            sign = -1 if par[i] and par[j] else 1
            rhs = alg.mul_raw(m.images[j], m.images[i])
            if sign < 0:
                rhs = {k: -c for k, c in rhs.items()}
            if lhs != rhs:
                failures["super_anti_mult"] = False
                counter = counter or ("super_anti_mult", i, j)
    ok = all(failures.values())
    return CheckReport(ok=ok, failures=failures, counterexample=None if ok else counter)


# -- serialization --------------------------------------------------------------

def _coeff_map(entries: Mapping) -> dict[str, str]:
    return {str(k): format_rational(c) for k, c in sorted(entries.items())}


def algebra_to_json(a, name: str | None = None) -> dict:
    """Interchange form: {name, basis, unit, structure, involution, parity}."""
    if isinstance(a, SuperStarAlgebra):
        alg, inv, parity = a.alg, a.superinv, a.parity
    elif isinstance(a, StarAlgebra):
        alg, inv, parity = a.alg, a.inv, None
    else:
        alg, inv, parity = a, None, None
    out: dict[str, Any] = {"name": name if name is not None else getattr(a, "name", None),
                           "basis": list(alg.basis_labels)}
    out["unit"] = None if alg.unit is None else _coeff_map(alg.unit.entries)
    out["structure"] = [[i, j, _coeff_map(prod)] for i, j, prod in alg.structure_items()]
    out["involution"] = None if inv is None else [
        [i, _coeff_map(img)] for i, img in enumerate(inv.images)]
    if parity is not None:
        out["parity"] = list(parity)
    return out


def algebra_from_json(data: Mapping):
    labels = data["basis"]
    structure = {(int(i), int(j)): {int(k): rational(c) for k, c in prod.items()}
                 for i, j, prod in data["structure"]}
    unit = data.get("unit")
    unit = None if unit is None else {int(k): rational(c) for k, c in unit.items()}
    alg = StructureAlgebra(labels, structure, unit=unit)
    inv = None
    if data.get("involution") is not None:
        images = [dict() for _ in labels]
        for i, img in data["involution"]:
            images[int(i)] = {int(k): rational(c) for k, c in img.items()}
        inv = Involution(images)
    if data.get("parity") is not None:
        return SuperStarAlgebra(alg, data["parity"], inv, name=data.get("name"))
    if inv is None:
        return alg
    return StarAlgebra(alg, inv, name=data.get("name"))


def dumps_algebra(a, name: str | None = None) -> str:
    return json.dumps(algebra_to_json(a, name), indent=2, ensure_ascii=False)
