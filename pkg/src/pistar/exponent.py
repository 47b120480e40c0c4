"""*-exponent from admissible subalgebras, and witness-based bounds for the
proper central *-exponent.

The upper bound for the proper central exponent is exp*; the lower bound is
the largest subset of Wedderburn components that a supplied witness (a proper
central polynomial plus a designation of one slot per component) certifies.
Nothing is claimed without a witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import StarAlgebra
from .catalog import WedderburnData, envelope_wedderburn, indexed_algebra, parse_element, wedderburn_data
from .evaluator import (
    PROPER_CENTRAL,
    EvaluationError,
    _candidates,
    choose_substitution,
    classify,
    evaluate,
    first_nonzero,
)
from .linalg import Subspace, Vector
from .starpoly import SignedVar, StarPolynomial, check_multilinear, poly


class DesignationError(ValueError):
    pass


def subspace_product_chain(spaces: Sequence[Subspace], a) -> Subspace:
    """Span of all products s1 s2 ... sm with s_i taken from spaces[i]."""
    if not spaces:
        raise ValueError("empty chain")
    alg = a.alg if isinstance(a, StarAlgebra) else a
    current = spaces[0]
    for nxt in spaces[1:]:
        if current.dim == 0 or nxt.dim == 0:
            return Subspace.zero(alg.dim)
        current = Subspace.span(alg.dim, [alg.mul(u, v) for u in current.rows for v in nxt.rows])
    return current


def _check_subset(d: WedderburnData, subset) -> tuple[int, ...]:
    idx = tuple(subset)
    if not idx:
        raise ValueError("subset must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValueError("subset indices must be distinct")
    for i in idx:
        if not 0 <= i < d.m:
            raise IndexError(f"component index {i} out of range (m = {d.m})")
    return idx


def is_admissible(d: WedderburnData, subset) -> tuple[bool, tuple[int, ...] | None]:
    """True with an ordering (i1..ik) when B_i1 J B_i2 J ... J B_ik != 0."""
    idx = _check_subset(d, subset)
    comps = [s for _, s in d.components]
    for order in itertools.permutations(sorted(idx)):
        chain = [comps[order[0]]]
        for i in order[1:]:
            chain += [d.radical, comps[i]]
        if subspace_product_chain(chain, d.source).dim:
            return True, order
    return False, None


def exp_star(d: WedderburnData) -> tuple[int, tuple[int, ...]]:
    """Maximal total dimension of an admissible subset (exhaustive)."""
    dims = d.component_dims()
    best, best_subset = 0, ()
    for size in range(1, d.m + 1):
        for subset in itertools.combinations(range(d.m), size):
            total = sum(dims[i] for i in subset)
            if total > best and is_admissible(d, subset)[0]:
                best, best_subset = total, subset
    return best, best_subset


# -- central admissibility ------------------------------------------------------------

def _designation(d: WedderburnData, subset, f: StarPolynomial,
                 component_slots: Mapping[SignedVar, int]) -> dict[SignedVar, int]:
    idx = _check_subset(d, subset)
    ok, slots = check_multilinear(f)
    if not ok:
        raise DesignationError("polynomial is not multilinear")
    slots = set(slots)
    for v in component_slots:
        if v not in slots:
            raise DesignationError(f"designated slot {v} does not occur in the polynomial")
    targets = list(component_slots.values())
    if len(set(targets)) != len(targets):
        raise DesignationError("a component is designated by more than one slot")
    if set(targets) != set(idx):
        raise DesignationError(f"designated components {sorted(set(targets))} "
                               f"do not match the subset {sorted(idx)}")
    return dict(component_slots)


def verify_centrally_admissible(a: StarAlgebra, d: WedderburnData, subset, f: StarPolynomial,
                                s: Mapping[SignedVar, Vector],
                                component_slots: Mapping[SignedVar, int], workers: int = 1) -> bool:
    return centrally_admissible_reason(a, d, subset, f, s, component_slots, workers) is None


def centrally_admissible_reason(a, d, subset, f, s, component_slots, workers: int = 1) -> str | None:
    """None when the witness certifies the subset, else why it does not."""
    designation = _designation(d, subset, f, component_slots)
    comps = [c for _, c in d.components]
    for v, ci in designation.items():
        if v not in s:
            return f"no value for designated slot {v}"
        part = comps[ci].intersection(a.sign_space(v.sign))
        if not part.member(s[v]):
            return f"value of {v} is not in the {v.sign} part of component {ci}"
    try:
        value = evaluate(f, a, s)
    except EvaluationError as exc:
        return str(exc)
    if value.is_zero():
        return "the assignment evaluates to zero"
    verdict = classify(f, a, workers=workers)
    if verdict.status != PROPER_CENTRAL:
        return f"the polynomial is {verdict.status}, not proper central"
    return None


def search_assignment(a: StarAlgebra, d: WedderburnData, f: StarPolynomial,
                      component_slots: Mapping[SignedVar, int]):
    """First assignment (enumeration order) with designated slots restricted to
    their components' sign parts and a nonzero value; None if there is none."""
    ok, slots = check_multilinear(f)
    if not ok:
        raise DesignationError("polynomial is not multilinear")
    substitution = choose_substitution(a, len(slots), None)
    base = _candidates(a, slots, substitution)
    comps = [c for _, c in d.components]
    cands = []
    for v, lst in zip(slots, base):
        if v in component_slots:
            span = Subspace.span(a.dim, lst).intersection(comps[component_slots[v]])
            cands.append(span.basis())
        else:
            cands.append(lst)
    found = first_nonzero(f, a, cands)
    return None if found is None else found[0]


# -- reports ------------------------------------------------------------------------

@dataclass
class Witness:
    poly: str
    component_slots: dict                     # SignedVar -> component index
    assignment: dict | None = None            # SignedVar -> Vector; searched when None

    @property
    def subset(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.component_slots.values())))


@dataclass
class ExponentReport:
    exp_star: int
    exp_delta_lower: int
    exp_delta_upper: int
    confirmed: bool
    best_admissible: tuple[int, ...]
    admissible_ordering: tuple[int, ...] | None = None
    witness: tuple | None = None              # (StarPolynomial, assignment)
    witness_subset: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)
    algebra: str | None = None

    def to_json(self, a: StarAlgebra | None = None, d: WedderburnData | None = None) -> dict:
        out = {
            "algebra": self.algebra,
            "exp_star": self.exp_star,
            "exp_delta_lower": self.exp_delta_lower,
            "exp_delta_upper": self.exp_delta_upper,
            "confirmed": self.confirmed,
            "best_admissible": list(self.best_admissible),
            "admissible_ordering": list(self.admissible_ordering) if self.admissible_ordering else None,
            "witness": None,
            "notes": list(self.notes),
        }
        if d is not None:
            out["components"] = [label for label, _ in d.components]
        if self.witness is not None:
            f, s = self.witness
            fmt = a.format_vector if a is not None else str
            out["witness"] = {
                "polynomial": f.render(),
                "assignment": {str(v): fmt(s[v]) for v in sorted(s)},
                "subset": list(self.witness_subset),
            }
        return out


def exponent_report(a: StarAlgebra, d: WedderburnData, witnesses: Sequence[Witness] = (),
                    workers: int = 1) -> ExponentReport:
    upper, best = exp_star(d)
    ordering = is_admissible(d, best)[1] if best else None
    dims = d.component_dims()
    lower, kept, notes = 0, None, []
    for w in witnesses:
        f = poly(w.poly)
        s = w.assignment
        if s is None:
            s = search_assignment(a, d, f, w.component_slots)
            if s is None:
                notes.append(f"{w.poly}: no nonzero assignment with the given designation")
                continue
        reason = centrally_admissible_reason(a, d, w.subset, f, s, w.component_slots, workers)
        if reason is not None:
            notes.append(f"{w.poly}: {reason}")
            continue
        total = sum(dims[i] for i in w.subset)
        if total > lower:
            lower, kept = total, (f, s, w.subset)
    if not witnesses:
        notes.append("no witnesses supplied; the lower bound is not certified")
    return ExponentReport(
        exp_star=upper, exp_delta_lower=lower, exp_delta_upper=upper,
        confirmed=(lower == upper), best_admissible=best, admissible_ordering=ordering,
        witness=(kept[0], kept[1]) if kept else None,
        witness_subset=kept[2] if kept else (), notes=notes, algebra=a.name)


# -- shipped witnesses ----------------------------------------------------------------

def _sv(text: str) -> SignedVar:
    return SignedVar(int(text[1:-1]), text[-1])


# polynomial, designation slot -> component, explicit assignment (matrix-unit text) or None
_WITNESSES = {
    1: ("x1- x2-", {"x1-": 0}, None),
    2: ("x1+", {"x1+": 0}, None),
    3: ("[x1-, x2-, x1+]", {"x1-": 0}, None),
    4: ("[x1+, x2+]", {"x1+": 0}, None),
    5: ("[x1+,x2+][x3+,x4+][x5+,x6+]", {"x1+": 0, "x3+": 1, "x5+": 2},
        {"x1+": "e11+e66", "x2+": "e12+e56", "x3+": "e22+e55", "x4+": "e23+e45",
         "x5+": "e33+e44", "x6+": "e36+e14"}),
    6: ("[x1+,x2+][x3+,x4+][x5+,x6+]", {"x1+": 0, "x3+": 1, "x5+": 2}, None),
    # e48+e14 and e48-e14 are not in A+ / A- as the last slot requires;
    # e48+e15 plays the same role and has the right sign in both algebras
    7: ("[x1+,x2+][x3+,x4+][x5+,x6+][x7+,x8+]", {"x2+": 0, "x5+": 1, "x7+": 2},
        {"x1+": "e12+e78", "x2+": "e22+e77", "x3+": "e22+e77", "x4+": "e23+e67",
         "x5+": "e33+e66", "x6+": "e34+e56", "x7+": "e44+e55", "x8+": "e48+e15"}),
    8: ("[x1+,x2+][x3+,x4+][x5+,x6+][x7+,x8-]", {"x2+": 0, "x5+": 1, "x7+": 2},
        {"x1+": "e12+e78", "x2+": "e22+e77", "x3+": "e22+e77", "x4+": "e23+e67",
         "x5+": "e33+e66", "x6+": "e34+e56", "x7+": "e44+e55", "x8-": "e48+e15"}),
    9: ("[x1+,x2+][x4+,x5+]", {"x1+": 0, "x4+": 1}, None),
    10: ("[x1+,x2+][x4+,x5-]", {"x1+": 0, "x4+": 1}, None),
    11: ("[x1+,x2+][x4+,x5+]", {"x2+": 1, "x4+": 0}, None),
    12: ("[x1+,x2+][x4+,x5-]", {"x2+": 1, "x4+": 0}, None),
    13: ("[x1+,x2+][x3+,x4+][x5+,x6+]", {"x3+": 0, "x5+": 1}, None),
    14: ("[x1+,x2+][x3+,x4+][x5+,x6-]", {"x3+": 0, "x5+": 1}, None),
}


def builtin_witness(i: int, a: StarAlgebra | None = None) -> Witness:
    text, slots, values = _WITNESSES[i]
    designation = {_sv(k): c for k, c in slots.items()}
    assignment = None
    if values is not None:
        a = a if a is not None else indexed_algebra(i)
        assignment = {_sv(k): parse_element(a, v) for k, v in values.items()}
    return Witness(text, designation, assignment)


def indexed_datum(i: int, grassmann_k: int | None = None) -> tuple[StarAlgebra, WedderburnData]:
    """Algebra and Wedderburn datum for A_i; A3/A4 use k = witness degree by default."""
    if i in (3, 4):
        k = grassmann_k if grassmann_k is not None else len(poly(_WITNESSES[i][0]).slots())
        d = envelope_wedderburn(i, k)
        return d.source, d
    d = wedderburn_data(i)
    return d.source, d


def indexed_report(i: int, grassmann_k: int | None = None, workers: int = 1) -> ExponentReport:
    a, d = indexed_datum(i, grassmann_k)
    return exponent_report(a, d, [builtin_witness(i, a)], workers=workers)
