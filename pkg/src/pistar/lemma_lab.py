"""Quotient constructions that embed the fourteen algebras into a given *-algebra.

Each pattern starts from orthogonal symmetric idempotents e1, e2(, e3) and
connecting elements j1..j4 whose product p (the hypothesis word) is nonzero.
It generates a *-subalgebra B, quotients by a *-ideal I and maps the coset
representatives onto matrix units of the target.  The tables below hold
words in the symbols e1 e2 e3 e2m (for e2^-) and j1..j4, where a trailing *
means the involution.  In the maps, a leading "a*" is the sign alpha.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import (
    IsoReport,
    StarAlgebra,
    check_star_isomorphism,
    direct_sum,
    quotient,
    star_ideal_closure,
    star_subalgebra_closure,
)
from .catalog import indexed_algebra, parse_element, parse_vector_spec
from .linalg import CoordinateSolver, Vector


class LemmaError(ValueError):
    pass


@dataclass(frozen=True)
class LemmaPattern:
    id: str
    idempotents: int
    js: int
    target_pair: tuple[int, int]
    hypothesis: str
    generators: tuple[str, ...]
    ideal: tuple[str, ...]
    table: tuple[tuple[str, str], ...]       # representative word -> target element
    needs_e2_minus: bool = False

    @property
    def arity(self) -> tuple[int, int]:
        return self.idempotents, self.js

    @property
    def quotient_dim(self) -> int:
        return len(self.table)


PATTERNS: dict[str, LemmaPattern] = {}


def _pattern(p: LemmaPattern) -> LemmaPattern:
    PATTERNS[p.id] = p
    return p


_pattern(LemmaPattern(
    "inner3", 3, 3, (5, 6), "e1 j1 e2 j2 e3 j3 e1",
    ("e1", "e2", "e3", "e1 j1 e2", "e2 j2 e3", "e3 j3 e1"),
    ("e3 j3 e1 j1 e2", "e1 j1 e2 j1* e1", "e2 j1* e1 j1 e2", "e2 j2 e3 j2* e2",
     "e3 j2* e2 j2 e3", "e3 j3 e1 j3* e3", "e1 j3* e3 j3 e1"),
    (("e1", "e11+e66"), ("e2", "e22+e55"), ("e3", "e33+e44"),
     ("e1 j1 e2", "e12"), ("e2 j1* e1", "e56"), ("e2 j2 e3", "e23"), ("e3 j2* e2", "e45"),
     ("e3 j3 e1", "e36"), ("e1 j3* e3", "a*e14"),
     ("e1 j1 e2 j2 e3", "e13"), ("e3 j2* e2 j1* e1", "e46"),
     ("e2 j2 e3 j3 e1", "e26"), ("e1 j3* e3 j2* e2", "a*e15"),
     ("e1 j1 e2 j2 e3 j3 e1", "e16")),
))

_pattern(LemmaPattern(
    "outer3", 3, 4, (7, 8), "j1 e1 j2 e2 j3 e3 j4",
    ("e1", "e2", "e3", "j1 e1", "e1 j2 e2", "e2 j3 e3", "e3 j4"),
    ("e3 j4 e1", "e3 j4 e2", "e3 j4 e3", "e3 j4 j1 e1", "e3 j1 e1", "e2 j1 e1", "e1 j1 e1",
     "j1 e1 j1*", "j4* e3 j4", "e1 j1* j1 e1", "e3 j4 j4* e3", "e1 j2 e2 j2* e1",
     "e2 j2* e1 j2 e2", "e2 j3 e3 j3* e2", "e3 j3* e2 j3 e3"),
    (("e1", "e22+e77"), ("e2", "e33+e66"), ("e3", "e44+e55"),
     ("j1 e1", "e12"), ("e1 j1*", "e78"), ("e1 j2 e2", "e23"), ("e2 j2* e1", "e67"),
     ("e2 j3 e3", "e34"), ("e3 j3* e2", "e56"), ("e3 j4", "e48"), ("j4* e3", "a*e15"),
     ("j1 e1 j2 e2", "e13"), ("e2 j2* e1 j1*", "e68"),
     ("e1 j2 e2 j3 e3", "e24"), ("e3 j3* e2 j2* e1", "e57"),
     ("e2 j3 e3 j4", "e38"), ("j4* e3 j3* e2", "a*e16"),
     ("j1 e1 j2 e2 j3 e3", "e14"), ("e3 j3* e2 j2* e1 j1*", "e58"),
     ("e1 j2 e2 j3 e3 j4", "e28"), ("j4* e3 j3* e2 j2* e1", "a*e17"),
     ("j1 e1 j2 e2 j3 e3 j4", "e18")),
))

_pattern(LemmaPattern(
    "innerF_FF", 2, 2, (9, 10), "e1 j1 e2 j2 e1",
    ("e1", "e2", "e2m", "e1 j1 e2", "e2 j2 e1"),
    ("e2 j2 e1 j1 e2", "e2 j1* e1 j1 e2", "e1 j2* e2 j2 e1", "e1 j1 e2 j1* e1",
     "e2 j2 e1 j2* e2", "e1 j1 e2 - e1 j1 e2m", "e2 j2 e1 - e2m j2 e1"),
    (("e1", "e11+e44"), ("e2", "e22+e33"), ("e2m", "e22-e33"), ("e1 j1 e2", "e12"),
     ("e2 j1* e1", "e34"), ("e2 j2 e1", "e24"), ("e1 j2* e2", "a*e13"),
     ("e1 j1 e2 j2 e1", "e14")),
    needs_e2_minus=True,
))

_pattern(LemmaPattern(
    "innerFF_F", 2, 2, (11, 12), "e2 j1 e1 j2 e2",
    ("e1", "e2", "e2m", "e2 j1 e1", "e1 j2 e2"),
    ("e1 j2 e2 j1 e1", "e1 j2 e2 j2* e1", "e1 j1* e2 j1 e1", "e2 j1 e1 j1* e2",
     "e2 j2* e1 j2 e2", "e1 j2 e2 + e1 j2 e2m", "e2 j1 e1 - e2m j1 e1"),
    (("e1", "e22+e33"), ("e2", "e11+e44"), ("e2m", "e11-e44"), ("e2 j1 e1", "e13"),
     ("e1 j1* e2", "a*e24"), ("e1 j2 e2", "e34"), ("e2 j2* e1", "e12"),
     ("e2 j1 e1 j2 e2", "e14")),
    needs_e2_minus=True,
))

_pattern(LemmaPattern(
    "outer_mixed", 2, 3, (13, 14), "j1 e1 j2 e2 j3",
    ("e1", "e2", "e2m", "j1 e1", "e1 j2 e2", "e2 j3"),
    ("e1 j1 e1", "e2 j1 e1", "e2 j3 e1", "e2 j3 e2", "e2 j3 j1 e1", "e1 j1* j1 e1",
     "j1 e1 j1*", "e2 j2* e1 j2 e2", "e1 j2 e2 j2* e1", "j3* e2 j3", "e2 j3 j3* e2",
     "e1 j2 e2 - e1 j2 e2m", "e2 j3 - e2m j3"),
    (("e1", "e22+e55"), ("e2", "e33+e44"), ("e2m", "e33-e44"), ("j1 e1", "e12"),
     ("e1 j2 e2", "e23"), ("e2 j3", "e36"), ("j1 e1 j2 e2", "e13"),
     ("e1 j2 e2 j3", "e26"), ("j1 e1 j2 e2 j3", "e16"), ("e1 j1*", "e56"),
     ("e2 j2* e1", "e45"), ("j3* e2", "a*e14"), ("e2 j2* e1 j1*", "e46"),
     ("j3* e2 j2* e1", "a*e15")),
    needs_e2_minus=True,
))

# second hypothesis of the last pattern: the idempotents swap roles
OUTER_MIXED_2 = LemmaPattern(
    "outer_mixed", 2, 3, (13, 14), "j1 e2 j2 e1 j3",
    ("e1", "e2", "e2m", "j1 e2", "e2 j2 e1", "e1 j3"),
    ("e1 j1 e2", "e2 j1 e2", "e1 j3 e1", "e1 j3 e2", "e1 j3 j1 e2", "e2 j1* j1 e2",
     "j1 e2 j1*", "e1 j2* e2 j2 e1", "e2 j2 e1 j2* e2", "j3* e1 j3", "e1 j3 j3* e1",
     "e2 j2 e1 + e2m j2 e1", "j1 e2 + j1 e2m"),
    (("e1", "e22+e55"), ("e2", "e33+e44"), ("e2m", "e33-e44"), ("j1 e2", "e14"),
     ("e2 j2 e1", "e45"), ("e1 j3", "e56"), ("j1 e2 j2 e1", "e15"),
     ("e2 j2 e1 j3", "e46"), ("j1 e2 j2 e1 j3", "e16"), ("e2 j1*", "a*e36"),
     ("e1 j2* e2", "e23"), ("j3* e1", "e12"), ("e1 j2* e2 j1*", "a*e26"),
     ("j3* e1 j2* e2", "e13")),
    needs_e2_minus=True,
)


# -- word evaluation --------------------------------------------------------------------

def _eval_word(a: StarAlgebra, word: str, env: Mapping[str, Vector]) -> Vector:
    out = Vector.zero(a.dim)
    sign, acc = 1, None
    for tok in word.split() + ["+"]:
        if tok in "+-":
            if acc is not None:
                out = out + acc * sign
            sign, acc = (1 if tok == "+" else -1), None
            continue
        starred = tok.endswith("*")
        name = tok[:-1] if starred else tok
        if name not in env:
            raise LemmaError(f"unknown symbol {name!r} in {word!r}")
        v = a.star(env[name]) if starred else env[name]
        acc = v if acc is None else a.mul(acc, v)
    return out


def _target_element(t: StarAlgebra, text: str, alpha: int) -> Vector:
    if text.startswith("a*"):
        return parse_element(t, text[2:]) * alpha
    return parse_element(t, text)


# -- validation -------------------------------------------------------------------------

def idempotent_problems(a: StarAlgebra, es: Sequence[Vector], e2_minus: Vector | None = None) -> list[str]:
    out = []
    for i, e in enumerate(es, 1):
        if a.mul(e, e) != e:
            out.append(f"e{i} is not idempotent")
        if a.star(e) != e:
            out.append(f"e{i} is not symmetric")
    for (i, e), (k, f) in itertools.permutations(list(enumerate(es, 1)), 2):
        if not a.mul(e, f).is_zero():
            out.append(f"e{i} e{k} != 0")
    if e2_minus is not None:
        e2 = es[1]
        if a.star(e2_minus) != -e2_minus:
            out.append("e2^- is not skew")
        if a.mul(e2_minus, e2_minus) != e2:
            out.append("(e2^-)^2 != e2")
        if a.mul(e2, e2_minus) != e2_minus or a.mul(e2_minus, e2) != e2_minus:
            out.append("e2 does not act as identity on e2^-")
    return out


def sign_parts(a: StarAlgebra, j: Vector) -> list[Vector]:
    """Nonzero symmetric and skew parts of j, symmetric first."""
    s = a.star(j)
    half = Fraction(1, 2)
    return [v for v in ((j + s) * half, (j - s) * half) if not v.is_zero()]


# -- running a pattern ------------------------------------------------------------------

@dataclass
class LemmaReport:
    pattern: str
    branch: str                      # "dependent" or "independent"
    alpha: int
    target: str
    quotient: StarAlgebra | None
    iso: list[Vector]
    verified: bool
    quotient_dim: int
    js: list[Vector] = field(default_factory=list)
    iso_report: IsoReport | None = None
    hypothesis: str = ""

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "hypothesis": self.hypothesis,
            "branch": self.branch,
            "alpha": self.alpha,
            "target": self.target,
            "quotient_dim": self.quotient_dim,
            "verified": self.verified,
            "iso": [[[k, str(c)] for k, c in sorted(v.entries.items())] for v in self.iso],
        }


def _choose_js(a: StarAlgebra, pattern: LemmaPattern, env: dict, js: Sequence[Vector]):
    """First combination of homogeneous parts keeping the hypothesis nonzero."""
    options = [sign_parts(a, j) for j in js]
    for combo in itertools.product(*options):
        trial = dict(env)
        trial.update({f"j{i}": v for i, v in enumerate(combo, 1)})
        p = _eval_word(a, pattern.hypothesis, trial)
        if not p.is_zero():
            return trial, p
    return None, None


def run_lemma(pattern: LemmaPattern | str, a: StarAlgebra, idempotents: Sequence[Vector],
              js: Sequence[Vector], e2_minus: Vector | None = None,
              independent_sign: int = 1) -> LemmaReport:
    """Build B, I and B/I for the pattern and check the map onto its target.

    In the independent branch ``independent_sign`` +1 adds p - p* (first
    target), -1 adds p + p* (second target).
    """
    if isinstance(pattern, str):
        if pattern not in PATTERNS:
            raise LemmaError(f"unknown pattern {pattern!r}")
        pattern = PATTERNS[pattern]
    if len(idempotents) != pattern.idempotents or len(js) != pattern.js:
        raise LemmaError(f"{pattern.id} takes {pattern.idempotents} idempotents and {pattern.js} "
                         f"connecting elements, got {len(idempotents)} and {len(js)}")
    if pattern.needs_e2_minus and e2_minus is None:
        raise LemmaError(f"{pattern.id} needs e2_minus")
    problems = idempotent_problems(a, idempotents, e2_minus if pattern.needs_e2_minus else None)
    if problems:
        raise LemmaError("idempotent axioms fail: " + "; ".join(problems))
    env = {f"e{i}": e for i, e in enumerate(idempotents, 1)}
    if pattern.needs_e2_minus:
        env["e2m"] = e2_minus
    candidates = [pattern]
    if pattern.id == "outer_mixed" and pattern is not OUTER_MIXED_2:
        candidates.append(OUTER_MIXED_2)
    for pat in candidates:
        full, p = _choose_js(a, pat, env, js)
        if full is not None:
            return _construct(a, pat, full, p, independent_sign)
    raise LemmaError(f"hypothesis product {pattern.hypothesis} vanishes for every sign choice")


def _construct(a: StarAlgebra, pattern: LemmaPattern, env: dict, p: Vector,
               independent_sign: int) -> LemmaReport:
    ps = a.star(p)
    extra = []
    if ps == p:
        branch, alpha = "dependent", 1
    elif ps == -p:
        branch, alpha = "dependent", -1
    else:
        if independent_sign not in (1, -1):
            raise LemmaError("independent_sign must be +1 or -1")
        branch, alpha = "independent", independent_sign
        extra = [p - ps * independent_sign]
    gens = [_eval_word(a, w, env) for w in pattern.generators]
    b = star_subalgebra_closure(a, gens)
    ideal_gens = [_eval_word(a, w, env) for w in pattern.ideal] + extra
    ideal = star_ideal_closure(a, b, ideal_gens)
    q = quotient(a, b, ideal, name=f"B/I[{pattern.id}]")
    target_id = pattern.target_pair[0 if alpha == 1 else 1]
    target = indexed_algebra(target_id)
    if q.dim != target.dim:
        raise LemmaError(f"quotient has dimension {q.dim}, target A{target_id} has {target.dim}")
    reps = [q.project(_eval_word(a, w, env)) for w, _ in pattern.table]
    images = [_target_element(target, t, alpha) for _, t in pattern.table]
    try:
        solver = CoordinateSolver(reps)
    except ValueError:
        raise LemmaError("the representatives are linearly dependent modulo I") from None
    iso = []
    for i in range(q.dim):
        coords = solver.coords(Vector.unit(q.dim, i))
        img = Vector.zero(target.dim)
        for c, t in zip(coords, images):
            if c:
                img = img + t * c
        iso.append(img)
    report = check_star_isomorphism(q, target, iso)
    hyp = " ".join(pattern.hypothesis.split())
    return LemmaReport(pattern.id, branch, alpha, f"A{target_id}", q, iso, report.ok, q.dim,
                       [env[f"j{i}"] for i in range(1, pattern.js + 1)], report, hyp)


# -- canonical and synthetic instances ------------------------------------------------------

# pattern, algebra index, idempotents, js, e2_minus (matrix-unit text)
CANONICAL = [
    ("inner3", 5, ["e11+e66", "e22+e55", "e33+e44"], ["e12+e56", "e23+e45", "e36+e14"], None),
    ("inner3", 6, ["e11+e66", "e22+e55", "e33+e44"], ["e12+e56", "e23+e45", "e36-e14"], None),
    ("outer3", 7, ["e22+e77", "e33+e66", "e44+e55"], ["e12+e78", "e23+e67", "e34+e56", "e48+e15"], None),
    ("outer3", 8, ["e22+e77", "e33+e66", "e44+e55"], ["e12+e78", "e23+e67", "e34+e56", "e48-e15"], None),
    ("innerF_FF", 9, ["e11+e44", "e22+e33"], ["e12", "e24"], "e22-e33"),
    ("innerF_FF", 10, ["e11+e44", "e22+e33"], ["e12", "e24"], "e22-e33"),
    ("innerFF_F", 11, ["e22+e33", "e11+e44"], ["e13", "e34"], "e11-e44"),
    ("innerFF_F", 12, ["e22+e33", "e11+e44"], ["e13", "e34"], "e11-e44"),
    ("outer_mixed", 13, ["e22+e55", "e33+e44"], ["e12", "e23", "e36"], "e33-e44"),
    ("outer_mixed", 14, ["e22+e55", "e33+e44"], ["e12", "e23", "e36"], "e33-e44"),
]

# the second hypothesis of the last pattern (first hypothesis product vanishes here)
CANONICAL_SECOND = [
    ("outer_mixed", 13, ["e22+e55", "e33+e44"], ["e14", "e45", "e56"], "e33-e44"),
    ("outer_mixed", 14, ["e22+e55", "e33+e44"], ["e14", "e45", "e56"], "e33-e44"),
]


def canonical_instance(entry) -> tuple:
    pattern, i, es, js, em = entry
    a = indexed_algebra(i)
    return (pattern, a, [parse_element(a, e) for e in es], [parse_element(a, j) for j in js],
            parse_element(a, em) if em else None)


def run_canonical(entry) -> LemmaReport:
    return run_lemma(*canonical_instance(entry))


def synthetic_instance(pattern: str, second: bool = False) -> tuple:
    """The pattern's two canonical instances placed side by side in A_i (+) A_i+1.

    The hypothesis product is p_i + p_{i+1} with p_i* = p_i and p_{i+1}* = -p_{i+1},
    so p and p* are linearly independent.
    """
    table = CANONICAL_SECOND if second else CANONICAL
    first, other = [canonical_instance(e) for e in table if e[0] == pattern][:2]
    a, b = first[1], other[1]
    s = direct_sum(a, b, name=f"{a.name}+{b.name}")

    def glue(u: Vector, v: Vector) -> Vector:
        entries = dict(u.entries)
        entries.update({a.dim + k: c for k, c in v.entries.items()})
        return Vector(s.dim, entries)

    es = [glue(u, v) for u, v in zip(first[2], other[2])]
    js = [glue(u, v) for u, v in zip(first[3], other[3])]
    em = glue(first[4], other[4]) if first[4] is not None else None
    return pattern, s, es, js, em


# -- descriptor files --------------------------------------------------------------------

def run_descriptor(desc: Mapping, algebra_loader=None) -> LemmaReport:
    """Run an instantiation given as {pattern, algebra, idempotents, js, e2_minus?}."""
    for key in ("pattern", "algebra", "idempotents", "js"):
        if key not in desc:
            raise LemmaError(f"descriptor is missing {key!r}")
    name = desc["algebra"]
    if algebra_loader is not None:
        a = algebra_loader(name)
    else:
        from .catalog import resolve
        a = resolve(name)
    if not isinstance(a, StarAlgebra):
        raise LemmaError(f"{name} is not an algebra with involution")
    es = [parse_vector_spec(a, v) for v in desc["idempotents"]]
    js = [parse_vector_spec(a, v) for v in desc["js"]]
    em = parse_vector_spec(a, desc["e2_minus"]) if desc.get("e2_minus") is not None else None
    return run_lemma(desc["pattern"], a, es, js, em, int(desc.get("independent_sign", 1)))


def load_descriptor(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
