"""Machine-readable ledger of concrete assertions and the runner that re-checks them.

The ledger is a JSON array of claim objects (see ``Claim``).  Every claim is
dispatched to the evaluator, codimension, exponent, lemma or algebra layer
and gets one of the statuses below; failures carry the evidence.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .catalog import envelope_wedderburn, indexed_algebra, parse_element, resolve, wedderburn_data
from .codim import codimensions
from .evaluator import IDENTITY, PROPER_CENTRAL, classify, evaluate_unchecked
from .exponent import exp_star, is_admissible, indexed_report
from .lemma_lab import CANONICAL, CANONICAL_SECOND, run_canonical, run_lemma, synthetic_instance
from .linalg import Subspace
from .starpoly import ParseError, SignedVar, check_multilinear, poly

VERIFIED = "verified"
REFUTED = "refuted"
RESOLVED = "ambiguous_resolved"
UNRESOLVED = "ambiguous_unresolved"
SKIPPED = "skipped"

KINDS = ("identity_member", "identity_nonmember", "central_proper", "center_equals",
         "witness_value", "dimension", "exp_star", "exp_delta_confirmed",
         "lemma_construction", "codim_value")


@dataclass
class Claim:
    id: str
    kind: str
    algebras: list[str]
    payload: dict
    provenance: str
    readings: list[str] = field(default_factory=list)
    grassmann_k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"claim {self.id}: unknown kind {self.kind!r}")

    @classmethod
    def from_json(cls, data: dict) -> "Claim":
        return cls(id=data["id"], kind=data["kind"], algebras=list(data.get("algebras", [])),
                   payload=dict(data.get("payload", {})), provenance=data.get("provenance", ""),
                   readings=list(data.get("readings", [])), grassmann_k=data.get("grassmann_k"))

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ClaimResult:
    id: str
    status: str
    detail: str = ""
    reading: str | None = None
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def load_claims(path: str) -> list[Claim]:
    with open(path, encoding="utf-8") as fh:
        return [Claim.from_json(c) for c in json.load(fh)]


def dump_claims(claims: Iterable[Claim], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([c.to_json() for c in claims], fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def builtin_ledger() -> list[Claim]:
    text = resources.files("pistar").joinpath("data/ledger.json").read_text(encoding="utf-8")
    return [Claim.from_json(c) for c in json.loads(text)]


# -- algebra lookup ----------------------------------------------------------------------

def _index(name: str) -> int | None:
    return int(name[1:]) if name.startswith("A") and name[1:].isdigit() else None


def _algebra(name: str, nslots: int = 0, k: int | None = None):
    i = _index(name)
    if i in (3, 4):
        return indexed_algebra(i, max(k or 0, nslots, 1))
    return resolve(name)


def _classify(text: str, name: str, k: int | None):
    p = poly(text)
    ok, slots = check_multilinear(p)
    if not ok:
        raise ValueError(f"{text} is not multilinear")
    a = _algebra(name, len(slots), k)
    return classify(p, a), a


def _fmt_witness(verdict, a) -> dict:
    if verdict.witness is None:
        return {}
    return {"assignment": {str(v): a.format_vector(x) for v, x in sorted(verdict.witness.items())},
            "value": a.format_vector(verdict.value)}


# -- per-kind checks -----------------------------------------------------------------------
# each returns (ok, detail, evidence)

def _membership(text: str, members: Sequence[str], nonmembers: Sequence[str], k):
    evidence, bad = {}, []
    for name in members:
        verdict, a = _classify(text, name, k)
        evidence[name] = verdict.status
        if verdict.status != IDENTITY:
            bad.append(f"not an identity of {name}")
            evidence[name + ":witness"] = _fmt_witness(verdict, a)
    for name in nonmembers:
        verdict, _ = _classify(text, name, k)
        evidence[name] = verdict.status
        if verdict.status == IDENTITY:
            bad.append(f"is an identity of {name}")
    return not bad, "; ".join(bad), evidence


def _check_membership(c: Claim, text: str):
    members = c.payload.get("members", c.algebras if c.kind == "identity_member" else [])
    nonmembers = c.payload.get("nonmembers", c.algebras if c.kind == "identity_nonmember" else [])
    return _membership(text, members, nonmembers, c.grassmann_k)


def _check_central(c: Claim, text: str):
    evidence, bad = {}, []
    for name in c.algebras:
        verdict, a = _classify(text, name, c.grassmann_k)
        evidence[name] = verdict.status
        if verdict.status != PROPER_CENTRAL:
            bad.append(f"{verdict.status} on {name}")
            evidence[name + ":witness"] = _fmt_witness(verdict, a)
    return not bad, "; ".join(bad), evidence


def _check_center(c: Claim):
    evidence, bad = {}, []
    for name in c.algebras:
        a = _algebra(name, k=c.grassmann_k)
        expected = Subspace.span(a.dim, [parse_element(a, t) for t in c.payload["basis"]])
        got = a.center
        evidence[name] = [a.format_vector(v) for v in got.basis()]
        if not (expected.contains(got) and got.contains(expected)):
            bad.append(f"center of {name} has dimension {got.dim}, expected span of {c.payload['basis']}")
    return not bad, "; ".join(bad), evidence


def _check_witness(c: Claim):
    name = c.algebras[0]
    a = _algebra(name, k=c.grassmann_k)
    p = poly(c.payload["poly"])
    s = {SignedVar(int(k[1:-1]), k[-1]): parse_element(a, v)
         for k, v in c.payload["assignment"].items()}
    value = evaluate_unchecked(p, a, s)
    expected = parse_element(a, c.payload["expected"])
    got = a.format_vector(value)
    ok = value == expected
    return ok, "" if ok else f"evaluates to {got}, expected {c.payload['expected']}", {"value": got}


def _check_dimension(c: Claim):
    bad, evidence = [], {}
    for name in c.algebras:
        a = _algebra(name, k=c.grassmann_k)
        evidence[name] = a.dim
        if a.dim != c.payload["value"]:
            bad.append(f"{name} has dimension {a.dim}")
    return not bad, "; ".join(bad), evidence


def _datum(name: str, k):
    i = _index(name)
    if i in (3, 4):
        return envelope_wedderburn(i, k or 3)
    return wedderburn_data(i)


def _check_exp_star(c: Claim):
    bad, evidence = [], {}
    for name in c.algebras:
        d = _datum(name, c.grassmann_k)
        value, best = exp_star(d)
        evidence[name] = {"exp_star": value, "best": list(best)}
        if value != c.payload["value"]:
            bad.append(f"exp* of {name} is {value}")
        subset = c.payload.get("subset")
        if subset is not None:
            ok, order = is_admissible(d, subset)
            evidence[name]["ordering"] = list(order) if order else None
            if not ok:
                bad.append(f"{subset} is not admissible in {name}")
    return not bad, "; ".join(bad), evidence


def _check_exp_delta(c: Claim):
    bad, evidence = [], {}
    for name in c.algebras:
        r = indexed_report(_index(name), c.grassmann_k)
        evidence[name] = {"lower": r.exp_delta_lower, "upper": r.exp_delta_upper,
                          "confirmed": r.confirmed, "notes": r.notes}
        if not (r.confirmed and r.exp_delta_lower == c.payload["value"]):
            bad.append(f"{name}: interval [{r.exp_delta_lower}, {r.exp_delta_upper}] "
                       f"not closed at {c.payload['value']}")
    return not bad, "; ".join(bad), evidence


def _check_lemma(c: Claim):
    pl = c.payload
    if pl.get("synthetic"):
        r = run_lemma(*synthetic_instance(pl["pattern"], pl.get("case", 1) == 2),
                      independent_sign=pl.get("sign", 1))
    else:
        table = CANONICAL_SECOND if pl.get("case", 1) == 2 else CANONICAL
        entry = next(e for e in table if e[0] == pl["pattern"] and f"A{e[1]}" == c.algebras[0])
        r = run_canonical(entry)
    evidence = {"branch": r.branch, "alpha": r.alpha, "target": r.target,
                "quotient_dim": r.quotient_dim, "hypothesis": r.hypothesis}
    bad = []
    if not r.verified:
        bad.append(f"iso check failed: {r.iso_report.counterexample}")
    if r.target != pl["target"]:
        bad.append(f"target {r.target}, expected {pl['target']}")
    if r.quotient_dim != pl["quotient_dim"]:
        bad.append(f"quotient dimension {r.quotient_dim}, expected {pl['quotient_dim']}")
    return not bad, "; ".join(bad), evidence


def _check_codim(c: Claim):
    bad, evidence = [], {}
    pl = c.payload
    for name in c.algebras:
        a = _algebra(name, pl["n"], c.grassmann_k)
        r = codimensions(a, pl["n"])
        evidence[name] = r.to_json()
        for key in ("c_star", "c_z", "c_delta"):
            if key in pl and getattr(r, key) != pl[key]:
                bad.append(f"{name}: {key} = {getattr(r, key)}, expected {pl[key]}")
    return not bad, "; ".join(bad), evidence


_POLY_KINDS = {"identity_member": _check_membership, "identity_nonmember": _check_membership,
               "central_proper": _check_central}
_OTHER_KINDS = {"center_equals": _check_center, "witness_value": _check_witness,
                "dimension": _check_dimension, "exp_star": _check_exp_star,
                "exp_delta_confirmed": _check_exp_delta, "lemma_construction": _check_lemma,
                "codim_value": _check_codim}


def run_claim(c: Claim) -> ClaimResult:
    try:
        if c.kind in _OTHER_KINDS:
            ok, detail, ev = _OTHER_KINDS[c.kind](c)
            return ClaimResult(c.id, VERIFIED if ok else REFUTED, detail, None, ev)
        check = _POLY_KINDS[c.kind]
        text = c.payload["poly"]
        if not c.readings:
            ok, detail, ev = check(c, text)
            return ClaimResult(c.id, VERIFIED if ok else REFUTED, detail, None, ev)
        tried = {}
        for reading in c.readings:
            ok, detail, ev = check(c, reading)
            tried[reading] = {"ok": ok, "detail": detail, "evidence": ev}
            if ok:
                return ClaimResult(c.id, RESOLVED, f"holds under reading {reading}", reading, tried)
        return ClaimResult(c.id, UNRESOLVED, "no shipped reading makes the whole bullet hold",
                           None, tried)
    except (ParseError, ValueError) as exc:
        return ClaimResult(c.id, REFUTED, f"error: {exc}", None, {})


@dataclass
class ClaimsReport:
    results: list[ClaimResult]

    @property
    def summary(self) -> dict:
        counts = {s: 0 for s in (VERIFIED, REFUTED, RESOLVED, UNRESOLVED, SKIPPED)}
        for r in self.results:
            counts[r.status] += 1
        counts["total"] = len(self.results)
        return counts

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s[REFUTED]:
            return 1
        if s[UNRESOLVED]:
            return 3
        return 0

    def to_json(self) -> dict:
        return {"summary": self.summary, "results": [r.to_json() for r in self.results]}

    def table(self) -> str:
        width = max((len(r.id) for r in self.results), default=2)
        lines = []
        for r in self.results:
            extra = f"  [{r.reading}]" if r.reading else ""
            detail = f"  {r.detail}" if r.detail and r.status != RESOLVED else ""
            lines.append(f"{r.id:<{width}}  {r.status}{extra}{detail}")
        s = self.summary
        lines.append(", ".join(f"{k}={v}" for k, v in s.items()))
        return "\n".join(lines)


def run_claims(claims: Sequence[Claim], only: Iterable[str] | None = None,
               workers: int = 1) -> ClaimsReport:
    """Run every claim (or the ``only`` subset; the rest are reported skipped)."""
    wanted = set(only) if only else None
    if wanted is not None:
        unknown = wanted - {c.id for c in claims}
        if unknown:
            raise KeyError(f"unknown claim ids: {sorted(unknown)}")
    todo = [c for c in claims if wanted is None or c.id in wanted]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = dict(zip((c.id for c in todo), pool.map(run_claim, todo)))
    else:
        done = {c.id: run_claim(c) for c in todo}
    results = [done.get(c.id) or ClaimResult(c.id, SKIPPED) for c in claims]
    results.sort(key=lambda r: r.id)
    return ClaimsReport(results)
