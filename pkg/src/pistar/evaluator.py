"""Identity / proper-central / noncentral classification of multilinear *-polynomials.

A polynomial is compiled into a small DAG of variables, binary products and
weighted sums (shared subterms are built once).  Substitution tuples are
enumerated depth-first, slot by slot; a node is evaluated as soon as all its
variables are assigned, and a subtree is skipped when the root is already
forced to vanish (a product with a zero factor, or a sum of such terms).
By multilinearity, running over basis tuples of A+ and A- is exhaustive.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import StarAlgebra
from .linalg import Vector, add_scaled
from .starpoly import (
    Commutator,
    Jordan,
    Product,
    SignedVar,
    StarPolynomial,
    Sum,
    Var,
    check_multilinear,
)

IDENTITY = "identity"
PROPER_CENTRAL = "proper_central"
NONCENTRAL = "noncentral"


class EvaluationError(ValueError):
    pass


Assignment = dict  # SignedVar -> Vector


@dataclass
class Verdict:
    status: str
    witness: Assignment | None = None
    value: Vector | None = None
    tuples_checked: int = 0
    substitution: str = "basis"
    slots: tuple = field(default_factory=tuple)

    @property
    def is_identity(self) -> bool:
        return self.status == IDENTITY

    @property
    def is_central(self) -> bool:
        return self.status != NONCENTRAL


# -- direct evaluation -------------------------------------------------------------

def evaluate(p: StarPolynomial, a: StarAlgebra, s: Mapping[SignedVar, Vector],
             check_signs: bool = True) -> Vector:
    """Sum over monomials of coefficient times the ordered product of values."""
    ok, slots = check_multilinear(p)
    if not ok:
        raise EvaluationError("polynomial is not multilinear")
    for v in slots:
        if v not in s:
            raise EvaluationError(f"no value for slot {v}")
        if check_signs and not a.sign_space(v.sign).member(s[v]):
            raise EvaluationError(f"value for {v} is not in A{v.sign}")
    return evaluate_unchecked(p, a, s)


def evaluate_unchecked(p: StarPolynomial, a: StarAlgebra, s: Mapping[SignedVar, Vector]) -> Vector:
    """Evaluate without multilinearity or sign checks (used for raw witness claims)."""
    out: dict = {}
    mul = a.alg.mul_raw
    for mono, c in p.terms.items():
        acc = dict(s[mono[0]].entries)
        for v in mono[1:]:
            if not acc:
                break
            acc = mul(acc, s[v].entries)
        if acc:
            add_scaled(out, acc, c)
    return Vector(a.dim, out)


# -- compiled plans ------------------------------------------------------------------

class Plan:
    """DAG over slots: ('var', slot) | ('mul', left, right) | ('sum', ((c, child), ...))."""

    def __init__(self, p: StarPolynomial, slots: Sequence[SignedVar]):
        self.slots = tuple(slots)
        self.slot_pos = {v: i for i, v in enumerate(self.slots)}
        self.nodes: list[tuple] = []
        self._memo: dict = {}
        if p.ast is not None and _ast_matches(p):
            self.root = self._build_ast(p.ast)
        else:
            self.root = self._build_terms(p)
        self.ready = [0] * len(self.nodes)
        for idx, node in enumerate(self.nodes):
            if node[0] == "var":
                self.ready[idx] = node[1]
            elif node[0] == "mul":
                self.ready[idx] = max(self.ready[node[1]], self.ready[node[2]])
            else:
                self.ready[idx] = max((self.ready[c] for _, c in node[1]), default=-1)
        self.by_depth: list[list[int]] = [[] for _ in self.slots]
        for idx in range(len(self.nodes)):
            if self.ready[idx] >= 0:
                self.by_depth[self.ready[idx]].append(idx)

    def _add(self, node: tuple) -> int:
        idx = self._memo.get(node)
        if idx is None:
            idx = len(self.nodes)
            self.nodes.append(node)
            self._memo[node] = idx
        return idx

    def _mul_chain(self, parts: Sequence[int]) -> int:
        acc = parts[0]
        for nxt in parts[1:]:
            acc = self._add(("mul", acc, nxt))
        return acc

    def _build_terms(self, p: StarPolynomial) -> int:
        terms = []
        for mono, c in p.sorted_terms():
            leaves = [self._add(("var", self.slot_pos[v])) for v in mono]
            terms.append((c, self._mul_chain(leaves)))
        return self._add(("sum", tuple(terms)))

    def _build_ast(self, node) -> int:
        if isinstance(node, Var):
            return self._add(("var", self.slot_pos[node.var]))
        if isinstance(node, Product):
            return self._mul_chain([self._build_ast(f) for f in node.factors])
        if isinstance(node, Commutator):
            acc = self._build_ast(node.args[0])
            for arg in node.args[1:]:
                b = self._build_ast(arg)
                acc = self._add(("sum", ((1, self._add(("mul", acc, b))),
                                         (-1, self._add(("mul", b, acc))))))
            return acc
        if isinstance(node, Jordan):
            x, y = self._build_ast(node.left), self._build_ast(node.right)
            return self._add(("sum", ((1, self._add(("mul", x, y))),
                                      (1, self._add(("mul", y, x))))))
        if isinstance(node, Sum):
            return self._add(("sum", tuple((c, self._build_ast(t)) for c, t in node.terms)))
        raise TypeError(f"not a polynomial node: {node!r}")


def _ast_matches(p: StarPolynomial) -> bool:
    from .starpoly import _expand
    return _expand(p.ast).terms == p.terms


# -- enumeration -------------------------------------------------------------------

def _candidates(a: StarAlgebra, slots: Sequence[SignedVar], substitution: str) -> list[list[Vector]]:
    if substitution == "regular":
        from .grassmann import regular_substitution_set
        return regular_substitution_set(a, [v.sign for v in slots])
    return [a.sign_space(v.sign).basis() for v in slots]


def choose_substitution(a: StarAlgebra, nslots: int, substitution: str | None) -> str:
    if substitution is not None:
        return substitution
    if a.envelope is not None:
        if nslots > a.envelope.k:
            raise EvaluationError(
                f"{nslots} slots need a Grassmann truncation with k >= {nslots} (have k={a.envelope.k})")
        return "regular"
    return "basis"


class _Search:
    def __init__(self, plan: Plan, a: StarAlgebra, cands: list[list[dict]], center,
                 stop_on_nonzero: bool = False):
        self.plan = plan
        self.stop_on_nonzero = stop_on_nonzero
        self.mul = a.alg.mul_raw
        self.cands = cands
        self.center = center
        self.dim = a.dim
        self.values: list = [None] * len(plan.nodes)
        self.count = 0
        self.noncentral = None   # (indices, value)
        self.nonzero = None

    def _compute(self, idx: int):
        node = self.plan.nodes[idx]
        vals = self.values
        if node[0] == "mul":
            left, right = vals[node[1]], vals[node[2]]
            vals[idx] = self.mul(left, right) if left and right else {}
        elif node[0] == "sum":
            out: dict = {}
            for c, child in node[1]:
                if vals[child]:
                    add_scaled(out, vals[child], c)
            vals[idx] = out

    def _forced_zero(self, idx: int) -> bool:
        val = self.values[idx]
        if val is not None:
            return not val
        node = self.plan.nodes[idx]
        if node[0] == "mul":
            return self._forced_zero(node[1]) or self._forced_zero(node[2])
        if node[0] == "sum":
            return all(self._forced_zero(c) for _, c in node[1])
        return False

    def run(self, first_range=None) -> None:
        chosen = [0] * len(self.cands)
        self._descend(0, chosen, first_range)

    def _descend(self, depth: int, chosen: list, first_range) -> bool:
        plan = self.plan
        nodes = plan.by_depth[depth]
        rng = range(len(self.cands[depth])) if (depth or first_range is None) else first_range
        last = depth == len(self.cands) - 1
        for ci in rng:
            chosen[depth] = ci
            cand = self.cands[depth][ci]
            for idx in nodes:
                if plan.nodes[idx][0] == "var":
                    self.values[idx] = cand
                else:
                    self._compute(idx)
            if last:
                self.count += 1
                val = self.values[plan.root]
                if val:
                    vec = Vector._raw(self.dim, dict(val))
                    if not self.center.member(vec):
                        self.noncentral = (tuple(chosen), vec)
                        self._clear(nodes)
                        return True
                    if self.nonzero is None:
                        self.nonzero = (tuple(chosen), vec)
                        if self.stop_on_nonzero:
                            self._clear(nodes)
                            return True
            elif not self._forced_zero(plan.root):
                if self._descend(depth + 1, chosen, None):
                    self._clear(nodes)
                    return True
        self._clear(nodes)
        return False

    def _clear(self, nodes):
        for idx in nodes:
            self.values[idx] = None


def _run_shard(args):
    p, a, substitution, first_range = args
    plan, cands, center = _prepare(p, a, substitution)
    search = _Search(plan, a, cands, center)
    search.run(first_range)
    return search.noncentral, search.nonzero, search.count


def _prepare(p: StarPolynomial, a: StarAlgebra, substitution: str):
    ok, slots = check_multilinear(p)
    if not ok:
        raise EvaluationError("polynomial is not multilinear; multilinearize it first")
    plan = Plan(p, slots)
    cands = [[dict(v.entries) for v in lst] for lst in _candidates(a, slots, substitution)]
    return plan, cands, a.center


def classify(p: StarPolynomial, a: StarAlgebra, substitution: str | None = None,
             workers: int = 1) -> Verdict:
    """Exhaustive trichotomy over basis (or regular) substitutions.

    ``substitution`` is "basis", "regular" (envelopes), or None to pick
    automatically.  ``workers > 1`` shards the first slot across processes;
    the reported witness is the first one in enumeration order either way.
    """
    ok, slots = check_multilinear(p)
    if not ok:
        raise EvaluationError("polynomial is not multilinear; multilinearize it first")
    substitution = choose_substitution(a, len(slots), substitution)
    if not slots:
        return Verdict(IDENTITY, substitution=substitution)
    plan, cands, center = _prepare(p, a, substitution)
    n_first = len(cands[0])
    if workers > 1 and n_first > 1:
        shards = [range(i, i + 1) for i in range(n_first)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_shard, [(p, a, substitution, r) for r in shards]))
        noncentral = next((r[0] for r in results if r[0] is not None), None)
        nonzero = next((r[1] for r in results if r[1] is not None), None)
        count = sum(r[2] for r in results)
    else:
        search = _Search(plan, a, cands, center)
        search.run()
        noncentral, nonzero, count = search.noncentral, search.nonzero, search.count
    raw = _candidates(a, slots, substitution)

    def assignment(indices):
        return {v: raw[d][i] for d, (v, i) in enumerate(zip(slots, indices))}

    if noncentral is not None:
        return Verdict(NONCENTRAL, assignment(noncentral[0]), noncentral[1], count, substitution, slots)
    if nonzero is not None:
        return Verdict(PROPER_CENTRAL, assignment(nonzero[0]), nonzero[1], count, substitution, slots)
    return Verdict(IDENTITY, None, None, count, substitution, slots)


def first_nonzero(p: StarPolynomial, a: StarAlgebra, candidates: Sequence[Sequence[Vector]]):
    """First tuple (in enumeration order) over the given per-slot candidates
    on which ``p`` is nonzero; returns (assignment, value) or None."""
    ok, slots = check_multilinear(p)
    if not ok:
        raise EvaluationError("polynomial is not multilinear")
    if len(candidates) != len(slots):
        raise EvaluationError("one candidate list per slot is required")
    plan = Plan(p, slots)
    cands = [[dict(v.entries) for v in lst] for lst in candidates]
    if any(not c for c in cands):
        return None
    from .linalg import Subspace
    search = _Search(plan, a, cands, Subspace.full(a.dim), stop_on_nonzero=True)
    search.run()
    if search.nonzero is None:
        return None
    idx, value = search.nonzero
    return {v: candidates[d][i] for d, (v, i) in enumerate(zip(slots, idx))}, value


def is_identity(p: StarPolynomial, a: StarAlgebra, **kw) -> bool:
    return classify(p, a, **kw).status == IDENTITY


def is_central(p: StarPolynomial, a: StarAlgebra, **kw) -> bool:
    return classify(p, a, **kw).status != NONCENTRAL


def default_workers() -> int:
    return os.cpu_count() or 1
