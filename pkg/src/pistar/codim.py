"""*-codimensions as ranks of evaluation matrices on P*_n.

Rows are the 2^n n! monomials of P*_n.  A monomial word carries a sign
pattern (the sign of each variable index), and substitutions only mix rows
with the same pattern, so the matrix is block diagonal.  Each block is
ranked on its own and the ranks add up.
"""
from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .algebra import StarAlgebra
from .evaluator import _candidates, choose_substitution
from .linalg import DEFAULT_PRIME, RankAccumulator, Subspace, Vector, rank_modp_then_certify
from .starpoly import SignedVar, StarPolynomial

DEFAULT_ROW_CAP = 400
MODES = ("exact", "modular", "modular-certified")


class RowCapExceeded(ValueError):
    pass


@dataclass
class CodimResult:
    n: int
    c_star: int
    c_z: int
    c_delta: int
    mode: str
    algebra: str | None = None
    wall_time_ms: int = 0

    def to_json(self) -> dict:
        return asdict(self)


def row_cap() -> int:
    env = os.environ.get("PISTAR_ROW_CAP")
    return int(env) if env else DEFAULT_ROW_CAP


def sign_patterns(n: int) -> list[tuple[str, ...]]:
    """All sign patterns in binary order, "+" as 0 and x1 as the high bit."""
    return [tuple("-" if b else "+" for b in bits) for bits in itertools.product((0, 1), repeat=n)]


def pn_basis(n: int) -> list[tuple[SignedVar, ...]]:
    """Monomials of P*_n, grouped by sign pattern then by permutation."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    out = []
    for pattern in sign_patterns(n):
        out.extend(_block_rows(n, pattern))
    return out


def _block_rows(n: int, pattern) -> list[tuple[SignedVar, ...]]:
    return [tuple(SignedVar(i, pattern[i - 1]) for i in perm)
            for perm in itertools.permutations(range(1, n + 1))]


def _block_columns(a: StarAlgebra, n: int, pattern, substitution: str, project):
    """Zero-argument factory streaming the block's columns.

    Column (tuple, m) holds coordinate m of each row monomial evaluated on the tuple.
    """
    slots = [SignedVar(i, pattern[i - 1]) for i in range(1, n + 1)]
    cands = [[dict(v.entries) for v in lst] for lst in _candidates(a, slots, substitution)]
    perms = list(itertools.permutations(range(n)))
    mul = a.alg.mul_raw
    nrows = len(perms)

    def stream():
        for tup in itertools.product(*cands):
            coords: dict = {}
            for r, perm in enumerate(perms):
                acc = tup[perm[0]]
                for j in perm[1:]:
                    if not acc:
                        break
                    acc = mul(acc, tup[j])
                if acc:
                    if project is not None:
                        acc = project(acc)
                    for m, c in acc.items():
                        coords.setdefault(m, {})[r] = c
            for m in sorted(coords):
                yield Vector._raw(nrows, coords[m])

    return stream


def _projector(a: StarAlgebra):
    center = a.center
    if center.dim == 0:
        return None

    def project(entries: dict) -> dict:
        return center.reduce(Vector._raw(a.dim, dict(entries))).entries

    return project


def _rank(stream, nrows: int, mode: str, prime: int) -> tuple[int, bool]:
    if mode == "exact":
        acc = RankAccumulator(nrows)
        for col in stream():
            acc.insert(col)
            if acc.rank == nrows:
                break
        return acc.rank, True
    return rank_modp_then_certify(stream, prime=prime, certify=(mode == "modular-certified"),
                                  bound=nrows)


def _block_ranks(args) -> tuple[int, int, bool]:
    a, n, pattern, substitution, mode, prime = args
    nrows = math.factorial(n)
    star, ok1 = _rank(_block_columns(a, n, pattern, substitution, None), nrows, mode, prime)
    proj = _projector(a)
    if proj is None:
        z, ok2 = star, ok1
    else:
        z, ok2 = _rank(_block_columns(a, n, pattern, substitution, proj), nrows, mode, prime)
    return star, z, ok1 and ok2


def codimensions(a: StarAlgebra, n: int, mode: str = "exact", prime: int = DEFAULT_PRIME,
                 cap: int | None = None, workers: int = 1) -> CodimResult:
    if n < 1:
        raise ValueError("degree must be at least 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    rows = 2 ** n * math.factorial(n)
    limit = row_cap() if cap is None else cap
    if rows > limit:
        raise RowCapExceeded(f"P*_{n} has {rows} rows, above the cap {limit}; "
                             "raise it with PISTAR_ROW_CAP or an explicit cap")
    start = time.perf_counter()
    substitution = choose_substitution(a, n, None)
    jobs = [(a, n, pat, substitution, mode, prime) for pat in sign_patterns(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_ranks, jobs))
    else:
        results = [_block_ranks(j) for j in jobs]
    c_star = sum(r[0] for r in results)
    c_z = sum(r[1] for r in results)
    label = "modular-uncertified" if mode == "modular" else mode
    elapsed = int((time.perf_counter() - start) * 1000)
    return CodimResult(n, c_star, c_z, c_star - c_z, label, a.name, elapsed)


def left_kernel(a: StarAlgebra, n: int, central: bool = False) -> Subspace:
    """Coefficient vectors (in pn_basis order) of the identities (or central
    polynomials) of degree n: the left kernel of the evaluation matrix."""
    substitution = choose_substitution(a, n, None)
    total = 2 ** n * math.factorial(n)
    nrows = math.factorial(n)
    rows = []
    for b, pattern in enumerate(sign_patterns(n)):
        proj = _projector(a) if central else None
        cols = list(_block_columns(a, n, pattern, substitution, proj)())
        kernel = Subspace.span(nrows, cols).orthogonal_complement()
        off = b * nrows
        for r in kernel.rows:
            rows.append(Vector(total, {off + k: c for k, c in r.entries.items()}))
    return Subspace.span(total, rows)


def coefficient_vector(p: StarPolynomial, n: int) -> Vector:
    index = {m: i for i, m in enumerate(pn_basis(n))}
    entries = {}
    for mono, c in p.terms.items():
        if mono not in index:
            raise ValueError(f"monomial {mono} is not in P*_{n}")
        entries[index[mono]] = c
    return Vector(len(index), entries)
