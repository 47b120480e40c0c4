"""Exact sparse linear algebra over Q, with a modular fast path for ranks.

Vectors are sparse maps ``index -> rational``; scalars are ``int`` or
``fractions.Fraction`` (both are exact, and mix freely).  Subspaces are kept
in reduced row-echelon form so that equality, membership and coordinates are
cheap.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

DEFAULT_PRIME = 2147483647
MIN_PRIME = 1 << 20

Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Raised when vectors or subspaces of different ambient dimension meet."""


def rational(value) -> Scalar:
    """Coerce ``value`` (int, Fraction, or a ``"p/q"`` string) to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rational(Fraction(value.strip()))
    if isinstance(value, Rational):
        return rational(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(c: Scalar) -> str:
    c = rational(c)
    return str(c)


class Vector:
    """Sparse vector of fixed length; zero entries are never stored."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[int, object] | None = None):
        clean: dict[int, Scalar] = {}
        if entries:
            for k, c in entries.items():
                if not 0 <= k < dim:
                    raise DimensionError(f"index {k} outside dimension {dim}")
                c = rational(c)
                if c:
                    clean[k] = c
        self.dim = dim
        self.entries = clean

    @classmethod
    def _raw(cls, dim: int, entries: dict) -> "Vector":
        # trusted constructor: entries already exact and nonzero
        v = object.__new__(cls)
        v.dim = dim
        v.entries = entries
        return v

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls._raw(dim, {})

    @classmethod
    def unit(cls, dim: int, i: int) -> "Vector":
        if not 0 <= i < dim:
            raise DimensionError(f"index {i} outside dimension {dim}")
        return cls._raw(dim, {i: 1})

    @classmethod
    def from_dense(cls, values: Sequence) -> "Vector":
        return cls(len(values), {i: c for i, c in enumerate(values)})

    def to_dense(self) -> list[Scalar]:
        out: list[Scalar] = [0] * self.dim
        for k, c in self.entries.items():
            out[k] = c
        return out

    def _check(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._raw(self.dim, add_scaled(dict(self.entries), other.entries, 1))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._raw(self.dim, add_scaled(dict(self.entries), other.entries, -1))

    def __neg__(self) -> "Vector":
        return Vector._raw(self.dim, {k: -c for k, c in self.entries.items()})

    def __mul__(self, scalar) -> "Vector":
        s = rational(scalar)
        if not s:
            return Vector.zero(self.dim)
        return Vector._raw(self.dim, {k: _norm(c * s) for k, c in self.entries.items()})

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> Scalar:
        return self.entries.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.entries.items())))

    def support(self) -> list[int]:
        return sorted(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.items())
        return f"Vector({self.dim}, {{{body}}})"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def add_scaled(target: dict, source: Mapping, scale) -> dict:
    """In place ``target += scale * source`` on raw sparse dicts; returns target."""
    for k, c in source.items():
        v = target.get(k, 0) + scale * c
        if v:
            target[k] = _norm(v)
        else:
            target.pop(k, None)
    return target


def _mod_entries(entries: Mapping, p: int) -> dict:
    out = {}
    for k, c in entries.items():
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} not invertible mod {p}")
            r = c.numerator * pow(c.denominator, -1, p) % p
        else:
            r = c % p
        if r:
            out[k] = r
    return out


class RankAccumulator:
    """Incremental echelon basis.  ``prime=None`` means exact arithmetic.

    Rows are stored keyed by pivot (their smallest index) with pivot entry 1.
    This semi-echelon form is enough for rank and membership; ``subspace()``
    back-substitutes into full RREF when needed.
    """

    def __init__(self, ambient_dim: int, prime: int | None = None):
        if prime is not None and prime < MIN_PRIME:
            raise ValueError(f"prime {prime} too small (need > 2^20)")
        self.ambient_dim = ambient_dim
        self.prime = prime
        self._rows: dict[int, dict] = {}

    @property
    def mode(self) -> str:
        return "exact" if self.prime is None else f"modular({self.prime})"

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _prepare(self, v) -> dict:
        if isinstance(v, Vector):
            if v.dim != self.ambient_dim:
                raise DimensionError(f"dimension mismatch: {v.dim} vs {self.ambient_dim}")
            entries = v.entries
        else:
            entries = v
        if self.prime is None:
            return dict(entries)
        return _mod_entries(entries, self.prime)

    def _reduce_leading(self, w: dict) -> dict:
        rows = self._rows
        p = self.prime
        while w:
            k = min(w)
            row = rows.get(k)
            if row is None:
                return w
            c = w[k]
            if p is None:
                add_scaled(w, row, -c)
            else:
                for j, r in row.items():
                    val = (w.get(j, 0) - c * r) % p
                    if val:
                        w[j] = val
                    else:
                        w.pop(j, None)
        return w

    def insert(self, v) -> bool:
        """Absorb ``v``; return True iff it was outside the current span."""
        w = self._reduce_leading(self._prepare(v))
        if not w:
            return False
        k = min(w)
        c = w[k]
        if self.prime is None:
            inv = Fraction(1) / c
            w = {j: _norm(x * inv) for j, x in w.items()}
        else:
            inv = pow(c, -1, self.prime)
            w = {j: x * inv % self.prime for j, x in w.items()}
        self._rows[k] = w
        return True

    def contains(self, v) -> bool:
        return not self._reduce_leading(self._prepare(v))

    def subspace(self) -> "Subspace":
        if self.prime is not None:
            raise ValueError("modular accumulators have no rational subspace")
        return Subspace._from_echelon(self.ambient_dim, self._rows)


def rref_insert(acc: RankAccumulator, v: Vector) -> tuple[RankAccumulator, bool]:
    increased = acc.insert(v)
    return acc, increased


class Subspace:
    """A linear subspace of Q^n stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "rows", "_pivots")

    def __init__(self, ambient_dim: int, rows: Sequence[Vector] = ()):
        # rows must already be RREF; use ``Subspace.span`` for arbitrary input
        self.ambient_dim = ambient_dim
        self.rows = tuple(rows)
        self._pivots = tuple(min(r.entries) for r in self.rows)

    @classmethod
    def _from_echelon(cls, dim: int, rows: Mapping[int, dict]) -> "Subspace":
        pivots = sorted(rows)
        reduced: dict[int, dict] = {}
        for k in reversed(pivots):
            w = dict(rows[k])
            for j in [j for j in w if j != k and j in reduced]:
                c = w.get(j)
                if c:
                    add_scaled(w, reduced[j], -c)
            reduced[k] = w
        return cls(dim, [Vector._raw(dim, reduced[k]) for k in pivots])

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Vector]) -> "Subspace":
        acc = RankAccumulator(dim)
        for v in vectors:
            acc.insert(v)
        return acc.subspace()

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, [Vector.unit(dim, i) for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def basis(self) -> list[Vector]:
        return list(self.rows)

    def _check(self, v_dim: int) -> None:
        if v_dim != self.ambient_dim:
            raise DimensionError(f"dimension mismatch: {v_dim} vs {self.ambient_dim}")

    def reduce(self, v: Vector) -> Vector:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        self._check(v.dim)
        w = dict(v.entries)
        for k, row in zip(self._pivots, self.rows):
            c = w.get(k)
            if c:
                add_scaled(w, row.entries, -c)
        return Vector._raw(self.ambient_dim, w)

    def member(self, v: Vector) -> bool:
        return self.reduce(v).is_zero()

    __contains__ = member

    def coordinates(self, v: Vector) -> list[Scalar]:
        """Coefficients of ``v`` on ``self.rows``; raises if ``v`` is outside."""
        if not self.member(v):
            raise ValueError("vector is not in the subspace")
        return [v[k] for k in self._pivots]

    def contains(self, other: "Subspace") -> bool:
        return all(self.member(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rows))

    def complement_coords(self) -> list[int]:
        piv = set(self._pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def orthogonal_complement(self) -> "Subspace":
        """{x : r . x = 0 for every row r} (the right nullspace of the rows)."""
        out = []
        for f in self.complement_coords():
            entries = {f: 1}
            for k, row in zip(self._pivots, self.rows):
                c = row[f]
                if c:
                    entries[k] = -c
            out.append(Vector._raw(self.ambient_dim, entries))
        return Subspace.span(self.ambient_dim, out)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("dimension mismatch")
        a = self.orthogonal_complement()
        b = other.orthogonal_complement()
        return (a + b).orthogonal_complement()

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"dimension mismatch: {u.ambient_dim} vs {v.ambient_dim}")
    return Subspace.span(u.ambient_dim, list(u.rows) + list(v.rows))


def subspace_member(s: Subspace, v: Vector) -> bool:
    return s.member(v)


def nullspace(equations: Iterable[Vector], nvars: int) -> Subspace:
    """Solutions x of e . x = 0 for every equation vector e."""
    return Subspace.span(nvars, equations).orthogonal_complement()


class CoordinateSolver:
    """Express vectors in terms of a fixed linearly independent list."""

    def __init__(self, basis: Sequence[Vector]):
        if not basis:
            self.dim = 0
            self.size = 0
            self._acc = None
            return
        dim = basis[0].dim
        m = len(basis)
        acc = RankAccumulator(dim + m)
        for i, b in enumerate(basis):
            if b.dim != dim:
                raise DimensionError("basis vectors of different lengths")
            row = dict(b.entries)
            row[dim + i] = 1
            acc.insert(row)
        if any(k >= dim for k in acc._rows):
            raise ValueError("basis is linearly dependent")
        self.dim = dim
        self.size = m
        self._acc = acc

    def coords(self, v: Vector) -> list[Scalar]:
        if self._acc is None:
            if v.entries:
                raise ValueError("vector is not in the span")
            return []
        if v.dim != self.dim:
            raise DimensionError("dimension mismatch")
        w = dict(v.entries)
        rows = self._acc._rows
        for k in sorted(rows):
            c = w.get(k)
            if c:
                add_scaled(w, rows[k], -c)
        if any(k < self.dim for k in w):
            raise ValueError("vector is not in the span")
        return [_norm(-w.get(self.dim + i, 0)) for i in range(self.size)]


def _column_source(columns) -> Callable[[], Iterator]:
    if callable(columns):
        return columns
    if isinstance(columns, (list, tuple)):
        return lambda: iter(columns)
    cached = list(columns)
    return lambda: iter(cached)


def rank_exact(columns: Iterable) -> int:
    acc = None
    for col in columns:
        if acc is None:
            acc = RankAccumulator(_dim_of(col))
        acc.insert(col)
    return 0 if acc is None else acc.rank


def _dim_of(col) -> int:
    if isinstance(col, Vector):
        return col.dim
    raise TypeError("columns must be Vector instances")


def rank_modp_then_certify(columns, prime: int = DEFAULT_PRIME, certify: bool = False,
                           bound: int | None = None) -> tuple[int, bool]:
    """Rank of a column stream mod ``prime``, optionally certified over Q.

    ``columns`` is a sequence, an iterable, or a zero-argument callable
    returning a fresh iterator (needed to stream twice without buffering).
    The modular rank never exceeds the exact rank.  Certification reseeds an
    exact accumulator with the columns that were independent mod p (these are
    independent over Q too) and streams the rest exactly; it stops early once
    ``bound`` (or the ambient dimension) is reached.
    """
    if prime < MIN_PRIME:
        raise ValueError(f"prime {prime} too small (need > 2^20)")
    source = _column_source(columns)
    acc = None
    selected: list[int] = []
    for idx, col in enumerate(source()):
        if acc is None:
            acc = RankAccumulator(_dim_of(col), prime)
        if acc.insert(col):
            selected.append(idx)
    if acc is None:
        return 0, certify
    if not certify:
        return acc.rank, False
    cap = acc.ambient_dim if bound is None else min(bound, acc.ambient_dim)
    if acc.rank >= cap:
        return acc.rank, True
    exact = RankAccumulator(acc.ambient_dim)
    chosen = set(selected)
    for idx, col in enumerate(source()):
        if idx in chosen:
            exact.insert(col)
    for idx, col in enumerate(source()):
        if idx in chosen:
            continue
        exact.insert(col)
        if exact.rank >= cap:
            break
    return exact.rank, True
