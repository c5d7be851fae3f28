"""
Exact linear algebra over prime fields and over the rationals.

Two engines share one contract (reduced row echelon form with pivots = 1,
zero rows dropped, rows sorted by pivot column; RREF is unique so both
produce the canonical basis of the row space):

* F_p: dense numpy, recursive block elimination.  Entries live in [0, p) as
  float64 so products go through BLAS; every dot product stays below 2**53
  for p = 101 and matrices with fewer than ~8e11/p**2 columns.
* Q: sparse rows (``{col: Fraction}``), row-by-row echelonization followed by
  back substitution.

Rows may be given dense (sequences) or sparse (dicts ``{col: value}``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "PrimeField", "RationalField", "QQ", "GF101", "get_field",
    "ExactMatrix", "RowSpace", "RREF", "rref", "span", "contains", "equal",
    "express", "independent_subset", "rank", "NotInSpan", "DEFAULT_PRIME",
]

DEFAULT_PRIME = 101
_BASE_ROWS = 24
_FEED_ROWS = 768


class NotInSpan(ValueError):
    """The vector is not a linear combination of the given basis."""


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")
        if self.p > 46337:
            # float64 products must stay exact
            raise ValueError("prime too large for the dense float64 engine")

    @property
    def name(self):
        return f"p{self.p}"

    def convert(self, c) -> int:
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def signed(self, c: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        c %= self.p
        return c - self.p if c > self.p // 2 else c


@dataclass(frozen=True)
class RationalField:
    @property
    def name(self):
        return "rational"

    def convert(self, c):
        return c if isinstance(c, (int, Fraction)) else Fraction(c)


QQ = RationalField()
GF101 = PrimeField(DEFAULT_PRIME)


def get_field(spec=None):
    """``None``/``"p101"`` -> F_101, ``"pN"`` or int N -> F_N, ``"rational"``/``"Q"`` -> Q."""
    if spec is None:
        return GF101
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    s = str(spec).strip().lower()
    if s in ("rational", "q", "qq", "rationals"):
        return QQ
    if s.startswith("p") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    if s.isdigit():
        return PrimeField(int(s))
    raise ValueError(f"unknown field {spec!r} (use p101, pN or rational)")


# ---------------------------------------------------------------------------
# F_p engine

def _mod(a: np.ndarray, p: int) -> np.ndarray:
    np.remainder(a, p, out=a)
    return a


def _dense_block(rows, ncols, field: PrimeField) -> np.ndarray:
    out = np.zeros((len(rows), ncols), dtype=np.float64)
    for i, r in enumerate(rows):
        if isinstance(r, dict):
            for c, v in r.items():
                out[i, c] = field.convert(v)
        else:
            r = np.asarray(r)
            if r.dtype == object:
                out[i] = [field.convert(v) for v in r]
            else:
                out[i] = np.remainder(r.astype(np.int64), field.p)
    return out


def _rref_rows_small(C: np.ndarray, p: int):
    """Row-by-row RREF of a short block.  Returns (rows, pivots)."""
    B = np.zeros_like(C)
    piv: list[int] = []
    for v in C:
        v = v.copy()
        r = len(piv)
        if r:
            v -= v[piv] @ B[:r]
            _mod(v, p)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        c = int(nz[0])
        v *= pow(int(v[c]), -1, p)
        _mod(v, p)
        if r:
            col = B[:r, c].copy()
            if col.any():
                B[:r] -= np.outer(col, v)
                _mod(B[:r], p)
        B[r] = v
        piv.append(c)
    return B[:len(piv)], piv


def _merge(B, piv, C, p):
    """Reduce block C against RREF rows B, echelonize the remainder, and
    return the RREF of the union (unsorted rows, pivots list)."""
    if piv:
        C = C - C[:, piv] @ B
        _mod(C, p)
    Cr, q = _rref_block(C, p)
    if not q:
        return B, piv
    if piv:
        B = B - B[:, q] @ Cr
        _mod(B, p)
        return np.vstack([B, Cr]), piv + q
    return Cr, q


def _rref_block(C: np.ndarray, p: int):
    m = C.shape[0]
    if m <= _BASE_ROWS:
        return _rref_rows_small(C, p)
    h = m // 2
    B, piv = _rref_block(C[:h], p)
    return _merge(B, piv, C[h:], p)


def _rref_modp(rows, ncols: int, field: PrimeField):
    p = field.p
    B = np.zeros((0, ncols))
    piv: list[int] = []
    if isinstance(rows, np.ndarray) and rows.dtype != object:
        chunks = (rows[i:i + _FEED_ROWS] for i in range(0, rows.shape[0], _FEED_ROWS))
        dense = lambda ch: _mod(ch.astype(np.float64), p)
    else:
        rows = list(rows)
        chunks = (rows[i:i + _FEED_ROWS] for i in range(0, len(rows), _FEED_ROWS))
        dense = lambda ch: _dense_block(ch, ncols, field)
    for ch in chunks:
        B, piv = _merge(B, piv, dense(ch), p)
    order = np.argsort(piv, kind="stable")
    return B[order].astype(np.int64), [piv[i] for i in order]


# ---------------------------------------------------------------------------
# Q engine

def _as_sparse(r, ncols):
    if isinstance(r, dict):
        return {c: v for c, v in r.items() if v}
    return {c: v for c, v in enumerate(r) if v}


def _rref_rational(rows, ncols: int):
    pivrows: dict[int, dict] = {}
    for r in rows:
        v = {c: (x if isinstance(x, (int, Fraction)) else Fraction(x))
             for c, x in _as_sparse(r, ncols).items()}
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            row = pivrows.get(c)
            if row is None:
                inv = Fraction(1) / a
                pivrows[c] = {k: _q(x * inv) for k, x in v.items()}
                break
            for k, x in row.items():
                if k not in v:
                    heapq.heappush(heap, k)
                    v[k] = -a * x
                else:
                    y = v[k] - a * x
                    if y:
                        v[k] = y
                    else:
                        del v[k]
    # back substitution, highest pivot first
    cols = sorted(pivrows)
    pivset = set(cols)
    for c in reversed(cols):
        row = pivrows[c]
        hits = [k for k in row if k != c and k in pivset]
        for k in hits:
            a = row.get(k)
            if not a:
                continue
            for kk, x in pivrows[k].items():
                y = row.get(kk, 0) - a * x
                if y:
                    row[kk] = _q(y)
                else:
                    row.pop(kk, None)
    return [pivrows[c] for c in cols], cols


def _q(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


# ---------------------------------------------------------------------------
# public API

class ExactMatrix:
    """Rectangular matrix with exact entries, stored as sparse rows."""

    def __init__(self, rows, ncols=None, field=None):
        self.field = get_field(field)
        rows = list(rows)
        if ncols is None:
            if not rows or isinstance(rows[0], dict):
                raise ValueError("ncols is required for sparse or empty input")
            ncols = len(rows[0])
        for r in rows:
            if not isinstance(r, dict) and len(r) != ncols:
                raise ValueError("rows of unequal length")
        self.rows = rows
        self.ncols = ncols

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def dense(self):
        if isinstance(self.field, PrimeField):
            return _dense_block(self.rows, self.ncols, self.field).astype(np.int64)
        out = []
        for r in self.rows:
            d = [0] * self.ncols
            for c, v in _as_sparse(r, self.ncols).items():
                d[c] = v
            out.append(d)
        return out

    def dump(self) -> str:
        """Row-major text, one row per line."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.dense())


class RREF(NamedTuple):
    matrix: object      # np.ndarray (F_p) or list of dense Fraction rows (Q)
    rank: int
    pivots: tuple


class RowSpace:
    """A subspace of F^n stored by its reduced row echelon basis."""

    __slots__ = ("ambient", "field", "pivots", "_basis", "_pivpos")

    def __init__(self, ambient: int, field, basis, pivots):
        self.ambient = ambient
        self.field = get_field(field)
        self._basis = basis
        self.pivots = tuple(int(c) for c in pivots)
        self._pivpos = {c: i for i, c in enumerate(self.pivots)}

    @classmethod
    def zero(cls, ambient: int, field=None):
        field = get_field(field)
        if isinstance(field, PrimeField):
            return cls(ambient, field, np.zeros((0, ambient), dtype=np.int64), ())
        return cls(ambient, field, [], ())

    @property
    def rank(self) -> int:
        return len(self.pivots)

    dim = rank

    def basis(self) -> list:
        """Dense basis rows (ints mod p, or ints/Fractions)."""
        if isinstance(self.field, PrimeField):
            return [list(map(int, r)) for r in self._basis]
        return [[r.get(c, 0) for c in range(self.ambient)] for r in self._basis]

    def sparse_basis(self) -> list[dict]:
        if isinstance(self.field, PrimeField):
            return [{int(c): int(r[c]) for c in np.flatnonzero(r)} for r in self._basis]
        return [dict(r) for r in self._basis]

    def residual(self, v):
        """Reduce ``v`` against the basis; returns a sparse dict."""
        if isinstance(self.field, PrimeField):
            p = self.field.p
            x = _dense_block([v], self.ambient, self.field)[0]
            if self.rank:
                x -= x[list(self.pivots)] @ self._basis.astype(np.float64)
                _mod(x, p)
            return {int(c): int(x[c]) for c in np.flatnonzero(x)}
        x = dict(_as_sparse(v, self.ambient))
        coeffs = [(self._pivpos[c], a) for c, a in x.items() if c in self._pivpos]
        for i, a in coeffs:
            for k, y in self._basis[i].items():
                z = x.get(k, 0) - a * y
                if z:
                    x[k] = z
                else:
                    x.pop(k, None)
        return x

    def contains(self, v) -> bool:
        n = len(v) if not isinstance(v, dict) else None
        if n is not None and n != self.ambient:
            raise ValueError(f"vector of length {n} in ambient dimension {self.ambient}")
        return not self.residual(v)

    def __contains__(self, v):
        return self.contains(v)

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        if other.ambient != self.ambient:
            raise ValueError("ambient dimensions differ")
        if self.pivots != other.pivots:
            return False
        if isinstance(self.field, PrimeField):
            return self.field == other.field and np.array_equal(self._basis, other._basis)
        return self.sparse_basis() == other.sparse_basis()

    __hash__ = None

    def __add__(self, other):
        """Sum of subspaces."""
        if other.ambient != self.ambient:
            raise ValueError("ambient dimensions differ")
        return span(self.sparse_basis() + other.sparse_basis(), self.ambient, self.field)

    def issubspace(self, other) -> bool:
        return all(other.contains(r) for r in self.sparse_basis())

    def __repr__(self):
        return f"RowSpace(ambient={self.ambient}, rank={self.rank}, field={self.field.name})"


def rref(m, ncols=None, field=None) -> RREF:
    """Reduced row echelon form: leftmost nonzero column, topmost row."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m, ncols, field)
    f = m.field
    if isinstance(f, PrimeField):
        B, piv = _rref_modp(m.rows, m.ncols, f)
        return RREF(B, len(piv), tuple(piv))
    rows, piv = _rref_rational(m.rows, m.ncols)
    dense = [[r.get(c, 0) for c in range(m.ncols)] for r in rows]
    return RREF(dense, len(piv), tuple(piv))


def span(vectors, ambient=None, field=None) -> RowSpace:
    vectors = list(vectors)
    field = get_field(field)
    if ambient is None:
        if not vectors or isinstance(vectors[0], dict):
            raise ValueError("ambient dimension required for sparse or empty input")
        ambient = len(vectors[0])
    if not vectors:
        return RowSpace.zero(ambient, field)
    for v in vectors:
        if not isinstance(v, dict) and len(v) != ambient:
            raise ValueError("vectors of unequal length")
    if isinstance(field, PrimeField):
        B, piv = _rref_modp(vectors, ambient, field)
        return RowSpace(ambient, field, B, piv)
    rows, piv = _rref_rational(vectors, ambient)
    return RowSpace(ambient, field, rows, piv)


def rank(vectors, ambient=None, field=None) -> int:
    return span(vectors, ambient, field).rank


def contains(s: RowSpace, v) -> bool:
    return s.contains(v)


def equal(s1: RowSpace, s2: RowSpace) -> bool:
    return s1 == s2


def independent_subset(vectors: Sequence, ambient=None, field=None) -> list[int]:
    """Indices of the vectors kept by a left-to-right greedy scan that drops
    any vector dependent on those already kept (pivot columns of the
    transposed matrix)."""
    field = get_field(field)
    vectors = list(vectors)
    if ambient is None:
        if not vectors or isinstance(vectors[0], dict):
            raise ValueError("ambient dimension required for sparse input")
        ambient = len(vectors[0])
    rows = [dict() for _ in range(ambient)]
    for j, v in enumerate(vectors):
        for i, x in _as_sparse(v, ambient).items():
            rows[i][j] = x
    return list(rref(ExactMatrix(rows, len(vectors), field)).pivots)


def express(v, basis: Sequence, ambient=None, field=None) -> list:
    """Coefficients c with v = sum c_i basis_i.

    Builds the matrix whose columns are the basis vectors followed by ``v``
    and reads the last column of its RREF.  Free coefficients (when the basis
    is dependent) are set to zero.  Raises :class:`NotInSpan`.
    """
    field = get_field(field)
    basis = list(basis)
    if ambient is None:
        ambient = len(v) if not isinstance(v, dict) else None
        if ambient is None:
            raise ValueError("ambient dimension required for sparse input")
    k = len(basis)
    cols = [_as_sparse(b, ambient) for b in basis] + [_as_sparse(v, ambient)]
    for b in basis:
        if not isinstance(b, dict) and len(b) != ambient:
            raise ValueError("basis vectors of unequal length")
    # transpose: row i of the augmented matrix = coordinate i across columns
    rows = [dict() for _ in range(ambient)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            rows[i][j] = x
    red = rref(ExactMatrix(rows, k + 1, field))
    if k in red.pivots:
        raise NotInSpan("vector is not in the span of the basis")
    coeffs = [0] * k
    mat = red.matrix
    for i, c in enumerate(red.pivots):
        coeffs[c] = int(mat[i][k]) if isinstance(field, PrimeField) else mat[i][k]
    return coeffs
