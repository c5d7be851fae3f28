"""
Finite-dimensional algebras given by structure constants, Rota-Baxter
operators (weight zero) on them, and the derived structures built from
those operators.

Vectors and matrices hold exact scalars (``int`` or ``Fraction``) in numpy
object arrays.  A linear operator R acts by R(v) = M @ v, so the columns of
M are the images of the basis vectors.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .freealg import Polynomial
from .identmod import IdentitySystem

__all__ = [
    "StructConstAlgebra", "LinOp", "Verdict", "NotRotaBaxter", "CONSTRUCTIONS",
    "is_rota_baxter", "search_rb", "derive", "satisfies", "evaluate", "basis_values",
    "parse_algebra", "format_algebra", "parse_operator", "format_operator",
    "horizontal_homomorphism", "vertical_matches", "commuting_rb_lemma",
]


class NotRotaBaxter(ValueError):
    pass


def _exact(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _exact(Fraction(x))
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise TypeError(f"inexact scalar {x!r}")


def _obj(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    flat = [_exact(v) for v in a.ravel()]
    out = np.empty(len(flat), dtype=object)
    out[:] = flat
    return out.reshape(a.shape)


class StructConstAlgebra:
    """e_i op e_j = sum_k c[op][i, j, k] e_k for each named operation."""

    def __init__(self, dim: int, ops: dict):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = dim
        self.ops = {}
        for name, t in ops.items():
            t = _obj(t)
            if t.shape != (dim, dim, dim):
                raise ValueError(f"tensor for {name!r} has shape {t.shape}, expected {(dim,) * 3}")
            self.ops[name] = t
        # int64 copies for fast evaluation when every constant is an integer
        dt = np.int64 if self.is_integral() else object
        self._typed = {k: t.astype(dt) for k, t in self.ops.items()}
        self._eye = np.eye(dim, dtype=dt)

    @classmethod
    def from_table(cls, dim: int, table: dict) -> "StructConstAlgebra":
        """``table[op][(i, j)] = {k: c}`` with 1-based indices; missing
        products are zero."""
        ops = {}
        for name, entries in table.items():
            t = np.zeros((dim, dim, dim), dtype=object)
            for (i, j), img in entries.items():
                for k, c in img.items():
                    t[i - 1, j - 1, k - 1] = c
            ops[name] = t
        return cls(dim, ops)

    def op_names(self) -> list[str]:
        return list(self.ops)

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=object)
        v[i] = 1
        return v

    def product(self, op: str, u, v) -> np.ndarray:
        t = self.ops[op]
        return np.tensordot(np.asarray(v, dtype=object),
                            np.tensordot(np.asarray(u, dtype=object), t, axes=(0, 0)),
                            axes=(0, 0))

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for t in self.ops.values() for v in t.ravel())

    def __eq__(self, other):
        return (isinstance(other, StructConstAlgebra) and self.dim == other.dim
                and self.ops.keys() == other.ops.keys()
                and all((self.ops[k] == other.ops[k]).all() for k in self.ops))

    def __repr__(self):
        return f"StructConstAlgebra(dim={self.dim}, ops={self.op_names()})"


class LinOp:
    def __init__(self, matrix):
        m = _obj(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator matrix must be square")
        self.matrix = m

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=int))

    @classmethod
    def zero(cls, n):
        return cls(np.zeros((n, n), dtype=int))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.matrix.dot(np.asarray(v, dtype=object))

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return LinOp(self.matrix.dot(other.matrix))

    def __eq__(self, other):
        return isinstance(other, LinOp) and (self.matrix == other.matrix).all()

    def __hash__(self):
        return hash(tuple(self.matrix.ravel()))

    def commutes_with(self, other: "LinOp") -> bool:
        return self @ other == other @ self

    def __repr__(self):
        return f"LinOp({self.matrix.tolist()})"


def _check_dim(A, R):
    if R.dim != A.dim:
        raise ValueError(f"operator of size {R.dim} on an algebra of dimension {A.dim}")


def is_rota_baxter(A: StructConstAlgebra, op, R: LinOp) -> bool:
    """R(x) R(y) = R(R(x) y + x R(y)) on all basis pairs, for ``op`` (a
    name, a sequence of names, or None for every operation)."""
    _check_dim(A, R)
    ops = A.op_names() if op is None else [op] if isinstance(op, str) else list(op)
    for name in ops:
        if name not in A.ops:
            raise KeyError(f"algebra has no operation {name!r}")
        for i in range(A.dim):
            Ri = R(A.basis(i))
            for j in range(A.dim):
                Rj = R(A.basis(j))
                lhs = A.product(name, Ri, Rj)
                rhs = R(A.product(name, Ri, A.basis(j)) + A.product(name, A.basis(i), Rj))
                if not (lhs == rhs).all():
                    return False
    return True


_EXHAUSTIVE_LIMIT = 2_000_000
_CHUNK = 4096


def _rb_mask_int(tensors, Rs):
    mask = np.ones(len(Rs), dtype=bool)
    for t in tensors:
        lhs = np.einsum("zai,zbj,abk->zijk", Rs, Rs, t)
        inner = np.einsum("zai,ajc->zijc", Rs, t) + np.einsum("zbj,ibc->zijc", Rs, t)
        rhs = np.einsum("zkc,zijc->zijk", Rs, inner)
        mask &= (lhs == rhs).all(axis=(1, 2, 3))
    return mask


def search_rb(A: StructConstAlgebra, op=None, entries: Sequence = (-1, 0, 1),
              samples: int | None = None, seed: int = 0) -> list[LinOp]:
    """All Rota-Baxter operators whose matrix entries lie in ``entries``,
    in lexicographic order of the row-major entry sequence.

    The scan is exhaustive unless ``samples`` is given, in which case that
    many random matrices are tried.  Exhaustive scans larger than two
    million candidates are refused.
    """
    n = A.dim
    entries = sorted({_exact(e) for e in entries})
    ops = A.op_names() if op is None else [op] if isinstance(op, str) else list(op)
    total = len(entries) ** (n * n)
    if samples is None and total > _EXHAUSTIVE_LIMIT:
        raise ValueError(f"{total} candidate matrices; pass samples= for a random search")
    if samples is None:
        cands = itertools.product(entries, repeat=n * n)
    else:
        rng = random.Random(seed)
        cands = (tuple(rng.choice(entries) for _ in range(n * n)) for _ in range(samples))

    integral = A.is_integral() and all(isinstance(e, int) for e in entries)
    found, seen = [], set()
    tensors = [A.ops[o].astype(np.int64) for o in ops] if integral else None
    while True:
        chunk = list(itertools.islice(cands, _CHUNK))
        if not chunk:
            break
        if integral:
            Rs = np.array(chunk, dtype=np.int64).reshape(-1, n, n)
            hits = [chunk[i] for i in np.flatnonzero(_rb_mask_int(tensors, Rs))]
        else:
            hits = [c for c in chunk if is_rota_baxter(A, ops, LinOp(np.array(c).reshape(n, n)))]
        for c in hits:
            if c not in seen:
                seen.add(c)
                found.append(LinOp(np.array(c, dtype=object).reshape(n, n)))
    if samples is not None:
        found.sort(key=lambda r: tuple(r.matrix.ravel()))
    return found


# ---------------------------------------------------------------------------
# derived structures

def _build(A, formulas) -> StructConstAlgebra:
    n = A.dim
    ops = {}
    for name, f in formulas.items():
        t = np.zeros((n, n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                t[i, j] = f(A.basis(i), A.basis(j))
        ops[name] = t
    return StructConstAlgebra(n, ops)


def _single_op(A):
    if len(A.ops) != 1:
        raise ValueError(f"construction needs a one-operation algebra, got {A.op_names()}")
    return A.op_names()[0]


def _require_rb(A, op, R, label="R", check=True):
    if check and not is_rota_baxter(A, op, R):
        raise NotRotaBaxter(f"{label} is not a Rota-Baxter operator of weight zero")


def _malcev_to_premalcev(A, R, check=True):
    b = _single_op(A)
    _require_rb(A, b, R, check=check)
    return _build(A, {"mul": lambda x, y: A.product(b, R(x), y)})


def _alt_to_altdendriform(A, R, check=True):
    m = _single_op(A)
    _require_rb(A, m, R, check=check)
    return _build(A, {"prec": lambda x, y: A.product(m, x, R(y)),
                      "succ": lambda x, y: A.product(m, R(x), y)})


def _dendri_to_quadri(A, R, check=True):
    if set(A.ops) != {"prec", "succ"}:
        raise ValueError("dendri-to-quadri needs operations prec and succ")
    _require_rb(A, ("prec", "succ"), R, check=check)
    P = lambda x, y: A.product("prec", x, y)
    S = lambda x, y: A.product("succ", x, y)
    return _build(A, {"nw": lambda x, y: P(x, R(y)), "ne": lambda x, y: S(x, R(y)),
                      "sw": lambda x, y: P(R(x), y), "se": lambda x, y: S(R(x), y)})


def _double_rb_quadri(A, R1, R2, check=True):
    m = _single_op(A)
    _require_rb(A, m, R1, "R1", check)
    _require_rb(A, m, R2, "R2", check)
    if check and not R1.commutes_with(R2):
        raise ValueError("R1 and R2 do not commute")
    M = lambda x, y: A.product(m, x, y)
    return _build(A, {"nw": lambda x, y: M(x, R1(R2(y))), "ne": lambda x, y: M(R1(x), R2(y)),
                      "sw": lambda x, y: M(R2(x), R1(y)), "se": lambda x, y: M(R1(R2(x)), y)})


def _premalcev_to_mdendriform(A, R, check=True):
    m = _single_op(A)
    _require_rb(A, m, R, check=check)
    return _build(A, {"tl": lambda x, y: A.product(m, x, R(y)),
                      "tr": lambda x, y: A.product(m, R(x), y)})


CONSTRUCTIONS = {
    "malcev-to-premalcev": (_malcev_to_premalcev, 1, "pre-malcev"),
    "alt-to-altdendriform": (_alt_to_altdendriform, 1, "alt-dendriform"),
    "dendri-to-quadri": (_dendri_to_quadri, 1, "alt-quadri"),
    "double-rb-quadri": (_double_rb_quadri, 2, "alt-quadri"),
    "premalcev-to-mdendriform": (_premalcev_to_mdendriform, 1, "m-dendriform"),
}


def derive(A: StructConstAlgebra, construction: str, operators: Sequence[LinOp],
           check_rb: bool = True) -> StructConstAlgebra:
    """Apply one of :data:`CONSTRUCTIONS`; each entry also names the catalog
    system the result should satisfy.  ``check_rb=False`` skips the operator
    checks (negative controls only)."""
    try:
        fn, arity, _ = CONSTRUCTIONS[construction]
    except KeyError:
        raise KeyError(f"unknown construction {construction!r}; "
                       f"available: {', '.join(CONSTRUCTIONS)}") from None
    operators = list(operators)
    if len(operators) != arity:
        raise ValueError(f"{construction} takes {arity} operator(s), got {len(operators)}")
    for R in operators:
        _check_dim(A, R)
    return fn(A, *operators, check=check_rb)


# ---------------------------------------------------------------------------
# evaluating identities

class Verdict(NamedTuple):
    ok: bool
    identity: int | None = None     # index into the system
    args: tuple | None = None       # failing tuple (basis indices or vectors)
    value: tuple | None = None

    def __bool__(self):
        return self.ok


def _eval_tree(A, names, tree, args, memo):
    if isinstance(tree, int):
        return args[tree - 1]
    v = memo.get(tree)
    if v is None:
        v = A.product(names[tree[0]], _eval_tree(A, names, tree[1], args, memo),
                      _eval_tree(A, names, tree[2], args, memo))
        memo[tree] = v
    return v


def evaluate(A: StructConstAlgebra, p: Polynomial, args) -> np.ndarray:
    missing = [o for o in p.alphabet if o not in A.ops]
    if missing:
        raise KeyError(f"algebra lacks operations {missing}")
    names = list(p.alphabet)
    memo = {}
    out = np.zeros(A.dim, dtype=object)
    for tree, c in p.trees():
        out = out + c * _eval_tree(A, names, tree, args, memo)
    return out


def _tree_tensor(A, names, tree, memo):
    """Values of ``tree`` on all basis assignments of its leaves: an array
    with one axis per leaf (in left-to-right order) plus the output axis."""
    if isinstance(tree, int):
        return A._eye
    v = memo.get(tree)
    if v is None:
        a = _tree_tensor(A, names, tree[1], memo)
        b = _tree_tensor(A, names, tree[2], memo)
        w = np.tensordot(a, A._typed[names[tree[0]]], axes=([-1], [0]))   # ..a, j, k
        w = np.tensordot(w, b, axes=([-2], [-1]))                        # ..a, k, ..b
        v = np.moveaxis(w, a.ndim - 1, -1)
        memo[tree] = v
    return v


def _leaf_order(tree):
    if isinstance(tree, int):
        return [tree]
    return _leaf_order(tree[1]) + _leaf_order(tree[2])


def basis_values(A: StructConstAlgebra, p: Polynomial) -> np.ndarray:
    """Array v with v[i1, ..., id] = p(e_i1, ..., e_id)."""
    missing = [o for o in p.alphabet if o not in A.ops]
    if missing:
        raise KeyError(f"algebra lacks operations {missing}")
    names = list(p.alphabet)
    d = p.degree
    memo = {}
    out = np.zeros((A.dim,) * (d + 1), dtype=A._eye.dtype)
    for tree, c in p.trees():
        v = _tree_tensor(A, names, tree, memo)
        order = _leaf_order(tree)
        axes = [order.index(k) for k in range(1, d + 1)] + [d]
        out = out + c * np.transpose(v, axes)
    return out


def satisfies(A: StructConstAlgebra, system, mode: str = "basis", samples: int = 100,
              seed: int = 0, bound: int = 5) -> Verdict:
    """Check every identity of ``system`` (an IdentitySystem or a list of
    polynomials) on all basis tuples, or on ``samples`` random integer
    vector tuples with entries in [-bound, bound] when mode="random".

    A failing basis tuple is reported as 0-based basis indices, the first
    one in lexicographic order."""
    polys = system.identities if isinstance(system, IdentitySystem) else list(system)
    if mode not in ("basis", "random"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for idx, p in enumerate(polys):
        d = p.degree
        if mode == "basis":
            vals = basis_values(A, p)
            bad = np.argwhere((vals != 0).any(axis=-1))
            if len(bad):
                tup = tuple(int(i) for i in bad[0])
                return Verdict(False, idx, tup, tuple(_exact(v) for v in vals[tup]))
            continue
        for _ in range(samples):
            tup = tuple(tuple(rng.randint(-bound, bound) for _ in range(A.dim)) for _ in range(d))
            val = evaluate(A, p, [np.array(v, dtype=object) for v in tup])
            if any(v != 0 for v in val):
                return Verdict(False, idx, tup, tuple(val))
    return Verdict(True)


# ---------------------------------------------------------------------------
# remarks about the quadrialgebra constructions

def _pairs(A):
    return [(A.basis(i), A.basis(j)) for i in range(A.dim) for j in range(A.dim)]


def horizontal_homomorphism(D: StructConstAlgebra, R: LinOp) -> bool:
    """R maps the horizontal structure of derive(D, dendri-to-quadri, R)
    (x < y = x nw y + x sw y, x > y = x ne y + x se y) onto D's own."""
    Q = derive(D, "dendri-to-quadri", [R])
    for x, y in _pairs(D):
        h_prec = Q.product("nw", x, y) + Q.product("sw", x, y)
        h_succ = Q.product("ne", x, y) + Q.product("se", x, y)
        if not (R(h_prec) == D.product("prec", R(x), R(y))).all():
            return False
        if not (R(h_succ) == D.product("succ", R(x), R(y))).all():
            return False
    return True


def vertical_matches(D: StructConstAlgebra, R: LinOp) -> bool:
    """The vertical structure of derive(D, dendri-to-quadri, R) is
    x ^ y = x*R(y), x v y = R(x)*y with * = prec + succ."""
    Q = derive(D, "dendri-to-quadri", [R])
    star = lambda x, y: D.product("prec", x, y) + D.product("succ", x, y)
    for x, y in _pairs(D):
        if not (Q.product("ne", x, y) + Q.product("nw", x, y) == star(x, R(y))).all():
            return False
        if not (Q.product("se", x, y) + Q.product("sw", x, y) == star(R(x), y)).all():
            return False
    return True


def commuting_rb_lemma(A: StructConstAlgebra, R1: LinOp, R2: LinOp) -> bool:
    """For commuting RB operators R1, R2 on a one-operation algebra, R2 is RB
    on both products of derive(A, alt-to-altdendriform, R1)."""
    if not R1.commutes_with(R2):
        raise ValueError("R1 and R2 do not commute")
    D = derive(A, "alt-to-altdendriform", [R1])
    return is_rota_baxter(D, None, R2)


# ---------------------------------------------------------------------------
# file formats

def _fmt(x) -> str:
    return str(x)


def format_algebra(A: StructConstAlgebra) -> str:
    lines = [f"dim {A.dim}"]
    for name, t in A.ops.items():
        any_line = False
        for i in range(A.dim):
            for j in range(A.dim):
                img = [(k, t[i, j, k]) for k in range(A.dim) if t[i, j, k] != 0]
                if img:
                    any_line = True
                    terms = ",".join(f"{k + 1}:{_fmt(c)}" for k, c in img)
                    lines.append(f"{name} {i + 1} {j + 1} -> {terms}")
        if not any_line:
            lines.append(f"{name} 1 1 -> 1:0")   # declares a zero operation
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> StructConstAlgebra:
    """``dim n`` then lines ``op i j -> k:c[,k:c...]`` (1-based; '#' starts a
    comment).  Products not listed are zero."""
    dim, table = None, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if dim is None:
                head, n = line.split()
                if head != "dim":
                    raise ValueError("expected 'dim n' header")
                dim = int(n)
                continue
            lhs, rhs = line.split("->")
            name, i, j = lhs.split()
            i, j = int(i), int(j)
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError("basis index out of range")
            img = table.setdefault(name, {}).setdefault((i, j), {})
            for item in rhs.split(","):
                k, c = item.split(":")
                k = int(k)
                if not 1 <= k <= dim:
                    raise ValueError("basis index out of range")
                img[k] = img.get(k, 0) + _exact(Fraction(c.strip()))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}: {raw!r}") from None
    if dim is None:
        raise ValueError("missing 'dim n' header")
    return StructConstAlgebra.from_table(dim, table)


def format_operator(R: LinOp) -> str:
    rows = [" ".join(_fmt(v) for v in row) for row in R.matrix]
    return f"{R.dim}\n" + "\n".join(rows) + "\n"


def parse_operator(text: str) -> LinOp:
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines:
        raise ValueError("empty operator file")
    n = int(lines[0])
    rows = [[Fraction(tok) for tok in l.split()] for l in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} scalars")
    return LinOp(rows)
