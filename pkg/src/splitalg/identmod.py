"""
Modules of multilinear identities: expansion maps, liftings, the block
matrix search for new identities and generator minimization.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exactla import QQ, PrimeField, RowSpace, express, get_field, independent_subset, rref, span
from .freealg import (
    Expr, Monomial, OpAlphabet, Polynomial, _graft, _perm_rank, _perms,
    _shapes, binop, enumerate_monomials, format_polynomial, parse_polynomial, var,
)

__all__ = [
    "ExpansionRule", "IdentitySystem", "NewIdentityReport", "expand",
    "liftings", "lifting_generators", "lifting_module", "identity_module",
    "find_new_identities", "minimize_generators", "is_consequence",
    "permutation_rows", "OpWord", "L", "R", "operator_word_to_poly",
    "MAX_COLUMNS", "lifting_basis", "express_in_lifting_basis",
    "format_system", "parse_system", "format_rule", "parse_rule",
]

# refuse ambient spaces larger than this (degree 5 with 4 operations is 215040)
MAX_COLUMNS = 250_000


@dataclass(frozen=True)
class IdentitySystem:
    name: str
    alphabet: OpAlphabet
    identities: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", OpAlphabet(self.alphabet))
        ids = tuple(self.identities)
        for f in ids:
            if f.alphabet != self.alphabet:
                raise ValueError(f"{self.name}: identity over {tuple(f.alphabet)}, "
                                 f"system alphabet {tuple(self.alphabet)}")
        object.__setattr__(self, "identities", ids)

    def degrees(self) -> list[int]:
        return sorted({f.degree for f in self.identities})

    def __len__(self):
        return len(self.identities)


@dataclass(frozen=True)
class ExpansionRule:
    """Sends each source operation to a polynomial in slots x1, x2 over the
    target alphabet."""

    name: str
    source: OpAlphabet
    target: OpAlphabet
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", OpAlphabet(self.source))
        object.__setattr__(self, "target", OpAlphabet(self.target))
        imgs = tuple(self.images)
        if len(imgs) != len(self.source):
            raise ValueError("one image per source operation is required")
        for p in imgs:
            if p.degree != 2 or p.alphabet != self.target:
                raise ValueError("rule images must be degree-2 polynomials over the target")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_exprs(cls, name, source, target, images: dict):
        target = OpAlphabet(target)
        source = OpAlphabet(source)
        polys = []
        for op in source:
            e = images[op]
            polys.append(Polynomial.zero(2, target) if not e.terms
                         else Polynomial.from_expr(e, target, 2))
        return cls(name, source, target, tuple(polys))

    def image(self, op: str) -> Polynomial:
        return self.images[self.source.index_of(op)]


# ---------------------------------------------------------------------------
# expansion

def expand(rule: ExpansionRule, p: Polynomial) -> Polynomial:
    """Replace every vertex of every monomial by the rule polynomial."""
    if p.alphabet != rule.source:
        raise ValueError(f"polynomial over {tuple(p.alphabet)}, rule source {tuple(rule.source)}")
    images = [list(img.trees()) for img in rule.images]
    memo = {}

    def go(t):
        if isinstance(t, int):
            return {t: 1}
        hit = memo.get(t)
        if hit is not None:
            return hit
        left, right = go(t[1]), go(t[2])
        out = defaultdict(int)
        for s, c in images[t[0]]:
            for a, ca in left.items():
                sa = _graft(s, 1, -1)
                for b, cb in right.items():
                    out[_graft(_graft(sa, 2, b), -1, a)] += c * ca * cb
        memo[t] = out
        return out

    acc = defaultdict(int)
    for t, c in p.trees():
        for s, k in go(t).items():
            acc[s] += c * k
    return Polynomial.from_trees(acc, rule.target, p.degree)


# ---------------------------------------------------------------------------
# liftings and modules

def liftings(f: Polynomial, alphabet=None) -> list[Polynomial]:
    """Degree d+1 liftings of a multilinear identity of degree d.

    For each operation w (alphabet order): x_i <- w(x_i, x_{d+1}) for
    i = 1..d, then w(f, x_{d+1}) and w(x_{d+1}, f).  Duplicates up to a
    scalar are dropped, keeping the first occurrence.
    """
    if alphabet is not None and OpAlphabet(alphabet) != f.alphabet:
        raise ValueError("lifting alphabet differs from the identity's alphabet")
    d = f.degree
    new = d + 1
    trees = list(f.trees())
    out, seen = [], set()

    def push(items):
        p = Polynomial.from_trees(items, f.alphabet, new)
        if p.is_zero():
            return
        key = p.canonical()
        if key not in seen:
            seen.add(key)
            out.append(p)

    for w in range(len(f.alphabet)):
        for i in range(1, d + 1):
            push([(_graft(t, i, (w, i, new)), c) for t, c in trees])
        push([((w, t, new), c) for t, c in trees])
        push([((w, new, t), c) for t, c in trees])
    return out


def lifting_generators(system: IdentitySystem, degree: int) -> list[Polynomial]:
    """Identities of ``system`` lifted (repeatedly) to ``degree``, in catalog
    order; identities already of that degree are taken as they are."""
    gens = []
    for f in system.identities:
        if f.degree > degree:
            continue
        layer = [f]
        while layer and layer[0].degree < degree:
            nxt, seen = [], set()
            for g in layer:
                for h in liftings(g):
                    key = h.canonical()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(h)
            layer = nxt
        gens.extend(layer)
    return gens


def permutation_rows(polys: Sequence[Polynomial], degree: int | None = None) -> list[dict]:
    """Sparse coefficient vectors of act(s, g) for each g, s lexicographic."""
    rows = []
    for g in polys:
        d = g.degree
        f = math.factorial(d)
        rank = _perm_rank(d)
        for s in _perms(d):
            row = {}
            for m, c in g.items():
                row[m.type_index * f + rank[tuple(s[v - 1] for v in m.perm)]] = c
            rows.append(row)
    return rows


def _ambient(degree: int, alphabet) -> int:
    n = len(_shapes(degree, len(alphabet))) * math.factorial(degree)
    if n > MAX_COLUMNS:
        raise ValueError(f"degree {degree} over {len(alphabet)} operations needs {n} "
                         f"columns (limit {MAX_COLUMNS})")
    return n


def identity_module(polys: Sequence[Polynomial], degree: int, alphabet, field=None,
                    context: RowSpace | None = None) -> RowSpace:
    """S_d-span of ``polys`` (plus an optional context space)."""
    n = _ambient(degree, alphabet)
    rows = permutation_rows(polys)
    if context is not None:
        rows = context.sparse_basis() + rows
    return span(rows, n, get_field(field))


@lru_cache(maxsize=64)
def _lifting_module(system, degree, field):
    gens = lifting_generators(system, degree)
    return identity_module(gens, degree, system.alphabet, field)


def lifting_module(system: IdentitySystem, degree: int, field=None) -> RowSpace:
    """Span of all permutations of all liftings of ``system`` to ``degree``."""
    return _lifting_module(system, degree, get_field(field))


def lifting_basis(system: IdentitySystem, degree: int, order: str = "perm-major",
                  field=None) -> list[dict]:
    """A basis of the lifting module made of permuted lifting generators.

    Candidates are act(s, g) for generators g (catalog order) and
    permutations s (lexicographic); ``order`` says which index runs slowest
    ("perm-major": permutations outer, "gen-major": generators outer).  The
    first vectors independent of their predecessors are kept.
    """
    rows = permutation_rows(lifting_generators(system, degree))
    if order == "perm-major":
        nf = math.factorial(degree)
        ng = len(rows) // nf
        rows = [rows[g * nf + s] for s in range(nf) for g in range(ng)]
    elif order != "gen-major":
        raise ValueError(f"unknown basis order {order!r}")
    keep = independent_subset(rows, _ambient(degree, system.alphabet), get_field(field))
    return [rows[i] for i in keep]


def express_in_lifting_basis(target: Polynomial, system: IdentitySystem,
                             order: str = "perm-major") -> list:
    """Rational coefficients of ``target`` against :func:`lifting_basis`.
    Raises NotInSpan when ``target`` is not a consequence of the liftings."""
    basis = lifting_basis(system, target.degree, order)
    return express(target.vector(), basis, _ambient(target.degree, system.alphabet), QQ)


# ---------------------------------------------------------------------------
# new identities

@dataclass
class NewIdentityReport:
    degree: int
    shape: tuple                # (rows, cols) of the block matrix
    n_generators: int           # lifting generators behind block A
    rows: list                  # sparse vectors over the source monomials
    identities: list            # the same rows as polynomials
    module: RowSpace
    minimal: list = dc_field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.rows)

    def summary(self) -> str:
        return (f"degree {self.degree}: block matrix {self.shape[0]}x{self.shape[1]}, "
                f"{self.n_generators} lifting generators, {self.count} new-identity rows, "
                f"module dim {self.module.rank}, {len(self.minimal)} minimal generators")


def _block_rows(system, rule, degree):
    gens = lifting_generators(system, degree)
    n_t = _ambient(degree, rule.target)
    top = permutation_rows(gens)
    bottom = []
    for j, m in enumerate(enumerate_monomials(degree, rule.source)):
        row = expand(rule, Polynomial(degree, rule.source, [(m, 1)])).vector()
        row[n_t + j] = 1
        bottom.append(row)
    return gens, top, bottom, n_t


def _scalar(x):
    return int(x) if isinstance(x, np.integer) else x


@lru_cache(maxsize=16)
def _find_new(system, rule, degree, field, do_minimize):
    if rule.target != system.alphabet:
        raise ValueError(f"rule {rule.name} targets {tuple(rule.target)}, "
                         f"system {system.name} is over {tuple(system.alphabet)}")
    gens, top, bottom, n_t = _block_rows(system, rule, degree)
    n_s = _ambient(degree, rule.source)
    red = rref(top + bottom, n_t + n_s, field)
    vecs = []
    for i, c in enumerate(red.pivots):
        if c >= n_t:
            row = red.matrix[i]
            vecs.append({j - n_t: _scalar(row[j]) for j in range(n_t, n_t + n_s) if row[j]})
    module = span(vecs, n_s, field)
    # over F_p the identities are shown with symmetric representatives
    lift = field.signed if isinstance(field, PrimeField) else (lambda c: c)
    polys = [Polynomial.from_vector({k: lift(c) for k, c in v.items()}, degree, rule.source)
             for v in vecs]
    minimal = minimize_generators(polys, field=field) if (do_minimize and polys) else []
    return NewIdentityReport(degree, (len(top) + len(bottom), n_t + n_s), len(gens),
                             vecs, polys, module, minimal)


def find_new_identities(system: IdentitySystem, rule: ExpansionRule, degree: int,
                        field=None, minimize=True) -> NewIdentityReport:
    """Identities of ``degree`` satisfied by the rule operations modulo the
    liftings of ``system``: RREF of the block matrix [A 0; E I] and the rows
    whose leading 1 falls in the right block."""
    return _find_new(system, rule, degree, get_field(field), minimize)


def minimize_generators(identities: Sequence[Polynomial], context: RowSpace | None = None,
                        field=None) -> list[Polynomial]:
    """Smallest-first greedy choice of module generators.

    Candidates are sorted by (number of terms, canonical term order).  A
    forward pass keeps each candidate not already in the S_d-span of the kept
    ones plus ``context``; a backward pass then drops any survivor generated
    by the others.  Every survivor is re-tested before returning.
    """
    field = get_field(field)
    polys, seen = [], set()
    for g in identities:
        c = g.canonical()
        if not c.is_zero() and c not in seen:
            seen.add(c)
            polys.append(c)
    if not polys:
        return []
    polys.sort(key=Polynomial.sort_key)
    d, alph = polys[0].degree, polys[0].alphabet
    n = _ambient(d, alph)
    base = context if context is not None else RowSpace.zero(n, field)

    kept, cur = [], base
    for g in polys:
        if not cur.contains(g.vector()):
            kept.append(g)
            cur = cur + span(permutation_rows([g]), n, field)

    def others_span(excl):
        return identity_module([h for h in kept if h is not excl], d, alph, field, base)

    for g in reversed(list(kept)):
        if len(kept) > 1 and others_span(g).contains(g.vector()):
            kept.remove(g)
    for g in kept:
        if others_span(g).contains(g.vector()):
            raise AssertionError("generator set failed its minimality re-check")
    return kept


def is_consequence(target: Polynomial, system: IdentitySystem,
                   rule: ExpansionRule | None = None, field=None) -> bool:
    """Is ``target`` (expanded by ``rule`` first, if given) in the lifting
    module of ``system`` in its degree?"""
    if rule is not None:
        target = expand(rule, target)
    if target.alphabet != system.alphabet:
        raise ValueError("target and system alphabets differ")
    return lifting_module(system, target.degree, field).contains(target.vector())


# ---------------------------------------------------------------------------
# operator words: formal sums of composites of left/right multiplications

class OpWord:
    """Sum of scalar multiples of composites ``M_a M_b ...``.

    Factors are ``("L", a)`` (left multiplication, t -> a t) or ``("R", a)``
    (right multiplication, t -> t a) with ``a`` an :class:`Expr`.  Composition
    is written ``u @ v`` and applies ``v`` first.
    """

    def __init__(self, terms=()):
        self.terms = [(c, tuple(fs)) for c, fs in terms if c != 0]

    def __add__(self, other):
        return OpWord(self.terms + other.terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OpWord([(-c, fs) for c, fs in self.terms])

    def __mul__(self, k):
        return OpWord([(c * k, fs) for c, fs in self.terms])

    __rmul__ = __mul__

    def __matmul__(self, other):
        return OpWord([(c * k, fs + gs) for c, fs in self.terms for k, gs in other.terms])

    def apply(self, arg: Expr, op: str = "mul") -> Expr:
        mul = binop(op)
        out = Expr()
        for c, fs in self.terms:
            v = arg
            for kind, a in reversed(fs):
                if kind == "L":
                    v = mul(a, v)
                elif kind == "R":
                    v = mul(v, a)
                else:
                    raise ValueError(f"malformed operator word: factor kind {kind!r}")
            out = out + v * c
        return out


def L(a) -> OpWord:
    if isinstance(a, int):
        a = var(a)
    if not isinstance(a, Expr):
        raise ValueError("operator subscripts must be expressions")
    return OpWord([(1, (("L", a),))])


def R(a) -> OpWord:
    if isinstance(a, int):
        a = var(a)
    if not isinstance(a, Expr):
        raise ValueError("operator subscripts must be expressions")
    return OpWord([(1, (("R", a),))])


def operator_word_to_poly(word: OpWord, argument: int, alphabet=("mul",), op="mul") -> Polynomial:
    """Apply ``word`` to the variable x_argument and return the result as a
    multilinear polynomial."""
    e = word.apply(var(argument), op)
    if not e.terms:
        d = max((_max_var(a) for _, fs in word.terms for _, a in fs), default=0)
        return Polynomial.zero(max(d, argument), alphabet)
    return Polynomial.from_expr(e, alphabet)


def _max_var(e: Expr) -> int:
    from .freealg import _leaves
    return max((max(_leaves(t)) for t in e.terms), default=0)


# ---------------------------------------------------------------------------
# text files
#
#   system <name>              rule <name>
#   ops <op>,<op>,...          source <op>,...
#                              target <op>,...
#   <coeff> ; <tree>           map <srcop>
#   ...                        <coeff> ; <tree in s1, s2>
#   (blank line between        ...
#    identities)               (one map block per source op)

def _split_ops(text):
    return [o.strip() for o in text.replace(",", " ").split() if o.strip()]


def format_system(system: IdentitySystem) -> str:
    out = [f"system {system.name}", f"ops {','.join(system.alphabet)}"]
    for f in system.identities:
        out.append("")
        out.append(format_polynomial(f).rstrip("\n"))
    return "\n".join(out) + "\n"


def _blocks(text):
    """Header lines and blank-line separated bodies, comments dropped."""
    header, blocks, cur = {}, [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        key = line.split(None, 1)[0]
        if ";" not in line and key in ("system", "ops", "rule", "source", "target", "map"):
            if cur:
                blocks.append(cur)
                cur = []
            rest = line[len(key):].strip()
            if key == "map":
                blocks.append(("map", rest))
            else:
                header[key] = rest
            continue
        cur.append(line)
    if cur:
        blocks.append(cur)
    return header, blocks


def parse_system(text: str) -> IdentitySystem:
    header, blocks = _blocks(text)
    if "ops" not in header:
        raise ValueError("system file needs an 'ops' line")
    alphabet = OpAlphabet(_split_ops(header["ops"]))
    ids = []
    for b in blocks:
        if isinstance(b, tuple):
            raise ValueError("'map' lines belong in rule files")
        ids.append(parse_polynomial("\n".join(b), alphabet))
    return IdentitySystem(header.get("system", "unnamed"), alphabet, tuple(ids))


def format_rule(rule: ExpansionRule) -> str:
    out = [f"rule {rule.name}", f"source {','.join(rule.source)}",
           f"target {','.join(rule.target)}"]
    for op, img in zip(rule.source, rule.images):
        out.append(f"map {op}")
        out.append(format_polynomial(img, leaf_prefix="s").rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_rule(text: str) -> ExpansionRule:
    header, blocks = _blocks(text)
    for key in ("source", "target"):
        if key not in header:
            raise ValueError(f"rule file needs a '{key}' line")
    source = OpAlphabet(_split_ops(header["source"]))
    target = OpAlphabet(_split_ops(header["target"]))
    images, current = {}, None
    for b in blocks:
        if isinstance(b, tuple):
            current = b[1]
            if current not in source:
                raise ValueError(f"'map {current}': not a source operation")
            images[current] = []
        elif current is None:
            raise ValueError("polynomial lines before any 'map' line")
        else:
            images[current].extend(b)
    polys = []
    for op in source:
        if op not in images:
            raise ValueError(f"no image given for {op!r}")
        lines = images[op]
        polys.append(parse_polynomial("\n".join(lines), target, 2, leaf_prefix="s")
                     if lines else Polynomial.zero(2, target))
    return ExpansionRule(header.get("rule", "unnamed"), source, target, tuple(polys))
