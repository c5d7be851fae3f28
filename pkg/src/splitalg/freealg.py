"""
Free multioperator algebra combinatorics.

Trees are nested tuples.  A leaf is a positive int (the variable index), an
internal vertex is ``(op, left, right)`` where ``op`` is an index into an
:class:`OpAlphabet`.  Association types ("shapes") use the same encoding with
every leaf set to 0.

Canonical orders used everywhere (they fix the column order of every matrix):

* association types of degree d: by leaf count of the left subtree ascending,
  then index of the left subtree, then index of the right subtree, then the
  index of the root operation;
* multilinear monomials: type-major, permutation (the leaf labels read left
  to right) lexicographic minor.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, NamedTuple

__all__ = [
    "OpAlphabet", "AssocType", "Monomial", "Polynomial", "Expr",
    "enumerate_assoc_types", "enumerate_monomials", "count_assoc_types",
    "act", "substitute", "polarize", "var", "binop", "rename_ops",
    "format_polynomial", "parse_polynomial", "parse_tree", "tree_str",
    "compose_perms", "monomial_index",
]


def _clean(c):
    """Return ints for integral Fractions so that printing stays tidy."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class OpAlphabet(tuple):
    """Ordered tuple of binary operation names."""

    def __new__(cls, ops):
        if isinstance(ops, str):
            ops = ops.replace(",", " ").split()
        ops = tuple(ops)
        if len(set(ops)) != len(ops):
            raise ValueError(f"duplicate operation names in {ops}")
        for o in ops:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", o):
                raise ValueError(f"bad operation name {o!r}")
        return super().__new__(cls, ops)

    @property
    def q(self) -> int:
        return len(self)

    def index_of(self, name: str) -> int:
        try:
            return self.index(name)
        except ValueError:
            raise KeyError(f"operation {name!r} not in alphabet {tuple(self)}") from None

    def __repr__(self):
        return f"OpAlphabet({list(self)!r})"


# ---------------------------------------------------------------------------
# association types and monomials

@lru_cache(maxsize=None)
def _shapes(d: int, q: int) -> tuple:
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d == 1:
        return (0,)
    out = []
    for k in range(1, d):
        for left in _shapes(k, q):
            for right in _shapes(d - k, q):
                for op in range(q):
                    out.append((op, left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _shape_index(d: int, q: int) -> dict:
    return {s: i for i, s in enumerate(_shapes(d, q))}


@lru_cache(maxsize=None)
def _perms(d: int) -> tuple:
    return tuple(itertools.permutations(range(1, d + 1)))


@lru_cache(maxsize=None)
def _perm_rank(d: int) -> dict:
    return {p: i for i, p in enumerate(_perms(d))}


def count_assoc_types(d: int, q: int) -> int:
    """Catalan(d-1) * q**(d-1)."""
    n = d - 1
    return math.comb(2 * n, n) // (n + 1) * q ** n


@dataclass(frozen=True)
class AssocType:
    tree: object
    alphabet: OpAlphabet

    @property
    def degree(self) -> int:
        return _leaf_count(self.tree)

    def __str__(self):
        return _shape_str(self.tree, self.alphabet)


def enumerate_assoc_types(d: int, alphabet) -> list[AssocType]:
    alphabet = OpAlphabet(alphabet)
    return [AssocType(s, alphabet) for s in _shapes(d, len(alphabet))]


class Monomial(NamedTuple):
    type_index: int
    perm: tuple


def enumerate_monomials(d: int, alphabet) -> list[Monomial]:
    alphabet = OpAlphabet(alphabet)
    nt = len(_shapes(d, len(alphabet)))
    return [Monomial(t, p) for t in range(nt) for p in _perms(d)]


def monomial_index(m: Monomial, d: int) -> int:
    return m.type_index * math.factorial(d) + _perm_rank(d)[m.perm]


def _leaf_count(t) -> int:
    if isinstance(t, int):
        return 1
    return _leaf_count(t[1]) + _leaf_count(t[2])


def _leaves(t) -> list:
    if isinstance(t, int):
        return [t]
    return _leaves(t[1]) + _leaves(t[2])


def _shape(t):
    if isinstance(t, int):
        return 0
    return (t[0], _shape(t[1]), _shape(t[2]))


def _fill(shape, labels):
    it = iter(labels)

    def go(s):
        if s == 0:
            return next(it)
        return (s[0], go(s[1]), go(s[2]))
    return go(shape)


def _relabel(t, f):
    if isinstance(t, int):
        return f(t)
    return (t[0], _relabel(t[1], f), _relabel(t[2], f))


def _shape_str(s, alphabet):
    if s == 0:
        return "-"
    return f"{alphabet[s[0]]}({_shape_str(s[1], alphabet)},{_shape_str(s[2], alphabet)})"


def tree_str(t, alphabet, leaf_prefix="x") -> str:
    if isinstance(t, int):
        return f"{leaf_prefix}{t}"
    return (f"{alphabet[t[0]]}({tree_str(t[1], alphabet, leaf_prefix)},"
            f"{tree_str(t[2], alphabet, leaf_prefix)})")


def compose_perms(s: tuple, t: tuple) -> tuple:
    """(s t)(i) = s(t(i)); permutations as tuples of images of 1..d."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """A multilinear polynomial of fixed degree over an operation alphabet.

    Terms map :class:`Monomial` to a nonzero exact scalar (int or Fraction)
    and are kept sorted by ``(type_index, perm)``.  Instances are immutable
    and hashable.
    """

    __slots__ = ("degree", "alphabet", "_terms", "_hash")

    def __init__(self, degree: int, alphabet, terms=()):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        self.degree = degree
        self.alphabet = OpAlphabet(alphabet)
        acc = defaultdict(int)
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            acc[Monomial(*m)] += c
        self._terms = tuple(sorted((m, _clean(c)) for m, c in acc.items() if c != 0))
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_trees(cls, trees, alphabet, degree=None):
        """Build from ``{tree: coeff}`` where tree leaves are variables 1..d."""
        alphabet = OpAlphabet(alphabet)
        items = trees.items() if isinstance(trees, dict) else trees
        items = list(items)
        if degree is None:
            if not items:
                raise ValueError("degree required for the zero polynomial")
            degree = _leaf_count(items[0][0])
        index = _shape_index(degree, len(alphabet))
        full = set(range(1, degree + 1))
        terms = []
        for t, c in items:
            perm = tuple(_leaves(t))
            if len(perm) != degree or set(perm) != full:
                raise ValueError(f"term {tree_str(t, alphabet)} is not multilinear of degree {degree}")
            terms.append((Monomial(index[_shape(t)], perm), c))
        return cls(degree, alphabet, terms)

    @classmethod
    def from_expr(cls, expr: "Expr", alphabet=None, degree=None):
        if alphabet is None:
            alphabet = expr.ops()
        alphabet = OpAlphabet(alphabet)
        trees = {}
        for t, c in expr.terms.items():
            trees[_relabel_ops(t, alphabet.index_of)] = c
        return cls.from_trees(trees, alphabet, degree)

    @classmethod
    def zero(cls, degree, alphabet):
        return cls(degree, alphabet, ())

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def trees(self):
        """Yield ``(tree, coeff)`` pairs."""
        shapes = _shapes(self.degree, len(self.alphabet))
        for m, c in self._terms:
            yield _fill(shapes[m.type_index], m.perm), c

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def vector(self) -> dict:
        """Sparse coefficient vector ``{column: coeff}`` in the monomial basis."""
        f = math.factorial(self.degree)
        rank = _perm_rank(self.degree)
        return {m.type_index * f + rank[m.perm]: c for m, c in self._terms}

    @classmethod
    def from_vector(cls, vec, degree, alphabet):
        f = math.factorial(degree)
        perms = _perms(degree)
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        return cls(degree, alphabet, [(Monomial(i // f, perms[i % f]), c) for i, c in items if c])

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.degree != self.degree or other.alphabet != self.alphabet:
            raise ValueError("polynomials of different degree or alphabet")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Polynomial(self.degree, self.alphabet, self._terms + other._terms)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Polynomial(self.degree, self.alphabet,
                          self._terms + tuple((m, -c) for m, c in other._terms))

    def __neg__(self):
        return Polynomial(self.degree, self.alphabet, [(m, -c) for m, c in self._terms])

    def __mul__(self, k):
        if isinstance(k, Polynomial):
            return NotImplemented
        return Polynomial(self.degree, self.alphabet, [(m, c * k) for m, c in self._terms])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.degree == other.degree and self.alphabet == other.alphabet
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, tuple(self.alphabet), self._terms))
        return self._hash

    def canonical(self) -> "Polynomial":
        """Scale to coprime integer coefficients with a positive first coefficient."""
        if not self._terms:
            return self
        cs = [Fraction(c) for _, c in self._terms]
        den = reduce(math.lcm, (c.denominator for c in cs), 1)
        nums = [int(c * den) for c in cs]
        g = reduce(math.gcd, nums, 0)
        if nums[0] < 0:
            g = -g
        return Polynomial(self.degree, self.alphabet,
                          [(m, n // g) for (m, _), n in zip(self._terms, nums)])

    def sort_key(self):
        return (len(self._terms), self._terms)

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, terms={len(self)}, ops={list(self.alphabet)})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t, c in self.trees():
            s = tree_str(t, self.alphabet)
            if c == 1:
                parts.append(f"+ {s}")
            elif c == -1:
                parts.append(f"- {s}")
            elif c < 0:
                parts.append(f"- {-c} {s}")
            else:
                parts.append(f"+ {c} {s}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[1:]


def _relabel_ops(t, f):
    if isinstance(t, int):
        return t
    return (f(t[0]), _relabel_ops(t[1], f), _relabel_ops(t[2], f))


def rename_ops(p: Polynomial, mapping: dict, alphabet) -> Polynomial:
    """Rename operations of ``p`` via ``mapping`` (old name -> new name) and
    re-index over ``alphabet``; unmapped names are kept as they are."""
    alphabet = OpAlphabet(alphabet)
    src = p.alphabet
    trees = [(_relabel_ops(t, lambda i: alphabet.index_of(mapping.get(src[i], src[i]))), c)
             for t, c in p.trees()]
    return Polynomial.from_trees(trees, alphabet, p.degree)


# ---------------------------------------------------------------------------
# symmetric group action and substitution

def act(perm, p: Polynomial) -> Polynomial:
    """Relabel every variable x_i of ``p`` as x_perm(i)."""
    perm = tuple(perm)
    if len(perm) != p.degree or sorted(perm) != list(range(1, p.degree + 1)):
        raise ValueError(f"{perm} is not a permutation of degree {p.degree}")
    return Polynomial(p.degree, p.alphabet,
                      [(Monomial(m.type_index, tuple(perm[v - 1] for v in m.perm)), c)
                       for m, c in p.items()])


def _graft(t, var, sub):
    if isinstance(t, int):
        return sub if t == var else t
    return (t[0], _graft(t[1], var, sub), _graft(t[2], var, sub))


def substitute(p: Polynomial, var: int, q: Polynomial) -> Polynomial:
    """Replace x_var in ``p`` by ``q``.

    Variables are renumbered so the substituted block sits at var's position:
    x_i (i < var) is unchanged, q's x_j becomes x_(var+j-1), and p's x_i with
    i > var becomes x_(i+deg q-1).
    """
    if p.alphabet != q.alphabet:
        raise ValueError("alphabet mismatch")
    if not 1 <= var <= p.degree:
        raise ValueError(f"x{var} does not occur in a polynomial of degree {p.degree}")
    dq = q.degree
    shift = lambda i: i if i < var else i + dq - 1
    out = defaultdict(int)
    for t, c in p.trees():
        t = _relabel(t, lambda i: -1 if i == var else shift(i))
        for s, cq in q.trees():
            out[_graft(t, -1, _relabel(s, lambda j: j + var - 1))] += c * cq
    return Polynomial.from_trees(out, p.alphabet, p.degree + dq - 1)


# ---------------------------------------------------------------------------
# general (not necessarily multilinear) expressions, used to write identities

class Expr:
    """Linear combination of trees with named operations at the vertices.

    Variables may repeat.  ``Expr`` exists to transcribe identities the way
    they are written by hand; convert with :meth:`Polynomial.from_expr` or
    :func:`polarize`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {t: c for t, c in (terms or {}).items() if c != 0}

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for t, c in other.terms.items():
            out[t] += c
        return Expr(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Expr({t: -c for t, c in self.terms.items()})

    def __mul__(self, k):
        return Expr({t: c * k for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Expr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def ops(self) -> list:
        seen = []

        def go(t):
            if isinstance(t, int):
                return
            if t[0] not in seen:
                seen.append(t[0])
            go(t[1])
            go(t[2])
        for t in self.terms:
            go(t)
        return seen

    def subs(self, mapping: dict) -> "Expr":
        """Substitute expressions for variables (multilinear extension)."""
        out = defaultdict(int)
        for t, c in self.terms.items():
            for s, k in _subs_tree(t, mapping).items():
                out[s] += c * k
        return Expr(out)

    def __repr__(self):
        return f"Expr({len(self.terms)} terms)"


def _subs_tree(t, mapping):
    if isinstance(t, int):
        if t in mapping:
            return mapping[t].terms
        return {t: 1}
    left = _subs_tree(t[1], mapping)
    right = _subs_tree(t[2], mapping)
    out = defaultdict(int)
    for a, ca in left.items():
        for b, cb in right.items():
            out[(t[0], a, b)] += ca * cb
    return out


def var(i: int) -> Expr:
    return Expr({i: 1})


def binop(name: str):
    """Return the bilinear operation ``name`` acting on :class:`Expr` values."""
    def op(a: Expr, b: Expr) -> Expr:
        out = defaultdict(int)
        for s, cs in a.terms.items():
            for t, ct in b.terms.items():
                out[(name, s, t)] += cs * ct
        return Expr(out)
    op.__name__ = name
    return op


def polarize(expr: Expr, alphabet=None) -> list[Polynomial]:
    """Full linearization of an identity.

    Each variable occurring k > 1 times in a term is replaced by k distinct
    variables (the first copy keeps its index, the others get fresh highest
    indices) summed over all k! placements.  Variables are then renumbered to
    1..d keeping their relative order.  Terms are grouped by multidegree, so
    one polynomial is returned per multihomogeneous component.  The result is
    not divided by the k! factors.
    """
    if alphabet is None:
        alphabet = expr.ops()
    alphabet = OpAlphabet(alphabet)
    groups = defaultdict(dict)
    for t, c in expr.terms.items():
        leaves = _leaves(t)
        md = tuple(sorted((v, leaves.count(v)) for v in set(leaves)))
        groups[md][t] = c
    out = []
    for md in sorted(groups):
        # fresh variables for the repeated copies, in variable order
        nxt = max(v for v, _ in md) + 1
        fresh = {}
        for v, k in md:
            fresh[v] = [v] + list(range(nxt, nxt + k - 1))
            nxt += k - 1
        used = sorted(x for xs in fresh.values() for x in xs)
        renum = {x: i + 1 for i, x in enumerate(used)}
        acc = defaultdict(int)
        for t, c in groups[md].items():
            leaves = _leaves(t)
            slots = defaultdict(list)
            for pos, v in enumerate(leaves):
                slots[v].append(pos)
            choices = [list(itertools.permutations(fresh[v])) for v, _ in md]
            shape = _shape(t)
            for combo in itertools.product(*choices):
                labels = list(leaves)
                for (v, _), perm in zip(md, combo):
                    for pos, x in zip(slots[v], perm):
                        labels[pos] = renum[x]
                acc[_fill(shape, labels)] += c
        d = len(used)
        poly = Polynomial.from_trees(
            {_relabel_ops(t, alphabet.index_of): c for t, c in acc.items()}, alphabet, d)
        if not poly.is_zero():
            out.append(poly)
    return out


# ---------------------------------------------------------------------------
# text format:  "<coeff> ; <tree>" per line, tree = op(<tree>,<tree>) | x<i>

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|(.))")


def parse_tree(text: str, leaf_prefix="x"):
    """Parse ``op(a,b)`` / ``x3`` into a tree with op *names* at vertices."""
    pos = 0
    text = text.strip()

    def error(msg):
        raise ValueError(f"{msg} at position {pos} in {text!r}")

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def ident():
        nonlocal pos
        skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(text, pos)
        if not m:
            error("expected a name")
        pos = m.end()
        return m.group()

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= len(text) or text[pos] != ch:
            error(f"expected {ch!r}")
        pos += 1

    def node():
        name = ident()
        m = re.fullmatch(re.escape(leaf_prefix) + r"(\d+)", name)
        if m:
            return int(m.group(1))
        expect("(")
        a = node()
        expect(",")
        b = node()
        expect(")")
        return (name, a, b)

    t = node()
    skip()
    if pos != len(text):
        error("trailing input")
    return t


def format_polynomial(p: Polynomial, leaf_prefix="x") -> str:
    lines = []
    for t, c in p.trees():
        lines.append(f"{c} ; {tree_str(t, p.alphabet, leaf_prefix)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_polynomial(text: str, alphabet=None, degree=None, leaf_prefix="x") -> Polynomial:
    """Inverse of :func:`format_polynomial`.  Blank lines and ``#`` comments
    are ignored.  Without ``alphabet`` the operations are taken in order of
    first appearance."""
    expr = Expr()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ";" not in line:
            raise ValueError(f"expected '<coeff> ; <tree>', got {raw!r}")
        c, t = line.split(";", 1)
        expr = expr + Expr({parse_tree(t, leaf_prefix): Fraction(c.strip())})
    if alphabet is None and not expr.terms:
        raise ValueError("cannot infer the alphabet of an empty polynomial")
    try:
        return Polynomial.from_expr(expr, alphabet, degree)
    except KeyError as e:
        raise ValueError(e.args[0]) from None
