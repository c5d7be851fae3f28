"""
Splitting of operations (the disuccessor).

Each operation ``o`` becomes the pair ``o_prec``, ``o_succ``.  For a
multilinear identity of degree d and each k = 1..d, every vertex of every
monomial is relabeled ``o_prec`` if the path from the root to the leaf x_k
turns left there, ``o_succ`` if it turns right, and ``o_prec + o_succ`` if
the path does not pass through the vertex.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .freealg import OpAlphabet, Polynomial, rename_ops
from .identmod import ExpansionRule, IdentitySystem, lifting_module

__all__ = [
    "SplitAlphabetMap", "split_alphabet", "disuccessor", "disuccessor_system",
    "sum_rule", "rename_system", "QUADRI_SPLIT", "modules_equal",
]


@dataclass(frozen=True)
class SplitAlphabetMap:
    source: OpAlphabet
    target: OpAlphabet

    def pair(self, op: str) -> tuple[str, str]:
        i = self.source.index_of(op)
        return self.target[2 * i], self.target[2 * i + 1]


def split_alphabet(alphabet) -> SplitAlphabetMap:
    alphabet = OpAlphabet(alphabet)
    return SplitAlphabetMap(alphabet, OpAlphabet([f"{o}_{s}" for o in alphabet
                                                  for s in ("prec", "succ")]))


# splitting prec/succ lands on the four arrows
QUADRI_SPLIT = {"prec_prec": "nw", "prec_succ": "sw", "succ_prec": "ne", "succ_succ": "se"}


def _contains(t, k):
    if isinstance(t, int):
        return t == k
    return _contains(t[1], k) or _contains(t[2], k)


def _split_tree(t, k):
    """Expansion of one monomial for distinguished leaf x_k: {tree: coeff}
    with vertex labels 2*op (prec) or 2*op + 1 (succ)."""
    if isinstance(t, int):
        return {t: 1}
    op, a, b = t
    if k is not None and _contains(a, k):
        labels, ka, kb = (2 * op,), k, None
    elif k is not None and _contains(b, k):
        labels, ka, kb = (2 * op + 1,), None, k
    else:
        labels, ka, kb = (2 * op, 2 * op + 1), None, None
    left, right = _split_tree(a, ka), _split_tree(b, kb)
    out = defaultdict(int)
    for lab in labels:
        for s, cs in left.items():
            for u, cu in right.items():
                out[(lab, s, u)] += cs * cu
    return out


def disuccessor(identity: Polynomial) -> list[Polynomial]:
    """The d split identities of a multilinear identity, k = 1..d."""
    smap = split_alphabet(identity.alphabet)
    trees = list(identity.trees())
    out = []
    for k in range(1, identity.degree + 1):
        acc = defaultdict(int)
        for tr, c in trees:
            for s, cs in _split_tree(tr, k).items():
                acc[s] += c * cs
        out.append(Polynomial.from_trees(acc, smap.target, identity.degree))
    return out


def disuccessor_system(system: IdentitySystem, rename: dict | None = None,
                       alphabet=None) -> IdentitySystem:
    """Union of the split identities, deduplicated up to scalars.  With
    ``rename`` (split name -> new name) the result is re-expressed over
    ``alphabet``."""
    target = split_alphabet(system.alphabet).target
    if rename is not None:
        target = OpAlphabet(alphabet if alphabet is not None
                            else [rename.get(o, o) for o in target])
    ids, seen = [], set()
    for f in system.identities:
        for g in disuccessor(f):
            if rename is not None:
                g = rename_ops(g, rename, target)
            c = g.canonical()
            if not c.is_zero() and c not in seen:
                seen.add(c)
                ids.append(g)
    return IdentitySystem(f"di-{system.name}", target, tuple(ids))


def sum_rule(alphabet) -> ExpansionRule:
    """o -> o_prec + o_succ for each operation."""
    smap = split_alphabet(alphabet)
    imgs = []
    for o in smap.source:
        p, s = smap.pair(o)
        ip, is_ = smap.target.index_of(p), smap.target.index_of(s)
        imgs.append(Polynomial.from_trees([((ip, 1, 2), 1), ((is_, 1, 2), 1)], smap.target, 2))
    return ExpansionRule(f"sum-{'-'.join(smap.source)}", smap.source, smap.target, tuple(imgs))


def rename_system(system: IdentitySystem, mapping: dict, alphabet) -> IdentitySystem:
    alphabet = OpAlphabet(alphabet)
    return IdentitySystem(system.name, alphabet,
                          tuple(rename_ops(f, mapping, alphabet) for f in system.identities))


def modules_equal(s1: IdentitySystem, s2: IdentitySystem, field=None) -> dict:
    """Compare the degree-d consequences (identities of degree d together
    with the liftings of lower ones) for each degree d occurring in either
    system; returns {degree: bool}."""
    if s1.alphabet != s2.alphabet:
        raise ValueError("systems over different alphabets")
    return {d: lifting_module(s1, d, field) == lifting_module(s2, d, field)
            for d in sorted(set(s1.degrees()) | set(s2.degrees()))}
