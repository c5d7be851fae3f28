import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from splitalg.freealg import (
    Monomial, OpAlphabet, Polynomial, act, binop, compose_perms, count_assoc_types,
    enumerate_assoc_types, enumerate_monomials, format_polynomial, monomial_index,
    parse_polynomial, parse_tree, polarize, rename_ops, substitute, tree_str, var,
)

OPS2 = OpAlphabet(["prec", "succ"])


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_type_count_is_catalan_times_labels(d, q):
    n = count_assoc_types(d, q)
    assert n == catalan(d - 1) * q ** (d - 1)
    assert len(enumerate_assoc_types(d, [f"o{i}" for i in range(q)])) == n


def test_degree4_counts():
    assert [count_assoc_types(4, q) for q in (1, 2, 4)] == [5, 40, 320]
    assert [len(enumerate_monomials(4, [f"o{i}" for i in range(q)])) for q in (1, 2, 4)] == [120, 960, 7680]


def test_monomial_index_is_position():
    monos = enumerate_monomials(3, OPS2)
    assert [monomial_index(m, 3) for m in monos] == list(range(len(monos)))


def test_types_are_distinct_and_sorted_stably():
    ts = [str(t) for t in enumerate_assoc_types(4, OPS2)]
    assert len(set(ts)) == len(ts)
    assert ts == [str(t) for t in enumerate_assoc_types(4, OPS2)]


# -- random polynomials ------------------------------------------------------

def polys(degree, alphabet=OPS2, max_terms=5):
    n = len(enumerate_monomials(degree, alphabet))
    return st.dictionaries(st.integers(0, n - 1), st.integers(-3, 3).filter(bool),
                           max_size=max_terms).map(
        lambda v: Polynomial.from_vector(v, degree, alphabet))


perms3 = st.permutations([1, 2, 3]).map(tuple)


@given(polys(3), perms3, perms3)
def test_action_composes(p, s, t):
    assert act(s, act(t, p)) == act(compose_perms(s, t), p)


@given(polys(3))
def test_identity_action(p):
    assert act((1, 2, 3), p) == p


@given(polys(3), polys(3), perms3, st.integers(-3, 3))
def test_action_is_linear(p, q, s, k):
    assert act(s, p + q * k) == act(s, p) + act(s, q) * k


@given(polys(2), polys(2), polys(2), st.integers(1, 2))
def test_substitution_is_bilinear(p, q, r, v):
    assert substitute(p + q, v, r) == substitute(p, v, r) + substitute(q, v, r)
    assert substitute(p, v, q + r) == substitute(p, v, q) + substitute(p, v, r)


def test_substitution_renumbers():
    mul = binop("mul")
    x1, x2, x3 = var(1), var(2), var(3)
    p = Polynomial.from_expr(mul(x1, x2))
    q = Polynomial.from_expr(mul(x1, x2))
    got = substitute(p, 1, q)
    assert got == Polynomial.from_expr(mul(mul(x1, x2), x3))
    got = substitute(p, 2, q)
    assert got == Polynomial.from_expr(mul(x1, mul(x2, x3)))


@given(polys(3))
def test_vector_roundtrip(p):
    assert Polynomial.from_vector(p.vector(), 3, OPS2) == p


@given(polys(3))
def test_text_roundtrip(p):
    assert parse_polynomial(format_polynomial(p), OPS2, degree=3) == p


@given(polys(3))
def test_canonical_is_scale_invariant(p):
    if p.is_zero():
        return
    assert (p * -2).canonical() == p.canonical()


def test_parse_tree_roundtrip():
    t = parse_tree("prec(x1,succ(x3,x2))")
    assert t == ("prec", 1, ("succ", 3, 2))
    assert tree_str(_named(t, {"prec": 0, "succ": 1}), OPS2) == "prec(x1,succ(x3,x2))"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_polynomial("1 mul(x1,x2)", ["mul"])
    with pytest.raises(ValueError):
        parse_polynomial("1 ; mul(x1,x1)", ["mul"])


def test_rename_ops():
    mul = binop("mul")
    p = Polynomial.from_expr(mul(var(1), var(2)))
    q = rename_ops(p, {"mul": "br"}, ["br"])
    assert q.alphabet == ("br",)
    assert format_polynomial(q).strip() == "1 ; br(x1,x2)"


def test_act_rejects_non_permutation():
    p = Polynomial.from_expr(binop("mul")(var(1), var(2)))
    with pytest.raises(ValueError):
        act((1, 1), p)


# -- polarization oracle -------------------------------------------------------
# Evaluate in a random 3-dimensional algebra.  For f(x, y) quadratic in x the
# full linearization satisfies  lin(a, c, b) = f(a+b, c) - f(a, c) - f(b, c).

def _eval_tree(t, table, vals):
    if isinstance(t, int):
        return vals[t]
    op, a, b = t
    u, v = _eval_tree(a, table, vals), _eval_tree(b, table, vals)
    return np.einsum("i,j,ijk->k", u, v, table[op])


def _eval_expr(e, tables, vals):
    return sum(c * _eval_tree(t, tables, vals) for t, c in e.terms.items())


def _eval_poly(p, tables, vals):
    names = dict(enumerate(p.alphabet))
    out = 0
    for t, c in p.trees():
        out = out + c * _eval_tree(_named(t, names), tables, vals)
    return out


def _named(t, names):
    if isinstance(t, int):
        return t
    return (names[t[0]], _named(t[1], names), _named(t[2], names))


@pytest.mark.parametrize("seed", range(3))
def test_polarization_matches_finite_difference(seed):
    rng = np.random.default_rng(seed)
    tables = {"mul": rng.integers(-3, 4, size=(3, 3, 3))}
    mul = binop("mul")
    x, y = var(1), var(2)
    f = mul(mul(x, x), y) - mul(x, mul(x, y))       # (x, x, y)
    (lin,) = polarize(f)
    assert lin.degree == 3
    a, b, c = (rng.integers(-3, 4, size=3) for _ in range(3))
    lhs = _eval_poly(lin, tables, {1: a, 2: c, 3: b})
    rhs = (_eval_expr(f, tables, {1: a + b, 2: c}) - _eval_expr(f, tables, {1: a, 2: c})
           - _eval_expr(f, tables, {1: b, 2: c}))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("seed", range(3))
def test_polarization_cubic(seed):
    # x^3 in a commutative power: the linearization is the sum over the 3! fillings
    rng = np.random.default_rng(seed)
    tables = {"mul": rng.integers(-3, 4, size=(2, 2, 2))}
    mul = binop("mul")
    x = var(1)
    f = mul(mul(x, x), x)
    (lin,) = polarize(f)
    a, b, c = (rng.integers(-3, 4, size=2) for _ in range(3))
    vals = {1: a, 2: b, 3: c}
    # third mixed difference
    def F(v):
        return _eval_expr(f, tables, {1: v})
    rhs = (F(a + b + c) - F(a + b) - F(a + c) - F(b + c) + F(a) + F(b) + F(c))
    assert np.array_equal(_eval_poly(lin, tables, vals), rhs)


def test_multilinear_polarize_is_identity():
    mul = binop("mul")
    f = mul(mul(var(1), var(2)), var(3)) - mul(var(1), mul(var(2), var(3)))
    (p,) = polarize(f)
    assert p == Polynomial.from_expr(f)
