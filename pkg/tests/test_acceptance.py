"""The nine acceptance criteria, exact arithmetic throughout.

Each test records its criterion number; the terminal summary prints one
pass/FAIL line per criterion (see conftest.py).  Run on its own with

    python3 -m pytest tests/test_acceptance.py -v
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

from splitalg import varieties as V
from splitalg.concrete import (
    LinOp, StructConstAlgebra, commuting_rb_lemma, derive, evaluate, horizontal_homomorphism,
    satisfies, search_rb, vertical_matches,
)
from splitalg.exactla import GF101, QQ, span
from splitalg.freealg import (
    Polynomial, binop, count_assoc_types, enumerate_monomials, rename_ops, var,
)
from splitalg.identmod import (
    expand, express_in_lifting_basis, find_new_identities, identity_module, is_consequence,
    lifting_generators, lifting_module, operator_word_to_poly, permutation_rows,
)
from splitalg.splitkit import disuccessor, disuccessor_system, modules_equal, sum_rule


@pytest.fixture
def criterion(record_property):
    def mark(n, note=None):
        record_property("criterion", n)
        if note:
            record_property("note", note)
    return mark


@contextmanager
def budget(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.1f} s, budget {seconds} s"


def pm():
    return V.get_system("pre-malcev").identities[0]


# -- 1 ----------------------------------------------------------------------

def test_c1_enumeration_counts(criterion):
    criterion(1)
    with budget(1):
        types = [count_assoc_types(4, q) for q in (1, 2, 4)]
        monos = [len(enumerate_monomials(4, [f"o{i}" for i in range(q)])) for q in (1, 2, 4)]
    assert types == [5, 40, 320]
    assert monos == [120, 960, 7680]


# -- 2 ----------------------------------------------------------------------

@pytest.mark.parametrize("field", [GF101, QQ], ids=["F101", "Q"])
def test_c2_dendriform_commutator(criterion, field):
    criterion(2)
    ad, rule = V.get_system("alt-dendriform"), V.get_rule("dendriform-commutator")
    with budget(60):
        r3 = find_new_identities(ad, rule, 3, field)
        r4 = find_new_identities(ad, rule, 4, field)
    assert r3.count == 0
    assert r4.count == 20
    assert r4.module == identity_module([pm()], 4, ["mul"], field)
    assert [g.canonical() for g in r4.minimal] == [pm().canonical()]


# -- 3 ----------------------------------------------------------------------

def test_c3_lifting_module_and_expression(criterion):
    criterion(3)
    ad = V.get_system("alt-dendriform")
    with budget(60):
        assert lifting_module(ad, 4, GF101).rank == 552
        assert lifting_module(ad, 4, QQ).rank == 552
        target = expand(V.get_rule("dendriform-commutator"), pm())
        coeffs = express_in_lifting_basis(target, ad)
    assert sum(1 for c in coeffs if c) == 109


# -- 4 ----------------------------------------------------------------------

def test_c4_quadri_to_m_dendriform(criterion):
    criterion(4)
    aq, rule = V.get_system("alt-quadri"), V.get_rule("m-dendriform-extraction")
    md = V.get_system("m-dendriform")
    with budget(600):
        r3 = find_new_identities(aq, rule, 3, GF101, minimize=False)
        r4 = find_new_identities(aq, rule, 4, GF101, minimize=False)
    assert r3.count == 0
    assert r4.count == 80
    assert r4.module.rank == 80
    assert r4.module == identity_module(list(md.identities), 4, md.alphabet, GF101)
    assert r4.n_generators == 180
    assert r4.shape == (5280, 8640)


# -- 5 ----------------------------------------------------------------------

def _orbit_span(polys, alphabet, field=QQ):
    d = polys[0].degree
    n = len(enumerate_monomials(d, alphabet))
    return span(permutation_rows(polys), n, field)


def test_c5_quadri_pairwise_non_redundant(criterion):
    criterion(5)
    aq = V.get_system("alt-quadri")
    ids = aq.identities
    with budget(10):
        mods = [_orbit_span([f], aq.alphabet) for f in ids]
        bad = [(i + 1, j + 1) for i, j in itertools.permutations(range(9), 2)
               if mods[j].contains(ids[i].vector())]
    assert bad == []


def test_c5_lower_row_deducible(criterion):
    criterion(5)
    ad = V.get_system("alt-dendriform")
    with budget(10):
        for i in V.alternative_dendriform_lower_row():
            rest = [g for j, g in enumerate(ad.identities) if j != i]
            assert _orbit_span(rest, ad.alphabet).contains(ad.identities[i].vector())


@pytest.mark.xfail(strict=True, reason="alt-quadri identities 2 and 9 lie in the S3-module "
                   "of the other eight (certified over Q); see the decisions ledger")
def test_c5_quadri_leave_one_out_independent(criterion):
    criterion(5, "leave-one-out: identities 2 and 9 are implied by the other eight")
    aq = V.get_system("alt-quadri")
    ids = list(aq.identities)
    with budget(10):
        implied = [i + 1 for i in range(9)
                   if _orbit_span(ids[:i] + ids[i + 1:], aq.alphabet).contains(ids[i].vector())]
    assert implied == []


# -- 6 ----------------------------------------------------------------------

def test_c6_disuccessor(criterion):
    criterion(6)
    with budget(60):
        for src, (dst, ren, ops) in V.SPLITS.items():
            split = disuccessor_system(V.get_system(src), ren, ops)
            eq = modules_equal(split, V.get_system(dst))
            assert eq and all(eq.values()), (src, dst, eq)
        for name in V.list_systems():
            system = V.get_system(name)
            rule = sum_rule(system.alphabet)
            for g in system.identities:
                parts = disuccessor(g)
                total = parts[0]
                for p in parts[1:]:
                    total = total + p
                assert total == expand(rule, g), name


# -- 7 ----------------------------------------------------------------------

def _sagle_combination():
    x, y, z, t = V.x, V.y, V.z, V.t
    P = V.pre_malcev
    e = (P(x, z, t, y) - P(x, t, y, z) + P(x, t, z, y) - P(y, x, z, t)
         + P(z, x, t, y) - P(z, y, t, x) + P(z, t, x, y) + P(t, x, z, y))
    return Polynomial.from_expr(e, ["mul"])


def test_c7_symbolic_proofs(criterion):
    criterion(7)
    T = V.TRIANGLE_OPS
    with budget(120):
        # Sagle under the commutator is cancelled exactly by 8 PM permutations
        sagle = expand(V.get_rule("commutator"), V.get_system("sagle").identities[1])
        assert (sagle + _sagle_combination()).is_zero()
        # the left-multiplication word applied to t is PM
        assert operator_word_to_poly(V.kuzmin_word(), 4) == pm()
        # pre-Lie implies pre-Malcev
        assert is_consequence(pm(), V.get_system("pre-lie"))
        # pre-Jordan from alternative dendriform under the anticommutator
        rule = V.get_rule("dendriform-anticommutator")
        for g in V.get_system("pre-jordan").identities:
            assert is_consequence(g, V.get_system("alt-dendriform"), rule)
        # J-dendriform is what the J-extraction of alt-quadri gives in degree 4
        rj = find_new_identities(V.get_system("alt-quadri"), V.get_rule("j-dendriform-extraction"),
                                 4, minimize=False)
        jd = V.get_system("j-dendriform")
        assert rj.module == identity_module(list(jd.identities), 4, T)
        # associator decompositions for the horizontal and vertical structures
        assert V.associator_decomposition("quadri-horizontal", "r") == {"r": 1, "sw": 1, "w": 1}
        assert V.associator_decomposition("quadri-horizontal", "m") == {"n": 1, "s": 1, "m": 1}
        assert V.associator_decomposition("quadri-horizontal", "l") == {"l": 1, "ne": 1, "e": 1}
        assert V.associator_decomposition("quadri-vertical", "r") == {"r": 1, "ne": 1, "n": 1}
        assert V.associator_decomposition("quadri-vertical", "m") == {"w": 1, "e": 1, "m": 1}
        assert V.associator_decomposition("quadri-vertical", "l") == {"l": 1, "sw": 1, "s": 1}
        aq3 = lifting_module(V.get_system("alt-quadri"), 3)
        for rname, sname in (("quadri-horizontal", "alt-dendriform"),
                             ("quadri-vertical", "alt-dendriform"),
                             ("quadri-sum", "alternative")):
            for g in V.get_system(sname).identities:
                assert aq3.contains(expand(V.get_rule(rname), g).vector()), (rname, sname)
        # horizontal and vertical products of an M-dendriform algebra are pre-Malcev
        for r in ("horizontal-premalcev", "vertical-premalcev"):
            assert is_consequence(pm(), V.get_system("m-dendriform"), V.get_rule(r))
        # MD1-MD4 follow from the L-dendriform identities
        ld4 = lifting_module(V.get_system("l-dendriform"), 4)
        for g in V.get_system("m-dendriform").identities:
            assert ld4.contains(g.vector())
        # bimodule axioms with l, r = left and right multiplications
        pm_mod = identity_module([pm()], 4, ["mul"])
        words = V.bimodule_words()
        assert words
        for w in words:
            assert pm_mod.contains(operator_word_to_poly(w, 4).vector())


# -- 8 ----------------------------------------------------------------------

def lie2():
    return StructConstAlgebra.from_table(2, {"br": {(1, 2): {2: 1}, (2, 1): {2: -1}}})


def assoc2():
    return StructConstAlgebra.from_table(2, {"mul": {(1, 1): {1: 1}, (1, 2): {2: 1}}})


def test_c8_rota_baxter_pipeline(criterion):
    criterion(8)
    with budget(60):
        L2 = lie2()
        rbs = search_rb(L2, "br", (-1, 0, 1))
        assert len(rbs) >= 1
        for R in rbs:
            P = derive(L2, "malcev-to-premalcev", [R])
            assert satisfies(P, V.get_system("pre-malcev")).ok
            for S in search_rb(P, "mul"):
                M = derive(P, "premalcev-to-mdendriform", [S])
                assert satisfies(M, V.get_system("m-dendriform")).ok
        A = assoc2()
        rbA = search_rb(A, "mul")
        assert rbA
        for R1 in rbA:
            D = derive(A, "alt-to-altdendriform", [R1])
            assert satisfies(D, V.get_system("alt-dendriform")).ok
            for R2 in search_rb(D, None):
                Q = derive(D, "dendri-to-quadri", [R2])
                assert satisfies(Q, V.get_system("alt-quadri")).ok
                assert horizontal_homomorphism(D, R2)
                assert vertical_matches(D, R2)
            for R2 in rbA:
                if R1.commutes_with(R2):
                    assert commuting_rb_lemma(A, R1, R2)
                    Q = derive(A, "double-rb-quadri", [R1, R2])
                    assert satisfies(Q, V.get_system("alt-quadri")).ok


# -- 9 ----------------------------------------------------------------------

def _kernel(system, rule, d):
    """Reference: Fraction Gauss-Jordan on [lifting rows; expansion rows]^T,
    written out here without the package's elimination engines."""
    from fractions import Fraction
    n_t = len(enumerate_monomials(d, rule.target))
    lift = permutation_rows(lifting_generators(system, d))
    n_s = len(enumerate_monomials(d, rule.source))
    images = [expand(rule, Polynomial.from_vector({j: 1}, d, rule.source)).vector()
              for j in range(n_s)]
    vecs = lift + images
    M = [[Fraction(v.get(k, 0)) for v in vecs] for k in range(n_t)]
    ncols = len(vecs)
    piv, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv]
    ker = []
    for fc in free:
        y = [Fraction(0)] * ncols
        y[fc] = Fraction(1)
        for i, pc in enumerate(piv):
            y[pc] = -M[i][fc]
        ker.append({j: y[len(lift) + j] for j in range(n_s) if y[len(lift) + j] != 0})
    return span([k for k in ker if k], n_s, QQ)


def test_c9_oracle_equivalence(criterion):
    criterion(9)
    with budget(10):
        for sname, rname in (("associative", "commutator"), ("pre-lie", "commutator"),
                             ("alternative", "anticommutator")):
            system, rule = V.get_system(sname), V.get_rule(rname)
            assert len(enumerate_monomials(3, rule.source)) == 12
            rep = find_new_identities(system, rule, 3, QQ, minimize=False)
            assert rep.module == _kernel(system, rule, 3), (sname, rname)
        cases = [(lie2(), [rename_ops(g, {"mul": "br"}, ["br"])
                           for g in V.get_system("associative").identities]),
                 (lie2(), V.get_system("sagle")), (assoc2(), V.get_system("alternative")),
                 (assoc2(), V.get_system("pre-lie")),
                 (derive(lie2(), "malcev-to-premalcev", [LinOp([[1, 0], [0, 0]])]),
                  V.get_system("pre-malcev"))]
        rng = np.random.default_rng(0)
        for A, system in cases:
            ids = list(system.identities) if hasattr(system, "identities") else system
            basis_ok = satisfies(A, ids).ok
            random_ok = all(
                not any(evaluate(A, f, [rng.integers(-5, 6, size=A.dim) for _ in range(f.degree)]))
                for _ in range(100) for f in ids)
            assert basis_ok == random_ok
