import pytest
from hypothesis import given, strategies as st

from splitalg import varieties as V
from splitalg.exactla import GF101, QQ, span
from splitalg.freealg import Polynomial, act, binop, format_polynomial, var
from splitalg.identmod import (
    ExpansionRule, IdentitySystem, L, R, expand, express_in_lifting_basis, find_new_identities,
    format_rule, format_system, identity_module, is_consequence, lifting_basis,
    lifting_generators, lifting_module, liftings, minimize_generators, operator_word_to_poly,
    parse_rule, parse_system, permutation_rows,
)

mul, br = binop("mul"), binop("br")
x1, x2, x3, x4 = var(1), var(2), var(3), var(4)


def P(e, ops=("mul",)):
    return Polynomial.from_expr(e, list(ops))


def pm():
    return V.get_system("pre-malcev").identities[0]


# -- expansion -----------------------------------------------------------------

def test_commutator_at_root():
    got = expand(V.get_rule("commutator"), P(br(x1, x2), ["br"]))
    assert got == P(mul(x1, x2) - mul(x2, x1))


def test_commutator_degree3():
    got = expand(V.get_rule("commutator"), P(br(br(x1, x2), x3), ["br"]))
    want = (mul(mul(x1, x2), x3) - mul(mul(x2, x1), x3)
            - mul(x3, mul(x1, x2)) + mul(x3, mul(x2, x1)))
    assert got == P(want)


def test_dendriform_commutator_rule():
    got = expand(V.get_rule("dendriform-commutator"), P(mul(x1, x2)))
    prec, succ = binop("prec"), binop("succ")
    assert got == P(succ(x1, x2) - prec(x2, x1), ["prec", "succ"])


def test_sum_rule_on_associativity_gives_dendriform_sum():
    assoc = P(mul(mul(x1, x2), x3) - mul(x1, mul(x2, x3)))
    got = expand(V.get_rule("dendriform-sum"), assoc)
    assert len(got) == 8
    total = sum(V.get_system("dendriform").identities[1:],
                V.get_system("dendriform").identities[0])
    assert got == total


@given(st.permutations([1, 2, 3]).map(tuple))
def test_expand_commutes_with_action(s):
    f = V.get_system("lie").identities[1]
    rule = V.get_rule("commutator")
    assert expand(rule, act(s, f)) == act(s, expand(rule, f))


# -- liftings ------------------------------------------------------------------

def test_lifting_counts():
    assert len(liftings(V.get_system("pre-lie").identities[0])) == 5
    ad = V.get_system("alt-dendriform").identities[0]
    assert len(liftings(ad)) == 10
    aq = V.get_system("alt-quadri")
    assert len(liftings(aq.identities[0])) == 20
    assert len(lifting_generators(aq, 4)) == 180


def test_liftings_have_degree_plus_one():
    for g in liftings(V.get_system("alternative").identities[0]):
        assert g.degree == 4


def test_empty_system_gives_zero_space():
    s = IdentitySystem("empty", ["mul"], ())
    assert lifting_module(s, 4).rank == 0


def test_pm_module_dimension():
    rows = permutation_rows([pm()])
    assert len(rows) == 24
    for f in (GF101, QQ):
        assert span(rows, 120, f).rank == 20


def test_md_module_dimension():
    md = V.get_system("m-dendriform")
    assert lifting_module(md, 4).rank == 80


def test_lifting_module_same_over_both_fields():
    s = V.get_system("alternative")
    assert lifting_module(s, 4, GF101).rank == lifting_module(s, 4, QQ).rank == 88


def test_lifting_basis_is_independent():
    s = V.get_system("pre-lie")
    b = lifting_basis(s, 4)
    assert len(b) == lifting_module(s, 4).rank
    assert span(b, 120, QQ).rank == len(b)


def test_express_in_lifting_basis_roundtrip():
    s = V.get_system("pre-lie")
    basis = lifting_basis(s, 4)
    c = express_in_lifting_basis(pm(), s)
    total = {}
    for ci, b in zip(c, basis):
        for k, v in b.items():
            total[k] = total.get(k, 0) + ci * v
    assert {k: v for k, v in total.items() if v} == pm().vector()


# -- new identities ----------------------------------------------------------

def test_associative_commutator_gives_jacobi_and_anticommutativity():
    rep = find_new_identities(V.get_system("associative"), V.get_rule("commutator"), 3, QQ)
    lie3 = lifting_module(V.get_system("lie"), 3, QQ)
    assert rep.module == lie3


def test_reported_rows_are_sound():
    # every reported identity expands into the lifting module, checked directly
    s, r = V.get_system("pre-lie"), V.get_rule("commutator")
    rep = find_new_identities(s, r, 3, QQ)
    mod = lifting_module(s, 3, QQ)
    assert rep.count > 0
    for f in rep.identities:
        assert mod.contains(expand(r, f).vector())


def test_dendriform_commutator_degree3_empty():
    for f in (GF101, QQ):
        rep = find_new_identities(V.get_system("alt-dendriform"),
                                  V.get_rule("dendriform-commutator"), 3, f)
        assert rep.count == 0 and rep.minimal == []


def test_rule_system_mismatch():
    with pytest.raises(ValueError):
        find_new_identities(V.get_system("alt-dendriform"), V.get_rule("commutator"), 3)


# -- minimization ----------------------------------------------------------------

def test_minimize_drops_multiples():
    f = pm()
    assert minimize_generators([f, f * 2]) == [f.canonical()]


def test_minimize_md_keeps_all_four():
    md = V.get_system("m-dendriform").identities
    assert len(minimize_generators(list(md))) == 4


def test_minimize_pm_orbit_to_one():
    f = pm()
    orbit = [act(s, f) for s in [(1, 2, 3, 4), (2, 1, 3, 4), (4, 3, 2, 1), (1, 3, 2, 4)]]
    kept = minimize_generators(orbit)
    assert len(kept) == 1


def test_minimize_with_context():
    md = list(V.get_system("m-dendriform").identities)
    ctx = identity_module(md[1:], 4, V.TRIANGLE_OPS)
    assert minimize_generators(md, ctx) == [md[0].canonical()]


# -- consequences and operator words ----------------------------------------

def test_sagle_under_commutator_is_pm_consequence():
    pmsys = V.get_system("pre-malcev")
    sagle = V.get_system("sagle").identities[1]
    assert is_consequence(sagle, pmsys, V.get_rule("commutator"))


def test_pm_is_pre_lie_consequence():
    assert is_consequence(pm(), V.get_system("pre-lie"))


def test_associativity_not_a_pre_lie_consequence():
    assoc = V.get_system("associative").identities[0]
    assert not is_consequence(assoc, V.get_system("pre-lie"))


def test_pre_jordan_from_alt_dendriform():
    rule = V.get_rule("dendriform-anticommutator")
    for g in V.get_system("pre-jordan").identities:
        assert is_consequence(g, V.get_system("alt-dendriform"), rule)


def test_left_multiplication_word():
    assert operator_word_to_poly(L(1), 2) == P(mul(x1, x2))


def test_kuzmin_word_is_pm():
    assert operator_word_to_poly(V.kuzmin_word(), 4) == pm()


def test_bimodule_words_in_pm_span():
    mod = identity_module([pm()], 4, ["mul"])
    for w in V.bimodule_words():
        assert mod.contains(operator_word_to_poly(w, 4).vector())


# -- text formats -------------------------------------------------------------

@pytest.mark.parametrize("name", V.list_systems())
def test_system_roundtrip(name):
    s = V.get_system(name)
    t = parse_system(format_system(s))
    assert t.alphabet == s.alphabet and t.identities == s.identities


@pytest.mark.parametrize("name", V.list_rules())
def test_rule_roundtrip(name):
    r = V.get_rule(name)
    t = parse_rule(format_rule(r))
    assert (t.source, t.target, t.images) == (r.source, r.target, r.images)


def test_system_name_is_optional():
    assert parse_system("ops mul\n\n1 ; mul(x1,x2)\n").name == "unnamed"


def test_parse_system_errors():
    with pytest.raises(ValueError):
        parse_system("system s\n\n1 ; mul(x1,x2)\n")
    with pytest.raises(ValueError):
        parse_system("system s\nops mul\n\n1 ; foo(x1,x2)\n")
