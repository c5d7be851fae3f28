"""
Catalog of the identity systems and expansion rules used throughout.

Variables x, y, z, t are x1..x4.  Operation names follow the registry:
``mul`` (product, also used for circle products), ``br`` (bracket),
``prec``/``succ``, ``nw``/``ne``/``sw``/``se`` (the four quadri arrows),
``vee``/``wedge``, ``tl``/``tr`` (black left/right triangles).
"""

from __future__ import annotations

from dataclasses import dataclass

from .freealg import Expr, OpAlphabet, Polynomial, binop, polarize, var
from .identmod import ExpansionRule, IdentitySystem, L, OpWord, R

__all__ = [
    "CatalogEntry", "RuleEntry", "get_system", "get_rule", "get_entry",
    "list_systems", "list_rules", "associator", "alt_dendriform_associators",
    "quadri_associators", "kuzmin_word", "bimodule_words", "QUADRI_OPS",
    "DENDRIFORM_OPS", "TRIANGLE_OPS", "alternative_dendriform_lower_row",
    "SPLITS", "associator_decomposition", "get_rule_entry",
]

x, y, z, t = (var(i) for i in range(1, 5))

mul = binop("mul")
br = binop("br")
prec, succ = binop("prec"), binop("succ")
nw, ne, sw, se = binop("nw"), binop("ne"), binop("sw"), binop("se")
tl, tr = binop("tl"), binop("tr")

DENDRIFORM_OPS = OpAlphabet(["prec", "succ"])
QUADRI_OPS = OpAlphabet(["nw", "ne", "sw", "se"])
TRIANGLE_OPS = OpAlphabet(["tl", "tr"])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: IdentitySystem
    note: str
    raw: tuple = ()             # forms as originally written, where they differ


@dataclass(frozen=True)
class RuleEntry:
    name: str
    rule: ExpansionRule
    note: str


def associator(op, a, b, c):
    return op(op(a, b), c) - op(a, op(b, c))


def _poly(e: Expr, ops) -> Polynomial:
    return Polynomial.from_expr(e, ops)


# -- bracket algebras -------------------------------------------------------

def _jacobian(a, b, c):
    return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b)


def _malcev_raw():
    return _jacobian(x, y, br(x, z)) - br(_jacobian(x, y, z), x)


def _sagle():
    return (br(br(x, z), br(y, t)) - br(br(br(x, y), z), t) - br(br(br(y, z), t), x)
            - br(br(br(z, t), x), y) - br(br(br(t, x), y), z))


# -- one product --------------------------------------------------------------

def _mul_assoc(a, b, c):
    return associator(mul, a, b, c)


def pre_lie(a, b, c):
    return _mul_assoc(a, b, c) - _mul_assoc(b, a, c)


def pre_malcev(a, b, c, d):
    """PM(a,b,c,d) for the product ``mul``."""
    m = mul
    return (m(m(b, c), m(a, d)) - m(m(c, b), m(a, d))
            + m(m(m(a, b), c), d) - m(m(m(b, a), c), d)
            - m(m(c, m(a, b)), d) + m(m(c, m(b, a)), d)
            + m(b, m(m(a, c), d)) - m(b, m(m(c, a), d))
            - m(a, m(b, m(c, d))) + m(c, m(a, m(b, d))))


def _circ(a, b):
    return mul(a, b) + mul(b, a)


def _jordan_raw():
    return mul(mul(x, y), mul(x, x)) - mul(x, mul(y, mul(x, x)))


def _pre_jordan():
    c, m = _circ, mul
    pj1 = (m(c(x, y), m(z, t)) + m(c(y, z), m(x, t)) + m(c(z, x), m(y, t))
           - m(z, m(c(x, y), t)) - m(x, m(c(y, z), t)) - m(y, m(c(z, x), t)))
    pj2 = (m(x, m(y, m(z, t))) + m(z, m(y, m(x, t))) + m(c(c(x, z), y), t)
           - m(z, m(c(x, y), t)) - m(x, m(c(y, z), t)) - m(y, m(c(z, x), t)))
    return pj1, pj2


# -- two products -----------------------------------------------------------

def _star(a, b):
    return prec(a, b) + succ(a, b)


def alt_dendriform_associators():
    """Right, middle and left associators over prec/succ."""
    def r(a, b, c):
        return prec(prec(a, b), c) - prec(a, _star(b, c))

    def m(a, b, c):
        return prec(succ(a, b), c) - succ(a, prec(b, c))

    def l(a, b, c):
        return succ(_star(a, b), c) - succ(a, succ(b, c))
    return r, m, l


def _alt_dendriform():
    r, m, l = alt_dendriform_associators()
    return [m(x, y, z) + r(y, x, z), m(x, y, z) + l(x, z, y),
            r(x, y, z) + r(x, z, y), l(x, y, z) + l(y, x, z)]


def alternative_dendriform_lower_row() -> tuple[int, int]:
    """Positions of the two redundant identities in the alt-dendriform entry."""
    return (2, 3)


# -- four products ----------------------------------------------------------

def quadri_associators():
    """The nine associators keyed by r, l, ne, sw, n, w, s, e, m."""
    def p_succ(a, b): return ne(a, b) + se(a, b)
    def p_prec(a, b): return nw(a, b) + sw(a, b)
    def vee(a, b): return se(a, b) + sw(a, b)
    def wedge(a, b): return ne(a, b) + nw(a, b)
    def star(a, b): return p_succ(a, b) + p_prec(a, b)

    return {
        "r": lambda a, b, c: nw(nw(a, b), c) - nw(a, star(b, c)),
        "l": lambda a, b, c: se(star(a, b), c) - se(a, se(b, c)),
        "ne": lambda a, b, c: ne(wedge(a, b), c) - ne(a, p_succ(b, c)),
        "sw": lambda a, b, c: sw(p_prec(a, b), c) - sw(a, vee(b, c)),
        "n": lambda a, b, c: nw(ne(a, b), c) - ne(a, p_prec(b, c)),
        "w": lambda a, b, c: nw(sw(a, b), c) - sw(a, wedge(b, c)),
        "s": lambda a, b, c: sw(p_succ(a, b), c) - se(a, sw(b, c)),
        "e": lambda a, b, c: ne(vee(a, b), c) - se(a, ne(b, c)),
        "m": lambda a, b, c: nw(se(a, b), c) - se(a, nw(b, c)),
    }


def _alt_quadri():
    A = quadri_associators()
    return [
        A["r"](x, y, z) + A["m"](y, x, z),
        A["r"](x, y, z) + A["r"](x, z, y),
        A["n"](x, y, z) + A["w"](y, x, z),
        A["n"](x, y, z) + A["ne"](x, z, y),
        A["ne"](x, y, z) + A["e"](y, x, z),
        A["w"](x, y, z) + A["sw"](x, z, y),
        A["sw"](x, y, z) + A["s"](y, x, z),
        A["m"](x, y, z) + A["l"](x, z, y),
        A["l"](x, y, z) + A["l"](y, x, z),
    ]


# -- black triangles ----------------------------------------------------------

def _l_dendriform():
    ld1 = (tr(x, tr(y, z)) - tr(tr(x, y), z) - tr(tl(x, y), z)
           - tr(y, tr(x, z)) + tr(tl(y, x), z) + tr(tr(y, x), z))
    # the printed LD2 has x>(y>z) as its first term, which is not even
    # a consequence of pre-Lie splitting; x>(y<z) is the standard axiom
    ld2 = (tr(x, tl(y, z)) - tl(tr(x, y), z) - tl(y, tr(x, z))
           - tl(y, tl(x, z)) + tl(tl(y, x), z))
    return [ld1, ld2]


def _m_dendriform(a=tl, b=tr):
    # as printed: a = black left triangle, b = black right triangle
    md1 = (b(b(b(x, y), z), t) - b(b(a(y, x), z), t) - b(a(z, b(x, y)), t)
           + b(a(z, a(y, x)), t)
           - b(x, a(y, a(z, t))) - b(x, b(y, a(z, t))) - b(x, a(y, b(z, t)))
           - b(x, b(y, b(z, t)))
           + a(z, b(x, a(y, t))) + a(z, b(x, b(y, t)))
           + a(a(y, z), b(x, t)) + a(b(y, z), b(x, t))
           - a(a(z, y), b(x, t)) - a(b(z, y), b(x, t))
           - a(y, b(a(z, x), t)) + a(y, b(b(x, z), t)))
    md2 = (b(b(a(x, y), z), t) - b(b(b(y, x), z), t) - b(a(z, a(x, y)), t)
           + b(a(z, b(y, x)), t)
           - a(x, b(y, a(z, t))) - a(x, b(y, b(z, t)))
           + a(z, a(x, b(y, t)))
           + b(b(y, z), a(x, t)) + b(b(y, z), b(x, t))
           - b(a(z, y), a(x, t)) - b(a(z, y), b(x, t))
           - b(y, a(a(z, x), t)) - b(y, b(a(z, x), t))
           - b(y, a(b(z, x), t)) - b(y, b(b(z, x), t))
           + b(y, a(a(x, z), t)) + b(y, b(a(x, z), t))
           + b(y, a(b(x, z), t)) + b(y, b(b(x, z), t)))
    md3 = (b(a(a(x, y), z), t) + b(a(b(x, y), z), t)
           - b(a(a(y, x), z), t) - b(a(b(y, x), z), t)
           - b(b(z, a(x, y)), t) - b(b(z, b(x, y)), t)
           + b(b(z, a(y, x)), t) + b(b(z, b(y, x)), t)
           - a(x, a(y, b(z, t)))
           + b(z, a(x, a(y, t))) + b(z, b(x, a(y, t)))
           + b(z, a(x, b(y, t))) + b(z, b(x, b(y, t)))
           + b(a(y, z), a(x, t)) + b(a(y, z), b(x, t))
           - b(b(z, y), a(x, t)) - b(b(z, y), b(x, t))
           - a(y, b(b(z, x), t)) + a(y, b(a(x, z), t)))
    md4 = (a(a(a(x, y), z), t) + a(b(a(x, y), z), t) + a(a(b(x, y), z), t)
           + a(b(b(x, y), z), t)
           - a(a(a(y, x), z), t) - a(b(a(y, x), z), t) - a(a(b(y, x), z), t)
           - a(b(b(y, x), z), t)
           - a(a(z, a(x, y)), t) - a(b(z, a(x, y)), t) - a(a(z, b(x, y)), t)
           - a(b(z, b(x, y)), t)
           + a(a(z, a(y, x)), t) + a(b(z, a(y, x)), t) + a(a(z, b(y, x)), t)
           + a(b(z, b(y, x)), t)
           - a(x, a(y, a(z, t))) + a(z, a(x, a(y, t)))
           + a(a(y, z), a(x, t)) + a(b(y, z), a(x, t))
           - a(a(z, y), a(x, t)) - a(b(z, y), a(x, t))
           - a(y, a(a(z, x), t)) - a(y, a(b(z, x), t))
           + a(y, a(a(x, z), t)) + a(y, a(b(x, z), t)))
    return [md1, md2, md3, md4]


def _j_dendriform():
    # x.y = x>y + y<x, x<>y = x>y + x<y, x o y = x.y + y.x
    def dot(a, b): return tr(a, b) + tl(b, a)
    def dia(a, b): return tr(a, b) + tl(a, b)
    def o(a, b): return dot(a, b) + dot(b, a)
    j1 = (tr(o(x, y), tr(z, t)) + tr(o(y, z), tr(x, t)) + tr(o(z, x), tr(y, t))
          - tr(x, tr(o(y, z), t)) - tr(y, tr(o(z, x), t)) - tr(z, tr(o(x, y), t)))
    j2 = (tr(o(x, y), tr(z, t)) + tr(o(y, z), tr(x, t)) + tr(o(z, x), tr(y, t))
          - tr(x, tr(y, tr(z, t))) - tr(z, tr(y, tr(x, t))) - tr(o(y, o(z, x)), t))
    j3 = (tr(o(x, y), tl(z, t)) + tl(dot(x, z), dia(y, t)) + tl(dot(y, z), dia(x, t))
          - tr(x, tl(z, dia(y, t))) - tr(y, tl(z, dia(x, t))) - tl(dot(o(x, y), z), t))
    j4 = (tl(dot(z, y), dia(x, t)) + tl(dot(x, y), dia(z, t)) + tr(o(x, z), tl(y, t))
          - tr(x, tl(dot(z, y), t)) - tr(z, tl(dot(x, y), t)) - tl(y, dia(o(x, z), t)))
    j5 = (tr(o(x, y), tl(z, t)) + tl(dot(x, z), dia(y, t)) + tl(dot(y, z), dia(x, t))
          - tr(x, tr(y, tl(z, t))) - tl(z, dia(y, dia(x, t))) - tl(dot(y, dot(x, z)), t))
    return [j1, j2, j3, j4, j5]


# -- operator words -----------------------------------------------------------

def kuzmin_word(bracket=None) -> OpWord:
    """L_[[x,y],z] - L_x L_y L_z + L_z L_x L_y - L_y L_[z,x] + L_[y,z] L_x
    with [a,b] = a b - b a (the representation condition moved to one side)."""
    if bracket is None:
        bracket = lambda a, b: mul(a, b) - mul(b, a)
    return (L(bracket(bracket(x, y), z)) - L(x) @ L(y) @ L(z) + L(z) @ L(x) @ L(y)
            - L(y) @ L(bracket(z, x)) + L(bracket(y, z)) @ L(x))


def bimodule_words(ell=L, r=R) -> list[OpWord]:
    """The four bimodule axioms for a pre-Malcev algebra, written with the
    left action ``ell`` and right action ``r``."""
    m = mul
    b1 = (r(x) @ r(y) @ r(z) - r(x) @ r(y) @ ell(z) - r(x) @ ell(y) @ r(z)
          + r(x) @ ell(y) @ ell(z) - r(m(z, m(y, x))) + ell(y) @ r(m(z, x))
          + ell(m(z, y)) @ r(x) - ell(m(y, z)) @ r(x) - ell(z) @ r(x) @ ell(y)
          + ell(z) @ r(x) @ r(y))
    b2 = (r(x) @ r(y) @ ell(z) - r(x) @ r(y) @ r(z) - r(x) @ ell(y) @ ell(z)
          + r(x) @ ell(y) @ r(z) - ell(z) @ r(m(y, x)) + ell(y) @ ell(z) @ r(x)
          + r(m(z, x)) @ r(y) - r(m(z, x)) @ ell(y) - r(m(m(y, z), x))
          + r(m(m(z, y), x)))
    b3 = (r(x) @ ell(m(y, z)) - r(x) @ ell(m(z, y)) - r(x) @ r(m(y, z))
          + r(x) @ r(m(z, y)) - ell(y) @ ell(z) @ r(x) + r(m(y, m(z, x)))
          + r(m(y, x)) @ ell(z) - r(m(y, x)) @ r(z) - ell(z) @ r(x) @ r(y)
          + ell(z) @ r(x) @ ell(y))
    b4 = (ell(m(m(x, y), z)) - ell(m(m(y, x), z)) - ell(m(z, m(x, y)))
          + ell(m(z, m(y, x))) - ell(x) @ ell(y) @ ell(z) + ell(z) @ ell(x) @ ell(y)
          + ell(m(y, z)) @ ell(x) - ell(m(z, y)) @ ell(x) - ell(y) @ ell(m(z, x))
          + ell(y) @ ell(m(x, z)))
    return [b1, b2, b3, b4]


# -- registry -----------------------------------------------------------------

def _system(name, ops, exprs):
    ops = OpAlphabet(ops)
    return IdentitySystem(name, ops, tuple(_poly(e, ops) for e in exprs))


def _build_systems():
    out = {}

    def add(name, ops, exprs, note, raw=()):
        out[name] = CatalogEntry(name, _system(name, ops, exprs), note, tuple(raw))

    anti = br(x, y) + br(y, x)
    malcev_raw = _malcev_raw()
    [malcev_lin] = polarize(malcev_raw, ["br"])
    out["malcev"] = CatalogEntry(
        "malcev", IdentitySystem("malcev", OpAlphabet(["br"]),
                                 (_poly(anti, ["br"]), malcev_lin)),
        "anticommutativity and the linearized Malcev identity J(x,y,[x,z]) = [J(x,y,z),x]",
        (malcev_raw,))
    add("sagle", ["br"], [anti, _sagle()], "anticommutativity and Sagle's identity")
    add("lie", ["br"], [anti, _jacobian(x, y, z)], "anticommutativity and Jacobi")
    add("associative", ["mul"], [_mul_assoc(x, y, z)], "associativity")
    add("alternative", ["mul"],
        [_mul_assoc(x, y, z) + _mul_assoc(y, x, z), _mul_assoc(x, y, z) + _mul_assoc(x, z, y)],
        "left and right alternativity, linearized")
    add("pre-lie", ["mul"], [pre_lie(x, y, z)], "left-symmetric identity")
    add("pre-malcev", ["mul"], [pre_malcev(x, y, z, t)], "PM(x,y,z,t) = 0")
    jordan_raw = _jordan_raw()
    [jordan_lin] = polarize(jordan_raw, ["mul"])
    out["jordan"] = CatalogEntry(
        "jordan", IdentitySystem("jordan", OpAlphabet(["mul"]),
                                 (_poly(mul(x, y) - mul(y, x), ["mul"]), jordan_lin)),
        "commutativity and the linearized Jordan identity", (jordan_raw,))
    add("pre-jordan", ["mul"], list(_pre_jordan()), "the two pre-Jordan identities")

    r, m, l = alt_dendriform_associators()
    add("dendriform", DENDRIFORM_OPS, [r(x, y, z), m(x, y, z), l(x, y, z)],
        "right, middle and left associators vanish")
    add("alt-dendriform", DENDRIFORM_OPS, _alt_dendriform(),
        "(x,y,z)_m + (y,x,z)_r, (x,y,z)_m + (x,z,y)_l, (x,y,z)_r + (x,z,y)_r, "
        "(x,y,z)_l + (y,x,z)_l")
    A = quadri_associators()
    add("quadri", QUADRI_OPS, [A[k](x, y, z) for k in A], "all nine associators vanish")
    add("alt-quadri", QUADRI_OPS, _alt_quadri(), "nine identities in the nine associators")
    add("l-dendriform", TRIANGLE_OPS, _l_dendriform(), "LD1, LD2")
    # The printed MD1-MD4 use the triangles the other way round from LD1/LD2,
    # the Rota-Baxter and quadri constructions and the disuccessor of PM;
    # the system below interchanges them so all of those agree.  The literal
    # transcription is kept as raw.
    add("m-dendriform", TRIANGLE_OPS, _m_dendriform(a=tr, b=tl),
        "MD1-MD4 (triangles interchanged relative to the printed form)",
        raw=_m_dendriform())
    add("j-dendriform", TRIANGLE_OPS, _j_dendriform(), "the five J-dendriform identities")
    return out


def _build_rules():
    out = {}

    def add(name, source, target, images, note):
        out[name] = RuleEntry(name, ExpansionRule.from_exprs(name, source, target, images), note)

    s1, s2 = var(1), var(2)
    add("commutator", ["br"], ["mul"], {"br": mul(s1, s2) - mul(s2, s1)}, "[x,y] = x*y - y*x")
    add("anticommutator", ["mul"], ["mul"], {"mul": mul(s1, s2) + mul(s2, s1)},
        "x o y = x*y + y*x")
    add("dendriform-commutator", ["mul"], DENDRIFORM_OPS,
        {"mul": succ(s1, s2) - prec(s2, s1)}, "x.y = x>y - y<x")
    add("dendriform-anticommutator", ["mul"], DENDRIFORM_OPS,
        {"mul": succ(s1, s2) + prec(s2, s1)}, "x.y = x>y + y<x")
    add("dendriform-sum", ["mul"], DENDRIFORM_OPS, {"mul": prec(s1, s2) + succ(s1, s2)},
        "x*y = x<y + x>y")
    add("m-dendriform-extraction", TRIANGLE_OPS, QUADRI_OPS,
        {"tl": ne(s1, s2) - sw(s2, s1), "tr": se(s1, s2) - nw(s2, s1)},
        "x tl y = x ne y - y sw x, x tr y = x se y - y nw x")
    add("j-dendriform-extraction", TRIANGLE_OPS, QUADRI_OPS,
        {"tl": ne(s1, s2) + sw(s2, s1), "tr": se(s1, s2) + nw(s2, s1)},
        "x tl y = x ne y + y sw x, x tr y = x se y + y nw x")
    add("horizontal-premalcev", ["mul"], TRIANGLE_OPS, {"mul": tr(s1, s2) + tl(s1, s2)},
        "x.y = x tr y + x tl y")
    add("vertical-premalcev", ["mul"], TRIANGLE_OPS, {"mul": tr(s1, s2) - tl(s2, s1)},
        "x.y = x tr y - y tl x")
    add("quadri-horizontal", DENDRIFORM_OPS, QUADRI_OPS,
        {"prec": nw(s1, s2) + sw(s1, s2), "succ": ne(s1, s2) + se(s1, s2)},
        "x<y = x nw y + x sw y, x>y = x ne y + x se y")
    add("quadri-vertical", DENDRIFORM_OPS, QUADRI_OPS,
        {"prec": ne(s1, s2) + nw(s1, s2), "succ": se(s1, s2) + sw(s1, s2)},
        "prec -> wedge = ne + nw, succ -> vee = se + sw")
    add("quadri-sum", ["mul"], QUADRI_OPS,
        {"mul": ne(s1, s2) + se(s1, s2) + nw(s1, s2) + sw(s1, s2)},
        "x*y = sum of the four arrows")
    add("triangle-identity", TRIANGLE_OPS, TRIANGLE_OPS, {"tl": tl(s1, s2), "tr": tr(s1, s2)},
        "identity map on tl, tr")
    return out


_SYSTEMS = None
_RULES = None


def _systems():
    global _SYSTEMS
    if _SYSTEMS is None:
        _SYSTEMS = _build_systems()
    return _SYSTEMS


def _rules():
    global _RULES
    if _RULES is None:
        _RULES = _build_rules()
    return _RULES


def list_systems() -> list[str]:
    return list(_systems())


def list_rules() -> list[str]:
    return list(_rules())


def get_entry(name: str) -> CatalogEntry:
    try:
        return _systems()[name]
    except KeyError:
        raise KeyError(f"unknown system {name!r}; available: {', '.join(_systems())}") from None


def get_system(name: str) -> IdentitySystem:
    return get_entry(name).system


def get_rule_entry(name: str) -> RuleEntry:
    try:
        return _rules()[name]
    except KeyError:
        raise KeyError(f"unknown rule {name!r}; available: {', '.join(_rules())}") from None


def get_rule(name: str) -> ExpansionRule:
    return get_rule_entry(name).rule


# Known splittings: source system -> (catalog target, renaming of the split
# operations, target alphabet).
SPLITS = {
    "alternative": ("alt-dendriform", {"mul_prec": "prec", "mul_succ": "succ"}, DENDRIFORM_OPS),
    "alt-dendriform": ("alt-quadri", {"prec_prec": "nw", "prec_succ": "sw",
                                      "succ_prec": "ne", "succ_succ": "se"}, QUADRI_OPS),
    "pre-lie": ("l-dendriform", {"mul_prec": "tl", "mul_succ": "tr"}, TRIANGLE_OPS),
    "pre-malcev": ("m-dendriform", {"mul_prec": "tl", "mul_succ": "tr"}, TRIANGLE_OPS),
}


def associator_decomposition(rule_name: str, which: str) -> dict:
    """Write the image of an alternative-dendriform associator ("r", "m" or
    "l", arguments x, y, z) under a quadri rule as a combination of the nine
    quadri associators with the same arguments; {name: coefficient}.
    Raises NotInSpan if no such combination exists."""
    from .exactla import QQ, express
    from .identmod import expand

    rule = get_rule(rule_name)
    A = quadri_associators()
    names = list(A)
    basis = [Polynomial.from_expr(A[k](x, y, z), QUADRI_OPS).vector() for k in names]
    f = dict(zip("rml", alt_dendriform_associators()))[which]
    img = expand(rule, Polynomial.from_expr(f(x, y, z), DENDRIFORM_OPS))
    coeffs = express(img.vector(), basis, len(QUADRI_OPS) ** 2 * 12, QQ)
    return {k: c for k, c in zip(names, coeffs) if c}
