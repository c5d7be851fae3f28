"""Independent checks with sympy: kernels and ranks are recomputed from
scratch from coefficient vectors, without the package's elimination code."""

import itertools

import pytest
import sympy

from splitalg import varieties as V
from splitalg.exactla import GF101, QQ
from splitalg.freealg import Polynomial, act, enumerate_monomials
from splitalg.identmod import expand, find_new_identities, lifting_generators


def orbit_rows(polys, n):
    d = polys[0].degree
    rows = []
    for f in polys:
        for s in itertools.permutations(range(1, d + 1)):
            v = act(s, f).vector()
            rows.append([v.get(k, 0) for k in range(n)])
    return rows


def sym_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def kernel_identities(system, rule, d):
    """Source vectors c with E(sum c_m m) in the lifting module: the kernel
    of [lifting rows; expansion rows] projected to the expansion part."""
    n_t = len(enumerate_monomials(d, rule.target))
    src = enumerate_monomials(d, rule.source)
    lift = orbit_rows(lifting_generators(system, d), n_t)
    images = []
    for j in range(len(src)):
        e = expand(rule, Polynomial.from_vector({j: 1}, d, rule.source)).vector()
        images.append([e.get(k, 0) for k in range(n_t)])
    M = sympy.Matrix(lift + images).T
    ker = M.nullspace()
    proj = [list(v[len(lift):]) for v in ker]
    proj = [p for p in proj if any(p)]
    return sympy.Matrix(proj) if proj else sympy.zeros(0, len(src))


CASES = [("associative", "commutator"), ("pre-lie", "commutator"),
         ("alternative", "anticommutator"), ("associative", "anticommutator")]


@pytest.mark.parametrize("sname,rname", CASES)
@pytest.mark.parametrize("field", [QQ, GF101])
def test_block_matrix_matches_kernel(sname, rname, field):
    system, rule = V.get_system(sname), V.get_rule(rname)
    ref = kernel_identities(system, rule, 3)
    rep = find_new_identities(system, rule, 3, field, minimize=False)
    n = len(enumerate_monomials(3, rule.source))
    assert rep.module.rank == ref.rank()
    if field is QQ and rep.rows:
        # same space: stacking the reported rows onto the kernel adds no rank
        ours = sympy.Matrix([[r.get(k, 0) for k in range(n)] for r in rep.rows])
        assert sympy.Matrix.vstack(ref, ours).rank() == ref.rank()


def test_pm_orbit_rank():
    (pm,) = V.get_system("pre-malcev").identities
    assert sym_rank(orbit_rows([pm], 120)) == 20


def test_md_orbit_rank():
    md = list(V.get_system("m-dendriform").identities)
    assert sym_rank(orbit_rows(md, 960)) == 80
    # removing any one identity loses rank
    for i in range(4):
        assert sym_rank(orbit_rows(md[:i] + md[i + 1:], 960)) < 80


def _aq():
    return list(V.get_system("alt-quadri").identities)


def test_alt_quadri_pairwise_independent():
    ids = _aq()
    ranks = [sym_rank(orbit_rows([f], 192)) for f in ids]
    for i, j in itertools.permutations(range(9), 2):
        assert sym_rank(orbit_rows([ids[i], ids[j]], 192)) > ranks[j]


def test_alt_quadri_redundancy_certificate():
    # identities 2 and 9 (1-based) lie in the module of the other eight;
    # the rest do not
    ids = _aq()
    full = sym_rank(orbit_rows(ids, 192))
    implied = [i + 1 for i in range(9)
               if sym_rank(orbit_rows(ids[:i] + ids[i + 1:], 192)) == full]
    assert implied == [2, 9]


def test_alt_dendriform_lower_row_certificate():
    ids = list(V.get_system("alt-dendriform").identities)
    full = sym_rank(orbit_rows(ids, 48))
    implied = [i + 1 for i in range(4)
               if sym_rank(orbit_rows(ids[:i] + ids[i + 1:], 48)) == full]
    assert implied == [i + 1 for i in V.alternative_dendriform_lower_row()]
