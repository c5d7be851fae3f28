"""Rota-Baxter operators on small algebras, and the structures they induce."""

from splitalg import varieties as V
from splitalg.freealg import Polynomial
from splitalg.concrete import (
    StructConstAlgebra, derive, format_algebra, satisfies, search_rb,
)

# the 2-dimensional non-abelian Lie algebra [e1, e2] = e2
L2 = StructConstAlgebra.from_table(2, {"br": {(1, 2): {2: 1}, (2, 1): {2: -1}}})
rbs = search_rb(L2, "br", entries=(-1, 0, 1))
print(f"{len(rbs)} weight-zero RB operators with entries in {{-1,0,1}}")

R = next(r for r in rbs if any(any(row) for row in r.matrix))
print("using R =", R.matrix.tolist())
P = derive(L2, "malcev-to-premalcev", [R])
print("x.y = [R x, y]:")
print(format_algebra(P))
print("pre-Malcev:", bool(satisfies(P, V.get_system("pre-malcev"))))

# split once more with an RB operator of the pre-Malcev product
for S in search_rb(P, "mul"):
    M = derive(P, "premalcev-to-mdendriform", [S])
    v = satisfies(M, V.get_system("m-dendriform"))
    if not v:
        print("failure:", v)
        break
else:
    print("every induced M-dendriform structure satisfies MD1-MD4")

# with the triangles as literally printed the check fails for some of them
raw = [Polynomial.from_expr(e, V.TRIANGLE_OPS) for e in V.get_entry("m-dendriform").raw]
total = bad = 0
for R in rbs:
    P = derive(L2, "malcev-to-premalcev", [R])
    for S in search_rb(P, "mul"):
        total += 1
        bad += not satisfies(derive(P, "premalcev-to-mdendriform", [S]), raw)
print(f"literal (unswapped) form fails on {bad} of {total} (R, S) pairs")
