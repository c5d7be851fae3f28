"""The disuccessor: split each operation in two according to the path to a
distinguished variable, and compare with the catalog's split varieties."""

from splitalg import varieties as V
from splitalg.freealg import binop, format_polynomial, Polynomial, var
from splitalg.identmod import find_new_identities, identity_module
from splitalg.splitkit import disuccessor, disuccessor_system, modules_equal

mul = binop("mul")
x1, x2, x3 = var(1), var(2), var(3)
assoc = Polynomial.from_expr(mul(mul(x1, x2), x3) - mul(x1, mul(x2, x3)), ["mul"])
print("associativity splits into the three dendriform axioms:")
for k, g in enumerate(disuccessor(assoc), 1):
    print(f"-- distinguished x{k}")
    print(format_polynomial(g))

for src, (dst, ren, ops) in V.SPLITS.items():
    split = disuccessor_system(V.get_system(src), ren, ops)
    eq = modules_equal(split, V.get_system(dst))
    print(f"disuccessor({src}) vs {dst}: {eq}")

# the same M-dendriform module comes out of alternative quadrialgebras
rep = find_new_identities(V.get_system("alt-quadri"), V.get_rule("m-dendriform-extraction"), 4,
                          minimize=False)
md = V.get_system("m-dendriform")
print("\nquadri extraction:", rep.summary())
print("equals the MD1-MD4 module:",
      rep.module == identity_module(list(md.identities), 4, md.alphabet))
