"""Which identities does the dendriform commutator x.y = x>y - y<x satisfy
on an alternative dendriform dialgebra?  Degree 3: none.  Degree 4: one
generator, the pre-Malcev identity."""

import time

from splitalg import varieties as V
from splitalg.freealg import format_polynomial
from splitalg.identmod import (
    expand, express_in_lifting_basis, find_new_identities, lifting_module,
)

ad = V.get_system("alt-dendriform")
rule = V.get_rule("dendriform-commutator")
pm = V.get_system("pre-malcev").identities[0]

for d in (3, 4):
    t0 = time.perf_counter()
    rep = find_new_identities(ad, rule, d, "p101")
    print(f"{rep.summary()}  ({time.perf_counter() - t0:.2f} s)")

print("\nminimal generator:")
print(format_polynomial(rep.minimal[0]))
print("same as PM up to scalar:", rep.minimal[0].canonical() == pm.canonical())

q = find_new_identities(ad, rule, 4, "rational")
print("over Q:", q.summary())

# how the expanded PM sits in the liftings of the alternative dendriform axioms
L4 = lifting_module(ad, 4)
c = express_in_lifting_basis(expand(rule, pm), ad)
print(f"\nlifting module in degree 4: dim {L4.rank}; "
      f"expanded PM uses {sum(1 for v in c if v)} basis liftings")
