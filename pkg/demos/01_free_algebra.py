"""Association types, monomials and the S_d action in the free algebra."""

from splitalg.freealg import (
    Polynomial, act, binop, count_assoc_types, enumerate_assoc_types, format_polynomial,
    polarize, var,
)

mul = binop("mul")
x, y, z = var(1), var(2), var(3)

print("bracketings of four letters:")
for t in enumerate_assoc_types(4, ["mul"]):
    print("  ", t)
for q in (1, 2, 4):
    print(f"degree 4, {q} operation(s): {count_assoc_types(4, q)} types, "
          f"{count_assoc_types(4, q) * 24} multilinear monomials")

# left alternativity (x, x, y) = 0 is not multilinear; polarize it
f = mul(mul(x, x), y) - mul(x, mul(x, y))
(lin,) = polarize(f)
print("\nlinearized left alternativity:")
print(format_polynomial(lin))

# it is symmetric in x1, x3 (the two copies of x); swapping x1 and x2 is not
print("after (1 3), unchanged:", act((3, 2, 1), lin) == lin)
print("after (1 2):")
print(format_polynomial(act((2, 1, 3), lin)))
