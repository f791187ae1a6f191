"""Bound constants.

The upper base for c_{n,m} solves a polynomial equation on (0, 1/m); for
m = 2 it is the golden ratio. The lower bounds come from an exhaustive
binomial search and a closed-form growth rate.
"""
import math

from bezout.constants import (
    bound_table,
    c_lower_asymptotic,
    c_lower_binom,
    c_lower_full_max,
    c_upper_base,
    g_formula,
    root_Pm,
)

x2 = root_Pm(2)
print(f"x_2 = {x2:.15f}  (5 - sqrt 5)/10 = {(5 - math.sqrt(5)) / 10:.15f}")
print(f"upper base m=2: {c_upper_base(2):.15f}  golden ratio: {(1 + math.sqrt(5)) / 2:.15f}")

print(" m   upper base   lower rate   1/g")
for m in range(2, 7):
    print(f"{m:>2}   {c_upper_base(m):.6f}     {c_lower_asymptotic(m).base:.6f}     {1 / g_formula(m):.6f}")

print("m=3 rate", c_lower_asymptotic(3).base, "vs 729/529 =", 729 / 529)
print("numeric maximum of the rate, m=3:", c_lower_full_max(3))

for n in range(2, 8):
    low = c_lower_binom(n, 2)
    print(f"c_lower_binom({n}, 2) = {low.value}  at alpha={low.alpha}, d={low.d}")

print()
print(bound_table(3, 2, 2).to_text())
