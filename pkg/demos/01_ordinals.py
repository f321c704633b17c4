"""Ordinal arithmetic in Cantor normal form.

The rank functions of this library take ordinal values; this walks
through the little ordinal kernel they sit on.
"""

from graphrank.ordinals import (
    OMEGA, DescribedFamily, from_int, omega_pow, parse, render, sup,
    sup_family,
)

# Ordinals render and parse in a small w-power grammar.
alpha = parse("w^2*3 + w + 4")
print("alpha          =", render(alpha))

# Addition is the usual non-commutative ordinal sum.
print("1 + w          =", render(from_int(1) + OMEGA))   # absorbed
print("w + 1          =", render(OMEGA + 1))
print("w*2 + w^2      =", render(omega_pow(from_int(1), 2) + omega_pow(from_int(2))))

# Comparison is the total CNF order; sup of a finite family is its max.
xs = [OMEGA + 3, omega_pow(from_int(2)), from_int(100)]
print("sup            =", render(sup(xs)))

# Described infinite families come from a closed catalog.
print("sup {n : n<w}  =", render(sup_family(DescribedFamily("index"))))
print("sup {w*n : n<w}=", render(sup_family(DescribedFamily("omega_index"))))

# Successors never skip a value.
print("succ(w^2 + 3)  =", render((omega_pow(from_int(2)) + 3).succ()))
