"""Classes of varieties as E-polynomials, and what survives mod T."""
from psikit.ering import L, T, euler, mod_torus, std_class

plane = std_class("proj", 2)
cubic = std_class("curve", 1)
print("[P^2]          =", plane)
print("[elliptic C]   =", cubic)
print("[P^2] - [C]    =", plane - cubic, " euler", euler(plane - cubic))

# The torus dies mod T, so every affine space and every projective space
# becomes an integer; curves of positive genus do not.
print("T mod T        =", mod_torus(T))
print("[A^3] mod T    =", mod_torus(L ** 3))
print("[C] mod T      =", mod_torus(cubic))
