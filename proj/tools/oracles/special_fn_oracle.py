"""Reference values for tests/test_special_fn.cpp (mpmath, 40 digits)."""
from fractions import Fraction
from math import factorial

import mpmath as mp

mp.mp.dps = 40


def fmt(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 20), mp.nstr(z.imag, 20))


print("// gamma")
for z in [mp.mpc(0.3, 0.7), mp.mpc(-2.5, 0.1), mp.mpc(10, 20), mp.mpc(45.5, -3),
          mp.mpc(-7.3, 15), mp.mpc(1, 3), mp.mpc(0.5, -19.5), mp.mpc(-30.2, 0.4),
          mp.mpc(2.25, 0), mp.mpc(49, 1)]:
    print("{%s, %s}," % (fmt(z), fmt(mp.gamma(z))))

print("// 1/|Gamma(1+3i)|")
print(mp.nstr(1 / abs(mp.gamma(mp.mpc(1, 3))), 20))

print("// L^{(0)}_5(5/2) exact")
t = Fraction(5, 2)
s = sum(Fraction(factorial(5), factorial(5 - j) * factorial(j)) * (-t) ** j / factorial(j) for j in range(6))
print(s, float(s))


def itilde(lam, w):
    return mp.besseli(lam, w) * (w / 2) ** (-lam)


print("// tilde I")
for lam, w in [(2, mp.mpc(3.7)), (0.7, mp.mpc(5, 2)), (-0.5, mp.mpc(0, 12)), (0.2, mp.mpc(1, 17)),
               (1.5, mp.mpc(3, -25)), (-0.3, mp.mpc(2, 40)), (0.5, mp.mpc(60, 70)),
               (2.5, mp.mpc(-4, 90)), (0.0, mp.mpc(0.5, -14)), (-0.8, mp.mpc(18, 20))]:
    print("{%s, %s, %s}," % (mp.nstr(lam, 6), fmt(w), fmt(itilde(lam, w))))
