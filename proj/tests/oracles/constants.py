"""High-precision reference values frozen into the unit tests."""
import math
from mpmath import mp, mpf, erfinv, sqrt, log, pi, ln
from sympy import totient

mp.dps = 40


def quantile(p):
    return sqrt(2) * erfinv(2 * mpf(p) - 1)


def niederreiter(n, s):
    phi = int(totient(n - 1))
    return (mpf(1) / (n - 1)) * (1 + mpf(n - 2) * (s - 1) / phi) * ((2 / pi) * ln(n) + mpf(7) / 5) ** s


print("Phi^-1(0.975) =", mp.nstr(quantile("0.975"), 20))
print("Phi^-1(0.75)  =", mp.nstr(quantile("0.75"), 20))
print("totient(1020) =", sum(1 for k in range(1, 1021) if math.gcd(k, 1020) == 1))
for n, s in [(7, 1), (211, 2), (409, 2), (1021, 2)]:
    print(f"niederreiter({n},{s}) =", mp.nstr(niederreiter(n, s), 20))
