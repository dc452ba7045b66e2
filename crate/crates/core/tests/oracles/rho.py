"""Independent rho_n oracle: bisection on q at 50 significant digits.

q(x) = (1 - sqrt(1 - x)) x^(-1/(n+2)) exp(sqrt(1 - x)) is increasing on
(0, 1]; rho_n = x*/4 where q(x*) = (2 (n!)^(1/n) / (n+2))^(n/(n+2)).
Output is pasted into rho_oracle.rs.
"""
from mpmath import mp, mpf, sqrt, exp, factorial

mp.dps = 50


def q(n, x):
    s = sqrt(1 - x)
    return (1 - s) * x ** (-mpf(1) / (n + 2)) * exp(s)


def rho(n):
    target = (2 * factorial(n) ** (mpf(1) / n) / (n + 2)) ** (mpf(n) / (n + 2))
    lo, hi = mpf(0), mpf(1)
    for _ in range(200):
        mid = (lo + hi) / 2
        if q(n, mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 8


for n in range(1, 11):
    print(f"    ({n}, {mp.nstr(rho(n), 20)}),")
