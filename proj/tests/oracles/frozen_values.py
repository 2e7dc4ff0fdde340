"""Independent oracle for values frozen into the C++ test suites.

Uses SciPy's noncentral chi-squared distribution, Brent root finding and
bounded scalar minimisation; shares no code with the C++ library.
Run: python3 tests/oracles/frozen_values.py
"""
import numpy as np
from scipy import integrate
from scipy.optimize import brentq, minimize_scalar
from scipy.stats import ncx2, norm


def psucc(d, r, sigma_bar):
    lam = (d / sigma_bar) ** 2
    return ncx2.cdf(((1.0 - r) * d / sigma_bar) ** 2, d, lam)


def inverse(d, p):
    return brentq(lambda s: psucc(d, 0.0, s) - p, 1e-3, 100.0, xtol=1e-14)


def band_min(d, r, lo, hi):
    grid = np.linspace(lo, hi, 2001)
    vals = [psucc(d, r, s) for s in grid]
    k = int(np.argmin(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(lambda s: psucc(d, r, s), bounds=(a, b), method="bounded",
                          options={"xatol": 1e-12})
    return min(res.fun, vals[0], vals[-1])


def constants(d, alpha, p_u, p_l):
    ell, u = inverse(d, p_l), inverse(d, p_u)
    la = np.log(alpha)
    if d * la > 1:
        r_prime = 1 - np.exp(-la / (d * la - 1))
    else:
        v_hat = p_u / (2 * d * la)
        r_prime = 1 - np.exp(-(1 / d) / (1 - v_hat))
    p_prime = band_min(d, r_prime, ell, u)
    v = p_prime / (2 * d * la)
    r = 1 - np.exp(-(1 / d) / (1 - v))
    p_star = band_min(d, r, ell, u)
    B = min(p_star / d - 1.25 * v * la, v * la * (5 * p_l - 1) / 4, v * la * (1 - 5 * p_u) / 4)
    return dict(ell=ell, u=u, r_prime=r_prime, p_prime=p_prime, v=v, r=r, p_star=p_star, B=B)


def har_quadrature(d):
    w = integrate.quad(lambda t: np.sin(t) ** (d - 2), 0, np.pi / 2, epsabs=1e-14)[0]
    f = lambda t: -np.log(np.sin(t)) * np.sin(t) ** (d - 2)
    return integrate.quad(f, 0, np.pi / 2, epsabs=1e-14, limit=200)[0] / (2 * w)


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    print("Phi(-1)", norm.cdf(-1.0))
    print("Phi(-sqrt2)", norm.cdf(-np.sqrt(2.0)))
    print("-2 q(0.3)", -2 * norm.ppf(0.3), "-2 q(0.1)", -2 * norm.ppf(0.1))
    for d, r, s in [(16, 0.0, 1.0), (16, 0.0, 2.0), (16, 0.0, 4.0), (64, 0.0, 2.0),
                    (256, 0.0, 2.0), (10, 0.1, 1.5), (3, 0.2, 0.7), (1, 0.0, 1.0), (2, 0.5, 1.0)]:
        print(f"psucc d={d} r={r} s={s}", repr(psucc(d, r, s)))
    print("inverse(16,0.3)", repr(inverse(16, 0.3)))
    for d in (2, 10):
        print(f"constants d={d}", {k: repr(v) for k, v in constants(d, 1.5, 0.1, 0.3).items()})
    for d in (2, 3, 10, 64):
        print(f"har quadrature d={d}", repr(har_quadrature(d)))
