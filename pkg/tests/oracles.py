"""Independent high-precision oracles (mpmath bisection), kept apart from the code under test."""

import mpmath as mp

mp.mp.dps = 40


def _bisect(f, lo, hi, steps=200):
    for _ in range(steps):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo


def exact_symmetric(P, n):
    P = mp.mpf(P)
    return float(_bisect(lambda K: K / 2 + mp.asin(K / (2 * P)) - n * mp.pi / 2, mp.mpf(0), 2 * P))


def exact_asymmetric(P3, P1, n):
    P3, P1 = mp.mpf(P3), mp.mpf(P1)
    f = lambda K: K + mp.asin(K / (2 * P3)) + mp.asin(K / (2 * P1)) - n * mp.pi
    return float(_bisect(f, mp.mpf(0), 2 * min(P3, P1)))


def consistent_y(P, n):
    p = 1 / mp.mpf(P)
    a = mp.pi * n * p / 2
    g = lambda y: y - p / mp.sqrt(1 - (a / (1 + y)) ** 2)
    lo = max(mp.mpf(0), a - 1) + mp.mpf("1e-30")
    return float(_bisect(g, lo, lo + 10, steps=300))
