"""Independent reference implementations used as test oracles.

Nothing in this module imports the package under test.  Each function
recomputes a quantity by a route deliberately different from the one
the library takes, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np

# Bernoulli numbers B_2, B_4, ..., B_16 as exact fractions.
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
)


def zeta_em(s: float, terms: int = 40) -> float:
    """Riemann zeta via Euler-Maclaurin with eight Bernoulli corrections.

    Accurate to roughly 1e-15 relative for s in (1, 60].
    """
    if s <= 1.0:
        raise ValueError(f"zeta_em needs s > 1, got {s}")
    total = math.fsum((k + 1.0) ** -s for k in range(terms))
    n = float(terms)
    total += n ** (1.0 - s) / (s - 1.0) - 0.5 * n**-s
    # ascending factorial (s)_{2r-1} accumulated across correction terms
    rising = s
    power = n ** (-s - 1.0)
    for r, b in enumerate(_BERNOULLI, start=1):
        total += float(b) / math.factorial(2 * r) * rising * power
        rising *= (s + 2.0 * r - 1.0) * (s + 2.0 * r)
        power /= n * n
    return total


def hurwitz_mp(s: float, a: float) -> float:
    """Hurwitz zeta by mpmath at 40 digits; moderate s only (s <= 80)."""
    with mp.workdps(40):
        return float(mp.zeta(s, a))


def dirichlet_l3(w: float) -> float:
    """L(w, chi_-3) = 3^-w (zeta(w, 1/3) - zeta(w, 2/3))."""
    with mp.workdps(40):
        val = mp.mpf(3) ** -w * (mp.zeta(w, mp.mpf(1) / 3) - mp.zeta(w, mp.mpf(2) / 3))
        return float(val)


def bessel_zero_bisect(nu: float, n: int) -> list[float]:
    """First n positive zeros of J_nu by sign scan and bisection on mpmath."""
    with mp.workdps(30):
        f = lambda x: mp.besselj(nu, x)
        zeros = []
        step = 0.05
        x = step
        prev = f(x)
        while len(zeros) < n:
            x2 = x + step
            cur = f(x2)
            if mp.sign(prev) * mp.sign(cur) < 0:
                lo, hi = mp.mpf(x), mp.mpf(x2)
                for _ in range(80):
                    mid = (lo + hi) / 2
                    if mp.sign(f(mid)) * mp.sign(f(lo)) <= 0:
                        hi = mid
                    else:
                        lo = mid
                zeros.append(float((lo + hi) / 2))
            x, prev = x2, cur
        return zeros


def tau_naive(m_max: int) -> list[int]:
    """Ramanujan tau(1..m_max) from the 24th power of the eta product.

    Multiplies out prod (1 - q^n)^24 term by term in exact integers,
    no sparse tricks; only usable for small m_max.
    """
    limit = m_max  # coefficients of q^0 .. q^{m_max - 1} in the product
    poly = [0] * limit
    poly[0] = 1
    for n in range(1, limit):
        for _ in range(24):
            # multiply by (1 - q^n) in place
            for i in range(limit - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return poly[:m_max]  # tau(m) = poly[m - 1] after the q shift


def sigma_naive(m: int, k: int) -> int:
    """Divisor power sum by trial division."""
    return sum(d**k for d in range(1, m + 1) if m % d == 0)


def d4_counts_brute(m_max: int) -> dict[int, int]:
    """Vectors of each norm in the even-coordinate-sum sublattice of Z^4."""
    counts = {m: 0 for m in range(1, m_max + 1)}
    r = math.isqrt(m_max)
    rng = range(-r, r + 1)
    for x1 in rng:
        for x2 in rng:
            for x3 in rng:
                partial = x1 * x1 + x2 * x2 + x3 * x3
                if partial > m_max:
                    continue
                for x4 in rng:
                    q = partial + x4 * x4
                    if 0 < q <= m_max and (x1 + x2 + x3 + x4) % 2 == 0:
                        counts[q] += 1
    return counts


def a2_counts_brute(m_max: int) -> dict[int, int]:
    """Norm counts in the hexagonal lattice scaled to minimal norm 1.

    Vectors u e1 + v e2 with |.|^2 = u^2 + uv + v^2.
    """
    counts = {}
    r = 2 * math.isqrt(m_max) + 2
    for u in range(-r, r + 1):
        for v in range(-r, r + 1):
            q = u * u + u * v + v * v
            if 0 < q <= m_max:
                counts[q] = counts.get(q, 0) + 1
    return {m: counts.get(m, 0) for m in range(1, m_max + 1)}


def gauss_d1_direct(alpha: float) -> float:
    """Gaussian bound on the line at unit density: 2 sum e^{-alpha i^2}."""
    total = 0.0
    i = 1
    while True:
        term = math.exp(-alpha * i * i)
        total += term
        if term < 1e-18:
            break
        i += 1
    return 2.0 * total


def finite_diff(f, x: float, h: float = 1e-6) -> float:
    """Central difference derivative estimate."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def weighted_inner(fvals, d: int, a: int, b: int, nodes, gl_weights) -> float:
    """Inner product against (1-t)^alpha (1+t)^beta on Gauss-Legendre nodes."""
    alpha = (d - 2) / 2.0 + a
    beta = (d - 2) / 2.0 + b
    w = gl_weights * (1.0 - nodes) ** alpha * (1.0 + nodes) ** beta
    return float(np.dot(fvals, w))


def epstein_plain_mp(counts: dict[int, int], s: float, scale: float = 1.0) -> float:
    """Partial Epstein zeta sum from explicit norm counts, no tail model.

    counts maps squared norm (in units of `scale`) to vector count.
    """
    with mp.workdps(40):
        total = mp.mpf(0)
        for m, c in sorted(counts.items(), reverse=True):
            if c:
                total += c * (mp.mpf(m) * scale) ** (-s / 2.0)
        return float(total)


# Closed forms for lattice zeta functions, via Dirichlet series identities.


def a2_zeta_closed(s: float) -> float:
    w = s / 2.0
    return 6.0 * zeta_em(w) * dirichlet_l3(w)


def d4_zeta_closed(s: float) -> float:
    w = s / 2.0
    return 24.0 * 2.0**-w * (1.0 - 2.0 ** (1.0 - w)) * zeta_em(w - 1.0) * zeta_em(w)


def e8_zeta_closed(s: float) -> float:
    w = s / 2.0
    return 240.0 * 2.0**-w * zeta_em(w) * zeta_em(w - 3.0)


def leech_zeta_closed(s: float, tau_terms: int = 200) -> tuple[float, float]:
    """Leech lattice zeta with an explicit truncation bound on the tau sum.

    Returns (value, bound); d(m) <= 2 sqrt(m) and |tau(m)| <= d(m) m^{5.5}
    give the elementary coefficient bound |tau(m)| <= 2 m^6.
    """
    w = s / 2.0
    if w <= 8.0:
        raise ValueError("tau Dirichlet tail bound needs s > 16")
    taus = tau_naive(tau_terms)
    l_tau = math.fsum(taus[m - 1] * float(m) ** -w for m in range(1, tau_terms + 1))
    # tail: 2 sum_{m > M} m^{6 - w} <= 2 M^{7 - w}/(w - 7)
    tail = 2.0 * float(tau_terms) ** (7.0 - w) / (w - 7.0)
    prefactor = 65520.0 / 691.0 * 2.0**-w
    value = prefactor * (zeta_em(w) * zeta_em(w - 11.0) - l_tau)
    return value, prefactor * tail
