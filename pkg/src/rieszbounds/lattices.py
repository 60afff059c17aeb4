"""Lattice theta series, Epstein zeta values, and packing data.

The conjectured sharp constants compare the Bessel-series constant with
covolume-normalized Epstein zeta values of the best known lattices.  Theta
coefficients come either from closed divisor-sum formulas (A1, A2, D4, E8,
Leech) or from direct enumeration of short vectors; the two routes are
cross-checked in the test suite.

Index convention per lattice: for the even lattices in the Cartan scale
(fcc through E8, Leech) index m corresponds to squared norm 2m, so N(1)
is the kissing number.  A1 and A2 are kept at minimal distance 1 and use
index m = squared norm directly.

Zeta evaluation uses two routes.  Far from the abscissa the plain shell
sum converges and is truncated under a coefficient majorant
N(m) <= C * m^(d/2 - 1 + 1/4) with C calibrated on the computed range
(factor-2 safety).  Near the abscissa no feasible truncation reaches
tolerance -- the tail only decays like M^(-(s-d)/2) -- so the series is
rewritten through the theta transformation as two exponentially
convergent incomplete-gamma sums over the lattice and its dual.  Every
lattice on this route is similar to its dual, so the dual shell counts
are the lattice's own counts at rescaled values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from mpmath import gammainc, mp, mpf

from .errors import DomainError, NumericalError, ResourceError
from .special import ball_volume

__all__ = [
    "LatticeSpec",
    "LATTICES",
    "LATTICE_FOR_DIMENSION",
    "CONJECTURED_DIMENSIONS",
    "sigma_k",
    "ramanujan_tau",
    "tau_coefficients",
    "theta_coefficients",
    "theta_coefficients_csv",
    "count_by_norm",
    "EpsteinZeta",
    "epstein_zeta",
    "c_tilde",
    "packing_density",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Static description of one lattice in a fixed scale.

    ``gram`` is an integer matrix with ``Q(x) = x^T gram x / gram_doubling``
    the squared-norm form; ``None`` means no enumeration model is
    configured.  ``index_convention`` is ``"even"`` (index m <-> squared
    norm 2m) or ``"direct"`` (index m <-> squared norm m).
    """

    name: str
    d: int
    covolume: float
    min_sq_norm: int
    index_convention: str
    gram: tuple[tuple[int, ...], ...] | None
    gram_doubling: int = 1

    def sq_norm_of_index(self, m: int) -> int:
        return 2 * m if self.index_convention == "even" else m


# Cartan matrices for the root lattices; E7/E6 are the leading blocks of
# the E8 ordering (chain 1-3-4-5-6-7-8, node 2 attached to node 4).
_E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)
_E7_GRAM = tuple(row[:7] for row in _E8_GRAM[:7])
_E6_GRAM = tuple(row[:6] for row in _E8_GRAM[:6])

LATTICES: dict[str, LatticeSpec] = {
    # integers at spacing 1: covolume 1, shortest vector 1
    "A1": LatticeSpec("A1", 1, 1.0, 1, "direct", ((2,),), 2),
    # hexagonal at minimal distance 1: form u^2 + uv + v^2, covolume sqrt(3)/2
    "A2": LatticeSpec("A2", 2, math.sqrt(3.0) / 2.0, 1, "direct", ((2, 1), (1, 2)), 2),
    # face-centered cubic = D3, Cartan scale: covolume 2, shortest sq norm 2
    "fcc": LatticeSpec("fcc", 3, 2.0, 2, "even",
                       ((2, -1, 0), (-1, 2, -1), (0, -1, 2))),
    "D4": LatticeSpec("D4", 4, 2.0, 2, "even",
                      ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))),
    "D5": LatticeSpec("D5", 5, 2.0, 2, "even",
                      ((2, -1, 0, 0, 0), (-1, 2, -1, 0, 0), (0, -1, 2, -1, -1),
                       (0, 0, -1, 2, 0), (0, 0, -1, 0, 2))),
    "E6": LatticeSpec("E6", 6, math.sqrt(3.0), 2, "even", _E6_GRAM),
    "E7": LatticeSpec("E7", 7, math.sqrt(2.0), 2, "even", _E7_GRAM),
    "E8": LatticeSpec("E8", 8, 1.0, 2, "even", _E8_GRAM),
    # Leech: even unimodular, shortest sq norm 4; no enumeration model here
    "Leech": LatticeSpec("Leech", 24, 1.0, 4, "even", None),
}

# best known packing lattice per dimension; optimality in d = 4..7 is open
LATTICE_FOR_DIMENSION = {1: "A1", 2: "A2", 3: "fcc", 4: "D4", 5: "D5",
                         6: "E6", 7: "E7", 8: "E8", 24: "Leech"}
CONJECTURED_DIMENSIONS = frozenset({4, 5, 6, 7})

# dual form values as a multiple of the primal ones (same count sequence);
# each of these lattices is similar to its dual
_DUAL_VALUE_SCALE = {
    "A1": 1.0,
    "A2": 4.0 / 3.0,
    "D4": 0.5,
    "E8": 1.0,
    "Leech": 1.0,
}


def _spec(lattice: LatticeSpec | str) -> LatticeSpec:
    if isinstance(lattice, LatticeSpec):
        return lattice
    try:
        return LATTICES[lattice]
    except KeyError:
        raise DomainError(f"unknown lattice {lattice!r}; have {sorted(LATTICES)}") from None


def packing_density(lattice: LatticeSpec | str) -> float:
    """Fraction of space covered by balls of radius half the minimal distance."""
    lat = _spec(lattice)
    return ball_volume(lat.d, math.sqrt(lat.min_sq_norm) / 2.0) / lat.covolume


# ---------------------------------------------------------------------------
# divisor sums and the discriminant cusp form
# ---------------------------------------------------------------------------


def sigma_k(m: int, k: int) -> int:
    """Sum of k-th powers of the divisors of m, exactly."""
    if m < 1 or k < 0:
        raise DomainError(f"sigma_k requires m >= 1 and k >= 0, got m={m}, k={k}")
    total = 0
    e = 1
    while e * e <= m:
        if m % e == 0:
            total += e**k
            f = m // e
            if f != e:
                total += f**k
        e += 1
    return total


def _sieve_sigma(k: int, m_max: int) -> list[int]:
    # out[m] = sigma_k(m); index 0 unused
    out = [0] * (m_max + 1)
    for e in range(1, m_max + 1):
        ek = e**k
        for n in range(e, m_max + 1, e):
            out[n] += ek
    return out


def _sieve_sigma_odd(m_max: int) -> list[int]:
    # out[m] = sum of odd divisors of m; equals the odd-divisor sum of 2m
    out = [0] * (m_max + 1)
    for e in range(1, m_max + 1, 2):
        for n in range(e, m_max + 1, e):
            out[n] += e
    return out


TAU_TRUNCATION_DEFAULT = 1000

_TAU_CACHE: list[int] = [0]


def tau_coefficients(m_max: int, limit: int = TAU_TRUNCATION_DEFAULT) -> list[int]:
    """Coefficients tau(1..m_max) of the weight-12 discriminant form, exact.

    The generating product q * prod (1-q^n)^24 is expanded by cubing the
    Euler product through its sparse alternating series (exponents
    k(k+1)/2, coefficients (-1)^k (2k+1)) and then raising to the 8th
    power by repeated squaring.  m_max beyond ``limit`` raises
    ResourceError; pass a larger limit explicitly to go further.
    """
    if m_max < 1:
        raise DomainError(f"tau_coefficients requires m_max >= 1, got {m_max}")
    if m_max > limit:
        raise ResourceError(
            f"tau truncation {m_max} exceeds the configured limit {limit}; "
            "raise the limit explicitly to compute further")
    if len(_TAU_CACHE) <= m_max:
        length = m_max  # coefficients of the 24th power, before the q shift
        e3 = [0] * length
        k = 0
        while k * (k + 1) // 2 < length:
            e3[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
            k += 1

        def poly_sq(a: list[int]) -> list[int]:
            out = [0] * length
            for i, ai in enumerate(a):
                if ai:
                    jmax = length - i
                    for j, bj in enumerate(a[:jmax]):
                        if bj:
                            out[i + j] += ai * bj
            return out

        e24 = poly_sq(poly_sq(poly_sq(e3)))
        _TAU_CACHE[:] = [0] + e24
    return _TAU_CACHE[: m_max + 1]


def ramanujan_tau(m: int, limit: int = TAU_TRUNCATION_DEFAULT) -> int:
    return tau_coefficients(m, limit)[m]


# ---------------------------------------------------------------------------
# theta coefficients
# ---------------------------------------------------------------------------


def _theta_formula(lat: LatticeSpec, m_max: int) -> list[int]:
    name = lat.name
    if name == "A1":
        out = [0] * (m_max + 1)
        r = 1
        while r * r <= m_max:
            out[r * r] = 2
            r += 1
        return out[1:]
    if name == "A2":
        return _a2_counts(m_max)
    if name == "D4":
        so = _sieve_sigma_odd(m_max)
        return [24 * so[m] for m in range(1, m_max + 1)]
    if name == "E8":
        s3 = _sieve_sigma(3, m_max)
        return [240 * s3[m] for m in range(1, m_max + 1)]
    if name == "Leech":
        s11 = _sieve_sigma(11, m_max)
        tau = tau_coefficients(m_max) if m_max >= 1 else [0]
        out = []
        for m in range(1, m_max + 1):
            num = 65520 * (s11[m] - tau[m])
            if num % 691 != 0:
                raise NumericalError(
                    f"Leech theta coefficient at m={m} is not divisible by 691; "
                    "divisor-sum or cusp-form expansion is inconsistent")
            out.append(num // 691)
        return out
    raise DomainError(f"no closed coefficient formula for lattice {name}")


def _a2_counts(m_max: int) -> list[int]:
    # representations of m by u^2 + uv + v^2; one pass over a box covering
    # the ellipse q <= m_max
    out = [0] * (m_max + 1)
    u_lim = int(math.isqrt(4 * m_max // 3)) + 1
    for u in range(-u_lim, u_lim + 1):
        uu = u * u
        for v in range(-u_lim, u_lim + 1):
            q = uu + u * v + v * v
            if 0 < q <= m_max:
                out[q] += 1
    return out[1:]


def count_by_norm(gram: tuple[tuple[int, ...], ...], q_max: int,
                  doubling: int = 1) -> dict[int, int]:
    """Counts of nonzero integer vectors by form value x^T gram x / doubling.

    Depth-first enumeration inside the ellipsoid, bounds from the Cholesky
    factor with conservative padding; the form value at each leaf is
    recomputed in exact integer arithmetic, so the padding cannot admit a
    wrong count.  Cost is proportional to the number of lattice points in
    the ball, which grows like q_max^(d/2).
    """
    if q_max < 1:
        raise DomainError(f"count_by_norm requires q_max >= 1, got {q_max}")
    g = np.array(gram, dtype=float)
    n = g.shape[0]
    if g.shape != (n, n) or not np.allclose(g, g.T):
        raise DomainError("gram must be a symmetric square matrix")
    try:
        upper = np.linalg.cholesky(g).T
    except np.linalg.LinAlgError:
        raise DomainError("gram must be positive definite") from None
    rows = [list(map(int, row)) for row in gram]
    budget = float(q_max * doubling) + 1e-7
    counts: dict[int, int] = {}
    x = [0] * n

    def descend(i: int, partial: float) -> None:
        if i < 0:
            q2 = 0
            for a in range(n):
                xa = x[a]
                if xa:
                    row = rows[a]
                    q2 += xa * (row[a] * xa
                                + 2 * sum(row[b] * x[b] for b in range(a + 1, n)))
            if 0 < q2 <= q_max * doubling and q2 % doubling == 0:
                q = q2 // doubling
                counts[q] = counts.get(q, 0) + 1
            return
        center = -sum(upper[i, j] * x[j] for j in range(i + 1, n)) / upper[i, i]
        half = math.sqrt(max(budget - partial, 0.0)) / upper[i, i]
        for xi in range(math.ceil(center - half - 1e-9),
                        math.floor(center + half + 1e-9) + 1):
            x[i] = xi
            t = upper[i, i] * (xi - center)
            descend(i - 1, partial + t * t)
        x[i] = 0

    descend(n - 1, 0.0)
    return counts


def _theta_enumerate(lat: LatticeSpec, m_max: int) -> list[int]:
    if lat.gram is None:
        raise DomainError(f"no enumeration model configured for lattice {lat.name}")
    if lat.name == "E8":
        return _e8_coset_counts(m_max)
    q_max = lat.sq_norm_of_index(m_max)
    counts = count_by_norm(lat.gram, q_max, lat.gram_doubling)
    out = [0] * (m_max + 1)
    for q, c in counts.items():
        if lat.index_convention == "even":
            if q % 2 != 0:
                raise NumericalError(
                    f"odd squared norm {q} enumerated in even lattice {lat.name}")
            out[q // 2] += c
        else:
            out[q] += c
    return out[1:]


def _e8_coset_counts(m_max: int) -> list[int]:
    """E8 counts through the integral/half-integral coordinate model.

    Vectors are the even-coordinate-sum points of Z^8 together with the
    same constraint on Z^8 + (1/2,...,1/2).  Both pieces reduce to 8-fold
    convolutions of one-dimensional square series: the parity constraint
    keeps (theta3^8 + theta4^8)/2 on the integral part and exactly half of
    the half-integral part.  Exponents are tracked in quarter-steps so
    everything stays integral.
    """
    qmax4 = 8 * m_max  # squared norm 2m -> quarter-units 8m
    size = qmax4 + 1
    a3 = np.zeros(size, dtype=np.int64)
    a4 = np.zeros(size, dtype=np.int64)
    a3[0] = a4[0] = 1
    k = 1
    while 4 * k * k < size:
        a3[4 * k * k] = 2
        a4[4 * k * k] = 2 if k % 2 == 0 else -2
        k += 1
    a2 = np.zeros(size, dtype=np.int64)
    k = 1
    while k * k < size:
        a2[k * k] = 2
        k += 2

    def conv_pow8(a: np.ndarray) -> np.ndarray:
        p2 = np.convolve(a, a)[:size]
        p4 = np.convolve(p2, p2)[:size]
        return np.convolve(p4, p4)[:size]

    total = conv_pow8(a3) + conv_pow8(a4) + conv_pow8(a2)
    out = []
    for m in range(1, m_max + 1):
        v = total[8 * m]
        if v % 2 != 0:
            raise NumericalError("E8 coset expansion lost the parity pairing")
        out.append(int(v) // 2)
    return out


def theta_coefficients(lattice: LatticeSpec | str, m_max: int,
                       mode: str = "auto") -> list[int]:
    """Shell counts N(1..m_max) in the lattice's index convention.

    ``mode`` selects the closed divisor-sum formula, direct enumeration,
    or ``"auto"`` (formula when one exists).  The two routes agree; the
    test suite checks this on overlapping ranges.
    """
    lat = _spec(lattice)
    if m_max < 1:
        raise DomainError(f"theta_coefficients requires m_max >= 1, got {m_max}")
    if mode == "auto":
        mode = "formula" if lat.name in ("A1", "A2", "D4", "E8", "Leech") else "enumerate"
    if mode == "formula":
        return _theta_formula(lat, m_max)
    if mode == "enumerate":
        return _theta_enumerate(lat, m_max)
    raise DomainError(f"unknown theta mode {mode!r}; use formula, enumerate, or auto")


def theta_coefficients_csv(lattice: LatticeSpec | str, m_max: int,
                           mode: str = "auto") -> str:
    lat = _spec(lattice)
    counts = theta_coefficients(lat, m_max, mode)
    lines = ["m,sq_norm,count"]
    for m, c in enumerate(counts, start=1):
        lines.append(f"{m},{lat.sq_norm_of_index(m)},{c}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Epstein zeta
# ---------------------------------------------------------------------------


class EpsteinZeta(NamedTuple):
    value: float
    tail_bound: float


_FORMULA_LATTICES = ("A1", "A2", "D4", "E8", "Leech")

# below this gap s - d the plain shell sum cannot reach tolerance and the
# theta-transformation route takes over; Leech switches earlier so the
# plain route never needs tau beyond its default truncation
_PLAIN_GAP = 6.0
_PLAIN_GAP_LEECH = 10.0
_PLAIN_M_CAP = 1 << 20
_ACCEL_SHELL_CAP = 4096


def _coeff_majorant(lat: LatticeSpec, counts: list[int]) -> tuple[float, float]:
    """Calibrated C with N(m) <= C m^p, p = d/2 - 1 + 1/4, factor-2 safety."""
    p = lat.d / 2.0 - 1.0 + 0.25
    m_lo = max(1, len(counts) // 2)
    c = max(counts[m - 1] / m**p for m in range(m_lo, len(counts) + 1))
    return 2.0 * max(c, 1e-300), p


def _epstein_plain(lat: LatticeSpec, s: float, tol: float) -> EpsteinZeta:
    w = s / 2.0
    kappa = 2.0 if lat.index_convention == "even" else 1.0
    m = 256
    while True:
        counts = theta_coefficients(lat, m, "formula")
        total = math.fsum(counts[k - 1] * (kappa * k) ** -w
                          for k in range(m, 0, -1) if counts[k - 1])
        cmaj, p = _coeff_majorant(lat, counts)
        # integral comparison: sum_{k>m} k^(p-w) <= m^(p-w+1)/(w-p-1)
        tail = cmaj * kappa**-w * m ** (p - w + 1.0) / (w - p - 1.0)
        tail += 1e-14 * total
        if tail <= tol * total:
            return EpsteinZeta(total, tail)
        if 2 * m > _PLAIN_M_CAP or (lat.name == "Leech"
                                    and 2 * m > TAU_TRUNCATION_DEFAULT):
            raise ResourceError(
                f"plain zeta sum for {lat.name} at s={s} still has tail "
                f"{tail:.3e} (relative {tail / total:.3e}) at m_max={m}")
        m *= 2


def _gamma_tail_factor(a: float, z: float) -> float:
    # Gamma(a, z) <= z^(a-1) e^-z * f; valid once z > a - 1
    if a <= 1.0:
        return 1.0
    if z <= a - 1.0 + 0.5:
        raise NumericalError("incomplete-gamma tail bound applied below its range")
    return 1.0 / (1.0 - (a - 1.0) / z)


def _epstein_accel(lat: LatticeSpec, s: float, tol: float) -> EpsteinZeta:
    w = s / 2.0
    half_d = lat.d / 2.0
    kappa = 2.0 if lat.index_convention == "even" else 1.0
    dual_scale = _DUAL_VALUE_SCALE[lat.name]
    covol = lat.covolume
    shells = 48
    while True:
        counts = theta_coefficients(lat, shells, "formula")
        cmaj, p = _coeff_majorant(lat, counts)
        with mp.workdps(30):
            mw = mpf(w)
            s1 = mpf(0)
            s2 = mpf(0)
            for k in range(shells, 0, -1):
                c = counts[k - 1]
                if not c:
                    continue
                q = mpf(kappa) * k
                qd = mpf(dual_scale) * q
                s1 += c * (mp.pi * q) ** (-mw) * gammainc(mw, mp.pi * q)
                s2 += c * ((mp.pi * qd) ** (mw - half_d)
                           * gammainc(mpf(half_d) - mw, mp.pi * qd))
            lam = s1 + s2 / covol + 1.0 / (covol * (mw - half_d)) - 1.0 / mw
            value = float(mp.pi ** mw / mp.gamma(mw) * lam)
        if not math.isfinite(value) or value <= 0.0:
            raise NumericalError(
                f"theta-transformation zeta for {lat.name} at s={s} "
                f"evaluated to {value}")
        # geometric truncation bounds on both incomplete-gamma sums: with
        # z = pi q the primal term is <= C m^p e^-z f(z)/z and the dual one
        # (first gamma argument negative) is <= C m^p e^-z / z
        m1 = shells + 1
        z1 = math.pi * kappa * m1
        z2 = math.pi * kappa * dual_scale * m1
        if z1 <= w + 2.0:
            shells *= 2
            continue
        scale_out = math.pi**w / math.gamma(w)
        f1 = _gamma_tail_factor(w, z1)
        t1 = cmaj * m1**p * math.exp(-z1) * f1 / z1
        t2 = cmaj * m1**p * math.exp(-z2) / z2
        grow = (1.0 + 1.0 / m1) ** max(p, 1.0)
        r1 = grow * math.exp(-math.pi * kappa)
        r2 = grow * math.exp(-math.pi * kappa * dual_scale)
        if r1 >= 0.5 or r2 >= 0.5:
            shells *= 2
            continue
        tail = scale_out * (t1 / (1.0 - r1) + t2 / (covol * (1.0 - r2)))
        tail += 5e-15 * abs(value)
        if tail <= tol * abs(value):
            return EpsteinZeta(value, tail)
        if shells * 2 > _ACCEL_SHELL_CAP:
            raise ResourceError(
                f"theta-transformation zeta for {lat.name} at s={s} still has "
                f"tail {tail:.3e} at {shells} shells")
        shells *= 2


def epstein_zeta(lattice: LatticeSpec | str, s: float, tol: float = 1e-10) -> EpsteinZeta:
    """Zeta function of the lattice, sum of |x|^-s over nonzero vectors.

    Returns the value and a tail bound; the bound accounts for shell
    truncation under the calibrated coefficient majorant plus a floating
    point floor, and the target is tail <= tol * value.  Only lattices
    with closed coefficient formulas are supported; the enumeration-only
    root lattices would need infeasibly deep vector counts.
    """
    lat = _spec(lattice)
    if lat.name not in _FORMULA_LATTICES:
        raise DomainError(
            f"zeta evaluation is not configured for {lat.name}; "
            f"supported lattices: {', '.join(_FORMULA_LATTICES)}")
    if not s > lat.d:
        raise DomainError(f"lattice zeta of {lat.name} requires s > {lat.d}, got {s}")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    gap_switch = _PLAIN_GAP_LEECH if lat.name == "Leech" else _PLAIN_GAP
    if s - lat.d >= gap_switch:
        return _epstein_plain(lat, s, tol)
    return _epstein_accel(lat, s, tol)


def c_tilde(d: int, s: float) -> float:
    """Conjectured asymptotic constant covol^(s/d) * zeta_Lambda(s).

    Available in the dimensions with a conjecturally optimal modular
    lattice: 2 (hexagonal), 4 (D4), 8 (E8), 24 (Leech).
    """
    lat_name = {2: "A2", 4: "D4", 8: "E8", 24: "Leech"}.get(d)
    if lat_name is None:
        raise DomainError(f"c_tilde is defined for d in (2, 4, 8, 24), got {d}")
    lat = LATTICES[lat_name]
    if not s > d:
        raise DomainError(f"c_tilde requires s > d = {d}, got s={s}")
    z = epstein_zeta(lat, s, 1e-10)
    return lat.covolume ** (s / d) * z.value
