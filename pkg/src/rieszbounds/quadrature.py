"""Levenshtein 1/N-quadrature rules and the cardinality function L(d, s).

The rules integrate low-degree polynomials against the projected sphere
measure using the node t = 1 with weight 1/N plus k interior nodes.  The
interior nodes are the roots of (t - s) Q_{k-1}(t, s) in the (1,0) or
(1,1) kernel family, where s solves N = L(d, s); they are computed as
eigenvalues of the k x k recurrence matrix with its last diagonal entry
shifted, which makes the endpoint cardinalities N = D(d, tau+1)
degenerate exactly to plain Jacobi-zero rules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalError
from . import jacobi
from .jacobi import (
    _deriv_rows,
    _log_norm_const,
    _rows,
    cd_kernel,
    family_params,
    jacobi_values,
    lead_ratio,
    monic_recurrence,
)
from .special import lambda_d

_LONG = np.longdouble


def dgs_bound(d: int, tau: int) -> int:
    """Minimal cardinality D(d, tau) admitting a tau-design bound.

    D(d, 2k-1) = 2 C(d+k-1, d) and D(d, 2k) = C(d+k, d) + C(d+k-1, d),
    in exact integer arithmetic.
    """
    if d < 1 or d != int(d):
        raise DomainError(f"dgs_bound requires d >= 1, got {d}")
    if tau < 1 or tau != int(tau):
        raise DomainError(f"dgs_bound requires tau >= 1, got {tau}")
    k = (tau + 1) // 2
    if tau % 2 == 1:
        return 2 * math.comb(d + k - 1, d)
    return math.comb(d + k, d) + math.comb(d + k - 1, d)


def lev_branch(d: int, tau: int, s) -> float:
    """Single branch L_tau(d, s) evaluated without interval checks.

    Adjacent branches agree where their intervals meet, and the common
    value there is the design cardinality dgs_bound(d, tau + 1).
    """
    k = (tau + 1) // 2
    p = jacobi_values(k + 1, d, 0, 0, s)
    pk = p[k][0]
    if tau % 2 == 1:
        num = p[k - 1][0] - pk
        val = (2.0 * k + d - 2.0) / d - num / ((1.0 - s) * pk)
        return math.comb(k + d - 2, k - 1) * val
    num = (1.0 + s) * (pk - p[k + 1][0])
    den = (1.0 - s) * (pk + p[k + 1][0])
    val = (2.0 * k + d) / d - num / den
    return math.comb(k + d - 1, k) * val


def _resolve_interval(d: int, s: float) -> int:
    # smallest tau with s in I_tau; the intervals partition [-1, 1)
    k = 1
    while True:
        if s <= jacobi.largest_zero(k, d, 1, 0):
            return 2 * k - 1
        if s <= jacobi.largest_zero(k, d, 1, 1):
            return 2 * k
        k += 1
        if k > 2000:
            raise NumericalError(f"interval resolution ran away for d={d}, s={s}")


def lev_function(d: int, s: float) -> float:
    """Levenshtein cardinality bound L(d, s) for largest inner product s.

    Continuous and nondecreasing on [-1, 1); equals D(d, tau+1) at the
    interval endpoints (the largest zeros of the adjacent-parameter
    Jacobi polynomials).
    """
    if not -1.0 <= s < 1.0:
        raise DomainError(f"lev_function requires s in [-1, 1), got {s}")
    return lev_branch(d, _resolve_interval(d, s), s)


def _resolve_tau(d: int, n: float) -> int:
    tau = 1
    while n > dgs_bound(d, tau + 1):
        tau += 1
    return tau


def solve_s_for_n(d: int, n: float) -> float:
    """The unique s with L(d, s) = N, for N >= D(d, 1) = 2.

    Endpoint cardinalities N = D(d, tau+1) return the largest zero of
    the corresponding adjacent Jacobi polynomial directly (machine
    precision); interior N are bracketed in their interval and resolved
    by bisection with a secant finish to |L(d,s) - N| below 1e-11.
    """
    if n < 2:
        raise DomainError(f"solve_s_for_n requires N >= 2, got {n}")
    if n == 2:
        return -1.0
    tau = _resolve_tau(d, n)
    k = (tau + 1) // 2
    if n == dgs_bound(d, tau + 1):
        # right endpoint: s is the largest zero of P_k^{1,0} (tau odd)
        # or P_k^{1,1} (tau even)
        return jacobi.largest_zero(k, d, 1, 0 if tau % 2 == 1 else 1)
    if tau % 2 == 1:
        lo = -1.0 if k == 1 else jacobi.largest_zero(k - 1, d, 1, 1)
        hi = jacobi.largest_zero(k, d, 1, 0)
    else:
        lo = jacobi.largest_zero(k, d, 1, 0)
        hi = jacobi.largest_zero(k, d, 1, 1)
    flo = lev_branch(d, tau, lo) - n
    fhi = lev_branch(d, tau, hi) - n
    if flo > 0.0 or fhi < 0.0:
        raise NumericalError(f"bracket failure solving L({d}, s) = {n} in branch {tau}")
    a, b, fa = lo, hi, flo
    for _ in range(200):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = lev_branch(d, tau, m) - n
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b = m
        else:
            a, fa = m, fm
    s = a if abs(fa) <= abs(lev_branch(d, tau, b) - n) else b
    for _ in range(3):
        f0 = lev_branch(d, tau, s) - n
        h = max(1e-9, 1e-9 * abs(s))
        df = (lev_branch(d, tau, min(s + h, hi)) - lev_branch(d, tau, max(s - h, lo))) / (
            min(s + h, hi) - max(s - h, lo)
        )
        if df == 0.0:
            break
        s = min(max(s - f0 / df, lo), hi)
    if abs(lev_branch(d, tau, s) - n) > 1e-11 * max(1.0, n):
        raise NumericalError(f"Levenshtein inversion stalled for d={d}, N={n}")
    return s


@dataclass(frozen=True)
class QuadratureRule:
    """1/N-quadrature rule: node 1 with weight 1/N plus interior nodes.

    Nodes are stored strictly decreasing; ``tau`` is the resolved
    strength parameter and ``exact_degree`` the actual polynomial
    exactness (tau, or tau + 1 at endpoint cardinalities).
    """

    d: int
    n: int
    tau: int
    parity: str
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    includes_minus_one: bool
    endpoint: bool
    weight_fallback: bool = field(default=False)

    @property
    def k(self) -> int:
        return len(self.nodes)

    @property
    def exact_degree(self) -> int:
        return self.tau + 1 if self.endpoint else self.tau

    def validate(self) -> None:
        if any(w <= 0.0 for w in self.weights):
            raise NumericalError(f"rule for d={self.d}, N={self.n} has nonpositive weights")
        if any(x >= 1.0 for x in self.nodes):
            raise NumericalError(f"rule for d={self.d}, N={self.n} has a node >= 1")
        if any(a <= b for a, b in zip(self.nodes, self.nodes[1:])):
            raise NumericalError(f"rule for d={self.d}, N={self.n} nodes not decreasing")
        total = 1.0 / self.n + math.fsum(self.weights)
        if abs(total - 1.0) >= 1e-12:
            raise NumericalError(
                f"rule for d={self.d}, N={self.n} weight sum off by {total - 1.0:.3e}"
            )

    def to_json(self) -> str:
        payload = {
            "d": self.d,
            "N": self.n,
            "tau": self.tau,
            "nodes": [float(f"{x:.17g}") for x in self.nodes],
            "weights": [float(f"{w:.17g}") for w in self.weights],
        }
        return json.dumps(payload)


def _shifted_jacobi_nodes(k: int, alpha: float, beta: float, s: float) -> np.ndarray:
    # roots of monic p_k - gamma p_{k-1}, gamma chosen so the polynomial
    # is proportional to P_k(t) P_{k-1}(s) - P_{k-1}(t) P_k(s); they are
    # the eigenvalues of the recurrence matrix with the last diagonal
    # entry shifted by gamma.  gamma = 0 recovers the plain zeros.
    ps = _rows(k, alpha, beta, np.array([s]))
    pk_s = ps[k][0]
    pk1_s = ps[k - 1][0]
    if pk1_s == 0.0:
        raise NumericalError(f"degenerate shift: P_{k-1}({s}) = 0")
    mk1 = math.exp(jacobi._log_lead(k - 1, alpha, beta) - jacobi._log_lead(k, alpha, beta))
    gamma = mk1 * pk_s / pk1_s
    avals, bvals = monic_recurrence(k, alpha, beta)
    mat = np.diag(avals)
    mat[k - 1, k - 1] += gamma
    if k > 1:
        off = np.sqrt(bvals[1:])
        mat += np.diag(off, 1) + np.diag(off, -1)
    nodes = np.linalg.eigvalsh(mat)
    # Newton-polish on F(t) = P_k(t) P_{k-1}(s) - P_{k-1}(t) P_k(s)
    for _ in range(2):
        pv = _rows(k, alpha, beta, nodes)
        dv = _deriv_rows(k, alpha, beta, nodes)
        fval = pv[k] * pk1_s - pv[k - 1] * pk_s
        fder = dv[k] * pk1_s - dv[k - 1] * pk_s
        step = np.where(fder != 0.0, fval / np.where(fder == 0.0, 1.0, fder), 0.0)
        nodes = nodes - step
    pv = _rows(k, alpha, beta, nodes)
    fval = pv[k] * pk1_s - pv[k - 1] * pk_s
    scale = max(abs(pk_s), abs(pk1_s), 1e-30)
    if np.any(np.abs(fval) > 1e-10 * scale):
        raise NumericalError(f"node polish failed at polynomial degree {k}")
    return nodes


def _exactness_system_weights(d: int, n: int, nodes: np.ndarray) -> np.ndarray:
    # fallback: solve sum_j w_j P_i(x_j) = delta_{i0} - P_i(1)/N in the
    # Gegenbauer basis, i = 0..k-1
    k = nodes.size
    pv = jacobi_values(k - 1, d, 0, 0, nodes)
    rhs = -np.ones(k) / n
    rhs[0] += 1.0
    return np.linalg.solve(pv, rhs)


def build_rule(d: int, n: int) -> QuadratureRule:
    """Construct the 1/N-quadrature rule for N points on S^d.

    Resolves tau with N in (D(d,tau), D(d,tau+1)], solves N = L(d,s),
    and places the interior nodes and weights of the matching parity
    case.  Even strength appends the node -1.  The returned rule is
    validated: positive weights, decreasing nodes, weight sum 1 - 1/N.
    """
    if n != int(n):
        raise DomainError(f"build_rule requires integer N, got {n}")
    n = int(n)
    if n < 2:
        raise DomainError(f"build_rule requires N >= 2, got {n}")
    tau = _resolve_tau(d, n)
    k = (tau + 1) // 2
    s = solve_s_for_n(d, n)
    endpoint = n == dgs_bound(d, tau + 1)
    lam_d = lambda_d(d)
    if tau % 2 == 1:
        alpha, beta = family_params(d, 1, 0)
        if n == 2:
            interior = np.array([-1.0])
        else:
            interior = _shifted_jacobi_nodes(k, alpha, beta, s)
        interior = np.sort(interior)
        if abs(interior[-1] - s) > 5e-11:
            raise NumericalError(f"largest node drifted from s at polynomial degree {k}")
        interior[-1] = s
        lam_10 = math.exp(_log_norm_const(alpha, beta))
        qdiag = np.atleast_1d(cd_kernel(k - 1, d, 1, 0, interior, interior, "confluent"))
        weights = lam_10 / (lam_d * (1.0 - interior) * qdiag)
        nodes = interior[::-1]
        weights = weights[::-1]
        rule = QuadratureRule(
            d=d,
            n=n,
            tau=tau,
            parity="odd",
            nodes=tuple(float(x) for x in nodes),
            weights=tuple(float(w) for w in weights),
            includes_minus_one=bool(nodes[-1] == -1.0),
            endpoint=endpoint,
        )
    else:
        alpha, beta = family_params(d, 1, 1)
        interior = np.sort(_shifted_jacobi_nodes(k, alpha, beta, s))
        if abs(interior[-1] - s) > 5e-11:
            raise NumericalError(f"largest node drifted from s at polynomial degree {k}")
        interior[-1] = s
        lam_11 = math.exp(_log_norm_const(alpha, beta))
        # kernel order k-1, matching the node polynomial; the order-k
        # diagonal breaks the weight-sum identity away from endpoint
        # cardinalities (checked: d=2, N=5 gives weight sum 0.96)
        qdiag = np.atleast_1d(cd_kernel(k - 1, d, 1, 1, interior, interior, "confluent"))
        eta = lam_11 / (lam_d * (1.0 - interior * interior) * qdiag)
        # weight at the node -1 from the Gegenbauer kernel determinant
        q_s1 = cd_kernel(k, d, 0, 0, s, 1.0, "ratio")
        q_mm = cd_kernel(k, d, 0, 0, -1.0, -1.0, "confluent")
        q_m1 = cd_kernel(k, d, 0, 0, -1.0, 1.0, "ratio")
        q_sm = cd_kernel(k, d, 0, 0, s, -1.0, "ratio")
        den = q_mm * q_s1 - q_m1 * q_sm
        fallback = not abs(den) > 1e-13 * max(1.0, abs(q_mm * q_s1))
        if fallback:
            all_nodes = np.concatenate(([-1.0], interior))
            wts = _exactness_system_weights(d, n, all_nodes)
            eta_last = wts[0]
            eta = wts[1:]
        else:
            eta_last = q_s1 / den
        nodes = np.concatenate((interior[::-1], [-1.0]))
        weights = np.concatenate((eta[::-1], [eta_last]))
        rule = QuadratureRule(
            d=d,
            n=n,
            tau=tau,
            parity="even",
            nodes=tuple(float(x) for x in nodes),
            weights=tuple(float(w) for w in weights),
            includes_minus_one=True,
            endpoint=endpoint,
            weight_fallback=fallback,
        )
    rule.validate()
    return rule


def gegenbauer_moment(d: int, j: int) -> float:
    """Normalized moment of t^j against the projected sphere measure.

    Odd moments vanish; mu_{2p} = prod_{i=1}^{p} (2i-1)/(2i+d-1),
    evaluated in exact rational arithmetic.
    """
    if j < 0:
        raise DomainError(f"moment degree must be >= 0, got {j}")
    if j % 2 == 1:
        return 0.0
    acc = Fraction(1)
    for i in range(1, j // 2 + 1):
        acc *= Fraction(2 * i - 1, 2 * i + d - 1)
    return float(acc)


def verify_exactness(rule: QuadratureRule, max_degree: int) -> float:
    """Worst defect of the rule on monomials t^j, j = 0..max_degree.

    Compares f(1)/N + sum w_i f(x_i) against the closed-form moment for
    each monomial and returns the largest absolute gap.
    """
    if max_degree < 0:
        raise DomainError(f"max_degree must be >= 0, got {max_degree}")
    nodes = np.array(rule.nodes, dtype=_LONG)
    weights = np.array(rule.weights, dtype=_LONG)
    worst = 0.0
    powers = np.ones_like(nodes)
    for j in range(max_degree + 1):
        if j > 0:
            powers = powers * nodes
        val = float(1.0 / _LONG(rule.n) + np.sum(weights * powers))
        defect = abs(val - gegenbauer_moment(rule.d, j))
        if defect > worst:
            worst = defect
    return worst


def separation_bound(d: int, n: int) -> float:
    """Largest quadrature node: no N-point set has all inner products below it."""
    if n < 2 or n != int(n):
        raise DomainError(f"separation_bound requires integer N >= 2, got {n}")
    return solve_s_for_n(d, float(n))
