"""Coordinate-space solutions of the discretised l=0 hydrogen radial equation.

The lattice eigenfunctions have the form

    u(r) = (sum_{k=1..n} ell_k alpha_k r^k) * q^(r/delta),

where ell_k are the continuum Laguerre coefficients, q is the per-step
decay factor and the alpha_k carry the delta-dependent lattice
corrections.  Two independent routes compute the alpha vector:

* `alpha_inner` runs the published level-by-level recursions over the
  combinatorial C coefficients (exact rationals), assembled into surds by
  `alpha_assemble`;
* `ansatz_constraint_system` re-derives the linear constraints from first
  principles by binomial expansion of u(r +/- delta) and
  `solve_constraint_system` solves them by exact Gaussian elimination.

Both must agree exactly; `difference_residual` additionally checks the
difference equation row by row in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .numerics import QuadraticSurd, RationalLike, as_surd, surd_pow


class ZeroPivotError(ArithmeticError):
    """The level recursion hit a vanishing divisor C(n,k,1)/n - C(n,k,0)."""

    def __init__(self, n: int, k: int, m: int) -> None:
        super().__init__(
            f"zero divisor in coefficient recursion at n={n}, k={k}, m={m}")
        self.n = n
        self.k = k
        self.m = m


@dataclass(frozen=True)
class EigenData:
    """Per-(n, delta) eigenvalue bundle.

    mu = sqrt(1 + (delta/n)**2), E = (1 - mu)/delta**2,
    beta = -arsinh(delta/n)/delta (float only; the algebraic per-step
    factor q = mu - delta/n is used wherever exactness matters).
    """
    n: int
    delta: Fraction
    mu: QuadraticSurd
    E: QuadraticSurd
    beta: float
    q: QuadraticSurd


@dataclass(frozen=True)
class LaguerreRef:
    """Continuum reference: u_n(r) = e^(-r/n) sum_k ell_k r^k."""
    n: int
    coefficients: Mapping[int, Fraction]

    def evaluate(self, r: float) -> float:
        poly = sum(float(c) * r ** k for k, c in self.coefficients.items())
        return poly * math.exp(-r / self.n)


@dataclass(frozen=True)
class AlphaTable:
    """Inner coefficients alpha^(n)_{n-k,m} for one n, 0 <= k <= kmax."""
    n: int
    kmax: int
    inner: Mapping[tuple[int, int], Fraction]

    def inner_coeff(self, k: int, m: int) -> Fraction:
        if m == 0 and k >= 0:
            return Fraction(1)
        if k < 0 or m < 0 or m > k // 2:
            return Fraction(0)  # impossible coefficients
        return self.inner[(k, m)]

    def assembled(self, k: int, delta: RationalLike) -> QuadraticSurd:
        return alpha_assemble(self, k, delta)


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows of the power-by-power constraints on the full polynomial
    coefficients c_k = ell_k * alpha_k (row j for r^j, j = 0..n).

    Rows j = n and j = n-1 vanish identically once mu and q take their
    eigenvalue values; the remaining n-1 rows have a one-dimensional
    solution space.
    """
    n: int
    delta: Fraction
    mu: QuadraticSurd
    q: QuadraticSurd
    rows: tuple[tuple[QuadraticSurd, ...], ...]


def continuum_energy(n: int) -> Fraction:
    """Continuum eigenvalue -1/(2 n**2)."""
    if n <= 0:
        raise ValueError("state index must be positive")
    return Fraction(-1, 2 * n * n)


@lru_cache(maxsize=None)
def eigen_data(n: int, delta: RationalLike) -> EigenData:
    """Closed-form lattice eigenvalue data for state n at step delta."""
    if n <= 0:
        raise ValueError("state index must be positive")
    delta = Fraction(delta)
    if delta == 0:
        raise ValueError("E is undefined at delta=0; the limit is -1/(2n^2)")
    t = delta / n
    mu = QuadraticSurd(0, 1, 1 + t * t)
    energy = (1 - mu) / (delta * delta)
    beta = -math.asinh(float(t)) / float(delta)
    return EigenData(n=n, delta=delta, mu=mu, E=energy, beta=beta, q=mu - t)


@lru_cache(maxsize=None)
def laguerre_ref(n: int) -> LaguerreRef:
    """ell_k = ((-2/n)^(k-1)/k!) C(n-1, k-1) for k = 1..n, exact."""
    if n < 1:
        raise ValueError("state index must be positive")
    coeffs = {
        k: Fraction(-2, n) ** (k - 1) / math.factorial(k) * math.comb(n - 1, k - 1)
        for k in range(1, n + 1)
    }
    return LaguerreRef(n=n, coefficients=coeffs)


@lru_cache(maxsize=None)
def c_coeff(n: int, k: int, l: int) -> Fraction:
    """C_{n,k,l} = (-n/2)^k n!/(k! l! (n-k-l)!) prod_{m=1..k}(n-m), exact."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    if n - k - l < 0:
        raise ValueError(f"n-k-l = {n - k - l} < 0")
    prod = 1
    for m in range(1, k + 1):
        prod *= n - m
    return (Fraction(-n, 2) ** k * prod
            * Fraction(math.factorial(n),
                       math.factorial(k) * math.factorial(l)
                       * math.factorial(n - k - l)))


def _c_or_zero(n: int, k: int, l: int) -> Fraction:
    if k < 0 or l < 0 or n - k - l < 0:
        return Fraction(0)
    return c_coeff(n, k, l)


@lru_cache(maxsize=None)
def alpha_inner(n: int, kmax: int) -> AlphaTable:
    """Fill the inner coefficient table level by level.

    Base row alpha_{n-k,0} = 1; the m >= 1 entries follow the even/odd
    level recursions over C coefficients, dividing by
    C(n,k,1)/n - C(n,k,0) (guarded against a zero divisor).
    """
    if n < 1:
        raise ValueError("state index must be positive")
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if kmax > n - 1:
        raise ValueError(f"kmax={kmax} exceeds n-1={n - 1}")
    inner: dict[tuple[int, int], Fraction] = {}

    def get(k: int, m: int) -> Fraction:
        if m == 0 and k >= 0:
            return Fraction(1)
        if k < 0 or m < 0 or m > k // 2:
            return Fraction(0)
        return inner[(k, m)]

    for k in range(0, kmax + 1):
        inner[(k, 0)] = Fraction(1)
        kp = k // 2
        if kp == 0:
            continue
        denom = _c_or_zero(n, k, 1) / n - _c_or_zero(n, k, 0)
        for m in range(1, kp + 1):
            if denom == 0:
                raise ZeroPivotError(n, k, m)
            if k % 2 == 0:
                t1 = sum(_c_or_zero(n, 2 * l, k + 1 - 2 * l)
                         * get(2 * l, l + m - kp)
                         for l in range(kp - m, kp)) / n
                t2 = sum(_c_or_zero(n, 2 * l + 1, k - 2 * l)
                         * get(2 * l + 1, l + m - kp + 1)
                         for l in range(kp - m - 1, kp))
                t3 = sum(_c_or_zero(n, 2 * l + 1, k - 2 * l)
                         * get(2 * l + 1, l + m - kp)
                         for l in range(kp - m, kp)) / (n * n)
                inner[(k, m)] = (-t1 + t2 + t3) / denom
            else:
                t1 = sum(_c_or_zero(n, 2 * l + 1, k - 2 * l)
                         * get(2 * l + 1, l + m - kp)
                         for l in range(kp - m, kp)) / n
                t2 = sum(_c_or_zero(n, 2 * l, k + 1 - 2 * l)
                         * get(2 * l, l + m - kp)
                         for l in range(kp - m, kp + 1))
                inner[(k, m)] = (-t1 + t2) / denom
    return AlphaTable(n=n, kmax=kmax, inner=inner)


def alpha_assemble(table: AlphaTable, k: int, delta: RationalLike) -> QuadraticSurd:
    """alpha^(n,delta)_{n-k}: even k are rational, odd k carry one factor
    of mu_n = sqrt(1 + delta**2/n**2)."""
    if k > table.kmax:
        raise ValueError(f"k={k} exceeds table kmax={table.kmax}")
    delta = Fraction(delta)
    kp = k // 2
    body = sum((table.inner_coeff(k, m) * delta ** (2 * m)
                for m in range(kp + 1)), Fraction(0))
    if k % 2 == 0:
        return QuadraticSurd(body)
    t = delta / table.n
    return QuadraticSurd(0, body, 1 + t * t)


def ansatz_constraint_system(n: int, delta: RationalLike) -> ConstraintSystem:
    """Constraints from substituting e^(beta*r) * sum c_k r^k into the
    difference equation, one row per power r^j.

    Row j, column k (1-based): C(k,j) delta^(k-j) (q + (-1)^(k-j)/q)/2,
    plus delta**2 on k = j+1 and -mu on k = j; all exact in Q(sqrt(D)).
    The symmetric/antisymmetric step factors reduce exactly to mu and
    -delta/n.
    """
    if n < 1:
        raise ValueError("state index must be positive")
    delta = Fraction(delta)
    if delta == 0:
        raise ValueError("constraint system requires delta != 0")
    ed = eigen_data(n, delta)
    q_inv = ed.mu + delta / n  # exact inverse of q
    half_sum = (ed.q + q_inv) / 2    # equals mu
    half_diff = (ed.q - q_inv) / 2   # equals -delta/n
    dsq = delta * delta
    rows = []
    for j in range(0, n + 1):
        row = []
        for k in range(1, n + 1):
            coef = as_surd(0)
            if k >= j:
                w = half_sum if (k - j) % 2 == 0 else half_diff
                coef = coef + math.comb(k, j) * delta ** (k - j) * w
            if k == j + 1:
                coef = coef + dsq
            if k == j:
                coef = coef - ed.mu
            row.append(coef)
        rows.append(tuple(row))
    return ConstraintSystem(n=n, delta=delta, mu=ed.mu, q=ed.q,
                            rows=tuple(rows))


def solve_constraint_system(system: ConstraintSystem) -> tuple[QuadraticSurd, ...]:
    """Exact nullspace solve, returned as alpha_1..alpha_n with alpha_n = 1.

    Gaussian elimination over Q(sqrt(D)) on the nonzero rows; the full
    coefficients c_k are converted back to alpha_k = c_k/ell_k and scaled
    so alpha_n = 1.
    """
    n = system.n
    if n == 1:
        return (as_surd(1),)
    rows = [list(row) for row in system.rows
            if any(not c.is_zero() for c in row)]
    pivots: list[int] = []
    ri = 0
    for col in range(n):
        pr = next((i for i in range(ri, len(rows))
                   if not rows[i][col].is_zero()), None)
        if pr is None:
            continue
        rows[ri], rows[pr] = rows[pr], rows[ri]
        pivot = rows[ri][col]
        rows[ri] = [c / pivot for c in rows[ri]]
        for i in range(len(rows)):
            if i != ri and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [c - factor * p for c, p in zip(rows[i], rows[ri])]
        pivots.append(col)
        ri += 1
        if ri == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ArithmeticError(
            f"expected a one-dimensional solution space, got {len(free)} free "
            f"columns for n={n}, delta={system.delta}")
    fc = free[0]
    c_vec = [as_surd(0)] * n
    c_vec[fc] = as_surd(1)
    for i, col in enumerate(pivots):
        c_vec[col] = -rows[i][fc]
    ell = laguerre_ref(n).coefficients
    alphas = [c_vec[k - 1] / ell[k] for k in range(1, n + 1)]
    last = alphas[-1]
    if last.is_zero():
        raise ArithmeticError("degenerate solution with alpha_n = 0")
    return tuple(a / last for a in alphas)


@lru_cache(maxsize=None)
def _alpha_vector(n: int, delta: Fraction) -> tuple[QuadraticSurd, ...]:
    table = alpha_inner(n, n - 1)
    return tuple(table.assembled(n - j, delta) for j in range(1, n + 1))


def wavefunction(n: int, delta: RationalLike, k: int) -> QuadraticSurd:
    """Exact lattice eigenfunction value u^n_k at grid point r = k*delta."""
    if k < 1:
        raise ValueError("grid index must be >= 1")
    delta = Fraction(delta)
    ed = eigen_data(n, delta)
    alphas = _alpha_vector(n, delta)
    ell = laguerre_ref(n).coefficients
    r = k * delta
    poly = as_surd(0)
    for j in range(1, n + 1):
        poly = poly + alphas[j - 1] * (ell[j] * r ** j)
    return poly * surd_pow(ed.q, k)


def wavefunction_float(n: int, delta: RationalLike, r: float) -> float:
    """Float evaluation of u_n^(delta)(r) at arbitrary real r >= 0."""
    delta = Fraction(delta)
    ed = eigen_data(n, delta)
    alphas = _alpha_vector(n, delta)
    ell = laguerre_ref(n).coefficients
    poly = sum(float(alphas[j - 1]) * float(ell[j]) * r ** j
               for j in range(1, n + 1))
    return poly * math.exp(ed.beta * r)


def difference_residual(n: int, delta: RationalLike, k: int) -> QuadraticSurd:
    """Exact residual u_{k-1}/2 + u_{k+1}/2 + delta*u_k/k - mu*u_k.

    Zero for every row of the closed-form eigenfunction (u_0 = 0).
    """
    if k < 1:
        raise ValueError("grid index must be >= 1")
    delta = Fraction(delta)
    ed = eigen_data(n, delta)
    u_prev = wavefunction(n, delta, k - 1) if k >= 2 else as_surd(0)
    u_here = wavefunction(n, delta, k)
    u_next = wavefunction(n, delta, k + 1)
    return u_prev / 2 + u_next / 2 + u_here * (delta / k) - ed.mu * u_here


def difference0_residual(u: Callable[[float], float], r: float,
                         delta: float, energy: float) -> float:
    """Float residual of the original difference equation for any candidate
    function: -(u(r-d) - 2u(r) + u(r+d))/(2 d**2) - u(r)/r - E u(r)."""
    second = (u(r - delta) - 2.0 * u(r) + u(r + delta)) / (2.0 * delta * delta)
    return -second - u(r) / r - energy * u(r)
