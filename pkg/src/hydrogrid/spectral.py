"""Truncated tridiagonal operator, Sturm-bisection eigensolver, and the
checks tying the spectral representation to the coordinate one.

The operator has diagonal delta/k (k = 1..N) and constant off-diagonal
1/2.  Its point spectrum above 1 approaches the mass points
x_m = sqrt(1 + delta**2/(m+1)**2); eigenvalues inside [-1, 1] are
truncation artifacts of the continuous spectrum and are only counted,
never matched.  Closed-form eigenvectors are exact surd sequences and
must satisfy every interior row of the matrix relation with residual
exactly zero.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coordinate import wavefunction
from .numerics import QuadraticSurd, RationalLike, as_surd, surd_pow
from .pollaczek import mass_point, pollaczek_mass_closed


class BracketError(ValueError):
    """Bisection bracket does not isolate exactly one eigenvalue."""


@dataclass(frozen=True)
class TridiagonalOperator:
    """Truncation to size N of the infinite lattice operator."""
    delta: Fraction
    size: int

    def diagonal(self, k: int) -> Fraction:
        if not 1 <= k <= self.size:
            raise ValueError(f"row index {k} outside 1..{self.size}")
        return self.delta / k

    @property
    def offdiagonal(self) -> Fraction:
        return Fraction(1, 2)

    def diagonal_floats(self) -> list[float]:
        return [float(self.delta) / k for k in range(1, self.size + 1)]

    def materialize(self) -> np.ndarray:
        mat = np.zeros((self.size, self.size))
        mat[np.diag_indices(self.size)] = self.diagonal_floats()
        idx = np.arange(self.size - 1)
        mat[idx, idx + 1] = 0.5
        mat[idx + 1, idx] = 0.5
        return mat

    def gershgorin_interval(self) -> tuple[float, float]:
        diag = self.diagonal_floats()
        if self.size == 1:
            return diag[0], diag[0]
        radii = [0.5 if k in (0, self.size - 1) else 1.0
                 for k in range(self.size)]
        lo = min(d - r for d, r in zip(diag, radii))
        hi = max(d + r for d, r in zip(diag, radii))
        return lo, hi


@dataclass(frozen=True)
class SpectralVector:
    """Eigenvector candidate over rows k = 1..K (implicit u_0 = 0)."""
    n: int
    delta: Fraction
    entries: tuple
    provenance: str  # "closed_form" or "diagonalization"


def build_truncated(delta: RationalLike, size: int) -> TridiagonalOperator:
    if size < 1:
        raise ValueError("truncation size must be >= 1")
    return TridiagonalOperator(delta=Fraction(delta), size=size)


def sturm_count(op: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of the truncated operator strictly below x.

    Standard Sturm-sequence sign count; a pivot that hits exact zero is
    replaced by a tiny negative multiple of the row norm.
    """
    eps = sys.float_info.epsilon
    count = 0
    d = 1.0
    delta = float(op.delta)
    for k in range(1, op.size + 1):
        diag = delta / k - x
        if k == 1:
            d = diag
        else:
            d = diag - 0.25 / d
        if d == 0.0:
            d = -eps * max(1.0, abs(diag) + 1.0)
        if d < 0.0:
            count += 1
    return count


def eigen_bisection(op: TridiagonalOperator, bracket: tuple[float, float],
                    tol: float) -> float:
    """Deterministic bisection for the single eigenvalue inside bracket."""
    lo, hi = bracket
    if not (lo < hi):
        raise ValueError("bracket must satisfy lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    c_lo = sturm_count(op, lo)
    c_hi = sturm_count(op, hi)
    if c_hi - c_lo != 1:
        raise BracketError(
            f"bracket ({lo}, {hi}) contains {c_hi - c_lo} eigenvalues")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # float resolution exhausted
        if sturm_count(op, mid) > c_lo:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def eigenvalues_between(op: TridiagonalOperator, lo: float, hi: float,
                        tol: float = 1e-12) -> list[float]:
    """All eigenvalues in (lo, hi], isolated by Sturm counts then refined."""
    results: list[float] = []
    stack = [(lo, hi, sturm_count(op, lo), sturm_count(op, hi))]
    while stack:
        a, b, ca, cb = stack.pop()
        k = cb - ca
        if k == 0:
            continue
        if k == 1:
            results.append(eigen_bisection(op, (a, b), tol))
            continue
        mid = 0.5 * (a + b)
        if not a < mid < b:
            # unresolvable cluster at float resolution
            results.extend([mid] * k)
            continue
        cm = sturm_count(op, mid)
        stack.append((a, mid, ca, cm))
        stack.append((mid, b, cm, cb))
    return sorted(results)


def point_spectrum_above(op: TridiagonalOperator, threshold: float = 1.0,
                         tol: float = 1e-12) -> list[float]:
    """Eigenvalues above threshold (the discrete branch), descending x_m
    order not guaranteed; returned ascending."""
    _, hi = op.gershgorin_interval()
    return eigenvalues_between(op, threshold, hi + 1.0, tol)


def closed_form_vector(n: int, delta: RationalLike, length: int) -> SpectralVector:
    """Exact eigenvector entries u_k = P_{k-1}(x_{n-1}), k = 1..length."""
    if length < 1:
        raise ValueError("vector length must be >= 1")
    if n < 1:
        raise ValueError("state index must be positive")
    delta = Fraction(delta)
    mp = mass_point(n - 1, delta)
    entries = tuple(pollaczek_mass_closed(k - 1, mp) for k in range(1, length + 1))
    return SpectralVector(n=n, delta=delta, entries=entries,
                          provenance="closed_form")


def eigen_residual(v: SpectralVector, mu) -> QuadraticSurd | float:
    """Max over interior rows k = 1..K-1 of
    |u_{k-1}/2 + (delta/k) u_k + u_{k+1}/2 - mu u_k|, u_0 = 0.

    Exact surd entries give the exact maximum-magnitude surd; float
    entries (or a mu over a different radicand) fall back to floats.
    """
    entries = v.entries
    if len(entries) < 2:
        raise ValueError("need at least two entries for one interior row")
    exact = all(isinstance(u, QuadraticSurd) for u in entries)
    if exact and isinstance(mu, QuadraticSurd):
        radicands = {u.D for u in entries if not u.is_rational()}
        if not mu.is_rational():
            radicands.add(mu.D)
        exact = len(radicands) <= 1
    else:
        exact = False
    if exact:
        best = as_surd(0)
        for k in range(1, len(entries)):
            u_prev = entries[k - 2] if k >= 2 else as_surd(0)
            row = (u_prev / 2 + entries[k] / 2
                   + entries[k - 1] * (v.delta / k) - mu * entries[k - 1])
            row = abs(row)
            if best < row:
                best = row
        return best
    mu_f = float(mu)
    uf = [float(u) for u in entries]
    delta_f = float(v.delta)
    best_f = 0.0
    for k in range(1, len(uf)):
        u_prev = uf[k - 2] if k >= 2 else 0.0
        row = u_prev / 2 + uf[k] / 2 + (delta_f / k) * uf[k - 1] - mu_f * uf[k - 1]
        best_f = max(best_f, abs(row))
    return best_f


def exp_part(k: int, n: int, delta: RationalLike) -> QuadraticSurd:
    """(sqrt(1 + (delta/n)**2) - delta/n)**k, exact."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    if n < 1:
        raise ValueError("state index must be positive")
    t = Fraction(delta) / n
    q = QuadraticSurd(-t, 1, 1 + t * t)
    return surd_pow(q, k)


def exp_part_float_reference(k: int, n: int, delta: RationalLike) -> float:
    """Transcendental form exp(-k*arsinh(delta/n)) for cross-checking."""
    return math.exp(-k * math.asinh(float(Fraction(delta)) / n))


def inner_product(n: int, n2: int, delta: RationalLike,
                  tail_tol: float = 1e-12) -> float:
    """Truncated l2 inner product sum_k u_k^n u_k^n2.

    Entries come from the exact closed form (floated adaptively), and the
    truncation point is chosen from the geometric decay envelope
    |u_k^n u_k^n2| <= c * k^(n+n2) * (q_n q_n2)^k, calibrated on the last
    few computed terms, so the discarded tail is below tail_tol.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("tail bound requires delta > 0")
    mp1 = mass_point(n - 1, delta)
    mp2 = mass_point(n2 - 1, delta)
    t = float(mp1.q) * float(mp2.q)
    if t >= 1.0:
        raise ValueError("non-convergent tail (decay factor >= 1)")
    power = n + n2
    total = 0.0
    window: list[float] = []
    k = 0
    while True:
        k += 1
        term = (float(pollaczek_mass_closed(k - 1, mp1))
                * float(pollaczek_mass_closed(k - 1, mp2)))
        total += term
        window.append(abs(term))
        if len(window) > 3:
            window.pop(0)
        if k < max(8, power):
            continue
        rho = t * ((k + 1) / k) ** power
        if rho >= 1.0:
            continue
        envelope = max(w * rho ** (len(window) - 1 - i)
                       for i, w in enumerate(window))
        if envelope * rho / (1.0 - rho) < tail_tol:
            return total


def gram_matrix(states: list[int], delta: RationalLike,
                tail_tol: float = 1e-13) -> np.ndarray:
    """Gram matrix of the normalized closed-form vectors."""
    raw = {}
    for i, n in enumerate(states):
        for n2 in states[i:]:
            raw[(n, n2)] = inner_product(n, n2, delta, tail_tol)
    norms = {n: math.sqrt(raw[(n, n)]) for n in states}
    size = len(states)
    out = np.empty((size, size))
    for i, n in enumerate(states):
        for j, n2 in enumerate(states):
            value = raw[(n, n2)] if (n, n2) in raw else raw[(n2, n)]
            out[i, j] = value / (norms[n] * norms[n2])
    return out


def coordinate_ratio(n: int, delta: RationalLike, length: int = 8):
    """Exact global ratio wavefunction(k)/closed_form entry, verified
    constant over k = 1..length; returns the surd ratio."""
    delta = Fraction(delta)
    vec = closed_form_vector(n, delta, length)
    ratio = wavefunction(n, delta, 1) / vec.entries[0]
    for k in range(2, length + 1):
        if wavefunction(n, delta, k) != ratio * vec.entries[k - 1]:
            raise ArithmeticError(
                f"coordinate/spectral ratio not constant at n={n}, k={k}")
    return ratio
