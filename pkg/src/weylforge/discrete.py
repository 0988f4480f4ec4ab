"""Discrete trigonometric systems, their tensor products, and the coprime
re-indexing that identifies the product system with a one-dimensional one.

The order-l system consists of the step functions taking value exp(2πi*n*k/l)
on the cell [(k-1)/l, k/l); indices n and cells k both run over 1..l, with
n = l playing the role of frequency zero.  All re-indexing identities are
verified in exact integer arithmetic (congruences mod p*q), never in floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, NotCoprime
from .spectral import TrigPolynomial1D


def mod_star(m: int, n: int) -> int:
    """Remainder normalized into {1..n}: multiples of n map to n, not 0."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return (m - 1) % n + 1


def crt_tau(p: int, q: int, n1: int, n2: int) -> int:
    """The unique l in 1..pq with l ≡ n1 (mod p) and l ≡ n2 (mod q);
    periodic in both arguments."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    if p == 1 and q == 1:
        return 1
    if p == 1:
        return mod_star(n2, q)
    if q == 1:
        return mod_star(n1, p)
    qinv = pow(q, -1, p)
    pinv = pow(p, -1, q)
    return mod_star(n1 * q * qinv + n2 * p * pinv, p * q)


@dataclass(frozen=True)
class DiscreteSystemIndex:
    """Coprime re-indexing data: tau solves the simultaneous congruences,
    phi re-labels basis functions, psi re-labels cells."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p, q must be >= 1")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p},{self.q}) != 1")

    def tau(self, n1: int, n2: int) -> int:
        return crt_tau(self.p, self.q, n1, n2)

    def phi(self, n1: int, n2: int) -> int:
        return self.tau(n1, n2)

    def psi(self, u1: int, u2: int) -> int:
        return mod_star(self.tau(u1, -u2) * (self.q - self.p), self.p * self.q)

    # vectorized forms over the full index rectangle, used by the exhaustive checks

    def tau_table(self) -> np.ndarray:
        p, q, pq = self.p, self.q, self.p * self.q
        n1 = np.arange(1, p + 1, dtype=np.int64)[:, None]
        n2 = np.arange(1, q + 1, dtype=np.int64)[None, :]
        if p == 1 and q == 1:
            return np.ones((1, 1), dtype=np.int64)
        if p == 1:
            return np.broadcast_to((n2 - 1) % q + 1, (1, q)).copy()
        if q == 1:
            return ((n1 - 1) % p + 1).astype(np.int64).reshape(p, 1).copy()
        qinv = pow(self.q, -1, self.p)
        pinv = pow(self.p, -1, self.q)
        return (n1 * q * qinv + n2 * p * pinv - 1) % pq + 1

    def phi_table(self) -> np.ndarray:
        return self.tau_table()

    def psi_table(self) -> np.ndarray:
        p, q, pq = self.p, self.q, self.p * self.q
        u1 = np.arange(1, p + 1, dtype=np.int64)[:, None]
        u2 = np.arange(1, q + 1, dtype=np.int64)[None, :]
        if p == 1 and q == 1:
            return np.ones((1, 1), dtype=np.int64)
        minus_u2 = (-u2 - 1) % q + 1
        if p == 1:
            tau = np.broadcast_to((minus_u2 - 1) % q + 1, (1, q))
        elif q == 1:
            tau = np.broadcast_to((u1 - 1) % p + 1, (p, 1))
        else:
            qinv = pow(self.q, -1, self.p)
            pinv = pow(self.p, -1, self.q)
            tau = (u1 * q * qinv + minus_u2 * p * pinv - 1) % pq + 1
        return (tau * (q - p) - 1) % pq + 1


def build_index(p: int, q: int) -> DiscreteSystemIndex:
    """Construct the re-indexing and verify its congruence identity and bijectivity
    exhaustively in integer arithmetic."""
    idx = DiscreteSystemIndex(p, q)
    ok, _ = verify_index_identity(idx)
    if not ok:
        raise AssertionError(f"re-indexing identity failed for p={p}, q={q}")
    return idx


def verify_index_identity(idx: DiscreteSystemIndex) -> tuple[bool, int]:
    """Exhaustively check q*n1*u1 + p*n2*u2 ≡ phi(n)*psi(u) (mod pq) over all
    (n, u) pairs, plus bijectivity of phi and psi.  Returns (ok, tuple_count)."""
    p, q, pq = idx.p, idx.q, idx.p * idx.q
    phi = idx.phi_table()
    psi = idx.psi_table()
    if len(np.unique(phi)) != pq or len(np.unique(psi)) != pq:
        return False, 0
    n1 = np.arange(1, p + 1, dtype=np.int64)
    n2 = np.arange(1, q + 1, dtype=np.int64)
    # left side as a (p*q, p*q) table: (q*n1*u1 + p*n2*u2) mod pq
    a = (q * np.multiply.outer(n1, n1)).reshape(p, 1, p, 1)
    b = (p * np.multiply.outer(n2, n2)).reshape(1, q, 1, q)
    lhs = (a + b) % pq
    rhs = np.multiply.outer(phi, psi) % pq
    count = lhs.size
    return bool(np.array_equal(lhs % pq, rhs.reshape(p, q, p, q) % pq)), count


@dataclass
class StepFunction1D:
    """Function constant on the cells [(k-1)/l, k/l), k = 1..l."""

    order: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.order,):
            raise ValueError("values length must equal order")

    def evaluate(self, x) -> np.ndarray:
        x = np.mod(np.asarray(x, dtype=float), 1.0)
        cells = np.minimum((x * self.order).astype(int), self.order - 1)
        return self.values[cells]

    def inner(self, other: "StepFunction1D") -> complex:
        if other.order != self.order:
            raise ValueError("orders differ")
        return complex(np.vdot(other.values, self.values) / self.order)

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.values) / math.sqrt(self.order))


def discrete_trig(l: int, n: int) -> StepFunction1D:
    """Basis element number n of the order-l system."""
    if not 1 <= n <= l:
        raise IndexOutOfRange(f"n={n} outside 1..{l}")
    k = np.arange(1, l + 1)
    return StepFunction1D(l, np.exp(2j * np.pi * n * k / l))


@dataclass
class DiscretePolynomial1D:
    """Finite combination of order-l basis functions, stored index -> coefficient."""

    order: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, c in self.coeffs.items():
            n = int(n)
            if not 1 <= n <= self.order:
                raise IndexOutOfRange(f"basis index {n} outside 1..{self.order}")
            if c != 0:
                clean[n] = complex(c)
        self.coeffs = clean

    def cell_values(self) -> np.ndarray:
        k = np.arange(1, self.order + 1)
        out = np.zeros(self.order, dtype=complex)
        for n, c in self.coeffs.items():
            out += c * np.exp(2j * np.pi * n * k / self.order)
        return out

    def to_step(self) -> StepFunction1D:
        return StepFunction1D(self.order, self.cell_values())

    def l2_norm(self) -> float:
        if not self.coeffs:
            return 0.0
        return float(np.linalg.norm(np.fromiter(self.coeffs.values(), dtype=complex)))


def flatten(double_coeffs: dict, idx: DiscreteSystemIndex) -> DiscretePolynomial1D:
    """Re-attach tensor-product coefficients to the one-dimensional system.

    double_coeffs maps (n1, n2) with n1 in 1..p, n2 in 1..q to coefficients; the
    output coefficient of basis element phi(n1, n2) equals the input coefficient.
    The cell-value identity (product value on cell (u1, u2) equals flattened
    value on cell psi(u1, u2)) is exact by the congruence identity.
    """
    p, q = idx.p, idx.q
    out = {}
    for (n1, n2), c in double_coeffs.items():
        if not (1 <= n1 <= p and 1 <= n2 <= q):
            raise IndexOutOfRange(f"index {(n1, n2)} outside 1..{p} x 1..{q}")
        out[idx.phi(n1, n2)] = out.get(idx.phi(n1, n2), 0) + c
    return DiscretePolynomial1D(p * q, out)


def tensor_value(double_coeffs: dict, p: int, q: int, u1: int, u2: int) -> complex:
    """Value of the tensor-product polynomial on the cell (u1, u2)."""
    total = 0j
    for (n1, n2), c in double_coeffs.items():
        total += c * np.exp(2j * np.pi * (n1 * u1 / p + n2 * u2 / q))
    return complex(total)


def correlation_at(f: TrigPolynomial1D, g: TrigPolynomial1D, h) -> np.ndarray:
    """The cross-correlation integral ∫ f(x) g(h - x) dx evaluated at shifts h.

    Expanding both series, the integral picks out matching frequencies, so only
    shared support contributes: sum over shared j of f_j * g_j * exp(2πi j h).
    """
    h = np.asarray(h, dtype=float)
    out = np.zeros(h.shape, dtype=complex)
    for j in f.support() & g.support():
        out += f.terms[j] * g.terms[j] * np.exp(2j * np.pi * j * h)
    return out


def strong_orthogonality(f: TrigPolynomial1D, g: TrigPolynomial1D) -> bool:
    """True iff the supports are disjoint, equivalently the cross-correlation
    vanishes for every shift; cross-checked by sampling the correlation at
    4x the support diameter many shifts."""
    shared = f.support() & g.support()
    if not shared:
        return True
    union = f.support() | g.support()
    samples = max(8, min(4 * (max(union) - min(union)), 1 << 20))
    hs = np.arange(samples) / samples
    peak = float(np.max(np.abs(correlation_at(f, g, hs)), initial=0.0))
    return peak < 1e-12
