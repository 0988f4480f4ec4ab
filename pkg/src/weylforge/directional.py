"""Directional Hilbert transforms, half-plane and sector projections, maximal operators.

Everything is frequency-side: the transform along direction theta multiplies the
coefficient at n by ``i*sign(n . u_theta)`` with ``sign(0) = 0``; the half-plane
projection uses ``(1 + sign)/2`` so the null line carries weight 1/2 and the
identity ``T_halfplane = (f - i*H f)/2`` is exact at every grid frequency.
Sector projections use the exact set-difference indicator instead: boundary
lines are unweighted, which avoids double half-weighting when sectors tile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import Field2D, Spectrum2D, apply_multiplier, dft2_forward, dft2_inverse

_SNAP = 1e-15
_NULL_TOL = 1e-12


def _unit_vector(theta: float) -> tuple[float, float]:
    """cos/sin with tiny components snapped to exact 0/±1 so axis-aligned
    directions hit lattice null lines exactly."""
    c, s = math.cos(theta), math.sin(theta)

    def snap(v: float) -> float:
        if abs(v) < _SNAP:
            return 0.0
        for target in (1.0, -1.0):
            if abs(v - target) < _SNAP:
                return target
        return v
    return snap(c), snap(s)


@dataclass(frozen=True)
class Direction:
    theta: float

    def __post_init__(self):
        if not 0 <= self.theta < 2 * math.pi:
            object.__setattr__(self, "theta", self.theta % (2 * math.pi))

    @property
    def unit_vector(self) -> tuple[float, float]:
        return _unit_vector(self.theta)


@dataclass(frozen=True)
class DirectionFan:
    """The uniformly spread directions theta_k = pi*k/N, k = 1..N."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("fan needs at least one direction")

    @property
    def directions(self) -> list[Direction]:
        n = self.count
        return [Direction(math.pi * k / n) for k in range(1, n + 1)]

    def angle(self, k: int) -> float:
        """theta_k for k = 0..N (k = 0 is the horizontal reference direction)."""
        return math.pi * k / self.count


@dataclass(frozen=True)
class Sector:
    """Angular sector between the half-planes of beta and alpha:
    membership is {x : x.u_beta >= 0 and x.u_alpha < 0}."""

    alpha: float
    beta: float

    def contains(self, n1, n2):
        ua = _unit_vector(self.alpha)
        ub = _unit_vector(self.beta)
        return (n1 * ub[0] + n2 * ub[1] >= 0) & (n1 * ua[0] + n2 * ua[1] < 0)


def _signed_dot(n1, n2, d: Direction):
    u = d.unit_vector
    dot = n1 * u[0] + n2 * u[1]
    scale = np.hypot(n1, n2)
    out = np.sign(dot)
    out[np.abs(dot) <= _NULL_TOL * np.maximum(scale, 1.0)] = 0.0
    return out


def hilbert_multiplier(d: Direction):
    return lambda n1, n2: 1j * _signed_dot(n1, n2, d)


def halfplane_multiplier(d: Direction):
    return lambda n1, n2: (1.0 + _signed_dot(n1, n2, d)) / 2.0


def hilbert_directional(f: Field2D, d: Direction) -> Field2D:
    return dft2_inverse(apply_multiplier(dft2_forward(f), hilbert_multiplier(d)))


def halfplane_projection(f: Field2D, d: Direction) -> Field2D:
    return dft2_inverse(apply_multiplier(dft2_forward(f), halfplane_multiplier(d)))


def sector_projection(f: Field2D, s: Sector) -> Field2D:
    spec = dft2_forward(f)
    return dft2_inverse(apply_multiplier(spec, lambda n1, n2: s.contains(n1, n2).astype(float)))


def _maximal(f: Field2D, fan: DirectionFan, multiplier) -> Field2D:
    spec = dft2_forward(f)
    best = np.zeros(f.values.shape)
    for d in fan.directions:
        g = dft2_inverse(apply_multiplier(spec, multiplier(d)))
        np.maximum(best, np.abs(g.values), out=best)
    return Field2D(f.spec, best)


def maximal_directional(f: Field2D, fan: DirectionFan) -> Field2D:
    """Pointwise sup over the fan of |H_theta f|."""
    return _maximal(f, fan, hilbert_multiplier)


def maximal_halfplane(f: Field2D, fan: DirectionFan) -> Field2D:
    """Pointwise sup over the fan of |half-plane projection of f|."""
    return _maximal(f, fan, halfplane_multiplier)
