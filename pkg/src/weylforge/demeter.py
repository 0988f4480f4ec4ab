"""The 1/|x| annulus example, its mollification, and the maximal-transform scaling sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .directional import DirectionFan, maximal_directional
from .errors import AnnulusTooLarge, DeltaUnresolvable, GridMismatch, ScaleUnresolvable
from .spectral import (
    Field2D,
    GridSpec2D,
    Spectrum2D,
    dft2_forward,
    dft2_inverse,
    l2_norm,
    shift_field,
    snap_shift,
)


@dataclass(frozen=True)
class AnnulusSpec:
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not 0 < self.r_inner < self.r_outer:
            raise ValueError("need 0 < r_inner < r_outer")


@dataclass(frozen=True)
class MollifierSpec:
    """Approximate-identity kernel: unit mass, spectrum inside the ball of
    radius ``scale`` (physical frequency units), spatial decay like |x|^-decay_power."""

    scale: float
    decay_power: int = 50

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        if self.decay_power < 4:
            raise ValueError("decay_power must be >= 4")


def annulus_field(a: AnnulusSpec, g: GridSpec2D) -> Field2D:
    """Samples of 1/|x| on the annulus a.r_inner <= |x| < a.r_outer, zero outside."""
    if a.r_outer >= g.side_length / 2:
        raise AnnulusTooLarge(
            f"annulus outer radius {a.r_outer} does not fit inside L/2 = {g.side_length / 2}"
        )
    x1, x2 = g.meshgrid()
    r = np.hypot(x1, x2)
    with np.errstate(divide="ignore"):
        vals = np.where((r >= a.r_inner) & (r < a.r_outer), 1.0 / np.where(r == 0, np.inf, r), 0.0)
    return Field2D(g, vals)


def _bump_profile(rho: np.ndarray) -> np.ndarray:
    """Smooth radial bump supported in rho < 1/2, the standard exp(-1/(1/4 - rho^2))."""
    out = np.zeros_like(rho)
    inside = rho < 0.5
    r2 = rho[inside] ** 2
    out[inside] = np.exp(-1.0 / (0.25 - r2))
    return out


def mollifier_kernel(m: MollifierSpec, g: GridSpec2D) -> Field2D:
    """Positive unit-mass kernel whose spectrum is supported in |xi| < scale.

    Built as the square of the inverse transform of a smooth bump supported in
    |xi| < scale/2, so the spectrum (a self-convolution) stays inside the ball
    by construction and the kernel is nonnegative.
    """
    lattice_radius = m.scale * g.side_length
    if lattice_radius > g.samples_per_side / 4:
        raise ScaleUnresolvable(
            f"scale {m.scale} needs lattice radius {lattice_radius} <= M/4 = {g.samples_per_side / 4}"
        )
    n1, n2 = g.frequency_grid()
    rho = np.hypot(n1, n2) / lattice_radius
    root = Spectrum2D(g, _bump_profile(rho).astype(complex))
    psi = dft2_inverse(root)
    k0 = np.abs(psi.values) ** 2
    mass = g.spacing**2 * k0.sum()
    return Field2D(g, k0 / mass)


def mollify(f: Field2D, k: Field2D) -> Field2D:
    """Periodic convolution of f with the kernel k via spectrum product."""
    if f.spec != k.spec:
        raise GridMismatch("field and kernel live on different grids")
    fs = dft2_forward(f)
    ks = dft2_forward(k)
    return dft2_inverse(Spectrum2D(f.spec, fs.coeffs * ks.coeffs))


def modulus_l2(f: Field2D, delta: float, angular_samples: int = 16) -> float:
    """Max over a fixed angular sample of shifts of length <= delta of ||f(.+h) - f||_2."""
    h = f.spec.spacing
    if delta < h:
        raise DeltaUnresolvable(f"delta {delta} below grid spacing {h}")
    seen = set()
    best = 0.0
    for i in range(angular_samples):
        phi = 2 * math.pi * i / angular_samples
        vec = (delta * math.cos(phi), delta * math.sin(phi))
        cells, _ = snap_shift(f.spec, vec)
        if cells == (0, 0) or cells in seen:
            continue
        seen.add(cells)
        shifted = shift_field(f, (cells[0] * h, cells[1] * h))
        best = max(best, h * float(np.linalg.norm(shifted.values - f.values)))
    return best


def maximal_ratio(f: Field2D, fan: DirectionFan) -> float:
    """||sup_theta |H_theta f|||_2 / ||f||_2 over the fan."""
    den = l2_norm(f)
    if den == 0:
        return 0.0
    return l2_norm(maximal_directional(f, fan)) / den


def demeter_grid(n: int) -> GridSpec2D:
    """Reference grid for the scaling sweep: L = 4N, unit spacing."""
    m = 1
    while m < 4 * n:
        m *= 2
    return GridSpec2D(float(4 * n), m)


def demeter_ratio(n: int, g: GridSpec2D) -> float:
    """Scaling-experiment ratio for the 1/|x| field on B(10, N) under an N-direction fan."""
    if n < 4:
        raise ValueError("need N >= 4")
    if g.side_length < 4 * n:
        raise AnnulusTooLarge(f"grid side {g.side_length} < 4N = {4 * n}")
    h = annulus_field(AnnulusSpec(10.0, float(n)), g)
    return maximal_ratio(h, DirectionFan(n))


def demeter_scaling(ns, grid_for=demeter_grid):
    """Rows (N, M, ratio, ln N, ratio/ln N) for each N in ns."""
    rows = []
    for n in ns:
        g = grid_for(n)
        r = demeter_ratio(n, g)
        rows.append(
            {
                "n": int(n),
                "grid_m": g.samples_per_side,
                "ratio": r,
                "log_n": math.log(n),
                "ratio_over_log": r / math.log(n),
            }
        )
    return rows


def fit_log_model(ns, values):
    """Least-squares fit value = a*ln(n) + b; returns (a, b, correlation)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.asarray(values, dtype=float)
    a, b = np.polyfit(x, y, 1)
    corr = float(np.corrcoef(x, y)[0, 1])
    return float(a), float(b), corr
