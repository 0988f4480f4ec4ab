"""Angular band decomposition, margin-trimmed annular projections, spatial
truncation to the unit disk, and offset periodization to integer double spectra.

Band k of an N-direction fan is the difference of consecutive half-plane
projections, so the telescoping identity

    halfplane(theta_m) g = halfplane(theta_0) g + sum_{k<=m} band_k g

holds exactly on the grid.  Truncating each band to a radial annulus with an
angular safety margin, cutting to the unit-diameter disk in space, and reading
integer-offset Fourier coefficients yields, for a good offset, a family of
double polynomials with pairwise disjoint positive spectra after modulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .directional import DirectionFan, halfplane_multiplier, Direction
from .errors import MarginTooWide, ShiftTooSmall
from .spectral import Field2D, Spectrum2D, dft2_forward, dft2_inverse, l2_norm


class Provenance(Enum):
    RAW_BAND = "raw_band"
    TRUNCATED = "truncated"
    SPATIAL = "spatial"


@dataclass(frozen=True)
class BandSpec:
    fan: DirectionFan
    inner_radius: float
    outer_radius: float
    angular_margin: float

    def __post_init__(self):
        if not 0 < self.inner_radius < self.outer_radius:
            raise ValueError("need 0 < inner_radius < outer_radius")
        gap = math.pi / self.fan.count
        if 2 * self.angular_margin >= gap:
            raise MarginTooWide(
                f"2*margin = {2 * self.angular_margin} must stay below the fan gap {gap}"
            )


@dataclass
class BandFamily:
    members: list
    provenance: Provenance
    spec: BandSpec | None = None

    def __len__(self):
        return len(self.members)


@dataclass
class DoublePolynomialFamily:
    """Sparse double polynomials: one dict (n1, n2) -> coeff per band, plus the
    retained index sets and the discarded tail energies of the periodization."""

    members: list
    spectra: list
    tail_energy: list = field(default_factory=list)
    offset: tuple = (0.0, 0.0)
    collisions: int = 0

    def __len__(self):
        return len(self.members)

    def total_tail(self) -> float:
        return float(sum(self.tail_energy))

    def spectra_disjoint(self) -> bool:
        seen = set()
        for s in self.spectra:
            if seen & s:
                return False
            seen |= s
        return True


# ---------------------------------------------------------------------------
# band decomposition


def band_decompose(g: Field2D, fan: DirectionFan) -> BandFamily:
    """Split g into the N half-plane increments of the fan sweep."""
    spec = dft2_forward(g)
    n1, n2 = g.spec.frequency_grid()
    members = []
    prev = halfplane_multiplier(Direction(0.0))(n1, n2)
    for k in range(1, fan.count + 1):
        cur = halfplane_multiplier(Direction(fan.angle(k)))(n1, n2)
        members.append(dft2_inverse(Spectrum2D(g.spec, (cur - prev) * spec.coeffs)))
        prev = cur
    return BandFamily(members, Provenance.RAW_BAND)


def _wing_mask(ang, lo: float, hi: float) -> np.ndarray:
    """Angles in the half-open arc (lo, hi], all mod 2π."""
    span = (hi - lo) % (2 * math.pi)
    rel = (ang - lo) % (2 * math.pi)
    return (rel > 0) & (rel <= span)


def band_sector_sign(gspec, fan: DirectionFan, k: int, margin: float,
                     inner: float | None = None, outer: float | None = None) -> np.ndarray:
    """+1 on the gained wing, -1 on the lost wing of band k, margin-trimmed and
    optionally restricted to the radial annulus [inner, outer)."""
    n1, n2 = gspec.frequency_grid()
    ang = np.arctan2(n2, n1)
    th0 = fan.angle(k - 1)
    th1 = fan.angle(k)
    gained = _wing_mask(ang, th0 + math.pi / 2 + margin, th1 + math.pi / 2 - margin)
    lost = _wing_mask(ang, th0 - math.pi / 2 + margin, th1 - math.pi / 2 - margin)
    out = np.where(gained, 1.0, 0.0) - np.where(lost, 1.0, 0.0)
    if inner is not None:
        rad = np.hypot(n1, n2)
        out = out * ((rad >= inner) & (rad < outer))
    return out


def annular_truncate(g: Field2D, b: BandSpec) -> BandFamily:
    """Margin-trimmed annular-sector projections of each band."""
    spec = dft2_forward(g)
    members = []
    for k in range(1, b.fan.count + 1):
        sgn = band_sector_sign(g.spec, b.fan, k, b.angular_margin, b.inner_radius, b.outer_radius)
        members.append(dft2_inverse(Spectrum2D(g.spec, sgn * spec.coeffs)))
    return BandFamily(members, Provenance.TRUNCATED, b)


def spatial_truncate(fam: BandFamily) -> BandFamily:
    """Cut each member to the ball of radius 1/2 about the origin."""
    if fam.provenance != Provenance.TRUNCATED:
        raise ValueError("spatial_truncate expects a truncated (annular) family")
    out = []
    for m in fam.members:
        x1, x2 = m.spec.meshgrid()
        inside = np.hypot(x1, x2) < 0.5
        out.append(Field2D(m.spec, m.values * inside))
    return BandFamily(out, Provenance.SPATIAL, fam.spec)


def spectral_leakage(fam: BandFamily) -> list:
    """Per band, the l2 fraction of the spectrum outside its assigned annular sector."""
    if fam.spec is None:
        raise ValueError("family carries no band geometry")
    b = fam.spec
    out = []
    for k, m in enumerate(fam.members, start=1):
        s = dft2_forward(m)
        sgn = band_sector_sign(m.spec, b.fan, k, b.angular_margin, b.inner_radius, b.outer_radius)
        outside = s.coeffs * (sgn == 0)
        total = np.linalg.norm(s.coeffs)
        out.append(float(np.linalg.norm(outside) / total) if total > 0 else 0.0)
    return out


# ---------------------------------------------------------------------------
# periodization at an offset


def _cell_band_assignment(gspec, b: BandSpec):
    """Assign integer cells [n1, n1+1) x [n2, n2+1) to bands.

    A cell joins the candidate set of band k when one of its four corners or its
    center lies in the band's trimmed annular sector; ties between bands go to
    the band whose wing bisector is angularly nearest to the cell center.
    Returns (assignment array with 0 for unassigned, collision count).
    """
    n1, n2 = gspec.frequency_grid()
    nbands = b.fan.count
    hits = np.zeros(n1.shape, dtype=np.int64)
    assign = np.zeros(n1.shape, dtype=np.int64)
    bestdist = np.full(n1.shape, np.inf)
    cx, cy = n1 + 0.5, n2 + 0.5
    cang = np.arctan2(cy, cx)
    probes = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, 0.5)]
    for k in range(1, nbands + 1):
        th0, th1 = b.fan.angle(k - 1), b.fan.angle(k)
        meets = np.zeros(n1.shape, dtype=bool)
        for dx, dy in probes:
            px, py = n1 + dx, n2 + dy
            rad = np.hypot(px, py)
            ang = np.arctan2(py, px)
            in_rad = (rad >= b.inner_radius) & (rad < b.outer_radius)
            gained = _wing_mask(ang, th0 + math.pi / 2 + b.angular_margin,
                                th1 + math.pi / 2 - b.angular_margin)
            lost = _wing_mask(ang, th0 - math.pi / 2 + b.angular_margin,
                              th1 - math.pi / 2 - b.angular_margin)
            meets |= in_rad & (gained | lost)
        mid = (th0 + th1) / 2
        dist = np.minimum(np.abs(_ang_diff(cang, mid + math.pi / 2)),
                          np.abs(_ang_diff(cang, mid - math.pi / 2)))
        take = meets & (dist < bestdist)
        assign[take] = k
        bestdist[take] = dist[take]
        hits += meets
    return assign, int(np.sum(hits > 1))


def _ang_diff(a, b):
    return (a - b + math.pi) % (2 * math.pi) - math.pi


def offset_coefficients(m: Field2D, u) -> np.ndarray:
    """Integer-frequency coefficients of exp(-2πi u.x) * m, periodized with period 1.

    Valid when the member is supported in one unit cell (here: the centered unit
    square), so the periodization does not overlap and Parseval is exact.
    Requires unit side length; the grid lattice then is the integer lattice.
    """
    if m.spec.side_length != 1.0:
        raise ValueError("offset periodization requires a unit-square grid")
    x1, x2 = m.spec.meshgrid()
    phase = np.exp(-2j * np.pi * (u[0] * x1 + u[1] * x2))
    return dft2_forward(Field2D(m.spec, m.values * phase)).coeffs


def periodize_offset(fam: BandFamily, u) -> DoublePolynomialFamily:
    """Read integer-lattice coefficients of each spatially truncated band at
    offset u, keeping the cells assigned to the band and reporting the rest."""
    if fam.provenance != Provenance.SPATIAL:
        raise ValueError("periodize_offset expects a spatially truncated family")
    if fam.spec is None:
        raise ValueError("family carries no band geometry")
    gspec = fam.members[0].spec
    assign, collisions = _cell_band_assignment(gspec, fam.spec)
    n1g, n2g = gspec.frequency_grid()
    members, spectra, tails = [], [], []
    for k, m in enumerate(fam.members, start=1):
        coeffs = offset_coefficients(m, u)
        keep = assign == k
        tails.append(float(np.sum(np.abs(coeffs[~keep]) ** 2)))
        idx = np.argwhere(keep & (coeffs != 0))
        terms = {}
        pts = set()
        for i, j in idx:
            n = (int(n1g[i, j]), int(n2g[i, j]))
            terms[n] = complex(coeffs[i, j])
            pts.add(n)
        members.append(terms)
        spectra.append(pts)
    return DoublePolynomialFamily(members, spectra, tails, (float(u[0]), float(u[1])), collisions)


def _r2_sequence(count: int) -> np.ndarray:
    """Low-discrepancy points in [0,1)^2 (generalized golden-ratio lattice)."""
    g = 1.3247179572447460  # real root of x^3 = x + 1
    a = np.array([1.0 / g, 1.0 / g**2])
    i = np.arange(1, count + 1)[:, None]
    return np.mod(0.5 + i * a[None, :], 1.0)


def select_offset(fam: BandFamily, candidates: int) -> tuple:
    """Candidate offset minimizing the total discarded tail energy; the minimum
    is certified against the candidate average."""
    if candidates < 1:
        raise ValueError("need at least one candidate")
    pts = _r2_sequence(candidates)
    objectives = []
    for u in pts:
        objectives.append(periodize_offset(fam, u).total_tail())
    best = int(np.argmin(objectives))
    mean = float(np.mean(objectives))
    assert objectives[best] <= mean + 1e-15
    return (float(pts[best][0]), float(pts[best][1])), objectives[best], mean


def modulate_positive(fam: DoublePolynomialFamily, shift) -> DoublePolynomialFamily:
    """Translate every spectrum by the integer vector shift; all frequencies must
    land strictly inside the positive quadrant."""
    s1, s2 = int(shift[0]), int(shift[1])
    members, spectra = [], []
    for terms in fam.members:
        moved = {(n1 + s1, n2 + s2): c for (n1, n2), c in terms.items()}
        for n1, n2 in moved:
            if n1 < 1 or n2 < 1:
                raise ShiftTooSmall(f"frequency {(n1, n2)} not positive after shift {(s1, s2)}")
        members.append(moved)
        spectra.append(set(moved))
    return DoublePolynomialFamily(members, spectra, list(fam.tail_energy), fam.offset, fam.collisions)


# ---------------------------------------------------------------------------
# family majorants (block partial-sum maxima over a shared grid)


def family_majorant_ratio_fields(members) -> float:
    """||max_m |sum_{k<=m} members_k|||_2 / ||sum_k members_k||_2 on the members' grid."""
    run = np.zeros_like(members[0].values)
    best = np.zeros(run.shape)
    for m in members:
        run = run + m.values
        np.maximum(best, np.abs(run), out=best)
    den = np.linalg.norm(run)
    return float(np.linalg.norm(best) / den) if den > 0 else 0.0


def family_majorant_ratio_double(members, gspec) -> float:
    """Same ratio for sparse double polynomials, evaluated on the grid of gspec."""
    m = gspec.samples_per_side
    run = np.zeros((m, m), dtype=complex)
    best = np.zeros((m, m))
    half = m // 2
    for terms in members:
        arr = np.zeros((m, m), dtype=complex)
        for (a, b), c in terms.items():
            arr[(a + half) % m, (b + half) % m] = c
        spec = Spectrum2D(gspec, arr)
        run = run + dft2_inverse(spec).values
        np.maximum(best, np.abs(run), out=best)
    den = np.linalg.norm(run)
    return float(np.linalg.norm(best) / den) if den > 0 else 0.0
