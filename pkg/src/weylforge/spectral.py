"""Discrete Fourier machinery on periodic 2D grids and sparse 1D trigonometric polynomials.

Conventions, fixed once for the whole package:

* The grid covers the square ``[-L/2, L/2)^2`` with ``M`` samples per side
  (``M`` a power of two), sample ``(i, j)`` sitting at ``x = (-L/2 + i*h,
  -L/2 + j*h)`` with ``h = L/M``.
* Integer frequencies live in the centered box ``[-M/2, M/2)^2``; the Nyquist
  row is assigned to ``-M/2``.  A coefficient at ``n`` multiplies the wave
  ``exp(2*pi*i*n.x/L)``.
* The forward transform carries the quadrature weight ``h^2`` so coefficients
  approximate continuum Fourier integrals; the inverse carries ``1/L^2``.
  Round-trip is exact to machine precision.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, IoFailure

_FIELD_MAGIC = b"WFGF0001"
_SPECTRUM_MAGIC = b"WFGS0001"


@dataclass(frozen=True)
class GridSpec2D:
    """Periodic square grid: extent ``side_length``, ``samples_per_side`` per axis."""

    side_length: float
    samples_per_side: int

    def __post_init__(self):
        m = self.samples_per_side
        if m < 4 or (m & (m - 1)) != 0:
            raise ValueError(f"samples_per_side must be a power of two >= 4, got {m}")
        if not self.side_length > 0:
            raise ValueError("side_length must be positive")

    @property
    def spacing(self) -> float:
        return self.side_length / self.samples_per_side

    def axis_points(self) -> np.ndarray:
        m = self.samples_per_side
        return -self.side_length / 2 + self.spacing * np.arange(m)

    def meshgrid(self):
        xs = self.axis_points()
        return np.meshgrid(xs, xs, indexing="ij")

    def frequency_axis(self) -> np.ndarray:
        """Centered integer frequencies [-M/2, M/2), index-aligned with coeffs rows."""
        m = self.samples_per_side
        return np.arange(-m // 2, m // 2)

    def frequency_grid(self):
        ks = self.frequency_axis()
        return np.meshgrid(ks, ks, indexing="ij")


@dataclass
class Field2D:
    """Complex samples of a function on the periodic square."""

    spec: GridSpec2D
    values: np.ndarray

    def __post_init__(self):
        m = self.spec.samples_per_side
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (m, m):
            raise ValueError(f"values shape {self.values.shape} does not match grid M={m}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite entries")

    def copy(self) -> "Field2D":
        return Field2D(self.spec, self.values.copy())


@dataclass
class Spectrum2D:
    """Coefficients on the centered integer frequency box, same shape as the grid."""

    spec: GridSpec2D
    coeffs: np.ndarray

    def __post_init__(self):
        m = self.spec.samples_per_side
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (m, m):
            raise ValueError(f"coeffs shape {self.coeffs.shape} does not match grid M={m}")

    def copy(self) -> "Spectrum2D":
        return Spectrum2D(self.spec, self.coeffs.copy())


def _checker_phase(spec: GridSpec2D) -> np.ndarray:
    """(-1)^(n1+n2) on the centered frequency box; accounts for the -L/2 grid origin."""
    n1, n2 = spec.frequency_grid()
    return np.where((n1 + n2) % 2 == 0, 1.0, -1.0)


def dft2_forward(f: Field2D) -> Spectrum2D:
    """Normalized forward transform: coeff(n) = h^2 * sum f(x) exp(-2πi n.x/L)."""
    spec = f.spec
    h = spec.spacing
    raw = np.fft.fft2(f.values)
    coeffs = np.fft.fftshift(raw) * (h * h) * _checker_phase(spec)
    return Spectrum2D(spec, coeffs)


def dft2_inverse(s: Spectrum2D) -> Field2D:
    """Inverse of :func:`dft2_forward`; carries the 1/L^2 weight."""
    spec = s.spec
    h = spec.spacing
    raw = np.fft.ifftshift(s.coeffs * _checker_phase(spec)) / (h * h)
    values = np.fft.ifft2(raw)
    return Field2D(spec, values)


def apply_multiplier(s: Spectrum2D, mask) -> Spectrum2D:
    """Multiply coefficients by mask(n1, n2); mask gets integer frequency arrays."""
    n1, n2 = s.spec.frequency_grid()
    return Spectrum2D(s.spec, s.coeffs * mask(n1, n2))


def l2_norm(obj) -> float:
    """Quadrature L2 norm for fields, Parseval-consistent coefficient norm otherwise."""
    if isinstance(obj, Field2D):
        return float(obj.spec.spacing * np.linalg.norm(obj.values))
    if isinstance(obj, Spectrum2D):
        return float(np.linalg.norm(obj.coeffs) / obj.spec.side_length)
    if isinstance(obj, TrigPolynomial1D):
        return obj.l2_norm()
    raise TypeError(f"unsupported operand type {type(obj)!r}")


def snap_shift(spec: GridSpec2D, h_vec) -> tuple[tuple[int, int], tuple[float, float]]:
    """Round a shift vector to whole grid cells; returns (cells, residual)."""
    h = spec.spacing
    cells = (int(round(h_vec[0] / h)), int(round(h_vec[1] / h)))
    residual = (h_vec[0] - cells[0] * h, h_vec[1] - cells[1] * h)
    return cells, residual


def shift_field(f: Field2D, h_vec) -> Field2D:
    """Periodic translation by h_vec, rounded to the nearest grid cell."""
    cells, _ = snap_shift(f.spec, h_vec)
    return Field2D(f.spec, np.roll(f.values, shift=cells, axis=(0, 1)))


# ---------------------------------------------------------------------------
# sparse 1D trigonometric polynomials


@dataclass
class TrigPolynomial1D:
    """Finite map from integer frequencies to complex coefficients on the unit torus."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {int(k): complex(v) for k, v in self.terms.items() if v != 0}

    @classmethod
    def from_pairs(cls, freqs, coeffs) -> "TrigPolynomial1D":
        return cls(dict(zip(map(int, freqs), map(complex, coeffs))))

    def support(self) -> set:
        return set(self.terms)

    def l2_norm(self) -> float:
        if not self.terms:
            return 0.0
        return float(np.linalg.norm(np.fromiter(self.terms.values(), dtype=complex)))

    def evaluate(self, x) -> np.ndarray:
        """Pointwise values at x (array of points on the unit torus)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for j, c in self.terms.items():
            out += c * np.exp(2j * np.pi * j * x)
        return out

    def modulate(self, shift: int) -> "TrigPolynomial1D":
        """Translate every frequency by shift (multiplication by exp(2πi*shift*x))."""
        return TrigPolynomial1D({j + shift: c for j, c in self.terms.items()})

    def scale(self, alpha: complex) -> "TrigPolynomial1D":
        return TrigPolynomial1D({j: alpha * c for j, c in self.terms.items()})

    def __add__(self, other: "TrigPolynomial1D") -> "TrigPolynomial1D":
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = out.get(j, 0) + c
        return TrigPolynomial1D(out)

    def degree(self) -> int:
        return max((abs(j) for j in self.terms), default=0)


# ---------------------------------------------------------------------------
# binary caching format: magic, u32 M, f64 L, row-major (re, im) float64 pairs


def _write_array(path, magic: bytes, spec: GridSpec2D, arr: np.ndarray) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(magic)
            fh.write(struct.pack("<I", spec.samples_per_side))
            fh.write(struct.pack("<d", spec.side_length))
            inter = np.empty(arr.shape + (2,), dtype="<f8")
            inter[..., 0] = arr.real
            inter[..., 1] = arr.imag
            fh.write(inter.tobytes())
    except OSError as exc:  # pragma: no cover - environment dependent
        raise IoFailure(str(exc)) from exc


def _read_array(path, magic: bytes) -> tuple[GridSpec2D, np.ndarray]:
    try:
        with open(path, "rb") as fh:
            got = fh.read(8)
            if got != magic:
                raise IoFailure(f"bad magic {got!r}, expected {magic!r}")
            m = struct.unpack("<I", fh.read(4))[0]
            side = struct.unpack("<d", fh.read(8))[0]
            payload = np.frombuffer(fh.read(m * m * 16), dtype="<f8").reshape(m, m, 2)
    except OSError as exc:  # pragma: no cover
        raise IoFailure(str(exc)) from exc
    return GridSpec2D(side, m), payload[..., 0] + 1j * payload[..., 1]


def save_field(path, f: Field2D) -> None:
    _write_array(path, _FIELD_MAGIC, f.spec, f.values)


def load_field(path) -> Field2D:
    spec, arr = _read_array(path, _FIELD_MAGIC)
    return Field2D(spec, arr)


def save_spectrum(path, s: Spectrum2D) -> None:
    _write_array(path, _SPECTRUM_MAGIC, s.spec, s.coeffs)


def load_spectrum(path) -> Spectrum2D:
    spec, arr = _read_array(path, _SPECTRUM_MAGIC)
    return Spectrum2D(spec, arr)


def require_same_grid(a, b) -> None:
    if a.spec != b.spec:
        raise GridMismatch(f"grids differ: {a.spec} vs {b.spec}")
