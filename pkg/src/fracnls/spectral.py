"""Grids, discrete Fourier transforms and frequency-side Sobolev norms.

The real line is modelled as the periodic interval [-L, L) with N
equispaced points.  All transforms follow the non-unitary convention

    fhat(xi) = int e^{-i xi x} f(x) dx,      f(x) = (1/2pi) int e^{i xi x} fhat(xi) dxi,

discretised with grid frequencies xi_k = pi k / L, k = -N/2 .. N/2-1.
Norms carry the matching 1/2pi factor, so ``sobolev_norm(f, 0)`` is the
plain L^2 norm (Plancherel).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid1D",
    "TimeGrid",
    "ComplexField",
    "SpaceTimeField",
    "FracParams",
    "dft_forward",
    "dft_inverse",
    "fractional_symbol",
    "apply_frac_laplacian",
    "apply_multiplier",
    "sobolev_norm",
    "sobolev_norm_1d",
    "dealias_cubic",
]


def _readonly(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic spatial grid on [-L, L) with N points (N even)."""

    half_length: float
    n_points: int

    def __post_init__(self):
        L, N = self.half_length, self.n_points
        if L <= 0:
            raise ValueError("half_length must be positive")
        if N % 2 != 0 or N < 8:
            raise ValueError("n_points must be even and >= 8")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def x(self) -> np.ndarray:
        return _readonly(-self.half_length + self.dx * np.arange(self.n_points))

    @property
    def frequencies(self) -> np.ndarray:
        """Grid frequencies pi*k/L in increasing order, k = -N/2 .. N/2-1."""
        k = np.arange(-self.n_points // 2, self.n_points // 2)
        return _readonly(np.pi * k / self.half_length)

    @property
    def frequencies_fft(self) -> np.ndarray:
        """Same frequencies in numpy FFT ordering."""
        k = np.fft.fftfreq(self.n_points) * self.n_points
        return _readonly(np.pi * k / self.half_length)

    @property
    def dxi(self) -> float:
        return np.pi / self.half_length

    @property
    def nyquist_mask_fft(self) -> np.ndarray:
        """Boolean mask (FFT order) that is False on the unpaired -N/2 mode."""
        k = np.fft.fftfreq(self.n_points) * self.n_points
        return _readonly(k != -self.n_points // 2)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid t_j = j * t_max / M, j = 0 .. M."""

    t_max: float
    n_steps: int

    def __post_init__(self):
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")

    @property
    def dt(self) -> float:
        return self.t_max / self.n_steps

    @property
    def t(self) -> np.ndarray:
        return _readonly(np.linspace(0.0, self.t_max, self.n_steps + 1))


@dataclass(frozen=True)
class ComplexField:
    """Complex samples over a spatial grid."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise ValueError("values must have length grid.n_points")
        object.__setattr__(self, "values", _readonly(v))

    @classmethod
    def from_function(cls, grid: Grid1D, fn) -> "ComplexField":
        return cls(grid, np.asarray(fn(grid.x), dtype=complex))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.dx))


@dataclass(frozen=True)
class SpaceTimeField:
    """Complex samples over a space x time grid, shape (M+1, N)."""

    grid: Grid1D
    tgrid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        expect = (self.tgrid.n_steps + 1, self.grid.n_points)
        if v.shape != expect:
            raise ValueError(f"values must have shape {expect}, got {v.shape}")
        object.__setattr__(self, "values", _readonly(v))

    def at_time(self, j: int) -> ComplexField:
        return ComplexField(self.grid, self.values[j])

    def at_point(self, i: int) -> np.ndarray:
        return self.values[:, i]


@dataclass(frozen=True)
class FracParams:
    """Scalar parameters of the model: dispersion order, regularities, coupling.

    alpha is the Levy index in (1, 2); s the spatial Sobolev regularity;
    b the modulation exponent (defaults to the recorded rule
    b = 1/2 - min(alpha-1, 4s+alpha-2)/20 when not supplied); a the
    smoothing gain probed in experiments; lam the coupling constant.
    """

    alpha: float
    s: float
    b: float | None = None
    a: float = 0.0
    lam: float = 1.0

    def __post_init__(self):
        if not (1.0 < self.alpha < 2.0):
            raise ValueError("alpha must lie in (1, 2)")
        if self.b is None:
            eps = max(min(self.alpha - 1.0, 4.0 * self.s + self.alpha - 2.0), 1e-3) / 20.0
            object.__setattr__(self, "b", 0.5 - eps)

    @property
    def time_trace_exponent(self) -> float:
        """(2s - 1 + alpha) / (2 alpha), the matching boundary regularity."""
        return (2.0 * self.s - 1.0 + self.alpha) / (2.0 * self.alpha)

    @property
    def smoothing_gain_limit(self) -> float:
        """min{(alpha-1)/2, (4s+alpha-2)/2}, the half-line gain window edge."""
        return min((self.alpha - 1.0) / 2.0, (4.0 * self.s + self.alpha - 2.0) / 2.0)

    def in_wellposed_window(self) -> bool:
        return (4.0 / 3.0 < self.alpha < 2.0) and (
            (2.0 - self.alpha) / 4.0 < self.s < (self.alpha - 1.0) / 2.0
        )

    def warn_if_outside_window(self):
        if not self.in_wellposed_window():
            warnings.warn(
                f"parameters alpha={self.alpha}, s={self.s} lie outside the "
                "half-line well-posedness window (2-alpha)/4 < s < (alpha-1)/2, "
                "4/3 < alpha < 2; run continues as a probe",
                stacklevel=3,
            )


def dft_forward(f: ComplexField) -> np.ndarray:
    """Trapezoid-weighted transform samples fhat(xi_k), increasing-frequency order."""
    grid = f.grid
    k = np.fft.fftfreq(grid.n_points) * grid.n_points
    # grid starts at -L: fhat(xi_k) = dx * e^{i xi_k L} * FFT_k = dx * (-1)^k * FFT_k
    spec = grid.dx * np.exp(1j * np.pi * k) * np.fft.fft(f.values)
    return np.fft.fftshift(spec)


def dft_inverse(spectrum: np.ndarray, grid: Grid1D) -> ComplexField:
    """Inverse of :func:`dft_forward` (exact round trip)."""
    spec = np.fft.ifftshift(np.asarray(spectrum, dtype=complex))
    k = np.fft.fftfreq(grid.n_points) * grid.n_points
    vals = np.fft.ifft(spec * np.exp(-1j * np.pi * k)) / grid.dx
    return ComplexField(grid, vals)


def fractional_symbol(grid: Grid1D, alpha: float) -> np.ndarray:
    """|xi_k|^alpha on the grid frequencies (increasing order); exactly 0 at xi=0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return np.abs(grid.frequencies) ** alpha


def apply_multiplier(f: ComplexField, mult_fft: np.ndarray) -> ComplexField:
    """Apply a Fourier multiplier given in FFT ordering.

    The unpaired Nyquist mode is zeroed first; it has no positive-frequency
    partner and leaks asymmetry through |xi|^alpha otherwise.
    """
    spec = np.fft.fft(f.values)
    spec = np.where(f.grid.nyquist_mask_fft, spec, 0.0)
    return ComplexField(f.grid, np.fft.ifft(spec * mult_fft))


def apply_frac_laplacian(f: ComplexField, alpha: float) -> ComplexField:
    """Fourier multiplier |xi|^alpha, the nonlocal operator of the model."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    sym = np.abs(f.grid.frequencies_fft) ** alpha
    return apply_multiplier(f, sym)


def sobolev_norm(f: ComplexField, s: float, homogeneous: bool = False) -> float:
    """Discrete H^s (or homogeneous Hdot^s) norm.

    With the 1/2pi normalisation the s=0 case coincides with the L^2 norm.
    Homogeneous norms with s <= -1/2 are rejected: the discrete xi=0 mode
    makes them meaningless here.
    """
    if homogeneous and s <= -0.5:
        raise ValueError("homogeneous norm needs s > -1/2 on a discrete grid")
    if not np.all(np.isfinite(f.values)):
        raise ValueError("field has non-finite values")
    spec = dft_forward(f)
    xi = f.grid.frequencies
    if homogeneous:
        w = np.zeros_like(xi)
        nz = xi != 0
        w[nz] = np.abs(xi[nz]) ** (2.0 * s)
    else:
        w = (1.0 + xi**2) ** s
    return float(np.sqrt(np.sum(w * np.abs(spec) ** 2) * f.grid.dxi / (2.0 * np.pi)))


def sobolev_norm_1d(values: np.ndarray, dt: float, s: float, pad_factor: int = 4) -> float:
    """H^s norm of a sampled signal on a uniform grid, zero-padded to emulate R.

    Used for time-trace norms; padding by ``pad_factor`` reduces the
    periodisation bias of the frequency lattice.
    """
    v = np.asarray(values, dtype=complex)
    n = len(v)
    P = pad_factor * n
    z = np.zeros(P, dtype=complex)
    z[:n] = v
    tau = 2.0 * np.pi * np.fft.fftfreq(P, d=dt)
    zh = np.fft.fft(z) * dt
    dtau = 2.0 * np.pi / (P * dt)
    return float(np.sqrt(np.sum((1.0 + tau**2) ** s * np.abs(zh) ** 2) * dtau / (2.0 * np.pi)))


def dealias_cubic(f: ComplexField) -> ComplexField:
    """Zero the top half of the spectrum (1/2 rule for the cubic product)."""
    k = np.fft.fftfreq(f.grid.n_points) * f.grid.n_points
    keep = np.abs(k) < f.grid.n_points / 4
    spec = np.fft.fft(f.values)
    return ComplexField(f.grid, np.fft.ifft(np.where(keep, spec, 0.0)))
