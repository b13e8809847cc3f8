"""Ordered characteristic functions and quasiprobability grids.

Conventions (pinned by round-trip tests):

* Grids sample the real plane (xi1, xi2) with |xi|^2 = xi1^2 + xi2^2.
  The s-ordered characteristic function of the vacuum is
  exp(((s - 1)/2) |xi|^2); a Gaussian state with variance V has
  chi_s(xi) = exp(-xi^T (V - s*1) xi / 2), so the vacuum at s = 0 is
  exp(-|xi|^2 / 2) with V = 1.
* Quasiprobabilities live on (alpha1, alpha2) = (q, p)/sqrt(2) and are
  computed as W_s(alpha) = (1/2 pi^2) Int exp(i sqrt2 alpha.xi) chi_s(xi) dxi,
  normalized so the grid integral of W is 1.  A Gaussian state maps to a
  normal density with covariance (V - s*1)/2; s = 1 is the P function,
  s = 0 the Wigner function, s = -1 the Q function.

P-function grids are evaluated at the regularized order s = 1 - P_EPS;
the exact s = 1 limit of a classical state is a proper density but need
not decay on any finite grid.
"""

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels

TOL_FFT = 1e-6  # transform accuracy floor; boundary-decay refusal threshold
BOUNDARY_DECAY = 1e-12  # target boundary magnitude for auto-sized grids
P_EPS = 1e-3  # P-function regularization, evaluate at s = 1 - P_EPS

ORDER_P = 1.0
ORDER_W = 0.0
ORDER_Q = -1.0


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Sampling request: odd side length and half-width of the square domain."""

    side: int = 257
    extent: float = 8.0

    def __post_init__(self):
        if self.side < 8 or self.side % 2 == 0:
            raise ValueError("grid side must be an odd integer >= 9")
        if not self.extent > 0:
            raise ValueError("grid extent must be positive")


@dataclass(frozen=True, eq=False)
class CharGrid:
    """Samples of an s-ordered characteristic function.

    values[i, j] is chi_s at (axis[i], axis[j]); the axis spans
    [-extent, extent] with an odd number of points so 0 is a node.
    """

    s: float
    extent: float
    axis: np.ndarray
    values: np.ndarray

    @property
    def side(self):
        return self.values.shape[0]

    @property
    def spacing(self):
        return self.axis[1] - self.axis[0]


@dataclass(frozen=True, eq=False)
class QuasiGrid:
    """Samples of a real s-ordered quasiprobability on its reciprocal grid."""

    s: float
    extent: float
    axis: np.ndarray
    values: np.ndarray

    @property
    def side(self):
        return self.values.shape[0]

    @property
    def cell(self):
        d = self.axis[1] - self.axis[0]
        return d * d


def _mesh(spec):
    xi = np.linspace(-spec.extent, spec.extent, spec.side)
    x1, x2 = np.meshgrid(xi, xi, indexing="ij")
    return xi, x1, x2


def char_vacuum(s, spec=GridSpec()):
    """Vacuum characteristic function at order s: exp(((s - 1)/2) |xi|^2)."""
    xi, x1, x2 = _mesh(spec)
    values = np.exp(0.5 * (s - 1.0) * (x1 * x1 + x2 * x2)).astype(complex)
    return CharGrid(s=float(s), extent=spec.extent, axis=xi, values=values)


def char_fock1(s, spec=GridSpec()):
    """Single-photon characteristic function, (1 - |xi|^2) times the vacuum one."""
    xi, x1, x2 = _mesh(spec)
    r2 = x1 * x1 + x2 * x2
    values = ((1.0 - r2) * np.exp(0.5 * (s - 1.0) * r2)).astype(complex)
    return CharGrid(s=float(s), extent=spec.extent, axis=xi, values=values)


def char_gaussian(V, s, spec=GridSpec()):
    """Characteristic function of a Gaussian state, exp(-xi^T (V - s*1) xi / 2)."""
    V = np.asarray(V, dtype=float)
    xi, x1, x2 = _mesh(spec)
    q = ((V[0, 0] - s) * x1 * x1 + 2.0 * V[0, 1] * x1 * x2 + (V[1, 1] - s) * x2 * x2)
    return CharGrid(s=float(s), extent=spec.extent, axis=xi,
                    values=np.exp(-0.5 * q).astype(complex))


def auto_char_grid(maker, s, spec=GridSpec(), target=BOUNDARY_DECAY, max_doublings=8):
    """Build maker(s, spec), doubling the extent until the boundary magnitude
    falls below target.  Raises if the cap is hit without decaying."""
    current = spec
    for _ in range(max_doublings + 1):
        grid = maker(s, current)
        if _boundary_max(grid.values) < target:
            return grid
        current = GridSpec(side=current.side, extent=2.0 * current.extent)
    raise ValueError("characteristic function does not decay on any doubled grid")


def _boundary_max(values):
    edge = max(np.abs(values[0, :]).max(), np.abs(values[-1, :]).max(),
               np.abs(values[:, 0]).max(), np.abs(values[:, -1]).max())
    return float(edge)


def convert_order(grid, s_target):
    """Reorder a characteristic function: multiply by exp(((s_target - s)/2) |xi|^2).

    The factor follows from the definition chi_s = exp(s |xi|^2 / 2) Tr(rho D(xi)).
    Raising the order amplifies the grid boundary; conversions whose corner
    amplification exceeds 1/TOL_FFT are flagged as ill-conditioned.
    """
    ds = float(s_target) - grid.s
    if ds == 0.0:
        return grid
    x1, x2 = np.meshgrid(grid.axis, grid.axis, indexing="ij")
    factor = np.exp(0.5 * ds * (x1 * x1 + x2 * x2))
    values = grid.values * factor
    if ds > 0 and not _boundary_max(values) <= TOL_FFT:
        warnings.warn("upward order conversion amplified the grid boundary above "
                      "TOL_FFT; downstream transforms will be ill-conditioned",
                      RuntimeWarning, stacklevel=2)
    return CharGrid(s=float(s_target), extent=grid.extent, axis=grid.axis,
                    values=values)


def quasi_from_char(grid):
    """Fourier-transform a characteristic grid to its quasiprobability.

    Refuses when the characteristic function has not decayed below TOL_FFT
    on the grid boundary (the transform would alias), and when the result
    carries an imaginary residue above TOL_FFT (non-Hermitian input).
    """
    bmax = _boundary_max(grid.values)
    if bmax > TOL_FFT:
        raise ValueError(
            f"characteristic function boundary magnitude {bmax:.3e} exceeds "
            f"{TOL_FFT:.0e}; enlarge the grid extent before transforming")
    n = grid.side
    d = grid.spacing
    F = np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(grid.values))) * (n * n)
    W = (d * d / (2.0 * np.pi ** 2)) * F
    residue = float(np.abs(W.imag).max())
    if residue > TOL_FFT:
        raise ValueError(f"imaginary residue {residue:.3e} exceeds {TOL_FFT:.0e}; "
                         "input grid is not Hermitian")
    m = np.arange(n) - (n - 1) // 2
    alpha = 2.0 * np.pi * m / (np.sqrt(2.0) * n * d)
    return QuasiGrid(s=grid.s, extent=float(alpha[-1]), axis=alpha, values=W.real)


def min_value(q, mask=None):
    """Minimum sampled value of a quasiprobability grid.

    mask, if given, is a boolean array of the grid shape selecting the
    region to scan (True = included).
    """
    values = q.values
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != values.shape:
            raise ValueError("mask shape does not match the grid")
        if not mask.any():
            raise ValueError("mask selects no grid points")
        values = values[mask]
    return float(values.min())


def grid_is_classical(q, tol=1e-6):
    """Classicality verdict for a regularized P grid: min sampled value >= -tol.

    The grid must be at (or regularized near) the P order s = 1.
    """
    if q.s < 1.0 - 10.0 * P_EPS:
        raise ValueError("classicality verdicts need a P-function grid (s near 1)")
    return min_value(q) >= -tol


def fock1_output_p(a, b, alpha1, alpha2, variant="rederived"):
    """Closed-form P function of a single photon after the unit-gain channel
    with diagonal added noise diag(a, b), requiring a, b > 1 to exist.

    Normalization follows the coherent-state resolution with measure
    d^2 alpha / pi, so the value at the origin is (2/sqrt(ab)) (1 - 1/a - 1/b);
    the sign at the origin flips exactly at 1/a + 1/b = 1.

    variant selects the polynomial factor: "rederived" (default) is
    1 + 4 alpha1^2/a^2 + 4 alpha2^2/b^2 - 1/a - 1/b, which matches the
    independent Fourier pipeline to machine precision; "printed" is the
    alternative 1 + 4 (alpha1 + alpha2)^2/a^2 - 1/a - 1/b, kept for
    comparison (it disagrees with the pipeline away from the origin).
    """
    a = float(a)
    b = float(b)
    if a <= 0 or b <= 0:
        raise ValueError("noise parameters must be positive")
    alpha1 = np.asarray(alpha1, dtype=float)
    alpha2 = np.asarray(alpha2, dtype=float)
    env = (2.0 / np.sqrt(a * b)) * np.exp(-2.0 * alpha1 ** 2 / a - 2.0 * alpha2 ** 2 / b)
    if variant == "rederived":
        poly = 1.0 + 4.0 * alpha1 ** 2 / a ** 2 + 4.0 * alpha2 ** 2 / b ** 2 - 1.0 / a - 1.0 / b
    elif variant == "printed":
        poly = 1.0 + 4.0 * (alpha1 + alpha2) ** 2 / a ** 2 - 1.0 / a - 1.0 / b
    else:
        raise ValueError("variant must be 'rederived' or 'printed'")
    out = env * poly
    return out if out.ndim else float(out)


def fock1_output_p_grid_units(a, b, alpha1, alpha2, variant="rederived"):
    """fock1_output_p mapped onto the grid convention of quasi_from_char.

    Grid quasiprobabilities are normalized to unit grid integral, which
    rescales the closed form as W(alpha) = phi(alpha / sqrt2) / (2 pi).
    """
    s = np.sqrt(2.0)
    return fock1_output_p(a, b, np.asarray(alpha1) / s, np.asarray(alpha2) / s,
                          variant=variant) / (2.0 * np.pi)


def quasi_to_csv(q, path):
    """Write a quasiprobability grid as CSV rows alpha1, alpha2, value."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["alpha1", "alpha2", "value"])
        for i, a1 in enumerate(q.axis):
            for j, a2 in enumerate(q.axis):
                w.writerow([f"{a1:.12g}", f"{a2:.12g}", f"{q.values[i, j]:.12g}"])


def char_to_csv(c, path):
    """Write a characteristic grid as CSV rows xi1, xi2, re, im."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["xi1", "xi2", "re", "im"])
        for i, x1 in enumerate(c.axis):
            for j, x2 in enumerate(c.axis):
                v = c.values[i, j]
                w.writerow([f"{x1:.12g}", f"{x2:.12g}", f"{v.real:.12g}", f"{v.imag:.12g}"])


# interpolation backend is re-exported for the channel grid action
_interp_cubic2d = _kernels.interp_cubic2d
