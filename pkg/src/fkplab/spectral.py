"""Periodic grids, Fourier multipliers and discrete-norm utilities.

Conventions: unnormalized forward FFT, 1/n inverse (numpy default),
wavenumbers in standard signed integer ordering scaled by pi/L.
"""

from dataclasses import dataclass, field

import numpy as np


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [-L, L) with 2L-periodic boundary."""

    half_width: float
    n: int
    x: np.ndarray = field(repr=False, compare=False, default=None)
    k: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def dx(self):
        return 2.0 * self.half_width / self.n

    @property
    def dk(self):
        return np.pi / self.half_width


def make_grid(half_width, n):
    """Build a periodic grid; n must be a power of two >= 8."""
    if not (isinstance(n, (int, np.integer)) and _is_power_of_two(int(n)) and n >= 8):
        raise ValueError(f"grid size must be a power of two >= 8, got {n}")
    if not half_width > 0:
        raise ValueError(f"half width must be positive, got {half_width}")
    n = int(n)
    L = float(half_width)
    x = -L + (2.0 * L / n) * np.arange(n)
    k = (np.pi / L) * np.fft.fftfreq(n, d=1.0 / n)
    return Grid1D(L, n, x, k)


@dataclass(frozen=True)
class Grid2D:
    grid_x: Grid1D
    grid_y: Grid1D


def make_grid2d(Lx, nx, Ly, ny):
    return Grid2D(make_grid(Lx, nx), make_grid(Ly, ny))


class RealField1D:
    """Real samples on a Grid1D with a lazily cached spectrum."""

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field samples must be finite")
        self.grid = grid
        self.values = values
        self._hat = None

    @property
    def hat(self):
        if self._hat is None:
            self._hat = np.fft.fft(self.values)
        return self._hat


class RealField2D:
    """Real samples indexed [x, y] on a Grid2D."""

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        shape = (grid.grid_x.n, grid.grid_y.n)
        if values.shape != shape:
            raise ValueError(f"expected shape {shape}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field samples must be finite")
        self.grid = grid
        self.values = values
        self._hat = None

    @property
    def hat(self):
        if self._hat is None:
            self._hat = np.fft.fft2(self.values)
        return self._hat


def dft(values):
    """Forward DFT of a real sample array (any dimension)."""
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        raise ValueError("non-finite input to dft")
    return np.fft.fftn(values)


def idft(coeffs):
    """Inverse DFT; returns the real part (input assumed Hermitian)."""
    out = np.fft.ifftn(coeffs)
    return out.real


# ---------------------------------------------------------------------------
# Fourier-multiplier symbols acting in the x direction

ALPHA_MIN = 1.0 / 3.0
ALPHA_MAX = 2.0

_ANTIDERIV_TOL = 1e-10


@dataclass(frozen=True)
class SymbolSpec:
    tag: str
    alpha: float = None
    shift: float = None
    table: np.ndarray = None


def riesz(alpha):
    """|k_x|^alpha multiplier (Riesz potential in x)."""
    if not (ALPHA_MIN < alpha <= ALPHA_MAX):
        raise ValueError(f"alpha must lie in (1/3, 2], got {alpha}")
    return SymbolSpec("riesz", alpha=float(alpha))


def d_dx():
    return SymbolSpec("d_dx")


def d_dy():
    return SymbolSpec("d_dy")


def antideriv_x():
    return SymbolSpec("antideriv_x")


def shift_x(a):
    return SymbolSpec("shift_x", shift=float(a))


def custom(table):
    return SymbolSpec("custom", table=np.asarray(table))


def _symbol_values(spec, kx):
    if spec.tag == "riesz":
        return np.abs(kx) ** spec.alpha
    if spec.tag == "d_dx":
        return 1j * kx
    if spec.tag == "antideriv_x":
        out = np.zeros_like(kx, dtype=complex)
        nz = kx != 0
        out[nz] = 1.0 / (1j * kx[nz])
        return out
    if spec.tag == "shift_x":
        return np.exp(-1j * kx * spec.shift)
    if spec.tag == "custom":
        return spec.table
    raise ValueError(f"unknown symbol tag {spec.tag!r}")


def apply_symbol(values, grid, spec):
    """Apply a Fourier-multiplier symbol to real samples on a grid.

    1D arrays use grid (Grid1D) directly; 2D arrays (indexed [x, y]) apply
    x-direction symbols along axis 0 and d_dy along axis 1.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        kx = grid.k
        hat = np.fft.fft(values)
        if spec.tag == "antideriv_x":
            _check_zero_mean(hat[0], values)
        if spec.tag == "d_dy":
            raise ValueError("d_dy undefined on 1D fields")
        out = np.fft.ifft(_symbol_values(spec, kx) * hat)
        return out.real
    if values.ndim == 2:
        hat = np.fft.fft2(values)
        if spec.tag == "d_dy":
            ky = grid.grid_y.k
            return np.fft.ifft2(hat * (1j * ky)[None, :]).real
        kx = grid.grid_x.k
        if spec.tag == "antideriv_x":
            _check_zero_mean(hat[0, :], values)
        out = np.fft.ifft2(_symbol_values(spec, kx)[:, None] * hat)
        return out.real
    raise ValueError("expected a 1D or 2D sample array")


def _check_zero_mean(zero_modes, values):
    scale = np.max(np.abs(np.fft.fft(values.ravel()))) if values.size else 1.0
    if np.max(np.abs(np.atleast_1d(zero_modes))) > _ANTIDERIV_TOL * max(scale, 1.0):
        raise ValueError("antideriv_x requires vanishing k_x=0 modes")


# ---------------------------------------------------------------------------
# Spectral norms and the discrete Gagliardo-Nirenberg type check

def spectral_norm_sq(values, grid, order):
    """Squared L2 norm of D^order u computed spectrally (k=0 mode dropped
    for order != 0)."""
    hat = np.fft.fft(values)
    k = grid.k
    w = np.zeros_like(k)
    nz = k != 0
    if order == 0:
        w[:] = 1.0
    else:
        w[nz] = np.abs(k[nz]) ** (2.0 * order)
        w[0] = 0.0
    # Parseval with dx weight: int |u|^2 dx = (dx/n) sum |u_hat|^2
    return (grid.dx / grid.n) * float(np.sum(w * np.abs(hat) ** 2))


def _split_norm_sq(values, grid, b):
    """Final-step surrogate for negative-order norms: |k|<=1 weighted 1,
    |k|>1 weighted |k|^b."""
    hat = np.fft.fft(values)
    k = np.abs(grid.k)
    w = np.where(k > 1.0, k ** b, 1.0)
    return (grid.dx / grid.n) * float(np.sum(w * np.abs(hat) ** 2))


def gn_inequality_check(values, grid, a, b, eps, n):
    """Evaluate both sides of the iterated interpolation inequality
    ||D^a u||^2 <= eps * sum_{m<n} 4^-m ||D^b u||^2
                   + 4^-n eps^-(2^n - 1) ||D^{s_{n+1}} u||^2,
    with s_1 = a, s_{m+1} = 2 s_m - b. Negative final orders are evaluated
    with the low/high frequency split surrogate. Returns (lhs, rhs)."""
    if not (0 < a < b):
        raise ValueError(f"orders must satisfy 0 < a < b, got a={a}, b={b}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("recursion depth n must be an integer >= 1")
    s = a
    for _ in range(n):
        s = 2.0 * s - b
    lhs = spectral_norm_sq(values, grid, a)
    db = spectral_norm_sq(values, grid, b)
    tail_coeff = 4.0 ** (-n) * eps ** (-(2.0 ** n - 1.0))
    if s < 0:
        tail = _split_norm_sq(values, grid, b)
    else:
        tail = spectral_norm_sq(values, grid, s)
    rhs = eps * sum(4.0 ** (-m) for m in range(n)) * db + tail_coeff * tail
    return lhs, rhs
