"""Fourier-space time evolution of the fKP equations.

The semi-linear system  u_hat_t = Lambda u_hat + N(u_hat)  with
Lambda = -i (sigma k_y^2 / k_x - k_x |k_x|^alpha)  and
N(u_hat) = -i (k_x / 2) (u^2)^hat  is integrated with the fourth-order
Cox-Matthews exponential time differencing Runge-Kutta scheme.

States are stored as half-complex spectra (rfft along y), which keeps the
inverse transform exactly real. Rows with k_x = 0, k_y != 0 carry the
zero-mass constraint: their linear symbol is set to zero and the modes are
projected to zero every step; the i/(k_x + i lambda) regularization with
lambda = 2.2e-16 is used verbatim on all k_x != 0 modes.
"""

from dataclasses import dataclass, field

import numpy as np

from .spectral import Grid2D

REGULARIZER = 2.2e-16


class BlowUpError(RuntimeError):
    def __init__(self, t_last):
        super().__init__(f"non-finite state; last valid time t = {t_last:g}")
        self.t_last = t_last


@dataclass
class LinearSymbol:
    grid: Grid2D
    values: np.ndarray = field(repr=False)
    lambda_reg: float = REGULARIZER
    projection_rows: np.ndarray = field(repr=False, default=None)


def linear_symbol(params, grid, lambda_reg=REGULARIZER):
    """Linear dispersion symbol on the half-complex (kx, ky>=0) lattice."""
    kx = grid.grid_x.k[:, None]
    ky = grid.grid_y.k[: grid.grid_y.n // 2 + 1][None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = -1j * (params.sigma * ky ** 2 / (kx + 1j * lambda_reg)
                     - kx * np.abs(kx) ** params.alpha)
    lam = np.broadcast_to(lam, (grid.grid_x.n, ky.size)).copy()
    lam[0, :] = 0.0  # k_x = 0 row handled by projection
    proj = np.zeros(lam.shape, dtype=bool)
    proj[0, 1:] = True
    return LinearSymbol(grid, lam, lambda_reg, proj)


@dataclass
class EtdTableau:
    h: float
    E: np.ndarray = field(repr=False)
    E2: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)
    f1: np.ndarray = field(repr=False)
    f2: np.ndarray = field(repr=False)
    f3: np.ndarray = field(repr=False)


def etd4_tableau(symbol, h, n_contour=32, contour_cutoff=0.5):
    """Cox-Matthews ETDRK4 weights.

    Where |Lambda h| < cutoff the 0/0-prone closed forms are averaged over
    n_contour points on the unit circle around Lambda h (Kassam-Trefethen
    contour trick); elsewhere they are evaluated directly.
    """
    if not h > 0:
        raise ValueError("time step must be positive")
    lam = symbol.values
    z = lam * h
    E = np.exp(z)
    E2 = np.exp(z / 2.0)
    if not (np.all(np.isfinite(E)) and np.all(np.isfinite(E2))):
        raise FloatingPointError("overflow in linear exponentials")

    def weights(zz):
        ez = np.exp(zz)
        q = (np.exp(zz / 2.0) - 1.0) / zz
        f1 = (-4.0 - zz + ez * (4.0 - 3.0 * zz + zz ** 2)) / zz ** 3
        f2 = (2.0 + zz + ez * (-2.0 + zz)) / zz ** 3
        f3 = (-4.0 - 3.0 * zz - zz ** 2 + ez * (4.0 - zz)) / zz ** 3
        return q, f1, f2, f3

    small = np.abs(z) < contour_cutoff
    zs = np.where(small, 1.0, z)  # placeholder to avoid 0/0 in direct path
    Q, f1, f2, f3 = weights(zs)

    if np.any(small):
        theta = np.exp(2j * np.pi * (np.arange(n_contour) + 0.5) / n_contour)
        zc = z[small][:, None] + theta[None, :]
        qc, f1c, f2c, f3c = weights(zc)
        Q[small] = qc.mean(axis=1)
        f1[small] = f1c.mean(axis=1)
        f2[small] = f2c.mean(axis=1)
        f3[small] = f3c.mean(axis=1)

    return EtdTableau(h, E, E2, h * Q, h * f1, h * f2, h * f3)


@dataclass
class EvolutionState:
    t: float
    hat: np.ndarray = field(repr=False)  # rfft2 spectrum, shape (nx, ny//2+1)
    grid: Grid2D
    params: object

    def samples(self):
        return np.fft.irfft2(self.hat, s=(self.grid.grid_x.n, self.grid.grid_y.n))


def make_state(values, grid, params, t=0.0, project=True):
    values = np.asarray(values, dtype=float)
    hat = np.fft.rfft2(values)
    if project:
        hat[0, 1:] = 0.0
    return EvolutionState(float(t), hat, grid, params)


def nonlinear_term(state):
    """-i (k_x / 2) (u^2)^hat, with k_x = 0 rows identically zero."""
    grid = state.grid
    u = np.fft.irfft2(state.hat, s=(grid.grid_x.n, grid.grid_y.n))
    sq = np.fft.rfft2(u * u)
    kx = grid.grid_x.k[:, None]
    return -0.5j * kx * sq


def etd4_step(state, tableau, symbol):
    """One Cox-Matthews RK4 stage sequence."""
    E, E2, Q = tableau.E, tableau.E2, tableau.Q
    v = state.hat
    grid, params = state.grid, state.params

    def N(hat):
        return nonlinear_term(EvolutionState(state.t, hat, grid, params))

    n_v = N(v)
    a = E2 * v + Q * n_v
    n_a = N(a)
    b = E2 * v + Q * n_a
    n_b = N(b)
    c = E2 * a + Q * (2.0 * n_b - n_v)
    n_c = N(c)
    new = E * v + tableau.f1 * n_v + 2.0 * tableau.f2 * (n_a + n_b) + tableau.f3 * n_c
    new[symbol.projection_rows] = 0.0
    if not np.all(np.isfinite(new)):
        raise BlowUpError(state.t)
    return EvolutionState(state.t + tableau.h, new, grid, params)


MASS_GATE = 1e-4


def evolve(initial, grid, params, dt, t_end, cadence=100, hooks=(),
           lambda_reg=REGULARIZER):
    """March the field from t = 0 to t_end.

    Hooks are called as hook(step_index, state, series, row_index) every
    `cadence` steps (and at t = 0 and the final step). Aborts with status
    "gate_violated" if the relative mass error exceeds 1e-4, and with
    "blow_up" on non-finite values. Returns (final_state, status, series)
    where series is the DiagnosticsSeries accumulated at hook times.
    """
    from .diagnostics import DiagnosticsSeries, mass_hat

    if not dt > 0:
        raise ValueError("dt must be positive")
    n_steps = int(round(t_end / dt))
    sym = linear_symbol(params, grid, lambda_reg)
    tab = etd4_tableau(sym, dt)
    state = make_state(initial, grid, params)
    series = DiagnosticsSeries()
    mass0 = mass_hat(state.hat, grid)

    def record(i, st):
        m = mass_hat(st.hat, grid)
        rel = 0.0 if i == 0 else 1.0 - m / mass0
        sup = float(np.max(np.abs(st.samples())))
        row = series.append(st.t, sup, m, rel)
        for hook in hooks:
            hook(i, st, series, row)
        return rel

    record(0, state)
    status = "completed"
    for i in range(1, n_steps + 1):
        try:
            state = etd4_step(state, tab, sym)
        except BlowUpError:
            status = "blow_up"
            break
        if i % cadence == 0 or i == n_steps:
            rel = record(i, state)
            if abs(rel) > MASS_GATE:
                status = "gate_violated"
                break
    return state, status, series
