"""Conserved quantities, norms and threshold-crossing times."""

from dataclasses import dataclass, field

import numpy as np

CSV_HEADER = "t,sup_norm,mass,mass_rel_err,perturbation_sup,energy"


@dataclass
class DiagnosticsSeries:
    t: list = field(default_factory=list)
    sup_norm: list = field(default_factory=list)
    mass: list = field(default_factory=list)
    mass_rel_err: list = field(default_factory=list)
    perturbation_sup: list = field(default_factory=list)
    energy: list = field(default_factory=list)

    def append(self, t, sup, m, rel, pert=None, en=None):
        if self.t and t <= self.t[-1]:
            raise ValueError("sample times must be strictly increasing")
        self.t.append(float(t))
        self.sup_norm.append(float(sup))
        self.mass.append(float(m))
        self.mass_rel_err.append(float(rel))
        self.perturbation_sup.append(None if pert is None else float(pert))
        self.energy.append(None if en is None else float(en))
        return len(self.t) - 1

    def write_csv(self, path):
        def fmt(v):
            return "" if v is None else format(v, ".17g")

        with open(path, "w") as fh:
            fh.write(CSV_HEADER + "\n")
            for i in range(len(self.t)):
                fh.write(",".join(fmt(v) for v in (
                    self.t[i], self.sup_norm[i], self.mass[i],
                    self.mass_rel_err[i], self.perturbation_sup[i],
                    self.energy[i])) + "\n")


def mass(values, grid):
    """M(u) = integral of u^2 over the periodic box."""
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("non-finite field")
    dx = grid.grid_x.dx
    dy = grid.grid_y.dx
    return dx * dy * float(np.sum(values ** 2))


def mass_hat(hat, grid):
    """Mass evaluated on a half-complex (rfft along y) spectrum."""
    nx, ny = grid.grid_x.n, grid.grid_y.n
    w = np.full(hat.shape[1], 2.0)
    w[0] = 1.0
    if ny % 2 == 0:
        w[-1] = 1.0
    s = float(np.sum(w[None, :] * np.abs(hat) ** 2))
    return grid.grid_x.dx * grid.grid_y.dx * s / (nx * ny)


def energy(values, grid, params):
    """E_alpha = int 1/2 (D^{alpha/2} u)^2 - u^3/6 - sigma/2 (dx^-1 u_y)^2."""
    values = np.asarray(values, dtype=float)
    hat = np.fft.fft2(values)
    kx = grid.grid_x.k[:, None]
    ky = grid.grid_y.k[None, :]
    zero_rows = np.abs(hat[0, 1:])
    if zero_rows.size and np.max(zero_rows) > 1e-8 * max(1.0, np.max(np.abs(hat))):
        raise ValueError("dx^-1 u_y undefined: nonzero k_x=0, k_y!=0 modes")
    frac = np.abs(kx) ** (params.alpha / 2.0) * hat
    with np.errstate(divide="ignore", invalid="ignore"):
        anti = np.where(kx != 0, (1j * ky) / (1j * kx), 0.0) * hat
    anti[0, :] = 0.0
    dx, dy = grid.grid_x.dx, grid.grid_y.dx
    npts = values.size
    quad = dx * dy / npts * (0.5 * np.sum(np.abs(frac) ** 2)
                             - 0.5 * params.sigma * np.sum(np.abs(anti) ** 2))
    cubic = -dx * dy * np.sum(values ** 3) / 6.0
    return float(quad.real + cubic)


def mass_rel_error(masses):
    """error_i = 1 - M_i / M_0."""
    m = np.asarray(masses, dtype=float)
    if m[0] == 0:
        raise ValueError("zero initial mass")
    return 1.0 - m / m[0]


def perturbation_residual(values, grid, carrier_samples, c, t):
    """Sup distance to the translated line carrier Q_c(x - c t) x 1_y."""
    hat = np.fft.fft(carrier_samples)
    shift = np.exp(-1j * grid.grid_x.k * (c * t))
    shifted = np.fft.ifft(hat * shift).real
    return float(np.max(np.abs(values - shifted[:, None])))


def crossing_time(times, signal, reference, factor):
    """First time the signal crosses factor * reference, linearly
    interpolated between samples; None if never crossed."""
    if not factor > 0:
        raise ValueError("factor must be positive")
    times = np.asarray(times, dtype=float)
    signal = np.asarray(signal, dtype=float)
    if times.size == 0:
        raise ValueError("empty series")
    target = factor * reference
    rising = signal[0] < target
    for i in range(times.size):
        crossed = signal[i] >= target if rising else signal[i] <= target
        if crossed:
            if i == 0:
                return float(times[0])
            t0, t1 = times[i - 1], times[i]
            s0, s1 = signal[i - 1], signal[i]
            if s1 == s0:
                return float(t1)
            return float(t0 + (target - s0) / (s1 - s0) * (t1 - t0))
    return None
