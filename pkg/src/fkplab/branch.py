"""Continuation of periodically modulated solitary waves.

The second-order unknown w(x, y) solves
    L w + 1/2 (w_x^2)_x - w_yy = 0
with L = -d/dx (D^alpha + c - Q_c) d/dx. Solutions are sought as
w = sum_m w_m(x) cos(m omega y), each w_m odd in x (sine series), with
the branch parameter s fixed by the amplitude constraint <w_1, chi> = s,
where chi is the unit eigenvector of the sole negative eigenvalue of L on
the odd subspace and omega(0) = sqrt(|lambda|).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, lu_factor, lu_solve

from .experiments import resample_carrier
from .operators import derivative_matrix, multiplier_matrix


class NewtonError(RuntimeError):
    pass


def sine_basis(grid):
    n = grid.n
    cols = [np.sin(m * np.pi * grid.x / grid.half_width) * np.sqrt(2.0 / n)
            for m in range(1, n // 2)]
    return np.column_stack(cols)


def cosine_basis(grid):
    n = grid.n
    cols = [np.full(n, np.sqrt(1.0 / n))]
    cols += [np.cos(m * np.pi * grid.x / grid.half_width) * np.sqrt(2.0 / n)
             for m in range(1, n // 2)]
    cols.append(np.cos(np.pi * grid.x * (n // 2) / grid.half_width)
                * np.sqrt(1.0 / n))
    return np.column_stack(cols)


def refine_profile(q, grid, alpha, c, max_iter=30):
    """Newton-polish a solitary profile on this grid to machine residual.

    The correction is restricted to even functions, where the linearization
    M_c is invertible."""
    riesz = multiplier_matrix(grid, np.abs(grid.k) ** alpha).real
    ce = cosine_basis(grid)
    for _ in range(max_iter):
        res = riesz @ q + c * q - 0.5 * q ** 2
        if np.max(np.abs(res)) < 1e-13 * np.max(np.abs(q)):
            break
        jac = ce.T @ (riesz + np.diag(c - q)) @ ce
        q = q - ce @ np.linalg.solve(jac, ce.T @ res)
    return q


class BranchProblem:
    """Precomputed discretization shared by all points of one branch."""

    def __init__(self, carrier, params, grid, n_modes=8):
        self.params = params
        self.grid = grid
        self.n_modes = n_modes
        q = resample_carrier(carrier, grid)
        self.q = refine_profile(q, grid, params.alpha, params.c)
        self.S = sine_basis(grid)
        self.Dx = derivative_matrix(grid)
        self.dS = self.Dx @ self.S
        riesz = multiplier_matrix(grid, np.abs(grid.k) ** params.alpha).real
        mc = riesz + np.diag(params.c - self.q)
        lmat = -self.Dx @ mc @ self.Dx
        self.Ls = self.S.T @ lmat @ self.S
        self.Ls = 0.5 * (self.Ls + self.Ls.T)
        vals, vecs = eigh(self.Ls)
        self.lambda_odd = float(vals[0])
        if self.lambda_odd >= 0:
            raise ValueError("no negative odd-subspace eigenvalue found")
        self.omega0 = float(np.sqrt(-self.lambda_odd))
        chi = vecs[:, 0]
        slope = float((self.dS @ chi)[np.argmin(np.abs(grid.x))])
        self.chi = chi if slope > 0 else -chi
        # cosine collocation in the scaled periodic variable
        self.n_colloc = 4 * n_modes
        q_angles = 2.0 * np.pi * np.arange(self.n_colloc) / self.n_colloc
        self.cos_table = np.cos(np.outer(q_angles, np.arange(n_modes + 1)))

    @property
    def n_unknowns(self):
        return (self.n_modes + 1) * self.S.shape[1] + 1

    def _wx_colloc(self, coeffs):
        """w_x on the (colloc angle, x) lattice from per-mode sine coeffs."""
        c_phys = coeffs @ self.dS.T  # (modes, n)
        return self.cos_table @ c_phys  # (n_colloc, n)

    def _project_modes(self, fields):
        """Cosine analysis along the collocation angle."""
        Q = self.n_colloc
        out = (2.0 / Q) * (self.cos_table.T @ fields)
        out[0] *= 0.5
        return out  # (modes, n)

    def residual(self, coeffs, omega):
        """Per-mode residual in sine-coefficient space, plus a scale that
        measures the size of the balanced terms."""
        lin_l = coeffs @ self.Ls.T
        m2 = (np.arange(self.n_modes + 1) ** 2)[:, None]
        lin_y = (omega ** 2) * m2 * coeffs
        wx = self._wx_colloc(coeffs)
        nl_phys = self._project_modes(0.5 * wx ** 2) @ self.Dx.T
        nl = nl_phys @ self.S
        # the two linear pieces cancel on the bifurcating mode; measure the
        # scale by the sizes of the individual terms before cancellation
        scale = float(np.max(np.abs(lin_l)) + np.max(np.abs(lin_y))
                      + np.max(np.abs(nl)))
        return lin_l + lin_y + nl, max(scale, 1e-30)

    def jacobian(self, coeffs, omega):
        M, K = self.n_modes, self.S.shape[1]
        n = self.grid.n
        jac = np.zeros((M + 1, K, M + 1, K))
        m2 = np.arange(M + 1) ** 2
        for m in range(M + 1):
            jac[m, :, m, :] = self.Ls + (omega ** 2) * m2[m] * np.eye(K)
        wx = self._wx_colloc(coeffs)  # (Q, n)
        for mp in range(M + 1):
            weighted = wx * self.cos_table[:, mp][:, None]
            h = self._project_modes(weighted)  # (M+1, n)
            for m in range(M + 1):
                jac[m, :, mp, :] += self.S.T @ (self.Dx @ (h[m][:, None] * self.dS))
        return jac.reshape((M + 1) * K, (M + 1) * K)

    def newton(self, coeffs, omega, s, max_iter=50, tol=1e-11):
        """Solve residual = 0, <w_1, chi> = s for (coeffs, omega)."""
        M, K = self.n_modes, self.S.shape[1]
        history = []
        for _ in range(max_iter):
            res, scale = self.residual(coeffs, omega)
            cons = float(coeffs[1] @ self.chi) - s
            sup = float(np.max(np.abs(res)))
            history.append(sup)
            if sup <= tol * scale and abs(cons) <= 1e-14 * max(abs(s), 1e-6):
                return coeffs, omega, history, scale
            jac = self.jacobian(coeffs, omega)
            domega = 2.0 * omega * ((np.arange(M + 1) ** 2)[:, None] * coeffs)
            full = np.zeros((self.n_unknowns, self.n_unknowns))
            full[:-1, :-1] = jac
            full[:-1, -1] = domega.reshape(-1)
            full[-1, K: 2 * K] = self.chi
            rhs = np.concatenate([res.reshape(-1), [cons]])
            try:
                lu = lu_factor(full)
                delta = lu_solve(lu, rhs)
            except np.linalg.LinAlgError as exc:
                raise NewtonError(f"singular Jacobian: {exc}") from exc
            coeffs = coeffs - delta[:-1].reshape(M + 1, K)
            omega = omega - delta[-1]
        raise NewtonError(f"no convergence in {max_iter} Newton iterations")


@dataclass
class BranchPoint:
    s: float
    omega: float
    coeffs: np.ndarray = field(repr=False)  # (n_modes+1, K) sine coefficients
    residual_sup: float
    scale: float
    newton_residuals: list = field(repr=False, default_factory=list)

    def mode_profiles(self, problem):
        return self.coeffs @ problem.S.T

    def wave_field(self, problem):
        """phi = Q_c + d/dx w on the (x, collocation-angle) cell."""
        wx = problem._wx_colloc(self.coeffs)  # (Q, n)
        return problem.q[None, :] + wx


def predictor(problem, s):
    coeffs = np.zeros((problem.n_modes + 1, problem.S.shape[1]))
    coeffs[1] = s * problem.chi
    return coeffs, problem.omega0


def newton_correct(problem, coeffs, omega, s):
    coeffs, omega, history, scale = problem.newton(coeffs, omega, s)
    res, _ = problem.residual(coeffs, omega)
    return BranchPoint(s, float(omega), coeffs, float(np.max(np.abs(res))),
                       scale, history)


def continue_branch(problem, s_values, min_step=1e-6):
    """Secant-predictor continuation over increasing amplitudes."""
    s_values = list(s_values)
    if any(np.diff(s_values) <= 0) or s_values[0] <= 0:
        raise ValueError("amplitudes must be positive and increasing")
    points = []
    for s in s_values:
        if len(points) >= 2:
            p1, p0 = points[-1], points[-2]
            f = (s - p1.s) / (p1.s - p0.s)
            coeffs = p1.coeffs + f * (p1.coeffs - p0.coeffs)
            omega = p1.omega + f * (p1.omega - p0.omega)
        elif len(points) == 1:
            coeffs, omega = points[-1].coeffs.copy(), points[-1].omega
            coeffs[1] = s * problem.chi
        else:
            coeffs, omega = predictor(problem, s)
        target = s
        s_cur = points[-1].s if points else 0.0
        while True:
            try:
                pt = newton_correct(problem, coeffs, omega, target)
                points.append(pt)
                break
            except NewtonError:
                target = 0.5 * (s_cur + target)
                if target - s_cur < min_step:
                    raise
                coeffs, omega = predictor(problem, target)
        if points[-1].s != s:
            # bisected; retry the requested amplitude from the new point
            coeffs, omega = points[-1].coeffs.copy(), points[-1].omega
            pt = newton_correct(problem, coeffs, omega, s)
            points.append(pt)
    return [p for p in points if p.s in s_values]


def steady_equation_residual(problem, point):
    """Residual of the 2D steady equation
    (-c phi + phi^2/2 - D^alpha phi)_xx - phi_yy = 0 evaluated directly on
    the (collocation-angle, x) cell, normalized by the term size."""
    params = problem.params
    grid = problem.grid
    wx = problem._wx_colloc(point.coeffs)  # (Q, n)
    phi = problem.q[None, :] + wx
    riesz_flux = np.fft.ifft(
        np.abs(grid.k)[None, :] ** params.alpha * np.fft.fft(phi, axis=1),
        axis=1).real
    flux = -params.c * phi + 0.5 * phi ** 2 - riesz_flux
    # second derivative with the Nyquist mode dropped, matching the
    # odd-derivative convention of the assembled operators
    kxx = -grid.k ** 2
    kxx[grid.n // 2] = 0.0
    flux_xx = np.fft.ifft(
        kxx[None, :] * np.fft.fft(flux, axis=1), axis=1).real
    # phi_yy per cosine mode: -m^2 omega^2
    phi_modes = problem._project_modes(phi)
    m2 = (np.arange(problem.n_modes + 1) ** 2)[:, None]
    phi_yy_modes = -(point.omega ** 2) * m2 * phi_modes
    phi_yy = problem.cos_table @ phi_yy_modes
    res = flux_xx - phi_yy
    scale = float(np.max(np.abs(flux_xx)) + np.max(np.abs(phi_yy)) + 1e-30)
    return float(np.max(np.abs(res))), scale
