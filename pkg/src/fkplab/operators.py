"""Dense discretizations of the linearized operators and their spectra.

M_c = D^alpha - Q_c + c          (symmetric)
L(k) = -d/dx M_c d/dx + k^2      (symmetric; L = L(0))
B(k) = A^-1 L(k),  A = -d/dx     (restricted to the mean-zero subspace)
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eig, eigh

from .experiments import resample_carrier
from .spectral import make_grid


def fourier_matrices(grid):
    """Forward/inverse DFT matrices for dense operator assembly."""
    n = grid.n
    j = np.arange(n)
    F = np.exp(-2j * np.pi * np.outer(j, j) / n)
    Finv = np.conj(F) / n
    return F, Finv


def multiplier_matrix(grid, symbol_values):
    """Real matrix of a Fourier multiplier operator."""
    F, Finv = fourier_matrices(grid)
    return (Finv * symbol_values[None, :]) @ F


def derivative_matrix(grid):
    """d/dx with the Nyquist mode zeroed (odd-derivative convention)."""
    sym = 1j * grid.k.copy()
    sym[grid.n // 2] = 0.0
    return multiplier_matrix(grid, sym).real


def antiderivative_matrix(grid):
    """(-d/dx)^-1 on k != 0 modes; zero on the mean and Nyquist modes."""
    sym = np.zeros(grid.n, dtype=complex)
    nz = grid.k != 0
    sym[nz] = 1.0 / (-1j * grid.k[nz])
    sym[grid.n // 2] = 0.0
    return multiplier_matrix(grid, sym).real


@dataclass
class OperatorMatrix:
    matrix: np.ndarray = field(repr=False)
    tag: str
    grid: object
    params: object
    k: float = None


def build_operator_matrix(tag, carrier, params, grid, k=None):
    """Assemble Mc, L_of_k(k) or B_of_k(k) as a dense real matrix."""
    q = resample_carrier(carrier, grid)
    riesz = multiplier_matrix(grid, np.abs(grid.k) ** params.alpha).real
    mc = riesz + np.diag(params.c - q)
    if tag == "Mc":
        return OperatorMatrix(mc, tag, grid, params)
    if k is None or k < 0:
        raise ValueError("L_of_k / B_of_k require a wavenumber k >= 0")
    dx_mat = derivative_matrix(grid)
    lk = -dx_mat @ mc @ dx_mat + (k ** 2) * np.eye(grid.n)
    lk = 0.5 * (lk + lk.T)  # drop rounding asymmetry
    if tag == "L_of_k":
        return OperatorMatrix(lk, tag, grid, params, k=float(k))
    if tag == "B_of_k":
        b = antiderivative_matrix(grid) @ lk
        return OperatorMatrix(b, tag, grid, params, k=float(k))
    raise ValueError(f"unknown operator tag {tag!r}")


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    tol_neg: float
    negative_count: int
    lambda_min: float
    omega0: float = None


def symmetric_spectrum(op):
    """Full eigendecomposition of a symmetric operator matrix.

    Eigenvalues within tol_neg = 1e-8 * ||matrix|| of zero are classified
    numerically zero; negative_count counts strictly below -tol_neg.
    """
    if op.tag not in ("Mc", "L_of_k"):
        raise ValueError("symmetric path requires Mc or L_of_k")
    m = op.matrix
    asym = np.max(np.abs(m - m.T))
    norm = np.linalg.norm(m, 2)
    if asym > 1e-10 * norm:
        raise ValueError("matrix is not symmetric to tolerance")
    vals, vecs = eigh(m)
    tol_neg = 1e-8 * norm
    neg = int(np.sum(vals < -tol_neg))
    lam_min = float(vals[0])
    omega0 = None
    if op.tag == "L_of_k" and op.k == 0 and lam_min < -tol_neg:
        omega0 = float(np.sqrt(-lam_min))
    return SpectrumReport(vals, vecs, tol_neg, neg, lam_min, omega0)


def mean_zero_basis(grid):
    """Orthonormal basis of the mean-zero, Nyquist-free subspace
    (cosine and sine vectors for k = 1 .. n/2 - 1)."""
    n = grid.n
    x = grid.x
    cols = []
    for m in range(1, n // 2):
        km = m * np.pi / grid.half_width
        cols.append(np.cos(km * x) * np.sqrt(2.0 / n))
        cols.append(np.sin(km * x) * np.sqrt(2.0 / n))
    return np.column_stack(cols)


def restricted_spectrum(op_b, basis=None):
    """Eigenvalues of B(k) on the mean-zero subspace."""
    if basis is None:
        basis = mean_zero_basis(op_b.grid)
    reduced = basis.T @ op_b.matrix @ basis
    return eig(reduced, right=False)


def growth_rate(carrier, params, grid, k, basis=None):
    """Max real part of the spectrum of B(k); positive values certify a
    transverse instability mode at transverse wavenumber k."""
    if not k > 0:
        raise ValueError("transverse wavenumber must be positive")
    op = build_operator_matrix("B_of_k", carrier, params, grid, k=k)
    vals = restricted_spectrum(op, basis)
    return float(np.max(vals.real)), vals


@dataclass
class GrowthRateCurve:
    k: np.ndarray
    sigma_max: np.ndarray
    certificate: dict = None


def certificate_A0_A4(carrier, params, grid, omega0_margin=0.05):
    """Numeric certificates for the instability criteria:
    (A0) symmetry of L(k); (A1) L(k) positive for k above omega0;
    (A2)/(A3) spectral shift identity eig(L(k)) = eig(L) + k^2;
    (A4) L(0) has exactly one negative eigenvalue beyond kernel tolerance.
    """
    l0 = build_operator_matrix("L_of_k", carrier, params, grid, k=0.0)
    rep0 = symmetric_spectrum(l0)
    norm = np.linalg.norm(l0.matrix, 2)
    out = {"lambda": rep0.lambda_min, "omega0": rep0.omega0,
           "negative_count": rep0.negative_count}
    k_test = rep0.omega0 * (1.0 + omega0_margin)
    lk = build_operator_matrix("L_of_k", carrier, params, grid, k=k_test)
    out["A0_symmetry_residual"] = float(
        np.max(np.abs(lk.matrix - lk.matrix.T)) / norm)
    repk = symmetric_spectrum(lk)
    out["A1_min_eig_above_omega0"] = float(repk.eigenvalues[0])
    shift = np.max(np.abs(np.sort(repk.eigenvalues)
                          - np.sort(rep0.eigenvalues) - k_test ** 2))
    out["A2_A3_shift_identity_residual"] = float(shift / norm)
    out["A4_negative_count"] = rep0.negative_count
    out["passed"] = (out["A0_symmetry_residual"] <= 1e-10
                     and out["A1_min_eig_above_omega0"] > 0
                     and out["A2_A3_shift_identity_residual"] <= 1e-10
                     and out["A4_negative_count"] == 1)
    return out


def growth_rate_curve(carrier, params, grid, k_list, with_certificate=True):
    k_list = np.asarray(k_list, dtype=float)
    if not (np.all(k_list > 0) and np.all(np.diff(k_list) > 0)):
        raise ValueError("k samples must be positive and increasing")
    basis = mean_zero_basis(grid)
    sig = np.array([growth_rate(carrier, params, grid, kk, basis)[0]
                    for kk in k_list])
    cert = certificate_A0_A4(carrier, params, grid) if with_certificate else None
    return GrowthRateCurve(k_list, sig, cert)


def kernel_residuals(carrier, params, grid):
    """Discrete kernel witnesses of L and M_c."""
    q = resample_carrier(carrier, grid)
    l0 = build_operator_matrix("L_of_k", carrier, params, grid, k=0.0)
    mc = build_operator_matrix("Mc", carrier, params, grid)
    norm_l = np.linalg.norm(l0.matrix, 2)
    norm_m = np.linalg.norm(mc.matrix, 2)
    ones = np.ones(grid.n)
    qp = derivative_matrix(grid) @ q
    return {
        "L_ones": float(np.max(np.abs(l0.matrix @ ones)) / norm_l),
        "L_Qc": float(np.max(np.abs(l0.matrix @ q))
                      / (norm_l * np.max(np.abs(q)))),
        "Mc_Qc_prime": float(np.max(np.abs(mc.matrix @ qp))
                             / (norm_m * np.max(np.abs(qp)))),
    }
