"""Weyl functions, the homogeneity identity, and Krein-formula spectra.

Spectral data of a model enters through the resolvent Gram matrix
E(z)[i, j] = ((A0 - z)^-1 h_j, h_i) and the overlap (h_j, h_i) in the
defect basis.  The Weyl function of the plain defect-coordinate triplet
is the rational expression

    Mhat(z) = (z + 1) (overlap + (z + 1) E(z)),

and the Weyl function of the regularized triplet attached to R follows
by the linear fractional transform M(z) = -(R + Mhat(z))^-1.  ``m_hat``
exposes Mhat only for orthonormal channels (overlap = identity), the
configuration in which the formula is classically quoted; ``weyl_m``
evaluates through the overlap-aware form, which the same defect-basis
computation yields and which the p-adic closed form confirms to
near machine precision.

For a homogeneous regularization the Weyl function obeys

    p(t) M(z) = Xi(t) M(p(t) z) Xi(t),

and eigenvalues of a self-adjoint realization below the spectrum are
the roots of det(B - M(x)) on the negative axis, with
(B - M(z))^-1 the finite-rank kernel of the resolvent difference in
Krein's formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import PoleError, UnsupportedConfigurationError
from .symmetry import SymmetryFamily
from .triplet import as_matrix, hermitian_defect

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralModel:
    """Per-model spectral backend in the defect basis h_1..h_n.

    Parameters
    ----------
    n : int
        Channel count.
    resolvent_gram : callable z -> (n, n) complex array
        E(z)[i, j] = ((A0 - z)^-1 h_j, h_i); must satisfy E(z)* = E(conj z).
    overlap : (n, n) array
        (h_j, h_i); Hermitian positive definite, identity for
        orthonormal channels.
    psi_in_Hminus1 : tuple of bool
        Per channel, whether the singular element lies in the form
        domain scale (order -1) rather than only in order -2.
    closed_form_M : callable z -> (n, n) array, optional
        Independent closed form of the Weyl function, used for
        cross-checks when present.
    """

    n: int
    resolvent_gram: Callable[[complex], np.ndarray]
    overlap: np.ndarray
    psi_in_Hminus1: tuple[bool, ...]
    closed_form_M: Callable[[complex], np.ndarray] | None = None

    def __init__(self, n, resolvent_gram, overlap, psi_in_Hminus1,
                 closed_form_M=None):
        n = int(n)
        overlap = as_matrix(overlap)
        if overlap.shape[0] != n:
            raise ValueError("overlap dimension disagrees with channel count")
        if hermitian_defect(overlap) > 1e-12 * max(1.0, float(np.linalg.norm(overlap))):
            raise ValueError("overlap must be Hermitian")
        if float(np.linalg.eigvalsh(overlap).min()) <= 0:
            raise ValueError("overlap must be positive definite")
        overlap.setflags(write=False)
        flags = tuple(bool(f) for f in psi_in_Hminus1)
        if len(flags) != n:
            raise ValueError("one membership flag per channel is required")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "resolvent_gram", resolvent_gram)
        object.__setattr__(self, "overlap", overlap)
        object.__setattr__(self, "psi_in_Hminus1", flags)
        object.__setattr__(self, "closed_form_M", closed_form_M)

    def resolvent_at(self, z: complex) -> np.ndarray:
        e = as_matrix(self.resolvent_gram(complex(z)))
        if e.shape[0] != self.n:
            raise ValueError("resolvent Gram has the wrong dimension")
        return e


@dataclass(frozen=True)
class WeylEvaluation:
    """Weyl matrix at one spectral point, with optional closed-form residual."""

    z: complex
    matrix: np.ndarray
    closed_form_residual: float | None = None

    def __init__(self, z, matrix, closed_form_residual=None):
        mat = as_matrix(matrix)
        mat.setflags(write=False)
        object.__setattr__(self, "z", complex(z))
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "closed_form_residual", closed_form_residual)


def _invert_or_pole(mat: np.ndarray, what: str) -> np.ndarray:
    svals = np.linalg.svd(mat, compute_uv=False)
    if svals[-1] <= 1e-14 * max(1.0, float(svals[0])):
        raise PoleError(f"{what} is singular at the requested point")
    return np.linalg.inv(mat)


def _m_hat_raw(model: SpectralModel, z: complex) -> np.ndarray:
    w = complex(z) + 1.0
    return w * (model.overlap + w * model.resolvent_at(z))


def m_hat(model: SpectralModel, z: complex, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Weyl matrix of the defect-coordinate triplet, orthonormal channels only.

    ``z`` must lie off the spectrum of the unperturbed operator.  Raises
    ``UnsupportedConfigurationError`` when the overlap deviates from the
    identity beyond ``tol``; models with non-orthonormal channels must
    go through ``weyl_m`` (overlap-aware) or supply a closed form.
    """
    defect = float(np.linalg.norm(model.overlap - np.eye(model.n)))
    if defect > tol:
        raise UnsupportedConfigurationError(
            f"channels are not orthonormal (overlap defect {defect:.3e})")
    return _m_hat_raw(model, z)


def weyl_m(model: SpectralModel, reg, z: complex) -> WeylEvaluation:
    """Weyl matrix M(z) = -(R + Mhat(z))^-1 of the regularized triplet.

    A singular R + Mhat(z) raises ``PoleError``: the requested point is
    an eigenvalue of the regularizing extension.  When the model carries
    a closed form, the relative discrepancy against it is reported in
    the returned evaluation.
    """
    r = as_matrix(reg)
    if r.shape[0] != model.n:
        raise ValueError("R dimension disagrees with the model")
    m = -_invert_or_pole(r + _m_hat_raw(model, z), "R + Mhat(z)")
    resid = None
    if model.closed_form_M is not None:
        ref = as_matrix(model.closed_form_M(complex(z)))
        resid = float(np.linalg.norm(m - ref) / max(np.linalg.norm(ref), 1e-300))
    return WeylEvaluation(z, m, resid)


def check_weyl_homogeneity(weyl_fn: Callable[[complex], np.ndarray],
                           fam: SymmetryFamily, z: complex, t: float) -> float:
    """Relative residual of p(t) M(z) = Xi(t) M(p(t) z) Xi(t) at one (z, t)."""
    p_t = fam.p[t]
    xi = fam.xi_diag(t)
    m_z = as_matrix(weyl_fn(complex(z)))
    m_pz = as_matrix(weyl_fn(p_t * complex(z)))
    num = np.linalg.norm(p_t * m_z - xi @ m_pz @ xi)
    return float(num / max(np.linalg.norm(m_z), 1e-300))


def hermitian_imag_min_eig(mat) -> float:
    """Smallest eigenvalue of the Herglotz part (M - M*)/(2i)."""
    m = as_matrix(mat)
    return float(np.linalg.eigvalsh((m - m.conj().T) / 2j).min())


def krein_correction(m_at_z, coupling) -> np.ndarray:
    """Finite-rank kernel (B - M(z))^-1 of the resolvent difference.

    Singular B - M(z) raises ``PoleError``, signaling that z belongs to
    the spectrum of the realization.
    """
    m = as_matrix(m_at_z)
    b = as_matrix(coupling)
    if b.shape != m.shape:
        raise ValueError("B and M(z) dimensions disagree")
    return _invert_or_pole(b - m, "B - M(z)")


def find_negative_eigenvalues(model: SpectralModel, reg, coupling,
                              search_interval: tuple[float, float],
                              tol: float = DEFAULT_TOL,
                              num: int = 2000) -> list[float]:
    """Roots of det(B - M(x)) on an interval of the negative axis.

    Scans ``num`` grid points for sign changes of the (real) determinant
    and refines each bracket by bisection to width ``tol``.  Hermitian B
    only: the real-axis eigenvalue search is meaningful for self-adjoint
    realizations.  A bracket whose refined midpoint does not reduce the
    determinant magnitude (a pole crossing rather than a root) is
    discarded.
    """
    b = as_matrix(coupling)
    if hermitian_defect(b) > 1e-12 * max(1.0, float(np.linalg.norm(b))):
        raise ValueError("eigenvalue search requires a Hermitian B")
    lo, hi = float(search_interval[0]), float(search_interval[1])
    if not lo < hi < 0:
        raise ValueError("search interval must satisfy lo < hi < 0")

    def det_val(x: float) -> float:
        d = complex(np.linalg.det(b - weyl_m(model, reg, x).matrix))
        return d.real

    xs = np.linspace(lo, hi, int(num))
    vals = [det_val(x) for x in xs]
    roots: list[float] = []
    for k in range(len(xs) - 1):
        f_a, f_b = vals[k], vals[k + 1]
        if f_a == 0.0:
            roots.append(float(xs[k]))
            continue
        if f_a * f_b >= 0.0:
            continue
        a, bb = float(xs[k]), float(xs[k + 1])
        fa = f_a
        while bb - a > tol:
            mid = 0.5 * (a + bb)
            fm = det_val(mid)
            if fm == 0.0:
                a = bb = mid
                break
            if fa * fm < 0:
                bb = mid
            else:
                a, fa = mid, fm
        x_star = 0.5 * (a + bb)
        if abs(det_val(x_star)) <= max(abs(f_a), abs(f_b)):
            roots.append(x_star)
    if vals and vals[-1] == 0.0:
        roots.append(float(xs[-1]))
    return roots
