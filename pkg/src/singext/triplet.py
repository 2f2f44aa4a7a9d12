"""Boundary-triplet coordinates and operator-realization membership.

Elements f of the adjoint domain are represented solely by the
coordinate pair (a, b): ``a`` holds the coefficients of f along the
defect basis h_1..h_n and ``b`` the values of the singular functionals
on the regular part u of f.  The regularized triplet attached to a
Hermitian matrix R is

    Gamma0 f = b + R a,        Gamma1 f = -a,

so component j of Gamma0 f is the value of the extended functional on
f.  A coupling matrix B then carves out the realization domain through
the boundary condition B Gamma0 f = Gamma1 f; the realization is
self-adjoint exactly when B is Hermitian.

Sign convention: Gamma1 f = -a is adopted as is; comparisons with other
triplet conventions must account for this sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

HERMITICITY_RTOL = 1e-12


def as_matrix(m) -> np.ndarray:
    """Coerce a wrapper or array-like to a square complex matrix."""
    raw = getattr(m, "matrix", m)
    arr = np.atleast_2d(np.asarray(raw, dtype=complex))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
        raise ValueError("matrix entries must be finite")
    return arr


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex).ravel()
    if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
        raise ValueError("vector entries must be finite")
    return arr


def hermitian_defect(m) -> float:
    mat = as_matrix(m)
    return float(np.linalg.norm(mat - mat.conj().T))


@dataclass(frozen=True)
class BoundaryCoordinates:
    """Coordinates (a, b) of an element of the adjoint domain.

    ``a`` are the defect-basis coefficients, ``b`` the functional values
    on the regular part; the infinite-dimensional part of the element is
    never materialized.
    """

    a: np.ndarray
    b: np.ndarray

    def __init__(self, a, b):
        a = _as_vector(a)
        b = _as_vector(b)
        if a.shape != b.shape:
            raise DimensionMismatchError(
                f"coordinate vectors disagree: {a.shape} vs {b.shape}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class AdmissibleMatrix:
    """Hermitian matrix R fixing the extension of the singular functionals."""

    matrix: np.ndarray

    def __init__(self, matrix, tol: float = HERMITICITY_RTOL):
        mat = as_matrix(matrix)
        defect = np.linalg.norm(mat - mat.conj().T)
        if defect > tol * max(1.0, np.linalg.norm(mat)):
            raise ValueError(f"R must be Hermitian (defect {defect:.3e})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CouplingMatrix:
    """Coefficient matrix B of the singular perturbation.

    Hermiticity is a queried property, not a requirement: non-Hermitian
    B parameterizes non-self-adjoint realizations.
    """

    matrix: np.ndarray

    def __init__(self, matrix):
        mat = as_matrix(matrix)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def to_regularized_triplet(coords: BoundaryCoordinates,
                           reg: AdmissibleMatrix | np.ndarray,
                           ) -> tuple[np.ndarray, np.ndarray]:
    """Map coordinates (a, b) to the regularized boundary values.

    Returns (Gamma0 f, Gamma1 f) = (b + R a, -a); linear in the
    coordinates for fixed R.
    """
    r = as_matrix(reg)
    if r.shape[0] != coords.n:
        raise DimensionMismatchError(
            f"R is {r.shape[0]}x{r.shape[0]} but coordinates have n={coords.n}")
    return coords.b + r @ coords.a, -coords.a


def in_realization_domain(coords: BoundaryCoordinates,
                          coupling: CouplingMatrix | np.ndarray,
                          reg: AdmissibleMatrix | np.ndarray,
                          tol: float = 1e-10) -> bool:
    """Test the boundary condition B Gamma0 f = Gamma1 f within tol."""
    b_mat = as_matrix(coupling)
    g0, g1 = to_regularized_triplet(coords, reg)
    if b_mat.shape[0] != g0.shape[0]:
        raise DimensionMismatchError(
            f"B is {b_mat.shape[0]}x{b_mat.shape[0]} but coordinates have n={g0.shape[0]}")
    return float(np.linalg.norm(b_mat @ g0 - g1)) <= tol


def is_selfadjoint_realization(coupling: CouplingMatrix | np.ndarray,
                               tol: float = HERMITICITY_RTOL) -> bool:
    """True when B is Hermitian (relative to its norm), i.e. the realization is self-adjoint."""
    mat = as_matrix(coupling)
    return hermitian_defect(mat) <= tol * max(1.0, float(np.linalg.norm(mat)))


def boundary_form(first: tuple[np.ndarray, np.ndarray],
                  second: tuple[np.ndarray, np.ndarray]) -> complex:
    """Green pairing (g1, g0') - (g0, g1') of two boundary-value pairs.

    Inner product convention: (x, y) = sum_k x_k conj(y_k).  For pairs
    produced with a Hermitian R the value is independent of R and flips
    to minus its conjugate when the two elements are swapped.
    """
    g0, g1 = first
    g0p, g1p = second
    return complex(np.vdot(g0p, g1) - np.vdot(g1p, g0))
