"""Concrete model backends: symmetry families, Gram data, spectral data.

Four solvable configurations are built here, each reporting its data in
the defect basis h_j = (A0 + I)^-1 psi_j:

``OneDimDeltaDeltaPrime``
    The second-derivative operator on the line with channels delta and
    delta-prime at the origin.  Defect elements h'(x) = exp(-|x|)/2 and
    h''(x) = -sign(x) exp(-|x|)/2.  The symmetry family couples space
    parity (encoded as the sample t = 0 with g(0) = 0, p(0) = 1,
    xi = (+1, -1)) with the scalings U_t f(x) = sqrt(t) f(tx), under
    which p(t) = t^-2, xi = (t^-1/2, t^-3/2).  Gram data in closed
    form: diagonal sqrt(t)/(2(1+t)) for t > 0, zero off-diagonal, and
    (+|h'|^2, -|h''|^2) = (1/4, -1/4) at the parity point.

``PointInteractionRd`` (d = 1, 2, 3)
    The free Laplacian in d dimensions with a single delta channel,
    scalings U_t f(x) = t^(d/2) f(tx), p(t) = t^-2, xi(t) = t^(-d/2).
    Normalization pinned in Fourier form, hhat(y) = (2pi)^(-d/2) /
    (1 + |y|^2); Gram and resolvent data by radial quadrature.

``PAdicVladimirov`` (prime p, exponent alpha > 1/2)
    Fractional p-adic differentiation of order alpha with a delta
    channel, dilations U_t f(x) = t^(-1/2) f(tx) over t in {p^m},
    p(t) = t^alpha, xi(t) = sqrt(t).  The delta expands over a wavelet
    eigenbasis with per-scale eigenvalue p^(alpha(1-N)) and coefficient
    p^(-N/2) / (p^(alpha(1-N)) + 1), p-1 wavelets per scale; U_{p^m}
    shifts the scale index by m, so Gram and resolvent data are
    bilateral series in the squared coefficients.  For alpha > 1 the
    Weyl function has the closed series form
    M(z) = -1 / ((p-1) sum_N p^-N / (p^(alpha(1-N)) - z)), attached for
    cross-checks (the series diverges for alpha <= 1).

``ScalingInvariant3D`` (alpha in (1, 2), channel Gram (m_i, m_j))
    The free Laplacian in three dimensions with n channels built from
    directional densities m_j on the unit sphere and radial profile
    |y|^(alpha - 3/2) / (1 + |y|^2) in Fourier space; all channels share
    xi(t) = t^-alpha under U_t f(x) = t^(3/2) f(tx), p(t) = t^-2.
    Gram(t) = c_alpha (t^alpha - t^(2-alpha)) / (t^2 - 1) (m_i, m_j)
    with the removable t = 1 singularity filled by alpha - 1, and the
    predicted unique regularization R = -c_alpha (m_i, m_j) attached.
    For orthonormal channels ((m_j, m_j) normalized against the squared
    defect norm integral) the scalar ratio beta_alpha of the two
    quadratures is attached, beta_3/2 = 2.

Sample grids default to the geometric set {2^k : k = -3..3} (in the
p-adic case {p^m : m = -3..3}), enough points to expose inconsistency
in the homogeneity system.  All improper integrals go through adaptive
quadrature on the compactified half line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Callable, Mapping

import numpy as np

from .admissibility import GramFunction
from .errors import ConvergenceError
from .quadrature import integrate_half_line, integrate_half_line_complex
from .symmetry import SymmetryFamily
from .triplet import as_matrix, hermitian_defect
from .weyl import SpectralModel

GEOMETRIC_EXPONENTS = range(-3, 4)

KIND_ONE_DIM = "OneDimDeltaDeltaPrime"
KIND_POINT = "PointInteractionRd"
KIND_PADIC = "PAdicVladimirov"
KIND_SCALING = "ScalingInvariant3D"


@dataclass(frozen=True)
class ModelSpec:
    """A fully built model: family, Gram function, spectral backend, flags."""

    kind: str
    params: Mapping[str, Any]
    family: SymmetryFamily
    gram: GramFunction
    spectral: SpectralModel
    psi_in_Hminus1: tuple[bool, ...]
    channel_names: tuple[str, ...]
    predicted_R: np.ndarray | None = None
    beta_alpha: float | None = None

    def __init__(self, kind, params, family, gram, spectral, psi_in_Hminus1,
                 channel_names, predicted_R=None, beta_alpha=None):
        object.__setattr__(self, "kind", str(kind))
        object.__setattr__(self, "params", MappingProxyType(dict(params)))
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "spectral", spectral)
        object.__setattr__(self, "psi_in_Hminus1", tuple(psi_in_Hminus1))
        object.__setattr__(self, "channel_names", tuple(channel_names))
        if predicted_R is not None:
            predicted_R = as_matrix(predicted_R)
            predicted_R.setflags(write=False)
        object.__setattr__(self, "predicted_R", predicted_R)
        object.__setattr__(self, "beta_alpha",
                           None if beta_alpha is None else float(beta_alpha))

    @property
    def n(self) -> int:
        return self.spectral.n


# ---------------------------------------------------------------------------
# One-dimensional zero-range model (delta, delta')
# ---------------------------------------------------------------------------

def h_delta(x: float) -> float:
    """Defect element of the delta channel on the line."""
    return 0.5 * math.exp(-abs(x))


def h_delta_prime(x: float) -> float:
    """Defect element of the delta-prime channel on the line (odd)."""
    if x == 0.0:
        return 0.0
    return -0.5 * math.copysign(1.0, x) * math.exp(-abs(x))


def one_dim_gram_closed(t: float) -> np.ndarray:
    """Closed-form Gram matrix of the zero-range model at sample t.

    t = 0 encodes the parity operator; t > 0 the scaling by t.
    """
    if t == 0.0:
        return np.diag([0.25, -0.25]).astype(complex)
    s = math.sqrt(t) / (2.0 * (1.0 + t))
    return np.diag([s, s]).astype(complex)


def one_dim_gram_quadrature(i: int, j: int, t: float) -> float:
    """Position-space quadrature of (h_j, U_t h_i) for the zero-range model.

    Independent cross-check route for the closed forms; U_0 is parity,
    U_t (t > 0) the L2-normalized scaling.
    """
    h = (h_delta, h_delta_prime)
    if t == 0.0:
        f = lambda x: h[j](x) * h[i](-x)
        scale = 1.0
    else:
        f = lambda x: h[j](x) * h[i](t * x)
        scale = math.sqrt(t)
    return scale * (integrate_half_line(lambda x: f(x))
                    + integrate_half_line(lambda x: f(-x)))


def _one_dim_resolvent(z: complex) -> np.ndarray:
    u = np.sqrt(-complex(z))
    e11 = (u + 2.0) / (4.0 * u * (1.0 + u) ** 2)
    e22 = 1.0 / (4.0 * (1.0 + u) ** 2)
    return np.diag([e11, e22])


def _geometric_samples(base: float, exponents) -> tuple[list[float], dict[float, float]]:
    """Sample points base^k with the conjugation t -> 1/t paired by exponent,
    so that reciprocals match the stored samples bitwise."""
    ks = sorted(set(int(k) for k in exponents))
    if set(ks) != {-k for k in ks}:
        raise ValueError("exponent grid must be symmetric around 0")
    by_k = {k: float(base) ** k for k in ks}
    return [by_k[k] for k in ks], {by_k[k]: by_k[-k] for k in ks}


def build_one_dim_model() -> ModelSpec:
    """Zero-range model on the line with delta and delta-prime channels."""
    scalings, conj_scalings = _geometric_samples(2.0, GEOMETRIC_EXPONENTS)
    samples = [0.0] + scalings
    conjugate = {0.0: 0.0} | conj_scalings
    p = {0.0: 1.0} | {t: t ** -2.0 for t in scalings}
    xi1 = {0.0: 1.0} | {t: t ** -0.5 for t in scalings}
    xi2 = {0.0: -1.0} | {t: t ** -1.5 for t in scalings}
    family = SymmetryFamily(samples, conjugate, p, [xi1, xi2])
    gram = GramFunction({t: one_dim_gram_closed(t) for t in samples})
    spectral = SpectralModel(
        n=2,
        resolvent_gram=_one_dim_resolvent,
        overlap=np.diag([0.25, 0.25]),
        psi_in_Hminus1=(True, False),
    )
    return ModelSpec(KIND_ONE_DIM, {}, family, gram, spectral,
                     (True, False), ("delta", "delta_prime"))


# ---------------------------------------------------------------------------
# Point interaction in d = 1, 2, 3 dimensions
# ---------------------------------------------------------------------------

SPHERE_SURFACE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


def point_interaction_gram(d: int, t: float) -> float:
    """(h, U_t h) for the delta channel of the free Laplacian in d dims.

    Radial quadrature of the Fourier-side product; the scaling by t acts
    as hhat(y) -> t^(-d/2) hhat(y/t).
    """
    integral = integrate_half_line(
        lambda r: r ** (d - 1) / ((1.0 + r * r) * (t * t + r * r)))
    return t ** (2.0 - d / 2.0) * (2.0 * math.pi) ** (-d) * SPHERE_SURFACE[d] * integral


def point_interaction_overlap(d: int) -> float:
    """Squared norm of the defect element h = (A0 + I)^-1 delta in d dims."""
    integral = integrate_half_line(
        lambda r: r ** (d - 1) / (1.0 + r * r) ** 2)
    return (2.0 * math.pi) ** (-d) * SPHERE_SURFACE[d] * integral


def point_interaction_resolvent(d: int, z: complex) -> complex:
    """((A0 - z)^-1 h, h) for the delta channel in d dims, by quadrature."""
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        x = z.real
        integral = complex(integrate_half_line(
            lambda r: r ** (d - 1) / ((1.0 + r * r) ** 2 * (r * r - x))))
    else:
        integral = integrate_half_line_complex(
            lambda r: r ** (d - 1) / ((1.0 + r * r) ** 2 * (r * r - z)))
    return (2.0 * math.pi) ** (-d) * SPHERE_SURFACE[d] * integral


def build_point_interaction(d: int) -> ModelSpec:
    """Single delta interaction for the free Laplacian in d = 1, 2, 3."""
    if d not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {d!r}")
    ts, conjugate = _geometric_samples(2.0, GEOMETRIC_EXPONENTS)
    family = SymmetryFamily(
        ts,
        conjugate,
        {t: t ** -2.0 for t in ts},
        [{t: t ** (-d / 2.0) for t in ts}],
    )
    gram = GramFunction({t: [[point_interaction_gram(d, t)]] for t in ts})
    spectral = SpectralModel(
        n=1,
        resolvent_gram=lambda z: np.array([[point_interaction_resolvent(d, z)]]),
        overlap=[[point_interaction_overlap(d)]],
        psi_in_Hminus1=(d == 1,),
    )
    return ModelSpec(KIND_POINT, {"d": int(d)}, family, gram, spectral,
                     (d == 1,), ("delta",))


# ---------------------------------------------------------------------------
# p-adic model
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def bilateral_sum(term: Callable[[int], complex], rel_tol: float = 1e-15,
                  cap: int = 400) -> complex:
    """Sum term(N) over all integers N with adaptive two-sided truncation.

    Truncates a tail once the last included term drops below
    ``rel_tol`` times the running sum (three consecutive times, to ride
    out non-monotone stretches); raises ``ConvergenceError`` at ``cap``
    terms per direction.
    """
    total = complex(term(0))
    for direction in (1, -1):
        consecutive = 0
        index = direction
        while True:
            if abs(index) > cap:
                raise ConvergenceError(
                    f"bilateral series did not converge within {cap} terms")
            value = complex(term(index))
            total += value
            if abs(value) < rel_tol * max(abs(total), 1e-300):
                consecutive += 1
                if consecutive >= 3:
                    break
            else:
                consecutive = 0
            index += direction
    return total


def _padic_data(p: int, alpha: float):
    pf = float(p)
    eigenvalue = lambda N: pf ** (alpha * (1 - N))
    coeff = lambda N: pf ** (-N / 2.0) / (eigenvalue(N) + 1.0)
    return eigenvalue, coeff


def padic_gram(p: int, alpha: float, m: int) -> float:
    """(h, U_{p^m} h) as the shifted bilateral series over wavelet scales."""
    _, coeff = _padic_data(p, alpha)
    return (p - 1) * bilateral_sum(lambda N: coeff(N) * coeff(N + m)).real


def padic_resolvent(p: int, alpha: float, z: complex) -> complex:
    """((A0 - z)^-1 h, h) as a bilateral series over wavelet scales."""
    eigenvalue, coeff = _padic_data(p, alpha)
    z = complex(z)
    return (p - 1) * bilateral_sum(lambda N: coeff(N) ** 2 / (eigenvalue(N) - z))


def padic_closed_form_m(p: int, alpha: float) -> Callable[[complex], np.ndarray]:
    """Closed series form of the Weyl function, valid for alpha > 1."""
    if alpha <= 1.0:
        raise ValueError("the closed Weyl series converges only for alpha > 1")
    pf = float(p)
    eigenvalue = lambda N: pf ** (alpha * (1 - N))

    def m_of_z(z: complex) -> np.ndarray:
        z = complex(z)
        denom = (p - 1) * bilateral_sum(lambda N: pf ** (-N) / (eigenvalue(N) - z))
        return np.array([[-1.0 / denom]])

    return m_of_z


def build_padic_model(p: int, alpha: float,
                      exponents: range = GEOMETRIC_EXPONENTS) -> ModelSpec:
    """Fractional p-adic differentiation of order alpha with a delta channel.

    Requires a prime p and alpha > 1/2 (the delta functional is defined
    on the operator domain exactly for such exponents).  The delta lies
    in the form-domain scale exactly when alpha > 1, which also fixes
    whether the admissible homogeneous operator is the Friedrichs or the
    Krein-von Neumann extension.
    """
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    alpha = float(alpha)
    if alpha <= 0.5:
        raise ValueError("alpha must exceed 1/2")
    ts, conjugate = _geometric_samples(p, exponents)
    family = SymmetryFamily(
        ts,
        conjugate,
        {t: t ** alpha for t in ts},
        [{t: math.sqrt(t) for t in ts}],
    )
    gram = GramFunction(
        {float(p) ** m: [[padic_gram(p, alpha, m)]] for m in exponents})
    closed = padic_closed_form_m(p, alpha) if alpha > 1.0 else None
    spectral = SpectralModel(
        n=1,
        resolvent_gram=lambda z: np.array([[padic_resolvent(p, alpha, z)]]),
        overlap=[[padic_gram(p, alpha, 0)]],
        psi_in_Hminus1=(alpha > 1.0,),
        closed_form_M=closed,
    )
    return ModelSpec(KIND_PADIC, {"p": p, "alpha": alpha}, family, gram,
                     spectral, (alpha > 1.0,), ("delta",))


# ---------------------------------------------------------------------------
# Scaling-invariant channels in three dimensions
# ---------------------------------------------------------------------------

def c_alpha(alpha: float) -> float:
    """Quadrature of the Gram prefactor integral of y^(3-2a)/(1+y^2)."""
    return integrate_half_line(lambda y: y ** (3.0 - 2.0 * alpha) / (1.0 + y * y))


def h_norm_integral(alpha: float) -> float:
    """Quadrature of y^(2a-1)/(1+y^2)^2; the squared defect norm per unit
    directional density."""
    return integrate_half_line(
        lambda y: y ** (2.0 * alpha - 1.0) / (1.0 + y * y) ** 2)


def beta_alpha(alpha: float) -> float:
    """Scalar regularization magnitude for orthonormal channels, from the
    two defining quadratures (equals 2 at alpha = 3/2)."""
    return c_alpha(alpha) / h_norm_integral(alpha)


def e_alpha(alpha: float, z: complex) -> complex:
    """Resolvent Gram integral of y^(2a-1)/((1+y^2)^2 (y^2 - z))."""
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        x = z.real
        return complex(integrate_half_line(
            lambda r: r ** (2.0 * alpha - 1.0) / ((1.0 + r * r) ** 2 * (r * r - x))))
    return integrate_half_line_complex(
        lambda r: r ** (2.0 * alpha - 1.0) / ((1.0 + r * r) ** 2 * (r * r - z)))


def gram_limit_at_one(alpha: float) -> float:
    """Removable-singularity value lim_{t->1} (t^a - t^(2-a))/(t^2 - 1) = a - 1."""
    return float(alpha) - 1.0


def scaling_gram_coefficient(alpha: float, t: float) -> float:
    """(t^a - t^(2-a))/(t^2 - 1), with the t = 1 limit filled by continuity."""
    if t == 1.0:
        return gram_limit_at_one(alpha)
    return (t ** alpha - t ** (2.0 - alpha)) / (t * t - 1.0)


def orthonormal_m_gram(alpha: float, n: int) -> np.ndarray:
    """Channel Gram (m_i, m_j) making the defect elements orthonormal."""
    return np.eye(int(n)) / h_norm_integral(alpha)


def build_scaling_invariant_3d(alpha: float, m_gram=None,
                               n: int = 1) -> ModelSpec:
    """Scaling-invariant channels in three dimensions, exponent in (1, 2).

    ``m_gram`` is the Hermitian positive semidefinite matrix of channel
    inner products (m_i, m_j); omitted, it defaults to the orthonormal
    normalization for ``n`` channels.  The closed-form Gram function and
    the predicted unique regularization R = -c_alpha (m_i, m_j) are
    attached; for orthonormal channels so is beta_alpha.
    """
    alpha = float(alpha)
    if not 1.0 < alpha < 2.0:
        raise ValueError("alpha must lie strictly inside (1, 2)")
    d_val = h_norm_integral(alpha)
    if m_gram is None:
        m_mat = orthonormal_m_gram(alpha, n)
    else:
        m_mat = as_matrix(m_gram)
        if hermitian_defect(m_mat) > 1e-12 * max(1.0, float(np.linalg.norm(m_mat))):
            raise ValueError("m_gram must be Hermitian")
        if float(np.linalg.eigvalsh((m_mat + m_mat.conj().T) / 2).min()) < -1e-12:
            raise ValueError("m_gram must be positive semidefinite")
    n = m_mat.shape[0]
    c_val = c_alpha(alpha)
    ts, conjugate = _geometric_samples(2.0, GEOMETRIC_EXPONENTS)
    family = SymmetryFamily(
        ts,
        conjugate,
        {t: t ** -2.0 for t in ts},
        [{t: t ** -alpha for t in ts} for _ in range(n)],
    )
    gram = GramFunction(
        {t: c_val * scaling_gram_coefficient(alpha, t) * m_mat for t in ts})
    overlap = d_val * m_mat
    orthonormal = bool(np.linalg.norm(overlap - np.eye(n)) <= 1e-10)
    spectral = SpectralModel(
        n=n,
        resolvent_gram=lambda z: e_alpha(alpha, z) * m_mat,
        overlap=overlap,
        psi_in_Hminus1=(False,) * n,
    )
    return ModelSpec(
        KIND_SCALING,
        {"alpha": alpha, "n": n},
        family, gram, spectral, (False,) * n,
        tuple(f"channel_{k}" for k in range(n)),
        predicted_R=-c_val * m_mat,
        beta_alpha=c_val / d_val if orthonormal else None,
    )


# ---------------------------------------------------------------------------
# Registry and JSON loading
# ---------------------------------------------------------------------------

MODEL_SUMMARIES = {
    KIND_ONE_DIM: "zero-range delta/delta-prime pair on the line, parity plus scalings",
    KIND_POINT: "single delta interaction for the free Laplacian in d = 1, 2, 3",
    KIND_PADIC: "fractional p-adic differentiation with a delta channel over dilations",
    KIND_SCALING: "scaling-invariant channels in three dimensions, exponent in (1, 2)",
}


def model_from_json(obj: dict) -> ModelSpec:
    """Build a model from {"kind": ..., params...}."""
    kind = obj.get("kind")
    if kind == KIND_ONE_DIM:
        return build_one_dim_model()
    if kind == KIND_POINT:
        return build_point_interaction(int(obj["d"]))
    if kind == KIND_PADIC:
        return build_padic_model(int(obj["p"]), float(obj["alpha"]))
    if kind == KIND_SCALING:
        m_gram = obj.get("m_gram")
        if m_gram is not None:
            from .jsonio import decode_matrix
            m_gram = decode_matrix(m_gram)
        return build_scaling_invariant_3d(float(obj["alpha"]), m_gram,
                                          int(obj.get("n", 1)))
    raise ValueError(f"unknown model kind {kind!r}")


def model_info(spec: ModelSpec) -> dict:
    """JSONable summary: family data, membership flags, Gram samples."""
    from .jsonio import encode_matrix
    info = {
        "kind": spec.kind,
        "params": dict(spec.params),
        "channels": list(spec.channel_names),
        "summary": MODEL_SUMMARIES[spec.kind],
        "family": spec.family.to_json_dict(),
        "psi_in_Hminus1": list(spec.psi_in_Hminus1),
        "gram": {repr(t): encode_matrix(spec.gram.at(t))
                 for t in spec.family.sample_points},
        "overlap": encode_matrix(spec.spectral.overlap),
        "has_closed_form_M": spec.spectral.closed_form_M is not None,
    }
    if spec.predicted_R is not None:
        info["predicted_R"] = encode_matrix(spec.predicted_R)
    if spec.beta_alpha is not None:
        info["beta_alpha"] = spec.beta_alpha
    return info
