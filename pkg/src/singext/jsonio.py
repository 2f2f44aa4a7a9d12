"""JSON encoding of complex scalars, vectors and matrices.

Complex numbers are encoded as two-element ``[re, im]`` arrays; vectors
and matrices nest accordingly.  Decoders also accept plain real numbers
(and, for matrices, depth-2 nesting of reals) so that hand-written
inputs like ``[[0.5, 0], [0, -0.5]]`` work on the command line.
"""

from __future__ import annotations

import numbers

import numpy as np


def encode_complex(value) -> list[float]:
    z = complex(value)
    return [float(z.real), float(z.imag)]


def encode_vector(vec) -> list[list[float]]:
    return [encode_complex(v) for v in np.asarray(vec).ravel()]


def encode_matrix(mat) -> list[list[list[float]]]:
    m = np.atleast_2d(np.asarray(mat))
    return [[encode_complex(v) for v in row] for row in m]


def encode_real(value) -> float:
    return float(np.real_if_close(value))


def decode_complex(obj) -> complex:
    """Decode a scalar given as number, ``[re, im]`` or ``"re,im"`` string."""
    if isinstance(obj, str):
        parts = obj.split(",")
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
        raise ValueError(f"cannot parse complex scalar from {obj!r}")
    if isinstance(obj, numbers.Number):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(
        isinstance(v, numbers.Number) for v in obj
    ):
        return complex(float(obj[0]), float(obj[1]))
    raise ValueError(f"cannot parse complex scalar from {obj!r}")


def _nesting_depth(obj) -> int:
    depth = 0
    while isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return depth + 1
        depth += 1
        obj = obj[0]
    return depth


def decode_matrix(obj) -> np.ndarray:
    """Decode a matrix; depth-2 nesting is real, depth-3 is [re, im] pairs."""
    depth = _nesting_depth(obj)
    if depth == 2:
        return np.asarray(obj, dtype=float).astype(complex)
    if depth == 3:
        return np.asarray(
            [[decode_complex(v) for v in row] for row in obj], dtype=complex
        )
    raise ValueError("matrix JSON must nest 2 deep (real) or 3 deep ([re,im])")


def decode_vector(obj) -> np.ndarray:
    depth = _nesting_depth(obj)
    if depth == 1:
        return np.asarray(obj, dtype=float).astype(complex)
    if depth == 2:
        return np.asarray([decode_complex(v) for v in obj], dtype=complex)
    raise ValueError("vector JSON must nest 1 deep (real) or 2 deep ([re,im])")
