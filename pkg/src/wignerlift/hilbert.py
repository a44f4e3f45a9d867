"""Dense finite-dimensional complex Hilbert space primitives.

Vectors and matrices are numpy arrays of dtype complex128; every function
treats its inputs as immutable and returns fresh arrays.  Seeded randomness
goes through numpy's PCG64 bit generator (``numpy.random.default_rng``), so
any sampled instance is reproducible from its integer seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyInput, ZeroVector

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "Subspace",
    "as_vector",
    "as_matrix",
    "basis_vector",
    "inner_product",
    "norm",
    "transition_probability",
    "span",
    "subspace_contains",
    "random_state",
    "random_unitary",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used throughout the package.

    eq_tol bounds equality residuals (probabilities, inner products, ray
    deviations); rank_tol drives rank decisions relative to the largest
    singular value or input norm.
    """

    eq_tol: float = 1e-9
    rank_tol: float = 1e-8

    def __post_init__(self):
        if not 0.0 < self.eq_tol < 1.0:
            raise ValueError("eq_tol must lie strictly between 0 and 1")
        if self.rank_tol <= 0.0:
            raise ValueError("rank_tol must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def as_vector(x) -> np.ndarray:
    """Coerce to a 1-d complex128 array."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionMismatch(f"expected a nonempty 1-d vector, got shape {v.shape}")
    return v


def as_matrix(x) -> np.ndarray:
    """Coerce to a 2-d complex128 array."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2 or min(m.shape) < 1:
        raise DimensionMismatch(f"expected a nonempty 2-d matrix, got shape {m.shape}")
    return m


def basis_vector(dim: int, index: int) -> np.ndarray:
    """Standard basis vector e_index (0-indexed) in dimension dim."""
    if not 0 <= index < dim:
        raise DimensionMismatch(f"basis index {index} out of range for dim {dim}")
    e = np.zeros(dim, dtype=np.complex128)
    e[index] = 1.0
    return e


def _check_same_dim(v: np.ndarray, w: np.ndarray) -> None:
    if v.shape[0] != w.shape[0]:
        raise DimensionMismatch(f"dimensions differ: {v.shape[0]} vs {w.shape[0]}")


def inner_product(v, w) -> complex:
    """Hermitian inner product <v|w>, conjugate linear in the first argument."""
    v = as_vector(v)
    w = as_vector(w)
    _check_same_dim(v, w)
    return complex(np.vdot(v, w))


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def transition_probability(v, w, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Born-rule probability |<v|w>|^2 / (<v|v><w|w>), a function of the rays.

    Symmetric under swapping the arguments and invariant under nonzero
    complex rescaling of either one.  The numerator uses re^2 + im^2 of a
    single vdot, and the denominator a commutative product of squared norms,
    so the swapped call performs the same float operations and returns the
    identical value.
    """
    v = as_vector(v)
    w = as_vector(w)
    _check_same_dim(v, w)
    nv = float(np.real(np.vdot(v, v)))
    nw = float(np.real(np.vdot(w, w)))
    if nv < tol.eq_tol**2 or nw < tol.eq_tol**2:
        raise ZeroVector("transition probability needs two nonzero vectors")
    amp = np.vdot(v, w)
    return float((amp.real * amp.real + amp.imag * amp.imag) / (nv * nw))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace held as an orthonormal column frame."""

    ambient_dim: int
    frame: np.ndarray  # ambient_dim x dim, orthonormal columns

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T


def span(vectors, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the linear span of the given vectors.

    Uses modified Gram-Schmidt with one reorthogonalization sweep; an input
    whose residual after projection falls below rank_tol times the largest
    input norm is treated as linearly dependent and dropped.
    """
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise EmptyInput("span of an empty list is undefined")
    dim = vecs[0].shape[0]
    for v in vecs[1:]:
        _check_same_dim(vecs[0], v)
    scale = max(float(np.linalg.norm(v)) for v in vecs)
    drop_below = tol.rank_tol * max(scale, tol.rank_tol)
    columns: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):  # MGS sweep plus one reorthogonalization
            for q in columns:
                w = w - q * np.vdot(q, w)
        r = float(np.linalg.norm(w))
        if r > drop_below:
            columns.append(w / r)
    if columns:
        frame = np.column_stack(columns)
    else:
        frame = np.zeros((dim, 0), dtype=np.complex128)
    return Subspace(ambient_dim=dim, frame=frame)


def subspace_contains(s: Subspace, v, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether v lies in the subspace, up to a relative residual of eq_tol."""
    v = as_vector(v)
    if v.shape[0] != s.ambient_dim:
        raise DimensionMismatch(f"vector dim {v.shape[0]} vs ambient dim {s.ambient_dim}")
    nv = float(np.linalg.norm(v))
    if nv < tol.eq_tol:
        raise ZeroVector("membership test needs a nonzero vector")
    residual = v - s.frame @ (s.frame.conj().T @ v)
    return float(np.linalg.norm(residual)) / nv < tol.eq_tol


def random_state(dim: int, seed: int) -> np.ndarray:
    """Unit vector with iid complex-Gaussian components, deterministic per (dim, seed).

    The distribution is unitarily invariant, so these are uniform states on
    the sphere.
    """
    if dim < 1:
        raise DimensionMismatch("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary, deterministic per (dim, seed).

    QR of a complex Ginibre matrix, with the R diagonal's phases folded into
    Q so the distribution is exactly Haar rather than QR-convention biased.
    """
    if dim < 1:
        raise DimensionMismatch("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return q
