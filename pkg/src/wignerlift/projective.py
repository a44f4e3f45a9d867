"""Canonical rays and ray-to-ray map oracles.

A ray is the equivalence class of a nonzero vector under multiplication by
nonzero complex scalars.  The canonical representative fixes the gauge: unit
norm, and the first component whose modulus exceeds eq_tol made real and
strictly positive.  That makes ray equality, serialization and the lift
construction deterministic.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotInTable, ZeroVector
from .hilbert import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    as_vector,
    basis_vector,
    random_state,
    transition_probability,
)

__all__ = [
    "Ray",
    "canonicalize",
    "ray_equal",
    "RayMapOracle",
    "MatrixOracle",
    "TabulatedOracle",
    "CallableOracle",
    "apply_oracle",
    "PreservationReport",
    "structured_pairs",
    "check_probability_preservation",
]


@dataclass(frozen=True, eq=False)
class Ray:
    """Canonical representative of a projective point."""

    rep: np.ndarray

    @property
    def dim(self) -> int:
        return self.rep.shape[0]

    def __repr__(self) -> str:  # keep test output readable
        return f"Ray({np.array2string(self.rep, precision=6, suppress_small=True)})"


def canonicalize(v, tol: ToleranceConfig = DEFAULT_TOL) -> Ray:
    """Canonical ray representative of a nonzero vector.

    Normalizes, then rotates the global phase so the pivot component (the
    first one with modulus above eq_tol) is real and positive.  Idempotent up
    to one-ulp renormalization noise.
    """
    v = as_vector(v)
    n = float(np.linalg.norm(v))
    if n < tol.eq_tol:
        raise ZeroVector("cannot canonicalize a (near-)zero vector")
    u = v / n
    pivot = None
    for i in range(u.shape[0]):
        if abs(u[i]) > tol.eq_tol:
            pivot = i
            break
    if pivot is None:  # unreachable for unit vectors at sane dims; be safe
        pivot = int(np.argmax(np.abs(u)))
    phase = u[pivot] / abs(u[pivot])
    u = u * np.conj(phase)
    u = u / np.linalg.norm(u)
    u.setflags(write=False)
    return Ray(rep=u)


def ray_equal(r: Ray, s: Ray, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Projective equality: 1 - P(r, s) < eq_tol."""
    if r.dim != s.dim:
        raise DimensionMismatch(f"ray dims differ: {r.dim} vs {s.dim}")
    return 1.0 - transition_probability(r.rep, s.rep, tol) < tol.eq_tol


class RayMapOracle(ABC):
    """A queryable map from rays of one space to rays of another."""

    domain_dim: int
    codomain_dim: int

    @abstractmethod
    def apply(self, r: Ray) -> Ray:
        """Image ray of r; raises on inputs the oracle cannot answer."""

    def _check_input(self, r: Ray) -> None:
        if r.dim != self.domain_dim:
            raise DimensionMismatch(
                f"oracle domain dim {self.domain_dim}, got ray of dim {r.dim}"
            )


class MatrixOracle(RayMapOracle):
    """Ray map induced by a full-column-rank matrix, optionally precomposed
    with componentwise conjugation of the representative."""

    def __init__(self, matrix, conjugate_input: bool = False,
                 tol: ToleranceConfig = DEFAULT_TOL):
        m = as_matrix(matrix)
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] <= tol.rank_tol * sv[0]:
            raise ValueError("matrix inducing a ray map must have full column rank")
        self.matrix = m
        self.conjugate_input = bool(conjugate_input)
        self.domain_dim = m.shape[1]
        self.codomain_dim = m.shape[0]
        self._tol = tol

    def apply(self, r: Ray) -> Ray:
        self._check_input(r)
        x = np.conj(r.rep) if self.conjugate_input else r.rep
        return canonicalize(self.matrix @ x, self._tol)


class TabulatedOracle(RayMapOracle):
    """Ray map defined only on an explicit list of (input, output) rays."""

    def __init__(self, domain_dim: int, codomain_dim: int,
                 pairs: Sequence[tuple], tol: ToleranceConfig = DEFAULT_TOL):
        self.domain_dim = int(domain_dim)
        self.codomain_dim = int(codomain_dim)
        self._tol = tol
        table: list[tuple[Ray, Ray]] = []
        for vin, vout in pairs:
            rin = vin if isinstance(vin, Ray) else canonicalize(vin, tol)
            rout = vout if isinstance(vout, Ray) else canonicalize(vout, tol)
            if rin.dim != self.domain_dim or rout.dim != self.codomain_dim:
                raise DimensionMismatch("table entry dims disagree with declared dims")
            for prev, _ in table:
                if ray_equal(prev, rin, tol):
                    raise ValueError("tabulated domain rays must be pairwise distinct")
            table.append((rin, rout))
        self._table = table

    def apply(self, r: Ray) -> Ray:
        self._check_input(r)
        for rin, rout in self._table:
            if ray_equal(rin, r, self._tol):
                return rout
        raise NotInTable(f"no table entry matches {r!r}")


class CallableOracle(RayMapOracle):
    """Ray map backed by an arbitrary vector-to-vector function.

    The function maps a canonical representative to any representative of the
    image ray; the result is canonicalized, so phase or modulus injected by
    the callable is absorbed.  Used for negative controls (e.g. a constant
    map) and gauge-independence checks, which the matrix and table kinds
    cannot express.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray],
                 domain_dim: int, codomain_dim: int,
                 tol: ToleranceConfig = DEFAULT_TOL):
        self._fn = fn
        self.domain_dim = int(domain_dim)
        self.codomain_dim = int(codomain_dim)
        self._tol = tol

    def apply(self, r: Ray) -> Ray:
        self._check_input(r)
        return canonicalize(as_vector(self._fn(r.rep)), self._tol)


def apply_oracle(oracle: RayMapOracle, r: Ray) -> Ray:
    return oracle.apply(r)


@dataclass(frozen=True, eq=False)
class PreservationReport:
    """Outcome of a transition-probability preservation check."""

    samples: int
    max_abs_deviation: float
    passed: bool
    worst_pair: tuple[Ray, Ray]


def structured_pairs(dim: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """The pair set the lift construction leans on: all (e_i, e_j) plus all
    (e_i, e_i + e_j) for i != j."""
    es = [basis_vector(dim, i) for i in range(dim)]
    pairs = [(es[i], es[j]) for i in range(dim) for j in range(dim)]
    pairs += [(es[i], es[i] + es[j]) for i in range(dim) for j in range(dim) if i != j]
    return pairs


def check_probability_preservation(oracle: RayMapOracle, dim: int, trials: int,
                                   seed: int,
                                   tol: ToleranceConfig = DEFAULT_TOL) -> PreservationReport:
    """Measure max |P(v, w) - P(M(v), M(w))| over structured plus random pairs.

    Structured pairs are exactly the ones the lift construction relies on, so
    a failure here points at where a lift would break.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if dim != oracle.domain_dim:
        raise DimensionMismatch(f"dim {dim} vs oracle domain dim {oracle.domain_dim}")
    rng = np.random.default_rng(seed)
    pairs = structured_pairs(dim)
    for _ in range(trials):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        w = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        pairs.append((v, w))
    worst = 0.0
    worst_pair = None
    for v, w in pairs:
        rv = canonicalize(v, tol)
        rw = canonicalize(w, tol)
        p_src = transition_probability(rv.rep, rw.rep, tol)
        p_img = transition_probability(oracle.apply(rv).rep, oracle.apply(rw).rep, tol)
        dev = abs(p_src - p_img)
        if worst_pair is None or dev > worst:
            worst = dev
            worst_pair = (rv, rw)
    return PreservationReport(
        samples=len(pairs),
        max_abs_deviation=worst,
        passed=worst < tol.eq_tol,
        worst_pair=worst_pair,
    )


def random_ray(dim: int, seed: int, tol: ToleranceConfig = DEFAULT_TOL) -> Ray:
    """Uniformly random ray, deterministic per (dim, seed)."""
    return canonicalize(random_state(dim, seed), tol)
