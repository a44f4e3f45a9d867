"""Reconstruction of the linear or antilinear map behind a ray-map oracle.

Given an oracle that maps rays to rays while preserving transition
probabilities, the construction transports the standard basis through the
oracle, fixes the one free global phase by pinning the image of the first
basis ray, recovers each remaining column's phase from the image of
e_1 + e_i, and classifies conjugation behaviour from the image of
e_1 + i*e_2.  The result is an isometry matrix plus an antilinearity flag,
unique up to the pinned global phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbiguousTau,
    DimensionMismatch,
    InconsistentTau,
    NonUnimodularK,
    NotProbabilityPreserving,
)
from .hilbert import DEFAULT_TOL, ToleranceConfig, as_vector, basis_vector, transition_probability
from .projective import PreservationReport, Ray, RayMapOracle, canonicalize

__all__ = [
    "SemilinearLift",
    "lift",
    "apply_lift",
    "verify_lift",
    "lift_query_vectors",
    "global_phase_alignment",
]

GLOBAL_PHASE_CONVENTION = "column 1 equals the canonical representative of the image of the first basis ray"

# Count of extra random full-support probes appended to the validation set.
_EXTRA_VALIDATION = 2


@dataclass(frozen=True, eq=False)
class SemilinearLift:
    """A reconstructed vector-space map: matrix plus conjugation flag.

    Applying the lift means matrix @ v when linear, matrix @ conj(v) when
    antilinear.  residual is the largest ray deviation (1 - P) observed while
    validating the construction; an accepted lift keeps it below eq_tol.
    """

    matrix: np.ndarray
    antilinear: bool
    residual: float
    global_phase_convention: str = GLOBAL_PHASE_CONVENTION

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]


def _validation_vectors(dim: int, seed: int) -> list[np.ndarray]:
    """Deterministic validation probes: one generic full-support vector, one
    vector with no component on the first basis element, plus extras."""
    rng = np.random.default_rng(seed)

    def generic(size: int) -> np.ndarray:
        z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        while np.min(np.abs(z)) < 1e-3:  # keep every component away from zero
            z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        return z

    probes = [generic(dim)]
    no_first = np.zeros(dim, dtype=np.complex128)
    no_first[1:] = generic(dim - 1)
    probes.append(no_first)
    for _ in range(_EXTRA_VALIDATION):
        probes.append(generic(dim))
    return probes


def lift_query_vectors(domain_dim: int, validation_seed: int = 0) -> list[np.ndarray]:
    """Every vector whose ray the lift will query, in query order.

    A tabulated oracle must answer exactly these rays: the standard basis,
    e_1 + e_i for i > 1, e_1 + i*e_j for j > 1, and the validation probes.
    """
    if domain_dim < 2:
        raise AmbiguousTau("lift queries are defined for domain dims >= 2")
    es = [basis_vector(domain_dim, i) for i in range(domain_dim)]
    queries = list(es)
    queries += [es[0] + es[i] for i in range(1, domain_dim)]
    queries += [es[0] + 1j * es[j] for j in range(1, domain_dim)]
    queries += _validation_vectors(domain_dim, validation_seed)
    return queries


def _image(oracle: RayMapOracle, x: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    return oracle.apply(canonicalize(x, tol)).rep


def lift(oracle: RayMapOracle, domain_dim: int, codomain_dim: int,
         tol: ToleranceConfig = DEFAULT_TOL, validation_seed: int = 0) -> SemilinearLift:
    """Reconstruct the unique (up to global phase) semilinear map behind an oracle.

    Raises NotProbabilityPreserving when transported basis images are not
    orthonormal or an image leaves its transported plane, NonUnimodularK when
    the phase-fixing coefficient is not unimodular, InconsistentTau when the
    conjugation classification disagrees between directions or validation
    fails, and AmbiguousTau for one-dimensional domains where linear and
    antilinear maps coincide on rays.
    """
    if domain_dim == 1:
        raise AmbiguousTau("dim-1 ray maps cannot distinguish linear from antilinear")
    if domain_dim < 1:
        raise DimensionMismatch("domain_dim must be positive")
    if domain_dim != oracle.domain_dim or codomain_dim != oracle.codomain_dim:
        raise DimensionMismatch(
            f"declared dims ({domain_dim}, {codomain_dim}) disagree with oracle "
            f"({oracle.domain_dim}, {oracle.codomain_dim})"
        )
    n = domain_dim
    es = [basis_vector(n, i) for i in range(n)]
    residual = 0.0

    # Basis transport; orthonormality of the images re-checks the
    # probability-preservation precondition on basis pairs.
    u = [_image(oracle, es[i], tol) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            leak = transition_probability(u[i], u[j], tol)
            if leak >= tol.eq_tol:
                raise NotProbabilityPreserving(
                    f"images of basis rays e_{i + 1}, e_{j + 1} are not orthogonal "
                    f"(P = {leak:.3e})"
                )

    # Gauge fixing: pin the image of the first basis ray, then recover each
    # column phase from the image of e_1 + e_i, which must be v_1 + k u_i
    # with |k| = 1.
    v = [np.empty(0)] * n
    v[0] = u[0]
    for i in range(1, n):
        w = _image(oracle, es[0] + es[i], tol)
        c0 = np.vdot(v[0], w)
        ci = np.vdot(u[i], w)
        plane_leak = max(0.0, 1.0 - (abs(c0) ** 2 + abs(ci) ** 2))
        if plane_leak >= tol.eq_tol:
            raise NotProbabilityPreserving(
                f"image of e_1 + e_{i + 1} leaves the plane spanned by the basis "
                f"images (leak = {plane_leak:.3e})"
            )
        residual = max(residual, plane_leak)
        if abs(c0) ** 2 < tol.eq_tol:
            raise NotProbabilityPreserving(
                f"image of e_1 + e_{i + 1} is orthogonal to the image of e_1"
            )
        k = ci / c0
        if abs(abs(k) - 1.0) >= tol.eq_tol:
            raise NonUnimodularK(
                f"gauge coefficient for direction {i + 1} has |k| = {abs(k):.6g}"
            )
        v[i] = k * u[i]

    # Conjugation classification on the second direction, then consistency
    # across every remaining one: the image of e_1 + i*e_j must match
    # v_1 + i*v_j (identity) or v_1 - i*v_j (conjugation), the same branch
    # for all j.
    antilinear = None
    for j in range(1, n):
        w = oracle.apply(canonicalize(es[0] + 1j * es[j], tol))
        lin = canonicalize(v[0] + 1j * v[j], tol)
        anti = canonicalize(v[0] - 1j * v[j], tol)
        dev_lin = 1.0 - transition_probability(w.rep, lin.rep, tol)
        dev_anti = 1.0 - transition_probability(w.rep, anti.rep, tol)
        if dev_lin < tol.eq_tol and dev_lin <= dev_anti:
            branch = False
            residual = max(residual, dev_lin)
        elif dev_anti < tol.eq_tol:
            branch = True
            residual = max(residual, dev_anti)
        else:
            raise InconsistentTau(
                f"image of e_1 + i*e_{j + 1} matches neither conjugation branch "
                f"(deviations {dev_lin:.3e} / {dev_anti:.3e}); oracle is not colinear"
            )
        if antilinear is None:
            antilinear = branch
        elif branch != antilinear:
            raise InconsistentTau(
                f"direction {j + 1} classifies as "
                f"{'antilinear' if branch else 'linear'} but direction 2 as "
                f"{'antilinear' if antilinear else 'linear'}"
            )

    matrix = np.column_stack(v)
    matrix.setflags(write=False)
    result = SemilinearLift(matrix=matrix, antilinear=bool(antilinear), residual=residual)

    # Validate on probes the construction never used, including a vector with
    # no component on the first basis element (the pivot-free case).
    for x in _validation_vectors(n, validation_seed):
        expected = _image(oracle, x, tol)
        got = apply_lift(result, x)
        dev = 1.0 - transition_probability(got, expected, tol)
        residual = max(residual, dev)
        if dev >= tol.eq_tol:
            raise InconsistentTau(
                f"validation probe deviates from the oracle by 1 - P = {dev:.3e}; "
                f"oracle is not colinear"
            )
    return SemilinearLift(matrix=matrix, antilinear=bool(antilinear), residual=residual)


def apply_lift(l: SemilinearLift, v) -> np.ndarray:
    """Apply the reconstructed map to a vector."""
    v = as_vector(v)
    if v.shape[0] != l.domain_dim:
        raise DimensionMismatch(f"vector dim {v.shape[0]} vs lift domain {l.domain_dim}")
    return l.matrix @ (np.conj(v) if l.antilinear else v)


def verify_lift(l: SemilinearLift, oracle: RayMapOracle, trials: int, seed: int,
                tol: ToleranceConfig = DEFAULT_TOL) -> PreservationReport:
    """Check the lift against its oracle on random vectors.

    Per trial: (a) the lifted image must lie on the oracle's image ray, and
    (b) inner products must be preserved directly for a linear lift or in
    swapped order for an antilinear one.
    """
    if l.domain_dim != oracle.domain_dim or l.codomain_dim != oracle.codomain_dim:
        raise DimensionMismatch("lift and oracle dims disagree")
    rng = np.random.default_rng(seed)
    n = l.domain_dim
    worst = -1.0
    worst_pair: tuple[Ray, Ray] | None = None
    for _ in range(trials):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        lv = apply_lift(l, v)
        lw = apply_lift(l, w)
        ray_dev = 1.0 - transition_probability(lv, oracle.apply(canonicalize(v, tol)).rep, tol)
        if l.antilinear:
            ip_dev = abs(np.vdot(v, w) - np.vdot(lw, lv))
        else:
            ip_dev = abs(np.vdot(v, w) - np.vdot(lv, lw))
        dev = max(ray_dev, float(ip_dev))
        if dev > worst:
            worst = dev
            worst_pair = (canonicalize(v, tol), canonicalize(w, tol))
    return PreservationReport(
        samples=trials,
        max_abs_deviation=worst,
        passed=worst < tol.eq_tol,
        worst_pair=worst_pair,
    )


def global_phase_alignment(reference: np.ndarray, candidate: np.ndarray) -> tuple[complex, float]:
    """Unit phase aligning candidate to reference, and the residual after alignment.

    The phase is read off at the largest-modulus entry of the reference;
    returns (phase, max entrywise |candidate - phase * reference|).
    """
    ref = np.asarray(reference, dtype=np.complex128)
    cand = np.asarray(candidate, dtype=np.complex128)
    if ref.shape != cand.shape:
        raise DimensionMismatch(f"shapes differ: {ref.shape} vs {cand.shape}")
    idx = np.unravel_index(int(np.argmax(np.abs(ref))), ref.shape)
    z = cand[idx] / ref[idx]
    phase = z / abs(z) if abs(z) > 0 else 1.0 + 0.0j
    deviation = float(np.max(np.abs(cand - phase * ref)))
    return complex(phase), deviation
