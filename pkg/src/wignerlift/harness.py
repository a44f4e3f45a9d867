"""Proposition registry, randomized trial driver and negative-control injection.

Each proposition is a named executable check over seeded random instances.
Instance seeds derive from hash(master seed, proposition id, trial index),
so adding or reordering propositions never perturbs the instances of the
others.  Reports are plain dicts ready for JSON and are byte-identical
across runs of the same plan except for elapsed-time fields.

Per-proposition dimension handling: single-space propositions read the
plan's dims directly (clamped to 8 for the lift), composite-space
propositions pair them up (each side clamped to 6, keeping products <= 36).
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import __version__
from .errors import (
    AmbiguousTau,
    InconsistentTau,
    InvalidPlan,
    NonUnimodularK,
    PreconditionFailed,
    UnknownProposition,
    WignerliftError,
)
from .hilbert import DEFAULT_TOL, ToleranceConfig, basis_vector, random_unitary
from .lift import global_phase_alignment, lift
from .projective import (
    CallableOracle,
    MatrixOracle,
    TabulatedOracle,
    check_probability_preservation,
)
from .hilbert import transition_probability
from .tensor import (
    BilinearComposition,
    CompositionOracle,
    FrozenArgumentOracle,
    canonical_tensor,
    check_bilinearity,
    check_composite_independence,
    check_probability_product,
    check_span_surjectivity,
    check_totality,
    construct_isomorphism,
    evaluate,
    map_basis,
    rotated_tensor,
)

__all__ = [
    "PropositionId",
    "TrialPlan",
    "derive_seed",
    "run_proposition",
    "run_suite",
    "report_to_text",
    "strip_timing",
    "NEGATIVE_CONTROL_GENERATORS",
]


class PropositionId(str, Enum):
    S1 = "S1-single-born"
    S2 = "S2-span-surjectivity"
    S3 = "S3-totality"
    S5 = "S5-statistical-independence"
    S6 = "S6-ftpg-lift"
    S7 = "S7-bilinearity"
    S8 = "S8-basis-carryover"
    T1 = "T1-composite-theorem"
    ADD1 = "ADD1-measurement-independence"
    EQ3 = "EQ3-probability-preservation"


ALL_PROPOSITIONS = tuple(p.value for p in PropositionId)

LIFT_DIM_CAP = 8       # largest single dim the lift proposition runs at
COMPOSITE_DIM_CAP = 6  # per-side cap for composite propositions (product <= 36)


@dataclass(frozen=True)
class TrialPlan:
    """What to run: propositions, dimensions, trial count, seed, tolerances."""

    props: tuple[str, ...] = ALL_PROPOSITIONS
    dims: tuple[int, ...] = (2, 3, 4)
    trials: int = 50
    seed: int = 42
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    negative_controls: bool = False


def validate_plan(plan: TrialPlan) -> None:
    if not plan.props:
        raise InvalidPlan("no propositions selected")
    for p in plan.props:
        if p not in ALL_PROPOSITIONS:
            raise InvalidPlan(f"unknown proposition id: {p!r}")
    if plan.trials < 1:
        raise InvalidPlan("trials must be >= 1")
    if not plan.dims:
        raise InvalidPlan("no dimensions selected")
    for d in plan.dims:
        if not 2 <= d <= 16:
            raise InvalidPlan(f"dim {d} outside the supported range 2..16")


def derive_seed(master: int, proposition: str, index: int) -> int:
    """Stable 64-bit instance seed from (master seed, proposition, trial index)."""
    digest = hashlib.blake2b(f"{master}:{proposition}:{index}".encode(),
                             digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _single_dims(plan: TrialPlan, cap: int = LIFT_DIM_CAP) -> list[int]:
    return sorted({min(d, cap) for d in plan.dims})


def _dim_pairs(plan: TrialPlan) -> list[tuple[int, int]]:
    ds = sorted({min(d, COMPOSITE_DIM_CAP) for d in plan.dims})
    return [(a, b) for i, a in enumerate(ds) for b in ds[i:]]


@dataclass
class _Fragment:
    id: str
    passed: bool = True
    trials: int = 0
    max_residual: float = 0.0
    worst_seed: int = 0
    detail: str = ""

    def record(self, residual: float, seed: int, note: str = "", ok: bool = True) -> None:
        self.trials += 1
        if residual > self.max_residual:
            self.max_residual = residual
            self.worst_seed = seed
        if not ok:
            self.passed = False
            if note and not self.detail:
                self.detail = note

    def as_dict(self, elapsed: float) -> dict:
        return {
            "id": self.id,
            "passed": self.passed,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "worst_seed": self.worst_seed,
            "detail": self.detail,
            "elapsed_s": elapsed,
        }


def _unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def _born_marginal_deviation(m: BilinearComposition, rng: np.random.Generator,
                             tol: ToleranceConfig) -> float:
    """Deviation between the composite-space Born marginal for one subsystem
    and that subsystem's own transition probability.

    The marginal sums the degenerate outcomes m(a1, f_j) over a basis {f_j}
    of the other factor; for an honest composition this collapses to
    P(a1, a2)."""
    a1, a2 = _unit(rng, m.dim_a), _unit(rng, m.dim_a)
    b = _unit(rng, m.dim_b)
    prepared = evaluate(m, a2, b)
    marginal = sum(
        transition_probability(evaluate(m, a1, basis_vector(m.dim_b, j)), prepared, tol)
        for j in range(m.dim_b)
    )
    return abs(marginal - transition_probability(a1, a2, tol))


# --- proposition runners -----------------------------------------------------

def _run_s1(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S1.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            dev = _born_marginal_deviation(m, np.random.default_rng(s), tol)
            frag.record(dev, s, f"marginal deviates at dims ({da},{db})",
                        ok=dev < tol.eq_tol)
    return frag


def _run_s2(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S2.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            rep = check_span_surjectivity(m, tol)
            frag.record(float(rep.required_rank - rep.rank), s,
                        f"rank {rep.rank} < {rep.required_rank} at dims ({da},{db})",
                        ok=rep.passed)
    return frag


def _run_s3(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S3.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            rep = check_totality(m, trials=5, seed=derive_seed(s, "pairs", 0), tol=tol)
            frag.record(max(0.0, tol.rank_tol - rep.min_norm), s,
                        f"annihilated pair {rep.worst_pair} at dims ({da},{db})",
                        ok=rep.passed)
    return frag


def _run_s5(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S5.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            rep = check_probability_product(m, trials=5,
                                            seed=derive_seed(s, "triples", 0), tol=tol)
            frag.record(rep.residual, s,
                        f"{rep.detail} at dims ({da},{db})", ok=rep.passed)
    return frag


def _run_s6(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S6.value)
    tol = plan.tolerances
    idx = 0
    for d in _single_dims(plan):
        for t in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            conjugated = t % 2 == 1  # alternate linear / antilinear instances
            u = random_unitary(d, s)
            oracle = MatrixOracle(u, conjugate_input=conjugated, tol=tol)
            try:
                result = lift(oracle, d, d, tol=tol)
            except WignerliftError as exc:
                frag.record(1.0, s, f"lift raised {type(exc).__name__} at dim {d}",
                            ok=False)
                continue
            _, dev = global_phase_alignment(u, result.matrix)
            ok = result.antilinear == conjugated and dev < tol.eq_tol
            note = (f"misclassified conjugation at dim {d}"
                    if result.antilinear != conjugated
                    else f"lift deviates from generator at dim {d}")
            frag.record(max(dev, result.residual), s, note, ok=ok)
    return frag


def _run_s7(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S7.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            rng = np.random.default_rng(s)
            coeffs = rng.standard_normal((da * db, da, db)) \
                + 1j * rng.standard_normal((da * db, da, db))
            oracle = CompositionOracle.from_composition(
                BilinearComposition(da, db, da * db, coeffs))
            rep = check_bilinearity(oracle, trials=5,
                                    seed=derive_seed(s, "probes", 0), tol=tol)
            frag.record(rep.residual, s,
                        f"{rep.detail} at dims ({da},{db})", ok=rep.passed)
    return frag


def _run_s8(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.S8.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            rep = map_basis(m, tol)
            frag.record(rep.gram_deviation, s,
                        f"basis images not orthonormal at dims ({da},{db})",
                        ok=rep.passed)
    return frag


def _run_t1(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.T1.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            u = random_unitary(da * db, s)
            m = rotated_tensor(da, db, u)
            try:
                res = construct_isomorphism(m, tol=tol, trials=10,
                                            seed=derive_seed(s, "fact", 0))
            except WignerliftError as exc:
                frag.record(1.0, s,
                            f"isomorphism rejected: {type(exc).__name__} at "
                            f"dims ({da},{db})", ok=False)
                continue
            generator_dev = float(np.max(np.abs(res.iso - u)))
            rng = np.random.default_rng(derive_seed(s, "roundtrip", 0))
            roundtrip = 0.0
            for _ in range(5):
                a, b = _unit(rng, da), _unit(rng, db)
                roundtrip = max(roundtrip, float(np.linalg.norm(
                    res.iso.conj().T @ evaluate(m, a, b) - np.kron(a, b))))
            worst = max(res.unitarity_residual, res.factorization_residual,
                        generator_dev, roundtrip)
            frag.record(worst, s, f"isomorphism residuals at dims ({da},{db})",
                        ok=worst < tol.eq_tol)
    return frag


def _run_add1(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.ADD1.value)
    tol = plan.tolerances
    for i, (da, db) in enumerate(_dim_pairs(plan)):
        s = derive_seed(plan.seed, frag.id, i)
        rep = check_composite_independence(da, db, trials=plan.trials, seed=s, tol=tol)
        frag.record(rep.residual, s, f"{rep.detail} at dims ({da},{db})",
                    ok=rep.passed)
        frag.trials += rep.samples - 1  # count triples, not calls
    return frag


def _run_eq3(plan: TrialPlan) -> _Fragment:
    frag = _Fragment(PropositionId.EQ3.value)
    tol = plan.tolerances
    idx = 0
    for da, db in _dim_pairs(plan):
        for _ in range(plan.trials):
            s = derive_seed(plan.seed, frag.id, idx)
            idx += 1
            m = rotated_tensor(da, db, random_unitary(da * db, s))
            rng = np.random.default_rng(derive_seed(s, "frozen", 0))
            for side, dim in (("b", da), ("a", db)):
                frozen = _unit(rng, db if side == "b" else da)
                oracle = FrozenArgumentOracle(m, side, frozen, tol=tol)
                rep = check_probability_preservation(
                    oracle, dim, trials=3, seed=derive_seed(s, side, 0), tol=tol)
                frag.record(rep.max_abs_deviation, s,
                            f"frozen-{side} map not preserving at dims ({da},{db})",
                            ok=rep.passed)
    return frag


_RUNNERS = {
    PropositionId.S1.value: _run_s1,
    PropositionId.S2.value: _run_s2,
    PropositionId.S3.value: _run_s3,
    PropositionId.S5.value: _run_s5,
    PropositionId.S6.value: _run_s6,
    PropositionId.S7.value: _run_s7,
    PropositionId.S8.value: _run_s8,
    PropositionId.T1.value: _run_t1,
    PropositionId.ADD1.value: _run_add1,
    PropositionId.EQ3.value: _run_eq3,
}


# --- negative controls -------------------------------------------------------

def _normalized_columns(rng: np.random.Generator, dim: int) -> np.ndarray:
    e = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return e / np.linalg.norm(e, axis=0, keepdims=True)


def _zeroed_slice_tensor() -> BilinearComposition:
    m = canonical_tensor(2, 3)
    coeffs = m.coeffs.copy()
    coeffs[:, 0, :] = 0.0
    return BilinearComposition(2, 3, 6, coeffs)


def _doubled_coefficient_tensor() -> BilinearComposition:
    m = canonical_tensor(2, 2)
    coeffs = m.coeffs.copy()
    coeffs[0, 0, 0] = 2.0
    return BilinearComposition(2, 2, 4, coeffs)


def _padded_codomain_tensor() -> BilinearComposition:
    m = canonical_tensor(2, 2)
    coeffs = np.zeros((5, 2, 2), dtype=np.complex128)
    coeffs[:4] = m.coeffs
    return BilinearComposition(2, 2, 5, coeffs)


def _control_constant_ray_map(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    dim = 3
    target = basis_vector(dim, 0)
    oracle = CallableOracle(lambda _: target, dim, dim, tol=tol)
    rep = check_probability_preservation(
        oracle, dim, trials=3, seed=derive_seed(plan.seed, "ctl:constant", 0), tol=tol)
    detected = not rep.passed and rep.max_abs_deviation > 0.99
    return detected, f"preservation FAIL deviation={rep.max_abs_deviation:.3g}"


def _control_perturbed_unitary_eq3(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    s = derive_seed(plan.seed, "ctl:perturbed", 0)
    rng = np.random.default_rng(s)
    dim = 4
    matrix = random_unitary(dim, s) + 0.01 * _normalized_columns(rng, dim)
    rep = check_probability_preservation(MatrixOracle(matrix, tol=tol), dim,
                                         trials=5, seed=derive_seed(s, "pairs", 0),
                                         tol=tol)
    detected = not rep.passed and rep.max_abs_deviation > 1e-4
    return detected, f"preservation FAIL deviation={rep.max_abs_deviation:.3g}"


def _control_perturbed_unitary_s5(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    s = derive_seed(plan.seed, "ctl:perturbed-s5", 0)
    rng = np.random.default_rng(s)
    near = random_unitary(6, s) + 0.01 * _normalized_columns(rng, 6)
    m = BilinearComposition(2, 3, 6, near.reshape(6, 2, 3).copy())
    rep = check_probability_product(m, trials=10, seed=derive_seed(s, "triples", 0),
                                    tol=tol)
    detected = not rep.passed and rep.residual > 1e-4
    return detected, f"probability-product FAIL residual={rep.residual:.3g}"


def _control_zeroed_slice(plan: TrialPlan) -> tuple[bool, str]:
    rep = check_totality(_zeroed_slice_tensor(), trials=3,
                         seed=derive_seed(plan.seed, "ctl:slice", 0),
                         tol=plan.tolerances)
    detected = not rep.passed and rep.worst_pair == "(a_1, b_1)"
    return detected, f"totality FAIL at {rep.worst_pair}"


def _control_doubled_coefficient_s8(plan: TrialPlan) -> tuple[bool, str]:
    rep = map_basis(_doubled_coefficient_tensor(), plan.tolerances)
    detected = not rep.passed and abs(rep.gram_deviation - 3.0) < 1e-9
    return detected, f"basis Gram FAIL deviation={rep.gram_deviation:.3g}"


def _control_doubled_coefficient_s1(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    rng = np.random.default_rng(derive_seed(plan.seed, "ctl:doubled-s1", 0))
    m = _doubled_coefficient_tensor()
    dev = max(_born_marginal_deviation(m, rng, tol) for _ in range(10))
    return dev >= tol.eq_tol, f"Born marginal FAIL deviation={dev:.3g}"


def _control_doubled_coefficient_add1(plan: TrialPlan) -> tuple[bool, str]:
    rep = check_composite_independence(
        2, 2, trials=20, seed=derive_seed(plan.seed, "ctl:doubled-add1", 0),
        tol=plan.tolerances, composition=_doubled_coefficient_tensor())
    return not rep.passed, f"independence FAIL residual={rep.residual:.3g}"


def _control_padded_codomain_s2(plan: TrialPlan) -> tuple[bool, str]:
    rep = check_span_surjectivity(_padded_codomain_tensor(), plan.tolerances)
    detected = not rep.passed and rep.rank == 4 and rep.required_rank == 5
    return detected, f"span FAIL rank {rep.rank} < {rep.required_rank}"


def _control_padded_codomain_t1(plan: TrialPlan) -> tuple[bool, str]:
    try:
        construct_isomorphism(_padded_codomain_tensor(), tol=plan.tolerances,
                              trials=3, seed=derive_seed(plan.seed, "ctl:padded", 0))
    except PreconditionFailed as exc:
        ok = exc.condition == "H3-span-surjectivity"
        return ok, f"PreconditionFailed({exc.condition})"
    return False, "isomorphism was not rejected"


def _control_non_homogeneous(plan: TrialPlan) -> tuple[bool, str]:
    oracle = CompositionOracle(
        fn=lambda a, b: np.linalg.norm(a) * np.kron(a, b),
        dim_a=2, dim_b=2, dim_c=4)
    rep = check_bilinearity(oracle, trials=10,
                            seed=derive_seed(plan.seed, "ctl:nonhom", 0),
                            tol=plan.tolerances)
    return not rep.passed, f"bilinearity FAIL residual={rep.residual:.3g}"


def _control_noisy_bilinear(plan: TrialPlan) -> tuple[bool, str]:
    s = derive_seed(plan.seed, "ctl:noisy", 0)
    rng = np.random.default_rng(s)

    def noisy(a, b):
        out = np.kron(a, b)
        return out + 1e-6 * (rng.standard_normal(out.shape)
                             + 1j * rng.standard_normal(out.shape))

    oracle = CompositionOracle(fn=noisy, dim_a=2, dim_b=2, dim_c=4)
    strict = check_bilinearity(oracle, trials=10, seed=derive_seed(s, "p", 0),
                               tol=plan.tolerances)
    loose = check_bilinearity(oracle, trials=10, seed=derive_seed(s, "p", 1),
                              tol=ToleranceConfig(eq_tol=1e-4,
                                                  rank_tol=plan.tolerances.rank_tol))
    detected = not strict.passed and loose.passed
    return detected, (f"bilinearity FAIL at eq_tol={plan.tolerances.eq_tol:g} "
                      f"(residual={strict.residual:.3g}), PASS at 1e-4")


def _control_dim1_ambiguity(plan: TrialPlan) -> tuple[bool, str]:
    oracle = MatrixOracle(np.eye(1), tol=plan.tolerances)
    try:
        lift(oracle, 1, 1, tol=plan.tolerances)
    except AmbiguousTau:
        return True, "AmbiguousTau"
    except WignerliftError as exc:
        return False, f"wrong rejection {type(exc).__name__}"
    return False, "dim-1 lift was not rejected"


def _tabulated_from_pairs(dim: int, pairs, tol: ToleranceConfig) -> TabulatedOracle:
    return TabulatedOracle(dim, dim, pairs, tol=tol)


def _control_inconsistent_tau(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    e = [basis_vector(3, i) for i in range(3)]
    pairs = [(e[i], e[i]) for i in range(3)]
    pairs += [(e[0] + e[1], e[0] + e[1]), (e[0] + e[2], e[0] + e[2])]
    pairs += [(e[0] + 1j * e[1], e[0] + 1j * e[1]),       # identity branch here
              (e[0] + 1j * e[2], e[0] - 1j * e[2])]       # conjugated branch there
    oracle = _tabulated_from_pairs(3, pairs, tol)
    try:
        lift(oracle, 3, 3, tol=tol)
    except InconsistentTau:
        return True, "InconsistentTau"
    except WignerliftError as exc:
        return False, f"wrong rejection {type(exc).__name__}"
    return False, "inconsistent table was not rejected"


def _control_non_unimodular_k(plan: TrialPlan) -> tuple[bool, str]:
    tol = plan.tolerances
    e = [basis_vector(2, i) for i in range(2)]
    pairs = [(e[0], e[0]), (e[1], e[1]),
             (e[0] + e[1], e[0] + 2.0 * e[1])]  # forces |k| = 2
    oracle = _tabulated_from_pairs(2, pairs, tol)
    try:
        lift(oracle, 2, 2, tol=tol)
    except NonUnimodularK:
        return True, "NonUnimodularK"
    except WignerliftError as exc:
        return False, f"wrong rejection {type(exc).__name__}"
    return False, "non-unimodular table was not rejected"


# (generator name, proposition it is injected into, runner)
_CONTROLS = (
    ("constant-ray-map", PropositionId.EQ3.value, _control_constant_ray_map),
    ("perturbed-unitary-1e-2", PropositionId.EQ3.value, _control_perturbed_unitary_eq3),
    ("perturbed-unitary-1e-2", PropositionId.S5.value, _control_perturbed_unitary_s5),
    ("zeroed-tensor-slice", PropositionId.S3.value, _control_zeroed_slice),
    ("doubled-coefficient", PropositionId.S8.value, _control_doubled_coefficient_s8),
    ("doubled-coefficient", PropositionId.S1.value, _control_doubled_coefficient_s1),
    ("doubled-coefficient", PropositionId.ADD1.value, _control_doubled_coefficient_add1),
    ("zero-padded-codomain", PropositionId.S2.value, _control_padded_codomain_s2),
    ("zero-padded-codomain", PropositionId.T1.value, _control_padded_codomain_t1),
    ("non-homogeneous-oracle", PropositionId.S7.value, _control_non_homogeneous),
    ("noisy-bilinear-oracle", PropositionId.S7.value, _control_noisy_bilinear),
    ("dim-1-tau-ambiguity", PropositionId.S6.value, _control_dim1_ambiguity),
    ("inconsistent-tau-table", PropositionId.S6.value, _control_inconsistent_tau),
    ("non-unimodular-k-table", PropositionId.S6.value, _control_non_unimodular_k),
)

NEGATIVE_CONTROL_GENERATORS = tuple(sorted({name for name, _, _ in _CONTROLS}))


def _run_controls(plan: TrialPlan) -> list[dict]:
    results = []
    for name, prop, runner in _CONTROLS:
        if prop not in plan.props:
            continue
        detected, condition = runner(plan)
        results.append({"generator": name, "proposition": prop,
                        "detected": detected, "condition": condition})
    return results


# --- suite driver ------------------------------------------------------------

def run_proposition(prop_id: str, plan: TrialPlan) -> dict:
    """Run a single proposition and return its report fragment."""
    if prop_id not in _RUNNERS:
        raise UnknownProposition(f"no proposition named {prop_id!r}")
    validate_plan(plan)
    start = time.perf_counter()
    frag = _RUNNERS[prop_id](plan)
    return frag.as_dict(elapsed=time.perf_counter() - start)


def run_suite(plan: TrialPlan, workers: int = 1) -> dict:
    """Run every selected proposition (plus negative controls when asked)
    and assemble the full report.

    The report is deterministic for a fixed plan except for elapsed-time
    fields; propositions appear in registry order regardless of selection
    order or completion order.
    """
    validate_plan(plan)
    start = time.perf_counter()
    selected = [p for p in ALL_PROPOSITIONS if p in plan.props]

    def one(pid: str) -> dict:
        t0 = time.perf_counter()
        frag = _RUNNERS[pid](plan)
        return frag.as_dict(elapsed=time.perf_counter() - t0)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fragments = list(pool.map(one, selected))
    else:
        fragments = [one(pid) for pid in selected]

    controls = _run_controls(plan) if plan.negative_controls else []
    detected_names = {c["generator"] for c in controls if c["detected"]}
    expected_names = {name for name, prop, _ in _CONTROLS if prop in plan.props}

    passed = all(f["passed"] for f in fragments)
    if plan.negative_controls:
        passed = passed and all(c["detected"] for c in controls)

    report = {
        "schema": 1,
        "environment": {
            "package": "wignerlift",
            "version": __version__,
            "generator": "numpy-pcg64",
            "eq_tol": plan.tolerances.eq_tol,
            "rank_tol": plan.tolerances.rank_tol,
            "master_seed": plan.seed,
        },
        "plan": {
            "props": list(selected),
            "dims": list(plan.dims),
            "trials": plan.trials,
            "negative_controls": plan.negative_controls,
        },
        "propositions": fragments,
        "negative_controls": controls,
        "passed": passed,
        "elapsed_total_s": time.perf_counter() - start,
    }
    if plan.negative_controls:
        report["generators_detected"] = (
            f"{len(detected_names)}/{len(expected_names)}")
    return report


def strip_timing(report: dict) -> dict:
    """Copy of a report with elapsed-time fields removed (determinism surface)."""
    out = {k: v for k, v in report.items() if k != "elapsed_total_s"}
    out["propositions"] = [
        {k: v for k, v in frag.items() if k != "elapsed_s"}
        for frag in report["propositions"]
    ]
    return out


def report_to_text(report: dict) -> str:
    """Stable line-oriented rendering: one PROP line per proposition."""
    lines = []
    for frag in report["propositions"]:
        status = "PASS" if frag["passed"] else "FAIL"
        line = f"PROP {frag['id']} {status} residual={frag['max_residual']:.6e}"
        if frag["detail"] and not frag["passed"]:
            line += f" ({frag['detail']})"
        lines.append(line)
    for ctl in report.get("negative_controls", []):
        status = "DETECTED" if ctl["detected"] else "MISSED"
        lines.append(
            f"CONTROL {ctl['generator']} [{ctl['proposition']}] {status} "
            f"{ctl['condition']}")
    if "generators_detected" in report:
        lines.append(f"CONTROLS {report['generators_detected']} generators detected")
    lines.append(f"OVERALL {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"
