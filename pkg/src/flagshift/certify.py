"""Certification of rank, involutivity and completeness claims.

Every certificate is measured at seeded generic points.  Genericity is
gated before any rank is trusted: each factor block must be regular, the
simultaneous centralizer of the blocks must vanish, and every singular
value spectrum involved must clear the rank cutoff by the policy margin.
Points failing a gate are resampled with a fresh derived seed, up to the
policy retry budget; trials that disagree after resampling fail the
certificate loudly instead of being averaged away.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import dynamics
from .algebra import LieAlgebra
from .errors import ConfigurationError, GenericityError
from .families import (
    PolynomialFamily,
    flag_momentum_family,
    flag_shift_family,
    gaudin_family,
    generic_shift,
    restrict_family,
)
from .poisson import (
    bivector_on_span,
    invariant_tangent_span,
    tangent_span_orthocomplement,
)
from .product import ProductSpace
from .ranks import DEFAULT_POLICY, RankPolicy, numerical_rank, row_space
from scipy.linalg import subspace_angles

__all__ = [
    "Tolerances",
    "CertificateReport",
    "generic_point",
    "estimate_ddim",
    "estimate_dind",
    "check_involutive",
    "check_ad_invariance",
    "verify_lemma1",
    "verify_completeness",
    "verify_span_inclusion",
    "ClaimContext",
    "CLAIM_IDS",
    "describe_claims",
    "run_claims",
    "lemma1_targets",
    "flag_rank_target",
    "restricted_rank_target",
    "completeness_target",
]


@dataclass(frozen=True)
class Tolerances:
    rank_rel: float = 1e-8
    bracket_rel: float = 1e-9
    drift: float = 1e-7


@dataclass(frozen=True)
class CertificateReport:
    """One measured claim with its target, tolerance and per-trial witnesses."""

    claim_id: str
    algebra: str
    n: int
    seed: int
    trials: int
    formula_value: float
    measured_value: float
    tolerance: float
    passed: bool
    witnesses: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "algebra": self.algebra,
            "n": self.n,
            "seed": self.seed,
            "trials": self.trials,
            "formula_value": self.formula_value,
            "measured_value": self.measured_value,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "witnesses": list(self.witnesses),
        }


# -- closed-form targets -------------------------------------------------------


def lemma1_targets(space: ProductSpace) -> tuple[int, int]:
    """(differential dimension, differential index) of the invariant span."""
    return (space.n - 2) * space.base.dim, space.n * space.base.rank


def flag_rank_target(space: ProductSpace) -> int:
    total = (space.n - 1) * space.base.dim + (space.n + 1) * space.base.rank
    return total // 2


def restricted_rank_target(space: ProductSpace) -> int:
    total = (space.n - 2) * space.base.dim + space.n * space.base.rank
    return total // 2


def completeness_target(space: ProductSpace) -> int:
    return space.n * (space.base.dim + space.base.rank)


# -- generic point sampling ------------------------------------------------------


def _draw(context, entropy: list[int], domain: str, scale: float) -> np.ndarray:
    rng = np.random.default_rng(entropy)
    if domain == "k":
        algebra = context if isinstance(context, LieAlgebra) else context.base
        return algebra.random_element(rng, scale)
    if domain == "g":
        return context.random_point(rng, scale)
    return context.random_v_point(rng, scale)


def _gates_ok(context, X: np.ndarray, domain: str, policy: RankPolicy) -> bool:
    if domain == "k":
        algebra = context if isinstance(context, LieAlgebra) else context.base
        result = numerical_rank(algebra.ad(X), policy)
        return not result.marginal and algebra.dim - result.rank == algebra.rank
    space = context
    for x in X:
        result = numerical_rank(space.base.ad(x), policy)
        if result.marginal or space.base.dim - result.rank != space.base.rank:
            return False
    stacked = np.vstack([space.base.ad(x) for x in X])
    result = numerical_rank(stacked, policy)
    return not result.marginal and result.rank == space.base.dim


def generic_point(
    context,
    seed_parts: Iterable[int],
    domain: str = "g",
    scale: float = 1.0,
    policy: RankPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Seeded point passing the genericity gates, resampled as needed."""
    seed_parts = [int(p) for p in seed_parts]
    for retry in range(policy.max_retries + 1):
        X = _draw(context, seed_parts + [retry], domain, scale)
        if _gates_ok(context, X, domain, policy):
            return X
    raise GenericityError("generic point sampling exhausted its retry budget")


def _measure_at_generic_points(
    context,
    domain: str,
    trials: int,
    seed: int,
    policy: RankPolicy,
    scale: float,
    measure: Callable[[np.ndarray, list[int]], tuple],
):
    """Run ``measure`` at one generic point per trial, resampling marginal points.

    ``measure`` returns (value, marginal, extra); a marginal result discards
    the point and burns a retry, exactly like a failed genericity gate.
    """
    values, witnesses = [], []
    for trial in range(trials):
        for retry in range(policy.max_retries + 1):
            entropy = [seed, trial, retry]
            X = _draw(context, entropy, domain, scale)
            if not _gates_ok(context, X, domain, policy):
                continue
            value, marginal, extra = measure(X, entropy)
            if marginal:
                continue
            values.append(value)
            witnesses.append({"trial": trial, "retries": retry, **extra})
            break
        else:
            raise GenericityError(f"trial {trial} exhausted its resampling budget")
    return values, witnesses


def _modal(values: list) -> tuple:
    counts = Counter(values)
    value, _ = counts.most_common(1)[0]
    return value, len(counts) == 1


# -- rank estimates -----------------------------------------------------------


def _span_matrix(family: PolynomialFamily, X: np.ndarray) -> np.ndarray:
    grads = family.gradients(X)
    return grads.reshape(len(family), -1)


def _bivector_scale(X: np.ndarray, span: np.ndarray) -> float:
    """Natural magnitude of a bivector matrix over the given span rows.

    Entries are bounded by the point's size times the span rows' sizes, so
    this anchors the rank cutoff even when the matrix vanishes identically.
    """
    row_norms = np.linalg.norm(span.reshape(span.shape[0], -1), axis=1)
    top = float(row_norms.max()) if row_norms.size else 1.0
    return float(np.linalg.norm(X)) * max(top, 1e-3) ** 2


def estimate_ddim(
    space,
    family: PolynomialFamily,
    trials: int = 7,
    seed: int = 42,
    policy: RankPolicy = DEFAULT_POLICY,
    scale: float = 1.0,
) -> tuple[int, bool, list[dict]]:
    """Modal rank of the family's gradient span at generic points."""

    def measure(X, entropy):
        result = numerical_rank(_span_matrix(family, X), policy)
        return result.rank, result.marginal, {"rank": result.rank}

    values, witnesses = _measure_at_generic_points(
        space, family.domain, trials, seed, policy, scale, measure
    )
    value, unanimous = _modal(values)
    return value, unanimous, witnesses


def estimate_dind(
    space: ProductSpace,
    family: PolynomialFamily,
    trials: int = 7,
    seed: int = 42,
    policy: RankPolicy = DEFAULT_POLICY,
    scale: float = 1.0,
    weights: np.ndarray | None = None,
) -> tuple[int, bool, list[dict]]:
    """Modal kernel dimension of the bivector restricted to the gradient span."""

    def measure(X, entropy):
        basis, marginal = row_space(_span_matrix(family, X), policy)
        if marginal:
            return 0, True, {}
        span = basis.reshape(-1, space.n, space.base.dim)
        matrix = bivector_on_span(space, X, span, weights).matrix
        result = numerical_rank(matrix, policy, scale=_bivector_scale(X, span))
        dind = span.shape[0] - result.rank
        return dind, result.marginal, {"span_dim": span.shape[0], "dind": dind}

    values, witnesses = _measure_at_generic_points(
        space, family.domain, trials, seed, policy, scale, measure
    )
    value, unanimous = _modal(values)
    return value, unanimous, witnesses


# -- involutivity and invariance ------------------------------------------------


def _involutivity_residual(
    space: ProductSpace,
    family: PolynomialFamily,
    X: np.ndarray,
    weights: np.ndarray | None = None,
) -> float:
    """Max normalized |{f, g}| over member pairs at X."""
    gens = family.gradients(X)
    matrix = bivector_on_span(space, X, gens, weights).matrix
    norms = np.sqrt(np.einsum("aip,pq,aiq->a", gens, space.base.gram, gens))
    scale = np.outer(norms, norms) * space.norm(X)
    residual = np.where(scale > 0.0, np.abs(matrix) / np.where(scale > 0.0, scale, 1.0), 0.0)
    return float(residual.max())


def check_involutive(
    space: ProductSpace,
    family: PolynomialFamily,
    trials: int = 7,
    seed: int = 42,
    tol: float = 1e-9,
    policy: RankPolicy = DEFAULT_POLICY,
    weights: np.ndarray | None = None,
    scale: float = 1.0,
    claim_id: str = "involutive",
) -> CertificateReport:
    """Pairwise bracket residuals of the family at generic points."""

    def measure(X, entropy):
        residual = _involutivity_residual(space, family, X, weights)
        return residual, False, {"residual": residual}

    values, witnesses = _measure_at_generic_points(
        space, family.domain, trials, seed, policy, scale, measure
    )
    worst = max(values)
    return CertificateReport(
        claim_id=claim_id,
        algebra=space.base.name,
        n=space.n,
        seed=seed,
        trials=trials,
        formula_value=0.0,
        measured_value=worst,
        tolerance=tol,
        passed=worst <= tol,
        witnesses=tuple(witnesses),
    )


def check_ad_invariance(
    space: ProductSpace,
    family: PolynomialFamily,
    trials: int = 7,
    seed: int = 42,
    tol: float = 1e-9,
    policy: RankPolicy = DEFAULT_POLICY,
    transforms: int = 10,
    scale: float = 1.0,
    claim_id: str = "ad_invariance",
) -> CertificateReport:
    """Invariance of member values under random diagonal adjoint actions."""

    def measure(X, entropy):
        rng = np.random.default_rng(entropy + [7919])
        worst = 0.0
        for _ in range(transforms):
            y = space.base.random_element(rng, 0.8)
            moved = space.diagonal_adjoint(y, X)
            for member in family:
                base = member.value(X)
                delta = abs(member.value(moved) - base) / (1.0 + abs(base))
                worst = max(worst, delta)
        return worst, False, {"residual": worst}

    values, witnesses = _measure_at_generic_points(
        space, family.domain, trials, seed, policy, scale, measure
    )
    worst = max(values)
    return CertificateReport(
        claim_id=claim_id,
        algebra=space.base.name,
        n=space.n,
        seed=seed,
        trials=trials,
        formula_value=0.0,
        measured_value=worst,
        tolerance=tol,
        passed=worst <= tol,
        witnesses=tuple(witnesses),
    )


# -- structural certificates -----------------------------------------------------


def _int_report(space, claim_id, seed, trials, formula, values, unanimous, witnesses) -> CertificateReport:
    value, modal_unanimous = _modal(values)
    agreed = unanimous and modal_unanimous
    return CertificateReport(
        claim_id=claim_id,
        algebra=space.base.name,
        n=space.n,
        seed=seed,
        trials=trials,
        formula_value=int(formula),
        measured_value=int(value),
        tolerance=0.0,
        passed=agreed and int(value) == int(formula),
        witnesses=tuple(witnesses),
    )


def verify_lemma1(
    space: ProductSpace,
    trials: int = 7,
    seed: int = 42,
    policy: RankPolicy = DEFAULT_POLICY,
    scale: float = 1.0,
) -> tuple[CertificateReport, CertificateReport]:
    """Dimension and bivector-kernel dimension of the invariant tangent span.

    The span is built directly from the two linear conditions defining it;
    the kernel is measured on the restricted bivector matrix.
    """
    target_ddim, target_dind = lemma1_targets(space)

    def measure(X, entropy):
        span, marginal = invariant_tangent_span(space, X, policy)
        if marginal:
            return (0, 0), True, {}
        matrix = bivector_on_span(space, X, span).matrix
        result = numerical_rank(matrix, policy, scale=_bivector_scale(X, span))
        dims = (span.shape[0], span.shape[0] - result.rank)
        return dims, result.marginal, {"ddim": dims[0], "dind": dims[1]}

    values, witnesses = _measure_at_generic_points(space, "v", trials, seed, policy, scale, measure)
    ddims = [v[0] for v in values]
    dinds = [v[1] for v in values]
    report_ddim = _int_report(space, "lemma1.ddim", seed, trials, target_ddim, ddims, True, witnesses)
    report_dind = _int_report(space, "lemma1.dind", seed, trials, target_dind, dinds, True, witnesses)
    return report_ddim, report_dind


def verify_completeness(
    space: ProductSpace,
    family: PolynomialFamily,
    target: int,
    trials: int = 7,
    seed: int = 42,
    policy: RankPolicy = DEFAULT_POLICY,
    scale: float = 1.0,
    mode: str = "ddim",
    claim_id: str = "completeness",
) -> CertificateReport:
    """Compare a measured rank quantity of the family against a closed form.

    ``mode`` "ddim" measures the gradient-span rank; "sum" measures the span
    rank plus the kernel dimension of the bivector on the span, the
    completeness criterion for families on the full product.
    """
    if mode not in ("ddim", "sum"):
        raise ConfigurationError(f"unknown completeness mode {mode!r}")

    def measure(X, entropy):
        basis, marginal = row_space(_span_matrix(family, X), policy)
        if marginal:
            return 0, True, {}
        span_dim = basis.shape[0]
        if mode == "ddim":
            return span_dim, False, {"ddim": span_dim}
        span = basis.reshape(-1, space.n, space.base.dim)
        matrix = bivector_on_span(space, X, span).matrix
        result = numerical_rank(matrix, policy, scale=_bivector_scale(X, span))
        dind = span_dim - result.rank
        return span_dim + dind, result.marginal, {"ddim": span_dim, "dind": dind}

    values, witnesses = _measure_at_generic_points(
        space, family.domain, trials, seed, policy, scale, measure
    )
    return _int_report(space, claim_id, seed, trials, target, values, True, witnesses)


def verify_span_inclusion(
    space: ProductSpace,
    family: PolynomialFamily,
    trials: int = 7,
    seed: int = 42,
    tol: float = 1e-9,
    angle_tol: float = 1e-6,
    policy: RankPolicy = DEFAULT_POLICY,
    scale: float = 1.0,
    claim_id: str = "span_inclusion",
) -> CertificateReport:
    """Gradients of a restricted family lie in the invariant tangent span.

    Membership is checked directly: for each gradient eta the diagonal part
    of the blockwise bracket [X, eta] must vanish.  The span itself is also
    cross-built from its orthogonal-complement characterization and the two
    constructions must agree to the principal-angle tolerance.
    """
    if family.domain != "v":
        raise ConfigurationError("span inclusion applies to restricted families")

    def measure(X, entropy):
        worst = 0.0
        for member in family:
            eta = member.gradient(X)
            norm = space.norm(eta)
            if norm <= 1e-14:
                continue
            moved = np.einsum("ip,pqk,iq->ik", X, space.base.structure, eta)
            defect = space.norm(space.proj_h(moved)) / (space.norm(X) * norm)
            worst = max(worst, defect)

        direct, marginal_a = invariant_tangent_span(space, X, policy)
        ortho, marginal_b = tangent_span_orthocomplement(space, X, policy)
        if marginal_a or marginal_b:
            return 0.0, True, {}
        same_dim = direct.shape[0] == ortho.shape[0]
        angles = subspace_angles(
            direct.reshape(direct.shape[0], -1).T, ortho.reshape(ortho.shape[0], -1).T
        )
        max_angle = float(angles.max()) if angles.size else 0.0
        ok = same_dim and max_angle <= angle_tol
        extra = {
            "defect": worst,
            "span_dim": direct.shape[0],
            "max_angle": max_angle,
            "constructions_agree": bool(ok),
        }
        return (worst if ok else float("inf")), False, extra

    values, witnesses = _measure_at_generic_points(space, "v", trials, seed, policy, scale, measure)
    worst = max(values)
    return CertificateReport(
        claim_id=claim_id,
        algebra=space.base.name,
        n=space.n,
        seed=seed,
        trials=trials,
        formula_value=0.0,
        measured_value=worst,
        tolerance=tol,
        passed=worst <= tol,
        witnesses=tuple(witnesses),
    )


# -- claims registry ---------------------------------------------------------


@dataclass(frozen=True)
class ClaimContext:
    """Inputs shared by all claim runners."""

    space: ProductSpace
    seed: int = 42
    trials: int = 7
    tolerances: Tolerances = field(default_factory=Tolerances)
    gaudin_weights: tuple[float, ...] | None = None
    gaudin_grid: tuple[tuple[float, float], ...] | None = None
    flow_dt: float = 1e-3
    flow_t_end: float = 10.0
    scale: float = 1.0

    @property
    def policy(self) -> RankPolicy:
        return RankPolicy(rel_tol=self.tolerances.rank_rel)

    def weights(self) -> tuple[float, ...]:
        if self.gaudin_weights is not None:
            return self.gaudin_weights
        return tuple(float(i) for i in range(1, self.space.n + 1))


def _claim_lemma1(ctx: ClaimContext) -> list[CertificateReport]:
    return list(verify_lemma1(ctx.space, ctx.trials, ctx.seed, ctx.policy, ctx.scale))


def _claim_thm2i(ctx: ClaimContext) -> list[CertificateReport]:
    family = flag_shift_family(ctx.space)
    return [
        check_involutive(
            ctx.space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            ctx.policy, scale=ctx.scale, claim_id="thm2i.involutive",
        ),
        check_ad_invariance(
            ctx.space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            ctx.policy, scale=ctx.scale, claim_id="thm2i.ad_invariance",
        ),
    ]


def _claim_thm2ii(ctx: ClaimContext) -> list[CertificateReport]:
    shift = generic_shift(ctx.space.base, [ctx.seed, 104729], policy=ctx.policy)
    family = flag_momentum_family(ctx.space, shift)
    return [
        verify_completeness(
            ctx.space, family, completeness_target(ctx.space), ctx.trials, ctx.seed,
            ctx.policy, ctx.scale, mode="sum", claim_id="thm2ii.completeness_sum",
        )
    ]


def _claim_dimb(ctx: ClaimContext) -> list[CertificateReport]:
    family = flag_shift_family(ctx.space)
    return [
        verify_completeness(
            ctx.space, family, flag_rank_target(ctx.space), ctx.trials, ctx.seed,
            ctx.policy, ctx.scale, mode="ddim", claim_id="dimB.ddim",
        )
    ]


def _claim_thm3(ctx: ClaimContext) -> list[CertificateReport]:
    family = restrict_family(ctx.space, flag_shift_family(ctx.space))
    return [
        verify_completeness(
            ctx.space, family, restricted_rank_target(ctx.space), ctx.trials, ctx.seed,
            ctx.policy, ctx.scale, mode="ddim", claim_id="thm3.ddim",
        ),
        check_involutive(
            ctx.space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            ctx.policy, scale=ctx.scale, claim_id="thm3.involutive",
        ),
        verify_span_inclusion(
            ctx.space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            policy=ctx.policy, scale=ctx.scale, claim_id="thm3.span_inclusion",
        ),
    ]


def _default_gaudin_grid(space: ProductSpace) -> tuple[tuple[float, float], ...]:
    """Spectral grid large enough for the restricted-rank certificate.

    The momentum node (1, 0) contributes nothing on the zero-momentum slice,
    so the grid needs at least target/rank useful nodes beyond it.
    """
    target = restricted_rank_target(space)
    count = max(5, -(-target // space.base.rank) + 2)
    s_values = (0.0, 0.5, 1.0, 2.0, 3.0, 4.5, 7.0, 1.5, 2.5, 5.0, 6.0, 8.5, 9.5, 11.0)
    if count > len(s_values):
        s_values = s_values + tuple(12.0 + 1.5 * k for k in range(count - len(s_values)))
    return tuple((1.0, s) for s in s_values[:count])


def _claim_gaudin(ctx: ClaimContext) -> list[CertificateReport]:
    space = ctx.space
    weights = ctx.weights()
    grid = ctx.gaudin_grid if ctx.gaudin_grid is not None else _default_gaudin_grid(space)
    family = gaudin_family(space, weights, grid)
    reports = []

    def measure(X, entropy):
        ham = dynamics.gaudin_hamiltonian(space, weights)
        via_sum = dynamics.gaudin_field(space, weights, X)
        via_euler = dynamics.euler_field(space, ham, X)
        residual = space.norm(via_sum - via_euler) / (1.0 + space.norm(via_euler))
        return residual, False, {"residual": residual}

    values, witnesses = _measure_at_generic_points(
        space, "g", 10, ctx.seed, ctx.policy, ctx.scale, measure
    )
    worst = max(values)
    reports.append(
        CertificateReport(
            claim_id="gaudin.field_identity",
            algebra=space.base.name,
            n=space.n,
            seed=ctx.seed,
            trials=10,
            formula_value=0.0,
            measured_value=worst,
            tolerance=1e-11,
            passed=worst <= 1e-11,
            witnesses=tuple(witnesses),
        )
    )
    reports.append(
        check_involutive(
            space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            ctx.policy, scale=ctx.scale, claim_id="gaudin.involutive",
        )
    )
    reports.append(
        check_involutive(
            space, family, ctx.trials, ctx.seed, ctx.tolerances.bracket_rel,
            ctx.policy, weights=np.asarray(weights, dtype=float), scale=ctx.scale,
            claim_id="gaudin.involutive_pencil",
        )
    )
    reports.append(
        verify_completeness(
            space, restrict_family(space, family), restricted_rank_target(space),
            ctx.trials, ctx.seed, ctx.policy, ctx.scale, mode="ddim",
            claim_id="gaudin.ddim_restricted",
        )
    )

    initial = generic_point(space, [ctx.seed, 271], "g", ctx.scale, ctx.policy)
    flow = dynamics.FlowSpec(
        space=space,
        hamiltonian=dynamics.gaudin_hamiltonian(space, weights),
        initial=initial,
        t_end=ctx.flow_t_end,
        dt=ctx.flow_dt,
    )
    trajectory = dynamics.integrate(flow)
    drift = dynamics.momentum_drift(space, trajectory)
    reports.append(
        CertificateReport(
            claim_id="gaudin.momentum_drift",
            algebra=space.base.name,
            n=space.n,
            seed=ctx.seed,
            trials=1,
            formula_value=0.0,
            measured_value=drift,
            tolerance=1e-8,
            passed=(drift <= 1e-8) and not trajectory.aborted,
            witnesses=({"t_end": ctx.flow_t_end, "dt": ctx.flow_dt, "aborted": trajectory.aborted},),
        )
    )
    return reports


_REGISTRY: dict[str, Callable[[ClaimContext], list[CertificateReport]]] = {
    "lemma1": _claim_lemma1,
    "thm2i": _claim_thm2i,
    "thm2ii": _claim_thm2ii,
    "dimB": _claim_dimb,
    "thm3": _claim_thm3,
    "gaudin": _claim_gaudin,
}

CLAIM_IDS = tuple(_REGISTRY)

_DESCRIPTIONS = {
    "lemma1": "rank and bivector-kernel dimension of the invariant tangent span",
    "thm2i": "flag-shift family commutes and is invariant under the diagonal action",
    "thm2ii": "flag-shift family plus momentum polynomials is complete on the product",
    "dimB": "rank of the flag-shift family matches its closed form",
    "thm3": "restricted family: rank, involutivity and gradient span inclusion",
    "gaudin": "spectral family: field identity, commutativity, rank, momentum drift",
}


def describe_claims() -> dict[str, str]:
    return dict(_DESCRIPTIONS)


def run_claims(ctx: ClaimContext, claim_ids: Sequence[str] | None = None) -> list[CertificateReport]:
    """Run the requested claims (all of them by default) in registry order."""
    if claim_ids is None or list(claim_ids) == ["all"]:
        claim_ids = list(CLAIM_IDS)
    unknown = [c for c in claim_ids if c not in _REGISTRY]
    if unknown:
        raise ConfigurationError(f"unknown claim ids: {', '.join(unknown)}")
    reports: list[CertificateReport] = []
    for claim in CLAIM_IDS:
        if claim in claim_ids:
            reports.extend(_REGISTRY[claim](ctx))
    return reports
