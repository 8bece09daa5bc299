"""The four Riemann-sum variants over boxes.

full        sum_k f(xi_k) m(I_k)
deleted     the same sum with a bound deletion plan's indices dropped
perturbed   base tags with perturbed cell measures m(I~_k)
combined    perturbed measures and a deletion plan together

Terms are evaluated vectorized and accumulated in ascending cell order with
compensated summation, so equal inputs give bit-identical estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatch, UnboundPlan
from .fields import ParametricRegion, ScalarField
from .geometry import (
    DeletionPlan,
    FixedK,
    LargestTerm,
    Partition,
    PerturbedPartition,
    Prefix,
    RandomPick,
    Schedule,
    Selector,
    bind_deletion,
    perturb,
)
from .summation import masked_neumaier_sum, neumaier_sum

VARIANTS = ("full", "deleted", "perturbed", "combined")


@dataclass(frozen=True)
class SumEstimate:
    """One quadrature result with full provenance."""

    value: float
    m: int
    mesh: float
    deleted_count: int
    symdiff_total: float
    variant: str
    compensation_residual: float

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if not math.isfinite(self.value):
            raise ValueError("sum estimate is not finite")
        if self.deleted_count and self.variant not in ("deleted", "combined"):
            raise ValueError("deleted_count > 0 only for deleted/combined variants")
        if self.symdiff_total and self.variant not in ("perturbed", "combined"):
            raise ValueError("symdiff_total > 0 only for perturbed/combined variants")


def _check_dim(f: ScalarField, p: Partition) -> None:
    if f.dim != p.dim:
        raise DimensionMismatch(f"field dim {f.dim} != partition dim {p.dim}")


def _keep_mask(plan: DeletionPlan, m: int) -> np.ndarray:
    if plan.resolved is None:
        raise UnboundPlan("deletion plan must be bound to the partition first")
    idx = np.asarray(plan.resolved, dtype=int)
    if len(idx) == 0 or len(idx) >= m or idx.min() < 0 or idx.max() >= m:
        raise UnboundPlan(f"resolved index set invalid for m={m}")
    keep = np.ones(m, dtype=bool)
    keep[idx] = False
    return keep


def riemann_sum(f: ScalarField, p: Partition) -> SumEstimate:
    """Full Riemann sum sigma(f, P, xi) over the tagged partition."""
    _check_dim(f, p)
    terms = np.asarray(f(p.tags), dtype=float) * p.measures
    value, resid = neumaier_sum(terms)
    return SumEstimate(value, p.m, p.mesh, 0, 0.0, "full", resid)


def deleted_sum(f: ScalarField, p: Partition, plan: DeletionPlan) -> SumEstimate:
    """Incomplete Riemann sum: the bound plan's indices are dropped."""
    _check_dim(f, p)
    keep = _keep_mask(plan, p.m)
    terms = np.asarray(f(p.tags), dtype=float) * p.measures
    value, resid = masked_neumaier_sum(terms, keep)
    return SumEstimate(value, p.m, p.mesh, int(p.m - keep.sum()), 0.0, "deleted", resid)


def perturbed_sum(f: ScalarField, pp: PerturbedPartition) -> SumEstimate:
    """Non-Riemann sum: base tags weighted by perturbed measures."""
    base = pp.base
    _check_dim(f, base)
    terms = np.asarray(f(base.tags), dtype=float) * pp.measures
    value, resid = neumaier_sum(terms)
    return SumEstimate(
        value, base.m, base.mesh, 0, pp.symdiff_total, "perturbed", resid
    )


def combined_sum(
    f: ScalarField, pp: PerturbedPartition, plan: DeletionPlan
) -> SumEstimate:
    """Deleted indices and perturbed measures together."""
    base = pp.base
    _check_dim(f, base)
    keep = _keep_mask(plan, base.m)
    terms = np.asarray(f(base.tags), dtype=float) * pp.measures
    value, resid = masked_neumaier_sum(terms, keep)
    return SumEstimate(
        value,
        base.m,
        base.mesh,
        int(base.m - keep.sum()),
        pp.symdiff_total,
        "combined",
        resid,
    )


# --- region integrals via change of variables --------------------------------


def region_integrand(f: ScalarField, region: ParametricRegion) -> ScalarField:
    """Pull f back to the parameter box: g = f(mapping(params)) * jac_det."""
    if f.dim != region.dim:
        raise DimensionMismatch(f"field dim {f.dim} != region dim {region.dim}")
    return ScalarField(
        dim=region.param_box.dim,
        fn=lambda params: np.asarray(f(region.mapping(params)), dtype=float)
        * np.asarray(region.jac_det(params), dtype=float),
    )


def integrate_region(
    f: ScalarField,
    region: ParametricRegion,
    p: Partition,
    plan: DeletionPlan | None = None,
    perturbation: PerturbedPartition | None = None,
) -> SumEstimate:
    """Apply any sum variant to f over a parametric region.

    ``p`` must partition ``region.param_box``; the variant is selected by
    which of ``plan`` / ``perturbation`` are present.
    """
    if p.parent.axes != region.param_box.axes:
        raise DimensionMismatch("partition does not cover the region's parameter box")
    g = region_integrand(f, region)
    if perturbation is not None and plan is not None:
        return combined_sum(g, perturbation, plan)
    if perturbation is not None:
        return perturbed_sum(g, perturbation)
    if plan is not None:
        return deleted_sum(g, p, plan)
    return riemann_sum(g, p)


# --- variant configuration ---------------------------------------------------


@dataclass(frozen=True)
class VariantSpec:
    """One knob per theorem ingredient: K / K(m), J_K selector, jitter, tags.

    ``seed`` drives the mesh jitter; a RandomPick selector carries its own
    seed. :meth:`with_seed` rebinds both, which is how sweeps derive
    independent per-row randomness.
    """

    kind: str = "full"
    schedule: Schedule = FixedK(1)
    selector: Selector = Prefix()
    gamma: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.kind not in VARIANTS:
            raise ValueError(f"unknown variant kind {self.kind!r}")

    @property
    def deletes(self) -> bool:
        return self.kind in ("deleted", "combined")

    @property
    def perturbs(self) -> bool:
        return self.kind in ("perturbed", "combined")

    def with_seed(self, seed: int) -> "VariantSpec":
        sel = RandomPick(seed) if isinstance(self.selector, RandomPick) else self.selector
        return replace(self, seed=seed, selector=sel)


FULL = VariantSpec()


def resolve_variant(
    spec: VariantSpec, p: Partition, magnitudes=None
) -> tuple[DeletionPlan | None, PerturbedPartition | None]:
    """Build the bound plan and/or perturbation a spec asks for.

    ``magnitudes`` (per-cell |term| on the base configuration) is consulted
    only by the LargestTerm selector.
    """
    plan = None
    if spec.deletes:
        plan = bind_deletion(
            DeletionPlan(spec.schedule, spec.selector),
            p,
            terms=magnitudes if isinstance(spec.selector, LargestTerm) else None,
        )
    pp = perturb(p, spec.gamma, spec.seed) if spec.perturbs else None
    return plan, pp


def variant_sum(f: ScalarField, p: Partition, spec: VariantSpec = FULL) -> SumEstimate:
    """Evaluate the box sum variant described by ``spec``."""
    _check_dim(f, p)
    magnitudes = None
    if spec.deletes and isinstance(spec.selector, LargestTerm):
        magnitudes = np.abs(np.asarray(f(p.tags), dtype=float) * p.measures)
    plan, pp = resolve_variant(spec, p, magnitudes)
    if pp is not None and plan is not None:
        return combined_sum(f, pp, plan)
    if pp is not None:
        return perturbed_sum(f, pp)
    if plan is not None:
        return deleted_sum(f, p, plan)
    return riemann_sum(f, p)


def region_sum(
    f: ScalarField,
    region: ParametricRegion,
    p: Partition,
    spec: VariantSpec = FULL,
) -> SumEstimate:
    """Variant-configured region integral (change of variables + box sum)."""
    if p.parent.axes != region.param_box.axes:
        raise DimensionMismatch("partition does not cover the region's parameter box")
    return variant_sum(region_integrand(f, region), p, spec)


def field_bound(f: ScalarField, p: Partition) -> tuple[float, bool]:
    """(M, declared): the declared sup bound, or a tag-sample estimate.

    Bound-inequality checks must be skipped when ``declared`` is False;
    testing an estimated bound against itself would be tautological.
    """
    if f.bound_M is not None:
        return float(f.bound_M), True
    return float(np.max(np.abs(np.asarray(f(p.tags), dtype=float)))), False
