"""Boxes, tagged tensor-product partitions, mesh perturbation, deletion plans.

This is the combinatorial substrate every sum variant consumes: an
n-dimensional box is split per axis into strictly increasing breakpoints,
cells are the Cartesian products of the axis segments (C-order, axis 0
slowest), and each cell carries one tag point. A perturbed partition keeps
the same cells-by-index structure but jitters interior breakpoints, and a
deletion plan names the cell indices a sum should drop.

All constructed values are immutable and deterministic: equal inputs
(including seeds) give bit-identical state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .errors import (
    CountOverflow,
    DegenerateBox,
    EqualPartitionRequired,
    MissingTerms,
    TagEscape,
)
from .summation import neumaier_sum

MAX_CELLS = 10**8
MAX_DIM = 8

TAG_RULES = ("midpoint", "corner", "random")


@dataclass(frozen=True)
class Box:
    """Axis-aligned interval product ``[lo_1,hi_1] x ... x [lo_n,hi_n]``."""

    axes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        axes = tuple((float(lo), float(hi)) for lo, hi in self.axes)
        object.__setattr__(self, "axes", axes)
        if not 1 <= len(axes) <= MAX_DIM:
            raise DegenerateBox(f"dimension must be in [1, {MAX_DIM}], got {len(axes)}")
        for i, (lo, hi) in enumerate(axes):
            if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
                raise DegenerateBox(f"axis {i} collapsed: [{lo}, {hi}]")

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([hi - lo for lo, hi in self.axes])

    @property
    def measure(self) -> float:
        out = 1.0
        for lo, hi in self.axes:
            out *= hi - lo
        return out

    def contains(self, x) -> bool:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return all(lo <= xi <= hi for xi, (lo, hi) in zip(x, self.axes))


def _grid_stack(per_axis) -> np.ndarray:
    """Cartesian product of per-axis value arrays as an (m, n) array, C-order."""
    grids = np.meshgrid(*per_axis, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _outer_product(per_axis) -> np.ndarray:
    """Per-cell products of per-axis factors, flattened in C-order."""
    out = np.asarray(per_axis[0], dtype=float)
    for w in per_axis[1:]:
        out = np.multiply.outer(out, np.asarray(w, dtype=float))
    return out.ravel()


@dataclass(frozen=True, eq=False)
class Partition:
    """Tagged tensor-product partition of a box.

    ``breakpoints[i]`` runs from the box lower to upper bound of axis i,
    strictly increasing. ``axis_widths[i]`` are the canonical segment
    measures used in all sums; for uniform constructions they are stored as
    the exact common width so equal partitions have bitwise-equal cell
    measures. ``tags`` is (m, dim), one point per cell, inside the closed
    cell. ``is_equal`` means every cell has the same measure.
    """

    parent: Box
    breakpoints: tuple[np.ndarray, ...]
    axis_widths: tuple[np.ndarray, ...]
    tags: np.ndarray
    is_equal: bool

    @property
    def dim(self) -> int:
        return self.parent.dim

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(b) - 1 for b in self.breakpoints)

    @property
    def m(self) -> int:
        out = 1
        for c in self.counts:
            out *= c
        return out

    @cached_property
    def measures(self) -> np.ndarray:
        """Per-cell measures m(I_k), C-order, length m."""
        return _outer_product(self.axis_widths)

    @cached_property
    def mesh(self) -> float:
        """lambda(P): the largest cell diameter."""
        return float(math.sqrt(sum(float(np.max(w)) ** 2 for w in self.axis_widths)))

    @cached_property
    def cell_lows(self) -> np.ndarray:
        return _grid_stack([b[:-1] for b in self.breakpoints])

    @cached_property
    def cell_highs(self) -> np.ndarray:
        return _grid_stack([b[1:] for b in self.breakpoints])

    @cached_property
    def cell_axis_indices(self) -> tuple[np.ndarray, ...]:
        """Per-axis segment index of each cell (C-order)."""
        return np.unravel_index(np.arange(self.m), self.counts)

    def cell(self, k: int) -> Box:
        return Box(tuple(zip(self.cell_lows[k], self.cell_highs[k])))


def _validate_breakpoints(box: Box, breakpoints) -> tuple[np.ndarray, ...]:
    if len(breakpoints) != box.dim:
        raise DegenerateBox("one breakpoint sequence required per axis")
    out = []
    for i, (raw, (lo, hi)) in enumerate(zip(breakpoints, box.axes)):
        b = np.ascontiguousarray(np.asarray(raw, dtype=float))
        if b.ndim != 1 or len(b) < 2:
            raise DegenerateBox(f"axis {i}: need at least two breakpoints")
        if b[0] != lo or b[-1] != hi:
            raise DegenerateBox(f"axis {i}: breakpoints must span [{lo}, {hi}]")
        if not np.all(np.diff(b) > 0):
            raise DegenerateBox(f"axis {i}: breakpoints must be strictly increasing")
        out.append(b)
    return tuple(out)


def _check_cell_cap(counts) -> int:
    m = 1
    for c in counts:
        m *= int(c)
        if m > MAX_CELLS:
            raise CountOverflow(f"cell count exceeds cap {MAX_CELLS}")
    return m


def _make_tags(breakpoints, tag_rule: str, seed: int) -> np.ndarray:
    if tag_rule == "midpoint":
        return _grid_stack([(b[:-1] + b[1:]) / 2.0 for b in breakpoints])
    if tag_rule == "corner":
        return _grid_stack([b[:-1] for b in breakpoints])
    if tag_rule == "random":
        lows = _grid_stack([b[:-1] for b in breakpoints])
        highs = _grid_stack([b[1:] for b in breakpoints])
        rng = np.random.default_rng(seed)
        return lows + rng.random(lows.shape) * (highs - lows)
    raise ValueError(f"unknown tag rule {tag_rule!r}; expected one of {TAG_RULES}")


def make_partition(
    box: Box,
    breakpoints,
    tag_rule: str = "midpoint",
    seed: int = 0,
    tags: np.ndarray | None = None,
) -> Partition:
    """Build a partition from explicit per-axis breakpoints.

    ``tags`` overrides the tag rule with explicit points (one per cell,
    C-order); they must lie inside the closed cells.
    """
    breaks = _validate_breakpoints(box, breakpoints)
    m = _check_cell_cap(len(b) - 1 for b in breaks)
    widths = tuple(np.diff(b) for b in breaks)
    if tags is None:
        tags = _make_tags(breaks, tag_rule, seed)
    else:
        tags = np.ascontiguousarray(np.asarray(tags, dtype=float))
        if tags.shape != (m, box.dim):
            raise ValueError(f"tags must have shape ({m}, {box.dim})")
        lows = _grid_stack([b[:-1] for b in breaks])
        highs = _grid_stack([b[1:] for b in breaks])
        if not (np.all(tags >= lows) and np.all(tags <= highs)):
            raise ValueError("explicit tags must lie inside their closed cells")
    is_equal = all(bool(np.all(w == w[0])) for w in widths)
    return Partition(box, breaks, widths, tags, is_equal)


def make_uniform_partition(
    box: Box, counts, tag_rule: str = "midpoint", seed: int = 0
) -> Partition:
    """Split every axis of ``box`` into equal segments.

    ``counts`` gives the number of segments per axis (an int is broadcast to
    all axes). The common cell measure is stored exactly, so the result is
    an equal partition in the bitwise sense.
    """
    if np.isscalar(counts):
        counts = (int(counts),) * box.dim
    counts = tuple(int(c) for c in counts)
    if len(counts) != box.dim:
        raise DegenerateBox("one count per axis required")
    if any(c < 1 for c in counts):
        raise DegenerateBox("counts must be >= 1 on every axis")
    _check_cell_cap(counts)
    breaks = tuple(
        np.linspace(lo, hi, c + 1) for (lo, hi), c in zip(box.axes, counts)
    )
    widths = tuple(
        np.full(c, (hi - lo) / c) for (lo, hi), c in zip(box.axes, counts)
    )
    tags = _make_tags(breaks, tag_rule, seed)
    return Partition(box, breaks, widths, tags, is_equal=True)


@dataclass(frozen=True, eq=False)
class PerturbedPartition:
    """A jittered copy of a partition with exact symmetric-difference data.

    Cell k of the perturbed family is the product of the k-th perturbed axis
    segments; ``symdiff[k] = m(I_k ^ I~_k)`` is computed by per-axis interval
    arithmetic, never by sampling, and dominates ``|m(I~_k) - m(I_k)|``.
    Tags are inherited from the base partition and verified to lie in the
    intersection of base and perturbed cells.
    """

    base: Partition
    breakpoints: tuple[np.ndarray, ...]
    axis_widths: tuple[np.ndarray, ...]
    symdiff: np.ndarray
    symdiff_total: float
    jitter_amplitude: float

    @property
    def m(self) -> int:
        return self.base.m

    @cached_property
    def measures(self) -> np.ndarray:
        """Per-cell perturbed measures m(Ĩ_k), C-order."""
        return _outer_product(self.axis_widths)

    @cached_property
    def mesh(self) -> float:
        """λ(P̃) of the perturbed family."""
        return float(math.sqrt(sum(float(np.max(w)) ** 2 for w in self.axis_widths)))

    @cached_property
    def cell_lows(self) -> np.ndarray:
        return _grid_stack([b[:-1] for b in self.breakpoints])

    @cached_property
    def cell_highs(self) -> np.ndarray:
        return _grid_stack([b[1:] for b in self.breakpoints])


def apply_perturbation(
    p: Partition, breakpoints, jitter_amplitude: float = 0.0
) -> PerturbedPartition:
    """Pair ``p`` with explicit perturbed breakpoints (the forced-grid hook).

    Endpoints must match the parent box and segment counts must match the
    base. Raises :class:`TagEscape` if any base tag falls outside the
    intersection of its base and perturbed cell.
    """
    pert = _validate_breakpoints(p.parent, breakpoints)
    if tuple(len(b) - 1 for b in pert) != p.counts:
        raise DegenerateBox("perturbed breakpoints must keep the base cell counts")

    # Segments whose endpoints did not move keep the base's stored width and
    # overlap fully, so unjittered cells contribute exactly zero symmetric
    # difference (and gamma = 0 reproduces the base partition bitwise).
    pert_widths = []
    overlaps = []
    for b0, b1, w0 in zip(p.breakpoints, pert, p.axis_widths):
        unchanged = (b1[:-1] == b0[:-1]) & (b1[1:] == b0[1:])
        w1 = np.where(unchanged, w0, np.diff(b1))
        raw = np.minimum(b0[1:], b1[1:]) - np.maximum(b0[:-1], b1[:-1])
        ov = np.minimum(np.maximum(raw, 0.0), np.minimum(w0, w1))
        pert_widths.append(w1)
        overlaps.append(np.where(unchanged, w0, ov))
    pert_widths = tuple(pert_widths)

    base_meas = p.measures
    pert_meas = _outer_product(pert_widths)
    overlap = _outer_product(overlaps)
    symdiff = (base_meas - overlap) + (pert_meas - overlap)
    total, _ = neumaier_sum(symdiff)

    idx = p.cell_axis_indices
    for axis in range(p.dim):
        coord = p.tags[:, axis]
        lo = pert[axis][:-1][idx[axis]]
        hi = pert[axis][1:][idx[axis]]
        if not (np.all(coord >= lo) and np.all(coord <= hi)):
            raise TagEscape(
                f"axis {axis}: a base tag left the base/perturbed intersection"
            )

    return PerturbedPartition(
        base=p,
        breakpoints=pert,
        axis_widths=pert_widths,
        symdiff=symdiff,
        symdiff_total=total,
        jitter_amplitude=float(jitter_amplitude),
    )


def perturb(p: Partition, gamma: float, seed: int = 0) -> PerturbedPartition:
    """Jitter interior breakpoints by uniform draws in [-h, +h].

    Per axis, ``h = gamma * min(mesh(P)^2, g_min/2)`` with ``g_min`` the
    smallest segment on that axis, so breakpoints stay strictly increasing
    and the total symmetric difference vanishes as the partition refines.
    Draws are clamped so every base tag stays inside both its base and
    perturbed cell; endpoints never move.
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must be in [0, 1), got {gamma}")
    rng = np.random.default_rng(seed)
    mesh_sq = p.mesh**2
    idx = p.cell_axis_indices

    new_breaks = []
    for axis, (breaks, widths) in enumerate(zip(p.breakpoints, p.axis_widths)):
        interior = breaks[1:-1]
        if len(interior) == 0:
            new_breaks.append(breaks.copy())
            continue
        g_min = float(np.min(widths))
        h = gamma * min(mesh_sq, g_min / 2.0)
        shifts = rng.uniform(-h, h, size=len(interior))

        # Slab-wise tag extrema along this axis bound each breakpoint's
        # admissible range; tags live in closed cells, so the range always
        # contains the base breakpoint.
        coord = p.tags[:, axis]
        count = len(widths)
        slab_max = np.full(count, -np.inf)
        slab_min = np.full(count, np.inf)
        np.maximum.at(slab_max, idx[axis], coord)
        np.minimum.at(slab_min, idx[axis], coord)

        lower = np.maximum(interior - h, slab_max[:-1])
        upper = np.minimum(interior + h, slab_min[1:])
        moved = np.clip(interior + shifts, lower, upper)

        b = breaks.copy()
        b[1:-1] = moved
        if not np.all(np.diff(b) > 0):
            raise TagEscape(
                f"axis {axis}: clamped jitter collapsed adjacent breakpoints"
            )
        new_breaks.append(b)

    return apply_perturbation(p, tuple(new_breaks), jitter_amplitude=gamma)


def reflect_partition(p: Partition) -> Partition:
    """Mirror a partition onto the negated box (for path reversal).

    Negation is exact in floating point, so cell bounds, stored widths, and
    tags all map bitwise; cell k of the result is the mirror image of cell
    m-1-k (per axis) of the input.
    """
    box = Box(tuple((-hi, -lo) for lo, hi in p.parent.axes))
    breaks = tuple(-b[::-1] for b in p.breakpoints)
    widths = tuple(w[::-1].copy() for w in p.axis_widths)
    grid = p.tags.reshape(p.counts + (p.dim,))
    tags = -np.flip(grid, axis=tuple(range(p.dim))).reshape(p.m, p.dim)
    return Partition(box, breaks, widths, np.ascontiguousarray(tags), p.is_equal)


def swap_axes_partition(p: Partition) -> Partition:
    """Swap the two axes of a 2D partition (for surface orientation flips).

    Widths and tags are carried over bitwise; cell (i, j) becomes cell
    (j, i) of the result.
    """
    if p.dim != 2:
        raise DegenerateBox("axis swap is defined for 2D partitions")
    box = Box((p.parent.axes[1], p.parent.axes[0]))
    grid = p.tags.reshape(p.counts + (2,))
    tags = grid.transpose(1, 0, 2)[..., ::-1].reshape(p.m, 2)
    return Partition(
        box,
        (p.breakpoints[1], p.breakpoints[0]),
        (p.axis_widths[1], p.axis_widths[0]),
        np.ascontiguousarray(tags),
        p.is_equal,
    )


# --- deletion plans ---------------------------------------------------------


@dataclass(frozen=True)
class FixedK:
    """Delete a fixed number of terms (clause-i schedules)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("K must be >= 1")


@dataclass(frozen=True)
class PowerLaw:
    """Delete floor(m^beta) terms, beta in (0,1); K(m)/m -> 0."""

    beta: float

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must be in (0, 1)")


@dataclass(frozen=True)
class Logarithmic:
    """Delete max(1, floor(ln m)) terms; K(m)/m -> 0."""


@dataclass(frozen=True)
class Prefix:
    """Delete the first K indices."""


@dataclass(frozen=True)
class RandomPick:
    """Delete K distinct indices sampled without replacement from a seed."""

    seed: int = 0


@dataclass(frozen=True)
class LargestTerm:
    """Delete the K indices with greatest |term| (ties: lowest index)."""


Schedule = FixedK | PowerLaw | Logarithmic
Selector = Prefix | RandomPick | LargestTerm


def schedule_count(schedule: Schedule, m: int) -> int:
    """Number of deleted terms for a schedule at cell count ``m`` (>= 2)."""
    if m < 2:
        raise ValueError("deletion requires at least 2 cells (K < m)")
    if isinstance(schedule, FixedK):
        k = min(schedule.k, m - 1)
    elif isinstance(schedule, PowerLaw):
        k = int(math.floor(m**schedule.beta))
    elif isinstance(schedule, Logarithmic):
        k = max(1, int(math.floor(math.log(m))))
    else:
        raise TypeError(f"unknown schedule {schedule!r}")
    return max(1, min(k, m - 1))


@dataclass(frozen=True)
class DeletionPlan:
    """Which sum terms are dropped: a size schedule plus an index selector.

    ``resolved`` is the 0-based, ascending index set once the plan is bound
    to a concrete partition; it is None for an unbound plan.
    """

    schedule: Schedule
    selector: Selector = Prefix()
    resolved: tuple[int, ...] | None = None

    @property
    def deleted_count(self) -> int:
        if self.resolved is None:
            return 0
        return len(self.resolved)


def select_indices(
    schedule: Schedule,
    selector: Selector,
    m: int,
    terms=None,
    is_equal: bool = True,
) -> tuple[int, ...]:
    """Resolve a deleted index set over ``m`` terms (0-based, ascending).

    Vanishing schedules (PowerLaw, Logarithmic) demand ``is_equal``,
    matching the theorems' clause-ii/iii equal-partition hypotheses.
    """
    if not isinstance(schedule, FixedK) and not is_equal:
        raise EqualPartitionRequired(
            "K(m) schedules require an equal partition (all cell measures equal)"
        )
    k = schedule_count(schedule, m)

    if isinstance(selector, Prefix):
        indices = np.arange(k)
    elif isinstance(selector, RandomPick):
        rng = np.random.default_rng(selector.seed)
        indices = np.sort(rng.choice(m, size=k, replace=False))
    elif isinstance(selector, LargestTerm):
        if terms is None:
            raise MissingTerms("LargestTerm selection needs per-cell magnitudes")
        mags = np.abs(np.asarray(terms, dtype=float).ravel())
        if len(mags) != m:
            raise MissingTerms(f"expected {m} magnitudes, got {len(mags)}")
        order = np.argsort(-mags, kind="stable")  # stable: ties keep lowest index
        indices = np.sort(order[:k])
    else:
        raise TypeError(f"unknown selector {selector!r}")
    return tuple(int(i) for i in indices)


def bind_deletion(plan: DeletionPlan, p: Partition, terms=None) -> DeletionPlan:
    """Resolve a plan's index set against a concrete partition.

    ``terms`` (per-cell term magnitudes) is required for the LargestTerm
    selector.
    """
    resolved = select_indices(
        plan.schedule, plan.selector, p.m, terms=terms, is_equal=p.is_equal
    )
    return replace(plan, resolved=resolved)
