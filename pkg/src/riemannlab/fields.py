"""Scalar/vector fields, paths, surfaces, regions, and derivative operators.

Evaluation handles are plain callables written against numpy: they accept a
single point of shape (n,) or a batch of shape (m, n) and return matching
scalars/vectors (use ``p[..., i]`` indexing and ``np.stack(..., axis=-1)``
so both shapes work). Handles must be pure; every constructed object is
immutable and safe to evaluate from many threads.

Derivatives fall back to 4th-order central differences with per-axis step
``h_i = max(1e-6, 1e-6 * |x_i|)`` when no analytic handle is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch
from .geometry import Box


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Bounded real-valued function on R^dim.

    ``bound_M``, when given, must dominate |f| on the domain of use; the
    bound-inequality test suites only run for fields that declare it.
    ``reference_integral`` is an oracle hook: the exact integral over
    ``reference_box``.
    """

    dim: int
    fn: Callable
    grad: Callable | None = None
    bound_M: float | None = None
    reference_integral: float | None = None
    reference_box: Box | None = None

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))


@dataclass(frozen=True, eq=False)
class VectorField:
    """Vector-valued field; components (P, Q) in 2D, (f1, f2, f3) in 3D.

    Optional analytic handles: ``div`` matches :func:`divergence`; ``curl``
    returns the 3-vector curl for ``dim_in == 3`` and the plane scalar
    dQ/dx - dP/dy for ``dim_in == 2``.
    """

    dim_in: int
    dim_out: int
    fn: Callable
    div: Callable | None = None
    curl: Callable | None = None
    bound_M: float | None = None

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))


@dataclass(frozen=True, eq=False)
class Path:
    """C^1 path t -> x(t) on [a, b] with velocity handle x'(t)."""

    domain: tuple[float, float]
    pos: Callable
    vel: Callable
    closed: bool = False

    @property
    def codim(self) -> int:
        """Dimension of the ambient space the path maps into."""
        return int(np.atleast_1d(self.pos(self.domain[0])).shape[-1])


@dataclass(frozen=True, eq=False)
class ParametricSurface:
    """Smooth parametrized surface X(u, v) in R^3 over a 2D box."""

    domain: Box
    pos: Callable
    du: Callable
    dv: Callable

    def normal(self, uv) -> np.ndarray:
        """N(u,v) = dX/du x dX/dv, unnormalized."""
        uv = np.asarray(uv, dtype=float)
        return np.cross(self.du(uv), self.dv(uv))


@dataclass(frozen=True, eq=False)
class ParametricRegion:
    """Image of a parameter box under an orientation-preserving map.

    ``jac_det`` must be the nonnegative Jacobian determinant |det DPhi| on
    the parameter box; area/volume integrals over the region reduce to box
    sums of ``f(mapping(params)) * jac_det(params)``. ``boundary`` holds
    Paths (dim 2, region on the left) or ParametricSurfaces (dim 3, outward
    normals); the declared orientation is verified by probe-field sign
    checks in the theorem drivers.
    """

    dim: int
    param_box: Box
    mapping: Callable
    jac_det: Callable
    boundary: tuple = ()


# --- finite differences -----------------------------------------------------

_FD4_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_FD4_WEIGHTS = (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)


def _fd_partial(fn, x: np.ndarray, axis: int):
    """4th-order central difference of ``fn`` along ``axis`` at points x."""
    h = np.maximum(1e-6, 1e-6 * np.abs(x[..., axis]))
    acc = None
    for off, w in zip(_FD4_OFFSETS, _FD4_WEIGHTS):
        shifted = x.copy()
        shifted[..., axis] = x[..., axis] + off * h
        val = np.asarray(fn(shifted), dtype=float) * w
        acc = val if acc is None else acc + val
    if acc.ndim > h.ndim:  # vector-valued fn: divide per component
        return acc / h[..., None]
    return acc / h


def gradient(f: ScalarField, x) -> np.ndarray:
    """Gradient of f at x; analytic handle when present, else differences."""
    x = np.asarray(x, dtype=float)
    if f.grad is not None:
        return np.asarray(f.grad(x), dtype=float)
    parts = [_fd_partial(f.fn, x, axis) for axis in range(f.dim)]
    return np.stack(parts, axis=-1)


def divergence(F: VectorField, x):
    """Sum of the diagonal partials of F at x."""
    x = np.asarray(x, dtype=float)
    if F.div is not None:
        return np.asarray(F.div(x), dtype=float)
    out = None
    for axis in range(F.dim_in):
        part = _fd_partial(F.fn, x, axis)[..., axis]
        out = part if out is None else out + part
    return out


def curl(F: VectorField, x) -> np.ndarray:
    """Curl of a 3D field at x (the determinant expansion of nabla x F)."""
    if F.dim_in != 3 or F.dim_out != 3:
        raise DimensionMismatch("curl requires a 3D vector field")
    x = np.asarray(x, dtype=float)
    if F.curl is not None:
        return np.asarray(F.curl(x), dtype=float)
    d = [_fd_partial(F.fn, x, axis) for axis in range(3)]  # d[j][..., k] = dF_k/dx_j
    return np.stack(
        [
            d[1][..., 2] - d[2][..., 1],
            d[2][..., 0] - d[0][..., 2],
            d[0][..., 1] - d[1][..., 0],
        ],
        axis=-1,
    )


def plane_curl(F: VectorField, x):
    """dQ/dx - dP/dy of a 2D field (P, Q): the Green's-theorem integrand."""
    if F.dim_in != 2 or F.dim_out != 2:
        raise DimensionMismatch("plane_curl requires a 2D vector field")
    x = np.asarray(x, dtype=float)
    if F.curl is not None:
        return np.asarray(F.curl(x), dtype=float)
    dq_dx = _fd_partial(F.fn, x, 0)[..., 1]
    dp_dy = _fd_partial(F.fn, x, 1)[..., 0]
    return dq_dx - dp_dy


# --- orientation helpers ----------------------------------------------------


def reverse_path(path: Path) -> Path:
    """Traverse a path in the opposite direction.

    The reversed path is parametrized over [-b, -a] by t -> pos(-t), so the
    parameter reflection is exact in floating point and reversed sums negate
    the original term-for-term at matched tags.
    """
    a, b = path.domain
    return Path(
        domain=(-b, -a),
        pos=lambda t: path.pos(-np.asarray(t, dtype=float)),
        vel=lambda t: -np.asarray(path.vel(-np.asarray(t, dtype=float)), dtype=float),
        closed=path.closed,
    )


def swap_surface(surface: ParametricSurface) -> ParametricSurface:
    """Swap the (u, v) parameters, flipping the surface orientation."""
    dom = surface.domain
    return ParametricSurface(
        domain=Box((dom.axes[1], dom.axes[0])),
        pos=lambda uv: surface.pos(np.asarray(uv, dtype=float)[..., ::-1]),
        du=lambda uv: surface.dv(np.asarray(uv, dtype=float)[..., ::-1]),
        dv=lambda uv: surface.du(np.asarray(uv, dtype=float)[..., ::-1]),
    )


# --- agreement checks (used by tests and scenario registration) -------------


def _sample_box(box: Box, n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    lows = np.array([lo for lo, _ in box.axes])
    highs = np.array([hi for _, hi in box.axes])
    return lows + rng.random((n, box.dim)) * (highs - lows)


def gradient_deviation(f: ScalarField, box: Box, n: int = 1000, seed: int = 0) -> float:
    """Max componentwise |analytic - FD| / (1 + |analytic|) over a sample."""
    pts = _sample_box(box, n, seed)
    analytic = np.asarray(f.grad(pts), dtype=float)
    fd = np.stack([_fd_partial(f.fn, pts, a) for a in range(f.dim)], axis=-1)
    return float(np.max(np.abs(analytic - fd) / (1.0 + np.abs(analytic))))


def path_velocity_deviation(path: Path, n: int = 100, seed: int = 0) -> float:
    """Max |vel - central FD of pos| / (1 + |vel|) at random parameters."""
    a, b = path.domain
    rng = np.random.default_rng(seed)
    h = 1e-6
    t = a + h + rng.random(n) * ((b - a) - 2 * h)
    vel = np.asarray(path.vel(t), dtype=float)
    fd = (np.asarray(path.pos(t + h), float) - np.asarray(path.pos(t - h), float)) / (
        2 * h
    )
    return float(np.max(np.abs(vel - fd) / (1.0 + np.abs(vel))))


def surface_partial_deviation(
    surface: ParametricSurface, n: int = 100, seed: int = 0
) -> float:
    """Max deviation of du/dv handles from central FD of pos."""
    pts = _sample_box(surface.domain, n, seed)
    h = 1e-6
    worst = 0.0
    for axis, handle in ((0, surface.du), (1, surface.dv)):
        hi = pts.copy()
        lo = pts.copy()
        hi[:, axis] += h
        lo[:, axis] -= h
        fd = (
            np.asarray(surface.pos(hi), float) - np.asarray(surface.pos(lo), float)
        ) / (2 * h)
        an = np.asarray(handle(pts), dtype=float)
        worst = max(worst, float(np.max(np.abs(an - fd) / (1.0 + np.abs(an)))))
    return worst


def min_interior_normal(
    surface: ParametricSurface, n: int = 1000, seed: int = 0
) -> float:
    """Smallest ||N|| over a random interior sample (regularity probe)."""
    pts = _sample_box(surface.domain, n, seed)
    norms = np.sqrt(np.sum(surface.normal(pts) ** 2, axis=-1))
    return float(np.min(norms))
