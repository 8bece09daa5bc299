"""Independent naive-loop references for the sum variants.

Everything here recomputes terms one cell at a time with plain Python
floats, decodes cell indices by hand, and accumulates with math.fsum, so it
shares no code path with the vectorized implementations it checks. Fields
used with these oracles should be polynomial (arithmetic only), keeping
scalar and vectorized evaluation bit-identical.
"""

from __future__ import annotations

import math

import numpy as np


def unravel(k: int, counts) -> list[int]:
    idx = [0] * len(counts)
    for axis in range(len(counts) - 1, -1, -1):
        idx[axis] = k % counts[axis]
        k //= counts[axis]
    return idx


def naive_box_terms(f, partition, perturbation=None) -> list[float]:
    counts = partition.counts
    widths = [w.tolist() for w in partition.axis_widths]
    if perturbation is not None:
        widths = [w.tolist() for w in perturbation.axis_widths]
    terms = []
    for k in range(partition.m):
        idx = unravel(k, counts)
        measure = 1.0
        for axis, j in enumerate(idx):
            measure = measure * widths[axis][j]
        value = float(f(partition.tags[k]))
        terms.append(value * measure)
    return terms


def naive_line_terms(field, path, partition, perturbation=None, vector=False):
    widths = partition.measures.tolist()
    if perturbation is not None:
        widths = perturbation.measures.tolist()
    terms = []
    for k in range(partition.m):
        t = float(partition.tags[k, 0])
        pos = np.asarray(path.pos(t), dtype=float)
        vel = np.asarray(path.vel(t), dtype=float)
        if vector:
            fv = np.asarray(field(pos), dtype=float)
            dot = 0.0
            for a, b in zip(fv.tolist(), vel.tolist()):
                dot = dot + a * b
            terms.append(dot * widths[k])
        else:
            speed_sq = 0.0
            for component in vel.tolist():
                speed_sq = speed_sq + component * component
            terms.append(float(field(pos)) * math.sqrt(speed_sq) * widths[k])
    return terms


def naive_surface_terms(field, surface, partition, perturbation=None, vector=False):
    widths = partition.measures.tolist()
    if perturbation is not None:
        widths = perturbation.measures.tolist()
    terms = []
    for k in range(partition.m):
        uv = partition.tags[k]
        pos = np.asarray(surface.pos(uv), dtype=float)
        a = np.asarray(surface.du(uv), dtype=float).tolist()
        b = np.asarray(surface.dv(uv), dtype=float).tolist()
        normal = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
        if vector:
            fv = np.asarray(field(pos), dtype=float).tolist()
            dot = 0.0
            for fc, nc in zip(fv, normal):
                dot = dot + fc * nc
            terms.append(dot * widths[k])
        else:
            norm_sq = 0.0
            for nc in normal:
                norm_sq = norm_sq + nc * nc
            terms.append(float(field(pos)) * math.sqrt(norm_sq) * widths[k])
    return terms


def naive_total(terms, deleted=()) -> float:
    dropped = set(deleted)
    return math.fsum(t for k, t in enumerate(terms) if k not in dropped)


def naive_magnitude(terms, deleted=()) -> float:
    dropped = set(deleted)
    return math.fsum(abs(t) for k, t in enumerate(terms) if k not in dropped)


# --- random polynomial inputs (bitwise-safe under vectorization) -------------


def random_box(rng, dim):
    axes = []
    for _ in range(dim):
        lo = float(rng.uniform(-2.0, 1.0))
        hi = lo + float(rng.uniform(0.2, 2.5))
        axes.append((lo, hi))
    return axes


def random_poly_scalar(rng, dim, box_axes):
    """Quadratic polynomial field with a conservatively declared sup bound."""
    c0 = float(rng.uniform(-2, 2))
    lin = [float(rng.uniform(-2, 2)) for _ in range(dim)]
    quad = [float(rng.uniform(-2, 2)) for _ in range(dim)]

    def fn(p):
        out = np.full(p.shape[:-1], c0)
        for axis in range(dim):
            x = p[..., axis]
            out = out + lin[axis] * x + quad[axis] * (x * x)
        return out

    bound = abs(c0)
    for axis, (lo, hi) in enumerate(box_axes):
        big = max(abs(lo), abs(hi))
        bound += abs(lin[axis]) * big + abs(quad[axis]) * big * big
    return fn, bound


def random_poly_path(rng, dim_out=2):
    """Polynomial path on [0, 1] with exact velocity handle."""
    coeffs = [
        [float(rng.uniform(-1, 1)) for _ in range(3)] for _ in range(dim_out)
    ]

    def pos(t):
        t = np.asarray(t, dtype=float)
        comps = [c[0] + c[1] * t + c[2] * (t * t) for c in coeffs]
        return np.stack(comps, axis=-1)

    def vel(t):
        t = np.asarray(t, dtype=float)
        comps = [c[1] + 2.0 * c[2] * t for c in coeffs]
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    return pos, vel


def random_poly_surface(rng):
    """Graph surface (u, v, a*u + b*v + c*u*v) with exact partials."""
    a = float(rng.uniform(-1, 1))
    b = float(rng.uniform(-1, 1))
    c = float(rng.uniform(-1, 1))

    def pos(p):
        u, v = p[..., 0], p[..., 1]
        return np.stack([u, v, a * u + b * v + c * (u * v)], axis=-1)

    def du(p):
        u, v = p[..., 0], p[..., 1]
        one = np.ones(p.shape[:-1])
        zero = np.zeros(p.shape[:-1])
        return np.stack([one, zero, a + c * v], axis=-1)

    def dv(p):
        u, v = p[..., 0], p[..., 1]
        one = np.ones(p.shape[:-1])
        zero = np.zeros(p.shape[:-1])
        return np.stack([zero, one, b + c * u], axis=-1)

    return pos, du, dv
