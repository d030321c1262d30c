"""Cumulative quadrature along the time axis of a sampled field."""

from __future__ import annotations

import numpy as np

from ..errors import GridError


def _cumulative_trapezoid(f, h):
    out = np.zeros_like(f)
    out[..., 1:] = np.cumsum((f[..., 1:] + f[..., :-1]) * (h / 2.0), axis=-1)
    return out


def _cumulative_simpson(f, h):
    """Composite Simpson running integral on a uniformly spaced last axis.

    Even nodes accumulate exact composite Simpson pair sums; odd nodes
    integrate the same local parabola over its first half, i.e.
    h (5 f0 + 8 f1 - f2) / 12.
    """
    out = np.zeros_like(f)
    f0 = f[..., 0:-2:2]
    f1 = f[..., 1:-1:2]
    f2 = f[..., 2::2]
    half = h * (5.0 * f0 + 8.0 * f1 - f2) / 12.0
    full = h * (f0 + 4.0 * f1 + f2) / 3.0
    out[..., 2::2] = np.cumsum(full, axis=-1)
    out[..., 1::2] = out[..., 0:-2:2] + half
    return out


def cumulative_time_integral(f, grid, t0):
    """Running integral F(., ., t) = \\int_{t0}^{t} f dt' on a Grid3 field.

    Composite Simpson when the t-axis has an odd node count (even interval
    count), trapezoid otherwise; F is zero on the first time slice and its
    time derivative recovers f.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != grid.shape:
        raise GridError(f"field shape {f.shape} != grid shape {grid.shape}")
    if not np.isclose(t0, grid.t.lo, rtol=0.0, atol=1e-12 * max(1.0, abs(grid.t.lo))):
        raise GridError(f"t0 = {t0} does not match the first t node {grid.t.lo}")
    h = grid.t.spacing
    if grid.t.n % 2 == 1:
        return _cumulative_simpson(f, h)
    return _cumulative_trapezoid(f, h)


def cumulative_integral_1d(f, nodes):
    """Same rule for a standalone uniformly spaced 1-D sample array."""
    f = np.asarray(f, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    if f.shape[-1] != nodes.shape[0]:
        raise GridError("sample / node count mismatch")
    h = nodes[1] - nodes[0]
    if not np.allclose(np.diff(nodes), h, rtol=1e-10, atol=1e-12):
        raise GridError("nodes must be uniformly spaced")
    if nodes.shape[0] % 2 == 1:
        return _cumulative_simpson(f, h)
    return _cumulative_trapezoid(f, h)
