"""Structured sample grids over (x1, x2, t)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import GridError

MIN_POINTS = 4


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if self.n < MIN_POINTS:
            raise GridError(f"axis needs >= {MIN_POINTS} points, got {self.n}")
        if not self.hi > self.lo:
            raise GridError(f"axis range [{self.lo}, {self.hi}] is not increasing")

    @property
    def spacing(self):
        return (self.hi - self.lo) / (self.n - 1)

    @property
    def nodes(self):
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class Grid3:
    """Axis ranges and point counts for (x1, x2, t); spacings derived."""

    x1: Axis
    x2: Axis
    t: Axis

    @classmethod
    def regular(cls, x1, x2, t):
        """Build from three (lo, hi, n) triples."""
        return cls(Axis(*x1), Axis(*x2), Axis(*t))

    @property
    def shape(self):
        return (self.x1.n, self.x2.n, self.t.n)

    def meshgrid(self):
        return np.meshgrid(
            self.x1.nodes, self.x2.nodes, self.t.nodes, indexing="ij"
        )

    def flat_points(self):
        """Dict of flattened coordinate arrays, one value per grid node."""
        X1, X2, T = self.meshgrid()
        return {"x1": X1.ravel(), "x2": X2.ravel(), "t": T.ravel()}

    def sample(self, e):
        """Evaluate an expression on the grid; returns an array of ``shape``."""
        from . import expr as ex

        out = ex.evaluate(e, self.flat_points())
        return np.broadcast_to(np.asarray(out, dtype=float), (self.size,)).reshape(
            self.shape
        )

    @property
    def size(self):
        return self.x1.n * self.x2.n * self.t.n
