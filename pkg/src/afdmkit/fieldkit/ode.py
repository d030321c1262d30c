"""Adaptive initial-value integration with named-state trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import OdeBlowupError


@dataclass(frozen=True)
class Trajectory:
    """Ordered samples of a named state along an independent variable."""

    s: np.ndarray
    names: tuple
    values: np.ndarray  # shape (len(s), len(names))

    def __post_init__(self):
        ds = np.diff(self.s)
        if not (np.all(ds > 0) or np.all(ds < 0)):
            raise ValueError("independent variable must be strictly monotone")
        if self.values.shape != (self.s.shape[0], len(self.names)):
            raise ValueError("state block shape mismatch")

    def __getitem__(self, name):
        return self.values[:, self.names.index(name)]

    def __len__(self):
        return self.s.shape[0]

    def column_stack(self):
        return np.column_stack([self.s, self.values])

    def to_csv(self, path, s_label="s"):
        header = ",".join([s_label, *self.names])
        np.savetxt(path, self.column_stack(), delimiter=",", header=header,
                   comments="", fmt="%.17g")


def integrate_ivp(rhs, y0, span, names=None, rtol=1e-9, atol=1e-12,
                  dense_at=None, method="DOP853", max_step=np.inf):
    """Integrate y' = rhs(s, y) over ``span`` with dense sampled output.

    Reversed spans integrate backward.  Step underflow near a singularity
    raises :class:`OdeBlowupError` carrying the location reached, as
    expected near finite-time blow-ups.
    """
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    if names is None:
        names = tuple(f"y{i}" for i in range(y0.shape[0]))
    names = tuple(names)
    s0, s1 = span
    if dense_at is None:
        dense_at = np.linspace(s0, s1, 201)
    dense_at = np.asarray(dense_at, dtype=float)

    sol = solve_ivp(rhs, (s0, s1), y0, method=method, rtol=rtol, atol=atol,
                    t_eval=dense_at, max_step=max_step)
    if sol.status == -1:
        raise OdeBlowupError(sol.message.strip().rstrip("."),
                             location=float(sol.t[-1]) if sol.t.size else s0)
    if not np.all(np.isfinite(sol.y)):
        raise OdeBlowupError("non-finite state reached",
                             location=float(sol.t[-1]))
    return Trajectory(s=sol.t, names=names, values=sol.y.T.copy())
