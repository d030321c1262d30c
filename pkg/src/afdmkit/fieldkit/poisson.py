"""Five-point-stencil Poisson solver on a rectangle with Dirichlet data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import cg, spsolve

from ..errors import GridError, NonConvergenceError

DIRECT_NODE_LIMIT = 256 * 256
CG_MAX_ITER = 20000
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class Rectangle:
    x1_lo: float
    x1_hi: float
    x2_lo: float
    x2_hi: float


def _laplacian_apply(psi, hx, hy):
    out = np.zeros_like(psi)
    out[1:-1, 1:-1] = (
        (psi[2:, 1:-1] - 2.0 * psi[1:-1, 1:-1] + psi[:-2, 1:-1]) / hx**2
        + (psi[1:-1, 2:] - 2.0 * psi[1:-1, 1:-1] + psi[1:-1, :-2]) / hy**2
    )
    return out


def solve_poisson_2d(rhs, domain, boundary):
    """Solve psi_x1x1 + psi_x2x2 = rhs with Dirichlet boundary values.

    ``rhs`` and ``boundary`` are (n1, n2) arrays on the node lattice of
    ``domain`` (boundary values are read off the edge rows/columns of
    ``boundary``).  Direct sparse solve up to 256^2 nodes, conjugate
    gradients beyond; the discrete residual is driven below 1e-10 either
    way and verified before returning.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.ndim != 2 or min(rhs.shape) < 3:
        raise GridError("rhs must be a 2-D array with at least 3 nodes per side")
    if not np.all(np.isfinite(rhs)):
        raise GridError("rhs must be finite on the domain")
    n1, n2 = rhs.shape
    boundary = np.broadcast_to(np.asarray(boundary, dtype=float), rhs.shape)
    hx = (domain.x1_hi - domain.x1_lo) / (n1 - 1)
    hy = (domain.x2_hi - domain.x2_lo) / (n2 - 1)

    psi = np.array(boundary, dtype=float, copy=True)
    m1, m2 = n1 - 2, n2 - 2

    # interior unknowns, row-major over (i, j)
    def k(i, j):
        return (i - 1) * m2 + (j - 1)

    n_unknown = m1 * m2
    main = np.full(n_unknown, -2.0 / hx**2 - 2.0 / hy**2)
    A = sparse.lil_matrix((n_unknown, n_unknown))
    A.setdiag(main)
    b = rhs[1:-1, 1:-1].astype(float).ravel().copy()
    ix = 1.0 / hx**2
    iy = 1.0 / hy**2
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            row = k(i, j)
            if i > 1:
                A[row, k(i - 1, j)] = ix
            else:
                b[row] -= ix * psi[0, j]
            if i < n1 - 2:
                A[row, k(i + 1, j)] = ix
            else:
                b[row] -= ix * psi[n1 - 1, j]
            if j > 1:
                A[row, k(i, j - 1)] = iy
            else:
                b[row] -= iy * psi[i, 0]
            if j < n2 - 2:
                A[row, k(i, j + 1)] = iy
            else:
                b[row] -= iy * psi[i, n2 - 1]
    A = A.tocsr()

    if n1 * n2 <= DIRECT_NODE_LIMIT:
        interior = spsolve(A, b)
    else:
        interior, info = cg(A, b, rtol=1e-14, atol=0.0, maxiter=CG_MAX_ITER)
        if info != 0:
            raise NonConvergenceError(
                f"conjugate gradients did not converge (info={info})"
            )
    psi[1:-1, 1:-1] = interior.reshape(m1, m2)

    resid = _laplacian_apply(psi, hx, hy)[1:-1, 1:-1] - rhs[1:-1, 1:-1]
    scale = max(1.0, float(np.abs(b).max()))
    if np.abs(resid).max() > RESIDUAL_TOL * scale:
        raise NonConvergenceError(
            f"discrete residual {np.abs(resid).max():.3e} above tolerance"
        )
    return psi


def discrete_residual(psi, rhs, domain):
    """Interior residual of the 5-point operator for an alleged solution."""
    psi = np.asarray(psi, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    n1, n2 = psi.shape
    hx = (domain.x1_hi - domain.x1_lo) / (n1 - 1)
    hy = (domain.x2_hi - domain.x2_lo) / (n2 - 1)
    return _laplacian_apply(psi, hx, hy)[1:-1, 1:-1] - rhs[1:-1, 1:-1]
