"""Forward-mode jets: values with exact partial derivatives to order 3.

A jet stores truncated Taylor coefficients over a tuple of axis names
(default ``("x1", "x2", "t")``).  Arithmetic propagates coefficients
exactly, so curvature-grade second and third derivatives carry no
finite-difference noise.  Coefficient arrays may be batched: shape
``(n_multi_indices,)`` for a single point or ``(n_multi_indices, N)``
for N points evaluated at once.

Mixed partials are symmetric by construction (one slot per multi-index).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
from scipy import sparse

from ..errors import EvaluationDomainError
from . import expr as ex

DEFAULT_AXES = ("x1", "x2", "t")
MAX_ORDER = 3


@lru_cache(maxsize=None)
def jet_space(dim, order):
    """Multi-index bookkeeping for ``dim`` axes truncated at ``order``.

    Returns (indices, position, scatter, left, right) where ``indices`` is
    the ordered tuple of multi-indices, ``position`` maps a multi-index to
    its row, and ``scatter @ (a[left] * b[right])`` is the truncated Taylor
    product.
    """
    indices = sorted(
        (a for a in itertools.product(range(order + 1), repeat=dim) if sum(a) <= order),
        key=lambda a: (sum(a), a),
    )
    indices = tuple(indices)
    position = {a: i for i, a in enumerate(indices)}
    rows, left, right = [], [], []
    for gamma in indices:
        g = position[gamma]
        for alpha in itertools.product(*(range(c + 1) for c in gamma)):
            beta = tuple(c - a for c, a in zip(gamma, alpha))
            rows.append(g)
            left.append(position[alpha])
            right.append(position[beta])
    n, p = len(indices), len(rows)
    scatter = sparse.csr_matrix(
        (np.ones(p), (np.array(rows), np.arange(p))), shape=(n, p)
    )
    return indices, position, scatter, np.array(left), np.array(right)


class Jet:
    """Truncated Taylor expansion at a point (or batch of points)."""

    __slots__ = ("axes", "order", "coeffs")

    def __init__(self, axes, order, coeffs):
        self.axes = tuple(axes)
        self.order = order
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, value, axes=DEFAULT_AXES, order=MAX_ORDER, nbatch=None):
        indices, _, _, _, _ = jet_space(len(axes), order)
        value = np.asarray(value, dtype=float)
        if value.ndim == 0 and nbatch is None:
            coeffs = np.zeros(len(indices))
            coeffs[0] = value
        else:
            n = value.shape[0] if value.ndim else nbatch
            coeffs = np.zeros((len(indices), n))
            coeffs[0] = value
        return cls(axes, order, coeffs)

    @classmethod
    def variable(cls, name, value, axes=DEFAULT_AXES, order=MAX_ORDER):
        j = cls.constant(value, axes, order)
        axis = axes.index(name)
        seed = tuple(1 if i == axis else 0 for i in range(len(axes)))
        _, position, _, _, _ = jet_space(len(axes), order)
        if order >= 1:
            j.coeffs[position[seed]] = 1.0
        return j

    # -- views -----------------------------------------------------------

    @property
    def value(self):
        return self.coeffs[0]

    def derivative(self, multi_index):
        """Exact partial derivative for a multi-index over ``self.axes``."""
        alpha = tuple(multi_index)
        if sum(alpha) > self.order:
            raise ValueError(f"order {sum(alpha)} exceeds jet order {self.order}")
        _, position, _, _, _ = jet_space(len(self.axes), self.order)
        fact = 1.0
        for a in alpha:
            fact *= math.factorial(a)
        return self.coeffs[position[alpha]] * fact

    def partials(self):
        """Map multi-index -> exact partial derivative (spec Jet view)."""
        indices, _, _, _, _ = jet_space(len(self.axes), self.order)
        return {alpha: self.derivative(alpha) for alpha in indices}

    # -- ring operations ---------------------------------------------------

    def _wrap(self, coeffs):
        return Jet(self.axes, self.order, coeffs)

    def __add__(self, other):
        if isinstance(other, Jet):
            return self._wrap(self.coeffs + other.coeffs)
        out = self.coeffs.copy()
        out[0] = out[0] + other
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Jet):
            return self._wrap(self.coeffs - other.coeffs)
        out = self.coeffs.copy()
        out[0] = out[0] - other
        return self._wrap(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self._wrap(self.coeffs * other)
        _, _, scatter, left, right = jet_space(len(self.axes), self.order)
        prod = self.coeffs[left] * other.coeffs[right]
        return self._wrap(scatter @ prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self._wrap(self.coeffs / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self, node=None):
        u0 = np.asarray(self.value)
        if np.any(u0 == 0):
            raise EvaluationDomainError("division by zero", node)
        d = [1.0 / u0, -(u0**-2.0), 2.0 * u0**-3.0, -6.0 * u0**-4.0]
        return self.compose(d[: self.order + 1])

    def compose(self, derivs):
        """Apply a scalar function given its derivatives at ``self.value``.

        ``derivs[k]`` is the k-th derivative of the function at the value
        row; composition follows the truncated Taylor expansion in the
        zero-constant perturbation part.
        """
        delta = self.coeffs.copy()
        delta0 = np.zeros_like(np.asarray(delta[0]))
        delta[0] = delta0
        delta = self._wrap(delta)
        out = Jet.constant(
            np.asarray(derivs[0], dtype=float),
            self.axes,
            self.order,
            nbatch=None if self.coeffs.ndim == 1 else self.coeffs.shape[1],
        )
        if self.coeffs.ndim == 1:
            out.coeffs[0] = derivs[0]
        term = None
        fact = 1.0
        for k in range(1, min(self.order, len(derivs) - 1) + 1):
            term = delta if term is None else term * delta
            fact *= k
            out = out + term * (np.asarray(derivs[k], dtype=float) / fact)
        return out

    # -- calculus ----------------------------------------------------------

    def partial(self, axis_name):
        """Jet of the partial derivative (order drops by one)."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        axis = self.axes.index(axis_name)
        dim = len(self.axes)
        indices, position, _, _, _ = jet_space(dim, self.order)
        new_indices, new_position, _, _, _ = jet_space(dim, self.order - 1)
        shape = (len(new_indices),) + np.shape(self.coeffs)[1:]
        out = np.zeros(shape)
        for alpha in new_indices:
            shifted = tuple(
                a + 1 if i == axis else a for i, a in enumerate(alpha)
            )
            out[new_position[alpha]] = self.coeffs[position[shifted]] * (
                alpha[axis] + 1
            )
        return Jet(self.axes, self.order - 1, out)

    def truncate(self, order):
        """View of the jet at a lower order."""
        if order == self.order:
            return self
        if order > self.order:
            raise ValueError("cannot raise jet order")
        indices, _, _, _, _ = jet_space(len(self.axes), order)
        return Jet(self.axes, order, self.coeffs[: len(indices)])


# -- expression evaluation ---------------------------------------------------


def _apply_unary(op, u, node):
    u0 = np.asarray(u.value)
    if op == "neg":
        return -u
    if op == "exp":
        e = np.exp(u0)
        return u.compose([e, e, e, e][: u.order + 1])
    if op == "ln":
        if np.any(u0 <= 0):
            raise EvaluationDomainError("ln of a non-positive value", node)
        d = [np.log(u0), 1.0 / u0, -(u0**-2.0), 2.0 * u0**-3.0]
        return u.compose(d[: u.order + 1])
    if op == "sin":
        s, c = np.sin(u0), np.cos(u0)
        return u.compose([s, c, -s, -c][: u.order + 1])
    if op == "cos":
        s, c = np.sin(u0), np.cos(u0)
        return u.compose([c, -s, -c, s][: u.order + 1])
    if op == "sqrt":
        if np.any(u0 < 0):
            raise EvaluationDomainError("sqrt of a negative value", node)
        if u.order >= 1 and np.any(u0 == 0):
            raise EvaluationDomainError("sqrt derivative at zero", node)
        r = np.sqrt(u0)
        d = [r, 0.5 / r, -0.25 / (u0 * r), 0.375 / (u0**2 * r)]
        return u.compose(d[: u.order + 1])
    # abs: |u|' = sign(u) u' with the derivative pinned to 0 at u = 0
    sign = np.sign(u0)
    out = u.coeffs * sign
    out[0] = np.abs(u0)
    return u._wrap(out)


def _apply_pow(u, p, node):
    u0 = np.asarray(u.value)
    if p != int(p) and np.any(u0 < 0):
        raise EvaluationDomainError(f"fractional power {p} of a negative base", node)
    if (p != int(p) or p < 0) and np.any(u0 == 0):
        raise EvaluationDomainError("power undefined at zero base", node)
    derivs = []
    fac = 1.0
    for k in range(u.order + 1):
        if fac == 0.0:
            derivs.append(np.zeros_like(u0))
        else:
            derivs.append(fac * u0 ** (p - k))
        fac *= p - k
    return u.compose(derivs)


def jet_eval(e, env, axes=DEFAULT_AXES, order=MAX_ORDER):
    """Evaluate an expression tree into a jet.

    ``env`` binds every variable occurring in ``e`` to a scalar or a 1-D
    batch array; variables listed in ``axes`` are differentiation seeds,
    all others enter as constants.
    """
    if isinstance(e, ex.Const):
        nbatch = _batch_size(env)
        return Jet.constant(e.value, axes, order, nbatch=nbatch)
    if isinstance(e, ex.Var):
        try:
            value = env[e.name]
        except KeyError:
            raise EvaluationDomainError(f"no value bound for '{e.name}'", e) from None
        if e.name in axes:
            return Jet.variable(e.name, value, axes, order)
        return Jet.constant(value, axes, order, nbatch=_batch_size(env))
    if isinstance(e, ex.Pow):
        return _apply_pow(jet_eval(e.base, env, axes, order), e.exponent, e)
    if isinstance(e, ex.Unary):
        return _apply_unary(e.op, jet_eval(e.arg, env, axes, order), e)
    lhs = jet_eval(e.lhs, env, axes, order)
    rhs = jet_eval(e.rhs, env, axes, order)
    if e.op == "+":
        return lhs + rhs
    if e.op == "-":
        return lhs - rhs
    if e.op == "*":
        return lhs * rhs
    return lhs * rhs.reciprocal(node=e)


def _batch_size(env):
    for v in env.values():
        a = np.asarray(v)
        if a.ndim:
            return a.shape[0]
    return None


def evaluate_jet(e, point, order=MAX_ORDER):
    """Spec entry point: jet of ``e`` at a point over ``(x1, x2, t)``.

    ``point`` is a triple of scalars (or of equal-length batch arrays);
    returns a :class:`Jet` whose ``partials()`` map carries every exact
    partial derivative of total order <= ``order``.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}")
    x1, x2, t = point
    return jet_eval(e, {"x1": x1, "x2": x2, "t": t}, DEFAULT_AXES, order)
