"""Inner-product algebra of the ambient discrete Hilbert space.

A `DiscreteSpace` is R^N equipped with a diagonal quadrature metric
(strictly positive weights).  Everything downstream (Gram matrices,
orthonormal bases, projections, the inf-sup constant between a reduced
space and a measurement space) is expressed through this metric.

All functions are pure and all containers are immutable after
construction, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import RankZeroError, ValidationError

__all__ = [
    "DiscreteSpace",
    "Basis",
    "inner",
    "norm",
    "gram",
    "orthonormalize",
    "project",
    "inf_sup",
]

DEFAULT_DROP_TOL = 1e-10


def _frozen(a, dtype=float) -> np.ndarray:
    """Contiguous read-only copy of `a`."""
    out = np.array(a, dtype=dtype, order="C", copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class DiscreteSpace:
    """Background discretization: `dim` degrees of freedom with a diagonal metric.

    `weights` holds the quadrature volume attached to each dof; the inner
    product is sum_k weights[k] * a[k] * b[k].
    """

    dim: int
    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights)
        if w.ndim != 1:
            raise ValidationError("weights must be a 1-D vector")
        if self.dim != w.shape[0]:
            raise ValidationError(
                f"dim={self.dim} does not match len(weights)={w.shape[0]}"
            )
        if self.dim <= 0:
            raise ValidationError("dim must be a positive integer")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise ValidationError("all metric weights must be strictly positive")
        object.__setattr__(self, "weights", w)

    def check_vector(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        if a.shape != (self.dim,):
            raise ValidationError(
                f"vector of length {a.shape} incompatible with space of dim {self.dim}"
            )
        return a


def same_space(a: DiscreteSpace, b: DiscreteSpace) -> bool:
    return a.dim == b.dim and np.array_equal(a.weights, b.weights)


def _require_same_space(a: DiscreteSpace, b: DiscreteSpace) -> None:
    if not same_space(a, b):
        raise ValidationError("operands live in incompatible discrete spaces")


@dataclass(frozen=True)
class Basis:
    """Ordered set of coefficient vectors, stored as the rows of a matrix.

    When `orthonormal` is set the metric Gram matrix of the rows is the
    identity (to 1e-10 entrywise); constructors in this module guarantee it.
    """

    space: DiscreteSpace
    vectors: np.ndarray  # shape (n, N), one vector per row
    orthonormal: bool = False

    def __post_init__(self):
        v = _frozen(self.vectors)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValidationError("a basis needs at least one vector (2-D array)")
        if v.shape[1] != self.space.dim:
            raise ValidationError(
                f"basis vectors of length {v.shape[1]} do not match space dim {self.space.dim}"
            )
        if not np.all(np.isfinite(v)):
            raise ValidationError("basis vectors must be finite")
        object.__setattr__(self, "vectors", v)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def prefix(self, n: int) -> "Basis":
        """First `n` vectors as a basis (shares storage)."""
        if not 1 <= n <= self.n:
            raise ValidationError(f"prefix length {n} outside [1, {self.n}]")
        if n == self.n:
            return self
        return Basis(self.space, self.vectors[:n], orthonormal=self.orthonormal)


def inner(space: DiscreteSpace, a: np.ndarray, b: np.ndarray) -> float:
    """Metric inner product sum_k w_k a_k b_k."""
    a = space.check_vector(a)
    b = space.check_vector(b)
    return float(np.dot(space.weights * a, b))


def norm(space: DiscreteSpace, a: np.ndarray) -> float:
    return float(np.sqrt(max(inner(space, a, a), 0.0)))


def gram(A: Basis, B: Basis) -> np.ndarray:
    """Gram matrix G[i, j] = <A_i, B_j> in the shared metric."""
    _require_same_space(A.space, B.space)
    w = A.space.weights
    return A.vectors @ (B.vectors * w).T


def _first_significant_sign(q: np.ndarray) -> float:
    scale = np.max(np.abs(q))
    if scale == 0.0:
        return 1.0
    idx = int(np.argmax(np.abs(q) > 1e-12 * scale))
    return -1.0 if q[idx] < 0.0 else 1.0


def _mgs(vectors: np.ndarray, space: DiscreteSpace, drop_tol: float):
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Returns (matrix of orthonormal rows, indices of retained inputs).
    Inputs whose residual after projection is <= drop_tol times their
    original norm are dropped.  Retained vectors keep input order and get a
    deterministic sign (first significant entry nonnegative).
    """
    vecs = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vecs.shape[1] != space.dim:
        raise ValidationError("input vectors do not match the space dimension")
    w = space.weights
    rows: list[np.ndarray] = []
    kept: list[int] = []
    for i, v in enumerate(vecs):
        r = v.astype(float, copy=True)
        ref = np.sqrt(max(float(np.dot(w * r, r)), 0.0))
        for _ in range(2):  # second pass controls orthogonality leakage
            if rows:
                q = np.asarray(rows)
                r -= (q @ (w * r)) @ q
        nr = np.sqrt(max(float(np.dot(w * r, r)), 0.0))
        if nr <= drop_tol * ref:
            continue
        q_new = (r / nr) * _first_significant_sign(r / nr)
        rows.append(q_new)
        kept.append(i)
    if not rows:
        raise RankZeroError("all input vectors were dropped; span has rank zero")
    return np.asarray(rows), kept


def orthonormalize(
    vectors, space: DiscreteSpace, drop_tol: float = DEFAULT_DROP_TOL
) -> Basis:
    """Metric-orthonormal basis of span(vectors), input order preserved."""
    if drop_tol <= 0.0:
        raise ValidationError("drop_tol must be positive")
    mat, _ = _mgs(vectors, space, drop_tol)
    return Basis(space, mat, orthonormal=True)


def project(onto: Basis, v: np.ndarray):
    """Orthogonal projection of `v` onto an orthonormal basis.

    Returns (coeffs, projection) with coeffs[i] = <onto_i, v> and
    projection = sum coeffs[i] * onto_i.
    """
    if not onto.orthonormal:
        raise ValidationError("project requires an orthonormal basis")
    v = onto.space.check_vector(v)
    coeffs = onto.vectors @ (onto.space.weights * v)
    return coeffs, coeffs @ onto.vectors


def inf_sup(Vn: Basis, Wm: Basis) -> float:
    """Stability constant beta(Vn, Wm) = min singular value of gram(Wm, Vn).

    Equals the infimum over unit v in Vn of the norm of its projection
    onto Wm; the value always lies in [0, 1].  Requires dim Vn <= dim Wm.
    """
    if not (Vn.orthonormal and Wm.orthonormal):
        raise ValidationError("inf_sup requires orthonormal bases")
    if Vn.n > Wm.n:
        raise ValidationError(
            f"inf_sup needs dim(Vn)={Vn.n} <= dim(Wm)={Wm.n}"
        )
    s = scipy.linalg.svdvals(gram(Wm, Vn))
    return float(np.clip(s[-1], 0.0, 1.0))
