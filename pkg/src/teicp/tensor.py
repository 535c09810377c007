"""Dense symmetric tensors, identity operators, and contraction kernels.

An order-m dimension-n tensor is stored densely as a numpy array of shape
(n, ..., n).  Contractions against a vector x follow the multilinear
conventions: T x^m is a scalar, T x^{m-1} a vector, and T x^{m-2} a
symmetric matrix, each summing the free indices against copies of x.
"""

from __future__ import annotations

import abc
import functools
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TensorOperator",
    "DenseSymmetricTensor",
    "HIdentity",
    "ZIdentity",
    "contract_m",
    "contract_m_minus_1",
    "contract_m_minus_2",
    "symmetrize",
    "principal_subtensor",
    "diagonal_tensor",
    "tensor_from_json",
    "load_tensor_json",
]

# Symmetry is verified entry-by-entry up to this many elements; above it,
# random (index, permutation) pairs are sampled instead.
_EXHAUSTIVE_CHECK_LIMIT = 10**6
_SYMMETRY_SAMPLES = 100


def _class_keys(dim: int, order: int) -> np.ndarray:
    """Flat position of the sorted representative of every index tuple."""
    idx = np.indices((dim,) * order).reshape(order, -1)
    return np.ravel_multi_index(tuple(np.sort(idx, axis=0)), (dim,) * order)


class TensorOperator(abc.ABC):
    """An order-m operator known through its contractions at a point.

    Implementations provide the homogeneous form T x^m, the vector
    T x^{m-1}, and the matrix T x^{m-2}.  The three are consistent:
    x . (T x^{m-1}) = T x^m and x^T (T x^{m-2}) x = T x^m.
    """

    order: int
    dim: int

    def _coerce(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(
                f"expected a vector of length {self.dim}, got shape {x.shape}"
            )
        return x

    @abc.abstractmethod
    def contract_m(self, x) -> float:
        """Scalar T x^m."""

    @abc.abstractmethod
    def contract_m_minus_1(self, x) -> np.ndarray:
        """Vector whose i-th component sums T against m-1 copies of x."""

    @abc.abstractmethod
    def contract_m_minus_2(self, x) -> np.ndarray:
        """Symmetric matrix summing T against m-2 copies of x."""


class DenseSymmetricTensor(TensorOperator):
    """Fully dense order-m dimension-n tensor with symmetric entries.

    Entries are held as a read-only ndarray of shape (n,) * m.  Construction
    verifies invariance under index permutations unless ``validate=False``
    (used internally where symmetry holds by construction).
    """

    def __init__(self, entries, validate: bool = True):
        arr = np.array(entries, dtype=float, copy=True)
        if arr.ndim < 2:
            raise ValueError("tensor order must be at least 2")
        if arr.shape[0] < 1 or any(s != arr.shape[0] for s in arr.shape):
            raise ValueError(f"entries must be square in every axis, got {arr.shape}")
        arr.setflags(write=False)
        self.entries = arr
        self.order = arr.ndim
        self.dim = arr.shape[0]
        if validate:
            self._validate_symmetry()

    def _validate_symmetry(self) -> None:
        if self.entries.size <= _EXHAUSTIVE_CHECK_LIMIT:
            flat = self.entries.ravel()
            if not np.array_equal(flat, flat[_class_keys(self.dim, self.order)]):
                raise ValueError("entries are not invariant under index permutations")
            return
        rng = np.random.default_rng(0)
        for _ in range(_SYMMETRY_SAMPLES):
            idx = tuple(rng.integers(0, self.dim, size=self.order))
            perm = tuple(rng.permutation(np.array(idx)))
            if self.entries[idx] != self.entries[perm]:
                raise ValueError("entries are not invariant under index permutations")

    def __repr__(self) -> str:
        return f"DenseSymmetricTensor(order={self.order}, dim={self.dim})"

    def contract_m(self, x) -> float:
        x = self._coerce(x)
        return float(functools.reduce(np.dot, [self.entries] + [x] * self.order))

    def contract_m_minus_1(self, x) -> np.ndarray:
        x = self._coerce(x)
        return functools.reduce(np.dot, [self.entries] + [x] * (self.order - 1))

    def contract_m_minus_2(self, x) -> np.ndarray:
        x = self._coerce(x)
        if self.order == 2:
            return self.entries
        return functools.reduce(np.dot, [self.entries] + [x] * (self.order - 2))


@dataclass(frozen=True)
class HIdentity(TensorOperator):
    """Diagonal identity: contractions reduce to componentwise powers."""

    order: int
    dim: int

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.dim < 1:
            raise ValueError("dim must be positive")

    def contract_m(self, x) -> float:
        x = self._coerce(x)
        return float(np.sum(x**self.order))

    def contract_m_minus_1(self, x) -> np.ndarray:
        x = self._coerce(x)
        return x ** (self.order - 1)

    def contract_m_minus_2(self, x) -> np.ndarray:
        x = self._coerce(x)
        return np.diag(x ** (self.order - 2))


@dataclass(frozen=True)
class ZIdentity(TensorOperator):
    """Sphere identity: maps x to ||x||^{m-2} x (order must be even).

    The matrix form is defined through the Hessian relation
    m (m-1) * (eps x^{m-2}) = Hess(||x||^m), which keeps all three
    contractions mutually consistent; on the unit sphere the vector
    contraction is x itself.
    """

    order: int
    dim: int

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError("sphere identity requires an even order >= 2")
        if self.dim < 1:
            raise ValueError("dim must be positive")

    def contract_m(self, x) -> float:
        x = self._coerce(x)
        return float(x @ x) ** (self.order // 2)

    def contract_m_minus_1(self, x) -> np.ndarray:
        x = self._coerce(x)
        return float(x @ x) ** ((self.order - 2) // 2) * x

    def contract_m_minus_2(self, x) -> np.ndarray:
        x = self._coerce(x)
        m = self.order
        if m == 2:
            return np.eye(self.dim)
        sq = float(x @ x)
        if sq == 0.0 and m > 4:
            raise ValueError(
                "matrix contraction of the sphere identity needs x != 0 for order > 4"
            )
        lead = sq ** ((m - 2) // 2)
        cross = (m - 2) * (1.0 if m == 4 else sq ** ((m - 4) // 2))
        return (lead * np.eye(self.dim) + cross * np.outer(x, x)) / (m - 1)


def contract_m(operator: TensorOperator, x) -> float:
    """Scalar contraction T x^m."""
    return operator.contract_m(x)


def contract_m_minus_1(operator: TensorOperator, x) -> np.ndarray:
    """Vector contraction T x^{m-1}."""
    return operator.contract_m_minus_1(x)


def contract_m_minus_2(operator: TensorOperator, x) -> np.ndarray:
    """Matrix contraction T x^{m-2}."""
    return operator.contract_m_minus_2(x)


def symmetrize(raw) -> DenseSymmetricTensor:
    """Average a raw tensor over all index permutations.

    Every entry of the result is the mean of its permutation class.  Classes
    whose members are already equal keep their value bit-for-bit, so the map
    is exactly idempotent and already-symmetric inputs are fixed points.
    """
    if isinstance(raw, DenseSymmetricTensor):
        raw = raw.entries
    arr = np.asarray(raw, dtype=float)
    if arr.ndim < 2 or any(s != arr.shape[0] for s in arr.shape):
        raise ValueError(f"expected a square order-m array, got shape {arr.shape}")
    keys = _class_keys(arr.shape[0], arr.ndim)
    flat = arr.ravel()
    counts = np.bincount(keys, minlength=flat.size)
    sums = np.bincount(keys, weights=flat, minlength=flat.size)
    rep = flat[keys]
    constant = np.bincount(keys, weights=(flat == rep).astype(float), minlength=flat.size)
    means = sums / np.maximum(counts, 1)
    out = np.where(constant[keys] == counts[keys], rep, means[keys])
    return DenseSymmetricTensor(out.reshape(arr.shape), validate=False)


def principal_subtensor(tensor: DenseSymmetricTensor, indices) -> DenseSymmetricTensor:
    """Restrict a tensor to the given (0-based) index set, reindexed densely."""
    idx = sorted({int(i) for i in indices})
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= tensor.dim:
        raise IndexError(f"index set out of range for dimension {tensor.dim}")
    sub = tensor.entries[np.ix_(*([idx] * tensor.order))]
    return DenseSymmetricTensor(sub, validate=False)


def diagonal_tensor(values, order: int) -> DenseSymmetricTensor:
    """Dense tensor with the given values on the super-diagonal, zero elsewhere."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size < 1:
        raise ValueError("values must be a nonempty vector")
    arr = np.zeros((vals.size,) * order)
    arr[tuple(np.arange(vals.size) for _ in range(order))] = vals
    return DenseSymmetricTensor(arr, validate=False)


def tensor_from_json(doc: dict) -> DenseSymmetricTensor:
    """Build a tensor from the JSON document format.

    The document lists only explicitly-set entries with 1-based indices::

        {"order": m, "dim": n, "entries": [{"idx": [i1, ..., im], "val": v}, ...]}

    Unlisted entries are zero.  With ``"symmetrize": true`` the permutation
    average is applied after placement; otherwise the listed entries must
    already be symmetric.
    """
    m = int(doc["order"])
    n = int(doc["dim"])
    if m < 2 or n < 1:
        raise ValueError(f"bad tensor shape: order {m}, dim {n}")
    raw = np.zeros((n,) * m)
    for item in doc.get("entries", []):
        idx = tuple(int(i) - 1 for i in item["idx"])
        if len(idx) != m or any(i < 0 or i >= n for i in idx):
            raise ValueError(f"bad index {item['idx']} for order {m}, dim {n}")
        raw[idx] = float(item["val"])
    if doc.get("symmetrize", False):
        return symmetrize(raw)
    return DenseSymmetricTensor(raw)


def load_tensor_json(path) -> DenseSymmetricTensor:
    """Read a tensor from a JSON file in the ``tensor_from_json`` format."""
    with open(path, "r", encoding="utf-8") as fh:
        return tensor_from_json(json.load(fh))
