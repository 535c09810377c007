"""Built-in benchmark tensors and seeded random instances.

Six named fourth-order problems are provided.  ex1-ex3 are paired with the
sphere identity, ex4-ex6 with the diagonal identity:

* ex1: 3-dimensional tensor given by its 15 distinct index classes.
* ex2: diagonal tensor with a_{ii...i} = (i - 1) / i.
* ex3: 3-dimensional tensor assembled from nine literal entries and then
  symmetrized by permutation averaging.
* ex4: a_{ijkl} = sin(i + j + k + l).
* ex5: a_{ijkl} = tan(i) + tan(j) + tan(k) + tan(l).
* ex6: a_{ijkl} = (-1)^i / i + (-1)^j / j + (-1)^k / k + (-1)^l / l.

Formula indices are 1-based.  ``rand`` builds a seeded random symmetric
tensor for property testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .tensor import DenseSymmetricTensor, HIdentity, TensorOperator, ZIdentity, diagonal_tensor, symmetrize

__all__ = ["ProblemSpec", "parse_problem", "build", "random_symmetric", "random_start"]

_Z_PROBLEMS = ("ex1", "ex2", "ex3", "rand")
_H_PROBLEMS = ("ex4", "ex5", "ex6")

# The 15 distinct index classes of a symmetric order-4 dim-3 tensor.  Each
# value is replicated to every permutation of its index multiset.
_EX1_CLASSES = {
    (1, 1, 1, 1): 0.2883,
    (1, 1, 1, 2): -0.0031,
    (1, 1, 1, 3): 0.1973,
    (1, 1, 2, 2): -0.2485,
    (1, 2, 2, 3): 0.1862,
    (1, 1, 3, 3): 0.3847,
    (1, 2, 2, 2): 0.2972,
    (1, 1, 2, 3): -0.2939,
    (1, 2, 3, 3): 0.0919,
    (1, 3, 3, 3): -0.3619,
    (2, 2, 2, 2): 0.1241,
    (2, 2, 2, 3): -0.3420,
    (2, 2, 3, 3): 0.2127,
    (2, 3, 3, 3): 0.2727,
    (3, 3, 3, 3): -0.3054,
}

# Nine literal positions set on an all-zero tensor before symmetrizing;
# (1,2,2,2) and (2,1,1,1) are distinct slots here.
_EX3_ENTRIES = {
    (1, 1, 1, 1): 1.00397,
    (2, 2, 2, 2): 0.99397,
    (3, 3, 3, 3): 1.00207,
    (1, 2, 2, 2): 0.00401,
    (2, 1, 1, 1): 0.00788,
    (3, 1, 1, 1): 0.00001,
    (3, 2, 2, 2): 0.00005,
    (1, 3, 3, 3): 0.99603,
    (2, 3, 3, 3): 1.0040,
}


@dataclass(frozen=True)
class ProblemSpec:
    """A named benchmark instance: problem kind plus its parameters."""

    kind: str
    n: int = 5
    m: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _Z_PROBLEMS + _H_PROBLEMS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        if self.kind in ("ex1", "ex3") and self.n != 3:
            raise ValueError(f"{self.kind} is fixed at dimension 3")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.m < 2 or self.m % 2:
            raise ValueError("m must be even and >= 2")

    @property
    def b_kind(self) -> str:
        return "h" if self.kind in _H_PROBLEMS else "z"


def parse_problem(text: str) -> ProblemSpec:
    """Parse a CLI problem id such as ``ex1``, ``ex2:n=5`` or ``rand:n=4,m=4,seed=7``."""
    head, _, tail = text.strip().partition(":")
    kind = head.lower()
    params = {}
    if tail:
        for piece in tail.split(","):
            key, eq, value = piece.partition("=")
            if not eq or key.strip() not in ("n", "m", "seed"):
                raise ValueError(f"bad problem parameter {piece!r} in {text!r}")
            params[key.strip()] = int(value)
    if kind in ("ex1", "ex3"):
        params.setdefault("n", 3)
    return ProblemSpec(kind=kind, **params)


def _from_symmetric_formula(n: int, m: int, fn) -> DenseSymmetricTensor:
    # Evaluated on sorted index tuples so entries within a permutation class
    # are bit-identical even when fn sums floats in index order.
    shape = (n,) * m
    idx = np.indices(shape).reshape(m, -1)
    vals = fn(np.sort(idx, axis=0) + 1)
    return DenseSymmetricTensor(vals.reshape(shape), validate=False)


def _ex1() -> DenseSymmetricTensor:
    arr = np.zeros((3, 3, 3, 3))
    for idx, val in _EX1_CLASSES.items():
        for perm in set(itertools.permutations(idx)):
            arr[tuple(i - 1 for i in perm)] = val
    return DenseSymmetricTensor(arr)


def _ex3() -> DenseSymmetricTensor:
    arr = np.zeros((3, 3, 3, 3))
    for idx, val in _EX3_ENTRIES.items():
        arr[tuple(i - 1 for i in idx)] = val
    return symmetrize(arr)


def build(spec: ProblemSpec) -> tuple[DenseSymmetricTensor, TensorOperator]:
    """Materialize (A, B) for a problem spec."""
    n, m = spec.n, spec.m
    if spec.kind == "ex1":
        A = _ex1()
    elif spec.kind == "ex2":
        A = diagonal_tensor([(i - 1.0) / i for i in range(1, n + 1)], m)
    elif spec.kind == "ex3":
        A = _ex3()
    elif spec.kind == "ex4":
        A = _from_symmetric_formula(n, m, lambda I: np.sin(I.sum(axis=0)))
    elif spec.kind == "ex5":
        A = _from_symmetric_formula(n, m, lambda I: np.tan(I).sum(axis=0))
    elif spec.kind == "ex6":
        A = _from_symmetric_formula(n, m, lambda I: ((-1.0) ** I / I).sum(axis=0))
    else:
        A = random_symmetric(n, m, spec.seed)
    B = HIdentity(m, n) if spec.b_kind == "h" else ZIdentity(m, n)
    return A, B


def random_symmetric(n: int, m: int, seed: int) -> DenseSymmetricTensor:
    """Symmetrized tensor with entries drawn uniformly from [-1, 1]."""
    if n < 1 or m < 2 or m % 2:
        raise ValueError("need n >= 1 and even m >= 2")
    rng = np.random.default_rng(seed)
    return symmetrize(rng.uniform(-1.0, 1.0, size=(n,) * m))


def random_start(n: int, seed: int) -> np.ndarray:
    """Vector with entries uniform on [0, 1]; solvers do their own normalizing."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=n)
