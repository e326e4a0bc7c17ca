"""Sparse nonnegative tensors and the primitives of the eigen-equation.

Indices are 0-based throughout the Python API; the text format and the CLI
use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import InputError, PreconditionError


class SparseTensor:
    """Order-``m``, dimension-``n`` nonnegative tensor in coordinate form.

    Only strictly positive entries are stored. Entries are kept sorted in
    ascending lexicographic order of their index tuples so that every
    reduction over them runs in a fixed order.
    """

    __slots__ = ("order", "dim", "indices", "values")

    def __init__(self, order: int, dim: int, indices, values):
        order, dim = int(order), int(dim)
        if order < 2:
            raise InputError(f"tensor order must be >= 2, got {order}")
        if dim < 1:
            raise InputError(f"tensor dimension must be >= 1, got {dim}")
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0:
            idx = idx.reshape(0, order)
        val = np.asarray(values, dtype=np.float64).reshape(-1)
        if idx.ndim != 2 or idx.shape[1] != order:
            raise InputError(f"index array must have shape (nnz, {order})")
        if idx.shape[0] != val.shape[0]:
            raise InputError("indices and values differ in length")
        if idx.size and (idx.min() < 0 or idx.max() >= dim):
            raise InputError(f"index out of range for dimension {dim}")
        if not np.all(np.isfinite(val)) or np.any(val <= 0):
            raise InputError("stored values must be finite and strictly positive")

        # np.lexsort sorts by its last key first
        perm = np.lexsort(idx.T[::-1]) if len(val) else np.arange(0)
        idx, val = idx[perm], val[perm]
        if len(val) > 1:
            dup = np.all(idx[1:] == idx[:-1], axis=1)
            if dup.any():
                k = int(np.argmax(dup))
                raise InputError(f"duplicate index tuple {tuple(int(i) + 1 for i in idx[k])}")
        idx.setflags(write=False)
        val.setflags(write=False)
        self.order = order
        self.dim = dim
        self.indices = idx
        self.values = val

    @classmethod
    def from_entries(cls, order: int, dim: int,
                     entries: Mapping[tuple, float] | Iterable[tuple[tuple, float]]):
        """Build from ``{(i1, ..., im): value}`` or an iterable of pairs (0-based)."""
        items = entries.items() if isinstance(entries, Mapping) else entries
        idx, val = [], []
        for key, v in items:
            idx.append(tuple(key))
            val.append(v)
        return cls(order, dim, idx, val)

    @classmethod
    def from_dense(cls, array) -> "SparseTensor":
        a = np.asarray(array, dtype=np.float64)
        if a.ndim < 2 or len(set(a.shape)) != 1:
            raise InputError("dense tensor must be a hypercube of order >= 2")
        if np.any(a < 0):
            raise InputError("dense tensor has negative entries")
        idx = np.argwhere(a > 0)
        return cls(a.ndim, a.shape[0], idx, a[tuple(idx.T)])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim,) * self.order)
        out[tuple(self.indices.T)] = self.values
        return out

    @property
    def nnz(self) -> int:
        return len(self.values)

    @property
    def leads(self) -> np.ndarray:
        return self.indices[:, 0]

    @property
    def tails(self) -> np.ndarray:
        return self.indices[:, 1:]

    def entries(self):
        """Yield ``(index_tuple, value)`` in lexicographic order."""
        for row, v in zip(self.indices.tolist(), self.values.tolist()):
            yield tuple(row), v

    def diagonal_mask(self) -> np.ndarray:
        return np.all(self.indices == self.indices[:, :1], axis=1)

    def has_zero_diagonal(self) -> bool:
        return not self.diagonal_mask().any()

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.order == other.order and self.dim == other.dim
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.order, self.dim, self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self):
        return f"SparseTensor(order={self.order}, dim={self.dim}, nnz={self.nnz})"


@dataclass(frozen=True)
class RowProfile:
    """Row sums ``r``, weighted row sums ``S`` and tail neighbourhoods ``N(i)``."""

    r: np.ndarray
    S: np.ndarray
    neighbors: tuple[frozenset[int], ...]


def as_vector(x, n: int, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=np.float64).reshape(-1)
    if v.shape[0] != n:
        raise InputError(f"{name} has length {v.shape[0]}, expected {n}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name} has non-finite components")
    return v


def as_weights(w, n: int) -> np.ndarray:
    """Validate a strictly positive weight vector of length ``n``."""
    v = as_vector(w, n, "weight vector")
    if np.any(v <= 0):
        raise InputError("weights must be strictly positive")
    return v


def as_shift(t, n: int) -> np.ndarray:
    """Validate a nonnegative diagonal shift; ``None`` means no shift."""
    if t is None:
        return np.zeros(n)
    v = as_vector(t, n, "diagonal shift")
    if np.any(v < 0):
        raise InputError("diagonal shifts must be nonnegative")
    return v


def _tail_products(T: SparseTensor, x: np.ndarray) -> np.ndarray:
    # value * x_{i2} * ... * x_{im}, multiplied left to right
    p = np.array(T.values, dtype=np.float64)
    for c in range(1, T.order):
        p *= x[T.indices[:, c]]
    return p


def apply(T: SparseTensor, x) -> np.ndarray:
    """Return the vector ``T x^{m-1}``.

    Component ``i`` sums ``a[i, i2, ..., im] * x[i2] * ... * x[im]`` over the
    stored entries with lead index ``i``, in lexicographic entry order.
    """
    x = as_vector(x, T.dim)
    return np.bincount(T.leads, weights=_tail_products(T, x), minlength=T.dim)


def power_vector(x, r: int) -> np.ndarray:
    """Componentwise ``r``-th power."""
    if r < 1:
        raise InputError(f"power must be >= 1, got {r}")
    return np.asarray(x, dtype=np.float64) ** r


def row_sums(T: SparseTensor) -> np.ndarray:
    return np.bincount(T.leads, weights=T.values, minlength=T.dim)


def neighbor_sets(T: SparseTensor) -> tuple[frozenset[int], ...]:
    sets = [set() for _ in range(T.dim)]
    for lead, *tail in T.indices.tolist():
        sets[lead].update(tail)
    return tuple(frozenset(s) for s in sets)


def row_profile(T: SparseTensor, R) -> RowProfile:
    R = as_weights(R, T.dim)
    return RowProfile(r=row_sums(T), S=apply(T, R), neighbors=neighbor_sets(T))


def add_diagonal(T: SparseTensor, t) -> SparseTensor:
    """Return ``T + diag(t)``; ``T`` must have no stored diagonal entry."""
    t = as_shift(t, T.dim)
    if not T.has_zero_diagonal():
        raise PreconditionError("tensor already has a nonzero diagonal entry")
    pos = np.flatnonzero(t > 0)
    if len(pos) == 0:
        return T
    diag = np.repeat(pos[:, None], T.order, axis=1)
    return SparseTensor(T.order, T.dim,
                        np.vstack([T.indices, diag]),
                        np.concatenate([T.values, t[pos]]))


def diagonal_similarity(T: SparseTensor, D) -> SparseTensor:
    """Return ``D^{-(m-1)} T D`` for a positive diagonal ``D``."""
    D = as_weights(D, T.dim)
    vals = D[T.leads] ** -(T.order - 1) * T.values
    for c in range(1, T.order):
        vals = vals * D[T.indices[:, c]]
    return SparseTensor(T.order, T.dim, T.indices, vals)


def parse_tensor(text: str) -> SparseTensor:
    """Parse the ``tensor <m> <n>`` text format (1-based indices)."""
    header = None
    idx, val = [], []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 3 or fields[0] != "tensor":
                raise InputError("expected header 'tensor <m> <n>'", lineno)
            try:
                m, n = int(fields[1]), int(fields[2])
            except ValueError:
                raise InputError("order and dimension must be integers", lineno) from None
            if m < 2 or n < 1:
                raise InputError("need order >= 2 and dimension >= 1", lineno)
            header = (m, n)
            continue
        m, n = header
        if len(fields) != m + 1:
            raise InputError(f"expected {m} indices and a value, got {len(fields)} fields", lineno)
        try:
            tup = tuple(int(f) for f in fields[:m])
            v = float(fields[m])
        except ValueError:
            raise InputError("malformed index or value", lineno) from None
        if any(i < 1 or i > n for i in tup):
            raise InputError(f"index out of range 1..{n}", lineno)
        if not (np.isfinite(v) and v > 0):
            raise InputError("value must be a positive finite number", lineno)
        if tup in seen:
            raise InputError(f"duplicate entry {tup} (first on line {seen[tup]})", lineno)
        seen[tup] = lineno
        idx.append([i - 1 for i in tup])
        val.append(v)
    if header is None:
        raise InputError("empty tensor file")
    return SparseTensor(header[0], header[1], np.array(idx, dtype=np.int64).reshape(-1, header[0]), val)


def format_tensor(T: SparseTensor) -> str:
    lines = [f"tensor {T.order} {T.dim}"]
    for tup, v in T.entries():
        lines.append(" ".join(str(i + 1) for i in tup) + f" {v!r}")
    return "\n".join(lines) + "\n"
