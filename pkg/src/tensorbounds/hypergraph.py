"""Uniform hypergraphs, their adjacency / signless Laplacian tensors, and
closed-form edge-pair bounds that never build the tensor."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .bounds import BoundReport, EqualityWitness, WITNESS_RTOL, _pair_values, general_bounds
from .errors import InputError, PreconditionError, ResourceError
from .tensor import SparseTensor, add_diagonal, as_weights

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Hypergraph:
    """Simple ``k``-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as sorted vertex tuples in input order.
    """

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 2:
            raise InputError(f"uniformity k must be >= 2, got {self.k}")
        if self.n < 1:
            raise InputError(f"need at least one vertex, got n={self.n}")
        norm, seen = [], set()
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.k:
                raise InputError(f"edge {e} does not have {self.k} vertices")
            if len(set(e)) != self.k:
                raise InputError(f"edge {e} repeats a vertex")
            if e[0] < 0 or e[-1] >= self.n:
                raise InputError(f"edge {e} has a vertex outside 0..{self.n - 1}")
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(-1, self.k)

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edge_array.reshape(-1), minlength=self.n).astype(np.float64)


@dataclass(frozen=True)
class HypergraphProfile:
    d: np.ndarray
    m_avg: np.ndarray | None
    b: np.ndarray
    b_prime: np.ndarray


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse ``hypergraph <k> <n>`` followed by one edge per line (1-based)."""
    header = None
    edges, first_seen = [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 3 or fields[0] != "hypergraph":
                raise InputError("expected header 'hypergraph <k> <n>'", lineno)
            try:
                k, n = int(fields[1]), int(fields[2])
            except ValueError:
                raise InputError("k and n must be integers", lineno) from None
            if k < 2 or n < 1:
                raise InputError("need k >= 2 and n >= 1", lineno)
            header = (k, n)
            continue
        k, n = header
        if len(fields) != k:
            raise InputError(f"edge has {len(fields)} vertices, expected {k}", lineno)
        try:
            verts = [int(f) for f in fields]
        except ValueError:
            raise InputError("vertex ids must be integers", lineno) from None
        if any(v < 1 or v > n for v in verts):
            raise InputError(f"vertex out of range 1..{n}", lineno)
        if len(set(verts)) != k:
            raise InputError("repeated vertex within an edge", lineno)
        key = tuple(sorted(verts))
        if key in first_seen:
            raise InputError(f"duplicate edge (first on line {first_seen[key]})", lineno)
        first_seen[key] = lineno
        edges.append(tuple(v - 1 for v in key))
    if header is None:
        raise InputError("empty hypergraph file")
    return Hypergraph(n=header[1], k=header[0], edges=tuple(edges))


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"hypergraph {H.k} {H.n}"]
    lines += [" ".join(str(v + 1) for v in e) for e in H.edges]
    return "\n".join(lines) + "\n"


def is_connected(H: Hypergraph) -> bool:
    """Every two vertices are joined by a walk through edges."""
    parent = list(range(H.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in H.edges:
        root = find(e[0])
        for v in e[1:]:
            parent[find(v)] = root
    return len({find(v) for v in range(H.n)}) == 1


def _check_cap(H: Hypergraph, cap: int) -> None:
    count = len(H.edges) * factorial(H.k)
    if count > cap:
        raise ResourceError(
            f"adjacency tensor would store {count} entries (cap {cap}); "
            "use the closed-form hypergraph bounds instead")


def adjacency_tensor(H: Hypergraph, cap: int = DEFAULT_CAP) -> SparseTensor:
    """Order-``k`` tensor with ``1/(k-1)!`` on every ordering of every edge."""
    _check_cap(H, cap)
    perms = np.array(list(permutations(range(H.k))), dtype=np.int64)
    idx = H.edge_array[:, perms].reshape(-1, H.k)
    vals = np.full(len(idx), 1.0 / factorial(H.k - 1))
    return SparseTensor(H.k, H.n, idx, vals)


def signless_laplacian_tensor(H: Hypergraph, cap: int = DEFAULT_CAP) -> SparseTensor:
    """Degree diagonal plus adjacency tensor."""
    return add_diagonal(adjacency_tensor(H, cap), H.degrees())


def _weighted_edge_sums(H: Hypergraph, b: np.ndarray) -> np.ndarray:
    # sum over edges at i of the product of b over the other k-1 vertices
    E = H.edge_array
    out = np.zeros(H.n)
    for p in range(H.k):
        others = [c for c in range(H.k) if c != p]
        prod = np.ones(len(E))
        for c in others:
            prod = prod * b[E[:, c]]
        out += np.bincount(E[:, p], weights=prod, minlength=H.n)
    return out


def resolve_weights(H: Hypergraph, b) -> np.ndarray:
    """Accept ``"unit"``, ``"degree"`` or an explicit positive vector."""
    if isinstance(b, str):
        if b == "unit":
            return np.ones(H.n)
        if b == "degree":
            d = H.degrees()
            if np.any(d == 0):
                raise PreconditionError(
                    f"vertex {int(np.argmin(d)) + 1} is isolated; degree weights undefined")
            return d
        raise InputError(f"unknown weight scheme {b!r}")
    return as_weights(b, H.n)


def profile(H: Hypergraph, b="unit") -> HypergraphProfile:
    """Degrees, degree averages ``m_i`` and weighted sums ``b'_i``."""
    b = resolve_weights(H, b)
    d = H.degrees()
    b_prime = _weighted_edge_sums(H, b) / b ** (H.k - 1)
    m_avg = None
    if np.all(d >= 1):
        m_avg = _weighted_edge_sums(H, d) / d ** (H.k - 1)
    return HypergraphProfile(d=d, m_avg=m_avg, b=b, b_prime=b_prime)


def _check_bound_preconditions(H: Hypergraph) -> None:
    if H.k < 3:
        raise PreconditionError("closed-form hypergraph bounds need k >= 3; use matrix_bounds for graphs")
    if not H.edges:
        raise PreconditionError("hypergraph has no edges")
    if not is_connected(H):
        raise PreconditionError("hypergraph is not connected")


def _edge_pairs(H: Hypergraph) -> tuple[np.ndarray, np.ndarray]:
    pairs = sorted({(e[p], e[q]) for e in H.edges for p, q in combinations(range(H.k), 2)})
    arr = np.array(pairs, dtype=np.int64)
    return arr[:, 0], arr[:, 1]


def _edge_pair_report(H, values_fn, key, method) -> BoundReport:
    I, J = _edge_pairs(H)
    vals = values_fn(I, J)
    kmin, kmax = int(np.argmin(vals)), int(np.argmax(vals))
    witness = None
    if key.max() - key.min() <= WITNESS_RTOL * abs(key.max()):
        witness = EqualityWitness("uniform", float(key[0]))
    return BoundReport(lower=float(vals[kmin]), upper=float(vals[kmax]),
                       argmin=(int(I[kmin]), int(J[kmin])), argmax=(int(I[kmax]), int(J[kmax])),
                       method=method, equality=witness)


def adjacency_bounds(H: Hypergraph, b="unit") -> BoundReport:
    """``sqrt(b'_i b'_j)`` over vertex pairs sharing an edge.

    With ``b = "degree"`` the weighted sums become the averages ``m_i``;
    with ``b = "unit"`` they are the degrees. Equality iff all ``b'_i`` agree.
    """
    _check_bound_preconditions(H)
    bp = profile(H, b).b_prime
    return _edge_pair_report(
        H, lambda I, J: _pair_values(0.0, 0.0, bp[I], bp[J], 1.0, 1.0, 2), bp, "adjacency")


def qlaplacian_bounds(H: Hypergraph, b="unit") -> BoundReport:
    """``(d_i + d_j + sqrt((d_i - d_j)^2 + 4 b'_i b'_j)) / 2`` over edge pairs.

    Unit weights reduce this to ``d_i + d_j``. Equality iff all ``d_i + b'_i``
    agree.
    """
    _check_bound_preconditions(H)
    prof = profile(H, b)
    d, bp = prof.d, prof.b_prime
    return _edge_pair_report(
        H, lambda I, J: _pair_values(d[I], d[J], bp[I], bp[J], 1.0, 1.0, 2), d + bp, "qlaplacian")


def matrix_bounds(H: Hypergraph, operator: str = "adjacency", b="degree", *,
                  est=None, pairs: bool = False) -> BoundReport:
    """Graph (``k = 2``) route: generic bounds on the adjacency matrix with
    shift 0 (adjacency) or the degrees (signless Laplacian)."""
    if H.k != 2:
        raise PreconditionError("matrix_bounds is for 2-uniform hypergraphs")
    if not is_connected(H):
        raise PreconditionError("graph is not connected")
    A = adjacency_tensor(H)
    t = H.degrees() if operator == "qlap" else None
    return general_bounds(A, t, resolve_weights(H, b), est=est, pairs=pairs)
