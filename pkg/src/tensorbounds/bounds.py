"""Two-sided spectral radius bounds for shifted weakly irreducible tensors.

For ``B = A + diag(t)`` with ``A`` zero-diagonal and weakly irreducible, and
any positive weights ``R``, every ordered pair ``(i, j)`` with ``j`` in
``N(i)`` gives a value ``F(i, j)``; the spectral radius of ``B`` lies between
the smallest and largest of these.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .irreducibility import BipartitionWitness, bipartition_structure, is_weakly_irreducible
from .spectral import PerronEstimate
from .tensor import RowProfile, SparseTensor, as_shift, as_weights, row_profile, row_sums

WITNESS_RTOL = 1e-9
ROWSUM_RTOL = 1e-12

METHODS = ("rowsum", "general-F", "rowsum-F", "adjacency", "qlaplacian")


@dataclass(frozen=True)
class EqualityWitness:
    """Why a bound is attained.

    ``kind == "uniform"``: every ``t_i + S_i / R_i^(m-1)`` equals ``value``.
    ``kind == "bipartite"``: ``partition`` splits the indices and, with
    ``L = ell^(m-1)``, ``rho = t_i + L S_i/R_i^(m-1)`` on ``U`` and
    ``rho = t_j + S_j/(L R_j^(m-1))`` on ``W``; ``value`` is that ``rho``.
    """

    kind: str
    value: float
    partition: BipartitionWitness | None = None


@dataclass(frozen=True)
class BoundReport:
    lower: float
    upper: float
    argmin: tuple[int, ...]
    argmax: tuple[int, ...]
    method: str
    equality: EqualityWitness | None = None
    pair_values: list[tuple[int, int, float]] | None = None

    def attained_by(self, rho: float, atol: float) -> bool:
        """Whether either extreme matches ``rho`` within ``atol``."""
        return abs(self.lower - rho) <= atol or abs(self.upper - rho) <= atol


def _pair_values(ti, tj, Si, Sj, Ri, Rj, m):
    ti, tj, Si, Sj, Ri, Rj = (np.asarray(v, dtype=np.float64) for v in (ti, tj, Si, Sj, Ri, Rj))
    return (ti + tj + np.sqrt((ti - tj) ** 2 + 4.0 * Si * Sj / (Ri * Rj) ** (m - 1))) / 2.0


def pair_value_F(i: int, j: int, t, profile: RowProfile, R, m: int) -> float:
    """``(t_i + t_j + sqrt((t_i - t_j)^2 + 4 S_i S_j / (R_i R_j)^(m-1))) / 2``."""
    t = np.asarray(t, dtype=np.float64)
    R = np.asarray(R, dtype=np.float64)
    S = profile.S
    return float(_pair_values(t[[i]], t[[j]], S[[i]], S[[j]], R[[i]], R[[j]], m)[0])


def check_bounds_preconditions(A: SparseTensor) -> None:
    if A.dim < 2:
        raise PreconditionError("bounds need dimension n >= 2")
    if not A.has_zero_diagonal():
        raise PreconditionError("bounds need a tensor with zero diagonal")
    if not is_weakly_irreducible(A):
        raise PreconditionError("tensor is not weakly irreducible")


def row_sum_bounds(T: SparseTensor) -> BoundReport:
    """Min/max row sum sandwich; uniform witness when all row sums agree."""
    r = row_sums(T)
    lo, hi = int(np.argmin(r)), int(np.argmax(r))
    witness = None
    if r[hi] - r[lo] <= ROWSUM_RTOL * abs(r[hi]):
        witness = EqualityWitness("uniform", float(r[0]))
    return BoundReport(lower=float(r[lo]), upper=float(r[hi]), argmin=(lo,), argmax=(hi,),
                       method="rowsum", equality=witness)


def detect_equality(A: SparseTensor, t, R, est: PerronEstimate | None = None,
                    profile: RowProfile | None = None) -> EqualityWitness | None:
    """Return a witness when one of the pair bounds is attained, else None.

    Without ``est`` the reference value for the bipartite case is
    ``F(u0, w0)`` for the first index of each class, which is the only
    value both class identities can share.
    """
    n, m = A.dim, A.order
    t = as_shift(t, n)
    R = as_weights(R, n)
    profile = profile or row_profile(A, R)
    T = profile.S / R ** (m - 1)
    vals = t + T
    if vals.max() - vals.min() <= WITNESS_RTOL * abs(vals.max()):
        return EqualityWitness("uniform", float(vals[0]))

    split = bipartition_structure(A)
    if split is None:
        return None
    u0, w0 = min(split.U), min(split.W)
    if est is not None:
        rho = float(est.rho)
    else:
        rho = float(_pair_values(t[u0], t[w0], profile.S[u0], profile.S[w0], R[u0], R[w0], m))
    L = (rho - t[u0]) / T[u0]
    if not L > 0:
        return None
    U = np.array(sorted(split.U))
    W = np.array(sorted(split.W))
    scale = WITNESS_RTOL * abs(rho)
    if np.any(np.abs(t[U] + L * T[U] - rho) > scale):
        return None
    if np.any(np.abs(t[W] + T[W] / L - rho) > scale):
        return None
    ell = float(L ** (1.0 / (m - 1)))
    return EqualityWitness("bipartite", rho, BipartitionWitness(split.U, split.W, ell))


def general_bounds(A: SparseTensor, t=None, R=None, *, est: PerronEstimate | None = None,
                   pairs: bool = False, method: str = "general-F") -> BoundReport:
    """Bounds on the spectral radius of ``A + diag(t)`` with weights ``R``.

    ``t`` defaults to zero and ``R`` to all-ones. Ties in the extremes go to
    the lexicographically smallest ``(i, j)``.
    """
    check_bounds_preconditions(A)
    n, m = A.dim, A.order
    t = as_shift(t, n)
    R = as_weights(np.ones(n) if R is None else R, n)
    profile = row_profile(A, R)

    mask = np.zeros((n, n), dtype=bool)
    for i, nb in enumerate(profile.neighbors):
        mask[i, list(nb)] = True
    I, J = np.nonzero(mask)  # row-major, so lexicographic
    S = profile.S
    F = _pair_values(t[I], t[J], S[I], S[J], R[I], R[J], m)
    kmin, kmax = int(np.argmin(F)), int(np.argmax(F))
    table = None
    if pairs:
        table = [(int(i), int(j), float(f)) for i, j, f in zip(I, J, F)]
    return BoundReport(
        lower=float(F[kmin]), upper=float(F[kmax]),
        argmin=(int(I[kmin]), int(J[kmin])), argmax=(int(I[kmax]), int(J[kmax])),
        method=method,
        equality=detect_equality(A, t, R, est=est, profile=profile),
        pair_values=table,
    )


def rowsum_weighted_bounds(A: SparseTensor, t=None, *, est: PerronEstimate | None = None,
                           pairs: bool = False) -> BoundReport:
    """``general_bounds`` with the row sums of ``A`` as weights."""
    check_bounds_preconditions(A)
    return general_bounds(A, t, row_sums(A), est=est, pairs=pairs, method="rowsum-F")
