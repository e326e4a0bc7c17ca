"""Sharp two-sided bounds for the spectral radius of nonnegative weakly
irreducible tensors, with uniform-hypergraph specializations and a
power-iteration oracle to check them."""

__version__ = "0.1.0"

from .errors import (ConvergenceError, InputError, PreconditionError, ResourceError,
                     TensorBoundsError)
from .tensor import (RowProfile, SparseTensor, add_diagonal, apply, diagonal_similarity,
                     format_tensor, parse_tensor, power_vector, row_profile, row_sums)
from .irreducibility import (BipartitionWitness, bipartition_structure, is_weakly_irreducible,
                             neighbor_nonempty_check, representation_matrix)
from .spectral import IterationConfig, PerronEstimate, perron, residual
from .bounds import (BoundReport, EqualityWitness, detect_equality, general_bounds,
                     pair_value_F, row_sum_bounds, rowsum_weighted_bounds)
from .hypergraph import (Hypergraph, HypergraphProfile, adjacency_bounds, adjacency_tensor,
                         format_hypergraph, is_connected, matrix_bounds, parse_hypergraph,
                         profile, qlaplacian_bounds, signless_laplacian_tensor)
