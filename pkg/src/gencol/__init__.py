"""Generalised colouring numbers of graphs.

Exact solvers for ``col_r`` and ``wcol_r`` on small graphs, order evaluation, flat
decompositions and the builders that produce them, and planar ordering constructions.
"""

from .builders import (BuilderResult, MinorModelState, Pattern, h_ipd, kt_flat_decomposition, reestablish_invariants,
                       replay_trace, validate_model_state)
from .decomposition import (Decomposition, SpreadFunction, WidthReport, bound_spd, bound_spdwcol, certify,
                            check_f_flat, order_from_decomposition, restriction_holds, width)
from .errors import (CapacityError, EmbeddingError, GencolError, InputError, InternalConsistencyError,
                     NotMaximalError)
from .graph import (Graph, bfs_tree, closed_neighborhood, components, contract_parts, degeneracy_order,
                    is_isometric_path, lex_bfs, shortest_path)
from .minors import MinorModel, find_minor, is_valid_model
from .order import LinearOrder
from .planar import (PlanarEmbedding, build_face_tree, check_carord, ipd_maximal_planar, lexbfs_planar_order,
                     triangulate, validate_embedding)
from .reach import (cost_of_order, elimination_width, exact_gcn, fill_in, sreach, treedepth_exact, treewidth_exact,
                    wreach)

__version__ = "0.1.0"
