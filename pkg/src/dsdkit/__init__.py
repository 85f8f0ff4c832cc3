"""dsdkit: diffusion state distance (DSD) on graphs via Green's functions."""
from ._kernels import BACKEND
from .dsd import (
    DsdMatrix,
    DsdParams,
    dsd,
    dsd2_upper_bound,
    dsd_all_pairs,
    dsd_fundamental,
    dsd_lazy,
    fundamental_matrix,
    lambda1_diameter_bound,
    lq_norm,
)
from .graph import (
    Graph,
    cycle_graph,
    from_edge_list,
    graph_distance,
    hypercube_graph,
    is_bipartite,
    is_connected,
    path_graph,
)
from .spectral import (
    GreensMatrix,
    SpectralDecomposition,
    eigendecompose,
    greens,
    greens_function,
    heat_kernel,
    normalized_laplacian,
    spectrum,
    verify_greens_identities,
)

__version__ = "0.1.0"
