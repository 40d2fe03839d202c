"""Exact partition functions of q-state edge-difference spin models.

The partition function of a model whose edge energies depend on
``(s_head - s_tail) mod q`` equals q times a sum over the cut code of the
oriented graph.  The package evaluates it by brute force, by codeword
enumeration, by tree-decomposition contraction and in closed form for trees
and cycles, and implements the planar Fourier duality and the stabilizer
symmetries of the weight tables.
"""

__version__ = "0.1.0"

from .codes import CodeOverZq, contains, cut_code, cycle_code, enumerate_codewords, stabilizer_generators
from .engines import (
    EvalReport,
    brute_force_partition,
    codeword_overlap_partition,
    cycle_closed_form,
    partition,
    tree_closed_form,
    treewidth_contract,
    weight_enumerator,
)
from .graph import (
    OrientedGraph,
    TreeDecomposition,
    fundamental_cycles,
    incidence_matrix,
    planar_dual,
    spanning_tree,
    tree_decomposition,
)
from .kernels import BACKEND
from .model import InteractionTable, WeightTable, boltzmann_weights, clock, ising, potts
from .scaled import ScaledValue, relative_error
from .transforms import (
    DualityCertificate,
    SymmetryElement,
    apply_symmetry,
    dual_model,
    fourier_dual_weights,
    potts_dual_coupling,
    symmetry_group_sample,
)
