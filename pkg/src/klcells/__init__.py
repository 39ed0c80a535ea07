"""Exact Kazhdan-Lusztig bases, W-graphs, cells, and generic Specht modules
for finite Coxeter groups, over Z[q, q^-1] with no numeric specialization.

Quick tour:

    >>> from klcells import CoxeterSpec, build_group, kl_basis
    >>> W = build_group(CoxeterSpec.named("A2"))
    >>> kl_basis(W).p(W.e, W.w0)
    -q^3

See the demos/ scripts for worked examples of every subsystem.
"""

from .coxeter import CoxeterGroup, CoxeterSpec, GroupElement, build_group, coxeter_spec
from .errors import (InfiniteOrTooLarge, InvalidMatrix, MixedGroups, NotCellClosed,
                     NotInCosetSet, NotInDJ, NotInDJbar, NotInEJ, NotRowStandard,
                     QuotientDropError, RecursionStuck, SizeMismatch, TooLarge)
from .hecke import (HeckeVector, KLTable, bar, c_mul_generator, convert_kl_convention,
                    kl_basis, kl_basis_by_bar_solve, mu, star, t_basis, t_mul,
                    t_mul_generator)
from .laurent import ONE, Q, QINV, ZERO, LaurentInt, q_power
from .linalg import ExactSpan
from .cellular import (CellularDatum, cellular_rank_report, decompose_layer,
                       in_layer_ideal, layer_ideal_basis, murphy_element, reduce_to_ej)
from .parabolic import (MINUS, PLUS, ZERO_MINUS, ZERO_PLUS, MJElement, ParabolicSystem,
                        build_parabolic, c_wj, classify_dj, classify_djbar, classify_ej,
                        mj_apply, mj_coords, mj_embed, system_to_json)
from .specht import (RelativeKLTable, SpechtModuleJ, q_polynomials, r_polynomials,
                     relative_kl, relative_kl_by_bar_solve, specht_action)
from .typea import (Partition, Tableau, TypeAContext, conjugate_partition,
                    conjugate_tableau, dominance_leq, ej_classification_by_tableaux,
                    ej_lambda, element_from_oneline, murphy_basis, murphy_rank,
                    oneline, partitions, rs_insert, specht_action_typea,
                    standard_tableaux, t_sub, t_super, tableau_descents,
                    transition_matrices)
from .wgraph import (CellDecomposition, WGraphDatum, WGraphReport, build_wgraph,
                     cell_module, full_group_cells, kl_cells, regular_wgraph,
                     tau_columns, verify_wgraph, wgraph_to_dot, wgraph_to_json)

__version__ = "0.1.0"
