"""Optimal linear index codes for multiple senders and two-sender cellular networks."""

from .cellular import (CellularResult, build_cellular_template, cellular_minsearch,
                       classify_cycles, exists_nonzero_intersection, prop3_check,
                       prop4_predicate, prop6_decompose, prune_side_info,
                       verify_cellular_decoding)
from .code import Generator, parse_generator, render_generator
from .estimators import CellularIndexCoder, MinrankIndexCoder
from .exceptions import (BudgetExceeded, CapExceeded, InfeasibleError, InstanceError,
                         SupportError)
from .fitting import apply_prop1, build_template, minrank_search
from .gf import FieldMatrix, in_span, independent_columns, rank, subspace_dims
from .instance import (CoverageProfile, Instance, build_message_graph, load_instance,
                       parse_instance, render_instance, shared_messages)
from .oracle import SearchBounds, oracle_cellular, oracle_multisender, verify_decoding
from .structure import (criticality_report, forms_mc_zero_cycle, spanning_tree_code,
                        thm4_predicate, uncoded_equivalence, zero_cycles)

__all__ = [
    "BudgetExceeded", "CapExceeded", "CellularIndexCoder", "CellularResult", "CoverageProfile",
    "FieldMatrix", "Generator", "InfeasibleError", "Instance", "InstanceError",
    "MinrankIndexCoder", "SearchBounds", "SupportError", "apply_prop1", "build_cellular_template",
    "build_message_graph", "build_template", "cellular_minsearch", "classify_cycles",
    "criticality_report", "exists_nonzero_intersection", "forms_mc_zero_cycle", "in_span",
    "independent_columns", "load_instance", "minrank_search", "oracle_cellular",
    "oracle_multisender", "parse_generator", "parse_instance", "prop3_check", "prop4_predicate",
    "prop6_decompose", "prune_side_info", "rank", "render_generator", "render_instance",
    "shared_messages", "spanning_tree_code", "subspace_dims", "thm4_predicate",
    "uncoded_equivalence", "verify_cellular_decoding", "verify_decoding", "zero_cycles",
]
