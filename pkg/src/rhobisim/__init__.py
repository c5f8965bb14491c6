"""Logic-induced (rho-) bisimulations for finite LTSs, Kripke models and
linear weighted automata."""

__version__ = "0.1.0"

from .engine import BisimReport, RhoChecker, check_adequacy, check_rho_bisim, greatest_rho_bisim, lift_relation, refine
from .formulas import parse_formula
from .linear import (
    SubspaceRelation, check_linear_bisim, dual_pairs, greatest_linear_bisim, linear_refine, observability_kernel,
)
from .logics import builtin_logics, enumerate_formulas, eval_formula, eval_lifting, get_logic, theory_kernel
from .models import (
    KripkeModel, Lts, WeightedAutomaton, automaton, kripke_from_edges, load_model, lts_from_edges, serialize_model,
    step_vector, successors, validate_model,
)
from .relations import Relation, bottom, coherent_generators, coherent_pairs, compose, is_full, join
from .zoo import (
    behavioural_equivalence, check_precocongruence, check_T_bisim, check_translation_invariance, greatest_T_bisim,
    hennessy_milner_check, pushout, translate_formula,
)
