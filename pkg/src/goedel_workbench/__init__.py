"""Exact semantics, prenexation and bounded search for first-order Goedel logics."""
from .chains import Chain, cnf_delta_1, cnf_delta_2, decide_valid_prop, enumerate_chains, psi_eval
from .evaluate import classical_eval, eval_formula, evaluate
from .formula import Formula, alpha_equal, parse, rectify, to_text
from .interp import Interpretation, finite_interp, glue, nat_interp, prop_interp
from .search import SearchSpace, Verdict, check_sat, find_countermodel, space_for
from .seqvalue import SeqValue
from .transform import PrenexResult, Unsupported, kuroda, prenexify, skolemize, validity_prenex_re
from .truthset import GoedelSetDescriptor, builtin, classify

__all__ = [
    "Chain",
    "GoedelSetDescriptor",
    "Formula",
    "Interpretation",
    "PrenexResult",
    "SearchSpace",
    "SeqValue",
    "Unsupported",
    "Verdict",
    "alpha_equal",
    "builtin",
    "check_sat",
    "classical_eval",
    "classify",
    "cnf_delta_1",
    "cnf_delta_2",
    "decide_valid_prop",
    "enumerate_chains",
    "eval_formula",
    "evaluate",
    "find_countermodel",
    "finite_interp",
    "glue",
    "kuroda",
    "nat_interp",
    "parse",
    "prenexify",
    "prop_interp",
    "psi_eval",
    "rectify",
    "skolemize",
    "space_for",
    "to_text",
    "validity_prenex_re",
]
