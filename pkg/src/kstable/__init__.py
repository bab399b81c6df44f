"""Small and large stable models of ground normal logic programs."""

from .encodings import (
    ClauseSet,
    build_witness,
    decode_witness,
    encode_PC,
    encode_T,
    encode_Tc,
    parse_dimacs,
)
from .errors import CapExceeded, ProgramSyntaxError, ReservedNameError
from .formula import And, Const, Lit, Or, evaluate, normalization_depth, ws_exists
from .lsm import LsmAnswer, solve_lsm
from .oracle import enumerate_stable_models, max_stable_size, min_stable_size
from .program import (
    HornProgram,
    Program,
    Rule,
    bounded_neg_subprogram,
    generating_rules,
    is_stable,
    least_model,
    parse_program,
    proper_filter,
    reduct,
    star_transform,
)
from .ssm import SsmAnswer, compute_tables, solve_ssm

__version__ = "0.1.0"
