"""Exact arithmetic and decision procedures for twisted Brin-Thompson groups
over a pluggable label-group action."""

__version__ = "0.1.0"

from .label_group import (ActionReport, ColorId, LabelElement, LabelGroupError,
                          LabelGroupOracle, analyze_finite_action, lg_act,
                          lg_acts_trivially, lg_inverse, lg_multiply,
                          lg_normalize, load_oracle, oracle_from_config)
from .forest import (Brick, Forest, ForestError, Permutation, Tree, LEAF,
                     common_refinement, compose_forests, simple_split,
                     split_brick, tree_for_brick, tree_leaves)
from .element import (CantorPoint, ElementError, Quadruple, act, commutator,
                      conjugate, equal, equality_witness, expand,
                      germinal_twist, identity_element, inverse, iota, iota1,
                      is_identity, multiply, power, reduce, resolved)
from .subgroups import (ConjugacyWord, SubgroupError, WitnessBudgetError,
                        WreathElement, deferment, generating_set,
                        in_canonical_kernel, in_full_deferment,
                        normal_generation_witness, quasi_retract, section_zeta,
                        sk_commutator_decomposition, wreath_identity,
                        wreath_inverse, wreath_multiply)
from .kuznetsov import (Budget, FinitePresentation, PresentationError, Verdict,
                        decide_word, replay_trace)
from .dsl import (ExprEvalError, ExprSyntaxError, evaluate, parse_and_evaluate,
                  parse_brick_literal, parse_expression, parse_point_literal,
                  parse_word_literal)
from .cli import run_command

__all__ = [name for name in dir() if not name.startswith("_")]
