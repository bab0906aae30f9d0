"""Finite-universe engine for a language of binary relations.

Statements are relations read as predicates; the engine classifies them,
checks the set and relation algebra, sorts pluralities of relations by how
reflexive, symmetric and transitive they are, analyses orders, and runs a
handful of constructive bijections.
"""

from .errors import RLError
from .logic import (
    And,
    Atom,
    Chain,
    Classification,
    ExistsField,
    ForAllField,
    Iff,
    Implies,
    Kind,
    Or,
    Tag,
    Tagged,
    Verdict,
    check_laws,
    classify,
    equipollent,
    eval_at,
    implication_type,
    refute_classical_laws,
    truth_domain_of,
)
from .orders import build_order, compare, grid_orders, well_order_check, zigzag_order
from .pluralities import Plurality, check_group, edges, is_filter, metric_balls, taxonomy, transformation_group
from .relations import Relation, factorize, relation_properties
from .universe import PointSet, Universe, define_set, integer_universe, make_universe

__version__ = "0.1.0"
