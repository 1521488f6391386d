"""Model checking for group belief under inconsistency.

Three ways of pooling a group's beliefs are supported: plain distributed
belief (``D``), the cautious variant over maximally consistent subgroups
(``DC``) and the bold variant (``DB``), together with bisimulations,
translations between the languages and frame-condition checks.
"""

from .formula import LanguageTag, language_of, parse, to_text
from .model import (
    BeliefModel, Group, MCSFamily, ModelError, NeighbourhoodCore, cautious_relation,
    conjecture_set, consistent_conjecture_set, group_conjecture_set,
    individual_neighbourhood_core, max_consistent_subgroups, mcs_targets, neighbourhood_core,
)
from .semantics import BindingError, evaluate, extension, valid_in_model

__all__ = [
    "BeliefModel", "Group", "MCSFamily", "ModelError", "NeighbourhoodCore", "cautious_relation",
    "conjecture_set", "consistent_conjecture_set", "group_conjecture_set",
    "individual_neighbourhood_core", "max_consistent_subgroups", "mcs_targets", "neighbourhood_core",
    "LanguageTag", "language_of", "parse", "to_text",
    "BindingError", "evaluate", "extension", "valid_in_model",
]
