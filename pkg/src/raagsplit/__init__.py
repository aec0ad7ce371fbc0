"""Splittings of right-angled Artin groups and their Bass-Serre trees."""

from .graph_core import Graph, parse_graph
from .raag_words import Word, normal_form, parse_word
from .splittings import AmalgamSplitting, InducedAction, LineAction, RaagHom, amalgam_from_separator, classify
from .theorem_checker import Action, Config, verify_theorem

__all__ = [
    "Action",
    "AmalgamSplitting",
    "Config",
    "Graph",
    "InducedAction",
    "LineAction",
    "RaagHom",
    "Word",
    "amalgam_from_separator",
    "classify",
    "normal_form",
    "parse_graph",
    "parse_word",
    "verify_theorem",
]
