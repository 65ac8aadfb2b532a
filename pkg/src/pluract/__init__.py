"""Pluractional word forms and meanings as finite set-theoretic structures.

Prosodic and morphological structures are graphs of vertices, labels,
dominance, precedence and naming.  Pluractional forms are derived from them
by affixation or reduplication, pluractional meanings from finite event
domains, and both can be run in counted mode to measure how many primitive
set operations a derivation takes.
"""

from pluract.counting import OpCounter
from pluract.derivation import (
    PREFIX,
    SUFFIX,
    AffixStrategy,
    BaseSpec,
    CopyRule,
    Infix,
    PartialRedup,
    Pins,
    ReduplicantTemplate,
    TotalRedup,
    build_partial_reduplicant,
    build_total_reduplicant,
    concatenate,
    derive,
    derive_pluractional_form,
    extract_base,
)
from pluract.kernels import BACKEND
from pluract.lexicon import load_fixture, parse_domain, parse_lexicon, serialize
from pluract.semantics import EventDomain, IndividualDomain, VerbMeaning, derive_ep, derive_ip, sps
from pluract.structures import QVertex, StructureGraph, WordForm, validate_structure, validate_word_form

__version__ = "0.1.0"
