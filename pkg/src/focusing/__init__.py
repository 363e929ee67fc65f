"""Focus-based pronoun resolution over hand-annotated discourse segments."""

from .corpus import CorpusError, CorpusFile, load_bundled_corpus, load_worked_examples, parse, serialize
from .evaluate import EvalTable, evaluate, render_table
from .filters import FilterConfig, acceptable_cospec, agree, disjoint, load_oracle
from .focus import FocusState, build_pfl, expected_focus, init_state, update_focus
from .model import CoSpec, Discourse, NounPhrase, Sentence, VerbPhrase, validate_discourse
from .rules import OutcomeKind, RecencyScope, ResolutionOutcome, RuleConfig, resolve_sentence, run_discourse

__version__ = "0.1.0"

__all__ = [
    "CoSpec",
    "CorpusError",
    "CorpusFile",
    "Discourse",
    "EvalTable",
    "FilterConfig",
    "FocusState",
    "NounPhrase",
    "OutcomeKind",
    "RecencyScope",
    "ResolutionOutcome",
    "RuleConfig",
    "Sentence",
    "VerbPhrase",
    "acceptable_cospec",
    "agree",
    "build_pfl",
    "disjoint",
    "evaluate",
    "expected_focus",
    "init_state",
    "load_bundled_corpus",
    "load_oracle",
    "load_worked_examples",
    "parse",
    "render_table",
    "resolve_sentence",
    "run_discourse",
    "serialize",
    "update_focus",
    "validate_discourse",
]
