"""Pronoun interpretation rules and the sentence-by-sentence driver."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from .filters import FilterConfig, FilterVerdict, acceptable_cospec, agree, features_of
from .focus import FocusState, FocusTraceEvent, init_state, pronoun_type, update_focus
from .model import (
    HEARER,
    SPEAKER,
    CoSpec,
    Discourse,
    NounPhrase,
    NPRef,
    PronounPerson,
    Sentence,
    SetTarget,
    SpecTarget,
    VPRef,
    anaphora_in_order,
    atoms,
    make_set,
)


class RecencyScope(str, Enum):
    AGENT_ONLY = "agent_only"
    ALL_POSITIONS = "all_positions"
    OFF = "off"


class OutcomeKind(str, Enum):
    RESOLVED = "resolved"
    # Backwards co-specification to something that is not an antecedent.
    BN = "bn"
    # Same, or forward co-specification; the pronoun is left open.
    BNFC = "bnfc"
    PAA = "paa"
    UNRELIABLE = "unreliable"
    # Definite NPs carry their annotation through unchanged.
    GIVEN = "given"


@dataclass(frozen=True)
class RuleConfig:
    recency_scope: RecencyScope = RecencyScope.AGENT_ONLY
    paa_modification: bool = True
    filter: FilterConfig = field(default_factory=FilterConfig)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    candidate: SpecTarget | None
    verdict: FilterVerdict | None

    def __str__(self) -> str:
        cand = "-" if self.candidate is None else str(self.candidate)
        verdict = "-" if self.verdict is None else str(self.verdict)
        return f"{self.rule} | {cand} | {verdict}"


@dataclass(frozen=True)
class ResolutionOutcome:
    np_id: str
    kind: OutcomeKind
    cospec: CoSpec | None = None
    rule: str = ""
    trace: tuple[TraceStep, ...] = ()
    # Both readings of a potential actor ambiguity.
    candidates: tuple[SpecTarget, ...] = ()
    flags: frozenset[str] = frozenset()

    @property
    def resolved(self) -> bool:
        return self.kind in (OutcomeKind.RESOLVED, OutcomeKind.GIVEN) and self.cospec is not None

    @property
    def target(self) -> SpecTarget | None:
        return self.cospec.targets if self.cospec else None

    def __str__(self) -> str:
        if self.kind is OutcomeKind.PAA:
            return "PAA(" + ", ".join(map(str, self.candidates)) + ")"
        if self.cospec is not None:
            return str(self.cospec)
        return self.kind.value.upper()


def recency_candidate(state: FocusState) -> SpecTarget | None:
    """The previous sentence's last NP, when it is still on the focus list."""
    last = state.last_np
    if last is None or isinstance(last, VPRef) or last not in state.alfl:
        return None
    return last


class _Search:
    """One pronoun's walk through the rules. Each candidate is judged once."""

    def __init__(self, p: NounPhrase, d: Discourse, cfg: RuleConfig) -> None:
        self.p, self.d, self.cfg = p, d, cfg
        self.trace: list[TraceStep] = []
        self.seen: dict[SpecTarget, bool] = {}

    def test(self, rule: str, cand: SpecTarget | None) -> bool:
        if cand is None or isinstance(cand, VPRef):
            return False
        if cand in self.seen:
            return self.seen[cand]
        verdict = acceptable_cospec(self.p, cand, self.cfg.filter, self.d)
        self.trace.append(TraceStep(rule, cand, verdict))
        self.seen[cand] = verdict.accepted
        return verdict.accepted

    def done(self, target: SpecTarget, rule: str, *flags: str) -> ResolutionOutcome:
        return ResolutionOutcome(
            self.p.id, OutcomeKind.RESOLVED, CoSpec(target), rule, tuple(self.trace), flags=frozenset(flags)
        )

    def fail(self, kind: OutcomeKind, rule: str, candidates: tuple[SpecTarget, ...] = ()) -> ResolutionOutcome:
        if kind is not OutcomeKind.PAA:
            self.trace.append(TraceStep(rule, None, None))
        return ResolutionOutcome(self.p.id, kind, None, rule, tuple(self.trace), candidates)


def _paf(state: FocusState) -> list[SpecTarget]:
    return [t for t in state.paf if t != state.af]


def _agent_chain(x: _Search, state: FocusState) -> ResolutionOutcome:
    p, d, cfg = x.p, x.d, x.cfg
    cf, af = state.cf, state.af

    if cf is None or af is None:
        if state.focus_sets is not None and state.focus_sets.actor_set:
            actors = make_set(state.focus_sets.actor_set)
            if x.test("focus-sets", actors):
                return x.done(actors, "focus-sets")
        if cf is None and af is None:
            return x.fail(OutcomeKind.BN, "no-focus")

    if cfg.recency_scope is not RecencyScope.OFF:
        recent = recency_candidate(state)
        if x.test("recency", recent):
            return x.done(recent, "recency", "recency")

    # A discourse focus set up before the actor focus outranks it.
    if cf is not None and af is not None and cf != af:
        if state.cf_since is not None and state.af_since is not None:
            if state.cf_since < state.af_since:
                if x.test("animate-df", cf):
                    return x.done(cf, "animate-df")
            elif state.cf_since == state.af_since:
                if x.test("animate-df", af) and x.test("animate-df", cf):
                    return x.done(af, "animate-df", "adf-tie")

    if af is not None and agree(p, af, d).accepted:
        rivals = [t for t in _paf(state) if features_of(t, d).number is p.number]
        if len(rivals) == 1:
            rival = rivals[0]
            if not cfg.paa_modification:
                return x.fail(OutcomeKind.PAA, "paa", (af, rival))
            af_ok = x.test("paa", af)
            rival_ok = x.test("paa", rival)
            if af_ok and rival_ok:
                return x.fail(OutcomeKind.PAA, "paa", (af, rival))
            if af_ok:
                return x.done(af, "paa", "paa-mod")
            if rival_ok:
                return x.done(rival, "paa", "paa-mod")

    if af is not None and state.af_pronoun is not None and state.af_pronoun == pronoun_type(p):
        if not x.test("actor-focus", af):
            return x.fail(OutcomeKind.UNRELIABLE, "unreliable-use")

    if x.test("actor-focus", af):
        return x.done(af, "actor-focus")
    for t in _paf(state):
        if x.test("potential-actor", t):
            return x.done(t, "potential-actor")
    for t in reversed(state.af_stack):
        if x.test("actor-stack", t):
            return x.done(t, "actor-stack")
    if p.number.value == "pl" and af is not None and state.af_stack:
        joined = make_set([state.af_stack[-1], af])
        if x.test("actor-set", joined):
            return x.done(joined, "actor-set")

    if x.test("focus", cf):
        return x.done(cf, "focus")
    for t in state.alfl:
        if x.test("alfl", t):
            return x.done(t, "alfl")
    return x.fail(OutcomeKind.BN, "exhausted")


def _non_agent_chain(
    x: _Search, state: FocusState, s: Sentence, entities: Mapping[str, SpecTarget]
) -> ResolutionOutcome:
    p, cfg = x.p, x.cfg
    if p.reflexive:
        subj = make_set(entities[n.id] for n in s.subject if n.id != p.id)
        if x.test("reflexive", subj):
            return x.done(subj, "reflexive")

    if state.cf is None:
        sets = state.focus_sets
        if sets is not None:
            for t in sets.theme_set:
                if x.test("focus-sets", t):
                    return x.done(t, "focus-sets")
            actors = make_set(sets.actor_set)
            if x.test("focus-sets", actors):
                return x.done(actors, "focus-sets")
        return x.fail(OutcomeKind.BNFC, "no-focus")

    if cfg.recency_scope is RecencyScope.ALL_POSITIONS:
        recent = recency_candidate(state)
        if x.test("recency", recent):
            return x.done(recent, "recency", "recency")

    if x.test("focus", state.cf):
        return x.done(state.cf, "focus")
    for t in state.alfl:
        if x.test("alfl", t):
            return x.done(t, "alfl")
    for t in reversed(state.df_stack):
        if x.test("focus-stack", t):
            return x.done(t, "focus-stack")
    if x.test("actor-focus", state.af):
        return x.done(state.af, "actor-focus")
    for t in _paf(state):
        if x.test("potential-actor", t):
            return x.done(t, "potential-actor")
    return x.fail(OutcomeKind.BNFC, "exhausted")


def _personal_chain(x: _Search, state: FocusState) -> ResolutionOutcome:
    """First and second person; plurals look for a group holding the speaker or hearer."""
    p = x.p
    person = p.pronoun_class.person if p.pronoun_class else PronounPerson.FIRST
    anchor = SPEAKER if person is PronounPerson.FIRST else HEARER
    if p.number.value == "sg":
        if x.test("deictic", anchor):
            return x.done(anchor, "deictic")
        return x.fail(OutcomeKind.BNFC, "deictic")

    af = state.af
    if isinstance(af, SetTarget) and anchor in af and x.test("actor-focus", af):
        return x.done(af, "actor-focus")
    history = make_set([*state.af_stack, af] if af is not None else state.af_stack)
    if history is not None and len(atoms(history)) >= 2 and anchor in atoms(history):
        if x.test("actor-history", history):
            return x.done(history, "actor-history")

    pool: list[SpecTarget] = []
    for t in (af, *reversed(state.af_stack), state.cf, *state.alfl, *_paf(state)):
        if t is not None and not isinstance(t, VPRef) and t not in pool:
            pool.append(t)
    groups = [t for t in pool if isinstance(t, SetTarget)]
    singles = [t for t in pool if not isinstance(t, SetTarget) and t != anchor]
    for t in groups + singles:
        joined = make_set([anchor, t])
        if x.test("group", joined):
            return x.done(joined, "group")
    return x.fail(OutcomeKind.BNFC, "exhausted")


def resolve_pronoun(
    p: NounPhrase,
    s: Sentence,
    state: FocusState,
    d: Discourse,
    cfg: RuleConfig,
    entities: Mapping[str, SpecTarget],
) -> ResolutionOutcome:
    """Interpret one pronoun against the focus state left by the previous sentence."""
    x = _Search(p, d, cfg)
    if p.pronoun_class is not None and p.pronoun_class.person is not PronounPerson.THIRD:
        return _personal_chain(x, state)
    if p.position == "subject":
        return _agent_chain(x, state)
    return _non_agent_chain(x, state, s, entities)


# --- driver ---------------------------------------------------------------


def canonical(target: SpecTarget, entity_map: Mapping[str, SpecTarget]) -> SpecTarget:
    """Map NP references to the entity they were found to specify."""
    out = [entity_map.get(a.id, a) if isinstance(a, NPRef) else a for a in atoms(target)]
    if not isinstance(target, SetTarget) and len(out) == 1:
        return out[0]
    joined = make_set(out)
    return joined if joined is not None else target


def _given(np: NounPhrase, entity_map: Mapping[str, SpecTarget]) -> ResolutionOutcome:
    target = np.cospec_target()
    flags: frozenset[str] = frozenset()
    if target is None and np.implicit_spec_of is not None:
        target = NPRef(np.implicit_spec_of)
        flags = frozenset({"implicit"})
    cospec = CoSpec(canonical(target, entity_map)) if target is not None else None
    return ResolutionOutcome(np.id, OutcomeKind.GIVEN, cospec, "given", flags=flags)


def resolve_sentence(
    s: Sentence,
    state: FocusState,
    d: Discourse,
    cfg: RuleConfig,
    entity_map: Mapping[str, SpecTarget],
) -> tuple[dict[str, ResolutionOutcome], dict[str, SpecTarget]]:
    """Resolve the anaphors of ``s`` left to right.

    Returns the outcomes and the entity of every NP in the sentence. An
    unresolved pronoun stands for itself.
    """
    entities: dict[str, SpecTarget] = {}
    for np in s.noun_phrases:
        if np.is_pronoun and np.given_cospec is None:
            entities[np.id] = NPRef(np.id)
        elif np.given_cospec:
            entities[np.id] = canonical(np.cospec_target(), entity_map)
        else:
            entities[np.id] = NPRef(np.id)
    outcomes: dict[str, ResolutionOutcome] = {}
    for np in anaphora_in_order(s):
        if np.is_pronoun and np.given_cospec is None:
            out = resolve_pronoun(np, s, state, d, cfg, entities)
            if out.resolved:
                entities[np.id] = out.target
        else:
            out = _given(np, entity_map)
        outcomes[np.id] = out
    return outcomes, entities


@dataclass
class DiscourseRun:
    discourse: Discourse
    outcomes: dict[str, ResolutionOutcome]
    # Focus state each sentence was interpreted against, keyed by sentence id.
    states_before: dict[str, FocusState]
    timeline: list[FocusState]
    events: list[tuple[str, FocusTraceEvent]]
    entities: dict[str, SpecTarget]


def run_discourse(d: Discourse, cfg: RuleConfig | None = None) -> DiscourseRun:
    """Interpret every anaphor of a discourse and record the focus timeline."""
    cfg = cfg or RuleConfig()
    entity_map: dict[str, SpecTarget] = {}
    state = FocusState()
    run = DiscourseRun(d, {}, {}, [], [], entity_map)
    for index, s in enumerate(d.sentences):
        run.states_before[s.id] = state
        outcomes, entities = resolve_sentence(s, state, d, cfg, entity_map)
        run.outcomes.update(outcomes)
        entity_map.update(entities)
        implicit = {
            np.id: canonical(NPRef(np.implicit_spec_of), entity_map)
            for np in s.noun_phrases
            if np.implicit_spec_of is not None
        }
        if index == 0:
            state, events = init_state(s, d, entities)
        else:
            state, events = update_focus(state, s, d, entities, implicit, index)
        run.events.extend((s.id, e) for e in events)
        run.timeline.append(state)
    return run


__all__ = [
    "DiscourseRun",
    "OutcomeKind",
    "RecencyScope",
    "ResolutionOutcome",
    "RuleConfig",
    "TraceStep",
    "canonical",
    "recency_candidate",
    "resolve_pronoun",
    "resolve_sentence",
    "run_discourse",
]
