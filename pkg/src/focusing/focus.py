"""Attentional state: expected focus, the focusing update, PFL and actor focus."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field, replace

from .filters import is_animate
from .model import (
    Discourse,
    Hearer,
    NounPhrase,
    NPRef,
    Sentence,
    SentenceType,
    Speaker,
    SpecTarget,
    VPRef,
    make_set,
)

# Pronouns of one "type" for the unreliable-use test.
LEMMA_GROUPS: dict[str, str] = {
    **dict.fromkeys(("he", "him", "his", "himself"), "he"),
    **dict.fromkeys(("she", "her", "hers", "herself"), "she"),
    **dict.fromkeys(("it", "its", "itself"), "it"),
    **dict.fromkeys(("they", "them", "their", "themselves"), "they"),
    **dict.fromkeys(("we", "us", "our", "ourselves"), "we"),
    **dict.fromkeys(("i", "me", "my", "myself"), "i"),
    **dict.fromkeys(("you", "your", "yourself"), "you"),
}


def pronoun_type(np: NounPhrase) -> str | None:
    if not np.is_pronoun:
        return None
    return LEMMA_GROUPS.get(np.lemma, np.lemma)


@dataclass(frozen=True)
class FocusSets:
    theme_set: tuple[SpecTarget, ...] = ()
    actor_set: tuple[SpecTarget, ...] = ()
    vp_set: tuple[SpecTarget, ...] = ()

    def merge(self, other: FocusSets) -> FocusSets:
        return FocusSets(
            _extend(self.theme_set, other.theme_set),
            _extend(self.actor_set, other.actor_set),
            _extend(self.vp_set, other.vp_set),
        )


@dataclass(frozen=True)
class FocusState:
    cf: SpecTarget | None = None
    af: SpecTarget | None = None
    alfl: tuple[SpecTarget, ...] = ()
    paf: tuple[SpecTarget, ...] = ()
    df_stack: tuple[SpecTarget, ...] = ()
    af_stack: tuple[SpecTarget, ...] = ()
    focus_sets: FocusSets | None = None
    initial: bool = True
    # Sentence index at which cf / af were established.
    cf_since: int | None = None
    af_since: int | None = None
    # Pronoun type that last realized the actor focus, if any.
    af_pronoun: str | None = None
    # Entity of the last NP of the sentence just processed (recency rule).
    last_np: SpecTarget | None = None
    # This sentence's own contribution, kept for retroactive focus-set collection.
    contribution: FocusSets = field(default_factory=FocusSets)


@dataclass(frozen=True)
class FocusTraceEvent:
    step: str
    detail: str

    def __str__(self) -> str:
        return f"{self.step}: {self.detail}"


class IncoherentCleft(ValueError):
    """Cleft sentence whose non-clefted entity does not co-specify the focus."""


# --- helpers --------------------------------------------------------------


def _extend(seq: tuple[SpecTarget, ...], items) -> tuple[SpecTarget, ...]:
    out = list(seq)
    for item in items:
        if item is not None and item not in out:
            out.append(item)
    return tuple(out)


def _without(seq: tuple[SpecTarget, ...], *drop: SpecTarget | None) -> tuple[SpecTarget, ...]:
    return tuple(x for x in seq if x not in drop)


def default_entities(s: Sentence) -> dict[str, SpecTarget]:
    return {np.id: NPRef(np.id) for np in s.noun_phrases}


def agent_nps(s: Sentence) -> list[NounPhrase]:
    return [np for np in s.subject if s.is_agent(np)]


def agent_entity(s: Sentence, entities: Mapping[str, SpecTarget]) -> SpecTarget | None:
    return make_set(entities[np.id] for np in agent_nps(s))


def _slot_items(
    s: Sentence, entities: Mapping[str, SpecTarget]
) -> list[tuple[int, SpecTarget]]:
    """(category, entity) pairs in surface order; 0 theme, 1 other, 2 agent.

    Conjoined NPs in one slot are followed by their set.
    """
    theme = set(s.vp.theme) if s.vp else set()
    items: list[tuple[int, SpecTarget]] = []
    # A predicate nominal is not thematic and never enters the focus lists.
    slots = ("subject", "np2") if s.stype is SentenceType.IS_A else ("subject", "np1", "np2")
    for pos in slots:
        group = s.slot(pos)
        for np in group:
            cat = 0 if np.id in theme else 2 if s.is_agent(np) else 1
            items.append((cat, entities[np.id]))
        if len(group) > 1:
            joined = make_set(entities[np.id] for np in group)
            first = group[0]
            cat = 0 if first.id in theme else 2 if s.is_agent(first) else 1
            if joined is not None:
                items.append((cat, joined))
    return items


def preference_order(s: Sentence, entities: Mapping[str, SpecTarget] | None = None) -> list[SpecTarget]:
    """Theme, other thematic NPs, agent, then the verb phrase."""
    entities = entities or default_entities(s)
    items = sorted(_slot_items(s, entities), key=lambda it: it[0])
    out: list[SpecTarget] = []
    for _, t in items:
        if t not in out:
            out.append(t)
    if s.vp is not None:
        out.append(VPRef(s.vp.id))
    return out


def expected_focus(
    s: Sentence, entities: Mapping[str, SpecTarget] | None = None
) -> tuple[SpecTarget | None, list[SpecTarget]]:
    """Expected focus and the DEF list of a discourse-initial sentence."""
    entities = entities or default_entities(s)
    order = preference_order(s, entities)
    if s.stype in (SentenceType.IS_A, SentenceType.THERE_INSERTION) and s.subject:
        subj = make_set(entities[np.id] for np in s.subject)
        order = [subj] + [t for t in order if t != subj]
    return (order[0] if order else None), order


def animate_non_agents(
    s: Sentence, d: Discourse, entities: Mapping[str, SpecTarget]
) -> list[SpecTarget]:
    out: list[SpecTarget] = []
    for np in s.noun_phrases:
        if s.is_agent(np):
            continue
        t = entities[np.id]
        if isinstance(t, (Speaker, Hearer)):
            continue
        if is_animate(t, d) and t not in out:
            out.append(t)
    return out


def contribution(s: Sentence, d: Discourse, entities: Mapping[str, SpecTarget]) -> FocusSets:
    theme = s.vp.theme if s.vp else ()
    themes = tuple(entities[t] for t in theme)
    actor = agent_entity(s, entities)
    actors = (actor,) if actor is not None and is_animate(actor, d) else ()
    vps = (VPRef(s.vp.id),) if s.vp else ()
    return FocusSets(themes, actors, vps)


def last_np_entity(s: Sentence, entities: Mapping[str, SpecTarget]) -> SpecTarget | None:
    nps = s.noun_phrases
    return entities[nps[-1].id] if nps else None


def build_pfl(
    s: Sentence,
    focus: SpecTarget | None,
    entities: Mapping[str, SpecTarget] | None = None,
) -> list[SpecTarget]:
    """Potential focus list of a sentence given the focus after its update."""
    entities = entities or default_entities(s)
    item = s.cleft_item or s.pseudo_cleft_item
    if item is not None:
        others = [np for np in s.noun_phrases if np.id != item]
        if not any(entities[np.id] == focus for np in others):
            raise IncoherentCleft(f"sentence {s.id}: non-cleft entity does not co-specify the focus")
        return [entities[item]]
    out: list[SpecTarget] = []
    for cat, t in sorted(_slot_items(s, entities), key=lambda it: it[0]):
        if cat == 2 or t == focus or t in out:
            continue
        out.append(t)
    if s.vp is not None:
        out.append(VPRef(s.vp.id))
    return out


def _safe_pfl(s, focus, entities, events) -> tuple[SpecTarget, ...]:
    try:
        return tuple(build_pfl(s, focus, entities))
    except IncoherentCleft as exc:
        events.append(FocusTraceEvent("incoherent-cleft", str(exc)))
        item = s.cleft_item or s.pseudo_cleft_item
        return (entities[item],) if item else ()


def _actor_update(
    state: FocusState, s: Sentence, d: Discourse, entities: Mapping[str, SpecTarget], index: int
) -> tuple[FocusState, list[FocusTraceEvent]]:
    events: list[FocusTraceEvent] = []
    af, af_stack, af_since, af_pronoun = state.af, state.af_stack, state.af_since, state.af_pronoun
    agents = agent_nps(s)
    actor = agent_entity(s, entities)
    if actor is not None and is_animate(actor, d):
        kinds = {pronoun_type(np) for np in agents}
        af_pronoun = kinds.pop() if len(kinds) == 1 else None
        if actor != af:
            if af is not None:
                af_stack = _without(af_stack, actor) + (af,)
                events.append(FocusTraceEvent("step-8", f"stack actor focus {af}"))
            af_stack = _without(af_stack, actor)
            af, af_since = actor, index
            events.append(FocusTraceEvent("step-8", f"actor focus := {af}"))
    # The current actor focus is skipped when the list is read, not dropped here.
    paf = _extend(state.paf, animate_non_agents(s, d, entities))
    return (
        replace(state, af=af, af_stack=af_stack, af_since=af_since, af_pronoun=af_pronoun, paf=paf),
        events,
    )


# --- public operations ----------------------------------------------------


def init_state(
    s: Sentence, d: Discourse, entities: Mapping[str, SpecTarget] | None = None
) -> tuple[FocusState, list[FocusTraceEvent]]:
    """State after the discourse-initial sentence."""
    entities = entities or default_entities(s)
    ef, def_list = expected_focus(s, entities)
    events = [FocusTraceEvent("expected-focus", f"cf := {ef}; DEF = [{', '.join(map(str, def_list))}]")]
    state = FocusState(
        cf=ef,
        alfl=tuple(t for t in def_list if t != ef),
        initial=True,
        cf_since=0,
        last_np=last_np_entity(s, entities),
        contribution=contribution(s, d, entities),
    )
    state, more = _actor_update(state, s, d, entities, 0)
    return state, events + more


def update_focus(
    state: FocusState,
    s: Sentence,
    d: Discourse,
    entities: Mapping[str, SpecTarget],
    implicit: Mapping[str, SpecTarget] | None = None,
    index: int = 0,
) -> tuple[FocusState, list[FocusTraceEvent]]:
    """Apply the focusing steps to a non-initial sentence.

    ``entities`` maps every NP of ``s`` to its entity; an anaphor co-specifies
    something iff its entity is not its own NP. ``implicit`` maps definite NPs
    to the entity they implicitly specify.
    """
    implicit = implicit or {}
    events: list[FocusTraceEvent] = []
    anaphors = [np for np in s.noun_phrases if np.is_anaphoric]
    links = [(np, entities[np.id]) for np in anaphors if entities[np.id] != NPRef(np.id)]
    cf, df_stack, cf_since = state.cf, state.df_stack, state.cf_since
    focus_sets = state.focus_sets
    alfl = state.alfl

    def move(new: SpecTarget, step: str) -> None:
        nonlocal cf, df_stack, cf_since
        if new == cf:
            return
        if cf is not None:
            df_stack = _without(df_stack, cf, new) + (cf,)
        df_stack = _without(df_stack, new)
        events.append(FocusTraceEvent(step, f"focus {cf} -> {new}"))
        cf, cf_since = new, index

    if s.do_anaphora and alfl:
        move(alfl[-1], "step-1")
        focus_sets = None
    elif cf is None:
        non_agent = [(np, t) for np, t in links if not s.is_agent(np)]
        if not links:
            focus_sets = (focus_sets or FocusSets()).merge(contribution(s, d, entities))
            events.append(FocusTraceEvent("step-2", "collect focus sets"))
        else:
            if non_agent:
                move(non_agent[0][1], "step-2")
            else:
                head, _ = expected_focus(s, entities)
                if head is not None:
                    move(head, "step-2")
            # Collected themes stay reachable below the new focus.
            if focus_sets is not None:
                parked = _without(focus_sets.theme_set, cf)
                df_stack = _without(df_stack, *parked) + parked
            focus_sets = None
    else:
        cf_hits = [(np, t) for np, t in links if t == cf]
        alfl_hits = [(np, t) for np, t in links if t != cf and t in alfl]
        stack_hits = [(np, t) for np, t in links if t in df_stack and t != cf and t not in alfl]
        if cf_hits and alfl_hits:
            alt = min((t for _, t in alfl_hits), key=alfl.index)
            alt_nps = [np for np, t in alfl_hits if t == alt]
            cf_nps = [np for np, _ in cf_hits]
            cf_pron = any(np.is_pronoun for np in cf_nps)
            alt_pron = any(np.is_pronoun for np in alt_nps)
            cf_agent = all(s.is_agent(np) for np in cf_nps)
            alt_agent = all(s.is_agent(np) for np in alt_nps)
            if cf_pron != alt_pron:
                if alt_pron:
                    move(alt, "step-3")
                else:
                    events.append(FocusTraceEvent("step-3", f"retain {cf} (pronominalized)"))
            elif cf_agent and not alt_agent:
                move(alt, "step-3")
            else:
                events.append(FocusTraceEvent("step-3", f"retain {cf}"))
        elif cf_hits:
            events.append(FocusTraceEvent("step-4", f"retain {cf}"))
        elif alfl_hits:
            move(min((t for _, t in alfl_hits), key=alfl.index), "step-5")
        elif stack_hits:
            target = max((t for _, t in stack_hits), key=df_stack.index)
            depth = df_stack.index(target)
            discarded = df_stack[depth + 1 :]
            events.append(
                FocusTraceEvent(
                    "step-6",
                    f"pop to {target}, discarding {', '.join(map(str, discarded)) or 'nothing'} and {cf}",
                )
            )
            cf, cf_since = target, index
            df_stack = df_stack[:depth]
        else:
            for np in anaphors:
                assoc = implicit.get(np.id)
                if assoc is None:
                    continue
                if assoc == cf:
                    events.append(FocusTraceEvent("step-7", f"{np.id} implicitly specifies focus {cf}"))
                    break
                if assoc in alfl:
                    events.append(FocusTraceEvent("step-7", f"{np.id} implicitly specifies {assoc}"))
                    move(assoc, "step-7")
                    break

        agent = agent_entity(s, entities)
        if (
            not anaphors
            and agent is not None
            and is_animate(agent, d)
            and agent != cf
            and agent != state.af
        ):
            events.append(FocusTraceEvent("focus-sets", f"no anaphora and new actor {agent}: focus := nil"))
            if cf is not None:
                df_stack = _without(df_stack, cf) + (cf,)
            cf, cf_since = None, None
            focus_sets = state.contribution.merge(contribution(s, d, entities))

    new = replace(
        state,
        cf=cf,
        cf_since=cf_since,
        df_stack=df_stack,
        focus_sets=focus_sets if cf is None else None,
        initial=False,
        alfl=_safe_pfl(s, cf, entities, events),
        last_np=last_np_entity(s, entities),
        contribution=contribution(s, d, entities),
    )
    new, more = _actor_update(new, s, d, entities, index)
    return new, events + more


__all__ = [
    "FocusSets",
    "FocusState",
    "FocusTraceEvent",
    "IncoherentCleft",
    "LEMMA_GROUPS",
    "agent_entity",
    "agent_nps",
    "animate_non_agents",
    "build_pfl",
    "contribution",
    "expected_focus",
    "init_state",
    "preference_order",
    "pronoun_type",
    "update_focus",
]
