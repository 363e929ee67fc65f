"""Annotated discourse segments: sentences, phrases, co-specification targets."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Union

POSITIONS: tuple[str, ...] = ("subject", "np1", "np2")
GENDERS: tuple[str, ...] = ("m", "f", "n")
PERSONS: tuple[str, ...] = ("1sg", "1pl", "2sg", "2pl", "3sg", "3pl")


class SentenceType(str, Enum):
    NORMAL = "normal"
    IS_A = "is_a"
    THERE_INSERTION = "there_insertion"
    CLEFT = "cleft"
    PSEUDO_CLEFT = "pseudo_cleft"


class Anaphor(str, Enum):
    NONE = "none"
    DEFNP = "defnp"
    PRONOUN = "pronoun"


class Number(str, Enum):
    SINGULAR = "sg"
    PLURAL = "pl"


class Life(str, Enum):
    ANIMATE = "anim"
    INANIMATE = "inan"
    UNKNOWN = "unk"


class PronounPerson(str, Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"


class PronounForm(str, Enum):
    PLAIN = "plain"
    REFLEXIVE = "reflexive"
    POSSESSIVE = "possessive"


@dataclass(frozen=True)
class PronounClass:
    person: PronounPerson
    form: PronounForm = PronounForm.PLAIN

    def __str__(self) -> str:
        return f"{self.person.value}-{self.form.value}"

    @classmethod
    def parse(cls, text: str) -> PronounClass:
        person, _, form = text.partition("-")
        return cls(PronounPerson(person), PronounForm(form or "plain"))


# --- co-specification targets -------------------------------------------


@dataclass(frozen=True)
class NPRef:
    id: str

    def __str__(self) -> str:
        return f"np:{self.id}"


@dataclass(frozen=True)
class VPRef:
    id: str

    def __str__(self) -> str:
        return f"vp:{self.id}"


@dataclass(frozen=True)
class Speaker:
    def __str__(self) -> str:
        return "SPEAKER"


@dataclass(frozen=True)
class Hearer:
    def __str__(self) -> str:
        return "HEARER"


SPEAKER = Speaker()
HEARER = Hearer()

Atom = Union[NPRef, VPRef, Speaker, Hearer]


@dataclass(frozen=True, eq=False)
class SetTarget:
    """A plural target. Equality ignores member order; the order is kept for output."""

    members: tuple[Atom, ...]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SetTarget) and frozenset(self.members) == frozenset(other.members)

    def __hash__(self) -> int:
        return hash(("set", frozenset(self.members)))

    def __str__(self) -> str:
        return "set(" + ",".join(str(m) for m in self.members) + ")"

    def __contains__(self, item: object) -> bool:
        return item in self.members


SpecTarget = Union[NPRef, VPRef, Speaker, Hearer, SetTarget]


def atoms(target: SpecTarget) -> tuple[Atom, ...]:
    """Members of a set target, or the target itself."""
    if isinstance(target, SetTarget):
        return target.members
    return (target,)


def make_set(items: Iterable[SpecTarget]) -> SpecTarget | None:
    """Flatten and dedupe targets into one; a single survivor is returned bare."""
    seen: list[Atom] = []
    for item in items:
        for a in atoms(item):
            if a not in seen:
                seen.append(a)
    if not seen:
        return None
    if len(seen) == 1:
        return seen[0]
    return SetTarget(tuple(seen))


@dataclass(frozen=True)
class CoSpec:
    targets: SpecTarget

    def __str__(self) -> str:
        return str(self.targets)


# --- phrases and sentences ----------------------------------------------


@dataclass(frozen=True)
class NounPhrase:
    id: str
    sentence: str
    position: str
    text: str
    anaphor: Anaphor = Anaphor.NONE
    pronoun_class: PronounClass | None = None
    gender: frozenset[str] = frozenset({"n"})
    number: Number = Number.SINGULAR
    person: str = "3sg"
    life: Life = Life.UNKNOWN
    implicit_spec_of: str | None = None
    given_cospec: tuple[SpecTarget, ...] | None = None
    gold: CoSpec | None = None

    @property
    def is_pronoun(self) -> bool:
        return self.anaphor is Anaphor.PRONOUN

    @property
    def is_anaphoric(self) -> bool:
        return self.anaphor is not Anaphor.NONE

    @property
    def person_digit(self) -> str:
        return self.person[0]

    @property
    def reflexive(self) -> bool:
        return self.pronoun_class is not None and self.pronoun_class.form is PronounForm.REFLEXIVE

    @property
    def possessive(self) -> bool:
        return self.pronoun_class is not None and self.pronoun_class.form is PronounForm.POSSESSIVE

    @property
    def lemma(self) -> str:
        """Surface pronoun, lowercased, without recovery brackets."""
        return self.text.strip("[]").lower()

    def cospec_target(self) -> SpecTarget | None:
        if not self.given_cospec:
            return None
        if len(self.given_cospec) == 1:
            return self.given_cospec[0]
        return make_set(self.given_cospec)


@dataclass(frozen=True)
class VerbPhrase:
    id: str
    sentence: str
    text: str
    theme: tuple[str, ...] = ()


@dataclass(frozen=True)
class Sentence:
    id: str
    stype: SentenceType = SentenceType.NORMAL
    complete: bool = True
    do_anaphora: bool = False
    cleft_item: str | None = None
    pseudo_cleft_item: str | None = None
    subject: tuple[NounPhrase, ...] = ()
    np1: tuple[NounPhrase, ...] = ()
    np2: tuple[NounPhrase, ...] = ()
    vp: VerbPhrase | None = None
    prev: str | None = None
    next: str | None = None

    def slot(self, position: str) -> tuple[NounPhrase, ...]:
        return getattr(self, position)

    @property
    def noun_phrases(self) -> tuple[NounPhrase, ...]:
        return self.subject + self.np1 + self.np2

    @property
    def anaphor_positions(self) -> tuple[str, ...]:
        return tuple(p for p in POSITIONS if any(np.is_anaphoric for np in self.slot(p)))

    def is_agent(self, np: NounPhrase) -> bool:
        """Thematic agent: a subject that is not the theme of the verb."""
        theme = self.vp.theme if self.vp else ()
        return np.position == "subject" and np.id not in theme


@dataclass(frozen=True)
class Discourse:
    id: str
    speaker: str
    hearer: str
    sentences: tuple[Sentence, ...]

    @cached_property
    def nps(self) -> dict[str, NounPhrase]:
        return {np.id: np for s in self.sentences for np in s.noun_phrases}

    @cached_property
    def vps(self) -> dict[str, VerbPhrase]:
        return {s.vp.id: s.vp for s in self.sentences if s.vp is not None}

    @cached_property
    def sentence_index(self) -> dict[str, int]:
        return {s.id: i for i, s in enumerate(self.sentences)}

    def sentence_of(self, np: NounPhrase) -> Sentence:
        return self.sentences[self.sentence_index[np.sentence]]

    def pronouns(self) -> Iterator[NounPhrase]:
        for s in self.sentences:
            for np in s.noun_phrases:
                if np.is_pronoun:
                    yield np


# --- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    entity: str
    field: str
    rule: str

    def __str__(self) -> str:
        return f"{self.entity}.{self.field}: {self.rule}"


def _check_target(
    d: Discourse, owner: str, fname: str, target: SpecTarget, out: list[Violation]
) -> None:
    if isinstance(target, SetTarget):
        if not target.members:
            out.append(Violation(owner, fname, "empty set target"))
        for m in target.members:
            if isinstance(m, SetTarget):
                out.append(Violation(owner, fname, "nested set target"))
            else:
                _check_target(d, owner, fname, m, out)
    elif isinstance(target, NPRef) and target.id not in d.nps:
        out.append(Violation(owner, fname, f"unknown np {target.id}"))
    elif isinstance(target, VPRef) and target.id not in d.vps:
        out.append(Violation(owner, fname, f"unknown vp {target.id}"))


def validate_discourse(d: Discourse) -> list[Violation]:
    """Check structural invariants; violations are returned, never raised."""
    out: list[Violation] = []
    if not d.sentences:
        out.append(Violation(d.id, "sentences", "discourse has no sentences"))
    ids = [s.id for s in d.sentences]
    for i, s in enumerate(d.sentences):
        want_prev = ids[i - 1] if i > 0 else None
        want_next = ids[i + 1] if i + 1 < len(ids) else None
        if s.prev != want_prev:
            out.append(Violation(s.id, "prev", "chain inconsistent with sentence order"))
        if s.next != want_next:
            out.append(Violation(s.id, "next", "chain inconsistent with sentence order"))
        is_cleft = s.stype is SentenceType.CLEFT
        if is_cleft != (s.cleft_item is not None):
            out.append(Violation(s.id, "cleft_item", "set iff type is cleft"))
        is_pcleft = s.stype is SentenceType.PSEUDO_CLEFT
        if is_pcleft != (s.pseudo_cleft_item is not None):
            out.append(Violation(s.id, "pseudo_cleft_item", "set iff type is pseudo_cleft"))
        own = {np.id for np in s.noun_phrases}
        for item, fname in ((s.cleft_item, "cleft_item"), (s.pseudo_cleft_item, "pseudo_cleft_item")):
            if item is not None and item not in own:
                out.append(Violation(s.id, fname, f"np {item} not in sentence"))
        for pos in POSITIONS:
            for np in s.slot(pos):
                if np.position != pos or np.sentence != s.id:
                    out.append(Violation(np.id, "position", "backref disagrees with slot"))
        if s.vp is not None:
            if s.vp.sentence != s.id:
                out.append(Violation(s.vp.id, "sentence", "backref disagrees with owner"))
            for t in s.vp.theme:
                if t not in own:
                    out.append(Violation(s.vp.id, "theme", f"np {t} not in sentence"))

    seen: dict[str, str] = {}
    for s in d.sentences:
        for np in s.noun_phrases:
            if np.id in seen:
                out.append(Violation(np.id, "sentence", "np appears in more than one place"))
            seen[np.id] = s.id
    vp_seen: set[str] = set()
    for s in d.sentences:
        if s.vp is not None:
            if s.vp.id in vp_seen or s.vp.id in seen:
                out.append(Violation(s.vp.id, "id", "duplicate phrase id"))
            vp_seen.add(s.vp.id)

    for np in d.nps.values():
        if np.is_pronoun and np.pronoun_class is None:
            out.append(Violation(np.id, "pronoun_class", "required for pronouns"))
        if np.anaphor is Anaphor.DEFNP and not np.given_cospec and np.implicit_spec_of is None:
            out.append(Violation(np.id, "given_cospec", "definite NP needs cospec or ispec"))
        if np.anaphor is Anaphor.NONE:
            if np.given_cospec is not None:
                out.append(Violation(np.id, "given_cospec", "not allowed when anaphor=none"))
            if np.pronoun_class is not None:
                out.append(Violation(np.id, "pronoun_class", "not allowed when anaphor=none"))
        if not np.gender or not np.gender <= set(GENDERS):
            out.append(Violation(np.id, "gender", "must be a nonempty subset of m,f,n"))
        if np.person not in PERSONS:
            out.append(Violation(np.id, "person", f"unknown person {np.person!r}"))
        if np.position not in POSITIONS:
            out.append(Violation(np.id, "position", f"unknown position {np.position!r}"))
        if np.implicit_spec_of is not None and np.implicit_spec_of not in d.nps:
            out.append(Violation(np.id, "implicit_spec_of", f"unknown np {np.implicit_spec_of}"))
        for t in np.given_cospec or ():
            _check_target(d, np.id, "given_cospec", t, out)
        if np.gold is not None:
            _check_target(d, np.id, "gold", np.gold.targets, out)
    return out


# --- orderings ----------------------------------------------------------


def anaphora_in_order(s: Sentence) -> list[NounPhrase]:
    """Anaphoric NPs, subject then np1 then np2, keeping order within a slot."""
    return [np for np in s.noun_phrases if np.is_anaphoric]


def phrase_surface_order(s: Sentence) -> list[tuple[str, NounPhrase | VerbPhrase]]:
    """All NPs in slot order followed by the verb phrase."""
    out: list[tuple[str, NounPhrase | VerbPhrase]] = [(np.position, np) for np in s.noun_phrases]
    if s.vp is not None:
        out.append(("vp", s.vp))
    return out


def link_sentences(sentences: Iterable[Sentence]) -> tuple[Sentence, ...]:
    """Return copies whose prev/next links follow list order."""
    items = list(sentences)
    out = []
    for i, s in enumerate(items):
        out.append(
            replace(
                s,
                prev=items[i - 1].id if i > 0 else None,
                next=items[i + 1].id if i + 1 < len(items) else None,
            )
        )
    return tuple(out)


__all__ = [
    "Anaphor",
    "Atom",
    "CoSpec",
    "Discourse",
    "HEARER",
    "Hearer",
    "Life",
    "NPRef",
    "NounPhrase",
    "Number",
    "POSITIONS",
    "PronounClass",
    "PronounForm",
    "PronounPerson",
    "SPEAKER",
    "Sentence",
    "SentenceType",
    "SetTarget",
    "SpecTarget",
    "Speaker",
    "VPRef",
    "VerbPhrase",
    "Violation",
    "anaphora_in_order",
    "atoms",
    "link_sentences",
    "make_set",
    "phrase_surface_order",
    "validate_discourse",
]
