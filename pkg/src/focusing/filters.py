"""Agreement, disjoint reference and the inference veto hook."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .model import (
    Discourse,
    Hearer,
    Life,
    NounPhrase,
    NPRef,
    Number,
    Speaker,
    SpecTarget,
    VPRef,
    atoms,
)


class Reason(str, Enum):
    GENDER = "gender"
    NUMBER = "number"
    PERSON = "person"
    LIFE_FORM = "life_form"
    DISJOINT = "disjoint"
    INFERENCE_VETO = "inference_veto"
    OK = "ok"


@dataclass(frozen=True)
class FilterVerdict:
    accepted: bool
    reason: Reason = Reason.OK

    def __str__(self) -> str:
        return "accept" if self.accepted else f"reject:{self.reason.value}"


ACCEPT = FilterVerdict(True, Reason.OK)

OracleFn = Callable[[str, str, SpecTarget], bool]


@dataclass(frozen=True)
class FilterConfig:
    """Inference oracle. ``vetoes`` holds (discourse id, pronoun id, candidate) triples;
    ``judge`` may reject further candidates. Everything else is accepted."""

    vetoes: frozenset[tuple[str, str, SpecTarget]] = frozenset()
    judge: OracleFn | None = field(default=None, compare=False)

    def accepts(self, discourse_id: str, pronoun_id: str, candidate: SpecTarget) -> bool:
        if (discourse_id, pronoun_id, candidate) in self.vetoes:
            return False
        if self.judge is not None and not self.judge(discourse_id, pronoun_id, candidate):
            return False
        return True


def load_oracle(path: str | Path) -> FilterConfig:
    """Read ``<discourse> <pronoun-np> <candidate> reject`` lines."""
    from .corpus import CorpusError, parse_target

    vetoes: set[tuple[str, str, SpecTarget]] = set()
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4 or parts[3] != "reject":
            raise CorpusError(f"oracle line {lineno}: expected '<discourse> <np> <candidate> reject'", lineno, 1)
        token = parts[2]
        if not (":" in token or token in ("SPEAKER", "HEARER") or token.startswith("set(")):
            token = f"np:{token}"
        vetoes.add((parts[0], parts[1], parse_target(token)))
    return FilterConfig(frozenset(vetoes))


# --- features -------------------------------------------------------------


@dataclass(frozen=True)
class Features:
    gender: frozenset[str]
    number: Number
    person: str
    life: Life


SPEAKER_FEATURES = Features(frozenset("mf"), Number.SINGULAR, "1", Life.ANIMATE)
HEARER_FEATURES = Features(frozenset("mf"), Number.SINGULAR, "2", Life.ANIMATE)
VP_FEATURES = Features(frozenset("n"), Number.SINGULAR, "3", Life.INANIMATE)


def np_features(np: NounPhrase) -> Features:
    return Features(np.gender, np.number, np.person_digit, np.life)


def features_of(target: SpecTarget, d: Discourse) -> Features:
    """Agreement features of a target; sets count as plural."""
    if isinstance(target, Speaker):
        return SPEAKER_FEATURES
    if isinstance(target, Hearer):
        return HEARER_FEATURES
    if isinstance(target, VPRef):
        return VP_FEATURES
    if isinstance(target, NPRef):
        return np_features(d.nps[target.id])
    parts = [features_of(m, d) for m in target.members]
    gender = frozenset().union(*(p.gender for p in parts))
    persons = {p.person for p in parts}
    person = "1" if "1" in persons else "2" if "2" in persons else "3"
    lives = {p.life for p in parts}
    if lives == {Life.ANIMATE}:
        life = Life.ANIMATE
    elif lives == {Life.INANIMATE}:
        life = Life.INANIMATE
    else:
        life = Life.UNKNOWN
    return Features(gender, Number.PLURAL, person, life)


def is_animate(target: SpecTarget, d: Discourse) -> bool:
    return features_of(target, d).life is Life.ANIMATE


def _life_ok(a: Life, b: Life) -> bool:
    return a is Life.UNKNOWN or b is Life.UNKNOWN or a is b


def agree(p: NounPhrase, c: SpecTarget, d: Discourse) -> FilterVerdict:
    """Gender, number, person and life-form agreement, checked in that order."""
    f = features_of(c, d)
    if not (p.gender & f.gender):
        return FilterVerdict(False, Reason.GENDER)
    if p.number is not f.number:
        return FilterVerdict(False, Reason.NUMBER)
    if p.person_digit != f.person:
        return FilterVerdict(False, Reason.PERSON)
    if not _life_ok(p.life, f.life):
        return FilterVerdict(False, Reason.LIFE_FORM)
    return ACCEPT


def disjoint(p: NounPhrase, c: NounPhrase) -> bool:
    """Positional stand-in for precede-and-kommand.

    Every NP of a clause is a co-argument of its single verb, so a plain
    pronoun is disjoint from any other NP of its own clause. Reflexives and
    possessives are never disjoint.
    """
    if p.sentence != c.sentence or p.id == c.id:
        return False
    if p.reflexive or p.possessive:
        return False
    return True


def acceptable_cospec(
    p: NounPhrase, c: SpecTarget, cfg: FilterConfig, d: Discourse
) -> FilterVerdict:
    """Agreement, then disjoint reference, then the oracle; first failure wins.

    Disjointness is checked for every member of a set that is an NP of the
    pronoun's own sentence.
    """
    verdict = agree(p, c, d)
    if not verdict.accepted:
        return verdict
    for member in atoms(c):
        if isinstance(member, NPRef) and disjoint(p, d.nps[member.id]):
            return FilterVerdict(False, Reason.DISJOINT)
    if not cfg.accepts(d.id, p.id, c):
        return FilterVerdict(False, Reason.INFERENCE_VETO)
    return ACCEPT


__all__ = [
    "ACCEPT",
    "Features",
    "FilterConfig",
    "FilterVerdict",
    "Reason",
    "acceptable_cospec",
    "agree",
    "disjoint",
    "features_of",
    "is_animate",
    "load_oracle",
    "np_features",
]
