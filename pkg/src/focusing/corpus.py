"""Line-oriented text format for annotated discourses.

A file starts with ``!focus-corpus v1`` and holds four record kinds::

    D <id> speaker=<name> hearer=<name>
    S <id> type=<t> complete=<0|1> do_anaphora=<0|1> [cleft=<np>] [pcleft=<np>]
    N <id> sent=<s> pos=<slot> text="..." anaphor=<a> [pclass=<c>] gender=<g>
      number=<n> person=<p> life=<l> [ispec=<np>] [cospec=<targets>] [gold=<target>]
    V <id> sent=<s> text="..." theme=<np,np...>

``S``, ``N`` and ``V`` records belong to the most recent ``D``. Within a slot,
NPs keep file order. ``#`` starts a comment outside quoted text.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field, replace
from importlib import resources

from .model import (
    HEARER,
    SPEAKER,
    Anaphor,
    CoSpec,
    Discourse,
    GENDERS,
    Life,
    NounPhrase,
    NPRef,
    Number,
    PERSONS,
    POSITIONS,
    PronounClass,
    Sentence,
    SentenceType,
    SetTarget,
    SpecTarget,
    VerbPhrase,
    VPRef,
    link_sentences,
    validate_discourse,
)

HEADER = "!focus-corpus v1"
VERSION = "v1"


class CorpusError(ValueError):
    """Syntax, vocabulary or reference error, with a 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class CorpusFile:
    discourses: tuple[Discourse, ...] = ()
    format_version: str = VERSION

    def discourse(self, discourse_id: str) -> Discourse:
        for d in self.discourses:
            if d.id == discourse_id:
                return d
        raise KeyError(discourse_id)


# --- targets --------------------------------------------------------------


def _split_top(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_target(text: str) -> SpecTarget:
    text = text.strip()
    if text == "SPEAKER":
        return SPEAKER
    if text == "HEARER":
        return HEARER
    if text.startswith("np:") and len(text) > 3:
        return NPRef(text[3:])
    if text.startswith("vp:") and len(text) > 3:
        return VPRef(text[3:])
    if text.startswith("set(") and text.endswith(")"):
        inner = text[4:-1]
        members = [parse_target(t) for t in _split_top(inner)] if inner.strip() else []
        if any(isinstance(m, SetTarget) for m in members):
            raise ValueError(f"nested set in {text!r}")
        return SetTarget(tuple(members))
    raise ValueError(f"bad target {text!r}")


def format_target(t: SpecTarget) -> str:
    return str(t)


# --- parsing --------------------------------------------------------------


@dataclass
class _Draft:
    id: str
    line: int
    attrs: dict[str, str]
    sentences: list[tuple[str, int, dict[str, str]]] = field(default_factory=list)
    nps: list[tuple[str, int, dict[str, str]]] = field(default_factory=list)
    vps: list[tuple[str, int, dict[str, str]]] = field(default_factory=list)


_ALLOWED = {
    "D": ({"speaker", "hearer"}, {"speaker", "hearer"}),
    "S": ({"type", "complete", "do_anaphora", "cleft", "pcleft"}, {"type", "complete", "do_anaphora"}),
    "N": (
        {"sent", "pos", "text", "anaphor", "pclass", "gender", "number", "person", "life", "ispec", "cospec", "gold"},
        {"sent", "pos", "text", "anaphor", "gender", "number", "person", "life"},
    ),
    "V": ({"sent", "text", "theme"}, {"sent", "text"}),
}


def _tokens(raw: str, lineno: int) -> list[str]:
    lexer = shlex.shlex(raw, posix=True)
    lexer.whitespace_split = True
    lexer.commenters = "#"
    try:
        return list(lexer)
    except ValueError as exc:
        raise CorpusError(f"syntax error: {exc}", lineno, max(1, len(raw.rstrip()))) from None


def _column(raw: str, token: str) -> int:
    key = token.split("=", 1)[0]
    pos = raw.find(key)
    return pos + 1 if pos >= 0 else 1


def parse(text: str) -> CorpusFile:
    """Parse and validate a corpus file."""
    drafts: list[_Draft] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != HEADER:
                raise CorpusError(f"expected header {HEADER!r}", lineno, 1)
            header_seen = True
            continue
        toks = _tokens(raw, lineno)
        if not toks:
            continue
        kind = toks[0]
        if kind not in _ALLOWED:
            raise CorpusError(f"unknown record type {kind!r}", lineno, _column(raw, kind))
        if len(toks) < 2 or "=" in toks[1]:
            raise CorpusError(f"{kind} record needs an id", lineno, len(kind) + 1)
        rid = toks[1]
        attrs: dict[str, str] = {}
        allowed, required = _ALLOWED[kind]
        for tok in toks[2:]:
            key, eq, value = tok.partition("=")
            if not eq:
                raise CorpusError(f"expected key=value, got {tok!r}", lineno, _column(raw, tok))
            if key not in allowed:
                raise CorpusError(f"unknown field {key!r} on {kind} record", lineno, _column(raw, tok))
            if key in attrs:
                raise CorpusError(f"duplicate field {key!r}", lineno, _column(raw, tok))
            attrs[key] = value
        missing = sorted(required - attrs.keys())
        if missing:
            raise CorpusError(f"{kind} {rid}: missing {', '.join(missing)}", lineno, 1)
        if kind == "D":
            drafts.append(_Draft(rid, lineno, attrs))
            continue
        if not drafts:
            raise CorpusError(f"{kind} record before any D record", lineno, 1)
        bucket = {"S": drafts[-1].sentences, "N": drafts[-1].nps, "V": drafts[-1].vps}[kind]
        bucket.append((rid, lineno, attrs))
    return CorpusFile(tuple(_build(d) for d in drafts))


def _enum(cls, value: str, what: str, line: int):
    try:
        return cls(value)
    except ValueError:
        raise CorpusError(f"unknown {what} {value!r}", line, 1) from None


def _flag(value: str, what: str, line: int) -> bool:
    if value not in ("0", "1"):
        raise CorpusError(f"{what} must be 0 or 1, got {value!r}", line, 1)
    return value == "1"


def _targets(value: str, what: str, line: int) -> tuple[SpecTarget, ...]:
    try:
        return tuple(parse_target(t) for t in _split_top(value))
    except ValueError as exc:
        raise CorpusError(f"{what}: {exc}", line, 1) from None


def _build(draft: _Draft) -> Discourse:
    sent_ids = [sid for sid, _, _ in draft.sentences]
    lines: dict[str, int] = {draft.id: draft.line}
    for rid, line, _ in draft.sentences + draft.nps + draft.vps:
        if rid in lines:
            raise CorpusError(f"duplicate id {rid!r}", line, 1)
        lines[rid] = line

    slots: dict[str, dict[str, list[NounPhrase]]] = {sid: {p: [] for p in POSITIONS} for sid in sent_ids}
    for rid, line, a in draft.nps:
        if a["sent"] not in slots:
            raise CorpusError(f"np {rid}: unknown sentence {a['sent']}", line, 1)
        if a["pos"] not in POSITIONS:
            raise CorpusError(f"unknown position {a['pos']!r}", line, 1)
        gender = frozenset(a["gender"])
        if not gender or not gender <= set(GENDERS):
            raise CorpusError(f"unknown gender {a['gender']!r}", line, 1)
        if a["person"] not in PERSONS:
            raise CorpusError(f"unknown person {a['person']!r}", line, 1)
        try:
            pclass = PronounClass.parse(a["pclass"]) if "pclass" in a else None
        except ValueError:
            raise CorpusError(f"unknown pronoun class {a['pclass']!r}", line, 1) from None
        gold = None
        if "gold" in a:
            gold_targets = _targets(a["gold"], "gold", line)
            if len(gold_targets) != 1:
                raise CorpusError("gold takes one target; use set(...) for groups", line, 1)
            gold = CoSpec(gold_targets[0])
        np = NounPhrase(
            id=rid,
            sentence=a["sent"],
            position=a["pos"],
            text=a["text"],
            anaphor=_enum(Anaphor, a["anaphor"], "anaphor", line),
            pronoun_class=pclass,
            gender=gender,
            number=_enum(Number, a["number"], "number", line),
            person=a["person"],
            life=_enum(Life, a["life"], "life", line),
            implicit_spec_of=a.get("ispec"),
            given_cospec=_targets(a["cospec"], "cospec", line) if "cospec" in a else None,
            gold=gold,
        )
        slots[a["sent"]][a["pos"]].append(np)

    vps: dict[str, VerbPhrase] = {}
    for rid, line, a in draft.vps:
        if a["sent"] not in slots:
            raise CorpusError(f"vp {rid}: unknown sentence {a['sent']}", line, 1)
        if a["sent"] in vps:
            raise CorpusError(f"sentence {a['sent']} already has a verb phrase", line, 1)
        theme = tuple(t for t in a.get("theme", "").split(",") if t)
        vps[a["sent"]] = VerbPhrase(rid, a["sent"], a["text"], theme)

    sentences = []
    for sid, line, a in draft.sentences:
        sentences.append(
            Sentence(
                id=sid,
                stype=_enum(SentenceType, a["type"], "sentence type", line),
                complete=_flag(a["complete"], "complete", line),
                do_anaphora=_flag(a["do_anaphora"], "do_anaphora", line),
                cleft_item=a.get("cleft"),
                pseudo_cleft_item=a.get("pcleft"),
                subject=tuple(slots[sid]["subject"]),
                np1=tuple(slots[sid]["np1"]),
                np2=tuple(slots[sid]["np2"]),
                vp=vps.get(sid),
            )
        )
    d = Discourse(draft.id, draft.attrs["speaker"], draft.attrs["hearer"], link_sentences(sentences))
    problems = validate_discourse(d)
    if problems:
        v = problems[0]
        raise CorpusError(f"{d.id}: {v}", lines.get(v.entity, draft.line), 1)
    return d


# --- serialization --------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _np_line(np: NounPhrase) -> str:
    parts = [
        "N",
        np.id,
        f"sent={np.sentence}",
        f"pos={np.position}",
        f"text={_quote(np.text)}",
        f"anaphor={np.anaphor.value}",
    ]
    if np.pronoun_class is not None:
        parts.append(f"pclass={np.pronoun_class}")
    parts += [
        "gender=" + "".join(g for g in GENDERS if g in np.gender),
        f"number={np.number.value}",
        f"person={np.person}",
        f"life={np.life.value}",
    ]
    if np.implicit_spec_of is not None:
        parts.append(f"ispec={np.implicit_spec_of}")
    if np.given_cospec is not None:
        parts.append("cospec=" + ",".join(format_target(t) for t in np.given_cospec))
    if np.gold is not None:
        parts.append(f"gold={format_target(np.gold.targets)}")
    return " ".join(parts)


def serialize(c: CorpusFile) -> str:
    """Canonical text; parse(serialize(c)) == c."""
    out = [HEADER]
    for d in c.discourses:
        out.append("")
        out.append(f"D {d.id} speaker={d.speaker} hearer={d.hearer}")
        for s in d.sentences:
            head = f"S {s.id} type={s.stype.value} complete={int(s.complete)} do_anaphora={int(s.do_anaphora)}"
            if s.cleft_item is not None:
                head += f" cleft={s.cleft_item}"
            if s.pseudo_cleft_item is not None:
                head += f" pcleft={s.pseudo_cleft_item}"
            out.append(head)
            out.extend(_np_line(np) for np in s.noun_phrases)
            if s.vp is not None:
                out.append(f"V {s.vp.id} sent={s.id} text={_quote(s.vp.text)} theme={','.join(s.vp.theme)}")
    return "\n".join(out) + "\n"


# --- bundled data ---------------------------------------------------------


def bundled_text(name: str) -> str:
    return resources.files("focusing.data").joinpath(name).read_text(encoding="utf-8")


def load_bundled_corpus() -> CorpusFile:
    """The 35 evaluation segments with gold labels."""
    return parse(bundled_text("segments.fc"))


def load_worked_examples() -> CorpusFile:
    """The worked examples used to illustrate the rules."""
    return parse(bundled_text("worked.fc"))



__all__ = [
    "CorpusError",
    "CorpusFile",
    "HEADER",
    "bundled_text",
    "format_target",
    "load_bundled_corpus",
    "load_worked_examples",
    "parse",
    "parse_target",
    "serialize",
]
