"""Scoring against gold and the per-pronoun statistics table.

Diff columns come from paired runs: the same corpus is re-run with one
setting toggled and each pronoun's correctness is compared across the runs.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace

from .corpus import CorpusFile
from .filters import FilterConfig
from .model import Discourse, NounPhrase, NPRef, PronounPerson, SpecTarget, atoms, make_set
from .rules import DiscourseRun, OutcomeKind, RecencyScope, ResolutionOutcome, RuleConfig, run_discourse

ROWS: tuple[str, ...] = ("I", "You", "He", "She", "It(A)", "It", "We", "They", "Me", "Him", "Her", "Us", "Them")
COLUMNS: tuple[str, ...] = ("OCC", "RES", "MRR", "RR+", "RR-", "INF", "PA", "MPA", "BNFC", "BN", "FS")
TOTAL = "Total"

_ROW_OF_LEMMA = {
    "i": "I",
    "you": "You",
    "he": "He",
    "she": "She",
    "we": "We",
    "they": "They",
    "me": "Me",
    "him": "Him",
    "her": "Her",
    "us": "Us",
    "them": "Them",
}


class MissingGold(ValueError):
    def __init__(self, discourse_id: str, np_id: str) -> None:
        super().__init__(f"{discourse_id}: pronoun {np_id} has no gold annotation")
        self.discourse_id, self.np_id = discourse_id, np_id


def row_of(np: NounPhrase) -> str | None:
    """Table row of a pronoun, or None for forms the table does not count."""
    if not np.is_pronoun:
        return None
    if np.lemma == "it":
        return "It(A)" if np.position == "subject" else "It"
    return _ROW_OF_LEMMA.get(np.lemma)


@dataclass
class EvalTable:
    counts: dict[str, dict[str, int]] = field(
        default_factory=lambda: {r: dict.fromkeys(COLUMNS, 0) for r in ROWS}
    )

    def add(self, row: str, column: str, n: int = 1) -> None:
        self.counts[row][column] += n

    def cell(self, row: str, column: str) -> int:
        if row == TOTAL:
            return sum(self.counts[r][column] for r in ROWS)
        return self.counts[row][column]

    def merge(self, other: EvalTable) -> EvalTable:
        out = EvalTable()
        for r in ROWS:
            for c in COLUMNS:
                out.counts[r][c] = self.counts[r][c] + other.counts[r][c]
        return out

    def as_dict(self) -> dict[str, dict[str, int]]:
        return {r: {c: self.cell(r, c) for c in COLUMNS} for r in (*ROWS, TOTAL)}


@dataclass(frozen=True)
class PronounRecord:
    discourse: str
    np_id: str
    text: str
    row: str
    outcome: ResolutionOutcome
    correct: bool
    # Table columns this pronoun contributes to, OCC excluded.
    columns: tuple[str, ...]

    @property
    def explanation(self) -> str:
        failures = [c for c in self.columns if c in _FAILURE_COLUMNS]
        if self.correct:
            return "resolved"
        return failures[0] if failures else "unexplained"


_FAILURE_COLUMNS = ("PA", "BNFC", "BN", "RR-", "INF", "FS")


@dataclass
class EvalReport:
    table: EvalTable
    records: list[PronounRecord]

    def unexplained(self) -> list[PronounRecord]:
        return [r for r in self.records if r.explanation == "unexplained"]


class GoldIndex:
    """Maps every NP of a discourse to the entity its gold annotation names."""

    def __init__(self, d: Discourse) -> None:
        self.discourse = d
        self.entity: dict[str, SpecTarget] = {}
        for s in d.sentences:
            for np in s.noun_phrases:
                if np.is_pronoun and np.given_cospec is None:
                    if np.gold is None:
                        raise MissingGold(d.id, np.id)
                    self.entity[np.id] = self.canonical(np.gold.targets)
                elif np.given_cospec:
                    self.entity[np.id] = self.canonical(np.cospec_target())
                else:
                    self.entity[np.id] = NPRef(np.id)

    def canonical(self, target: SpecTarget) -> SpecTarget:
        mapped = [self.entity.get(a.id, a) if isinstance(a, NPRef) else a for a in atoms(target)]
        joined = make_set(mapped)
        return joined if joined is not None else target

    def correct(self, np: NounPhrase, outcome: ResolutionOutcome | None) -> bool:
        if outcome is None or not outcome.resolved:
            return False
        return self.canonical(outcome.target) == self.entity[np.id]


def _is_third(np: NounPhrase) -> bool:
    return np.pronoun_class is not None and np.pronoun_class.person is PronounPerson.THIRD


def _gold_stacked(gold: GoldIndex, np: NounPhrase, run: DiscourseRun) -> bool:
    """Is every gold member held somewhere deeper than the focus and its list?"""
    state = run.states_before[np.sentence]
    pool: set[SpecTarget] = set()
    for t in (*state.df_stack, *state.af_stack, state.af, *state.paf):
        if t is not None:
            pool.update(atoms(gold.canonical(t)))
    wanted = atoms(gold.entity[np.id])
    return bool(wanted) and all(a in pool for a in wanted)


@dataclass(frozen=True)
class _Runs:
    base: DiscourseRun
    all_positions: DiscourseRun
    recency_off: DiscourseRun
    paa_off: DiscourseRun
    oracle: DiscourseRun | None


def _paired_runs(d: Discourse, cfg: RuleConfig, oracle: FilterConfig | None) -> _Runs:
    return _Runs(
        base=run_discourse(d, cfg),
        all_positions=run_discourse(d, replace(cfg, recency_scope=RecencyScope.ALL_POSITIONS)),
        recency_off=run_discourse(d, replace(cfg, recency_scope=RecencyScope.OFF)),
        paa_off=run_discourse(d, replace(cfg, paa_modification=False)),
        oracle=run_discourse(d, replace(cfg, filter=oracle)) if oracle is not None else None,
    )


def evaluate_discourse(
    d: Discourse, cfg: RuleConfig | None = None, oracle: FilterConfig | None = None
) -> EvalReport:
    cfg = cfg or RuleConfig()
    gold = GoldIndex(d)
    runs = _paired_runs(d, cfg, oracle)
    table = EvalTable()
    records: list[PronounRecord] = []
    for np in d.pronouns():
        row = row_of(np)
        if row is None or np.given_cospec is not None:
            continue
        out = runs.base.outcomes[np.id]
        ok = gold.correct(np, out)
        third = _is_third(np)
        agent = third and np.position == "subject"
        cols: list[str] = []
        if ok:
            cols.append("RES")
            if third and not agent and not gold.correct(np, runs.all_positions.outcomes[np.id]):
                cols.append("MRR")
            if agent and not gold.correct(np, runs.recency_off.outcomes[np.id]):
                cols.append("RR+")
            if runs.paa_off.outcomes[np.id].kind is OutcomeKind.PAA:
                cols.append("MPA")
        elif out.kind is OutcomeKind.PAA:
            cols.append("PA")
        elif out.kind is OutcomeKind.BNFC:
            cols.append("BNFC")
        elif out.kind is OutcomeKind.BN:
            cols.append("BN")
        elif agent and ("recency" in out.flags or gold.correct(np, runs.recency_off.outcomes[np.id])):
            cols.append("RR-")
        elif runs.oracle is not None and gold.correct(np, runs.oracle.outcomes[np.id]):
            cols.append("INF")
        elif out.resolved and _gold_stacked(gold, np, runs.base):
            cols.append("FS")
        table.add(row, "OCC")
        for c in cols:
            table.add(row, c)
        records.append(PronounRecord(d.id, np.id, np.text, row, out, ok, tuple(cols)))
    return EvalReport(table, records)


def evaluate(
    corpus: CorpusFile | Iterable[Discourse],
    cfg: RuleConfig | None = None,
    oracle: FilterConfig | None = None,
) -> EvalReport:
    """Score every discourse; tables of independent discourses add up."""
    discourses = corpus.discourses if isinstance(corpus, CorpusFile) else tuple(corpus)
    table = EvalTable()
    records: list[PronounRecord] = []
    for d in discourses:
        part = evaluate_discourse(d, cfg, oracle)
        table = table.merge(part.table)
        records.extend(part.records)
    return EvalReport(table, records)


def render_table(t: EvalTable) -> str:
    """Fixed-width text; zero cells after RES are left blank, BNFC counts carry '+'."""
    label_w = max(len(r) for r in (*ROWS, TOTAL)) + 1
    col_w = 6
    lines = [" " * label_w + "".join(c.rjust(col_w) for c in COLUMNS)]
    for r in (*ROWS, TOTAL):
        cells = []
        for c in COLUMNS:
            n = t.cell(r, c)
            if c in ("OCC", "RES"):
                text = str(n)
            elif n == 0:
                text = ""
            else:
                text = f"{n}+" if c == "BNFC" else str(n)
            cells.append(text.rjust(col_w))
        lines.append(r.ljust(label_w) + "".join(cells))
    return "\n".join(lines) + "\n"


def table_json(t: EvalTable) -> str:
    return json.dumps({"columns": list(COLUMNS), "rows": t.as_dict()}, indent=2)


def table_from_mapping(rows: Mapping[str, Mapping[str, int]]) -> EvalTable:
    t = EvalTable()
    for r in ROWS:
        for c in COLUMNS:
            t.counts[r][c] = int(rows.get(r, {}).get(c, 0))
    return t


__all__ = [
    "COLUMNS",
    "EvalReport",
    "EvalTable",
    "GoldIndex",
    "MissingGold",
    "PronounRecord",
    "ROWS",
    "TOTAL",
    "evaluate",
    "evaluate_discourse",
    "render_table",
    "row_of",
    "table_from_mapping",
    "table_json",
]
