from dataclasses import replace

import pytest

from focusing import CorpusError
from focusing.filters import FilterConfig, Reason, acceptable_cospec, agree, disjoint, features_of, load_oracle
from focusing.model import SPEAKER, HEARER, Life, Number, NPRef, PronounClass, SetTarget, VPRef


def test_gender_is_checked_first(tiny):
    she = tiny.nps["n3"]
    verdict = agree(she, NPRef("n2"), tiny)
    assert not verdict.accepted and verdict.reason is Reason.GENDER
    assert str(verdict) == "reject:gender"


def test_agreeing_candidate_passes(tiny):
    assert agree(tiny.nps["n3"], NPRef("n1"), tiny).accepted


def test_sets_are_plural(tiny):
    f = features_of(SetTarget((NPRef("n1"), NPRef("n2"))), tiny)
    assert f.number is Number.PLURAL and f.life is Life.UNKNOWN


def test_speaker_and_hearer_features(tiny):
    assert features_of(SPEAKER, tiny).person == "1"
    assert features_of(HEARER, tiny).person == "2"
    assert features_of(VPRef("v1"), tiny).life is Life.INANIMATE


def test_person_mismatch(corpus):
    d = corpus.discourse("sidner-movies")
    we = d.nps["n7"]
    verdict = agree(we, SetTarget((NPRef("n4"), NPRef("n5"))), d)
    assert verdict.reason is Reason.PERSON


def test_clause_mates_are_disjoint(tiny):
    assert disjoint(tiny.nps["n4"], tiny.nps["n3"])
    assert not disjoint(tiny.nps["n4"], tiny.nps["n1"])
    assert not disjoint(tiny.nps["n4"], tiny.nps["n4"])


def test_reflexive_is_never_disjoint(tiny):
    it = replace(tiny.nps["n4"], pronoun_class=PronounClass.parse("third-reflexive"))
    assert not disjoint(it, tiny.nps["n3"])


def test_disjointness_checks_set_members(tiny):
    it = replace(tiny.nps["n4"], number=Number.PLURAL, person="3pl", gender=frozenset("mfn"))
    verdict = acceptable_cospec(it, SetTarget((NPRef("n1"), NPRef("n3"))), FilterConfig(), tiny)
    assert verdict.reason is Reason.DISJOINT


def test_veto_runs_after_syntax(tiny):
    cfg = FilterConfig(frozenset({("tiny", "n4", NPRef("n2"))}))
    assert acceptable_cospec(tiny.nps["n4"], NPRef("n2"), cfg, tiny).reason is Reason.INFERENCE_VETO
    assert acceptable_cospec(tiny.nps["n4"], NPRef("n2"), FilterConfig(), tiny).accepted


def test_judge_callback(tiny):
    cfg = FilterConfig(judge=lambda d, p, c: c != NPRef("n2"))
    assert not cfg.accepts("tiny", "n4", NPRef("n2"))
    assert cfg.accepts("tiny", "n4", NPRef("n1"))


def test_load_oracle_bare_ids_and_sets(tmp_path):
    f = tmp_path / "o.txt"
    f.write_text("# comment\nd1 n3 n2 reject\nd1 n7 set(SPEAKER,np:n4) reject  # trailing\n")
    cfg = load_oracle(f)
    assert ("d1", "n3", NPRef("n2")) in cfg.vetoes
    assert ("d1", "n7", SetTarget((NPRef("n4"), SPEAKER))) in cfg.vetoes


def test_load_oracle_rejects_malformed(tmp_path):
    f = tmp_path / "o.txt"
    f.write_text("d1 n3 n2\n")
    with pytest.raises(CorpusError):
        load_oracle(f)


def test_bundled_oracle_has_three_entries(oracle):
    assert len(oracle.vetoes) == 3
