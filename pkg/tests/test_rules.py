from dataclasses import replace

from focusing import RecencyScope, RuleConfig, parse, run_discourse
from focusing.filters import FilterConfig
from focusing.model import SPEAKER, NPRef, SetTarget
from focusing.rules import OutcomeKind, TraceStep, recency_candidate

from conftest import TINY


def outcome_strs(run):
    return {k: str(v) for k, v in run.outcomes.items()}


def test_tiny_discourse_resolves(tiny):
    run = run_discourse(tiny)
    assert run.outcomes["n3"].target == NPRef("n1")
    assert run.outcomes["n4"].target == NPRef("n2")
    assert run.outcomes["n4"].rule == "focus"


def test_trace_lists_each_candidate_once(tiny):
    out = run_discourse(tiny).outcomes["n4"]
    cands = [t.candidate for t in out.trace]
    assert len(cands) == len(set(cands))
    assert str(out.trace[-1]) == "focus | np:n2 | accept"


def test_recency_candidate_skips_the_focus(tiny):
    state = run_discourse(tiny).states_before["s2"]
    assert state.last_np == NPRef("n2") == state.cf
    assert recency_candidate(state) is None
    assert recency_candidate(replace(state, last_np=NPRef("n1"))) == NPRef("n1")


def test_recency_fires_for_agents(corpus):
    run = run_discourse(corpus.discourse("sidner-lake"))
    flagged = [o for o in run.outcomes.values() if "recency" in o.flags]
    assert flagged


def test_recency_off_never_flags(corpus):
    cfg = RuleConfig(recency_scope=RecencyScope.OFF)
    for d in corpus.discourses:
        for o in run_discourse(d, cfg).outcomes.values():
            assert "recency" not in o.flags


def test_first_person_singular_is_speaker(worked):
    run = run_discourse(worked.discourse("car"))
    assert run.outcomes["n1"].target == SPEAKER


def test_first_person_plural_joins_speaker(worked):
    out = run_discourse(worked.discourse("movies")).outcomes["n7"]
    assert out.resolved and SPEAKER in out.target


def test_plural_they_takes_focus_set(worked):
    out = run_discourse(worked.discourse("joeys-bar-sofa")).outcomes["n7"]
    assert out.rule == "focus-sets"
    assert out.target == SetTarget((NPRef("n1"), NPRef("n2"), NPRef("n5")))


def test_ambiguity_outcome(corpus):
    out = run_discourse(corpus.discourse("hobbs-council-b")).outcomes["n4"]
    assert out.kind is OutcomeKind.PAA
    assert set(out.candidates) == {NPRef("n1"), NPRef("n2")}
    assert not out.resolved and out.target is None
    assert str(out) == "PAA(np:n1, np:n2)"


def test_paa_modification_resolves_when_one_side_fails(corpus):
    d = corpus.discourse("sidner-pigeon")
    on = run_discourse(d).outcomes["n4"]
    off = run_discourse(d, RuleConfig(paa_modification=False)).outcomes["n4"]
    assert on.resolved and "paa-mod" in on.flags
    assert off.kind is OutcomeKind.PAA


def test_veto_changes_choice(tiny):
    veto = FilterConfig(frozenset({("tiny", "n4", NPRef("n2"))}))
    out = run_discourse(tiny, RuleConfig(filter=veto)).outcomes["n4"]
    assert out.target != NPRef("n2")
    assert any(str(t.verdict) == "reject:inference_veto" for t in out.trace)


def test_sentential_it_is_bn(corpus):
    out = run_discourse(corpus.discourse("ng-arena")).outcomes["n2"]
    assert out.kind is OutcomeKind.BN and str(out) == "BN"


def test_reflexive_takes_subject():
    text = TINY.replace(
        'N n4 sent=s2 pos=np1 text="it" anaphor=pronoun pclass=third-plain gender=n number=sg person=3sg life=unk gold=np:n2',
        'N n4 sent=s2 pos=np1 text="herself" anaphor=pronoun pclass=third-reflexive gender=f number=sg person=3sg life=anim gold=np:n1',
    ).replace("theme=n4", "theme=")
    run = run_discourse(parse(text).discourses[0])
    out = run.outcomes["n4"]
    assert out.rule == "reflexive" and out.target == NPRef("n1")


def test_definite_np_outcome_is_given(worked):
    out = run_discourse(worked.discourse("wheels-fixture")).outcomes["np4"]
    assert out.kind is OutcomeKind.GIVEN
    assert "implicit" in out.flags and out.target == NPRef("np1")


def test_no_anaphora_gives_empty_outcomes(worked):
    run = run_discourse(worked.discourse("mortimer"))
    assert run.outcomes == {} and len(run.timeline) == 1


def test_trace_step_format():
    assert str(TraceStep("alfl", NPRef("n2"), "reject:gender")) == "alfl | np:n2 | reject:gender"


def test_runs_are_deterministic(corpus):
    for d in corpus.discourses:
        a, b = run_discourse(d), run_discourse(d)
        assert outcome_strs(a) == outcome_strs(b)
        assert a.timeline == b.timeline
        assert [str(e) for _, e in a.events] == [str(e) for _, e in b.events]


def test_vps_never_resolve_pronouns(corpus):
    from focusing.model import VPRef

    for d in corpus.discourses:
        for o in run_discourse(d).outcomes.values():
            if o.kind is OutcomeKind.RESOLVED:
                assert not isinstance(o.target, VPRef)
