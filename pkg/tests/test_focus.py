from hypothesis import given, settings
from hypothesis import strategies as st

from focusing import expected_focus, init_state, parse, run_discourse
from focusing.focus import IncoherentCleft, build_pfl, preference_order
from focusing.model import NPRef, SetTarget, VPRef

import pytest


def ids(targets):
    return [str(t) for t in targets]


def test_theme_heads_the_expected_focus(worked):
    s = worked.discourse("mortimer").sentences[0]
    ef, order = expected_focus(s)
    assert ef == NPRef("n2")
    # theme, other thematic NP, agent, verb phrase
    assert ids(order) == ["np:n2", "np:n3", "np:n1", "vp:v1"]


def test_initial_state_keeps_def_minus_focus(worked):
    d = worked.discourse("mortimer")
    state, events = init_state(d.sentences[0], d)
    assert state.cf == NPRef("n2")
    assert state.cf not in state.alfl
    assert state.af == NPRef("n1")
    assert events[0].step == "expected-focus"


def test_do_anaphora_moves_focus_to_verb_phrase(worked):
    run = run_discourse(worked.discourse("ben"))
    assert run.timeline[-1].cf == VPRef("v1")
    assert any(e.step == "step-1" for _, e in run.events)


def test_cleft_item_is_the_only_potential_focus(worked):
    run = run_discourse(worked.discourse("cleft"))
    assert run.timeline[-1].cf == NPRef("n2")
    assert run.timeline[-1].alfl == (NPRef("n3"),)


def test_incoherent_cleft_raises(worked):
    s = worked.discourse("cleft").sentences[1]
    with pytest.raises(IncoherentCleft):
        build_pfl(s, NPRef("n1"))


def test_implicit_specification_keeps_focus(worked):
    run = run_discourse(worked.discourse("car"))
    assert [s.cf for s in run.timeline] == [NPRef("n2")] * 3
    assert any(e.step == "step-7" for _, e in run.events)


def test_focus_sets_are_collected_without_anaphora(worked):
    run = run_discourse(worked.discourse("joeys-bar-sofa"))
    middle = run.timeline[1]
    assert middle.cf is None
    assert middle.focus_sets is not None
    assert set(middle.focus_sets.actor_set) >= {SetTarget((NPRef("n1"), NPRef("n2"))), NPRef("n5")}


def test_is_a_subject_heads_order(corpus):
    d = corpus.discourse("sidner-wilbur")
    s = d.sentences[0]
    ef, order = expected_focus(s)
    assert ef == NPRef("n1")
    # the predicate nominal stays out of the list
    assert NPRef("n2") not in order


def test_wilbur_focus_chain(corpus):
    run = run_discourse(corpus.discourse("sidner-wilbur"))
    chain = []
    for st_ in run.timeline:
        if not chain or chain[-1] != st_.cf:
            chain.append(st_.cf)
    assert chain[:5] == [NPRef("n1"), NPRef("n6"), NPRef("n8"), NPRef("n10"), NPRef("n14")]


def test_actor_focus_is_stacked(corpus):
    run = run_discourse(corpus.discourse("sidner-wilbur"))
    last = run.timeline[-1]
    assert last.af == NPRef("n2")
    assert NPRef("n1") in last.af_stack


def test_preference_order_without_vp(tiny):
    from dataclasses import replace

    s = replace(tiny.sentences[0], vp=None)
    assert VPRef("v1") not in preference_order(s)


# --- synthetic focus-move sequences -------------------------------------------

HEAD = '''!focus-corpus v1
D synth speaker=writer hearer=reader
S s0 type=normal complete=1 do_anaphora=0
N a0 sent=s0 pos=subject text="a crate" anaphor=none gender=n number=sg person=3sg life=inan
N f0 sent=s0 pos=np1 text="a box" anaphor=none gender=n number=sg person=3sg life=inan
V v0 sent=s0 text="held" theme=f0
'''


def _sentence(i: int, target: str) -> str:
    return (
        f"S s{i} type=normal complete=1 do_anaphora=0\n"
        f'N r{i} sent=s{i} pos=subject text="the thing" anaphor=defnp gender=n number=sg person=3sg '
        f"life=inan cospec=np:{target}\n"
        f'N f{i} sent=s{i} pos=np1 text="a box" anaphor=none gender=n number=sg person=3sg life=inan\n'
        f"V v{i} sent=s{i} text=\"touched\" theme=r{i}\n"
    )


def _play(ops):
    """Build a discourse from advance/pop ops and the stack a LIFO model predicts."""
    # s1 mentions the focus f0 and introduces f1
    text = HEAD + _sentence(1, "f0")
    cf, stack, pending = "f0", [], "f1"
    expected = [("f0", [])]
    i = 1
    for op in ops:
        i += 1
        if op == "advance" or not stack:
            target = pending
            stack.append(cf)
            cf = target
        else:
            depth = op % len(stack)
            target = stack[depth]
            cf, stack = target, stack[:depth]
        text += _sentence(i, target)
        pending = f"f{i}"
        expected.append((cf, list(stack)))
    return parse(text).discourses[0], expected


ops_strategy = st.lists(st.one_of(st.just("advance"), st.integers(0, 20)), min_size=1, max_size=14)


@settings(max_examples=60, deadline=None)
@given(ops_strategy)
def test_stack_matches_lifo_model(ops):
    d, expected = _play(ops)
    run = run_discourse(d)
    got = [(s.cf, list(s.df_stack)) for s in run.timeline[1:]]
    want = [(NPRef(cf), [NPRef(x) for x in stack]) for cf, stack in expected]
    assert got == want


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.data())
def test_push_then_pop_round_trip(n, data):
    d, expected = _play(["advance"] * n)
    before = expected[-1][1]
    depth = data.draw(st.integers(0, len(before) - 1))
    d2, expected2 = _play(["advance"] * n + [depth])
    run = run_discourse(d2)
    last = run.timeline[-1]
    assert last.cf == NPRef(before[depth])
    # every focus above the target is gone, along with the old focus
    assert list(last.df_stack) == [NPRef(x) for x in before[:depth]]
    pops = [e for _, e in run.events if e.step == "step-6"]
    assert len(pops) == 1


@settings(max_examples=60, deadline=None)
@given(ops_strategy)
def test_focus_never_in_alternate_list(ops):
    d, _ = _play(ops)
    for s in run_discourse(d).timeline:
        assert s.cf is None or s.cf not in s.alfl


def test_focus_never_in_alternate_list_on_corpus(corpus, worked):
    for c in (corpus, worked):
        for d in c.discourses:
            for s in run_discourse(d).timeline:
                assert s.cf is None or s.cf not in s.alfl, d.id
