from dataclasses import replace

from focusing.model import (
    HEARER,
    SPEAKER,
    Anaphor,
    NounPhrase,
    NPRef,
    PronounClass,
    PronounForm,
    PronounPerson,
    SentenceType,
    SetTarget,
    VPRef,
    atoms,
    link_sentences,
    make_set,
    validate_discourse,
)


def test_set_equality_ignores_order():
    a = SetTarget((SPEAKER, NPRef("n4")))
    b = SetTarget((NPRef("n4"), SPEAKER))
    assert a == b and hash(a) == hash(b)
    assert str(a) == "set(SPEAKER,np:n4)"


def test_make_set_flattens_and_dedupes():
    s = make_set([NPRef("a"), SetTarget((NPRef("a"), HEARER)), VPRef("v")])
    assert s == SetTarget((NPRef("a"), HEARER, VPRef("v")))
    assert make_set([NPRef("a"), NPRef("a")]) == NPRef("a")
    assert make_set([]) is None


def test_atoms_of_bare_target():
    assert atoms(SPEAKER) == (SPEAKER,)


def test_pronoun_class_parse():
    assert PronounClass.parse("third-reflexive") == PronounClass(PronounPerson.THIRD, PronounForm.REFLEXIVE)
    assert PronounClass.parse("first").form is PronounForm.PLAIN


def test_lemma_strips_brackets():
    np = NounPhrase("n1", "s1", "subject", "[He]")
    assert np.lemma == "he"


def test_valid_discourse_has_no_violations(tiny):
    assert validate_discourse(tiny) == []


def test_bundled_corpus_validates(corpus):
    for d in corpus.discourses:
        assert validate_discourse(d) == [], d.id


def test_broken_chain_is_reported(tiny):
    s1, s2 = tiny.sentences
    broken = replace(tiny, sentences=(replace(s1, next=None), s2))
    assert any(v.field == "next" for v in validate_discourse(broken))


def test_cleft_item_required_for_cleft(tiny):
    s1, s2 = tiny.sentences
    bad = replace(tiny, sentences=(replace(s1, stype=SentenceType.CLEFT), s2))
    assert any(v.field == "cleft_item" for v in validate_discourse(bad))


def test_dangling_gold_is_reported(tiny):
    s1, s2 = tiny.sentences
    n3 = replace(s2.subject[0], gold=replace(s2.subject[0].gold, targets=NPRef("zz")))
    bad = replace(tiny, sentences=(s1, replace(s2, subject=(n3,))))
    assert any("unknown np zz" in v.rule for v in validate_discourse(bad))


def test_definite_np_needs_cospec(tiny):
    s1, s2 = tiny.sentences
    n2 = replace(s1.np1[0], anaphor=Anaphor.DEFNP)
    bad = replace(tiny, sentences=(replace(s1, np1=(n2,)), s2))
    assert any(v.entity == "n2" and v.field == "given_cospec" for v in validate_discourse(bad))


def test_link_sentences_rebuilds_chain(tiny):
    s1, s2 = tiny.sentences
    relinked = link_sentences([replace(s1, next=None), replace(s2, prev=None)])
    assert relinked[0].next == "s2" and relinked[1].prev == "s1"


def test_agent_excludes_theme_subject(corpus):
    d = corpus.discourse("hobbs-council-b")
    s = d.sentences[0]
    assert s.is_agent(s.subject[0])
