from __future__ import annotations

from importlib import resources

import pytest

from focusing import load_bundled_corpus, load_oracle, load_worked_examples, parse
from focusing.model import NPRef


def np_(i: str) -> NPRef:
    return NPRef(i)


@pytest.fixture(scope="session")
def corpus():
    return load_bundled_corpus()


@pytest.fixture(scope="session")
def worked():
    return load_worked_examples()


@pytest.fixture(scope="session")
def oracle_path():
    return resources.files("focusing.data").joinpath("segments.oracle")


@pytest.fixture(scope="session")
def oracle(oracle_path):
    return load_oracle(oracle_path)


@pytest.fixture
def tiny():
    """Two-sentence discourse: a woman and a cake, then 'she ate it'."""
    return parse(TINY).discourses[0]


TINY = """!focus-corpus v1
D tiny speaker=writer hearer=reader
S s1 type=normal complete=1 do_anaphora=0
N n1 sent=s1 pos=subject text="Sue" anaphor=none gender=f number=sg person=3sg life=anim
N n2 sent=s1 pos=np1 text="a cake" anaphor=none gender=n number=sg person=3sg life=inan
V v1 sent=s1 text="baked" theme=n2
S s2 type=normal complete=1 do_anaphora=0
N n3 sent=s2 pos=subject text="She" anaphor=pronoun pclass=third-plain gender=f number=sg person=3sg life=anim gold=np:n1
N n4 sent=s2 pos=np1 text="it" anaphor=pronoun pclass=third-plain gender=n number=sg person=3sg life=unk gold=np:n2
V v2 sent=s2 text="ate" theme=n4
"""
