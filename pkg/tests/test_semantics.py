import random

import pytest
from hypothesis import given, settings, strategies as st

from pluract.counting import OpCounter
from pluract.errors import InvalidStructure, UndefinedVerb
from pluract.lexicon import load_fixture
from pluract.semantics import (
    REPETITION_THRESHOLD,
    EventDomain,
    IndividualDomain,
    VerbMeaning,
    atomic,
    derive_ep,
    derive_ip,
    ep_oracle,
    format_event,
    ip_oracle,
    sorted_events,
    sps,
    verb_relation,
)

E12 = frozenset({"e1", "e2"})


def test_atomic_drops_plurals():
    assert atomic({"e1", "e2", E12}) == {"e1", "e2"}


def test_atomic_counted_matches():
    c = OpCounter()
    assert atomic({"e1", E12}, c) == {"e1"}
    assert c.membership_checks == 2


def test_ep_of_two_atoms_is_one_plural():
    v = VerbMeaning("kiss", {"k1", "k2", frozenset({"k1", "k2"})})
    assert derive_ep(v) == {frozenset({"k1", "k2"})}


def test_ep_of_nothing_is_empty():
    c = OpCounter()
    assert derive_ep(VerbMeaning("v"), c) == frozenset()
    # the empty powerset still has its one element
    assert c.insertions == 1


def test_ep_ignores_plurals_in_extension():
    v = VerbMeaning("v", {"a", "b", "c", frozenset({"a", "b"})})
    assert len(derive_ep(v)) == 4


@pytest.mark.parametrize("A", range(0, 7))
def test_ep_cardinality(A):
    v = VerbMeaning("v", {f"e{i}" for i in range(A)})
    assert len(derive_ep(v)) == 2**A - A - 1
    assert derive_ep(v, OpCounter()) == derive_ep(v)


def test_sps_needs_a_repetition():
    dom = EventDomain({"a", "b", "c", "x", "y"}, [], {"x": {"a", "b"}, "y": {"a"}})
    v = VerbMeaning("v", {"a", "b", "c"})
    assert sps(v, dom.atoms, dom) == {"x"}
    assert sps(v, dom.atoms, dom, threshold=1) == {"x", "y"}


def test_sps_needs_all_targets_in_extension():
    dom = EventDomain({"a", "b", "c", "x"}, [], {"x": {"a", "b", "c"}})
    assert sps(VerbMeaning("v", {"a", "b"}), dom.atoms, dom) == frozenset()


def test_sps_skips_plural_candidates():
    dom = EventDomain({"a", "b", "x"}, [{"a", "b"}], {"x": {"a", "b"}})
    v = VerbMeaning("v", {"a", "b"})
    assert sps(v, dom.all_events, dom) == {"x"}


def test_ip_undefined_subevent():
    dom = EventDomain({"a"})
    with pytest.raises(UndefinedVerb):
        derive_ip(VerbMeaning("v", {"a"}, subevents=("ghost",)), dom, {})


def test_sit_domain_overlaps_without_inclusion():
    doc = load_fixture("kaqchikel_sit.domain.json")
    sit = doc.verbs["sit"]
    ip = derive_ip(sit, doc.domain, doc.verbs)
    assert "a1" in ip and "a1" not in sit.extension
    assert ip & sit.extension
    assert not ip <= sit.extension


def test_kiss_domain():
    doc = load_fixture("kiss.domain.json")
    kiss = doc.verbs["kiss"]
    assert derive_ep(kiss) == {frozenset({"k1", "k2"})}
    assert derive_ip(kiss, doc.domain, doc.verbs) == {"x1"}


def test_domain_rejects_unknown_atoms():
    with pytest.raises(InvalidStructure):
        EventDomain({"a"}, [{"a", "b"}])
    with pytest.raises(InvalidStructure):
        EventDomain({"a"}, [], {"a": {"zz", "a"}})
    with pytest.raises(InvalidStructure):
        EventDomain({"a", "b"}, [{"a"}])


def test_verb_relation_tuples():
    dom = EventDomain({"e1", "e2"})
    ind = IndividualDomain({"ann", "bo"})
    v = VerbMeaning("kiss", {"e1", "e2"}, {"ann"}, {"bo"})
    assert verb_relation(v, dom, ind) == {("e1", "ann", "bo"), ("e2", "ann", "bo")}
    intrans = VerbMeaning("sit", {"e1"}, {"ann"})
    assert verb_relation(intrans, dom, ind) == {("e1", "ann")}
    with pytest.raises(InvalidStructure):
        verb_relation(VerbMeaning("x", {"e1"}, {"cy"}), dom, ind)


def test_event_order_and_format():
    evs = sorted_events({"e10", "e2", frozenset({"e2", "e10"}), "e1"})
    assert [format_event(e) for e in evs] == ["e1", "e2", "e10", "{e2,e10}"]


def test_threshold_constant():
    assert REPETITION_THRESHOLD == 2


# -- oracle agreement on random domains ----------------------------------------


def random_domain(rng: random.Random):
    n = rng.randint(1, 6)
    atoms = [f"a{i}" for i in range(n)]
    plurals = set()
    for _ in range(rng.randint(0, 4)):
        if n >= 2:
            plurals.add(frozenset(rng.sample(atoms, rng.randint(2, n))))
    sup = {}
    for a in atoms:
        if rng.random() < 0.5:
            sup[a] = frozenset(rng.sample(atoms, rng.randint(1, n)))
    dom = EventDomain(set(atoms), plurals, sup)
    events = sorted_events(dom.all_events)
    names = ["v"] + [f"u{i}" for i in range(rng.randint(0, 2))]
    verbs = {}
    for name in names:
        ext = {e for e in events if rng.random() < 0.6}
        subs = tuple(u for u in names[1:] if u != name and name == "v")
        verbs[name] = VerbMeaning(name, ext, subevents=subs)
    return dom, verbs


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ip_matches_oracle(seed):
    dom, verbs = random_domain(random.Random(seed))
    v = verbs["v"]
    fast = derive_ip(v, dom, verbs)
    assert fast == ip_oracle(v, dom, verbs)
    assert derive_ip(v, dom, verbs, OpCounter()) == fast


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ep_matches_oracle(seed):
    dom, verbs = random_domain(random.Random(seed))
    v = verbs["v"]
    assert derive_ep(v) == ep_oracle(v, dom) == derive_ep(v, OpCounter())
