"""Finite event models and pluractional meanings.

Atomic events are strings; a plural event is the frozenset of its atoms.
A verb's extension is the set of events with the verb's property.
External pluractional meanings are the non-atomic pluralities over a verb's
atomic extension; internal ones are atoms superimposed over a repetition of
the verb's events or of one of its implied subevents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from pluract import kernels as K
from pluract.counting import OpCounter
from pluract.errors import InvalidStructure, UndefinedVerb

#: Minimum number of superimposed events that counts as a repetition.
REPETITION_THRESHOLD = 2

Event = object  # str | frozenset[str]

_DIGITS = re.compile(r"(\d+)")


def _natural(s: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in _DIGITS.split(s))


def event_key(e) -> tuple:
    """Atoms first, then plurals by size; names in natural order."""
    if isinstance(e, frozenset):
        return (len(e), tuple(sorted(_natural(a) for a in e)))
    return (1, (_natural(e),))


def sorted_events(events: Iterable) -> list:
    return sorted(events, key=event_key)


def format_event(e) -> str:
    if isinstance(e, frozenset):
        return "{" + ",".join(sorted(e, key=_natural)) + "}"
    return str(e)


@dataclass(frozen=True)
class EventDomain:
    atoms: frozenset
    plurals: frozenset = frozenset()
    superposition: Mapping = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "plurals", frozenset(frozenset(p) for p in self.plurals))
        object.__setattr__(
            self, "superposition", {a: frozenset(t) for a, t in dict(self.superposition).items()}
        )
        problems = domain_problems(self)
        if problems:
            raise InvalidStructure("; ".join(problems))

    @cached_property
    def all_events(self) -> frozenset:
        return self.atoms | self.plurals

    @cached_property
    def events_list(self) -> list:
        return sorted_events(self.all_events)

    @property
    def size(self) -> int:
        return len(self.atoms) + len(self.plurals)

    def __hash__(self) -> int:
        return hash((self.atoms, self.plurals))


def domain_problems(dom: EventDomain) -> list[str]:
    out = []
    for a in dom.atoms:
        if isinstance(a, frozenset):
            out.append(f"atom {a!r} is a set")
    for p in sorted_events(dom.plurals):
        if len(p) < 2:
            out.append(f"plural {format_event(p)} has fewer than two atoms")
        if not p <= dom.atoms:
            out.append(f"plural {format_event(p)} uses unknown atoms")
    for a in sorted(dom.superposition, key=_natural):
        if a not in dom.atoms:
            out.append(f"superposition source {a!r} is not an atom")
        for t in sorted(dom.superposition[a], key=_natural):
            if t not in dom.atoms:
                out.append(f"superposition target {t!r} of {a!r} is not an atom")
    return out


@dataclass(frozen=True)
class VerbMeaning:
    name: str
    extension: frozenset = frozenset()
    agents: frozenset = frozenset()
    themes: frozenset = frozenset()
    subevents: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "extension", frozenset(self.extension))
        object.__setattr__(self, "agents", frozenset(self.agents))
        object.__setattr__(self, "themes", frozenset(self.themes))
        object.__setattr__(self, "subevents", tuple(self.subevents))


@dataclass(frozen=True)
class IndividualDomain:
    individuals: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "individuals", frozenset(self.individuals))


def atomic(events: Iterable, counter: OpCounter | None = None) -> frozenset:
    """The atoms among ``events``."""
    if counter is None:
        return frozenset(e for e in events if not isinstance(e, frozenset))
    out = []
    for e in sorted_events(events):
        counter.check()
        if not isinstance(e, frozenset):
            out.append(e)
            counter.insert()
    return frozenset(out)


def sps(
    v: VerbMeaning,
    candidates: Iterable,
    dom: EventDomain,
    counter: OpCounter | None = None,
    threshold: int = REPETITION_THRESHOLD,
) -> frozenset:
    """Atomic candidates superimposed over a repetition of ``v`` events.

    A repetition is at least ``threshold`` superimposed events, every one of
    them in the extension of ``v``.
    """
    if counter is None:
        out = set()
        for a in candidates:
            if isinstance(a, frozenset):
                continue
            targets = dom.superposition.get(a)
            if targets and len(targets) >= threshold and targets <= v.extension:
                out.add(a)
        return frozenset(out)
    hits, n = K.sps_scan(sorted_events(candidates), dom.events_list, dom.superposition, v.extension, threshold)
    counter.check(n)
    counter.insert(len(hits))
    return frozenset(hits)


def derive_ep(v: VerbMeaning, counter: OpCounter | None = None) -> frozenset:
    """Non-atomic pluralities of the verb's atomic events.

    The powerset's empty set denotes no event and its singletons are the
    atoms themselves, so both drop out with the atoms.
    """
    atoms = sorted_events(atomic(v.extension, counter))
    if counter is None:
        return frozenset(
            frozenset(c) for k in range(REPETITION_THRESHOLD, len(atoms) + 1) for c in combinations(atoms, k)
        )
    temp = K.powerset(atoms)
    counter.insert(len(temp))
    out = []
    for s in temp:
        counter.check()
        if len(s) >= 2:
            out.append(s)
            counter.insert()
    return frozenset(out)


def _lookup(verbs: Mapping[str, VerbMeaning], name: str) -> VerbMeaning:
    try:
        return verbs[name]
    except KeyError:
        raise UndefinedVerb(f"no verb named {name!r}") from None


def derive_ip(
    v: VerbMeaning,
    dom: EventDomain,
    verbs: Mapping[str, VerbMeaning],
    counter: OpCounter | None = None,
) -> frozenset:
    """Atoms superimposed over repeated ``v`` events or repeated subevents of ``v``."""
    subs = [_lookup(verbs, u) for u in v.subevents]
    out = set(sps(v, atomic(v.extension, counter), dom, counter))
    for u in subs:
        found = sps(u, dom.all_events, dom, counter)
        if counter is not None:
            counter.insert(len(found))
        out |= found
    return frozenset(out)


def verb_relation(v: VerbMeaning, dom: EventDomain, ind: IndividualDomain) -> frozenset:
    """Argument tuples (event, agent, theme), leaving out empty roles."""
    stray = (v.agents | v.themes) - ind.individuals
    if stray:
        raise InvalidStructure(f"roles of {v.name!r} use unknown individuals {sorted(stray)!r}")
    unknown = v.extension - dom.all_events
    if unknown:
        raise InvalidStructure(f"extension of {v.name!r} has events outside the domain")
    tuples = {(e,) for e in v.extension}
    for role in (v.agents, v.themes):
        if role:
            tuples = {t + (x,) for t in tuples for x in role}
    return frozenset(tuples)


# -- reference definitions ----------------------------------------------------
# Direct evaluations of the meaning definitions, kept apart from the
# derivation code above; used as oracles.


def ep_oracle(v: VerbMeaning, dom: EventDomain) -> frozenset:
    atoms = sorted(e for e in v.extension if e in dom.atoms)
    out = set()
    for mask in range(1 << len(atoms)):
        members = frozenset(a for i, a in enumerate(atoms) if mask & (1 << i))
        if len(members) >= 2:
            out.add(members)
    return frozenset(out)


def ip_oracle(v: VerbMeaning, dom: EventDomain, verbs: Mapping[str, VerbMeaning]) -> frozenset:
    def repeats(a, verb):
        targets = dom.superposition.get(a, frozenset())
        return len(targets) >= REPETITION_THRESHOLD and all(t in verb.extension for t in targets)

    out = set()
    for a in dom.atoms:
        if a in v.extension and repeats(a, v):
            out.add(a)
        for name in v.subevents:
            if repeats(a, _lookup(verbs, name)):
                out.add(a)
    return frozenset(out)
