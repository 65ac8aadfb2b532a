"""Deriving pluractional word forms.

Base extraction runs in three passes (morphology, correspondence,
phonology).  A reduplicant is then either a fresh-id copy of the whole base
or a template whose onset is filled with copies of the base's onset
segments.  Concatenation puts a new root over stem and affix.

Every algorithm has two modes.  With ``counter=None`` it uses indexed set
operations.  With an :class:`~pluract.counting.OpCounter` it runs the
literal scan version through :mod:`pluract.kernels` and tallies every
primitive step; both modes return equal results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from pluract import kernels as K
from pluract.counting import OpCounter
from pluract.errors import IdCollision, InvalidStructure, NonConformingBase, UnknownVertex
from pluract.structures import (
    QVertex,
    StructureGraph,
    Vertex,
    WordForm,
    dominance_closure,
    sorted_pairs,
    sorted_vertices,
)

#: The base and reduplicant share the word-form layout.
BaseForm = WordForm
AffixForm = WordForm

PREFIX = "prefix"
SUFFIX = "suffix"


@dataclass(frozen=True)
class Infix:
    """Place the affix right after ``after``, a vertex of the stem phonology."""

    after: Vertex


Position = Union[str, Infix]


@dataclass(frozen=True)
class BaseSpec:
    base_vertex: Vertex


@dataclass(frozen=True)
class CopyRule:
    source_dominator_label: str = "O"
    target_dominator_label: str = "O"


@dataclass(frozen=True)
class ReduplicantTemplate:
    """Prosodic frame of a partial reduplicant, minus the copied segments."""

    partial_phon: StructureGraph
    morph_unit: StructureGraph
    partial_correspondence: frozenset = frozenset()
    copy_rule: CopyRule = CopyRule()

    def __post_init__(self) -> None:
        if not isinstance(self.partial_correspondence, frozenset):
            object.__setattr__(self, "partial_correspondence", frozenset(self.partial_correspondence))
        m = self.morph_unit
        if len(m.vertices) != 1 or {lab for _, lab in m.naming} != {"R"}:
            raise InvalidStructure("template morphology must be a single vertex named 'R'")

    def as_word_form(self) -> WordForm:
        return WordForm(self.partial_phon, self.morph_unit, self.partial_correspondence)


@dataclass(frozen=True)
class Pins:
    """Ids to force instead of allocating fresh ones.

    ``copies`` and ``morph_copies`` map a source vertex to the id its copy
    gets; ``phon_root``/``morph_root`` fix the roots added by concatenation.
    """

    copies: Mapping = field(default_factory=dict)
    morph_copies: Mapping = field(default_factory=dict)
    phon_root: Vertex | None = None
    morph_root: Vertex | None = None


class IdAllocator:
    """Monotone integer ids above everything in ``used``, honouring pins.

    Fresh ids avoid ``used``.  A pinned id only has to avoid ``pin_guard``
    (default: ``used``) and the ids handed out so far.
    """

    def __init__(self, used: Iterable[Vertex] = (), pin_guard: Iterable[Vertex] | None = None):
        self.used = set(used)
        self.pin_guard = set(self.used if pin_guard is None else pin_guard)
        self.assigned: set = set()
        ints = [v for v in self.used if isinstance(v, int)]
        self._next = max(ints) + 1 if ints else 0

    def fresh(self, pinned: Vertex | None = None) -> Vertex:
        if pinned is not None:
            if pinned in self.pin_guard or pinned in self.assigned:
                raise IdCollision(f"pinned id {pinned!r} is already in use")
            self.used.add(pinned)
            self.assigned.add(pinned)
            return pinned
        while self._next in self.used:
            self._next += 1
        v = self._next
        self.used.add(v)
        self.assigned.add(v)
        self._next += 1
        return v


# -- base extraction --------------------------------------------------------


def extract_base_morph(w: WordForm, spec: BaseSpec, counter: OpCounter | None = None) -> StructureGraph:
    """Morphological content of the base: the base vertex and everything under it."""
    base = spec.base_vertex
    M = w.morph
    if base not in M.vertices:
        raise UnknownVertex(f"base vertex {base!r} is not in the morphology")
    if counter is None:
        keep = {base} | dominance_closure(M, base)
        return M.restrict(keep)

    c = counter
    D = sorted_pairs(M.dominance)
    vp = [base]
    c.insert()
    for x, y in D:
        c.check()
        if x == base:
            found, n = K.contains(vp, y)
            c.check(n)
            if not found:
                vp.append(y)
                c.insert()
    while True:
        hits, n = K.pairs_with_member(D, vp, 0)
        c.check(n)
        added = False
        for _, y in hits:
            found, n = K.contains(vp, y)
            c.check(n)
            if not found:
                vp.append(y)
                c.insert()
                added = True
        if not added:
            break
    dom, n = K.pairs_within(D, vp)
    c.check(n)
    c.insert(len(dom))
    prec, n = K.pairs_within(sorted_pairs(M.precedence), vp)
    c.check(n)
    c.insert(len(prec))
    names, n = K.pairs_with_member(sorted_pairs(M.naming), vp, 0)
    c.check(n)
    c.insert(len(names))
    c.insert(len(M.labels))
    c.insert(len(vp) + len(M.labels))  # universe
    return StructureGraph(frozenset(vp), M.labels, frozenset(dom), frozenset(prec), frozenset(names))


def extract_base_correspondence(
    w: WordForm, m_prime: StructureGraph, counter: OpCounter | None = None
) -> frozenset:
    """Correspondence pairs whose morphological member lies in ``m_prime``."""
    if counter is None:
        return frozenset(p for p in w.correspondence if p[1] in m_prime.vertices)
    hits, n = K.pairs_with_member(sorted_pairs(w.correspondence), sorted_vertices(m_prime.vertices), 1)
    counter.check(n)
    counter.insert(len(hits))
    return frozenset(hits)


def extract_base_phon(w: WordForm, c_prime: Iterable, counter: OpCounter | None = None) -> StructureGraph:
    """Phonological content of the base: the phon vertices named in ``c_prime``."""
    P = w.phon
    c_prime = frozenset(c_prime)
    if counter is None:
        keep = {p for p, _ in c_prime} & P.vertices
        return P.restrict(keep)

    c = counter
    vp, n = K.members_in_pairs(sorted_vertices(P.vertices), sorted_pairs(c_prime), 0)
    c.check(n)
    c.insert(len(vp))
    dom, n = K.pairs_within(sorted_pairs(P.dominance), vp)
    c.check(n)
    c.insert(len(dom))
    prec, n = K.pairs_within(sorted_pairs(P.precedence), vp)
    c.check(n)
    c.insert(len(prec))
    c.insert(len(P.labels))
    c.insert(len(vp) + len(P.labels))  # universe
    names, n = K.pairs_with_member(sorted_pairs(P.naming), vp, 0)
    c.check(n)
    c.insert(len(names))
    return StructureGraph(frozenset(vp), P.labels, frozenset(dom), frozenset(prec), frozenset(names))


def extract_base(w: WordForm, spec: BaseSpec, counter: OpCounter | None = None) -> BaseForm:
    m_prime = extract_base_morph(w, spec, counter)
    c_prime = extract_base_correspondence(w, m_prime, counter)
    p_prime = extract_base_phon(w, c_prime, counter)
    return WordForm(p_prime, m_prime, c_prime)


# -- reduplicants -------------------------------------------------------------


@dataclass(frozen=True)
class CopyWitness:
    """Old-to-new vertex maps of a total copy."""

    phon: Mapping
    morph: Mapping


def _copy_graph(g: StructureGraph, alloc: IdAllocator, pins: Mapping, c: OpCounter | None):
    mapping = {}
    for v in sorted_vertices(g.vertices):
        mapping[v] = alloc.fresh(pins.get(v))
    if c is not None:
        n_v, n_d, n_p, n_n = len(g.vertices), len(g.dominance), len(g.precedence), len(g.naming)
        c.copy(n_v)
        c.insert(n_v + n_d + n_p + n_n + len(g.labels))
        c.pair(n_d + n_p + n_n)
    return g.relabel(mapping), mapping


def build_total_reduplicant(
    bs: BaseForm,
    pins: Pins | None = None,
    reserved: Iterable[Vertex] = (),
    counter: OpCounter | None = None,
) -> tuple[WordForm, CopyWitness]:
    """Copy every element of the base under fresh vertex ids."""
    pins = pins or Pins()
    alloc = IdAllocator(set(reserved) | bs.phon.vertices | bs.morph.vertices, pin_guard=())
    phon, pmap = _copy_graph(bs.phon, alloc, pins.copies, counter)
    morph, mmap = _copy_graph(bs.morph, alloc, pins.morph_copies, counter)
    corr = frozenset((pmap[p], mmap[m]) for p, m in bs.correspondence)
    if counter is not None:
        counter.pair(len(corr))
        counter.insert(len(corr))
    return WordForm(phon, morph, corr), CopyWitness(pmap, mmap)


def _single_target(tpl: ReduplicantTemplate) -> Vertex:
    label = tpl.copy_rule.target_dominator_label
    targets = [v for v, lab in tpl.partial_phon.naming if lab == label]
    if len(targets) != 1:
        raise InvalidStructure(f"template needs exactly one vertex named {label!r}, found {len(targets)}")
    return targets[0]


def build_partial_reduplicant(
    bs: BaseForm,
    tpl: ReduplicantTemplate,
    pins: Pins | None = None,
    counter: OpCounter | None = None,
) -> WordForm:
    """Fill the template's target constituent with copies of the base's source segments.

    Every segment immediately dominated by a base vertex named with the
    source label is copied (new id, same label) under the template vertex
    named with the target label.  Nothing else in the template changes.
    """
    pins = pins or Pins()
    src_label = tpl.copy_rule.source_dominator_label
    tgt_label = tpl.copy_rule.target_dominator_label
    target = _single_target(tpl)
    P1, P2 = bs.phon, tpl.partial_phon
    alloc = IdAllocator(P2.vertices | P1.vertices, pin_guard=P2.vertices)
    D1 = sorted_pairs(P1.dominance)
    N1 = sorted_pairs(P1.naming)
    c = counter

    if c is None:
        on = {v for v, lab in P1.naming if lab == src_label}
        temp = [y for x, y in D1 if x in on]
    else:
        on_pairs, n = K.pairs_with_label(N1, src_label)
        c.check(n)
        c.copy(len(on_pairs))
        on = [v for v, _ in on_pairs]
        temp = []
        for x, y in D1:
            found, n = K.contains(on, x)
            c.check(n)
            if found:
                temp.append(y)
                c.copy()
    if not on:
        raise NonConformingBase(f"base has no vertex named {src_label!r}")
    if not temp:
        raise NonConformingBase(f"no segment is dominated by a {src_label!r} vertex in the base")

    copy_of = {t: alloc.fresh(pins.copies.get(t)) for t in temp}
    vertices = set(P2.vertices) | set(copy_of.values())
    dominance = set(P2.dominance)
    naming = set(P2.naming)
    if c is None:
        dominance |= {(target, copy_of[t]) for t in temp}
        temp2 = [(v, lab) for v, lab in N1 if v in copy_of]
    else:
        c.copy(len(temp))
        c.insert(len(temp))
        N2 = sorted_pairs(P2.naming)
        for t in temp:
            hits, n = K.pairs_with_label(N2, tgt_label)
            c.check(n)
            dominance.add((hits[0][0], copy_of[t]))
            c.pair()
            c.insert()
        temp2 = []
        for v, lab in N1:
            found, n = K.contains(temp, v)
            c.check(n)
            if found:
                temp2.append((v, lab))
                c.insert()
    for v, lab in temp2:
        naming.add((copy_of[v], lab))
    labels = set(P2.labels) | {lab for _, lab in naming}
    if c is not None:
        c.pair(len(temp2))
        c.insert(len(temp2))
        c.insert(len(naming))
    phon = StructureGraph(frozenset(vertices), frozenset(labels), frozenset(dominance), P2.precedence, frozenset(naming))
    return WordForm(phon, tpl.morph_unit, tpl.partial_correspondence)


# -- concatenation ------------------------------------------------------------


def _one_root(g: StructureGraph, what: str) -> Vertex:
    roots = g.roots
    if len(roots) != 1:
        raise InvalidStructure(f"{what} has {len(roots)} roots; concatenation needs exactly one")
    return roots[0]


def qualify_overlap(stem: WordForm, affix: WordForm, tags: tuple[str, str] = ("Bs", "Red")) -> tuple[WordForm, WordForm]:
    """Tag the vertex ids the two forms share, e.g. 0 becomes 0_Bs and 0_Red."""
    maps = []
    for g_s, g_a in ((stem.phon, affix.phon), (stem.morph, affix.morph)):
        shared = g_s.vertices & g_a.vertices
        bad = [v for v in shared if not isinstance(v, int)]
        if bad:
            raise IdCollision(f"cannot qualify non-integer shared ids {bad!r}")
        maps.append(({v: QVertex(v, tags[0]) for v in shared}, {v: QVertex(v, tags[1]) for v in shared}))
    (ps, pa), (ms, ma) = maps
    return stem.relabel(ps, ms), affix.relabel(pa, ma)


def concatenate(
    stem: WordForm,
    affix: WordForm,
    pos: Position = SUFFIX,
    pins: Pins | None = None,
    counter: OpCounter | None = None,
) -> WordForm:
    """Join stem and affix under new 'Pw' and 'Mw' roots.

    The union of the two forms is taken as is; only the new roots, their
    dominance, naming and correspondence pairs, and the ordering pair are
    built, so the work done is independent of the input sizes.
    """
    pins = pins or Pins()
    for a, b, what in ((stem.phon, affix.phon, "phonological"), (stem.morph, affix.morph, "morphological")):
        shared = a.vertices & b.vertices
        if shared:
            raise IdCollision(f"{what} vertex ids shared by stem and affix: {sorted_vertices(shared)!r}")
    sp, ap = _one_root(stem.phon, "stem phonology"), _one_root(affix.phon, "affix phonology")
    sm, am = _one_root(stem.morph, "stem morphology"), _one_root(affix.morph, "affix morphology")
    alloc = IdAllocator(stem.phon.vertices | affix.phon.vertices | stem.morph.vertices | affix.morph.vertices)
    new_p = alloc.fresh(pins.phon_root)
    new_m = alloc.fresh(pins.morph_root)

    if isinstance(pos, Infix):
        anchor = pos.after
        parent = stem.phon.parent.get(anchor)
        if parent is None:
            raise UnknownVertex(f"infix anchor {anchor!r} is not a dominated stem vertex")
        p_dom = {(new_p, sp), (parent, ap)}
        p_prec = {(anchor, ap)} | {(ap, s) for a, s in stem.phon.precedence if a == anchor}
        m_prec: set = set()
    elif pos == SUFFIX:
        p_dom = {(new_p, sp), (new_p, ap)}
        p_prec = {(sp, ap)}
        m_prec = {(sm, am)}
    elif pos == PREFIX:
        p_dom = {(new_p, sp), (new_p, ap)}
        p_prec = {(ap, sp)}
        m_prec = {(am, sm)}
    else:
        raise ValueError(f"unknown affix position {pos!r}")
    m_dom = {(new_m, sm), (new_m, am)}

    if counter is not None:
        c = counter
        c.insert(2)  # new vertices
        n_pairs = len(p_dom) + len(p_prec) + len(m_dom) + len(m_prec) + 2 + 1  # + namings + correspondence
        c.pair(n_pairs)
        c.insert(n_pairs)
        c.insert(2)  # labels

    phon = StructureGraph(
        stem.phon.vertices | affix.phon.vertices | {new_p},
        stem.phon.labels | affix.phon.labels | {"Pw"},
        stem.phon.dominance | affix.phon.dominance | p_dom,
        stem.phon.precedence | affix.phon.precedence | p_prec,
        stem.phon.naming | affix.phon.naming | {(new_p, "Pw")},
    )
    morph = StructureGraph(
        stem.morph.vertices | affix.morph.vertices | {new_m},
        stem.morph.labels | affix.morph.labels | {"Mw"},
        stem.morph.dominance | affix.morph.dominance | m_dom,
        stem.morph.precedence | affix.morph.precedence | m_prec,
        stem.morph.naming | affix.morph.naming | {(new_m, "Mw")},
    )
    return WordForm(phon, morph, stem.correspondence | affix.correspondence | {(new_p, new_m)})


# -- strategies ---------------------------------------------------------------


@dataclass(frozen=True)
class AffixStrategy:
    affix: AffixForm
    position: Position = SUFFIX
    pins: Pins = Pins()
    kind = "affix"


@dataclass(frozen=True)
class TotalRedup:
    base: BaseSpec
    position: Position = PREFIX
    pins: Pins = Pins()
    kind = "total-redup"


@dataclass(frozen=True)
class PartialRedup:
    base: BaseSpec
    template: ReduplicantTemplate
    position: Position = SUFFIX
    pins: Pins = Pins()
    kind = "partial-redup"


Strategy = Union[AffixStrategy, TotalRedup, PartialRedup]


@dataclass(frozen=True)
class Derivation:
    """``affix`` is the affix or reduplicant before any id qualification."""

    result: WordForm
    affix: WordForm
    base: WordForm | None = None
    witness: CopyWitness | None = None


def derive(w: WordForm, strategy: Strategy, counter: OpCounter | None = None) -> Derivation:
    """Run a strategy end to end and keep the intermediate structures."""
    base = witness = None
    if isinstance(strategy, AffixStrategy):
        affix, tags = strategy.affix, ("St", "Af")
    elif isinstance(strategy, TotalRedup):
        base = extract_base(w, strategy.base, counter)
        affix, witness = build_total_reduplicant(
            base, strategy.pins, reserved=w.phon.vertices | w.morph.vertices, counter=counter
        )
        tags = ("Bs", "Red")
    elif isinstance(strategy, PartialRedup):
        base = extract_base(w, strategy.base, counter)
        affix = build_partial_reduplicant(base, strategy.template, strategy.pins, counter)
        tags = ("Bs", "Red")
    else:
        raise TypeError(f"not a derivation strategy: {strategy!r}")
    stem, joined, position = w, affix, strategy.position
    shared = w.phon.vertices & affix.phon.vertices
    if shared or (w.morph.vertices & affix.morph.vertices):
        stem, joined = qualify_overlap(w, affix, tags)
        if isinstance(position, Infix) and position.after in shared:
            position = Infix(QVertex(position.after, tags[0]))
    result = concatenate(stem, joined, position, strategy.pins, counter)
    return Derivation(result, affix, base, witness)


def derive_pluractional_form(w: WordForm, strategy: Strategy, counter: OpCounter | None = None) -> WordForm:
    return derive(w, strategy, counter).result
