"""Set-theoretic encoding of prosodic and morphological trees.

A tree is five finite sets: vertices, labels, immediate dominance pairs,
sibling precedence pairs and a naming function written as (vertex, label)
pairs.  A word form bundles a phonological tree, a morphological tree and
the correspondence relation between their vertices.

Vertex identifiers are opaque.  Plain integers are the common case;
:class:`QVertex` qualifies an integer with a tag (``0_Bs``, ``0_Red``) so
that two structures numbered from zero can live in one word form.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Iterator, NamedTuple

from pluract.errors import UnknownVertex

Vertex = Hashable
Pair = tuple[Any, Any]


class QVertex(NamedTuple):
    """An integer vertex id qualified by a tag, printed as ``3_Red``."""

    index: int
    tag: str

    def __str__(self) -> str:
        return f"{self.index}_{self.tag}"


def vkey(v: Vertex) -> tuple:
    """Total order over vertex ids: ints and qualified ints interleave by index."""
    if isinstance(v, QVertex):
        return (0, v.index, v.tag)
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def pkey(p: Pair) -> tuple:
    return (vkey(p[0]), vkey(p[1]))


def sorted_vertices(vs: Iterable[Vertex]) -> list:
    return sorted(vs, key=vkey)


def sorted_pairs(ps: Iterable[Pair]) -> list:
    return sorted(ps, key=pkey)


@dataclass(frozen=True)
class StructureGraph:
    """A labeled, ordered, rooted tree held as plain sets.

    ``dominance`` holds immediate (parent, child) pairs only and
    ``precedence`` holds only the sibling pairs that were given; both
    closures are computed on demand.
    """

    vertices: frozenset = frozenset()
    labels: frozenset = frozenset()
    dominance: frozenset = frozenset()
    precedence: frozenset = frozenset()
    naming: frozenset = frozenset()

    def __post_init__(self) -> None:
        for name in ("vertices", "labels", "dominance", "precedence", "naming"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))

    @property
    def universe(self) -> frozenset:
        return self.vertices | self.labels

    @cached_property
    def parent(self) -> dict:
        return {c: p for p, c in self.dominance}

    @cached_property
    def children(self) -> dict:
        out: dict = defaultdict(list)
        for p, c in sorted_pairs(self.dominance):
            out[p].append(c)
        return dict(out)

    @cached_property
    def label_of(self) -> dict:
        return dict(self.naming)

    @cached_property
    def roots(self) -> list:
        children = {c for _, c in self.dominance}
        return sorted_vertices(v for v in self.vertices if v not in children)

    @property
    def root(self) -> Vertex:
        roots = self.roots
        if len(roots) != 1:
            raise UnknownVertex(f"graph has {len(roots)} roots, expected exactly one")
        return roots[0]

    def __len__(self) -> int:
        return len(self.vertices)

    def restrict(self, keep: Iterable[Vertex]) -> StructureGraph:
        """Induced subgraph on ``keep``; the label set is kept whole."""
        keep = frozenset(keep)
        return StructureGraph(
            vertices=keep,
            labels=self.labels,
            dominance={(a, b) for a, b in self.dominance if a in keep and b in keep},
            precedence={(a, b) for a, b in self.precedence if a in keep and b in keep},
            naming={(v, lab) for v, lab in self.naming if v in keep},
        )

    def relabel(self, mapping: dict) -> StructureGraph:
        m = lambda v: mapping.get(v, v)  # noqa: E731
        return StructureGraph(
            vertices={m(v) for v in self.vertices},
            labels=self.labels,
            dominance={(m(a), m(b)) for a, b in self.dominance},
            precedence={(m(a), m(b)) for a, b in self.precedence},
            naming={(m(v), lab) for v, lab in self.naming},
        )

    def used_labels(self) -> frozenset:
        return frozenset(lab for _, lab in self.naming)


@dataclass(frozen=True)
class WordForm:
    """Phonological tree, morphological tree and their correspondence.

    Correspondence pairs are written (phon vertex, morph vertex) and need
    not cover either tree.
    """

    phon: StructureGraph
    morph: StructureGraph
    correspondence: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.correspondence, frozenset):
            object.__setattr__(self, "correspondence", frozenset(self.correspondence))

    def relabel(self, phon_map: dict, morph_map: dict) -> WordForm:
        return WordForm(
            phon=self.phon.relabel(phon_map),
            morph=self.morph.relabel(morph_map),
            correspondence={
                (phon_map.get(p, p), morph_map.get(m, m)) for p, m in self.correspondence
            },
        )

    @property
    def size(self) -> int:
        return len(self.phon.vertices) + len(self.morph.vertices)


# -- validation ---------------------------------------------------------------

#: Violation kinds in report order.
KINDS = (
    "dangling vertex",
    "no root",
    "multiple roots",
    "multiple parents",
    "cycle",
    "reflexive precedence",
    "non-sibling precedence",
    "precedence cycle",
    "unnamed vertex",
    "duplicate naming",
    "unknown label",
    "dangling phon vertex",
    "dangling morph vertex",
)
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True, order=False)
class Violation:
    kind: str
    subjects: tuple = ()
    where: str = ""

    def __str__(self) -> str:
        where = f"{self.where}: " if self.where else ""
        subj = ", ".join(_fmt(s) for s in self.subjects)
        return f"{where}{self.kind} [{subj}]"


def _fmt(s: Any) -> str:
    if isinstance(s, tuple) and not isinstance(s, QVertex):
        return "(" + ",".join(_fmt(x) for x in s) + ")"
    return str(s)


def _vsort_key(v: Violation) -> tuple:
    return (v.where, _KIND_RANK.get(v.kind, len(KINDS)), repr(v.subjects))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __bool__(self) -> bool:
        return bool(self.violations)

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self.violations) or "ok"


def _graph_violations(g: StructureGraph, where: str = "") -> list[Violation]:
    out: list[Violation] = []
    V = g.vertices

    def add(kind: str, *subjects: Any) -> None:
        out.append(Violation(kind, tuple(subjects), where))

    for rel in (g.dominance, g.precedence):
        for a, b in sorted_pairs(rel):
            if a not in V or b not in V:
                add("dangling vertex", (a, b))
    for v, lab in sorted(g.naming, key=lambda p: (vkey(p[0]), p[1])):
        if v not in V:
            add("dangling vertex", (v, lab))

    dom = [(a, b) for a, b in g.dominance if a in V and b in V]
    parents: dict = defaultdict(list)
    for a, b in dom:
        parents[b].append(a)
    for v in sorted_vertices(parents):
        if len(parents[v]) > 1:
            add("multiple parents", v, *sorted_vertices(parents[v]))
    roots = sorted_vertices(v for v in V if v not in parents)
    if V and not roots:
        add("no root")
    elif len(roots) > 1:
        add("multiple roots", *roots)

    for cyc in _cycles(V, dom):
        add("cycle", *cyc)

    for a, b in sorted_pairs(g.precedence):
        if a not in V or b not in V:
            continue
        if a == b:
            add("reflexive precedence", a)
        elif sorted_vertices(parents.get(a, [])) != sorted_vertices(parents.get(b, [])):
            add("non-sibling precedence", (a, b))
    for cyc in _cycles(V, [(a, b) for a, b in g.precedence if a in V and b in V and a != b]):
        add("precedence cycle", *cyc)

    names: dict = defaultdict(list)
    for v, lab in g.naming:
        if v in V:
            names[v].append(lab)
    for v in sorted_vertices(V):
        if not names.get(v):
            add("unnamed vertex", v)
        elif len(names[v]) > 1:
            add("duplicate naming", v, *sorted(names[v]))
    for v, lab in sorted(g.naming, key=lambda p: (vkey(p[0]), p[1])):
        if lab not in g.labels:
            add("unknown label", v, lab)
    return out


def _cycles(V: Iterable[Vertex], edges: Iterable[Pair]) -> list[tuple]:
    """Vertex sets of the non-trivial strongly connected components."""
    adj: dict = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
    index: dict = {}
    low: dict = {}
    stack: list = []
    on_stack: set = set()
    comps: list[tuple] = []
    counter = 0
    for start in sorted_vertices(V):
        if start in index:
            continue
        # iterative Tarjan
        work = [(start, iter(sorted_vertices(adj[start])))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted_vertices(adj[nxt]))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1 or node in adj.get(node, ()):
                    comps.append(tuple(sorted_vertices(comp)))
    return sorted(comps, key=lambda c: [vkey(v) for v in c])


def validate_structure(g: StructureGraph) -> ValidationReport:
    """Every tree-invariant violation in ``g``, deterministically ordered."""
    return ValidationReport(tuple(sorted(_graph_violations(g), key=_vsort_key)))


def validate_word_form(w: WordForm) -> ValidationReport:
    found = _graph_violations(w.phon, "phon") + _graph_violations(w.morph, "morph")
    for p, m in sorted_pairs(w.correspondence):
        if p not in w.phon.vertices:
            found.append(Violation("dangling phon vertex", ((p, m),), "correspondence"))
        if m not in w.morph.vertices:
            found.append(Violation("dangling morph vertex", ((p, m),), "correspondence"))
    return ValidationReport(tuple(sorted(found, key=_vsort_key)))


def dominance_closure(g: StructureGraph, x: Vertex) -> frozenset:
    """All vertices reachable from ``x`` by one or more dominance steps."""
    if x not in g.vertices:
        raise UnknownVertex(f"vertex {x!r} is not in the graph")
    seen: set = set()
    frontier = [x]
    children = g.children
    while frontier:
        v = frontier.pop()
        for c in children.get(v, ()):
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    return frozenset(seen)


def precedence_closure(g: StructureGraph) -> frozenset:
    """Transitive closure of the stored sibling precedence pairs."""
    succ: dict = defaultdict(set)
    for a, b in g.precedence:
        succ[a].add(b)
    out = set()
    for a in list(succ):
        frontier = list(succ[a])
        seen: set = set()
        while frontier:
            b = frontier.pop()
            if b in seen:
                continue
            seen.add(b)
            out.add((a, b))
            frontier.extend(succ.get(b, ()))
    return frozenset(out)


def graph(
    vertices: Iterable = (),
    labels: Iterable = (),
    dominance: Iterable = (),
    precedence: Iterable = (),
    naming: Iterable = (),
) -> StructureGraph:
    """Build a graph from any iterables."""
    return StructureGraph(
        frozenset(vertices),
        frozenset(labels),
        frozenset(map(tuple, dominance)),
        frozenset(map(tuple, precedence)),
        frozenset(map(tuple, naming)),
    )
