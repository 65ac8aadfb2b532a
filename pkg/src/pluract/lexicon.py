"""Reading and writing lexicon and event-domain documents.

Both formats are UTF-8 JSON.  Sets are arrays, pairs are two-element
arrays, and the canonical form sorts every set and every object key, so a
document serializes to the same bytes however it was built.  Vertex ids are
integers, or strings such as ``"0_Red"`` for tagged ids.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from typing import Any, Mapping

import jsonschema

from pluract.derivation import (
    AffixStrategy,
    BaseSpec,
    CopyRule,
    Infix,
    PartialRedup,
    Pins,
    Position,
    ReduplicantTemplate,
    Strategy,
    TotalRedup,
)
from pluract.errors import InvalidStructure, ParseError, SizeError, UnresolvedReference
from pluract.semantics import EventDomain, IndividualDomain, VerbMeaning, _natural, sorted_events
from pluract.structures import (
    QVertex,
    StructureGraph,
    WordForm,
    sorted_pairs,
    sorted_vertices,
    validate_structure,
    validate_word_form,
)

FORMAT_VERSION = 1

#: Largest atom set a ``close_over`` directive may expand.
MAX_CLOSURE_ATOMS = 16

_QUALIFIED = re.compile(r"^(-?\d+)_([A-Za-z]\w*)$")


class ClosureTooLarge(SizeError, ParseError):
    pass


def _schema(name: str) -> dict:
    text = resources.files("pluract.data.schema").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


# -- value codecs -------------------------------------------------------------


def encode_vertex(v: Any) -> Any:
    if isinstance(v, QVertex):
        return str(v)
    return v


def decode_vertex(x: Any) -> Any:
    if isinstance(x, str):
        m = _QUALIFIED.match(x)
        if m:
            return QVertex(int(m.group(1)), m.group(2))
    return x


def _pairs_out(pairs) -> list:
    return [[encode_vertex(a), encode_vertex(b)] for a, b in sorted_pairs(pairs)]


def _pairs_in(rows, second_is_vertex: bool = True) -> frozenset:
    return frozenset(
        (decode_vertex(a), decode_vertex(b) if second_is_vertex else b) for a, b in rows
    )


def graph_to_json(g: StructureGraph) -> dict:
    return {
        "vertices": [encode_vertex(v) for v in sorted_vertices(g.vertices)],
        "labels": sorted(g.labels),
        "dominance": _pairs_out(g.dominance),
        "precedence": _pairs_out(g.precedence),
        "naming": [[encode_vertex(v), lab] for v, lab in sorted_pairs(g.naming)],
    }


def graph_from_json(d: Mapping) -> StructureGraph:
    return StructureGraph(
        frozenset(decode_vertex(v) for v in d["vertices"]),
        frozenset(d["labels"]),
        _pairs_in(d["dominance"]),
        _pairs_in(d["precedence"]),
        _pairs_in(d["naming"], second_is_vertex=False),
    )


def word_form_to_json(w: WordForm) -> dict:
    return {
        "phon": graph_to_json(w.phon),
        "morph": graph_to_json(w.morph),
        "correspondence": _pairs_out(w.correspondence),
    }


def word_form_from_json(d: Mapping) -> WordForm:
    return WordForm(graph_from_json(d["phon"]), graph_from_json(d["morph"]), _pairs_in(d["correspondence"]))


def _position_to_json(pos: Position) -> Any:
    if isinstance(pos, Infix):
        return {"infix_after": encode_vertex(pos.after)}
    return pos


def _position_from_json(x: Any) -> Position:
    if isinstance(x, dict):
        return Infix(decode_vertex(x["infix_after"]))
    return x


def _pins_to_json(p: Pins) -> dict:
    out: dict = {}
    if p.copies:
        out["copies"] = _pairs_out(p.copies.items())
    if p.morph_copies:
        out["morph_copies"] = _pairs_out(p.morph_copies.items())
    if p.phon_root is not None:
        out["phon_root"] = encode_vertex(p.phon_root)
    if p.morph_root is not None:
        out["morph_root"] = encode_vertex(p.morph_root)
    return out


def _pins_from_json(d: Mapping | None) -> Pins:
    d = d or {}
    return Pins(
        copies=dict(_pairs_in(d.get("copies", []))),
        morph_copies=dict(_pairs_in(d.get("morph_copies", []))),
        phon_root=decode_vertex(d["phon_root"]) if "phon_root" in d else None,
        morph_root=decode_vertex(d["morph_root"]) if "morph_root" in d else None,
    )


def _dump(obj: Any) -> bytes:
    return (json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _load(data: bytes | str, schema_name: str) -> dict:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e.reason}", offset=e.start) from None
    else:
        text = data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"syntax error: {e.msg}", offset=len(text[: e.pos].encode("utf-8"))) from None
    validator = jsonschema.Draft202012Validator(_schema(schema_name))
    errors = sorted(validator.iter_errors(obj), key=lambda err: list(map(str, err.absolute_path)))
    if errors:
        err = errors[0]
        where = "/" + "/".join(str(p) for p in err.absolute_path)
        raise ParseError(err.message, location=where)
    return obj


# -- lexicon documents --------------------------------------------------------


@dataclass(frozen=True)
class StrategyBinding:
    """A named way of deriving a pluractional form from a lexicon entry."""

    kind: str
    position: Position
    entry: str | None = None
    base_vertex: Any = None
    affix: str | None = None
    template: str | None = None
    pins: Pins = Pins()

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "position": _position_to_json(self.position)}
        for key in ("entry", "affix", "template"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.base_vertex is not None:
            out["base_vertex"] = encode_vertex(self.base_vertex)
        pins = _pins_to_json(self.pins)
        if pins:
            out["pins"] = pins
        return out

    @classmethod
    def from_json(cls, d: Mapping) -> StrategyBinding:
        return cls(
            kind=d["kind"],
            position=_position_from_json(d["position"]),
            entry=d.get("entry"),
            base_vertex=decode_vertex(d["base_vertex"]) if "base_vertex" in d else None,
            affix=d.get("affix"),
            template=d.get("template"),
            pins=_pins_from_json(d.get("pins")),
        )


@dataclass(frozen=True)
class LexiconDocument:
    format_version: int = FORMAT_VERSION
    word_forms: Mapping[str, WordForm] = field(default_factory=dict)
    affixes: Mapping[str, WordForm] = field(default_factory=dict)
    templates: Mapping[str, ReduplicantTemplate] = field(default_factory=dict)
    strategies: Mapping[str, StrategyBinding] = field(default_factory=dict)
    notes: Mapping[str, Mapping] = field(default_factory=dict)

    def strategy(self, name: str) -> Strategy:
        """Resolve a binding into a derivation strategy."""
        b = self.strategies[name]
        if b.kind == "affix":
            return AffixStrategy(self.affixes[b.affix], b.position, b.pins)
        if b.kind == "total-redup":
            return TotalRedup(BaseSpec(b.base_vertex), b.position, b.pins)
        return PartialRedup(BaseSpec(b.base_vertex), self.templates[b.template], b.position, b.pins)


def _template_to_json(t: ReduplicantTemplate) -> dict:
    return {
        "partial_phon": graph_to_json(t.partial_phon),
        "morph_unit": graph_to_json(t.morph_unit),
        "partial_correspondence": _pairs_out(t.partial_correspondence),
        "copy_rule": {
            "source_dominator_label": t.copy_rule.source_dominator_label,
            "target_dominator_label": t.copy_rule.target_dominator_label,
        },
    }


def _template_from_json(d: Mapping) -> ReduplicantTemplate:
    rule = d.get("copy_rule", {})
    return ReduplicantTemplate(
        graph_from_json(d["partial_phon"]),
        graph_from_json(d["morph_unit"]),
        _pairs_in(d["partial_correspondence"]),
        CopyRule(rule.get("source_dominator_label", "O"), rule.get("target_dominator_label", "O")),
    )


def lexicon_to_json(doc: LexiconDocument) -> dict:
    out = {
        "format_version": doc.format_version,
        "word_forms": {k: word_form_to_json(v) for k, v in doc.word_forms.items()},
        "affixes": {k: word_form_to_json(v) for k, v in doc.affixes.items()},
        "templates": {k: _template_to_json(v) for k, v in doc.templates.items()},
        "strategies": {k: v.to_json() for k, v in doc.strategies.items()},
    }
    if doc.notes:
        out["notes"] = {k: dict(v) for k, v in doc.notes.items()}
    return out


def serialize(doc: LexiconDocument | DomainDocument) -> bytes:
    """Canonical UTF-8 bytes for a lexicon or domain document."""
    if isinstance(doc, DomainDocument):
        return _dump(domain_to_json(doc))
    return _dump(lexicon_to_json(doc))


def check_lexicon(doc: LexiconDocument) -> None:
    """Raise if a cross-reference dangles or a structure is ill-formed."""
    for name, w in {**doc.word_forms, **doc.affixes}.items():
        report = validate_word_form(w)
        if not report.ok:
            raise InvalidStructure(f"{name}: invalid word form\n{report}", report)
    for name, t in doc.templates.items():
        report = validate_structure(t.partial_phon)
        if not report.ok:
            raise InvalidStructure(f"{name}: invalid template phonology\n{report}", report)
        labels = [lab for _, lab in t.partial_phon.naming]
        if labels.count(t.copy_rule.target_dominator_label) != 1:
            raise InvalidStructure(
                f"{name}: template needs exactly one {t.copy_rule.target_dominator_label!r} vertex"
            )
    for name, b in doc.strategies.items():
        loc = f"/strategies/{name}"
        if b.kind == "affix" and b.affix not in doc.affixes:
            raise UnresolvedReference(f"unknown affix {b.affix!r}", location=loc)
        if b.kind == "partial-redup" and b.template not in doc.templates:
            raise UnresolvedReference(f"unknown template {b.template!r}", location=loc)
        if b.kind != "affix" and b.base_vertex is None:
            raise UnresolvedReference("reduplication needs a base_vertex", location=loc)
        if b.entry is not None:
            if b.entry not in doc.word_forms:
                raise UnresolvedReference(f"unknown entry {b.entry!r}", location=loc)
            w = doc.word_forms[b.entry]
            if b.base_vertex is not None and b.base_vertex not in w.morph.vertices:
                raise UnresolvedReference(f"base vertex {b.base_vertex!r} not in {b.entry!r}", location=loc)
            if isinstance(b.position, Infix) and b.position.after not in w.phon.vertices:
                raise UnresolvedReference(f"infix anchor {b.position.after!r} not in {b.entry!r}", location=loc)


def parse_lexicon(data: bytes | str) -> LexiconDocument:
    """Parse and fully validate a lexicon document."""
    obj = _load(data, "lexicon.schema.json")
    try:
        doc = LexiconDocument(
            format_version=obj["format_version"],
            word_forms={k: word_form_from_json(v) for k, v in obj.get("word_forms", {}).items()},
            affixes={k: word_form_from_json(v) for k, v in obj.get("affixes", {}).items()},
            templates={k: _template_from_json(v) for k, v in obj.get("templates", {}).items()},
            strategies={k: StrategyBinding.from_json(v) for k, v in obj.get("strategies", {}).items()},
            notes=obj.get("notes", {}),
        )
    except InvalidStructure as e:
        raise ParseError(str(e)) from None
    check_lexicon(doc)
    return doc


# -- domain documents ---------------------------------------------------------


@dataclass(frozen=True)
class DomainDocument:
    domain: EventDomain
    verbs: Mapping[str, VerbMeaning] = field(default_factory=dict)
    individuals: IndividualDomain = IndividualDomain()
    format_version: int = FORMAT_VERSION
    notes: Mapping = field(default_factory=dict)

    @property
    def atoms(self) -> frozenset:
        return self.domain.atoms

    @property
    def plurals(self) -> frozenset:
        return self.domain.plurals

    @property
    def superposition(self) -> Mapping:
        return self.domain.superposition


def _event_out(e: Any) -> Any:
    if isinstance(e, frozenset):
        return sorted(e, key=_natural)
    return e


def _event_in(x: Any) -> Any:
    return frozenset(x) if isinstance(x, list) else x


def domain_to_json(doc: DomainDocument) -> dict:
    dom = doc.domain
    out = {
        "format_version": doc.format_version,
        "atoms": sorted(dom.atoms, key=_natural),
        "plurals": [_event_out(p) for p in sorted_events(dom.plurals)],
        "superposition": {a: sorted(t, key=_natural) for a, t in dom.superposition.items()},
        "verbs": {
            name: {
                "extension": [_event_out(e) for e in sorted_events(v.extension)],
                "agents": sorted(v.agents),
                "themes": sorted(v.themes),
                "subevents": list(v.subevents),
            }
            for name, v in doc.verbs.items()
        },
        "individuals": sorted(doc.individuals.individuals),
    }
    if doc.notes:
        out["notes"] = dict(doc.notes)
    return out


def _close_over(atoms: list) -> list:
    if len(atoms) > MAX_CLOSURE_ATOMS:
        raise ClosureTooLarge(
            f"close_over of {len(atoms)} atoms exceeds the bound of {MAX_CLOSURE_ATOMS}",
            location="/plurals/close_over",
        )
    return [frozenset(c) for k in range(2, len(atoms) + 1) for c in combinations(atoms, k)]


def parse_domain(data: bytes | str) -> DomainDocument:
    """Parse and validate an event-domain document."""
    obj = _load(data, "domain.schema.json")
    atoms = frozenset(obj["atoms"])
    raw = obj.get("plurals", [])
    plurals = _close_over(raw["close_over"]) if isinstance(raw, dict) else [frozenset(p) for p in raw]
    for i, p in enumerate(plurals):
        missing = sorted(p - atoms)
        if missing:
            raise UnresolvedReference(f"plural uses unknown atoms {missing!r}", location=f"/plurals/{i}")
    sup = obj.get("superposition", {})
    for a, targets in sup.items():
        for t in [a, *targets]:
            if t not in atoms:
                raise UnresolvedReference(f"unknown atom {t!r}", location=f"/superposition/{a}")
    try:
        dom = EventDomain(atoms, plurals, sup)
    except InvalidStructure as e:
        raise ParseError(str(e)) from None
    individuals = IndividualDomain(obj.get("individuals", []))
    verbs = {}
    for name, v in obj.get("verbs", {}).items():
        loc = f"/verbs/{name}"
        ext = frozenset(_event_in(e) for e in v.get("extension", []))
        if not ext <= dom.all_events:
            raise UnresolvedReference("extension has events outside the domain", location=loc)
        roles = set(v.get("agents", [])) | set(v.get("themes", []))
        if not roles <= individuals.individuals:
            raise UnresolvedReference(f"unknown individuals {sorted(roles - individuals.individuals)!r}", location=loc)
        verbs[name] = VerbMeaning(name, ext, v.get("agents", []), v.get("themes", []), v.get("subevents", []))
    for name, v in verbs.items():
        for u in v.subevents:
            if u not in verbs:
                raise UnresolvedReference(f"unknown subevent verb {u!r}", location=f"/verbs/{name}/subevents")
    return DomainDocument(dom, verbs, individuals, obj["format_version"], obj.get("notes", {}))


# -- shipped fixtures ---------------------------------------------------------


def fixture_path(name: str):
    """Path-like handle to a shipped data file."""
    return resources.files("pluract.data").joinpath(name)


def load_fixture(name: str) -> LexiconDocument | DomainDocument:
    data = fixture_path(name).read_bytes()
    return parse_domain(data) if name.endswith(".domain.json") else parse_lexicon(data)
