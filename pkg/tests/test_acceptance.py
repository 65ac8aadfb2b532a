"""Acceptance gate: one test per criterion, each with its time budget.

Every test records a PASS/FAIL line; pytest prints them in a closing
section, and running this file directly prints them as well.
"""

import itertools
import random
import time

import pytest

from literals import TSIX_BASE, TSIX_CONCAT_ADDITIONS, TSIX_REDUPLICANT, as_sets
from pluract.counting import OpCounter
from pluract.derivation import build_partial_reduplicant, concatenate, extract_base, qualify_overlap
from pluract.lexicon import (
    DomainDocument,
    LexiconDocument,
    StrategyBinding,
    fixture_path,
    load_fixture,
    parse_domain,
    parse_lexicon,
    serialize,
)
from pluract.profiler import (
    fit_growth,
    generate_event_domain,
    generate_form_input,
    instrumented_run,
)
from pluract.semantics import EventDomain, VerbMeaning, derive_ep, derive_ip, sorted_events
from pluract.structures import graph, validate_structure

RESULTS: dict = {}

V_SWEEP = (8, 16, 32, 64, 128)
A_SWEEP = (6, 7, 8, 9, 10)
E_SWEEP = (256, 512, 1024, 2048)
IP_ATOMS = 4


def record(n, title, ok, detail, elapsed, budget):
    in_time = elapsed < budget
    passed = bool(ok) and in_time
    RESULTS[n] = f"{'PASS' if passed else 'FAIL'}  {n:>2}. {title}: {detail} [{elapsed:.2f}s / {budget:g}s]"
    return passed


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _tsix():
    doc = load_fixture("tsix.json")
    s = doc.strategy("internal")
    w = doc.word_forms["tsix"]
    return doc, s, w


def test_01_reduplicant_fixture():
    with Clock() as clk:
        _, s, w = _tsix()
        red = build_partial_reduplicant(extract_base(w, s.base), s.template, s.pins)
        got = as_sets(red.phon)
        mismatched = [k for k in ("vertices", "labels", "dominance", "precedence", "naming") if got[k] != TSIX_REDUPLICANT[k]]
        if red.morph.vertices != TSIX_REDUPLICANT["morph_vertices"] or red.morph.naming != TSIX_REDUPLICANT["morph_naming"]:
            mismatched.append("morph")
        if red.correspondence != TSIX_REDUPLICANT["correspondence"]:
            mismatched.append("correspondence")
    ok = not mismatched
    detail = "all sets equal" if ok else f"mismatch in {mismatched}"
    assert record(1, "partial reduplicant of tsix", ok, detail, clk.elapsed, 1)


def test_02_concatenation_fixture():
    with Clock() as clk:
        doc, s, w = _tsix()
        red = build_partial_reduplicant(extract_base(w, s.base), s.template, s.pins)
        stem, affix = qualify_overlap(w, red, ("Bs", "Red"))
        w2 = concatenate(stem, affix, s.position, s.pins)
        add = TSIX_CONCAT_ADDITIONS
        checks = {
            "phon vertices": w2.phon.vertices - stem.phon.vertices - affix.phon.vertices == add["phon_vertices"],
            "morph vertices": w2.morph.vertices - stem.morph.vertices - affix.morph.vertices == add["morph_vertices"],
            "phon dominance": w2.phon.dominance - stem.phon.dominance - affix.phon.dominance == add["phon_dominance"],
            "morph dominance": w2.morph.dominance - stem.morph.dominance - affix.morph.dominance == add["morph_dominance"],
            "phon precedence": w2.phon.precedence - stem.phon.precedence - affix.phon.precedence == add["phon_precedence"],
            "morph precedence": w2.morph.precedence - stem.morph.precedence - affix.morph.precedence == add["morph_precedence"],
            "phon naming": w2.phon.naming - stem.phon.naming - affix.phon.naming == add["phon_naming"],
            "morph naming": w2.morph.naming - stem.morph.naming - affix.morph.naming == add["morph_naming"],
            "correspondence": w2.correspondence - stem.correspondence - affix.correspondence == add["correspondence"],
        }
        expected = next(iter(load_fixture("tsix_expected.json").word_forms.values()))
        checks["shipped expectation"] = w2 == expected
    bad = [k for k, v in checks.items() if not v]
    assert record(2, "concatenation of tsix and its reduplicant", not bad,
                  "all additions equal" if not bad else f"mismatch in {bad}", clk.elapsed, 1)


def test_03_base_extraction():
    with Clock() as clk:
        _, s, w = _tsix()
        bs = extract_base(w, s.base)
        got = as_sets(bs.phon)
        bad = [k for k in ("vertices", "dominance", "precedence", "naming") if got[k] != TSIX_BASE[k]]
        labels_ok = TSIX_BASE["labels"] <= bs.phon.labels and bs.phon.used_labels() <= TSIX_BASE["labels"]
        counted = extract_base(w, s.base, OpCounter()) == bs
    ok = not bad and labels_ok and counted
    assert record(3, "base extraction on tsix", ok,
                  f"V/D/Pr/N equal={not bad}, used labels present={labels_ok}, counted mode equal={counted}",
                  clk.elapsed, 1)


def test_04_ep_oracle():
    with Clock() as clk:
        atoms = ["a1", "a2", "a3", "a4"]
        plurals = [frozenset(c) for k in range(2, 5) for c in itertools.combinations(atoms, k)]
        events = atoms + plurals
        dom = EventDomain(atoms, plurals)
        mismatches = 0
        for mask in range(1 << len(events)):
            ext = {e for i, e in enumerate(events) if mask >> i & 1}
            v = VerbMeaning("v", ext)
            v_atoms = [e for e in ext if e in dom.atoms]
            brute = {frozenset(c) for k in range(2, len(v_atoms) + 1) for c in itertools.combinations(v_atoms, k)}
            if derive_ep(v) != brute:
                mismatches += 1
            if mask % 97 == 0 and derive_ep(v, OpCounter()) != brute:
                mismatches += 1
        law = all(len(derive_ep(VerbMeaning("v", atoms[:A]))) == 2**A - A - 1 for A in range(5))
    ok = mismatches == 0 and law
    assert record(4, "EP equals brute force", ok,
                  f"{1 << len(events)} extensions, {mismatches} mismatches, |EP| = 2^A - A - 1 for A<=4: {law}",
                  clk.elapsed, 10)


def _random_domain(rng):
    n = rng.randint(1, 6)
    atoms = [f"a{i}" for i in range(n)]
    plurals = {frozenset(rng.sample(atoms, rng.randint(2, n))) for _ in range(rng.randint(0, 4))} if n >= 2 else set()
    sup = {a: frozenset(rng.sample(atoms, rng.randint(1, n))) for a in atoms if rng.random() < 0.6}
    dom = EventDomain(atoms, plurals, sup)
    events = sorted_events(dom.all_events)
    subs = tuple(f"u{i}" for i in range(rng.randint(0, 2)))
    verbs = {u: VerbMeaning(u, {e for e in events if rng.random() < 0.6}) for u in subs}
    verbs["v"] = VerbMeaning("v", {e for e in events if rng.random() < 0.6}, subevents=subs)
    return dom, verbs


def _sps_by_definition(atom, verb, dom):
    targets = dom.superposition.get(atom, frozenset())
    return len(targets) >= 2 and all(t in verb.extension for t in targets)


def test_05_ip_oracle_and_sit_scenario():
    with Clock() as clk:
        rng = random.Random(20240501)
        mismatches = 0
        for _ in range(200):
            dom, verbs = _random_domain(rng)
            v = verbs["v"]
            expected = set()
            for a in dom.atoms:
                if a in v.extension and _sps_by_definition(a, v, dom):
                    expected.add(a)
                if any(_sps_by_definition(a, verbs[u], dom) for u in v.subevents):
                    expected.add(a)
            if derive_ip(v, dom, verbs) != expected or derive_ip(v, dom, verbs, OpCounter()) != expected:
                mismatches += 1
        sit_doc = load_fixture("kaqchikel_sit.domain.json")
        sit = sit_doc.verbs["sit"]
        ip = derive_ip(sit, sit_doc.domain, sit_doc.verbs)
        outside = sorted(ip - sit.extension)
        overlap = bool(ip & sit.extension) and bool(outside)
    ok = mismatches == 0 and overlap and "a1" in outside
    assert record(5, "IP equals definition; sit overlaps but is not a subset", ok,
                  f"200 domains, {mismatches} mismatches; IP(sit) outside extension: {outside}", clk.elapsed, 10)


def test_06_affixation_constant():
    with Clock() as clk:
        counts = {V: instrumented_run("affix", generate_form_input(V))[1].as_tuple() for V in V_SWEEP}
    ok = len(set(counts.values())) == 1
    assert record(6, "affixation count independent of V", ok, f"counts {sorted(set(counts.values()))}", clk.elapsed, 5)


def test_07_reduplication_cubic_bound():
    with Clock() as clk:
        parts = []
        ok = True
        for process in ("total-redup", "partial-redup"):
            pts = [(V, instrumented_run(process, generate_form_input(V))[1].total) for V in V_SWEEP]
            c = pts[0][1] / pts[0][0] ** 3
            monotone = all(b[1] > a[1] for a, b in zip(pts, pts[1:]))
            bounded = all(t <= c * V**3 for V, t in pts)
            slope = fit_growth(pts).slope
            ok &= monotone and bounded and 1.0 <= slope <= 3.3
            parts.append(f"{process} slope {slope:.3f} monotone={monotone} bounded={bounded}")
    assert record(7, "reduplication bounded by c*V^3", ok, "; ".join(parts), clk.elapsed, 30)


def test_08_ep_doubling():
    with Clock() as clk:
        pts = [(A, instrumented_run("ep", generate_event_domain(A, 1))[1].total) for A in A_SWEEP]
        ratios = fit_growth(pts, "exponential").ratios
    ok = all(1.8 <= r <= 2.2 for r in ratios)
    assert record(8, "EP count ratios per extra atom", ok, "ratios " + ", ".join(f"{r:.3f}" for r in ratios),
                  clk.elapsed, 30)


def test_09_ip_quadratic_above_ep():
    with Clock() as clk:
        ip_pts, ep_pts = [], []
        for E in E_SWEEP:
            g = generate_event_domain(IP_ATOMS, E - (2**IP_ATOMS - 1))
            assert g.domain.size == E
            ip_pts.append((E, instrumented_run("ip", g)[1].total))
            A = E.bit_length() - 1
            h = generate_event_domain(A, E - (2**A - 1))
            assert h.domain.size == E and h.distractors == 1
            ep_pts.append((E, instrumented_run("ep", h)[1].total))
        ip_slope, ep_slope = fit_growth(ip_pts).slope, fit_growth(ep_pts).slope
    ok = 1.7 <= ip_slope <= 2.3 and 0.8 <= ep_slope <= 1.2 and ip_slope > ep_slope
    assert record(9, "IP slope vs E above EP slope vs E", ok, f"IP {ip_slope:.3f}, EP {ep_slope:.3f}", clk.elapsed, 120)


def test_10_powerset_bound():
    with Clock() as clk:
        failures, n = [], 0
        for A in range(1, 13):
            for d in (1, 2, 5, 17):
                g = generate_event_domain(A, d, seed=A * 31 + d)
                n += 1
                if g.domain.size < 2**A:
                    failures.append((A, d, g.domain.size))
    assert record(10, "E >= 2^A with distractors", not failures, f"{n} domains, failures {failures}", clk.elapsed, 5)


INVALID = {
    "cycle": graph(range(3), ["a"], [(1, 2), (2, 1)], [], [(v, "a") for v in range(3)]),
    "multiple roots": graph(range(2), ["a"], [], [], [(0, "a"), (1, "a")]),
    "non-sibling precedence": graph(range(4), ["a"], [(0, 1), (0, 2), (1, 3)], [(1, 2), (3, 2)],
                                    [(v, "a") for v in range(4)]),
    "duplicate naming": graph(range(2), ["a", "b"], [(0, 1)], [], [(0, "a"), (1, "a"), (1, "b")]),
}


def test_11_structural_validation():
    with Clock() as clk:
        found = {kind: validate_structure(g).kinds for kind, g in INVALID.items()}
    bad = {k: sorted(v) for k, v in found.items() if v != {k}}
    assert record(11, "invalid fixtures give exactly their violation", not bad,
                  "all four exact" if not bad else f"unexpected {bad}", clk.elapsed, 1)


def _generated_document(seed):
    rng = random.Random(seed)
    if seed % 2:
        g = generate_event_domain(rng.randint(1, 6), rng.randint(0, 8), seed)
        return DomainDocument(g.domain, dict(g.verbs), g.individuals)
    fi = generate_form_input(rng.randint(6, 80), seed)
    return LexiconDocument(
        word_forms={"w": fi.word},
        affixes={"af": fi.affix},
        templates={"t": fi.template},
        strategies={"red": StrategyBinding("partial-redup", "suffix", entry="w", base_vertex=fi.base.base_vertex,
                                           template="t"),
                    "af": StrategyBinding("affix", "prefix", entry="w", affix="af")},
    )


def test_12_round_trip():
    with Clock() as clk:
        failures = []
        names = ["stick.json", "tsix.json", "tsix_expected.json", "karuk.json", "yurok.json",
                 "kaqchikel_sit.domain.json", "kiss.domain.json"]
        for name in names:
            raw = fixture_path(name).read_bytes()
            doc = load_fixture(name)
            parse = parse_domain if name.endswith(".domain.json") else parse_lexicon
            if serialize(doc) != raw or parse(serialize(doc)) != doc:
                failures.append(name)
        for seed in range(100):
            doc = _generated_document(seed)
            raw = serialize(doc)
            parse = parse_domain if isinstance(doc, DomainDocument) else parse_lexicon
            back = parse(raw)
            if back != doc or serialize(back) != raw:
                failures.append(seed)
    assert record(12, "parse and serialize are inverse", not failures,
                  f"{len(names)} fixtures + 100 generated, failures {failures}", clk.elapsed, 10)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
