"""Regenerate the shipped fixture files under src/pluract/data/.

The structures below are transcribed by hand; entries flagged
``reconstructed`` were authored here because only surface strings (or only
part of the structure) are attested.  Run from the repository root:

    python scripts/build_fixtures.py
"""

from pathlib import Path

from pluract.derivation import CopyRule, Infix, Pins, ReduplicantTemplate
from pluract.lexicon import DomainDocument, LexiconDocument, StrategyBinding, serialize
from pluract.semantics import EventDomain, IndividualDomain, VerbMeaning
from pluract.structures import QVertex, StructureGraph, WordForm

DATA = Path(__file__).resolve().parents[1] / "src" / "pluract" / "data"

TS = "t͡s"  # t͡s
SIGMA = "σ"  # σ
GLOTTAL = "ʔ"  # ʔ


def g(vertices, labels, dominance, precedence, naming):
    return StructureGraph(frozenset(vertices), frozenset(labels), frozenset(dominance), frozenset(precedence), frozenset(naming))


def tree(spec, start):
    """Build a graph from nested (label, [children]) tuples, numbering depth-first."""
    V, D, P, N = [], [], [], []
    counter = [start]

    def walk(node, parent):
        label, kids = node
        v = counter[0]
        counter[0] += 1
        V.append(v)
        N.append((v, label))
        if parent is not None:
            D.append((parent, v))
        ids = [walk(k, v) for k in kids]
        P.extend(zip(ids, ids[1:]))
        return v

    walk(spec, None)
    return g(V, {lab for _, lab in N}, D, P, N), V


# -- stick ----------------------------------------------------------------------

stick = WordForm(
    g(
        range(1, 11),
        {"Pw", SIGMA, "O", "R", "N", "C", "s", "t", "ɪ", "k"},
        {(1, 2), (2, 3), (2, 4), (3, 7), (3, 8), (4, 5), (4, 6), (5, 9), (6, 10)},
        {(3, 4), (5, 6), (7, 8)},
        {(1, "Pw"), (2, SIGMA), (3, "O"), (4, "R"), (5, "N"), (6, "C"), (7, "s"), (8, "t"), (9, "ɪ"), (10, "k")},
    ),
    g({100, 101}, {"Mw", "Mst"}, {(100, 101)}, set(), {(100, "Mw"), (101, "Mst")}),
    {(1, 100), (7, 101), (8, 101), (9, 101), (10, 101)},
)
suffix_s = WordForm(
    g({20}, {"z"}, set(), set(), {(20, "z")}),
    g({120}, {"Af"}, set(), set(), {(120, "Af")}),
    {(20, 120)},
)
stick_doc = LexiconDocument(
    word_forms={"stick": stick},
    affixes={"z": suffix_s},
    strategies={"suffix-z": StrategyBinding("affix", "suffix", entry="stick", affix="z")},
    notes={"z": {"reconstructed": True, "comment": "one-segment suffix used to exercise affixation"}},
)

# -- tsix -------------------------------------------------------------------

tsix_phon = g(
    range(9),
    {"Pw", SIGMA, "O", "R", "N", "C", TS, "i", "x"},
    {(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (3, 6), (5, 7), (6, 8)},
    {(2, 3), (5, 6)},
    {(0, "Pw"), (1, SIGMA), (2, "O"), (3, "R"), (4, TS), (5, "N"), (6, "C"), (7, "i"), (8, "x")},
)
tsix = WordForm(
    tsix_phon,
    g({100}, {"Mst"}, set(), set(), {(100, "Mst")}),
    {(v, 100) for v in range(9)},
)
ca = ReduplicantTemplate(
    g(
        {0, 1, 2, 3, 5, 6, 7, 8},
        {"Pw", SIGMA, "O", "R", "N", "C", "a", GLOTTAL},
        {(0, 1), (1, 2), (1, 3), (3, 5), (3, 6), (5, 7), (6, 8)},
        {(2, 3), (5, 6)},
        {(0, "Pw"), (1, SIGMA), (2, "O"), (3, "R"), (5, "N"), (6, "C"), (7, "a"), (8, GLOTTAL)},
    ),
    g({200}, {"R"}, set(), set(), {(200, "R")}),
    {(0, 200), (7, 200), (8, 200)},
    CopyRule("O", "O"),
)
loj_phon, loj_v = tree((SIGMA, [("O", [("l", [])]), ("R", [("N", [("ö", [])]), ("C", [("j", [])])])]), 10)
loj = WordForm(
    loj_phon,
    g({110}, {"PLRCT"}, set(), set(), {(110, "PLRCT")}),
    {(v, 110) for v in loj_v},
)
tsix_doc = LexiconDocument(
    word_forms={"tsix": tsix},
    affixes={"loj": loj},
    templates={"ca": ca},
    strategies={
        "internal": StrategyBinding(
            "partial-redup",
            "suffix",
            entry="tsix",
            base_vertex=100,
            template="ca",
            pins=Pins(copies={4: 4}, phon_root=300, morph_root=400),
        ),
        "external": StrategyBinding("affix", "suffix", entry="tsix", affix="loj"),
    },
    notes={
        "tsix": {"reconstructed": True, "comment": "whole word taken as the uninflected root; every vertex corresponds to the stem"},
        "loj": {"reconstructed": True, "comment": "suffix without the stem-copied vowel that precedes it on the surface"},
    },
)

# -- tsix expected outputs -----------------------------------------------------

red = WordForm(
    g(
        range(9),
        {"Pw", SIGMA, "O", "R", "N", "C", "a", GLOTTAL, TS},
        {(0, 1), (1, 2), (1, 3), (3, 5), (3, 6), (5, 7), (6, 8), (2, 4)},
        {(2, 3), (5, 6)},
        {(0, "Pw"), (1, SIGMA), (2, "O"), (3, "R"), (5, "N"), (6, "C"), (7, "a"), (8, GLOTTAL), (4, TS)},
    ),
    ca.morph_unit,
    ca.partial_correspondence,
)


def qualify(w, tag, keep=()):
    pm = {v: QVertex(v, tag) for v in w.phon.vertices if v not in keep}
    return w.relabel(pm, {})


bs_q, red_q = qualify(tsix, "Bs"), qualify(red, "Red")
B0, R0 = QVertex(0, "Bs"), QVertex(0, "Red")
w2 = WordForm(
    g(
        bs_q.phon.vertices | red_q.phon.vertices | {300},
        bs_q.phon.labels | red_q.phon.labels,
        bs_q.phon.dominance | red_q.phon.dominance | {(300, B0), (300, R0)},
        bs_q.phon.precedence | red_q.phon.precedence | {(B0, R0)},
        bs_q.phon.naming | red_q.phon.naming | {(300, "Pw")},
    ),
    g(
        {100, 200, 400},
        {"Mst", "R", "Mw"},
        {(400, 100), (400, 200)},
        {(100, 200)},
        {(100, "Mst"), (200, "R"), (400, "Mw")},
    ),
    bs_q.correspondence | red_q.correspondence | {(300, 400)},
)
# laid out exactly as `pluract derive-form --lexicon tsix.json --strategy internal` writes it
expected_doc = LexiconDocument(
    word_forms={"tsix-internal": w2},
    affixes={"tsix-internal-reduplicant": red},
)

# -- Karuk ikxip -----------------------------------------------------------------

ikxip_phon, ikxip_v = tree(
    ("Pw", [
        (SIGMA, [("R", [("N", [("i", [])]), ("C", [("k", [])])])]),
        (SIGMA, [("O", [("x", [])]), ("R", [("N", [("i", [])]), ("C", [("p", [])])])]),
    ]),
    0,
)
# vertices 0 Pw; 1-6 first syllable; 7-14 second syllable
ikxip = WordForm(
    ikxip_phon,
    g({100, 101, 102}, {"Mw", "Pfx", "Mst"}, {(100, 101), (100, 102)}, {(101, 102)}, {(100, "Mw"), (101, "Pfx"), (102, "Mst")}),
    {(0, 100)} | {(v, 101) for v in range(1, 7)} | {(v, 102) for v in range(7, 15)},
)
va_phon, va_v = tree((SIGMA, [("O", [("v", [])]), ("R", [("N", [("a", [])])])]), 30)
va = WordForm(va_phon, g({130}, {"PLRCT"}, set(), set(), {(130, "PLRCT")}), {(v, 130) for v in va_v})
karuk_doc = LexiconDocument(
    word_forms={"ikxip": ikxip},
    affixes={"va": va},
    strategies={
        "internal": StrategyBinding("total-redup", "suffix", entry="ikxip", base_vertex=102),
        "external": StrategyBinding("affix", "suffix", entry="ikxip", affix="va"),
    },
    notes={
        "ikxip": {"reconstructed": True, "comment": "prosodic parse ik.xip with root xip; final vowels of the surface form are not modelled"},
        "va": {"reconstructed": True},
    },
)

# -- Yurok menoot / chyuuk'wen ----------------------------------------------------

menoot_phon, _ = tree(
    ("Pw", [
        (SIGMA, [("O", [("m", [])]), ("R", [("N", [("e", [])])])]),
        (SIGMA, [("O", [("n", [])]), ("R", [("N", [("oo", [])]), ("C", [("t", [])])])]),
    ]),
    0,
)
menoot = WordForm(
    menoot_phon,
    g({100}, {"Mst"}, set(), set(), {(100, "Mst")}),
    {(v, 100) for v in menoot_phon.vertices},
)
chy_phon, chy_v = tree(
    ("Pw", [
        (SIGMA, [("O", [("chy", [])]), ("R", [("N", [("uu", [])]), ("C", [("k'", [])])])]),
        (SIGMA, [("O", [("w", [])]), ("R", [("N", [("e", [])]), ("C", [("n", [])])])]),
    ]),
    0,
)
chyuukwen = WordForm(
    chy_phon,
    g({100}, {"Mst"}, set(), set(), {(100, "Mst")}),
    {(v, 100) for v in chy_phon.vertices},
)
eg_phon, eg_v = tree(("R", [("N", [("e", [])]), ("C", [("g", [])])]), 40)
eg = WordForm(eg_phon, g({140}, {"PLRCT"}, set(), set(), {(140, "PLRCT")}), {(v, 140) for v in eg_v})
yurok_doc = LexiconDocument(
    word_forms={"menoot": menoot, "chyuukwen": chyuukwen},
    affixes={"eg": eg},
    strategies={
        "internal": StrategyBinding("total-redup", "prefix", entry="menoot", base_vertex=100),
        "external": StrategyBinding("affix", Infix(2), entry="chyuukwen", affix="eg"),
    },
    notes={
        "menoot": {"reconstructed": True, "comment": "syllabified me.noot"},
        "chyuukwen": {"reconstructed": True, "comment": "syllabified chyuuk'.wen; the infix attaches after the first onset"},
        "eg": {"reconstructed": True},
    },
)

# -- event domains -------------------------------------------------------------

sit_atoms = {"s1", "s2", "s3", "m1", "m2", "m3", "m4", "a1"}
sit_plurals = [frozenset(p) for p in ({"s1", "s2"}, {"s1", "s3"}, {"s2", "s3"}, {"s1", "s2", "s3"})]
sit_doc = DomainDocument(
    EventDomain(sit_atoms, sit_plurals, {"a1": {"m1", "m2"}, "s3": {"m3", "m4"}}),
    {
        "sit": VerbMeaning("sit", {"s1", "s2", "s3", *sit_plurals}, {"speaker"}, set(), ("sit-motion",)),
        "sit-motion": VerbMeaning("sit-motion", {"m1", "m2", "m3", "m4"}, {"speaker"}, set(), ()),
    },
    IndividualDomain({"speaker", "chair"}),
    notes={
        "reconstructed": True,
        "comment": (
            "a1 is the repeated motion of sitting without sitting down: superimposed over two "
            "sit-motion events and not itself a sitting event. s3 is a sitting event that also "
            "involved repeated motion."
        ),
    },
)
kiss_doc = DomainDocument(
    EventDomain(
        {"k1", "k2", "p1", "p2", "p3", "x1"},
        [frozenset({"k1", "k2"})],
        {"x1": {"p1", "p2"}},
    ),
    {
        "kiss": VerbMeaning("kiss", {"k1", "k2", frozenset({"k1", "k2"})}, {"ann"}, {"bo"}, ("pucker",)),
        "pucker": VerbMeaning("pucker", {"p1", "p2", "p3"}, {"ann"}, set(), ()),
    },
    IndividualDomain({"ann", "bo"}),
    notes={"comment": "two kissing events; x1 is superimposed over two lip-puckering events"},
)

FILES = {
    "stick.json": stick_doc,
    "tsix.json": tsix_doc,
    "tsix_expected.json": expected_doc,
    "karuk.json": karuk_doc,
    "yurok.json": yurok_doc,
    "kaqchikel_sit.domain.json": sit_doc,
    "kiss.domain.json": kiss_doc,
}


def main() -> None:
    for name, doc in FILES.items():
        (DATA / name).write_bytes(serialize(doc))
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
