"""Operation-count profiling of the five derivation processes.

Synthetic inputs are generated at a range of sizes, each process is run in
counted mode, and growth curves are fitted to the totals: log-log slopes for
polynomial processes, successive ratios for the exponential one.  The
verdicts compare the measurements with the expected orders of growth.
"""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from pluract.counting import OpCounter
from pluract.derivation import (
    SUFFIX,
    AffixStrategy,
    BaseSpec,
    CopyRule,
    PartialRedup,
    ReduplicantTemplate,
    TotalRedup,
    derive_pluractional_form,
)
from pluract.errors import InsufficientSamples, MissingProcess, SizeError
from pluract.semantics import EventDomain, IndividualDomain, VerbMeaning, derive_ep, derive_ip
from pluract.structures import StructureGraph, WordForm

FORM_PROCESSES = ("affix", "total-redup", "partial-redup")
MEANING_PROCESSES = ("ep", "ip")
PROCESSES = FORM_PROCESSES + MEANING_PROCESSES

DEFAULT_SIZES = {
    "V": (8, 16, 32, 64, 128),
    "A": (6, 7, 8, 9, 10),
    "E": (256, 512, 1024, 2048),
}
#: Largest number of verb atoms a generated domain may close over.
MAX_ATOMS = 16
#: Verb atoms in the domains of the internal-pluractional sweep; the domain
#: grows through distractor atoms only.
IP_VERB_ATOMS = 4

MIN_FORM_SIZE = 6
CSV_COLUMNS = (
    "process", "V", "D", "N", "L", "C", "A", "E",
    "membership_checks", "insertions", "copies", "pair_creations", "total", "wall_time_ms",
)

# -- synthetic word forms -----------------------------------------------------

_ONSETS = ("p", "t", "k", "s", "m", "n", "l", "r", "w", "j", "x", "ʔ")
_VOWELS = ("a", "e", "i", "o", "u", "ɪ")
# syllable vertex budget -> (onset consonants, coda consonants); 5 has no rhyme node
_SHAPES = {5: (1, 0), 6: (1, 0), 7: (2, 0), 8: (1, 1), 9: (2, 1), 10: (2, 2), 11: (3, 2)}


class FormInput(NamedTuple):
    word: WordForm
    base: BaseSpec
    template: ReduplicantTemplate
    affix: WordForm


class _Builder:
    def __init__(self, start: int):
        self.next = start
        self.V: list = []
        self.D: list = []
        self.P: list = []
        self.N: list = []

    def node(self, label: str, parent=None) -> int:
        v = self.next
        self.next += 1
        self.V.append(v)
        self.N.append((v, label))
        if parent is not None:
            self.D.append((parent, v))
        return v

    def seq(self, *vs: int) -> None:
        self.P.extend(zip(vs, vs[1:]))

    def graph(self) -> StructureGraph:
        return StructureGraph(
            frozenset(self.V),
            frozenset(lab for _, lab in self.N),
            frozenset(self.D),
            frozenset(self.P),
            frozenset(self.N),
        )


def _budgets(rest: int) -> list[int]:
    out = []
    while rest >= 14:
        out.append(9)
        rest -= 9
    if rest >= 12:
        out.append(6)
        rest -= 6
    out.append(rest)
    return out


def _syllable(b: _Builder, parent: int, budget: int, rng: random.Random) -> int:
    n_on, n_coda = _SHAPES[budget]
    s = b.node("σ", parent)
    o = b.node("O", s)
    b.seq(*[b.node(rng.choice(_ONSETS), o) for _ in range(n_on)])
    if budget == 5:
        n = b.node("N", s)
        b.node(rng.choice(_VOWELS), n)
        b.seq(o, n)
        return s
    r = b.node("R", s)
    b.seq(o, r)
    n = b.node("N", r)
    b.node(rng.choice(_VOWELS), n)
    if n_coda:
        c = b.node("C", r)
        b.seq(n, c)
        b.seq(*[b.node(rng.choice(_ONSETS), c) for _ in range(n_coda)])
    return s


def generate_form_input(V: int, seed: int = 0) -> FormInput:
    """A one-stem word with ``V`` phonological vertices, plus a template and an affix.

    The syllable shapes depend on ``V`` only; the segments are drawn from
    ``seed``.
    """
    if V < MIN_FORM_SIZE:
        raise SizeError(f"V = {V} is below the minimum of {MIN_FORM_SIZE}")
    rng = random.Random(seed)
    b = _Builder(0)
    pw = b.node("Pw")
    b.seq(*[_syllable(b, pw, budget, rng) for budget in _budgets(V - 1)])
    phon = b.graph()
    mw, mst = V, V + 1
    morph = StructureGraph(
        frozenset({mw, mst}), frozenset({"Mw", "Mst"}), frozenset({(mw, mst)}), frozenset(),
        frozenset({(mw, "Mw"), (mst, "Mst")}),
    )
    corr = {(pw, mw), (pw, mst)} | {(v, mst) for v in phon.vertices if v != pw}
    word = WordForm(phon, morph, frozenset(corr))

    t = _Builder(V + 2)
    t_pw = t.node("Pw")
    t_s = t.node("σ", t_pw)
    t_o = t.node("O", t_s)
    t_r = t.node("R", t_s)
    t.seq(t_o, t_r)
    t_n = t.node("N", t_r)
    t_a = t.node("a", t_n)
    t_c = t.node("C", t_r)
    t.seq(t_n, t_c)
    t_q = t.node("ʔ", t_c)
    red = t.next
    template = ReduplicantTemplate(
        t.graph(),
        StructureGraph(frozenset({red}), frozenset({"R"}), frozenset(), frozenset(), frozenset({(red, "R")})),
        frozenset({(t_pw, red), (t_a, red), (t_q, red)}),
        CopyRule("O", "O"),
    )

    a = _Builder(red + 1)
    a_pw = a.node("Pw")
    a_s = a.node("σ", a_pw)
    a_o = a.node("O", a_s)
    a.node("v", a_o)
    a_r = a.node("R", a_s)
    a.seq(a_o, a_r)
    a.node("a", a.node("N", a_r))
    af = a.next
    affix = WordForm(
        a.graph(),
        StructureGraph(frozenset({af}), frozenset({"PLRCT"}), frozenset(), frozenset(), frozenset({(af, "PLRCT")})),
        frozenset((v, af) for v in a.V),
    )
    return FormInput(word, BaseSpec(mst), template, affix)


# -- synthetic event domains ----------------------------------------------------


class GeneratedDomain(NamedTuple):
    domain: EventDomain
    verb: VerbMeaning
    verbs: Mapping[str, VerbMeaning]
    individuals: IndividualDomain
    distractors: int


def generate_event_domain(A: int, distractors: int = 1, seed: int = 0) -> GeneratedDomain:
    """A verb with ``A`` atoms closed under plurality, plus distractor atoms.

    The verb ``v`` implies the subevent verb ``v-phase``, whose events are the
    distractors.  Some distractors are superimposed over repeated
    ``v-phase`` events and some over repeated ``v`` atoms.
    """
    if A < 1 or A > MAX_ATOMS:
        raise SizeError(f"A = {A} is outside 1..{MAX_ATOMS}")
    if distractors < 0:
        raise SizeError("distractors must be non-negative")
    rng = random.Random(seed)
    verb_atoms = [f"e{i}" for i in range(1, A + 1)]
    extra = [f"d{i}" for i in range(1, distractors + 1)]
    plurals = [
        frozenset(a for i, a in enumerate(verb_atoms) if mask >> i & 1)
        for mask in range(1 << A)
        if bin(mask).count("1") >= 2
    ]
    sup = {}
    for d in extra:
        roll = rng.random()
        if roll < 0.4 and len(extra) >= 3:
            pool = [x for x in extra if x != d]
            sup[d] = frozenset(rng.sample(pool, rng.randint(2, min(3, len(pool)))))
        elif roll < 0.6 and A >= 2:
            sup[d] = frozenset(rng.sample(verb_atoms, 2))
    dom = EventDomain(frozenset(verb_atoms + extra), plurals, sup)
    agents = frozenset({"agent"})
    v = VerbMeaning("v", frozenset(verb_atoms) | frozenset(plurals), agents, frozenset(), ("v-phase",))
    phase = VerbMeaning("v-phase", frozenset(extra), agents, frozenset(), ())
    return GeneratedDomain(dom, v, {"v": v, "v-phase": phase}, IndividualDomain(agents), distractors)


def powerset_bound_check(A: int, E: int) -> tuple[bool, str]:
    """Whether a domain of ``E`` events over ``A`` verb atoms has ``E >= 2**A``."""
    if E >= 2**A:
        return True, "holds"
    if E == 2**A - 1:
        return False, "holds only with ∅ excluded"
    return False, "fails"


# -- instrumented runs ----------------------------------------------------------


def instrumented_run(process: str, data) -> tuple[object, OpCounter]:
    """Run ``process`` in counted mode on a generated input."""
    c = OpCounter()
    if process in FORM_PROCESSES:
        if process == "affix":
            strategy = AffixStrategy(data.affix, SUFFIX)
        elif process == "total-redup":
            strategy = TotalRedup(data.base, SUFFIX)
        else:
            strategy = PartialRedup(data.base, data.template, SUFFIX)
        return derive_pluractional_form(data.word, strategy, c), c
    if process == "ep":
        return derive_ep(data.verb, c), c
    if process == "ip":
        return derive_ip(data.verb, data.domain, data.verbs, c), c
    raise ValueError(f"unknown process {process!r}")


def uninstrumented_run(process: str, data):
    if process in FORM_PROCESSES:
        if process == "affix":
            strategy = AffixStrategy(data.affix, SUFFIX)
        elif process == "total-redup":
            strategy = TotalRedup(data.base, SUFFIX)
        else:
            strategy = PartialRedup(data.base, data.template, SUFFIX)
        return derive_pluractional_form(data.word, strategy)
    if process == "ep":
        return derive_ep(data.verb)
    if process == "ip":
        return derive_ip(data.verb, data.domain, data.verbs)
    raise ValueError(f"unknown process {process!r}")


def form_size_params(w: WordForm) -> dict:
    p = w.phon
    return {"V": len(p.vertices), "D": len(p.dominance), "N": len(p.naming), "L": len(p.labels), "C": len(w.correspondence)}


def domain_size_params(g: GeneratedDomain) -> dict:
    return {"A": len([e for e in g.verb.extension if not isinstance(e, frozenset)]), "E": g.domain.size}


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileSample:
    process: str
    size_params: Mapping[str, int]
    counter: OpCounter
    wall_time: float  # seconds

    def size(self, key: str) -> int:
        return self.size_params[key]


@dataclass(frozen=True)
class FitResult:
    mode: str
    sizes: tuple
    totals: tuple
    slope: float | None = None
    residual: float | None = None
    ratios: tuple = ()


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    measured: str
    samples: tuple  # indices into the report's samples

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.measured}"


@dataclass
class ProfileReport:
    samples: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    sweeps: Mapping[str, Sequence[int]] = field(default_factory=lambda: dict(DEFAULT_SIZES))

    def indices(self, process: str) -> list[int]:
        return [i for i, s in enumerate(self.samples) if s.process == process]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for s in self.samples:
            c = s.counter
            row = [s.process] + [s.size_params.get(k, "") for k in ("V", "D", "N", "L", "C", "A", "E")]
            row += [c.membership_checks, c.insertions, c.copies, c.pair_creations, c.total]
            row.append(f"{s.wall_time * 1000:.3f}")
            w.writerow(row)
        return buf.getvalue()


def fit_growth(points: Iterable[tuple[float, float]], mode: str = "power-law") -> FitResult:
    """Fit (size, total) points.

    ``power-law`` gives the least-squares slope of log(total) against
    log(size) and the root-mean-square residual of that line;
    ``exponential`` gives the ratios between consecutive totals.
    """
    pts = list(points)
    if len(pts) < 4:
        raise InsufficientSamples(f"need at least 4 samples, got {len(pts)}")
    sizes = tuple(p[0] for p in pts)
    totals = tuple(p[1] for p in pts)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InsufficientSamples("sample sizes must be strictly increasing")
    if mode == "exponential":
        return FitResult(mode, sizes, totals, ratios=tuple(b / a for a, b in zip(totals, totals[1:])))
    if mode != "power-law":
        raise ValueError(f"unknown fit mode {mode!r}")
    if min(sizes) <= 0 or min(totals) <= 0:
        raise ValueError("power-law fits need positive sizes and totals")
    x, y = np.log(np.asarray(sizes, float)), np.log(np.asarray(totals, float))
    slope, icpt = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + icpt)) ** 2)))
    slope = float(slope)
    return FitResult(mode, sizes, totals, slope=0.0 if abs(slope) < 1e-12 else slope, residual=resid)


# -- verdicts ------------------------------------------------------------------

#: verdict name -> processes it needs
VERDICTS = {
    "affix-constant": ("affix",),
    "partial-redup-cubic-bound": ("partial-redup",),
    "total-redup-cubic-bound": ("total-redup",),
    "ep-exponential": ("ep",),
    "ip-quadratic": ("ip",),
    "ep-below-ip": ("ep", "ip"),
    "powerset-bound": ("ep",),
}
SLOPE_BOUNDS = {
    "redup": (1.0, 3.3),
    "ep-ratio": (1.8, 2.2),
    "ip": (1.7, 2.3),
    "ep-vs-E": (0.8, 1.2),
}


def verdicts_for(processes: Iterable[str]) -> list[str]:
    """Verdicts whose processes are all among ``processes``."""
    have = set(processes)
    return [name for name, need in VERDICTS.items() if set(need) <= have]


def _redup_verdict(report: ProfileReport, process: str, name: str) -> Verdict:
    idx = [i for i in report.indices(process) if report.samples[i].size("V") in report.sweeps["V"]]
    idx.sort(key=lambda i: report.samples[i].size("V"))
    pts = [(report.samples[i].size("V"), report.samples[i].counter.total) for i in idx]
    fit = fit_growth(pts)
    report.fits[process] = fit
    v0, t0 = pts[0]
    c = t0 / v0**3
    monotone = all(b[1] > a[1] for a, b in zip(pts, pts[1:]))
    bounded = all(t <= c * v**3 for v, t in pts)
    lo, hi = SLOPE_BOUNDS["redup"]
    ok = monotone and bounded and lo <= fit.slope <= hi
    msg = f"slope {fit.slope:.3f} (residual {fit.residual:.3f}), monotone={monotone}, within c*V^3 (c={c:.4g})={bounded}"
    return Verdict(name, ok, msg, tuple(idx))


def _sweep_fit(report: ProfileReport, process: str, key: str, sweep: str, mode: str) -> tuple[FitResult, list[int]]:
    wanted = set(report.sweeps[sweep])
    idx = [i for i in report.indices(process) if report.samples[i].size(key) in wanted]
    if sweep == "A":
        idx = [i for i in idx if report.samples[i].size_params.get("distractors") == 1]
    idx.sort(key=lambda i: report.samples[i].size(key))
    return fit_growth([(report.samples[i].size(key), report.samples[i].counter.total) for i in idx], mode), idx


def verify_theorems(report: ProfileReport, names: Iterable[str] | None = None) -> list[Verdict]:
    """Evaluate the named verdicts (all of them by default) on ``report``."""
    names = list(VERDICTS) if names is None else list(names)
    present = {s.process for s in report.samples}
    for n in names:
        missing = [p for p in VERDICTS[n] if p not in present]
        if missing:
            raise MissingProcess(f"verdict {n!r} needs samples for {', '.join(missing)}")
    out = []
    for n in names:
        if n == "affix-constant":
            idx = report.indices("affix")
            counts = {report.samples[i].counter.as_tuple() for i in idx}
            sizes = [report.samples[i].size("V") for i in idx]
            out.append(Verdict(n, len(counts) == 1, f"{len(counts)} distinct count(s) over V={sizes}", tuple(idx)))
        elif n == "partial-redup-cubic-bound":
            out.append(_redup_verdict(report, "partial-redup", n))
        elif n == "total-redup-cubic-bound":
            out.append(_redup_verdict(report, "total-redup", n))
        elif n == "ep-exponential":
            fit, idx = _sweep_fit(report, "ep", "A", "A", "exponential")
            report.fits["ep-A"] = fit
            lo, hi = SLOPE_BOUNDS["ep-ratio"]
            ok = all(lo <= r <= hi for r in fit.ratios)
            out.append(Verdict(n, ok, "ratios " + ", ".join(f"{r:.3f}" for r in fit.ratios), tuple(idx)))
        elif n == "ip-quadratic":
            fit, idx = _sweep_fit(report, "ip", "E", "E", "power-law")
            report.fits["ip"] = fit
            lo, hi = SLOPE_BOUNDS["ip"]
            out.append(Verdict(n, lo <= fit.slope <= hi, f"slope vs E {fit.slope:.3f} (residual {fit.residual:.3f})", tuple(idx)))
        elif n == "ep-below-ip":
            ep, i_ep = _sweep_fit(report, "ep", "E", "E", "power-law")
            ip, i_ip = _sweep_fit(report, "ip", "E", "E", "power-law")
            report.fits["ep-E"], report.fits["ip"] = ep, ip
            lo, hi = SLOPE_BOUNDS["ep-vs-E"]
            ok = lo <= ep.slope <= hi and ip.slope > ep.slope
            out.append(Verdict(n, ok, f"ep slope vs E {ep.slope:.3f} < ip slope vs E {ip.slope:.3f}", tuple(i_ep + i_ip)))
        elif n == "powerset-bound":
            idx = [i for i, s in enumerate(report.samples) if s.process in MEANING_PROCESSES and s.size_params.get("distractors", 0) >= 1]
            bad = [i for i in idx if not powerset_bound_check(report.samples[i].size("A"), report.samples[i].size("E"))[0]]
            out.append(Verdict(n, not bad and bool(idx), f"E >= 2^A in {len(idx) - len(bad)}/{len(idx)} domains", tuple(idx)))
    report.verdicts = out
    return out


# -- sweeps --------------------------------------------------------------------


def _timed(process: str, data) -> tuple[OpCounter, float]:
    t0 = time.perf_counter()
    _, c = instrumented_run(process, data)
    return c, time.perf_counter() - t0


def _check_sizes(sizes: Mapping[str, Sequence[int]]) -> None:
    for key, values in sizes.items():
        if key not in DEFAULT_SIZES:
            raise SizeError(f"unknown size parameter {key!r}")
        for n in values:
            if key == "V" and n < MIN_FORM_SIZE:
                raise SizeError(f"V = {n} is below the minimum of {MIN_FORM_SIZE}")
            if key == "A" and not 1 <= n <= MAX_ATOMS:
                raise SizeError(f"A = {n} is outside 1..{MAX_ATOMS}")
            if key == "E" and not 2**IP_VERB_ATOMS <= n <= 2**MAX_ATOMS:
                raise SizeError(f"E = {n} is outside {2**IP_VERB_ATOMS}..{2**MAX_ATOMS}")


def _ep_domain_for_E(E: int, seed: int) -> GeneratedDomain:
    A = int(math.floor(math.log2(E)))
    return generate_event_domain(A, E - (2**A - 1), seed)


def run_profile(
    processes: Iterable[str] = PROCESSES,
    sizes: Mapping[str, Sequence[int]] | None = None,
    seed: int = 0,
) -> ProfileReport:
    """Collect samples for ``processes`` over the size sweeps."""
    sweeps = dict(DEFAULT_SIZES)
    if sizes:
        sweeps.update({k: tuple(sorted(set(v))) for k, v in sizes.items()})
    _check_sizes(sweeps)
    wanted = set(processes)
    unknown = wanted - set(PROCESSES)
    if unknown:
        raise ValueError(f"unknown processes {sorted(unknown)!r}")
    processes = [p for p in PROCESSES if p in wanted]
    report = ProfileReport(sweeps=sweeps)

    def add(process: str, params: dict, data) -> None:
        c, t = _timed(process, data)
        report.samples.append(ProfileSample(process, params, c, t))

    for p in processes:
        if p in FORM_PROCESSES:
            for V in sweeps["V"]:
                fi = generate_form_input(V, seed)
                add(p, form_size_params(fi.word), fi)
        elif p == "ep":
            doms = {}
            for A in sweeps["A"]:
                doms[(A, 1)] = generate_event_domain(A, 1, seed)
            for E in sweeps["E"]:
                g = _ep_domain_for_E(E, seed)
                doms.setdefault((len(g.domain.atoms) - g.distractors, g.distractors), g)
            for key in sorted(doms, key=lambda k: doms[k].domain.size):
                g = doms[key]
                add(p, {**domain_size_params(g), "distractors": g.distractors}, g)
        else:
            for E in sweeps["E"]:
                g = generate_event_domain(IP_VERB_ATOMS, E - (2**IP_VERB_ATOMS - 1), seed)
                add(p, {**domain_size_params(g), "distractors": g.distractors}, g)
    return report
