"""Command-line entry point.

Exit status: 0 on success, 1 when the input is well-formed but fails
validation or a derivation/verdict fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pluract.derivation import PartialRedup, TotalRedup, derive
from pluract.errors import InsufficientSamples, PluractError, SizeError
from pluract.lexicon import LexiconDocument, parse_domain, parse_lexicon, serialize
from pluract.profiler import DEFAULT_SIZES, PROCESSES, run_profile, verdicts_for, verify_theorems
from pluract.semantics import derive_ep, derive_ip, ep_oracle, format_event, ip_oracle, sorted_events

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, data: bytes) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def cmd_derive_form(args) -> int:
    doc = parse_lexicon(_read(args.lexicon))
    if args.strategy not in doc.strategies:
        raise UsageError(f"no strategy named {args.strategy!r}; known: {', '.join(sorted(doc.strategies)) or 'none'}")
    entry = args.entry or doc.strategies[args.strategy].entry
    if entry is None:
        raise UsageError("--entry is required for a strategy without a default entry")
    if entry not in doc.word_forms:
        raise UsageError(f"no word form named {entry!r}")
    w = doc.word_forms[entry]
    strategy = doc.strategy(args.strategy)
    d = derive(w, strategy)
    name = f"{entry}-{args.strategy}"
    affixes = {f"{name}-reduplicant": d.affix} if isinstance(strategy, (TotalRedup, PartialRedup)) else {}
    _write(args.output, serialize(LexiconDocument(word_forms={name: d.result}, affixes=affixes)))
    _err(
        f"{entry} -> {name}: phonological vertices {len(w.phon.vertices)} -> {len(d.result.phon.vertices)}, "
        f"morphological vertices {len(w.morph.vertices)} -> {len(d.result.morph.vertices)}"
    )
    return EXIT_OK


def cmd_derive_meaning(args) -> int:
    doc = parse_domain(_read(args.domain))
    if args.verb not in doc.verbs:
        _err(f"undefined verb {args.verb!r}")
        return EXIT_FAIL
    v = doc.verbs[args.verb]
    if args.kind == "ep":
        events = derive_ep(v)
        reference = ep_oracle(v, doc.domain) if args.oracle else None
    else:
        events = derive_ip(v, doc.domain, doc.verbs)
        reference = ip_oracle(v, doc.domain, doc.verbs) if args.oracle else None
    for e in sorted_events(events):
        print(format_event(e))
    if reference is not None:
        if reference != events:
            _err(f"oracle disagrees: {len(events)} derived, {len(reference)} by definition")
            return EXIT_FAIL
        _err(f"oracle agrees ({len(events)} events)")
    return EXIT_OK


def cmd_validate(args) -> int:
    if bool(args.lexicon) == bool(args.domain):
        raise UsageError("give exactly one of --lexicon or --domain")
    if args.lexicon:
        doc = parse_lexicon(_read(args.lexicon))
        print(f"{args.lexicon}: valid ({len(doc.word_forms)} word forms, {len(doc.affixes)} affixes, "
              f"{len(doc.templates)} templates, {len(doc.strategies)} strategies)")
    else:
        dom = parse_domain(_read(args.domain))
        print(f"{args.domain}: valid ({dom.domain.size} events, {len(dom.verbs)} verbs)")
    return EXIT_OK


def parse_sizes(text: str) -> dict:
    """``"V=8,16;A=6,7"`` -> ``{"V": (8, 16), "A": (6, 7)}``."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, sep, values = part.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULT_SIZES:
            raise UsageError(f"bad size spec {part!r}; expected e.g. V=8,16,32")
        try:
            out[key] = tuple(int(x) for x in values.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"bad size values in {part!r}") from None
        if not out[key]:
            raise UsageError(f"no sizes given for {key}")
    return out


def cmd_profile(args) -> int:
    processes = args.process or list(PROCESSES)
    sizes = parse_sizes(args.sizes) if args.sizes else None
    try:
        report = run_profile(processes, sizes, args.seed)
        verdicts = verify_theorems(report, verdicts_for(processes))
    except (SizeError, InsufficientSamples) as e:
        raise UsageError(str(e)) from None
    _write(args.output, report.to_csv().encode("utf-8"))
    for v in verdicts:
        _err(v.line())
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pluract", description="Derive and profile pluractional forms and meanings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("derive-form", help="derive a pluractional word form from a lexicon entry")
    f.add_argument("--lexicon", required=True)
    f.add_argument("--strategy", required=True)
    f.add_argument("--entry")
    f.add_argument("--output")
    f.set_defaults(run=cmd_derive_form)

    m = sub.add_parser("derive-meaning", help="list the pluractional events of a verb")
    m.add_argument("--domain", required=True)
    m.add_argument("--verb", required=True)
    m.add_argument("--kind", required=True, choices=("ep", "ip"))
    m.add_argument("--oracle", action="store_true", help="also evaluate the definition directly and compare")
    m.set_defaults(run=cmd_derive_meaning)

    v = sub.add_parser("validate", help="validate a lexicon or domain file")
    v.add_argument("--lexicon")
    v.add_argument("--domain")
    v.set_defaults(run=cmd_validate)

    r = sub.add_parser("profile", help="count operations over size sweeps and check growth")
    r.add_argument("--process", action="append", choices=PROCESSES)
    r.add_argument("--sizes", help='e.g. "V=8,16,32,64;A=6,7,8,9;E=256,512,1024,2048"')
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--output")
    r.set_defaults(run=cmd_profile)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as e:
        _err(str(e))
        return EXIT_USAGE
    except PluractError as e:
        _err(f"error: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
