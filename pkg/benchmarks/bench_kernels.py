"""Time the compiled scan kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N]

Each row runs one kernel on the inputs an instrumented run at that size
feeds it, on both backends, and checks that results and counts agree.
"""

import argparse
import timeit

from pluract import kernels
from pluract.profiler import IP_VERB_ATOMS, generate_event_domain, generate_form_input
from pluract.semantics import sorted_events
from pluract.structures import sorted_pairs, sorted_vertices


def cases():
    for V in (64, 256, 1024):
        w = generate_form_input(V).word
        verts = sorted_vertices(w.phon.vertices)
        dom = sorted_pairs(w.phon.dominance)
        corr = sorted_pairs(w.correspondence)
        yield f"pairs_within V={V}", "pairs_within", (dom, verts)
        yield f"members_in_pairs V={V}", "members_in_pairs", (verts, corr, 0)
    for E in (512, 2048):
        g = generate_event_domain(IP_VERB_ATOMS, E - (2**IP_VERB_ATOMS - 1))
        evs = sorted_events(g.domain.all_events)
        phase = g.verbs["v-phase"]
        yield f"sps_scan E={E}", "sps_scan", (evs, evs, g.domain.superposition, phase.extension, 2)
    for A in (12, 16):
        yield f"powerset A={A}", "powerset", ([f"e{i}" for i in range(A)],)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'case':<26}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn, argv in cases():
        times, outs = {}, []
        for name, mod in backends.items():
            f = getattr(mod, fn)
            outs.append(f(*argv))
            times[name] = min(timeit.repeat(lambda: f(*argv), number=1, repeat=args.repeat))
        assert all(o == outs[0] for o in outs), f"backends disagree on {label}"
        speed = f"{times['python'] / times['compiled']:.1f}x" if "compiled" in times else "-"
        print(f"{label:<26}" + "".join(f"{t * 1000:>10.2f}ms" for t in times.values()) + f"{speed:>10}")


if __name__ == "__main__":
    main()
