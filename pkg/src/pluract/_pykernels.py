"""Pure-Python scan kernels.

Each kernel performs a literal linear scan and returns its result together
with the number of element comparisons it made.  ``_ckernels.pyx`` is a
line-for-line compiled twin; both must return identical counts.
"""

_EMPTY = frozenset()


def contains(seq, x):
    n = 0
    for item in seq:
        n += 1
        if item == x:
            return True, n
    return False, n


def pairs_with_member(pairs, members, pos):
    """Pairs whose element at ``pos`` occurs in ``members``."""
    out = []
    checks = 0
    for p in pairs:
        key = p[pos]
        for m in members:
            checks += 1
            if m == key:
                out.append(p)
                break
    return out, checks


def pairs_within(pairs, members):
    """Pairs with both elements in ``members``."""
    out = []
    checks = 0
    for p in pairs:
        a = p[0]
        b = p[1]
        found_a = False
        for m in members:
            checks += 1
            if m == a:
                found_a = True
                break
        if not found_a:
            continue
        for m in members:
            checks += 1
            if m == b:
                out.append(p)
                break
    return out, checks


def members_in_pairs(candidates, pairs, pos):
    """Candidates equal to the ``pos`` element of some pair."""
    out = []
    checks = 0
    for c in candidates:
        for p in pairs:
            checks += 1
            if p[pos] == c:
                out.append(c)
                break
    return out, checks


def pairs_with_label(pairs, label):
    out = []
    checks = 0
    for p in pairs:
        checks += 1
        if p[1] == label:
            out.append(p)
    return out, checks


def powerset(items):
    """All subsets of ``items`` as frozensets, ordered by bitmask."""
    n = len(items)
    out = []
    for mask in range(1 << n):
        out.append(frozenset([items[i] for i in range(n) if mask >> i & 1]))
    return out


def sps_scan(candidates, events, superposition, extension, threshold):
    """Atomic candidates superimposed over >= threshold events, all in ``extension``.

    Every atomic candidate is compared against every event of the domain.
    """
    hits = []
    checks = 0
    for y in candidates:
        checks += 1
        if isinstance(y, frozenset):
            continue
        checks += 1
        targets = superposition.get(y, _EMPTY)
        n_in = 0
        n_match = 0
        for z in events:
            checks += 1
            if z in targets:
                n_in += 1
                checks += 1
                if z in extension:
                    n_match += 1
        if n_in >= threshold and n_match == n_in:
            hits.append(y)
    return hits, checks
