# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same results, same counts."""

cdef frozenset _EMPTY = frozenset()


def contains(list seq, x):
    cdef Py_ssize_t n = 0
    for item in seq:
        n += 1
        if item == x:
            return True, n
    return False, n


def pairs_with_member(list pairs, list members, int pos):
    cdef list out = []
    cdef Py_ssize_t checks = 0
    cdef tuple p
    for p in pairs:
        key = p[pos]
        for m in members:
            checks += 1
            if m == key:
                out.append(p)
                break
    return out, checks


def pairs_within(list pairs, list members):
    cdef list out = []
    cdef Py_ssize_t checks = 0
    cdef tuple p
    cdef bint found_a
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


def members_in_pairs(list candidates, list pairs, int pos):
    cdef list out = []
    cdef Py_ssize_t checks = 0
    cdef tuple p
    for c in candidates:
        for p in pairs:
            checks += 1
            if p[pos] == c:
                out.append(c)
                break
    return out, checks


def pairs_with_label(list pairs, label):
    cdef list out = []
    cdef Py_ssize_t checks = 0
    cdef tuple p
    for p in pairs:
        checks += 1
        if p[1] == label:
            out.append(p)
    return out, checks


def powerset(list items):
    cdef Py_ssize_t n = len(items)
    cdef Py_ssize_t mask, i
    cdef list out = []
    cdef list sub
    for mask in range(1 << n):
        sub = []
        for i in range(n):
            if (mask >> i) & 1:
                sub.append(items[i])
        out.append(frozenset(sub))
    return out


def sps_scan(list candidates, list events, dict superposition, extension, Py_ssize_t threshold):
    cdef list hits = []
    cdef Py_ssize_t checks = 0
    cdef Py_ssize_t n_in, n_match
    cdef object targets
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
