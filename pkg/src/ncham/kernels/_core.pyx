# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word kernels; same contracts as ``_fallback``."""

from math import comb


def normal_order(word, ctab):
    cdef dict out = {}
    cdef dict pending = {(tuple(word), 0): 1}
    cdef tuple w, key
    cdef Py_ssize_t n, i
    cdef long a, b, k
    cdef list table = [list(row) for row in ctab]
    while pending:
        key, coeff = pending.popitem()
        w = <tuple>key[0]
        k = key[1]
        n = len(w)
        i = 0
        while i < n - 1 and <long>w[i] <= <long>w[i + 1]:
            i += 1
        if i >= n - 1:
            val = out.get(key, 0) + coeff
            if val:
                out[key] = val
            else:
                out.pop(key, None)
            continue
        a = w[i]
        b = w[i + 1]
        nk = (w[:i] + (b, a) + w[i + 2:], k)
        val = pending.get(nk, 0) + coeff
        if val:
            pending[nk] = val
        else:
            pending.pop(nk, None)
        c = (<list>table[a])[b]
        if c:
            nk = (w[:i] + w[i + 2:], k + 1)
            val = pending.get(nk, 0) + coeff * c
            if val:
                pending[nk] = val
            else:
                pending.pop(nk, None)
    return out


def leibniz_terms(exps):
    cdef list terms = [((), 1)]
    cdef list nxt
    cdef long e, j
    for e in exps:
        nxt = []
        for s, c in terms:
            for j in range(e + 1):
                nxt.append(((<tuple>s) + (j,), c * comb(e, j)))
        terms = nxt
    return terms
