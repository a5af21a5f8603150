"""Pure-Python word kernels; reference behaviour for the compiled core."""

from math import comb


def normal_order(word, ctab):
    """Rewrite ``word`` into non-decreasing words with ``u_i u_j -> u_j u_i + h c_ij``.

    ``ctab`` is an integer matrix (tuple of tuples).  Returns
    ``{(normal_word, k): coeff}`` where ``k`` counts applied commutators, so the
    term stands for ``coeff * h**k * normal_word`` (times the scale the caller
    divided out of ``ctab``).  Identical pending words are merged, which keeps
    the work list far below the raw number of rewrite paths.
    """
    out = {}
    pending = {(tuple(word), 0): 1}
    while pending:
        (w, k), coeff = pending.popitem()
        n = len(w)
        i = 0
        while i < n - 1 and w[i] <= w[i + 1]:
            i += 1
        if i >= n - 1:
            key = (w, k)
            val = out.get(key, 0) + coeff
            if val:
                out[key] = val
            else:
                out.pop(key, None)
            continue
        a, b = w[i], w[i + 1]
        swapped = (w[:i] + (b, a) + w[i + 2:], k)
        val = pending.get(swapped, 0) + coeff
        if val:
            pending[swapped] = val
        else:
            pending.pop(swapped, None)
        c = ctab[a][b]
        if c:
            shorter = (w[:i] + w[i + 2:], k + 1)
            val = pending.get(shorter, 0) + coeff * c
            if val:
                pending[shorter] = val
            else:
                pending.pop(shorter, None)
    return out


def normal_order_random(word, ctab, rng):
    """Same rewriting, but each step rewrites a randomly chosen descent.

    Kept deliberately naive (no merging) as an independent check of
    confluence.
    """
    out = {}
    stack = [(tuple(word), 0, 1)]
    while stack:
        w, k, coeff = stack.pop()
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            out[(w, k)] = out.get((w, k), 0) + coeff
            continue
        i = rng.choice(descents)
        a, b = w[i], w[i + 1]
        stack.append((w[:i] + (b, a) + w[i + 2:], k, coeff))
        if ctab[a][b]:
            stack.append((w[:i] + w[i + 2:], k + 1, coeff * ctab[a][b]))
    return {key: v for key, v in out.items() if v}


def leibniz_terms(exps):
    """``[(sigma, prod_i C(exps_i, sigma_i))]`` for all ``sigma <= exps``."""
    terms = [((), 1)]
    for e in exps:
        terms = [(s + (j,), c * comb(e, j)) for s, c in terms for j in range(e + 1)]
    return terms
