"""Independent brute-force oracles used for differential testing.

Nothing here calls into the exactness or enumeration code: every check is
spelled out again from the raw tables.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..exactness import JunctionVerdict


def naive_commutative_monoid_count(n: int) -> int:
    """Commutative monoids of order n up to isomorphism, by exhaustive table search.

    Every symmetric n x n table is generated (the identity may sit anywhere),
    filtered by the axioms, and the survivors are bucketed by trying all
    relabellings pairwise.
    """
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    total = n ** len(cells)
    idx = np.arange(total, dtype=np.int64)
    tables = np.zeros((total, n, n), dtype=np.int8)
    for k, (i, j) in enumerate(cells):
        digit = (idx // n ** k) % n
        tables[:, i, j] = digit
        tables[:, j, i] = digit
    rows = np.arange(total)[:, None, None, None]
    a = np.arange(n)[None, :, None, None]
    b = np.arange(n)[None, None, :, None]
    c = np.arange(n)[None, None, None, :]
    ab = tables[rows, a, b]
    bc = tables[rows, b, c]
    assoc = (tables[rows, ab, c] == tables[rows, a, bc]).all(axis=(1, 2, 3))
    elems = np.arange(n)
    has_identity = np.zeros(total, dtype=bool)
    for e in range(n):
        has_identity |= (tables[:, e, :] == elems).all(axis=1)
    survivors = [t for t in tables[assoc & has_identity]]

    perms = [np.array(p) for p in itertools.permutations(range(n))]
    reps: list[np.ndarray] = []
    for t in survivors:
        if not any(_isomorphic_tables(t, r, perms) for r in reps):
            reps.append(t)
    return len(reps)


def _isomorphic_tables(t: np.ndarray, r: np.ndarray, perms) -> bool:
    for p in perms:
        # p maps t's labels to r's labels: r[p[x]][p[y]] == p[t[x][y]]
        if np.array_equal(r[np.ix_(p, p)], p[t]):
            return True
    return False


def _closure(add, xs):
    return {s for s in range(len(add)) for x1 in xs for x2 in xs if add[s][x1] == x2}


def _k_uniform(add, fmap):
    ker = [x for x in range(len(fmap)) if fmap[x] == 0]
    return all(
        any(add[x1][k1] == add[x2][k2] for k1 in ker for k2 in ker)
        for x1 in range(len(fmap)) for x2 in range(len(fmap)) if fmap[x1] == fmap[x2]
    )


def _i_uniform(cod_add, fmap):
    im = set(fmap)
    return _closure(cod_add, im) == im


def oracle_exactness(f, g) -> JunctionVerdict:
    """Junction verdict for L -f-> M -g-> N recomputed by raw set comprehension.

    Exactness is taken in its closed form: f(L) = Ker(g) and g k-uniform.
    """
    M_add = f.cod.add
    N_add = g.cod.add
    image_f = {f.map[x] for x in range(len(f.map))}
    ker_g = {m for m in range(len(g.map)) if g.map[m] == 0}
    chain = all(g.map[f.map[x]] == 0 for x in range(len(f.map)))
    proper = image_f == ker_g
    semi = _closure(M_add, image_f) == ker_g
    ku_g = _k_uniform(M_add, g.map)
    ku_f = _k_uniform(f.dom.add, f.map)
    iu_f = _i_uniform(M_add, f.map)
    iu_g = _i_uniform(N_add, g.map)
    return JunctionVerdict(
        chain=chain,
        proper_exact=proper,
        semi_exact=semi,
        quasi_exact=semi and ku_g,
        exact=proper and ku_g,
        uniform_junction=ku_f and iu_f and ku_g and iu_g,
        k_uniform_junction=ku_f and ku_g,
        i_uniform_junction=iu_f and iu_g,
    )
