"""Enumeration of small commutative monoids and semimodules up to isomorphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra import NATURALS, Semimodule, Semiring, make_semimodule
from ..errors import InputError
from ..morphisms import hom_enumerate

MAX_ENUMERATION_ORDER = 5


def relabel(M: Semimodule, perm: tuple[int, ...], name: str = "") -> Semimodule:
    """The copy of M in which element x is renamed perm[x]; perm must fix 0."""
    n = M.order
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    add = tuple(tuple(perm[M.add[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    act = None
    if M.act is not None:
        act = tuple(tuple(perm[M.act[inv[a]][s]] for s in M.scalars) for a in range(n))
    return Semimodule(add, act, M.semiring, name or M.name)


def _flat(M: Semimodule) -> tuple[int, ...]:
    flat = tuple(itertools.chain.from_iterable(M.add))
    if M.act is not None:
        flat += tuple(itertools.chain.from_iterable(M.act))
    return flat


def canonical_form(M: Semimodule) -> Semimodule:
    """The relabelling with lexicographically least tables among those fixing 0."""
    best, best_key = M, None
    for rest in itertools.permutations(range(1, M.order)):
        cand = relabel(M, (0,) + rest)
        key = _flat(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def _commutative_monoid_tables(n: int):
    """All commutative monoid tables on {0..n-1} with identity 0, by backtracking."""
    if n == 1:
        yield ((0,),)
        return
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = T[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]

    def assoc_ok():
        for a in range(1, n):
            for b in range(1, n):
                ab = T[a][b]
                if ab < 0:
                    continue
                for c in range(1, n):
                    bc = T[b][c]
                    if bc < 0:
                        continue
                    left, right = T[ab][c], T[a][bc]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def go(k):
        if k == len(cells):
            yield tuple(tuple(r) for r in T)
            return
        i, j = cells[k]
        for v in range(n):
            T[i][j] = T[j][i] = v
            if assoc_ok():
                yield from go(k + 1)
        T[i][j] = T[j][i] = -1

    yield from go(0)


@dataclass(frozen=True)
class Corpus:
    semiring: Semiring
    order: int
    objects: tuple[Semimodule, ...]
    provenance: dict = field(default_factory=dict, compare=False)


def _name(prefix: str, n: int, i: int) -> str:
    return f"{prefix}{n}_{i}"


@lru_cache(maxsize=None)
def enumerate_commutative_monoids(n: int) -> Corpus:
    """All commutative monoids of order n up to isomorphism, in canonical form."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InputError(f"monoid enumeration supports orders 1..{MAX_ENUMERATION_ORDER}")
    seen: dict[tuple[int, ...], Semimodule] = {}
    for add in _commutative_monoid_tables(n):
        c = canonical_form(Semimodule(add, None, NATURALS))
        seen.setdefault(_flat(c), c)
    objs = tuple(
        Semimodule(seen[k].add, None, NATURALS, _name("M", n, i))
        for i, k in enumerate(sorted(seen))
    )
    return Corpus(NATURALS, n, objs, {"method": "backtracking", "order": n})


def _actions(M: Semimodule, S: Semiring) -> list[tuple[tuple[int, ...], ...]]:
    """Every action table making the monoid M a semimodule over S."""
    ends = [f.map for f in hom_enumerate(M, M)]
    zero = tuple(0 for _ in M.elements)
    ident = tuple(M.elements)
    k = S.order
    phi: list[tuple[int, ...] | None] = [None] * k
    phi[0], phi[S.one] = zero, ident

    def consistent(s):
        # every additive and multiplicative relation among assigned scalars touching s
        for a in range(k):
            if phi[a] is None:
                continue
            for b in range(k):
                if phi[b] is None:
                    continue
                u, p = S.add[a][b], S.mul[a][b]
                if s not in (a, b, u, p):
                    continue
                if phi[u] is not None and any(
                    phi[u][m] != M.add[phi[a][m]][phi[b][m]] for m in M.elements
                ):
                    return False
                # m*(ab) = (m*a)*b
                if phi[p] is not None and any(phi[p][m] != phi[b][phi[a][m]] for m in M.elements):
                    return False
        return True

    out = []
    order = [s for s in range(k) if phi[s] is None]

    def go(i):
        if i == len(order):
            out.append(tuple(tuple(phi[s][m] for s in range(k)) for m in M.elements))
            return
        s = order[i]
        for e in ends:
            phi[s] = e
            if consistent(s):
                go(i + 1)
        phi[s] = None

    if consistent(0) and consistent(S.one):
        go(0)
    return out


@lru_cache(maxsize=None)
def enumerate_semimodules(S: Semiring, n: int) -> Corpus:
    """All S-semimodules of order n up to isomorphism."""
    monoids = enumerate_commutative_monoids(n)
    if S.is_naturals:
        return monoids
    seen: dict[tuple[int, ...], Semimodule] = {}
    for M in monoids.objects:
        for act in _actions(M, S):
            c = canonical_form(make_semimodule(M.add, act, S))
            seen.setdefault(_flat(c), c)
    objs = tuple(
        Semimodule(seen[k].add, seen[k].act, S, _name(f"{S.name}:M", n, i))
        for i, k in enumerate(sorted(seen))
    )
    return Corpus(S, n, objs, {"method": "actions on monoids", "order": n, "semiring": S.name})


def corpus_up_to(S: Semiring, max_order: int) -> list[Semimodule]:
    out: list[Semimodule] = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_semimodules(S, n).objects)
    return out
