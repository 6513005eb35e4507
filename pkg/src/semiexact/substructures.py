"""Subsemimodules, subtractive closures, congruences and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .algebra import ElementSet, Morphism, Semimodule
from .errors import AxiomError, ConsistencyError, InputError

MAX_SUBSET_ORDER = 16


def _closure_failure(M: Semimodule, members: Iterable[int]) -> str | None:
    ms = set(members)
    if 0 not in ms:
        return "does not contain 0"
    for a in ms:
        for b in ms:
            if M.add[a][b] not in ms:
                return f"{a}+{b} = {M.add[a][b]} escapes"
        for s in M.scalars:
            if M.act[a][s] not in ms:
                return f"{a}*{s} = {M.act[a][s]} escapes"
    return None


@dataclass(frozen=True)
class Subsemimodule(ElementSet):
    """A subset containing 0 and closed under addition and the action."""

    def __post_init__(self):
        super().__post_init__()
        problem = _closure_failure(self.parent, self.members)
        if problem:
            raise AxiomError(f"{self.members} is not a subsemimodule of {self.parent.name}: {problem}")

    def as_semimodule(self, name: str = "") -> tuple[Semimodule, Morphism]:
        """The subsemimodule as a standalone object, with its inclusion map.

        Members are relabelled in increasing order, so 0 stays at index 0.
        """
        M = self.parent
        pos = {x: i for i, x in enumerate(self.members)}
        add = tuple(tuple(pos[M.add[a][b]] for b in self.members) for a in self.members)
        act = None
        if M.act is not None:
            act = tuple(tuple(pos[M.act[a][s]] for s in M.scalars) for a in self.members)
        label = name or f"{M.name}{list(self.members)}"
        L = Semimodule(add, act, M.semiring, label)
        return L, Morphism(L, M, self.members, f"incl_{label}")


def subsemimodule_generated(M: Semimodule, seed: Iterable[int]) -> Subsemimodule:
    """Least subsemimodule of ``M`` containing ``seed``."""
    found = {0}
    frontier = [0]
    for x in seed:
        if not 0 <= x < M.order:
            raise InputError(f"element {x} outside carrier of {M.name}")
        if x not in found:
            found.add(x)
            frontier.append(x)
    while frontier:
        x = frontier.pop()
        new = [M.add[x][y] for y in list(found)]
        new += [M.act[x][s] for s in M.scalars]
        for z in new:
            if z not in found:
                found.add(z)
                frontier.append(z)
    return Subsemimodule(M, tuple(sorted(found)))


def subtractive_closure(M: Semimodule, X: Iterable[int]) -> ElementSet:
    """All s with s + x1 = x2 for some x1, x2 in X."""
    xs = set(X)
    if not xs:
        raise InputError("subtractive closure of an empty set")
    keep = [s for s in M.elements if any(M.add[s][x] in xs for x in xs)]
    return ElementSet(M, tuple(keep))


def is_subtractive(M: Semimodule, L: Iterable[int]) -> bool:
    members = set(L)
    return set(subtractive_closure(M, members)) == members


def all_subsemimodules(M: Semimodule) -> list[Subsemimodule]:
    """Every subsemimodule of ``M`` exactly once, ordered by size then members."""
    if M.order > MAX_SUBSET_ORDER:
        raise InputError(f"subsemimodule scan limited to order {MAX_SUBSET_ORDER}")
    start = subsemimodule_generated(M, ())
    seen = {start.members: start}
    stack = [start]
    while stack:
        L = stack.pop()
        for x in M.elements:
            if x in L:
                continue
            bigger = subsemimodule_generated(M, L.members + (x,))
            if bigger.members not in seen:
                seen[bigger.members] = bigger
                stack.append(bigger)
    return [seen[k] for k in sorted(seen, key=lambda m: (len(m), m))]


@dataclass(frozen=True)
class Congruence:
    """An S-congruence stored as the least representative of each class."""

    parent: Semimodule
    class_of: tuple[int, ...]

    def __post_init__(self):
        co = tuple(int(x) for x in self.class_of)
        if len(co) != self.parent.order:
            raise InputError("congruence map length differs from carrier size")
        for x, r in enumerate(co):
            if not 0 <= r <= x or co[r] != r:
                raise InputError(f"class_of[{x}] = {r} is not a least representative")
        object.__setattr__(self, "class_of", co)

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.class_of)))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        groups: dict[int, list[int]] = {r: [] for r in self.representatives}
        for x, r in enumerate(self.class_of):
            groups[r].append(x)
        return tuple(tuple(groups[r]) for r in self.representatives)

    def compatibility_failure(self) -> tuple[int, int, str] | None:
        """A pair of related elements whose translates are unrelated, if any."""
        M = self.parent
        co = self.class_of
        for a in M.elements:
            b = co[a]
            if a == b:
                continue
            for c in M.elements:
                if co[M.add[a][c]] != co[M.add[b][c]]:
                    return (a, b, f"+{c}")
            for s in M.scalars:
                if co[M.act[a][s]] != co[M.act[b][s]]:
                    return (a, b, f"*{s}")
        return None


def _from_relation(M: Semimodule, related, what: str) -> Congruence:
    """Turn a relation predicate into a congruence, verifying the axioms first."""
    n = M.order
    rel = [[related(a, b) for b in range(n)] for a in range(n)]
    for a in range(n):
        if not rel[a][a]:
            raise ConsistencyError(f"{what}: not reflexive at {a}")
        for b in range(n):
            if rel[a][b] != rel[b][a]:
                raise ConsistencyError(f"{what}: not symmetric at ({a}, {b})")
            if rel[a][b]:
                for c in range(n):
                    if rel[b][c] and not rel[a][c]:
                        raise ConsistencyError(f"{what}: not transitive at ({a}, {b}, {c})")
    c = Congruence(M, tuple(min(b for b in range(n) if rel[a][b]) for a in range(n)))
    bad = c.compatibility_failure()
    if bad:
        raise ConsistencyError(f"{what}: not compatible at {bad}")
    return c


def bourne_congruence(M: Semimodule, L: Iterable[int]) -> Congruence:
    """m1 ~ m2 iff m1 + l1 = m2 + l2 for some l1, l2 in L."""
    return _bourne(M, tuple(sorted(set(L))))


@lru_cache(maxsize=1 << 16)
def _bourne(M: Semimodule, ls: tuple[int, ...]) -> Congruence:
    shifted = [{M.add[m][l] for l in ls} for m in M.elements]
    return _from_relation(M, lambda a, b: not shifted[a].isdisjoint(shifted[b]), "Bourne relation")


def iizuka_congruence(M: Semimodule, L: Iterable[int]) -> Congruence:
    """m1 ~ m2 iff m1 + l1 + m' = m2 + l2 + m' for some l1, l2 in L and m' in M."""
    ls = sorted(set(L))
    shifted = [
        [{M.add[M.add[m][l]][t] for l in ls} for t in M.elements] for m in M.elements
    ]

    def related(a, b):
        return any(not shifted[a][t].isdisjoint(shifted[b][t]) for t in M.elements)

    c = _from_relation(M, related, "Iizuka relation")
    if not quotient(M, c).quotient.is_cancellative:
        raise ConsistencyError("Iizuka quotient is not cancellative")
    return c


def identity_congruence(M: Semimodule) -> Congruence:
    return Congruence(M, tuple(M.elements))


def total_congruence(M: Semimodule) -> Congruence:
    return Congruence(M, (0,) * M.order)


def congruence_generated(M: Semimodule, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence relating every given pair, by union-find saturation."""
    parent = list(M.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb
        return True

    for a, b in pairs:
        if not (0 <= a < M.order and 0 <= b < M.order):
            raise InputError(f"pair ({a}, {b}) outside carrier of {M.name}")
        union(a, b)
    merged = True
    while merged:
        merged = False
        for a in M.elements:
            b = find(a)
            if a == b:
                continue
            for c in M.elements:
                merged |= union(M.add[a][c], M.add[b][c])
            for s in M.scalars:
                merged |= union(M.act[a][s], M.act[b][s])
    # union keeps the smaller root, so every root is its class minimum
    return Congruence(M, tuple(find(x) for x in M.elements))


@dataclass(frozen=True)
class QuotientResult:
    quotient: Semimodule
    projection: Morphism
    class_members: tuple[tuple[int, ...], ...]


def quotient(M: Semimodule, c: Congruence, name: str = "") -> QuotientResult:
    """M/~ with class i represented by the i-th smallest representative."""
    if c.parent != M:
        raise InputError("congruence belongs to a different semimodule")
    reps = c.representatives
    pos = {r: i for i, r in enumerate(reps)}
    co = c.class_of
    add = tuple(tuple(pos[co[M.add[a][b]]] for b in reps) for a in reps)
    act = None
    if M.act is not None:
        act = tuple(tuple(pos[co[M.act[a][s]]] for s in M.scalars) for a in reps)
    Q = Semimodule(add, act, M.semiring, name or f"{M.name}/~")
    proj = Morphism(M, Q, tuple(pos[co[x]] for x in M.elements), f"pi_{Q.name}")
    return QuotientResult(Q, proj, c.classes)


def bourne_quotient(M: Semimodule, L: Iterable[int], name: str = "") -> QuotientResult:
    """M/L, the quotient by the Bourne congruence of L."""
    ls = sorted(set(L))
    return quotient(M, bourne_congruence(M, ls), name or f"{M.name}/{ls}")
