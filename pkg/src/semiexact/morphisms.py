"""Kernels, cokernels, factorizations and the classification of linear maps."""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .algebra import (
    Morphism,
    Semimodule,
    identity,
    make_morphism,
    validate_morphism,
    zero_map,
)
from .errors import BudgetExceeded, ConsistencyError, InputError, MismatchError
from .substructures import (
    Congruence,
    QuotientResult,
    Subsemimodule,
    bourne_congruence,
    bourne_quotient,
    quotient,
    subsemimodule_generated,
    subtractive_closure,
)

__all__ = [
    "Morphism", "make_morphism", "validate_morphism", "identity", "zero_map",
    "kernel", "image", "cokernel", "coimage", "fiber_congruence", "factorize",
    "Factorization", "Classification", "classify", "compose", "corestrict",
    "hom_enumerate", "is_isomorphic", "inverse",
]

BRUTE_FORCE_LIMIT = 10**5
SEARCH_BUDGET = 10**7


def kernel(f: Morphism) -> Subsemimodule:
    return Subsemimodule(f.dom, tuple(x for x in f.dom.elements if f.map[x] == 0))


def image(f: Morphism) -> Subsemimodule:
    return Subsemimodule(f.cod, tuple(sorted(set(f.map))))


def cokernel(f: Morphism) -> QuotientResult:
    """cod(f) modulo the Bourne congruence of the image."""
    return bourne_quotient(f.cod, image(f).members, f"Coker({f.name})")


def fiber_congruence(f: Morphism) -> Congruence:
    """x ~ x' iff f(x) = f(x')."""
    first: dict[int, int] = {}
    for x in f.dom.elements:
        first.setdefault(f.map[x], x)
    return Congruence(f.dom, tuple(first[f.map[x]] for x in f.dom.elements))


def coimage(f: Morphism) -> QuotientResult:
    return quotient(f.dom, fiber_congruence(f), f"Coim({f.name})")


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.cod != g.dom:
        raise MismatchError(f"cannot compose {g.name} after {f.name}: codomain/domain differ")
    name = f"{g.name}.{f.name}" if g.name and f.name else ""
    return Morphism(f.dom, g.cod, tuple(g.map[y] for y in f.map), name)


def corestrict(f: Morphism, target: Semimodule, inclusion: Morphism) -> Morphism:
    """Factor ``f`` through an injective ``inclusion: target -> cod(f)``."""
    if inclusion.cod != f.cod or inclusion.dom != target:
        raise MismatchError("inclusion does not land in the codomain")
    pos = {y: i for i, y in enumerate(inclusion.map)}
    try:
        mapped = tuple(pos[y] for y in f.map)
    except KeyError as exc:
        raise InputError(f"{f.name}: image element {exc.args[0]} is outside the target") from None
    return Morphism(f.dom, target, mapped, f.name)


def inverse(f: Morphism) -> Morphism | None:
    """The inverse map when ``f`` is bijective and the inverse is linear."""
    if len(set(f.map)) != f.dom.order or f.dom.order != f.cod.order:
        return None
    inv = [0] * f.cod.order
    for x, y in enumerate(f.map):
        inv[y] = x
    if not validate_morphism(f.cod, f.dom, inv).ok:
        return None
    return Morphism(f.cod, f.dom, tuple(inv), f"{f.name}^-1" if f.name else "")


@dataclass(frozen=True)
class Factorization:
    coim_projection: Morphism
    iso: Morphism
    im_inclusion: Morphism


def factorize(f: Morphism) -> Factorization:
    """f = inclusion . d . projection through Coim(f) and Im(f)."""
    coim = coimage(f)
    im_obj, incl = image(f).as_semimodule(f"Im({f.name})")
    pos = {y: i for i, y in enumerate(incl.map)}
    reps = fiber_congruence(f).representatives
    d = Morphism(coim.quotient, im_obj, tuple(pos[f.map[r]] for r in reps), f"d_{f.name}")
    if len(set(d.map)) != im_obj.order or coim.quotient.order != im_obj.order:
        raise ConsistencyError(f"canonical map for {f.name} is not bijective")
    return Factorization(coim.projection, d, incl)


@dataclass(frozen=True)
class Classification:
    injective: bool
    surjective: bool
    k_uniform: bool
    i_uniform: bool
    uniform: bool
    steady: bool
    costeady: bool
    bisteady: bool
    semi_mono: bool
    semi_epi: bool
    semi_iso: bool
    cancellative_morphism: bool
    cs_epi: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def is_injective(f: Morphism) -> bool:
    return len(set(f.map)) == f.dom.order


def is_surjective(f: Morphism) -> bool:
    return len(set(f.map)) == f.cod.order


def is_k_uniform(f: Morphism) -> bool:
    """Equal images force x1 + k1 = x2 + k2 for some kernel elements k1, k2."""
    M = f.dom
    ker = [x for x in M.elements if f.map[x] == 0]
    shifted = [{M.add[x][k] for k in ker} for x in M.elements]
    for x1 in M.elements:
        for x2 in range(x1 + 1, M.order):
            if f.map[x1] == f.map[x2] and shifted[x1].isdisjoint(shifted[x2]):
                return False
    return True


def is_i_uniform(f: Morphism) -> bool:
    im = set(f.map)
    return set(subtractive_closure(f.cod, im)) == im


def is_semi_mono(f: Morphism) -> bool:
    return sum(1 for y in f.map if y == 0) == 1


def is_semi_epi(f: Morphism) -> bool:
    return len(subtractive_closure(f.cod, set(f.map))) == f.cod.order


def is_cancellative_morphism(f: Morphism) -> bool:
    good = set(f.cod.cancellable)
    return all(y in good for y in f.map)


def steady_by_quotient(f: Morphism) -> bool:
    """X/Ker(f) -> f(X), [x] -> f(x), is a bijection."""
    classes = bourne_congruence(f.dom, kernel(f).members).representatives
    return len(classes) == len(set(f.map))


def costeady_by_cokernel(f: Morphism) -> bool:
    """f(X) equals the kernel of its cokernel projection."""
    proj = cokernel(f).projection
    return kernel(proj).members == image(f).members


def classify(f: Morphism) -> Classification:
    """Every classification flag of f; steady and costeady are cross-checked."""
    return _classify(f)


@lru_cache(maxsize=1 << 16)
def _classify(f: Morphism) -> Classification:
    inj = is_injective(f)
    surj = is_surjective(f)
    ku = is_k_uniform(f)
    iu = is_i_uniform(f)
    steady = steady_by_quotient(f)
    costeady = costeady_by_cokernel(f)
    if steady != ku or costeady != iu:
        raise ConsistencyError(
            f"{f.name}: steady={steady} k_uniform={ku} costeady={costeady} i_uniform={iu}"
        )
    mono = is_semi_mono(f)
    epi = is_semi_epi(f)
    return Classification(
        injective=inj,
        surjective=surj,
        k_uniform=ku,
        i_uniform=iu,
        uniform=ku and iu,
        steady=steady,
        costeady=costeady,
        bisteady=steady and costeady,
        semi_mono=mono,
        semi_epi=epi,
        semi_iso=mono and epi,
        cancellative_morphism=is_cancellative_morphism(f),
        # the closure criterion for epimorphisms between cancellative objects
        cs_epi=epi,
    )


def generators(M: Semimodule) -> list[int]:
    """A small generating set, picked greedily in index order."""
    gens: list[int] = []
    covered = {0}
    for x in M.elements:
        if x not in covered:
            gens.append(x)
            covered = set(subsemimodule_generated(M, gens).members)
    return gens


class _Search:
    """Backtracking over generator images with forced propagation."""

    def __init__(self, M: Semimodule, N: Semimodule, budget: int):
        self.M, self.N = M, N
        self.budget = budget
        self.steps = 0

    def assign(self, f: list[int], x: int, y: int) -> list[int] | None:
        M, N = self.M, self.N
        f = list(f)
        if f[x] >= 0:
            return f if f[x] == y else None
        f[x] = y
        queue = [x]
        while queue:
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(
                    f"hom search {M.name} -> {N.name} exceeded {self.budget} steps"
                )
            a = queue.pop()
            derived = [(M.add[a][b], N.add[f[a]][f[b]]) for b in M.elements if f[b] >= 0]
            derived += [(M.act[a][s], N.act[f[a]][s]) for s in M.scalars]
            for c, v in derived:
                if f[c] < 0:
                    f[c] = v
                    queue.append(c)
                elif f[c] != v:
                    return None
        return f

    def run(self, gens: list[int], candidates) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        start = self.assign([-1] * self.M.order, 0, 0)

        def go(f, i):
            if f is None:
                return
            if i == len(gens):
                out.append(tuple(f))
                return
            for y in candidates(gens[i]):
                go(self.assign(f, gens[i], y), i + 1)

        go(start, 0)
        return out


def _brute_maps(M: Semimodule, N: Semimodule) -> list[tuple[int, ...]]:
    """Filter every zero-preserving map M -> N at once; rows come out sorted."""
    m, n = M.order, N.order
    k = n ** (m - 1)
    F = np.zeros((k, m), dtype=np.int64)
    idx = np.arange(k)
    for col in range(1, m):
        # last column varies fastest, matching lexicographic order
        F[:, col] = (idx // n ** (m - 1 - col)) % n
    addM, addN = np.array(M.add), np.array(N.add)
    ok = np.ones(k, dtype=bool)
    for a in range(1, m):
        for b in range(a, m):
            ok &= F[:, addM[a, b]] == addN[F[:, a], F[:, b]]
    if M.act is not None:
        actM, actN = np.array(M.act), np.array(N.act)
        for a in range(1, m):
            for s in M.scalars:
                ok &= F[:, actM[a, s]] == actN[F[:, a], s]
    return [tuple(int(v) for v in row) for row in F[ok]]


def hom_enumerate(M: Semimodule, N: Semimodule, budget: int = SEARCH_BUDGET,
                  method: str = "auto") -> list[Morphism]:
    """Every linear map M -> N, sorted by their element maps."""
    if M.semiring != N.semiring:
        raise MismatchError("Hom between semimodules over different semirings")
    candidates = N.order ** (M.order - 1)
    if method == "brute" or (method == "auto" and candidates <= BRUTE_FORCE_LIMIT):
        if candidates > budget:
            raise BudgetExceeded(f"{candidates} candidate maps exceed budget {budget}")
        maps = _brute_maps(M, N)
    else:
        search = _Search(M, N, budget)
        found = search.run(generators(M), lambda g: N.elements)
        maps = sorted({f for f in found if validate_morphism(M, N, f).ok})
    return [Morphism(M, N, f) for f in maps]


def _profile(M: Semimodule, x: int) -> tuple[int, int, bool, bool]:
    """Tail length and period of x, 2x, 3x, ..., plus cancellability and idempotence."""
    seen: dict[int, int] = {}
    acc, i = x, 1
    while acc not in seen:
        seen[acc] = i
        acc = M.add[acc][x]
        i += 1
    tail = seen[acc]
    return (tail, i - tail, x in M.cancellable, M.add[x][x] == x)


def is_isomorphic(M: Semimodule, N: Semimodule) -> Morphism | None:
    """A bijective linear map M -> N with linear inverse, if one exists."""
    if M.semiring != N.semiring or M.order != N.order:
        return None
    if len(M.cancellable) != len(N.cancellable):
        return None
    pm = [_profile(M, x) for x in M.elements]
    pn = [_profile(N, y) for y in N.elements]
    if sorted(pm) != sorted(pn):
        return None
    search = _Search(M, N, SEARCH_BUDGET)
    gens = generators(M)
    result: list[Morphism] = []

    def go(f, i, used):
        if f is None or result:
            return
        if len(set(v for v in f if v >= 0)) != sum(1 for v in f if v >= 0):
            return
        if i == len(gens):
            g = Morphism(M, N, tuple(f), f"iso_{M.name}_{N.name}")
            if validate_morphism(M, N, g.map).ok and inverse(g) is not None:
                result.append(g)
            return
        x = gens[i]
        for y in N.elements:
            if pn[y] == pm[x] and y not in used:
                go(search.assign(f, x, y), i + 1, used | {y})

    go(search.assign([-1] * M.order, 0, 0), 0, frozenset({0}))
    return result[0] if result else None
