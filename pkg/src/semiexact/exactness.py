"""Exactness verdicts for junctions L -> M -> N and for longer sequences."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Morphism, Semimodule, Semiring, zero_map, zero_module
from .errors import ConsistencyError, HypothesisError, MismatchError
from .morphisms import (
    cokernel,
    compose,
    corestrict,
    image,
    is_i_uniform,
    is_injective,
    is_k_uniform,
    is_surjective,
    kernel,
)
from .substructures import subtractive_closure


@lru_cache(maxsize=None)
def zero_object(semiring: Semiring) -> Semimodule:
    """The shared order-1 semimodule used for padding sequences."""
    return zero_module(semiring)


@dataclass(frozen=True)
class JunctionVerdict:
    chain: bool
    proper_exact: bool
    semi_exact: bool
    quasi_exact: bool
    exact: bool
    uniform_junction: bool
    k_uniform_junction: bool
    i_uniform_junction: bool
    witness: tuple | None = None

    def __post_init__(self):
        if self.exact and not self.quasi_exact:
            raise ConsistencyError("exact junction that is not quasi-exact")
        if self.quasi_exact and not self.semi_exact:
            raise ConsistencyError("quasi-exact junction that is not semi-exact")
        if self.proper_exact and not self.semi_exact:
            raise ConsistencyError("proper-exact junction that is not semi-exact")

    def tiers(self) -> dict[str, bool]:
        return {
            "chain": self.chain,
            "proper_exact": self.proper_exact,
            "semi_exact": self.semi_exact,
            "quasi_exact": self.quasi_exact,
            "exact": self.exact,
            "uniform": self.uniform_junction,
            "k_uniform": self.k_uniform_junction,
            "i_uniform": self.i_uniform_junction,
        }


def _check_composable(f: Morphism, g: Morphism) -> None:
    if f.cod != g.dom:
        raise MismatchError(f"{f.name} and {g.name} are not composable")


def induced_to_kernel(f: Morphism, g: Morphism) -> Morphism:
    """f': L -> Ker(g), defined when g . f = 0."""
    _check_composable(f, g)
    if any(g.map[y] for y in f.map):
        raise HypothesisError("g . f is not zero", witness=next(x for x in f.dom.elements if g.map[f.map[x]]))
    K, incl = kernel(g).as_semimodule(f"Ker({g.name})")
    return corestrict(f, K, incl)


def induced_from_cokernel(f: Morphism, g: Morphism) -> Morphism:
    """g'': Coker(f) -> N, [m] -> g(m), defined when g . f = 0."""
    _check_composable(f, g)
    coker = cokernel(f)
    values: dict[int, int] = {}
    for m, c in enumerate(coker.projection.map):
        if values.setdefault(c, g.map[m]) != g.map[m]:
            raise HypothesisError(f"g is not constant on the cokernel class of {m}", witness=m)
    return Morphism(coker.quotient, g.cod, tuple(values[c] for c in range(coker.quotient.order)),
                    f"{g.name}''")


def _k_uniform_failure(g: Morphism) -> tuple[int, int] | None:
    M = g.dom
    ker = [x for x in M.elements if g.map[x] == 0]
    shifted = [{M.add[x][k] for k in ker} for x in M.elements]
    for a in M.elements:
        for b in range(a + 1, M.order):
            if g.map[a] == g.map[b] and shifted[a].isdisjoint(shifted[b]):
                return (a, b)
    return None


def junction_verdict(f: Morphism, g: Morphism) -> JunctionVerdict:
    """All exactness tiers of L -f-> M -g-> N at M."""
    _check_composable(f, g)
    fL = set(f.map)
    ker_g = {m for m in g.dom.elements if g.map[m] == 0}
    closure = set(subtractive_closure(g.dom, fL))
    chain = all(g.map[y] == 0 for y in fL)
    proper = fL == ker_g
    semi = closure == ker_g
    ku_g = is_k_uniform(g)
    quasi = semi and ku_g
    if chain:
        # categorical exactness: L -> Ker(g) onto and Coker(f) -> N one-to-one
        exact = is_surjective(induced_to_kernel(f, g)) and is_injective(induced_from_cokernel(f, g))
    else:
        exact = False
    ku_f, iu_f, iu_g = is_k_uniform(f), is_i_uniform(f), is_i_uniform(g)

    witness = None
    if not chain:
        witness = ("chain", min(x for x in f.dom.elements if g.map[f.map[x]] != 0))
    elif not semi:
        witness = ("semi_exact", min(closure ^ ker_g))
    elif not proper:
        witness = ("proper_exact", min(fL ^ ker_g))
    elif not ku_g:
        witness = ("k_uniform", *_k_uniform_failure(g))
    return JunctionVerdict(
        chain=chain,
        proper_exact=proper,
        semi_exact=semi,
        quasi_exact=quasi,
        exact=exact,
        uniform_junction=ku_f and iu_f and ku_g and iu_g,
        k_uniform_junction=ku_f and ku_g,
        i_uniform_junction=iu_f and iu_g,
        witness=witness,
    )


@dataclass(frozen=True)
class Sequence:
    """Composable maps f1, ..., fn, optionally padded by zero objects at either end."""

    morphisms: tuple[Morphism, ...]
    pad_left: bool = False
    pad_right: bool = False

    def __post_init__(self):
        ms = tuple(self.morphisms)
        if not ms:
            raise MismatchError("a sequence needs at least one morphism")
        for f, g in zip(ms, ms[1:]):
            _check_composable(f, g)
        object.__setattr__(self, "morphisms", ms)

    def full(self) -> tuple[Morphism, ...]:
        """The maps including the padding ends."""
        ms = list(self.morphisms)
        if self.pad_left:
            first = ms[0].dom
            ms.insert(0, zero_map(zero_object(first.semiring), first))
        if self.pad_right:
            last = ms[-1].cod
            ms.append(zero_map(last, zero_object(last.semiring)))
        return tuple(ms)

    @property
    def objects(self) -> tuple[Semimodule, ...]:
        ms = self.full()
        return tuple(f.dom for f in ms) + (ms[-1].cod,)


def sequence_report(s: Sequence) -> list[JunctionVerdict]:
    ms = s.full()
    return [junction_verdict(f, g) for f, g in zip(ms, ms[1:])]


def is_short_exact(f: Morphism, g: Morphism) -> tuple[bool, str]:
    """Whether 0 -> L -> M -> N -> 0 is exact; the detail names the first failing clause."""
    _check_composable(f, g)
    if not is_injective(f):
        return False, "f is not injective"
    if set(f.map) != {m for m in g.dom.elements if g.map[m] == 0}:
        return False, "f(L) differs from Ker(g)"
    if not is_surjective(g):
        return False, "g is not surjective"
    if not is_k_uniform(g):
        return False, "g is not k-uniform"
    return True, "short exact"


@dataclass(frozen=True)
class KerCokerReport:
    sequence: Sequence
    verdicts: tuple[JunctionVerdict, ...]

    @property
    def semi_exact(self) -> bool:
        return all(v.semi_exact for v in self.verdicts)

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.verdicts)


def ker_coker_sequence(gamma: Morphism) -> KerCokerReport:
    """0 -> Ker(gamma) -> X -> Y -> Coker(gamma) -> 0 with its junction verdicts."""
    K, incl = kernel(gamma).as_semimodule(f"Ker({gamma.name})")
    proj = cokernel(gamma).projection
    seq = Sequence((incl, gamma, proj), pad_left=True, pad_right=True)
    verdicts = tuple(sequence_report(seq))
    return KerCokerReport(seq, verdicts)


def is_chain(f: Morphism, g: Morphism) -> bool:
    return all(v == 0 for v in compose(g, f).map)


def image_equals_kernel(f: Morphism, g: Morphism) -> bool:
    return image(f).members == kernel(g).members
