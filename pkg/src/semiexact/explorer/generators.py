"""Seeded random objects, morphisms and lemma-shaped diagrams.

Random choices are always uniform over an explicit, deterministically
ordered candidate list, never rejection sampling over raw tables.
Diagrams are built constructively from (subsemimodule, quotient) rows and
then filtered by the lemma's hypotheses.
"""

from __future__ import annotations

import random
from functools import lru_cache

from ..algebra import (
    NATURALS,
    Morphism,
    Semimodule,
    Semiring,
    boolean_monoid,
    builtin_semiring,
    chain_semilattice,
    cyclic_group,
    direct_sum,
    saturating_monoid,
    zero_module,
)
from ..diagrams import Diagram, LemmaVerdict, lemma_verify
from ..errors import AxiomError, BudgetExceeded, InputError
from ..morphisms import classify, compose, hom_enumerate
from ..substructures import (
    Subsemimodule,
    all_subsemimodules,
    bourne_quotient,
    is_subtractive,
    subsemimodule_generated,
)
from .enumeration import corpus_up_to

MASK64 = (1 << 64) - 1
CORPUS_ORDER = 4
MAX_FUZZ_ORDER = 8


def mix_seed(master: int, index: int) -> int:
    """splitmix64 of master + (index+1) * golden gamma; the per-trial seed."""
    z = (master + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def fuzz_semirings() -> tuple[Semiring, ...]:
    """Semirings used by fuzzing: two rings and three that are not rings."""
    return (
        NATURALS,
        builtin_semiring("boolean"),
        builtin_semiring("trunc_nat", 2),
        builtin_semiring("zmod", 2),
        builtin_semiring("zmod", 3),
    )


def _builtin_candidates(S: Semiring, max_order: int) -> list[Semimodule]:
    out = []
    makers = [lambda k: cyclic_group(k, S), lambda k: saturating_monoid(k - 1, S),
              lambda k: chain_semilattice(k, S)]
    for k in range(2, max_order + 1):
        for make in makers:
            try:
                out.append(make(k))
            except (AxiomError, InputError):
                pass
    try:
        out.append(boolean_monoid(S))
    except (AxiomError, InputError):
        pass
    return out


@lru_cache(maxsize=None)
def candidate_pool(S: Semiring, max_order: int) -> tuple[Semimodule, ...]:
    """Indexed candidates: the enumerated corpus, builtins, and direct sums of corpus objects."""
    base = corpus_up_to(S, min(CORPUS_ORDER, max_order))
    pool: list[Semimodule] = list(base)
    seen = {(M.add, M.act) for M in pool}

    def push(M):
        if M.order <= max_order and (M.add, M.act) not in seen:
            seen.add((M.add, M.act))
            pool.append(M)

    for M in _builtin_candidates(S, max_order):
        push(M)
    small = [M for M in base if M.order >= 2]
    for i, A in enumerate(small):
        for B in small[i:]:
            if A.order * B.order <= max_order:
                push(direct_sum(A, B))
    return tuple(pool)


def random_semimodule(S: Semiring, order: int, seed: int) -> Semimodule | None:
    """Uniform choice among the candidates of exactly this order, or None if there are none."""
    if order < 1 or order > MAX_FUZZ_ORDER:
        raise InputError(f"order must lie in 1..{MAX_FUZZ_ORDER}")
    if order == 1:
        return zero_module(S)
    options = [M for M in candidate_pool(S, max(order, CORPUS_ORDER)) if M.order == order]
    if not options:
        return None
    return random.Random(seed).choice(options)


@lru_cache(maxsize=4096)
def homs(M: Semimodule, N: Semimodule) -> tuple[Morphism, ...]:
    return tuple(hom_enumerate(M, N))


def random_morphism(M: Semimodule, N: Semimodule, seed: int, nonzero: bool = False) -> Morphism | None:
    options = [f for f in homs(M, N) if not nonzero or any(f.map)]
    if not options:
        return None
    return random.Random(seed).choice(options)


@lru_cache(maxsize=4096)
def _subs(M: Semimodule) -> tuple[tuple[Subsemimodule, ...], tuple[Subsemimodule, ...]]:
    subs = all_subsemimodules(M)
    return tuple(subs), tuple(L for L in subs if is_subtractive(M, L.members))


def _pick_sub(rng: random.Random, M: Semimodule, subtractive_bias: float) -> Subsemimodule:
    every, sub = _subs(M)
    if sub and rng.random() < subtractive_bias:
        return rng.choice(sub)
    return rng.choice(every)


def ladder_from(M1: Semimodule, M2: Semimodule, L1: Subsemimodule, L2: Subsemimodule, a2: Morphism):
    """The quotient ladder L_i -> M_i -> M_i/L_i with alpha1, alpha3 induced by alpha2.

    L2 must contain alpha2(L1).
    """
    L1o, f1 = L1.as_semimodule("L1")
    L2o, f2 = L2.as_semimodule("L2")
    q1, q2 = bourne_quotient(M1, L1.members, "N1"), bourne_quotient(M2, L2.members, "N2")
    g1, g2 = q1.projection, q2.projection
    pos2 = {y: i for i, y in enumerate(L2.members)}
    a1 = Morphism(L1o, L2o, tuple(pos2[a2.map[x]] for x in L1.members), "alpha1")
    a3_map = [0] * q1.quotient.order
    for m in M1.elements:
        a3_map[g1.map[m]] = g2.map[a2.map[m]]
    a3 = Morphism(q1.quotient, q2.quotient, tuple(a3_map), "alpha3")
    return (
        [Morphism(f1.dom, f1.cod, f1.map, "f1"), Morphism(g1.dom, g1.cod, g1.map, "g1")],
        [Morphism(f2.dom, f2.cod, f2.map, "f2"), Morphism(g2.dom, g2.cod, g2.map, "g2")],
        [a1, Morphism(a2.dom, a2.cod, a2.map, "alpha2"), a3],
    )


def exhaustive_quotient_ladders(S: Semiring, max_order: int):
    """Every quotient ladder over the corpus of order <= max_order, one per choice of
    (M1, M2, L1, alpha2, L2 containing alpha2(L1))."""
    corpus = corpus_up_to(S, max_order)
    for M1 in corpus:
        for M2 in corpus:
            maps = homs(M1, M2)
            for L1 in _subs(M1)[0]:
                for a2 in maps:
                    pushed = {a2.map[x] for x in L1.members}
                    for L2 in _subs(M2)[0]:
                        if pushed <= set(L2.members):
                            f, g, a = ladder_from(M1, M2, L1, L2, a2)
                            yield Diagram.from_maps([f, g], [a], f"{M1.name}->{M2.name}")


def relaxed_snake_instances(S: Semiring, max_order: int):
    """Quotient ladders whose columns meet only the relaxed snake condition, with verdicts.

    Columns are screened first: alpha2 uniform, alpha1 and alpha3 k-uniform, and
    alpha1 or alpha3 not i-uniform.
    """
    for d in exhaustive_quotient_ladders(S, max_order):
        c1, c2, c3 = (classify(a) for a in d.vert[0])
        if not (c2.uniform and c1.k_uniform and c3.k_uniform) or (c1.uniform and c3.uniform):
            continue
        v = lemma_verify("SNAKE", d)
        if v.hypotheses_satisfied:
            yield d, v


class _Builder:
    def __init__(self, rng: random.Random, S: Semiring, max_order: int):
        self.rng = rng
        self.S = S
        self.max_order = max_order
        self.pool = candidate_pool(S, max_order)
        self.small = [M for M in self.pool if M.order <= 4]

    def obj(self, max_order: int | None = None, cancellative: bool = False,
            min_order: int = 2) -> Semimodule:
        cap = self.max_order if max_order is None else max_order
        # favour small objects: pick an order first, then an object of that order
        options = [M for M in self.pool if min_order <= M.order <= cap
                   and (M.is_cancellative or not cancellative)]
        if not options:
            return zero_module(self.S)
        orders = sorted({M.order for M in options})
        weights = [1.0 / o for o in orders]
        order = self.rng.choices(orders, weights)[0]
        return self.rng.choice([M for M in options if M.order == order])

    def hom(self, M: Semimodule, N: Semimodule, pred=None) -> Morphism | None:
        options = [f for f in homs(M, N) if pred is None or pred(f)]
        return self.rng.choice(options) if options else None

    def quotient_ladder(self, subtractive_bias=0.8, cancellative=False, widen=True):
        """Rows L_i -> M_i -> M_i/L_i with alpha2 chosen first and alpha1, alpha3 induced."""
        rng = self.rng
        M1 = self.obj(cancellative=cancellative)
        M2 = self.obj(cancellative=cancellative)
        L1 = _pick_sub(rng, M1, subtractive_bias)
        a2 = self.hom(M1, M2)
        pushed = set(a2.map[x] for x in L1.members)
        containing = [L for L in _subs(M2)[0] if pushed <= set(L.members)]
        sub_containing = [L for L in containing if is_subtractive(M2, L.members)]
        if rng.random() < 0.35:
            L2 = Subsemimodule(M2, tuple(sorted(pushed)))
        elif sub_containing and rng.random() < subtractive_bias:
            L2 = rng.choice(sub_containing)
        else:
            L2 = rng.choice(containing)
        f, g, a = ladder_from(M1, M2, L1, L2, a2)
        f1, g1 = f
        f2, g2 = g
        a1, a2, a3 = a
        if widen:
            f1, a1 = self._widen_left(f1, a1)
            g2, a3 = self._widen_right(g2, a3)
        return [f1, g1], [f2, g2], [a1, a2, a3]

    def _widen_left(self, f1: Morphism, a1: Morphism):
        """Sometimes replace L1 by L1 (+) Z mapping through the first projection."""
        Z = self.obj(max_order=max(1, self.max_order // max(1, f1.dom.order)))
        if self.rng.random() < 0.7 or f1.dom.order * Z.order > self.max_order or Z.order == 1:
            return f1, a1
        L = f1.dom
        W = direct_sum(L, Z, f"{L.name}+Z")
        proj = Morphism(W, L, tuple(x // Z.order for x in W.elements), "p1")
        return (Morphism(W, f1.cod, compose(f1, proj).map, f1.name),
                Morphism(W, a1.cod, compose(a1, proj).map, a1.name))

    def _widen_right(self, g2: Morphism, a3: Morphism):
        """Sometimes replace N2 by N2 (+) Z through the first inclusion."""
        N = g2.cod
        Z = self.obj(max_order=max(1, self.max_order // max(1, N.order)))
        if self.rng.random() < 0.7 or N.order * Z.order > self.max_order or Z.order == 1:
            return g2, a3
        W = direct_sum(N, Z, f"{N.name}+Z")
        inc = Morphism(N, W, tuple(n * Z.order for n in N.elements), "i1")
        return (Morphism(g2.dom, W, compose(inc, g2).map, g2.name),
                Morphism(a3.dom, W, compose(inc, a3).map, a3.name))

    def ladder5(self):
        """Rows U -> L -> M -> N -> V exact at L, M and N when the core row is."""
        rng = self.rng
        (f1, g1), (f2, g2), (a1, a2, a3) = self.quotient_ladder(widen=False)
        rows = []
        for f, g in ((f1, g1), (f2, g2)):
            U = self.obj(max_order=4, min_order=1)
            V = self.obj(max_order=4, min_order=1)
            e = Morphism(U, f.dom, (0,) * U.order, "e")
            h = Morphism(g.cod, V, (0,) * g.cod.order, "h")
            rows.append([e, f, g, h])
        gamma = self.hom(rows[0][0].dom, rows[1][0].dom)
        delta = self.hom(rows[0][3].cod, rows[1][3].cod)
        if rng.random() < 0.5:
            # force a surjective gamma and an injective delta when possible
            gamma = self.hom(rows[0][0].dom, rows[1][0].dom, lambda f: len(set(f.map)) == f.cod.order) or gamma
            delta = self.hom(rows[0][3].cod, rows[1][3].cod, lambda f: len(set(f.map)) == f.dom.order) or delta
        return rows, [gamma, a1, a2, a3, delta]

    def nine(self):
        """3x3 grid from two subsemimodules A (rows) and B (columns) of one M2."""
        rng = self.rng
        M2 = self.obj()
        A = _pick_sub(rng, M2, 0.8)
        B = _pick_sub(rng, M2, 0.8)
        AB = sorted(set(A.members) & set(B.members))
        L1 = Subsemimodule(M2, tuple(AB))
        join = _generated(M2, set(A.members) | set(B.members))
        qA = bourne_quotient(M2, A.members, "N2")
        qB = bourne_quotient(M2, B.members, "M3")
        qAB = bourne_quotient(M2, join, "N3")
        Ao, incA = A.as_semimodule("L2")
        Bo, incB = B.as_semimodule("M1")
        L1o, _ = L1.as_semimodule("L1")
        N1 = Subsemimodule(qA.quotient, tuple(sorted({qA.projection.map[b] for b in B.members})))
        L3 = Subsemimodule(qB.quotient, tuple(sorted({qB.projection.map[a] for a in A.members})))
        N1o, incN1 = N1.as_semimodule("N1")
        L3o, incL3 = L3.as_semimodule("L3")
        posA = {x: i for i, x in enumerate(A.members)}
        posB = {x: i for i, x in enumerate(B.members)}
        posN1 = {x: i for i, x in enumerate(N1.members)}
        posL3 = {x: i for i, x in enumerate(L3.members)}

        def induced(src: Morphism, dst: Morphism, name: str) -> Morphism:
            out = [0] * src.cod.order
            for m in M2.elements:
                out[src.map[m]] = dst.map[m]
            return Morphism(src.cod, dst.cod, tuple(out), name)

        f1 = Morphism(L1o, Bo, tuple(posB[x] for x in AB), "f1")
        g1 = Morphism(Bo, N1o, tuple(posN1[qA.projection.map[b]] for b in B.members), "g1")
        f2 = Morphism(Ao, M2, incA.map, "f2")
        g2 = Morphism(M2, qA.quotient, qA.projection.map, "g2")
        f3 = Morphism(L3o, qB.quotient, incL3.map, "f3")
        g3 = induced(qB.projection, qAB.projection, "g3")
        a1 = Morphism(L1o, Ao, tuple(posA[x] for x in AB), "alpha1")
        a2 = Morphism(Bo, M2, incB.map, "alpha2")
        a3 = Morphism(N1o, qA.quotient, incN1.map, "alpha3")
        b1 = Morphism(Ao, L3o, tuple(posL3[qB.projection.map[a]] for a in A.members), "beta1")
        b2 = Morphism(M2, qB.quotient, qB.projection.map, "beta2")
        b3 = induced(qA.projection, qAB.projection, "beta3")
        return [[f1, g1], [f2, g2], [f3, g3]], [[a1, a2, a3], [b1, b2, b3]]


def _generated(M: Semimodule, seed: set[int]) -> tuple[int, ...]:
    return subsemimodule_generated(M, sorted(seed)).members


def usable_semirings(lemma_id: str, max_order: int = MAX_FUZZ_ORDER) -> tuple[Semiring, ...]:
    """Fuzz semirings with enough objects for the lemma to be non-degenerate."""
    if lemma_id != "SHORT5":
        return fuzz_semirings()
    # the middle objects must be cancellative and nonzero
    return tuple(S for S in fuzz_semirings()
                 if any(M.order > 1 and M.is_cancellative for M in candidate_pool(S, max_order)))


def _candidate(lemma_id: str, b: _Builder) -> Diagram:
    if lemma_id in ("FIVE", "FIVE_DETAILS"):
        rows, verts = b.ladder5()
        return Diagram.from_maps(rows, [verts], lemma_id)
    if lemma_id in ("NINE", "NINE_TOP", "NINE_BOTTOM"):
        rows, verts = b.nine()
        return Diagram.from_maps(rows, verts, lemma_id)
    if lemma_id == "SHORT5":
        top, bottom, verts = b.quotient_ladder(subtractive_bias=1.0, cancellative=True, widen=False)
    elif lemma_id == "SNAKE":
        top, bottom, verts = b.quotient_ladder(subtractive_bias=0.95)
    else:
        top, bottom, verts = b.quotient_ladder()
    return Diagram.from_maps([top, bottom], [verts], lemma_id)


def generate_lemma_instance(lemma_id: str, seed: int, max_order: int = MAX_FUZZ_ORDER,
                            semiring: Semiring | None = None, attempts: int = 400
                            ) -> tuple[Diagram, LemmaVerdict, int]:
    """A diagram satisfying the lemma's hypotheses, its verdict, and the attempts used.

    Raises :class:`BudgetExceeded` when no candidate passes within ``attempts``.
    """
    if not 2 <= max_order <= MAX_FUZZ_ORDER:
        raise InputError(f"max order must lie in 2..{MAX_FUZZ_ORDER}")
    rng = random.Random(seed)
    S = semiring if semiring is not None else rng.choice(usable_semirings(lemma_id, max_order))
    b = _Builder(rng, S, max_order)
    for i in range(1, attempts + 1):
        d = _candidate(lemma_id, b)
        if max(M.order for row in d.objects for M in row) < 2:
            continue
        verdict = lemma_verify(lemma_id, d)
        if verdict.hypotheses_satisfied:
            return d, verdict, i
    raise BudgetExceeded(f"{lemma_id}: no hypothesis-satisfying instance in {attempts} attempts")
