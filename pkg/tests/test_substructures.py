import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.algebra import NATURALS, builtin_semiring, cyclic_group, regular_module
from semiexact.errors import AxiomError, InputError
from semiexact.explorer.enumeration import corpus_up_to
from semiexact.morphisms import is_isomorphic, kernel
from semiexact.substructures import (
    Congruence,
    Subsemimodule,
    all_subsemimodules,
    bourne_congruence,
    bourne_quotient,
    congruence_generated,
    identity_congruence,
    iizuka_congruence,
    is_subtractive,
    quotient,
    subsemimodule_generated,
    subtractive_closure,
    total_congruence,
)

from conftest import small_semirings


@pytest.fixture(scope="module")
def corpus5():
    """Order-5 corpora over N0 and a few finite semirings."""
    out = []
    for S in (NATURALS, builtin_semiring("boolean"), builtin_semiring("trunc_nat", 2),
              builtin_semiring("zmod", 2), builtin_semiring("zmod", 3)):
        out += corpus_up_to(S, 5)
    return out


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _brute_congruences(M):
    """Every compatible equivalence on M, as class_of tuples."""
    out = []
    for p in _partitions(list(M.elements)):
        co = [0] * M.order
        for block in p:
            for x in block:
                co[x] = min(block)
        ok = all(
            co[M.add[a][c]] == co[M.add[b][c]]
            for a in M.elements for b in M.elements if co[a] == co[b] for c in M.elements
        ) and all(
            co[M.act[a][s]] == co[M.act[b][s]]
            for a in M.elements for b in M.elements if co[a] == co[b] for s in M.scalars
        )
        if ok:
            out.append(tuple(co))
    return out


class TestGeneratedSubsemimodule:
    def test_examples(self, T2, Z4):
        assert subsemimodule_generated(T2, []).members == (0,)
        assert subsemimodule_generated(T2, [1]).members == (0, 1, 2)
        assert subsemimodule_generated(Z4, [2]).members == (0, 2)

    def test_action_closure_over_finite_semiring(self):
        S = builtin_semiring("zmod", 4)
        R = regular_module(S)
        assert subsemimodule_generated(R, [2]).members == (0, 2)
        assert subsemimodule_generated(R, [1]).members == (0, 1, 2, 3)

    def test_out_of_range_seed(self, T2):
        with pytest.raises(InputError):
            subsemimodule_generated(T2, [3])

    def test_subsemimodule_type_checks_closure(self, T2):
        with pytest.raises(AxiomError):
            Subsemimodule(T2, (0, 1))
        with pytest.raises(AxiomError):
            Subsemimodule(T2, (1, 2))

    def test_as_semimodule_relabels(self, Z4):
        L, incl = subsemimodule_generated(Z4, [2]).as_semimodule()
        assert L.order == 2 and L.add[1][1] == 0
        assert incl.map == (0, 2)


class TestSubtractiveClosure:
    def test_examples(self, T2, Z4, monoids4):
        for M in monoids4:
            assert subtractive_closure(M, [0]).members == (0,)
            assert subtractive_closure(M, M.elements).members == tuple(M.elements)
        assert subtractive_closure(T2, [0, 2]).members == (0, 1, 2)

    def test_empty_is_refused(self, T2):
        with pytest.raises(InputError):
            subtractive_closure(T2, [])

    def test_is_subtractive_examples(self, T2, Z4):
        assert is_subtractive(Z4, [0, 2])
        assert not is_subtractive(T2, [0, 2])
        assert is_subtractive(T2, [0, 1, 2])

    def test_matches_definition(self, monoids4):
        for M in monoids4:
            for X in itertools.chain.from_iterable(
                    itertools.combinations(M.elements, k) for k in range(1, M.order + 1)):
                brute = {s for s in M.elements for x1 in X for x2 in X if M.add[s][x1] == x2}
                assert set(subtractive_closure(M, X)) == brute


class TestCongruences:
    def test_bourne_examples(self, Z4, monoids4):
        for M in monoids4:
            assert bourne_congruence(M, [0]) == identity_congruence(M)
            assert bourne_congruence(M, M.elements) == total_congruence(M)
        assert bourne_congruence(Z4, [0, 2]).classes == ((0, 2), (1, 3))

    def test_iizuka_examples(self, Z4, T2, monoids4):
        assert iizuka_congruence(Z4, [0]) == identity_congruence(Z4)
        for M in monoids4:
            assert iizuka_congruence(M, M.elements) == total_congruence(M)

    def test_iizuka_of_t2_by_zero_is_total(self, T2):
        # 0 + 0 + 2 = 2 = 1 + 0 + 2, so the common summand 2 identifies 0 with 1
        brute = {(a, b) for a in T2.elements for b in T2.elements
                 if any(T2.add[T2.add[a][0]][t] == T2.add[T2.add[b][0]][t] for t in T2.elements)}
        assert (0, 1) in brute
        c = iizuka_congruence(T2, [0])
        assert c == total_congruence(T2)
        assert quotient(T2, c).quotient.order == 1

    def test_generated_examples(self, Z4, T2, monoids4):
        for M in monoids4:
            assert congruence_generated(M, []) == identity_congruence(M)
        assert congruence_generated(Z4, [(0, 2)]).classes == ((0, 2), (1, 3))
        assert congruence_generated(T2, [(1, 2)]).classes == ((0,), (1, 2))

    def test_generated_out_of_range(self, T2):
        with pytest.raises(InputError):
            congruence_generated(T2, [(0, 3)])

    def test_congruence_rejects_non_least_representatives(self, T2):
        with pytest.raises(InputError):
            Congruence(T2, (0, 2, 2))
        with pytest.raises(InputError):
            Congruence(T2, (0, 1))

    def test_generated_is_least_against_brute_force(self):
        for S in small_semirings():
            for M in corpus_up_to(S, 4):
                every = _brute_congruences(M)
                for pairs in itertools.chain(
                        itertools.combinations(itertools.combinations(M.elements, 2), 1),
                        itertools.combinations(itertools.combinations(M.elements, 2), 2)):
                    got = congruence_generated(M, pairs)
                    containing = [co for co in every if all(co[a] == co[b] for a, b in pairs)]
                    assert got.class_of in containing
                    # least: every congruence containing the pairs contains this one
                    for co in containing:
                        assert all(co[a] == co[got.class_of[a]] for a in M.elements)


class TestCorpusProperties:
    def test_closure_laws_and_bourne_invariance(self, corpus5):
        for M in corpus5:
            for L in all_subsemimodules(M):
                closure = subtractive_closure(M, L)
                assert set(L) <= set(closure)
                assert subtractive_closure(M, closure) == closure
                assert bourne_congruence(M, L) == bourne_congruence(M, closure)
                assert is_subtractive(M, L) == (set(L) == set(closure))

    def test_iizuka_quotients_cancellative(self, corpus5):
        for M in corpus5:
            for L in all_subsemimodules(M):
                assert quotient(M, iizuka_congruence(M, L)).quotient.is_cancellative

    def test_bourne_projection_kernel_is_closure(self, corpus5):
        for M in corpus5:
            for L in all_subsemimodules(M):
                q = bourne_quotient(M, L)
                assert set(kernel(q.projection)) == set(subtractive_closure(M, L))

    def test_cancellative_inherited(self, corpus5):
        for M in corpus5:
            if not M.is_cancellative:
                continue
            for L in all_subsemimodules(M):
                sub, _ = L.as_semimodule()
                assert sub.is_cancellative
                assert bourne_quotient(M, L).quotient.is_cancellative

    def test_quotient_structure(self, corpus5):
        for M in corpus5:
            for L in all_subsemimodules(M):
                q = bourne_quotient(M, L)
                proj = q.projection
                assert proj.map[0] == 0
                assert set(proj.map) == set(q.quotient.elements)
                for a, b in itertools.product(M.elements, M.elements):
                    assert proj.map[M.add[a][b]] == q.quotient.add[proj.map[a]][proj.map[b]]
                for a, s in itertools.product(M.elements, M.scalars):
                    assert proj.map[M.act[a][s]] == q.quotient.act[proj.map[a]][s]


class TestQuotient:
    def test_identity_quotient_is_isomorphic(self, monoids4):
        for M in monoids4:
            q = quotient(M, identity_congruence(M))
            assert q.projection.map == tuple(M.elements)
            assert is_isomorphic(q.quotient, M) is not None

    def test_z4_mod_subgroup(self, Z4, Z2):
        q = bourne_quotient(Z4, [0, 2])
        assert q.quotient.order == 2
        assert is_isomorphic(q.quotient, Z2) is not None
        assert q.class_members == ((0, 2), (1, 3))

    def test_foreign_congruence(self, Z4, T2):
        with pytest.raises(InputError):
            quotient(Z4, identity_congruence(T2))


class TestAllSubsemimodules:
    def test_examples(self, T2, Z4, B):
        assert [L.members for L in all_subsemimodules(T2)] == [(0,), (0, 2), (0, 1, 2)]
        assert [L.members for L in all_subsemimodules(Z4)] == [(0,), (0, 2), (0, 1, 2, 3)]
        assert [L.members for L in all_subsemimodules(B)] == [(0,), (0, 1)]

    def test_against_subset_scan(self, corpus5):
        for M in corpus5:
            scan = []
            for k in range(M.order):
                for rest in itertools.combinations(range(1, M.order), k):
                    members = (0,) + rest
                    ms = set(members)
                    if all(M.add[a][b] in ms for a in ms for b in ms) and all(
                            M.act[a][s] in ms for a in ms for s in M.scalars):
                        scan.append(members)
            got = [L.members for L in all_subsemimodules(M)]
            assert sorted(got) == sorted(scan)
            assert len(set(got)) == len(got)

    def test_order_bound(self):
        with pytest.raises(InputError):
            all_subsemimodules(cyclic_group(17))


@given(st.sampled_from(range(6)), st.data())
def test_bourne_is_a_congruence_containing_l(which, data):
    S = small_semirings()[which]
    corpus = corpus_up_to(S, 4)
    M = data.draw(st.sampled_from(corpus))
    L = data.draw(st.sampled_from(all_subsemimodules(M)))
    c = bourne_congruence(M, L)
    assert all(c.same(0, x) for x in L)
    assert c.compatibility_failure() is None
    assert all(c.class_of[c.class_of[x]] == c.class_of[x] for x in M.elements)
    # Bourne is finer than Iizuka
    i = iizuka_congruence(M, L)
    assert all(i.same(a, b) for a in M.elements for b in M.elements if c.same(a, b))
