import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.algebra import (
    NATURALS,
    builtin_semiring,
    cyclic_group,
    identity,
    make_morphism,
    make_semimodule,
    saturating_monoid,
    validate_morphism,
    zero_map,
)
from semiexact.errors import AxiomError, BudgetExceeded, InputError, MismatchError
from semiexact.explorer.enumeration import corpus_up_to
from semiexact.explorer.generators import homs
from semiexact.morphisms import (
    classify,
    coimage,
    cokernel,
    compose,
    factorize,
    hom_enumerate,
    image,
    inverse,
    is_isomorphic,
    kernel,
)
from semiexact.substructures import (
    Subsemimodule,
    bourne_quotient,
    is_subtractive,
    subsemimodule_generated,
    subtractive_closure,
)

from conftest import small_semirings


def _maps_between(corpora):
    for C in corpora:
        for M in C:
            for N in C:
                yield from homs(M, N)


@pytest.fixture(scope="module")
def corpora4():
    return [corpus_up_to(S, 4) for S in small_semirings()]


@pytest.fixture(scope="module")
def all_maps4(corpora4):
    return list(_maps_between(corpora4))


@pytest.fixture(scope="module")
def inclusion_z4(Z4):
    L, incl = subsemimodule_generated(Z4, [2]).as_semimodule("L")
    return incl


class TestValidation:
    def test_identity_and_f_sat(self, T2, f_sat):
        assert validate_morphism(T2, T2, [0, 1, 2]).ok
        assert f_sat.map == (0, 1, 1)

    def test_swap_on_t2_fails_at_one_plus_one(self, T2):
        report = validate_morphism(T2, T2, [0, 2, 1])
        assert not report.ok
        assert any(v.witness[:2] == (1, 1) for v in report.violations)

    def test_shape_and_semiring_errors(self, T2, Z4):
        with pytest.raises(InputError):
            validate_morphism(T2, T2, [0, 1])
        with pytest.raises(InputError):
            validate_morphism(T2, T2, [0, 1, 3])
        with pytest.raises(MismatchError):
            validate_morphism(T2, cyclic_group(2, builtin_semiring("zmod", 2)), [0, 1, 1])
        with pytest.raises(AxiomError):
            make_morphism(T2, T2, [0, 2, 1])


class TestKernelCokernel:
    def test_kernel_examples(self, T2, T1, f_sat, monoids4):
        for M in monoids4:
            assert kernel(zero_map(M, T1)).members == tuple(M.elements)
            assert kernel(identity(M)).members == (0,)
        assert kernel(f_sat).members == (0,)

    def test_cokernel_examples(self, Z4, Z2, T1, monoids4, inclusion_z4):
        for M in monoids4:
            assert cokernel(identity(M)).quotient.order == 1
            assert is_isomorphic(cokernel(zero_map(T1, M)).quotient, M) is not None
        assert is_isomorphic(cokernel(inclusion_z4).quotient, Z2) is not None

    def test_image_coimage_factorization_examples(self, T2, T1, f_sat, monoids4):
        for M in monoids4:
            fac = factorize(identity(M))
            assert fac.iso.map == tuple(M.elements)
            assert image(zero_map(M, T1)).members == (0,)
            assert coimage(zero_map(M, T1)).quotient.order == 1
        assert image(f_sat).members == (0, 1)
        assert coimage(f_sat).class_members == ((0,), (1, 2))
        assert factorize(f_sat).iso.map == (0, 1)

    def test_coimage_is_not_the_bourne_quotient_of_the_kernel(self, f_sat, T2):
        # the fiber congruence merges 1 and 2; the kernel {0} merges nothing
        assert coimage(f_sat).quotient.order == 2
        assert bourne_quotient(T2, kernel(f_sat)).quotient.order == 3

    def test_kernels_are_subtractive(self, all_maps4):
        for f in all_maps4:
            assert is_subtractive(f.dom, kernel(f))


class TestClassification:
    def test_f_sat(self, f_sat):
        c = classify(f_sat)
        assert not c.injective and c.semi_mono and not c.k_uniform
        assert c.surjective and c.i_uniform and not c.steady and c.costeady and c.cs_epi

    def test_identity_all_true(self, monoids4):
        for M in monoids4:
            flags = classify(identity(M)).as_dict()
            # an identity is a cancellative morphism exactly when its object is cancellative
            assert flags.pop("cancellative_morphism") == M.is_cancellative
            assert all(flags.values())

    def test_subgroup_inclusion(self, inclusion_z4):
        c = classify(inclusion_z4)
        assert c.injective and c.k_uniform and c.i_uniform and c.uniform
        assert not c.surjective and not c.semi_epi

    def test_derived_flags(self, all_maps4):
        for f in all_maps4:
            c = classify(f)
            assert c.uniform == (c.k_uniform and c.i_uniform)
            assert c.bisteady == (c.steady and c.costeady)
            assert c.semi_iso == (c.semi_mono and c.semi_epi)

    def test_against_definitions(self, all_maps4):
        for f in all_maps4:
            c = classify(f)
            X, Y = f.dom, f.cod
            img = set(f.map)
            assert c.injective == (len(img) == X.order)
            assert c.surjective == (img == set(Y.elements))
            assert c.semi_mono == (f.map.count(0) == 1)
            closure = {y for y in Y.elements if any(Y.add[y][a] in img for a in img)}
            assert c.i_uniform == (closure == img)
            assert c.semi_epi == (closure == set(Y.elements))
            ker = [x for x in X.elements if f.map[x] == 0]
            assert c.k_uniform == all(
                any(X.add[a][k1] == X.add[b][k2] for k1 in ker for k2 in ker)
                for a in X.elements for b in X.elements if f.map[a] == f.map[b])
            assert c.cancellative_morphism == all(
                len({Y.add[z][y] for z in Y.elements}) == Y.order for y in img)

    def test_injective_surjective_characterizations(self, all_maps4):
        for f in all_maps4:
            c = classify(f)
            assert c.injective == (c.semi_mono and c.k_uniform)
            assert c.surjective == (c.semi_epi and c.i_uniform)

    def test_steady_costeady_by_isomorphism(self, all_maps4):
        for f in all_maps4:
            c = classify(f)
            im, _ = image(f).as_semimodule()
            by_kernel = bourne_quotient(f.dom, kernel(f)).quotient
            assert c.steady == c.k_uniform == (is_isomorphic(by_kernel, im) is not None)
            ker_coker, _ = kernel(cokernel(f).projection).as_semimodule()
            assert c.costeady == c.i_uniform == (is_isomorphic(ker_coker, im) is not None)
            assert c.costeady == (set(subtractive_closure(f.cod, image(f))) == set(f.map))

    def test_bisteady_by_canonical_map(self, all_maps4):
        for f in all_maps4:
            q = bourne_quotient(f.dom, kernel(f))
            closure = set(subtractive_closure(f.cod, image(f)))
            # [x] -> f(x) is well defined; uniform iff it is a bijection onto the closure
            values = {}
            for x, cls in enumerate(q.projection.map):
                values.setdefault(cls, f.map[x])
            bijective = sorted(values.values()) == sorted(closure)
            assert bijective == classify(f).bisteady

    def test_bisteady_is_not_an_abstract_isomorphism_statement(self):
        # T = ({0,1,2}, 1 + x = 1 for x != 0, 2 + 2 = 1), f = [0, 1, 1]
        M = make_semimodule([[0, 1, 2], [1, 1, 1], [2, 1, 1]])
        f = make_morphism(M, M, [0, 1, 1])
        c = classify(f)
        assert not c.k_uniform and not c.i_uniform
        q = bourne_quotient(M, kernel(f)).quotient
        closure, _ = Subsemimodule(M, subtractive_closure(M, image(f)).members).as_semimodule()
        assert is_isomorphic(q, closure) is not None

    def test_ring_sanity(self):
        for n in (2, 3):
            S = builtin_semiring("zmod", n)
            for f in _maps_between([corpus_up_to(S, 5)]):
                c = classify(f)
                assert c.uniform and c.steady and c.costeady

    def test_cs_epi_only_for_surjections_on_cancellative_corpus(self, all_maps4):
        checked = 0
        for f in all_maps4:
            if f.dom.is_cancellative and f.cod.is_cancellative:
                checked += 1
                assert classify(f).cs_epi == classify(f).surjective
        assert checked > 50


class TestComposition:
    def test_examples(self, f_sat, T2, T1, monoids4):
        assert compose(identity(T1), f_sat) == f_sat
        assert compose(f_sat, identity(T2)) == f_sat
        for M in monoids4:
            assert compose(zero_map(T1, M), f_sat) == zero_map(T2, M)

    def test_mismatch(self, f_sat):
        with pytest.raises(MismatchError):
            compose(f_sat, f_sat)

    def test_uniformity_laws(self):
        """Transfer of k-/i-uniformity along g . f for injective g or surjective f."""
        laws = 0
        for S in (NATURALS, builtin_semiring("boolean"), builtin_semiring("trunc_nat", 2)):
            C = corpus_up_to(S, 3 if S.is_naturals else 4)
            maps = list(_maps_between([C]))
            by_dom = {}
            for g in maps:
                by_dom.setdefault(g.dom, []).append(g)
            for f in maps:
                for g in by_dom.get(f.cod, []):
                    cf, cg, cgf = classify(f), classify(g), classify(compose(g, f))
                    if cg.injective:
                        laws += 1
                        assert cf.k_uniform == cgf.k_uniform
                        if cgf.i_uniform:
                            assert cf.i_uniform
                        if cgf.uniform:
                            assert cf.uniform
                        if cg.i_uniform:
                            assert cf.i_uniform == cgf.i_uniform
                            assert cf.uniform == cgf.uniform
                    if cf.surjective:
                        laws += 1
                        assert cg.i_uniform == cgf.i_uniform
                        if cgf.k_uniform:
                            assert cg.k_uniform
                        if cgf.uniform:
                            assert cg.uniform
                        if cf.k_uniform:
                            assert cg.k_uniform == cgf.k_uniform
                            assert cg.uniform == cgf.uniform
        assert laws > 1000


class TestFactorization:
    def test_law_over_corpus(self, all_maps4):
        for f in all_maps4:
            fac = factorize(f)
            assert compose(fac.im_inclusion, compose(fac.iso, fac.coim_projection)).map == f.map
            assert classify(fac.coim_projection).surjective
            assert classify(fac.im_inclusion).injective
            assert inverse(fac.iso) is not None


class TestHomEnumeration:
    def test_examples(self, Z2, Z4, T1):
        assert [f.map for f in hom_enumerate(Z2, Z4)] == [(0, 0), (0, 2)]
        assert [f.map for f in hom_enumerate(Z2, T1)] == [(0, 0)]
        assert len(hom_enumerate(T1, T1)) == 2

    def test_brute_and_search_agree(self):
        for S in (NATURALS, builtin_semiring("boolean"), builtin_semiring("trunc_nat", 2)):
            C = corpus_up_to(S, 4)
            for M, N in itertools.product(C, C):
                brute = [f.map for f in hom_enumerate(M, N, method="brute")]
                search = [f.map for f in hom_enumerate(M, N, method="search")]
                assert brute == search == sorted(set(brute))

    def test_against_direct_validation(self, monoids4):
        small = [M for M in monoids4 if M.order <= 3]
        for M, N in itertools.product(small, small):
            direct = [m for m in itertools.product(N.elements, repeat=M.order)
                      if m[0] == 0 and validate_morphism(M, N, m).ok]
            assert [f.map for f in hom_enumerate(M, N)] == direct

    def test_budget(self):
        M, N = saturating_monoid(6), saturating_monoid(6)
        with pytest.raises(BudgetExceeded):
            hom_enumerate(M, N, budget=10, method="brute")
        with pytest.raises(BudgetExceeded):
            hom_enumerate(M, N, budget=3, method="search")

    def test_large_search_path(self):
        # 9 ** 8 candidates forces the generator search; maps are fixed by f(1)
        maps = hom_enumerate(cyclic_group(9), cyclic_group(9))
        assert [f.map[1] for f in maps] == list(range(9))


class TestIsomorphism:
    def test_examples(self, Z4, Z2):
        assert is_isomorphic(Z4, Z4) is not None
        assert is_isomorphic(Z4, saturating_monoid(3)) is None
        assert is_isomorphic(bourne_quotient(Z4, [0, 2]).quotient, Z2) is not None

    def test_against_permutation_scan(self, monoids4):
        small = [M for M in monoids4 if M.order == 4]
        for M, N in itertools.product(small, small):
            brute = any(
                all(p[M.add[a][b]] == N.add[p[a]][p[b]] for a in M.elements for b in M.elements)
                for p in ((0,) + q for q in itertools.permutations(range(1, 4))))
            assert (is_isomorphic(M, N) is not None) == brute


@given(st.integers(0, 5), st.data())
def test_kernel_image_cokernel_shapes(which, data):
    C = corpus_up_to(small_semirings()[which], 4)
    M = data.draw(st.sampled_from(C))
    N = data.draw(st.sampled_from(C))
    f = data.draw(st.sampled_from(homs(M, N)))
    assert 0 in kernel(f) and 0 in image(f)
    q = cokernel(f)
    assert set(kernel(q.projection)) == set(subtractive_closure(N, image(f)))
    assert coimage(f).quotient.order == len(image(f))
