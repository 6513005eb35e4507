import pytest

from semiexact.algebra import (
    builtin_semiring,
    cyclic_group,
    identity,
    make_morphism,
    zero_map,
)
from semiexact.diagrams import (
    LEMMA_IDS,
    SHAPES,
    Diagram,
    connecting_morphism,
    diagram_to_dict,
    induced_cokernel_map,
    induced_kernel_map,
    lemma_verify,
    snake_hypotheses,
    validate_diagram,
)
from semiexact.errors import HypothesisError, InputError, MismatchError
from semiexact.exactness import zero_object
from semiexact.explorer.generators import (
    exhaustive_quotient_ladders,
    generate_lemma_instance,
    relaxed_snake_instances,
)
from semiexact.morphisms import classify, cokernel, kernel
from semiexact.substructures import subtractive_closure


def z_ladder(Z2, Z4, a1, a2, a3):
    f = make_morphism(Z2, Z4, [0, 2], "f")
    g = make_morphism(Z4, Z2, [0, 1, 0, 1], "g")
    verts = [make_morphism(Z2, Z2, a1, "alpha1"), make_morphism(Z4, Z4, a2, "alpha2"),
             make_morphism(Z2, Z2, a3, "alpha3")]
    return Diagram.from_maps([[f, g], [f, g]], [verts], "z_ladder")


@pytest.fixture
def snake(Z2, Z4):
    return z_ladder(Z2, Z4, [0, 0], [0, 2, 0, 2], [0, 0])


def brute_delta(d):
    """Every (k3, value) produced by any admissible lift, chased element by element."""
    (f1, g1), (f2, g2), (a1, a2, a3) = d.horiz[0], d.horiz[1], d.vert[0]
    proj = cokernel(a1).projection
    out = set()
    for k3 in g1.cod.elements:
        if a3.map[k3]:
            continue
        for m1 in g1.dom.elements:
            for l2 in f2.dom.elements:
                if g1.map[m1] == k3 and f2.map[l2] == a2.map[m1]:
                    out.add((k3, proj.map[l2]))
    return out


class TestDiagramShape:
    def test_single_object(self, Z2):
        d = Diagram(((Z2,),), ((),), ())
        assert d.shape == (1, 1) and validate_diagram(d).ok

    def test_endpoint_mismatch(self, Z2, Z4):
        f = make_morphism(Z2, Z4, [0, 2])
        with pytest.raises(MismatchError):
            Diagram(((Z2, Z4), (Z2, Z4)), ((f,), (f,)), ((identity(Z2), identity(Z2)),))

    def test_ragged_grid(self, Z2):
        with pytest.raises(InputError):
            Diagram(((Z2, Z2), (Z2,)), ((identity(Z2),), ()), ((identity(Z2),),))

    def test_mixed_semirings(self, Z2):
        other = cyclic_group(2, builtin_semiring("zmod", 2))
        with pytest.raises(MismatchError):
            Diagram(((Z2,), (other,)), ((), ()), ((zero_map(Z2, Z2),),))

    def test_shape_table(self):
        assert set(SHAPES) == set(LEMMA_IDS) and len(LEMMA_IDS) == 10


class TestCommutativity:
    def test_snake_commutes(self, snake):
        assert validate_diagram(snake).ok

    def test_identity_middle_flags_left_square(self, Z2, Z4):
        d = z_ladder(Z2, Z4, [0, 0], [0, 1, 2, 3], [0, 0])
        report = validate_diagram(d)
        assert [v.witness for v in report.violations] == [(0, 0, 1), (0, 1, 1)]


class TestInducedMaps:
    def test_identity_columns(self, Z2, Z4):
        f = make_morphism(Z2, Z4, [0, 2])
        k = induced_kernel_map(f, identity(Z2), identity(Z4))
        assert k.map == (0,) and k.dom.order == 1
        c = induced_cokernel_map(f, identity(Z2), identity(Z4))
        assert c.dom.order == 1 and c.cod.order == 1

    def test_surjective_alpha_gives_zero_cokernel(self, Z4, Z2):
        g = make_morphism(Z4, Z2, [0, 1, 0, 1])
        c = induced_cokernel_map(g, identity(Z4), identity(Z2))
        assert c.map == (0,)

    def test_snake_kernel_map_is_an_isomorphism(self, snake):
        (f1, _), _, (a1, a2, _) = snake.horiz[0], snake.horiz[1], snake.vert[0]
        f_K = induced_kernel_map(f1, a1, a2)
        # Ker(alpha1) = Z_2 lands on Ker(alpha2) = {0, 2}
        assert kernel(a2).members == (0, 2)
        assert f_K.map == (0, 1) and classify(f_K).injective and classify(f_K).surjective

    def test_escape_is_reported(self, Z2, Z4):
        f = make_morphism(Z2, Z4, [0, 2])
        with pytest.raises(HypothesisError):
            induced_kernel_map(f, zero_map(Z2, Z2), identity(Z4))

    def test_ill_defined_class_map(self, Z2, Z4):
        doubling = make_morphism(Z2, Z4, [0, 2])
        # the class {0, 2} of Coker(doubling) splits in Coker(0) = Z_4
        with pytest.raises(HypothesisError):
            induced_cokernel_map(identity(Z4), doubling, zero_map(Z2, Z4))
        g = make_morphism(Z4, Z2, [0, 1, 0, 1])
        assert induced_cokernel_map(g, doubling, zero_map(Z2, Z2)).map == (0, 1)

    def test_mismatched_arguments(self, Z2, Z4):
        with pytest.raises(MismatchError):
            induced_kernel_map(identity(Z2), identity(Z4), identity(Z2))


class TestSnake:
    def test_canonical_instance(self, snake):
        cert = connecting_morphism(snake)
        assert cert.delta.map == (0, 1)
        assert cert.delta.cod.order == 2
        assert cert.well_defined and cert.disagreement is None
        assert cert.ker_delta_ok and cert.image_delta_ok and cert.delta_k_uniform
        assert cert.all_ok and cert.columns == "strict"
        assert {(0, 0), (1, 1)} == brute_delta(snake)

    def test_identity_columns_give_zero_delta(self, Z2, Z4):
        d = z_ladder(Z2, Z4, [0, 1], [0, 1, 2, 3], [0, 1])
        cert = connecting_morphism(d)
        assert cert.delta.map == (0,)
        assert cert.all_ok

    def test_zero_columns(self, Z2, Z4):
        d = z_ladder(Z2, Z4, [0, 0], [0, 0, 0, 0], [0, 0])
        cert = connecting_morphism(d)
        assert set(enumerate(cert.delta.map)) == brute_delta(d)
        ker_delta = {k for k, v in enumerate(cert.delta.map) if v == 0}
        assert ker_delta == set(subtractive_closure(cert.g_K.cod, set(cert.g_K.map)))
        assert cert.delta.map == (0, 0)

    def test_precondition_failure(self, Z2, Z4):
        d = z_ladder(Z2, Z4, [0, 0], [0, 1, 2, 3], [0, 0])
        assert not dict(snake_hypotheses(d))["squares commute"]
        with pytest.raises(HypothesisError):
            connecting_morphism(d)

    def test_delta_matches_every_lift_on_quotient_ladders(self):
        checked = 0
        for S in (builtin_semiring("boolean"), builtin_semiring("trunc_nat", 2)):
            for d in exhaustive_quotient_ladders(S, 3):
                if not all(ok for _, ok in snake_hypotheses(d)):
                    continue
                cert = connecting_morphism(d)
                ker3 = kernel(d.vert[0][2]).members
                assert {(ker3[i], v) for i, v in enumerate(cert.delta.map)} == brute_delta(d)
                assert cert.all_ok
                checked += 1
        assert checked > 20

    def test_relaxed_columns_over_boolean(self):
        found = list(relaxed_snake_instances(builtin_semiring("boolean"), 5))
        assert found
        for d, v in found:
            cert = connecting_morphism(d)
            assert cert.columns == "relaxed"
            assert cert.all_ok
            assert not v.failed_claims()


class TestLemmaExamples:
    def test_short5_identity_ladder(self, Z2, Z4):
        v = lemma_verify("SHORT5", z_ladder(Z2, Z4, [0, 1], [0, 1, 2, 3], [0, 1]))
        assert v.hypotheses_satisfied and v.conclusion_holds

    def test_short5_with_non_cancellative_middle_is_vacuous(self, T2, T1, f_sat):
        zero = zero_object(T2.semiring)
        top = [zero_map(zero, T2), identity(T2)]
        bottom = [zero_map(zero, T1), identity(T1)]
        d = Diagram.from_maps([top, bottom], [[identity(zero), f_sat, f_sat]])
        v = lemma_verify("SHORT5", d)
        assert v.vacuous and v.conclusion_holds is None and v.claims == ()
        assert not dict(v.hypotheses)["M1 cancellative"]

    def test_snake_on_canonical_instance(self, snake):
        v = lemma_verify("SNAKE", snake)
        assert v.hypotheses_satisfied and v.conclusion_holds and v.counterexample is None

    def test_short5_literal_converse_fails(self, Z2):
        zero = zero_object(Z2.semiring)
        top = [zero_map(zero, Z2), identity(Z2)]
        bottom = [identity(Z2), zero_map(Z2, zero)]
        d = Diagram.from_maps([top, bottom], [[zero_map(zero, Z2), identity(Z2), zero_map(Z2, zero)]])
        v = lemma_verify("SHORT5", d)
        assert v.hypotheses_satisfied and v.conclusion_holds
        a1, a2, a3 = d.vert[0]
        # alpha2 is an isomorphism while neither outer column is
        assert classify(a2).injective and classify(a2).surjective
        assert not classify(a1).surjective and not classify(a3).injective

    def test_shape_and_id_errors(self, snake):
        with pytest.raises(InputError):
            lemma_verify("FIVE", snake)
        with pytest.raises(InputError):
            lemma_verify("SIX", snake)

    def test_counterexample_dump(self, snake):
        dump = diagram_to_dict(snake)
        assert dump["horiz"] == [[[0, 2], [0, 1, 0, 1]], [[0, 2], [0, 1, 0, 1]]]
        assert dump["vert"] == [[[0, 0], [0, 2, 0, 2], [0, 0]]]
        assert dump["semiring"] == "N0"


@pytest.mark.parametrize("lemma_id", LEMMA_IDS)
def test_generated_instances_hold(lemma_id):
    for seed in range(8):
        d, verdict, attempts = generate_lemma_instance(lemma_id, seed, max_order=6)
        assert verdict.hypotheses_satisfied and attempts >= 1
        assert verdict.conclusion_holds, verdict.counterexample
        assert lemma_verify(lemma_id, d) == verdict


@pytest.mark.parametrize("lemma_id", ["SHORT3", "DIAG1", "DIAG2", "SHORT5", "SNAKE"])
def test_quotient_ladders_over_small_semirings(lemma_id):
    satisfied = 0
    for S in (builtin_semiring("boolean"), builtin_semiring("trunc_nat", 2),
              builtin_semiring("zmod", 3)):
        for d in exhaustive_quotient_ladders(S, 3):
            v = lemma_verify(lemma_id, d)
            if v.hypotheses_satisfied:
                satisfied += 1
                assert v.conclusion_holds, v.counterexample
    assert satisfied > 0
