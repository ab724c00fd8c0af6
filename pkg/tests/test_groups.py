"""Collection arithmetic: multiplication, inverses, powers, commutators,
orders, enumeration, and the structural helpers."""

import random

import pytest

from galemb import groups
from galemb.catalog import instantiate
from galemb.groups import (
    ElementError,
    EnumerationBoundError,
    PresentationError,
    PrimeContext,
    make_presentation,
)


def fold_mul(P, x, times):
    """Independent oracle: n-fold repeated multiplication."""
    acc = P.identity
    for _ in range(times):
        acc = groups.mul(P, acc, x)
    return acc


class TestMul:
    def test_commutator_relation_drives_collection(self, phi2_41_p3):
        # alpha1 * alpha = alpha * alpha1 * alpha2
        P = phi2_41_p3.presentation
        assert groups.mul(P, (0, 1, 0), (1, 0, 0)) == (1, 1, 1)

    def test_identity(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        rng = random.Random(7)
        for _ in range(20):
            x = tuple(rng.randrange(o) for o in P.orders)
            assert groups.mul(P, x, P.identity) == x
            assert groups.mul(P, P.identity, x) == x

    def test_power_tail_carry(self, phi2_41_p3):
        # alpha^27 = alpha2, computed by brute-force repeated multiplication
        P = phi2_41_p3.presentation
        assert fold_mul(P, P.generator("alpha"), 27) == (0, 0, 1)

    def test_dimension_mismatch(self, phi2_41_p3):
        with pytest.raises(ElementError):
            groups.mul(phi2_41_p3.presentation, (0, 0), (0, 0, 0))


class TestInv:
    def test_identity(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        assert groups.inv(P, P.identity) == P.identity

    def test_alpha_inverse_matches_brute_force(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        alpha = P.generator("alpha")
        candidates = [
            (26, 0, b) for b in range(3)
            if groups.mul(P, alpha, (26, 0, b)) == P.identity
        ]
        assert candidates == [(26, 0, 2)]
        assert groups.inv(P, alpha) == (26, 0, 2)

    def test_involution_on_random_elements(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        rng = random.Random(11)
        for _ in range(100):
            x = tuple(rng.randrange(o) for o in P.orders)
            assert groups.inv(P, groups.inv(P, x)) == x
            assert groups.mul(P, x, groups.inv(P, x)) == P.identity


class TestPow:
    def test_zero(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        assert groups.pow_element(P, (5, 1, 2), 0) == P.identity

    def test_cube_of_product(self, phi2_41_p3):
        # (alpha*alpha1)^3 = alpha^3: the commutator correction is a cube
        P = phi2_41_p3.presentation
        x = groups.mul(P, P.generator("alpha"), P.generator("alpha1"))
        expected = fold_mul(P, x, 3)
        assert expected == (3, 0, 0)
        assert groups.pow_element(P, x, 3) == expected

    def test_tail_of_order_p2_generator(self):
        # alpha1^(p^2) = beta in the p^2-kernel family
        inst = instantiate("Phi14(42)", 3)
        P = inst.presentation
        assert groups.pow_element(P, P.generator("alpha1"), 9) == (0, 0, 1)

    def test_agrees_with_iterated_mul(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        rng = random.Random(3)
        for _ in range(10):
            x = tuple(rng.randrange(o) for o in P.orders)
            acc = P.identity
            for n in range(2 * 27 + 1):
                assert groups.pow_element(P, x, n) == acc
                acc = groups.mul(P, acc, x)


class TestCommutator:
    def test_self_commutator_trivial(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        rng = random.Random(5)
        for _ in range(20):
            x = tuple(rng.randrange(o) for o in P.orders)
            assert groups.commutator(P, x, x) == P.identity

    def test_defining_relation(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        assert groups.commutator(P, P.generator("alpha1"), P.generator("alpha")) == (0, 0, 1)

    def test_inverted_orientation(self, phi4_221a_p3):
        # [alpha, alpha2] = beta2^-1, from [alpha2, alpha] = beta2
        P = phi4_221a_p3.presentation
        got = groups.commutator(P, P.generator("alpha"), P.generator("alpha2"))
        assert got == (0, 0, 0, 0, 2)

    def test_antisymmetry(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        rng = random.Random(13)
        for _ in range(50):
            x = tuple(rng.randrange(o) for o in P.orders)
            y = tuple(rng.randrange(o) for o in P.orders)
            assert groups.commutator(P, x, y) == groups.inv(P, groups.commutator(P, y, x))

    def test_relation_words_are_central(self):
        for label, p in [("Phi2(41)", 3), ("Phi15(2211)a", 3), ("Phi14(321)", 3)]:
            P = instantiate(label, p).presentation
            for i, tail in enumerate(P.power_tails):
                if tail is not None:
                    assert groups.is_central_element(P, tuple(c % o for c, o in zip(tail, P.orders)))
            for _, _, word in P.comm:
                assert groups.is_central_element(P, tuple(c % o for c, o in zip(word, P.orders)))


class TestStructure:
    def test_abelian_presentation(self, abelian_p3):
        assert groups.derived_subgroup(abelian_p3) == {abelian_p3.identity}
        assert len(groups.center(abelian_p3)) == groups.group_order(abelian_p3)

    def test_derived_subgroup_order_p(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        derived = groups.derived_subgroup(P)
        assert derived == {(0, 0, 0), (0, 0, 1), (0, 0, 2)}

    def test_derived_subgroup_order_p2_and_abelian_quotient(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        derived = groups.derived_subgroup(P)
        assert len(derived) == 9
        assert all(x[:3] == (0, 0, 0) for x in derived)
        assert groups.is_abelian_quotient(P, ["beta1", "beta2"])
        assert not groups.is_abelian_quotient(P, ["beta1"])

    def test_element_order_divides_exponent(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        rng = random.Random(23)
        for _ in range(30):
            x = tuple(rng.randrange(o) for o in P.orders)
            order = groups.element_order(P, x)
            assert 81 % order == 0  # exponent of Phi2(41) at p=3 is p^4

    def test_group_order(self, phi2_41_p3, phi4_221a_p3):
        assert groups.group_order(phi2_41_p3.presentation) == 3**5
        assert groups.group_order(phi4_221a_p3.presentation) == 3**5


class TestCentralLog:
    def test_identity(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        assert groups.central_log(P, P.identity, "alpha2") == 0

    def test_power_tail(self, phi2_41_p3):
        P = phi2_41_p3.presentation
        x = groups.pow_element(P, P.generator("alpha"), 27)
        assert groups.central_log(P, x, "alpha2") == 1

    def test_projection_modulo_complement(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        c = groups.commutator(P, P.generator("alpha"), P.generator("alpha1"))
        assert groups.central_log(P, c, "beta1", {"beta2"}) == 2

    def test_rejects_support_outside_subgroup(self, phi4_221a_p3):
        P = phi4_221a_p3.presentation
        with pytest.raises(ElementError):
            groups.central_log(P, P.generator("alpha"), "beta1", {"beta2"})


class TestEnumerate:
    def test_trivial_group(self):
        ctx = PrimeContext.for_prime(3)
        P = make_presentation(ctx, [])
        assert groups.enumerate_elements(P) == [()]

    def test_lengths(self, phi2_41_p3):
        assert len(groups.enumerate_elements(phi2_41_p3.presentation)) == 243
        P6 = instantiate("Phi14(42)", 3).presentation
        assert len(groups.enumerate_elements(P6)) == 729

    def test_lexicographic_order(self, abelian_p3):
        elements = groups.enumerate_elements(abelian_p3)
        assert elements == sorted(elements)

    def test_bound(self, phi2_41_p3):
        with pytest.raises(EnumerationBoundError):
            groups.enumerate_elements(phi2_41_p3.presentation, bound=100)


class TestValidator:
    def test_rejects_p_equal_2(self):
        with pytest.raises(PresentationError):
            PrimeContext.for_prime(2)

    def test_rejects_composite(self):
        with pytest.raises(PresentationError):
            PrimeContext.for_prime(9)

    def test_rejects_tail_on_noncentral_target(self):
        # x's tail hits y, but y carries a commutator relation: not class <= 2 data
        ctx = PrimeContext.for_prime(3)
        with pytest.raises(PresentationError):
            make_presentation(
                ctx,
                [("x", 1), ("y", 1), ("z", 1)],
                power_tails={"x": {"y": 1}},
                comms={("y", "x"): {"z": 1}},
            )

    def test_prime_context_values(self):
        ctx = PrimeContext.for_prime(7)
        assert ctx.nu == 3 and ctx.g == 3


class TestBulkOps:
    def test_bulk_matches_scalar(self, phi4_221a_p3):
        import numpy as np

        P = phi4_221a_p3.presentation
        rng = random.Random(1)
        X, Y = [], []
        for _ in range(200):
            X.append([rng.randrange(o) for o in P.orders])
            Y.append([rng.randrange(o) for o in P.orders])
        Z = groups.bulk_mul(P, np.array(X), np.array(Y))
        for x, y, z in zip(X, Y, Z):
            assert groups.mul(P, tuple(x), tuple(y)) == tuple(z)

    def test_exhaustive_associativity_small(self, phi2_41_p3):
        assert groups.associativity_exhaustive(phi2_41_p3.presentation)

    def test_random_associativity(self):
        P = instantiate("Phi14(321)", 3).presentation
        assert groups.associativity_random(P, 20_000, seed=42)
