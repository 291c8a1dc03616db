import numpy as np
import pytest

from involex.errors import SizeLimitExceeded
from involex.groups import center, closure, derived_subgroup, from_table, realize
from involex.maps import (
    are_isomorphic,
    enumerate_automorphisms,
    fingerprint,
    hom_from_generator_images,
    identity_map,
    is_characteristic,
)
from involex.words import parse_presentation


def word_eval(group, letters, images):
    acc = 0
    for x in letters:
        g = images[abs(x) - 1]
        acc = group.mul(acc, g if x > 0 else int(group.inv[g]))
    return acc


def brute_force_generator_pairs(group, presentation):
    """Independent automorphism oracle: all generator-image tuples that
    satisfy every relator and generate the group (von Dyck gives the rest)."""
    n = group.order
    out = []
    k = presentation.n_generators
    assert k == 2
    for x in range(n):
        for y in range(n):
            images = (x, y)
            if any(word_eval(group, rel.letters, images) != 0 for rel in presentation.relators):
                continue
            if len(closure(group, images)) != n:
                continue
            out.append(images)
    return out


class TestHomExtension:
    def test_square_map_on_c4_is_a_hom(self, memo):
        # a -> a^2 extends to the squaring endomorphism (kernel of order 2)
        c4 = memo.group("C4")
        a = c4.generators[0]
        phi = hom_from_generator_images(c4, c4, [c4.power(a, 2)])
        assert phi is not None
        assert not phi.is_bijective
        assert sorted(set(int(i) for i in phi.images)) == [0, c4.power(a, 2)]

    def test_identity_images(self, memo):
        g = memo.group("Q8")
        phi = hom_from_generator_images(g, g, list(g.generators))
        assert phi == identity_map(g)

    def test_inversion_on_c4(self, memo):
        c4 = memo.group("C4")
        a = c4.generators[0]
        phi = hom_from_generator_images(c4, c4, [c4.power(a, 3)])
        assert phi is not None and phi.is_bijective
        assert np.array_equal(phi.images, c4.inv)

    def test_no_extension_when_order_obstructs(self, memo):
        # C4 -> C8 sending a to a generator: a^4 would need to die but does not
        c4, c8 = memo.group("C4"), memo.group("C8")
        assert hom_from_generator_images(c4, c8, [c8.generators[0]]) is None

    def test_quotient_style_hom(self, memo):
        c4, c2 = memo.group("C4"), memo.group("C2")
        phi = hom_from_generator_images(c4, c2, [1])
        assert phi is not None
        assert [int(i) for i in phi.images] == [0, 1, 0, 1]

    def test_wrong_arity_rejected(self, memo):
        with pytest.raises(ValueError, match="one image"):
            hom_from_generator_images(memo.group("Q8"), memo.group("Q8"), [0])

    def test_hom_law_exhaustive(self, memo):
        g = memo.group("D8")
        for alpha in enumerate_automorphisms(g):
            for x in range(g.order):
                for y in range(g.order):
                    assert alpha(g.mul(x, y)) == g.mul(alpha(x), alpha(y))


class TestAutomorphisms:
    def test_c8_has_4(self, memo):
        assert len(memo.auts("C8")) == 4

    def test_c2x2_has_6(self, memo):
        assert len(memo.auts("C2x2")) == 6

    def test_d8_has_8(self, memo):
        assert len(memo.auts("D8")) == 8

    def test_q8_has_24(self, memo):
        assert len(memo.auts("Q8")) == 24

    def test_g1_matches_brute_force_oracle(self, memo):
        g1 = memo.group("G1")
        pairs = brute_force_generator_pairs(g1, memo.presentation("G1"))
        auts = memo.auts("G1")
        assert sorted(a.generator_images for a in auts) == sorted(pairs)
        orders = g1.element_orders
        a, b = g1.generators
        for x, y in pairs:
            assert orders[x] == 16
            assert 4 % orders[y] == 0

    def test_deterministic_order(self, memo):
        g = memo.group("Q8")
        twice = [a.generator_images for a in enumerate_automorphisms(g)]
        assert twice == [a.generator_images for a in memo.auts("Q8")]

    def test_closed_under_composition_and_inverse(self, memo):
        for name in ("C8", "D8", "Q8"):
            auts = memo.auts(name)
            keys = {a.images.tobytes() for a in auts}
            for a in auts:
                assert a.inverse().images.tobytes() in keys
                for b in auts:
                    assert a.then(b).images.tobytes() in keys

    def test_size_is_multiple_of_inner_count(self, memo):
        import math

        for name in ("C8", "D8", "Q8", "G1", "SD16"):
            g = memo.group(name)
            n_auts = len(memo.auts(name))
            inner = g.order // len(center(g))
            assert n_auts % inner == 0
            assert math.factorial(g.order) % n_auts == 0

    def test_size_bounds_enforced(self, memo):
        five_gens = realize(
            parse_presentation(
                "<a,b,c,d,e | a^2, b^2, c^2, d^2, e^2, "
                "[b,a], [c,a], [c,b], [d,a], [d,b], [d,c], [e,a], [e,b], [e,c], [e,d]>"
            )
        )
        with pytest.raises(SizeLimitExceeded, match="generators"):
            enumerate_automorphisms(five_gens)


class TestIsomorphism:
    def test_g1_not_iso_g2(self, memo):
        assert are_isomorphic(memo.group("G1"), memo.group("G2")) is None

    def test_c4x2_not_iso_c8(self, memo):
        assert are_isomorphic(memo.group("C4x2"), memo.group("C8")) is None

    def test_relabeled_g1_is_iso(self, memo):
        g1 = memo.group("G1")
        rng = np.random.default_rng(7)
        sigma = np.concatenate([[0], 1 + rng.permutation(g1.order - 1)]).astype(np.int32)
        relabeled = np.empty_like(g1.table)
        relabeled[sigma[:, None], sigma[None, :]] = sigma[g1.table]
        h = from_table(relabeled, generators=[int(sigma[g]) for g in g1.generators])
        witness = are_isomorphic(g1, h)
        assert witness is not None
        assert witness.is_bijective

    def test_reflexive(self, memo):
        for name in ("C8", "D8", "Q8", "G1"):
            assert are_isomorphic(memo.group(name), memo.group(name)) is not None

    def test_symmetric(self, memo):
        pairs = [("D8", "Q8"), ("C4x2", "C8"), ("D16", "SD16")]
        for left, right in pairs:
            ab = are_isomorphic(memo.group(left), memo.group(right))
            ba = are_isomorphic(memo.group(right), memo.group(left))
            assert (ab is None) == (ba is None)

    def test_fingerprint_equal_when_isomorphic(self, memo):
        g1 = memo.group("G1")
        h = realize(memo.presentation("G1"))
        witness = are_isomorphic(g1, h)
        assert witness is not None
        assert fingerprint(g1) == fingerprint(h)


class TestFingerprint:
    def test_c4_histogram(self, memo):
        assert fingerprint(memo.group("C4")).order_histogram == ((1, 1), (2, 1), (4, 2))

    def test_q8_histogram(self, memo):
        assert fingerprint(memo.group("Q8")).order_histogram == ((1, 1), (2, 1), (4, 6))

    def test_g1_fields(self, memo):
        fp = fingerprint(memo.group("G1"))
        assert fp.order == 64
        assert not fp.abelian
        assert fp.derived_order == 4
        assert fp.center_order == 4
        assert fp.frattini_rank == 2


class TestCharacteristic:
    def test_center_is_characteristic(self, memo):
        for name in ("D8", "Q8", "G1", "SD16"):
            g = memo.group(name)
            assert is_characteristic(g, center(g), memo.auts(name))

    def test_derived_is_characteristic(self, memo):
        for name in ("D8", "G1", "Q16"):
            g = memo.group(name)
            assert is_characteristic(g, derived_subgroup(g), memo.auts(name))

    def test_non_characteristic_factor_in_c2x2(self, memo):
        g = memo.group("C2x2")
        factor = closure(g, [g.generators[0]])
        assert not is_characteristic(g, factor, memo.auts("C2x2"))
