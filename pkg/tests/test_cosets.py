import numpy as np
import pytest

from involex.cosets import CosetTable, enumerate_cosets, regular_generators
from involex.errors import CosetOverflow
from involex.groups import from_permutations
from involex.words import parse_presentation


def enumerate_text(text, max_cosets=10_000):
    return enumerate_cosets(parse_presentation(text), max_cosets)


class TestEnumeration:
    def test_cyclic_8(self):
        assert enumerate_text("<a | a^8>", 100).n_cosets == 8

    def test_g1_has_order_64(self):
        assert enumerate_text("<a,b | a^16, b^4, [b,a]=a^4>").n_cosets == 64

    def test_g2_has_order_64(self):
        assert enumerate_text("<a,b | a^16, b^4, [b,a]=a^-2>").n_cosets == 64

    def test_gmn_16_8_has_order_128(self):
        assert enumerate_text("<a,b | a^16, b^8, [b,a]=a^4>").n_cosets == 128

    def test_klein_four(self):
        table = enumerate_text("<a,b | a^2, b^2, (a b)^2>")
        assert table.n_cosets == 4

    @pytest.mark.parametrize(
        "text,order",
        [
            ("<r,s | r^8, s^2, (r s)^2>", 16),  # dihedral
            ("<a,b | a^8, b^2 = a^4, b^-1 a b = a^-1>", 16),  # quaternion
            ("<a,b | a^8, b^2, b^-1 a b = a^3>", 16),  # semidihedral
            ("<a,b,c | a^2, b^2, c^2, [b,a], [c,a], [c,b]>", 8),
            ("<a | a^1>", 1),
        ],
    )
    def test_known_orders(self, text, order):
        assert enumerate_text(text).n_cosets == order

    def test_relators_fix_every_coset(self):
        p = parse_presentation("<a,b | a^16, b^4, [b,a]=a^4>")
        table = enumerate_cosets(p, 10_000)
        for rel in p.relators:
            for c in range(table.n_cosets):
                assert table.trace(c, rel) == c

    def test_determinism(self):
        p = parse_presentation("<a,b | a^16, b^8, [b,a]=a^4>")
        t1 = enumerate_cosets(p, 10_000)
        t2 = enumerate_cosets(p, 10_000)
        assert t1.rows == t2.rows

    def test_overflow(self):
        with pytest.raises(CosetOverflow):
            enumerate_text("<a | a^64>", max_cosets=10)

    def test_no_relators_rejected(self):
        with pytest.warns(UserWarning):
            p = parse_presentation("<a | a^0>")
        with pytest.raises(ValueError, match="relator"):
            enumerate_cosets(p, 100)

    def test_bad_max_cosets(self):
        with pytest.raises(ValueError):
            enumerate_text("<a | a^2>", max_cosets=0)


class TestRegularGenerators:
    def test_cyclic_gives_8_cycle(self):
        perms = regular_generators(enumerate_text("<a | a^8>"))
        assert len(perms) == 1
        p = perms[0]
        seen, c = [], 0
        for _ in range(8):
            seen.append(c)
            c = int(p[c])
        assert sorted(seen) == list(range(8)) and c == 0

    def test_klein_two_involutions_on_4_points(self):
        perms = regular_generators(enumerate_text("<a,b | a^2, b^2, (a b)^2>"))
        assert len(perms) == 2
        for p in perms:
            assert len(p) == 4
            assert np.array_equal(p[p], np.arange(4))

    def test_g2_perms_generate_order_64(self):
        perms = regular_generators(enumerate_text("<a,b | a^16, b^4, [b,a]=a^-2>"))
        assert all(len(p) == 64 for p in perms)
        assert from_permutations(perms).order == 64

    def test_incomplete_table_rejected(self):
        broken = CosetTable(1, [[1, -1], [-1, 0]])
        with pytest.raises(ValueError, match="incomplete"):
            regular_generators(broken)

    def test_regularity_only_identity_fixes_a_point(self):
        perms = regular_generators(enumerate_text("<a,b | a^16, b^4, [b,a]=a^4>"))
        group = from_permutations(perms)
        # in the regular representation non-identity elements are fixed-point free
        assert group.order == 64
