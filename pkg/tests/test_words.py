import pytest
from hypothesis import given
from hypothesis import strategies as st

from involex.errors import ParseError
from involex.words import (
    EmptyRelatorWarning,
    Presentation,
    Word,
    free_reduce,
    parse_presentation,
    word_commutator,
    word_multiply,
)


def w(*letters):
    return Word(tuple(letters))


class TestParsing:
    def test_g1_presentation(self):
        p = parse_presentation("<a,b | a^16, b^4, [b,a]=a^4>")
        assert p.generator_names == ("a", "b")
        assert len(p.relators) == 3
        assert p.relators[0].letters == (1,) * 16
        assert p.relators[1].letters == (2,) * 4
        # [b,a] * a^-4 reduces to b^-1 a^-1 b a^-3
        assert p.relators[2].letters == (-2, -1, 2, -1, -1, -1)

    def test_g2_presentation(self):
        p = parse_presentation("<a,b | a^16, b^4, [b,a]=a^-2>")
        assert len(p.relators) == 3
        # [b,a] * (a^-2)^-1 reduces to b^-1 a^-1 b a^3
        assert p.relators[2].letters == (-2, -1, 2, 1, 1, 1)

    def test_cyclic(self):
        p = parse_presentation("<a | a^8>")
        assert p.generator_names == ("a",)
        assert len(p.relators) == 1
        assert len(p.relators[0]) == 8

    def test_whitespace_and_newlines(self):
        p = parse_presentation("< a , b |\n a^16 ,\n b^4 , [ b , a ] = a^4 >")
        assert p == parse_presentation("<a,b | a^16, b^4, [b,a]=a^4>")

    def test_parenthesized_factor(self):
        p = parse_presentation("<r,s | r^4, s^2, (r s)^2>")
        assert p.relators[2].letters == (1, 2, 1, 2)

    def test_commutator_with_exponent(self):
        p = parse_presentation("<a,b | [a,b]^2>")
        assert p.relators[0].letters == (-1, -2, 1, 2) * 2

    def test_undeclared_generator(self):
        with pytest.raises(ParseError, match="undeclared generator 'c'"):
            parse_presentation("<a,b | a^2, c^2>")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_presentation("<a,b |\n a^16, ^4>")
        assert err.value.line == 2
        assert err.value.column > 1

    def test_duplicate_generator(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_presentation("<a,a | a^2>")

    def test_too_many_generators(self):
        gens = ",".join(f"g{i}" for i in range(9))
        with pytest.raises(ParseError, match="at most 8"):
            parse_presentation(f"<{gens} | g0^2>")

    def test_zero_exponent_relator_warns_and_is_ignored(self):
        with pytest.warns(EmptyRelatorWarning):
            p = parse_presentation("<a | a^0, a^4>")
        assert len(p.relators) == 1
        assert p.relators[0].letters == (1, 1, 1, 1)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_presentation("<a | a^2> extra")

    def test_relation_vs_relator_equivalence(self):
        assert parse_presentation("<a,b | b^-1 a b = a^3>") == parse_presentation(
            "<a,b | b^-1 a b a^-3>"
        )


class TestRoundTrip:
    NAMES = [
        "<a,b | a^16, b^4, [b,a]=a^4>",
        "<a | a^8>",
        "<r,s | r^8, s^2, (r s)^2>",
        "<a,b,c | a^4, b^2 = a^2, b^-1 a b = a^-1, c^2, [c,a], [c,b]>",
    ]

    @pytest.mark.parametrize("text", NAMES)
    def test_parse_print_parse(self, text):
        p = parse_presentation(text)
        assert parse_presentation(p.to_text()) == p


class TestWordOps:
    def test_multiply_inverse_pair(self):
        assert word_multiply(w(1), w(-1)) == w()

    def test_multiply_reduction(self):
        # (ab)(b^-1 a) -> a^2
        assert word_multiply(w(1, 2), w(-2, 1)) == w(1, 1)

    def test_multiply_identity(self):
        v = w(1, 2, -1)
        assert word_multiply(w(), v) == v
        assert word_multiply(v, w()) == v

    def test_commutator_self(self):
        assert word_commutator(w(1), w(1)) == w()

    def test_commutator_convention(self):
        # [b, a] = b^-1 a^-1 b a
        assert word_commutator(w(2), w(1)) == w(-2, -1, 2, 1)

    def test_commutator_with_empty(self):
        assert word_commutator(w(), w(1, 2)) == w()

    def test_power(self):
        assert w(1) ** 4 == w(1, 1, 1, 1)
        assert w(1) ** -2 == w(-1, -1)
        assert w(1, 2) ** 0 == w()

    def test_reduce_idempotent_exhaustive_small(self):
        letters = [1, -1, 2, -2]
        for a in letters:
            for b in letters:
                for c in letters:
                    once = free_reduce((a, b, c))
                    assert free_reduce(once) == once


def reduced_words(max_len):
    """All freely reduced words over 2 generators, grouped by length."""
    by_len = [[()]]
    for _ in range(max_len):
        nxt = []
        for word in by_len[-1]:
            for letter in (1, -1, 2, -2):
                if not word or word[-1] != -letter:
                    nxt.append(word + (letter,))
        by_len.append(nxt)
    return by_len


def test_multiply_associative_exhaustive():
    # every triple of reduced words over 2 generators with combined length <= 6
    by_len = reduced_words(6)
    pool = [(length, Word(u)) for length, words in enumerate(by_len) for u in words]
    checked = 0
    for lu, u in pool:
        for lv, v in pool:
            if lu + lv > 6:
                continue
            for lw, x in pool:
                if lu + lv + lw > 6:
                    continue
                assert word_multiply(word_multiply(u, v), x) == word_multiply(u, word_multiply(v, x))
                checked += 1
    assert checked > 10_000


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=40))
def test_reduce_idempotent(letters):
    once = free_reduce(letters)
    assert free_reduce(once) == once
    assert all(a != -b for a, b in zip(once, once[1:]))


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20))
def test_word_times_inverse_is_identity(letters):
    word = Word(tuple(letters))
    assert word_multiply(word, word.inverse()) == Word()


def test_presentation_validation():
    with pytest.raises(ValueError, match="undeclared"):
        Presentation(("a",), (w(2, 2),))
    with pytest.raises(ValueError, match="duplicate"):
        Presentation(("a", "a"), (w(1),))
