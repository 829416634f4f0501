"""Word primitives against spec'd examples and brute-force oracles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from splitrep.words import (
    EmptyWordError,
    Word,
    WordFormatError,
    border_array,
    format_word,
    from_letters,
    is_primitive,
    is_unbordered,
    occurrences,
    overlap_from_overlapping_pair,
    parse_word,
    period,
    word,
)


def w2(text):
    return parse_word(text, 2)


def w3(text):
    return parse_word(text, 3)


class TestWordType:
    def test_symbols_validated(self):
        with pytest.raises(ValueError):
            Word((0, 2), 2)
        with pytest.raises(ValueError):
            Word((0,), 0)

    def test_empty_word_allowed(self):
        assert len(Word((), 3)) == 0

    def test_parse_digit_string(self):
        assert parse_word("0001110", 2).symbols == (0, 0, 0, 1, 1, 1, 0)

    def test_parse_comma_separated(self):
        assert parse_word("0,11,3", 12).symbols == (0, 11, 3)

    def test_parse_rejects_out_of_range(self):
        with pytest.raises(WordFormatError):
            parse_word("012", 2)

    def test_parse_rejects_garbage(self):
        with pytest.raises(WordFormatError):
            parse_word("01a", 2)

    def test_format_round_trip(self):
        for text, k in [("0001110", 2), ("0,11,3", 12), ("", 5)]:
            assert format_word(parse_word(text, k)) == text

    def test_from_letters_first_occurrence_order(self):
        assert from_letters("alfalfa").symbols == (0, 1, 2, 0, 1, 2, 0)
        assert from_letters("entente").symbols == (0, 1, 2, 0, 1, 2, 0)


class TestBorderArray:
    def test_final_entry_of_0120120(self):
        assert border_array(w3("0120120")).longest_border[-1] == 4

    def test_all_distinct(self):
        assert border_array(parse_word("0123", 4)).longest_border == (0, 0, 0, 0)

    def test_unary(self):
        assert border_array(w2("0000")).longest_border == (0, 1, 2, 3)

    def test_empty_rejected(self):
        with pytest.raises(EmptyWordError):
            border_array(Word((), 2))

    @pytest.mark.parametrize("k,max_len", [(2, 10), (3, 7)])
    def test_matches_brute_force(self, k, max_len):
        for syms in oracles.all_words_upto(k, max_len):
            if not syms:
                continue
            got = border_array(word(syms, k)).longest_border
            assert list(got) == oracles.border_lengths(syms), syms


class TestPeriod:
    def test_alfalfa(self):
        assert period(from_letters("alfalfa")) == 3

    def test_unary(self):
        assert period(w2("1111")) == 1

    def test_0001110(self):
        assert period(w2("0001110")) == 6

    def test_exhaustive_small(self):
        for k in (2, 3):
            for syms in oracles.all_words_upto(k, 8 if k == 3 else 11):
                if syms:
                    assert period(word(syms, k)) == oracles.period(syms), syms

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 3), st.data())
    def test_random_up_to_14(self, k, data):
        length = data.draw(st.integers(1, 14))
        syms = tuple(data.draw(st.lists(
            st.integers(0, k - 1), min_size=length, max_size=length)))
        assert period(word(syms, k)) == oracles.period(syms)


class TestPrimitive:
    def test_square_not_primitive(self):
        assert not is_primitive(w2("0101"))

    def test_010_primitive(self):
        assert is_primitive(w2("010"))

    def test_single_letter(self):
        assert is_primitive(w2("1"))

    def test_rotation_count_equivalence(self):
        for k in (2, 3):
            for syms in oracles.all_words_upto(k, 8 if k == 3 else 10):
                if syms:
                    assert is_primitive(word(syms, k)) == oracles.is_primitive(
                        syms
                    ), syms


class TestUnbordered:
    def test_01(self):
        assert is_unbordered(w2("01"))

    def test_0110(self):
        assert not is_unbordered(w2("0110"))

    def test_unary(self):
        assert not is_unbordered(w2("000"))

    def test_short_border_exists(self):
        # a bordered word of length n has a border of length <= n/2
        for syms in oracles.all_words_upto(2, 12):
            n = len(syms)
            if n == 0 or oracles.is_unbordered(syms):
                continue
            shortest = min(
                c for c in range(1, n) if syms[:c] == syms[n - c :]
            )
            assert 2 * shortest <= n, syms


class TestOccurrences:
    def test_overlapping(self):
        assert occurrences(w2("01010"), w2("010")) == [0, 2]

    def test_absent_symbol(self):
        assert occurrences(parse_word("0011", 3), parse_word("2", 3)) == []

    def test_unary(self):
        assert occurrences(w2("000"), w2("00")) == [0, 1]


class TestOverlapDecomposition:
    def test_01010(self):
        u, v, e = overlap_from_overlapping_pair(w2("01010"), 0, 2, 3)
        assert (u.symbols, v.symbols, e) == ((0,), (1,), 0)

    def test_unary(self):
        u, v, e = overlap_from_overlapping_pair(w2("000"), 0, 1, 2)
        assert (u.symbols, v.symbols, e) == ((0,), (), 0)

    def test_0120120(self):
        u, v, e = overlap_from_overlapping_pair(w3("0120120"), 0, 3, 4)
        assert (u.symbols, v.symbols, e) == ((0,), (1, 2), 0)

    def test_rejects_non_overlapping(self):
        with pytest.raises(ValueError):
            overlap_from_overlapping_pair(w2("0101"), 0, 2, 2)

    def test_reconstruction_identities_exhaustive(self):
        # u nonempty, w[i..j-1] = uv, w[j..i+n-1] = (uv)^e u, w[i+n..j+n-1] = vu
        for syms in oracles.all_words_upto(2, 10):
            n_total = len(syms)
            w = word(syms, 2)
            for n in range(2, n_total + 1):
                for i in range(n_total - n):
                    for j in range(i + 1, min(i + n, n_total - n + 1)):
                        if syms[i : i + n] != syms[j : j + n]:
                            continue
                        u, v, e = overlap_from_overlapping_pair(w, i, j, n)
                        assert len(u) >= 1 and e >= 0
                        uv = u.symbols + v.symbols
                        assert syms[i:j] == uv
                        assert syms[j : i + n] == uv * e + u.symbols
                        assert syms[i + n : j + n] == v.symbols + u.symbols
