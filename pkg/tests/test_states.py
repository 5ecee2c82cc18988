"""State construction, decomposition, and ensemble-word expansion."""

import math
from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sgatlas import (
    BasisState,
    DimensionError,
    EnsembleWord,
    SizeCapError,
    SuperpositionSpec,
    build_amplitude_vector,
    complement,
    decompose_pair,
    enumerate_word_family,
    expand_ensemble_word,
    uniform_product_state,
    word_family,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)


def B(text):
    return BasisState.from_string(text)


class TestBasisState:
    def test_string_round_trip(self):
        for text in ("eeg", "g", "e", "gggg", "egge"):
            assert str(B(text)) == text

    def test_index_ordering(self):
        # site 1 is the most significant digit, e = 1
        assert B("eeg").index == 6
        assert B("geg").index == 2
        assert B("ggg").index == 0
        assert B("eee").index == 7

    def test_bijection_with_integers(self):
        for n in range(1, 7):
            seen = {BasisState(n, i).index for i in range(1 << n)}
            assert seen == set(range(1 << n))
            for i in range(1 << n):
                assert BasisState.from_string(str(BasisState(n, i))).index == i

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            B("exg")
        with pytest.raises(ValueError):
            B("")
        with pytest.raises(ValueError):
            BasisState(3, 8)
        with pytest.raises(ValueError):
            BasisState(0, 0)

    def test_complement_examples(self):
        assert str(complement(B("egg"))) == "gee"
        assert str(complement(B("eee"))) == "ggg"

    def test_complement_involution_exhaustive(self):
        for n in range(1, 9):
            for i in range(1 << n):
                b = BasisState(n, i)
                assert complement(complement(b)) == b


class TestSuperpositionSpec:
    def test_canonical_swap(self):
        spec = SuperpositionSpec(B("eeg"), B("geg"), 0.8, 0.6)
        assert spec.b1.index <= spec.b2.index
        # weights travel with their states
        assert spec.b1 == B("geg") and spec.w1 == 0.6
        assert spec.b2 == B("eeg") and spec.w2 == 0.8

    def test_single_state_collapse(self):
        spec = SuperpositionSpec(B("eeg"), B("eeg"), SQRT_HALF, SQRT_HALF)
        assert spec.is_single
        assert spec.w1 == 1.0 and spec.w2 == 0.0

    def test_norm_validation(self):
        with pytest.raises(ValueError):
            SuperpositionSpec(B("ee"), B("gg"), 1.0, 1.0)

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            SuperpositionSpec(B("ee"), B("ggg"), SQRT_HALF, SQRT_HALF)

    def test_cluster_size(self):
        assert SuperpositionSpec.equal_weight(B("eeg"), B("geg")).k == 1
        assert SuperpositionSpec.equal_weight(B("eeeg"), B("ggeg")).k == 2
        assert SuperpositionSpec.single(B("eeg")).k == 0


class TestDecomposePair:
    def test_example_single_differ(self):
        dec = decompose_pair(B("eeg"), B("geg"))
        assert dec.agree_e == frozenset({2})
        assert dec.agree_g == frozenset({3})
        assert dec.differ == frozenset({1})

    def test_example_two_differ(self):
        # brute-force positionwise comparison: sites 1,2 disagree,
        # site 3 is co-excited, site 4 co-ground
        dec = decompose_pair(B("eeeg"), B("ggeg"))
        assert dec.agree_e == frozenset({3})
        assert dec.agree_g == frozenset({4})
        assert dec.differ == frozenset({1, 2})
        assert dec.k == 2
        assert dec.pattern == (True, True)

    def test_identity_case(self):
        dec = decompose_pair(B("egge"), B("egge"))
        assert dec.differ == frozenset()
        assert dec.k == 0

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            decompose_pair(B("ee"), B("eee"))

    def test_partition_property_exhaustive(self):
        # agree_e, agree_g, differ partition {1..n} for every pair, n <= 8
        for n in range(1, 9):
            sites = frozenset(range(1, n + 1))
            for i in range(1 << n):
                for j in range(1 << n):
                    dec = decompose_pair(BasisState(n, i), BasisState(n, j))
                    assert dec.agree_e | dec.agree_g | dec.differ == sites
                    assert len(dec.agree_e) + len(dec.agree_g) + len(dec.differ) == n


class TestEnsembleWord:
    def test_parse_and_render(self):
        w = EnsembleWord.parse("C,C,e,g:1")
        assert w.letters == ("C", "C", "e", "g")
        assert w.variant == 1
        assert str(w) == "C,C,e,g:1"
        assert EnsembleWord.parse("C,e,g").variant == 0

    def test_invalid_letter(self):
        with pytest.raises(ValueError):
            EnsembleWord(("C", "x"))

    def test_variant_out_of_range(self):
        with pytest.raises(ValueError):
            EnsembleWord(("C", "C"), 2)
        with pytest.raises(ValueError):
            EnsembleWord(("C", "e"), 1)

    def test_expand_sg_word_n3(self):
        spec = expand_ensemble_word(EnsembleWord(("C", "e", "g"), 0))
        assert {str(spec.b1), str(spec.b2)} == {"eeg", "geg"}
        assert spec.w1 == pytest.approx(SQRT_HALF)
        assert spec.w2 == pytest.approx(SQRT_HALF)

    def test_expand_variants_n4(self):
        v0 = expand_ensemble_word(EnsembleWord(("C", "C", "e", "g"), 0))
        v1 = expand_ensemble_word(EnsembleWord(("C", "C", "e", "g"), 1))
        assert {str(v0.b1), str(v0.b2)} == {"eeeg", "ggeg"}
        assert {str(v1.b1), str(v1.b2)} == {"egeg", "geeg"}

    def test_expand_product_word(self):
        spec = expand_ensemble_word(EnsembleWord(("e", "g"), 0))
        assert spec.is_single
        assert str(spec.b1) == "eg"

    def test_differ_set_is_cat_positions(self):
        for letters in product("Ceg", repeat=4):
            word = EnsembleWord(tuple(letters), 0)
            spec = expand_ensemble_word(word)
            dec = decompose_pair(spec.b1, spec.b2)
            cats = {i for i, ch in enumerate(letters, 1) if ch == "C"}
            assert dec.differ == cats


class TestWordFamilies:
    def test_reference_family_sizes(self):
        assert len(enumerate_word_family(("C", "C", "e", "g"))) == 24
        assert len(enumerate_word_family(("e", "g", "e", "g"))) == 6
        assert len(enumerate_word_family(("C", "e", "g"))) == 6

    def test_counting_law_brute_force(self):
        # oracle: multiset-permutation count times 2^max(c-1, 0), checked
        # against de-duplication of the generated canonical pairs
        for size in range(1, 7):
            for combo in {tuple(sorted(p)) for p in product("Ceg", repeat=size)}:
                mult = Counter(combo)
                perms = math.factorial(size)
                for count in mult.values():
                    perms //= math.factorial(count)
                expected = perms * (1 << max(mult["C"] - 1, 0))
                family = enumerate_word_family(combo)
                assert len(family) == expected
                keys = {(s.b1.index, s.b2.index) for s in family}
                assert len(keys) == expected  # no duplicates under swap

    def test_round_trip_words(self):
        # decompose(expand(w)) reproduces the letter multiset and C positions
        for size in range(1, 7):
            for letters in product("Ceg", repeat=size):
                word0 = EnsembleWord(tuple(letters), 0)
                for variant in range(word0.variant_count):
                    spec = expand_ensemble_word(EnsembleWord(tuple(letters), variant))
                    dec = decompose_pair(spec.b1, spec.b2)
                    cats = {i for i, ch in enumerate(letters, 1) if ch == "C"}
                    assert dec.differ == cats
                    for site in dec.agree_e:
                        assert letters[site - 1] == "e"
                    for site in dec.agree_g:
                        assert letters[site - 1] == "g"

    def test_family_order_deterministic(self):
        once = [str(w) for w in word_family(("C", "e", "g"))]
        twice = [str(w) for w in word_family(("g", "C", "e"))]
        assert once == twice


class TestAmplitudeVector:
    def test_equal_weight_indices(self):
        spec = SuperpositionSpec.equal_weight(B("eeg"), B("geg"))
        amps = build_amplitude_vector(spec)
        assert amps.shape == (8,)
        assert amps[6] == pytest.approx(SQRT_HALF)
        assert amps[2] == pytest.approx(SQRT_HALF)
        assert np.count_nonzero(amps) == 2

    def test_single_state(self):
        amps = build_amplitude_vector(SuperpositionSpec.single(B("ggg")))
        assert amps[0] == 1.0
        assert np.count_nonzero(amps) == 1

    def test_uneven_weights(self):
        spec = SuperpositionSpec(B("eg"), B("ge"), 0.8, 0.6)
        amps = build_amplitude_vector(spec)
        assert amps[2] == pytest.approx(0.8)
        assert amps[1] == pytest.approx(0.6)

    @given(
        n=st.integers(1, 6),
        i=st.integers(0, 63),
        j=st.integers(0, 63),
        p=st.floats(0.0, 1.0),
    )
    def test_nonzeros_and_norm(self, n, i, j, p):
        spec = SuperpositionSpec.weighted(
            BasisState(n, i % (1 << n)), BasisState(n, j % (1 << n)), p
        )
        amps = build_amplitude_vector(spec)
        assert 1 <= np.count_nonzero(amps) <= 2
        assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-12)


class TestUniformProductState:
    def test_one_site(self):
        np.testing.assert_allclose(
            uniform_product_state(1), [SQRT_HALF, SQRT_HALF], atol=1e-15
        )

    def test_two_sites(self):
        np.testing.assert_allclose(uniform_product_state(2), np.full(4, 0.5), atol=1e-15)

    def test_normalized(self):
        assert np.linalg.norm(uniform_product_state(3)) == pytest.approx(1.0, abs=1e-12)

    def test_cap(self):
        with pytest.raises(SizeCapError):
            uniform_product_state(11)
        with pytest.raises(ValueError):
            uniform_product_state(0)
