import random

import pytest

from helpers import random_step2_spec
from shiftspaces.builtins import full_shift, golden_mean, identity_code, xor_code
from shiftspaces.codes import (
    LocalRule,
    SlidingBlockCode,
    empirical_order,
    image_language,
)
from shiftspaces.errors import EmptyShift, NotAdmissible, OverlapMismatch, WindowTooShort
from shiftspaces.kernel import (
    Alphabet,
    ONE_SIDED,
    ShiftSpec,
    TWO_SIDED,
    language,
)
from shiftspaces.recoding import (
    block_backward,
    block_forward,
    higher_block,
    one_block_recode,
)


class TestHigherBlock:
    def test_golden_mean_blocks_and_transitions(self):
        system = higher_block(golden_mean(), 2)
        assert system.blocks == ((0, 0), (0, 1), (1, 0))
        assert system.recoded.step == 1
        transitions = set(language(system.recoded, 2))
        assert transitions == {
            ((0, 0), (0, 0)), ((0, 0), (0, 1)), ((0, 1), (1, 0)),
            ((1, 0), (0, 0)), ((1, 0), (0, 1)),
        }

    def test_single_symbol_full_shift(self):
        single = ShiftSpec(Alphabet.explicit(("a",)), TWO_SIDED, 0, lambda w: True)
        system = higher_block(single, 3)
        assert system.blocks == (("a", "a", "a"),)
        assert language(system.recoded, 2) == (((("a",) * 3), (("a",) * 3)),)

    def test_two_step_spec_becomes_markov_at_its_step(self):
        spec = random_step2_spec(random.Random(5))
        assert higher_block(spec, 2).recoded.step == 1
        assert higher_block(spec, 3).recoded.step == 1

    def test_below_step_keeps_memory(self):
        spec = random_step2_spec(random.Random(5))
        system = higher_block(spec, 1)
        assert system.recoded.step == 2
        # languages still correspond through the block maps
        for n in range(2, 5):
            expected = {block_forward(system, w) for w in language(spec, n)}
            assert expected == set(language(system.recoded, n))

    def test_empty_shift(self):
        dead = ShiftSpec(Alphabet.explicit((0,)), TWO_SIDED, 1, lambda w: False)
        with pytest.raises(EmptyShift):
            higher_block(dead, 2)


class TestBlockMaps:
    def test_forward(self):
        system = higher_block(golden_mean(), 2)
        assert block_forward(system, (0, 1, 0)) == ((0, 1), (1, 0))

    def test_forward_identity_at_n1(self):
        system = higher_block(golden_mean(), 1)
        assert block_forward(system, (0, 1, 0)) == ((0,), (1,), (0,))

    def test_forward_too_short(self):
        system = higher_block(golden_mean(), 3)
        with pytest.raises(WindowTooShort):
            block_forward(system, (0, 1))

    def test_forward_rejects_inadmissible(self):
        system = higher_block(golden_mean(), 2)
        with pytest.raises(NotAdmissible):
            block_forward(system, (1, 1, 0))

    def test_backward_glues(self):
        system = higher_block(golden_mean(), 2)
        assert block_backward(system, ((0, 1), (1, 0))) == (0, 1, 0)
        assert block_backward(system, ((0, 1),)) == (0, 1)

    def test_backward_mismatch(self):
        system = higher_block(golden_mean(), 2)
        with pytest.raises(OverlapMismatch) as info:
            block_backward(system, ((0, 1), (0, 0)))
        assert info.value.position == 0

    def test_round_trip(self):
        for N in (1, 2, 3):
            system = higher_block(golden_mean(), N)
            for n in range(N, N + 4):
                for w in language(golden_mean(), n):
                    assert block_backward(system, block_forward(system, w)) == w


class TestConjugacy:
    @pytest.mark.parametrize("N", (1, 2, 3, 4))
    def test_block_forward_bijects_languages(self, N):
        gm = golden_mean()
        system = higher_block(gm, N)
        for n in range(1, 7):
            source_words = language(gm, n + N - 1)
            images = [block_forward(system, w) for w in source_words]
            assert len(set(images)) == len(images)
            assert set(images) == set(language(system.recoded, n))

    def test_markov_product_rule_for_recoded(self):
        system = higher_block(golden_mean(), 3)
        lang = {n: set(language(system.recoded, n)) for n in range(1, 6)}
        pairs = lang[2]
        for n in range(1, 5):
            grown = {w + (b,) for w in lang[n] for (a, b) in pairs if a == w[-1]}
            assert grown == lang[n + 1]


class TestOneBlockRecode:
    def test_golden_mean_xor_parameters(self):
        gm = golden_mean()
        ob = one_block_recode(gm, xor_code(gm))
        assert (ob.n, ob.N) == (1, 3)
        assert len(language(ob.gamma, 1)) == 5
        assert ob.gamma.step == 1

    @pytest.mark.parametrize("make_code,side", [
        (xor_code, TWO_SIDED),
        (identity_code, TWO_SIDED),
        (xor_code, ONE_SIDED),
        (identity_code, ONE_SIDED),
    ])
    def test_image_language_equality(self, make_code, side):
        spec = golden_mean(side)
        code = make_code(spec)
        ob = one_block_recode(spec, code)
        for q in range(1, 7):
            assert image_language(ob.psi, q) == image_language(code, q)

    def test_identity_psi_is_middle_projection(self):
        gm = golden_mean()
        ob = one_block_recode(gm, identity_code(gm))
        assert ob.N == 3
        for block in language(ob.gamma, 1):
            assert ob.psi.rule(block) == block[0][1]

    def test_skewed_window_fits_inside_block(self):
        # memory 2, anticipation 0 forces n >= 2 so the extraction fits
        gm = golden_mean()
        rule = LocalRule(2, 0, fn=lambda w: w[0] ^ w[1] ^ w[2])
        code = SlidingBlockCode(gm, Alphabet.explicit((0, 1)), rule)
        ob = one_block_recode(gm, code)
        assert ob.n >= 2
        for q in range(1, 6):
            assert image_language(ob.psi, q) == image_language(code, q)

    def test_shift_map_on_full_shift_is_not_locally_bounded(self):
        full = full_shift(2)
        sigma = SlidingBlockCode(full, Alphabet.indexed(2),
                                 LocalRule(0, 1, fn=lambda w: w[1], name="shift"))
        ob = one_block_recode(full, sigma)
        order, grows = empirical_order(ob.psi)
        assert grows
        assert order == 4  # K**2 window preimages per symbol at K = 2

    def test_cardinality_accounting_tracks_truncation(self):
        full = full_shift(2)
        ident = identity_code(full)
        ob = one_block_recode(full, ident)
        assert len(language(ob.gamma, 1)) == 8
        ob2 = ob.rebuild(4)
        assert len(language(ob2.gamma, 1)) == 64
        assert len(image_language(ident, 1)) == 2
        assert len(image_language(ob2.psi, 1)) == 4

    def test_source_mismatch_rejected(self):
        with pytest.raises(ValueError):
            one_block_recode(golden_mean(), xor_code(golden_mean()))
