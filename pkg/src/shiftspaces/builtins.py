"""Registered parametric families of shifts, codes, and partitions.

These are the only way to express predicate-backed objects (infinite
forbidden sets, infinite alphabets) through the document interface;
explicit user data is limited to finite alphabets and finite forbidden
word lists.
"""

from .codes import LocalRule, SlidingBlockCode, singleton_partition
from .kernel import Alphabet, ONE_SIDED, TWO_SIDED, ShiftSpec
from .nested import counterexample_sft
from .recoding import higher_block
from .svl import svl_partition


def golden_mean(side=TWO_SIDED):
    """The golden mean shift: alphabet {0, 1}, the word 11 forbidden."""
    return ShiftSpec(
        Alphabet.explicit((0, 1), name="binary"),
        side, 1,
        lambda w: w != (1, 1),
        origin=("builtin", "golden-mean", {"side": side}),
    )


def full_shift(truncation, side=TWO_SIDED):
    """The full shift over the naturals, truncated at ``truncation``."""
    return ShiftSpec(
        Alphabet.indexed(truncation, name="naturals"),
        side, 0,
        lambda w: True,
        origin=("builtin", "full", {"K": truncation, "side": side}),
    )


def xor_code(source=None):
    """XOR of two consecutive binary symbols (memory 0, anticipation 1);
    defaults to the golden mean shift as source."""
    if source is None:
        source = golden_mean()
    for s in (0, 1):
        if not source.alphabet.contains(s):
            raise ValueError("the xor rule needs the binary alphabet")
    rule = LocalRule(0, 1, fn=lambda w: w[0] ^ w[1], name="xor")
    return SlidingBlockCode(source, Alphabet.explicit((0, 1)), rule)


def identity_code(source=None):
    """The 1-block identity code on a shift (golden mean by default)."""
    if source is None:
        source = golden_mean()
    rule = LocalRule(0, 0, fn=lambda w: w[0], name="identity")
    return SlidingBlockCode(source, source.alphabet, rule)


def projection_code(truncation):
    """Second-component projection on the pair recoding of the full
    shift: the 1-block rule whose window preimages per symbol grow with
    the truncation (it is not locally bounded finite-to-one over the full
    symbol family)."""
    pairs = higher_block(full_shift(truncation), 2)
    rule = LocalRule(0, 0, fn=lambda w: w[0][1], name="projection")
    return SlidingBlockCode(
        pairs.recoded,
        Alphabet.indexed(truncation, name="naturals"),
        rule,
        rebuild=projection_code,
        truncation=truncation,
    )


SHIFT_BUILTINS = {
    "golden-mean": golden_mean,
    "full": full_shift,
    "counterexample": lambda K: counterexample_sft(K).spec,
}

CODE_BUILTINS = {
    "xor": xor_code,
    "identity": identity_code,
    "projection": projection_code,
}

PARTITION_BUILTINS = {
    "svl": svl_partition,
    "singleton": singleton_partition,
}
