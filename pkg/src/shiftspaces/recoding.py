"""Higher block recodings and 1-block recoding of code images.

``higher_block`` sends a shift to its ``N``-block shift: points map to the
sequence of their overlapping forward ``N``-blocks, a conjugacy whose
inverse glues blocks back together.  When ``N`` is at least the step of
the source the recoded shift is Markov: a block may follow another exactly
when their overlap is consistent and the glued ``(N + 1)``-word is in the
language.

``one_block_recode`` rewrites an arbitrary windowed code on an SFT as a
1-block code on a Markov shift with the same image language, by composing
with a higher block recoding and extracting the original window from each
block.
"""

from dataclasses import dataclass, field

from . import kernel
from .codes import LocalRule, SlidingBlockCode
from .errors import NotAdmissible, OverlapMismatch, WindowTooShort
from .kernel import Alphabet, ONE_SIDED, ShiftSpec


@dataclass(frozen=True, eq=False)
class HigherBlockSystem:
    """A shift together with its ``N``-block recoding and the block maps."""
    source: ShiftSpec
    N: int
    blocks: tuple
    block_alphabet: Alphabet
    recoded: ShiftSpec


def higher_block(spec, N):
    """The ``N``-th higher block system of a shift.

    The block alphabet is the set of admissible ``N``-words (within the
    truncation).  For ``N >= step`` the recoded shift is Markov; for
    ``N < step`` it is a ``(step - N + 1)``-step shift whose constraints
    glue overlapping blocks and re-check the source windows.
    """
    if N < 1:
        raise ValueError("N must be positive")
    blocks = kernel.language(spec, N)
    block_alphabet = Alphabet.explicit(blocks, name=f"{N}-blocks")
    if N >= spec.step:
        members = frozenset(kernel.language(spec, N + 1))

        def allowed(pair):
            u, v = pair
            return u[1:] == v[:-1] and (u + (v[-1],)) in members

        step = 1
    else:
        step = spec.step - N + 1
        source_allowed = spec.allowed

        def allowed(word):
            for i in range(len(word) - 1):
                if word[i][1:] != word[i + 1][:-1]:
                    return False
            glued = word[0] + tuple(b[-1] for b in word[1:])
            return source_allowed(glued)

    recoded = ShiftSpec(block_alphabet, spec.side, step, allowed,
                        origin=("higher-block", spec.origin, N))
    return HigherBlockSystem(spec, N, blocks, block_alphabet, recoded)


def block_forward(system, word):
    """Image of a word under the block map: symbol ``i`` of the output is
    the block ``word[i : i + N]``; the output is ``N - 1`` shorter."""
    word = tuple(word)
    N = system.N
    if len(word) < N:
        raise WindowTooShort(N, len(word))
    if not kernel.is_locally_admissible(system.source, word):
        raise NotAdmissible(f"{kernel.format_word(word)} is not admissible in the source")
    return tuple(word[i:i + N] for i in range(len(word) - N + 1))


def block_backward(system, blocks):
    """Inverse of the block map: overlap-glue a word over the block
    alphabet back to a source word, ``N - 1`` longer.

    Raises :class:`OverlapMismatch` at the first position where the
    ``(N - 1)``-suffix of one block differs from the prefix of the next.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise WindowTooShort(1, 0)
    for i in range(len(blocks) - 1):
        if blocks[i][1:] != blocks[i + 1][:-1]:
            raise OverlapMismatch(i)
    return blocks[0] + tuple(b[-1] for b in blocks[1:])


@dataclass(frozen=True, eq=False)
class OneBlockRecoding:
    """Result of rewriting a windowed code as a 1-block code.

    ``gamma`` is the Markov shift over ``N``-blocks of the source,
    ``psi`` the 1-block code on it with the same image language as the
    original code.  ``rebuild(K)`` reconstructs the whole recoding at a
    different truncation, when the original code supports it.
    """
    gamma: ShiftSpec
    psi: SlidingBlockCode
    system: HigherBlockSystem
    n: int
    N: int
    rebuild: object = field(default=None, repr=False)


def one_block_recode(spec, code):
    """Recode a windowed code on an SFT as a 1-block code on a Markov shift.

    Picks the minimal ``n`` with ``2n >= max(step, window)`` and
    ``n >= max(memory, anticipation)`` (the latter so the extraction fits
    inside the block), sets ``N = 2n + 1``, recodes the source to its
    ``N``-block Markov shift, and extracts the original window from each
    block: centered on the two-sided lattice, anchored at the block start
    on the one-sided lattice, where blocks read forward and a centered
    extraction would lose transient windows.

    The image language of the 1-block code equals that of the original
    code at every word length, and the block alphabet is finite within a
    truncation exactly when the image 1-language is.
    """
    if code.source is not spec:
        raise ValueError("the code's source must be the given shift spec")
    m = spec.step
    ell, r = code.memory, code.anticipation
    window = code.window
    n = max((max(m, window) + 1) // 2, ell, r)
    N = 2 * n + 1
    system = higher_block(spec, N)
    gamma = system.recoded
    offset = 0 if spec.side == ONE_SIDED else n - ell
    rule = code.rule

    def psi_fn(block_word):
        block = block_word[0]
        return rule(block[offset:offset + window])

    psi_rule = LocalRule(0, 0, fn=psi_fn, name=f"1-block[{rule!r}]")

    rebuild = None
    if code.rebuild is not None:
        def rebuild(k, _code=code):
            rebuilt = _code.at_truncation(k)
            return one_block_recode(rebuilt.source, rebuilt)

    psi = SlidingBlockCode(
        gamma, code.target_alphabet, psi_rule,
        rebuild=(None if rebuild is None else (lambda k: rebuild(k).psi)),
        truncation=code.truncation)
    return OneBlockRecoding(gamma, psi, system, n, N, rebuild)
