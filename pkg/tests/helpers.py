"""Shared test helpers: independent brute-force oracles and random fixtures.

The oracles here deliberately avoid the library's trimmed-graph machinery.
Extendability is decided by searching for an explicit admissible extension
of length ``|A|**m + m + 1``: by pigeonhole such an extension revisits an
``m``-block, so it exists iff an infinite ray does.
"""

import itertools
from functools import lru_cache

from shiftspaces.kernel import (
    Alphabet,
    ONE_SIDED,
    TWO_SIDED,
    ShiftSpec,
    word_key,
)


def _ray_depth(spec):
    return len(spec.alphabet.symbols()) ** spec.step + spec.step + 1


def _extends_right(spec, word, memo, depth):
    m = spec.step
    width = m + 1
    key = (word[-m:] if m else (), depth)
    if key in memo:
        return memo[key]
    if depth == 0:
        memo[key] = True
        return True
    result = False
    for a in spec.alphabet.symbols():
        w2 = word + (a,)
        if len(w2) >= width and not spec.allowed(w2[-width:]):
            continue
        if _extends_right(spec, w2[-width:], memo, depth - 1):
            result = True
            break
    memo[key] = result
    return result


def _extends_left(spec, word, memo, depth):
    m = spec.step
    width = m + 1
    key = (word[:m] if m else (), depth)
    if key in memo:
        return memo[key]
    if depth == 0:
        memo[key] = True
        return True
    result = False
    for a in spec.alphabet.symbols():
        w2 = (a,) + word
        if len(w2) >= width and not spec.allowed(w2[:width]):
            continue
        if _extends_left(spec, w2[:width], memo, depth - 1):
            result = True
            break
    memo[key] = result
    return result


def _memos(spec):
    return {"right": {}, "left": {}, "depth": _ray_depth(spec)}


def oracle_word_admissible(spec, word, memos=None):
    """Defining semantics: the word occurs in a point of the shift."""
    memos = memos or _memos(spec)
    width = spec.step + 1
    for i in range(len(word) - width + 1):
        if not spec.allowed(word[i:i + width]):
            return False
    if not _extends_right(spec, word, memos["right"], memos["depth"]):
        return False
    if spec.side == TWO_SIDED:
        return _extends_left(spec, word, memos["left"], memos["depth"])
    return True


def oracle_language(spec, n):
    """Brute-force language: enumerate candidate words and keep the ones
    occurring in points."""
    memos = _memos(spec)
    words = [w for w in itertools.product(spec.alphabet.symbols(), repeat=n)
             if oracle_word_admissible(spec, w, memos)]
    return tuple(sorted(words, key=lambda w: word_key(spec.alphabet, w)))


def oracle_cylinder_nonempty(spec, constraints):
    """Whether some point matches the constraint dict, by depth-first
    enumeration of assignments over the hull with extendability checks at
    the ends."""
    memos = _memos(spec)
    lo = 0 if spec.side == ONE_SIDED else min(constraints)
    hi = max(constraints)
    width = spec.step + 1

    def dfs(seq):
        k = len(seq)
        if k == hi - lo + 1:
            word = tuple(seq)
            if spec.side == TWO_SIDED and \
                    not _extends_left(spec, word[:width], memos["left"], memos["depth"]):
                return False
            return _extends_right(spec, word[-width:] if len(word) >= width else word,
                                  memos["right"], memos["depth"])
        c = lo + k
        symbols = (constraints[c],) if c in constraints else spec.alphabet.symbols()
        for a in symbols:
            seq.append(a)
            if len(seq) < width or spec.allowed(tuple(seq[-width:])):
                if dfs(seq):
                    seq.pop()
                    return True
            seq.pop()
        return False

    return dfs([])


def random_markov_spec(rng, max_symbols=5, side=None, density=0.55):
    size = rng.randint(2, max_symbols)
    side = side or rng.choice((ONE_SIDED, TWO_SIDED))
    pairs = frozenset((a, b)
                      for a in range(size) for b in range(size)
                      if rng.random() < density)
    return ShiftSpec(Alphabet.explicit(tuple(range(size))), side, 1,
                     lambda w, _p=pairs: w in _p,
                     origin=("random-markov", size, side))


def random_step2_spec(rng, max_symbols=4, side=TWO_SIDED, forbid_rate=0.3):
    from shiftspaces.kernel import is_empty

    while True:
        size = rng.randint(2, max_symbols)
        forbidden = frozenset(w for w in itertools.product(range(size), repeat=3)
                              if rng.random() < forbid_rate)
        spec = ShiftSpec(Alphabet.explicit(tuple(range(size))), side, 2,
                         lambda w, _f=forbidden: w not in _f,
                         origin=("random-2step", size))
        if not is_empty(spec):
            return spec


def random_hull_coords(rng, length, span=8, lowest=None):
    """A random hull-extending coordinate sequence whose hull never grows
    wider than ``span``."""
    start = rng.randint(0, 2) if lowest == 0 else rng.randint(-2, 2)
    coords = [start]
    lo = hi = start
    for _ in range(length - 1):
        above = list(range(hi + 1, lo + span + 1))
        below = [c for c in range(hi - span, lo) if lowest is None or c >= lowest]
        candidates = above + below
        if not candidates:
            break
        c = rng.choice(candidates)
        coords.append(c)
        lo, hi = min(lo, c), max(hi, c)
    return coords
