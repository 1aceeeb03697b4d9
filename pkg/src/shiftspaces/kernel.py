"""Alphabets, words, patterns, points, and shift-space specifications.

Words are plain tuples of symbols.  A shift space is described by a
:class:`ShiftSpec`: an alphabet, a lattice side, a step ``m`` and a
decidable predicate on words of length ``m + 1``.  The complement of the
predicate encodes the forbidden words, which may form an infinite set for
indexed alphabets but always have bounded length.

The language engine builds the transition graph on ``m``-blocks, trims it
to states lying on infinite rays (forward rays on the one-sided lattice,
forward and backward rays on the two-sided lattice), and reads words off
surviving paths.  On the one-sided lattice a word needs no left extension:
occurrence at position 0 is always permitted.

Everything here is an immutable value after construction and every
operation is a pure function of its inputs.  Enumeration order is fixed:
symbols in alphabet order, words lexicographically.
"""

import functools
import itertools
import warnings

from .errors import (
    EmptyShift,
    ForeignSymbol,
    Incompatible,
    InsufficientWindow,
    TruncationWarning,
)

ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"

EXPLICIT = "explicit-finite"
INDEXED = "indexed-countable"


def _check_side(side):
    if side not in (ONE_SIDED, TWO_SIDED):
        raise ValueError(f"side must be {ONE_SIDED!r} or {TWO_SIDED!r}, got {side!r}")
    return side


class Alphabet:
    """A finite or truncated-countable, totally ordered symbol set.

    Explicit alphabets carry their symbols as an ordered, duplicate-free
    list.  Indexed alphabets represent a countable family ``symbol_at(0),
    symbol_at(1), ...``; only symbols of index below the truncation ``K``
    are enumerable, but membership and ordering remain decidable for every
    index via ``index_of``.
    """

    def __init__(self, kind, symbols=None, truncation=None,
                 symbol_at=None, index_of=None, name=None):
        self.kind = kind
        self.name = name
        if kind == EXPLICIT:
            symbols = tuple(symbols)
            if not symbols:
                raise ValueError("explicit alphabets must be nonempty")
            index = {}
            for i, s in enumerate(symbols):
                if s in index:
                    raise ValueError(f"duplicate symbol {s!r}")
                index[s] = i
            self._symbols = symbols
            self._index = index
            self.truncation = None
        elif kind == INDEXED:
            if truncation is None or truncation < 1:
                raise ValueError("indexed alphabets need a positive truncation")
            self.truncation = int(truncation)
            self._symbol_at = symbol_at or (lambda i: i)
            self._index_of = index_of or _natural_index
            self._symbols = tuple(self._symbol_at(i) for i in range(self.truncation))
            self._index = None
        else:
            raise ValueError(f"unknown alphabet kind {kind!r}")

    @classmethod
    def explicit(cls, symbols, name=None):
        return cls(EXPLICIT, symbols=symbols, name=name)

    @classmethod
    def indexed(cls, truncation, symbol_at=None, index_of=None, name=None):
        return cls(INDEXED, truncation=truncation,
                   symbol_at=symbol_at, index_of=index_of, name=name)

    @property
    def is_indexed(self):
        return self.kind == INDEXED

    def symbols(self):
        """The enumerable symbols, in alphabet order (truncated if indexed)."""
        return self._symbols

    def contains(self, symbol):
        """Decidable membership; for indexed alphabets this is total, not
        limited to the truncation."""
        if self.kind == EXPLICIT:
            return symbol in self._index
        return self._index_of(symbol) is not None

    def index(self, symbol):
        """Position of a symbol in the total order of the alphabet."""
        if self.kind == EXPLICIT:
            try:
                return self._index[symbol]
            except (KeyError, TypeError):
                raise ForeignSymbol(symbol, self) from None
        i = self._index_of(symbol)
        if i is None:
            raise ForeignSymbol(symbol, self)
        return i

    def with_truncation(self, truncation):
        """The same symbol family enumerated up to a different truncation."""
        if self.kind == EXPLICIT:
            return self
        return Alphabet(INDEXED, truncation=truncation,
                        symbol_at=self._symbol_at, index_of=self._index_of,
                        name=self.name)

    def __len__(self):
        return len(self._symbols)

    def __repr__(self):
        if self.kind == EXPLICIT:
            return f"Alphabet.explicit({list(self._symbols)!r})"
        return f"Alphabet.indexed({self.truncation}, name={self.name!r})"


def _natural_index(symbol):
    if isinstance(symbol, int) and not isinstance(symbol, bool) and symbol >= 0:
        return symbol
    return None


def word_key(alphabet, word):
    """Sort key placing words in lexicographic alphabet order."""
    return tuple(alphabet.index(s) for s in word)


class Pattern:
    """A finite assignment of symbols to lattice coordinates."""

    def __init__(self, entries):
        items = dict(entries)
        for c in items:
            if not isinstance(c, int):
                raise ValueError(f"coordinate {c!r} is not an integer")
        self._entries = items
        self._items = tuple(sorted(items.items()))

    @property
    def entries(self):
        return dict(self._entries)

    @property
    def support(self):
        """The fixed coordinates, sorted."""
        return tuple(c for c, _ in self._items)

    def get(self, coordinate, default=None):
        return self._entries.get(coordinate, default)

    def __getitem__(self, coordinate):
        return self._entries[coordinate]

    def __contains__(self, coordinate):
        return coordinate in self._entries

    def __len__(self):
        return len(self._entries)

    def items(self):
        return self._items

    def __eq__(self, other):
        return isinstance(other, Pattern) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"Pattern({dict(self._items)!r})"


def merge_patterns(p, q):
    """Union of two compatible patterns.

    Raises :class:`Incompatible` at the least coordinate where the two
    patterns disagree.
    """
    merged = p.entries
    for c, s in q.items():
        if c in merged and merged[c] != s:
            raise Incompatible(c)
        merged[c] = s
    return Pattern(merged)


class Cylinder:
    """The set of points of a shift that match a fixed pattern."""

    def __init__(self, shift, pattern):
        for c, s in pattern.items():
            if not shift.alphabet.contains(s):
                raise ForeignSymbol(s, shift.alphabet)
            if shift.side == ONE_SIDED and c < 0:
                raise ValueError(f"coordinate {c} is negative on a one-sided lattice")
        self.shift = shift
        self.pattern = pattern

    def __repr__(self):
        return f"Cylinder({self.pattern!r})"


class Point:
    """An eventually periodic one- or two-sided sequence.

    Denotes ``... left_period^inf | core | right_period^inf ...`` with the
    first core symbol at coordinate ``anchor``.  One-sided points omit the
    left period and are anchored at 0.  These are the only infinite
    configurations the library represents; every witness the constructive
    results require can be realized this way.
    """

    def __init__(self, core=(), right_period=(), left_period=None, anchor=0):
        core = tuple(core)
        right_period = tuple(right_period)
        if not right_period:
            raise ValueError("right period must be nonempty")
        if left_period is not None:
            left_period = tuple(left_period)
            if not left_period:
                raise ValueError("left period must be nonempty")
        elif anchor != 0:
            raise ValueError("one-sided points are anchored at 0")
        self.core = core
        self.right_period = right_period
        self.left_period = left_period
        self.anchor = anchor

    @classmethod
    def constant(cls, symbol, side=TWO_SIDED):
        if side == ONE_SIDED:
            return cls((), (symbol,))
        return cls((), (symbol,), (symbol,))

    @classmethod
    def periodic(cls, period, side=TWO_SIDED):
        period = tuple(period)
        if side == ONE_SIDED:
            return cls((), period)
        return cls((), period, period)

    @property
    def side(self):
        return TWO_SIDED if self.left_period is not None else ONE_SIDED

    def get(self, coordinate):
        end = self.anchor + len(self.core)
        if coordinate >= end:
            return self.right_period[(coordinate - end) % len(self.right_period)]
        if coordinate >= self.anchor:
            return self.core[coordinate - self.anchor]
        if self.left_period is None:
            raise InsufficientWindow(coordinate)
        return self.left_period[(coordinate - self.anchor) % len(self.left_period)]

    def window(self, lo, hi):
        """The word at coordinates ``lo .. hi - 1``."""
        return tuple(self.get(c) for c in range(lo, hi))

    def window_starts(self, width):
        """Start coordinates whose ``width``-windows exhaust all distinct
        windows of the sequence (one transient zone plus one period on
        each side)."""
        lo = self.anchor
        if self.left_period is not None:
            lo = self.anchor - width - len(self.left_period) + 1
        hi = self.anchor + len(self.core) + len(self.right_period) - 1
        return range(lo, hi + 1)

    def symbols_used(self):
        used = list(self.core) + list(self.right_period)
        if self.left_period is not None:
            used += list(self.left_period)
        return used

    def __eq__(self, other):
        if not isinstance(other, Point) or self.side != other.side:
            return NotImplemented if not isinstance(other, Point) else False
        return same_sequence(self, other)

    def __hash__(self):
        return hash((self.side, self.right_period))

    def __repr__(self):
        left = "" if self.left_period is None else format_word(self.left_period)
        return (f"{left} | {format_word(self.core) if self.core else 'ε'}"
                f" | {format_word(self.right_period)} @ {self.anchor}")


def same_sequence(p, q):
    """Whether two eventually periodic points denote the same sequence."""
    if p.side != q.side:
        return False
    rp = _lcm(len(p.right_period), len(q.right_period))
    hi = max(p.anchor + len(p.core), q.anchor + len(q.core)) + 2 * rp
    if p.side == ONE_SIDED:
        lo = 0
    else:
        lp = _lcm(len(p.left_period), len(q.left_period))
        lo = min(p.anchor, q.anchor) - 2 * lp
    return p.window(lo, hi) == q.window(lo, hi)


def _lcm(a, b):
    import math
    return a * b // math.gcd(a, b)


def format_symbol(symbol):
    if isinstance(symbol, tuple):
        return ",".join(format_symbol(s) for s in symbol)
    return str(symbol)


def format_word(word):
    """Human-readable word rendering; `ε` for the empty word."""
    if not word:
        return "ε"
    parts = [format_symbol(s) for s in word]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return " ".join(parts)


class ShiftSpec:
    """An ``m``-step shift of finite type (step 1 = Markov shift).

    ``allowed`` is a total predicate on length ``m + 1`` words; a word is
    locally admissible iff every full-length factor satisfies it.  For
    ``m = 0`` the predicate simply selects the usable symbols.  The
    ``origin`` tag records how the spec was built, for serialization.
    """

    def __init__(self, alphabet, side, step, allowed, origin=("explicit",)):
        if step < 0:
            raise ValueError("step must be nonnegative")
        self.alphabet = alphabet
        self.side = _check_side(side)
        self.step = int(step)
        self.allowed = allowed
        self.origin = origin

    def with_truncation(self, truncation):
        return ShiftSpec(self.alphabet.with_truncation(truncation),
                         self.side, self.step, self.allowed, self.origin)

    def __repr__(self):
        return f"ShiftSpec(step={self.step}, side={self.side!r}, origin={self.origin!r})"


@functools.lru_cache(maxsize=None)
def admissible_blocks(spec):
    """All allowed words of length ``step + 1`` within the truncation,
    in lexicographic order."""
    width = spec.step + 1
    return tuple(w for w in itertools.product(spec.alphabet.symbols(), repeat=width)
                 if spec.allowed(w))


@functools.lru_cache(maxsize=None)
def transition_structure(spec):
    """Trimmed transition graph on ``m``-blocks.

    Returns ``(states, out, inn)`` where ``states`` is a frozenset of
    ``m``-words, ``out[u]`` lists ``(appended symbol, successor)`` and
    ``inn[v]`` lists ``(prepended symbol, predecessor)``, both in alphabet
    order.  States without an infinite forward ray (one-sided) or without
    both rays (two-sided) have been removed.
    """
    m = spec.step
    out, inn = {}, {}
    states = set()
    for w in admissible_blocks(spec):
        u, v = w[:m], w[1:]
        states.add(u)
        states.add(v)
        out.setdefault(u, []).append((w[-1], v))
        inn.setdefault(v, []).append((w[0], u))
    while True:
        if spec.side == ONE_SIDED:
            dead = {s for s in states
                    if not any(v in states for _, v in out.get(s, ()))}
        else:
            dead = {s for s in states
                    if not any(v in states for _, v in out.get(s, ()))
                    or not any(u in states for _, u in inn.get(s, ()))}
        if not dead:
            break
        states -= dead
    idx = spec.alphabet.index
    out = {s: tuple(sorted(((a, v) for a, v in out.get(s, ()) if v in states),
                           key=lambda av: idx(av[0])))
           for s in states}
    inn = {s: tuple(sorted(((a, u) for a, u in inn.get(s, ()) if u in states),
                           key=lambda au: idx(au[0])))
           for s in states}
    return frozenset(states), out, inn


@functools.lru_cache(maxsize=None)
def language(spec, n):
    """The globally admissible ``n``-words of the shift, within the
    truncation, as a lexicographically sorted tuple.

    A word is globally admissible when it occurs in some point of the
    shift; on the one-sided lattice occurrence at position 0 counts, so
    only forward extendability is required.

    Raises :class:`EmptyShift` when the trimmed transition graph has no
    surviving state.
    """
    if n < 1:
        raise ValueError("n must be positive")
    states, out, _ = transition_structure(spec)
    if not states:
        raise EmptyShift(f"{spec!r} has no point within the truncation")
    m = spec.step
    key = functools.partial(word_key, spec.alphabet)
    if n < m:
        factors = {s[i:i + n] for s in states for i in range(m - n + 1)}
        return tuple(sorted(factors, key=key))
    words = []

    def grow(state, labels, remaining):
        if remaining == 0:
            words.append(state_word + tuple(labels))
            return
        for a, nxt in out[state]:
            labels.append(a)
            grow(nxt, labels, remaining - 1)
            labels.pop()

    for start in sorted(states, key=key):
        state_word = start
        grow(start, [], n - m)
    return tuple(words)


def is_empty(spec):
    """Whether the shift has no point within the truncation.

    For indexed alphabets an empty answer is truncation-relative and is
    flagged with a :class:`TruncationWarning` (a larger truncation could
    reveal points); a nonempty answer is absolute.
    """
    states, _, _ = transition_structure(spec)
    if not states and spec.alphabet.is_indexed:
        warnings.warn(TruncationWarning(
            f"empty at truncation {spec.alphabet.truncation}; "
            "the answer may differ at a larger truncation"))
    return not states


def _check_symbols(spec, symbols):
    for s in symbols:
        if not spec.alphabet.contains(s):
            raise ForeignSymbol(s, spec.alphabet)


def is_locally_admissible(spec, word):
    """Whether no length ``m + 1`` factor of ``word`` violates ``allowed``.

    Words shorter than ``m + 1`` are locally admissible iff they extend to
    a single allowed block (fillers drawn from the truncated alphabet).
    """
    word = tuple(word)
    _check_symbols(spec, word)
    width = spec.step + 1
    if len(word) >= width:
        return all(spec.allowed(word[i:i + width]) for i in range(len(word) - width + 1))
    pad = width - len(word)
    syms = spec.alphabet.symbols()
    for offset in range(pad + 1):
        for fill in itertools.product(syms, repeat=pad):
            block = fill[:offset] + word + fill[offset:]
            if spec.allowed(block):
                return True
    return False


def contains_point(spec, point):
    """Whether every window of an eventually periodic point is allowed.

    Decidable because only finitely many distinct windows occur: the core
    plus one period on each side.
    """
    if point.side != spec.side:
        raise ValueError(f"point is {point.side} but the shift is {spec.side}")
    _check_symbols(spec, point.symbols_used())
    width = spec.step + 1
    for start in point.window_starts(width):
        if spec.side == ONE_SIDED and start < 0:
            continue
        if not spec.allowed(point.window(start, start + width)):
            return False
    return True
