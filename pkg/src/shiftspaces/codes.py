"""Sliding block codes and partition-by-cylinders codes.

A sliding block code reads a window of ``memory + anticipation + 1``
symbols around each coordinate and emits one target symbol.  On the
two-sided lattice output coordinate ``i`` reads source coordinates
``i - memory .. i + anticipation``; on the one-sided lattice the window is
read forward from the output coordinate (the memory is absorbed by
re-anchoring, so images stay defined at every coordinate >= 0).

Partition codes evaluate an adaptive probe program on every shift of a
point: read coordinate 0 and, depending on the value, at most one further
data-dependent coordinate, ending in a class label.
"""

import functools
from dataclasses import dataclass

from . import kernel
from .errors import (
    ForeignSymbol,
    InsufficientWindow,
    NotAdmissible,
    RuleGap,
    WindowTooShort,
)
from .kernel import ONE_SIDED, Pattern, Point


class LocalRule:
    """A local rule with memory ``l`` and anticipation ``r``.

    Backed either by an explicit window -> symbol table or by a total
    function (builtin rules).  The window length is ``l + r + 1``.
    """

    def __init__(self, memory, anticipation, table=None, fn=None, name=None):
        if memory < 0 or anticipation < 0:
            raise ValueError("memory and anticipation must be nonnegative")
        if (table is None) == (fn is None):
            raise ValueError("provide exactly one of table or fn")
        self.memory = memory
        self.anticipation = anticipation
        self.table = dict(table) if table is not None else None
        self.fn = fn
        self.name = name

    @property
    def window(self):
        return self.memory + self.anticipation + 1

    def __call__(self, word):
        word = tuple(word)
        if len(word) != self.window:
            raise WindowTooShort(self.window, len(word))
        if self.table is not None:
            try:
                return self.table[word]
            except KeyError:
                raise RuleGap(word) from None
        return self.fn(word)

    def __repr__(self):
        tag = self.name or ("table" if self.table is not None else "fn")
        return f"LocalRule({self.memory}, {self.anticipation}, {tag})"


class SlidingBlockCode:
    """A sliding block code from a shift spec into a target alphabet.

    ``rebuild``, when present, reconstructs the code at a different
    truncation of the underlying symbol family; it powers the growth
    probes (K versus 2K) used for cardinality accounting.  Codes on
    indexed sources get a default rebuild that retruncates the source.
    """

    def __init__(self, source, target_alphabet, rule, rebuild=None, truncation=None):
        self.source = source
        self.target_alphabet = target_alphabet
        self.rule = rule
        if truncation is None and source.alphabet.is_indexed:
            truncation = source.alphabet.truncation
        self.truncation = truncation
        if rebuild is None and source.alphabet.is_indexed:
            def rebuild(k, _self=self):
                return SlidingBlockCode(_self.source.with_truncation(k),
                                        _self.target_alphabet, _self.rule,
                                        truncation=k)
        self.rebuild = rebuild

    @property
    def memory(self):
        return self.rule.memory

    @property
    def anticipation(self):
        return self.rule.anticipation

    @property
    def window(self):
        return self.rule.window

    def at_truncation(self, truncation):
        if self.rebuild is None:
            raise ValueError("this code cannot be rebuilt at another truncation")
        return self.rebuild(truncation)

    def __repr__(self):
        return f"SlidingBlockCode({self.rule!r} on {self.source!r})"


def _apply(rule, word):
    out = []
    for i in range(len(word) - rule.window + 1):
        out.append(rule(word[i:i + rule.window]))
    return tuple(out)


def apply_rule_word(code, word):
    """Image of a word under the local rule.

    The output has length ``len(word) - memory - anticipation``; output
    position ``j`` is the rule applied to ``word[j : j + window]``, so it
    corresponds to source position ``j + memory``.
    """
    word = tuple(word)
    if len(word) < code.window:
        raise WindowTooShort(code.window, len(word))
    if not kernel.is_locally_admissible(code.source, word):
        raise NotAdmissible(f"{kernel.format_word(word)} is not admissible in the source")
    return _apply(code.rule, word)


def apply_rule_point(code, point):
    """Image of an eventually periodic point; again eventually periodic.

    Periods map to periods and the core maps windowwise.  On the one-sided
    lattice output coordinate ``j`` reads source coordinates
    ``j .. j + window - 1``.
    """
    if not kernel.contains_point(code.source, point):
        raise NotAdmissible("the point does not lie in the source shift")
    rule = code.rule
    pr = len(point.right_period)
    if point.side == ONE_SIDED:
        core_len = len(point.core) + pr

        def y(j):
            return rule(point.window(j, j + rule.window))

        core = tuple(y(j) for j in range(core_len))
        right = tuple(y(j) for j in range(core_len, core_len + pr))
        return Point(core, right)
    pl = len(point.left_period)
    t = point.anchor
    lo = t - rule.anticipation - 2 * pl
    hi = t + len(point.core) + rule.memory + pr

    def y(i):
        return rule(point.window(i - rule.memory, i + rule.anticipation + 1))

    left = tuple(y(i) for i in range(lo - pl, lo))
    core = tuple(y(i) for i in range(lo, hi))
    right = tuple(y(i) for i in range(hi, hi + pr))
    return Point(core, right, left, anchor=lo)


def image_language(code, n):
    """The ``n``-words of the image shift, within the truncation: images
    of all admissible ``(n + memory + anticipation)``-words."""
    margin = code.memory + code.anticipation
    words = kernel.language(code.source, n + margin)
    images = {_apply(code.rule, w) for w in words}
    key = functools.partial(kernel.word_key, code.target_alphabet)
    return tuple(sorted(images, key=key))


@dataclass(frozen=True)
class PreimageCount:
    """Number of rule windows mapping to a symbol, with a growth probe.

    ``grows`` is set when the count at truncation 2K exceeds the count at
    K, the desk-scale signal that the code is not locally bounded
    finite-to-one over the full symbol family.
    """
    count: int
    grows: bool = False
    count_at_doubled: int | None = None
    truncation: int | None = None


def _window_preimages(code, symbol):
    words = kernel.language(code.source, code.window)
    return sum(1 for w in words if code.rule(w) == symbol)


def preimage_count(code, symbol):
    """Count the admissible windows the rule maps to ``symbol``.

    The maximum of this count over the image symbols is the empirical
    locally-bounded order of the code.
    """
    if not code.target_alphabet.contains(symbol):
        raise ForeignSymbol(symbol, code.target_alphabet)
    base = _window_preimages(code, symbol)
    if code.truncation is not None and code.rebuild is not None:
        doubled = _window_preimages(code.at_truncation(2 * code.truncation), symbol)
        return PreimageCount(base, doubled > base, doubled, code.truncation)
    return PreimageCount(base)


def empirical_order(code):
    """Max preimage count over the image symbols (within truncation),
    plus a flag when any count grows with the truncation."""
    best = 0
    grows = False
    for b in image_language(code, 1):
        pc = preimage_count(code, b[0])
        best = max(best, pc.count)
        grows = grows or pc.grows
    return best, grows


class CylinderPartition:
    """A partition of a shift by cylinders, given as a probe program.

    ``program(read)`` receives a callable ``read(coordinate) -> symbol``
    and must return the class label of the point seen through ``read``.
    Programs are limited to depth-2 reads: coordinate 0 first, then at
    most one data-dependent coordinate.  ``support_shapes`` describes the
    family of coordinate supports the classes use.
    """

    def __init__(self, name, program, support_shapes, finite_supports):
        self.name = name
        self.program = program
        self.support_shapes = support_shapes
        self.finite_supports = finite_supports

    def __repr__(self):
        return f"CylinderPartition({self.name!r})"


def _reader(source):
    if isinstance(source, Point):
        return source.get
    if isinstance(source, Pattern):
        entries = source
    elif isinstance(source, dict):
        entries = source
    else:
        raise TypeError(f"cannot probe {type(source).__name__}")

    def read(coordinate):
        if coordinate in entries:
            return entries[coordinate]
        raise InsufficientWindow(coordinate)

    return read


def partition_classify(partition, source):
    """The unique class label whose cylinder contains the point.

    ``source`` may be a :class:`Point` or a window (a dict or
    :class:`Pattern`); a window must cover every coordinate the probe
    reads, else :class:`InsufficientWindow` names the missing one.
    """
    return partition.program(_reader(source))


def apply_partition_code(partition, point, span):
    """Class labels of the shifts of ``point`` over the inclusive
    coordinate interval ``span = (lo, hi)``."""
    lo, hi = span
    read = _reader(point)
    labels = []
    for i in range(lo, hi + 1):
        labels.append(partition.program(lambda j, _i=i: read(_i + j)))
    return tuple(labels)


def singleton_partition():
    """The trivial partition with a single class covering the shift."""
    return CylinderPartition(
        "singleton",
        lambda read: "*",
        support_shapes="{{}} (no coordinate read)",
        finite_supports=True,
    )
