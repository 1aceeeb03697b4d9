"""The variable-length image of the full shift over the naturals.

Partition the full shift on alphabet ``{0, 1, 2, ...}`` into the cylinder
``[x_0 = 0]`` and the cylinders ``[x_0 = n, x_n = k]`` for ``n >= 1``.
The induced code sends a point ``x`` to the sequence of pair symbols
``y_i = (x_i, x_{i + x_i})`` (with the tag ``(0,)`` where ``x_i = 0``):
each output symbol probes a data-dependent coordinate.

Left contexts assembled from the symbols ``(2j - 1, a_{-j})`` force the
continuation ``x_0 x_1 ... = reversal of a`` uniquely, so the ``K**L``
truncated contexts of length ``L`` force ``K**L`` pairwise distinct
continuations.  Any graph presenting the image shift therefore needs at
least ``K**L`` distinct vertices to separate them -- a count that outgrows
every fixed polynomial in ``K * L``, in contrast with the single-symbol
labels of presentations of SFT images under locally finite-to-one codes.
This exact finite count is the computable content here; no claim about
uncountable sets is made by the code.
"""

import itertools

from .codes import CylinderPartition, _reader
from .errors import ForeignSymbol, InsufficientWindow, ResourceBound

ZERO_CLASS = (0,)


def _check_value(value, truncation):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ForeignSymbol(value)
    if value >= truncation:
        raise ForeignSymbol(value)
    return value


def svl_partition(truncation):
    """The defining partition as a depth-2 probe program: read coordinate
    0; on a nonzero value ``n``, read coordinate ``n`` as well."""

    def program(read):
        n = read(0)
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ForeignSymbol(n)
        if n == 0:
            return ZERO_CLASS
        return (n, read(n))

    return CylinderPartition(
        f"svl({truncation})",
        program,
        support_shapes="{0} and {0, n} for n >= 1",
        finite_supports=False,
    )


def svl_image_window(source, span, truncation):
    """Image symbols ``y_i`` for ``i`` over the inclusive interval
    ``span = (lo, hi)``.

    ``source`` is a point or a window; every probed coordinate
    ``i + x_i`` must be covered and every symbol read must have index
    below the truncation.
    """
    read = _reader(source)
    lo, hi = span
    out = []
    for i in range(lo, hi + 1):
        value = _check_value(read(i), truncation)
        if value == 0:
            out.append(ZERO_CLASS)
        else:
            out.append((value, _check_value(read(i + value), truncation)))
    return tuple(out)


def context_cap(truncation):
    """Largest context length whose first components ``2j - 1`` stay
    within index ``truncation`` (they reach ``2L - 1``)."""
    return (truncation + 1) // 2


def context_sequence(context, truncation):
    """The forcing left context of a word ``a = (a_{-L}, ..., a_{-1})``:
    image symbols ``(2j - 1, a_{-j})`` at coordinates ``-L .. -1``.

    The underlying source coordinates satisfy ``x_{-j} = 2j - 1``, so the
    probe at position ``-j`` lands at coordinate ``j - 1 >= 0``.
    """
    context = tuple(context)
    for a in context:
        _check_value(a, truncation)
    L = len(context)
    return tuple((2 * (L - pos) - 1, context[pos]) for pos in range(L))


def forced_continuation(context):
    """Source symbols ``x_0 .. x_{L-1}`` forced by the context: the probe
    at position ``-j`` reads coordinate ``j - 1``, so the continuation is
    the reversal of ``a``.  The map is injective."""
    return tuple(reversed(tuple(context)))


def context_window(context):
    """The source window realizing a context: ``x_{-j} = 2j - 1`` on
    ``-L .. -1`` and the forced continuation on ``0 .. L - 1``."""
    context = tuple(context)
    L = len(context)
    window = {-j: 2 * j - 1 for j in range(1, L + 1)}
    window.update(enumerate(forced_continuation(context)))
    return window


def separation_count(truncation, L, cap=2_000_000):
    """Number of distinct continuations forced by the ``truncation**L``
    truncated contexts of length ``L``; equals ``truncation**L`` exactly.

    This is the finite-scale separation certificate: a presenting graph
    needs this many pairwise distinct context vertices.
    """
    if truncation < 1 or L < 1:
        raise ValueError("truncation and L must be positive")
    total = truncation ** L
    if total > cap:
        raise ResourceBound(total, cap)
    continuations = {forced_continuation(a)
                     for a in itertools.product(range(truncation), repeat=L)}
    return len(continuations)


def duality_holds(context, truncation):
    """Check that re-probing the assembled source window reproduces the
    context's image symbols on ``-L .. -1``."""
    context = tuple(context)
    L = len(context)
    if L == 0:
        return True
    window = context_window(context)
    probe_truncation = max(truncation, 2 * L)
    got = svl_image_window(window, (-L, -1), probe_truncation)
    return got == context_sequence(context, truncation)
