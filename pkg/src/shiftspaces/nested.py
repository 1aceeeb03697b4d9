"""Nested cylinder intersection in Markov shifts, and its failure beyond.

A refining chain of cylinders in normal form fixes one new coordinate at a
time, always strictly outside the interval hull of the coordinates fixed
so far.  For a Markov shift the partial constraint problems over the
growing hull can be solved by path search in the presenting graph, and the
solutions extend to an eventually periodic point in the intersection of
every prefix; ``intersect_prefix`` and ``limit_witness`` implement this.

Over an infinite alphabet the property fails already for 2-step shifts on
the two-sided lattice: ``counterexample_sft`` builds a shift in which
every finite prefix of a nested chain is nonempty while the full
intersection is empty, certified by the exhaustive ``min_first_gap``
computation growing without bound.
"""

import math
import warnings
from dataclasses import dataclass

from . import kernel
from .errors import (
    ForeignSymbol,
    Incompatible,
    InteriorAddition,
    NoPeriodicSolution,
    NotMarkov,
    NotNested,
    TruncationWarning,
)
from .kernel import Alphabet, ONE_SIDED, TWO_SIDED, Point, ShiftSpec


@dataclass(frozen=True)
class NestedFamily:
    """Entries ``(coordinate, symbol)`` of a chain in normal form.

    Coordinates are pairwise distinct and each lies strictly outside the
    interval hull of its predecessors (below all of them or above all of
    them).
    """
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((c, s) for c, s in self.entries))
        if not self.entries:
            raise ValueError("a nested family needs at least one entry")
        lo = hi = self.entries[0][0]
        for c, _ in self.entries[1:]:
            if lo <= c <= hi:
                raise InteriorAddition(c) if lo < c < hi else NotNested(
                    f"coordinate {c} is fixed twice")
            lo, hi = min(lo, c), max(hi, c)

    def constraints(self, L=None):
        picked = self.entries if L is None else self.entries[:L]
        return dict(picked)

    def hull(self, L):
        coords = [c for c, _ in self.entries[:L]]
        return min(coords), max(coords)


def normalize_family(cylinders):
    """Flatten a refining chain of cylinders into normal form.

    Each cylinder must extend the previous one; a conflicting or shrinking
    pattern raises :class:`NotNested`.  When one refinement step adds
    several coordinates they are serialized nearest-to-hull first (ties
    broken by ascending coordinate); a coordinate strictly inside the
    hull raises :class:`InteriorAddition` -- interior refinements have no
    normal form here.
    """
    cylinders = list(cylinders)
    if not cylinders:
        raise ValueError("empty chain")
    shift = cylinders[0].shift
    for cyl in cylinders[1:]:
        if cyl.shift is not shift:
            raise ValueError("all cylinders must reference the same shift")
    entries = []
    hull = None
    prev = kernel.Pattern({})
    for cyl in cylinders:
        pat = cyl.pattern
        try:
            merged = kernel.merge_patterns(prev, pat)
        except Incompatible as exc:
            raise NotNested(f"patterns conflict at coordinate {exc.coordinate}") from exc
        if set(pat.support) < set(prev.support) or len(merged) != len(pat):
            raise NotNested("a later cylinder drops a fixed coordinate")
        pending = sorted(set(pat.support) - set(prev.support))
        while pending:
            if hull is None:
                pick = min(pending, key=lambda c: (abs(c), c))
            else:
                lo, hi = hull
                inside = [c for c in pending if lo < c < hi]
                if inside:
                    raise InteriorAddition(inside[0])
                pick = min(pending, key=lambda c: (lo - c if c < lo else c - hi, c))
            pending.remove(pick)
            entries.append((pick, pat[pick]))
            hull = (pick, pick) if hull is None else (min(hull[0], pick), max(hull[1], pick))
        prev = pat
    return NestedFamily(tuple(entries))


@dataclass(frozen=True, eq=False)
class PathWitness:
    """A solved prefix: the filled coordinates, the corresponding edges of
    the presenting graph, and an eventually periodic completion lying in
    every cylinder of the prefix."""
    assignment: dict
    edges: tuple
    point: Point
    alpha: int
    beta: int


def _complete_to_point(spec, assignment):
    """Extend a contiguous assignment to an eventually periodic point,
    closing each open side with the lexicographically least walk in the
    trimmed block graph (which settles into a cycle)."""
    states, out, inn = kernel.transition_structure(spec)
    m = spec.step
    coords = sorted(assignment)
    lo, hi = coords[0], coords[-1]
    seq = [assignment[c] for c in range(lo, hi + 1)]

    def walk(start, step_fn):
        state = start
        emitted = []
        seen = {state: 0}
        while True:
            a, state = step_fn(state)
            emitted.append(a)
            if state in seen:
                i = seen[state]
                return emitted[:i], emitted[i:]
            seen[state] = len(emitted)

    right_state = tuple(seq[len(seq) - m:]) if m else ()
    pre_r, cycle_r = walk(right_state, lambda s: out[s][0][:2])
    if spec.side == ONE_SIDED:
        return Point(tuple(seq) + tuple(pre_r), tuple(cycle_r))
    left_state = tuple(seq[:m]) if m else ()
    pre_l, cycle_l = walk(left_state, lambda s: inn[s][0][:2])
    core = tuple(reversed(pre_l)) + tuple(seq) + tuple(pre_r)
    return Point(core, tuple(cycle_r), tuple(reversed(cycle_l)),
                 anchor=lo - len(pre_l))


def _warn_truncation(spec, what):
    if spec.alphabet.is_indexed:
        warnings.warn(TruncationWarning(
            f"{what} at truncation {spec.alphabet.truncation}; "
            "the answer may differ at a larger truncation"))


def intersect_prefix(gamma, family, L):
    """Solve the first ``L`` constraints of a nested family in a Markov
    shift.

    Layered search over (coordinate, vertex) states in the presenting
    graph: a backward feasibility sweep over the hull, then the
    lexicographically least forward choice, then completion to an
    eventually periodic point.  Returns a :class:`PathWitness` whose point
    lies in every cylinder of the prefix, or None exactly when no point
    matches under the truncation (with a :class:`TruncationWarning` for
    indexed alphabets, where a larger truncation could answer
    differently).
    """
    if gamma.step != 1:
        raise NotMarkov(gamma.step)
    if not 1 <= L <= len(family.entries):
        raise ValueError(f"L must be between 1 and {len(family.entries)}")
    constraints = family.constraints(L)
    for c, s in constraints.items():
        if not gamma.alphabet.contains(s):
            raise ForeignSymbol(s, gamma.alphabet)
        if gamma.side == ONE_SIDED and c < 0:
            raise ValueError(f"coordinate {c} is negative on a one-sided lattice")
    alpha, beta = family.hull(L)
    lo = 0 if gamma.side == ONE_SIDED else alpha
    hi = beta

    states, out, _ = kernel.transition_structure(gamma)
    if not states:
        _warn_truncation(gamma, "empty intersection")
        return None
    idx = gamma.alphabet.index
    succ = {s[0]: tuple(b for b, _ in out[s]) for s in states}
    symbols = sorted(succ, key=idx)

    def matches(c, a):
        return c not in constraints or constraints[c] == a

    feasible = {hi: [a for a in symbols if matches(hi, a)]}
    for c in range(hi - 1, lo - 1, -1):
        allowed_next = set(feasible[c + 1])
        feasible[c] = [a for a in symbols
                       if matches(c, a) and any(b in allowed_next for b in succ[a])]
    if not feasible[lo]:
        _warn_truncation(gamma, "empty intersection")
        return None

    assignment = {lo: feasible[lo][0]}
    for c in range(lo + 1, hi + 1):
        allowed_here = set(feasible[c])
        assignment[c] = next(b for b in succ[assignment[c - 1]] if b in allowed_here)
    point = _complete_to_point(gamma, assignment)
    edges = tuple((assignment[c - 1], assignment[c], assignment[c])
                  for c in range(lo + 1, hi + 1))
    return PathWitness(assignment, edges, point, alpha, beta)


@dataclass(frozen=True)
class InfiniteFamily:
    """A finitely described infinite nested family: finitely many prefix
    entries, then constraints along an arithmetic progression of
    coordinates with eventually periodic symbols."""
    prefix: tuple
    tail_start: int
    tail_stride: int
    tail_symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((c, s) for c, s in self.prefix))
        object.__setattr__(self, "tail_symbols", tuple(self.tail_symbols))
        if self.tail_stride == 0:
            raise ValueError("tail stride must be nonzero")
        if not self.tail_symbols:
            raise ValueError("tail symbols must be nonempty")

    def constraint(self, c):
        for cc, s in self.prefix:
            if cc == c:
                return s
        offset = c - self.tail_start
        if self.tail_stride > 0 and offset >= 0 or self.tail_stride < 0 and offset <= 0:
            if offset % self.tail_stride == 0:
                return self.tail_symbols[(offset // self.tail_stride) % len(self.tail_symbols)]
        return None


def family_matches(point, family):
    """Symbolic check that an eventually periodic point satisfies every
    entry of an infinite family: the finite prefix is checked directly and
    the periodic tail on one full common period beyond the core."""
    for c, s in family.prefix:
        if point.get(c) != s:
            return False
    d, p = family.tail_stride, len(family.tail_symbols)
    if d < 0 and point.side == ONE_SIDED:
        return False
    if d > 0:
        period = len(point.right_period)
        end = point.anchor + len(point.core)
        last = max(end, family.tail_start) + math.lcm(abs(d) * p, period)
        cs = range(family.tail_start, last + 1, d)
    else:
        period = len(point.left_period)
        start = point.anchor
        first = min(start, family.tail_start) - math.lcm(abs(d) * p, period)
        cs = range(family.tail_start, first - 1, d)
    return all(point.get(c) == family.constraint(c) for c in cs)


def limit_witness(gamma, family):
    """An eventually periodic point in every cylinder of an infinite
    nested family over a Markov shift.

    Solves the finite window up to one full constraint period past the
    tail start, then closes the constrained side with a cycle of the
    product of the presenting graph with the constraint phase (vertices
    ``(symbol, phase)``), and the free side with the least plain cycle.
    Raises :class:`NoPeriodicSolution` when no cycle is compatible with
    the periodic constraint pattern under the truncation.
    """
    if gamma.step != 1:
        raise NotMarkov(gamma.step)
    if gamma.side == ONE_SIDED:
        if family.tail_stride < 0 or any(c < 0 for c, _ in family.prefix) \
                or family.tail_start < 0:
            raise ValueError("one-sided families must stay at coordinates >= 0")
    if family.tail_stride < 0:
        mirrored = _mirror_family(family)
        point = limit_witness(_mirror_spec(gamma), mirrored)
        return _mirror_point(point)

    states, out, _ = kernel.transition_structure(gamma)
    if not states:
        raise NoPeriodicSolution("the shift is empty under the truncation")
    idx = gamma.alphabet.index
    succ = {s[0]: tuple(b for b, _ in out[s]) for s in states}
    symbols = sorted(succ, key=idx)

    d = family.tail_stride
    period = d * len(family.tail_symbols)
    t0 = family.tail_start

    def phase_constraint(phase):
        if phase % d == 0:
            return family.tail_symbols[(phase // d) % len(family.tail_symbols)]
        return None

    live = {(a, r) for a in symbols for r in range(period)
            if phase_constraint(r) in (None, a)}
    while True:
        dead = {(a, r) for a, r in live
                if not any((b, (r + 1) % period) in live for b in succ[a])}
        if not dead:
            break
        live -= dead
    if not live:
        raise NoPeriodicSolution(
            "no cycle of the presenting graph is compatible with the periodic tail")

    coords = [c for c, _ in family.prefix] + [t0]
    lo = 0 if gamma.side == ONE_SIDED else min(coords)
    hi = max(coords) + period

    def matches(c, a):
        want = family.constraint(c)
        if want is not None and want != a:
            return False
        return c < t0 or (a, (c - t0) % period) in live

    feasible = {hi: [a for a in symbols if matches(hi, a)]}
    for c in range(hi - 1, lo - 1, -1):
        allowed_next = set(feasible[c + 1])
        feasible[c] = [a for a in symbols
                       if matches(c, a) and any(b in allowed_next for b in succ[a])]
    if not feasible[lo]:
        raise NoPeriodicSolution("the prefix constraints cannot be met under the truncation")

    assignment = {lo: feasible[lo][0]}
    for c in range(lo + 1, hi + 1):
        allowed_here = set(feasible[c])
        assignment[c] = next(b for b in succ[assignment[c - 1]] if b in allowed_here)

    # Tail: least constrained walk through (symbol, phase) nodes until a
    # node repeats; the cycle length is a multiple of the constraint period.
    node = (assignment[hi], (hi - t0) % period)
    emitted = []
    seen = {node: 0}
    while True:
        a, r = node
        node = next((b, (r + 1) % period) for b in succ[a]
                    if (b, (r + 1) % period) in live)
        emitted.append(node[0])
        if node in seen:
            i = seen[node]
            pre_r, cycle_r = emitted[:i], emitted[i:]
            break
        seen[node] = len(emitted)

    seq = tuple(assignment[c] for c in range(lo, hi + 1))
    if gamma.side == ONE_SIDED:
        point = Point(seq + tuple(pre_r), tuple(cycle_r))
    else:
        inn = kernel.transition_structure(gamma)[2]
        pred = {s[0]: tuple(b for b, _ in inn[s]) for s in states}
        state = assignment[lo]
        left = []
        seen_l = {state: 0}
        while True:
            state = pred[state][0]
            left.append(state)
            if state in seen_l:
                i = seen_l[state]
                pre_l, cycle_l = left[:i], left[i:]
                break
            seen_l[state] = len(left)
        core = tuple(reversed(pre_l)) + seq + tuple(pre_r)
        point = Point(core, tuple(cycle_r), tuple(reversed(cycle_l)),
                      anchor=lo - len(pre_l))
    if not kernel.contains_point(gamma, point) or not family_matches(point, family):
        raise AssertionError("internal error: constructed witness failed verification")
    return point


def _mirror_spec(gamma):
    allowed = gamma.allowed
    return ShiftSpec(gamma.alphabet, gamma.side, gamma.step,
                     lambda w: allowed(tuple(reversed(w))),
                     origin=("mirror", gamma.origin))


def _mirror_family(family):
    return InfiniteFamily(tuple((-c, s) for c, s in family.prefix),
                          -family.tail_start, -family.tail_stride,
                          family.tail_symbols)


def _mirror_point(point):
    end = point.anchor + len(point.core)
    return Point(tuple(reversed(point.core)), tuple(reversed(point.left_period)),
                 tuple(reversed(point.right_period)), anchor=-(end - 1))


def _cylinder_search(spec, constraints, lo, hi):
    """Exhaustive first-witness search for an assignment over ``[lo, hi]``
    matching the constraints and extending to a point of the shift.

    Depth-first over coordinates in alphabet order with windowwise
    pruning; the end blocks must survive the ray trim, which certifies the
    two infinite extensions.  Returns the lexicographically least
    assignment or None.
    """
    states, _, _ = kernel.transition_structure(spec)
    if not states:
        return None
    m = spec.step
    if spec.side == ONE_SIDED:
        lo = 0
    hi = max(hi, lo + m)
    width = m + 1
    symbols = spec.alphabet.symbols()
    total = hi - lo + 1
    seq = []

    def dfs():
        k = len(seq)
        if k == total:
            return dict(zip(range(lo, hi + 1), seq))
        c = lo + k
        choices = (constraints[c],) if c in constraints else symbols
        for a in choices:
            seq.append(a)
            good = True
            if len(seq) >= width and not spec.allowed(tuple(seq[-width:])):
                good = False
            if good and m and len(seq) == m and spec.side == TWO_SIDED \
                    and tuple(seq) not in states:
                good = False
            if good and m and len(seq) == total and tuple(seq[-m:]) not in states:
                good = False
            if good:
                found = dfs()
                if found is not None:
                    return found
            seq.pop()
        return None

    return dfs()


# ---------------------------------------------------------------------------
# The infinite-alphabet counterexample: a two-sided 2-step shift where a
# nested chain has every finite prefix nonempty but empty intersection.
# ---------------------------------------------------------------------------

def _alternating_alphabet(K):
    def symbol_at(i):
        if i == 0:
            return "f0"
        if i == 1:
            return "f1"
        return f"g{i - 2}"

    def index_of(s):
        if s == "f0":
            return 0
        if s == "f1":
            return 1
        if isinstance(s, str) and s.startswith("g") and s[1:].isdigit():
            return int(s[1:]) + 2
        return None

    return Alphabet.indexed(K + 2, symbol_at, index_of, name=f"f/g({K})")


def _gap_value(symbol):
    return int(symbol[1:]) if symbol.startswith("g") else None


def _alternating_allowed(word):
    for x, y in zip(word, word[1:]):
        if x.startswith("f") == y.startswith("f"):
            return False
    u, v, w = word
    if v == "f1" and u.startswith("g") and w.startswith("g"):
        return _gap_value(w) < _gap_value(u)
    return True


@dataclass(frozen=True, eq=False)
class CounterexampleSft:
    """A 2-step shift over ``{f0, f1} u {g0, g1, ...}`` with symbols
    alternating between the f and g layers, where crossing an ``f1``
    forces the neighboring g-values to drop strictly.

    The nested chain fixing ``x_{2l} = f1`` for ``l = 0, 1, ...`` then has
    every finite prefix nonempty (for ``L < K`` under truncation ``K``)
    while the full intersection is empty: the gap values along a prefix
    descend strictly, so the value at coordinate 1 grows without bound
    with the prefix length.
    """
    truncation: int
    spec: ShiftSpec

    def family(self, L):
        return NestedFamily(tuple((2 * i, "f1") for i in range(L)))

    def prefix_witness(self, L):
        """A point in the ``L``-th prefix cylinder, or None (with a
        :class:`TruncationWarning`) when the truncated alphabet cannot
        realize one."""
        if L < 1:
            raise ValueError("L must be positive")
        constraints = self.family(L).constraints()
        found = _cylinder_search(self.spec, constraints, 0, 2 * (L - 1))
        if found is None:
            _warn_truncation(self.spec, f"prefix L={L} is empty")
            return None
        return _complete_to_point(self.spec, found)


def counterexample_sft(K):
    """Build the counterexample shift at truncation ``K`` (g-values
    ``g0 .. g{K-1}`` enumerable)."""
    if K < 2:
        raise ValueError("K must be at least 2")
    spec = ShiftSpec(_alternating_alphabet(K), TWO_SIDED, 2,
                     _alternating_allowed,
                     origin=("builtin", "counterexample", {"K": K}))
    return CounterexampleSft(K, spec)


def min_first_gap(K, L):
    """Minimum ``m`` with ``x_1 = g_m`` over all points of the ``L``-th
    prefix cylinder of the counterexample, by exhaustive search.

    Equals ``L - 1``: the certificate that the full intersection is empty,
    since the minimum is unbounded in ``L``.
    """
    if not K > L:
        raise ValueError("requires K > L")
    ce = counterexample_sft(K)
    constraints = ce.family(L).constraints()
    for value in range(K):
        probe = dict(constraints)
        probe[1] = f"g{value}"
        if _cylinder_search(ce.spec, probe, 0, max(2 * (L - 1), 1)) is not None:
            return value
    raise AssertionError("internal error: no witness found although L < K")
