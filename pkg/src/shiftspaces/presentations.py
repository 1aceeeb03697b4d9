"""Labeled directed graphs presenting shifts, and follower-set graphs.

A Markov shift is presented by the graph whose vertices are its symbols
and whose edges are its admissible 2-words, each edge labeled by its
target symbol; all edges sharing a label share their target.  Relabeling
such a graph through a 1-block rule presents the image of the shift under
that rule, which yields finite presentations (with exact vertex and edge
counts) for images of SFTs under windowed codes.

Follower-set graphs group words by their admissible continuations; for an
``m``-step SFT the class of a word is decided by its last ``m`` letters,
so every long enough word reaches a single class.
"""

from collections import Counter
from dataclasses import dataclass, field

from . import kernel
from .codes import image_language
from .errors import InfiniteAlphabetUnsupported, NotMarkov, RuleGap
from .kernel import ONE_SIDED, TWO_SIDED, format_word
from .recoding import one_block_recode


class LabeledGraph:
    """A directed multigraph with edge labels; an immutable value.

    ``side`` records which lattice the presented shift lives on and
    controls which paths count toward the presented language (forward
    extendable on the one-sided lattice, bi-extendable on the two-sided).

    ``vertex_labels``, when present, gives each vertex an emission label;
    on the one-sided lattice a presented word starts with the start
    vertex's emission (a right-infinite point has no edge for its first
    coordinate, so the start vertex stands in for it).
    """

    def __init__(self, vertices, edges, side=TWO_SIDED, vertex_labels=None):
        self.vertices = tuple(vertices)
        self.edges = tuple((s, t, l) for s, t, l in edges)
        self.side = side
        self.vertex_labels = None if vertex_labels is None else dict(vertex_labels)
        vs = set(self.vertices)
        for s, t, _ in self.edges:
            if s not in vs or t not in vs:
                raise ValueError(f"edge endpoint {s!r} or {t!r} is not a declared vertex")
        self._out = None
        self._in = None

    def out_edges(self, vertex):
        if self._out is None:
            out = {v: [] for v in self.vertices}
            for e in self.edges:
                out[e[0]].append(e)
            self._out = out
        return self._out[vertex]

    def in_edges(self, vertex):
        if self._in is None:
            inn = {v: [] for v in self.vertices}
            for e in self.edges:
                inn[e[1]].append(e)
            self._in = inn
        return self._in[vertex]

    def labels(self):
        return {l for _, _, l in self.edges}

    def __repr__(self):
        return (f"LabeledGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, {self.side})")


def markov_to_graph(spec):
    """Present a Markov shift: vertices are its 1-words, edges its
    2-words, the edge for ``ab`` running ``a -> b`` with label ``b``.

    Every edge labeled ``b`` ends at vertex ``b``, so each label has a
    unique receiving vertex.
    """
    if spec.step != 1:
        raise NotMarkov(spec.step)
    vertices = [w[0] for w in kernel.language(spec, 1)]
    edges = [(a, b, b) for a, b in kernel.language(spec, 2)]
    return LabeledGraph(vertices, edges, side=spec.side,
                        vertex_labels={v: v for v in vertices})


def _essential_vertices(graph):
    alive = set(graph.vertices)
    while True:
        if graph.side == ONE_SIDED:
            dead = {v for v in alive
                    if not any(t in alive for _, t, _ in graph.out_edges(v))}
        else:
            dead = {v for v in alive
                    if not any(t in alive for _, t, _ in graph.out_edges(v))
                    or not any(s in alive for s, _, _ in graph.in_edges(v))}
        if not dead:
            return alive
        alive -= dead


def _label_sort_key(word):
    return tuple(kernel.format_symbol(l) for l in word)


def graph_language(graph, n):
    """The ``n``-words the graph presents.

    Two-sided: label sequences of ``n``-edge paths whose endpoints extend
    to infinite paths both ways.  One-sided on a graph with vertex
    emission labels: the start vertex's emission followed by ``n - 1``
    edge labels along forward-extendable paths (occurrence at position 0
    needs no incoming edge); without emission labels, plain forward
    edge-label paths.
    """
    if n < 1:
        raise ValueError("n must be positive")
    alive = _essential_vertices(graph)
    if graph.side == ONE_SIDED and graph.vertex_labels is not None:
        frontier = {((graph.vertex_labels[v],), v) for v in alive}
        steps = n - 1
    else:
        frontier = {((), v) for v in alive}
        steps = n
    for _ in range(steps):
        nxt = set()
        for labels, v in frontier:
            for _, t, l in graph.out_edges(v):
                if t in alive:
                    nxt.add((labels + (l,), t))
        frontier = nxt
    return tuple(sorted({labels for labels, _ in frontier}, key=_label_sort_key))


def relabel(graph, rule):
    """Replace every edge label ``x`` by ``rule(x)``; vertices and edges
    are unchanged.  ``rule`` may be a mapping or a callable; a label it
    does not cover raises :class:`RuleGap`."""
    if callable(rule):
        apply = rule
    else:
        mapping = dict(rule)

        def apply(label):
            try:
                return mapping[label]
            except KeyError:
                raise RuleGap(label) from None

    edges = [(s, t, apply(l)) for s, t, l in graph.edges]
    return LabeledGraph(graph.vertices, edges, side=graph.side)


@dataclass(frozen=True)
class CardinalityReport:
    """Vertex/edge/image-symbol counts with a bounded-or-growing probe.

    ``probe`` maps each count to its value at the base truncation K and
    at 2K together with the resulting class; it is None for explicit
    alphabets, where every count is bounded outright.
    """
    vertices: int
    edges: int
    image_w1: int
    truncation: int | None = None
    probe: dict | None = None


@dataclass(frozen=True, eq=False)
class Presentation:
    graph: LabeledGraph
    report: CardinalityReport
    recoding: object = field(repr=False)


def present_image(spec, code):
    """Present the image of an SFT under a windowed code.

    Recodes the code to a 1-block code on a Markov shift, presents that
    shift, and relabels every edge through the 1-block rule.  The report
    carries the exact vertex count (the block 1-words), edge count (the
    block 2-words) and image 1-word count, each classified as bounded or
    growing by re-running the construction at twice the truncation.
    """
    ob = one_block_recode(spec, code)
    base = markov_to_graph(ob.gamma)
    psi_rule = ob.psi.rule
    graph = relabel(base, lambda block: psi_rule((block,)))

    def counts(rec, cde):
        return (len(kernel.language(rec.gamma, 1)),
                len(kernel.language(rec.gamma, 2)),
                len(image_language(cde, 1)))

    vertices, edges, image_w1 = counts(ob, code)
    probe = None
    truncation = code.truncation
    if truncation is not None and ob.rebuild is not None:
        ob2 = ob.rebuild(2 * truncation)
        doubled = counts(ob2, ob2.psi)
        names = ("vertices", "edges", "image_w1")
        probe = {
            name: {"at": at, "at_doubled": dbl,
                   "class": "growing" if dbl > at else "bounded"}
            for name, at, dbl in zip(names, (vertices, edges, image_w1), doubled)
        }
    report = CardinalityReport(vertices, edges, image_w1, truncation, probe)
    return Presentation(graph, report, ob)


def vertex_sets(graph, word):
    """Initial and terminal vertices of the paths presenting ``word``.

    Returns ``(I, T)``; both are empty when no path is labeled ``word``.
    """
    word = tuple(word)
    can_read = set(graph.vertices)
    for a in reversed(word):
        can_read = {s for s, t, l in graph.edges if l == a and t in can_read}
    initial = frozenset(can_read)
    reached = set(graph.vertices)
    for a in word:
        reached = {t for s, t, l in graph.edges if l == a and s in reached}
    terminal = frozenset(reached)
    if not initial or not terminal:
        return frozenset(), frozenset()
    return initial, terminal


def label_multiplicity(graph):
    """How many edges carry each label."""
    return dict(Counter(l for _, _, l in graph.edges))


@dataclass(frozen=True, eq=False)
class FollowerSetGraph:
    """Follower classes of a finite-alphabet SFT and their graph.

    Classes are computed by refining the partition of states (admissible
    words of length <= step) by their depth-``d`` admissible continuations
    until the partition stabilizes; ``stabilization_depth`` is the depth
    reached and ``class_counts_by_depth`` the class count after each
    round.  For an ``m``-step SFT the class of any word of length >= m is
    the class of its last-``m`` suffix.
    """
    graph: LabeledGraph
    classes: tuple
    class_names: tuple
    stabilization_depth: int
    class_counts_by_depth: tuple
    spec: object = field(repr=False)
    _state_class: dict = field(repr=False)

    def class_of(self, word):
        """Name of the follower class of an admissible word."""
        word = tuple(word)
        m = self.spec.step
        state = word if len(word) <= m else word[len(word) - m:]
        try:
            return self._state_class[state]
        except KeyError:
            raise ValueError(f"{format_word(word)} is not in the language") from None


def follower_set_graph(spec, depth):
    """Follower-set graph of a finite-alphabet SFT.

    Vertices are follower classes, named ``C(w)`` after their least
    member; there is an edge ``C(w) -a-> C(wa)`` for each admissible
    one-letter extension.  ``depth`` caps the refinement rounds; the
    partition of an ``m``-step SFT always stabilizes, and the result
    records at which depth it did.
    """
    if spec.alphabet.is_indexed:
        raise InfiniteAlphabetUnsupported(
            "follower-set graphs are computed for explicit finite alphabets only")
    if depth < 1:
        raise ValueError("depth must be positive")
    m = spec.step
    lang = {k: frozenset(kernel.language(spec, k)) for k in range(1, m + 2)}
    if m == 0:
        states = [()]
    else:
        states = [w for k in range(1, m + 1) for w in sorted(lang[k])]
    symbols = spec.alphabet.symbols()

    def successor(state, a):
        w = state + (a,)
        if len(w) <= m:
            return w if w in lang[len(w)] else None
        if w not in lang[m + 1]:
            return None
        return w[1:]

    delta = {(s, a): successor(s, a) for s in states for a in symbols}

    # Refine the one-class partition by depth-d continuation signatures;
    # the partition after round d groups states with equal depth-d
    # follower sets.  Numbering by first occurrence keeps it canonical.
    block = {s: 0 for s in states}
    counts = []
    stabilization = depth
    for d in range(1, depth + 1):
        order = {}
        new_block = {}
        for s in states:
            sig = tuple(None if delta[(s, a)] is None else block[delta[(s, a)]]
                        for a in symbols)
            if sig not in order:
                order[sig] = len(order)
            new_block[s] = order[sig]
        if new_block == block:
            stabilization = d - 1
            break
        counts.append(len(order))
        block = new_block

    key = lambda w: kernel.word_key(spec.alphabet, w)
    members = {}
    for s in states:
        members.setdefault(block[s], []).append(s)
    classes = []
    for b, ss in members.items():
        classes.append(tuple(sorted(ss, key=key)))
    classes.sort(key=lambda ss: (len(ss[0]), key(ss[0])))
    name_of_block = {}
    names = []
    for ss in classes:
        name = f"C({format_word(ss[0])})"
        names.append(name)
        name_of_block[block[ss[0]]] = name
    state_class = {s: name_of_block[block[s]] for s in states}

    edges = set()
    for s in states:
        for a in symbols:
            t = delta[(s, a)]
            if t is not None:
                edges.add((state_class[s], state_class[t], a))
    edge_key = lambda e: (e[0], e[1], kernel.format_symbol(e[2]))
    graph = LabeledGraph(names, sorted(edges, key=edge_key), side=spec.side)
    return FollowerSetGraph(graph, tuple(classes), tuple(names),
                            stabilization, tuple(counts), spec, state_class)


def _dot_name(vertex):
    if isinstance(vertex, tuple):
        return format_word(vertex)
    return str(vertex)


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph):
    """Deterministic dot rendering: one node statement per vertex and one
    edge statement per edge, vertices sorted by name, edges sorted by
    (source, target, label)."""
    nodes = sorted(_dot_name(v) for v in graph.vertices)
    edges = sorted((_dot_name(s), _dot_name(t), kernel.format_symbol(l))
                   for s, t, l in graph.edges)
    lines = ["digraph shift {"]
    for v in nodes:
        lines.append(f"  {_dot_quote(v)};")
    for s, t, l in edges:
        lines.append(f"  {_dot_quote(s)} -> {_dot_quote(t)} [label={_dot_quote(l)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
