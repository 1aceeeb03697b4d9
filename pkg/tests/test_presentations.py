import random

import pytest

from helpers import random_markov_spec
from shiftspaces.builtins import full_shift, golden_mean, identity_code, xor_code
from shiftspaces.codes import image_language
from shiftspaces.errors import EmptyShift, InfiniteAlphabetUnsupported, NotMarkov, RuleGap
from shiftspaces.kernel import (
    Alphabet,
    ONE_SIDED,
    ShiftSpec,
    TWO_SIDED,
    language,
)
from shiftspaces.presentations import (
    LabeledGraph,
    export_dot,
    follower_set_graph,
    graph_language,
    label_multiplicity,
    markov_to_graph,
    present_image,
    relabel,
    vertex_sets,
)


def forbid(words, symbols=(0, 1), side=TWO_SIDED):
    step = max(len(w) for w in words) - 1
    forbidden = frozenset(words)

    def allowed(w):
        return not any(w[i:i + len(f)] == f
                       for f in forbidden for i in range(len(w) - len(f) + 1))

    return ShiftSpec(Alphabet.explicit(symbols), side, step, allowed)


class TestMarkovToGraph:
    def test_golden_mean(self):
        g = markov_to_graph(golden_mean())
        assert g.vertices == (0, 1)
        assert set(g.edges) == {(0, 0, 0), (0, 1, 1), (1, 0, 0)}

    def test_single_self_loop(self):
        single = ShiftSpec(Alphabet.explicit(("a",)), TWO_SIDED, 1, lambda w: True)
        g = markov_to_graph(single)
        assert g.vertices == ("a",)
        assert g.edges == (("a", "a", "a"),)

    def test_not_markov(self):
        spec = forbid([(1, 0, 1)])
        with pytest.raises(NotMarkov):
            markov_to_graph(spec)

    def test_unique_receiving_vertex(self):
        for seed in range(8):
            spec = random_markov_spec(random.Random(seed))
            try:
                g = markov_to_graph(spec)
            except EmptyShift:
                continue
            targets = {}
            for _, tgt, label in g.edges:
                targets.setdefault(label, set()).add(tgt)
            assert all(len(ts) == 1 for ts in targets.values())


class TestGraphLanguage:
    def test_round_trip_with_markov_graph(self):
        gm = golden_mean()
        g = markov_to_graph(gm)
        for n in range(1, 7):
            assert set(graph_language(g, n)) == set(language(gm, n))

    def test_edgeless_graph_empty(self):
        g = LabeledGraph((0, 1), ())
        assert graph_language(g, 1) == ()

    def test_self_loop(self):
        g = LabeledGraph(("v",), (("v", "v", "a"),))
        assert graph_language(g, 4) == (("a", "a", "a", "a"),)

    def test_one_sided_graph_keeps_forward_only_vertices(self):
        spec = ShiftSpec(Alphabet.explicit(("s", "a")), ONE_SIDED, 1,
                         lambda w: w in {("s", "a"), ("a", "a")})
        g = markov_to_graph(spec)
        assert set(graph_language(g, 2)) == set(language(spec, 2))


class TestRelabel:
    def test_identity_relabel(self):
        g = markov_to_graph(golden_mean())
        assert relabel(g, {0: 0, 1: 1}).edges == g.edges

    def test_collapse_to_one_label(self):
        g = markov_to_graph(golden_mean())
        collapsed = relabel(g, {0: "a", 1: "a"})
        assert label_multiplicity(collapsed) == {"a": 3}
        assert graph_language(collapsed, 3) == (("a", "a", "a"),)

    def test_rule_gap(self):
        g = markov_to_graph(golden_mean())
        with pytest.raises(RuleGap):
            relabel(g, {0: "a"})

    def test_functoriality(self):
        g = markov_to_graph(golden_mean())
        psi = {0: "x", 1: "y"}
        relabeled = relabel(g, psi)
        for n in range(1, 6):
            direct = {tuple(psi[a] for a in w) for w in graph_language(g, n)}
            assert direct == set(graph_language(relabeled, n))


class TestPresentImage:
    def test_golden_mean_xor(self):
        gm = golden_mean()
        xor = xor_code(gm)
        pres = present_image(gm, xor)
        assert pres.report.vertices == 5
        assert pres.report.edges == 8
        assert pres.report.image_w1 == 2
        assert len(pres.graph.vertices) == 5
        assert len(pres.graph.edges) == 8
        for n in range(1, 7):
            assert set(graph_language(pres.graph, n)) == set(image_language(xor, n))

    def test_identity_presents_source_language(self):
        gm = golden_mean()
        ident = identity_code(gm)
        pres = present_image(gm, ident)
        for n in range(1, 7):
            assert set(graph_language(pres.graph, n)) == set(language(gm, n))

    def test_full_shift_growth_probe(self):
        full = full_shift(2)
        ident = identity_code(full)
        pres = present_image(full, ident)
        assert pres.report.vertices == 8          # 2**3 blocks
        assert pres.report.edges == 16            # 2**4 block pairs
        assert pres.report.probe["vertices"]["class"] == "growing"
        assert pres.report.probe["edges"]["class"] == "growing"
        assert pres.report.probe["image_w1"]["class"] == "growing"

    def test_explicit_alphabet_has_no_probe(self):
        gm = golden_mean()
        pres = present_image(gm, xor_code(gm))
        assert pres.report.probe is None


class TestVertexSets:
    def test_golden_mean_word(self):
        g = markov_to_graph(golden_mean())
        initial, terminal = vertex_sets(g, (0, 1))
        # both vertices can start reading 01 (edges labeled 0 end at 0);
        # the unique receiving vertex of label 1 terminates it
        assert initial == {0, 1}
        assert terminal == {1}

    def test_unpresented_word(self):
        g = markov_to_graph(golden_mean())
        assert vertex_sets(g, (1, 1)) == (frozenset(), frozenset())

    def test_self_loop(self):
        g = LabeledGraph(("v",), (("v", "v", "a"),))
        assert vertex_sets(g, ("a", "a")) == ({"v"}, {"v"})


class TestLabelMultiplicity:
    def test_golden_mean(self):
        assert label_multiplicity(markov_to_graph(golden_mean())) == {0: 2, 1: 1}

    def test_edgeless(self):
        assert label_multiplicity(LabeledGraph((0,), ())) == {}


class TestFollowerSetGraph:
    def test_golden_mean_two_classes(self):
        res = follower_set_graph(golden_mean(), 8)
        assert res.class_names == ("C(0)", "C(1)")
        labels_out_of_c1 = {l for s, _, l in res.graph.edges if s == "C(1)"}
        assert labels_out_of_c1 == {0}

    def test_full_shift_single_class(self):
        full = ShiftSpec(Alphabet.explicit((0, 1)), TWO_SIDED, 0, lambda w: True)
        res = follower_set_graph(full, 8)
        assert len(res.classes) == 1
        assert len(res.graph.edges) == 2  # two self-loops

    def test_forbid_101_classes(self):
        res = follower_set_graph(forbid([(1, 0, 1)]), 8)
        as_sets = {frozenset(c) for c in res.classes}
        assert as_sets == {
            frozenset({(0,), (0, 0)}),
            frozenset({(1,), (0, 1), (1, 1)}),
            frozenset({(1, 0)}),
        }

    def test_suffix_collapse(self):
        spec = forbid([(1, 0, 1)])
        res = follower_set_graph(spec, 8)
        for n in range(2, 9):
            for w in language(spec, n):
                assert res.class_of(w) == res.class_of(w[-2:])

    def test_terminal_class_unique_for_long_words(self):
        spec = forbid([(1, 0, 1)])
        res = follower_set_graph(spec, 8)
        for n in range(spec.step, 8):
            for w in language(spec, n):
                _, terminal = vertex_sets(res.graph, w)
                assert terminal == {res.class_of(w)}

    def test_even_shift_truncation_stabilizes(self):
        spec = forbid([(1, 0, 1), (1, 0, 0, 0, 1), (1, 0, 0, 0, 0, 0, 1)])
        res = follower_set_graph(spec, 8)
        assert res.stabilization_depth <= 8

    def test_infinite_alphabet_unsupported(self):
        with pytest.raises(InfiniteAlphabetUnsupported):
            follower_set_graph(full_shift(3), 4)

    def test_depth_classes_against_true_continuation_sets(self):
        # depth-4 continuation sets computed directly agree with the classes
        spec = forbid([(1, 0, 1)])
        res = follower_set_graph(spec, 8)
        lang = {n: set(language(spec, n)) for n in range(1, 7)}

        def followers(w, depth=4):
            return frozenset(u for u in lang[depth] if _concat_ok(w, u, lang))

        def _concat_ok(w, u, lang_sets):
            word = w + u
            return word in lang_sets.get(len(word), set()) or \
                word in set(language(spec, len(word)))

        words = [w for n in (1, 2) for w in lang[n]]
        for a in words:
            for b in words:
                same_class = res.class_of(a) == res.class_of(b)
                assert same_class == (followers(a) == followers(b))


class TestExportDot:
    def test_single_vertex(self):
        text = export_dot(LabeledGraph(("v",), ()))
        assert text == 'digraph shift {\n  "v";\n}\n'

    def test_golden_mean_counts(self):
        text = export_dot(markov_to_graph(golden_mean()))
        lines = text.strip().splitlines()
        assert len([l for l in lines if "->" in l]) == 3
        assert len([l for l in lines if l.endswith('";')]) == 2

    def test_relabel_changes_only_labels(self):
        g = markov_to_graph(golden_mean())
        a = export_dot(g)
        b = export_dot(relabel(g, {0: "z", 1: "w"}))
        strip = lambda t: [l.split("[")[0] for l in t.splitlines() if "->" in l]
        assert strip(a) == strip(b)

    def test_deterministic(self):
        g = markov_to_graph(golden_mean())
        assert export_dot(g) == export_dot(markov_to_graph(golden_mean()))
