"""Command-line interface.

Commands dispatch to the library and print deterministic text; with
``--json PATH`` a machine-readable document ``{command, params, result,
warnings[]}`` is written as well.  Exit status: 0 on success, 1 on domain
errors (empty results, non-Markov inputs, ...), 2 on usage or document
errors.
"""

import argparse
import itertools
import json
import os
import sys
import warnings

from . import kernel, nested, svl
from .codes import empirical_order, image_language
from .errors import ParseError, ShiftError, ValidationError
from .kernel import format_word
from .presentations import export_dot, follower_set_graph, markov_to_graph, present_image
from .recoding import higher_block, one_block_recode
from .specdoc import build, builtin_document, parse_spec

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _load(reference, kind):
    if os.path.exists(reference):
        with open(reference, encoding="utf-8") as handle:
            doc = parse_spec(handle.read())
        if doc.kind != kind:
            raise ValidationError("kind", f"expected a {kind} document, got {doc.kind}")
    else:
        doc = builtin_document(reference, kind)
    return build(doc)


def _word_json(word):
    return [list(s) if isinstance(s, tuple) else s for s in word]


def _point_json(point):
    return {
        "left_period": None if point.left_period is None else _word_json(point.left_period),
        "core": _word_json(point.core),
        "right_period": _word_json(point.right_period),
        "anchor": point.anchor,
    }


def _graph_json(graph):
    return {
        "vertices": [_word_json(v) if isinstance(v, tuple) else v for v in graph.vertices],
        "edges": [{"src": _word_json(s) if isinstance(s, tuple) else s,
                   "tgt": _word_json(t) if isinstance(t, tuple) else t,
                   "label": _word_json(l) if isinstance(l, tuple) else l}
                  for s, t, l in graph.edges],
    }


def _cmd_lang(args, out):
    spec = _load(args.spec, "shift")
    words = kernel.language(spec, args.n)
    for w in words:
        print(format_word(w), file=out)
    return EXIT_OK, {"n": args.n, "truncation": spec.alphabet.truncation,
                     "words": [_word_json(w) for w in words]}


def _cmd_empty(args, out):
    spec = _load(args.spec, "shift")
    empty = kernel.is_empty(spec)
    print("EMPTY" if empty else "NONEMPTY", file=out)
    result = {"empty": empty, "truncation": spec.alphabet.truncation}
    return (EXIT_DOMAIN if empty else EXIT_OK), result


def _cmd_higher_block(args, out):
    spec = _load(args.spec, "shift")
    system = higher_block(spec, args.N)
    transitions = kernel.language(system.recoded, 2)
    print(f"N={args.N} step={system.recoded.step} blocks={len(system.blocks)}", file=out)
    for block in system.blocks:
        print(format_word(block), file=out)
    for u, v in transitions:
        print(f"{format_word(u)} -> {format_word(v)}", file=out)
    return EXIT_OK, {
        "N": args.N,
        "step": system.recoded.step,
        "blocks": [_word_json(b) for b in system.blocks],
        "transitions": [[_word_json(u), _word_json(v)] for u, v in transitions],
    }


def _cmd_recode_1block(args, out):
    code = _load(args.spec, "code")
    ob = one_block_recode(code.source, code)
    order, grows = empirical_order(ob.psi)
    w1 = len(kernel.language(ob.gamma, 1))
    w2 = len(kernel.language(ob.gamma, 2))
    image_w1 = len(image_language(code, 1))
    print(f"n={ob.n} N={ob.N} gamma_w1={w1} gamma_w2={w2} image_w1={image_w1} "
          f"psi_order={order}{' (growing)' if grows else ''}", file=out)
    return EXIT_OK, {"n": ob.n, "N": ob.N, "gamma_w1": w1, "gamma_w2": w2,
                     "image_w1": image_w1, "psi_order": order, "psi_order_grows": grows}


def _cmd_present(args, out):
    code = _load(args.spec, "code")
    pres = present_image(code.source, code)
    rep = pres.report
    print(f"vertices={rep.vertices} edges={rep.edges} image_w1={rep.image_w1}", file=out)
    if rep.probe:
        for name, info in rep.probe.items():
            print(f"{name}: {info['class']} ({info['at']} at K, "
                  f"{info['at_doubled']} at 2K)", file=out)
    result = _graph_json(pres.graph)
    result["report"] = {
        "vertices": rep.vertices, "edges": rep.edges, "image_w1": rep.image_w1,
        "truncation": rep.truncation, "probe": rep.probe,
    }
    return EXIT_OK, result


def _cmd_follower_graph(args, out):
    spec = _load(args.spec, "shift")
    res = follower_set_graph(spec, args.depth)
    print(f"classes={len(res.classes)} stabilized_at_depth={res.stabilization_depth}",
          file=out)
    for name, members in zip(res.class_names, res.classes):
        shown = " ".join(format_word(w) for w in members[:8])
        more = "" if len(members) <= 8 else f" (+{len(members) - 8} more)"
        print(f"{name}: {shown}{more}", file=out)
    return EXIT_OK, {
        "classes": len(res.classes),
        "class_names": list(res.class_names),
        "stabilization_depth": res.stabilization_depth,
        "class_counts_by_depth": list(res.class_counts_by_depth),
        "graph": _graph_json(res.graph),
    }


def _cmd_intersect(args, out):
    shift, family = _load(args.family, "family")
    L = args.L if args.L is not None else len(family.entries)
    witness = nested.intersect_prefix(shift, family, L)
    if witness is None:
        print("EMPTY", file=out)
        return EXIT_DOMAIN, {"empty": True}
    print(repr(witness.point), file=out)
    return EXIT_OK, {
        "empty": False,
        "point": _point_json(witness.point),
        "assignment": {str(c): witness.assignment[c] for c in sorted(witness.assignment)},
    }


def _cmd_demo_svl(args, out):
    K = args.K
    cap = svl.context_cap(K)
    notice = None
    if args.L > cap:
        notice = (f"rows with L > {cap} use context source values 2j-1 beyond "
                  f"the truncation {K}; counts stay exact, window evaluation "
                  f"needs a larger truncation")
        print(f"note: {notice}", file=out)
    w1 = 1 + K * K
    print(f"{'L':>3} {'contexts':>10} {'distinct':>10} {'presentation_w1':>16}", file=out)
    rows = []
    for ell in range(1, args.L + 1):
        count = svl.separation_count(K, ell)
        rows.append({"L": ell, "contexts": K ** ell, "distinct": count,
                     "presentation_w1": w1, "within_cap": ell <= cap})
        print(f"{ell:>3} {K ** ell:>10} {count:>10} {w1:>16}", file=out)
        if args.dump:
            for context in itertools.product(range(K), repeat=ell):
                print(f"  {format_word(context)} -> "
                      f"{format_word(svl.forced_continuation(context))}", file=out)
    result = {"K": K, "cap": cap, "rows": rows}
    if notice:
        result["cap_notice"] = notice
    return EXIT_OK, result


def _cmd_demo_counterexample(args, out):
    K = args.K
    top = min(args.L, K - 1) if args.L is not None else K - 1
    print(f"{'L':>3} {'min_first_gap':>14}", file=out)
    rows = []
    for L in range(1, top + 1):
        gap = nested.min_first_gap(K, L)
        rows.append({"L": L, "min_first_gap": gap})
        print(f"{L:>3} {gap:>14}", file=out)
    ce = nested.counterexample_sft(K)
    empty_at_K = ce.prefix_witness(K) is None
    print(f"L={K}: {'EMPTY' if empty_at_K else 'NONEMPTY'} at truncation {K}", file=out)
    return EXIT_OK, {"K": K, "rows": rows, "empty_at_L_equal_K": empty_at_K}


def _cmd_export_dot(args, out):
    if os.path.exists(args.spec):
        with open(args.spec, encoding="utf-8") as handle:
            doc = parse_spec(handle.read())
        kind = doc.kind
    else:
        kind = "shift"
        try:
            builtin_document(args.spec, "shift")
        except ValidationError:
            kind = "code"
    obj = _load(args.spec, kind)
    if kind == "code":
        graph = present_image(obj.source, obj).graph
    else:
        graph = markov_to_graph(obj)
    text = export_dot(graph)
    out.write(text)
    return EXIT_OK, {"dot": text}


def _parser():
    parser = argparse.ArgumentParser(
        prog="shiftspaces",
        description="Shift spaces, sliding block codes, recodings, and presentations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, handler, **flags):
        p = sub.add_parser(name)
        for flag, opts in flags.items():
            p.add_argument(f"--{flag}", **opts)
        p.add_argument("--json", dest="json_path", metavar="PATH")
        p.set_defaults(handler=handler)
        return p

    spec_flag = {"required": True, "metavar": "PATH|BUILTIN"}
    cmd("lang", _cmd_lang, spec=spec_flag, n={"type": int, "required": True})
    cmd("empty", _cmd_empty, spec=spec_flag)
    cmd("higher-block", _cmd_higher_block, spec=spec_flag,
        N={"type": int, "required": True})
    cmd("recode-1block", _cmd_recode_1block, spec=spec_flag)
    cmd("present", _cmd_present, spec=spec_flag)
    cmd("follower-graph", _cmd_follower_graph, spec=spec_flag,
        depth={"type": int, "default": 8})
    cmd("intersect", _cmd_intersect, family={"required": True, "metavar": "PATH"},
        L={"type": int})
    p = cmd("demo-svl", _cmd_demo_svl, K={"type": int, "required": True},
            L={"type": int, "required": True})
    p.add_argument("--dump", action="store_true")
    cmd("demo-nested-counterexample", _cmd_demo_counterexample,
        K={"type": int, "required": True}, L={"type": int})
    cmd("export-dot", _cmd_export_dot, spec=spec_flag)
    return parser


def run(argv=None, out=None):
    """Parse arguments, dispatch, and return the exit status."""
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    captured = []
    params = {k: v for k, v in vars(args).items()
              if k not in ("handler", "json_path") and v is not None}
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status, result = args.handler(args, out)
            captured = [str(w.message) for w in caught]
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ShiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.json_path:
        document = {"command": args.command, "params": params,
                    "result": result, "warnings": captured}
        with open(args.json_path, "w", encoding="utf-8") as handle:
            json.dump(document, handle, sort_keys=True, indent=2)
            handle.write("\n")
    for message in captured:
        print(f"warning: {message}", file=sys.stderr)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
