"""Structured specification documents for shifts, codes, partitions and
nested families.

Documents are JSON objects with a ``kind`` (shift, code, partition or
family), a ``version`` tag, and either explicit data or a registered
builtin family name plus parameters.  Predicate-backed objects (infinite
forbidden sets, infinite alphabets) are only expressible through
builtins.
"""

import json
import re
from dataclasses import dataclass

from . import builtins as registry
from .errors import ParseError, ValidationError
from .kernel import Alphabet, ONE_SIDED, TWO_SIDED, ShiftSpec
from .nested import NestedFamily

KINDS = ("shift", "code", "partition", "family")
VERSION = 1


@dataclass(frozen=True)
class SpecDocument:
    kind: str
    version: int
    body: tuple  # canonical sorted (key, json-text) pairs

    @classmethod
    def make(cls, kind, body):
        canon = tuple(sorted((k, json.dumps(v, sort_keys=True)) for k, v in body.items()))
        return cls(kind, VERSION, canon)

    def fields(self):
        return {k: json.loads(v) for k, v in self.body}


def parse_spec(text):
    """Parse and validate a document; diagnostics carry a location."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(raw, dict):
        raise ParseError("top level", "expected a JSON object")
    kind = raw.pop("kind", None)
    if kind not in KINDS:
        raise ValidationError("kind", f"must be one of {', '.join(KINDS)}")
    version = raw.pop("version", VERSION)
    if version != VERSION:
        raise ValidationError("version", f"unsupported version {version!r}")
    doc = SpecDocument.make(kind, raw)
    build(doc)  # validate eagerly
    return doc


def serialize(doc):
    data = {"kind": doc.kind, "version": doc.version}
    data.update(doc.fields())
    return json.dumps(data, sort_keys=True)


def _atom(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValidationError(field, f"symbols must be integers or strings, got {value!r}")
    return value


def _side(fields):
    side = fields.get("side", TWO_SIDED)
    if side not in (ONE_SIDED, TWO_SIDED):
        raise ValidationError("side", f"unknown side {side!r}")
    return side


def _build_shift(fields):
    if "builtin" in fields:
        if set(fields) - {"builtin", "params"}:
            raise ValidationError("builtin", "builtin documents carry only builtin + params")
        return _builtin_shift(fields["builtin"], fields.get("params", {}))
    for required in ("alphabet", "step"):
        if required not in fields:
            raise ValidationError(required, "missing field")
    symbols = tuple(_atom(s, "alphabet") for s in fields["alphabet"])
    side = _side(fields)
    step = fields["step"]
    if not isinstance(step, int) or step < 0:
        raise ValidationError("step", "step must be a nonnegative integer")
    forbidden = []
    for w in fields.get("forbidden", ()):
        word = tuple(_atom(s, "forbidden") for s in w)
        if not word or len(word) > step + 1:
            raise ValidationError(
                "forbidden", f"forbidden words must have length 1..{step + 1}")
        for s in word:
            if s not in symbols:
                raise ValidationError("forbidden", f"symbol {s!r} is not in the alphabet")
        forbidden.append(word)
    forbidden = tuple(forbidden)

    def allowed(block):
        return not any(
            block[i:i + len(f)] == f
            for f in forbidden
            for i in range(len(block) - len(f) + 1))

    body = {"alphabet": list(symbols), "side": side, "step": step,
            "forbidden": [list(w) for w in forbidden]}
    return ShiftSpec(Alphabet.explicit(symbols), side, step, allowed,
                     origin=("document", tuple(sorted(body)), step))


def _builtin_shift(name, params):
    if name not in registry.SHIFT_BUILTINS:
        raise ValidationError("builtin", f"unknown shift builtin {name!r}")
    if name == "golden-mean":
        return registry.golden_mean(params.get("side", TWO_SIDED))
    if "K" not in params:
        raise ValidationError("params", f"builtin {name!r} needs parameter K")
    if name == "full":
        return registry.full_shift(params["K"], params.get("side", TWO_SIDED))
    return registry.SHIFT_BUILTINS[name](params["K"])


def _build_code(fields):
    if "builtin" in fields:
        name = fields["builtin"]
        params = fields.get("params", {})
        if name not in registry.CODE_BUILTINS:
            raise ValidationError("builtin", f"unknown code builtin {name!r}")
        if name == "projection":
            if "K" not in params:
                raise ValidationError("params", "projection needs parameter K")
            return registry.projection_code(params["K"])
        source = None
        if "source" in params:
            source = _build_shift(params["source"])
        return registry.CODE_BUILTINS[name](source)
    for required in ("source", "target_alphabet", "memory", "anticipation", "table"):
        if required not in fields:
            raise ValidationError(required, "missing field")
    source = _build_shift(fields["source"])
    target = Alphabet.explicit(tuple(_atom(s, "target_alphabet")
                                     for s in fields["target_alphabet"]))
    memory, anticipation = fields["memory"], fields["anticipation"]
    table = {}
    for window, image in fields["table"]:
        key = tuple(_atom(s, "table") for s in window)
        if len(key) != memory + anticipation + 1:
            raise ValidationError("table", f"window {key!r} has the wrong length")
        table[key] = _atom(image, "table")
    from .codes import LocalRule, SlidingBlockCode
    rule = LocalRule(memory, anticipation, table=table)
    return SlidingBlockCode(source, target, rule)


def _build_partition(fields):
    if "builtin" not in fields:
        raise ValidationError("builtin", "partitions are builtin-only")
    name = fields["builtin"]
    params = fields.get("params", {})
    if name not in registry.PARTITION_BUILTINS:
        raise ValidationError("builtin", f"unknown partition builtin {name!r}")
    if name == "svl":
        if "K" not in params:
            raise ValidationError("params", "svl needs parameter K")
        return registry.PARTITION_BUILTINS[name](params["K"])
    return registry.PARTITION_BUILTINS[name]()


def _build_family(fields):
    if "shift" not in fields or "entries" not in fields:
        raise ValidationError("family", "families need a shift and entries")
    shift = _build_shift(fields["shift"])
    entries = []
    for item in fields["entries"]:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
            raise ValidationError("entries", f"expected [coordinate, symbol], got {item!r}")
        entries.append((item[0], _atom(item[1], "entries")))
    return shift, NestedFamily(tuple(entries))


def build(doc):
    """Construct the library object a document describes."""
    fields = doc.fields()
    if doc.kind == "shift":
        return _build_shift(fields)
    if doc.kind == "code":
        return _build_code(fields)
    if doc.kind == "partition":
        return _build_partition(fields)
    return _build_family(fields)


_BUILTIN_RE = re.compile(r"^([a-z-]+)(?:\((.*)\))?$")


def builtin_document(text, kind):
    """Turn a builtin reference string like ``full(4,one-sided)`` into a
    document of the given kind."""
    match = _BUILTIN_RE.match(text.strip())
    if not match:
        raise ValidationError("builtin", f"cannot parse builtin reference {text!r}")
    name, arglist = match.groups()
    known = {"shift": registry.SHIFT_BUILTINS, "code": registry.CODE_BUILTINS,
             "partition": registry.PARTITION_BUILTINS}[kind]
    if name not in known:
        raise ValidationError("builtin", f"unknown {kind} builtin {name!r}")
    params = {}
    for arg in (arglist.split(",") if arglist else ()):
        arg = arg.strip()
        if not arg:
            continue
        if arg.isdigit():
            params["K"] = int(arg)
        elif arg in (ONE_SIDED, TWO_SIDED):
            params["side"] = arg
        else:
            raise ValidationError("builtin", f"unrecognized parameter {arg!r}")
    body = {"builtin": name}
    if params:
        body["params"] = params
    doc = SpecDocument.make(kind, body)
    build(doc)
    return doc
