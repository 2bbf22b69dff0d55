"""Command-line front end.

Input is one JSON document per file; output is one JSON document on
stdout with sorted keys. Exit codes: 0 yes/valid, 1 no/refuted,
2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import intpart, semigrp, simdec
from .errors import CapExceededError, CombsimError, InvalidPseudometricError
from .mapkit import SymMapping, coherence_point, fibers, is_coherent
from .pmetric import (
    Pseudometric,
    check_pseudometric,
    is_discrete,
    is_metric,
    is_ptolemaic,
    is_strongly_rigid,
    metric_identification,
    to_fraction,
)
from .relcore import BinaryRelation, Partition, rect_tensor, sym_tensor_s1
from .verdict import Verdict

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


# documents


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError(f"{path}: expected an object with a 'kind' field")
    return doc


def _square(doc: dict, key: str) -> list:
    rows = doc.get(key)
    n = doc.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(rows, list) or not isinstance(n, int) or len(rows) != n:
        raise InputError(f"'{key}' must be a list of n rows")
    if any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"every row of '{key}' must have n entries")
    return rows


def _symbol(v):
    if isinstance(v, (list, dict)) or isinstance(v, float):
        raise InputError(f"symbols must be strings, integers or booleans, got {v!r}")
    return v


def parse_mapping(doc: dict) -> SymMapping:
    kind = doc["kind"]
    if kind == "mapping":
        return SymMapping.from_table([[_symbol(v) for v in row] for row in _square(doc, "table")])
    if kind == "pseudometric":
        return parse_pseudometric(doc).as_mapping()
    raise InputError(f"expected a mapping or pseudometric document, got kind {kind!r}")


def _rationals(doc: dict) -> list[list[Fraction]]:
    rows = _square(doc, "dist")
    try:
        return [[to_fraction(v) for v in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad distance entry: {exc}") from None


def parse_pseudometric(doc: dict) -> Pseudometric:
    if doc["kind"] != "pseudometric":
        raise InputError(f"expected a pseudometric document, got kind {doc['kind']!r}")
    rows = _rationals(doc)
    try:
        return Pseudometric(len(rows), tuple(tuple(r) for r in rows))
    except InvalidPseudometricError as exc:
        raise InputError(str(exc)) from None


def _relation(n: int, pairs) -> BinaryRelation:
    try:
        return BinaryRelation.from_pairs(n, (tuple(p) for p in pairs))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad relation: {exc}") from None


def parse_partition(doc: dict) -> Partition:
    try:
        return Partition.from_blocks(doc["n"], doc["blocks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad partition: {exc}") from None


def parse_semigroup(doc: dict) -> semigrp.FiniteSemigroup:
    table = doc.get("cayley")
    if not isinstance(table, list) or ("order" in doc and doc["order"] != len(table)):
        raise InputError("'cayley' must be a list of 'order' rows")
    return semigrp.FiniteSemigroup(table, labels=doc.get("labels"))


def generators_of(doc: dict, tensor: str = "rect") -> list[BinaryRelation]:
    """Generating relations described by a document."""
    kind = doc["kind"]
    if kind in ("mapping", "pseudometric"):
        return list(fibers(parse_mapping(doc)).values())
    if kind == "relation":
        n = doc.get("n")
        if not isinstance(n, int):
            raise InputError("relation documents need an integer 'n'")
        if "relations" in doc:
            return [_relation(n, rel) for rel in doc["relations"]]
        return [_relation(n, doc.get("pairs", []))]
    if kind == "partition":
        p = parse_partition(doc)
        q = rect_tensor(p) if tensor == "rect" else sym_tensor_s1(p)
        return list(q.blocks)
    raise InputError(f"kind {kind!r} does not describe generators")


# output


def to_json(obj: Any):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, BinaryRelation):
        return [list(p) for p in obj]
    if isinstance(obj, Pseudometric):
        return pseudometric_document(obj)
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: to_json(v) for k, v in obj.items()}
        return [[to_json(k), to_json(v)] for k, v in obj.items()]
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def pseudometric_document(d: Pseudometric) -> dict:
    return {"kind": "pseudometric", "n": d.n, "dist": [[str(v) for v in row] for row in d.dist]}


def semigroup_document(s: semigrp.FiniteSemigroup) -> dict:
    doc = {"kind": "semigroup", "order": s.order, "cayley": s.cayley.tolist()}
    if s.labels is not None:
        doc["labels"] = to_json(list(s.labels))
    return doc


def _reason_text(reason) -> Any:
    if isinstance(reason, str):
        return reason.replace("-", " ")
    return to_json(reason)


def result(verdict: bool, **fields) -> tuple[int, dict]:
    out = {"verdict": "yes" if verdict else "no"}
    out.update({k: v for k, v in fields.items() if v is not None})
    return (EXIT_YES if verdict else EXIT_NO), out


def from_verdict(v: Verdict, witness=None, **fields) -> tuple[int, dict]:
    if v:
        return result(True, witness=to_json(witness if witness is not None else v.witness), **fields)
    return result(False, refutation=_reason_text(v.reason), witness=to_json(v.witness), **fields)


# commands


def _resolve_symbol(phi: SymMapping, raw: str):
    for a in phi.alphabet:
        if a == raw or str(a) == raw:
            return a
    try:
        q = to_fraction(raw)
    except (TypeError, ValueError):
        q = None
    for a in phi.alphabet:
        if q is not None and not isinstance(a, (str, bool)) and a == q:
            return a
    raise InputError(f"symbol {raw!r} is not in the image of the mapping")


def cmd_check_coherence(args) -> tuple[int, dict]:
    phi = parse_mapping(load_document(args.file))
    stats = {"n": phi.n, "alphabet_size": len(phi.alphabet)}
    if args.symbol is not None:
        a0 = _resolve_symbol(phi, args.symbol)
        return from_verdict(is_coherent(phi, a0), symbol=to_json(a0), stats=stats)
    a0 = coherence_point(phi)
    if a0 is None:
        return result(False, refutation="no coherence point", stats=stats)
    return result(True, symbol=to_json(a0), stats=stats)


def cmd_check_pseudometric(args) -> tuple[int, dict]:
    doc = load_document(args.file)
    if doc["kind"] != "pseudometric":
        raise InputError(f"expected a pseudometric document, got kind {doc['kind']!r}")
    rows = _rationals(doc)
    valid = check_pseudometric(rows)
    if not valid:
        return from_verdict(valid, summary="not a pseudometric")
    d = Pseudometric(len(rows), tuple(tuple(r) for r in rows))
    props = {
        "metric": is_metric(d),
        "discrete": is_discrete(d),
        "ptolemaic": bool(is_ptolemaic(d)),
        "strongly_rigid": bool(is_strongly_rigid(d)),
    }
    parts = ["valid pseudometric"]
    if props["metric"]:
        parts.append("metric")
    if props["discrete"]:
        parts.append("discrete")
    parts.append("Ptolemaic" if props["ptolemaic"] else "not Ptolemaic")
    parts.append("strongly rigid" if props["strongly_rigid"] else "not strongly rigid")
    return result(True, summary="; ".join(parts), properties=props, stats={"n": d.n})


DECIDERS = {
    "pseudometric-similar": lambda phi: simdec.pseudometric_similar(phi),
    "metric-similar": lambda phi: simdec.metric_similar(phi),
    "discrete-similar": lambda phi: simdec.discrete_similar(phi),
    "rigid-similar": lambda phi: simdec.strongly_rigid_similar(phi),
}


def cmd_decide(args) -> tuple[int, dict]:
    if args.question == "similar":
        if len(args.files) != 2:
            raise InputError("'decide similar' takes two files")
        phi, psi = (parse_mapping(load_document(f)) for f in args.files)
        v = simdec.decide_comb_similar(phi, psi, max_nodes=args.max_nodes)
        stats = {"n": phi.n, "alphabet_size": len(phi.alphabet)}
        if v:
            w = v.witness
            return result(True, witness={"g": list(w.g), "f": to_json(w.f)}, stats=stats)
        return from_verdict(v, stats=stats)
    if len(args.files) != 1:
        raise InputError(f"'decide {args.question}' takes one file")
    phi = parse_mapping(load_document(args.files[0]))
    v = DECIDERS[args.question](phi)
    stats = {"n": phi.n, "alphabet_size": len(phi.alphabet)}
    if v:
        w = v.witness
        return result(
            True,
            **{"class": w.cls},
            witness=pseudometric_document(w.d),
            values=to_json(w.f),
            stats=stats,
        )
    return from_verdict(v, stats=stats)


def _semigroup_input(args) -> tuple[semigrp.FiniteSemigroup, dict]:
    doc = load_document(args.file)
    if doc["kind"] == "semigroup":
        s = parse_semigroup(doc)
        return s, {"order": s.order}
    gens = generators_of(doc, args.tensor)
    sg = semigrp.generate(gens, max_elements=args.max_elements)
    return sg.to_finite(), {"order": len(sg), "generators": len(sg.generators), "n": sg.n}


def cmd_semigroup(args) -> tuple[int, dict]:
    s, stats = _semigroup_input(args)
    if args.action == "generate":
        rep = semigrp.structure(s)
        return result(
            True,
            semigroup=semigroup_document(s),
            identity=rep.identity,
            zero=rep.zero,
            idempotents=list(rep.idempotents),
            stats=stats,
        )
    if args.action == "classify":
        cls = semigrp.classify_discrete(s)
        return result(cls != "other", **{"class": cls}, stats=stats)
    if args.action == "h1":
        v = semigrp.h1_check(s)
        if not v:
            return result(False, refutation={"condition": v.reason}, witness=to_json(v.witness), stats=stats)
        rec = semigrp.h1_reconstruct(s)
        ground = rec.partition.n
        return result(True, witness={"ground_size": ground, "mapping": list(rec.mapping)}, stats=stats)
    if args.action == "rigid-structure":
        rep = semigrp.rigid_structure_check(s)
        conds = {k: {"ok": bool(v), "detail": _reason_text(v.reason) if not v else to_json(v.witness)}
                 for k, v in rep.conditions.items()}
        band = {"core": list(rep.band.core), "groups": to_json(rep.band.groups)}
        return result(rep.ok, conditions=conds, band=band, stats={**stats, "omega": rep.omega})
    raise AssertionError(args.action)


def cmd_quotient(args) -> tuple[int, dict]:
    d = parse_pseudometric(load_document(args.file))
    mi = metric_identification(d)
    iso = semigrp.quotient_iso(d, max_elements=args.max_elements)
    return result(
        True,
        quotient=pseudometric_document(mi.quotient_metric),
        classes=[list(b) for b in mi.quotient_partition.blocks],
        witness={"projection": list(mi.projection), "semigroup_map": list(iso.mapping)},
        stats={"n": d.n, "classes": len(mi.quotient_partition), "semigroup_order": len(iso.mapping)},
    )


def cmd_count(args) -> tuple[int, Any]:
    if args.n < 1 and args.what == "discrete-classes":
        raise InputError("n must be positive")
    if args.n < 0:
        raise InputError("n must be nonnegative")
    if args.what == "partitions":
        return EXIT_YES, intpart.partition_count(args.n)
    return EXIT_YES, intpart.discrete_classes_count(args.n)


def cmd_hr_ratio(args) -> tuple[int, dict]:
    if args.n < 1:
        raise InputError("n must be positive")
    return EXIT_YES, {"n": args.n, "p": intpart.partition_count(args.n), "ratio": intpart.hr_ratio(args.n)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="combsim", description=__doc__.splitlines()[0])
    parser.add_argument("--max-elements", type=int, default=semigrp.DEFAULT_MAX_ELEMENTS)
    parser.add_argument("--max-nodes", type=int, default=simdec.DEFAULT_MAX_NODES)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check").add_subparsers(dest="what", required=True)
    coh = check.add_parser("coherence")
    coh.add_argument("file")
    coh.add_argument("--symbol")
    coh.set_defaults(func=cmd_check_coherence)
    pm = check.add_parser("pseudometric")
    pm.add_argument("file")
    pm.set_defaults(func=cmd_check_pseudometric)

    decide = sub.add_parser("decide")
    decide.add_argument("question", choices=[*DECIDERS, "similar"])
    decide.add_argument("files", nargs="+")
    decide.set_defaults(func=cmd_decide)

    sg = sub.add_parser("semigroup")
    sg.add_argument("action", choices=["generate", "classify", "h1", "rigid-structure"])
    sg.add_argument("file")
    sg.add_argument("--tensor", choices=["rect", "sym"], default="rect",
                    help="square partition built from a partition document")
    sg.set_defaults(func=cmd_semigroup)

    q = sub.add_parser("quotient")
    q.add_argument("file")
    q.set_defaults(func=cmd_quotient)

    count = sub.add_parser("count")
    count.add_argument("what", choices=["discrete-classes", "partitions"])
    count.add_argument("n", type=int)
    count.set_defaults(func=cmd_count)

    hr = sub.add_parser("hr-ratio")
    hr.add_argument("n", type=int)
    hr.set_defaults(func=cmd_hr_ratio)
    return parser


def emit(payload, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload = args.func(args)
    except CapExceededError as exc:
        print(f"combsim: {exc}", file=sys.stderr)
        emit({"verdict": "undecided", "refutation": str(exc)})
        return EXIT_CAP
    except (InputError, CombsimError, ValueError, TypeError, KeyError) as exc:
        msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"combsim: {msg}", file=sys.stderr)
        emit({"verdict": "error", "refutation": msg})
        return EXIT_INPUT
    emit(payload)
    return code


def main() -> None:
    sys.exit(run())
