"""Command-line front end: JSON document formats, subcommands, reports.

Documents are JSON (schema version field "v": 1) with all exact rationals as
"p/q" strings.  Reports are line-oriented ``key = value`` pairs on stdout;
artifacts (relation documents, trace files) go to files named by flags.

Exit codes: 0 ok (including a "rigid" flex verdict), 1 check-trace FAIL,
2 non-cycle input, 3 missing embedding, 4 unrecoverable degeneracy or
exhausted budget, 5 unsupported dimension, 6 unknown zoo name.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import flex as flexmod
from .chains import Chain, boundary, is_cycle, support
from .geometry import Embedding, edge_lengths, generalized_volume, pair, winding_volume
from .polyalg import VarRegistry
from .sabitov import (
    BudgetExceededError,
    DegeneracyError,
    Multiplier,
    SabitovRelation,
    UnsupportedDimensionError,
    sabitov_relation,
    verify_root,
)

EXIT_OK = 0
EXIT_CHECK_FAIL = 1
EXIT_NOT_A_CYCLE = 2
EXIT_NO_EMBEDDING = 3
EXIT_DEGENERACY = 4
EXIT_UNSUPPORTED_DIM = 5
EXIT_UNKNOWN_ZOO = 6


class DocumentError(Exception):
    pass


# -- rationals and scalars ------------------------------------------------------


def parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise DocumentError(f"exact rational expected as string, got {s!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_coord(s, field):
    if field == "exact":
        return parse_rational(s)
    if field == "float":
        return float(s)
    if field == "complex":
        return complex(str(s).replace(" ", ""))
    raise DocumentError(f"unknown field tag {field!r}")


def _format_coord(x, field):
    if field == "exact":
        return format_rational(x)
    if field == "float":
        return repr(float(x))
    return repr(complex(x)).strip("()")


# -- cycle documents ------------------------------------------------------------


def emit_cycle_document(Z: Chain, n: int, embedding: Embedding | None = None, lengths=None) -> dict:
    doc = {
        "v": 1,
        "n": n,
        "terms": [[c, list(vs)] for vs, c in sorted(Z.terms.items())],
    }
    if embedding is not None:
        doc["field"] = embedding.field
        doc["embedding"] = {
            str(v): [_format_coord(x, embedding.field) for x in xyz]
            for v, xyz in sorted(embedding.coords.items())
        }
    if lengths:
        doc["lengths"] = {
            f"{u}-{v}": format_rational(val) for (u, v), val in sorted(lengths.items())
        }
    return doc


def parse_cycle_document(doc: dict):
    """Returns (chain, n, embedding or None, lengths or None)."""
    if doc.get("v") != 1:
        raise DocumentError("unsupported document version")
    n = doc["n"]
    terms = [(tuple(vs), int(c)) for c, vs in doc["terms"]]
    Z = Chain.from_terms(n - 1, [(vs, c) for vs, c in terms])
    embedding = None
    if "embedding" in doc:
        field = doc.get("field", "exact")
        coords = {
            int(v): tuple(_parse_coord(x, field) for x in xyz)
            for v, xyz in doc["embedding"].items()
        }
        for v, xyz in coords.items():
            if len(xyz) != n:
                raise DocumentError(f"vertex {v} has {len(xyz)} coordinates, not {n}")
        if field == "exact":
            embedding = Embedding.exact(n, coords)
        elif field == "float":
            embedding = Embedding.floats(n, coords)
        else:
            embedding = Embedding.complexes(n, coords)
    lengths = None
    if "lengths" in doc:
        lengths = {}
        for key, val in doc["lengths"].items():
            u, v = key.split("-")
            lengths[pair(int(u), int(v))] = parse_rational(val)
    return Z, n, embedding, lengths


# -- relation documents -----------------------------------------------------------


def relation_to_document(rel: SabitovRelation) -> dict:
    terms = []
    N = rel.degree
    for i, a in enumerate(rel.coefficients):
        vpow = N - i
        for mono, c in a.terms.items():
            entry = {}
            if vpow:
                entry["V"] = vpow
            for idx, e in mono:
                sym = a.reg.by_index(idx)
                entry[sym.name] = e
            terms.append({"coeff": format_rational(c), "monomial": entry})
    terms.sort(key=lambda t: (-t["monomial"].get("V", 0), sorted(t["monomial"].items())))
    mult = {"kind": rel.multiplier.kind}
    if rel.multiplier.edge is not None:
        mult["edge"] = list(rel.multiplier.edge)
    if rel.multiplier.power is not None:
        mult["power"] = rel.multiplier.power
    return {
        "v": 1,
        "variable": "V",
        "n": rel.n,
        "mode": rel.mode,
        "degree": N,
        "terms": terms,
        "multiplier": mult,
        "provenance": rel.provenance,
    }


def parse_relation_document(doc: dict) -> SabitovRelation:
    if doc.get("v") != 1:
        raise DocumentError("unsupported document version")
    reg = VarRegistry()
    V = reg.symbol("V")
    N = doc["degree"]
    coeff_polys = [reg.zero() for _ in range(N + 1)]
    for term in doc["terms"]:
        c = parse_rational(term["coeff"])
        vpow = 0
        mono = reg.one()
        for name, e in sorted(term["monomial"].items()):
            if name == "V":
                vpow = e
                continue
            kind, a, b = name.split("_")
            mono = mono * reg.var(kind, (int(a), int(b))) ** e
        coeff_polys[N - vpow] = coeff_polys[N - vpow] + c * mono
    m = doc["multiplier"]
    mult = Multiplier(
        m["kind"],
        tuple(m["edge"]) if "edge" in m else None,
        m.get("power"),
    )
    return SabitovRelation(
        variable=V,
        coefficients=coeff_polys,
        multiplier=mult,
        n=doc["n"],
        mode=doc["mode"],
        provenance=doc.get("provenance", {}),
    )


# -- trace documents ---------------------------------------------------------------


def trace_to_document(Z: Chain, n: int, trace: flexmod.FlexTrace, tolerance: float) -> dict:
    steps = []
    for t, E, r, vol in zip(
        trace.parameters, trace.embeddings, trace.residuals, trace.volumes
    ):
        steps.append(
            {
                "t": t,
                "coordinates": {
                    str(v): [float(x) for x in xyz] for v, xyz in sorted(E.coords.items())
                },
                "residual": r,
                "volume": vol,
            }
        )
    return {
        "v": 1,
        "n": n,
        "cycle": [[c, list(vs)] for vs, c in sorted(Z.terms.items())],
        "tolerance": tolerance,
        "status": trace.status,
        "steps": steps,
    }


def parse_trace_document(doc: dict):
    if doc.get("v") != 1:
        raise DocumentError("unsupported document version")
    n = doc["n"]
    Z = Chain.from_terms(n - 1, [(tuple(vs), int(c)) for c, vs in doc["cycle"]])
    steps = []
    for s in doc["steps"]:
        coords = {int(v): tuple(map(float, xyz)) for v, xyz in s["coordinates"].items()}
        steps.append(
            {
                "t": s["t"],
                "embedding": Embedding.floats(n, coords),
                "residual": s["residual"],
                "volume": s["volume"],
            }
        )
    return Z, n, steps, doc.get("tolerance", 1e-10), doc.get("status", "ok")


# -- helpers ------------------------------------------------------------------------


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _report(key, value):
    print(f"{key} = {value}")


def _noncycle_witness(Z: Chain):
    dZ = boundary(Z)
    return min(dZ.terms.keys())


def _float_embedding(P: Embedding) -> Embedding:
    if P.field == "float":
        return P
    return Embedding.floats(P.n, {v: tuple(float(x) for x in xyz) for v, xyz in P.coords.items()})


def _resolve_flex_input(name_or_path, seed):
    if name_or_path in flexmod.ZOO_NAMES:
        entry = flexmod.example_zoo(name_or_path, seed=seed)
        return entry.cycle, entry.n, entry.embedding
    doc = _load_json(name_or_path)
    Z, n, embedding, _ = parse_cycle_document(doc)
    return Z, n, embedding


# -- subcommands ---------------------------------------------------------------------


def cmd_volume(args) -> int:
    doc = _load_json(args.input)
    Z, n, P, _lengths = parse_cycle_document(doc)
    if P is None:
        print("error: document has no embedding", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    if not is_cycle(Z):
        witness = _noncycle_witness(Z)
        print(
            f"error: chain is not a cycle; boundary contains {list(witness)}",
            file=sys.stderr,
        )
        return EXIT_NOT_A_CYCLE
    V = generalized_volume(Z, P)
    if P.field == "exact":
        _report("V", format_rational(V))
    else:
        _report("V", repr(V))
    if args.oracle:
        est, se, skipped = winding_volume(
            Z, _float_embedding(P), args.oracle, seed=args.seed
        )
        _report("oracle", f"{est!r}")
        _report("oracle_stderr", f"{se!r}")
        _report("oracle_skipped", skipped)
        if se > 0:
            _report("oracle_z", f"{(est - float(V)) / se:.3f}")
    return EXIT_OK


def cmd_sabitov(args) -> int:
    doc = _load_json(args.input)
    Z, n, P, lengths = parse_cycle_document(doc)
    if n not in (3, 4):
        print(f"error: unsupported dimension n={n}", file=sys.stderr)
        return EXIT_UNSUPPORTED_DIM
    if not is_cycle(Z):
        witness = _noncycle_witness(Z)
        print(
            f"error: chain is not a cycle; boundary contains {list(witness)}",
            file=sys.stderr,
        )
        return EXIT_NOT_A_CYCLE
    if args.mode == "specialized" and P is None and lengths is None:
        print("error: specialized mode needs lengths or an embedding", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    if args.verify and P is None:
        print("error: --verify needs an embedding", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    verbose = (lambda m: print(m, file=sys.stderr)) if args.verbose else None
    try:
        rel = sabitov_relation(
            Z,
            n,
            mode=args.mode,
            lengths=lengths if P is None else None,
            embedding=P if (args.mode == "specialized" and P is not None) else None,
            verbose=verbose,
            budget=args.budget,
        )
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED_DIM
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for entry in exc.trace[-12:]:
            print(f"trace: {entry}", file=sys.stderr)
        return EXIT_DEGENERACY
    except DegeneracyError as exc:
        print(f"error: unrecoverable degeneracy: {exc}", file=sys.stderr)
        for entry in exc.trace[-12:]:
            print(f"trace: {entry}", file=sys.stderr)
        return EXIT_DEGENERACY
    _report("relation_degree", rel.degree)
    _report("multiplier_kind", rel.multiplier.kind)
    if rel.multiplier.edge is not None:
        _report("multiplier_edge", f"{rel.multiplier.edge[0]}-{rel.multiplier.edge[1]}")
        _report("multiplier_power", rel.multiplier.power)
    _report("elapsed_seconds", rel.provenance.get("elapsed_seconds"))
    if args.out:
        _write_json(args.out, relation_to_document(rel))
        _report("relation_file", args.out)
    if args.verify:
        V = generalized_volume(Z, P)
        lens = edge_lengths(Z, P)
        ok = verify_root(rel, V, lens)
        _report("volume", format_rational(V))
        _report("verify", "PASS" if ok else "FAIL")
        if not ok:
            return EXIT_CHECK_FAIL
    return EXIT_OK


def cmd_flex(args) -> int:
    try:
        Z, n, P = _resolve_flex_input(args.input, args.seed)
    except flexmod.ConstructorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    if P is None:
        print("error: document has no embedding", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    Pf = _float_embedding(P)
    K = support(Z)
    basis = flexmod.flex_space(K, Pf, n)
    _report("flex_dimension", basis.shape[0])
    if basis.shape[0] == 0:
        _report("verdict", "rigid")
        return EXIT_OK
    trace = flexmod.trace_flex(
        Z, Pf, steps=args.steps, step_size=args.step_size, tol=args.tol
    )
    drift, rel_drift = flexmod.bellows_check(Z, trace)
    _report("steps_accepted", len(trace) - 1)
    _report("status", trace.status)
    _report("max_residual", f"{max(trace.residuals):.3e}")
    _report("volume_drift", f"{drift:.3e}")
    _report("volume_drift_relative", f"{rel_drift:.3e}")
    if args.out:
        _write_json(args.out, trace_to_document(Z, n, trace, args.tol))
        _report("trace_file", args.out)
    return EXIT_OK


def cmd_check_trace(args) -> int:
    doc = _load_json(args.input)
    Z, n, steps, tol, status = parse_trace_document(doc)
    if args.tol is not None:
        tol = args.tol
    if not steps:
        print("error: empty trace", file=sys.stderr)
        return EXIT_CHECK_FAIL
    base = steps[0]["embedding"]
    K = support(Z)
    edges = sorted(K.edges)
    from .geometry import squared_length

    l0 = {e: squared_length(base, *e) for e in edges}
    max_resid = 0.0
    volumes = []
    for s in steps:
        E = s["embedding"]
        resid = max(abs(squared_length(E, *e) - l0[e]) for e in edges)
        max_resid = max(max_resid, resid)
        volumes.append(float(generalized_volume(Z, E)))
    v0 = volumes[0]
    drift = max(abs(v - v0) for v in volumes)
    rel_drift = drift / max(1.0, abs(v0))
    _report("recomputed_max_residual", f"{max_resid:.3e}")
    _report("recomputed_volume_drift", f"{drift:.3e}")
    _report("recomputed_volume_drift_relative", f"{rel_drift:.3e}")
    ok = max_resid <= tol and rel_drift <= args.drift_tol
    _report("verdict", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_CHECK_FAIL


def cmd_zoo(args) -> int:
    if args.action == "list":
        for name in (
            "simplex-boundary(n)",
            "double-4-simplex",
            "octahedron",
            "bricard-octahedron",
            "cross-polytope-16cell",
            "flexible-cross-polytope-4d",
        ):
            print(name)
        return EXIT_OK
    name = args.name
    if name is None:
        print("error: zoo emit needs a name", file=sys.stderr)
        return EXIT_UNKNOWN_ZOO
    if name == "simplex-boundary(n)":
        name = "simplex-boundary(4)"
    try:
        entry = flexmod.example_zoo(name, seed=args.seed)
    except KeyError:
        print(f"error: unknown zoo example {name!r}", file=sys.stderr)
        return EXIT_UNKNOWN_ZOO
    except flexmod.ConstructorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    doc = emit_cycle_document(entry.cycle, entry.n, entry.embedding)
    if args.out:
        _write_json(args.out, doc)
        _report("document_file", args.out)
    else:
        json.dump(doc, sys.stdout, indent=1)
        print()
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclevol",
        description="Exact volumes, volume relations and Bellows checks for cycle polyhedra",
    )
    ap.add_argument("--seed", type=int, default=0, help="master seed for randomized operations")
    ap.add_argument("--threads", type=int, default=1, help="worker hint (computations are deterministic)")
    ap.add_argument("--verbose", action="store_true", help="stream pipeline progress to stderr")
    # the same flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="generalized volume of a cycle document", parents=[common])
    p.add_argument("input")
    p.add_argument("--oracle", type=int, default=0, metavar="N", help="Monte-Carlo winding oracle with N samples")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("sabitov", help="compute a volume relation", parents=[common])
    p.add_argument("input")
    p.add_argument("--mode", choices=["symbolic", "specialized"], default="specialized")
    p.add_argument("--verify", action="store_true", help="exact root check against the embedding")
    p.add_argument("--out", help="write the relation document here")
    p.add_argument("--budget", type=float, default=None, help="wall-clock budget in seconds")
    p.set_defaults(func=cmd_sabitov)

    p = sub.add_parser("flex", help="trace an edge-length-preserving deformation", parents=[common])
    p.add_argument("input", help="cycle document path or zoo name")
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--step-size", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--out", help="write the trace file here")
    p.set_defaults(func=cmd_flex)

    p = sub.add_parser("check-trace", help="independently recheck a trace file", parents=[common])
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=None, help="residual tolerance (default: recorded)")
    p.add_argument("--drift-tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_check_trace)

    p = sub.add_parser("zoo", help="built-in example documents", parents=[common])
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--out", help="write the document here")
    p.set_defaults(func=cmd_zoo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DocumentError as exc:
        print(f"error: bad document: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
