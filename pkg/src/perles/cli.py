"""Command-line front end.

Exit codes: 0 success (or "property holds"), 1 property fails (violations
found, not a counterexample, checks disagree), 2 usage, 3 unreadable input,
4 input violates a precondition, 5 a construction or pipeline stage failed.
Errors print one line ``error: <category>: <message>`` to stderr.
"""
from __future__ import annotations

import argparse
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .complex import ComplexError, dual_graph, format_cplx, is_closed_pseudomanifold, parse_cplx, write_cplx
from .conjecture import (
    CoreError,
    ModelError,
    check_conjecture,
    check_model,
    check_obstruction,
    compute_core,
    format_model,
    format_report,
    parse_model,
    report_fields,
)
from .counterexample import PipelineError, run_pipeline, verify_certificate
from .generators import (
    CyclicSpec,
    GeneratorError,
    PileSpec,
    cube_model,
    cyclic_facets_gale,
    pile_triangulation,
    polygon_model,
    prism_model,
    product_model,
    segment_model,
    simplex_boundary,
    simplex_model,
    sphere_from_pile,
    stacked_boundary,
    truncate_vertex_model,
    wedge_model,
)
from .graphs import Graph, GraphError, naatz_k_connected, vertex_connectivity
from .homology import homology_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_STAGE = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, category: str, message: str):
        super().__init__(message)
        self.code = code
        self.category = category


def _header(command: str, started: float) -> str:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return f"perles {__version__} {command} at {stamp} elapsed {time.perf_counter() - started:.3f}s"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, "parse", f"cannot read {path}: {exc}") from exc


def _load_complex(path: str):
    try:
        return parse_cplx(_read_text(path))
    except (ComplexError, ValueError) as exc:
        raise CliError(EXIT_PARSE, "parse", f"{path}: {exc}") from exc


def _load_sphere(path: str):
    K = _load_complex(path)
    try:
        ok = is_closed_pseudomanifold(K)
    except ComplexError as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", f"{path}: {exc}") from exc
    if not ok.ok:
        raise CliError(EXIT_PRECONDITION, "precondition", f"{path}: not a closed pseudomanifold (witness {ok.witness})")
    return K


def model_from_name(name: str):
    """``simplex:d``, ``polygon:n``, ``segment``, ``cube:d``, ``prism:n`` or a model file path."""
    kind, _, arg = name.partition(":")
    try:
        if kind == "simplex":
            return simplex_model(int(arg))
        if kind == "polygon":
            return polygon_model(int(arg))
        if kind == "segment":
            return segment_model()
        if kind == "cube":
            return cube_model(int(arg or 3))
        if kind == "prism":
            return prism_model(int(arg))
    except (ValueError, GeneratorError, ModelError) as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", f"bad model {name!r}: {exc}") from exc
    try:
        return parse_model(_read_text(name))
    except ModelError as exc:
        raise CliError(EXIT_PARSE, "parse", f"{name}: {exc}") from exc


# ----------------------------------------------------------------- commands

def cmd_gen(args) -> int:
    try:
        if args.kind == "simplex":
            obj = simplex_boundary(args.d)
        elif args.kind == "cyclic":
            obj = cyclic_facets_gale(CyclicSpec(args.d, args.n))
        elif args.kind == "stacked":
            obj = stacked_boundary(args.d, args.stackings or [])
        elif args.kind == "pile":
            obj = pile_triangulation(PileSpec(*args.extents))
        elif args.kind == "sphere-from-pile":
            obj = sphere_from_pile(PileSpec(*args.extents))
        elif args.kind == "product":
            if not args.factors or len(args.factors) < 2:
                raise CliError(EXIT_USAGE, "usage", "product needs --factors A B ...")
            obj = model_from_name(args.factors[0])
            for f in args.factors[1:]:
                obj = product_model(obj, model_from_name(f))
        elif args.kind == "wedge":
            obj = wedge_model(model_from_name(args.base), args.facet)
        else:  # truncate
            obj = truncate_vertex_model(model_from_name(args.base), args.vertex)
    except (GeneratorError, ModelError, ComplexError) as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", str(exc)) from exc
    except TypeError as exc:
        raise CliError(EXIT_USAGE, "usage", f"missing parameter for {args.kind}: {exc}") from exc
    if hasattr(obj, "d") and hasattr(obj, "graph"):
        text = format_model(obj)
        summary = f"model d={obj.d} vertices={obj.vertex_count} facets={len(obj.facets)} simple=true"
    else:
        text = format_cplx(obj)
        closed = obj.dim >= 1 and is_closed_pseudomanifold(obj).ok
        summary = f"complex dim={obj.dim} vertices={len(obj.vertices)} facets={len(obj.facets)} closed={str(closed).lower()}"
    _emit(text, args.out)
    if args.out:
        print(summary)
    return EXIT_OK


def cmd_check(args) -> int:
    started = time.perf_counter()
    head = _read_text(args.input).lstrip().split(None, 1)[:1]
    try:
        if head == ["d"]:
            P = model_from_name(args.input)
            report = check_model(P, polytope_id=args.input, brute_force=args.brute_force,
                                 homology_crosscheck=args.homology_crosscheck, workers=args.workers)
        else:
            Delta = _load_sphere(args.input)
            cands = None
            if args.candidate:
                G = _load_complex(args.candidate)
                missing = [f for f in G.facets if f not in Delta.facet_index]
                if missing:
                    raise CliError(EXIT_PRECONDITION, "precondition", f"candidate facet {missing[0]} not in the sphere")
                cands = [[Delta.facet_index[f] for f in G.facets]]
            report = check_conjecture(Delta, polytope_id=args.input, brute_force=args.brute_force,
                                      homology_crosscheck=args.homology_crosscheck, candidates=cands,
                                      workers=args.workers)
    except (ModelError, CoreError, GraphError) as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", str(exc)) from exc
    _emit(format_report(report_fields(report), _header("check", started)), args.out)
    holds = report.weakly_satisfies if args.weak else report.satisfies
    agree = all(ok for _, ok in report.homology_crosscheck)
    return EXIT_OK if holds and agree else EXIT_FAIL


def cmd_core(args) -> int:
    started = time.perf_counter()
    Delta = _load_sphere(args.sphere)
    Gamma = _load_complex(args.gamma)
    try:
        core = compute_core(Delta, Gamma)
    except CoreError as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", str(exc)) from exc
    rep = check_obstruction(Delta, Gamma, core)
    if args.out:
        write_cplx(core.triangles, args.out)
    fields = [("core_triangles", len(core.triangles.facets))] + rep.fields()
    _emit(format_report(fields, _header("core", started)), args.report)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_homology(args) -> int:
    K = _load_complex(args.input)
    if K.is_empty:
        raise CliError(EXIT_PRECONDITION, "precondition", "empty complex")
    h = homology_profile(K)
    print(h)
    print(f"betti: {' '.join(map(str, h.betti))}")
    print(f"euler: {K.euler_characteristic()}")
    return EXIT_OK


def _load_graph(path: str) -> Graph:
    """Either a ``.cplx`` file (its dual graph) or ``graph <n>`` followed by edge lines."""
    text = _read_text(path)
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if lines and lines[0][0] == "graph":
        try:
            return Graph.from_edges(int(lines[0][1]), [(int(a), int(b)) for a, b in lines[1:]])
        except (ValueError, GraphError) as exc:
            raise CliError(EXIT_PARSE, "parse", f"{path}: {exc}") from exc
    K = _load_complex(path)
    try:
        return dual_graph(K)
    except ComplexError as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", str(exc)) from exc


def cmd_kconn(args) -> int:
    G = _load_graph(args.input)
    try:
        kappa = vertex_connectivity(G)
        naatz = naatz_k_connected(G, args.k)
    except GraphError as exc:
        raise CliError(EXIT_PRECONDITION, "precondition", str(exc)) from exc
    print(f"nodes: {G.node_count}")
    print(f"edges: {len(G.edges)}")
    print(f"vertex_connectivity: {kappa}")
    print(f"naatz_{args.k}_connected: {str(naatz.ok).lower()}")
    print(f"naatz_witness: {list(naatz.witness) if naatz.witness else None}")
    agree = naatz.ok == (kappa >= args.k)
    print(f"methods_agree: {str(agree).lower()}")
    return EXIT_OK if agree and naatz.ok else EXIT_FAIL


def _certificate_text(cert, command: str, started: float) -> str:
    fields = list(cert.checks) + [("verdict", cert.verdict)]
    header = _header(command, started) + " " + " ".join(f"{k}={v:.3f}s" for k, v in cert.timings.items())
    return format_report(fields, header)


def cmd_counterexample(args) -> int:
    started = time.perf_counter()
    try:
        ce = run_pipeline()
    except PipelineError as exc:
        raise CliError(EXIT_STAGE, f"stage-{exc.stage}", str(exc)) from exc
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_cplx(ce.sphere, out / "sphere.cplx")
    write_cplx(ce.gamma, out / "gamma.cplx")
    (out / "certificate.txt").write_text(_certificate_text(ce.certificate, "counterexample", started))
    print(f"sphere: {out / 'sphere.cplx'} ({len(ce.sphere.facets)} tetrahedra)")
    print(f"gamma: {out / 'gamma.cplx'} ({len(ce.gamma.facets)} tetrahedra)")
    print(f"verdict: {ce.certificate.verdict}")
    return EXIT_OK if ce.certificate.get("counterexample") else EXIT_FAIL


def cmd_verify(args) -> int:
    started = time.perf_counter()
    Delta = _load_sphere(args.sphere)
    Gamma = _load_complex(args.gamma)
    cert = verify_certificate(Delta, Gamma)
    _emit(_certificate_text(cert, "verify", started), args.out)
    return EXIT_OK if cert.get("counterexample") else EXIT_FAIL


# ------------------------------------------------------------------ parser

GEN_KINDS = ("simplex", "cyclic", "stacked", "product", "wedge", "truncate", "pile", "sphere-from-pile")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perles", description="Perles' conjecture toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a sphere (.cplx) or a simple polytope model")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--stackings", type=int, nargs="*")
    p.add_argument("--extents", type=int, nargs=3, default=[2, 3, 4], metavar=("A", "B", "C"))
    p.add_argument("--factors", nargs="+", help="model names, e.g. polygon:3 segment")
    p.add_argument("--base", default="simplex:3", help="model name or model file")
    p.add_argument("--facet", type=int, default=0)
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="look for Perles violations")
    p.add_argument("input", help=".cplx sphere or model file")
    p.add_argument("--weak", action="store_true", help="only (d-1)-connected violations count")
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--homology-crosscheck", action="store_true")
    p.add_argument("--candidate", help=".cplx subcomplex to test instead of enumerating")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("core", help="core of a subcomplex and the obstruction checks")
    p.add_argument("sphere")
    p.add_argument("gamma")
    p.add_argument("-o", "--out", help="write the core here")
    p.add_argument("--report")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("homology", help="integral homology of a .cplx file")
    p.add_argument("input")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("kconn", help="vertex connectivity, two ways")
    p.add_argument("input", help=".cplx (dual graph) or 'graph n' edge list")
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_kconn)

    p = sub.add_parser("counterexample", help="build and certify the counterexample")
    p.add_argument("--out-dir", default="counterexample")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="certify a (sphere, gamma) pair")
    p.add_argument("sphere")
    p.add_argument("gamma")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
