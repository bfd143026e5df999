"""Command-line front end; a thin in-process client of the service handlers.

Exit codes: 0 success, 2 invalid input, 3 computation error (the error
class name goes to stderr).  Outputs are byte-stable for identical flags:
floats use 17 significant digits, '\\n' line endings, '.' decimal point.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import __version__
from .errors import (
    ComplexEnergy,
    ComplexSpectrum,
    DegenerateMode,
    GapClosed,
    NoConvergence,
    NonFiniteParameter,
    OriginHit,
    SizeTooSmall,
    TooLarge,
)
from .service import (
    SCHEMA_VERSION,
    ChernGridRequest,
    ChernRequest,
    EnergyRequest,
    FieldParams,
    LoopRequest,
    OracleRequest,
    ScanRequest,
    SpectrumRequest,
    WindingRequest,
    handle_chern,
    handle_chern_grid,
    handle_energy,
    handle_loop,
    handle_oracle,
    handle_scan,
    handle_spectrum,
    handle_winding,
)

COMPUTE_ERRORS = (ComplexEnergy, ComplexSpectrum, GapClosed, OriginHit,
                  DegenerateMode, NoConvergence)
VALIDATION_ERRORS = (NonFiniteParameter, SizeTooSmall, TooLarge, ValueError)

DEFAULT_FORMAT = {
    "spectrum": "csv", "energy": "json", "scan": "csv", "chern": "json",
    "chern-grid": "csv", "winding": "json", "loop": "csv", "oracle": "csv",
}


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _flag(x: bool) -> str:
    return "1" if x else "0"


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'A,B', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers 'A,B', got {text!r}") from None


def _field_from_args(args) -> FieldParams:
    if args.real is not None:
        return FieldParams(kind="real", a=args.real[0], b=args.real[1])
    if args.complex is not None:
        return FieldParams(kind="complex", a=args.complex[0], b=args.complex[1])
    raise ValueError("one of --real A B or --complex A B is required")


def _add_field_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--real", nargs=2, type=float, metavar=("G1", "G2"))
    g.add_argument("--complex", nargs=2, type=float, metavar=("ETA", "XI"))


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isingtop")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form bands over the k-grid")
    _add_field_flags(p)
    p.add_argument("--nk", type=int, default=2001)
    _add_output_flags(p)

    p = sub.add_parser("energy", help="ground-state energy density")
    _add_field_flags(p)
    p.add_argument("--nk", type=int, default=2001)
    _add_output_flags(p)

    p = sub.add_parser("scan", help="energy scan along a parameter ray")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--real-ray", nargs=2, type=_parse_pair, metavar=("A,B", "C,D"))
    g.add_argument("--complex-ray", nargs=2, type=_parse_pair, metavar=("A,B", "C,D"))
    p.add_argument("--samples", type=int, default=301)
    p.add_argument("--nk", type=int, default=2001)
    p.add_argument("--z", type=float, default=8.0)
    _add_output_flags(p)

    p = sub.add_parser("chern", help="Chern number (point or parameter grid)")
    _add_field_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--real-grid", nargs=2, type=_parse_pair, metavar=("AMIN,AMAX", "BMIN,BMAX"))
    g.add_argument("--complex-grid", nargs=2, type=_parse_pair, metavar=("AMIN,AMAX", "BMIN,BMAX"))
    p.add_argument("--method", choices=("analytic", "curvature", "both"), default="both")
    p.add_argument("--steps", type=int, default=41)
    p.add_argument("--nk", type=int, default=2001)
    p.add_argument("--nphi", type=int, default=256)
    _add_output_flags(p)

    p = sub.add_parser("winding", help="loop winding number")
    _add_field_flags(p)
    p.add_argument("--nk", type=int, default=2001)
    _add_output_flags(p)

    p = sub.add_parser("loop", help="parameter-plane loop trace")
    _add_field_flags(p)
    p.add_argument("--nk", type=int, default=2001)
    _add_output_flags(p)

    p = sub.add_parser("oracle", help="finite-size and eigensolver cross-checks")
    _add_field_flags(p)
    p.add_argument("--sizes", type=lambda s: [int(v) for v in s.split(",")], default=[2, 3, 4])
    p.add_argument("--nk", type=int, default=2001)
    _add_output_flags(p)

    return parser


def _meta_lines(pairs: list[tuple[str, str]]) -> list[str]:
    return [f"# {key}={value}" for key, value in pairs]


def _field_meta(field: FieldParams, p: float) -> list[tuple[str, str]]:
    return [("kind", field.kind), ("a", _fmt(field.a)), ("b", _fmt(field.b)), ("p", _fmt(p))]


def _table(columns: list[str], rows: list[list[float]]) -> list[str]:
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return lines


def render_csv(resp) -> str:
    meta: list[tuple[str, str]] = [
        ("command", resp.command),
        ("version", __version__),
        ("schema_version", str(SCHEMA_VERSION)),
    ]
    body: list[str] = []
    footer: list[str] = []
    c = resp.command
    if c == "spectrum":
        meta += _field_meta(resp.field, resp.p) + [("n_k", str(resp.n_k))]
        body = _table(resp.columns, resp.rows)
    elif c == "energy":
        meta += _field_meta(resp.field, resp.p) + [("num_k", str(resp.num_k))]
        body = _table(["energy"], [[resp.energy]])
    elif c == "scan":
        meta += [("kind", resp.kind),
                 ("start", f"{_fmt(resp.start[0])};{_fmt(resp.start[1])}"),
                 ("end", f"{_fmt(resp.end[0])};{_fmt(resp.end[1])}"),
                 ("samples", str(resp.samples)), ("num_k", str(resp.num_k)),
                 ("z", _fmt(resp.z)), ("threshold", _fmt(resp.threshold)),
                 ("criticals", ";".join(str(cp.index) for cp in resp.criticals))]
        body = _table(resp.columns, resp.rows)
    elif c == "chern":
        meta += _field_meta(resp.field, resp.p) + [("region", resp.region)]
        if resp.methods_agree is not None:
            meta.append(("methods_agree", _flag(resp.methods_agree)))
        cols = ["method", "n_k", "n_phi", "raw", "snapped", "residual"]
        rows = []
        for name, r in (("analytic_winding", resp.analytic), ("curvature_grid", resp.curvature)):
            if r is not None:
                rows.append([name, str(r.n_k), str(r.n_phi),
                             _fmt(r.raw), _fmt(r.snapped), _fmt(r.residual)])
        body = [",".join(cols)] + [",".join(row) for row in rows]
    elif c == "chern-grid":
        meta += [("kind", resp.kind), ("steps", str(resp.steps)), ("n_k", str(resp.n_k))]
        body = _table(resp.columns, resp.rows)
    elif c == "winding":
        meta += _field_meta(resp.field, resp.p) + [("n_k", str(resp.n_k))]
        body = _table(["raw", "winding", "boundary"],
                      [[resp.raw, resp.winding, float(resp.boundary)]])
    elif c == "loop":
        meta += _field_meta(resp.field, resp.p) + [("n_k", str(resp.n_k))]
        body = _table(resp.columns, resp.rows)
        footer = _meta_lines([("winding_raw", _fmt(resp.winding_raw)),
                              ("winding", _fmt(resp.winding)),
                              ("boundary", _flag(resp.boundary))])
    elif c == "oracle":
        meta += _field_meta(resp.field, resp.p) + [
            ("num_k", str(resp.num_k)), ("thermo_energy", _fmt(resp.thermo_energy)),
            ("monotone", _flag(resp.monotone)), ("final_gap", _fmt(resp.final_gap)),
            ("realspace_max_diff", ";".join(f"{r.N}:{_fmt(r.max_diff)}" for r in resp.realspace)),
            ("det_residual_max", _fmt(resp.det_residual_max))]
        body = _table(["size", "density", "gap"],
                      [[s, d, g] for s, d, g in zip(resp.sizes, resp.densities, resp.gaps)])
    else:
        raise ValueError(f"no CSV renderer for command {c!r}")
    return "\n".join(_meta_lines(meta) + body + footer) + "\n"


def render_json(resp) -> str:
    # pydantic serialization: non-finite floats become null, matching the
    # HTTP service byte-for-byte on the same payload
    return resp.model_dump_json(indent=2) + "\n"


def _execute(args) -> object:
    c = args.command
    if c == "spectrum":
        return handle_spectrum(SpectrumRequest(field=_field_from_args(args), n_k=args.nk))
    if c == "energy":
        return handle_energy(EnergyRequest(field=_field_from_args(args), num_k=args.nk))
    if c == "scan":
        if args.real_ray is not None:
            kind, ray = "real", args.real_ray
        elif args.complex_ray is not None:
            kind, ray = "complex", args.complex_ray
        else:
            raise ValueError("one of --real-ray or --complex-ray is required")
        return handle_scan(ScanRequest(kind=kind, start=ray[0], end=ray[1],
                                       samples=args.samples, num_k=args.nk, z=args.z))
    if c == "chern":
        if args.real_grid is not None or args.complex_grid is not None:
            kind = "real" if args.real_grid is not None else "complex"
            rng = args.real_grid if args.real_grid is not None else args.complex_grid
            return handle_chern_grid(ChernGridRequest(
                kind=kind, a_range=rng[0], b_range=rng[1],
                steps=args.steps, n_k=args.nk))
        return handle_chern(ChernRequest(field=_field_from_args(args), method=args.method,
                                         n_k=args.nk, n_phi=args.nphi))
    if c == "winding":
        return handle_winding(WindingRequest(field=_field_from_args(args), n_k=args.nk))
    if c == "loop":
        return handle_loop(LoopRequest(field=_field_from_args(args), n_k=args.nk))
    if c == "oracle":
        return handle_oracle(OracleRequest(field=_field_from_args(args),
                                           sizes=args.sizes, num_k=args.nk))
    raise ValueError(f"unknown command {c!r}")


_NEG_PAIR = re.compile(r"^-\d[\d.eE+-]*,")


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # argparse mistakes "-3,3" for an option flag; a leading space keeps it a
    # value and float() strips it during pair parsing
    argv = [" " + t if _NEG_PAIR.match(t) else t for t in argv]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        resp = _execute(args)
    except COMPUTE_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except VALIDATION_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    fmt = args.format or DEFAULT_FORMAT.get(getattr(resp, "command", args.command), "json")
    text = render_csv(resp) if fmt == "csv" else render_json(resp)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
