"""Command-line front end, a thin client of the service layer.

Every subcommand issues one HTTP request: against a remote server when
--server is given, otherwise against the in-process ASGI app (no daemon
needed).  Exit codes: 0 ok, 2 invalid input, 3 certificate or
consistency failure.

Window arguments are 'fund' or 'x0,x1,y0,y1' with rational entries; the
y values are measured in units of Im(t) = sqrt(-D)/2, so the fundamental
parallelogram is always 0..1 in y.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CERT = 3


def _call(server: str | None, method: str, path: str, params=None, body=None):
    """One request against a remote server or the in-process app."""
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            r = client.request(method, path, params=params, json=body)
            return r.status_code, r.headers, r.content

    async def _inproc():
        from .api import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://schmidt.internal") as client:
            r = await client.request(method, path, params=params, json=body)
            return r.status_code, r.headers, r.content

    return asyncio.run(_inproc())


def _fail(status: int, content: bytes) -> int:
    try:
        detail = json.loads(content).get("detail", content.decode())
    except Exception:
        detail = content.decode(errors="replace")
    print(f"error: {detail}", file=sys.stderr)
    return EXIT_CERT if status == 409 else EXIT_INVALID


def cmd_info(args) -> int:
    status, _, content = _call(args.server, "GET", f"/fields/{args.delta}")
    if status != 200:
        return _fail(status, content)
    info = json.loads(content)
    ghost = info["ghost_curv_sq"]
    print(f"discriminant : {info['delta']}")
    print(f"tau          : {info['tau_convention']}")
    print(f"units        : {info['units']} (unit index u = {info['unit_index']})")
    print(f"euclidean    : {'yes' if info['euclidean'] else 'no'}")
    print(f"connected    : {'yes' if info['connected'] else 'no'}")
    print(f"h_K          : {info['class_number']}")
    print(f"ghost        : {'none' if ghost is None else 'B^2 = ' + ghost}")
    return EXIT_OK


def cmd_count(args) -> int:
    status, _, content = _call(
        args.server, "GET", f"/fields/{args.delta}/count", params={"fmax": args.fmax}
    )
    if status != 200:
        return _fail(status, content)
    data = json.loads(content)
    print(f"delta = {data['delta']}, h_K = {data['h_k']}")
    print(f"{'f':>3} {'residues':>8} {'h_f':>5} {'ker':>5} {'count':>6} {'pred':>6} {'2h_f':>6}  flags")
    for row in data["rows"]:
        flags = []
        if not row["matches_predicted"]:
            flags.append("!!PREDICTION-MISMATCH")
        if not row["matches_classical"]:
            flags.append("2h_f-differs")
        print(
            f"{row['f']:>3} {row['residues']:>8} {row['h_f']:>5} {row['kernel']:>5} "
            f"{row['geometric']:>6} {row['predicted']:>6} {row['classical_2hf']:>6}  {' '.join(flags)}"
        )
    print(f"note: {data['note']}")
    if not data["consistent"]:
        print("CONSISTENCY FAILURE: geometric counts disagree with the resolved prediction", file=sys.stderr)
        return EXIT_CERT
    return EXIT_OK


def cmd_enumerate(args) -> int:
    params = {
        "bound": args.bound,
        "window": args.window,
        "include_lines": args.include_lines,
        "oriented": args.oriented,
        "absolute_bound": args.absolute_bound,
    }
    if args.format == "svg":
        return _render_to(args, sys.stdout)
    status, _, content = _call(args.server, "GET", f"/fields/{args.delta}/circles", params=params)
    if status != 200:
        return _fail(status, content)
    data = json.loads(content)
    if args.format == "jsonl":
        for rec in data["circles"]:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    else:
        print(f"{'curv':>6} {'cocurv':>8} {'zeta':>14}")
        for rec in data["circles"]:
            print(f"{rec['curv']:>6} {rec['cocurv']:>8} {str(tuple(rec['zeta'])):>14}")
        print(f"total: {data['count']}")
    return EXIT_OK


def _render_body(args) -> dict:
    return {
        "window": args.window,
        "bound": args.bound,
        "absolute_bound": args.absolute_bound,
        "width_px": args.size,
        "stroke_scale": args.stroke_scale,
        "color_by_curv": args.color_by_f,
        "include_lines": args.include_lines,
        "show_ghost": args.ghost,
    }


def _render_to(args, stream) -> int:
    status, headers, content = _call(
        args.server, "POST", f"/fields/{args.delta}/render", body=_render_body(args)
    )
    if status != 200:
        return _fail(status, content)
    stream.write(content.decode())
    count = headers.get("x-circle-count", "?")
    print(f"rendered {count} circles", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    status, headers, content = _call(
        args.server, "POST", f"/fields/{args.delta}/render", body=_render_body(args)
    )
    if status != 200:
        return _fail(status, content)
    try:
        with open(args.out, "wb") as fh:
            fh.write(content)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"wrote {args.out} ({headers.get('x-circle-count', '?')} circles)")
    return EXIT_OK


def cmd_ghost_check(args) -> int:
    status, _, content = _call(
        args.server,
        "GET",
        f"/fields/{args.delta}/ghost-check",
        params={"bound": args.bound, "window": args.window},
    )
    if status != 200:
        return _fail(status, content)
    data = json.loads(content)
    if data["all_separated"]:
        print(
            f"all {data['circles_checked']} circles separated from the ghost circle; "
            f"min |<G,C>| = {data['min_product_abs']:.6f}"
        )
        return EXIT_OK
    print(f"SEPARATION FAILURES: {len(data['failures'])} circles", file=sys.stderr)
    return EXIT_CERT


def cmd_path(args) -> int:
    status, _, content = _call(
        args.server, "POST", f"/fields/{args.delta}/path", body={"m1": args.m1, "m2": args.m2}
    )
    if status != 200:
        return _fail(status, content)
    data = json.loads(content)
    for rec in data["circles"]:
        print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    print(f"path length {data['length']}, verified: {data['verified']}")
    return EXIT_OK if data["verified"] else EXIT_CERT


def cmd_witness(args) -> int:
    status, _, content = _call(
        args.server, "GET", f"/fields/{args.delta}/witness", params={"bound": args.bound}
    )
    if status != 200:
        return _fail(status, content)
    data = json.loads(content)
    print("inside :", json.dumps(data["inside"], sort_keys=True))
    print("outside:", json.dumps(data["outside"], sort_keys=True))
    print("ghost  : B^2 =", data["ghost"]["curv_sq"])
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("schmidt.api:app", host=args.host, port=args.port)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, window_default: str = "fund"):
    p.add_argument("delta", type=int, nargs="?", help="field discriminant, e.g. -15")
    p.add_argument("--delta", dest="delta_opt", type=int, help="alternative to the positional")
    p.add_argument("--window", default=window_default, help="'fund' or x0,x1,y0,y1 (y in Im(t) units)")
    p.add_argument("--server", help="remote service URL; default runs in-process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidt",
        description="Exact Schmidt arrangements of imaginary quadratic fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="field summary: units, h_K, Euclidean, ghost")
    _add_common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("count", help="circle counting table by conductor")
    _add_common(p)
    p.add_argument("fmax", type=int, nargs="?", default=6)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list circles meeting a window")
    _add_common(p)
    p.add_argument("--bound", type=int, default=10, help="reduced curvature bound")
    p.add_argument("--absolute-bound", action="store_true", help="bound |curvature| instead")
    p.add_argument("--format", choices=("jsonl", "table", "svg"), default="jsonl")
    p.add_argument("--include-lines", action="store_true")
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--size", type=int, default=800)
    p.add_argument("--stroke-scale", type=float, default=0.01)
    p.add_argument("--color-by-f", action="store_true")
    p.add_argument("--ghost", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="write a deterministic SVG figure")
    _add_common(p)
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--absolute-bound", action="store_true")
    p.add_argument("--out", default="arrangement.svg")
    p.add_argument("--size", type=int, default=800)
    p.add_argument("--stroke-scale", type=float, default=0.01)
    p.add_argument("--color-by-f", action="store_true")
    p.add_argument("--ghost", action="store_true", help="overlay the ghost circle")
    p.add_argument("--include-lines", action="store_true", default=True)
    p.add_argument("--no-lines", dest="include_lines", action="store_false")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("ghost-check", help="certify separation of all circles from the ghost")
    _add_common(p, window_default="-2,3,-2,3")
    p.add_argument("--bound", type=int, default=30)
    p.set_defaults(func=cmd_ghost_check)

    p = sub.add_parser("path", help="tangency path between two circles (Euclidean fields)")
    _add_common(p)
    p.add_argument("m1", help="matrix like [[1,0],[0,1]]")
    p.add_argument("m2", help="matrix like [[0,-1],[1,0]]")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("witness", help="disconnectedness witness (inside/outside the ghost)")
    _add_common(p)
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def _merge_window_values(argv: list[str]) -> list[str]:
    # argparse rejects option values that begin with '-': fold
    # '--window -2,3,-2,3' into '--window=-2,3,-2,3'
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            val = next(it, None)
            out.append(tok if val is None else f"--window={val}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_merge_window_values(sys.argv[1:] if argv is None else argv))
    if getattr(args, "delta_opt", None) is not None:
        args.delta = args.delta_opt
    if hasattr(args, "delta") and args.delta is None and args.command != "serve":
        parser.error("a discriminant is required (positional or --delta)")
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
