"""Command-line client for the frustra service.

Every command builds a request model, obtains a response — from the service
layer in-process by default, or over HTTP when --server is given — and
renders it to CSV (with a JSON metadata sidecar) or to a single JSON file.

Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

from .errors import CapacityError, FrustraError
from .formatting import render_csv, render_metadata
from .service import api, schemas
from .version import __version__

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class _RemoteError(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad sweep spec {text!r}: {exc}")
    if count < 2:
        raise argparse.ArgumentTypeError("sweep count must be >= 2")
    return start, stop, count


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}: {exc}")


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}: {exc}")


def _sweep_axis(args) -> schemas.SweepAxis:
    if getattr(args, "inv_h", None) is not None:
        start, stop, count = args.inv_h
        return schemas.SweepAxis(kind="inv_h", start=start, stop=stop, count=count)
    start, stop, count = args.h_sweep
    return schemas.SweepAxis(kind="h", start=start, stop=stop, count=count)


_LOCAL_ROUTES = {
    "/api/spectrum": (api.spectrum, schemas.SpectrumRequest),
    "/api/winding": (api.winding, schemas.WindingRequest),
    "/api/bloch": (api.bloch, schemas.BlochRequest),
    "/api/phase-diagram": (api.phase_diagram, schemas.PhaseDiagramRequest),
    "/api/verify": (api.run_verify, schemas.VerifyRequest),
    "/api/gap-scan": (api.gap_scan, schemas.GapScanRequest),
}


def _call(server: str | None, path: str, request) -> dict:
    """Round-trip a request through HTTP or the in-process service layer."""
    if server:
        reply = httpx.post(
            server.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=None
        )
        if reply.status_code != 200:
            try:
                detail = reply.json().get("detail", {})
                message = detail.get("message", reply.text)
            except Exception:
                message = reply.text
            raise _RemoteError(reply.status_code, message)
        return reply.json()
    handler, _ = _LOCAL_ROUTES[path]
    return handler(request).model_dump(mode="json")


def _write_output(args, payload: dict, header: list[str], rows) -> None:
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        body = {"meta": payload["meta"], "data": {k: v for k, v in payload.items() if k != "meta"}}
        out.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n")
        return
    out.write_text(render_csv(header, rows))
    meta = dict(payload["meta"])
    meta["output_format"] = "csv"
    out.with_name(out.name + ".meta.json").write_text(render_metadata(meta))


# ---------------------------------------------------------------------------
# commands


def _cmd_spectrum(args) -> int:
    req = schemas.SpectrumRequest(
        L=args.L, gamma=args.gamma, delta=args.delta, axis=_sweep_axis(args)
    )
    payload = _call(args.server, "/api/spectrum", req)
    n_levels = len(payload["levels_re"][0]) if payload["levels_re"] else 0
    width = max(1, len(str(max(0, n_levels - 1))))
    header = [req.axis.kind]
    for i in range(n_levels):
        header += [f"E{i:0{width}d}_re", f"E{i:0{width}d}_im"]
    rows = []
    for x, re_row, im_row in zip(payload["x"], payload["levels_re"], payload["levels_im"]):
        row = [x]
        for re, im in zip(re_row, im_row):
            row += [re, im]
        rows.append(row)
    _write_output(args, payload, header, rows)
    return EXIT_OK


def _cmd_winding(args) -> int:
    req = schemas.WindingRequest(
        gamma=args.gamma, delta=args.delta, axis=_sweep_axis(args), n_grid=args.n_grid
    )
    payload = _call(args.server, "/api/winding", req)
    header = [req.axis.kind, "value", "rounded"]
    rows = list(zip(payload["x"], payload["value"], payload["rounded"]))
    _write_output(args, payload, header, rows)
    return EXIT_OK


def _cmd_bloch(args) -> int:
    req = schemas.BlochRequest(
        gamma=args.gamma, delta=args.delta, h=args.h, n_samples=args.n_samples
    )
    payload = _call(args.server, "/api/bloch", req)
    header = ["q", "re_hx", "im_hx", "re_hy", "im_hy", "re_hz", "im_hz"]
    rows = list(
        zip(
            payload["q"],
            payload["hx_re"],
            payload["hx_im"],
            payload["hy_re"],
            payload["hy_im"],
            payload["hz_re"],
            payload["hz_im"],
        )
    )
    _write_output(args, payload, header, rows)
    return EXIT_OK


def _cmd_phase_diagram(args) -> int:
    h0, h1, hn = args.h_axis
    d0, d1, dn = args.delta_axis
    req = schemas.PhaseDiagramRequest(
        gamma=args.gamma,
        L=args.L,
        engine=args.engine,
        h_axis=schemas.GridAxis(start=h0, stop=h1, count=hn),
        delta_axis=schemas.GridAxis(start=d0, stop=d1, count=dn),
    )
    payload = _call(args.server, "/api/phase-diagram", req)
    cells = payload["cells"]
    header = ["h", "delta", "im_ground", "phase"]
    rows = list(zip(cells["h"], cells["delta"], cells["im_ground"], cells["phase"]))
    payload_with_boundaries = dict(payload)
    payload_with_boundaries["meta"] = dict(payload["meta"])
    payload_with_boundaries["meta"]["boundaries"] = payload["boundaries"]
    _write_output(args, payload_with_boundaries, header, rows)
    return EXIT_OK


def _cmd_verify(args) -> int:
    points = [
        schemas.VerifyPoint(L=L, gamma=args.gamma, delta=args.delta, h=h)
        for L in args.L
        for h in args.h
    ]
    req = schemas.VerifyRequest(points=points, tolerance=args.tol)
    payload = _call(args.server, "/api/verify", req)
    for report in payload["reports"]:
        point = report["point"]
        status = "PASS" if report["passed"] else "FAIL"
        print(
            f"{status} L={point['L']} gamma={point['gamma']} delta={point['delta']} "
            f"h={point['h']} max_residual={report['max_residual']:.3e} "
            f"unmatched={report['unmatched']}"
        )
    if args.output:
        out = Path(args.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if payload["all_pass"] else EXIT_VERIFY_FAILED


def _cmd_gap_scan(args) -> int:
    req = schemas.GapScanRequest(
        gamma=args.gamma, delta=args.delta, h=args.h, L_values=args.L_list
    )
    payload = _call(args.server, "/api/gap-scan", req)
    header = ["L", "gap", "ground_re", "ground_im"]
    rows = list(
        zip(payload["L"], payload["gap"], payload["ground_re"], payload["ground_im"])
    )
    _write_output(args, payload, header, rows)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frustra",
        description="Spectra, phases, and topology of the frustrated non-Hermitian XY ring",
    )
    parser.add_argument("--version", action="version", version=f"frustra {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output_required=True):
        p.add_argument("--server", help="base URL of a running service; default is in-process")
        if output_required:
            p.add_argument("--output", required=True, help="dataset file to write")
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    def add_sweep(p):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--inv-h", type=_parse_range, metavar="START:STOP:COUNT",
                         help="sweep over 1/h")
        grp.add_argument("--h-sweep", type=_parse_range, metavar="START:STOP:COUNT",
                         help="sweep over h")

    p = sub.add_parser("spectrum", help="all 2^L level curves along a field sweep")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    add_sweep(p)
    add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("winding", help="winding number along a field sweep")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--n-grid", type=int, default=10000)
    add_sweep(p)
    add_common(p)
    p.set_defaults(func=_cmd_winding)

    p = sub.add_parser("bloch", help="normalized Bloch trajectory at fixed couplings")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--n-samples", type=int, default=256)
    add_common(p)
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("phase-diagram", help="|Im E0| scan over the (h, delta) plane")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--L", type=int, default=11)
    p.add_argument("--engine", choices=("analytic", "ed"), default="analytic")
    p.add_argument("--h-axis", type=_parse_range, required=True, metavar="START:STOP:COUNT")
    p.add_argument("--delta-axis", type=_parse_range, required=True, metavar="START:STOP:COUNT")
    add_common(p)
    p.set_defaults(func=_cmd_phase_diagram)

    p = sub.add_parser("verify", help="match analytic channels against the ED oracle")
    p.add_argument("--L", type=_parse_int_list, required=True, help="comma-separated lengths")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--h", type=_parse_float_list, required=True, help="comma-separated fields")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", help="optional JSON report path")
    p.add_argument("--server", help="base URL of a running service; default is in-process")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gap-scan", help="excitation gap versus ring length")
    p.add_argument("--L-list", type=_parse_int_list, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--h", type=float, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_gap_scan)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except FrustraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _RemoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY if exc.status == 413 else EXIT_USAGE
    except ValueError as exc:
        # pydantic validation failures on request construction
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
