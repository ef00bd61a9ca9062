"""Command-line front end for sweeps, NE verification, thresholds, and probes.

The CLI is a thin client: every subcommand except `serve` builds a request for
the HTTP service and renders the response as CSV. By default the service runs
in-process; `--server URL` points the same client at a remote instance.

Exit codes: 0 success (and NE-true for verify), 1 verify NE-false, 2 usage
error, 3 numerical failure (no bracket, norm drift).
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, TextIO

import httpx


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def _parse_range(parser: argparse.ArgumentParser, text: str, flag: str) -> dict:
    parts = text.split(":")
    if len(parts) != 3:
        parser.error(f"{flag} expects lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        parser.error(f"{flag} expects numeric lo:hi:count, got {text!r}")
    if count < 1:
        parser.error(f"{flag} count must be >= 1")
    return {"lo": lo, "hi": hi, "count": count}


def _parse_resolution(parser: argparse.ArgumentParser, text: str) -> dict:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        parser.error(f"--resolution expects THETA:PHI[:FULL3], got {text!r}")
    try:
        steps = [int(p) for p in parts]
    except ValueError:
        parser.error(f"--resolution expects integers, got {text!r}")
    if any(s < 2 for s in steps):
        parser.error("--resolution steps must be >= 2")
    out = {"steps_theta": steps[0], "steps_phi": steps[1]}
    if len(steps) == 3:
        out["steps_full3"] = steps[2]
    return out


class ServiceClient:
    """HTTP client; in-process app unless a server URL is given."""

    def __init__(self, server: str | None = None):
        if server:
            self._client: httpx.Client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                # starlette's httpx2 advisory is not a DeprecationWarning
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> httpx.Response:
        return self._client.post(path, json=payload)

    def close(self) -> None:
        self._client.close()


def _detail(response: httpx.Response) -> str:
    try:
        body = response.json()
    except ValueError:
        return response.text
    if isinstance(body, dict) and "detail" in body:
        return str(body["detail"])
    return response.text


def _error_exit_code(response: httpx.Response) -> int:
    # 400/422 are malformed or invalid inputs; 409 is a numerical failure
    # (no NE bracket, norm drift). Anything else unexpected counts as 3.
    if response.status_code in (400, 422):
        return 2
    return 3


def _open_out(path: str) -> tuple[TextIO, bool]:
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_lines(path: str, lines: list[str]) -> None:
    stream, owned = _open_out(path)
    try:
        for line in lines:
            stream.write(line + "\n")
    finally:
        if owned:
            stream.close()
        else:
            stream.flush()


def _payoff_header(n_players: int) -> str:
    cols = ",".join(f"payoff_{i}" for i in range(n_players))
    return f"game,space,k,gamma,sin2gamma,profile,{cols},is_ne,max_gain"


def _payoff_row(row: dict) -> str:
    fields = [
        _fmt(row["game"]),
        _fmt(row["space"]),
        _fmt(row["k"]),
        _fmt(row["gamma"]),
        _fmt(row["sin2gamma"]),
        _fmt(row["profile"]),
    ]
    fields.extend(_fmt(p) for p in row["payoffs"])
    fields.append(_fmt(row["is_ne"]))
    fields.append(_fmt(row["max_gain"]))
    return ",".join(fields)


THRESHOLD_HEADER = (
    "game,space,k,profile,sin2gamma_star,bracket_lo,bracket_hi,"
    "tolerance,epsilon,ne_lo,ne_hi,iterations"
)


def _threshold_row(body: dict) -> str:
    keys = (
        "game", "space", "k", "profile", "sin2gamma_star", "bracket_lo",
        "bracket_hi", "tolerance", "epsilon", "ne_lo", "ne_hi", "iterations",
    )
    return ",".join(_fmt(body[key]) for key in keys)


def _request(args: argparse.Namespace, path: str, payload: dict) -> tuple[int, dict | None]:
    client = ServiceClient(getattr(args, "server", None))
    try:
        response = client.post(path, payload)
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 3, None
    finally:
        client.close()
    if response.status_code != 200:
        print(f"error: {_detail(response)}", file=sys.stderr)
        return _error_exit_code(response), None
    return 0, response.json()


def _resolution_payload(args: argparse.Namespace) -> dict | None:
    return args.resolution if args.resolution else None


def _with_resolution(payload: dict, args: argparse.Namespace) -> dict:
    res = _resolution_payload(args)
    if res is not None:
        payload["resolution"] = res
    return payload


def cmd_sweep(args: argparse.Namespace) -> int:
    payload = _with_resolution(
        {
            "game": args.game,
            "space": args.space,
            "k": args.k,
            "k_grid": args.k_grid,
            "sin2gamma": args.sin2gamma,
            "profiles": args.profiles,
            "epsilon": args.epsilon,
        },
        args,
    )
    code, body = _request(args, "/sweep", payload)
    if code:
        return code
    lines = [_payoff_header(body["n_players"])]
    lines.extend(_payoff_row(row) for row in body["rows"])
    _write_lines(args.out, lines)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    payload = _with_resolution(
        {
            "game": args.game,
            "space": args.space,
            "k": args.k,
            "sin2gamma": args.sin2gamma,
            "profile": args.profile,
            "epsilon": args.epsilon,
        },
        args,
    )
    code, body = _request(args, "/verify", payload)
    if code:
        return code
    lines = [_payoff_header(len(body["payoffs"])), _payoff_row(body)]
    _write_lines(args.out, lines)
    return 0 if body["is_ne"] else 1


def cmd_threshold(args: argparse.Namespace) -> int:
    payload = _with_resolution(
        {
            "game": args.game,
            "space": args.space,
            "k": args.k,
            "profile": args.profile,
            "lo": args.lo,
            "hi": args.hi,
            "epsilon": args.epsilon,
            "tolerance": args.tolerance,
        },
        args,
    )
    code, body = _request(args, "/threshold", payload)
    if code:
        return code
    _write_lines(args.out, [THRESHOLD_HEADER, _threshold_row(body)])
    return 0


def cmd_probe(args: argparse.Namespace) -> int:
    payload = _with_resolution(
        {
            "check": args.check,
            "trials": args.trials,
            "seed": args.seed,
            "nmax": args.nmax,
            "grid": args.grid,
        },
        args,
    )
    code, body = _request(args, "/probe", payload)
    if code:
        return code
    columns = body["columns"]
    lines = [",".join(columns)]
    for row in body["rows"]:
        lines.append(",".join(_fmt(row.get(col)) for col in columns))
    for key, value in body["summary"].items():
        lines.append(f"# {key}={_fmt(value)}")
    for note in body["notes"]:
        lines.append(f"# note: {note}")
    _write_lines(args.out, lines)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_common(sub: argparse.ArgumentParser, parser: argparse.ArgumentParser) -> None:
    sub.add_argument("--server", default=None,
                     help="service URL; default runs the service in-process")
    sub.add_argument("--out", default="-", help="output path, '-' for stdout")
    sub.add_argument(
        "--resolution",
        default=None,
        type=lambda text: _parse_resolution(parser, text),
        metavar="THETA:PHI[:FULL3]",
        help="deviation lattice steps per axis",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="Quantized 2x2 game sweeps, NE checks, and thresholds.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sweep = subs.add_parser("sweep", help="payoff/NE rows over a sin^2(gamma) grid")
    sweep.add_argument("--game", required=True)
    sweep.add_argument("--space", default="s1")
    sweep.add_argument("--k", type=float, default=None)
    sweep.add_argument("--k-grid", dest="k_grid", default=None,
                       type=lambda text: _parse_range(parser, text, "--k-grid"),
                       metavar="LO:HI:COUNT")
    sweep.add_argument("--sin2gamma", default={"lo": 0.0, "hi": 1.0, "count": 101},
                       type=lambda text: _parse_range(parser, text, "--sin2gamma"),
                       metavar="LO:HI:COUNT")
    sweep.add_argument("--profiles", required=True,
                       type=lambda text: [p for p in text.split(",") if p],
                       help="comma-separated profile names")
    sweep.add_argument("--epsilon", type=float, default=1e-3)
    _add_common(sweep, parser)
    sweep.set_defaults(func=cmd_sweep)

    verify = subs.add_parser("verify", help="certify one profile at one gamma")
    verify.add_argument("--game", required=True)
    verify.add_argument("--space", default="s1")
    verify.add_argument("--k", type=float, default=None)
    verify.add_argument("--sin2gamma", type=float, required=True)
    verify.add_argument("--profile", required=True)
    verify.add_argument("--epsilon", type=float, default=1e-3)
    _add_common(verify, parser)
    verify.set_defaults(func=cmd_verify)

    threshold = subs.add_parser("threshold", help="bisect the NE/non-NE boundary")
    threshold.add_argument("--game", required=True)
    threshold.add_argument("--space", default="s1")
    threshold.add_argument("--k", type=float, default=None)
    threshold.add_argument("--profile", required=True)
    threshold.add_argument("--lo", type=float, default=0.0)
    threshold.add_argument("--hi", type=float, default=1.0)
    threshold.add_argument("--epsilon", type=float, default=1e-3)
    threshold.add_argument("--tolerance", type=float, default=1e-4)
    _add_common(threshold, parser)
    threshold.set_defaults(func=cmd_threshold)

    probe = subs.add_parser("probe", help="oracle vs simulator comparison reports")
    probe.add_argument("--check", required=True)
    probe.add_argument("--trials", type=int, default=200)
    probe.add_argument("--seed", type=int, default=0)
    probe.add_argument("--nmax", type=int, default=6)
    probe.add_argument("--grid", type=int, default=21)
    _add_common(probe, parser)
    probe.set_defaults(func=cmd_probe)

    serve = subs.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
