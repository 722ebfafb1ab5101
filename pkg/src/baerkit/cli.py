"""Thin CLI client for the service.

By default requests go to the FastAPI app in-process over an ASGI transport;
--server switches to a remote instance.  Exit codes: 0 all checks passed,
1 a contract check failed, 2 input error.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import httpx

from .report import canonical_json, render_text


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process: run the ASGI app behind a sync test transport
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=True)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(render_text(report))


def _finish(resp: httpx.Response, fmt: str) -> None:
    if resp.status_code == 400 or resp.status_code == 404:
        detail = resp.json().get("detail", resp.text)
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    resp.raise_for_status()
    body = resp.json()
    _emit(body["report"], fmt)
    sys.exit(0 if body["passed"] else 1)


def _bounds(bound_n, bound_d, window, order_cap, seed, monoid=None) -> dict:
    out = {}
    if bound_n is not None:
        out["n"] = bound_n
    if bound_d is not None:
        out["d"] = bound_d
    if window is not None:
        out["window"] = window
    if order_cap is not None:
        out["order_cap"] = order_cap
    if seed is not None:
        out["seed"] = seed
    if monoid is not None:
        out["monoid"] = monoid
    return out


common_options = [
    click.option("--server", default=None, help="Base URL of a running service."),
    click.option("--cache-dir", default=None, help="Report cache directory."),
    click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text"),
    click.option("--order-cap", type=int, default=None),
    click.option("--seed", type=int, default=None),
    click.option("--timing", is_flag=True, default=False,
                 help="Attach wall-clock timing (breaks byte determinism)."),
]


def _apply(options):
    def wrap(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn
    return wrap


@click.group()
def main() -> None:
    """Exact finite-ring classification and bounded extension suites."""


@main.command()
@click.argument("spec")
@_apply(common_options)
def classify(spec, server, cache_dir, fmt, order_cap, seed, timing) -> None:
    """Classify the ring given by SPEC."""
    with _client(server) as client:
        resp = client.post("/classify", json={
            "spec": spec, "order_cap": order_cap,
            "cache_dir": cache_dir, "timing": timing,
        })
    _finish(resp, fmt)


@main.command()
@click.argument("suite")
@click.argument("spec")
@click.option("--alpha", default=None, help="Twist spec (identity, frobenius, ...).")
@click.option("--delta", default=None, help="Derivation spec (zero, inner K, ...).")
@click.option("--bound-n", type=int, default=None)
@click.option("--bound-d", type=int, default=None)
@click.option("--window", type=int, default=None)
@click.option("--monoid", default=None, help='Monoid spec, e.g. "nk 2 lex" or "qplus".')
@_apply(common_options)
def verify(suite, spec, alpha, delta, bound_n, bound_d, window, monoid,
           server, cache_dir, fmt, order_cap, seed, timing) -> None:
    """Run the named verification SUITE against SPEC."""
    with _client(server) as client:
        resp = client.post("/verify", json={
            "suite": suite, "spec": spec, "alpha": alpha, "delta": delta,
            "bounds": _bounds(bound_n, bound_d, window, order_cap, seed, monoid),
            "cache_dir": cache_dir, "timing": timing,
        })
    _finish(resp, fmt)


@main.command()
@click.argument("family")
@click.argument("predicate")
@click.option("--max-order", type=int, default=64)
@click.option("--limit", type=int, default=None)
@click.option("--server", default=None)
@click.option("--cache-dir", default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def mine(family, predicate, max_order, limit, server, cache_dir, fmt) -> None:
    """Stream family members whose classification matches PREDICATE."""
    with _client(server) as client:
        resp = client.post("/mine", json={
            "family": family, "predicate": predicate,
            "max_order": max_order, "limit": limit, "cache_dir": cache_dir,
        })
    if resp.status_code == 400:
        click.echo(f"error: {resp.json().get('detail')}", err=True)
        sys.exit(2)
    resp.raise_for_status()
    body = resp.json()
    if fmt == "json":
        sys.stdout.write(json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for m in body["matches"]:
            click.echo(m["spec"])
        click.echo(f"# {body['count']} match(es)")
    sys.exit(0)


@main.command()
@click.argument("flag")
@click.option("--server", default=None)
def explain(flag, server) -> None:
    """Print the definition backing a classification flag."""
    with _client(server) as client:
        resp = client.get(f"/explain/{flag}")
    if resp.status_code == 404:
        click.echo(f"error: {resp.json().get('detail')}", err=True)
        sys.exit(2)
    resp.raise_for_status()
    body = resp.json()
    click.echo(f"{body['flag']}: {body['definition']}")
    sys.exit(0)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8321)
def serve(host, port) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
