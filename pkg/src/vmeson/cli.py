"""Command-line front end.

A thin client over the HTTP service: every subcommand builds a request,
posts it to the API (an in-process instance by default, or a remote
server via ``--server``), and renders the JSON response as a table, CSV,
or deterministic JSON.  All energies are reported in MeV.

Exit codes: 0 success, 1 usage/configuration error, 2 solver
non-convergence, 3 internal consistency failure.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import sys

import click

USAGE_ERROR = 1
NON_CONVERGENCE = 2
INTERNAL_ERROR = 3

_PARAM_KEYS = ("a", "alpha", "v0", "lam", "lambda_qcd", "n_flavors")
_MASS_KEYS = ("b", "c", "s", "d", "u")


class CliError(click.ClickException):
    def __init__(self, message, code=USAGE_ERROR):
        super().__init__(message)
        self.exit_code = code


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server.rstrip("/"), timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    if isinstance(detail, dict):
        kind, message = detail.get("type", ""), detail.get("message", str(detail))
    else:
        kind, message = "", str(detail)
    if resp.status_code in (400, 422):
        raise CliError(f"request rejected: {message}", USAGE_ERROR)
    if resp.status_code == 409 or kind == "non_convergence":
        raise CliError(f"solver did not converge: {message}", NON_CONVERGENCE)
    raise CliError(f"internal error ({kind or resp.status_code}): {message}", INTERNAL_ERROR)


# ---------------------------------------------------------------------------
# config file: flat key = value sections [params], [grid], [run]
# ---------------------------------------------------------------------------


def read_config(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise CliError(f"config file not found: {path}")
    out = {"params": {}, "grid": {}, "run": {}}
    for section in parser.sections():
        if section not in out:
            raise CliError(
                f"unknown config section [{section}]; expected [params], [grid], [run]"
            )
        for key, raw in parser.items(section):
            out[section][key] = raw.strip()
    overrides = {}
    for key, raw in out["params"].items():
        if key not in _PARAM_KEYS and key not in _MASS_KEYS:
            raise CliError(
                f"unknown [params] key {key!r}; known: "
                + ", ".join(_PARAM_KEYS + _MASS_KEYS)
            )
        try:
            overrides[key] = int(raw) if key == "n_flavors" else float(raw)
        except ValueError:
            raise CliError(f"malformed numeric for [params] {key}: {raw!r}")
    out["params"] = overrides
    for key, raw in out["grid"].items():
        if key not in ("n", "q_max", "scale"):
            raise CliError(f"unknown [grid] key {key!r}; known: n, q_max, scale")
        try:
            out["grid"][key] = int(raw) if key == "n" else float(raw)
        except ValueError:
            raise CliError(f"malformed numeric for [grid] {key}: {raw!r}")
    return out


def _merge(config, channel, states, grid_n, qmax):
    run = config["run"]
    channel = channel or run.get("channel")
    if not channel:
        raise CliError("no channel given (use --channel or [run] channel = ...)")
    if states is None:
        states = int(run["states"]) if "states" in run else None
    if grid_n is None:
        grid_n = config["grid"].get("n")
    if qmax is None:
        qmax = config["grid"].get("q_max")
    return channel, states, grid_n, qmax


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

_STATE_FIELDS = ("n", "label", "mass_mev", "f_v_mev", "f_v_unc_mev")


def _fmt(value, nd=1):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{nd}f}"
    return str(value)


def _render_states_table(doc: dict) -> str:
    lines = [f"channel: {doc['channel']}   grid: {doc['grid']}"]
    header = ("n", "state", "mass/MeV", "F_V/MeV", "dF_V/MeV")
    rows = [header]
    for st in doc["states"]:
        rows.append(tuple(_fmt(st[f]) for f in _STATE_FIELDS))
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        lines.append("  ".join(s.rjust(w) for s, w in zip(r, widths)))
    return "\n".join(lines)


def _render_states_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_STATE_FIELDS)
    for st in doc["states"]:
        writer.writerow(["" if st[f] is None else st[f] for f in _STATE_FIELDS])
    return buf.getvalue().rstrip("\n")


def _render_compare_table(doc: dict) -> str:
    lines = [f"channel: {doc['channel']}"]
    header = ("state", "computed/MeV", "model/MeV", "exp/MeV", "d(model)", "d(exp)")
    rows = [header]
    for r in doc["masses"]:
        rows.append(
            (
                r["label"],
                _fmt(r["computed_mev"]),
                _fmt(r["th_mev"]),
                _fmt(r["ex_mev"]),
                _fmt(r["delta_th_mev"]),
                _fmt(r["delta_ex_mev"]),
            )
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        lines.append("  ".join(s.rjust(w) for s, w in zip(r, widths)))
    lines.append("")
    header = ("state", "F_V computed/MeV", "F_V quoted/MeV")
    rows = [header]
    for r in doc["decay_constants"]:
        quoted = (
            "-"
            if r["reference_mev"] is None
            else f"{_fmt(r['reference_mev'], 0)} +- {_fmt(r['reference_unc_mev'], 0)}"
        )
        rows.append((r["label"], _fmt(r["computed_mev"]), quoted))
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        lines.append("  ".join(s.rjust(w) for s, w in zip(r, widths)))
    return "\n".join(lines)


def _emit(doc: dict, fmt: str, out: str | None, table_renderer):
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2)
    elif fmt == "csv":
        text = _render_states_csv(doc)
    else:
        text = table_renderer(doc)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _common(func):
    decorators = [
        click.option("--channel", help="channel label or alias, e.g. D*_s, ccbar, upsilon"),
        click.option("--states", type=int, help="number of states"),
        click.option("--grid-n", type=int, help="radial grid size"),
        click.option("--qmax", type=float, help="momentum cutoff in GeV"),
        click.option("--params", "params_file", type=click.Path(), help="config file"),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["table", "csv", "json"]),
            default="table",
            show_default=True,
        ),
        click.option("--out", type=click.Path(), help="write output to a file"),
        click.option("--server", help="base URL of a running service (default: in-process)"),
    ]
    for dec in reversed(decorators):
        func = dec(func)
    return func


def _base_request(channel, states, grid_n, qmax, params_file, default_states):
    config = read_config(params_file) if params_file else {"params": {}, "grid": {}, "run": {}}
    channel, states, grid_n, qmax = _merge(config, channel, states, grid_n, qmax)
    payload = {"channel": channel, "overrides": config["params"]}
    payload["n_states"] = states if states is not None else default_states
    if grid_n is not None:
        payload["grid_n"] = grid_n
    if qmax is not None:
        payload["q_max"] = qmax
    if "scale" in config["grid"]:
        payload["grid_scale"] = config["grid"]["scale"]
    return payload, config


@click.group()
def main():
    """Vector-meson spectra and decay constants over HTTP or in-process."""


@main.command()
@_common
def spectrum(channel, states, grid_n, qmax, params_file, fmt, out, server):
    """Mass spectrum and decay constants for one channel."""
    payload, _ = _base_request(channel, states, grid_n, qmax, params_file, 8)
    doc = _post(_client(server), "/spectrum", payload)
    _emit(doc, fmt, out, _render_states_table)


@main.command()
@_common
@click.option("--scan/--no-scan", default=True, show_default=True, help="run the uncertainty scan")
@click.option("--scan-fraction", type=float, default=0.10, show_default=True)
def decay(channel, states, grid_n, qmax, params_file, fmt, out, server, scan, scan_fraction):
    """Decay constants with optional parameter-scan uncertainties."""
    payload, _ = _base_request(channel, states, grid_n, qmax, params_file, 2)
    payload["scan"] = scan
    payload["scan_fraction"] = scan_fraction
    doc = _post(_client(server), "/decay", payload)
    _emit(doc, fmt, out, _render_states_table)


@main.command()
@_common
@click.option("--scan-fraction", type=float, default=0.10, show_default=True)
@click.option(
    "--sampler",
    type=click.Choice(["corner", "grid"]),
    default="corner",
    show_default=True,
)
def scan(channel, states, grid_n, qmax, params_file, fmt, out, server, scan_fraction, sampler):
    """Simultaneous parameter-variation scan of masses and F_V."""
    payload, _ = _base_request(channel, states, grid_n, qmax, params_file, 1)
    payload["fraction"] = scan_fraction
    payload["sampler"] = sampler
    payload.pop("grid_scale", None)
    doc = _post(_client(server), "/scan", payload)
    _emit(doc, fmt, out, _render_states_table)


@main.command()
@_common
@click.option("--tol-mev", type=float, default=1.0, show_default=True)
def converge(channel, states, grid_n, qmax, params_file, fmt, out, server, tol_mev):
    """Refine the grid until masses settle within a tolerance."""
    payload, _ = _base_request(channel, states, grid_n, qmax, params_file, 2)
    payload = {
        "channel": payload["channel"],
        "n_states": payload["n_states"],
        "tol_mev": tol_mev,
        "overrides": payload["overrides"],
    }
    doc = _post(_client(server), "/converge", payload)
    _emit(doc, fmt, out, _render_states_table)


@main.command()
@_common
def compare(channel, states, grid_n, qmax, params_file, fmt, out, server):
    """Computed masses and F_V side by side with reference values."""
    payload, _ = _base_request(channel, states, grid_n, qmax, params_file, 2)
    payload.pop("grid_scale", None)
    doc = _post(_client(server), "/compare", payload)
    if fmt == "csv":
        raise CliError("compare supports table or json output")
    _emit(doc, fmt, out, _render_compare_table)


if __name__ == "__main__":
    sys.exit(main())
