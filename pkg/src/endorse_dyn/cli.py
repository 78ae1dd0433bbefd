"""Command-line surface: simulate, sweep, bifurcate, fit, compare, convert.

Every command resolves its configuration from three layers (defaults, then
a key=value --config file, then explicit flags), writes all outputs into
--out, and drops a `run.json` there with the fully resolved configuration,
so rerunning with the same run.json settings reproduces every file byte
for byte.  Exit codes: 0 success, 1 numeric/convergence failure, 2 usage,
format, or domain error.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .core import ModelParams, uniform_initial
from .data import (
    LABEL_RE,
    InteractionSequence,
    _period_keys,
    aggregate_counts,
    convert_rankings_topk,
    load_edge_list,
    restrict_top_placers,
    save_edge_list,
)
from .errors import ConfigError, DomainError, FormatError, NumericError
from .inference import compare_scores, criticality_report, fit
from .sim import mean_gamma, run, variance_sweep
from .stability import two_group_equilibria

REQUIRED = object()

TABLE1_HEADER = "dataset,score,lambda,se_lambda,beta1,se_beta1,beta2,se_beta2,loglik"
TABLE2_HEADER = "dataset,score,beta1,se_beta1,beta1_critical,classification,significant"


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def _parse_config_file(path: str) -> dict:
    cfg = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def _parse_bool(value: str) -> bool:
    low = str(value).strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


def _parse_grid(text: str) -> list[float]:
    """START:STOP:NUM -> NUM evenly spaced values, endpoints included."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be START:STOP:NUM, got {text!r}")
    try:
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"grid must be START:STOP:NUM with numeric fields, got {text!r}")
    if num < 1:
        raise ConfigError("grid NUM must be >= 1")
    return [float(x) for x in np.linspace(start, stop, num)]


_CASTS = {
    "int": int,
    "float": float,
    "str": str,
    "bool": _parse_bool,
    "grid": _parse_grid,
}


def _resolve(spec: dict, flags: dict, config_path: str | None) -> dict:
    """Layer defaults, config file, and flags; cast; demand required keys."""
    cfg_file = _parse_config_file(config_path) if config_path else {}
    unknown = set(cfg_file) - set(spec)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for key, (cast_name, default) in spec.items():
        flag_val = flags.get(key)
        if flag_val is not None:
            out[key] = _CASTS[cast_name](flag_val) if isinstance(flag_val, str) else flag_val
        elif key in cfg_file:
            out[key] = _CASTS[cast_name](cfg_file[key])
        elif default is REQUIRED:
            raise click.UsageError(f"missing required key: {key}")
        else:
            out[key] = default
    return out


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _write_run_json(outdir: Path, command: str, cfg: dict) -> None:
    payload = {
        "command": command,
        "config": _jsonable(cfg),
        "version": __version__,
    }
    (outdir / "run.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _outdir(cfg: dict) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt(x) -> str:
    return repr(float(x))


def _guarded(fn):
    """Map the error taxonomy onto exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, FormatError, ConfigError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except OSError as exc:
            click.echo(f"io error: {exc}", err=True)
            sys.exit(2)
        except NumericError as exc:
            click.echo(f"numeric failure: {exc}", err=True)
            if exc.diagnostics:
                click.echo(json.dumps(_jsonable(exc.diagnostics), indent=2, sort_keys=True), err=True)
            sys.exit(1)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# shared options
# ---------------------------------------------------------------------------

_opt_config = click.option("--config", "config_path", type=str, default=None,
                           help="key=value file; flags override it")
_opt_out = click.option("--out", type=str, default=None, help="output directory")
_opt_score = click.option("--score", type=str, default=None,
                          help="rootdegree | pagerank | springrank")
_opt_n = click.option("--n", type=int, default=None, help="number of nodes")
_opt_m = click.option("--m", type=int, default=None, help="endorsements per step")
_opt_lambda = click.option("--lambda", "lam", type=float, default=None,
                           help="memory parameter in [0, 1]")
_opt_beta1 = click.option("--beta1", type=float, default=None, help="prestige weight")
_opt_beta2 = click.option("--beta2", type=float, default=None, help="proximity weight")
_opt_steps = click.option("--steps", type=int, default=None, help="simulation steps")
_opt_seed = click.option("--seed", type=int, default=None, help="base RNG seed")


@click.group()
@click.version_option(version=__version__, prog_name="endorse-dyn")
def main():
    """Endorsement dynamics: simulation, regime analysis, and fitting."""


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIM_SPEC = {
    "score": ("str", REQUIRED),
    "n": ("int", REQUIRED),
    "m": ("int", 1),
    "lambda": ("float", REQUIRED),
    "beta1": ("float", 0.0),
    "beta2": ("float", 0.0),
    "steps": ("int", 2000),
    "seed": ("int", 0),
    "out": ("str", REQUIRED),
}


@main.command("simulate")
@_opt_config
@_opt_score
@_opt_n
@_opt_m
@_opt_lambda
@_opt_beta1
@_opt_beta2
@_opt_steps
@_opt_seed
@_opt_out
@_guarded
def cmd_simulate(config_path, score, n, m, lam, beta1, beta2, steps, seed, out):
    """Run one trajectory; write trajectory.csv and final_adjacency.csv."""
    cfg = _resolve(_SIM_SPEC, {
        "score": score, "n": n, "m": m, "lambda": lam, "beta1": beta1,
        "beta2": beta2, "steps": steps, "seed": seed, "out": out,
    }, config_path)
    params = ModelParams(
        lam=cfg["lambda"], beta=(cfg["beta1"], cfg["beta2"]), m=cfg["m"],
        score_kind=cfg["score"], seed=cfg["seed"],
    )
    traj = run(params, a0=uniform_initial(cfg["n"], cfg["m"]), steps=cfg["steps"])
    outdir = _outdir(cfg)
    with open(outdir / "trajectory.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("t,node,gamma\n")
        for t in range(traj.steps):
            for node in range(cfg["n"]):
                fh.write(f"{t},{node},{_fmt(traj.gamma_t[t, node])}\n")
    with open(outdir / "final_adjacency.csv", "w", encoding="utf-8", newline="") as fh:
        for row in traj.a_final:
            fh.write(",".join(_fmt(x) for x in row) + "\n")
    _write_run_json(outdir, "simulate", cfg)
    click.echo(f"wrote {outdir}/trajectory.csv ({traj.steps} steps)")


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_SPEC = {
    "score": ("str", REQUIRED),
    "n": ("int", REQUIRED),
    "m": ("int", 1),
    "lambda": ("float", REQUIRED),
    "grid_beta1": ("grid", REQUIRED),
    "grid_beta2": ("grid", [0.0]),
    "steps": ("int", 2000),
    "window": ("int", 500),
    "seed": ("int", 0),
    "out": ("str", REQUIRED),
}


@main.command("sweep")
@_opt_config
@_opt_score
@_opt_n
@_opt_m
@_opt_lambda
@click.option("--grid-beta1", type=str, default=None, help="START:STOP:NUM")
@click.option("--grid-beta2", type=str, default=None, help="START:STOP:NUM")
@_opt_steps
@click.option("--window", type=int, default=None, help="averaging window (final steps)")
@_opt_seed
@_opt_out
@_guarded
def cmd_sweep(config_path, score, n, m, lam, grid_beta1, grid_beta2, steps,
              window, seed, out):
    """Long-run rank-variance grid over (beta1, beta2); one row per cell."""
    cfg = _resolve(_SWEEP_SPEC, {
        "score": score, "n": n, "m": m, "lambda": lam, "grid_beta1": grid_beta1,
        "grid_beta2": grid_beta2, "steps": steps, "window": window,
        "seed": seed, "out": out,
    }, config_path)
    params = ModelParams(lam=cfg["lambda"], m=cfg["m"], score_kind=cfg["score"],
                         seed=cfg["seed"])
    rows = variance_sweep(params, cfg["n"], cfg["grid_beta1"], cfg["grid_beta2"],
                          steps=cfg["steps"], window=cfg["window"])
    outdir = _outdir(cfg)
    with open(outdir / "variance.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("beta1,beta2,variance\n")
        for b1, b2, v in rows:
            fh.write(f"{_fmt(b1)},{_fmt(b2)},{_fmt(v)}\n")
    _write_run_json(outdir, "sweep", cfg)
    click.echo(f"wrote {outdir}/variance.csv ({len(rows)} cells)")


# ---------------------------------------------------------------------------
# bifurcate
# ---------------------------------------------------------------------------

_BIF_SPEC = {
    "score": ("str", REQUIRED),
    "n": ("int", REQUIRED),
    "m": ("int", 1),
    "grid_beta1": ("grid", REQUIRED),
    "beta2": ("float", 0.0),
    "overlay": ("bool", False),
    "lambda": ("float", 0.9995),
    "steps": ("int", 50_000),
    "window": ("int", 500),
    "seed": ("int", 0),
    "out": ("str", REQUIRED),
}


@main.command("bifurcate")
@_opt_config
@_opt_score
@_opt_n
@_opt_m
@click.option("--grid-beta1", type=str, default=None, help="START:STOP:NUM")
@_opt_beta2
@click.option("--overlay", is_flag=True, default=None,
              help="also simulate long-run gamma at each beta1")
@_opt_lambda
@_opt_steps
@click.option("--window", type=int, default=None, help="overlay averaging window")
@_opt_seed
@_opt_out
@_guarded
def cmd_bifurcate(config_path, score, n, m, grid_beta1, beta2, overlay, lam,
                  steps, window, seed, out):
    """Two-group equilibrium branches over beta1, with stability flags.

    Scans every elite size k = 1..n-1; egalitarian roots are reported once
    per beta1 with k_elite = 0.  With --overlay, long-memory simulations
    (lambda and steps configurable) add observed long-run gamma points
    for comparison against the stable branches.
    """
    cfg = _resolve(_BIF_SPEC, {
        "score": score, "n": n, "m": m, "grid_beta1": grid_beta1, "beta2": beta2,
        "overlay": overlay, "lambda": lam, "steps": steps, "window": window,
        "seed": seed, "out": out,
    }, config_path)
    params = ModelParams(lam=cfg["lambda"], beta=(0.0, cfg["beta2"]), m=cfg["m"],
                         score_kind=cfg["score"], seed=cfg["seed"])
    nn = cfg["n"]
    grid = cfg["grid_beta1"]
    # complementary elite sizes k and n-k rediscover the same root after
    # canonicalization, so collect per (beta1, k_elite) and dedup by value
    kept: dict = {}
    for k in range(1, nn):
        for branch in two_group_equilibria(cfg["score"], params, nn, k, grid):
            for b1, eq in zip(branch.beta1, branch.equilibria):
                group = kept.setdefault((round(float(b1), 12), eq.k_elite), [])
                scale = 1.0 + abs(eq.a) + abs(eq.b)
                if any(abs(eq.a - a) + abs(eq.b - b) < 1e-6 * scale for _, a, b in group):
                    continue
                group.append((eq, eq.a, eq.b))
    rows = [
        (b1, k_el, eq.a, eq.b, eq.stable, eq.max_eig_real)
        for (b1, k_el), group in kept.items()
        for eq, _, _ in group
    ]
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    outdir = _outdir(cfg)
    with open(outdir / "branches.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("beta1,k_elite,a,b,stable,max_eig_real\n")
        for b1, k, a, b, stable, mer in rows:
            fh.write(f"{_fmt(b1)},{k},{_fmt(a)},{_fmt(b)},"
                     f"{'true' if stable else 'false'},{_fmt(mer)}\n")
    if cfg["overlay"]:
        with open(outdir / "overlay.csv", "w", encoding="utf-8", newline="") as fh:
            fh.write("beta1,node,gamma\n")
            for idx, b1 in enumerate(grid):
                p = params.with_(beta=(float(b1), cfg["beta2"]),
                                 seed=cfg["seed"] + idx)
                traj = run(p, a0=uniform_initial(nn, cfg["m"]), steps=cfg["steps"])
                gam = mean_gamma(traj, window=cfg["window"])
                for node in range(nn):
                    fh.write(f"{_fmt(b1)},{node},{_fmt(gam[node])}\n")
    _write_run_json(outdir, "bifurcate", cfg)
    click.echo(f"wrote {outdir}/branches.csv ({len(rows)} rows)")


# ---------------------------------------------------------------------------
# fit / compare
# ---------------------------------------------------------------------------

_FIT_SPEC = {
    "data": ("str", REQUIRED),
    "score": ("str", REQUIRED),
    "warm_start": ("str", None),
    "restarts": ("int", 5),
    "out": ("str", REQUIRED),
}

_COMPARE_SPEC = {
    "data": ("str", REQUIRED),
    "warm_start": ("str", None),
    "restarts": ("int", 5),
    "out": ("str", REQUIRED),
}


def _load_sequence(data_path: str, warm_start: str | None) -> InteractionSequence:
    seq = load_edge_list(data_path)
    if warm_start:
        ws = load_edge_list(warm_start)
        a0 = np.zeros((seq.n, seq.n))
        index = {lab: i for i, lab in enumerate(seq.node_labels)}
        dropped = set()
        agg = aggregate_counts(ws)
        for i, src in enumerate(ws.node_labels):
            for j, dst in enumerate(ws.node_labels):
                if agg[i, j] == 0:
                    continue
                if src in index and dst in index:
                    a0[index[src], index[dst]] += agg[i, j]
                else:
                    dropped.add(src if src not in index else dst)
        if dropped:
            click.echo(
                f"warm start: dropped {len(dropped)} labels absent from the data",
                err=True,
            )
        seq = seq.with_a0(a0)
    return seq


def _used_m_bar(seq: InteractionSequence) -> float:
    totals = seq.m_t if seq.a0 is not None else seq.m_t[1:]
    return float(np.mean(totals))


def _fit_json(fr) -> dict:
    return {
        "score_kind": fr.score_kind,
        "lambda_hat": fr.lambda_hat,
        "beta_hat": list(fr.beta_hat),
        "se": None if fr.se is None else list(fr.se),
        "loglik": fr.loglik,
        "halflife": fr.halflife,
        "grad_norm": fr.grad_norm,
        "restarts": fr.restarts,
        "alpha_p": fr.alpha_p,
        "alpha_s": fr.alpha_s,
        "warnings": list(fr.warnings),
    }


def _table1_row(dataset: str, fr) -> str:
    se = fr.se if fr.se is not None else (float("nan"),) * 3
    return ",".join([
        dataset, fr.score_kind, _fmt(fr.lambda_hat), _fmt(se[0]),
        _fmt(fr.beta_hat[0]), _fmt(se[1]), _fmt(fr.beta_hat[1]), _fmt(se[2]),
        _fmt(fr.loglik),
    ])


def _table2_row(dataset: str, rep) -> str:
    return ",".join([
        dataset, rep.score_kind, _fmt(rep.beta1_hat), _fmt(rep.se_beta1),
        _fmt(rep.beta1_critical), rep.classification,
        "true" if rep.significant else "false",
    ])


@main.command("fit")
@_opt_config
@click.option("--data", type=str, default=None, help="interchange CSV")
@_opt_score
@click.option("--warm-start", type=str, default=None,
              help="edge CSV aggregated into A(0)")
@click.option("--restarts", type=int, default=None, help="lambda restarts")
@_opt_out
@_guarded
def cmd_fit(config_path, data, score, warm_start, restarts, out):
    """Maximum-likelihood fit of (lambda, beta) for one score kind."""
    cfg = _resolve(_FIT_SPEC, {
        "data": data, "score": score, "warm_start": warm_start,
        "restarts": restarts, "out": out,
    }, config_path)
    seq = _load_sequence(cfg["data"], cfg["warm_start"])
    fr = fit(seq, cfg["score"], restarts=cfg["restarts"])
    dataset = Path(cfg["data"]).stem
    outdir = _outdir(cfg)
    (outdir / "fit.json").write_text(
        json.dumps(_fit_json(fr), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    with open(outdir / "table1.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(TABLE1_HEADER + "\n")
        fh.write(_table1_row(dataset, fr) + "\n")
    with open(outdir / "criticality.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(TABLE2_HEADER + "\n")
        if fr.se is not None:
            rep = criticality_report(fr, seq.n, _used_m_bar(seq))
            fh.write(_table2_row(dataset, rep) + "\n")
    _write_run_json(outdir, "fit", cfg)
    for w in fr.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(
        f"{dataset} {fr.score_kind}: lambda={fr.lambda_hat:.4f} "
        f"beta=({fr.beta_hat[0]:.4f}, {fr.beta_hat[1]:.4f}) loglik={fr.loglik:.4f}"
    )


@main.command("compare")
@_opt_config
@click.option("--data", type=str, default=None, help="interchange CSV")
@click.option("--warm-start", type=str, default=None,
              help="edge CSV aggregated into A(0)")
@click.option("--restarts", type=int, default=None, help="lambda restarts")
@_opt_out
@_guarded
def cmd_compare(config_path, data, warm_start, restarts, out):
    """Fit all three score kinds and rank them by likelihood."""
    cfg = _resolve(_COMPARE_SPEC, {
        "data": data, "warm_start": warm_start, "restarts": restarts, "out": out,
    }, config_path)
    seq = _load_sequence(cfg["data"], cfg["warm_start"])
    table = compare_scores(seq, restarts=cfg["restarts"])
    dataset = Path(cfg["data"]).stem
    outdir = _outdir(cfg)
    payload = {
        "best": table.best,
        "errors": table.errors,
        "results": [_fit_json(fr) for fr in table.results],
    }
    (outdir / "compare.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    m_bar = _used_m_bar(seq)
    with open(outdir / "table1.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(TABLE1_HEADER + "\n")
        for fr in table.results:
            fh.write(_table1_row(dataset, fr) + "\n")
    with open(outdir / "criticality.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(TABLE2_HEADER + "\n")
        for fr in table.results:
            if fr.se is not None:
                fh.write(_table2_row(dataset, criticality_report(fr, seq.n, m_bar)) + "\n")
    _write_run_json(outdir, "compare", cfg)
    for kind, msg in sorted(table.errors.items()):
        click.echo(f"warning: {kind} failed: {msg}", err=True)
    click.echo(f"best score kind for {dataset}: {table.best}")


# ---------------------------------------------------------------------------
# convert
# ---------------------------------------------------------------------------

_CONVERT_SPEC = {
    "data": ("str", None),
    "rankings": ("str", None),
    "k": ("int", 5),
    "top_count": ("int", None),
    "window": ("str", None),
    "out": ("str", REQUIRED),
}


def _load_ranking_csv(path: str):
    """CSV `period,source,target,rank` -> per-period rank matrices."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty file, expected header period,source,target,rank")
        if tuple(h.strip() for h in header) != ("period", "source", "target", "rank"):
            raise FormatError(
                f"expected header period,source,target,rank, got {','.join(header)}",
                line=1,
            )
        entries = {}
        nodes = set()
        for lineno, row in enumerate(reader, start=2):
            if row == []:
                continue
            if len(row) != 4:
                raise FormatError(f"expected 4 fields, got {len(row)}", line=lineno)
            period, src, dst, rank = (f.strip() for f in row)
            for label in (src, dst):
                if not LABEL_RE.match(label):
                    raise FormatError(f"bad node label {label!r}", line=lineno)
            try:
                r = int(rank)
            except ValueError:
                raise FormatError(f"rank must be an integer, got {rank!r}", line=lineno)
            if (period, src, dst) in entries:
                raise FormatError(f"duplicate ranking for {src}->{dst}", line=lineno)
            entries[(period, src, dst)] = r
            nodes.add(src)
            nodes.add(dst)
    if not entries:
        raise FormatError("no rankings")
    labels = tuple(sorted(nodes))
    index = {lab: i for i, lab in enumerate(labels)}
    distinct = list({p for p, _, _ in entries})
    periods = [p for _, p in sorted(zip(_period_keys(distinct), distinct))]
    n = len(labels)
    mats = []
    for p in periods:
        mat = np.zeros((n, n), dtype=int)
        for (pp, src, dst), r in entries.items():
            if pp == p:
                mat[index[src], index[dst]] = r
        mats.append(mat)
    return mats, labels, tuple(periods)


@main.command("convert")
@_opt_config
@click.option("--data", type=str, default=None, help="interchange CSV to transform")
@click.option("--rankings", type=str, default=None,
              help="CSV period,source,target,rank to convert via top-k")
@click.option("--k", type=int, default=None, help="top-k cutoff for rankings")
@click.option("--top-count", type=int, default=None,
              help="keep this many most-endorsed nodes")
@click.option("--window", type=str, default=None, help="period window LO:HI")
@_opt_out
@_guarded
def cmd_convert(config_path, data, rankings, k, top_count, window, out):
    """Normalize and filter data into the interchange format."""
    cfg = _resolve(_CONVERT_SPEC, {
        "data": data, "rankings": rankings, "k": k, "top_count": top_count,
        "window": window, "out": out,
    }, config_path)
    if (cfg["data"] is None) == (cfg["rankings"] is None):
        raise click.UsageError("provide exactly one of --data or --rankings")
    if cfg["rankings"]:
        mats, labels, periods = _load_ranking_csv(cfg["rankings"])
        seq = convert_rankings_topk(mats, k=cfg["k"], node_labels=labels,
                                    period_labels=periods)
    else:
        seq = load_edge_list(cfg["data"])
    if cfg["top_count"] is not None:
        win = None
        if cfg["window"] is not None:
            parts = str(cfg["window"]).split(":")
            if len(parts) != 2:
                raise ConfigError(f"window must be LO:HI, got {cfg['window']!r}")
            win = (parts[0], parts[1])
        seq = restrict_top_placers(seq, cfg["top_count"], window=win)
    outdir = _outdir(cfg)
    save_edge_list(seq, outdir / "edges.csv")
    _write_run_json(outdir, "convert", cfg)
    click.echo(f"wrote {outdir}/edges.csv ({seq.n} nodes, {seq.t_len} periods)")


if __name__ == "__main__":
    main()
