"""Command-line interface.

Exit status: 0 success, 2 configuration error, 3 infeasible, 4 I/O error,
5 numerical failure of the LP solver. Infeasibility also prints a one-line
JSON reason on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import published
from .analysis import (DC_RULES, DEFAULT_DC_SWEEP, SearchSpec, UepProfile, binding, capacity,
                       method1, method2, select_by_rate, threshold_gain, weighted_average)
from .code_model import build_ra_parity_check, write_alist
from .curves import Channel, default_grid
from .errors import ConstructionError, DomainError, InfeasibleError, LpNumericalError
from .lp import (DEFAULT_DMAX, DEFAULT_MARGIN, certificate_errors, cn_inverse, parse_dc, sweep_lp,
                 vn_uep)

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4, 5

DEFAULTS = {
    "channel": "bec",
    "sigma": None,
    "sigma1": None,
    "sigma2": None,
    "dc": None,
    "dc_sweep": f"{DEFAULT_DC_SWEEP.start}..{DEFAULT_DC_SWEEP.stop - 1}",
    "dmax": DEFAULT_DMAX,
    "grid": 1000,
    "margin": DEFAULT_MARGIN,
    "method": 1,
    "rule": "auto",
    "out": ".",
    "format": None,
    "seed": 0,
    "step": 0.001,
    "tol": 1e-4,
    "n": 512,
    "table": 1,
    "panel": "left",
    "dc_source": "rule",
}

FORMATS = {"curve": "csv", "optimize": "json", "gain": "csv,json", "reproduce": "csv",
           "matrix": "alist"}


class ConfigError(Exception):
    pass


def fmt(v):
    """12 significant digits for floats, everything else as-is."""
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return v


def _round(obj):
    """Round every float in a JSON-able tree to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if not math.isfinite(v) else float(f"{v:.12g}")
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------ argument parsing


def _common(p: argparse.ArgumentParser):
    s = argparse.SUPPRESS
    p.add_argument("--channel", choices=["bec", "bsc"], default=s)
    p.add_argument("--q", "--eps", dest="sigma", type=float, default=s,
                   help="uniform erasure / crossover probability")
    p.add_argument("--q1", "--eps1", dest="sigma1", type=float, default=s,
                   help="parity-bit channel probability")
    p.add_argument("--q2", "--eps2", dest="sigma2", type=float, default=s,
                   help="information-bit channel probability")
    p.add_argument("--dc", type=int, default=s, help="single check degree")
    p.add_argument("--dc-sweep", dest="dc_sweep", default=s, help="check degree range LO..HI")
    p.add_argument("--rule", choices=DC_RULES, default=s, help="d_c selection rule")
    p.add_argument("--dmax", type=int, default=s)
    p.add_argument("--grid", type=int, default=s, help="number of grid points")
    p.add_argument("--margin", type=float, default=s)
    p.add_argument("--step", type=float, default=s, help="sigma1 search step")
    p.add_argument("--tol", type=float, default=s, help="bisection tolerance")
    p.add_argument("--out", default=s, help="output directory")
    p.add_argument("--format", default=s, help="comma-separated output formats")
    p.add_argument("--seed", type=int, default=s)
    p.add_argument("--config", default=s, help="JSON config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uepexit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    s = argparse.SUPPRESS
    _common(sub.add_parser("curve", help="EXIT curves as CSV and SVG"))
    _common(sub.add_parser("optimize", help="LP-optimized degree distribution"))
    g = sub.add_parser("gain", help="threshold gain by method 1 or 2")
    _common(g)
    g.add_argument("--method", type=int, choices=[1, 2], default=s)
    r = sub.add_parser("reproduce", help="recompute a published table")
    _common(r)
    r.add_argument("--table", type=int, choices=[1, 2], default=s)
    r.add_argument("--panel", choices=["left", "right"], default=s)
    r.add_argument("--dc-source", dest="dc_source", choices=["rule", "matched"], default=s)
    mx = sub.add_parser("matrix", help="finite RA parity-check matrix in alist format")
    _common(mx)
    mx.add_argument("--n", type=int, default=s, help="code length")
    return ap


def resolve(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    given = vars(args)
    path = given.get("config")
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except ValueError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = sorted(set(data) - set(DEFAULTS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        cfg.update(data)
    cfg.update({k: v for k, v in given.items() if k != "config"})
    cfg["command"] = given["command"]
    try:
        cfg["channel"] = Channel.parse(cfg["channel"])
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    hi = 0.5 if cfg["channel"] is Channel.BSC else 1.0
    for key in ("sigma", "sigma1", "sigma2"):
        v = cfg[key]
        if v is not None and not (isinstance(v, (int, float)) and 0.0 <= v <= hi):
            raise ConfigError(f"{key} = {v} must lie in [0, {hi}]")
    if cfg["rule"] not in DC_RULES:
        raise ConfigError(f"unknown rule {cfg['rule']!r}")
    try:
        cfg["dcs"] = parse_dc(cfg["dc"] if cfg["dc"] is not None else cfg["dc_sweep"])
    except ValueError:
        raise ConfigError(f"bad d_c range {cfg['dc_sweep']!r}") from None
    if not cfg["dcs"] or min(cfg["dcs"]) < 4:
        raise ConfigError("check degrees must be >= 4")
    fmts = cfg["format"] or FORMATS[cfg["command"]]
    cfg["formats"] = [f.strip() for f in str(fmts).split(",") if f.strip()]
    try:
        cfg["grid_spec"] = default_grid(cfg["channel"], int(cfg["grid"]))
        cfg["search"] = SearchSpec(sigma1_step=float(cfg["step"]), tol=float(cfg["tol"]))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# ------------------------------------------------------------ helpers


def _out_dir(cfg) -> Path:
    d = Path(cfg["out"])
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write(path: Path, text: str):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _csv(rows, fields) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: fmt(r.get(k, "")) for k in fields})
    return buf.getvalue()


def _need(cfg, *keys):
    missing = [k for k in keys if cfg[k] is None]
    if missing:
        names = {"sigma": "--q/--eps", "sigma1": "--q1/--eps1", "sigma2": "--q2/--eps2"}
        raise ConfigError("missing " + ", ".join(names.get(k, k) for k in missing))


def _lp_kwargs(cfg):
    return dict(d_max=int(cfg["dmax"]), grid=cfg["grid_spec"], margin=float(cfg["margin"]))


def design(cfg):
    """Pick the code for the configured channel(s).

    Returns (d_c, sweep table, GainReport or None). A uniform design with the
    Method-1 rules reuses ``method1``; a UEP pair or a noiseless channel uses
    the best-rate rule.
    """
    ch, kw = cfg["channel"], _lp_kwargs(cfg)
    pair = cfg["sigma1"] is not None and cfg["sigma2"] is not None
    if cfg["sigma"] is not None and cfg["sigma"] > 0 and not (pair and cfg["command"] == "optimize"):
        rep = method1(ch, cfg["sigma"], cfg["dcs"], search=cfg["search"], rule=cfg["rule"], **kw)
        table = sweep_lp(ch, cfg["sigma"], cfg["sigma"], [rep.dist.d_c], **kw)
        return rep.dist.d_c, table, rep
    if pair:
        s1, s2 = cfg["sigma1"], cfg["sigma2"]
    elif cfg["sigma"] is not None:
        s1 = s2 = cfg["sigma"]
    else:
        raise ConfigError("give --q/--eps or both of --q1/--q2")
    table = sweep_lp(ch, s1, s2, cfg["dcs"], **kw)
    cap = capacity(ch, s2) if cfg["rule"] == "capacity-rate" and s1 == s2 else None
    return select_by_rate(table, cap), table, None


# ------------------------------------------------------------ commands


def cmd_curve(cfg) -> list:
    _need(cfg, "sigma")
    ch, q = cfg["channel"], cfg["sigma"]
    if cfg["sigma"] > 0:
        dc, table, rep = design(cfg)
        dist = rep.dist
        pair = (cfg["sigma1"], cfg["sigma2"]) if cfg["sigma1"] is not None else (rep.sigma1, rep.sigma2)
    else:
        cfg = dict(cfg, sigma1=None, sigma2=None)
        dc, table, _ = design(cfg)
        dist = table[dc].dist
        pair = (0.0, 0.0)
    if pair[0] is None or pair[1] is None:
        raise ConfigError("give both --q1 and --q2")
    t = cfg["grid_spec"].points()
    uni = vn_uep(ch, q, q, dist, t)
    uep = vn_uep(ch, pair[0], pair[1], dist, t)
    cn = cn_inverse(ch, dist.d_c, t)
    out = _out_dir(cfg)
    written = []
    stem = f"curve_{ch.value}"
    if "csv" in cfg["formats"]:
        rows = [{"i_a": a, "vn_uniform": b, "vn_uep": c, "cn_inverse": d}
                for a, b, c, d in zip(t, uni, uep, cn)]
        p = out / f"{stem}.csv"
        _write(p, _csv(rows, ["i_a", "vn_uniform", "vn_uep", "cn_inverse"]))
        written.append(p)
    if "json" in cfg["formats"]:
        p = out / f"{stem}.json"
        _write(p, dumps({"channel": ch.value, "sigma": q, "sigma1": pair[0], "sigma2": pair[1],
                         "dist": dist.to_dict(), "grid": cfg["grid_spec"].to_dict(),
                         "i_a": t.tolist(), "vn_uniform": uni.tolist(), "vn_uep": uep.tolist(),
                         "cn_inverse": cn.tolist()}))
        written.append(p)
    if "svg" in cfg["formats"]:
        from .svg import exit_chart
        name = "q" if ch is Channel.BEC else "eps"
        series = [(f"VN uniform {name}={q:g}", t, uni),
                  (f"VN UEP ({pair[0]:g}, {pair[1]:g})", t, uep),
                  (f"CN inverse d_c={dist.d_c}", t, cn)]
        ends = [(float(x[0]), float(y[0]), lab) for lab, x, y in series]
        ends += [(float(x[-1]), float(y[-1]), lab) for lab, x, y in series]
        p = out / f"{stem}.svg"
        _write(p, exit_chart(series, title=f"EXIT chart, {ch.value.upper()}", markers=ends))
        written.append(p)
    return written


def cmd_optimize(cfg) -> list:
    dc, table, rep = design(cfg)
    sol = table[dc]
    doc = {
        "channel": cfg["channel"].value,
        "rule": rep.rule if rep is not None else ("capacity-rate" if cfg["rule"] == "capacity-rate"
                                                  else "rate"),
        "selected": sol.to_dict(),
        "certificate_errors": certificate_errors(sol),
        "sweep": ({str(k): v for k, v in rep.candidates.items()} if rep is not None else
                  {str(k): {"status": s.status, "rate": s.rate,
                            "binding": binding(s) if s.status == "optimal" else None}
                   for k, s in table.items()}),
        "settings": {"d_max": cfg["dmax"], "grid": cfg["grid_spec"].to_dict(),
                     "margin": cfg["margin"], "sigma1": sol.problem.sigma1,
                     "sigma2": sol.problem.sigma2},
    }
    p = _out_dir(cfg) / f"optimize_{cfg['channel'].value}.json"
    _write(p, dumps(doc))
    return [p]


def cmd_gain(cfg) -> list:
    ch, kw = cfg["channel"], _lp_kwargs(cfg)
    if int(cfg["method"]) == 1:
        _need(cfg, "sigma")
        rep = method1(ch, cfg["sigma"], cfg["dcs"], search=cfg["search"], rule=cfg["rule"], **kw)
    else:
        _need(cfg, "sigma1", "sigma2")
        rep = method2(ch, UepProfile(cfg["sigma1"], cfg["sigma2"]), cfg["dcs"],
                      search=cfg["search"], rule=cfg["rule"], **kw)
    out = _out_dir(cfg)
    stem = f"gain_{ch.value}_m{rep.method}"
    written = []
    if "json" in cfg["formats"]:
        p = out / f"{stem}.json"
        _write(p, dumps(rep.to_dict()))
        written.append(p)
    if "csv" in cfg["formats"]:
        p = out / f"{stem}.csv"
        _write(p, rep.to_csv(fmt=fmt))
        written.append(p)
    return written


REPRO_FIELDS = ("row", "status", "d_c", "published_rate", "rate", "delta_rate", "published_uniform",
                "uniform", "delta_uniform", "published_sigma1", "sigma1", "delta_sigma1",
                "published_sigma2", "sigma2", "delta_sigma2", "published_average", "average",
                "delta_average", "published_gain", "gain", "delta_gain", "arith_average",
                "arith_gain", "reason")


def _repro_row(cfg, ch, method, k, row) -> dict:
    kw = _lp_kwargs(cfg)
    dcs = [row.matched_dc] if cfg["dc_source"] == "matched" else cfg["dcs"]
    if method == 1:
        rep = method1(ch, row.uniform, dcs, search=cfg["search"], rule=cfg["rule"], **kw)
    else:
        rep = method2(ch, UepProfile(row.sigma1, row.sigma2), dcs, search=cfg["search"], **kw)
    # published inputs fed through the gain arithmetic
    arith_avg = weighted_average(UepProfile(row.sigma1, row.sigma2), row.rate)
    out = {"row": k, "status": "ok", "d_c": rep.dist.d_c,
           "arith_average": arith_avg, "arith_gain": threshold_gain(arith_avg, row.uniform)}
    pairs = [("rate", row.rate, rep.rate), ("uniform", row.uniform, rep.baseline),
             ("sigma1", row.sigma1, rep.sigma1), ("sigma2", row.sigma2, rep.sigma2),
             ("average", row.average, rep.weighted_average), ("gain", row.gain, rep.gain_percent)]
    for name, ref, got in pairs:
        out[f"published_{name}"] = ref
        out[name] = got
        out[f"delta_{name}"] = got - ref
    return out


def cmd_reproduce(cfg) -> list:
    chan, method, rows = published.table(int(cfg["table"]), cfg["panel"])
    ch = Channel.parse(chan)
    cfg = dict(cfg, channel=ch, grid_spec=default_grid(ch, int(cfg["grid"])))
    results = []
    for k, row in enumerate(rows, 1):
        try:
            results.append(_repro_row(cfg, ch, method, k, row))
        except (InfeasibleError, LpNumericalError, DomainError) as exc:
            results.append({"row": k, "status": type(exc).__name__, "reason": str(exc)})
    panel = f"_{cfg['panel']}" if int(cfg["table"]) == 1 else ""
    p = _out_dir(cfg) / f"table{cfg['table']}{panel}.csv"
    _write(p, _csv(results, REPRO_FIELDS))
    written = [p]
    if "json" in cfg["formats"]:
        pj = p.with_suffix(".json")
        _write(pj, dumps(results))
        written.append(pj)
    return written


def cmd_matrix(cfg) -> list:
    dc, table, rep = design(cfg)
    dist = rep.dist if rep is not None else table[dc].dist
    mat = build_ra_parity_check(dist, int(cfg["n"]), seed=int(cfg["seed"]))
    p = _out_dir(cfg) / f"ra_{cfg['channel'].value}_dc{dc}_n{cfg['n']}.alist"
    _write(p, write_alist(mat))
    return [p]


COMMANDS = {"curve": cmd_curve, "optimize": cmd_optimize, "gain": cmd_gain,
            "reproduce": cmd_reproduce, "matrix": cmd_matrix}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = resolve(args)
        written = COMMANDS[cfg["command"]](cfg)
    except (ConfigError, DomainError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as exc:
        print(json.dumps({"status": "infeasible", "reason": str(exc)}), file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LpNumericalError as exc:
        print(json.dumps({"status": "numerical", "reason": str(exc)}), file=sys.stderr)
        return EXIT_NUMERICAL
    for p in written:
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
