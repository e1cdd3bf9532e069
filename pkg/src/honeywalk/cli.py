"""
Command-line front end.

    honeywalk [--out DIR] [--format csv|json] [--threads N] [--seed S] COMMAND ...

Commands: ``simulate``, ``limitmap``, ``haar-average``, ``check-coin``,
``spread``. Exit status is 0 on success, 1 when a coin pair fails the
localization condition, 2 on configuration errors and 3 on numerical
aborts (degenerate quadrature point, window overflow).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coin import CoinPair, check_localization_condition, coin_from_name
from .haar import RNG_ALGORITHM, average_probability, haar_average_exact
from .limitmap import (
    DEFAULT_GRID_3,
    DEFAULT_GRID_4,
    DEFAULT_GRID_LINE,
    LimitMap,
    LocalizationConditionError,
    compute_F,
    compute_F_line,
    compute_F_pair_4,
    extremal_states,
    grover_state,
    limit_probability,
)
from .momentum import DegeneratePointError
from .walker import WindowOverflowError, origin_series, radius_series, trajectory, spatial_distribution

EXIT_OK = 0
EXIT_CONDITION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- parsing helpers


def parse_complex_list(text: str) -> np.ndarray:
    """Parse ``"1,0.5-0.5i,i"`` into a complex vector."""
    vals = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            raise ConfigError(f"empty entry in '{text}'")
        try:
            vals.append(complex(tok.replace("i", "j")))
        except ValueError as exc:
            raise ConfigError(f"cannot parse complex literal '{tok}'") from exc
    return np.array(vals, dtype=complex)


def resolve_pair(args) -> CoinPair:
    try:
        if getattr(args, "pair", None):
            names = args.pair.split(",")
            if len(names) != 2:
                raise ConfigError("--pair expects two comma-separated coins: C,D")
            return CoinPair(coin_from_name(names[0]), coin_from_name(names[1]))
        return CoinPair.uniform(coin_from_name(args.coin))
    except (KeyError, ValueError, OSError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def resolve_init(text: str, dim: int, normalize: bool, max_state=None) -> np.ndarray:
    if text == "grover-state":
        return grover_state(dim)
    if text == "max-state":
        if max_state is None:
            raise ConfigError("max-state needs a limit map for this coin")
        return max_state()
    psi = parse_complex_list(text)
    if psi.size != dim:
        raise ConfigError(f"initial state has {psi.size} entries, coin dimension is {dim}")
    norm = np.linalg.norm(psi)
    if normalize:
        if norm == 0:
            raise ConfigError("initial state is zero")
        psi = psi / norm
    elif abs(norm - 1.0) > 1e-10:
        raise ConfigError(f"initial state has norm {norm:.17g}; pass --normalize to rescale")
    return psi


def _complex_pairs(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, complex).ravel()]


# ---------------------------------------------------------------- output helpers


def _meta(args, config: dict) -> dict:
    return {
        "tool": f"honeywalk {__version__}",
        "command": args.command,
        "seed": args.seed,
        "grid_n": config.get("grid_n"),
        "threads": args.threads,
        "config": config,
    }


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def write_table(path: Path, columns: list[str], rows, meta: dict, fmt: str) -> Path:
    """Write rows as CSV (metadata in leading '#' lines) or as JSON."""
    if fmt == "json":
        path = path.with_suffix(".json")
        data = {"meta": meta, "columns": columns, "rows": [[r for r in row] for row in rows]}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=1, default=float)
        return path
    path = path.with_suffix(".csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key, val in meta.items():
            fh.write(f"# {key}: {json.dumps(val, default=str)}\n")
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_json(path: Path, data: dict) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, default=float)
    return path


def write_gnuplot(path: Path, data_file: Path, xcol: int, ycol: int, xlabel: str,
                  ylabel: str, title: str, hline: float | None = None) -> Path:
    lines = [
        "set terminal pngcairo size 800,600",
        f"set output '{path.with_suffix('.png').name}'",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key off",
    ]
    plot = f"plot '{data_file.name}' every ::1 using {xcol}:{ycol} with points pt 7 ps 0.4"
    if hline is not None:
        plot += f", {hline:.17g} with lines lw 2"
    lines.append(plot)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------- predictions


def _predicted_maps(pair: CoinPair, grid_n: int | None, threads: int):
    """Limit maps governing even/odd origin probabilities, or None if unavailable."""
    if pair.dim == 3:
        if not check_localization_condition(pair).holds:
            return None
        f = compute_F(pair, grid_n or DEFAULT_GRID_3, threads=threads)
        return {"even": f, "odd": None}
    g4 = coin_from_name("grover4").matrix
    if np.array_equal(pair.C.matrix, g4) and np.array_equal(pair.D.matrix, g4):
        maps = compute_F_pair_4(grid_n or DEFAULT_GRID_4, threads=threads)
        return {"even": maps["F_even"], "odd": maps["F_odd"]}
    return None


def _tail_means(ts, p, start):
    sel = ts >= start
    even = p[sel & (ts % 2 == 0)]
    odd = p[sel & (ts % 2 == 1)]
    return (float(even.mean()) if even.size else None,
            float(odd.mean()) if odd.size else None)


# ---------------------------------------------------------------- commands


def cmd_simulate(args) -> int:
    pair = resolve_pair(args)
    out = Path(args.out)
    maps = None if args.no_predict else _predicted_maps(pair, args.grid, args.threads)

    def max_state():
        if maps is None:
            raise ConfigError("no limit map available for max-state")
        return extremal_states(maps["even"]).max_states[:, 0]

    psi0 = resolve_init(args.init, pair.dim, args.normalize, max_state)
    T = args.steps
    if T < 1:
        raise ConfigError("--steps must be at least 1")
    tail_start = args.tail_start if args.tail_start is not None else (3 * T) // 4

    config = {
        "coins": pair.name,
        "init": _complex_pairs(psi0),
        "steps": T,
        "grid_n": None if maps is None else maps["even"].grid_n,
        "tail_start": tail_start,
        "distribution": args.distribution,
    }
    meta = _meta(args, config)

    if args.distribution:
        probs = np.empty(T + 1)
        for state in trajectory(pair, psi0, T):
            a = state.amplitudes[0, :, state.window, state.window]
            probs[state.t] = np.vdot(a, a).real
        ts = np.arange(T + 1)
        dist = spatial_distribution(state)
        write_table(out / "distribution", ["x", "y", "s", "p"],
                    [tuple(r) for r in dist.tolist()], meta, args.format)
    else:
        ts, probs = origin_series(pair.dim, pair, psi0, T)
    series_path = write_table(out / "origin_series", ["t", "p_origin"],
                              zip(ts.tolist(), probs.tolist()), meta, args.format)

    even_tail, odd_tail = _tail_means(ts, probs, tail_start)
    summary = {"meta": meta, "tail_mean_even": even_tail, "tail_mean_odd": odd_tail}
    pred_even = None
    if maps is not None:
        pred_even = limit_probability(maps["even"], psi0)
        summary["predicted_p_inf_even"] = pred_even
        summary["predicted_p_inf_odd"] = (
            0.0 if maps["odd"] is None else limit_probability(maps["odd"], psi0)
        )
        print(f"predicted P_inf (even t): {pred_even:.10f}")
        print(f"predicted P_inf (odd t):  {summary['predicted_p_inf_odd']:.10f}")
    print(f"tail mean over t >= {tail_start}: even {even_tail}, odd {odd_tail}")
    write_json(out / "simulate.json", summary)
    if args.format == "csv":
        write_gnuplot(out / "origin_series.gp", series_path, 1, 2, "t", "P_t(0,0,0)",
                      f"origin probability, {pair.name}", pred_even)
    return EXIT_OK


def _map_report(m: LimitMap) -> str:
    ext = extremal_states(m)
    np.set_printoptions(precision=8, suppress=True, linewidth=120)
    lines = [
        f"[{m.kind}] dim={m.dim} grid_n={m.grid_n}",
        "matrix:",
        str(np.real_if_close(m.matrix, tol=1e6)),
        "eigenvalues: " + ", ".join(f"{v:.8f}" for v in ext.eigenvalues),
        f"max probability: {ext.max_prob:.8f}",
        "maximising states (columns):",
        str(np.round(ext.max_states, 8)),
        "kernel states (columns):",
        str(np.round(ext.zero_states, 8)) if ext.zero_states.size else "(none)",
        "",
    ]
    return "\n".join(lines)


def _compute_maps(args) -> dict[str, LimitMap]:
    if args.model == "honeycomb3":
        pair = resolve_pair(args)
        if pair.dim != 3:
            raise ConfigError("honeycomb3 needs a three-state coin")
        return {"F": compute_F(pair, args.grid or DEFAULT_GRID_3, threads=args.threads)}
    if args.model == "honeycomb4":
        return compute_F_pair_4(args.grid or DEFAULT_GRID_4, threads=args.threads)
    return {"F_line": compute_F_line(args.grid or DEFAULT_GRID_LINE)}


def cmd_limitmap(args) -> int:
    out = Path(args.out)
    maps = _compute_maps(args)
    config = {"model": args.model, "coins": maps[next(iter(maps))].meta.get("coins"),
              "grid_n": maps[next(iter(maps))].grid_n}
    meta = _meta(args, config)
    report = [f"# honeywalk {__version__} limitmap {json.dumps(config)}", ""]
    for name, m in maps.items():
        m.meta.update({"tool": meta["tool"], "config": config})
        m.save(out / f"{name}.json")
        report.append(_map_report(m))
    text = "\n".join(report)
    (out / "limitmap_report.txt").write_text(text, encoding="utf-8")
    print(text)
    return EXIT_OK


def cmd_haar_average(args) -> int:
    out = Path(args.out)
    if args.map:
        maps = {}
        for p in args.map:
            m = LimitMap.load(p)
            maps[m.kind] = m
    else:
        maps = _compute_maps(args)
        if args.model == "honeycomb4":
            maps = {k: maps[k] for k in ("F_even", "F_odd")}
    config = {
        "model": None if args.map else args.model,
        "maps": list(args.map or []),
        "samples": args.samples,
        "grid_n": maps[next(iter(maps))].grid_n,
        "rng": RNG_ALGORITHM,
    }
    meta = _meta(args, config)
    results = {}
    for name, m in maps.items():
        est = average_probability(m, args.samples, args.seed, workers=args.threads)
        results[name] = {
            "mean": est.mean,
            "std_error": est.std_error,
            "samples": est.samples,
            "seed": est.seed,
            "trace_identity": haar_average_exact(m),
        }
        print(f"{name}: mean {est.mean:.8f} +- {est.std_error:.2e} "
              f"(trace identity {results[name]['trace_identity']:.8f})")
    write_json(out / "haar_average.json", {"meta": meta, "results": results})
    return EXIT_OK


def cmd_check_coin(args) -> int:
    pair = resolve_pair(args)
    if pair.dim != 3:
        raise ConfigError("the localization condition applies to three-state coins")
    report = check_localization_condition(pair)
    print(f"pair: {pair.name}")
    print(report.summary())
    return EXIT_OK if report.holds else EXIT_CONDITION


def cmd_spread(args) -> int:
    pair = resolve_pair(args)
    out = Path(args.out)
    psi0 = resolve_init(args.init, pair.dim, args.normalize)
    T = args.steps
    if T < 0:
        raise ConfigError("--steps must be non-negative")
    fit_start = args.fit_start
    fit_end = T if args.fit_end is None else args.fit_end
    config = {"coins": pair.name, "init": _complex_pairs(psi0), "steps": T,
              "fit_window": [fit_start, fit_end], "grid_n": None}
    meta = _meta(args, config)
    if T == 0:
        ts, rbar = np.array([0]), np.array([0.0])
    else:
        ts, rbar = radius_series(pair, psi0, T)
    path = write_table(out / "radius", ["t", "r_bar"], zip(ts.tolist(), rbar.tolist()),
                       meta, args.format)
    fit = {"meta": meta, "slope": None, "intercept": None, "r_squared": None}
    sel = (ts >= fit_start) & (ts <= fit_end)
    if T > 0 and sel.sum() >= 3:
        slope, intercept, r2 = linear_fit(ts[sel], rbar[sel])
        fit.update(slope=slope, intercept=intercept, r_squared=r2)
        print(f"slope {slope:.10f}  intercept {intercept:.10f}  R^2 {r2:.10f}")
    else:
        print("not enough points for a fit")
    write_json(out / "spread_fit.json", fit)
    if args.format == "csv":
        write_gnuplot(out / "radius.gp", path, 1, 2, "t", "mean radius", f"spreading, {pair.name}")
    return EXIT_OK


def linear_fit(x, y):
    """Least-squares line; returns ``(slope, intercept, R^2)``."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), float(r2)


# ---------------------------------------------------------------- argument parser


def _global_flags(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d("."), help="output directory")
    parser.add_argument("--format", choices=["csv", "json"], default=d("csv"))
    parser.add_argument("--threads", type=int, default=d(1), help="worker cap")
    parser.add_argument("--seed", type=int, default=d(0))


def _coin_flags(parser, default="grover3"):
    parser.add_argument("--coin", default=default, help="catalog coin, machida:<eps> or JSON file")
    parser.add_argument("--pair", help="position-dependent pair C,D (type-0 coin, type-1 coin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="honeywalk", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"honeywalk {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="real-space simulation of the origin probability")
    _global_flags(p, suppress=True)
    _coin_flags(p)
    p.add_argument("--init", required=True, help="a+bi list, grover-state or max-state")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--distribution", action="store_true", help="also write the final distribution")
    p.add_argument("--grid", type=int, help="quadrature grid for the predicted limit")
    p.add_argument("--no-predict", action="store_true")
    p.add_argument("--tail-start", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("limitmap", help="limit transformation matrices")
    _global_flags(p, suppress=True)
    p.add_argument("--model", choices=["honeycomb3", "honeycomb4", "line3"], default="honeycomb3")
    _coin_flags(p)
    p.add_argument("--grid", type=int)
    p.set_defaults(func=cmd_limitmap)

    p = sub.add_parser("haar-average", help="Haar-averaged localization probability")
    _global_flags(p, suppress=True)
    p.add_argument("--model", choices=["honeycomb3", "honeycomb4", "line3"], default="honeycomb3")
    _coin_flags(p)
    p.add_argument("--grid", type=int)
    p.add_argument("--map", action="append", help="cached map JSON (repeatable)")
    p.add_argument("--samples", type=int, default=10**6)
    p.set_defaults(func=cmd_haar_average)

    p = sub.add_parser("check-coin", help="sufficient condition for localization")
    _global_flags(p, suppress=True)
    _coin_flags(p)
    p.set_defaults(func=cmd_check_coin)

    p = sub.add_parser("spread", help="mean radius versus time")
    _global_flags(p, suppress=True)
    _coin_flags(p)
    p.add_argument("--init", default="1,0,0")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--fit-start", type=int, default=50)
    p.add_argument("--fit-end", type=int)
    p.set_defaults(func=cmd_spread)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        return args.func(args)
    except LocalizationConditionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONDITION
    except (DegeneratePointError, WindowOverflowError) as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
