"""Command line front end.

Every command prints one JSON document (or CSV rows for sweeps) and exits
with 0 on success, 2 on a precondition failure and 3 on a numeric
invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import __version__, duality, hexagon, holodev, pants, tess
from .errors import BadGrid, NumericInvariantError, OutOfRange, PreconditionError
from .hplane import Isometry, get_tolerance, set_tolerance

EXIT_OK, EXIT_PRECONDITION, EXIT_NUMERIC = 0, 2, 3
JOBS_ENV = "HEXSPINE_JOBS"

_PI_TERM = re.compile(r"^(-?[0-9.]*)\*?pi(?:/([0-9.]+))?$")


def parse_value(tok: str) -> float:
    """A float, or ``[c*]pi[/q]`` optionally followed by ``+x`` / ``-x``."""
    tok = tok.strip().replace(" ", "")
    try:
        return float(tok)
    except ValueError:
        pass
    m = re.match(r"^(.*pi(?:/[0-9.]+)?)([+-][0-9.eE+-]+)?$", tok)
    if not m:
        raise BadGrid(f"cannot parse value {tok!r}")
    head, tail = m.group(1), m.group(2)
    pm = _PI_TERM.match(head)
    if not pm:
        raise BadGrid(f"cannot parse value {tok!r}")
    c = pm.group(1)
    coef = -1.0 if c == "-" else float(c) if c else 1.0
    val = coef * math.pi / (float(pm.group(2)) if pm.group(2) else 1.0)
    return val + (float(tail) if tail else 0.0)


def parse_grid(spec: str) -> List[float]:
    """``a,b,c`` or ``lo:hi:n`` (linear) or ``lo:hi:n:log`` (geometric, decreasing)."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) not in (3, 4):
            raise BadGrid(f"bad range {spec!r}")
        lo, hi, n = parse_value(parts[0]), parse_value(parts[1]), int(parts[2])
        if n < 1:
            raise BadGrid("range needs at least one point")
        if len(parts) == 4:
            if parts[3] != "log":
                raise BadGrid(f"unknown range kind {parts[3]!r}")
            return pants.log_grid(lo, hi, n)
        if n == 1:
            return [lo]
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    return [parse_value(t) for t in spec.split(",") if t.strip()]


@dataclass
class RunConfig:
    tolerance: Optional[float] = None
    grid: List[float] = field(default_factory=list)
    radius: int = 8
    preset: Optional[str] = None
    map_file: Optional[str] = None
    fmt: str = "json"
    svg: Optional[str] = None
    jobs: int = 1

    def validate(self) -> "RunConfig":
        if self.tolerance is not None and not (1e-14 <= self.tolerance <= 1e-3):
            raise OutOfRange(f"tolerance {self.tolerance} outside [1e-14, 1e-3]")
        for e in self.grid:
            if not (0.0 < e < math.pi):
                raise BadGrid(f"grid value {e} outside (0, pi)")
        if self.radius < 4:
            raise OutOfRange("radius must be at least 4")
        if self.fmt not in ("json", "csv"):
            raise OutOfRange(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise OutOfRange("jobs must be positive")
        return self


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# output helpers


def _tolerance_block(result: dict, tol: float) -> dict:
    """Sibling metadata: the tolerance each numeric field was checked or computed to."""
    out = {}
    for k, v in result.items():
        if isinstance(v, bool):
            continue
        if isinstance(v, int):
            out[k] = 0.0
        elif isinstance(v, float):
            out[k] = tol
        elif isinstance(v, list) and v and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            # integer lists are exact
            out[k] = tol if any(isinstance(x, float) for x in v) else 0.0
    return out


def _envelope(command: str, result: dict, tol: float) -> dict:
    return {
        "command": command,
        "version": __version__,
        "result": result,
        "meta": {"tolerance": _tolerance_block(result, tol)},
    }


def _clean(x):
    """JSON-safe copy: tuples to lists, non-finite floats to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if hasattr(x, "item") and not isinstance(x, (int, float, str)):
        return _clean(x.item())
    return x


def _dump(doc: dict) -> str:
    return json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _write_svg(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_map(args) -> tess.CombMap:
    if getattr(args, "map", None):
        with open(args.map, encoding="utf-8") as fh:
            return tess.CombMap.from_json(fh.read())
    return tess.coxeter_preset(args.preset or "gen17")


# ---------------------------------------------------------------------------
# commands


def cmd_trig(args, cfg):
    eps = args.eps
    hx = hexagon.build_hexagon(eps)
    pm = pants.pants_metrics(args.k, eps, with_omega=False)
    res = {
        "eps": eps,
        "cosh_L": pm.cosh_L,
        "cosh_H": pm.cosh_H,
        "L": pm.L,
        "H": pm.H,
        "measured_side_lengths": hx.measured_side_lengths(),
        "measured_inner_angles": hx.measured_inner_angles(),
    }
    if abs(eps - math.pi / 2) < 1e-12:
        res["saccheri_cosh"] = math.cosh(hexagon.saccheri_diagonal())
    _write_svg(cfg.svg, _hexagon_svg(hx))
    return res, 1e-12


def _hexagon_svg(hx) -> str:
    from .svg import disc_tiles

    return disc_tiles([(Isometry.identity(), hx.vertices)], title=f"hexagon eps={float(hx.eps):.4f}")


def cmd_pants(args, cfg):
    grid = cfg.grid or [args.eps]
    rows = []
    for e in grid:
        pm = pants.pants_metrics(args.k, e)
        rows.append({
            "eps": e, "L": pm.L, "H": pm.H, "d": pm.d, "h": pm.h, "p0": pm.p0,
            "omega": list(pm.omega), "omega_last_exact": float(pants.omega_last_exact(args.k, e)),
            "identity_residuals": pm.identity_residuals(),
        })
    if cfg.fmt == "csv":
        header = ["eps", "L", "H", "d", "h", "p0"] + [f"omega_{i}" for i in range(1, args.k)]
        return _csv(header, [[r["eps"], r["L"], r["H"], r["d"], r["h"], r["p0"], *r["omega"]] for r in rows]), 1e-9
    if cfg.svg and len(grid) > 1:
        from .svg import line_plot

        series = {f"omega_{i + 1}": [r["omega"][i] for r in rows] for i in range(args.k - 1)}
        _write_svg(cfg.svg, line_plot(grid, series, title=f"omega, k={args.k}"))
    if len(rows) == 1:
        return {"k": args.k, **rows[0]}, 1e-9
    return {"k": args.k, "rows": rows}, 1e-9


def cmd_pants_asymptotics(args, cfg):
    grid = cfg.grid or pants.log_grid(1e-5, 1e-3, 9)
    k = args.k
    ms = [pants.pants_metrics(k, e, with_omega=False) for e in grid]
    samples = {
        "cosh_L": [m.cosh_L for m in ms],
        "H": [m.H for m in ms],
        "h": [m.h for m in ms],
        "cosh_d": [m.cosh_d for m in ms],
        "omega_last": [float(pants.omega_last_exact(k, e)) for e in grid],
    }
    if cfg.fmt == "csv":
        names = list(samples)
        return _csv(["eps"] + names, [[e] + [samples[n][i] for n in names] for i, e in enumerate(grid)]), 0.02
    slopes = {n: pants.asymptotic_slope(v, grid) for n, v in samples.items()}
    expected = {"cosh_L": -1.0, "H": 0.5, "h": (k - 1) / 2, "cosh_d": 1.0 - k, "omega_last": 0.5}
    return {"k": k, "grid": list(grid), "slopes": slopes, "expected": expected}, 0.02


def cmd_preset_build(args, cfg):
    m = tess.coxeter_preset(args.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(m.to_json())
    res = {"name": args.name, **m.counts(), "genus": tess.genus(m)}
    if getattr(m, "homomorphism", None) is not None:
        res["homomorphism"] = list(m.homomorphism)
    if args.name == "gen2":
        homs, nk = tess.search_gen2()
        res["homomorphisms_found"] = [list(h) for h in homs]
        res["distinct_kernels"] = nk
    return res, 0.0


def cmd_axioms(args, cfg):
    m = _load_map(args)
    rep = tess.validate_axioms(m)
    return {"passed": rep.passed(), **rep.to_dict()}, 0.0


def cmd_curves(args, cfg):
    m = _load_map(args)
    curves = [
        {"id": c.id, "colour": c.colour, "index": c.index, "edges": list(c.edges)} for c in m.curves()
    ]
    return {"count": len(curves), "curves": curves}, 0.0


def _parse_indices(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_filling(args, cfg):
    m = _load_map(args)
    allc = tess.extract_curves(m)
    idx = _parse_indices(args.indices)
    if args.search:
        sub = tess.filling_subset_search(m, budget=args.budget, seed=args.seed)
    else:
        sub = allc.by_index(idx) if idx else allc
    comps = tess.complement_components(m, sub)
    return {
        "size": len(sub),
        "ids": list(sub.ids),
        "filling": tess.filling_check(m, sub),
        "components": [{k: v for k, v in c.items() if k != "faces"} for c in comps],
    }, 0.0


def cmd_systoles(args, cfg):
    m = _load_map(args)
    s = holodev.develop(m, args.eps)
    census = holodev.enumerate_systoles(s, radius=cfg.radius)
    res = census.to_dict()
    res["closure_residual"] = s.closure_residual
    if cfg.svg:
        from .svg import disc_tiles

        tiles = []
        mat = Isometry.identity()
        tiles.append((mat, s.hexagon.vertices))
        for h in range(6):
            tiles.append((Isometry(s.crossing[h]), s.hexagon.vertices))
        _write_svg(cfg.svg, disc_tiles(tiles, title=f"developed tiles around face 0, eps={args.eps:.4f}"))
    return res, 1e-7


def cmd_bracket(args, cfg):
    m = _load_map(args)
    data = duality.bracket_matrix(m, args.eps)
    M = data.matrix
    import numpy as np

    res = {
        "eps": args.eps,
        "blue_curves": data.blue_ids,
        "dimension": len(data.blue_ids),
        "delta": duality.determinant(M),
        "max_abs_M_minus_I": float(np.max(np.abs(M - np.eye(len(M))))),
        "chosen_edges": {str(a.blue): a.b for a in data.attachments},
    }
    if not args.elide:
        res["matrix"] = M.tolist()
    return res, 1e-10


def _scan_chunk(payload):
    name, grid, threshold = payload
    m = tess.coxeter_preset(name) if not name.startswith("{") else tess.CombMap.from_json(name)
    return duality.delta_scan(m, grid, threshold=threshold)


def _delta_report(m, grid, threshold, jobs):
    if jobs <= 1 or len(grid) < 2:
        return duality.delta_scan(m, grid, threshold=threshold)
    key = m.name if m.name in ("gen17", "gen2") else m.to_json()
    chunks = [grid[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_scan_chunk, [(key, c, threshold) for c in chunks if c]))
    # reassemble in grid order so the output does not depend on the job count
    by_eps = {}
    for p in parts:
        for i, e in enumerate(p.grid):
            by_eps[e] = (p.deltas[i], p.max_offdiag[i], p.min_singular[i])
    first = parts[0]
    rep = duality.BracketReport(
        list(grid), [by_eps[e][0] for e in grid], [by_eps[e][1] for e in grid],
        sorted(w for p in parts for w in p.witnesses), first.choice, first.dimension,
        [by_eps[e][2] for e in grid], threshold,
    )
    return rep


DEFAULT_DELTA_GRID = [4e-3, 2e-3, 1e-3, 5e-4] + [math.pi / 2 + s for s in (-0.1, -0.05, -0.01, 0.01, 0.05, 0.1)]


def cmd_delta(args, cfg):
    m = _load_map(args)
    grid = cfg.grid or DEFAULT_DELTA_GRID
    rep = _delta_report(m, grid, args.threshold, cfg.jobs)
    if cfg.fmt == "csv":
        return _csv(["eps", "delta", "max_abs_M_minus_I", "min_singular_value"],
                    zip(rep.grid, rep.deltas, rep.max_offdiag, rep.min_singular)), 1e-10
    if cfg.svg:
        from .svg import line_plot

        _write_svg(cfg.svg, line_plot(rep.grid, {"log10 |delta|": rep.deltas}, title="delta(eps)", ylog=True))
    return rep.to_dict(), 1e-10


def cmd_codim(args, cfg):
    m = _load_map(args)
    idx = _parse_indices(args.indices)
    allc = tess.extract_curves(m)
    sub = allc.by_index(idx) if idx else allc
    grid = cfg.grid or [math.pi / 2 + s for s in (-0.1, -0.05, -0.01, 0.01, 0.05, 0.1)]
    rep = _delta_report(m, grid, args.threshold, cfg.jobs)
    res = duality.codim_report(m, sub, rep)
    res["delta"] = dict(zip([repr(e) for e in rep.grid], rep.deltas))
    res["min_singular_value"] = dict(zip([repr(e) for e in rep.grid], rep.min_singular))
    return res, 0.0


def cmd_bolza(args, cfg):
    m = tess.coxeter_preset("gen2")
    s = holodev.develop(m, args.probe)
    census = holodev.enumerate_systoles(s, radius=cfg.radius)
    comp = [c for c in census.classes if c["signature"][0] != "curve"]
    if not comp:
        raise OutOfRange(f"no competing class is minimal at eps={args.probe}")
    tess_word = holodev.curve_word(m, m.curves()[0])
    comp_word = comp[0]["word"]
    e = holodev.bolza_crossing(m, tess_word, comp_word, lo=args.lo, hi=args.hi)
    lengths = holodev.length_track(m, [tess_word, comp_word], [e])[0]
    return {
        "crossing_eps": e,
        "pi_over_4": math.pi / 4,
        "offset": e - math.pi / 4,
        "tessellation_word": list(tess_word),
        "competitor_word": list(comp_word),
        "length_at_crossing": lengths[0],
        "competitor_length_at_crossing": lengths[1],
    }, 1e-9


def cmd_bound(args, cfg):
    g = args.g
    a, b = duality.bound_theorem1(g), duality.bound_im1(g)
    return {"g": g, "bound_38": a, "bound_57": b, "ratio": a / b}, 1e-12


# ---------------------------------------------------------------------------


def _add_map_args(p):
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--preset", choices=["gen17", "gen2"], default=None)
    grp.add_argument("--map", help="map file in the JSON map format")


class _Parser(argparse.ArgumentParser):
    """Usage errors come out as a JSON document on stderr, exit code 2."""

    def error(self, message):
        sys.stderr.write(_dump({"error": "UsageError", "message": message, "exit_code": EXIT_PRECONDITION}))
        sys.exit(EXIT_PRECONDITION)


def _add_common(p, suppress: bool) -> None:
    """Run options; accepted before or after the subcommand."""

    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--tol", type=float, default=d(None), help="geometric tolerance in [1e-14, 1e-3]")
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default=d("json"))
    p.add_argument("--svg", default=d(None), help="also write a static SVG figure")
    p.add_argument("--jobs", type=int, default=d(None), help=f"worker processes (default ${JOBS_ENV} or 1)")
    p.add_argument("--radius", type=int, default=d(8), help="word length bound for systole search")
    p.add_argument("--grid", default=d(None), help="eps grid: a,b,c or lo:hi:n or lo:hi:n:log; pi allowed")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hexspine", description="Deformed hexagonal tessellations and their length functions.")
    p.add_argument("--version", action="version", version=__version__)
    _add_common(p, suppress=False)
    common = _Parser(add_help=False)
    _add_common(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trig", parents=[common], help="hexagon and pants closed forms at one eps")
    s.add_argument("--eps", type=parse_value, required=True)
    s.add_argument("--k", type=int, default=4)
    s.set_defaults(func=cmd_trig)

    s = sub.add_parser("pants", parents=[common], help="pants metrics and omega angles")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--eps", type=parse_value, default=math.pi / 2)
    s.set_defaults(func=cmd_pants)

    s = sub.add_parser("pants-asymptotics", parents=[common], help="log-log slopes as eps -> 0")
    s.add_argument("--k", type=int, default=4)
    s.set_defaults(func=cmd_pants_asymptotics)

    s = sub.add_parser("preset", parents=[common], help="named tessellations")
    ps = s.add_subparsers(dest="action", required=True)
    b = ps.add_parser("build", parents=[common])
    b.add_argument("name", choices=["gen17", "gen2"])
    b.add_argument("--out", default=None, help="write the map JSON here")
    b.set_defaults(func=cmd_preset_build)

    s = sub.add_parser("axioms", parents=[common], help="axiom checks")
    ps = s.add_subparsers(dest="action", required=True)
    b = ps.add_parser("check", parents=[common])
    _add_map_args(b)
    b.set_defaults(func=cmd_axioms)

    s = sub.add_parser("curves", parents=[common], help="tessellation curves")
    ps = s.add_subparsers(dest="action", required=True)
    b = ps.add_parser("list", parents=[common])
    _add_map_args(b)
    b.set_defaults(func=cmd_curves)

    s = sub.add_parser("filling", parents=[common], help="filling test or subset search")
    _add_map_args(s)
    s.add_argument("--indices", default=None)
    s.add_argument("--search", action="store_true")
    s.add_argument("--budget", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_filling)

    s = sub.add_parser("systoles", parents=[common], help="shortest closed geodesics up to a word radius")
    _add_map_args(s)
    s.add_argument("--eps", type=parse_value, default=math.pi / 2)
    s.set_defaults(func=cmd_systoles)

    s = sub.add_parser("bracket", parents=[common], help="bracket matrix at one eps")
    _add_map_args(s)
    s.add_argument("--eps", type=parse_value, required=True)
    s.add_argument("--elide", action="store_true", help="omit the matrix itself")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("delta", parents=[common], help="determinant scan")
    _add_map_args(s)
    s.add_argument("--threshold", type=float, default=duality.WITNESS_THRESHOLD)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("codim-report", parents=[common], help="codimension bound from a filling subset")
    _add_map_args(s)
    s.add_argument("--indices", default=None)
    s.add_argument("--threshold", type=float, default=duality.WITNESS_THRESHOLD)
    s.set_defaults(func=cmd_codim)

    s = sub.add_parser("bolza-crossing", parents=[common], help="eps where a competing class matches the curves (genus 2)")
    s.add_argument("--probe", type=parse_value, default=0.7)
    s.add_argument("--lo", type=parse_value, default=0.5)
    s.add_argument("--hi", type=parse_value, default=1.2)
    s.set_defaults(func=cmd_bolza)

    s = sub.add_parser("bound", parents=[common], help="closed-form growth bounds")
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_bound)
    return p


def _error_doc(exc: Exception, code: int) -> str:
    return _dump({"error": type(exc).__name__, "message": str(exc), "exit_code": code})


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    old_tol = get_tolerance()
    try:
        cfg = RunConfig(
            tolerance=args.tol,
            grid=parse_grid(args.grid) if args.grid else [],
            radius=args.radius,
            preset=getattr(args, "preset", None),
            map_file=getattr(args, "map", None),
            fmt=args.fmt,
            svg=args.svg,
            jobs=args.jobs if args.jobs is not None else _default_jobs(),
        ).validate()
        if cfg.tolerance is not None:
            set_tolerance(cfg.tolerance)
        result, tol = args.func(args, cfg)
    except PreconditionError as exc:
        out.write(_error_doc(exc, EXIT_PRECONDITION))
        return EXIT_PRECONDITION
    except (NumericInvariantError, ArithmeticError) as exc:
        out.write(_error_doc(exc, EXIT_NUMERIC))
        return EXIT_NUMERIC
    except (OSError, json.JSONDecodeError) as exc:
        out.write(_error_doc(exc, EXIT_PRECONDITION))
        return EXIT_PRECONDITION
    finally:
        set_tolerance(old_tol)
    if isinstance(result, str):
        out.write(result)
        return EXIT_OK
    if cfg.fmt == "csv":
        exc = OutOfRange(f"{args.command} has no CSV form")
        out.write(_error_doc(exc, EXIT_PRECONDITION))
        return EXIT_PRECONDITION
    name = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    out.write(_dump(_envelope(name, result, cfg.tolerance or tol)))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
