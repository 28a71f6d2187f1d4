"""Command-line interface: file-in, file-out wrappers around the library."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from dataclasses import astuple, dataclass, field
from multiprocessing.pool import ThreadPool

import numpy as np

from . import __version__
from .diagram import PersistenceDiagram
from .embedding import sw1pers_cloud, takens_embed
from .errors import DegenerateInputError, InputError, MissingInputError, ParameterError, TDAError
from .features import (LIFETIME_COLUMNS, betti_grid, betti_sequence, kmeans,
                       lifetime_features, sw1pers_series_score, window_break_features)
from .io import diagram_text, json_text, read_diagram, read_table, table_text, write_text
from .landscapes import first_order_pl_batch, landscape, landscape_norm
from .metrics import bottleneck, wasserstein
from .rips import METRICS, distance_matrix, rips_persistence
from .series import select_dim_fnn, select_tau_acf, select_tau_decay
from .spectral import tapered_smoothed_periodogram, wft
from .sublevel import dtm, grid_points, grid_sublevel_persistence_h0, sublevel_persistence_1d
from . import synthetic

EXIT_CODES = {ParameterError: 2, InputError: 3, DegenerateInputError: 4}


@dataclass
class Output:
    header: list
    rows: object
    int_cols: tuple = ()
    diagram: PersistenceDiagram | None = None
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


def _mapper(args):
    n = int(args.threads)
    if n < 1:
        raise ParameterError("--threads must be positive")
    if n == 1:
        return map, None
    pool = ThreadPool(n)
    return pool.map, pool


def _column(table: np.ndarray, col: int) -> np.ndarray:
    if not 0 <= col < table.shape[1]:
        raise ParameterError(f"column {col} out of range for {table.shape[1]} columns")
    return table[:, col]


def _diagram_output(dg: PersistenceDiagram) -> Output:
    return Output(["dim", "birth", "death"], dg.as_array(), (0,), diagram=dg,
                  extra={"maxscale": dg.maxscale})


def cmd_generate(args) -> Output:
    rng = np.random.default_rng(args.seed)
    if args.kind == "cosine":
        x = synthetic.cosine(args.T, args.period)
    elif args.kind == "case":
        x = synthetic.periodicity_case(args.case, rng, args.T, args.sigma, args.phase)
    elif args.kind == "noise":
        x = rng.normal(0.0, args.sigma, args.T)
    elif args.kind == "two-regime":
        x = synthetic.two_regime(rng, args.T, args.period, args.sigma)
    else:
        pts = synthetic.unit_circle(args.T)
        return Output(["x", "y"], pts)
    return Output(["x"], x[:, None])


def _resolve_embedding(args, x):
    if args.tau is None:
        rule = select_tau_acf if args.tau_rule == "acf" else select_tau_decay
        args.tau = int(rule(x))
    if args.d is None:
        args.d = int(select_dim_fnn(x, args.tau, args.max_d))


def cmd_embed(args) -> Output:
    _, table = read_table(args.input)
    x = _column(table, args.column)
    if args.mode == "sw1pers":
        cloud = sw1pers_cloud(x, args.d or 15, args.N, args.denoise)
        args.d = cloud.shape[1]
    else:
        _resolve_embedding(args, x)
        cloud = takens_embed(x, args.d, args.tau)
    return Output([f"v{j + 1}" for j in range(cloud.shape[1])], cloud)


def cmd_rips(args) -> Output:
    _, table = read_table(args.input)
    dist = table if args.input_kind == "distance" else distance_matrix(table, args.metric)
    dg = rips_persistence(dist, maxdim=args.maxdim, maxscale=args.maxscale)
    args.maxscale = dg.maxscale
    return _diagram_output(dg)


def cmd_sublevel(args) -> Output:
    _, table = read_table(args.input)
    if args.grid:
        dg = grid_sublevel_persistence_h0(table)
    else:
        dg = sublevel_persistence_1d(_column(table, args.column))
    return _diagram_output(dg)


def cmd_dtm(args) -> Output:
    _, cloud = read_table(args.input)
    if args.queries:
        _, queries = read_table(args.queries)
        values = dtm(cloud, queries, args.m0)
        return Output([f"q{j + 1}" for j in range(queries.shape[1])] + ["dtm"],
                      np.column_stack([queries, values]))
    if args.step is None or cloud.shape[1] != 2:
        raise ParameterError("dtm needs --queries FILE, or --step for a 2-D cloud")
    lo, hi = cloud.min(axis=0) - args.pad, cloud.max(axis=0) + args.pad
    xs, ys, queries = grid_points((lo[0], hi[0]), (lo[1], hi[1]), args.step)
    values = dtm(cloud, queries, args.m0)
    if args.diagram:
        return _diagram_output(grid_sublevel_persistence_h0(values.reshape(ys.size, xs.size)))
    return Output(["x", "y", "dtm"], np.column_stack([queries, values]))


def cmd_distance(args) -> Output:
    a, b = read_diagram(args.input), read_diagram(args.other)
    if args.kind == "bottleneck":
        value = bottleneck(a, b, args.dim)
    else:
        value = wasserstein(a, b, args.q, args.dim)
    return Output(["value"], [[value]])


def cmd_landscape(args) -> Output:
    pl = landscape(read_diagram(args.input), dim=args.dim, grid_points=args.grid_points)
    if args.norm is not None:
        q = np.inf if args.norm == "inf" else float(args.norm)
        return Output(["norm"], [[landscape_norm(pl, q)]])
    return Output(["grid"] + [f"layer{k + 1}" for k in range(pl.order)], pl.to_table())


def cmd_spectrum(args) -> Output:
    _, table = read_table(args.input)
    spec = tapered_smoothed_periodogram(_column(table, args.column), args.taper, args.spans)
    return Output(["freq", "power"], spec.to_table())


def cmd_wft(args) -> Output:
    _, table = read_table(args.input)
    fmap, pool = _mapper(args)
    try:
        coeffs = list(fmap(wft, [table[:, c] for c in range(table.shape[1])]))
    finally:
        if pool:
            pool.close()
    if args.landscape is not None:
        pl = first_order_pl_batch(coeffs, args.landscape)
        return Output([f"pl{k + 1}" for k in range(pl.shape[1])], pl)
    mat = np.column_stack(coeffs)
    return Output(["j"] + [f"s{c + 1}" for c in range(mat.shape[1])],
                  np.column_stack([np.arange(mat.shape[0]), mat]), (0,))


def cmd_sw1pers(args) -> Output:
    _, table = read_table(args.input)
    fmap, pool = _mapper(args)
    try:
        scores = list(fmap(lambda c: sw1pers_series_score(table[:, c], args.d, args.N, args.denoise),
                           range(table.shape[1])))
    finally:
        if pool:
            pool.close()
    return Output(["column", "score"], [[c, s] for c, s in enumerate(scores)], (0,))


def cmd_features(args) -> Output:
    if args.kind == "breaks":
        _, table = read_table(args.input)
        fmap, pool = _mapper(args)
        try:
            rows = window_break_features(_column(table, args.column), args.window_n,
                                         args.embed_d, map_fn=fmap)
        finally:
            if pool:
                pool.close()
        w = np.arange(1, rows.shape[0] + 1)
        return Output(["window", "level", "diff", "l1"], np.column_stack([w, rows]), (0,))
    dg = read_diagram(args.input)
    if args.kind == "lifetime":
        stats = lifetime_features(dg)
        rows = [[p, *astuple(s)] for p, s in stats.items()]
        return Output(["dim"] + LIFETIME_COLUMNS, rows, (0, 1, 3))
    grid = betti_grid(dg.maxscale, args.n_grid)
    b0 = betti_sequence(dg, 0, grid=grid)
    b1 = betti_sequence(dg, 1, grid=grid)
    return Output(["lambda", "betti0", "betti1"], np.column_stack([grid, b0, b1]), (1, 2))


def cmd_cluster(args) -> Output:
    _, X = read_table(args.input)
    res = kmeans(X, args.k, seed=args.seed, max_iter=args.max_iter)
    return Output(["label"], res.labels[:, None], (0,),
                  extra={"inertia": res.inertia, "n_iter": res.n_iter,
                         "centers": res.centers.tolist()})


COMMANDS = {
    "generate": cmd_generate, "embed": cmd_embed, "rips": cmd_rips, "sublevel": cmd_sublevel,
    "dtm": cmd_dtm, "distance": cmd_distance, "landscape": cmd_landscape,
    "spectrum": cmd_spectrum, "wft": cmd_wft, "sw1pers": cmd_sw1pers,
    "features": cmd_features, "cluster": cmd_cluster,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    common.add_argument("--manifest", default=None,
                        help="run manifest path (default OUTPUT.manifest.json when -o is a file)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--json", action="store_true", help="write JSON instead of CSV")

    parser = _Parser(prog="tdats", description="Topological features of time series.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", parents=[common], help="write a synthetic series")
    p.add_argument("kind", choices=["cosine", "case", "noise", "two-regime", "circle"])
    p.add_argument("--T", type=int, default=480)
    p.add_argument("--period", type=float, default=12.0)
    p.add_argument("--sigma", type=float, default=0.8)
    p.add_argument("--case", type=int, default=1)
    p.add_argument("--phase", type=float, default=5.0)

    p = sub.add_parser("embed", parents=[common], help="delay or sliding-window embedding")
    p.add_argument("input")
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--mode", choices=["takens", "sw1pers"], default="takens")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--tau-rule", choices=["acf", "decay"], default="acf")
    p.add_argument("--max-d", type=int, default=10)
    p.add_argument("--N", type=int, default=201)
    p.add_argument("--denoise", type=int, default=5)

    p = sub.add_parser("rips", parents=[common], help="Vietoris-Rips persistence")
    p.add_argument("input")
    p.add_argument("--input-kind", choices=["cloud", "distance"], default="cloud")
    p.add_argument("--metric", choices=list(METRICS), default="euclidean")
    p.add_argument("--maxdim", type=int, choices=[0, 1], default=1)
    p.add_argument("--maxscale", type=float, default=None)

    p = sub.add_parser("sublevel", parents=[common], help="sublevel-set persistence")
    p.add_argument("input")
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--grid", action="store_true", help="treat the table as a 2-D function")

    p = sub.add_parser("dtm", parents=[common], help="distance to measure")
    p.add_argument("input")
    p.add_argument("--queries", default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--pad", type=float, default=0.5)
    p.add_argument("--m0", type=float, default=0.05)
    p.add_argument("--diagram", action="store_true", help="emit grid sublevel persistence")

    p = sub.add_parser("distance", parents=[common], help="diagram distance")
    p.add_argument("input")
    p.add_argument("other")
    p.add_argument("--kind", choices=["bottleneck", "wasserstein"], default="bottleneck")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--dim", type=int, choices=[0, 1], default=0)

    p = sub.add_parser("landscape", parents=[common], help="persistence landscape")
    p.add_argument("input")
    p.add_argument("--dim", type=int, choices=[0, 1], default=1)
    p.add_argument("--grid-points", type=int, default=500)
    p.add_argument("--norm", default=None, help="emit the landscape norm of this order (or inf)")

    p = sub.add_parser("spectrum", parents=[common], help="tapered smoothed periodogram")
    p.add_argument("input")
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--taper", type=float, default=0.1)
    p.add_argument("--spans", type=int, nargs="*", default=[1])

    p = sub.add_parser("wft", parents=[common], help="Walsh-Fourier transform of each column")
    p.add_argument("input")
    p.add_argument("--landscape", type=int, default=None, metavar="L",
                   help="emit first-order landscapes on L grid points instead")

    p = sub.add_parser("sw1pers", parents=[common], help="periodicity score of each column")
    p.add_argument("input")
    p.add_argument("--d", type=int, default=15)
    p.add_argument("--N", type=int, default=201)
    p.add_argument("--denoise", type=int, default=5)

    p = sub.add_parser("features", parents=[common], help="diagram or window features")
    p.add_argument("kind", choices=["lifetime", "betti", "breaks"])
    p.add_argument("input")
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--n-grid", type=int, default=300)
    p.add_argument("--window-n", type=int, default=50)
    p.add_argument("--embed-d", type=int, default=4)

    p = sub.add_parser("cluster", parents=[common], help="K-means on a feature matrix")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-iter", type=int, default=300)

    p = sub.add_parser("replay", help="re-run a recorded manifest")
    p.add_argument("manifest_path")
    p.add_argument("-o", "--output", default=None, help="override the recorded output path")
    return parser


def render(out: Output, as_json: bool) -> str:
    if as_json:
        rows = np.asarray(out.rows, dtype=float).tolist()
        rows = [[int(v) if i in out.int_cols else v for i, v in enumerate(r)] for r in rows]
        return json_text(out.header, rows, out.extra)
    if out.diagram is not None:
        return diagram_text(out.diagram)
    return table_text(out.header, out.rows, out.int_cols)


def _digest(path) -> str | None:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return None


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("manifest", "manifest_path")}


def run(args) -> str:
    """Execute a parsed command, write its output and manifest; return the text."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = COMMANDS[args.command](args)
    for w in caught:
        print(json.dumps({"warning": w.category.__name__, "message": str(w.message)}),
              file=sys.stderr)
    text = render(out, args.json)
    write_text(args.output, text)
    manifest = args.manifest or (f"{args.output}.manifest.json"
                                 if args.output not in (None, "-") else None)
    if manifest:
        inputs = {k: _digest(getattr(args, k)) for k in ("input", "other", "queries")
                  if getattr(args, k, None)}
        doc = {"tool": "tdats", "version": __version__, "params": _params(args),
               "input_sha256": inputs, "warnings": [str(w.message) for w in caught]}
        write_text(manifest, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return text


def replay(path: str, output: str | None = None) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise MissingInputError(f"manifest not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid manifest ({exc})") from None
    params = doc.get("params", {})
    if params.get("command") not in COMMANDS:
        raise InputError(f"{path}: manifest names no known command")
    args = argparse.Namespace(**params)
    args.manifest = None
    if output is not None:
        args.output = output
    return run(args)


def _exit_code(exc: TDAError) -> int:
    for cls, code in EXIT_CODES.items():
        if isinstance(exc, cls):
            return code
    return 1


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "replay":
            replay(args.manifest_path, args.output)
        else:
            run(args)
    except TDAError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return _exit_code(exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
