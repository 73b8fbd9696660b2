"""Command-line entry point: ``mvcomm <subcommand> [options]``.

Human-readable tables go to stdout, diagnostics to stderr and machine
artifacts (partitions, reports, histograms, edge lists) to ``--out``.
Exit status is 0 on success, 1 on internal failure and 2 on usage,
configuration or input errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from .detect import Partition, cluster_stats, detect, read_partition, sweep_detect, write_partition, write_sweep_report
from .fusion import FusionError, alpha_grid, fuse, two_view_weights
from .graph import Graph, GraphError, write_edge_list
from .ingest import (
    ActivityFilterConfig,
    EventKind,
    IngestError,
    PageDataset,
    active_users,
    common_users,
    dataset_stats,
    merge_datasets,
    read_event_file,
    restrict_events,
    write_events,
)
from .synth import PlantedSpec, SynthError, evaluate_planted, generate, parse_spec_text
from .views import (
    ViewSet,
    build_colike_view,
    build_comment_view,
    build_mutual_comment_like_view,
    build_post_view,
    make_viewset,
)

log = logging.getLogger("mvcomm")

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2
DEFAULT_OUT = "out"


class UsageError(Exception):
    pass


# -- argument parsing ---------------------------------------------------

def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-step", type=float, default=0.2)
    p.add_argument("--include-endpoints", type=_bool, default=True, metavar="{true,false}")
    p.add_argument("--detector", choices=["multilevel", "lpa"], default="multilevel")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help=f"output directory (default: ./{DEFAULT_OUT})")


def _pipeline_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", action="append", default=[], metavar="PATH",
                   help="event log; repeat for several files")
    p.add_argument("--pages", default=None, help="comma-separated page ids to keep")
    p.add_argument("--strict", action="store_true", help="treat input diagnostics as errors")
    p.add_argument("--filter", choices=["none", "active"], default="none")
    p.add_argument("--min-post-likers", type=int, default=2)
    p.add_argument("--min-comment-likers", type=int, default=1)
    p.add_argument("--views", choices=["page", "multipage"], default="page")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--max-likers", type=int, default=None,
                   help="skip posts/comments with more likers than this when forming co-like pairs")
    p.add_argument("--score-partition", default=None, metavar="FILE",
                   help="externally computed partition to score on the fused graph")
    _sweep_flags(p)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvcomm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _pipeline_parent()
    sub.add_parser("stats", parents=[parent], help="per-page users/posts/comments/likes")
    sub.add_parser("filter", parents=[parent], help="keep only active users' events")
    sub.add_parser("detect", parents=[parent], help="detect communities in both views and the fused graph")
    sub.add_parser("sweep", parents=[parent], help="sweep view weights and keep the best modularity")
    sub.add_parser("hist", parents=[parent], help="per-user activity histograms")

    s = sub.add_parser("synth", help="generate a planted-partition benchmark and evaluate it")
    s.add_argument("--spec-file", default=None, help="key = value file; explicit flags override it")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--communities", type=int, default=None)
    s.add_argument("--p-in", type=_floats, default=None)
    s.add_argument("--p-out", type=_floats, default=None)
    s.add_argument("--inactive", type=_floats, default=None, help="inactive fraction per view")
    s.add_argument("--n-views", type=int, default=None)
    s.add_argument("--disjoint-inactive", type=_bool, default=None, metavar="{true,false}")
    s.add_argument("--alpha", type=float, default=0.5, help="weight of view 1 for the merged row")
    s.add_argument("--evaluate", action=argparse.BooleanOptionalAction, default=True)
    _sweep_flags(s)
    return parser


# -- helpers ------------------------------------------------------------

def _out_dir(args) -> str:
    path = args.out or DEFAULT_OUT
    os.makedirs(path, exist_ok=True)
    return path


def _write(path: str, writer) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer(fh)


def _print_table(rows: Sequence[Sequence[object]], file=None) -> None:
    file = file or sys.stdout
    cells = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    for r in cells:
        file.write("  ".join(c.ljust(w) if k == 0 else c.rjust(w)
                             for k, (c, w) in enumerate(zip(r, widths))).rstrip() + "\n")


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name)


def _validate(args) -> None:
    errors = []
    if args.command != "synth":
        if not args.input:
            errors.append("--input is required")
        for path in args.input:
            if not os.path.isfile(path):
                errors.append(f"cannot read input {path!r}")
        for name in ("min_post_likers", "min_comment_likers"):
            if getattr(args, name) < 1:
                errors.append(f"--{name.replace('_', '-')} must be >= 1")
        if args.max_likers is not None and args.max_likers < 2:
            errors.append("--max-likers must be >= 2")
        if args.score_partition and not os.path.isfile(args.score_partition):
            errors.append(f"cannot read partition {args.score_partition!r}")
    if not (0.0 <= args.alpha <= 1.0):
        errors.append(f"--alpha must lie in [0, 1], got {args.alpha}")
    if args.command in ("sweep", "synth"):
        try:
            alpha_grid(2, args.grid_step, include_endpoints=args.include_endpoints)
        except FusionError as exc:
            errors.append(str(exc))
    if errors:
        raise UsageError("\n".join(f"config error {i + 1}: {e}" for i, e in enumerate(errors)))


def _load(args) -> List[PageDataset]:
    groups = []
    for path in args.input:
        try:
            datasets, diags = read_event_file(path, strict=args.strict)
        except OSError as exc:
            raise UsageError(f"cannot read input {path!r}: {exc}") from exc
        for d in diags:
            print(d, file=sys.stderr)
        groups.append(datasets)
    ds = merge_datasets(groups)
    if args.pages:
        wanted = [p.strip() for p in args.pages.split(",") if p.strip()]
        by_id = {d.page_id: d for d in ds}
        missing = [p for p in wanted if p not in by_id]
        if missing:
            raise UsageError(f"page(s) not found in input: {', '.join(missing)}")
        ds = [by_id[p] for p in wanted]
    return ds


def _filter_cfg(args) -> ActivityFilterConfig:
    return ActivityFilterConfig(args.min_post_likers, args.min_comment_likers)


def _build_viewset(args, ds: List[PageDataset]) -> ViewSet:
    cfg = _filter_cfg(args)
    if args.views == "page":
        if len(ds) != 1:
            raise UsageError(f"--views page needs exactly one page, input has {len(ds)}; use --pages")
        d = ds[0]
        users = active_users(d, cfg) if args.filter == "active" else None
        graphs = [build_post_view(d, users, max_likers=args.max_likers),
                  build_comment_view(d, users, max_likers=args.max_likers)]
        return make_viewset(graphs, ["post", "comment"])
    if len(ds) < 2:
        raise UsageError(f"--views multipage needs at least two pages, input has {len(ds)}")
    if args.filter == "active":
        users = set.intersection(*(active_users(d, cfg) for d in ds))
    else:
        users = common_users(ds)
    if not users:
        raise UsageError("the selected pages share no users")
    graphs = [build_colike_view(ds, users, max_likers=args.max_likers),
              build_mutual_comment_like_view(ds, users)]
    return make_viewset(graphs, ["colike", "mutual"])


def _score_external(args, fused: Graph):
    with open(args.score_partition, encoding="utf-8") as fh:
        p = read_partition(fh, fused)
    return p, cluster_stats(fused, p)


# -- subcommands --------------------------------------------------------

def cmd_stats(args) -> int:
    ds = _load(args)
    rows: List[Tuple] = [("page", "users", "posts", "comments", "likes")]
    for d in ds:
        rows.append((d.page_id,) + dataset_stats(d).as_tuple())
    if not ds:
        rows.append(("-", 0, 0, 0, 0))
    _print_table(rows)
    if args.out:
        _write(os.path.join(_out_dir(args), "stats.tsv"),
               lambda fh: fh.writelines("\t".join(map(str, r)) + "\n" for r in rows))
    return EXIT_OK


def cmd_filter(args) -> int:
    ds = _load(args)
    cfg = _filter_cfg(args)
    out = _out_dir(args)
    rows: List[Tuple] = [("page", "active", "users", "posts", "comments", "likes")]
    kept = []
    for d in ds:
        users = active_users(d, cfg)
        sub = restrict_events(d, users)
        kept.extend(sub.events)
        rows.append((d.page_id, len(users)) + dataset_stats(sub).as_tuple())
    _write(os.path.join(out, "filtered.tsv"), lambda fh: write_events(kept, fh))
    _print_table(rows)
    return EXIT_OK


def _stats_column(g: Graph, p: Partition) -> List[object]:
    st = cluster_stats(g, p)
    return [g.n, g.num_edges, st.clusters, st.isolates, st.modularity]


def cmd_detect(args) -> int:
    ds = _load(args)
    vs = _build_viewset(args, ds)
    fused = fuse(vs, two_view_weights(args.alpha))
    out = _out_dir(args)

    columns = [("View 1", vs.views[0]), ("View 2", vs.views[1]), ("Merged", fused)]
    names = ["view1", "view2", "merged"]
    stats = []
    for (title, g), name in zip(columns, names):
        p = detect(g, args.detector, args.seed)
        stats.append((title, _stats_column(g, p)))
        _write(os.path.join(out, f"partition_{name}.tsv"), lambda fh, g=g, p=p: write_partition(g, p, fh))
        _write(os.path.join(out, f"edges_{name}.tsv"), lambda fh, g=g: write_edge_list(g, fh))
        if name == "merged":
            _write(os.path.join(out, "partition.tsv"), lambda fh, g=g, p=p: write_partition(g, p, fh))
    if args.score_partition:
        p_ext, _ = _score_external(args, fused)
        stats.append(("External", _stats_column(fused, p_ext)))

    labels = ["Users", "Edges", "Clusters", "Isolates", "Modularity"]

    def fmt(v, digits):
        return f"{v:.{digits}f}" if isinstance(v, float) else str(v)

    def table(digits):
        rows = [["Category"] + [t for t, _ in stats]]
        for r, label in enumerate(labels):
            rows.append([label] + [fmt(col[r], digits) for _, col in stats])
        return rows

    _write(os.path.join(out, "detect_stats.tsv"),
           lambda fh: fh.writelines("\t".join(r) + "\n" for r in table(12)))
    print(f"views: {', '.join(vs.labels)}  alpha: {two_view_weights(args.alpha).format()}"
          f"  detector: {args.detector}")
    _print_table(table(4))
    return EXIT_OK


def cmd_sweep(args) -> int:
    ds = _load(args)
    vs = _build_viewset(args, ds)
    grid = alpha_grid(vs.k, args.grid_step, include_endpoints=args.include_endpoints)
    result = sweep_detect(vs, grid, args.detector, args.seed)
    out = _out_dir(args)
    best = result.best
    _write(os.path.join(out, "sweep.tsv"), lambda fh: write_sweep_report(result, fh))
    _write(os.path.join(out, "partition.tsv"), lambda fh: write_partition(best.graph, best.partition, fh))

    rows = [("alpha", "modularity", "clusters", "isolates", "")]
    for idx, e in enumerate(result.entries):
        rows.append((e.weights.format(), f"{e.modularity:.4f}", e.clusters, e.isolates,
                     "*" if idx == result.selected else ""))
    _print_table(rows)
    print(f"selected={result.selected} ({best.weights.format()})")
    if args.score_partition:
        _, st = _score_external(args, best.graph)
        print(f"external partition on selected graph: modularity={st.modularity:.4f}"
              f" clusters={st.clusters} isolates={st.isolates}")
    return EXIT_OK


HIST_KINDS = (
    ("post_likes", EventKind.POST_LIKE),
    ("comment_likes", EventKind.COMMENT_LIKE),
    ("comments", EventKind.COMMENT),
)


def activity_histogram(d: PageDataset, kind: EventKind) -> Dict[int, int]:
    """Number of users per activity count, for users with at least one event."""
    per_user = Counter(ev.actor_id for ev in d.events if ev.kind is kind)
    return dict(sorted(Counter(per_user.values()).items()))


def cmd_hist(args) -> int:
    ds = _load(args)
    out = _out_dir(args)
    rows: List[Tuple] = [("page", "histogram", "users", "max", "file")]
    for d in ds:
        for name, kind in HIST_KINDS:
            hist = activity_histogram(d, kind)
            fname = f"hist_{name}_{_safe(d.page_id)}.tsv"

            def writer(fh, hist=hist):
                fh.write("#value\tcount\n")
                for value, count in hist.items():
                    fh.write(f"{value}\t{count}\n")

            _write(os.path.join(out, fname), writer)
            rows.append((d.page_id, name, sum(hist.values()), max(hist, default=0), fname))
    _print_table(rows)
    return EXIT_OK


def _synth_spec(args) -> PlantedSpec:
    raw: Dict[str, object] = {}
    if args.spec_file:
        try:
            with open(args.spec_file, encoding="utf-8") as fh:
                raw.update(parse_spec_text(fh))
        except OSError as exc:
            raise UsageError(f"cannot read spec file {args.spec_file!r}: {exc}") from exc
    flags = {
        "n": args.n, "communities": args.communities, "p_in": args.p_in, "p_out": args.p_out,
        "inactive": args.inactive, "views": args.n_views, "disjoint_inactive": args.disjoint_inactive,
    }
    raw.update({k: v for k, v in flags.items() if v is not None})
    if "n" not in raw:
        raise UsageError("synth needs --n (or n in --spec-file)")

    def per_view(value):
        if isinstance(value, str):
            try:
                return _floats(value)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
        return value

    disjoint = raw.get("disjoint_inactive", False)
    if isinstance(disjoint, str):
        try:
            disjoint = _bool(disjoint)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
    kwargs = dict(n=raw["n"], disjoint_inactive=disjoint, seed=args.seed)
    for key, field_name in (("communities", "k_communities"), ("views", "views")):
        if key in raw:
            kwargs[field_name] = raw[key]
    for key, field_name in (("p_in", "p_in"), ("p_out", "p_out"), ("inactive", "inactive_fraction")):
        if key in raw:
            kwargs[field_name] = per_view(raw[key])
    return PlantedSpec(**kwargs)


def cmd_synth(args) -> int:
    spec = _synth_spec(args)
    vs, truth = generate(spec)
    out = _out_dir(args)
    for label, g in zip(vs.labels, vs.views):
        _write(os.path.join(out, f"{label}.tsv"), lambda fh, g=g: write_edge_list(g, fh))
    _write(os.path.join(out, "truth.tsv"), lambda fh: write_partition(vs.views[0], truth, fh))
    print(f"generated n={spec.n} communities={spec.k_communities} views={spec.views} seed={spec.seed}")
    if not args.evaluate:
        return EXIT_OK
    if spec.n == 0:
        raise UsageError("nothing to evaluate on an empty graph; pass --no-evaluate")
    grid = alpha_grid(vs.k, args.grid_step, include_endpoints=args.include_endpoints)
    fixed = two_view_weights(args.alpha) if vs.k == 2 else None
    rows, selected = evaluate_planted(vs, truth, grid, args.detector, args.seed, fixed)

    def writer(fh):
        fh.write("#method\talpha\tmodularity\tclusters\tisolates\tnmi\n")
        for r in rows:
            alpha = r.weights.format() if r.weights is not None else "-"
            fh.write(f"{r.method}\t{alpha}\t{r.modularity:.12f}\t{r.clusters}\t{r.isolates}\t{r.nmi:.12f}\n")
        fh.write(f"selected={selected}\n")

    _write(os.path.join(out, "synth_report.tsv"), writer)
    table = [("method", "alpha", "modularity", "clusters", "isolates", "nmi")]
    for idx, r in enumerate(rows):
        mark = "*" if idx == selected else ""
        table.append((r.method + mark, r.weights.format() if r.weights else "-",
                      f"{r.modularity:.4f}", r.clusters, r.isolates, f"{r.nmi:.4f}"))
    _print_table(table)
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "filter": cmd_filter,
    "detect": cmd_detect,
    "sweep": cmd_sweep,
    "hist": cmd_hist,
    "synth": cmd_synth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        _validate(args)
        return COMMANDS[args.command](args)
    except (UsageError, IngestError, GraphError, SynthError) as exc:
        print(f"mvcomm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"mvcomm: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
