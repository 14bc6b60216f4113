"""命令装配。

build_commands() 返回全部子命令：
- embed: 采样 FRT 树，写出树、LE 列表与统计
- metric: 近似度量表
- lelists: 只计算 LE 列表
- kmedian / bab: 下游近似算法
- solve: 直接在 G 上（或经预言机在 H 上）运行任一 MBF 实例
- hopset: 构造并校验 hop set
- generate: 生成随机连通图
"""

from __future__ import annotations

import argparse
import logging
import math
from typing import Any, List

from ..algebra import PathSet
from ..apps import approx_metric, buy_at_bulk, kmedian, load_bab_instance
from ..engine import (
    AdjacencyOperator,
    MbfAlgorithm,
    apsp,
    apwp,
    connectivity,
    fire,
    hop_apsp,
    kdsdp,
    ksdp,
    kssp,
    mbf_run,
    mssp,
    mswp,
    source_detection,
    sssp,
    sswp,
)
from ..errors import InvalidParameterError
from ..frt import (
    build_context,
    compute_le_lists,
    le_list_stats,
    le_lists_to_jsonl,
    reconstruct_path,
    sample_tree,
    stretch_report,
    tree_to_tsv,
)
from ..graph import path_weight, random_connected_graph, save_graph
from ..hopset import resolve_hopset
from ..rng import stream
from ..simgraph import oracle_run
from .router import Command, FunctionCommand, RunContext, positive_int
from .storage import format_tsv, output_dir, write_json, write_text

logger = logging.getLogger(__name__)

SOLVE_ALGOS = (
    "apsp",
    "sssp",
    "mssp",
    "kssp",
    "hop-apsp",
    "source-detection",
    "fire",
    "sswp",
    "widest",
    "apwp",
    "mswp",
    "ksdp",
    "kdsdp",
    "connectivity",
)


def _node_list(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated node ids, got {raw!r}")


def _resolved(ctx: RunContext, g):
    cfg = ctx.services.embed_config()
    return resolve_hopset(g, cfg.hopset, verify_cap=cfg.verify_cap, executor=ctx.services.executor)


def _hopset_summary(resolved) -> dict[str, Any]:
    out = {
        "d": resolved.d,
        "eps_hat": resolved.eps_hat,
        "extra_edges": resolved.aug.extra_edges,
        "fallback": resolved.fallback,
    }
    if resolved.report is not None:
        out["max_ratio"] = resolved.report.max_ratio
        out["passed"] = resolved.report.passed
    return out


# ---- embed ----


def _configure_embed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stats", action="store_true", help="计算伸缩率统计（逐对，需要 n ≤ pair_cap）")
    p.add_argument("--paths", action="store_true", help="还原每条树边的 G 路径并检查权重 ≤ 3·ω_T")


def cmd_embed(ctx: RunContext) -> int:
    g = ctx.load_input()
    args = ctx.args
    executor = ctx.services.executor
    cfg = ctx.services.embed_config(record_trace=args.paths)
    resolved = _resolved(ctx, g)
    outdir = output_dir(args.output)

    trees = []
    samples = []
    for s in range(ctx.settings.samples):
        le_run, tree = sample_tree(g, cfg, s, resolved=resolved, executor=executor)
        trees.append(tree)
        entry: dict[str, Any] = {
            "sample": s,
            "iterations": le_run.run.iterations,
            "Lambda": le_run.context.H.Lambda,
            "beta": tree.beta,
            "depth": tree.depth,
            "tree_nodes": len(tree.nodes),
            "le_lists": le_list_stats(le_run.lists).as_dict(),
        }
        if args.paths:
            worst = 0.0
            for node in tree.nodes:
                if node.parent < 0:
                    continue
                walk = reconstruct_path(tree, node.id, le_run.run.trace, resolved.aug)
                worst = max(worst, path_weight(g, walk) / node.weight)
            entry["max_path_ratio"] = worst
        samples.append(entry)
        if outdir is not None:
            write_text(outdir / f"tree_{s:03d}.tsv", tree_to_tsv(tree))
            write_text(outdir / f"lelists_{s:03d}.jsonl", le_lists_to_jsonl(le_run.lists))

    summary: dict[str, Any] = {
        "n": g.n,
        "m": g.m,
        "seed": ctx.settings.seed,
        "hopset": _hopset_summary(resolved),
        "samples": samples,
    }
    if args.stats:
        summary["stretch"] = stretch_report(g, trees, cap=ctx.settings.oracle.pair_cap).as_dict()

    if outdir is not None:
        write_json(outdir / "stats.json", summary)
    else:
        write_json(None, summary, ctx.stdout)
    return 0


# ---- metric ----


def cmd_metric(ctx: RunContext) -> int:
    g = ctx.load_input()
    metric = approx_metric(
        g,
        ctx.services.embed_config(),
        table_cap=ctx.settings.oracle.table_cap,
        executor=ctx.services.executor,
    )
    if ctx.args.out_format == "tsv":
        rows = ((v, w, float(metric.table[v, w])) for v in range(g.n) for w in range(v + 1, g.n))
        write_text(ctx.args.output, format_tsv(("v", "w", "dist"), rows), ctx.stdout)
    else:
        payload = {"n": g.n, "bound_factor": metric.bound_factor, "iterations": metric.iterations, "table": metric.as_rows()}
        write_json(ctx.args.output, payload, ctx.stdout)
    return 0


# ---- lelists ----


def _configure_lelists(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sources", type=_node_list, help="只对这些节点置 x⁽⁰⁾_v = {v: 0}（逗号分隔）")


def cmd_lelists(ctx: RunContext) -> int:
    g = ctx.load_input()
    sources = set(ctx.args.sources) if ctx.args.sources else None
    le_run = compute_le_lists(g, ctx.services.embed_config(), 0, sources=sources, executor=ctx.services.executor)
    write_text(ctx.args.output, le_lists_to_jsonl(le_run.lists), ctx.stdout)
    return 0


# ---- kmedian ----


def _configure_kmedian(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=positive_int, required=True)


def cmd_kmedian(ctx: RunContext) -> int:
    """多次采样时取目标值最小的一次（同值取编号小的）。"""
    g = ctx.load_input()
    cfg = ctx.services.embed_config()
    best = None
    for s in range(ctx.settings.samples):
        sol = kmedian(
            g,
            ctx.args.k,
            cfg,
            s,
            round_factor=ctx.settings.kmedian.round_factor,
            executor=ctx.services.executor,
        )
        if best is None or sol.objective < best.objective:
            best = sol
    write_json(ctx.args.output, best.as_dict(), ctx.stdout)
    return 0


# ---- buy-at-bulk ----


def _configure_bab(p: argparse.ArgumentParser) -> None:
    p.add_argument("--demands", required=True, help='JSON：{"demands": [[s, t, d]], "cables": [[u, c]]}')


def cmd_bab(ctx: RunContext) -> int:
    g = ctx.load_input()
    demands, cables = load_bab_instance(ctx.args.demands)
    sol = buy_at_bulk(g, demands, cables, ctx.services.embed_config(), executor=ctx.services.executor)
    if ctx.args.out_format == "tsv":
        rows = [(e["u"], e["v"], e["cable"], e["multiplicity"]) for e in sol.as_dict()["edges"]]
        write_text(ctx.args.output, format_tsv(("u", "v", "cable", "multiplicity"), rows), ctx.stdout)
    else:
        write_json(ctx.args.output, sol.as_dict(), ctx.stdout)
    return 0


# ---- solve ----


def _configure_solve(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", choices=SOLVE_ALGOS, required=True)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--sources", type=_node_list)
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int, help="迭代轮数；省略时迭代到不动点")
    p.add_argument("--dist", type=float, default=math.inf, help="source-detection / fire 的距离上限")
    p.add_argument(
        "--on-h",
        dest="on_h",
        action="store_true",
        help=(
            "经预言机在模拟图 H 上运行；只支持距离类实例 "
            "apsp/sssp/mssp/kssp/hop-apsp/source-detection/fire，其余实例退出码 2"
        ),
    )


def build_instance(args: argparse.Namespace, n: int, path_cap: int) -> MbfAlgorithm:
    """把 solve 的参数映射成 MbfAlgorithm。"""
    algo = args.algo
    sources = set(args.sources) if args.sources else {args.source}
    k = args.k
    if algo in ("kssp", "ksdp", "kdsdp") and k is None:
        raise InvalidParameterError(f"--k is required for {algo}")
    if algo == "apsp":
        alg = apsp(n)
    elif algo == "sssp":
        alg = sssp(n, args.source)
    elif algo == "mssp":
        alg = mssp(n, sources)
    elif algo == "kssp":
        alg = kssp(n, k)
    elif algo == "hop-apsp":
        if args.h is None:
            raise InvalidParameterError("--h is required for hop-apsp")
        return hop_apsp(n, args.h)
    elif algo == "source-detection":
        alg = source_detection(n, sources, d=args.dist, k=k)
    elif algo == "fire":
        alg = fire(n, sources, args.dist)
    elif algo in ("sswp", "widest"):
        alg = sswp(n, args.source)
    elif algo == "apwp":
        alg = apwp(n)
    elif algo == "mswp":
        alg = mswp(n, sources)
    elif algo == "ksdp":
        alg = ksdp(n, args.source, k, path_cap=path_cap)
    elif algo == "kdsdp":
        alg = kdsdp(n, args.source, k, path_cap=path_cap)
    else:
        alg = connectivity(n)
    return alg.with_h(args.h) if args.h is not None else alg


def _encode_entry(xv: Any) -> Any:
    if isinstance(xv, frozenset):
        return sorted(xv)
    if isinstance(xv, PathSet):
        return [[w, list(p)] for p, w in sorted(xv.items(), key=lambda item: (item[1], item[0]))]
    return {str(k): w for k, w in xv.items()}


def _state_rows(state) -> list[tuple]:
    rows: list[tuple] = []
    for v, xv in enumerate(state):
        if isinstance(xv, frozenset):
            rows.extend((v, w, 1) for w in sorted(xv))
        elif isinstance(xv, PathSet):
            rows.extend(
                (v, w, "-".join(map(str, p))) for p, w in sorted(xv.items(), key=lambda item: (item[1], item[0]))
            )
        else:
            rows.extend((v, w, d) for w, d in sorted(xv.items()))
    return rows


def cmd_solve(ctx: RunContext) -> int:
    g = ctx.load_input()
    executor = ctx.services.executor
    alg = build_instance(ctx.args, g.n, ctx.settings.engine.path_cap)

    if ctx.args.on_h:
        cfg = ctx.services.embed_config()
        context = build_context(g, cfg, 0, executor=executor)
        run = oracle_run(context.H, alg, cap_const=cfg.cap_const, executor=executor)
        state, iterations, converged = run.state, run.iterations, True
    else:
        run = mbf_run(alg, AdjacencyOperator(g), executor=executor, fixpoint_cap=ctx.settings.engine.fixpoint_cap)
        state, iterations, converged = run.state, run.iterations, run.converged

    if ctx.args.out_format == "tsv":
        write_text(ctx.args.output, format_tsv(("v", "key", "value"), _state_rows(state)), ctx.stdout)
    else:
        payload = {
            "algo": alg.name,
            "iterations": iterations,
            "converged": converged,
            "state": [_encode_entry(xv) for xv in state],
        }
        write_json(ctx.args.output, payload, ctx.stdout)
    return 0


# ---- hopset ----


def cmd_hopset(ctx: RunContext) -> int:
    g = ctx.load_input()
    resolved = _resolved(ctx, g)
    payload = {"n": g.n, "m": g.m, "strategy": ctx.services.hopset_config().strategy}
    payload.update(_hopset_summary(resolved))
    write_json(ctx.args.output, payload, ctx.stdout)
    return 0


# ---- generate ----


def _configure_generate(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--extra-edges", dest="extra_edges", type=int, help="弦的条数，默认等于 n")
    p.add_argument("--max-weight", dest="max_weight", type=positive_int, help="整数权重上限，默认 n")


def cmd_generate(ctx: RunContext) -> int:
    args = ctx.args
    if not args.output or args.output == "-":
        raise InvalidParameterError("generate needs --output")
    extra = args.extra_edges if args.extra_edges is not None else args.n
    g = random_connected_graph(args.n, extra, stream(ctx.settings.seed, "generate"), args.max_weight)
    save_graph(g, args.output, args.graph_format)
    logger.info("[cli] 生成图 n=%s m=%s -> %s", g.n, g.m, args.output)
    return 0


def _no_options(p: argparse.ArgumentParser) -> None:
    return None


def build_commands() -> List[Command]:
    """全部子命令，顺序即帮助信息里的顺序。"""
    return [
        FunctionCommand("embed", "采样 FRT 树并写出树 / LE 列表 / 统计", _configure_embed, cmd_embed),
        FunctionCommand("metric", "近似度量表（H 上的 APSP）", _no_options, cmd_metric),
        FunctionCommand("lelists", "经预言机计算 LE 列表", _configure_lelists, cmd_lelists),
        FunctionCommand("kmedian", "k-median 近似", _configure_kmedian, cmd_kmedian),
        FunctionCommand("bab", "buy-at-bulk 网络设计", _configure_bab, cmd_bab),
        FunctionCommand("solve", "在 G 上运行 MBF 实例", _configure_solve, cmd_solve),
        FunctionCommand("hopset", "构造并校验 hop set", _no_options, cmd_hopset),
        FunctionCommand("generate", "生成随机连通图", _configure_generate, cmd_generate),
    ]
