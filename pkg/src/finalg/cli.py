"""Command-line entry point: ``finalg run | sweep | describe``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import limits
from .errors import BadInput, FinalgError, TooLarge, UnknownScenario, UnsupportedField


def _dump(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _emit_tsv(records: list[dict]) -> None:
    print("scenario\tcheck\toutcome", file=sys.stderr)
    for r in records:
        print(f"{r.get('scenario', r.get('family'))}\t{r['check']}\t{r['outcome']}", file=sys.stderr)


def _apply_limits(args) -> None:
    if getattr(args, "max_algebra_card", None) is not None:
        os.environ["FINALG_MAX_CARD"] = str(args.max_algebra_card)


def cmd_run(args) -> int:
    from .scenarios import SCENARIOS, Context, run_scenario

    _apply_limits(args)
    if args.all:
        ids = list(SCENARIOS)
    elif args.scenario:
        ids = [args.scenario]
    else:
        raise BadInput("give a scenario id or --all")
    for sid in ids:
        if sid not in SCENARIOS:
            raise UnknownScenario(f"unknown scenario {sid!r}; known: {', '.join(SCENARIOS)}")
    ctx = Context(
        seed=args.seed,
        max_card=args.max_algebra_card,
        max_group_card=args.max_group_card,
        engel_cap=args.engel_cap,
        timing=args.timing,
    )
    if args.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            batches = list(pool.map(run_scenario, ids, [ctx] * len(ids)))
    else:
        batches = [run_scenario(sid, ctx) for sid in ids]
    records = [r for batch in batches for r in batch]
    for r in records:
        print(_dump(r))
    if args.tsv:
        _emit_tsv(records)
    return 1 if any(r["outcome"] == "fail" for r in records) else 0


def cmd_sweep(args) -> int:
    from .sweeps import sweep

    _apply_limits(args)
    flagged, summary = sweep(args.family, args.check, jobs=args.jobs)
    for r in flagged:
        print(_dump(r))
    print(_dump({"summary": summary}))
    if args.tsv:
        _emit_tsv(flagged)
    return 1 if summary["inconsistencies"] else 0


def _load_input(target: str):
    from .algebra import Algebra
    from .restricted import RestrictedLieAlgebra
    from .scenarios import describe_builtin

    path = Path(target)
    if path.is_file():
        try:
            obj = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise BadInput(f"cannot read {target}: {exc}") from exc
        if not isinstance(obj, dict):
            raise BadInput("input JSON must be an object")
        if "bracket" in obj:
            return RestrictedLieAlgebra.from_json(obj)
        if "table" in obj:
            return Algebra.from_json(obj)
        raise BadInput("input JSON is neither an algebra nor a restricted Lie algebra")
    return describe_builtin(target)


def describe(target: str, max_card: int | None = None) -> dict:
    from .algebra import Algebra, center
    from .liestruct import is_lie_nilpotent, is_lie_solvable
    from .radical import radical
    from .restricted import RestrictedLieAlgebra, compute_P
    from .unitgroup import enumerate_units, is_nilpotent_group, is_solvable

    obj = _load_input(target)
    out: dict = {"input": target}
    if isinstance(obj, RestrictedLieAlgebra):
        L = obj
        out["restricted_lie_algebra"] = {"dim": L.dim, "field": L.field.name, "abelian": L.is_abelian()}
        try:
            P = compute_P(L)
            out["restricted_lie_algebra"]["P"] = P.to_json()
        except TooLarge:
            out["restricted_lie_algebra"]["P"] = "skipped(TooLarge)"
        A = L.u
        out["kind"] = "enveloping_algebra"
    else:
        A = obj
        out["kind"] = "algebra"
    F = A.field
    out["field"] = {"name": F.name, "characteristic": F.p, "order": F.order if F.is_finite else "infinite",
                    "perfect": F.is_perfect}
    if A.dim == 1:
        out["kind"] = "field" if out["kind"] == "algebra" else out["kind"]
    out["dim"] = A.dim
    try:
        rep = radical(A)
        out["radical"] = {"dim": rep.dim, "nilpotency_index": rep.nilpotency_index}
    except UnsupportedField:
        out["radical"] = "unsupported field"
    out["center_dim"] = center(A).dim
    out["lie_solvable"] = list(is_lie_solvable(A))
    out["lie_nilpotent"] = list(is_lie_nilpotent(A))
    if F.is_finite:
        try:
            G = enumerate_units(A, max_card)
            out["units"] = {
                "order": G.order,
                "abelian": G.is_abelian(),
                "solvable": list(is_solvable(G)),
                "nilpotent": list(is_nilpotent_group(G)),
            }
        except TooLarge:
            out["units"] = "skipped(TooLarge)"
    return out


def cmd_describe(args) -> int:
    _apply_limits(args)
    print(_dump(describe(args.input, args.max_algebra_card)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finalg", description="Exact finite algebra checks")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run built-in scenarios")
    run.add_argument("scenario", nargs="?", help="scenario id")
    run.add_argument("--all", action="store_true", help="run every scenario")
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--tsv", action="store_true", help="also write a TSV summary to stderr")
    run.add_argument("--max-algebra-card", type=int, default=None)
    run.add_argument("--max-group-card", type=int, default=None)
    run.add_argument("--engel-cap", type=int, default=limits.DEFAULT_ENGEL_CAP)
    run.add_argument("--timing", action="store_true", help="add wall-clock seconds to each record")
    run.set_defaults(func=cmd_run)

    sw = sub.add_parser("sweep", help="run a property check over a corpus")
    sw.add_argument("family")
    sw.add_argument("check")
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--tsv", action="store_true")
    sw.add_argument("--max-algebra-card", type=int, default=None)
    sw.set_defaults(func=cmd_sweep)

    de = sub.add_parser("describe", help="structural profile of an input file or built-in")
    de.add_argument("input")
    de.add_argument("--max-algebra-card", type=int, default=None)
    de.set_defaults(func=cmd_describe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    saved = os.environ.get("FINALG_MAX_CARD")
    try:
        return args.func(args)
    except FinalgError as exc:
        print(f"finalg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        # --max-algebra-card is scoped to this invocation
        if saved is None:
            os.environ.pop("FINALG_MAX_CARD", None)
        else:
            os.environ["FINALG_MAX_CARD"] = saved


if __name__ == "__main__":
    sys.exit(main())
