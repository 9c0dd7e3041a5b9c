"""bilinrank command line: construct, verify, bound, table, audit, tower."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .audit import audit
from .cc_builder import build_algorithm, select_plan, verify_algorithm
from .errors import BilinrankError
from .ff_core import field_of_order
from .serialize import (
    bound_report_json,
    bound_table_csv,
    dumps,
    export_algorithm,
    import_algorithm,
    import_known_values,
    step_data_json,
)
from .tower_bounds import pointwise_bound, steps

COMMANDS = ("construct", "verify", "bound", "table", "audit", "tower")


@dataclass(frozen=True)
class CommandConfig:
    command: str
    q: int | None = None
    n: int | None = None
    max_degree: int = 4
    strategy: str = "default"
    mode: str | None = None
    n_from: int | None = None
    n_to: int | None = None
    seed: int = 0
    samples: int = 100_000
    workers: int = 1
    i_max: int | None = None
    fmt: str | None = None
    input: str | None = None
    known_values: str | None = None
    out: str | None = None


class ConfigError(BilinrankError):
    pass


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _require(cfg: CommandConfig, *names: str):
    for name in names:
        if getattr(cfg, name) is None:
            raise ConfigError(f"{cfg.command} needs --{name.replace('_', '-')}")


def _tower_q(cfg: CommandConfig):
    _require(cfg, "q")
    if cfg.q not in (2, 3):
        raise ConfigError(f"{cfg.command} supports q in {{2, 3}}, got {cfg.q}")


def _known(cfg: CommandConfig):
    return None if cfg.known_values is None else import_known_values(cfg.known_values)


def _construct(cfg: CommandConfig) -> int:
    _require(cfg, "q", "n")
    if cfg.n < 2:
        raise ConfigError("n must be >= 2")
    F = field_of_order(cfg.q)
    plan = select_plan(F, cfg.n, cfg.max_degree, cfg.strategy)
    alg = build_algorithm(plan)
    _emit(export_algorithm(alg), cfg.out)
    if cfg.out is not None:
        print(f"q {cfg.q} n {cfg.n} rank {alg.rank} -> {cfg.out}")
    return 0


def _verify(cfg: CommandConfig) -> int:
    _require(cfg, "input")
    try:
        text = Path(cfg.input).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {cfg.input}: {exc}") from exc
    alg = import_algorithm(text)
    mode = cfg.mode or "auto"
    rep = verify_algorithm(alg, mode, cfg.samples, cfg.seed, cfg.workers)
    lines = [
        f"mode {rep.mode}",
        f"seed {cfg.seed}",
        rep.summary(),
        f"asymmetric {rep.asymmetric}",
        f"rank {rep.rank} (lower bound {2 * rep.n - 1})",
    ]
    for x, y in rep.failures:
        lines.append(f"failure x={list(x)} y={list(y)}")
    lines.append("ok" if rep.ok else "FAILED")
    _emit("\n".join(lines) + "\n", cfg.out)
    if cfg.out is not None:
        print(rep.summary())
    return 0 if rep.ok else 1


def _bound(cfg: CommandConfig) -> int:
    _tower_q(cfg)
    _require(cfg, "n")
    rep = pointwise_bound(cfg.q, cfg.n, cfg.mode or "certified", _known(cfg))
    if (cfg.fmt or "json") == "csv":
        _emit(bound_table_csv([rep]), cfg.out)
    else:
        _emit(dumps(bound_report_json(rep)), cfg.out)
    return 0


def _table(cfg: CommandConfig) -> int:
    _tower_q(cfg)
    _require(cfg, "n_from", "n_to")
    if cfg.n_from > cfg.n_to:
        raise ConfigError("--from must not exceed --to")
    known = _known(cfg)
    reps = [pointwise_bound(cfg.q, n, cfg.mode or "certified", known) for n in range(cfg.n_from, cfg.n_to + 1)]
    if (cfg.fmt or "csv") == "csv":
        _emit(bound_table_csv(reps), cfg.out)
    else:
        _emit(dumps([bound_report_json(r) for r in reps]), cfg.out)
    return 0


def _audit(cfg: CommandConfig) -> int:
    _tower_q(cfg)
    rep = audit(cfg.q, cfg.i_max if cfg.i_max is not None else 20)
    doc = rep.to_json()
    _emit(dumps(doc), cfg.out)
    counts = ", ".join(f"{k} {v}" for k, v in doc["counts"].items())
    print(f"audit q={cfg.q}: {len(rep.items)} items ({counts})", file=sys.stderr)
    return 0 if rep.ok else 1


def _tower(cfg: CommandConfig) -> int:
    _tower_q(cfg)
    i_max = cfg.i_max if cfg.i_max is not None else 4
    out = []
    for st in steps(cfg.q):
        if st.i > i_max:
            break
        out.append(step_data_json(st))
    _emit(dumps(out), cfg.out)
    return 0


_RUNNERS = {
    "construct": _construct,
    "verify": _verify,
    "bound": _bound,
    "table": _table,
    "audit": _audit,
    "tower": _tower,
}


def run(cfg: CommandConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        return _RUNNERS[cfg.command](cfg)
    except (BilinrankError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bilinrank", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, n=False, mode=None, fmt=None):
        p.add_argument("--q", type=int, required=True)
        if n:
            p.add_argument("--n", type=int, required=True)
        if mode:
            p.add_argument("--mode", choices=mode)
        if fmt:
            p.add_argument("--format", dest="fmt", choices=fmt)
        p.add_argument("--out")

    p = sub.add_parser("construct", help="build a multiplication algorithm")
    common(p, n=True)
    p.add_argument("--max-degree", type=int, choices=(1, 2, 4), default=4)
    p.add_argument("--strategy", choices=("default", "search"), default="default")

    p = sub.add_parser("verify", help="check an algorithm file")
    p.add_argument("input")
    p.add_argument("--mode", choices=("exhaustive", "random", "auto"), default="auto")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("bound", help="pointwise bound for one n")
    common(p, n=True, mode=("certified", "paper"), fmt=("json", "csv"))
    p.add_argument("--known-values")

    p = sub.add_parser("table", help="pointwise bounds over a range of n")
    common(p, mode=("certified", "paper"), fmt=("json", "csv"))
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--known-values")

    p = sub.add_parser("audit", help="re-derive the tower inequality chains")
    common(p)
    p.add_argument("--i-max", type=int, default=20)

    p = sub.add_parser("tower", help="step data for the tower used with q")
    common(p)
    p.add_argument("--i-max", type=int, default=4)
    return ap


def parse_config(argv=None) -> CommandConfig:
    ns = vars(build_parser().parse_args(argv))
    fields = CommandConfig.__dataclass_fields__
    return CommandConfig(**{k: v for k, v in ns.items() if k in fields and v is not None})


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
