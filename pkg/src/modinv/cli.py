"""Command-line front end: ``modinv <command> [options]``.

Exit status is 0 when no check failed, 1 when a check failed (or a group
table failed cross-validation) and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass

from . import checks
from .cache import DimCache, cache_key
from .engine import (
    FAIL,
    PASS,
    CheckRecord,
    GradedReport,
    InvariantRing,
    default_cutoff,
    generation_check,
    minimality_report,
)
from .errors import FieldConstructionError, IntegrityError, ModinvError, PreconditionError, UsageError
from .families import build_minus_generators, build_plus_generators, build_sylow_generators
from .field import FieldContext, make_field
from .groups import build_group, expected_order
from .poly import RingContext

log = logging.getLogger("modinv")

COMMANDS = ("group", "generators", "dims", "verify", "noether", "o2minus", "report")
VERIFY_FLAGS = ("generation", "minimality", "free_module", "hilbert_ideal", "transfer_suite", "identity_suite")


@dataclass
class RunConfig:
    command: str
    s: int = 2
    m: int = 2
    group: str = "plus"
    max_degree: int | None = None
    format: str = "json"
    cache: str | None = None
    modulus: str | None = None
    checks: tuple = ()

    def cutoff(self, q: int) -> int:
        return self.max_degree if self.max_degree is not None else default_cutoff(q, self.m)


def _parse_modulus(text: str | None):
    if text is None:
        return None
    try:
        exps = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--modulus expects comma-separated exponents, got {text!r}") from None
    if not exps:
        raise UsageError("--modulus is empty")
    return exps


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q-exp", dest="s", type=int, default=2, help="field exponent s, q = 2^s")
    common.add_argument("--m", type=int, default=None, help="number of vector copies")
    common.add_argument("--type", "--family", dest="group", choices=("plus", "minus", "sylow"), default="plus")
    common.add_argument("--max-degree", type=int, default=None, help="degree cutoff D")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cache", default=None, help="JSON file of cached graded dimensions")
    common.add_argument("--modulus", default=None, help="exponents of the defining polynomial, e.g. 4,1,0")

    parser = argparse.ArgumentParser(prog="modinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="enumerate and cross-validate a group")
    sub.add_parser("generators", parents=[common], help="list the generator families")
    sub.add_parser("dims", parents=[common], help="graded dimensions of the invariant ring")
    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    for flag in VERIFY_FLAGS:
        v.add_argument("--" + flag.replace("_", "-"), dest=flag, action="store_true")
    v.add_argument("--all", action="store_true")
    sub.add_parser("noether", parents=[common], help="minimal generators and Noether number")
    sub.add_parser("o2minus", parents=[common], help="minus-type reports")
    sub.add_parser("report", parents=[common], help="every check for the given parameters")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    chosen = tuple(f for f in VERIFY_FLAGS if getattr(args, f, False))
    if getattr(args, "all", False):
        chosen = VERIFY_FLAGS
    m = args.m
    if m is None:
        m = 1 if args.command == "o2minus" else 2
    cfg = RunConfig(
        command=args.command,
        s=args.s,
        m=m,
        group=args.group,
        max_degree=args.max_degree,
        format=args.format,
        cache=args.cache,
        modulus=args.modulus,
        checks=chosen,
    )
    if cfg.command == "verify" and not cfg.checks:
        raise UsageError("verify needs at least one check flag or --all")
    if cfg.m < 1:
        raise UsageError("--m must be positive")
    if cfg.max_degree is not None and cfg.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    if not 2 <= cfg.s:
        raise UsageError("--q-exp must be at least 2")
    if cfg.s > 4:
        log.warning("q-exp %d is outside the bundled profiles (2..4); runs may be slow", cfg.s)
    return cfg


# --- commands -------------------------------------------------------------------------------------


def _group_record(F: FieldContext, kind: str) -> CheckRecord:
    try:
        table = build_group(F, kind)
    except IntegrityError as exc:
        return CheckRecord(f"group.{kind}", "group enumeration matches brute-force search", FAIL, details={"error": str(exc)})
    exp = expected_order(F.q, kind)
    info = table.describe()
    return CheckRecord(
        name=f"group.{kind}",
        anchor=f"|O| = {'2(q-1)' if kind == 'plus' else '2(q+1)' if kind == 'minus' else '2'} and brute-force agreement",
        status=PASS if table.order == exp == table.brute_force_count else FAIL,
        details=info,
    )


def _generator_set(ring: RingContext, kind: str):
    if kind == "plus":
        return build_plus_generators(ring)
    if kind == "sylow":
        return build_sylow_generators(ring)
    if ring.m != 1:
        raise UsageError("named minus-type generators exist only for --m 1")
    return build_minus_generators(ring, build_group(ring.field, "minus"))


def _listed_minimal(gs):
    return gs.extras["minimal"] if gs.group_kind == "sylow" else gs.minimal()


def cmd_group(cfg: RunConfig, F: FieldContext, cache) -> list:
    return [_group_record(F, cfg.group)]


def cmd_generators(cfg: RunConfig, F: FieldContext, cache) -> list:
    gs = _generator_set(RingContext(F, cfg.m), cfg.group)
    listed = {g.poly for g in _listed_minimal(gs)}
    rows = [dict(row, minimal=g.poly in listed) for row, g in zip(gs.describe(), gs.items)]
    return [
        CheckRecord(
            name=f"generators.{cfg.group}",
            anchor="named generator families",
            status="reported",
            degrees=rows,
            details={"count": len(gs), "distinct": len(gs.distinct()), "listed_minimal": len(listed)},
        )
    ]


def _store_dims(cfg: RunConfig, F: FieldContext, cache: DimCache, inv: InvariantRing, D: int) -> None:
    key = cache_key(F.q, F.modulus, cfg.m, cfg.group)
    for d in range(D + 1):
        cache.put(key, d, inv.dim(d))


def cmd_dims(cfg: RunConfig, F: FieldContext, cache: DimCache) -> list:
    D = cfg.cutoff(F.q)
    key = cache_key(F.q, F.modulus, cfg.m, cfg.group)
    ring = RingContext(F, cfg.m)
    inv = None
    rows = []
    for d in range(D + 1):
        dim = cache.get(key, d)
        if dim is None:
            inv = inv or InvariantRing(ring, build_group(F, cfg.group))
            dim = inv.dim(d)
            cache.put(key, d, dim)
        rows.append({"d": d, "dim_invariants": dim})
    return [CheckRecord("dims", f"graded dimensions of the {cfg.group}-type invariants", "reported", degrees=rows)]


def _need_m2(cfg: RunConfig, what: str) -> None:
    if cfg.m != 2:
        raise UsageError(f"{what} is defined for --m 2")


def cmd_verify(cfg: RunConfig, F: FieldContext, cache: DimCache) -> list:
    D = cfg.cutoff(F.q)
    ring = RingContext(F, cfg.m)
    records: list = []
    wanted = set(cfg.checks)
    if cfg.checks == VERIFY_FLAGS and cfg.m != 2:
        wanted -= {"free_module", "identity_suite"}
    if cfg.group != "plus":
        bad = wanted & {"free_module", "hilbert_ideal", "transfer_suite", "identity_suite"}
        if bad and cfg.checks != VERIFY_FLAGS:
            raise UsageError(f"{', '.join(sorted(bad))} apply to --type plus only")
        wanted -= {"free_module", "hilbert_ideal", "transfer_suite", "identity_suite"}
    if wanted & {"generation", "minimality"}:
        table = build_group(F, cfg.group)
        gs = _generator_set(ring, cfg.group)
        inv = InvariantRing(ring, table)
        if "minimality" in wanted:
            rep = minimality_report(gs, table, D, listed=_listed_minimal(gs), inv=inv)
            recs = rep.checks if "generation" in wanted else [c for c in rep.checks if c.name != "generation"]
            records += recs
        else:
            records += generation_check(gs, table, D, inv).checks
        _store_dims(cfg, F, cache, inv, D)
    if "free_module" in wanted:
        _need_m2(cfg, "--free-module")
        records += checks.free_module_check(F, D).checks
    if "hilbert_ideal" in wanted:
        records += checks.hilbert_ideal_check(F, cfg.m, D).checks
    if "transfer_suite" in wanted:
        bounds = checks.TransferBounds.default(F.q, cfg.m)
        if cfg.max_degree is not None:
            bounds.max_degree = cfg.max_degree
        records += checks.transfer_membership_suite(F, cfg.m, bounds).checks
    if "identity_suite" in wanted:
        _need_m2(cfg, "--identity-suite")
        records += checks.identity_suite(F).checks
    return records


def cmd_noether(cfg: RunConfig, F: FieldContext, cache: DimCache) -> list:
    D = cfg.cutoff(F.q)
    ring = RingContext(F, cfg.m)
    table = build_group(F, cfg.group)
    inv = InvariantRing(ring, table)
    if cfg.group == "minus" and cfg.m != 1:
        rep = minimality_report([], table, D, listed=[], inv=inv)
        out = [c for c in rep.checks if c.name == "noether_number"]
    else:
        gs = _generator_set(ring, cfg.group)
        rep = minimality_report([], table, D, listed=_listed_minimal(gs), inv=inv)
        out = [c for c in rep.checks if c.name in ("minimality", "noether_number")]
    _store_dims(cfg, F, cache, inv, D)
    return out


def cmd_o2minus(cfg: RunConfig, F: FieldContext, cache: DimCache) -> list:
    D = cfg.max_degree if cfg.max_degree is not None else 20
    records = [_group_record(F, "minus")]
    records += checks.univariate_reports(F, D).checks
    return records


def cmd_report(cfg: RunConfig, F: FieldContext, cache: DimCache) -> list:
    records = [_group_record(F, k) for k in ("plus", "minus", "sylow")]
    verify_cfg = RunConfig(**dict(asdict(cfg), command="verify", group="plus", checks=VERIFY_FLAGS))
    records += cmd_verify(verify_cfg, F, cache)
    records += checks.univariate_reports(F, 20).checks
    return records


DISPATCH = {
    "group": cmd_group,
    "generators": cmd_generators,
    "dims": cmd_dims,
    "verify": cmd_verify,
    "noether": cmd_noether,
    "o2minus": cmd_o2minus,
    "report": cmd_report,
}


def run(cfg: RunConfig) -> dict:
    """Execute one command and return the report document (without timing)."""
    F = make_field(cfg.s, _parse_modulus(cfg.modulus))
    cache = DimCache(cfg.cache)
    try:
        records = DISPATCH[cfg.command](cfg, F, cache)
    except IntegrityError as exc:
        records = [CheckRecord("integrity", "group enumeration matches brute-force search", FAIL, details={"error": str(exc)})]
    cache.save()
    report = GradedReport({}, records)
    config = asdict(cfg)
    config["checks"] = list(cfg.checks)
    return {
        "config": config,
        "field": F.describe(),
        "checks": [c.to_dict() for c in records],
        "status": report.status,
    }


def render_text(doc: dict) -> str:
    f = doc["field"]
    lines = [f"modinv {doc['config']['command']}  q={f['q']}  status={doc['status']}"]
    for c in doc["checks"]:
        lines.append(f"[{c['status']:>8}] {c['name']}: {c['anchor']}")
        for row in c["degrees"]:
            lines.append("           " + "  ".join(f"{k}={row[k]}" for k in row))
        for k in sorted(c["details"]):
            v = c["details"][k]
            if k != "elements":
                lines.append(f"           {k}: {v}")
        for w in c["witnesses"]:
            lines.append(f"           witness: {w}")
    if "timing" in doc:
        lines.append(f"elapsed {doc['timing']['seconds']:.3f}s")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        cfg = config_from_args(args)
        doc = run(cfg)
    except (UsageError, PreconditionError, FieldConstructionError) as exc:
        print(f"modinv: error: {exc}", file=sys.stderr)
        return 2
    except ModinvError as exc:
        print(f"modinv: error: {exc}", file=sys.stderr)
        return 1
    doc["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if cfg.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(render_text(doc))
    return 1 if doc["status"] == FAIL else 0


if __name__ == "__main__":
    sys.exit(main())
