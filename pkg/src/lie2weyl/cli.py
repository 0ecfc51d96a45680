"""Command-line entry point: ``lie2weyl <command> [options]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exact import format_rational, parse_rational
from .lie import (
    CATALOG_SUITE,
    AlgebraError,
    BasisTransform,
    catalog,
    catalog_names,
    load_algebra,
    random_transform,
    serialize_algebra,
    transform,
    validate,
)
from .realization import realize
from .suites import SuiteBounds, cross_oracle_check, run_suite, suite_passed
from .verifier import check_commutators, check_covariance
from .weyl import TermBudgetExceeded

__all__ = ["RunConfig", "build_parser", "main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ALGEBRA, EXIT_INTERNAL = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebra: str = "so3"
    lam: Fraction = Fraction(1)
    order: int = 6
    suite: str = "all"
    json_path: str | None = None
    threads: int = 1
    max_n: int | None = None
    max_i: int | None = None
    matrix: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lie2weyl", description="Exact Weyl-algebra realizations of Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_default=6):
        sp.add_argument("--algebra", default="so3", help="catalog name or path to a JSON algebra file")
        sp.add_argument("--order", type=_nonneg, default=order_default, help="truncation order in t")
        sp.add_argument("--json", dest="json_path", help="write a JSON report here")

    r = sub.add_parser("realize", help="print the generator images")
    common(r)
    r.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1))

    v = sub.add_parser("verify", help="check the commutation relations order by order")
    common(v)
    v.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1))
    v.add_argument("--threads", type=_positive, default=1)

    i = sub.add_parser("identities", help="run identity suites")
    i.add_argument("--suite", choices=["hyperbolic", "chains", "oracle", "all"], default="all")
    i.add_argument("--json", dest="json_path")
    i.add_argument("--threads", type=_positive, default=1)
    i.add_argument("--max-n", dest="max_n", type=_positive)
    i.add_argument("--max-i", dest="max_i", type=_nonneg)

    c = sub.add_parser("catalog", help="list built-in algebras, or show one")
    c.add_argument("--algebra")
    c.add_argument("--json", dest="json_path")

    t = sub.add_parser("transform", help="change basis and check covariance")
    common(t, order_default=4)
    t.add_argument("--matrix", help="JSON list of rows, or a path to one; default is a random transform")
    t.add_argument("--seed", type=int, default=0)

    o = sub.add_parser("oracle", help="compare the tensor series with the enveloping-algebra route")
    common(o)
    return p


def _write_json(path: str | None, doc) -> None:
    if path:
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        Path(path).write_text(text, encoding="utf-8")


def _cmd_realize(cfg: RunConfig) -> int:
    C = load_algebra(cfg.algebra)
    images = realize(C, cfg.lam, cfg.order)
    for k, img in enumerate(images, 1):
        print(f"Phi(X{k}) = {img.canonical_text()}")
    _write_json(
        cfg.json_path,
        {
            "algebra": C.name,
            "lambda": format_rational(cfg.lam),
            "order": cfg.order,
            "generators": [g.canonical_text() for g in images],
        },
    )
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    C = load_algebra(cfg.algebra)
    report = check_commutators(C, cfg.lam, cfg.order, cfg.threads)
    for p in report.pairs:
        status = "ok" if p.residual.is_zero() else f"residual {p.residual.canonical_text()}"
        print(f"[X{p.mu}, X{p.nu}]: {status}")
    verdict = "PASS" if report.passed else "FAIL"
    gated = "" if report.gated else " (not gated: lambda != 1 on a non totally antisymmetric algebra)"
    print(f"{verdict} {C.name} lambda={format_rational(cfg.lam)} order={cfg.order}{gated}")
    _write_json(cfg.json_path, report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_identities(cfg: RunConfig) -> int:
    bounds = SuiteBounds().with_limits(cfg.max_n, cfg.max_i)
    results = run_suite(cfg.suite, bounds, cfg.threads)
    for name, rows in results.items():
        gated = [r for r in rows if r.gated]
        bad = [r for r in gated if not r.passed]
        print(f"{name}: {len(gated) - len(bad)}/{len(gated)} gated checks pass")
        for r in bad:
            print(f"  FAIL {r.check} {json.dumps(r.parameters, sort_keys=True)}")
        for r in rows:
            if not r.gated:
                print(f"  data {r.check} {json.dumps(r.parameters, sort_keys=True)} -> {r.passed}")
    ok = suite_passed(results)
    _write_json(
        cfg.json_path,
        {"suite": cfg.suite, "pass": ok, "results": {k: [r.to_dict() for r in v] for k, v in results.items()}},
    )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_catalog(cfg: RunConfig) -> int:
    if cfg.json_path is None and cfg.algebra is None:
        for name in CATALOG_SUITE:
            C = catalog(name)
            print(f"{name}  dim={C.dim}  brackets={len(C.entries)}")
        print(f"parameterized families: {', '.join(n for n in catalog_names() if n.endswith((':n', ':m')))}")
        return EXIT_OK
    if cfg.algebra is not None:
        C = load_algebra(cfg.algebra)
        text = serialize_algebra(C)
        print(text)
        if cfg.json_path:
            Path(cfg.json_path).write_text(text + "\n", encoding="utf-8")
        return EXIT_OK
    _write_json(cfg.json_path, [json.loads(serialize_algebra(catalog(n))) for n in CATALOG_SUITE])
    return EXIT_OK


def _load_matrix(spec: str) -> list[list[Fraction]]:
    path = Path(spec)
    text = path.read_text(encoding="utf-8") if path.is_file() else spec
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"matrix is not JSON: {exc}") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    return [[parse_rational(v) for v in r] for r in rows]


def _cmd_transform(cfg: RunConfig) -> int:
    C = load_algebra(cfg.algebra)
    if cfg.matrix is not None:
        O = BasisTransform.from_matrix(_load_matrix(cfg.matrix))
    else:
        O = random_transform(C.dim, random.Random(cfg.seed))
    if O.dim != C.dim:
        raise ValueError(f"transform has dimension {O.dim}, algebra has {C.dim}")
    new = transform(C, O)
    ok = validate(new).jacobi and check_covariance(C, O, cfg.order)
    print(serialize_algebra(new))
    print(f"{'PASS' if ok else 'FAIL'} covariance order={cfg.order}")
    _write_json(
        cfg.json_path,
        {
            "algebra": C.name,
            "matrix": [[format_rational(v) for v in r] for r in O.matrix],
            "transformed": json.loads(serialize_algebra(new)),
            "order": cfg.order,
            "pass": ok,
        },
    )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_oracle(cfg: RunConfig) -> int:
    C = load_algebra(cfg.algebra)
    ok = cross_oracle_check(C, cfg.order)
    print(f"{'PASS' if ok else 'FAIL'} cross-oracle {C.name} degree={cfg.order}")
    _write_json(cfg.json_path, {"algebra": C.name, "order": cfg.order, "pass": ok})
    return EXIT_OK if ok else EXIT_FAIL


_COMMANDS = {
    "realize": _cmd_realize,
    "verify": _cmd_verify,
    "identities": _cmd_identities,
    "catalog": _cmd_catalog,
    "transform": _cmd_transform,
    "oracle": _cmd_oracle,
}


def _config(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    if ns.command == "catalog":
        fields["algebra"] = ns.algebra
    return RunConfig(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        cfg = _config(ns)
        return _COMMANDS[cfg.command](cfg)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_ALGEBRA
    except TermBudgetExceeded as exc:
        print(f"error: term budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal invariant breach
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
