"""Command-line front end: compute, verify, jones.

Exit codes: 0 all checks pass, 1 parse/validation failure or a failing
verification check, 2 internal invariant failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .chain import FaceCommutationError
from .diagram import (
    DomainError,
    PDSyntaxError,
    SingularDiagram,
    ValidationError,
    fi_double_points,
    parse_pd,
    serialize_pd,
)
from .fixtures import corpus_dir, load_manifest
from .homology import ComplexInvalid, NotAChainMap, betti, les_check
from .khovanov import build_singular_complex
from .polynomial import euler_characteristic, jones_state_sum, vassiliev_derivative
from .report import Check, Report, write_outputs

DEFAULT_MAX_CROSSINGS = 16


def _load_input(spec: str) -> SingularDiagram:
    path = Path(spec)
    text = path.read_text() if path.is_file() else spec
    return parse_pd(text)


def _describe(diagram: SingularDiagram, name: str | None = None) -> dict:
    out = {
        "pd": serialize_pd(diagram),
        "n_plus": diagram.n_plus,
        "n_minus": diagram.n_minus,
        "r": diagram.n_singular,
    }
    if name:
        out["name"] = name
    return out


def _guard(diagram: SingularDiagram, limit: int) -> None:
    if len(diagram.crossings) > limit:
        raise ValidationError(
            f"diagram has {len(diagram.crossings)} crossings; "
            f"limit is {limit} (raise with --max-crossings)"
        )


def _worker_count() -> int:
    env = os.environ.get("SKH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(f"SKH_THREADS must be an integer, got {env!r}")
    return min(4, os.cpu_count() or 1)


def _emit(report: Report, args) -> None:
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    if getattr(args, "outdir", None):
        for path in write_outputs(report, Path(args.outdir)):
            print(f"wrote {path}", file=sys.stderr)


def cmd_compute(args) -> int:
    start = time.perf_counter()
    diagram = _load_input(args.input)
    _guard(diagram, args.max_crossings)
    table = betti(build_singular_complex(diagram))
    euler = euler_characteristic(table)
    report = Report(command="compute", inputs=[_describe(diagram)], betti=table)
    report.polynomials["euler_characteristic"] = str(euler)
    if diagram.is_ordinary():
        oracle = jones_state_sum(diagram)
        report.polynomials["jones_state_sum"] = str(oracle)
        report.checks.append(
            Check(
                "euler_matches_jones_state_sum",
                euler == oracle,
                detail=f"{euler} vs {oracle}",
            )
        )
    else:
        oracle = vassiliev_derivative(diagram)
        r = diagram.n_singular
        report.polynomials["skein_derivative"] = str(oracle)
        report.checks.append(
            Check(
                f"euler_matches_skein_derivative_r{r}",
                euler == oracle,
                detail=f"{euler} vs {oracle}",
            )
        )
    report.wall_ms = (time.perf_counter() - start) * 1000
    _emit(report, args)
    return 0 if report.ok else 2


def cmd_jones(args) -> int:
    start = time.perf_counter()
    diagram = _load_input(args.input)
    _guard(diagram, args.max_crossings)
    report = Report(command="jones", inputs=[_describe(diagram)])
    if diagram.is_ordinary():
        value = jones_state_sum(diagram)
        report.polynomials["jones_state_sum"] = str(value)
    else:
        value = vassiliev_derivative(diagram)
        report.polynomials[f"skein_derivative_r{diagram.n_singular}"] = str(value)
    if args.both:
        euler = euler_characteristic(betti(build_singular_complex(diagram)))
        report.polynomials["euler_characteristic"] = str(euler)
        report.checks.append(
            Check("euler_matches_polynomial", euler == value,
                  detail=f"{euler} vs {value}")
        )
    report.wall_ms = (time.perf_counter() - start) * 1000
    _emit(report, args)
    return 0 if report.ok else 2


def _betti_witnesses(a: dict, b: dict) -> list[dict]:
    out = []
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            out.append(
                {"i": key[0], "j": key[1],
                 "left": a.get(key, 0), "right": b.get(key, 0)}
            )
    return out


def _suite_conventions(corpus, manifest) -> list[Check]:
    def run(item):
        name, diagram = item
        table = betti(build_singular_complex(diagram))
        euler = euler_characteristic(table)
        oracle = jones_state_sum(diagram)
        passed = euler == oracle
        witnesses = []
        if not passed:
            witnesses.append(
                {"euler_characteristic": str(euler), "jones_state_sum": str(oracle)}
            )
        return Check(
            f"conventions:{name}",
            passed,
            detail=f"euler {euler} vs state sum {oracle}",
            witnesses=witnesses,
        )

    ordinary = [(n, d) for n, d in corpus.items() if d.is_ordinary()]
    return _run_parallel(run, ordinary)


def _suite_invariance(corpus, manifest) -> list[Check]:
    pairs = [e for e in manifest if e.pair]

    def run(entry):
        left = betti(build_singular_complex(corpus[entry.name]))
        right = betti(build_singular_complex(corpus[entry.pair]))
        witnesses = _betti_witnesses(left, right)
        return Check(
            f"invariance:{entry.move}:{entry.name}~{entry.pair}",
            not witnesses,
            witnesses=witnesses,
        )

    return _run_parallel(run, pairs)


def _suite_les(corpus, manifest) -> list[Check]:
    tasks = [
        (name, diagram, b)
        for name, diagram in corpus.items()
        for b in diagram.singular_indices()
    ]

    def run(task):
        name, diagram, b = task
        rep = les_check(diagram, b)
        witnesses = [
            {"i": e.bidegree[0], "j": e.bidegree[1],
             "dim": e.dim_cone, "coker_plus_ker": e.coker + e.ker_next}
            for e in rep.witnesses()
        ]
        if not rep.euler_ok:
            witnesses.append(
                {"euler_cone": str(rep.euler_cone),
                 "euler_plus": str(rep.euler_plus),
                 "euler_minus": str(rep.euler_minus)}
            )
        return Check(f"les:{name}:double_point_{b}", rep.ok, witnesses=witnesses)

    return _run_parallel(run, tasks)


def _suite_fi(corpus, manifest) -> list[Check]:
    tasks = [
        (name, diagram)
        for name, diagram in corpus.items()
        if fi_double_points(diagram)
    ]

    def run(item):
        name, diagram = item
        table = betti(build_singular_complex(diagram))
        witnesses = [
            {"i": i, "j": j, "dim": d} for (i, j), d in sorted(table.items())
        ]
        return Check(f"fi:{name}", not table, witnesses=witnesses)

    return _run_parallel(run, tasks)


def _run_parallel(fn, tasks) -> list[Check]:
    workers = _worker_count()
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


SUITES = {
    "conventions": _suite_conventions,
    "invariance": _suite_invariance,
    "les": _suite_les,
    "fi": _suite_fi,
}


def cmd_verify(args) -> int:
    start = time.perf_counter()
    directory = Path(args.fixtures) if args.fixtures else corpus_dir()
    manifest = load_manifest(directory)
    corpus = {}
    for entry in manifest:
        diagram = parse_pd((directory / entry.filename).read_text())
        _guard(diagram, args.max_crossings)
        corpus[entry.name] = diagram

    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = Report(command=f"verify {args.suite}")
    for suite in names:
        checks = SUITES[suite](corpus, manifest)
        report.checks.extend(sorted(checks, key=lambda c: c.name))
    report.wall_ms = (time.perf_counter() - start) * 1000
    _emit(report, args)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skh",
        description="Khovanov homology of singular links over GF(2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument(
            "--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS,
            help=f"refuse larger inputs (default {DEFAULT_MAX_CROSSINGS})",
        )

    p_compute = sub.add_parser("compute", help="Betti table and polynomials")
    p_compute.add_argument("input", help="inline PD code or path to a .pd file")
    p_compute.add_argument(
        "--outdir", help="write report.json, betti.tsv and betti.png here"
    )
    common(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=[*SUITES, "all"])
    p_verify.add_argument("--fixtures", help="alternate fixture directory")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_jones = sub.add_parser("jones", help="polynomial invariants only")
    p_jones.add_argument("input", help="inline PD code or path to a .pd file")
    p_jones.add_argument(
        "--both", action="store_true",
        help="also compute the homological Euler characteristic",
    )
    common(p_jones)
    p_jones.set_defaults(func=cmd_jones)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PDSyntaxError, ValidationError, DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ComplexInvalid, FaceCommutationError, NotAChainMap) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
