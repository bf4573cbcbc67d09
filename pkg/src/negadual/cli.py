"""``negadual`` command line entry point.

Exit status: 0 on success, 1 when any verification or audit fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .codes import DEFAULT_BUDGET
from .fileio import CodeFileError
from .kernels import BACKEND
from .search import COLUMNS, MODES, SearchSpec, run


def _budget(text: str) -> int:
    # accept 1e7 as well as 10000000
    try:
        value = int(float(text)) if any(c in text for c in "eE.") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="negadual",
        description="Search, verify and classify self-dual and isodual codes built from "
                    "extended negacyclic duadic codes.",
    )
    ap.add_argument("--mode", required=True, choices=MODES)
    ap.add_argument("--input", type=Path, help="code file for --mode analyze")
    ap.add_argument("--q-min", type=int, default=3)
    ap.add_argument("--q-max", type=int, default=30)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET,
                    help="max codewords enumerated per distance computation")
    ap.add_argument("--out", type=Path, help="result table (stdout when omitted)")
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    ap.add_argument("--export-dir", type=Path, help="write generator matrices here")
    ap.add_argument("--audit", action="store_true",
                    help="re-import every emitted code and re-verify its flags")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger(__name__).info("kernel backend: %s", BACKEND)
    if args.workers < 1:
        ap.error("--workers must be at least 1")
    try:
        spec = SearchSpec(
            mode=args.mode, q_min=args.q_min, q_max=args.q_max, n_min=args.n_min,
            n_max=args.n_max, budget=args.budget, out=args.out, fmt=args.fmt,
            export_dir=args.export_dir, audit=args.audit, workers=args.workers,
            input=args.input,
        )
    except ValueError as exc:
        ap.error(str(exc))
    try:
        res, status = run(spec)
    except (CodeFileError, FileNotFoundError) as exc:
        print(f"negadual: {exc}", file=sys.stderr)
        return 2
    if args.out is None:
        _echo(res.rows)
    return status


def _echo(rows) -> None:
    if not rows:
        return
    cols = list(rows[0]) if "n_code" not in rows[0] else COLUMNS
    print(",".join(cols))
    for r in rows:
        print(",".join(str(r.get(c, "")) for c in cols))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
