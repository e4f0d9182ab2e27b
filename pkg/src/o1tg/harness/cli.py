"""Command line entry point: ``o1t generate | analyze | verify | convert``.

Exit codes: 0 all checks agree, 1 a theorem or lemma check failed, 2 bad
input, 3 a search budget was exhausted (partial results are still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from ..errors import EmptyCorpus, O1TError, ParseError
from ..o1t import build_o1t
from ..quad_torus import build_qprq
from .corpus import generate_instance
from .io import instance_files, instance_id, read_instance, write_instance
from .report import STATUS_AGREE, STATUS_BUDGET, STATUS_VIOLATION, Options, analyze

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

SUITE_SECTIONS = {
    "connectivity": ("connectivity",),
    "extendability": ("extendability",),
    "lemmas": ("lemmas",),
    "all": ("connectivity", "extendability", "lemmas"),
}


def _worker_count(arg: Optional[int]) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("O1T_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _options(args: argparse.Namespace, sections: Sequence[str]) -> Options:
    return Options(
        sections=tuple(sections),
        max_matchings=args.max_matchings,
        max_subset=args.max_subset,
        max_cut_n=args.max_cut_n,
    )


def _exit_for(statuses: Sequence[str]) -> int:
    if STATUS_VIOLATION in statuses:
        return EXIT_VIOLATION
    if STATUS_BUDGET in statuses:
        return EXIT_BUDGET
    return EXIT_OK


# -- generate -------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    suffix = ".o1t.json" if args.format == "o1t" else ".rot"
    if args.what == "qprq":
        g = build_o1t(build_qprq(args.p, args.r, args.q))
        if out.is_dir() or not out.suffix:
            out.mkdir(parents=True, exist_ok=True)
            out = out / f"qprq-{args.p}-{args.r}-{args.q}{suffix}"
        for p in write_instance(out, g, args.format):
            print(p)
        return EXIT_OK
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        inst = generate_instance(
            args.seed, i, moves=args.moves, max_n=args.max_n, insert_prob=args.insert_prob
        )
        write_instance(out / f"{inst.id}{suffix}", inst.graph, args.format)
    print(f"wrote {args.count} instances to {out}")
    return EXIT_OK


# -- analyze --------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    g = read_instance(args.instance)
    rep = analyze(g, instance_id(args.instance), _options(args, SUITE_SECTIONS["all"]))
    text = rep.dumps()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return _exit_for([rep.status])


# -- verify ---------------------------------------------------------------------

def _verify_one(job: tuple[str, Options]) -> dict:
    path, opts = job
    g = read_instance(path)
    return analyze(g, instance_id(path), opts).to_json()


def _summary_line(rep: dict) -> str:
    parts = [f"{rep['instance']['id']:<24}", f"V={rep['counts']['V']:<3}"]
    c = rep.get("connectivity")
    if c:
        parts.append(f"kappa {c['kappa_computed']}/{c['kappa_predicted']}")
    e = rep.get("extendability")
    if e:
        if e["skipped"]:
            parts.append("ext skipped")
        else:
            parts.append("ext " + "".join(
                ("T" if v["computed"] else "F") + ("" if v["agree"] else "!") for v in e["verdicts"].values()
            ))
    if rep.get("lemmas"):
        bad = [k for k, v in rep["lemmas"].items() if not v["pass"]]
        parts.append("lemmas " + ("ok" if not bad else "FAIL:" + ",".join(bad)))
    parts.append(rep["status"].upper() if rep["status"] != STATUS_AGREE else "ok")
    return "  ".join(parts)


def cmd_verify(args: argparse.Namespace) -> int:
    d = Path(args.corpus)
    files = instance_files(d) if d.is_dir() else []
    if not files:
        raise EmptyCorpus(f"no instance files in {d}")
    opts = _options(args, SUITE_SECTIONS[args.suite])
    jobs = [(str(p), opts) for p in files]
    workers = _worker_count(args.threads)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    for rep in reports:
        print(_summary_line(rep))
    statuses = [r["status"] for r in reports]
    n_bad = statuses.count(STATUS_VIOLATION)
    n_budget = statuses.count(STATUS_BUDGET)
    print(f"{args.suite}: {len(reports)} instances, {len(reports) - n_bad - n_budget} agree, "
          f"{n_bad} violations, {n_budget} budget-limited")
    if args.out:
        Path(args.out).write_text(json.dumps(reports, indent=1) + "\n")
    return _exit_for(statuses)


# -- convert --------------------------------------------------------------------

def cmd_convert(args: argparse.Namespace) -> int:
    g = read_instance(args.src)
    fmt = args.to or ("o1t" if args.dst.endswith(".json") else "rot")
    for p in write_instance(args.dst, g, fmt):
        print(p)
    return EXIT_OK


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-matchings", type=int, default=None,
                   help="cap on matchings tested per m (default: exhaustive)")
    p.add_argument("--max-subset", type=int, default=200_000,
                   help="cap on candidate subsets per cut size in the lemma suites")
    p.add_argument("--max-cut-n", type=int, default=16,
                   help="largest order on which cut-based lemma suites run")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="o1t", description="Optimal 1-embedded toroidal graph toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write family or corpus instances")
    gsub = gen.add_subparsers(dest="what", required=True)
    q = gsub.add_parser("qprq", help="the 4-regular quadrangulation Q(p, r, q)")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--out", default=".", help="output file or directory")
    q.add_argument("--format", choices=("rot", "o1t"), default="rot")
    c = gsub.add_parser("corpus", help="seeded random expansions of family members")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--moves", type=int, default=6, help="maximum expansion moves per instance")
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--max-n", type=int, default=30)
    c.add_argument("--insert-prob", type=float, default=0.0,
                   help="probability that a move inserts a 4-cycle into a face instead of splitting")
    c.add_argument("--out", required=True, help="output directory")
    c.add_argument("--format", choices=("rot", "o1t"), default="rot")
    gen.set_defaults(func=cmd_generate)

    an = sub.add_parser("analyze", help="full report for one instance")
    an.add_argument("instance")
    an.add_argument("--out", help="write the JSON report here instead of stdout")
    _add_budget_flags(an)
    an.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", help="cross-check every instance in a directory")
    ver.add_argument("suite", choices=sorted(SUITE_SECTIONS))
    ver.add_argument("corpus", help="directory of instance files")
    ver.add_argument("--threads", type=int, default=None, help="worker processes (default: $O1T_THREADS or 1)")
    ver.add_argument("--out", help="write all reports as a JSON list")
    _add_budget_flags(ver)
    ver.set_defaults(func=cmd_verify)

    cv = sub.add_parser("convert", help="convert between rot v1 and o1t v1")
    cv.add_argument("src")
    cv.add_argument("dst")
    cv.add_argument("--to", choices=("rot", "o1t"))
    cv.set_defaults(func=cmd_convert)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, EmptyCorpus, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except O1TError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
