"""Command-line front end: ``tiedlinks [WORD ...] [options]``.

Exit status: 0 on success, 1 if any word failed or any check did not hold,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .braidword import BraidSyntaxError, exponent, parse_braid
from .btengine import default_rewriter
from .invariant import (
    ZT_NAMES,
    check_markov_invariance,
    check_skein,
    invariant_F,
    run_markov_suite,
    run_skein_suite,
    run_unlink_suite,
)
from .polyfield import EvaluationError, L

MODES = ("trace", "invariant", "verify")
FORMATS = ("plain", "latex", "json")


@dataclass
class JobSpec:
    words: list[tuple[str, int | None]] = field(default_factory=list)
    mode: str = "invariant"
    format: str = "plain"
    eval_point: tuple[Fraction, Fraction, Fraction] | None = None
    seed: int = 0
    cases: int = 200
    jobs: int = 1


def parse_eval_point(text: str) -> tuple[Fraction, Fraction, Fraction]:
    """``u=3/2,A=2,B=5`` (``z``/``t`` are accepted for ``A``/``B``)."""
    alias = {"u": "u", "A": "A", "z": "A", "B": "B", "t": "B"}
    vals: dict[str, Fraction] = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        key = key.strip()
        if not sep or key not in alias:
            raise ValueError(f"bad evaluation assignment {part!r}")
        try:
            vals[alias[key]] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad number in {part!r}") from exc
    if set(vals) != {"u", "A", "B"}:
        raise ValueError("evaluation point needs u, A and B")
    if vals["u"] == 0:
        raise ValueError("u must be nonzero")
    return vals["u"], vals["A"], vals["B"]


def parse_batch_line(line: str) -> tuple[str, int | None] | None:
    """One word per line; ``#`` starts a comment; ``strands=N`` sets the strand count."""
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    strands = None
    tokens = []
    for tok in text.split():
        if tok.startswith("strands=") and tok[8:].isdigit():
            strands = int(tok[8:])
        else:
            tokens.append(tok)
    return " ".join(tokens), strands


def _fmt_q(q: Fraction) -> str:
    return str(q)


def process_word(text: str, strands: int | None, mode: str, fmt: str,
                 eval_point=None, seed: int = 0) -> dict:
    """Compute one output record; errors become ``{"input", "error"}`` records."""
    rec: dict = {"input": text}
    try:
        b = parse_braid(text, strands)
    except BraidSyntaxError as exc:
        rec.update(error=str(exc), position=exc.position)
        return rec
    except ValueError as exc:
        rec.update(error=str(exc))
        return rec
    rec.update(strands=b.strands, exponent=exponent(b))
    trace = default_rewriter().markov_trace(b)
    rec["trace"] = trace.to_latex() if fmt == "latex" else trace.to_string()
    if mode in ("invariant", "verify"):
        v = invariant_F(b).value
        if fmt == "latex":
            rec["invariant"] = {"even": v.even.to_latex(), "odd": v.odd.to_latex()}
            rec["display"] = v.to_latex()
        elif fmt == "json":
            rec["invariant"] = {"even": v.even.to_string(ZT_NAMES), "odd": v.odd.to_string(ZT_NAMES)}
        else:
            rec["invariant"] = {"even": v.even.to_string(), "odd": v.odd.to_string()}
            rec["display"] = v.to_string()
    else:
        rec["display"] = rec["trace"]
    if eval_point is not None:
        try:
            if mode == "trace":
                rec["eval"] = {"trace": _fmt_q(trace.evaluate(*eval_point))}
            else:
                even, odd = v.evaluate(*eval_point)
                rec["eval"] = {"even": _fmt_q(even), "odd": _fmt_q(odd),
                               "L": _fmt_q(L.evaluate(*eval_point))}
        except (EvaluationError, ZeroDivisionError) as exc:
            rec["error"] = f"evaluation failed: {exc}"
    if mode == "verify":
        sites = [k for k, x in enumerate(b.letters) if x.is_sigma and abs(x.power) == 1]
        skein = [bool(check_skein(b, k)) for k in sites]
        rec["checks"] = {
            "skein": all(skein) if skein else None,
            "markov": check_markov_invariance(b, seed),
        }
    return rec


def _process(args) -> dict:
    return process_word(*args)


def record_failed(rec: dict) -> bool:
    if "error" in rec:
        return True
    checks = rec.get("checks") or {}
    return any(v is False for v in checks.values())


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        out = {k: rec[k] for k in ("input", "strands", "exponent", "trace", "invariant",
                                  "checks", "eval", "error", "position") if k in rec}
        return json.dumps(out)
    if "error" in rec and "display" not in rec:
        return f"error: {rec['input']!r}: {rec['error']}"
    lines = []
    if "eval" in rec:
        ev = rec["eval"]
        if "trace" in ev:
            lines.append(ev["trace"])
        else:
            lines.append(f"even={ev['even']} odd={ev['odd']} L={ev['L']}")
    else:
        lines.append(rec["display"])
    if "checks" in rec:
        c = rec["checks"]
        skein = "n/a" if c["skein"] is None else ("ok" if c["skein"] else "FAIL")
        lines.append(f"  skein: {skein}  markov: {'ok' if c['markov'] else 'FAIL'}")
    if "error" in rec:
        lines.append(f"error: {rec['input']!r}: {rec['error']}")
    return "\n".join(lines)


def _records(spec: JobSpec) -> Iterable[dict]:
    tasks = [(text, strands, spec.mode, spec.format, spec.eval_point, spec.seed)
             for text, strands in spec.words]
    if spec.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            # map preserves input order
            yield from pool.map(_process, tasks, chunksize=4)
    else:
        for t in tasks:
            yield _process(t)


def run(spec: JobSpec, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    status = 0
    if spec.mode == "verify" and not spec.words:
        for res in (run_skein_suite(spec.cases, spec.seed),
                    run_markov_suite(spec.cases, spec.seed),
                    run_unlink_suite()):
            if spec.format == "json":
                print(json.dumps({"suite": res.name, "passed": res.passed,
                                  "failed": res.failed, "failures": res.failures}), file=out)
            else:
                print(res.summary(), file=out)
                for f in res.failures:
                    print(f"  {f}", file=out)
            if not res.ok:
                status = 1
        return status
    for rec in _records(spec):
        print(render(rec, spec.format), file=out, flush=True)
        if record_failed(rec):
            status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tiedlinks",
        description="Markov trace and tied-link invariant of tied braid words "
                    "(tokens s<i>, s<i>^<e>, e<i>).",
    )
    p.add_argument("words", nargs="*", metavar="WORD",
                   help='braid word such as "s1 s2^-1 e1"; quote it, "" is the empty word')
    p.add_argument("--strands", type=int, help="strand count (default: top index + 1)")
    p.add_argument("--mode", choices=MODES, default="invariant")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("--eval", dest="eval_point", metavar="u=Q,A=Q,B=Q",
                   help="evaluate exactly at a rational point")
    p.add_argument("--seed", type=int, default=0, help="seed for verify mode")
    p.add_argument("--cases", type=int, default=200, help="random cases per verify suite")
    p.add_argument("--batch", metavar="PATH",
                   help="read one word per line ('-' for stdin) and emit NDJSON")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for many words")
    p.add_argument("--debug-rewrites", action="store_true",
                   help="log every rewrite step to stderr")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    point = None
    if args.eval_point is not None:
        try:
            point = parse_eval_point(args.eval_point)
        except ValueError as exc:
            parser.error(str(exc))
    if args.strands is not None and args.strands < 1:
        parser.error("--strands must be positive")
    if args.jobs < 1:
        parser.error("--jobs must be positive")

    fmt = args.format
    words = [(w, args.strands) for w in args.words]
    if args.batch is not None:
        fmt = "json"
        try:
            fh = sys.stdin if args.batch == "-" else open(args.batch, encoding="utf-8")
        except OSError as exc:
            parser.error(f"cannot read {args.batch}: {exc}")
        with fh:
            for line in fh:
                item = parse_batch_line(line)
                if item is not None:
                    words.append((item[0], item[1] if item[1] is not None else args.strands))
        if not words:
            return 0
    elif not words and args.mode != "verify":
        parser.error("no braid words given")

    spec = JobSpec(words, args.mode, fmt, point, args.seed, args.cases, args.jobs)
    if not args.debug_rewrites:
        return run(spec)
    engine_log = logging.getLogger("tiedlinks.btengine")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    saved = engine_log.level, engine_log.propagate
    engine_log.addHandler(handler)
    engine_log.setLevel(logging.DEBUG)
    engine_log.propagate = False
    try:
        return run(spec)
    finally:
        engine_log.removeHandler(handler)
        engine_log.setLevel(saved[0])
        engine_log.propagate = saved[1]


if __name__ == "__main__":
    sys.exit(main())
