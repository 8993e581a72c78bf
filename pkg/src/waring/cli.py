"""Command-line interface.

Exit codes: 0 success, 1 user error, 2 internal check failure.  Machine
output goes to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .census import CensusConfig, run_census, write_report
from .forms import DISTRIBUTIONS, BinaryForm, ZeroFormError
from .rank import DecompositionError, NonSquarefreeError, classify, decompose
from .witnesses import WitnessError, build, verify_witness

log = logging.getLogger("waring")

KIND_NAMES = {
    "hyperbolic": "hyperbolic",
    "generic-span": "generic_span",
    "intersection": "intersection",
    "dminus1": "dminus1",
}


class UserError(Exception):
    pass


def _load_json(value: str):
    text = value
    if not value.lstrip().startswith(("{", "[")):
        try:
            with open(value, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UserError(f"cannot read {value}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UserError(f"malformed JSON: {exc}") from exc


def _load_form(value: str) -> BinaryForm:
    try:
        f = BinaryForm.from_json(_load_json(value))
    except ValueError as exc:
        raise UserError(str(exc)) from exc
    if f.is_zero:
        raise UserError("the zero form has no rank")
    return f


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_rank(args) -> int:
    f = _load_form(args.form)
    try:
        cert = classify(f, args.trials, args.seed)
    except (NonSquarefreeError, ZeroFormError) as exc:
        raise UserError(str(exc)) from exc
    out = cert.to_json()
    out["form"] = f.to_json()
    _emit(out)
    return 0


def cmd_witness(args) -> int:
    kind = KIND_NAMES[args.kind]
    kw = {}
    if args.w or args.s:
        if kind != "intersection":
            raise UserError("--w/--s only apply to --kind intersection")
        if not (args.w and args.s):
            raise UserError("give both --w and --s")
        kw = {"w": _load_form(args.w), "s": _load_form(args.s)}
    seed = args.seed
    if seed is None:
        seed = None if kind == "intersection" else 0
    try:
        if kind == "intersection":
            wf = build(kind, args.degree, seed=seed, **kw)
        else:
            wf = build(kind, args.degree, seed)
    except WitnessError as exc:
        log.error("hypothesis check failed: %s", exc.check)
        return 2
    except ValueError as exc:
        raise UserError(str(exc)) from exc
    text = wf.dumps() + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UserError(f"cannot write {path}: {exc}") from exc


def cmd_census(args) -> int:
    try:
        config = CensusConfig(
            degree=args.degree,
            samples=args.samples,
            master_seed=args.seed,
            distribution=args.dist,
            trials=args.trials,
            stability_eps=str(Fraction(args.eps)),
            stability_probes=args.probes,
            resample_on_reject=args.resample,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise UserError(str(exc)) from exc
    log.info("census config: %s", json.dumps(config.to_dict(), sort_keys=True))
    out_dir = os.path.dirname(os.path.abspath(args.out))
    if not os.access(out_dir, os.W_OK):
        raise UserError(f"cannot write to {args.out}")
    report = run_census(config, jobs=args.jobs, record_timing=args.timing)
    try:
        write_report(report, args.out, args.format)
    except OSError as exc:
        raise UserError(f"cannot write {args.out}: {exc}") from exc
    width = max(len(k) for k in report.counts)
    for label, n in report.counts.items():
        sys.stdout.write(f"{label:<{width}}  {n}\n")
    if report.stability is not None:
        s = report.stability
        sys.stdout.write(f"stability: {s['stable']}/{s['probed']} stable\n")
    return 0


def cmd_decompose(args) -> int:
    f = _load_form(args.form)
    if args.witness:
        h = _load_form(args.witness)
    else:
        try:
            cert = classify(f, args.trials, args.seed)
        except NonSquarefreeError as exc:
            raise UserError(str(exc)) from exc
        hs = [e.form for e in cert.evidence_hi if e.kind == "apolar_witness"]
        if not hs:
            raise UserError("no apolar witness available; pass --witness")
        h = hs[0]
    try:
        dec = decompose(f, h, args.precision)
    except DecompositionError as exc:
        log.error("%s", exc)
        return 2
    digits = int(args.precision * 0.30103) + 1
    _emit(
        {
            "schema": 1,
            "form": f.to_json(),
            "witness": h.to_json(),
            "precision_bits": dec.precision_bits,
            "residual": mpmath.nstr(dec.residual, 10),
            "terms": [
                {"c": mpmath.nstr(c, digits), "alpha": mpmath.nstr(a, digits), "beta": mpmath.nstr(b, digits)}
                for c, a, b in dec.terms
            ],
        }
    )
    return 0


def cmd_verify(args) -> int:
    obj = _load_json(args.witness)
    fails = verify_witness(obj)
    if fails:
        log.error("verification failed: %s", fails[0])
        return 2
    log.info("all checks re-verified")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="waring", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--verbose", action="store_true", help="timestamped debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rank", help="rank certificate of a form")
    r.add_argument("--form", required=True, help="form JSON, inline or a file path")
    r.add_argument("--trials", type=int, default=200)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_rank)

    w = sub.add_parser("witness", help="certified witness construction")
    w.add_argument("--kind", required=True, choices=sorted(KIND_NAMES))
    w.add_argument("--degree", type=int, required=True)
    w.add_argument("--seed", type=int, default=None)
    w.add_argument("--w", help="intersection: the conjugation-stable set, as form JSON")
    w.add_argument("--s", help="intersection: the real set, as form JSON")
    w.add_argument("--out", help="write JSON here instead of stdout")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("census", help="seeded rank census")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--samples", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", required=True)
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform_normalized")
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--probes", type=int, default=0, help="stability probes per sample")
    c.add_argument("--eps", default="1/65536")
    c.add_argument("--resample", action="store_true", help="redraw non-squarefree samples")
    c.add_argument("--timing", action="store_true", help="record wall time in the report")
    c.set_defaults(func=cmd_census)

    d = sub.add_parser("decompose", help="numerical decomposition from an apolar witness")
    d.add_argument("--form", required=True)
    d.add_argument("--witness", help="hyperbolic apolar form; found automatically if omitted")
    d.add_argument("--precision", type=int, default=128)
    d.add_argument("--trials", type=int, default=200)
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="re-verify a serialized witness")
    v.add_argument("--witness", required=True)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = "%(asctime)s %(levelname)s %(message)s" if args.verbose else "%(levelname)s %(message)s"
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=fmt, stream=sys.stderr, force=True)
    log.info("waring %s: %s", __version__, json.dumps({k: v for k, v in vars(args).items() if k != "func"}, sort_keys=True, default=str))
    try:
        return args.func(args)
    except UserError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
