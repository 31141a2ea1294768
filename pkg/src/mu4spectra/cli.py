"""Command-line front end.

Every command prints a JSON report (or CSV where offered). Exit codes:
0 when the computation ran, whatever the mathematical verdict; 2 on usage
errors; 3 when an input fails validation. ``regress`` exits 1 when any
acceptance criterion fails.

Values starting with ``-`` need the ``--flag=value`` form, e.g.
``--digits=-1,3``; ``--lambda -1`` works as is.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .adic_words import (
    EventuallyPeriodicWord,
    add,
    block_decode,
    block_recode,
    div_by_coprime,
    format_word,
    from_integer,
    h_p_word,
    negate,
    parse_signed_word,
    parse_word,
    rho_distance,
    scalar_mul,
    series_word,
    subtract,
    to_integer,
)
from .constructions import (
    DigitSet,
    GammaLabel,
    Thm47Label,
    enumerate_lambda,
    gamma_label,
    lambda_I_members,
    load_label,
    thm47_label,
    validate_digit_set,
)
from .decision import (
    build_residue_automaton,
    classify_digit_set,
    exists_infinite_expansion,
    expansion_type,
    is_spectrum_ep_label,
    measure_decay_exact,
    monte_carlo_survival,
    thm47_check,
    universal_game,
)
from .fourier import (
    TruncationParams,
    check_orthogonality,
    frame_function,
    is_zero_exact,
    mu4_hat,
    parse_selector,
    spectrum_numeric_report,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.verb} {args.action} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _digits(args) -> DigitSet:
    _require(args, "digits")
    return DigitSet.parse(args.digits)


def _word_summary(word: EventuallyPeriodicWord, depth: int) -> dict:
    return {"word": format_word(word), "digits": word.prefix(depth), "integer": to_integer(word)}


# ---------------------------------------------------------------------------
# adic


ADIC_ARITY = {
    "add": 2, "sub": 2, "neg": 1, "mul": 2, "div": 2, "rho": 2,
    "recode": 2, "decode": 2, "int": 1, "hp": 1, "series": 1, "value": 1,
}


def cmd_adic(args) -> dict:
    ops = args.operands
    if len(ops) != ADIC_ARITY[args.action]:
        raise UsageError(f"adic {args.action} takes {ADIC_ARITY[args.action]} operand(s), got {len(ops)}")
    depth = args.depth or 12
    doc = {"op": args.action, "operands": ops}
    action = args.action
    if action in ("add", "sub", "rho"):
        a, b = parse_word(ops[0]), parse_word(ops[1])
        if action == "rho":
            doc["result"] = str(rho_distance(a, b))
            return doc
        word = add(a, b) if action == "add" else subtract(a, b)
    elif action == "neg":
        word = negate(parse_word(ops[0]))
    elif action in ("mul", "div"):
        k, w = int(ops[0]), parse_word(ops[1])
        word = scalar_mul(k, w) if action == "mul" else div_by_coprime(k, w)
    elif action == "recode":
        word = block_recode(int(ops[0]), parse_word(ops[1]))
    elif action == "decode":
        s = int(ops[0])
        word = block_decode(s, parse_word(ops[1], 4**s))
    elif action == "int":
        word = from_integer(int(ops[0]))
    elif action == "value":
        word = parse_word(ops[0])
    elif action == "hp":
        _require(args, "p")
        word = h_p_word(args.p, parse_signed_word(ops[0], (-abs(args.p), 0, abs(args.p))))
    else:  # series
        omega = parse_signed_word(ops[0])
        word = series_word(omega.preperiod, omega.period)
    doc["result"] = _word_summary(word, depth)
    return doc


# ---------------------------------------------------------------------------
# construct


def _label(args):
    _require(args, "label")
    return load_label(args.label)


def cmd_construct(args) -> dict:
    depth = args.depth if args.depth is not None else 4
    if args.action == "lambda":
        label = _label(args) if args.label is not None else load_label(f"({args.p or 1})")
        values = enumerate_lambda(label, depth)
        return {"label": str(label), "depth": depth, "size": len(values), "values": sorted(values)}
    if args.action == "thm47":
        _require(args, "p")
        return {"p": args.p, "depth": depth, "label": thm47_label(args.p, depth)}
    if args.action == "gamma":
        _require(args, "r")
        label = GammaLabel(args.r, args.free)
        return {
            "r": args.r,
            "free": args.free,
            "digits": list(label.digit_set.digits),
            "label": gamma_label(args.r, args.free, depth),
            "witness_digits": label.witness_digits(depth),
        }
    if args.action == "members":
        label = _label(args)
        bound = args.bound if args.bound is not None else 16
        members = lambda_I_members(_periodic(label), bound)
        return {
            "label": str(label),
            "bound": bound,
            "members": sorted(members),
            "kinds": {str(v): members[v].kind for v in sorted(members)},
        }
    # digits
    return validate_digit_set(int(t) for t in (args.digits or "").split(",") if t.strip()).as_dict()


# ---------------------------------------------------------------------------
# decide


def _periodic(label):
    if isinstance(label, GammaLabel):
        return label.as_periodic()
    if isinstance(label, Thm47Label):
        raise ValueError("the growing-runs label is not eventually periodic; use 'decide thm47'")
    return label


def cmd_decide(args) -> dict:
    if args.action == "exists":
        cset = _digits(args)
        cert = exists_infinite_expansion(cset)
        return {
            "digits": list(cset.digits),
            "verdict": "all-labels-spectra" if cert is None else "some-label-fails",
            "witness": cert.as_dict() if cert else None,
        }
    if args.action == "game":
        cset = _digits(args)
        doc = universal_game(cset).as_dict()
        doc["digits"] = list(cset.digits)
        return doc
    if args.action == "classify":
        cset = _digits(args)
        doc = classify_digit_set(cset)
        doc["digits"] = list(cset.digits)
        return doc
    if args.action == "automaton":
        cset = _digits(args)
        return build_residue_automaton((0, *cset.digits)).as_dict()
    if args.action == "thm47":
        _require(args, "p")
        return thm47_check(args.p, args.bound if args.bound is not None else 8).as_dict()
    # label
    label = _label(args)
    if isinstance(label, Thm47Label) and args.lambda_ is None:
        return thm47_check(label.p, args.bound if args.bound is not None else 8).as_dict()
    periodic = _periodic(label)
    if args.lambda_ is not None:
        doc = expansion_type(periodic, args.lambda_).as_dict()
    else:
        doc = is_spectrum_ep_label(periodic).as_dict()
    doc["label"] = str(label)
    return doc


# ---------------------------------------------------------------------------
# verify


def _selector(args) -> str:
    kind = args.set or "canonical"
    if kind == "canonical":
        return "canonical"
    if kind in ("scaled", "thm47"):
        _require(args, "p")
        return f"{kind} p={args.p}"
    if kind == "gamma":
        _require(args, "r")
        return f"gamma r={args.r} free={args.free}"
    _require(args, "label")
    return f"label {args.label}"


def _params(args) -> TruncationParams:
    depth = args.depth if args.depth is not None else 12
    terms = args.terms if args.terms is not None else max(25, depth + 5)
    return TruncationParams(depth=depth, terms=terms, grid=args.grid if args.grid is not None else 256)


def cmd_verify(args):
    if args.action == "hat":
        _require(args, "xi")
        value, bound = mu4_hat(args.xi, args.terms or 25)
        return {"xi": args.xi, "terms": args.terms or 25, "real": value.real, "imag": value.imag,
                "abs": abs(value), "tail_bound": bound}
    if args.action == "zero":
        _require(args, "lambda_")
        return {"z": args.lambda_, "zero": is_zero_exact(args.lambda_)}
    selector = _selector(args)
    params = _params(args)
    label = parse_selector(selector)
    if args.action == "ortho":
        doc = check_orthogonality(enumerate_lambda(label, params.depth), seed=args.seed or 0).as_dict()
        doc.update(selector=selector, depth=params.depth)
        return doc
    if args.format == "csv":
        values = enumerate_lambda(label, params.depth)
        return frame_function(values, params).to_csv()
    return spectrum_numeric_report(selector, params)


# ---------------------------------------------------------------------------
# measure and regress


def cmd_measure(args) -> dict:
    cset = _digits(args)
    _require(args, "lambda_")
    depth = args.depth if args.depth is not None else 10
    if args.action == "exact":
        return measure_decay_exact(cset, args.lambda_, depth).as_dict()
    if args.seed is None:
        args.seed = 0
        print("seed: 0 (default)", file=sys.stderr)
    est = monte_carlo_survival(cset, args.lambda_, depth, args.samples if args.samples is not None else 100_000, seed=args.seed)
    doc = est.as_dict()
    exact = measure_decay_exact(cset, args.lambda_, depth).measure
    doc["exact"] = str(exact)
    doc["z_score"] = None if est.standard_error == 0 else round((est.fraction - float(exact)) / est.standard_error, 6)
    return doc


def cmd_regress(args):
    from .acceptance import run_all

    results = run_all()
    failed = [r.number for r in results if not r.passed]
    if args.format == "json" and args.explicit_format:
        doc = {"criteria": [r.as_dict() for r in results], "failed": failed, "passed": not failed}
        return doc, (EXIT_FAIL if failed else EXIT_OK)
    text = "".join(r.line() + "\n" for r in results)
    text += f"{len(results) - len(failed)}/{len(results)} criteria passed\n"
    return text, (EXIT_FAIL if failed else EXIT_OK)


HANDLERS = {
    "adic": cmd_adic,
    "construct": cmd_construct,
    "decide": cmd_decide,
    "verify": cmd_verify,
    "measure": cmd_measure,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default=None)

    parser = argparse.ArgumentParser(
        prog="mu4spectra", description="Exact and numerical spectrality checks for the quarter Cantor measure."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    adic = verbs.add_parser("adic", parents=[common], help="arithmetic on eventually periodic 4-adic words")
    adic.add_argument("action", choices=sorted(ADIC_ARITY))
    adic.add_argument("operands", nargs="*", help='words like "21(0)"; integers for mul/div/recode/int')
    adic.add_argument("--depth", type=int, help="digits to list in the report (default 12)")
    adic.add_argument("--p", type=int)

    construct = verbs.add_parser("construct", parents=[common], help="labels and truncated sets")
    construct.add_argument("action", choices=["lambda", "thm47", "gamma", "members", "digits"])
    construct.add_argument("--label")
    construct.add_argument("--digits")
    construct.add_argument("--depth", type=int)
    construct.add_argument("--p", type=int)
    construct.add_argument("--r", type=int)
    construct.add_argument("--free", default="c0", choices=["c0", "c1", "alternate"])
    construct.add_argument("--bound", type=int)

    decide = verbs.add_parser("decide", parents=[common], help="exact decisions")
    decide.add_argument("action", choices=["exists", "label", "game", "classify", "thm47", "automaton"])
    decide.add_argument("--digits")
    decide.add_argument("--label")
    decide.add_argument("--lambda", dest="lambda_", type=int)
    decide.add_argument("--p", type=int)
    decide.add_argument("--bound", type=int, help="cycle-length bound for the growing-runs check (default 8)")

    verify = verbs.add_parser("verify", parents=[common], help="Fourier and frame diagnostics")
    verify.add_argument("action", choices=["hat", "zero", "ortho", "frame"])
    verify.add_argument("--set", choices=["canonical", "scaled", "label", "thm47", "gamma"])
    verify.add_argument("--label")
    verify.add_argument("--p", type=int)
    verify.add_argument("--r", type=int)
    verify.add_argument("--free", default="c0", choices=["c0", "c1", "alternate"])
    verify.add_argument("--lambda", dest="lambda_", type=int)
    verify.add_argument("--xi", type=float)
    verify.add_argument("--depth", type=int)
    verify.add_argument("--terms", type=int)
    verify.add_argument("--grid", type=int)
    verify.add_argument("--seed", type=int)

    measure = verbs.add_parser("measure", parents=[common], help="measure of labels keeping an integer alive")
    measure.add_argument("action", choices=["exact", "mc"])
    measure.add_argument("--digits")
    measure.add_argument("--lambda", dest="lambda_", type=int)
    measure.add_argument("--depth", type=int)
    measure.add_argument("--samples", type=int)
    measure.add_argument("--seed", type=int)

    verbs.add_parser("regress", parents=[common], help="run the acceptance suite")
    return parser


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    args.explicit_format = args.format is not None
    args.format = args.format or "json"
    if args.format == "csv" and not (args.verb == "verify" and args.action == "frame"):
        print("error: --format csv is only available for 'verify frame'", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.verb == "regress":
            payload, code = cmd_regress(args)
        else:
            payload, code = HANDLERS[args.verb](args), EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
