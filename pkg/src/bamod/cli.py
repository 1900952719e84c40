"""Command-line interface.

Commands: validate, module-basis, operator, commute, reproduce,
embed-check.  Data arguments accept either a preset name (gamma-n2,
gamma-n3, omega) or a path to a TOML file in the documented schema.

Exit codes are a stable contract: 0 success, 1 mathematical failure
(an identity, genericity, admissibility or comparison check failed),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bamodule import grade_basis
from .config import build_basis, parse_data_config, parse_lambda_spec
from .diffop import build_operator, commutator, eigen_relation_holds
from .embedding import injectivity_probe
from .errors import BamodError, ConfigError, NotAdmissible
from .mero import check_descent
from .presets import PRESET_NAMES, get_preset, load_golden
from .spectral import validate as validate_data

OK, MATH_FAIL, USAGE_FAIL = 0, 1, 2


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_data(arg: str):
    """Resolve a data argument to (data, basis_forms, preset_or_None)."""
    if arg in PRESET_NAMES:
        preset = get_preset(arg)
        return preset.data, None, preset
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read data file {arg!r}: {exc}") from exc
    data, basis_forms = parse_data_config(text)
    return data, basis_forms, None


def _resolve_basis(data, basis_forms, preset, mode: str):
    if mode == "echelon":
        return None
    if basis_forms is not None:
        return build_basis(data, basis_forms)
    if preset is not None and preset.basis is not None:
        return preset.basis
    return None  # nothing user-supplied: fall back to the echelon basis


def _echelon_basis(data):
    from .bamodule import ModuleBasis
    return ModuleBasis(data, grade_basis(data, 1))


def cmd_validate(args) -> int:
    data, _, _ = _load_data(args.data)
    try:
        report = validate_data(data)
    except BamodError as exc:
        if args.json:
            _emit_json({"passed": False, "error": str(exc)})
        else:
            print(f"FAIL {exc}")
        return MATH_FAIL
    if args.json:
        _emit_json({"passed": report.passed, "checks": dict(report.checks())})
    else:
        for name, ok in report.checks():
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return OK if report.passed else MATH_FAIL


def cmd_module_basis(args) -> int:
    data, _, _ = _load_data(args.data)
    elements = grade_basis(data, args.grade)
    tvar = "w" if data.kind == "omega" else "t"
    if args.json:
        _emit_json({
            "grade": args.grade,
            "count": len(elements),
            "elements": [
                {"monomials": [{"zpow": key[0], "alpha": list(key[1]),
                                "coeff": c.to_json()}
                               for key, c in el.h.items()]}
                for el in elements],
        })
    else:
        print(f"grade {args.grade}: {len(elements)} basis elements")
        for el in elements:
            print("  " + el.h.text(tvar))
    return OK


def _operators_for(args, with_names=False):
    data, basis_forms, preset = _load_data(args.data)
    if args.lambdas:
        lams = [parse_lambda_spec(s, data) for s in args.lambdas]
        names = [f"lambda{k + 1}" for k in range(len(lams))]
    elif preset is not None and preset.lambdas:
        lams = list(preset.lambdas)
        names = list(preset.lambda_names)
    else:
        raise ConfigError("no eigenfunctions given (use --lam)")
    for lam in lams:
        if not check_descent(lam):
            raise NotAdmissible("eigenfunction fails the descent identity "
                                f"(numerator {lam.numerator.text()})")
    basis = _resolve_basis(data, basis_forms, preset, args.basis)
    if basis is None:
        basis = _echelon_basis(data)
    ops = [build_operator(lam, basis) for lam in lams]
    return data, basis, lams, names, ops


def cmd_operator(args) -> int:
    try:
        data, basis, lams, names, ops = _operators_for(args)
    except ConfigError:
        raise
    except BamodError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return MATH_FAIL
    checked = True
    if args.check:
        for lam, op in zip(lams, ops):
            if not eigen_relation_holds(op, basis, lam):
                checked = False
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                if not commutator(ops[a], ops[b]).is_zero:
                    checked = False
    if args.json:
        _emit_json({
            "operators": {name: op.to_json() for name, op in zip(names, ops)},
            "checked": bool(args.check),
            "all_checks_passed": checked,
        })
    else:
        for name, op in zip(names, ops):
            print(f"--- D({name})")
            print(op.pretty())
        if args.check:
            print("checks passed" if checked else "CHECKS FAILED")
    return OK if checked else MATH_FAIL


def cmd_commute(args) -> int:
    try:
        data, basis, lams, names, ops = _operators_for(args)
    except ConfigError:
        raise
    except BamodError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return MATH_FAIL
    failures = []
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if not commutator(ops[a], ops[b]).is_zero:
                failures.append((names[a], names[b]))
    if args.json:
        _emit_json({"pairs": len(ops) * (len(ops) - 1) // 2,
                    "nonzero_commutators": [list(p) for p in failures]})
    else:
        if failures:
            for a, b in failures:
                print(f"FAIL [D({a}), D({b})] != 0")
        else:
            print(f"all {len(ops) * (len(ops) - 1) // 2} commutators vanish")
    return MATH_FAIL if failures else OK


def cmd_reproduce(args) -> int:
    preset = get_preset(args.preset)
    golden = load_golden(args.preset, args.golden)
    mismatches = []
    for name in sorted(golden):
        lam = preset.lambdas[preset.lambda_names.index(name)]
        built = build_operator(lam, preset.basis)
        want = golden[name]
        if built == want:
            continue
        keys = set(built.entries) | set(want.entries)
        for key in sorted(keys):
            got_cell = built.entries.get(key, {})
            want_cell = want.entries.get(key, {})
            for alpha in sorted(set(got_cell) | set(want_cell)):
                g = got_cell.get(alpha)
                w = want_cell.get(alpha)
                if g != w:
                    mismatches.append({
                        "operator": name, "row": key[0], "col": key[1],
                        "alpha": list(alpha),
                        "computed": g.text() if g is not None else "0",
                        "golden": w.text() if w is not None else "0",
                    })
    if args.json:
        _emit_json({"preset": args.preset, "match": not mismatches,
                    "mismatches": mismatches})
    else:
        if mismatches:
            for m in mismatches:
                print(f"MISMATCH D({m['operator']})[{m['row'] + 1}]"
                      f"[{m['col'] + 1}] d^{m['alpha']}: computed "
                      f"{m['computed']}, golden {m['golden']}")
        else:
            print(f"{args.preset}: all operators match the golden data")
    return MATH_FAIL if mismatches else OK


def cmd_embed_check(args) -> int:
    if args.data:
        data, _, _ = _load_data(args.data)
        kind = data.kind
    else:
        kind = args.variety
        data = get_preset("gamma-n2" if kind == "gamma" else "omega").data
    report = injectivity_probe(kind, data, samples=args.samples,
                               seed=args.seed)
    payload = report.to_json()
    for key in ("equation_failures", "jacobian_failures",
                "injectivity_violations", "identified_pair_failures"):
        for item in payload[key]:
            print(json.dumps({"violation": key, "detail": item},
                             sort_keys=True))
    print(json.dumps({"summary": {k: (len(v) if isinstance(v, list) else v)
                                  for k, v in payload.items()}},
                     sort_keys=True))
    return OK if report.passed else MATH_FAIL


def _add_lambda_args(sub):
    sub.add_argument("--lam", dest="lambdas", action="append", default=[],
                     metavar="SPEC",
                     help="eigenfunction spec 'num = <form>; d = <int>' "
                          "(repeatable; presets default to their own)")
    sub.add_argument("--basis", choices=("echelon", "user"), default="user",
                     help="basis for operator coordinates (default: user "
                          "basis from config/preset, falling back to echelon)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bamod",
        description="Exact commuting matrix differential operators on glued "
                    "rational varieties.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="run every identity and genericity check")
    p.add_argument("data", help="preset name or TOML path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("module-basis", help="echelon basis of a grade slice")
    p.add_argument("data")
    p.add_argument("--grade", "-k", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_module_basis)

    p = subs.add_parser("operator", help="build operators for eigenfunctions")
    p.add_argument("data")
    _add_lambda_args(p)
    p.add_argument("--check", action="store_true",
                   help="also verify eigen-relations and pairwise commutators")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_operator)

    p = subs.add_parser("commute", help="verify pairwise commutators vanish")
    p.add_argument("data")
    _add_lambda_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_commute)

    p = subs.add_parser("reproduce",
                        help="rebuild preset operators and diff against goldens")
    p.add_argument("preset", choices=("gamma-n2", "omega"))
    p.add_argument("--golden", default=None,
                   help="override the packaged golden file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = subs.add_parser("embed-check",
                        help="randomized checks of the projective embeddings")
    p.add_argument("--variety", choices=("gamma", "omega"))
    p.add_argument("--data", default=None,
                   help="TOML path or preset (defaults to the variety preset)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_embed_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_FAIL
    if args.command == "embed-check" and not args.variety and not args.data:
        print("embed-check needs --variety or --data", file=sys.stderr)
        return USAGE_FAIL
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return USAGE_FAIL
    except BamodError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return MATH_FAIL


if __name__ == "__main__":
    sys.exit(main())
