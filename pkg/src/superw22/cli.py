"""Command-line front end.

Every subcommand prints one JSON report with alphabetically ordered keys::

    {"command", "derived", "params", "status", "violations", "window"}

Exit status is 0 on pass, 1 on fail or infeasible, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra, classify as cl, involution as inv, repmod
from .expr import ElementSyntaxError, format_element, parse_element
from .report import CheckResult
from .scalar import ScalarSyntaxError, as_scalar, format_scalar

VIOLATION_LIMIT = 20


class UsageError(Exception):
    pass


def _scalar(text: str | None, name: str, default: str | None = None):
    if text is None:
        if default is None:
            raise UsageError(f"--{name} is required")
        text = default
    try:
        return as_scalar(text)
    except ScalarSyntaxError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def _window(args, default: int) -> int:
    return default if args.window is None else args.window


def _report(command: str, params: dict, window, status: str, violations: list, derived: dict) -> dict:
    return {
        "command": command,
        "derived": derived,
        "params": params,
        "status": status,
        "violations": violations,
        "window": window,
    }


def _from_check(command: str, params: dict, res: CheckResult, extra: dict | None = None) -> dict:
    derived = {"checked": res.checked, "total_violations": res.total_violations}
    if res.notes:
        derived["notes"] = list(res.notes)
    derived.update(res.derived)
    if extra:
        derived.update(extra)
    return _report(command, params, res.window, "pass" if res.passed else "fail",
                   [v.to_json() for v in res.violations], derived)


# ---------------------------------------------------------------------------
# subcommands


def cmd_bracket(args) -> dict:
    try:
        x, y = parse_element(args.x), parse_element(args.y)
    except ElementSyntaxError as exc:
        raise UsageError(str(exc)) from None
    z = algebra.bracket(x, y)
    return _report("bracket", {"x": format_element(x), "y": format_element(y)}, None, "pass", [],
                   {"parity": z.parity, "result": format_element(z)})


def cmd_jacobi(args) -> dict:
    N = _window(args, 3)
    res = algebra.jacobi_check(N, limit=VIOLATION_LIMIT)
    return _from_check("jacobi", {}, res)


def cmd_skew(args) -> dict:
    N = _window(args, 3)
    res = algebra.skew_check(N, limit=VIOLATION_LIMIT)
    return _from_check("skew", {}, res)


def cmd_generators(args) -> dict:
    N = _window(args, 6)
    if args.seed:
        try:
            seed = [g for part in args.seed.split(",") for g in parse_element(part)]
        except ElementSyntaxError as exc:
            raise UsageError(str(exc)) from None
    else:
        seed = list(algebra.STANDARD_SEED)
    res = algebra.generation_closure(seed, N)
    return _from_check("generators", {"seed": [str(g) for g in seed]}, res)


def _family(kind: str, a, b) -> repmod.VirasoroFamily:
    if kind == "Aab":
        return repmod.VirasoroFamily.Aab(a, b)
    if kind == "Aalpha":
        return repmod.VirasoroFamily.Aalpha(a)
    return repmod.VirasoroFamily.Bbeta(a)


def _params_families(args, need_odd: bool) -> tuple[repmod.VirasoroFamily, repmod.VirasoroFamily | None, dict]:
    kind = args.family
    a = _scalar(args.a, "a")
    b = _scalar(args.b, "b", "0") if kind == "Aab" else None
    even = _family(kind, a, b)
    odd = None
    if need_odd or args.a2 is not None or args.b2 is not None:
        a2 = _scalar(args.a2, "a2", format_scalar(a))
        b2 = _scalar(args.b2, "b2", format_scalar(b) if b is not None else "0") if kind == "Aab" else None
        odd = _family(kind, a2, b2)
    params = {"even": even.describe()}
    if odd is not None:
        params["odd"] = odd.describe()
    return even, odd, params


def cmd_module_check(args) -> dict:
    N = _window(args, 3)
    even, odd, params = _params_families(args, need_odd=False)
    if args.coeffs:
        try:
            table = repmod.read_coefficients(args.coeffs)
        except (OSError, repmod.TableSyntaxError) as exc:
            raise UsageError(f"--coeffs: {exc}") from None
        params["coeffs"] = Path(args.coeffs).name
    else:
        table = repmod.CoefficientTable.zero()
    spec = repmod.SuperModuleSpec(even, odd, table)
    try:
        res = repmod.module_axiom_check(spec, N, limit=VIOLATION_LIMIT)
    except repmod.WindowExhausted as exc:
        raise UsageError(str(exc)) from None
    return _from_check("module-check", params, res)


def _verdict_violations(v: cl.Verdict) -> list[dict]:
    out = []
    for item in v.violations:
        rel = item["relation"]
        if rel == "stage2-witness":
            out.append({"relation": rel, "indices": {"free": item["free"]},
                        "lhs": ",".join(item["nonzero"]), "rhs": "f=ft=h=ht=0 and g*gt=0"})
        elif rel == "stage1-dimension":
            out.append({"relation": rel, "indices": {"targets": item["targets"]},
                        "lhs": json.dumps(item["dims"], sort_keys=True), "rhs": "<= 2"})
        else:
            out.append({"relation": rel, "indices": {}, "lhs": item.get("reason", ""), "rhs": ""})
    return out


def cmd_classify(args) -> dict:
    N = _window(args, 6)
    even, odd, params = _params_families(args, need_odd=True)
    if N < 4:
        raise UsageError("classify needs --window >= 4")
    v = cl.classify(cl.ModuleParams(even, odd), N)
    js = v.to_json()
    derived = {k: js[k] for k in ("basis_patterns", "branches", "case_tag", "constraints", "core_radius",
                                  "final", "forced_zero", "g_gt_constraint_found", "g_gt_product_zero",
                                  "target_dims", "window_nullity")}
    viol = _verdict_violations(v)
    return _report("classify", params, N, "pass" if not viol else "fail", viol, derived)


def _load_spec(args) -> inv.InvolutionSpec:
    if not args.spec:
        raise UsageError("--spec is required")
    try:
        return inv.read_spec(args.spec)
    except (OSError, inv.SpecSyntaxError) as exc:
        raise UsageError(f"--spec: {exc}") from None


def cmd_involution_check(args) -> dict:
    N = _window(args, 3)
    spec = _load_spec(args)
    res = inv.axiom_check(spec, N, limit=VIOLATION_LIMIT)
    return _from_check("involution-check", {"spec": spec.describe()}, res)


def cmd_unitary(args) -> dict:
    N = _window(args, 6)
    spec = _load_spec(args)
    a = _scalar(args.a, "a")
    b = _scalar(args.b, "b")
    params = {"a": format_scalar(a), "b": format_scalar(b), "spec": spec.describe()}
    out = inv.unitary_weights(spec, a, b, N)
    if isinstance(out, inv.FormWeights):
        return _report("unitary", params, N, "pass", [], {"weights": out.to_json()})
    return _report("unitary", params, N, "infeasible", [out.to_json()], {"reason": out.reason})


COMMANDS = {
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "skew": cmd_skew,
    "generators": cmd_generators,
    "module-check": cmd_module_check,
    "classify": cmd_classify,
    "involution-check": cmd_involution_check,
    "unitary": cmd_unitary,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--window", type=int, metavar="N")
    common.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    p = _Parser(prog="superw22", description="Exact checks for the super W(2,2) algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("bracket", parents=[common], help="bracket two elements")
    s.add_argument("x")
    s.add_argument("y")
    sub.add_parser("jacobi", parents=[common], help="super-Jacobi identity on a window")
    sub.add_parser("skew", parents=[common], help="super-skew-symmetry on a window")
    s = sub.add_parser("generators", parents=[common], help="closure of a generating set")
    s.add_argument("--seed", help="comma-separated generators (default: the ten-element seed)")
    for name in ("module-check", "classify", "unitary"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--a")
        s.add_argument("--b")
        if name != "unitary":
            s.add_argument("--a2")
            s.add_argument("--b2")
            s.add_argument("--family", choices=repmod.FAMILY_KINDS, default="Aab")
        if name == "module-check":
            s.add_argument("--coeffs", metavar="FILE")
        if name == "unitary":
            s.add_argument("--spec", metavar="FILE")
    s = sub.add_parser("involution-check", parents=[common])
    s.add_argument("--spec", metavar="FILE")
    return p


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.window is not None and args.window < 1:
            raise UsageError("--window must be >= 1")
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"superw22: error: {exc}", file=stderr)
        return 2
    text = dumps(report)
    stdout.write(text)
    if args.json:
        Path(args.json).write_text(text)
    return 0 if report["status"] == "pass" else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
