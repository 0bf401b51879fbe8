"""Command-line front end.

Command groups:
  invariants basis   degree-sliced invariant bases of a configured module
  sep check          pointwise separation check of a degree budget
  sep beta           ascending minimal-separating-degree search
  sep witness        closed-form witness certificates for the named families
  bounds compute     the relative degree-bound calculus on a descriptor
  paper list         catalog of verification cases
  paper verify       run verification cases (exit 1 on any failure)

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 resource cap exceeded.  JSON reports go to --out (written atomically);
a human-readable summary goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from typing import List, Optional

from .bounds import apply_rules, exact_value_lookup
from .config import (ConfigError, descriptor_from_config, field_from_config,
                     load_json, module_from_config, scalar_to_json)
from .fields import GF, QQ, FieldSpec, is_prime
from .invariants import invariant_slice, invariant_slice_parametric
from .reps import GroupCapExceededError, cyclic_module, dihedral_module, \
    dual_sym_module, enumerate_group, twist_pair_module
from .separation import (DEFAULT_POINT_CAP, PointCapExceededError,
                         SeparatingSet, WitnessConstructionError,
                         check_separating_on_points, parametric_pair_witness,
                         separating_degree_search, witness_against_zero)
from .verify import CASES, list_cases, run_all, run_case

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RESOURCE_CAP = 3


def _write_report(path: Optional[str], payload) -> None:
    """Atomic JSON report write (temp file + rename)."""
    if path is None:
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_field_size(q: int) -> FieldSpec:
    """A prime power q -> the field with q elements (default modulus)."""
    if q < 2:
        raise ConfigError(f"field size {q} is not a prime power")
    p = 2
    while p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ConfigError(f"field size {q} is not a prime power")
            return FieldSpec.get(p, k)
        p += 1
    raise ConfigError(f"field size {q} is not a prime power")


def _load_module(args):
    cfg = load_json(args.module)
    return module_from_config(cfg)


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def cmd_invariants_basis(args) -> int:
    handle = _load_module(args)
    degrees = [args.degree] if args.degree is not None else list(range(1, args.dmax + 1))
    slices = []
    for d in degrees:
        if handle.kind == "finite":
            sl = invariant_slice(handle.rep, handle.group, d)
        else:
            sl = invariant_slice_parametric(handle.action, d)
        slices.append({"degree": d, "dimension": sl.dimension,
                       "basis": [f.to_text() for f in sl.basis]})
    payload = {"module": handle.label, "slices": slices}
    for entry in slices:
        print(f"degree {entry['degree']}: dimension {entry['dimension']}")
        for text in entry["basis"]:
            print(f"  {text}")
    _write_report(args.out, payload)
    return EXIT_OK


def cmd_sep_check(args) -> int:
    handle = _load_module(args)
    if handle.kind != "finite":
        raise ConfigError("sep check requires a finite module; use sep witness for parametric families")
    test_field = _parse_field_size(args.field) if args.field else handle.field
    basis = []
    for d in range(1, args.degree + 1):
        basis.extend(invariant_slice(handle.rep, handle.group, d).basis)
    sep_set = SeparatingSet.build(basis, handle.rep.generators,
                                  provenance=f"slice basis up to degree {args.degree}")
    report = check_separating_on_points(sep_set, handle.rep, handle.group,
                                        test_field, cap=args.cap_points)
    print(f"{handle.label}: degree <= {args.degree} over {test_field!r}: {report.outcome} "
          f"({report.orbit_count} orbits)")
    if report.witness:
        print(f"  witness: v={[scalar_to_json(x) for x in report.witness.v]} "
              f"w={[scalar_to_json(x) for x in report.witness.w]}")
    _write_report(args.out, report.to_json())
    return EXIT_OK


def cmd_sep_beta(args) -> int:
    handle = _load_module(args)
    if handle.kind != "finite":
        raise ConfigError("sep beta requires a finite module")
    test_field = _parse_field_size(args.field) if args.field else handle.field
    report = separating_degree_search(handle.rep, handle.group, test_field,
                                      d_max=args.dmax, cap=args.cap_points)
    verdict = report.verdict()
    print(f"{handle.label} over {test_field!r}: certified lower {verdict['certified_lower']}, "
          f"evidence upper {verdict['evidence_upper']}, theorem upper {verdict['theorem_upper']}"
          + (" (exact)" if report.exact else ""))
    _write_report(args.out, report.to_json())
    return EXIT_OK


def cmd_sep_witness(args) -> int:
    case = args.case
    try:
        if case == "p-group":
            p, k = args.p, args.k
            if p is None or not is_prime(p):
                raise ConfigError("p-group witnesses need a prime --p")
            field = GF(p)
            rep = cyclic_module(1, p, k, field)
            group = enumerate_group(rep)
            witness = witness_against_zero(rep, group, [field.one] * rep.dim, group.order)
            payload = {"case": case, "certified_lower": group.order,
                       "theorem_upper": group.order, "exact": True,
                       "witness": witness.to_json()}
        elif case == "cyclic":
            p, k, r = args.p, args.k, args.r
            if p is None or r is None:
                raise ConfigError("cyclic witnesses need --r and a prime --p")
            ext = 1
            while (p ** ext - 1) % r:
                ext += 1
                if ext > 16:
                    raise ConfigError(f"no small extension of F_{p} contains an order-{r} root")
            field = GF(p) if ext == 1 else GF(p, ext)
            rep = cyclic_module(r, p, k, field)
            group = enumerate_group(rep)
            witness = witness_against_zero(rep, group, [field.one] * rep.dim, group.order)
            payload = {"case": case, "field": {"p": p, "k": ext},
                       "certified_lower": group.order, "theorem_upper": group.order,
                       "exact": True, "witness": witness.to_json()}
        elif case == "dihedral":
            p, r = args.p, args.r
            if p is None or r is None:
                raise ConfigError("dihedral witnesses need odd prime --p and --r")
            field = GF(p)
            rep = dihedral_module(p, r, field)
            group = enumerate_group(rep)
            witness = witness_against_zero(rep, group, [field.one] * rep.dim, group.order)
            payload = {"case": case, "certified_lower": group.order,
                       "theorem_upper": group.order, "exact": True,
                       "witness": witness.to_json()}
        elif case == "additive":
            n = args.n
            if args.p:
                field = GF(args.p)
                act = twist_pair_module(field, n)
                bound = args.p ** n + 1
                witness = parametric_pair_witness(act, [0, 1, 0, 0], [0, 1, 1, 0], bound)
            else:
                act = dual_sym_module(QQ, n)
                bound = n + 1
                v = [1, 0] + [1] + [0] * n
                w = [1, 0] + [0] * (n + 1)
                witness = parametric_pair_witness(act, v, w, bound)
            payload = {"case": case, "module": act.label,
                       "certified_lower": bound, "witness": witness.to_json()}
        else:
            raise ConfigError(f"unknown witness case {case!r}")
    except WitnessConstructionError as exc:
        print(f"witness construction failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    print(f"{case}: certified lower bound {payload['certified_lower']}")
    _write_report(args.out, payload)
    return EXIT_OK


def cmd_bounds_compute(args) -> int:
    desc = descriptor_from_config(load_json(args.descriptor))
    upper, lower = apply_rules(desc)
    exact = exact_value_lookup(desc)
    payload = {
        "descriptor": desc.name or "(unnamed)",
        "order": desc.order,
        "char": desc.char,
        "upper": upper.to_json(),
        "lower": lower.to_json(),
    }
    if exact is not None:
        payload["exact"] = {"value": exact.value, "rule": exact.rule}
    print(f"{payload['descriptor']}: upper {upper.value}, lower {lower.value}"
          + (f", exact {exact.value}" if exact else ""))
    _write_report(args.out, payload)
    return EXIT_OK


def cmd_paper_list(args) -> int:
    catalog = list_cases()
    for entry in catalog:
        print(f"{entry['name']:18s} {entry['description']}")
    _write_report(args.out, catalog)
    return EXIT_OK


def cmd_paper_verify(args) -> int:
    if args.all:
        names = list(CASES)
    elif args.cases:
        unknown = [c for c in args.cases if c not in CASES]
        if unknown:
            raise ConfigError(f"unknown verification case(s): {', '.join(unknown)}")
        names = args.cases
    else:
        raise ConfigError("paper verify needs case names or --all")
    if args.all and args.jobs > 1:
        reports = run_all(jobs=args.jobs)
    else:
        reports = [run_case(name) for name in names]
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        line = f"{status} {report.name} ({report.elapsed:.2f}s)"
        if report.error:
            line += f" -- {report.error}"
        print(line)
    _write_report(args.out, [r.to_json() for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFICATION_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepinv",
        description="Separating invariants of finite matrix groups: slices, "
                    "witness certificates, separating morphisms, degree bounds.")
    top = parser.add_subparsers(dest="group_cmd", required=True)

    inv = top.add_parser("invariants", help="invariant slice bases")
    inv_sub = inv.add_subparsers(dest="cmd", required=True)
    basis = inv_sub.add_parser("basis", help="print degree-sliced invariant bases")
    basis.add_argument("--module", required=True, help="module config JSON path")
    basis.add_argument("--degree", type=int, help="single degree")
    basis.add_argument("--dmax", type=int, default=3, help="degrees 1..dmax when --degree is absent")
    basis.add_argument("--out", help="JSON report path")
    basis.set_defaults(func=cmd_invariants_basis)

    sep = top.add_parser("sep", help="separation engine")
    sep_sub = sep.add_subparsers(dest="cmd", required=True)

    check = sep_sub.add_parser("check", help="pointwise separation check")
    check.add_argument("--module", required=True)
    check.add_argument("--degree", type=int, required=True)
    check.add_argument("--field", type=int, help="test-field size (prime power)")
    check.add_argument("--cap-points", type=int, default=DEFAULT_POINT_CAP)
    check.add_argument("--out")
    check.set_defaults(func=cmd_sep_check)

    beta = sep_sub.add_parser("beta", help="minimal separating degree search")
    beta.add_argument("--module", required=True)
    beta.add_argument("--dmax", type=int, required=True)
    beta.add_argument("--field", type=int, help="test-field size (prime power)")
    beta.add_argument("--cap-points", type=int, default=DEFAULT_POINT_CAP)
    beta.add_argument("--out")
    beta.set_defaults(func=cmd_sep_beta)

    witness = sep_sub.add_parser("witness", help="closed-form witness certificates")
    witness.add_argument("--case", required=True,
                         choices=["p-group", "cyclic", "dihedral", "additive"])
    witness.add_argument("--p", type=int, help="characteristic (0 or absent: rationals)")
    witness.add_argument("--r", type=int, help="coprime part (cyclic) / exponent (dihedral)")
    witness.add_argument("--k", type=int, default=1, help="p-part exponent")
    witness.add_argument("--n", type=int, default=1, help="twist / symmetric-power parameter")
    witness.add_argument("--out")
    witness.set_defaults(func=cmd_sep_witness)

    bounds = top.add_parser("bounds", help="relative degree-bound calculus")
    bounds_sub = bounds.add_subparsers(dest="cmd", required=True)
    compute = bounds_sub.add_parser("compute", help="derive best bounds with certificates")
    compute.add_argument("--descriptor", required=True, help="descriptor JSON path")
    compute.add_argument("--out")
    compute.set_defaults(func=cmd_bounds_compute)

    paper = top.add_parser("paper", help="verification suite")
    paper_sub = paper.add_subparsers(dest="cmd", required=True)
    plist = paper_sub.add_parser("list", help="catalog of verification cases")
    plist.add_argument("--out")
    plist.set_defaults(func=cmd_paper_list)
    pverify = paper_sub.add_parser("verify", help="run verification cases")
    pverify.add_argument("cases", nargs="*", help="case names (see: paper list)")
    pverify.add_argument("--all", action="store_true", help="run the whole catalog")
    pverify.add_argument("--jobs", type=int, default=1, help="parallel workers for --all")
    pverify.add_argument("--out")
    pverify.set_defaults(func=cmd_paper_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    from .bounds import DescriptorError
    from .fields import FieldConstructionError
    from .reps import ConstructionError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ConstructionError, DescriptorError,
            FieldConstructionError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (PointCapExceededError, GroupCapExceededError) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_CAP


if __name__ == "__main__":
    sys.exit(main())
