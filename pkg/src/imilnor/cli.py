"""Command line interface.

Exit codes: 0 success, 1 failed verification, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import image, stabilisation
from .germspec import GermSpec, SpecSemanticError, parse_germ_specs
from .milnor import NonIsolatedError, NotICISError
from .multipoints import (
    Partition,
    divided_differences,
    expected_dim,
    expected_dim_P,
    ideal_IkP,
    partition_generators,
    partitions,
)
from .parse import ParseError
from .poly import Polynomial
from .stdbasis import ResourceLimitError, limits, local_quotient_dim

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


# JSON helpers -------------------------------------------------------------------


def rational(q) -> Dict[str, int]:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _jsonable(v):
    if isinstance(v, Fraction):
        return rational(v)
    if isinstance(v, Polynomial):
        return str(v)
    return v


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# catalog and spec loading -----------------------------------------------------------


def catalog_specs() -> List[Tuple[str, GermSpec]]:
    root = resources.files("imilnor") / "catalog"
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".germ"):
            for spec in parse_germ_specs(entry.read_text(encoding="utf-8")):
                out.append((entry.name, spec))
    return out


def load_spec(ref: str) -> GermSpec:
    """A germ from a file path, or from the built-in catalog by name or file name."""
    path = Path(ref)
    if path.exists():
        specs = parse_germ_specs(path.read_text(encoding="utf-8"))
        if len(specs) != 1:
            raise InputError(f"{ref} holds {len(specs)} germs; expected one")
        return specs[0]
    for fname, spec in catalog_specs():
        if ref in (spec.name, fname, fname[: -len(".germ")]) or ref.lower() == spec.name.lower() + ".germ":
            return spec
    raise InputError(f"no such file or catalog germ: {ref}")


# expectations ---------------------------------------------------------------------


def _actuals(report: image.VerificationReport, stab_info: Dict[str, Any]) -> Dict[str, Any]:
    out: Dict[str, Any] = {"mu_image": report.lhs_parts["mu_image"], "sigma": report.rhs_algebraic}
    if "m0" in report.lhs_parts:
        out["m0"] = report.lhs_parts["m0"]
    if "mu_slice" in report.lhs_parts:
        out["mu_slice"] = report.lhs_parts["mu_slice"]
    if report.type_counts is not None:
        tc = report.type_counts
        out.update(cross_caps=tc.cross_caps, tacnodes=tc.tacnodes, triple_points=tc.triple_points)
    for t in report.sigma.terms:
        if t.partition is not None and t.kind != "fold":
            out[f"sigma_P{''.join(map(str, t.partition.parts))}"] = t.contribution
    for t in report.marar.terms:
        out[f"marar_P{''.join(map(str, t.partition.parts))}"] = t.contribution
    if report.germ.n == 1:
        out["double_points"] = image.double_point_count(report.germ)
        out["folds"] = [t for t in report.sigma.terms if t.kind == "fold"][0].value
    out.update(stab_info)
    return out


def check_expectations(spec: GermSpec, actual: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = []
    for key, want in spec.expect.items():
        if key not in actual:
            rows.append({"key": key, "expected": _jsonable(want), "actual": None, "pass": False})
            continue
        got = actual[key]
        if key == "lambda":
            ok = _proportional(got, want)
        else:
            ok = Fraction(got) == Fraction(want)
        rows.append({"key": key, "expected": _jsonable(want), "actual": _jsonable(got), "pass": ok})
    return rows


def _proportional(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    m, c = next(iter(a.items()))
    cb = b.terms.get(m)
    return cb is not None and a * cb == b * c


# stabilisation route ------------------------------------------------------------------


def run_stab(spec: GermSpec, seed: int) -> Dict[str, Any]:
    F = spec.family()
    if F is None:
        return {}
    f = F.base
    if f.n == 1:
        cc = stabilisation.curve_counts(F, seed)
        return {"double_points": cc.double_points, "folds": cc.fold_count, "stab_sigma": cc.sigma_total}
    if f.n != 2:
        return {}
    curve = stabilisation.double_point_curve(F)
    info: Dict[str, Any] = {"lambda": curve.lam}
    try:
        tc = stabilisation.typed_counts(F)
    except stabilisation.TriplePointsPresent:
        info["raw_critical"] = stabilisation.raw_critical_count(F)
        info["typed_split"] = "unsupported (triple points)"
        return info
    info.update(
        raw_critical=tc.raw_critical,
        cross_caps=tc.cross_caps,
        tacnodes=tc.tacnodes,
        triple_points=tc.triple_points,
        stab_sigma=tc.sigma_total,
    )
    return info


# report rendering ---------------------------------------------------------------------


def marar_json(b: image.MararBreakdown) -> Dict[str, Any]:
    return {
        "mu_image": b.total,
        "terms": [
            {
                "k": t.k,
                "partition": list(t.partition.parts),
                "dim": t.dim,
                "status": t.status,
                "mu": t.mu,
                "deg": t.deg,
                "beta": rational(t.beta),
                "contribution": rational(t.contribution),
            }
            for t in b.terms
        ],
    }


def sigma_json(s: image.SigmaCount) -> Dict[str, Any]:
    return {
        "total": s.total,
        "terms": [
            {
                "k": t.k,
                "partition": list(t.partition.parts) if t.partition else None,
                "dim": t.dim,
                "kind": t.kind,
                "value": t.value,
                "covering_degree": t.covering_degree,
                "contribution": rational(t.contribution),
            }
            for t in s.terms
        ],
    }


def slice_json(sl: image.SliceResult) -> Dict[str, Any]:
    return {
        "g": {"n": sl.g.n, "p": sl.g.p, "vars": list(sl.g.source_vars), "comps": [str(c) for c in sl.g.components]},
        "form": str(sl.form) if sl.form else None,
        "source_change": [[rational(c) for c in row] for row in sl.source_change],
    }


def verify_json(spec: GermSpec, r: image.VerificationReport, stab_info, expectations) -> Dict[str, Any]:
    tc = r.type_counts
    return {
        "germ": spec.name,
        "n": spec.n,
        "p": spec.p,
        "formula": r.formula,
        "lhs": r.lhs,
        "lhs_parts": r.lhs_parts,
        "rhs": r.rhs_algebraic,
        "rhs_algebraic": r.rhs_algebraic,
        "rhs_numeric": r.rhs_numeric,
        "algebraic_pass": r.algebraic_pass,
        "numeric_pass": r.numeric_pass,
        "type_counts": None if tc is None else {"C": tc.cross_caps, "J": tc.tacnodes, "T": tc.triple_points},
        "marar": marar_json(r.marar),
        "sigma": sigma_json(r.sigma),
        "slice": slice_json(r.slice) if r.slice else None,
        "stabilisation": {k: _jsonable(v) for k, v in stab_info.items()},
        "expectations": expectations,
        "pass": r.passed and all(e["pass"] for e in expectations),
    }


def _verify(spec: GermSpec, seed: int) -> Dict[str, Any]:
    f = spec.germ()
    family = spec.family() if spec.n <= 2 else None
    numeric_family = family
    if family is not None and spec.n == 2:
        # typed split needs no triple points; the total is still checked algebraically
        try:
            stabilisation.typed_counts(family)
        except stabilisation.TriplePointsPresent:
            numeric_family = None
    r = image.verify_le_greuel(f, seed, numeric_family)
    stab_info = run_stab(spec, seed)
    expectations = check_expectations(spec, _actuals(r, stab_info))
    return verify_json(spec, r, stab_info, expectations)


def _print_verify(d: Dict[str, Any]) -> None:
    print(f"germ {d['germ']}  (n={d['n']}, p={d['p']})")
    parts = ", ".join(f"{k}={v}" for k, v in d["lhs_parts"].items())
    print(f"  {d['formula']}:  lhs={d['lhs']} ({parts})  rhs={d['rhs_algebraic']}", end="")
    if d["rhs_numeric"] is not None:
        print(f"  rhs[stabilisation]={d['rhs_numeric']}", end="")
    print()
    if d["type_counts"]:
        tc = d["type_counts"]
        print(f"  cross caps C={tc['C']}  tacnodes J={tc['J']}  triple points T={tc['T']}")
    for e in d["expectations"]:
        if not e["pass"]:
            print(f"  expectation {e['key']}: expected {e['expected']}, got {e['actual']}")
    print(f"  {'PASS' if d['pass'] else 'FAIL'}")


def _fmt_q(q: Dict[str, int]) -> str:
    return str(q["num"]) if q["den"] == 1 else f"{q['num']}/{q['den']}"


# commands ----------------------------------------------------------------------------


def cmd_mps(args) -> int:
    spec = load_spec(args.spec)
    f = spec.germ()
    k = args.k
    if k < 2:
        raise InputError("-k must be at least 2")
    if args.P:
        try:
            P = Partition.parse(args.P)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if P.k != k:
            raise InputError(f"partition {P} is not a partition of {k}")
        chosen = [P]
    else:
        chosen = partitions(k)
    dd = divided_differences(f, k)
    out = {
        "germ": spec.name,
        "k": k,
        "vars": list(f.point_vars(k)),
        "divided_differences": [str(g) for g in dd],
        "expected_dim": expected_dim(f, k),
        "partitions": [],
    }
    for P in chosen:
        q = local_quotient_dim(ideal_IkP(f, k, P))
        out["partitions"].append(
            {
                "partition": list(P.parts),
                "extra_generators": [str(g) for g in partition_generators(f, P)],
                "expected_dim": expected_dim_P(f, k, P),
                "beta": rational(P.beta),
                "covering_degree": P.covering_degree,
                "local_dim": q.value,
            }
        )
    if args.json:
        print(_dump(out))
        return EXIT_OK
    print(f"I_{k}({spec.name}) in ({', '.join(out['vars'])}); expected dim of D^{k} = {out['expected_dim']}")
    for g in out["divided_differences"]:
        print(f"  {g}")
    for row in out["partitions"]:
        P = "(" + ",".join(map(str, row["partition"])) + ")"
        extra = ", ".join(row["extra_generators"]) or "-"
        ld = "infinite" if row["local_dim"] is None else row["local_dim"]
        print(f"  P={P}: + [{extra}]  expected dim {row['expected_dim']}  beta={_fmt_q(row['beta'])}  local dim {ld}")
    return EXIT_OK


def cmd_mu_image(args) -> int:
    spec = load_spec(args.spec)
    b = image.image_milnor_number(spec.germ(), args.seed)
    d = marar_json(b)
    d["germ"] = spec.name
    if args.json:
        print(_dump(d))
        return EXIT_OK
    print(f"mu_I({spec.name}) = {b.total}")
    for t in d["terms"]:
        P = "(" + ",".join(map(str, t["partition"])) + ")"
        extra = f"mu={t['mu']}" if t["mu"] is not None else ""
        print(f"  k={t['k']} P={P:<9} dim={t['dim']:>2} {t['status']:<8} {extra:<8} beta={_fmt_q(t['beta']):<5} -> {_fmt_q(t['contribution'])}")
    return EXIT_OK


def cmd_slice(args) -> int:
    spec = load_spec(args.spec)
    f = spec.germ()
    if f.n < 2:
        raise InputError("slices need n >= 2")
    sl, mu = image.stable_slice(f, args.seed)
    d = slice_json(sl)
    d["germ"] = spec.name
    d["mu_image_slice"] = mu
    if args.json:
        print(_dump(d))
        return EXIT_OK
    g = sl.g
    print(f"slice of {spec.name} by {d['form']} = 0:")
    print(f"  g{g}")
    print(f"  mu_I(g) = {mu}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    d = _verify(spec, args.seed)
    if args.json:
        print(_dump(d))
    else:
        _print_verify(d)
    return EXIT_OK if d["pass"] else EXIT_FAIL


def cmd_stab(args) -> int:
    spec = load_spec(args.spec)
    if spec.stab is None:
        raise InputError(f"{spec.name} has no stabilisation block")
    info = run_stab(spec, args.seed)
    f = spec.germ()
    sigma = image.algebraic_sigma_count(f, args.seed).total
    numeric = info.get("stab_sigma")
    ok = numeric is None or numeric == sigma
    d = {"germ": spec.name, "stabilisation": {k: _jsonable(v) for k, v in info.items()}, "algebraic_sigma": sigma, "pass": ok}
    if args.json:
        print(_dump(d))
    else:
        print(f"stabilisation route for {spec.name}:")
        for k, v in info.items():
            print(f"  {k} = {v}")
        print(f"  algebraic #Sigma = {sigma}  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    results = []
    for fname, spec in catalog_specs():
        try:
            d = _verify(spec, args.seed)
        except (ValueError, ArithmeticError) as exc:
            d = {"germ": spec.name, "pass": False, "error": str(exc)}
        d["file"] = fname
        results.append(d)
    all_pass = all(d["pass"] for d in results)
    if args.json:
        print(_dump({"entries": results, "pass": all_pass}))
    else:
        for d in results:
            if "error" in d:
                print(f"FAIL {d['germ']:<10} error: {d['error']}")
                continue
            rhs = f"{d['rhs_algebraic']}" + (f"/{d['rhs_numeric']}" if d["rhs_numeric"] is not None else "")
            bad = [e["key"] for e in d["expectations"] if not e["pass"]]
            note = f"  mismatched: {', '.join(bad)}" if bad else ""
            print(f"{'PASS' if d['pass'] else 'FAIL'} {d['germ']:<10} lhs={d['lhs']:<3} rhs={rhs:<6} checks={len(d['expectations'])}{note}")
        print(f"{sum(d['pass'] for d in results)}/{len(results)} passed")
    return EXIT_OK if all_pass else EXIT_FAIL


# argument parsing ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generic linear forms (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--max-pairs", type=int, default=argparse.SUPPRESS, help="pair budget for basis computations")

    parser = argparse.ArgumentParser(prog="imilnor", parents=[common], description="Image Milnor numbers of corank-1 map germs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mps", parents=[common], help="multiple point space ideals")
    p.add_argument("spec")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-P", help="partition, e.g. 2,1")
    p.set_defaults(func=cmd_mps)

    for name, func, text in [
        ("mu-image", cmd_mu_image, "image Milnor number with its Marar breakdown"),
        ("slice", cmd_slice, "transverse slice"),
        ("verify", cmd_verify, "check the Le-Greuel type formula"),
        ("stab", cmd_stab, "stabilisation route"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("spec")
        p.set_defaults(func=func)

    p = sub.add_parser("catalog", parents=[common], help="verify every built-in germ")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("json", False), ("max_pairs", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        with limits(args.max_pairs):
            return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, SpecSemanticError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (image.NotFinitelyDeterminedError, NotICISError, NonIsolatedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (image.InconsistencyError,) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
