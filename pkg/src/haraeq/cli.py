"""Command-line front end.

    haraeq solve <file> [--mode rational|float] [--out PATH] [--format human|record]
    haraeq certify <file> [--mode ...] [--out PATH] [--format ...]
    haraeq sweep --param NAME --from V --to V --steps K [--grid2d NAME:FROM:TO:STEPS]
                 [--econ FILE | --alpha V | --e V] [--out PATH] [--seed N]
    haraeq reproduce <scenario> [scenario options]

Exit codes: 0 success, 1 usage or configuration error, 2 the polynomial
route and the bracketing oracle disagree (or a reproduction check fails).
The oracle scan range defaults to [1e-6, 1e6] and can be overridden with
the environment variable HARA_EQ_SCAN_RANGE="min:max".
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import oracle as oracle_mod
from .certify import (CRITICAL, RULE_GAMMA_RANGE, THREE, UNIQUE,
                      CrraSymmetricSpec, classify_crra_symmetric,
                      critical_endowment)
from .certify import certify as run_certify
from .certify import cubic_coefficients
from .econfile import dump_economy, economy_to_mapping, load_economy
from .errors import ConfigParse, EconomyInvalid, GammaOutOfRange, HaraEqError
from .model import Economy, excess_demand_x
from .rationals import format_number, parse_number
from .reduction import approximate_epsilon, reduce_to_polynomial
from .roots import cubic_discriminant, isolate_positive_roots, prices_from_roots
from .sampling import random_gamma_range_economy

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2


def _scan_range():
    raw = os.environ.get("HARA_EQ_SCAN_RANGE")
    if not raw:
        return oracle_mod.DEFAULT_RANGE
    try:
        lo, hi = raw.split(":")
        lo, hi = float(lo), float(hi)
    except ValueError as exc:
        raise ConfigParse(
            f"HARA_EQ_SCAN_RANGE must look like 'min:max', got {raw!r}") from exc
    if not 0 < lo < hi:
        raise ConfigParse(f"HARA_EQ_SCAN_RANGE needs 0 < min < max, got {raw!r}")
    return lo, hi


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _solve_pipeline(econ: Economy, max_denominator: int, points: int):
    """Shared by solve and reproduce: polynomial route, oracle, agreement."""
    result = {"c": econ.c, "gamma": format_number(econ.hara.gamma),
              "mode": "rational" if econ.is_rational else "float"}
    report = None
    exponent = None
    prices = []
    if econ.hara.gamma > 1:
        exponent = approximate_epsilon(econ.hara.gamma, max_denominator)
        poly = reduce_to_polynomial(econ, exponent)
        report = isolate_positive_roots(poly)
        prices = prices_from_roots(report, exponent.n)
        result.update({
            "exponent": str(exponent),
            "polynomial": poly.serialize().split("\n"),
            "descartes_bound": report.descartes_bound,
            "classification": report.classification,
            "certified": report.certified,
            "roots_q": [format_number(r.value) for r in report.roots],
            "brackets_q": [(format_number(r.bracket[0]), format_number(r.bracket[1]))
                           for r in report.roots],
            "flags": [r.multiplicity_flag for r in report.roots],
            "prices": [format_number(p) for p in prices],
            "residuals": [format_number(abs(float(excess_demand_x(econ, float(p)))))
                          for p in prices],
        })
    cert = run_certify(econ, max_denominator)
    result["certificate"] = cert.to_record()

    lo, hi = _scan_range()
    scan = oracle_mod.scan(econ, lo, hi, points)
    result["oracle"] = {
        "prices": [repr(p) for p in scan.prices],
        "brackets": len(scan.brackets),
        "scan_range": [repr(lo), repr(hi)],
        "grid_points": scan.grid_points,
        "count_history": list(scan.count_history),
    }
    if report is not None:
        agreement = oracle_mod.agree(report, scan, 1e-9, n=exponent.n)
        result["agreement"] = {
            "ok": agreement.ok,
            "discrepancies": [[k, repr(v)] for k, v in agreement.discrepancies],
            "notes": [[k, repr(v)] for k, v in agreement.notes],
        }
    return result, cert, report, scan


def _hypothesis_lines(hypotheses) -> list:
    lines = []
    for h in hypotheses:
        state = "ok" if h["satisfied"] else "FAIL"
        try:
            near = abs(float(parse_number(h["margin"]))) < 1e-6
        except (ValueError, OverflowError):
            near = False
        marker = "  [near boundary]" if near else ""
        lines.append(f"  [{state}] {h['name']} margin={h['margin']}{marker}")
    return lines


def _format_human(result: dict) -> str:
    lines = [f"economy: c={result['c']} gamma={result['gamma']} mode={result['mode']}"]
    if "polynomial" in result:
        lines.append("reduced polynomial (exponent:coefficient):")
        lines.extend(f"  {t}" for t in result["polynomial"])
        lines.append(f"descartes bound: {result['descartes_bound']}"
                     f"  classification: {result['classification']}"
                     f"  certified: {result['certified']}")
        for q, br, flag, p, res in zip(result["roots_q"], result["brackets_q"],
                                       result["flags"], result["prices"],
                                       result["residuals"]):
            lines.append(f"  root q={q} in [{br[0]}, {br[1]}] ({flag})"
                         f" -> price p={p}  |Zx|={res}")
    cert = result["certificate"]
    lines.append(f"certificate: rule={cert['rule']} verdict={cert['verdict']}")
    lines.extend(_hypothesis_lines(cert["hypotheses"]))
    orc = result["oracle"]
    lines.append(f"oracle: {orc['brackets']} bracket(s) in "
                 f"[{orc['scan_range'][0]}, {orc['scan_range'][1]}], "
                 f"prices: {', '.join(orc['prices']) or '(none)'}")
    if "agreement" in result:
        ag = result["agreement"]
        lines.append(f"agreement: {'OK' if ag['ok'] else 'DISAGREE'}")
        for kind, detail in ag["discrepancies"]:
            lines.append(f"  {kind}: {detail}")
        for kind, detail in ag["notes"]:
            lines.append(f"  note {kind}: {detail}")
    return "\n".join(lines)


def cmd_solve(args) -> int:
    econ = load_economy(args.file, args.mode)
    result, _, report, _ = _solve_pipeline(econ, args.max_denominator, args.points)
    text = (json.dumps(result, indent=2) if args.format == "record"
            else _format_human(result))
    _emit(text, args.out)
    if "agreement" in result and not result["agreement"]["ok"]:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_certify(args) -> int:
    econ = load_economy(args.file, args.mode)
    cert = run_certify(econ, args.max_denominator)
    if args.format == "record":
        text = json.dumps(cert.to_record(), indent=2)
    else:
        rec = cert.to_record()
        lines = [f"rule: {rec['rule']}", f"verdict: {rec['verdict']}"]
        lines.extend(_hypothesis_lines(rec["hypotheses"]))
        for k, v in rec["details"].items():
            lines.append(f"  {k}: {v}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep

_SWEEP_CSV_HEADER = ("param,value,param2,value2,c,gamma,rule,verdict,"
                     "root_count,certified,delta,discriminant,planar_split,margins")


def _grid(lo, hi, steps: int):
    if steps < 2:
        raise ConfigParse("sweep needs at least 2 steps")
    span = hi - lo
    return [lo + Fraction(k, steps - 1) * span if isinstance(span, Fraction)
            else lo + span * (k / (steps - 1)) for k in range(steps)]


def _rebuild(base: Economy, param: str, value) -> Economy:
    a, b, gamma = base.hara.a, base.hara.b, base.hara.gamma
    rows = [[t.e, t.f, t.sigma] for t in base.types]
    if param == "a":
        a = value
    elif param == "b":
        b = value
    elif param == "gamma":
        gamma = value
        return Economy.from_betas(a, b, gamma,
                                  [(t.e, t.f, t.beta) for t in base.types])
    elif param[:-1] in ("e", "f", "beta", "sigma") and param[-1].isdigit():
        idx = int(param[-1]) - 1
        if not 0 <= idx < len(rows):
            raise ConfigParse(f"type index out of range in sweep param {param!r}")
        slot = {"e": 0, "f": 1, "sigma": 2}.get(param[:-1])
        if slot is None:                      # beta<i>: rebuild through beta
            betas = [[t.e, t.f, t.beta] for t in base.types]
            betas[idx][2] = value
            return Economy.from_betas(a, b, gamma, [tuple(r) for r in betas])
        rows[idx][slot] = value
    else:
        raise ConfigParse(f"unknown sweep parameter {param!r}")
    return Economy.from_sigmas(a, b, gamma, [tuple(r) for r in rows])


def _sweep_point(args, base, assignments) -> dict:
    """Evaluate one grid point; assignments is {param: value}."""
    symmetric = {"alpha", "e"} >= set(assignments)
    if symmetric and base is None:
        alpha = assignments.get("alpha", args.alpha)
        e = assignments.get("e", args.e)
        if alpha is None or e is None:
            raise ConfigParse("symmetric sweep needs --alpha or --e for the "
                              "fixed coordinate")
        spec = CrraSymmetricSpec(alpha, e)
        econ = spec.to_economy()
        cert = classify_crra_symmetric(spec)
        delta = cert.details["delta"]
        disc = cert.details["discriminant"]
        planar = cert.details["planar_split"]
    else:
        if base is None:
            raise ConfigParse(f"sweep over {list(assignments)} needs --econ")
        econ = base
        for param, value in assignments.items():
            econ = _rebuild(econ, param, value)
        cert = run_certify(econ, args.max_denominator)
        delta = disc = planar = ""
        if econ.c == 2 and econ.hara.gamma == 3:
            disc = cubic_discriminant(*cubic_coefficients(econ))

    count = ""
    certified = ""
    if econ.hara.gamma > 1:
        eps = approximate_epsilon(econ.hara.gamma, args.max_denominator)
        report = isolate_positive_roots(reduce_to_polynomial(econ, eps))
        count = report.count
        certified = report.certified
    # aggregate margins over the fired rule and everything else evaluated,
    # first occurrence wins, so threshold slack stays visible even when a
    # different rule decided the verdict
    seen = {}
    for bundle in (cert, *cert.secondary):
        for h in bundle.hypotheses:
            seen.setdefault(h.name, h.margin)
    margins = "|".join(f"{k}={format_number(v)}" for k, v in seen.items())
    return {
        "c": econ.c, "gamma": format_number(econ.hara.gamma),
        "rule": cert.rule, "verdict": cert.verdict,
        "root_count": count, "certified": certified,
        "delta": format_number(delta) if delta != "" else "",
        "discriminant": format_number(disc) if disc != "" else "",
        "planar_split": format_number(planar) if planar != "" else "",
        "margins": margins,
    }


def cmd_sweep(args) -> int:
    lo, hi = parse_number(args.from_), parse_number(args.to)
    values = _grid(lo, hi, args.steps)
    grid2 = None
    if args.grid2d:
        try:
            name2, lo2, hi2, steps2 = args.grid2d.split(":")
        except ValueError as exc:
            raise ConfigParse("--grid2d must look like name:from:to:steps") from exc
        grid2 = (name2, _grid(parse_number(lo2), parse_number(hi2), int(steps2)))

    base = load_economy(args.econ, args.mode) if args.econ else None
    rows = []
    for v in values:
        if grid2 is None:
            point = _sweep_point(args, base, {args.param: v})
            rows.append((args.param, v, "", "", point))
        else:
            for w in grid2[1]:
                point = _sweep_point(args, base, {args.param: v, grid2[0]: w})
                rows.append((args.param, v, grid2[0], w, point))

    out = ["# schema=1"]
    if args.seed is not None:
        out.append(f"# seed={args.seed}")
    out.append(_SWEEP_CSV_HEADER)
    for param, v, p2, w, point in rows:
        out.append(",".join([
            param, format_number(v), p2, format_number(w) if w != "" else "",
            str(point["c"]), point["gamma"], point["rule"], point["verdict"],
            str(point["root_count"]), str(point["certified"]),
            point["delta"], point["discriminant"], point["planar_split"],
            point["margins"],
        ]))
    _emit("\n".join(out), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce

def _check(name: str, ok: bool, detail: str = "") -> tuple:
    tag = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"{tag}  {name}{suffix}")
    return name, ok


def _reproduce_toda_walsh(args) -> bool:
    spec = CrraSymmetricSpec(Fraction(1, 7), Fraction(1, 49))
    econ = spec.to_economy()
    if args.write_econ:
        dump_economy(econ, args.write_econ)
    exponent = approximate_epsilon(econ.hara.gamma, 64)
    poly = reduce_to_polynomial(econ, exponent)
    expect = {0: Fraction(2, 7), 1: Fraction(-1), 2: Fraction(1), 3: Fraction(-2, 7)}
    checks = [
        _check("reduced polynomial is -(2/7)q^3 + q^2 - q + 2/7",
               dict(poly.terms) == expect, poly.serialize().replace("\n", " ")),
    ]
    report = isolate_positive_roots(poly)
    roots = sorted(r.value for r in report.roots)
    checks.append(_check("exactly three positive roots {1/2, 1, 2}",
                         report.exact_count == 3
                         and roots == [Fraction(1, 2), Fraction(1), Fraction(2)]
                         and all(r.exact for r in report.roots),
                         f"roots={[format_number(r) for r in roots]}"))
    prices = sorted(prices_from_roots(report, exponent.n))
    checks.append(_check("equilibrium prices {1/8, 1, 8}",
                         prices == [Fraction(1, 8), Fraction(1), Fraction(8)],
                         f"prices={[format_number(p) for p in prices]}"))
    scan = oracle_mod.scan(econ, *_scan_range(), args.points)
    agreement = oracle_mod.agree(report, scan, 1e-9, n=exponent.n)
    checks.append(_check("oracle re-finds all three prices", agreement.ok,
                         f"oracle={[f'{p:.9g}' for p in scan.prices]}"))
    return all(ok for _, ok in checks)


def _reproduce_gamma_boundary(args) -> bool:
    c = args.c
    if c < 2:
        raise ConfigParse("--c must be at least 2")
    gamma = Fraction(c, c - 1)
    rng = random.Random(args.seed)
    all_ok = True
    for trial in range(args.trials):
        econ, eps = random_gamma_range_economy(rng, c)
        econ = Economy.from_sigmas(econ.hara.a, econ.hara.b, gamma,
                                   [(t.e, t.f, t.sigma) for t in econ.types])
        exponent = approximate_epsilon(gamma, 64)
        report = isolate_positive_roots(reduce_to_polynomial(econ, exponent))
        cert = run_certify(econ)
        scan = oracle_mod.scan(econ, *_scan_range(), args.points)
        agreement = oracle_mod.agree(report, scan, 1e-9, n=exponent.n)
        ok = (cert.verdict == UNIQUE and cert.rule == RULE_GAMMA_RANGE
              and report.exact_count == 1 and agreement.ok)
        all_ok &= ok
        if not ok or trial == 0:
            _check(f"boundary gamma={gamma}: unique equilibrium (trial {trial})", ok)
    _check(f"{args.trials} random economies at gamma = {gamma} all unique", all_ok)
    return all_ok


def _reproduce_critical_line(args) -> bool:
    alpha = parse_number(args.alpha)
    e = critical_endowment(alpha)
    if e is None:
        print(f"no critical endowment exists on the line alpha={format_number(alpha)}; "
              "the critical locus e = alpha(4 alpha - 1)/(3(2 alpha - 1)) only "
              "meets (0,1) for alpha below 1/4 or above 3/4")
        return False
    spec = CrraSymmetricSpec(alpha, e)
    cert = classify_crra_symmetric(spec)
    checks = [
        _check(f"critical endowment e = {format_number(e)} on alpha = "
               f"{format_number(alpha)} line", True),
        _check("discriminant exactly zero", cert.details["discriminant"] == 0),
        _check("classification is critical", cert.verdict == CRITICAL),
    ]
    econ = spec.to_economy()
    exponent = approximate_epsilon(econ.hara.gamma, 64)
    report = isolate_positive_roots(reduce_to_polynomial(econ, exponent))
    checks.append(_check("isolation flags a repeated root at q = 1",
                         report.classification == "critical"
                         and any(r.exact and r.value == 1 for r in report.roots)))
    if args.write_econ:
        dump_economy(econ, args.write_econ)
    return all(ok for _, ok in checks)


def cmd_reproduce(args) -> int:
    runner = {
        "toda-walsh": _reproduce_toda_walsh,
        "gamma-boundary": _reproduce_gamma_boundary,
        "critical-line": _reproduce_critical_line,
    }.get(args.scenario)
    if runner is None:
        raise ConfigParse(f"unknown scenario {args.scenario!r}; pick one of "
                          "toda-walsh, gamma-boundary, critical-line")
    return EXIT_OK if runner(args) else EXIT_DISAGREE


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="haraeq",
        description="equilibria of two-good HARA exchange economies: "
                    "polynomial certification cross-checked by a demand scan")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=("auto", "rational", "float"),
                       default="auto")
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--format", choices=("human", "record"), default="human")
        p.add_argument("--max-denominator", type=int, default=64,
                       help="cap for the rational exponent approximation")
        p.add_argument("--points", type=int, default=oracle_mod.DEFAULT_POINTS,
                       help="oracle scan grid density")

    p_solve = sub.add_parser("solve", help="find and certify all equilibria")
    p_solve.add_argument("file")
    common(p_solve)
    p_solve.set_defaults(fn=cmd_solve)

    p_cert = sub.add_parser("certify", help="emit the uniqueness certificate")
    p_cert.add_argument("file")
    common(p_cert)
    p_cert.set_defaults(fn=cmd_certify)

    p_sweep = sub.add_parser("sweep", help="grid a parameter, emit CSV")
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="from_", required=True)
    p_sweep.add_argument("--to", required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--grid2d", default=None,
                         help="second axis as name:from:to:steps")
    p_sweep.add_argument("--econ", default=None,
                         help="base economy file for non-symmetric sweeps")
    p_sweep.add_argument("--alpha", type=parse_number, default=None,
                         help="fixed alpha for symmetric e-sweeps")
    p_sweep.add_argument("--e", type=parse_number, default=None,
                         help="fixed e for symmetric alpha-sweeps")
    p_sweep.add_argument("--seed", type=int, default=None,
                         help="recorded in the CSV header for provenance")
    common(p_sweep)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_rep = sub.add_parser("reproduce", help="run a built-in golden scenario")
    p_rep.add_argument("scenario")
    p_rep.add_argument("--c", type=int, default=2)
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--trials", type=int, default=20)
    p_rep.add_argument("--alpha", default="4/5")
    p_rep.add_argument("--write-econ", default=None,
                       help="also dump the scenario economy to a file")
    common(p_rep)
    p_rep.set_defaults(fn=cmd_reproduce)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigParse, EconomyInvalid, GammaOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HaraEqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
