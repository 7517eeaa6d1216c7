"""Batch command surface: expansion, membership audits, series classification,
dimension estimation, and cover experiments.

Exit codes: 0 success, 2 parse/domain error, 3 theorem-check violation,
4 enumeration budget exceeded.  Reports are deterministic: no timestamps,
decimal-string numerics, canonical key order; wall-clock goes to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import covers as covers_mod
from . import dimension as dim_mod
from . import membership as mem_mod
from . import series as series_mod
from .corpus import parallel_map, random_aux, random_psi, random_surd, trial_rng
from .dsl import (ParseError, parse_aux, parse_dimension, parse_psi,
                  parse_rate, parse_real, parse_word)
from .functions import (DomainViolationError, PowerLaw,
                        UndecidedComparisonError, derived)
from .report import (build_report, canonical_json_bytes, decimal, frac_str,
                     pair_ratio_csv, series_csv)
from .reals import continued_fraction
from .sublinear import certify_sublinear, sublinear_consequences
from .words import convergents, cylinder

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VIOLATION = 3
EXIT_BUDGET = 4

_SERIES_ALIASES = {"kw": "lebesgue"}


def _horizon(text: str) -> mem_mod.Horizon:
    if ":" in text:
        a, b = text.split(":", 1)
        return mem_mod.Horizon(int(a), int(b))
    return mem_mod.Horizon(1, int(text))


def _count(text: str) -> int:
    return int(float(text))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dirichlet-lab",
        description="Exact continued-fraction experiments for Dirichlet "
                    "improvability: expansions, membership audits, series "
                    "dichotomies, dimension estimation, cover constructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", default="json", choices=("json", "csv"))
        p.add_argument("--seed", type=int, default=0, help="64-bit corpus seed")

    p = sub.add_parser("expand", help="continued fraction expansion and table")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=10)
    common(p)

    p = sub.add_parser("audit", help="membership events and pointwise theorem audits")
    p.add_argument("--x")
    p.add_argument("--psi", help="approximation family (full audit chain)")
    p.add_argument("--Psi", dest="aux", help="threshold family (product-side audits)")
    p.add_argument("--horizon", type=_horizon, default=mem_mod.Horizon(1, 50))
    p.add_argument("--random-trials", type=int, default=0)
    common(p)

    p = sub.add_parser("series", help="three-valued series classification")
    p.add_argument("--kind", required=True,
                   choices=("kw", "lebesgue", "weak", "xlogx-upper",
                            "xlogx-lower", "simmons", "hausdorff"))
    p.add_argument("--Psi", dest="aux")
    p.add_argument("--psi")
    p.add_argument("--f", help="dimension family (hausdorff kind)")
    p.add_argument("--T", type=_count, default=10 ** 6)
    common(p)

    p = sub.add_parser("dim", help="growth order and critical-exponent estimate")
    p.add_argument("--Psi", dest="aux")
    p.add_argument("--psi")
    p.add_argument("--Q", type=_count, default=10 ** 6)
    common(p)

    p = sub.add_parser("covers", help="fibers, J sets, pair sums, dyadic blocks")
    p.add_argument("--fiber", help="coprime pair p/q")
    p.add_argument("--jset", help="word digits, e.g. 2,1")
    p.add_argument("--pair-sum", action="store_true")
    p.add_argument("--blocks", action="store_true")
    p.add_argument("--block-sweep", action="store_true")
    p.add_argument("--cover-sum", action="store_true")
    p.add_argument("--Psi", dest="aux")
    p.add_argument("--psi")
    p.add_argument("--f")
    p.add_argument("--q", type=_count, default=None)
    p.add_argument("--qmax", type=_count, default=100)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--digit-cap", type=int, default=3)
    common(p)
    return ap


# ---------------------------------------------------------------------------
# command bodies; each returns (config, payload, exit_code)

def _cmd_expand(args):
    x = parse_real(args.x)
    w, status = continued_fraction(x, args.depth)
    payload = {
        "word": w.to_json(),
        "status": {"kind": status.kind, "certified": status.certified},
    }
    if len(w) > 0:
        t = convergents(w)
        payload["convergents"] = t.to_json()
        payload["cylinder"] = cylinder(w).to_json()
    config = {"x": args.x, "depth": args.depth, "seed": args.seed}
    return config, payload, EXIT_OK


def _single_audit(args):
    x = parse_real(args.x)
    psi = parse_psi(args.psi) if args.psi else None
    aux = parse_aux(args.aux) if args.aux else (derived(psi) if psi else None)
    if aux is None:
        raise ParseError("audit needs --psi or --Psi")
    h = args.horizon
    payload: dict = {"memberships": {}, "audits": {}}
    violations = 0

    prod = mem_mod.product_events(x, aux, h)
    payload["memberships"]["product"] = prod.to_json()
    if psi is not None:
        diri = mem_mod.dirichlet_events(x, psi, h)
        payload["memberships"]["dirichlet"] = diri.to_json()
        mismatches = [n for n in h.indices()
                      if {diri.event_at(n), prod.event_at(n)} <= {"hold", "fail"}
                      and diri.event_at(n) != prod.event_at(n)]
        payload["equivalence"] = {"agree": not mismatches, "mismatches": mismatches}
        violations += len(mismatches)
        chain = mem_mod.inclusion_audit(x, psi, h)
        payload["audits"]["inclusion-chain"] = chain.to_json()
        violations += len(chain.violations)
    payload["memberships"]["quotient-pair"] = \
        mem_mod.quotient_pair_membership(x, aux, h).to_json()
    payload["memberships"]["single-quotient"] = \
        mem_mod.single_quotient_membership(x, aux, h).to_json()
    crit = mem_mod.audit_product_criterion(x, aux, h)
    payload["audits"]["product-criterion"] = crit.to_json()
    violations += len(crit.violations)
    payload["violations"] = violations
    config = {"x": args.x, "psi": args.psi, "Psi": args.aux,
              "horizon": f"{h.start}:{h.end}", "seed": args.seed}
    return config, payload, EXIT_VIOLATION if violations else EXIT_OK


def _random_audit(args):
    h = args.horizon

    def one_trial(i: int) -> tuple[int, int]:
        rng = trial_rng(args.seed, i)
        x = random_surd(rng)
        aux = random_aux(rng)
        psi = random_psi(rng)
        horizon = mem_mod.Horizon(1, min(h.end, len(x.period)))
        bad = len(mem_mod.audit_product_criterion(x, aux, horizon).violations)
        bad += len(mem_mod.inclusion_audit(x, psi, horizon).violations)
        return i, bad

    results = parallel_map(one_trial, list(range(args.random_trials)))
    failures = [i for i, bad in results if bad]
    payload = {
        "trials": args.random_trials,
        "violations": sum(bad for _, bad in results),
        "failing_trials": failures,
    }
    config = {"random_trials": args.random_trials, "seed": args.seed,
              "horizon": f"{h.start}:{h.end}"}
    return config, payload, EXIT_VIOLATION if failures else EXIT_OK


def _cmd_audit(args):
    if args.random_trials > 0:
        return _random_audit(args)
    if not args.x:
        raise ParseError("audit needs --x (or --random-trials)")
    return _single_audit(args)


def _aux_from_args(args):
    if args.aux:
        return parse_aux(args.aux)
    if args.psi:
        return derived(parse_psi(args.psi))
    raise ParseError("need --Psi or --psi")


def _cmd_series(args):
    aux = _aux_from_args(args)
    kind = _SERIES_ALIASES.get(args.kind, args.kind)
    if kind == "hausdorff":
        f = parse_dimension(args.f) if args.f else PowerLaw(Fraction(1))
        verdict = series_mod.hausdorff_series(f, aux, args.T)
    elif kind == "lebesgue":
        verdict = series_mod.lebesgue_series(aux, args.T)
    else:
        verdict = series_mod.example_series(kind, aux, args.T)
    config = {"kind": args.kind, "Psi": args.aux, "psi": args.psi,
              "f": args.f, "T": args.T, "seed": args.seed}
    return config, {"series": verdict.to_json(), "_verdict_obj": verdict}, EXIT_OK


def _cmd_dim(args):
    aux = _aux_from_args(args)
    tau_est = dim_mod.tau_liminf(aux)
    ce = dim_mod.critical_exponent(aux, args.Q)
    payload = {
        "tau": tau_est.to_json(),
        "dimension_from_tau": decimal(dim_mod.dimension_of_complement(tau_est.tau_hat)),
        "critical_exponent": ce.to_json(),
    }
    if tau_est.family_tau is not None:
        payload["dimension_exact"] = frac_str(
            Fraction(2) / (2 + tau_est.family_tau))
    config = {"Psi": args.aux, "psi": args.psi, "Q": args.Q, "seed": args.seed}
    return config, payload, EXIT_OK


def _cmd_covers(args):
    aux = None
    if args.aux or args.psi:
        aux = _aux_from_args(args)
    config = {"Psi": args.aux, "psi": args.psi, "f": args.f, "q": args.q,
              "qmax": args.qmax, "n": args.n, "digit_cap": args.digit_cap,
              "fiber": args.fiber, "jset": args.jset, "seed": args.seed}
    if args.fiber:
        p_s, q_s = args.fiber.split("/", 1)
        fib = covers_mod.fiber(int(p_s), int(q_s))
        return config, {"fiber": fib.to_json()}, EXIT_OK
    if args.jset:
        if aux is None:
            raise ParseError("--jset needs --Psi")
        js = covers_mod.j_set(parse_word(args.jset), aux)
        return config, {"jset": js.to_json()}, EXIT_OK
    f = parse_dimension(args.f) if args.f else PowerLaw(Fraction(1))
    if args.pair_sum:
        if aux is None:
            raise ParseError("--pair-sum needs --Psi")
        res = covers_mod.pair_sum(f, aux, args.qmax)
        return config, {"pair_sum": res.to_json(), "_pair_rows": res.per_q}, EXIT_OK
    if args.blocks or args.block_sweep:
        if aux is None:
            raise ParseError("block checks need --Psi")
        cert = certify_sublinear(f)
        if not cert.essentially_sublinear:
            raise covers_mod.NotApplicableError(
                "dimension function has no sub-linearity certificate")
        if args.block_sweep:
            sweep = covers_mod.block_bound_sweep(f, cert, aux, args.qmax)
            ok = sweep.ok
            payload = {"certificate": cert.to_json(), "block_sweep": sweep.to_json()}
        else:
            q = args.q if args.q else args.qmax
            chk = covers_mod.block_bound_check(f, cert, aux, q)
            ok = chk.ok
            payload = {"certificate": cert.to_json(), "blocks": chk.to_json()}
        return config, payload, EXIT_OK if ok else EXIT_VIOLATION
    if args.cover_sum:
        if aux is None:
            raise ParseError("--cover-sum needs --Psi")
        res = covers_mod.cover_sum_direct(f, aux, args.n, args.digit_cap)
        code = EXIT_OK if res.two_to_one_ok else EXIT_VIOLATION
        return config, {"cover_sum": res.to_json()}, code
    raise ParseError("covers needs one of --fiber/--jset/--pair-sum/--blocks/"
                     "--block-sweep/--cover-sum")


def _emit(args, report_dict, payload) -> None:
    if args.format == "csv":
        if "_verdict_obj" in payload:
            text = series_csv(payload["_verdict_obj"])
        elif "_pair_rows" in payload:
            text = pair_ratio_csv(payload["_pair_rows"])
        else:
            raise ParseError("csv format is available for series and pair sums")
        data = text.encode()
    else:
        data = canonical_json_bytes(report_dict)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "expand":
            config, payload, code = _cmd_expand(args)
        elif args.command == "audit":
            config, payload, code = _cmd_audit(args)
        elif args.command == "series":
            config, payload, code = _cmd_series(args)
        elif args.command == "dim":
            config, payload, code = _cmd_dim(args)
        else:
            config, payload, code = _cmd_covers(args)
    except (ParseError, DomainViolationError, UndecidedComparisonError,
            covers_mod.InvalidPairError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except covers_mod.NotApplicableError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except covers_mod.BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET

    # keep helper objects out of the serialized payload
    clean = {k: v for k, v in payload.items() if not k.startswith("_")}
    report = build_report(args.command, config, clean)
    try:
        _emit(args, report, payload)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    elapsed = time.monotonic() - started
    print(f"[dirichlet-lab] {args.command} finished in {elapsed:.3f}s",
          file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
