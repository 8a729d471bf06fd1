"""Command line front end.

Subcommands: heights, bound, probe, phi-at, check-isogeny.  Output goes
to stdout as an aligned table, JSON, or CSV; every report echoes the
assumption knobs that shaped it.  Exit codes: 0 success, 2 input or
parse error, 3 violated mathematical precondition, 4 broken internal
invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from .bounds import BoundParams, irreducibility_threshold
from .errors import InternalInvariantError, MathPreconditionError, ParseError
from .fields import function_field
from .heights import height_report, heights_from_table
from .modules import Isogeny, is_morphism, reduce_at_place
from .parsing import (
    load_height_table,
    load_module_file,
    parse_poly,
    parse_twisted,
)
from .polys import iter_monic_irreducibles
from .probe import DEFAULT_FIELD_CAP, certify_irreducible


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="drinfeld",
        description="Exact Drinfeld-module arithmetic, heights, explicit "
        "irreducibility thresholds, and an empirical Frobenius probe.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_module=True):
        p.add_argument("--module", required=need_module, help="module description file")
        p.add_argument(
            "--format", choices=("table", "json", "csv"), default="table"
        )
        p.add_argument("--seed", type=int, default=0, help="seed for randomized utilities")
        p.add_argument(
            "--reproducible",
            action="store_true",
            help="suppress timestamps for byte-identical reruns",
        )

    p = sub.add_parser("heights", help="naive and graded heights, slack, per-place data")
    common(p)
    p.add_argument("--height-table", help="CSV valuation table for d > 1")
    p.add_argument("--d", type=int, default=None, help="extension degree [K:F]")

    p = sub.add_parser("bound", help="N, Omega, Lambert threshold, case verdicts")
    common(p, need_module=False)
    p.add_argument("--height-table", help="CSV valuation table for d > 1")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--log-c2", type=float, default=0.0, help="assumed log_q c_2")
    p.add_argument("--exp-base", choices=("d", "r"), default="d")
    p.add_argument("--ell", help="evaluate the case verdicts at this prime")
    p.add_argument(
        "--ell-deg-max", type=int, help="case verdicts for deg l = 1..N"
    )
    p.add_argument("--q", type=int, help="q, when no module file is given")
    p.add_argument("--r", type=int, help="rank, when no module file is given")
    p.add_argument("--h", help="naive height (rational, e.g. 5 or 5/2)")
    p.add_argument("--h-g", dest="h_g", help="graded height (rational)")

    p = sub.add_parser("probe", help="Frobenius factor patterns and the verdict")
    common(p)
    p.add_argument("--ell", required=True, help="the prime l (polynomial in T)")
    p.add_argument("--places", help="comma-separated list of places")
    p.add_argument("--place-deg-max", type=int, help="scan places of degree <= N")
    p.add_argument(
        "--field-cap",
        type=int,
        default=DEFAULT_FIELD_CAP,
        help="largest splitting-field size the probe may build",
    )

    p = sub.add_parser("phi-at", help="the twisted polynomial phi_a")
    common(p)
    p.add_argument("a", help="element of F_q[T]")

    p = sub.add_parser("check-isogeny", help="is u a morphism/isogeny phi -> psi?")
    common(p)
    p.add_argument("u", help="twisted polynomial (t for the twist)")
    p.add_argument("--target", help="target module file (defaults to --module)")

    return ap


# -- emission -------------------------------------------------------------------


def _stamp(args) -> dict:
    if args.reproducible:
        return {}
    return {"generated_at": datetime.now(timezone.utc).isoformat()}


def _emit_json(payload: dict):
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_table(rows: list[tuple[str, str]], title: str | None = None):
    if title:
        sys.stdout.write(title + "\n")
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        sys.stdout.write(f"  {k.ljust(width)}  {v}\n")


def _emit_csv(header: list[str], rows: list[list]):
    import csv as _csv

    w = _csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)


def _parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------------


def _load_heights(args):
    """HeightReport plus (q, d, rank) from module file and/or table."""
    mf = load_module_file(args.module) if args.module else None
    d = args.d if args.d is not None else (mf.d if mf else 1)
    if args.height_table:
        if mf is None:
            raise ParseError("--height-table needs --module for q and the rank")
        if d <= 1:
            raise ParseError("--height-table is for d > 1; give --d or [extension] d")
        rows = load_height_table(args.height_table, mf.rank)
        return heights_from_table(mf.fq.q, d, mf.rank, rows), mf
    if d > 1:
        raise MathPreconditionError(
            "d > 1 requires --height-table (places of K are not constructed)"
        )
    if mf is None or mf.module is None:
        raise ParseError("heights need a module file with coefficients")
    return height_report(mf.module), mf


def cmd_heights(args) -> int:
    report, _mf = _load_heights(args)
    data = report.to_dict()
    data.update(_stamp(args))
    if args.format == "json":
        _emit_json(data)
    elif args.format == "csv":
        header = ["place", "deg", "n_nu"] + [
            f"v(g{i})" for i in range(1, report.rank + 1)
        ] + ["graded_term"]
        rows = [
            [pd.label, pd.degree, pd.n_nu, *pd.valuations, str(pd.graded_term)]
            for pd in report.places
        ]
        rows.append(["naive_height", "", "", *[""] * report.rank, str(report.naive)])
        rows.append(["graded_height", "", "", *[""] * report.rank, str(report.graded)])
        rows.append(["slack", "", "", *[""] * report.rank, str(report.slack)])
        _emit_csv(header, rows)
    else:
        rows = [
            ("h(phi)", str(report.naive)),
            ("h_G(phi)", str(report.graded)),
            ("h_G unclamped", str(report.graded_unclamped)),
            ("slack (q^r-1)h_G - h", str(report.slack)),
            ("log+ clamp", "on"),
            ("table supplied", str(report.trusted_table).lower()),
        ]
        for pd in report.places:
            vals = ", ".join(str(v) for v in pd.valuations)
            rows.append(
                (f"place {pd.label}", f"deg {pd.degree}, n_nu {pd.n_nu}, v = [{vals}]")
            )
        if not args.reproducible:
            rows.append(("generated_at", _stamp(args)["generated_at"]))
        _emit_table(rows, "heights")
    return 0


def cmd_bound(args) -> int:
    if args.module or args.height_table:
        report, mf = _load_heights(args)
        q, r = mf.fq.q, mf.rank
        d = report.d
        h, h_g = report.naive, report.graded
    else:
        needed = [args.q, args.r, args.h, args.h_g]
        if any(v is None for v in needed):
            raise ParseError(
                "without --module, all of --q --r --h --h-g are required"
            )
        q, r = args.q, args.r
        d = args.d if args.d is not None else 1
        h, h_g = _parse_fraction(args.h), _parse_fraction(args.h_g)
    params = BoundParams(
        q=q, d=d, r=r, h=h, h_g=h_g, log_c2=args.log_c2, exp_base=args.exp_base
    )
    deg_ells = []
    if args.ell:
        mf_q = fq_from_q(q)
        deg_ells.append(parse_poly(args.ell, mf_q).degree)
    if args.ell_deg_max:
        deg_ells.extend(range(1, args.ell_deg_max + 1))
    report = irreducibility_threshold(params, deg_ells or None)
    data = report.to_dict()
    data.update(_stamp(args))
    if args.format == "json":
        _emit_json(data)
    elif args.format == "csv":
        header = ["key", "value"]
        rows = [
            ["n_d", report.n_d],
            ["omega", repr(report.omega)],
            ["c_threshold", repr(report.c_threshold)],
            ["threshold", repr(report.threshold)],
            ["log_c2", repr(params.log_c2)],
            ["exp_base", params.exp_base],
            ["ineq2_reading", "log(d*h)"],
        ]
        for deg, c1, c2 in report.case_results:
            rows.append(
                [f"deg_ell_{deg}", f"case1={c1.holds} case2={c2.holds}"]
            )
        _emit_csv(header, rows)
    else:
        rows = [
            ("N", str(report.n_d)),
            ("Omega", repr(report.omega)),
            ("C (Lambert)", repr(report.c_threshold)),
            ("threshold max(C, Omega)", repr(report.threshold)),
            ("ineq1 rhs", repr(report.ineq1_rhs)),
            ("ineq2 rhs", repr(report.ineq2_rhs)),
            ("ineq2 rhs (alt reading)", repr(report.ineq2_rhs_alt)),
            ("assumed log_c2", repr(params.log_c2)),
            ("exp base", params.exp_base),
            ("ineq2 reading", "log(d*h)"),
            ("log clamp at 1", "on"),
        ]
        for deg, c1, c2 in report.case_results:
            verdict = "excluded" if not (c1.holds or c2.holds) else "not excluded"
            rows.append(
                (
                    f"deg l = {deg}",
                    f"case1 {'holds' if c1.holds else 'fails'}, "
                    f"case2 {'holds' if c2.holds else 'fails'} -> {verdict}",
                )
            )
        if not args.reproducible:
            rows.append(("generated_at", _stamp(args)["generated_at"]))
        _emit_table(rows, "irreducibility bound")
    return 0


def fq_from_q(q: int):
    from .fq import fq_make, is_prime

    p, e = q, 1
    if not is_prime(q):
        for cand in range(2, q):
            if is_prime(cand):
                e_try, qq = 0, 1
                while qq < q:
                    qq *= cand
                    e_try += 1
                if qq == q:
                    p, e = cand, e_try
                    break
        else:
            raise ParseError(f"{q} is not a prime power")
    return fq_make(p, e)


def cmd_probe(args) -> int:
    mf = load_module_file(args.module)
    if mf.module is None:
        raise ParseError("the probe needs explicit coefficients g1..gr")
    phi = mf.module
    fq = mf.fq
    ell = parse_poly(args.ell, fq)
    if args.places:
        place_list = [parse_poly(s.strip(), fq) for s in args.places.split(",")]
    elif args.place_deg_max:
        place_list = list(iter_monic_irreducibles(fq, args.place_deg_max))
    else:
        raise ParseError("give --places or --place-deg-max")
    usable = []
    for pl in place_list:
        if pl == ell:
            sys.stderr.write(f"warning: skipping place {pl!r} (equals l)\n")
            continue
        try:
            reduce_at_place(phi, pl)
        except MathPreconditionError as exc:
            sys.stderr.write(f"warning: skipping place {pl!r}: {exc}\n")
            continue
        usable.append(pl)
    if not usable:
        raise MathPreconditionError("no usable places (all bad or equal to l)")
    verdict = certify_irreducible(phi, ell, usable, field_cap=args.field_cap)
    surviving = sorted(verdict.surviving)
    if args.format == "json":
        payload = {
            "ell": repr(ell),
            "field_cap": args.field_cap,
            "places": [
                {
                    "place": repr(w.place),
                    "deg_p": w.deg_p,
                    "char_poly": repr(w.char_poly),
                    "factor_degrees": list(w.factor_degrees),
                    "dim_set": sorted(w.dims),
                }
                for w in verdict.witnesses
            ],
            "verdict": verdict.status,
            "surviving_dims": surviving,
        }
        payload.update(_stamp(args))
        _emit_json(payload)
    elif args.format == "csv":
        header = ["place", "deg_p", "char_poly", "factor_degrees", "dim_set"]
        rows = [
            [
                repr(w.place),
                w.deg_p,
                repr(w.char_poly),
                ";".join(str(d) for d in w.factor_degrees),
                ";".join(str(d) for d in sorted(w.dims)) or "-",
            ]
            for w in verdict.witnesses
        ]
        rows.append(
            [
                "verdict",
                "",
                "",
                verdict.status,
                ";".join(str(d) for d in surviving) or "-",
            ]
        )
        _emit_csv(header, rows)
    else:
        rows = [("l", repr(ell)), ("field cap", str(args.field_cap))]
        for w in verdict.witnesses:
            dims = ", ".join(str(d) for d in sorted(w.dims)) or "none"
            rows.append(
                (
                    f"place {w.place!r}",
                    f"char poly {w.char_poly!r}; degrees "
                    f"{list(w.factor_degrees)}; dims {{{dims}}}",
                )
            )
        rows.append(("verdict", verdict.status))
        rows.append(
            ("surviving dims", ", ".join(str(d) for d in surviving) or "none")
        )
        if not args.reproducible:
            rows.append(("generated_at", _stamp(args)["generated_at"]))
        _emit_table(rows, "probe")
    return 0


def cmd_phi_at(args) -> int:
    mf = load_module_file(args.module)
    if mf.module is None:
        raise ParseError("phi-at needs explicit coefficients g1..gr")
    a = parse_poly(args.a, mf.fq)
    image = mf.module.phi(a)
    text = repr(image)
    if args.format == "json":
        payload = {
            "a": repr(a),
            "phi_a": text,
            "tau_degree": image.tau_degree,
        }
        payload.update(_stamp(args))
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv(["a", "phi_a", "tau_degree"], [[repr(a), text, image.tau_degree]])
    else:
        rows = [("a", repr(a)), ("phi_a", text), ("tau degree", str(image.tau_degree))]
        _emit_table(rows, "phi-at")
    return 0


def cmd_check_isogeny(args) -> int:
    mf = load_module_file(args.module)
    if mf.module is None:
        raise ParseError("check-isogeny needs explicit coefficients")
    source = mf.module
    target = source
    if args.target:
        tf = load_module_file(args.target)
        if tf.module is None:
            raise ParseError("target module file lacks coefficients")
        target = tf.module
    u = parse_twisted(args.u, function_field(mf.fq))
    ok = is_morphism(u, source, target)
    entry = {
        "u": repr(u),
        "is_morphism": ok,
        "is_isogeny": ok and not u.is_zero,
    }
    if ok and not u.is_zero:
        f = Isogeny(source, target, u)
        entry["degree"] = f.degree
        entry["separable"] = bool(u.d_part)
    if args.format == "json":
        entry.update(_stamp(args))
        _emit_json(entry)
    elif args.format == "csv":
        keys = list(entry)
        _emit_csv(keys, [[entry[k] for k in keys]])
    else:
        _emit_table([(k, str(v)) for k, v in entry.items()], "check-isogeny")
    return 0


COMMANDS = {
    "heights": cmd_heights,
    "bound": cmd_bound,
    "probe": cmd_probe,
    "phi-at": cmd_phi_at,
    "check-isogeny": cmd_check_isogeny,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except MathPreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return 3
    except InternalInvariantError as exc:
        sys.stderr.write(f"internal invariant breached: {exc}\n")
        return 4
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
