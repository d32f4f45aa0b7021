"""Command-line surface.

Subcommands: validate, orders, isomorphic, fingerprint, certify-pair,
search, construct, crosscheck.  Payloads are JSON (indented by default,
canonical one-line bytes with --json); diagnostics go to stderr; exit code 0
iff status is ok.  SPACEFORM_PRIME_SEED shifts the deterministic prime scan
and thereby breaks byte-reproducibility between differently-seeded runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .errors import CertificationFailed, SpaceformError
from .groups import (
    is_fixed_point_free,
    is_isomorphic,
    order_set_bruteforce,
    order_set_formula,
    validate_type1,
)
from .search import (
    SearchConfig,
    certify_pair,
    construct_theorem42_pairs,
    crosscheck_table,
    run_search,
    write_results,
)
from .spectra import SumRep, fingerprint, molien_coefficients


@dataclass
class CommandResult:
    status: str
    payload: object
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _reduce_r(m: int, r: int, diags: list[str]) -> int:
    if not 0 <= r < m:
        diags.append(f"r={r} reduced to {r % m} mod m={m}")
    return r % m


def _cmd_validate(args, diags) -> CommandResult:
    g = validate_type1(args.m, args.n, _reduce_r(args.m, args.r, diags))
    payload = {
        "m": g.m, "n": g.n, "r": g.r, "d": g.d, "order": g.order,
        "fixed_point_free": is_fixed_point_free(g), "cyclic": g.is_cyclic,
    }
    return CommandResult("ok", payload, diags)


def _cmd_orders(args, diags) -> CommandResult:
    g = validate_type1(args.m, args.n, _reduce_r(args.m, args.r, diags))
    payload = {"m": g.m, "n": g.n, "r": g.r, "d": g.d, "orders": list(order_set_formula(g))}
    if args.brute:
        brute = list(order_set_bruteforce(g))
        payload["brute"] = brute
        payload["equal"] = brute == payload["orders"]
    return CommandResult("ok", payload, diags)


def _cmd_isomorphic(args, diags) -> CommandResult:
    g1 = validate_type1(args.m, args.n, _reduce_r(args.m, args.r1, diags))
    g2 = validate_type1(args.m, args.n, _reduce_r(args.m, args.r2, diags))
    payload = {
        "m": args.m, "n": args.n, "r1": g1.r, "r2": g2.r,
        "d1": g1.d, "d2": g2.d, "isomorphic": is_isomorphic(g1, g2),
    }
    return CommandResult("ok", payload, diags)


def _parse_reps(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for chunk in text.split(";"):
        k, l = chunk.split(",")
        pairs.append((int(k), int(l)))
    return tuple(pairs)


def _cmd_fingerprint(args, diags) -> CommandResult:
    g = validate_type1(args.m, args.n, _reduce_r(args.m, args.r, diags))
    pairs = _parse_reps(args.reps) if args.reps else ((1, 1),)
    rep = SumRep.from_pairs(g, pairs)
    fp = fingerprint(rep)
    payload = fp.to_dict()
    if args.kmolien:
        payload = {"fingerprint": payload,
                   "molien": list(molien_coefficients(rep, args.kmolien).coefficients)}
    return CommandResult("ok", payload, diags)


def _cmd_certify_pair(args, diags) -> CommandResult:
    g1 = validate_type1(args.m, args.n, _reduce_r(args.m, args.r1, diags))
    g2 = validate_type1(args.m, args.n, _reduce_r(args.m, args.r2, diags))
    try:
        cert = certify_pair(g1, g2)
    except CertificationFailed as exc:
        return CommandResult("error", {"refuted": True, "failed_check": exc.check, "detail": exc.detail},
                             diags + [str(exc)])
    if args.kmolien:
        m1 = molien_coefficients(SumRep.rho11(g1), args.kmolien).coefficients
        m2 = molien_coefficients(SumRep.rho11(g2), args.kmolien).coefficients
        if m1 != m2:
            return CommandResult("error", {"refuted": True, "failed_check": "molien"},
                                 diags + ["molien coefficients differ"])
        diags.append(f"molien coefficients agree through k={args.kmolien}")
    return CommandResult("ok", cert.to_dict(), diags)


def _cmd_search(args, diags) -> CommandResult:
    cfg = SearchConfig(n_max=args.nmax, jobs=args.jobs, output_path=args.out)
    certs = run_search(cfg)
    if args.out:
        diags.append(f"wrote {len(certs)} certificates and pairs.csv to {args.out}")
    payload = {
        "n_max": args.nmax,
        "pair_count": len(certs),
        "rows": [[c.N, c.m, c.n, c.d, c.r1, c.r2] for c in certs],
    }
    return CommandResult("ok", payload, diags)


def _cmd_construct(args, diags) -> CommandResult:
    certs = construct_theorem42_pairs(args.mmax)
    if args.out:
        write_results(args.out, certs)
        diags.append(f"wrote {len(certs)} certificates and pairs.csv to {args.out}")
    payload = {
        "m_max": args.mmax,
        "pair_count": len(certs),
        "rows": [[c.N, c.m, c.n, c.d, c.r1, c.r2] for c in certs],
    }
    return CommandResult("ok", payload, diags)


def _cmd_crosscheck(args, diags) -> CommandResult:
    certs = run_search(SearchConfig(n_max=args.nmax, jobs=args.jobs))
    return CommandResult("ok", crosscheck_table(certs), diags)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spaceform",
        description="Exact isospectrality engine for Type I spherical space forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(handler=handler)
        sp.add_argument("--json", action="store_true", help="compact canonical JSON output")
        return sp

    sp = add("validate", _cmd_validate, "validate (m, n, r) and report d, fixed-point-freeness")
    for arg in ("m", "n", "r"):
        sp.add_argument(arg, type=int)

    sp = add("orders", _cmd_orders, "set of element orders, optionally with brute-force check")
    for arg in ("m", "n", "r"):
        sp.add_argument(arg, type=int)
    sp.add_argument("--brute", action="store_true")

    sp = add("isomorphic", _cmd_isomorphic, "isomorphism test for two groups with equal (m, n)")
    for arg in ("m", "n", "r1", "r2"):
        sp.add_argument(arg, type=int)

    sp = add("fingerprint", _cmd_fingerprint, "deterministic F_G(z) evaluation record")
    for arg in ("m", "n", "r"):
        sp.add_argument(arg, type=int)
    sp.add_argument("--reps", type=str, default="", help='summands "k1,l1;k2,l2;..." (default 1,1)')
    sp.add_argument("--kmolien", type=int, default=0, help="also emit Molien coefficients up to K")

    sp = add("certify-pair", _cmd_certify_pair, "full certificate or refutation for a pair")
    for arg in ("m", "n", "r1", "r2"):
        sp.add_argument(arg, type=int)
    sp.add_argument("--kmolien", type=int, default=0, help="extra Molien agreement check up to K")

    sp = add("search", _cmd_search, "find all isospectral non-isomorphic pairs with N <= nmax")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--out", type=str, default=None, help="directory for pairs.csv + certificates")
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("construct", _cmd_construct, "Theorem-4.2 pairs (n = 2d, r1 r2 = -1) up to mmax")
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--out", type=str, default=None)

    sp = add("crosscheck", _cmd_crosscheck, "flag every found pair with Theorem-4.2 applicability")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    diags: list[str] = []
    try:
        result = args.handler(args, diags)
    except SpaceformError as exc:
        result = CommandResult("error", {"error": type(exc).__name__, "message": str(exc)},
                               diags + [str(exc)])
    if args.json:
        sys.stdout.write(json.dumps(result.to_dict(), sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(result.payload, sort_keys=True, indent=2) + "\n")
        for line in result.diagnostics:
            sys.stderr.write(f"# {line}\n")
    return 0 if result.status == "ok" else 1


if __name__ == "__main__":
    raise SystemExit(main())
