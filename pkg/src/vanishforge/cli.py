"""Command-line interface.

Exit codes: 0 success, 1 hypothesis or input violation, 2 numerical
ambiguity, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .characters import is_prime
from .context import AmbiguityError, HypothesisError, VerificationError, context_from_env
from .cotangent import berndt_yeap_closed_form, cot_power_sum
from .serialize import SCHEMA_BASIS, decode_complex, dumps, encode_complex, weak_from_json, weak_to_json

EXIT_HYPOTHESIS = 1
EXIT_AMBIGUITY = 2
EXIT_VERIFY = 3


def _threshold(text: str) -> float:
    m = re.fullmatch(r"\s*2\s*(?:\^|\*\*)\s*(-?\d+)\s*", text)
    if m:
        return 2.0 ** int(m.group(1))
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a threshold: {text!r} (use e.g. 2^-100 or 1e-30)")


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vanishforge", description=__doc__.splitlines()[0])
    ap.add_argument("--precision", type=int, default=None,
                    help="working precision in bits (default: $VANISHFORGE_PRECISION or 256)")
    ap.add_argument("--vanish-threshold", type=_threshold, default=None, help="relative zero threshold (2^-100)")
    ap.add_argument("--rank-threshold", type=_threshold, default=None, help="relative nonzero threshold (2^-64)")
    ap.add_argument("--output", "-o", default=None, help="write the JSON document to this file")
    ap.add_argument("--format", choices=("json", "table"), default="table", help="stdout format")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="order-graded basis alpha_0..alpha_{N-3}")
    p.add_argument("--level", "-N", type=int, required=True)
    p.add_argument("--raw", action="store_true", help="any level >= 3, without the character layer")

    p = sub.add_parser("order", help="vanishing order of a weak function at 0")
    p.add_argument("--input", "-i", required=True, help="weak-function or alpha-basis JSON file")
    p.add_argument("--index", type=int, default=None, help="function index inside an alpha-basis file")

    p = sub.add_parser("construct", help="Eisenstein series with vanishing critical L-values")
    p.add_argument("--p1", type=int, required=True)
    p.add_argument("--p2", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vanish-set", type=_int_list, default=None, help="S as a comma list: L(f; l+1) = 0 for l in S")
    p.add_argument("--l1", type=int, default=None)
    p.add_argument("--l2", type=int, default=None)

    p = sub.add_parser("verify", help="re-check the L-value claims of a certificate")
    p.add_argument("--certificate", "-c", required=True)
    p.add_argument("--recheck-points", type=_int_list, default=[], help="extra points s to report")

    p = sub.add_parser("cotsum", help="sum_r beta(r) cot^u(pi r/N)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--power", "-u", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--beta", help="weak-function JSON file supplying beta")
    g.add_argument("--ones", action="store_true", help="beta identically 1")

    p = sub.add_parser("dims", help="dimension formulas")
    p.add_argument("--p1", type=int, required=True)
    p.add_argument("--p2", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vanish-set", type=_int_list, default=None)
    p.add_argument("--l1", type=int, default=None)
    p.add_argument("--l2", type=int, default=None)
    return ap


def _emit(args, doc: dict, table: str, out=None):
    out = out or sys.stdout
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    if args.format == "json":
        out.write(dumps(doc))
    else:
        out.write(table.rstrip("\n") + "\n")


def _fmt(mp, z, n=6):
    z = mp.mpc(z)
    if z.imag == 0:
        return mp.nstr(z.real, n)
    return mp.nstr(z, n)


def cmd_basis(args, ctx) -> int:
    from .weak import alpha_basis, character_coordinates, order, parity, taylor_coeffs

    N = args.level
    if args.raw:
        if N < 3:
            raise HypothesisError("level must be >= 3")
    elif not (N >= 5 and is_prime(N)):
        raise HypothesisError(f"level {N} must be an odd prime >= 5 (use --raw for other levels)")
    mp = ctx.mp
    basis = alpha_basis(N, ctx)
    funcs, lines = [], [f"alpha basis of level {N} ({N - 2} functions, {ctx.precision_bits} bits)"]
    for j, a in enumerate(basis):
        tc = taylor_coeffs(a, N, ctx)
        ent = {"index": j, "level": N, "order": order(a, ctx).order, "parity": parity(a, ctx),
               "beta": weak_to_json(a, ctx)["beta"],
               "taylor": [encode_complex(c, ctx) for c in tc]}
        if not args.raw:
            coords = character_coordinates(a, ctx)
            ent["character_coordinates"] = [{"chi": chi.to_json(), "coeff": encode_complex(c, ctx)}
                                            for chi, c in coords.items()]
        funcs.append(ent)
        lines.append(f"alpha_{j}: beta = [" + ", ".join(_fmt(mp, b, 12) for b in a.beta) + "]")
        lines.append(f"  taylor z^0..z^{N - 1}: " + ", ".join(_fmt(mp, c, 4) for c in tc))
    doc = {"schema": SCHEMA_BASIS, "level": N, "precision_bits": ctx.precision_bits, "raw": bool(args.raw),
           "functions": funcs}
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_order(args, ctx) -> int:
    from .weak import order

    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("schema") == SCHEMA_BASIS:
        funcs = doc["functions"]
        if args.index is None or not 0 <= args.index < len(funcs):
            raise HypothesisError(f"--index must be in 0..{len(funcs) - 1} for a basis file")
        doc = funcs[args.index]
    w = weak_from_json(doc, ctx)
    res = order(w, ctx)
    inf = res.witness is None
    doc = {"order": "inf" if inf else res.order, "witness": res.witness,
           "value": None if inf else encode_complex(res.value, ctx)}
    text = str(res) + ("" if inf else f", value {_fmt(ctx.mp, res.value, 12)}")
    _emit(args, doc, text)
    return 0


def _cert_table(cert, ctx) -> str:
    mp = ctx.mp
    lines = [f"{cert.mode} construction {cert.inputs}  [{'exact kernel' if cert.exact else 'subset only'}]"]
    for w in cert.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"basis size {len(cert.basis)}; dimensions {cert.dimensions}")
    for b in cert.basis:
        lines.append(f"{b['label']}:")
        for t in b["combination"].terms:
            lines.append(f"    {_fmt(mp, t[2], 12):>40}  E_k({t[0]}, {t[1]})")
        lines.append(f"    {'s':>3} {'|L(f;s)|':>12} {'scale':>12}  vanished  label")
        for s, v, sc, van, triv in b["report"].rows():
            tag = "trivial" if triv else "non-trivial"
            mark = "*" if s in b["report"].promised else " "
            lines.append(f"   {mark}{s:>3} {mp.nstr(abs(v), 4):>12} {mp.nstr(sc, 4):>12}  {str(van):8}  {tag}")
    for c in cert.claims:
        lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['id']}: {c['detail']}")
    lines.append("all claims passed" if cert.passed else "VERIFICATION FAILED")
    return "\n".join(lines)


def cmd_construct(args, ctx) -> int:
    from .construct import vanishing_space_large_weight, vanishing_space_small_weight

    has_s = args.vanish_set is not None
    has_l = args.l1 is not None or args.l2 is not None
    if has_s == has_l:
        raise HypothesisError("give exactly one of --vanish-set or --l1/--l2")
    if has_l and (args.l1 is None or args.l2 is None):
        raise HypothesisError("--l1 and --l2 must be given together")
    try:
        if has_s:
            cert = vanishing_space_small_weight(args.p1, args.p2, args.k, args.vanish_set, ctx,
                                                raise_on_failure=False)
        else:
            cert = vanishing_space_large_weight(args.p1, args.p2, args.k, args.l1, args.l2, ctx,
                                                raise_on_failure=False)
    except VerificationError:
        raise
    _emit(args, cert.to_json(ctx), _cert_table(cert, ctx))
    if not cert.passed:
        sys.stderr.write("verification failed: " + ", ".join(c["id"] for c in cert.failed_claims()) + "\n")
        return EXIT_VERIFY
    return 0


def cmd_verify(args, ctx) -> int:
    from .construct import verify_certificate

    with open(args.certificate, encoding="utf-8") as fh:
        doc = json.load(fh)
    res = verify_certificate(doc, ctx, args.recheck_points)
    mp = ctx.mp
    lines = [f"{'element':<12} {'s':>3} {'|L(f;s)|':>12} {'scale':>12} promised vanished label"]
    for r in res["rows"]:
        status = "ok" if (not r["promised"] or r["vanished"]) else "FAIL"
        lines.append(f"{r['element']:<12} {r['s']:>3} {mp.nstr(abs(r['value']), 4):>12} {mp.nstr(r['scale'], 4):>12} "
                     f"{str(r['promised']):8} {str(r['vanished']):8} {'trivial' if r['trivial'] else 'non-trivial'} {status}")
    lines.append("PASS" if res["passed"] else "FAIL")
    doc_out = {"passed": res["passed"], "rows": [
        {"element": r["element"], "s": r["s"], "value": encode_complex(r["value"], ctx),
         "vanished": r["vanished"], "promised": r["promised"], "trivial": r["trivial"]} for r in res["rows"]]}
    _emit(args, doc_out, "\n".join(lines))
    if not res["passed"]:
        bad = [f"{r['element']} at s={r['s']}: |L| = {mp.nstr(abs(r['value']), 6)} vs scale {mp.nstr(r['scale'], 6)}"
               for r in res["rows"] if r["promised"] and not r["vanished"]]
        sys.stderr.write("failed claims:\n  " + "\n  ".join(bad) + "\n")
        return EXIT_VERIFY
    return 0


def cmd_cotsum(args, ctx) -> int:
    mp = ctx.mp
    N, u = args.N, args.power
    if args.ones:
        beta = [1] * (N - 1)
    else:
        with open(args.beta, encoding="utf-8") as fh:
            data = json.load(fh)
        beta = [decode_complex(b, ctx) for b in data["beta"]]
    val = cot_power_sum(beta, N, u, ctx)
    doc = {"N": N, "power": u, "value": encode_complex(val, ctx)}
    lines = [_fmt(mp, val, 30)]
    if args.ones and u % 2 == 0 and u > 0:
        cf = berndt_yeap_closed_form(u // 2, N)
        doc["closed_form"] = str(cf)
        lines.append(f"closed form: {cf}")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_dims(args, ctx) -> int:
    from .construct import dimension_report

    has_l = args.l1 is not None or args.l2 is not None
    rep = dimension_report(args.p1, args.p2, args.k, S=args.vanish_set,
                           l1=args.l1 if has_l else None, l2=args.l2 if has_l else None)
    key = "dim_V" if has_l else ("dim_E_S" if args.vanish_set is not None else "dim_E")
    lines = [str(rep[key])] + [f"{k}: {v}" for k, v in rep.items()]
    _emit(args, rep, "\n".join(lines))
    return 0


COMMANDS = {"basis": cmd_basis, "order": cmd_order, "construct": cmd_construct, "verify": cmd_verify,
            "cotsum": cmd_cotsum, "dims": cmd_dims}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = context_from_env(args.precision, args.vanish_threshold, args.rank_threshold)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_HYPOTHESIS
    try:
        return COMMANDS[args.command](args, ctx)
    except AmbiguityError as exc:
        where = f" (cot-sum index u={exc.index})" if exc.index is not None else ""
        sys.stderr.write(f"ambiguity{where}: {exc}\n")
        return EXIT_AMBIGUITY
    except VerificationError as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    except (HypothesisError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
