"""Command-line interface.

Every command prints one JSON document (``family thmc-scan`` prints JSON
lines) with ``"schema": 1``.  Integers and rationals are written as decimal
strings.  Exit status: 0 success, 1 an exact verification failed, 2 bad
usage or input (details as JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from ratmono import equiv, families, numeric
from ratmono.exact import Polynomial, ReducibleError, parse_polynomial, poly_discriminant
from ratmono.field import FieldElement, Mobius, NumberField, primitive_min_poly
from ratmono.lattice import BaseRing, FullModule
from ratmono.order import (
    Order,
    basis_with_one,
    is_primitive_order,
    omega_elements,
    order_discriminant,
    order_scalars,
)

SCHEMA = 1


class UsageError(ValueError):
    pass


def _num(x) -> str:
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def _poly(f: Polynomial) -> dict:
    return {"text": f.to_text("x"), "coeffs": [_num(c) for c in f.coeffs]}


def _elem(x: FieldElement) -> dict:
    return {"text": x.to_poly().to_text("θ") or "0", "coords": [_num(c) for c in x.coords]}


def _mobius(C: Mobius | None):
    if C is None:
        return None
    return {"matrix": [[_num(v) for v in row] for row in C.rows()], "det": _num(C.det)}


def _module(M: FullModule) -> dict:
    return {"field": [_num(c) for c in M.field.defining_poly.coeffs], "denom": _num(M.denom), "basis": [[_num(v) for v in r] for r in M.basis],
            "S": [_num(p) for p in sorted(M.base.S)]}


def _order(O: Order) -> dict:
    out = {"module": _module(O.module)}
    try:
        out["basis"] = [_elem(b) for b in basis_with_one(O)]
    except ValueError:
        pass
    return out


def _emit(payload: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps({"schema": SCHEMA, **payload}, ensure_ascii=False) + "\n")


def _field(text: str) -> NumberField:
    return NumberField(parse_polynomial(text))


def _base(text: str | None) -> BaseRing:
    if not text:
        return BaseRing()
    try:
        return BaseRing.of(int(p) for p in text.split(",") if p.strip())
    except ValueError as e:
        raise UsageError(f"bad --S value {text!r}: {e}") from None


def _default_prec() -> int:
    return int(os.environ.get("MONO_DEFAULT_PREC", numeric.DEFAULT_PRECISION))


def cmd_order(args) -> int:
    K = _field(args.poly)
    alpha = K.parse_element(args.elem)
    base = _base(args.S)
    O = order_scalars(alpha, base)
    disc = order_discriminant(O)
    f = primitive_min_poly(alpha)
    expected = base.strip(poly_discriminant(f))
    payload = {
        "command": "order",
        "field": _poly(K.defining_poly),
        "element": _elem(alpha),
        "min_poly": _poly(f),
        "base": str(base),
        "order": _order(O),
        "omega_basis": [_elem(w) for w in omega_elements(alpha)],
        "discriminant": _num(disc),
        "discriminant_matches_min_poly": disc == expected,
    }
    if base.S or K.degree < 3:
        payload["primitive"] = {"status": "not applicable"}
    else:
        res = is_primitive_order(O)
        if res is True:
            payload["primitive"] = {"status": "primitive"}
        else:
            _, p, wider = res
            payload["primitive"] = {"status": "not primitive", "prime": _num(p), "witness": _order(wider)}
    _emit(payload)
    return 0 if payload["discriminant_matches_min_poly"] else 1


def _report(r: equiv.EquivalenceReport, base: BaseRing) -> dict:
    name = r.relation
    if name == "gl2a":
        name = "gl2s" if base.S else "gl2z"
    out = {"relation": name, "verdict": r.verdict}
    if isinstance(r.witness, Mobius):
        out["witness"] = _mobius(r.witness)
    if r.relation == "gl2a":
        out["base"] = str(base)
    return out


def cmd_equiv(args) -> int:
    K = _field(args.poly)
    a, b = K.parse_element(args.a), K.parse_element(args.b)
    base = _base(args.S)
    reports = equiv.compare(a, b, base)
    Oa, Ob = order_scalars(a, base), order_scalars(b, base)
    payload = {
        "command": "equiv",
        "field": _poly(K.defining_poly),
        "a": _elem(a),
        "b": _elem(b),
        "orders_equal": Oa == Ob,
        "reports": [_report(r, base) for r in reports],
    }
    _emit(payload)
    return 0


def _read_gens(K: NumberField, path: str) -> list[FieldElement]:
    gens = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                gens.append(K.parse_element(line))
    return gens


def cmd_classify(args) -> int:
    K = _field(args.poly)
    base = _base(args.S)
    gens = _read_gens(K, args.gens)
    part = equiv.classify(gens, base)
    groups = []
    for g in part.groups:
        groups.append({
            "order": _order(g.order),
            "discriminant": _num(g.discriminant),
            "members": g.members,
            "classes": g.classes,
            "monogenizations": g.monogenizations,
            "witnesses": {str(i): _mobius(W) for i, W in sorted(g.witnesses.items())},
            "z_classes": g.z_classes,
        })
    _emit({"command": "classify", "field": _poly(K.defining_poly), "base": str(base),
           "generators": [_elem(x) for x in gens], "groups": groups})
    return 0


def _cnum(z, digits=30) -> list[str]:
    return [mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)]


def cmd_cross(args) -> int:
    K = _field(args.poly)
    a, b = K.parse_element(args.a), K.parse_element(args.b)
    prec = args.prec or _default_prec()
    E = numeric.embeddings(K, prec)
    T = numeric.epsilon_table(a, b, E)
    checks = numeric.check_identities(T, args.tol)
    cert = numeric.unit_certificate(T, args.cert_tol)
    equal_orders = order_scalars(a) == order_scalars(b)
    payload = {
        "command": "cross",
        "field": _poly(K.defining_poly),
        "a": _elem(a),
        "b": _elem(b),
        "precision": prec,
        "embeddings": [_cnum(r) for r in E.roots],
        "identities": [{"name": c.name, "status": c.status, "max_violation": c.max_violation,
                        "checked": c.checked} for c in checks],
        "orders_equal": equal_orders,
        "unit_certificate": {"passed": cert.passed, "max_distance": cert.max_distance,
                             "constant_term": _num(cert.constant_term)},
        "epsilon": [{"indices": list(k), "value": _cnum(v)} for k, v in T.values.items()],
    }
    if args.plot:
        from ratmono.plotting import plot_epsilon_table

        plot_epsilon_table(T, args.plot)
        payload["plot"] = args.plot
    _emit(payload)
    failed = any(c.status == "fail" for c in checks) or (equal_orders and not cert.passed)
    return 1 if failed else 0


def _thmc_json(r: families.QuarticPairReport) -> dict:
    out = {"r": r.r, "s": r.s, "poly": _poly(r.poly), "status": r.status}
    if r.factor is not None:
        out["factor"] = _poly(r.factor)
    if r.alpha is not None:
        out.update({
            "alpha": _elem(r.alpha),
            "beta": _elem(r.beta),
            "checks": r.checks,
            "discriminant": _num(r.discriminant),
            "monogenizations": r.monogenizations,
        })
    return out


def cmd_thmc(args) -> int:
    r = families.quartic_pair(args.r, args.s)
    _emit({"command": "family thmc", **_thmc_json(r)})
    return 1 if r.status == "failed" else 0


def cmd_thmc_scan(args) -> int:
    status = 0
    counts = {"verified": 0, "rejected": 0, "failed": 0}
    for r in families.quartic_pair_scan(args.range, args.jobs):
        counts[r.status] += 1
        _emit({"command": "family thmc-scan", **_thmc_json(r)})
        if r.status == "failed":
            status = 1
    _emit({"command": "family thmc-scan", "summary": counts, "range": args.range})
    return status


def cmd_scale(args) -> int:
    f = parse_polynomial(args.poly)
    rep = families.scaled_order(f, args.p, args.q, box=args.box, early_exit=not args.full)
    payload = {
        "command": "family scale",
        "poly": _poly(f),
        "p": _num(rep.p),
        "q": _num(rep.q),
        "xi": _elem(rep.xi),
        "scaled_poly": _poly(rep.scaled_poly),
        "order": _order(rep.order),
        "discriminant": _num(rep.discriminant),
        "expected_discriminant": _num(rep.expected_discriminant),
        "discriminant_ok": rep.discriminant_ok,
        "primitive_ok": rep.primitive_ok,
    }
    if rep.search is not None:
        s = rep.search
        payload["search"] = {
            "box": _num(s.box),
            "label": s.label,
            "complete": s.complete,
            "hits": [[_num(v) for v in h] for h in s.hits],
            "compatible": [[_num(v) for v in h] for h in s.compatible],
            "monogenic_witnesses": [
                {"hit": [_num(v) for v in w.hit], "matrix": _mobius(w.matrix), "beta": _elem(w.beta),
                 "min_poly": _poly(w.min_poly), "monogenic": w.monogenic}
                for w in rep.monogenic_witnesses
            ],
        }
    _emit(payload)
    return 0 if rep.discriminant_ok and rep.primitive_ok else 1


def cmd_unit(args) -> int:
    f = parse_polynomial(args.poly)
    rep = families.reciprocal_unit_pair(f)
    _emit({"command": "family unit", "poly": _poly(f), "equal_orders": rep.equal_orders,
           "z_equivalent": rep.z_equivalent, "gl2z_witness": _mobius(rep.witness),
           "verified": rep.verified})
    return 0 if rep.verified else 1


def cmd_hermite(args) -> int:
    K = _field(args.poly)
    a, b = K.parse_element(args.a), K.parse_element(args.b)
    lam = equiv.hermite_search(a, b, args.bound)
    payload = {"command": "hermite", "field": _poly(K.defining_poly), "a": _elem(a), "b": _elem(b),
               "bound": args.bound}
    if lam is None:
        payload.update({"verdict": "inconclusive", "result": "none-found"})
    else:
        payload.update({"verdict": "yes", "lambda": _elem(lam)})
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ratmono", description="Rationally monogenic orders and equivalence of algebraic numbers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="order Z_α, its discriminant and primitivity")
    p.add_argument("poly")
    p.add_argument("--elem", default="θ", help="element as polynomial in θ or JSON coordinates")
    p.add_argument("--S", help="comma-separated primes for Z_S")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("equiv", help="GL2(Q), GL2(Z or Z_S) and Z-equivalence")
    p.add_argument("poly")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--S")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("classify", help="group generators by order and equivalence class")
    p.add_argument("poly")
    p.add_argument("--gens", required=True, help="JSON-lines file, one element per line")
    p.add_argument("--S")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cross", help="ε-table identities and unit certificate")
    p.add_argument("poly")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--prec", type=int, help="bits (default MONO_DEFAULT_PREC or 256)")
    p.add_argument("--tol", type=float, default=numeric.IDENTITY_TOL)
    p.add_argument("--cert-tol", type=float, default=numeric.CERTIFICATE_TOL)
    p.add_argument("--plot", help="write a figure of the ε values to this file")
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("family", help="explicit constructions")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("thmc", help="quartic (X^2-r)^2-X-s with two monogenizations")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.set_defaults(func=cmd_thmc)
    q = fam.add_parser("thmc-scan", help="thmc over [-R, R]^2, JSON lines")
    q.add_argument("--range", type=int, required=True)
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_thmc_scan)
    q = fam.add_parser("scale", help="order of qθ/p with a bounded unit-form search")
    q.add_argument("poly")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--box", type=int, default=10**4)
    q.add_argument("--full", action="store_true", help="search the whole box, no early exit")
    q.set_defaults(func=cmd_scale)
    q = fam.add_parser("unit", help="reciprocal unit pair ε, 1/ε")
    q.add_argument("poly")
    q.set_defaults(func=cmd_unit)

    p = sub.add_parser("hermite", help="bounded search for λ with λM_a = M_b")
    p.add_argument("poly")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_hermite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ReducibleError as e:
        err = {"error": "reducible", "message": str(e), "factor": _poly(e.factor)}
    except (ValueError, ArithmeticError, OSError) as e:
        err = {"error": type(e).__name__, "message": str(e)}
    _emit(err, sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
