"""Command line interface: ``etaleopen <command> [options]``.

Exit status is 0 when every reported row passes, 1 when some row fails
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import experiments as ex
from . import steinitz as st
from .algebra.fields import QQ, FiniteField, FqElement, make_ext_field, parse_field
from .algebra.numtheory import factorize, primes_between
from .algebra.padic import PadicField
from .errors import EtaleOpenError
from .etale import EtaleCover, power_pair, resolve_pair
from .images.finite import DEFAULT_BUDGET, enumerate_finite
from .images.padic import member_padic
from .images.real import member_real_point, real_intervals
from .poly.multipoly import PolyRing
from .weil import expand_polynomial, lift_to_extension, load_basis, restrict_pair, zariski_descend


class UsageError(Exception):
    pass


# -- argument helpers -----------------------------------------------------------


def int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def q_values(text: str) -> list[int]:
    """``13,17``, a prime range ``p:LO:HI`` or a prime-power range ``pp:LO:HI``."""
    if text.startswith(("p:", "pp:")):
        kind, lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
        if kind == "p":
            return primes_between(lo, hi)
        return [q for q in range(max(lo, 2), hi + 1) if len(factorize(q)) == 1]
    return int_list(text)


def parse_point(text: str) -> tuple:
    return tuple(Fraction(t) for t in text.split(","))


def cover_of(refs, field=None):
    pairs = [resolve_pair(r, field) for r in refs]
    return EtaleCover(pairs)


def pair_field(args):
    """Field used when reading inline pairs: only exact coefficient fields."""
    if args.field is None:
        return None
    K = parse_field(args.field)
    return K if isinstance(K, FiniteField) and K.m == 1 else None


def _reduce(pair, F):
    if pair.field is QQ:
        return pair.over(make_ext_field(F.p, 1))
    return pair


# -- commands -------------------------------------------------------------------


def cmd_validate(args):
    pair = resolve_pair(args.pair, pair_field(args))
    if args.field and pair.field is QQ:
        K = parse_field(args.field)
        if isinstance(K, FiniteField):
            pair = pair.over(make_ext_field(K.p, 1))
    res = pair.validate()
    return {"pair": pair.to_text(), **res.to_dict()}, None, True


def cmd_image(args):
    if not args.field:
        raise UsageError("image needs --field Fp:<p> or Fq:<p>^<m>")
    F = parse_field(args.field)
    if not isinstance(F, FiniteField):
        raise UsageError("image needs a finite field")
    pair = _reduce(resolve_pair(args.pair), F)
    pts = enumerate_finite(pair, F, args.budget)
    vals = [[F.fmt(c) for c in pt] for pt in pts]
    out = {"field": F.spec, "n": pts.n, "size": len(pts), "points": vals}
    return out, [{"point": " ".join(v)} for v in vals], True


def cmd_member(args):
    pair = resolve_pair(args.pair)
    alpha = parse_point(args.alpha)
    K = parse_field(args.field) if args.field and args.field != "R" else None
    if isinstance(K, PadicField):
        ans = member_padic(pair, alpha, K)
        return {"field": K.spec, "alpha": args.alpha, **ans.to_dict()}, None, True
    if args.field in (None, "R"):
        return {"field": "R", "alpha": args.alpha, "verdict": "Yes" if member_real_point(pair, alpha) else "No"}, None, True
    if isinstance(K, FiniteField):
        pt = tuple(K.from_fraction(a) for a in alpha)
        hit = pt in enumerate_finite(_reduce(pair, K), K, args.budget)
        return {"field": K.spec, "alpha": args.alpha, "verdict": "Yes" if hit else "No"}, None, True
    raise UsageError(f"membership over {args.field} is not supported")


def cmd_intervals(args):
    res = real_intervals(resolve_pair(args.pair))
    return res.to_dict(), [{"interval": str(iv)} for iv in res.intervals], True


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _poly_over_extension(text, B):
    names = sorted(set(_IDENT.findall(text)), key=lambda v: (v[0] == "e", v))
    gens = [f"e{k}" for k in range(1, B.m + 1)]
    R = PolyRing(B.base, tuple(names))
    return lift_to_extension(R.parse(text), B, gens)


def cmd_weil(args):
    B = load_basis(args.basis)
    if args.pair:
        sys_ = restrict_pair(resolve_pair(args.pair, B.base if isinstance(B.base, FiniteField) else None), B)
        out = {
            "basis": B.spec,
            "equations": [str(e) for e in sys_.equations],
            "inequation_components": [str(h) for h in sys_.inequation_components],
        }
        return out, None, True
    if not args.poly:
        raise UsageError("weil needs --poly or --pair")
    f = _poly_over_extension(args.poly, B)
    comps = expand_polynomial(f, B)
    return {"basis": B.spec, "components": [str(c) for c in comps]}, [{"component": str(c)} for c in comps], True


def cmd_descend(args):
    B = load_basis(args.basis)
    f = _poly_over_extension(args.poly, B)
    gs = zariski_descend(f, B)
    return {"basis": B.spec, "equations": [str(g) for g in gs]}, [{"equation": str(g)} for g in gs], True


def cmd_steinitz(args):
    spec = args.field if args.field and args.field.startswith("Fs:") else args.spec
    if spec is None:
        raise UsageError("steinitz needs a Steinitz number or a field spec Fs:<p>^{<s>}")
    if not spec.startswith("Fs:"):
        s = st.parse_steinitz(spec)
        out = {"s": str(s), "natural": s.is_natural(), "val_2": str(s.val(2))}
        if args.contains is not None:
            out["divides"] = {str(args.contains): st.divides(args.contains, s)}
        if args.square is not None:
            raise UsageError("--square needs a field spec Fs:<p>^{<s>}")
        return out, None, True
    K = st.parse_steinitz_field(spec)
    out = {"field": K.spec, "s": str(K.s), "natural": K.s.is_natural(), "val_2": str(K.s.val(2))}
    try:
        out["k0"] = st.k0_of(K)
    except st.QuadraticallyClosed:
        out["k0"] = None
    if args.contains is not None:
        out["contains"] = {str(args.contains): st.contains_subfield(K, args.contains)}
    if args.square is not None:
        m = args.degree
        F = make_ext_field(K.p, m)
        a = FqElement(F, int(args.square) % F.q)
        out["square"] = {"element": F.fmt(a.value), "degree": m, "is_square": st.is_square_in(K, a)}
    return out, None, True


def cmd_paley(args):
    qs = q_values(args.q)
    betas = int_list(args.betas) if args.betas is not None else None
    rows = ex.paley_census(qs, args.k, betas, args.trials, args.seed)
    dicts = [r.to_dict() for r in rows]
    return {"seed": args.seed, "rows": dicts}, dicts, all(r.passed for r in rows)


def cmd_density(args):
    cover = cover_of(args.pair)
    rows = ex.density_sweep(cover, q_values(args.q), args.budget)
    dicts = [r.to_dict() for r in rows]
    return {"rows": dicts}, dicts, all(r.passed for r in rows)


def cmd_probe(args):
    U0 = cover_of(args.u0) if args.u0 else power_pair(2)
    U1 = cover_of(args.u1) if args.u1 else power_pair(2)
    rep = ex.square_difference_probe(args.p, int_list(args.tower), U0, U1, args.budget)
    levels = [lv.to_dict() for lv in rep.levels]
    # the probe succeeds when it exhibits non-containment
    return rep.to_dict(), levels, rep.first_failure is not None


def cmd_witness(args):
    w = ex.clopen_witness_padic(args.p, args.precision)
    return w.to_dict(), None, True


def cmd_hensel(args):
    ctx = None if args.field in (None, "R") else parse_field(args.field)
    if ctx is not None and not isinstance(ctx, PadicField):
        raise UsageError("hensel-demo runs over Qp:<p>@<N> or R")
    rep = ex.hensel_neighborhood_demo(args.n, ctx)
    return rep.to_dict(), None, rep.passed


def cmd_cofinal(args):
    cover = cover_of(args.pair)
    rep = ex.zariski_cofinality_trend(cover, args.p, int_list(args.m), args.budget)
    rows = [r.to_dict() for r in rep.rows]
    return rep.to_dict(), rows, True


def cmd_audit(args):
    ctx = parse_field(args.field or "Qp:5@12")
    if not isinstance(ctx, PadicField):
        raise UsageError("audit runs over Qp:<p>@<N>")
    cover = cover_of(args.pair)
    members = [parse_point(m) for m in args.members.split(";")] if args.members else None
    rep = ex.openness_audit(cover, ctx, members, args.M_bound, args.samples)
    rows = [r.to_dict() for r in rep.rows]
    return rep.to_dict(), rows, rep.passed


# -- output -----------------------------------------------------------------------


def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return "" if v is None else str(v)


def render(payload, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False, default=str)
    if rows is None:
        rows = [{k: v for k, v in payload.items()}]
    if not rows:
        return ""
    cols = list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) if not isinstance(r.get(c), dict) else json.dumps(r.get(c)) for c in cols])
        return buf.getvalue().rstrip("\n")
    cells = [[_cell(r.get(c)) if not isinstance(r.get(c), dict) else json.dumps(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in lines)


# -- parser -----------------------------------------------------------------------


def _globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", default=d(None), help="Q, Fp:<p>, Fq:<p>^<m>, Qp:<p>@<N>, R or Fs:<p>^{<s>}")
    p.add_argument("--out", choices=("json", "csv", "table"), default=d("json"))
    p.add_argument("--seed", default=d(ex.DEFAULT_SEED))
    p.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="etaleopen", description="Étale images over concrete fields.")
    _globals(ap, False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _globals(p, True)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "decide whether a pair is étale where g != 0")
    p.add_argument("--pair", required=True)
    p = add("image", cmd_image, "enumerate an image over a finite field")
    p.add_argument("--pair", required=True)
    p = add("member", cmd_member, "membership of a point over Q_p, R or F_q")
    p.add_argument("--pair", required=True)
    p.add_argument("--alpha", required=True, help="comma separated rational coordinates")
    p = add("intervals", cmd_intervals, "real image of a one-variable pair")
    p.add_argument("--pair", required=True)
    p = add("weil", cmd_weil, "expand a polynomial or restrict a pair along a basis")
    p.add_argument("--basis", required=True, help="Qi, F9overF3 or a basis file")
    p.add_argument("--poly", help="polynomial over L; e1..em name the basis elements")
    p.add_argument("--pair")
    p = add("descend", cmd_descend, "base-field equations for the base points of an L-hypersurface")
    p.add_argument("--basis", required=True)
    p.add_argument("--poly", required=True)
    p = add("steinitz", cmd_steinitz, "subfields and squares of F_{p^s}")
    p.add_argument("spec", nargs="?")
    p.add_argument("--contains", type=int)
    p.add_argument("--square", help="element of F_{p^degree}, as its integer encoding")
    p.add_argument("--degree", type=int, default=1)
    p = add("paley", cmd_paley, "count a with every a - b_i a nonzero square")
    p.add_argument("--q", required=True, help="13,17 or p:LO:HI or pp:LO:HI")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--betas")
    p.add_argument("--trials", type=int, default=1)
    p = add("density", cmd_density, "image sizes against q/(2k)")
    p.add_argument("--pair", action="append", required=True)
    p.add_argument("--q", required=True)
    p = add("probe", cmd_probe, "square-difference containment along a tower")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--tower", default="1,3,9")
    p.add_argument("--u0", action="append")
    p.add_argument("--u1", action="append")
    p = add("witness", cmd_witness, "a point outside P u (1 + P) over Q_p")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--precision", type=int, default=12)
    p = add("hensel-demo", cmd_hensel, "roots of perturbed y^(n+2) + y^(n+1)")
    p.add_argument("--n", type=int, default=2)
    p = add("cofinal", cmd_cofinal, "image complements over F_{p^m}")
    p.add_argument("--pair", action="append", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", default="1,2,3,4")
    p = add("audit", cmd_audit, "least passing p-adic ball around members")
    p.add_argument("--pair", action="append", required=True)
    p.add_argument("--members", help="points separated by ';', coordinates by ','")
    p.add_argument("--M-bound", dest="M_bound", type=int, default=10)
    p.add_argument("--samples", type=int, default=25)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        payload, rows, ok = args.fn(args)
    except (UsageError, EtaleOpenError, ValueError, OSError) as exc:
        print(f"etaleopen: error: {exc}", file=sys.stderr)
        return 2
    text = render(payload, rows, args.out)
    if text:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
