"""Command-line front end: ``chevalley <subcommand> [options]``.

Every invocation prints either text or, with ``--json``, exactly one
envelope ``{"command", "status", "payload"}`` (or ``"error": {"code",
"message"}`` in place of the payload). Exit status is 0 on success, 1 on a
library error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classical, counting, euclid, genword, jordan, quat, rootdatum, sl2z
from .errors import ChevalleyError, ParseError, UsageError
from .exactfield import QuadraticEtale, parse_field
from .matcore import Matrix, regular_rep, trace_form_gram


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_float(x) -> str:
    return format(float(x), ".12g")


def _float_rows(A):
    return [[_fmt_float(v) for v in row] for row in A]


def _field(args):
    return parse_field(getattr(args, "field", None) or "q")


def _matrix(args, F):
    if not args.matrix:
        raise UsageError("--matrix is required")
    return Matrix.parse(F, args.matrix)


def _parse_float_matrix(text):
    try:
        rows = json.loads(text)
        return [[float(v) for v in row] for row in rows]
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad float matrix {text!r}") from exc


# -- handlers: each returns (payload, text) --------------------------------------


def cmd_order(args):
    spec = counting.GroupSpec(args.family, args.n, args.q)
    n = counting.order_formula(spec)
    return {"order": n}, str(n)


def cmd_grassmann(args):
    n = counting.grassmann_count(args.n, args.r, args.q)
    return {"count": n}, str(n)


def cmd_sylow(args):
    n = counting.sylow_p_count(args.n, args.p)
    return {"count": n}, str(n)


def cmd_classes(args):
    table = counting.conj_classes(counting.GroupSpec(args.family, args.n, args.q))
    lines = [f"order {table.order}, {len(table.classes)} classes"]
    for rep, size in table.classes:
        lines.append(f"{size:>6}  {rep}")
    return table.to_json(), "\n".join(lines)


def cmd_centralizer(args):
    part = tuple(int(s) for s in args.partition.split(","))
    c, nm, w = counting.torus_centralizer_normalizer(part, args.q, args.mode)
    return ({"centralizer": c, "normalizer": nm, "weyl": w},
            f"centralizer {c}\nnormalizer {nm}\nweyl {w}")


def cmd_decompose(args):
    F = _field(args)
    M = _matrix(args, F)
    if args.gauss:
        g = genword.gauss_reduce(M)
        payload = {"left": str(g.left), "right": str(g.right), "diag": g.diag.to_json()}
        return payload, f"left  {g.left}\nright {g.right}\ndiag  {g.diag}"
    w = genword.elem_decompose(M)
    return {"word": str(w), "length": len(w)}, str(w)


def cmd_bruhat(args):
    F = _field(args)
    d = genword.bruhat(_matrix(args, F))
    payload = {"b1": d.b1.to_json(), "w": list(d.w), "b2": d.b2.to_json()}
    return payload, f"b1 {d.b1}\nw  {' '.join(map(str, d.w))}\nb2 {d.b2}"


def cmd_jordan(args):
    F = _field(args)
    M = _matrix(args, F)
    d = jordan.jordan_decompose(M)
    payload = {"S": d.S.to_json(), "N": d.N.to_json(),
               "U": d.U.to_json() if d.U is not None else None,
               "p": d.p_poly.format(), "q": d.q_poly.format()}
    text = [f"S {d.S}", f"N {d.N}"]
    if d.U is not None:
        text.append(f"U {d.U}")
    text += [f"p {d.p_poly.format()}", f"q {d.q_poly.format()}"]
    return payload, "\n".join(text)


def cmd_classical(args):
    F = _field(args)
    form = classical.FormSpec(args.family, args.l, F)
    if args.check:
        M = Matrix.parse(F, args.check)
        g, lie = classical.group_member(M, form), classical.lie_member(M, form)
        payload = {"group_member": g, "lie_member": lie}
        return payload, f"group member: {g}\nlie member: {lie}"
    basis = classical.lie_basis(form)
    payload = {"J": form.J.to_json(), "dimension": len(basis),
               "basis": [{"label": lab, "matrix": X.to_json()} for lab, X in basis]}
    if form.warning:
        payload["warning"] = form.warning
    text = [f"J = {form.J}", f"dim = {len(basis)}"] + [lab for lab, _ in basis]
    return payload, "\n".join(text)


def cmd_rootdatum(args):
    d = rootdatum.build(args.type, args.l)
    _, order = rootdatum.weyl_closure(d)
    cartan = rootdatum.cartan_matrix(d, rootdatum.standard_simple_roots(d))
    report = rootdatum.validate(d)
    payload = dict(d.to_json(), weyl_order=order, cartan=cartan, valid=report.ok)
    text = [f"rank {d.rank}", f"roots {[list(r) for r in d.roots]}",
            f"coroots {[list(c) for c in d.coroots]}", f"weyl order {order}",
            f"cartan {cartan}", f"valid {report.ok}"]
    return payload, "\n".join(text)


def cmd_quat(args):
    F = parse_field(args.base or getattr(args, "field", None) or "q")
    Q = quat.QuaternionAlgebra(F, F(args.a), F(args.b))
    if args.action == "split":
        r = quat.is_split(Q, args.bound)
        if isinstance(r, quat.Split):
            w = [str(v) for v in r.witness]
            return {"result": "split", "witness": w}, f"split, witness {' '.join(w)}"
        if isinstance(r, quat.Division):
            return {"result": "division"}, "division"
        return {"result": "unknown", "bound": r.bound}, f"unknown (searched to height {r.bound})"
    if args.action == "table":
        names = ["1", "i", "j", "ij"]
        basis = Q.basis()
        rows = [[str(x * y) for y in basis] for x in basis]
        text = "\n".join("  ".join(f"{c:>10}" for c in [n] + r) for n, r in zip(names, rows))
        return {"table": rows}, text
    x = Q(*[F(s) for s in (args.element or "0,0,1,0").split(",")])
    M = quat.embed_m2k(x)
    return {"element": str(x), "matrix": M.to_json()}, str(M)


def cmd_foursquare(args):
    n = args.n
    t = quat.four_square(n)
    text = f"{n} = " + "+".join(f"{v}²" for v in t)
    return {"n": n, "squares": list(t)}, text


def cmd_sl2z(args):
    if args.action == "decompose":
        if not args.matrix:
            raise UsageError("--matrix is required")
        rows = json.loads(args.matrix)
        w = sl2z.su_decompose(rows)
        return w.to_json() | {"word": str(w)}, str(w)
    if args.action == "relations":
        rep = sl2z.relations_check()
        return rep, "\n".join(f"{k}: {v}" for k, v in rep.items())
    if args.x is None or args.y is None:
        raise UsageError("reduce needs --x and --y")
    z = sl2z.RationalPoint(Fraction(args.x), Fraction(args.y))
    zz, steps = sl2z.reduce_to_fundamental_domain(z)
    word = " ".join(n if n == "S" else f"U^{k}" for n, k in steps)
    payload = {"x": str(zz.x), "y": str(zz.y), "steps": [[n, k] for n, k in steps]}
    return payload, f"{zz}\n{word or '(empty)'}"


def cmd_iwasawa(args):
    A = _parse_float_matrix(args.matrix)
    P, S = euclid.iwasawa(A)
    payload = {"P": _float_rows(P), "S": _float_rows(S)}
    text = "P = " + json.dumps(payload["P"]) + "\nS = " + json.dumps(payload["S"])
    return payload, text


def cmd_platonic(args):
    rows = euclid.platonic_enumerate()
    payload = [dict(zip(("n", "m", "v", "e", "f"), r)) for r in rows]
    text = "\n".join("n={} m={} v={} e={} f={}".format(*r) for r in rows)
    return {"solids": payload}, text


def cmd_tracefield(args):
    F = _field(args)
    if not isinstance(F, QuadraticEtale):
        raise UsageError("tracefield needs --field etale:<base>:<a>")
    payload = {"gram": trace_form_gram(F).to_json()}
    text = [f"gram {trace_form_gram(F)}"]
    if args.element:
        R = regular_rep(F(args.element))
        payload["regular_rep"] = R.to_json()
        payload["det"] = str(R.det())
        text.append(f"rep  {R}\ndet  {R.det()}")
    return payload, "\n".join(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--field", default=argparse.SUPPRESS)

    p = _Parser(prog="chevalley", description="Exact computations with classical groups.")
    p.add_argument("--json", action="store_true")
    p.add_argument("--field", default=None)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("order", cmd_order, "order of GL/SL/PGL/PSL(n, q)")
    sp.add_argument("family", choices=["gl", "sl", "pgl", "psl", "GL", "SL", "PGL", "PSL"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = add("grassmann", cmd_grassmann, "number of r-dimensional subspaces of F_q^n")
    for k in ("n", "r", "q"):
        sp.add_argument(f"--{k}", type=int, required=True)

    sp = add("sylow", cmd_sylow, "number of Sylow p-subgroups of GL_n(F_p)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = add("classes", cmd_classes, "conjugacy classes by enumeration")
    sp.add_argument("family", choices=["gl", "sl", "pgl", "psl", "GL", "SL", "PGL", "PSL"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = add("centralizer", cmd_centralizer, "centralizer and normalizer of a block torus")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mode", choices=["algebraic", "points"], default="algebraic")

    sp = add("decompose", cmd_decompose, "SL_n element as a word in x_ij(t)")
    sp.add_argument("--matrix")
    sp.add_argument("--gauss", action="store_true", help="reduce to diagonal with x, n, h tokens")

    sp = add("bruhat", cmd_bruhat, "M = b1 w b2")
    sp.add_argument("--matrix")

    sp = add("jordan", cmd_jordan, "Jordan-Chevalley decomposition")
    sp.add_argument("--matrix")

    sp = add("classical", cmd_classical, "Sp and SO forms, Lie algebra bases, membership")
    sp.add_argument("--family", required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--check")

    sp = add("rootdatum", cmd_rootdatum, "root datum, Weyl group order, Cartan matrix")
    sp.add_argument("--type", required=True)
    sp.add_argument("--l", type=int)

    sp = add("quat", cmd_quat, "quaternion algebra (a, b / base)")
    sp.add_argument("action", choices=["split", "table", "embed"])
    sp.add_argument("--base")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--element", help="x0,x1,x2,x3 for embed")

    sp = add("foursquare", cmd_foursquare, "n as a sum of four squares")
    sp.add_argument("n", type=int)

    sp = add("sl2z", cmd_sl2z, "SL_2(Z) words and the fundamental domain")
    sp.add_argument("action", choices=["decompose", "reduce", "relations"])
    sp.add_argument("--matrix")
    sp.add_argument("--x")
    sp.add_argument("--y")

    sp = add("iwasawa", cmd_iwasawa, "A = P S over the reals")
    sp.add_argument("--matrix", required=True)

    add("platonic", cmd_platonic, "Schlafli pairs and vertex/edge/face counts")

    sp = add("tracefield", cmd_tracefield, "trace form and regular representation of k[w]")
    sp.add_argument("--element")
    return p


def _emit(envelope, as_json, text, out):
    if as_json:
        out.write(json.dumps(envelope, sort_keys=True) + "\n")
    elif text is not None:
        out.write(text + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    command = next((a for a in argv if not a.startswith("-")), None)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        env = {"command": command, "status": "error",
               "error": {"code": exc.code, "message": str(exc)}}
        if as_json:
            _emit(env, True, None, out)
        else:
            err.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except UsageError as exc:
        env = {"command": args.command, "status": "error",
               "error": {"code": exc.code, "message": str(exc)}}
        if as_json:
            _emit(env, True, None, out)
        else:
            err.write(f"usage error: {exc}\n")
        return 2
    except ChevalleyError as exc:
        env = {"command": args.command, "status": "error",
               "error": {"code": exc.code, "message": str(exc)}}
        if as_json:
            _emit(env, True, None, out)
        else:
            err.write(f"error [{exc.code}]: {exc}\n")
        return 1
    _emit({"command": args.command, "status": "ok", "payload": payload}, as_json, text, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
