"""``tarski`` command-line front end.

Exit codes: 0 when the result was computed and verified, 2 for a typed
failure (any :class:`~tarski.errors.TarskiError`), 1 for usage errors.
"""
import argparse
import json
import random
import sys

from . import axioms, core, reconstruction
from .boolean import BooleanElement
from .cuntz import CuntzModel, canonical_points
from .errors import InfiniteGroup, TarskiError
from .literals import evaluate, format_value, parse_literal, parse_model, value_json
from .symmetric import PartialPerm, SymmetricModel, germ_groupoid, structure_space

POINT_LENGTH = 4  # preperiod + period length for listing points of Cantor space


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Output:
    def __init__(self, m, as_json):
        self.m = m
        self.as_json = as_json
        self.lines = []
        self.data = {"model": m.name}

    def add(self, key, value, text=None):
        self.data[key] = value
        self.lines.append(f"{key}: {value if text is None else text}")

    def element(self, key, value):
        self.data[key] = value_json(self.m, value)
        self.lines.append(f"{key}: {format_value(self.m, value)}")

    def elements(self, key, values):
        self.data[key] = [value_json(self.m, v) for v in values]
        self.lines.append(f"{key}:")
        self.lines.extend(f"  {format_value(self.m, v)}" for v in values)

    def emit(self):
        if self.as_json:
            print(json.dumps(self.data, sort_keys=True))
        else:
            print("\n".join(self.lines))


def _bool_arg(m, text):
    value = parse_literal(m, text)
    return value if isinstance(value, BooleanElement) else m.extract(value)


def _element_arg(m, text):
    value = evaluate(m, text)
    return m.embed(value) if isinstance(value, BooleanElement) else value


# -- subcommands -------------------------------------------------------------

def cmd_eval(args, m, out):
    out.element("value", evaluate(m, args.expr))
    return True


def cmd_axioms(args, m, out):
    if args.axiom in ("f1", "f2", "f3") and args.e is None:
        raise UsageError("--e is required")
    e = _bool_arg(m, args.e)
    if args.axiom == "f1":
        ts = axioms.f1_witness(m, e)
        out.elements("involutions", ts)
        supports = [core.sigma_raw(m, t) for t in ts]
        joined = supports[0]
        for s in supports[1:]:
            joined = joined.union(s)
        ok = joined == e and all(axioms.is_involution(m, t) for t in ts)
    elif args.axiom == "f2":
        if args.t is None:
            raise UsageError("f2 needs --t")
        t = _element_arg(m, args.t)
        g, f = axioms.f2_witness(m, t, e, args.depth_cap or axioms.DEPTH_CAP)
        out.element("g", g)
        out.element("piece", f)
        supp = core.sigma_raw(m, g)
        ok = supp.leq(core.extent_raw(m, m.mul(t, m.embed(e)))) and supp.leq(
            m.phi_raw(m.mul(t, g))
        )
    else:
        w = axioms.f3_witness(m, e)
        for key in ("g", "h", "k", "b", "a"):
            out.element(key, getattr(w, key))
        ok = (
            core.sigma_raw(m, w.g).leq(e)
            and m.eq(core.power(m, w.g, 3), m.one)
            and m.eq(w.g, core.commutator(m, w.h, w.k))
        )
    out.add("verified", ok, "true" if ok else "false")
    return ok


def cmd_factorize(args, m, out):
    s = _element_arg(m, args.element)
    fac = axioms.piecewise_factorize(m, s, args.strategy)
    out.data["pieces"] = [
        {"unit": value_json(m, g), "idempotent": value_json(m, m.extract(e))}
        for g, e in fac.pieces
    ]
    out.lines.append("pieces:")
    out.lines.extend(f"  {m.format(g)} . {m.extract(e)}" for g, e in fac.pieces)
    ok = m.eq(fac.join(m), s) and all(core.is_unit(m, g) for g, _ in fac.pieces)
    out.add("verified", ok, "true" if ok else "false")
    return ok


def cmd_duality(args, m, out):
    if args.what == "points":
        if isinstance(m, CuntzModel):
            pts = canonical_points(m.arity, args.depth_cap or POINT_LENGTH)
        elif isinstance(m, SymmetricModel):
            pts = structure_space(m)
        else:
            raise InfiniteGroup(f"no point enumeration for {m.name}")
        out.add("count", len(pts))
        out.data["points"] = [str(p) for p in pts]
        out.lines.extend(f"  {p}" for p in pts)
        return True
    if not isinstance(m, SymmetricModel):
        raise InfiniteGroup("the germ groupoid is enumerated only for finite models")
    arrows, table = germ_groupoid(m)
    out.add("arrows", len(arrows))
    out.add("composable", len(table))
    out.data["arrow_list"] = [str(a) for a in arrows]
    out.lines.extend(f"  {a}" for a in arrows)
    ok = len(arrows) == m.n * m.n
    out.add("verified", ok, "true" if ok else "false")
    return ok


def _alpha(m, spec):
    if spec == "identity":
        return reconstruction.GroupIso.identity(m)
    if spec.startswith("conj:"):
        images = [int(x) for x in spec[5:].replace(",", " ").split()]
        return reconstruction.GroupIso.inner(m, PartialPerm(m.n, images))
    return reconstruction.load_group_iso(spec, m)


def cmd_reconstruct(args, m, out):
    if not isinstance(m, SymmetricModel):
        raise InfiniteGroup("end-to-end reconstruction needs a finite symmetric model")
    alpha = _alpha(m, args.alpha)
    alpha.validate()
    out.add("alpha", alpha.name)
    rec = reconstruction.reconstruct(m, alpha, args.strategy)
    beta = {i: F.atom for i, F in rec.betas.items()}
    out.add("beta", beta, ", ".join(f"{i}->{j}" for i, j in beta.items()))
    out.add("elements", len(rec.theta))
    out.add("verified", True, "true")
    return True


def cmd_wt(args, m, out):
    t = _element_arg(m, args.t)
    if m.is_finite:
        rep = reconstruction.wt_report(m, t)
        for key in ("zt_size", "st_size", "wt_size", "local_size"):
            out.add(key, getattr(rep, key))
        out.add("wt_equals_local", rep.agrees, str(rep.agrees).lower())
        return True
    rng = random.Random(args.seed)
    sample = reconstruction.st_samples(m, t, rng, args.samples)
    out.add("st_samples", len(sample))
    ok = True
    if args.g is not None:
        g = _element_arg(m, args.g)
        inside = reconstruction.wt_membership_theorem(m, g, t)
        out.add("member", inside, str(inside).lower())
        if inside:
            ok = all(core.commutes(m, g, b) for b in sample)
        else:
            b = reconstruction.separating_witness(m, g, t)
            out.element("separator", b)
            ok = not core.commutes(m, g, b)
    out.add("verified", ok, str(ok).lower())
    return ok


COMMANDS = {
    "eval": cmd_eval,
    "axioms": cmd_axioms,
    "factorize": cmd_factorize,
    "duality": cmd_duality,
    "reconstruct": cmd_reconstruct,
    "wt": cmd_wt,
}


def _common(top):
    # subcommands repeat the global flags without clobbering values given earlier
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default=default("cuntz2"), help="cuntzN, symN or prod:symA,symB")
    common.add_argument("--json", action="store_true", default=default(False), help="JSON output")
    common.add_argument("--seed", type=int, default=default(0), help="seed for sampled checks")
    common.add_argument("--depth-cap", type=int, default=default(None),
                        help=f"search depth (default {axioms.DEPTH_CAP}; {POINT_LENGTH} for point lists)")
    return common


def build_parser():
    parser = _Parser(prog="tarski", description=__doc__.splitlines()[0], parents=[_common(True)])
    common = _common(False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")

    p = sub.add_parser("axioms", parents=[common], help="witnesses for F1, F2, F3")
    p.add_argument("axiom", choices=["f1", "f2", "f3"])
    p.add_argument("--e", help="idempotent literal")
    p.add_argument("--t", help="involution (F2)")

    p = sub.add_parser("factorize", parents=[common], help="piecewise factorization")
    p.add_argument("element")
    p.add_argument("--strategy", default="default", choices=["default", "refined", "reversed", "atomwise"])

    p = sub.add_parser("duality", parents=[common], help="structure space and germ groupoid")
    p.add_argument("what", choices=["points", "groupoid"])

    p = sub.add_parser("reconstruct", parents=[common], help="extend a unit-group isomorphism")
    p.add_argument("--alpha", default="identity", help="fixture path, 'identity' or conj:p0,p1,...")
    p.add_argument("--strategy", default="default", choices=["default", "reversed", "atomwise"])

    p = sub.add_parser("wt", parents=[common], help="Z_t, S_t, W_t for an involution t")
    p.add_argument("--t", required=True)
    p.add_argument("--g", help="unit to test for membership (Cuntz)")
    p.add_argument("--samples", type=int, default=20)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth_cap is not None and args.depth_cap < 1:
        parser.error("--depth-cap must be positive")
    try:
        m = parse_model(args.model)
        out = Output(m, args.json)
        ok = COMMANDS[args.command](args, m, out)
    except UsageError as exc:
        parser.error(str(exc))
    except TarskiError as exc:
        if args.json:
            print(json.dumps({"error": exc.name, "message": str(exc)}, sort_keys=True))
        else:
            print(f"{exc.name}: {exc}")
        return 2
    out.emit()
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
