"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 precondition failure,
3 insufficient precision.
"""

from __future__ import annotations

import argparse
import sys

from . import bars, persist, tamarkin, zoo
from .errors import ParseError, PrecisionError, PreconditionError
from .exponents import ExponentGroup, exponent
from .io import load_bars, load_barcode, load_presentation, load_product, load_quiver, load_tam
from .novikov import Field, Precision, format_element, parse_element, valuation

DEFAULT_GROUP = {"nov": "full", "quiver": "z", "bars": "full", "tam": "z", "pers": "trivial", "zoo": "full"}
DEFAULT_PRECISION = {"nov": "inf", "quiver": "inf", "bars": "16", "tam": "inf", "pers": "inf", "zoo": "inf"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("error: %s" % message, file=sys.stderr)
        raise SystemExit(1)


def _opt(text, parse, what):
    try:
        return parse(text)
    except (ValueError, TypeError) as exc:
        raise ParseError("bad %s %r: %s" % (what, text, exc), 1, 1) from None


def _context(args):
    group = _opt(args.group or DEFAULT_GROUP[args.area], ExponentGroup.parse, "group")
    field = _opt(args.field, Field.parse, "field")
    precision = _opt(args.precision or DEFAULT_PRECISION[args.area], Precision.parse, "precision")
    return group, field, precision


def _rat(text):
    return _opt(text.replace("−", "-"), exponent, "rational")


# ---------------------------------------------------------------------------
# handlers: each returns the report text


def _nov(args, group, field, precision):
    a = parse_element(args.a, group, precision, field)
    if args.op == "eval":
        return format_element(a)
    if args.op == "val":
        v = valuation(a)
        return "inf" if a.is_zero() else str(v)
    b = parse_element(args.b, group, precision, field)
    return format_element(a * b)


def _quiver(args, group, field, precision):
    a = load_quiver(args.a, group, precision, field)
    b = load_quiver(args.b, group, precision, field)
    return str(a * b)


def _bars(args, group, field, precision):
    if args.op == "normalform":
        return str(bars.normal_form(load_presentation(args.a, group, precision, field)))
    m = load_bars(args.a, group, field)
    n = load_bars(args.b, group, field)
    if args.op == "hom":
        return str(bars.derived_hom(m, n) if args.derived else bars.hom(m, n))
    if args.op == "tensor":
        return str(bars.tensor(m, n, derived=args.derived))
    return "almost-isomorphic: %s" % ("true" if bars.is_almost_isomorphic(m, n) else "false")


def _tam(args, group, field, precision):
    if args.op == "end-unit":
        boundary = bars.WEAK if args.boundary == "weak" else bars.STRICT
        return str(tamarkin.end_unit(group, _rat(args.window), boundary, field))
    if args.op == "functor-b":
        return str(tamarkin.functor_B(load_bars(args.a, group, field)))
    e = load_tam(args.a, group, field)
    if args.op == "functor-a":
        return str(tamarkin.functor_A(e))
    f = load_tam(args.b, group, field)
    if args.op == "hom":
        return str(tamarkin.hom_equivariant(e, f))
    rep = tamarkin.check_main_theorem_report(e, f)
    return "\n".join([
        "sheaf side:", _indent(rep.sheaf_side),
        "novikov side:", _indent(rep.novikov_side),
        "B(A(x)) = x: %s" % _tf(rep.b_after_a),
        "A(B(m)) almost-isomorphic to m: %s" % _tf(rep.a_after_b),
        "almost-isomorphic: %s" % _tf(rep.homs_agree),
    ])


def _pers(args, group, field, precision):
    m = load_barcode(args.barcode, field)
    if args.op == "to-bars":
        return str(persist.to_tam(m) if args.tam else persist.to_bars(m))
    f = load_quiver(args.element, group, precision, field)
    n = load_product(args.vector, m)
    return str(persist.l0_act(f, n, m))


def _zoo(args, group, field, precision):
    if args.op == "classify":
        return str(zoo.classify(args.name))
    if args.op == "nonabel":
        return str(zoo.nonabel_witness(_rat(args.N)))
    return str(zoo.telescope_report(_rat(args.step), _rat(args.modulus), args.stages))


def _tf(b) -> str:
    return "true" if b else "false"


def _indent(x) -> str:
    return "\n".join("  " + line for line in str(x).splitlines())


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fP for a prime P")
    common.add_argument("--group", default=None, help="trivial | z | cyclic:p/q | full")
    common.add_argument("--precision", default=None, help="p/q[:strict|weak] | inf")

    p = _Parser(prog="almostnov", description="Novikov-ring algebra and barcode tools.")
    areas = p.add_subparsers(dest="area", required=True, parser_class=_Parser)

    def sub(area, handler):
        a = areas.add_parser(area)
        a.set_defaults(handler=handler)
        return a.add_subparsers(dest="op", required=True, parser_class=_Parser)

    nov = sub("nov", _nov)
    for op, nargs in (("eval", 1), ("val", 1), ("mul", 2)):
        c = nov.add_parser(op, parents=[common])
        c.add_argument("a", help="element such as '1 + 2*T^(1/2)'")
        if nargs == 2:
            c.add_argument("b")

    q = sub("quiver", _quiver).add_parser("mul", parents=[common], help="print A*B (follow B, then A)")
    q.add_argument("a")
    q.add_argument("b")

    b = sub("bars", _bars)
    b.add_parser("normalform", parents=[common]).add_argument("a", help="presentation JSON")
    for op in ("hom", "tensor", "almost-iso"):
        c = b.add_parser(op, parents=[common])
        c.add_argument("a")
        c.add_argument("b")
        if op != "almost-iso":
            c.add_argument("--derived", action="store_true")

    t = sub("tam", _tam)
    for op in ("hom", "check-theorem"):
        c = t.add_parser(op, parents=[common])
        c.add_argument("a")
        c.add_argument("b")
    t.add_parser("functor-a", parents=[common]).add_argument("a", help="Tamarkin object JSON")
    t.add_parser("functor-b", parents=[common]).add_argument("a", help="bar module JSON")
    c = t.add_parser("end-unit", parents=[common])
    c.add_argument("--window", required=True)
    c.add_argument("--boundary", choices=("strict", "weak"), default="strict")

    pe = sub("pers", _pers)
    c = pe.add_parser("act", parents=[common])
    c.add_argument("barcode")
    c.add_argument("element", help="quiver element JSON")
    c.add_argument("vector", help="product element JSON")
    c = pe.add_parser("to-bars", parents=[common])
    c.add_argument("barcode")
    c.add_argument("--tam", action="store_true", help="print the Tamarkin object instead")

    z = sub("zoo", _zoo)
    z.add_parser("classify", parents=[common]).add_argument("name", choices=zoo.CATALOGUE)
    z.add_parser("nonabel", parents=[common]).add_argument("N")
    c = z.add_parser("telescope", parents=[common])
    c.add_argument("step")
    c.add_argument("modulus")
    c.add_argument("--stages", type=int, default=3)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        group, field, precision = _context(args)
        out = args.handler(args, group, field, precision)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except PrecisionError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
