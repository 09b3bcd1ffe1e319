"""JSON documents for barcodes, presentations, bar modules, Tamarkin objects and quiver elements.

Rationals are strings ``"p/q"`` (integers are also accepted); ``"inf"`` marks
an unbounded end.  Malformed input raises ``ParseError`` pointing at the
offending token in the source text.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .bars import STRICT, WEAK, Bar, BarModule, Presentation
from .errors import ParseError, PreconditionError
from .exponents import INF, ExponentGroup
from .novikov import QQ, Field, NovikovElement, Precision
from .persist import PersistenceModule, ProductElement
from .quiver import QuiverElement
from .tamarkin import TamGenerator, TamObject

_RATIONAL = re.compile(r"\s*[-+]?\d+(/\d+)?\s*")


class Document:
    """Parsed JSON plus its source, used to locate bad values."""

    def __init__(self, text: str, name: str = "<input>"):
        self.text = text
        self.name = name
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None

    @classmethod
    def read(cls, path: str) -> "Document":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls(fh.read(), path)
        except OSError as exc:
            raise PreconditionError("cannot read %s: %s" % (path, exc.strerror)) from None

    def locate(self, value) -> tuple:
        token = json.dumps(value, ensure_ascii=False) if not isinstance(value, (dict, list)) else None
        pos = self.text.find(token) if token else -1
        if pos < 0 and isinstance(value, str):
            pos = self.text.find(value)
        if pos < 0:
            return 1, 1
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def fail(self, msg: str, value=None):
        line, col = self.locate(value) if value is not None else (1, 1)
        raise ParseError(msg, line, col)

    def field(self, obj, key, kind=None, default=...):
        if not isinstance(obj, dict):
            self.fail("expected an object", obj)
        if key not in obj:
            if default is not ...:
                return default
            self.fail("missing key %r" % key, obj)
        v = obj[key]
        if kind is not None and not isinstance(v, kind):
            self.fail("key %r has the wrong type" % key, v)
        return v

    def rational(self, v, allow_inf=False):
        if isinstance(v, bool):
            self.fail("expected a rational", v)
        if isinstance(v, int):
            return Fraction(v)
        if not isinstance(v, str):
            self.fail("expected a rational string", v)
        t = v.replace("−", "-")
        if allow_inf and t.strip().lower() in ("inf", "∞"):
            return INF
        if not _RATIONAL.fullmatch(t):
            self.fail("malformed rational %r" % v, v)
        return Fraction(t.strip())

    def integer(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail("expected an integer", v)
        return v

    def element(self, v, precision: Precision, field: Field) -> NovikovElement:
        if not isinstance(v, list):
            self.fail("a Novikov element is a list of [exponent, coefficient] pairs", v)
        terms = []
        for t in v:
            if not isinstance(t, list) or len(t) != 2:
                self.fail("expected an [exponent, coefficient] pair", t)
            e = self.rational(t[0])
            if e < 0:
                self.fail("negative exponent", t[0])
            terms.append((e, self.rational(t[1])))
        return NovikovElement.build(terms, ExponentGroup.full(), precision, field)


def _doc(src) -> Document:
    return src if isinstance(src, Document) else Document.read(src)


def load_barcode(src, field: Field = QQ) -> PersistenceModule:
    doc = _doc(src)
    out = []
    for iv in doc.field(doc.data, "intervals", list):
        b = doc.rational(doc.field(iv, "birth"))
        d = doc.rational(doc.field(iv, "death"), allow_inf=True)
        if d != INF and d <= b:
            doc.fail("interval needs birth < death", doc.field(iv, "death"))
        out.append((b, d))
    return PersistenceModule.of(out, field)


def load_presentation(src, group: ExponentGroup, precision: Precision, field: Field = QQ) -> Presentation:
    doc = _doc(src)
    d = doc.data
    rows = doc.integer(doc.field(d, "rows"))
    cols = doc.integer(doc.field(d, "cols"))
    entries = doc.field(d, "entries", list)
    if len(entries) != rows:
        doc.fail("expected %d rows" % rows, d.get("rows"))
    mat = []
    for r in entries:
        if not isinstance(r, list) or len(r) != cols:
            doc.fail("expected %d columns" % cols, d.get("cols"))
        mat.append([doc.element(x, precision, field) for x in r])
    rs = [doc.rational(x) for x in doc.field(d, "row_shifts", list, [0] * rows)]
    cs = [doc.rational(x) for x in doc.field(d, "col_shifts", list, [0] * cols)]
    return Presentation.build(mat, group, precision, field, rs, cs, rows=rows)


def load_bars(src, group: ExponentGroup, field: Field = QQ) -> BarModule:
    doc = _doc(src)
    out = []
    for b in doc.field(doc.data, "bars", list):
        length = doc.rational(doc.field(b, "length"), allow_inf=True)
        boundary = doc.field(b, "boundary", str, "free" if length == INF else STRICT)
        if boundary not in (STRICT, WEAK, "free"):
            doc.fail("boundary must be strict, weak or free", boundary)
        if (boundary == "free") != (length == INF):
            doc.fail("free bars have length inf", boundary)
        shift = doc.rational(doc.field(b, "shift", default="0"))
        degree = doc.integer(doc.field(b, "degree", default=0))
        closed = doc.field(b, "closed_left", bool, True)
        out.append(Bar(length, STRICT if boundary == "free" else boundary, shift, degree, closed))
    return BarModule.of(out, group, field)


def load_tam(src, group: ExponentGroup, field: Field = QQ) -> TamObject:
    doc = _doc(src)
    gens = []
    for g in doc.field(doc.data, "generators", list):
        left = doc.rational(doc.field(g, "left"))
        right = doc.rational(doc.field(g, "right", default="inf"), allow_inf=True)
        if right != INF and right <= left:
            doc.fail("generator needs right > left", doc.field(g, "right"))
        gens.append(TamGenerator(left, right, doc.integer(doc.field(g, "degree", default=0))))
    return TamObject.of(gens, group, field)


def load_quiver(src, group: ExponentGroup, precision: Precision, field: Field = QQ) -> QuiverElement:
    doc = _doc(src)
    entries = []
    for e in doc.field(doc.data, "entries", list):
        entries.append((doc.rational(doc.field(e, "coset")),
                        doc.element(doc.field(e, "terms", list), precision, field)))
    return QuiverElement.build(entries, group, precision, field)


def load_product(src, m: PersistenceModule) -> ProductElement:
    """``{"entries": [{"at": "c", "vector": [[interval index, coeff], ...]}]}``."""
    doc = _doc(src)
    entries = []
    for e in doc.field(doc.data, "entries", list):
        vec = []
        for pair in doc.field(e, "vector", list):
            if not isinstance(pair, list) or len(pair) != 2:
                doc.fail("expected an [index, coefficient] pair", pair)
            k = doc.integer(pair[0])
            if not 0 <= k < len(m.intervals):
                doc.fail("interval index out of range", pair[0])
            vec.append((k, doc.rational(pair[1])))
        entries.append((doc.rational(doc.field(e, "at")), vec))
    return ProductElement.of(entries, m)


# ---------------------------------------------------------------------------
# writers (used for fixtures and round trips)


def _r(x) -> str:
    return "inf" if x == INF else str(Fraction(x))


def dump_bars(m: BarModule) -> str:
    bars = []
    for b in m.bars:
        d = {"length": _r(b.length), "boundary": "free" if b.is_free else b.boundary,
             "shift": _r(b.shift), "degree": b.degree}
        if not b.closed_left:
            d["closed_left"] = False
        bars.append(d)
    return json.dumps({"bars": bars}, indent=2)


def dump_tam(e: TamObject) -> str:
    return json.dumps({"generators": [{"left": _r(g.left), "right": _r(g.right), "degree": g.degree}
                                      for g in e.generators]}, indent=2)


def dump_barcode(m: PersistenceModule) -> str:
    return json.dumps({"intervals": [{"birth": _r(b), "death": _r(d)} for b, d in m.intervals]}, indent=2)
