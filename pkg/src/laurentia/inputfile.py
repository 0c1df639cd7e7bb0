"""Declarative TOML input files.

Path syntax: ``a*b`` traverses ``a`` and then ``b`` (so ``dst(a) = src(b)``).

Algebra modes:

* ``quiver`` -- ``vertices``, ``arrows`` (name/src/dst/degree), ``relations``.
* ``table`` -- ``basis`` (name/degree/left/right), ``idempotents``
  (element/class), ``radical``, ``products`` as ``[a, b, "combination"]``,
  ``window = [lo, hi]`` and optionally ``finite = true``.
* ``matrix_polynomial`` -- square matrices over a polynomial ring, graded by
  ``row_degrees`` and ``generator_degrees``; expanded into a table and verified.
"""
from __future__ import annotations

import itertools
import re
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .exactlin import Field
from .galgebra import (AlgebraError, Arrow, GradedAlgebra, QuiverPresentation, TableAlgebra,
                       from_quiver, from_table, involution_from_generators, parse_lincomb)
from .strat import CLASSES, OrderSpec


class InputError(ValueError):
    def __init__(self, msg, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + loc)
        self.line = line
        self.column = column


def _locate(text: str, needle: str):
    if not needle:
        return None, None
    for k, line in enumerate(text.splitlines(), 1):
        c = line.find(needle)
        if c >= 0:
            return k, c + 1
    return None, None


@dataclass
class Problem:
    """A parsed input file: the algebra recipe plus order, involution, window, field and class."""

    mode: str
    payload: dict
    order_covers: list
    order_labels: list | None
    involution: dict | None
    window: int | None
    characteristic: int
    cls: str
    text: str = ""
    name: str = ""

    def field(self) -> Field:
        return Field(self.characteristic)

    def build(self, window=None, characteristic=None) -> GradedAlgebra:
        F = Field(self.characteristic if characteristic is None else characteristic)
        w = window if window is not None else self.window
        try:
            if self.mode == "quiver":
                p = self.payload["presentation"]
                if w is None:
                    raise InputError("quiver input needs [window] max_degree or --window")
                A = from_quiver(p, w, F)
            elif self.mode == "table":
                t = self.payload["table"]
                if w is not None and w != t.w_hi:
                    t = _retable(t, w)
                A = from_table(t, F)
            else:
                t = matrix_polynomial_table(**self.payload, w_hi=w if w is not None else 12)
                A = from_table(t, F)
        except AlgebraError as e:
            idx = getattr(e, "relation_index", None)
            raw = self.payload.get("raw_relations", [])
            needle = raw[idx] if idx is not None and idx < len(raw) else _needle(e)
            line, col = _locate(self.text, needle)
            if line:
                e.args = (f"{e} (line {line}, column {col})",)
                e.line, e.column = line, col
            raise
        if self.involution is not None:
            A.involution = involution_from_generators(A, self.involution)
        return A

    def order(self, A: GradedAlgebra) -> OrderSpec:
        labels = self.order_labels or list(A.labels)
        return OrderSpec(labels, self.order_covers)


def _needle(e):
    m = re.search(r"relation (\S+)", str(e))
    if m:
        return m.group(1).split("*")[0]
    m = re.search(r"'([^']+)'", str(e))
    return m.group(1) if m else None


def _retable(t: TableAlgebra, w_hi):
    keep = [b for b in t.basis if b[1] <= w_hi]
    names = {b[0] for b in keep}
    prods = {k: {n: c for n, c in v.items() if n in names}
             for k, v in t.products.items() if k[0] in names and k[1] in names}
    return TableAlgebra(keep, prods, t.idempotents, [r for r in t.radical if r in names],
                        t.w_lo, w_hi, t.finite)


def matrix_polynomial_table(size: int, row_degrees, generator_degrees, label="1", w_hi=12,
                            **_) -> TableAlgebra:
    """Mat_size(F[z_1..z_k]) with E_ij in degree row_degrees[i] - row_degrees[j].

    All diagonal matrix units are idempotents of one class; the radical is
    the set of matrices with entries in the augmentation ideal.
    """
    k = len(generator_degrees)
    s = list(row_degrees)
    w_lo = min(s[i] - s[j] for i in range(size) for j in range(size))
    span = w_hi - w_lo
    monos = []
    for exps in itertools.product(*[range(span // d + 1) for d in generator_degrees]):
        deg = sum(e * d for e, d in zip(exps, generator_degrees))
        if deg <= span:
            monos.append((exps, deg))

    def mname(exps):
        parts = []
        for i, e in enumerate(exps):
            if e:
                parts.append(f"z{i + 1}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    basis, where = [], {}
    for i in range(size):
        for j in range(size):
            for exps, deg in monos:
                d = s[i] - s[j] + deg
                if w_lo <= d <= w_hi:
                    nm = f"E{i + 1}{j + 1}" + (f"[{mname(exps)}]" if any(exps) else "")
                    basis.append((nm, d, f"E{i + 1}{i + 1}", f"E{j + 1}{j + 1}"))
                    where[(i, j, exps)] = nm
    products = {}
    for (i, j, ea), na in where.items():
        for (j2, l, eb), nb in where.items():
            if j2 != j:
                continue
            ec = tuple(x + y for x, y in zip(ea, eb))
            nc = where.get((i, l, ec))
            if nc is not None:
                products[(na, nb)] = {nc: 1}
    idems = [(f"E{i + 1}{i + 1}", label) for i in range(size)]
    radical = [nm for (i, j, e), nm in where.items() if any(e)]
    return TableAlgebra(basis, products, idems, radical, w_lo, w_hi, finite=False)


def parse_text(text: str, name: str = "") -> Problem:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        m = re.search(r"line (\d+), column (\d+)", str(e))
        raise InputError(f"malformed input: {e}", *(map(int, m.groups()) if m else (None, None))) from e
    alg = data.get("algebra")
    if not isinstance(alg, dict):
        raise InputError("missing [algebra] section", 1, 1)
    mode = alg.get("mode", "quiver")

    def where(needle):
        return _locate(text, needle)

    if mode == "quiver":
        vertices = [str(v) for v in alg.get("vertices", [])]
        if not vertices:
            raise InputError("the vertex set must be nonempty", *where("vertices"))
        arrows = []
        for a in alg.get("arrows", []):
            try:
                arrows.append(Arrow(str(a["name"]), str(a["src"]), str(a["dst"]), int(a["degree"])))
            except KeyError as e:
                raise InputError(f"arrow entry is missing {e}", *where(str(a.get("name", "arrows")))) from e
        rels = []
        for r in alg.get("relations", []):
            try:
                rels.append(parse_lincomb(r))
            except AlgebraError as e:
                raise InputError(str(e), *where(r)) from e
        payload = {"presentation": QuiverPresentation(vertices, arrows, rels),
                   "raw_relations": list(alg.get("relations", []))}
        labels = vertices
    elif mode == "table":
        try:
            basis = [(str(b["name"]), int(b["degree"]), str(b["left"]), str(b["right"]))
                     for b in alg["basis"]]
            idems = [(str(e["element"]), str(e.get("class", e["element"]))) for e in alg["idempotents"]]
            lo, hi = alg["window"]
        except KeyError as e:
            raise InputError(f"table input is missing {e}", *where("mode")) from e
        products = {}
        for a, b, combo in alg.get("products", []):
            vec = {}
            for coef, toks in parse_lincomb(combo) if combo.strip() not in ("", "0") else []:
                if len(toks) != 1:
                    raise InputError(f"product {a}.{b}: expected a combination of basis names",
                                     *where(combo))
                vec[toks[0]] = vec.get(toks[0], 0) + coef
            products[(str(a), str(b))] = vec
        t = TableAlgebra(basis, products, idems, [str(r) for r in alg.get("radical", [])],
                         int(lo), int(hi), bool(alg.get("finite", False)))
        payload = {"table": t}
        labels = list(dict.fromkeys(c for _, c in idems))
    elif mode == "matrix_polynomial":
        payload = {"size": int(alg["size"]), "row_degrees": list(alg["row_degrees"]),
                   "generator_degrees": list(alg["generator_degrees"]),
                   "label": str(alg.get("class", "1"))}
        labels = [payload["label"]]
    else:
        raise InputError(f"unknown algebra mode {mode!r}", *where("mode"))

    order = data.get("order", {})
    covers = []
    for c in order.get("covers", []):
        if len(c) != 2:
            raise InputError(f"order covers are pairs [lower, higher], got {c}", *where("covers"))
        covers.append((str(c[0]), str(c[1])))
        for x in covers[-1]:
            if x not in labels:
                raise InputError(f"order mentions unknown label {x!r}", *where("covers"))
    inv = data.get("involution")
    if inv is not None:
        inv = {str(k): str(v) for k, v in inv.items()}
    window = data.get("window", {}).get("max_degree")
    char = int(data.get("field", {}).get("characteristic", 0))
    cls = str(data.get("class", {}).get("name", "any"))
    if cls not in CLASSES:
        raise InputError(f"unknown class {cls!r}; expected one of {', '.join(CLASSES)}", *where(cls))
    return Problem(mode, payload, covers, labels, inv, window, char, cls, text, name)


def parse_file(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, str(path))
