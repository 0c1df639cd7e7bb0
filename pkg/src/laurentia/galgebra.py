"""Graded algebras truncated to a degree window.

Two front ends build a :class:`GradedAlgebra`:

* :func:`from_quiver` -- a positively graded quiver with homogeneous
  relations.  A path written ``a*b`` traverses ``a`` and then ``b``.  As an
  algebra element it equals the product ``b . a``: multiplication composes like
  functions, so ``e_t p e_s = p`` for a path from ``s`` to ``t`` and the
  projective ``P(s) = H e_s`` is spanned by the paths starting at ``s``.
* :func:`from_table` -- explicit structure constants with a declared radical,
  which is verified rather than discovered.

Products landing above the window raise :class:`AboveHorizon`; they are never
silently zero.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import QQ, Field, Subspace, kernel_vectors, rank_rows
from .laurent import INF, LaurentPoly


class AlgebraError(ValueError):
    pass


class InhomogeneousRelation(AlgebraError):
    pass


class EndpointMismatch(AlgebraError):
    pass


class AboveHorizon(ArithmeticError):
    def __init__(self, degree):
        super().__init__(f"product of degree {degree} lies above the window")
        self.degree = degree


class TableError(AlgebraError):
    pass


class AssocFail(TableError):
    def __init__(self, i, j, k):
        super().__init__(f"associativity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class RadicalNotIdeal(TableError):
    pass


class QuotientNotSemisimple(TableError):
    pass


class RadicalTooSmall(TableError):
    pass


class RadicalNotNilpotent(TableError):
    pass


class NotAntiinvolution(AlgebraError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class BasisElement:
    name: str
    degree: int
    left: int  # slot s with e_s b = b
    right: int  # slot s with b e_s = b


def _add_into(acc: dict, vec: dict, c, F: Field):
    for k, x in vec.items():
        v = F.norm(acc.get(k, 0) + c * x)
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class GradedAlgebra:
    """Degreewise basis, structure constants and idempotent slots.

    Elements are sparse dicts ``{basis index: coefficient}``.  Slots are the
    primitive idempotents of a complete orthogonal set; each slot belongs to
    an isomorphism class label in ``labels`` and the first slot of each class
    is its designated idempotent ``e_pi``.
    """

    def __init__(self, *, field: Field, labels, slot_class, slot_idem, basis, table,
                 w_lo: int, w_hi: int, finite: bool, generators=None, radical_gens=None,
                 radical_basis=None, kind="table", info=None, involution_images=None):
        self.field = field
        self.labels = list(labels)
        self.slot_class = list(slot_class)
        self.slot_idem = [dict(e) for e in slot_idem]
        self.basis = list(basis)
        self._table = table
        self.w_lo = w_lo
        self.w_hi = w_hi
        self.finite = finite
        self.horizon = INF if finite else w_hi
        self.generators = generators
        self.radical_gens = list(radical_gens or [])
        self.kind = kind
        self.info = dict(info or {})
        self.designated = {}
        for s, lab in enumerate(self.slot_class):
            self.designated.setdefault(lab, s)
        self.by_degree: dict[int, list[int]] = {}
        for i, b in enumerate(self.basis):
            self.by_degree.setdefault(b.degree, []).append(i)
        self._pos = {}
        for n, idx in self.by_degree.items():
            for p, i in enumerate(idx):
                self._pos[i] = p
        if radical_basis is None:
            radical_basis = []
        self._radical = {}
        for vec in radical_basis:
            n = self.degree_of(vec)
            self._radical.setdefault(n, []).append(self.to_dense(vec, n))
        self._radical = {n: Subspace(self.dim(n), field, vs) for n, vs in self._radical.items()}
        self.involution = None
        if involution_images is not None:
            self.involution = Involution(self, involution_images)

    # basic queries
    def __repr__(self):
        return f"<GradedAlgebra {self.kind} Pi={self.labels} window=[{self.w_lo},{self.w_hi}] dim={len(self.basis)}>"

    @property
    def top(self) -> int:
        """Highest degree carrying basis elements."""
        return max(self.by_degree) if self.by_degree else self.w_lo

    def degrees(self):
        return range(self.w_lo, self.w_hi + 1)

    def dim(self, n: int) -> int:
        if n > self.horizon:
            raise AboveHorizon(n)
        return len(self.by_degree.get(n, ()))

    def indices(self, n: int, left=None, right=None):
        return [i for i in self.by_degree.get(n, ())
                if (left is None or self.basis[i].left == left) and (right is None or self.basis[i].right == right)]

    def pos(self, i: int) -> int:
        return self._pos[i]

    def slot(self, label) -> int:
        return self.designated[label]

    def idempotent(self, label) -> dict:
        return self.slot_idem[self.designated[label]]

    def index_of(self, name: str) -> int:
        for i, b in enumerate(self.basis):
            if b.name == name:
                return i
        raise KeyError(name)

    def degree_of(self, elem: dict):
        degs = {self.basis[i].degree for i in elem}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def to_dense(self, elem: dict, n: int):
        v = [0] * len(self.by_degree.get(n, ()))
        for i, c in elem.items():
            v[self._pos[i]] = c
        return v

    def from_dense(self, v, n: int) -> dict:
        idx = self.by_degree.get(n, ())
        return {idx[p]: c for p, c in enumerate(v) if c}

    # multiplication
    def mul_basis(self, i: int, j: int) -> dict:
        bi, bj = self.basis[i], self.basis[j]
        if bi.right != bj.left:
            return {}
        d = bi.degree + bj.degree
        if d > self.horizon:
            raise AboveHorizon(d)
        return self._table.get((i, j), {})

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of two homogeneous elements; raises AboveHorizon past the window."""
        if not a or not b:
            return {}
        da, db = self.degree_of(a), self.degree_of(b)
        if da + db > self.horizon:
            raise AboveHorizon(da + db)
        F = self.field
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                p = self.mul_basis(i, j)
                if p:
                    _add_into(out, p, x * y, F)
        return out

    def one(self) -> dict:
        out: dict = {}
        for e in self.slot_idem:
            _add_into(out, e, 1, self.field)
        return out

    # graded dimensions
    def dim_q(self) -> LaurentPoly:
        return LaurentPoly({n: len(v) for n, v in self.by_degree.items()}, self.horizon)

    def peirce_dims(self):
        """{(sigma, pi): dim_q e_sigma A e_pi} over designated idempotents."""
        out = {}
        for s in self.labels:
            for p in self.labels:
                ls, lp = self.slot(s), self.slot(p)
                c = {}
                for i, b in enumerate(self.basis):
                    if b.left == ls and b.right == lp:
                        c[b.degree] = c.get(b.degree, 0) + 1
                out[(s, p)] = LaurentPoly(c, self.horizon)
        return out

    def radical_space(self, n: int) -> Subspace:
        sp = self._radical.get(n)
        if sp is None:
            return Subspace(len(self.by_degree.get(n, ())), self.field)
        return sp

    def radical_min_degree(self) -> int:
        degs = [n for n, sp in self._radical.items() if sp.dim]
        return min(degs) if degs else 0

    @property
    def positively_graded(self) -> bool:
        return self.w_lo >= 0 and self.generators is not None

    def max_generator_degree(self) -> int:
        if not self.generators:
            return 1
        return max(1, max(self.degree_of(g) or 0 for g in self.generators))

    def opposite(self) -> "GradedAlgebra":
        """The opposite algebra: same basis, slots swapped, a.b := b.a.

        Left modules over the opposite algebra are right modules over self.
        """
        basis = [BasisElement(b.name, b.degree, b.right, b.left) for b in self.basis]
        table = {(j, i): v for (i, j), v in self._table.items()}
        rbasis = [self.from_dense(row, n) for n, sp in self._radical.items() for row in sp.rows]
        Op = GradedAlgebra(field=self.field, labels=self.labels, slot_class=self.slot_class,
                           slot_idem=self.slot_idem, basis=basis, table=table, w_lo=self.w_lo,
                           w_hi=self.w_hi, finite=self.finite, generators=self.generators,
                           radical_gens=self.radical_gens, radical_basis=rbasis, kind=self.kind,
                           info=self.info)
        Op.horizon = self.horizon
        return Op

    # two-sided ideals and quotients
    def ideal_generated_by_idempotent(self, label):
        """Degreewise spans of A e A for the designated idempotent of ``label``.

        Returns (spaces, horizon) where ``spaces[n]`` is a Subspace of the
        degree-n part, exact through ``horizon``.
        """
        s = self.slot(label)
        F = self.field
        hz = self.horizon if self.horizon == INF else self.horizon + min(0, self.w_lo)
        left = [i for i, b in enumerate(self.basis) if b.right == s]
        right = [j for j, b in enumerate(self.basis) if b.left == s]
        vecs: dict[int, list] = {}
        for i in left:
            di = self.basis[i].degree
            for j in right:
                d = di + self.basis[j].degree
                if d > hz or d > self.top:
                    continue
                p = self.mul_basis(i, j)
                if p:
                    vecs.setdefault(d, []).append(self.to_dense(p, d))
        spaces = {n: Subspace(self.dim(n), F, vecs.get(n, [])) for n in self.by_degree if n <= hz}
        return spaces, hz

    def quotient(self, spaces: dict, horizon=INF):
        """Quotient by a two-sided ideal given degreewise (exact through ``horizon``).

        Returns (quotient algebra, projection) where ``projection(elem)`` maps
        an element of self to an element of the quotient.
        """
        F = self.field
        hz = min(self.horizon, horizon)
        keep = {}  # old index -> new index
        new_basis = []
        comps = {}
        for n in sorted(self.by_degree):
            if n > hz:
                continue
            sp = spaces.get(n) or Subspace(self.dim(n), F)
            comp = sp.complement()
            comps[n] = (sp, comp)
            idx = self.by_degree[n]
            for p in comp:
                keep[idx[p]] = None
        order = sorted(keep, key=lambda i: (self.basis[i].degree, i))

        def proj_raw(elem):
            if not elem:
                return {}
            n = self.degree_of(elem)
            if n > hz:
                raise AboveHorizon(n)
            sp, comp = comps[n]
            q = sp.quotient_coords(self.to_dense(elem, n), comp)
            idx = self.by_degree[n]
            return {idx[p]: c for p, c in zip(comp, q) if c}

        # slots surviving the quotient
        slot_map = {}
        new_slot_idem_old = []
        for s, e in enumerate(self.slot_idem):
            if proj_raw(e):
                slot_map[s] = len(new_slot_idem_old)
                new_slot_idem_old.append(proj_raw(e))
        for k, i in enumerate(order):
            b = self.basis[i]
            keep[i] = k
            new_basis.append(BasisElement(b.name, b.degree, slot_map.get(b.left, -1), slot_map.get(b.right, -1)))

        def proj(elem):
            return {keep[i]: c for i, c in proj_raw(elem).items()}

        table = {}
        for a, i in enumerate(order):
            for b, j in enumerate(order):
                if self.basis[i].right != self.basis[j].left:
                    continue
                d = self.basis[i].degree + self.basis[j].degree
                if d > hz:
                    continue
                p = self.mul_basis(i, j)
                if p:
                    pp = proj(p)
                    if pp:
                        table[(a, b)] = pp
        labels = [lab for lab in self.labels if any(self.slot_class[s] == lab for s in slot_map)]
        slot_class = [self.slot_class[s] for s in slot_map]
        slot_idem = [proj(self.slot_idem[s]) for s in slot_map]
        def proj_within(elems):
            return [g2 for g2 in (proj(g) for g in elems if self.degree_of(g) <= hz) if g2]

        gens = None if self.generators is None else proj_within(self.generators)
        rgens = proj_within(self.radical_gens)
        rbasis = []
        for n, sp in self._radical.items():
            if n <= hz:
                for row in sp.rows:
                    e = proj(self.from_dense(row, n))
                    if e:
                        rbasis.append(e)
        Q = GradedAlgebra(field=F, labels=labels, slot_class=slot_class, slot_idem=slot_idem,
                          basis=new_basis, table=table, w_lo=self.w_lo, w_hi=min(self.w_hi, hz),
                          finite=self.finite, generators=gens, radical_gens=rgens,
                          radical_basis=rbasis, kind=self.kind, info=self.info)
        Q._parent_index = {k: i for i, k in keep.items()}
        if self.involution is not None:
            Q.involution = self.involution.descend(Q, proj)
        return Q, proj


# ---------------------------------------------------------------------------
# quiver front end


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str
    degree: int


_NUM = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_lincomb(text: str):
    """Parse ``"a*b - 2*c + 1/2*d*e"`` into [(Fraction, [names...]), ...]."""
    s = text.replace(" ", "")
    if not s:
        raise AlgebraError("empty linear combination")
    terms = []
    for m in re.finditer(r"([+-]?)([^+-]+)", s):
        sign, body = m.group(1), m.group(2)
        toks = body.split("*")
        coef = Fraction(1)
        names = []
        for t in toks:
            if not t:
                raise AlgebraError(f"malformed term {body!r} in {text!r}")
            if _NUM.match(t) and not names:
                coef *= Fraction(t)
            else:
                names.append(t)
        if sign == "-":
            coef = -coef
        terms.append((coef, names))
    return terms


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list
    relations: list  # each: list of (coeff, tuple of arrow names in traversal order)

    @classmethod
    def build(cls, vertices, arrows, relations=()):
        arr = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        rels = []
        for r in relations:
            rels.append(parse_lincomb(r) if isinstance(r, str) else list(r))
        return cls(list(vertices), arr, rels)


def _path_name(arrows) -> str:
    return "*".join(arrows)


def _check_relation(r, arrows, field):
    ends, degs, terms = set(), set(), []
    for coef, names in r:
        if not names:
            raise AlgebraError("relations must be combinations of paths of positive length")
        for nm in names:
            if nm not in arrows:
                raise AlgebraError(f"unknown arrow {nm!r} in relation")
        for x, y in zip(names, names[1:]):
            if arrows[x].dst != arrows[y].src:
                raise EndpointMismatch(f"path {_path_name(names)} is not composable at {x}*{y}")
        ends.add((arrows[names[0]].src, arrows[names[-1]].dst))
        degs.add(sum(arrows[nm].degree for nm in names))
        terms.append((field(coef), tuple(names)))
    if len(ends) > 1:
        raise EndpointMismatch(f"relation {_rel_text(r)} mixes endpoints {sorted(ends)}")
    if len(degs) > 1:
        raise InhomogeneousRelation(f"relation {_rel_text(r)} mixes degrees {sorted(degs)}")
    (s, t), = ends
    return (s, t, degs.pop(), terms)


def _rel_text(r):
    out = []
    for coef, names in r:
        body = _path_name(names)
        mag = abs(coef)
        term = body if mag == 1 else f"{mag}*{body}"
        if not out:
            out.append(term if coef > 0 else f"-{term}")
        else:
            out.append(("+ " if coef > 0 else "- ") + term)
    return " ".join(out)


def from_quiver(p: QuiverPresentation, window_top: int, field: Field = QQ) -> GradedAlgebra:
    if window_top < 0:
        raise AlgebraError("window_top must be >= 0")
    if not p.vertices:
        raise AlgebraError("the vertex set must be nonempty")
    if len(set(p.vertices)) != len(p.vertices):
        raise AlgebraError("duplicate vertex labels")
    vid = {v: k for k, v in enumerate(p.vertices)}
    arrows = {}
    for a in p.arrows:
        if a.name in arrows or a.name in vid:
            raise AlgebraError(f"duplicate arrow name {a.name!r}")
        if a.src not in vid or a.dst not in vid:
            raise EndpointMismatch(f"arrow {a.name!r} has an unknown endpoint")
        if a.degree < 1:
            raise AlgebraError(f"arrow {a.name!r} has degree {a.degree}; quiver arrows need degree >= 1")
        arrows[a.name] = a

    # relations: validate and normalise to (src, dst, degree, [(coef, path)])
    rels = []
    for ridx, r in enumerate(p.relations):
        try:
            rels.append(_check_relation(r, arrows, field))
        except AlgebraError as e:
            e.relation_index = ridx
            raise
    
    # enumerate paths by degree: (src, dst, arrows)
    paths: dict[int, list] = {0: [(v, v, ()) for v in p.vertices]}
    for n in range(1, window_top + 1):
        cur = []
        for a in p.arrows:
            k = n - a.degree
            if k < 0:
                continue
            for (s, t, arr) in paths.get(k, []):
                if t == a.src:
                    cur.append((s, a.dst, arr + (a.name,)))
        paths[n] = sorted(cur, key=lambda x: (vid[x[0]], vid[x[1]], x[2]))
    pindex = {n: {pth: k for k, pth in enumerate(ps)} for n, ps in paths.items()}

    from_src: dict = {}
    to_dst: dict = {}
    for n, ps in paths.items():
        for pth in ps:
            from_src.setdefault((pth[0], n), []).append(pth)
            to_dst.setdefault((pth[1], n), []).append(pth)

    # relation slices and normal forms
    normal: dict[int, tuple] = {}
    for n in range(window_top + 1):
        N = len(paths[n])
        vecs = []
        for (s, t, d, terms) in rels:
            for k in range(0, n - d + 1):
                for v in to_dst.get((s, k), []):
                    for u in from_src.get((t, n - d - k), []):
                        vec = {}
                        for coef, arr in terms:
                            key = (v[0], u[1], v[2] + arr + u[2])
                            c = pindex[n][key]
                            vec[c] = field.norm(vec.get(c, 0) + coef)
                        dense = [0] * N
                        for c, x in vec.items():
                            dense[c] = x
                        vecs.append(dense)
        normal[n] = Subspace(N, field, vecs)

    basis = []
    bindex = {}
    for n in range(window_top + 1):
        for c in normal[n].complement():
            s, t, arr = paths[n][c]
            name = _path_name(arr) if arr else f"e_{s}"
            bindex[(n, c)] = len(basis)
            basis.append(BasisElement(name, n, vid[t], vid[s]))

    def reduce_path(pth) -> dict:
        n = sum(arrows[a].degree for a in pth[2])
        if n > window_top:
            raise AboveHorizon(n)
        sp = normal[n]
        dense = [0] * len(paths[n])
        dense[pindex[n][pth]] = 1
        r = sp.reduce(dense)
        return {bindex[(n, c)]: x for c, x in enumerate(r) if x}

    # a window ending in a run of zero degrees at least as long as the
    # largest arrow degree certifies finite dimensionality
    maxdeg = max((a.degree for a in p.arrows), default=1)
    dims = [sum(1 for b in basis if b.degree == n) for n in range(window_top + 1)]
    finite = not p.arrows or (window_top + 1 >= maxdeg + 1 and
                              all(x == 0 for x in dims[window_top + 1 - maxdeg:]))
    if finite:
        top = max((b.degree for b in basis), default=0)
    else:
        top = window_top

    basis_paths = {}
    for (n, c), i in bindex.items():
        basis_paths[i] = paths[n][c]
    table = {}
    for i, bi in enumerate(basis):
        pi = basis_paths[i]
        for j, bj in enumerate(basis):
            if bi.right != bj.left:
                continue
            d = bi.degree + bj.degree
            if d > window_top:
                continue
            pj = basis_paths[j]
            # b_i . b_j traverses b_j first
            prod = (pj[0], pi[1], pj[2] + pi[2])
            r = reduce_path(prod)
            if r:
                table[(i, j)] = r

    slot_idem = [{bindex[(0, pindex[0][(v, v, ())])]: 1} for v in p.vertices]
    gens = [dict(e) for e in slot_idem]
    rgens = []
    for a in p.arrows:
        if a.degree <= window_top:
            img = reduce_path((a.src, a.dst, (a.name,)))
            if img:
                gens.append(img)
                rgens.append(img)
    radical_basis = [{i: 1} for i, b in enumerate(basis) if b.degree >= 1]
    A = GradedAlgebra(field=field, labels=list(p.vertices), slot_class=list(p.vertices),
                      slot_idem=slot_idem, basis=basis, table=table, w_lo=0,
                      w_hi=top if finite else window_top, finite=finite, generators=gens,
                      radical_gens=rgens, radical_basis=radical_basis, kind="quiver",
                      info={"window_top": window_top})
    A._presentation = p
    A._arrows = arrows
    A._reduce_path = reduce_path
    return A


def path_element(A: GradedAlgebra, text: str) -> dict:
    """Element of a quiver algebra given in path syntax, e.g. ``"a*b - c"``."""
    if A.kind != "quiver":
        return table_element(A, text)
    F = A.field
    out: dict = {}
    for coef, names in parse_lincomb(text):
        if len(names) == 1 and names[0] in A.labels:
            e = A.idempotent(names[0])
        elif len(names) == 1 and names[0].startswith("e_") and names[0][2:] in A.labels:
            e = A.idempotent(names[0][2:])
        else:
            arrows = A._arrows
            for nm in names:
                if nm not in arrows:
                    raise AlgebraError(f"unknown arrow {nm!r}")
            for x, y in zip(names, names[1:]):
                if arrows[x].dst != arrows[y].src:
                    raise EndpointMismatch(f"path {_path_name(names)} is not composable")
            e = A._reduce_path((arrows[names[0]].src, arrows[names[-1]].dst, tuple(names)))
        _add_into(out, e, F(coef), F)
    return out


def table_element(A: GradedAlgebra, text: str) -> dict:
    F = A.field
    out: dict = {}
    names = {b.name: i for i, b in enumerate(A.basis)}
    for coef, toks in parse_lincomb(text):
        if len(toks) != 1 or toks[0] not in names:
            raise AlgebraError(f"{text!r}: table elements are combinations of basis names")
        _add_into(out, {names[toks[0]]: 1}, F(coef), F)
    return out


# ---------------------------------------------------------------------------
# table front end


@dataclass
class TableAlgebra:
    """Explicit graded algebra.

    basis: list of (name, degree, left idempotent name, right idempotent name)
    products: {(name_i, name_j): {name_k: coeff}}; omitted in-window products are zero
    idempotents: list of (element name, class label); the first per class is designated
    radical: names of basis elements spanning N(H)
    finite: the table lists the whole algebra (zero above w_hi)
    """

    basis: list
    products: dict
    idempotents: list
    radical: list
    w_lo: int
    w_hi: int
    finite: bool = False


def from_table(t: TableAlgebra, field: Field = QQ, verify: bool = True) -> GradedAlgebra:
    F = field
    names = [b[0] for b in t.basis]
    if len(set(names)) != len(names):
        raise TableError("duplicate basis names")
    idx = {nm: k for k, nm in enumerate(names)}
    slots = {}
    slot_class = []
    slot_idem = []
    for nm, lab in t.idempotents:
        if nm not in idx:
            raise TableError(f"idempotent {nm!r} is not a basis element")
        slots[nm] = len(slot_class)
        slot_class.append(lab)
        slot_idem.append({idx[nm]: 1})
    labels = list(dict.fromkeys(slot_class))
    if not labels:
        raise TableError("at least one idempotent is required")
    basis = []
    for nm, deg, left, right in t.basis:
        if not (t.w_lo <= deg <= t.w_hi):
            raise TableError(f"basis element {nm!r} has degree {deg} outside [{t.w_lo}, {t.w_hi}]")
        if left not in slots or right not in slots:
            raise TableError(f"basis element {nm!r} refers to an unknown idempotent")
        basis.append(BasisElement(nm, deg, slots[left], slots[right]))
    for nm, _ in t.idempotents:
        if basis[idx[nm]].degree != 0:
            raise TableError(f"idempotent {nm!r} must have degree 0")
    table = {}
    for (a, b), res in t.products.items():
        if a not in idx or b not in idx:
            raise TableError(f"product of unknown elements {a!r}, {b!r}")
        vec = {}
        for nm, c in res.items():
            if nm not in idx:
                raise TableError(f"unknown basis element {nm!r} in product {a}.{b}")
            c = F(c)
            if c:
                vec[idx[nm]] = c
        if vec:
            table[(idx[a], idx[b])] = vec
    radical_basis = []
    for nm in t.radical:
        if nm not in idx:
            raise TableError(f"unknown radical element {nm!r}")
        radical_basis.append({idx[nm]: 1})
    A = GradedAlgebra(field=F, labels=labels, slot_class=slot_class, slot_idem=slot_idem,
                      basis=basis, table=table, w_lo=t.w_lo, w_hi=t.w_hi, finite=t.finite,
                      generators=None, radical_gens=radical_basis, radical_basis=radical_basis,
                      kind="table")
    if verify:
        verify_table(A)
    return A


def verify_table(A: GradedAlgebra):
    """Run the structural checks; returns a dict of evidence or raises TableError."""
    F = A.field
    nb = len(A.basis)
    hz = A.horizon
    # structure constants respect degrees and slots
    for (i, j), vec in A._table.items():
        bi, bj = A.basis[i], A.basis[j]
        if bi.right != bj.left:
            raise TableError(f"{bi.name}.{bj.name} is listed but the idempotents do not match")
        for k in vec:
            bk = A.basis[k]
            if bk.degree != bi.degree + bj.degree:
                raise TableError(f"{bi.name}.{bj.name} is not homogeneous")
            if bk.left != bi.left or bk.right != bj.right:
                raise TableError(f"{bi.name}.{bj.name} does not respect the idempotents")
    # idempotent identities
    for s, e in enumerate(A.slot_idem):
        for t, f in enumerate(A.slot_idem):
            want = e if s == t else {}
            if A.multiply(e, f) != want:
                raise TableError(f"idempotent relations fail for slots {s}, {t}")
    one = A.one()
    for i in range(nb):
        if A.degree_of({i: 1}) > hz:
            continue
        if A.multiply(one, {i: 1}) != {i: 1} or A.multiply({i: 1}, one) != {i: 1}:
            raise TableError(f"idempotents do not sum to the identity on {A.basis[i].name}")
    # associativity
    for i in range(nb):
        bi = A.basis[i]
        for j in range(nb):
            bj = A.basis[j]
            if bi.right != bj.left:
                continue
            if bi.degree + bj.degree > hz:
                continue
            ij = A.mul_basis(i, j)
            for k in range(nb):
                bk = A.basis[k]
                if bj.right != bk.left:
                    continue
                d = bi.degree + bj.degree + bk.degree
                if d > hz or bj.degree + bk.degree > hz:
                    continue
                if A.multiply(ij, {k: 1}) != A.multiply({i: 1}, A.mul_basis(j, k)):
                    raise AssocFail(bi.name, bj.name, A.basis[k].name)
    return verify_radical(A)


def verify_radical(A: GradedAlgebra):
    F = A.field
    hz = A.horizon
    rad = A._radical
    rad_idx = set()
    for n, sp in rad.items():
        for row in sp.rows:
            rad_idx.update(i for i, c in A.from_dense(row, n).items())

    def in_rad(vec):
        if not vec:
            return True
        n = A.degree_of(vec)
        return A.radical_space(n).contains(A.to_dense(vec, n))

    rvecs = [A.from_dense(row, n) for n, sp in rad.items() for row in sp.rows]
    for r in rvecs:
        for i in range(len(A.basis)):
            for prod in _safe_products(A, {i: 1}, r):
                if not in_rad(prod):
                    raise RadicalNotIdeal(f"{A.basis[i].name} times a radical element leaves the radical")
    for s, e in enumerate(A.slot_idem):
        if in_rad(e):
            raise RadicalNotIdeal(f"idempotent of slot {s} lies in the declared radical")
    # H/N: finite dimensional within the window and semisimple
    qbasis = {}
    for n, idx in A.by_degree.items():
        sp = A.radical_space(n)
        comp = sp.complement()
        if comp:
            qbasis[n] = (sp, comp)
    qdegs = sorted(qbasis)
    if qdegs and qdegs[-1] * 2 > A.w_hi and not A.finite:
        raise QuotientNotSemisimple("H/N is not finite dimensional inside the window "
                                    f"(nonzero in degrees {qdegs[0]}..{qdegs[-1]})")
    qlist = [(n, p) for n in qdegs for p in qbasis[n][1]]
    qpos = {x: k for k, x in enumerate(qlist)}

    def qproj(vec):
        out = [0] * len(qlist)
        if not vec:
            return out
        n = A.degree_of(vec)
        if n not in qbasis:
            return out
        sp, comp = qbasis[n]
        for p, c in zip(comp, sp.quotient_coords(A.to_dense(vec, n), comp)):
            out[qpos[(n, p)]] = c
        return out

    def qelem(k):
        n, p = qlist[k]
        return {A.by_degree[n][p]: 1}

    m = len(qlist)
    # left multiplication matrices, traces
    prod = [[qproj(A.multiply(qelem(a), qelem(b))) for b in range(m)] for a in range(m)]
    trace = []
    for a in range(m):
        # Tr(L_a) = sum_b coefficient of b in a.b
        trace.append(F.norm(sum(prod[a][b][b] for b in range(m))))
    gram = [[F.norm(sum(prod[a][b][k] * trace[k] for k in range(m) if trace[k])) for b in range(m)]
            for a in range(m)]
    ker = kernel_vectors(gram, m, F) if m else []
    if ker:
        if F.characteristic == 0:
            raise RadicalTooSmall(f"H/N has a nonzero radical of dimension {len(ker)}")
        # in char p the trace-form kernel contains the radical; it is the
        # radical exactly when it is a nilpotent ideal
        if _nilpotent_span(ker, prod, m, F):
            raise RadicalTooSmall(f"H/N has a nonzero nilpotent ideal of dimension {len(ker)}")
    # min-degree growth of N^k
    mins = []
    cur = rvecs
    for _ in range(64):
        if not cur:
            break
        mins.append(min(A.degree_of(v) for v in cur))
        nxt: dict[int, list] = {}
        for x in cur:
            for r in rvecs:
                for p in _safe_products(A, x, r, sides=("right",)):
                    if p:
                        n = A.degree_of(p)
                        nxt.setdefault(n, []).append(A.to_dense(p, n))
        nxt_vecs = []
        for n, vs in nxt.items():
            sp = Subspace(A.dim(n), F, vs)
            nxt_vecs.extend(A.from_dense(row, n) for row in sp.rows)
        if len(mins) >= 2 and mins[-1] <= mins[-2]:
            raise RadicalNotNilpotent(f"min degree of N^k stops growing at k={len(mins)}")
        cur = nxt_vecs
    return {"quotient_dim": m, "radical_min_degrees": mins, "verified_to": A.horizon}


def _safe_products(A, x, r, sides=("left", "right")):
    out = []
    for side in sides:
        a, b = (x, r) if side == "right" else (r, x)
        try:
            out.append(A.multiply(a, b) if side == "right" else A.multiply(b, a))
        except AboveHorizon:
            pass
    return out


def _nilpotent_span(vecs, prod, m, F) -> bool:
    cur = Subspace(m, F, vecs)
    for _ in range(m + 1):
        if cur.dim == 0:
            return True
        nv = []
        for x in cur.rows:
            for y in vecs:
                z = [0] * m
                for a, xa in enumerate(x):
                    if xa:
                        for b, yb in enumerate(y):
                            if yb:
                                for k in range(m):
                                    if prod[a][b][k]:
                                        z[k] += xa * yb * prod[a][b][k]
                nv.append([F.norm(t) for t in z])
        cur = Subspace(m, F, nv)
    return cur.dim == 0


# ---------------------------------------------------------------------------
# antiinvolutions


class Involution:
    """A homogeneous antiinvolution given by its values on basis elements."""

    def __init__(self, A: GradedAlgebra, images: dict):
        self.A = A
        self.images = {i: dict(v) for i, v in images.items()}

    def __call__(self, elem: dict) -> dict:
        out: dict = {}
        for i, c in elem.items():
            _add_into(out, self.images[i], c, self.A.field)
        return out

    def verify(self):
        A = self.A
        for i, b in enumerate(A.basis):
            img = self.images.get(i)
            if img is None:
                raise NotAntiinvolution(f"no image for {b.name}")
            if img and A.degree_of(img) != b.degree:
                raise NotAntiinvolution(f"image of {b.name} is not homogeneous of degree {b.degree}",
                                        (b.name,))
            if self(img) != {i: 1}:
                raise NotAntiinvolution(f"tau^2 != id on {b.name}", (b.name,))
        for i, bi in enumerate(A.basis):
            for j, bj in enumerate(A.basis):
                if bi.degree + bj.degree > A.horizon:
                    continue
                lhs = self(A.mul_basis(i, j))
                rhs = A.multiply(self.images[j], self.images[i])
                if lhs != rhs:
                    raise NotAntiinvolution(f"tau({bi.name}.{bj.name}) != tau({bj.name}).tau({bi.name})",
                                            (bi.name, bj.name))
        return True

    def descend(self, Q: GradedAlgebra, proj) -> "Involution":
        imgs = {}
        for k, i in Q._parent_index.items():
            imgs[k] = proj(self.images[i])
        return Involution(Q, imgs)

    def slot_permutation(self):
        """Slot permutation induced on the idempotents (None if not a permutation)."""
        A = self.A
        perm = {}
        for s, e in enumerate(A.slot_idem):
            img = self(e)
            hit = [t for t, f in enumerate(A.slot_idem) if f == img]
            if len(hit) != 1:
                return None
            perm[s] = hit[0]
        return perm


def involution_from_generators(A: GradedAlgebra, images: dict) -> Involution:
    """Extend images of vertices/arrows (path syntax) to every basis path.

    A path ``a1*...*ak`` is the product ``ak ... a1``; an antiinvolution sends
    it to ``tau(a1) ... tau(ak)``.
    """
    if A.kind != "quiver":
        imgs = {}
        for i, b in enumerate(A.basis):
            if b.name not in images:
                raise NotAntiinvolution(f"no image for basis element {b.name}")
            imgs[i] = table_element(A, images[b.name])
        return Involution(A, imgs)
    gen_img = {}
    for v in A.labels:
        w = images.get(v, v)
        if w not in A.labels:
            raise NotAntiinvolution(f"vertex {v!r} must map to a vertex, got {w!r}")
        gen_img[("v", v)] = A.idempotent(w)
    for name in A._arrows:
        if name not in images:
            raise NotAntiinvolution(f"no image for arrow {name!r}")
        gen_img[("a", name)] = path_element(A, images[name])
    imgs = {}
    for i, b in enumerate(A.basis):
        if b.degree == 0:
            v = A.labels[b.right]
            imgs[i] = gen_img[("v", v)]
            continue
        arr = b.name.split("*")
        acc = gen_img[("a", arr[0])]
        for a in arr[1:]:
            acc = A.multiply(acc, gen_img[("a", a)])
        imgs[i] = acc
    return Involution(A, imgs)


# ---------------------------------------------------------------------------
# convenience helpers


def multiply(A: GradedAlgebra, a: dict, b: dict) -> dict:
    return A.multiply(a, b)


def peirce_dims(A: GradedAlgebra):
    return A.peirce_dims()
