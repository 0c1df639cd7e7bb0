"""Graded left modules over a :class:`GradedAlgebra`, materialised degreewise.

Every module knows ``lo`` (nothing below), ``complete_to`` (dimensions and
action are exact through this degree) and ``top`` (last nonzero degree when the
module is certified finite dimensional, otherwise ``INF``).  ``act(b, n)``
returns the matrix of basis element ``b`` from degree ``n`` to ``n + deg b`` as
a list of rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import Subspace, kernel_vectors, matvec, rank_rows
from .galgebra import AboveHorizon, GradedAlgebra
from .laurent import INF, LaurentPoly


class ModuleError(ValueError):
    pass


class NotASubmodule(ModuleError):
    def __init__(self, degree, generator=None):
        super().__init__(f"not closed under the action (degree {degree}, generator {generator})")
        self.degree = degree
        self.generator = generator


class HorizonTooLow(ModuleError):
    pass


def _zero_mat(r, c):
    return [[0] * c for _ in range(r)]


def _apply(M, v, F):
    if not M:
        return []
    return matvec(M, v, F)


class GradedModule:
    def __init__(self, A: GradedAlgebra, lo: int, complete_to, top=INF):
        self.A = A
        self.F = A.field
        self.lo = lo
        self.complete_to = complete_to
        self.top = top
        self._act_cache = {}
        self._dim_cache = {}

    # subclasses implement _dim(n) and _act(b, n)
    @property
    def finite(self) -> bool:
        return self.top != INF

    @property
    def last(self):
        """Last degree that can be listed exactly."""
        return self.top if self.finite else self.complete_to

    def degrees(self):
        if self.last == INF:
            raise HorizonTooLow("module has no finite horizon")
        return range(self.lo, int(self.last) + 1)

    def dim(self, n: int) -> int:
        if n < self.lo or n > self.top:
            return 0
        if n > self.complete_to:
            raise AboveHorizon(n)
        d = self._dim_cache.get(n)
        if d is None:
            d = self._dim_cache[n] = self._dim(n)
        return d

    def dim_q(self) -> LaurentPoly:
        return LaurentPoly({n: self.dim(n) for n in self.degrees()},
                           INF if self.finite else self.complete_to)

    def act(self, b: int, n: int):
        d = self.A.basis[b].degree
        key = (b, n)
        M = self._act_cache.get(key)
        if M is None:
            if n + d > self.complete_to and self.dim(n) and n + d <= self.top:
                raise AboveHorizon(n + d)
            rows, cols = self.dim(n + d), self.dim(n)
            if rows == 0 or cols == 0:
                M = _zero_mat(rows, cols)
            else:
                M = self._act(b, n)
            self._act_cache[key] = M
        return M

    def act_elem(self, elem: dict, n: int):
        """Matrix of a homogeneous algebra element."""
        if not elem:
            raise ValueError("zero element has no degree")
        d = self.A.degree_of(elem)
        rows, cols = self.dim(n + d), self.dim(n)
        out = _zero_mat(rows, cols)
        F = self.F
        for b, c in elem.items():
            M = self.act(b, n)
            for r in range(rows):
                row, orow = M[r], out[r]
                for j in range(cols):
                    if row[j]:
                        orow[j] += c * row[j]
        return [[F.norm(x) for x in r] for r in out]

    def apply(self, elem: dict, n: int, v):
        if not elem:
            return None
        return _apply(self.act_elem(elem, n), v, self.F)

    def apply_basis(self, b: int, n: int, v):
        return _apply(self.act(b, n), v, self.F)

    def idem_image(self, label, n: int) -> Subspace:
        """e_label V_n as a subspace of V_n."""
        e = self.A.idempotent(label)
        M = self.act_elem(e, n)
        return Subspace(self.dim(n), self.F, [list(c) for c in zip(*M)] if M else [])

    def presentation(self):
        """(free module, relation generators) when known exactly, else None."""
        return None


# ---------------------------------------------------------------------------
# free modules


class FreeModule(GradedModule):
    """Direct sum of shifted projectives: sum over k of q^{shift_k} A e_{slot_k}."""

    def __init__(self, A: GradedAlgebra, summands):
        self.summands = [(int(s), int(t)) for s, t in summands]
        shifts = [t for _, t in self.summands] or [0]
        lo = A.w_lo + min(shifts)
        if A.finite:
            top = A.top + max(shifts)
            complete = INF
        else:
            top = INF
            complete = A.horizon + min(shifts)
        super().__init__(A, lo, complete, top)
        self._basis = {}

    def basis_at(self, n: int):
        B = self._basis.get(n)
        if B is None:
            B = []
            for k, (s, t) in enumerate(self.summands):
                for i in self.A.by_degree.get(n - t, ()):
                    if self.A.basis[i].right == s:
                        B.append((k, i))
            self._basis[n] = (B, {x: p for p, x in enumerate(B)})
            B = self._basis[n]
        return B

    def _dim(self, n):
        return len(self.basis_at(n)[0])

    def _act(self, b, n):
        A = self.A
        d = A.basis[b].degree
        src, _ = self.basis_at(n)
        _, tpos = self.basis_at(n + d)
        M = _zero_mat(len(tpos), len(src))
        for c, (k, i) in enumerate(src):
            for j, x in A.mul_basis(b, i).items():
                M[tpos[(k, j)]][c] = x
        return M

    def generator(self, k: int):
        """(degree, vector) of the k-th free generator e_slot in degree shift_k."""
        s, t = self.summands[k]
        e = self.A.slot_idem[s]
        _, pos = self.basis_at(t)
        v = [0] * self.dim(t)
        for i, c in e.items():
            v[pos[(k, i)]] = c
        return t, v

    def element_vector(self, k: int, elem: dict):
        """Vector of elem . e_k in the k-th summand."""
        n = self.A.degree_of(elem) + self.summands[k][1]
        _, pos = self.basis_at(n)
        v = [0] * self.dim(n)
        for i, c in elem.items():
            if (k, i) in pos:
                v[pos[(k, i)]] = c
        return n, v

    def presentation(self):
        return self, []


def projective(A: GradedAlgebra, label, shift: int = 0) -> FreeModule:
    P = FreeModule(A, [(A.slot(label), shift)])
    P.cover_label = label
    return P


def regular_module(A: GradedAlgebra) -> FreeModule:
    return FreeModule(A, [(s, 0) for s in range(len(A.slot_idem))])


# ---------------------------------------------------------------------------
# submodules and quotients


class SubModule(GradedModule):
    def __init__(self, parent: GradedModule, spaces: dict, complete_to, gens=None):
        top = parent.top
        super().__init__(parent.A, parent.lo, min(parent.complete_to, complete_to), top)
        self.parent = parent
        self.spaces = spaces
        self.gens = gens

    def space(self, n) -> Subspace:
        sp = self.spaces.get(n)
        if sp is None:
            if n > self.complete_to and n <= self.top:
                raise AboveHorizon(n)
            sp = Subspace(self.parent.dim(n) if n <= self.parent.last else 0, self.F)
        return sp

    def _dim(self, n):
        return self.space(n).dim

    def vectors(self, n):
        return [list(r) for r in self.space(n).rows]

    def _act(self, b, n):
        d = self.A.basis[b].degree
        src = self.space(n)
        tgt = self.space(n + d)
        P = self.parent.act(b, n)
        cols = []
        for row in src.rows:
            img = _apply(P, row, self.F)
            if not tgt.contains(img):
                raise NotASubmodule(n + d, self.A.basis[b].name)
            cols.append(tgt.coords(img))
        return [list(r) for r in zip(*cols)] if cols else _zero_mat(tgt.dim, 0)

    def verify(self):
        """Closure under every basis element within the horizon."""
        for n in self.degrees():
            for b, be in enumerate(self.A.basis):
                m = n + be.degree
                if m < self.lo or m > self.last or be.degree > self.A.horizon:
                    continue
                P = self.parent.act(b, n)
                tgt = self.space(m)
                for row in self.space(n).rows:
                    if not tgt.contains(_apply(P, row, self.F)):
                        raise NotASubmodule(m, be.name)
        return True


class QuotientModule(GradedModule):
    def __init__(self, parent: GradedModule, sub: SubModule):
        if sub.parent is not parent:
            raise ModuleError("submodule belongs to a different module")
        super().__init__(parent.A, parent.lo, min(parent.complete_to, sub.complete_to), parent.top)
        self.parent = parent
        self.sub = sub
        self._comp = {}
        if not self.finite:
            self._certify_finite()

    def comp(self, n):
        c = self._comp.get(n)
        if c is None:
            c = self._comp[n] = self.sub.space(n).complement()
        return c

    def _dim(self, n):
        return len(self.comp(n))

    def project(self, n, v):
        return self.sub.space(n).quotient_coords(v, self.comp(n))

    def lift(self, n, coords):
        v = [0] * self.parent.dim(n)
        for j, c in zip(self.comp(n), coords):
            v[j] = c
        return v

    def _act(self, b, n):
        d = self.A.basis[b].degree
        P = self.parent.act(b, n)
        comp_src = self.comp(n)
        sp_t, comp_t = self.sub.space(n + d), self.comp(n + d)
        cols = []
        for j in comp_src:
            img = [row[j] for row in P]
            cols.append(sp_t.quotient_coords(img, comp_t))
        return [list(r) for r in zip(*cols)] if cols else _zero_mat(len(comp_t), 0)

    def _certify_finite(self):
        # generated by the images of the parent's generators; with a
        # positively graded algebra generated in degrees <= D, D consecutive
        # zero degrees above the generators force everything above to vanish
        A = self.A
        pres = self.parent.presentation()
        if A.generators is None or pres is None or self.complete_to == INF:
            return
        gmax = max((t for _, t in pres[0].summands), default=self.lo)
        D = A.max_generator_degree()
        run = 0
        for n in range(self.lo, int(self.complete_to) + 1):
            if self.dim(n) == 0:
                run += 1
                if run >= D and n - D >= gmax:
                    self.top = n - D
                    self.complete_to = INF
                    return
            else:
                run = 0

    def presentation(self):
        pp = self.parent.presentation()
        if pp is None or pp[1] or self.sub.gens is None:
            return None
        return pp[0], list(self.sub.gens)


def submodule_generated(V: GradedModule, gens) -> SubModule:
    """Smallest submodule containing ``gens`` (a list of (degree, vector)).

    Quiver algebras close under idempotents and arrows degree by degree; table
    algebras take H.g for every basis element of H in one pass, which loses
    the part of the horizon reached only through degrees beyond the window.
    """
    A, F = V.A, V.F
    gens = [(n, list(v)) for n, v in gens if any(v)]
    by_deg: dict[int, list] = {}
    for n, v in gens:
        by_deg.setdefault(n, []).append(v)
    last = V.last
    spaces = {}
    if A.generators is not None and A.w_lo >= 0:
        idems = A.slot_idem
        arrows = [(g, A.degree_of(g)) for g in A.radical_gens]
        if last == INF:
            raise HorizonTooLow("cannot close a submodule of a module without horizon")
        start = min(by_deg, default=V.lo)
        for n in range(max(V.lo, start), int(last) + 1):
            vecs = list(by_deg.get(n, []))
            for g, d in arrows:
                prev = spaces.get(n - d)
                if prev is not None and prev.dim:
                    M = V.act_elem(g, n - d)
                    vecs.extend(_apply(M, r, F) for r in prev.rows)
            sp = Subspace(V.dim(n), F, vecs)
            if sp.dim and len(idems) > 1:
                ext = []
                for e in idems:
                    M = V.act_elem(e, n)
                    ext.extend(_apply(M, r, F) for r in sp.rows)
                sp = Subspace(V.dim(n), F, ext)
            spaces[n] = sp
        complete = V.complete_to
    else:
        hz = A.horizon
        mmin = min(by_deg, default=V.lo)
        complete = V.complete_to if hz == INF or not by_deg else min(V.complete_to, mmin + hz)
        stop = last if last != INF else complete
        vecs: dict[int, list] = {}
        for m, vs in by_deg.items():
            for b, be in enumerate(A.basis):
                n = m + be.degree
                if n < V.lo or n > stop:
                    continue
                M = V.act(b, m)
                for v in vs:
                    w = _apply(M, v, F)
                    if any(w):
                        vecs.setdefault(n, []).append(w)
        for n in range(V.lo, int(stop) + 1):
            spaces[n] = Subspace(V.dim(n), F, vecs.get(n, []))
    return SubModule(V, spaces, complete, gens)


def quotient_module(V: GradedModule, S: SubModule):
    """(V/S, projection V -> V/S); raises NotASubmodule if S is not closed."""
    S.verify()
    Q = QuotientModule(V, S)
    proj = ModuleMap(V, Q, 0, lambda n: _projection_matrix(Q, n))
    return Q, proj


def _projection_matrix(Q: QuotientModule, n: int):
    d = Q.parent.dim(n)
    cols = [Q.project(n, [1 if i == j else 0 for i in range(d)]) for j in range(d)]
    return [list(r) for r in zip(*cols)] if cols and Q.dim(n) else _zero_mat(Q.dim(n), d)


def quotient_by(V: GradedModule, gens) -> QuotientModule:
    return QuotientModule(V, submodule_generated(V, gens))


def radical_submodule(V: GradedModule) -> SubModule:
    """N.V, using N = sum of g.H over the algebra's radical generators."""
    A, F = V.A, V.F
    rg = [(g, A.degree_of(g)) for g in A.radical_gens]
    complete = V.complete_to
    if A.generators is None:
        rmin = min((d for _, d in rg), default=0)
        complete = complete - max(0, -rmin)
        if A.horizon != INF:
            complete = min(complete, A.horizon + V.lo)
    last = V.top if V.finite else complete
    if last == INF:
        raise HorizonTooLow("module has no finite horizon")
    spaces = {}
    for n in range(V.lo, int(last) + 1):
        vecs = []
        for g, d in rg:
            m = n - d
            if m < V.lo or m > V.last:
                continue
            M = V.act_elem(g, m)
            for c in zip(*M) if M and M[0] else ():
                if any(c):
                    vecs.append(list(c))
        spaces[n] = Subspace(V.dim(n), F, vecs)
    return SubModule(V, spaces, complete)


@dataclass
class HeadGenerator:
    degree: int
    vector: list
    label: object


def gen_top(V: GradedModule, upto=None):
    """Minimal homogeneous generators, each in e_label V for a designated idempotent.

    Returns (generators, horizon): the list is complete through ``horizon``.
    """
    R = radical_submodule(V)
    last = V.top if V.finite else R.complete_to
    if upto is not None:
        last = min(last, upto)
    out = []
    for n in range(V.lo, int(last) + 1) if last != INF else ():
        if V.dim(n) == 0:
            continue
        cur = R.space(n)
        if cur.dim == V.dim(n):
            continue
        for lab in V.A.labels:
            for v in V.idem_image(lab, n).rows:
                if not cur.contains(v):
                    cur = cur.extended([v])
                    out.append(HeadGenerator(n, list(v), lab))
    horizon = INF if V.finite else R.complete_to
    return out, horizon


def head_multiplicities(V: GradedModule):
    """{label: LaurentPoly} of simple head multiplicities."""
    gens, hz = gen_top(V)
    out = {lab: {} for lab in V.A.labels}
    for g in gens:
        out[g.label][g.degree] = out[g.label].get(g.degree, 0) + 1
    return {lab: LaurentPoly(c, hz) for lab, c in out.items()}


# ---------------------------------------------------------------------------
# maps


class ModuleMap:
    """Degree-``shift`` module map given by images of free generators of a presentation."""

    def __init__(self, src: GradedModule, tgt: GradedModule, shift: int, matrix_fn):
        self.src, self.tgt, self.shift = src, tgt, shift
        self._fn = matrix_fn
        self._cache = {}

    def matrix(self, n):
        M = self._cache.get(n)
        if M is None:
            M = self._cache[n] = self._fn(n)
        return M

    def __call__(self, n, v):
        return _apply(self.matrix(n), v, self.src.F)

    def is_zero(self):
        return all(not any(any(r) for r in self.matrix(n)) for n in self.src.degrees())


def free_map(P: FreeModule, W: GradedModule, images, shift: int = 0) -> ModuleMap:
    """Map P -> W sending generator k to images[k] (a vector of W in degree shift_k + shift)."""
    A, F = P.A, P.F

    def fn(n):
        src, _ = P.basis_at(n)
        rows = W.dim(n + shift)
        cols = []
        for k, i in src:
            t = P.summands[k][1] + shift
            M = W.act(i, t)
            cols.append(_apply(M, images[k], F) if rows else [])
        if not cols:
            return _zero_mat(rows, 0)
        return [list(r) for r in zip(*cols)] if rows else []

    return ModuleMap(P, W, shift, fn)


def map_kernel(f: ModuleMap) -> SubModule:
    V = f.src
    complete = min(V.complete_to, f.tgt.complete_to - f.shift)
    last = V.top if V.finite else complete
    spaces = {}
    for n in range(V.lo, int(last) + 1):
        M = f.matrix(n)
        d = V.dim(n)
        if not M:
            spaces[n] = Subspace(d, V.F, [[1 if i == j else 0 for j in range(d)] for i in range(d)])
        else:
            spaces[n] = Subspace(d, V.F, kernel_vectors(M, d, V.F))
    return SubModule(V, spaces, complete)


def map_image(f: ModuleMap) -> SubModule:
    W = f.tgt
    V = f.src
    complete = min(W.complete_to, V.complete_to + f.shift)
    last = W.top if W.finite else complete
    spaces = {}
    for m in range(W.lo, int(last) + 1):
        n = m - f.shift
        M = f.matrix(n) if V.lo <= n <= V.last else []
        cols = [list(c) for c in zip(*M)] if M and M[0] else []
        spaces[m] = Subspace(W.dim(m), W.F, cols)
    return SubModule(W, spaces, complete)


def projective_cover(V: GradedModule):
    """(P, map P -> V, generators) for a minimal generating set of V."""
    gens, hz = gen_top(V)
    P = FreeModule(V.A, [(V.A.slot(g.label), g.degree) for g in gens])
    f = free_map(P, V, [g.vector for g in gens])
    return P, f, gens, hz


def simple(A: GradedAlgebra, label, shift: int = 0) -> QuotientModule:
    P = projective(A, label, shift)
    return QuotientModule(P, radical_submodule(P))


# ---------------------------------------------------------------------------
# Hom


@dataclass
class HomSpace:
    dims: LaurentPoly
    basis: dict  # degree -> list of generator-image tuples
    free: FreeModule
    relations: list = field(default_factory=list)

    def maps(self, W, deg):
        return [free_map(self.free, W, list(imgs), deg) for imgs in self.basis.get(deg, [])]


def _relations_for(V: GradedModule):
    """(free module, relations, R): every relation needed has degree <= R.

    R is INF when the relation list is certified complete.  A finite
    dimensional module over a quiver algebra generated in degrees <= D only
    needs relations up to degree top + D.
    """
    A = V.A
    bound = None
    if V.finite and A.generators is not None and A.w_lo >= 0:
        bound = V.top + A.max_generator_degree()
    pres = V.presentation()
    if pres is not None:
        P, rels = pres
        known = V.sub.complete_to if isinstance(V, QuotientModule) else INF
        if known == INF:
            return P, rels, INF
        if bound is not None and known >= bound:
            return P, [(m, v) for m, v in rels if m <= bound], INF
        return P, rels, known
    P, f, gens, hz = projective_cover(V)
    K = map_kernel(f)
    kg, khz = gen_top(K, upto=bound)
    if bound is not None and khz >= bound:
        R = INF
    else:
        R = khz
    return P, [(g.degree, g.vector) for g in kg], R


def hom_all(V: GradedModule, W: GradedModule) -> HomSpace:
    """Homogeneous module maps V -> W in every degree.

    Uses a presentation of V: a map is a choice of images of the free
    generators in e_label W that kills every relation.  When the relations
    are only known through degree R and W stops at degree t, the answer is
    exact in degrees >= t - R.
    """
    P, rels, R = _relations_for(V)
    if R != INF and not W.finite:
        raise HorizonTooLow("relations of V are not certified and W has no top degree")
    shifts = [t for _, t in P.summands]
    if not shifts:
        return HomSpace(LaurentPoly({}), {}, P, rels)
    lo = W.lo - max(shifts)
    vf = -INF
    if W.finite:
        hi = W.top - min(shifts)
        vt = INF
        if R != INF:
            vf = W.top - R
            lo = max(lo, vf)
    else:
        rel_deg = max([m for m, _ in rels], default=max(shifts))
        hi = int(W.complete_to) - max(max(shifts), rel_deg)
        vt = hi
    dims, basis = {}, {}
    for deg in range(lo, hi + 1):
        sol = _hom_degree(P, rels, W, deg)
        if sol:
            dims[deg] = len(sol)
            basis[deg] = sol
    return HomSpace(LaurentPoly(dims, vt, vf), basis, P, rels)


def hom_space(V: GradedModule, W: GradedModule, n: int):
    """Basis of the degree-n module maps V -> W (maps V_m -> W_{m+n})."""
    P, rels, R = _relations_for(V)
    shifts = [t for _, t in P.summands]
    if R != INF and (not W.finite or n < W.top - R):
        raise HorizonTooLow(f"relations of V known only through degree {R}")
    need = max(shifts + [m for m, _ in rels], default=0) + n
    if need > W.last:
        raise HorizonTooLow(f"target needed through degree {need}")
    out = []
    for imgs in _hom_degree(P, rels, W, n):
        out.append(_descend(V, P, free_map(P, W, list(imgs), n)))
    return out


def _descend(V, P, f: ModuleMap) -> ModuleMap:
    """Turn a map out of the free module of V's presentation into a map out of V."""
    if V is P:
        return f

    def fn(m):
        M = f.matrix(m)
        comp = V.comp(m)
        if not M:
            return M
        return [[row[j] for j in comp] for row in M]

    g = ModuleMap(V, f.tgt, f.shift, fn)
    g.images = f
    return g


def _hom_degree(P: FreeModule, rels, W: GradedModule, deg: int):
    F = P.F
    A = P.A
    blocks = []  # (k, basis vectors of e_k W_{t+deg})
    offset = 0
    for k, (s, t) in enumerate(P.summands):
        n = t + deg
        if n < W.lo or n > W.last:
            blocks.append((k, n, [], offset))
            continue
        M = W.act_elem(A.slot_idem[s], n)
        sp = Subspace(W.dim(n), F, [list(c) for c in zip(*M)] if M and M[0] else [])
        blocks.append((k, n, sp.rows, offset))
        offset += sp.dim
    nvar = offset
    if nvar == 0:
        return []
    eqs = []
    for m, rvec in rels:
        tdeg = m + deg
        if tdeg < W.lo or tdeg > W.last or not W.dim(tdeg):
            continue
        src, _ = P.basis_at(m)
        cols = [[0] * W.dim(tdeg) for _ in range(nvar)]
        for c, x in enumerate(rvec):
            if not x:
                continue
            k, i = src[c]
            _, n, rows, off = blocks[k]
            if not rows:
                continue
            M = W.act(i, n)
            for r, w in enumerate(rows):
                img = _apply(M, w, F)
                col = cols[off + r]
                for j, y in enumerate(img):
                    if y:
                        col[j] = F.norm(col[j] + x * y)
        eqs.extend(list(r) for r in zip(*cols))
    sols = kernel_vectors(eqs, nvar, F) if eqs else [[1 if i == j else 0 for j in range(nvar)] for i in range(nvar)]
    out = []
    for s in sols:
        imgs = []
        for k, n, rows, off in blocks:
            dim = W.dim(n) if W.lo <= n <= W.last else 0
            v = [0] * dim
            for r, w in enumerate(rows):
                c = s[off + r]
                if c:
                    for j, y in enumerate(w):
                        if y:
                            v[j] = F.norm(v[j] + c * y)
            imgs.append(v)
        out.append(tuple(imgs))
    return out


def equivariant_maps(V: GradedModule, W: GradedModule, deg: int) -> int:
    """Dimension of degree-``deg`` module maps by brute force over all degreewise matrices.

    Independent of presentations; V must be finite dimensional and W known on
    the target degrees.
    """
    if not V.finite:
        raise HorizonTooLow("brute-force Hom needs a finite-dimensional source")
    A, F = V.A, V.F
    degs = [n for n in V.degrees() if V.dim(n)]
    offs, nvar = {}, 0
    for n in degs:
        m = n + deg
        wd = W.dim(m) if W.lo <= m <= W.last else 0
        if m > W.last and not W.finite:
            raise HorizonTooLow(f"target degree {m} above horizon")
        offs[n] = (nvar, wd)
        nvar += wd * V.dim(n)
    if nvar == 0:
        return 0
    eqs = []
    for n in degs:
        for b, be in enumerate(A.basis):
            d = be.degree
            m = n + d
            if m not in offs and not (V.lo <= m <= V.last):
                # V_{n+d} = 0: still need b X_n = 0
                pass
            if d > A.horizon:
                continue
            vd = V.dim(m) if V.lo <= m <= V.last else 0
            wdn = offs[n][1]
            wdm = W.dim(m + deg) if W.lo <= m + deg <= W.last else 0
            if wdm == 0:
                continue
            Wb = W.act(b, n + deg) if wdn else None
            Vb = V.act(b, n) if vd else None
            # (W_b X_n - X_m V_b)[r][c] = 0
            o_n = offs[n][0]
            vdim = V.dim(n)
            for r in range(wdm):
                for c in range(vdim):
                    eq = [0] * nvar
                    if Wb:
                        for k in range(wdn):
                            x = Wb[r][k]
                            if x:
                                eq[o_n + k * vdim + c] += x
                    if Vb:
                        o_m = offs[m][0]
                        for k in range(vd):
                            x = Vb[k][c]
                            if x:
                                eq[o_m + r * vd + k] -= x
                    if any(eq):
                        eqs.append([F.norm(e) for e in eq])
    if not eqs:
        return nvar
    return nvar - rank_rows(eqs, nvar, F)


# ---------------------------------------------------------------------------
# multiplicities, truncation, duals, socles


def graded_multiplicity(V: GradedModule, label) -> LaurentPoly:
    """[V : L(label)]_q = dim_q e_label V (split primitive idempotents)."""
    degs = V.degrees()
    c = {n: V.idem_image(label, n).dim for n in degs}
    return LaurentPoly(c, INF if V.finite else V.complete_to)


def truncate_sigma(V: GradedModule, keep):
    """(O, Q): O is generated by e_s V for slots outside ``keep``; Q = V/O."""
    A = V.A
    keep = set(keep)
    gens = []
    for n in V.degrees():
        if not V.dim(n):
            continue
        for s, lab in enumerate(A.slot_class):
            if lab in keep:
                continue
            M = V.act_elem(A.slot_idem[s], n)
            for c in zip(*M) if M and M[0] else ():
                if any(c):
                    gens.append((n, list(c)))
    S = submodule_generated(V, gens)
    return S, QuotientModule(V, S)


class DualModule(GradedModule):
    """Graded dual (V*)_n = (V_{-n})* with h.f = f(tau(h) -)."""

    def __init__(self, V: GradedModule, tau):
        if not V.finite:
            raise HorizonTooLow("graded dual needs a finite-dimensional module")
        super().__init__(V.A, -V.top, INF, -V.lo)
        self.V = V
        self.tau = tau

    def _dim(self, n):
        return self.V.dim(-n)

    def _act(self, b, n):
        d = self.A.basis[b].degree
        img = self.tau({b: 1})
        if not img:
            return _zero_mat(self.dim(n + d), self.dim(n))
        M = self.V.act_elem(img, -n - d)  # V_{-n-d} -> V_{-n}
        return [list(r) for r in zip(*M)] if M and M[0] else _zero_mat(self.dim(n + d), self.dim(n))


def dual(V: GradedModule, tau) -> DualModule:
    return DualModule(V, tau)


def socle(V: GradedModule) -> SubModule:
    """{v : N v = 0} for a finite-dimensional module."""
    if not V.finite:
        raise HorizonTooLow("socle needs a finite-dimensional module")
    A, F = V.A, V.F
    rg = [(g, A.degree_of(g)) for g in A.radical_gens]
    spaces = {}
    for n in V.degrees():
        d0 = V.dim(n)
        eqs = []
        for g, d in rg:
            m = n + d
            if V.lo <= m <= V.top and V.dim(m):
                eqs.extend(V.act_elem(g, n))
        vecs = kernel_vectors(eqs, d0, F) if eqs else [[1 if i == j else 0 for j in range(d0)] for i in range(d0)]
        spaces[n] = Subspace(d0, F, vecs)
    return SubModule(V, spaces, INF)


def dim_q(V: GradedModule) -> LaurentPoly:
    return V.dim_q()
