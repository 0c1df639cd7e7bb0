"""Standard modules, the highest-weight axioms, heredity chains and friends.

Everything is computed degree by degree inside the algebra's window; each
verdict carries the degree through which it is certified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactlin import Subspace, kernel_vectors, rank_rows
from .galgebra import AboveHorizon, GradedAlgebra, Involution
from .gmodule import (FreeModule, GradedModule, HorizonTooLow, QuotientModule, SubModule,
                      dual, equivariant_maps, free_map, gen_top, graded_multiplicity,
                      hom_all, map_kernel, projective, projective_cover,
                      radical_submodule, simple, socle, submodule_generated, truncate_sigma)
from .laurent import INF, LaurentPoly, NotDivisible

CLASSES = ("F", "connected", "polynomial", "any")


class OrderError(ValueError):
    pass


class NotBalanced(ValueError):
    pass


class NotTauInvariant(ValueError):
    pass


class CharacteristicTwo(ValueError):
    pass


def _hz(*vals):
    out = INF
    for v in vals:
        if v is not None:
            out = min(out, v)
    return out


def hz_json(h):
    return None if h == INF else int(h)


@dataclass
class Verdict:
    passed: bool
    witness: str | None = None
    horizon: float = INF
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"passed": self.passed, "witness": self.witness, "horizon": hz_json(self.horizon)}


# ---------------------------------------------------------------------------
# orders


class OrderSpec:
    """A partial order on the labels, given by cover pairs (lo, hi) meaning lo < hi."""

    def __init__(self, labels, covers=()):
        self.labels = list(labels)
        idx = {p: k for k, p in enumerate(self.labels)}
        up = {p: set() for p in self.labels}
        for lo, hi in covers:
            if lo not in idx or hi not in idx:
                raise OrderError(f"cover ({lo}, {hi}) uses an unknown label")
            if lo == hi:
                raise OrderError(f"cover ({lo}, {hi}) is reflexive")
            up[lo].add(hi)
        # transitive closure; a cycle shows up as p > p
        greater = {}
        for p in self.labels:
            seen, stack = set(), list(up[p])
            while stack:
                x = stack.pop()
                if x not in seen:
                    seen.add(x)
                    stack.extend(up[x])
            if p in seen:
                raise OrderError(f"order relation has a cycle through {p}")
            greater[p] = seen
        self.covers = [tuple(c) for c in covers]
        self._greater = greater

    @classmethod
    def total(cls, increasing):
        inc = list(increasing)
        return cls(inc, list(zip(inc, inc[1:])))

    def lt(self, a, b) -> bool:
        return b in self._greater[a]

    def le(self, a, b) -> bool:
        return a == b or self.lt(a, b)

    def below(self, p):
        return [s for s in self.labels if self.le(s, p)]

    def strictly_below(self, p):
        return [s for s in self.labels if self.lt(s, p)]

    def above(self, p):
        return [s for s in self.labels if self.le(p, s)]

    def length(self, subset) -> int:
        """Longest chain s0 < s1 < ... < sl inside subset (returns l)."""
        sub = list(subset)
        best = {}
        for p in sorted(sub, key=lambda x: len(self._greater[x])):
            best[p] = max([best[s] + 1 for s in sub if s in best and self.lt(p, s)], default=0)
        return max(best.values(), default=0)

    def minimal(self, subset):
        sub = list(subset)
        return [p for p in sub if not any(self.lt(s, p) for s in sub)]

    def linear_extension(self):
        """Increasing order compatible with <, ties broken by declaration order."""
        out, left = [], list(self.labels)
        while left:
            p = next(x for x in left if not any(self.lt(y, x) for y in left if y != x))
            out.append(p)
            left.remove(p)
        return out

    def to_json(self):
        return {"labels": self.labels, "covers": [list(c) for c in self.covers]}


# ---------------------------------------------------------------------------
# endomorphism algebras


class EndoAlgebra:
    """A graded algebra given by degreewise subspaces of an ambient space and a product.

    ``mul(n, x, m, y)`` multiplies a degree-n vector by a degree-m vector and
    returns an ambient vector of degree n + m.
    """

    def __init__(self, label, spaces: dict, mul, horizon, F, lo=0):
        self.label = label
        self.spaces = spaces
        self._mul = mul
        self.horizon = horizon
        self.F = F
        self.lo = lo

    @property
    def last(self):
        return max(self.spaces) if self.spaces else 0

    def dim(self, n):
        sp = self.spaces.get(n)
        return sp.dim if sp is not None else 0

    def basis(self, n):
        sp = self.spaces.get(n)
        return [list(r) for r in sp.rows] if sp is not None else []

    def dims(self) -> LaurentPoly:
        return LaurentPoly({n: sp.dim for n, sp in self.spaces.items()}, self.horizon)

    def mul(self, n, x, m, y):
        return self._mul(n, x, m, y)

    def connected(self) -> Verdict:
        for n, sp in sorted(self.spaces.items()):
            if n < 0 and sp.dim:
                return Verdict(False, f"B has elements in negative degree {n}", self.horizon)
        if self.dim(0) != 1:
            return Verdict(False, f"degree-0 part of B has dimension {self.dim(0)}", self.horizon)
        return Verdict(True, None, self.horizon)

    def commutative(self) -> Verdict:
        F = self.F
        for n in sorted(self.spaces):
            for m in sorted(self.spaces):
                if m < n or n + m > self.last:
                    continue
                for x in self.basis(n):
                    for y in self.basis(m):
                        a = self.mul(n, x, m, y)
                        b = self.mul(m, y, n, x)
                        if any(F.norm(u - v) for u, v in zip(a, b)):
                            return Verdict(False, f"B is not commutative in degrees {n}, {m}", self.horizon)
        return Verdict(True, None, self.horizon)

    def radical_squared(self, n) -> Subspace:
        vecs = []
        for a in range(1, n):
            for x in self.basis(a):
                for y in self.basis(n - a):
                    vecs.append(self.mul(a, x, n - a, y))
        amb = self.spaces[n].n if n in self.spaces else 0
        return Subspace(amb, self.F, vecs)

    def generator_degrees(self):
        """Degrees of a minimal generating set of B_{>0} (connected B), within the window."""
        out = []
        for n in sorted(self.spaces):
            if n <= 0:
                continue
            extra = self.dim(n) - self.radical_squared(n).dim
            out.extend([n] * extra)
        return out

    def polynomial(self) -> Verdict:
        c = self.connected()
        if not c:
            return c
        comm = self.commutative()
        if not comm:
            return comm
        degs = self.generator_degrees()
        # a finite B must vanish where the polynomial ring does not
        top = self.last + max(degs, default=0) if self.horizon == INF else self.horizon
        series = {0: 1}
        for d in degs:
            nxt = dict(series)
            for n in range(d, int(top) + 1):
                nxt[n] = nxt.get(n, 0) + nxt.get(n - d, 0)
            series = nxt
        for n in range(0, int(top) + 1):
            if series.get(n, 0) != self.dim(n):
                return Verdict(False, f"Hilbert series of B differs from the polynomial ring on "
                                      f"generators of degrees {degs} in degree {n}", self.horizon,
                               {"generator_degrees": degs})
        return Verdict(True, None, self.horizon, {"generator_degrees": degs})

    def membership(self, cls) -> Verdict:
        if cls not in CLASSES:
            raise ValueError(f"unknown class {cls!r}")
        if cls == "any":
            return Verdict(True, None, self.horizon)
        if cls == "connected":
            return self.connected()
        if cls == "F":
            bad = [n for n in self.spaces if n != 0 and self.dim(n)]
            if self.dim(0) != 1 or bad:
                return Verdict(False, f"B is not the ground field (dim_q B = {self.dims()})", self.horizon)
            return Verdict(True, None, self.horizon)
        return self.polynomial()

    def to_json(self):
        return {"dim_q": self.dims().to_json()}


def class_membership(B: EndoAlgebra, cls) -> Verdict:
    return B.membership(cls)


def _corner_algebra(A: GradedAlgebra, label) -> EndoAlgebra:
    """e A e for the designated idempotent of label, as an EndoAlgebra in algebra coordinates."""
    s = A.slot(label)
    F = A.field
    spaces = {}
    for n in sorted(A.by_degree):
        idx = A.by_degree[n]
        vecs = []
        for p, i in enumerate(idx):
            b = A.basis[i]
            if b.left == s and b.right == s:
                v = [0] * len(idx)
                v[p] = 1
                vecs.append(v)
        if vecs:
            spaces[n] = Subspace(len(idx), F, vecs)

    def mul(n, x, m, y):
        prod = A.multiply(A.from_dense(x, n), A.from_dense(y, m))
        return A.to_dense(prod, n + m)

    return EndoAlgebra(label, spaces, mul, A.horizon, F, A.w_lo)


# ---------------------------------------------------------------------------
# free rank over a connected algebra


def _unit_rows(n):
    return [[1 if j == i else 0 for j in range(n)] for i in range(n)]


@dataclass
class RankResult:
    rank: LaurentPoly
    generators: list
    free: Verdict
    fgen: Verdict


def _rank_over(B: EndoAlgebra, M: dict, act, amb_dim, horizon) -> RankResult:
    """Graded rank and freeness of M (degree -> Subspace) over connected B.

    ``act(n, m, k, b)`` is the module action of b in B_k on m in M_n.
    """
    F = B.F
    degs = sorted(n for n, sp in M.items() if sp.dim)
    gens = []
    rank = {}
    first_bad = None
    # injectivity must also hold where M vanishes but generator.B does not
    top = horizon if horizon != INF else (degs[-1] + B.last if degs else 0)
    for n in range(degs[0] if degs else 0, int(top) + 1):
        if n not in M:
            M = {**M, n: Subspace(amb_dim(n), F)}
        vecs = []
        for a in degs:
            if a >= n:
                break
            for b in B.basis(n - a):
                for m in M[a].rows:
                    vecs.append(act(a, m, n - a, b))
        MN = Subspace(amb_dim(n), F, vecs)
        cur = MN
        for m in M[n].rows:
            if not cur.contains(m):
                cur = cur.extended([m])
                gens.append((n, list(m)))
                rank[n] = rank.get(n, 0) + 1
        # the map sum_i q^{d_i} B -> M in degree n
        cols = []
        for d, g in gens:
            for b in B.basis(n - d):
                cols.append(act(d, g, n - d, b))
        r = rank_rows(cols, amb_dim(n), F) if cols else 0
        if first_bad is None and (r != len(cols) or r != M[n].dim):
            first_bad = (n, "not injective" if r != len(cols) else "not surjective")
    rk = LaurentPoly(rank, horizon)
    if first_bad is None:
        free = Verdict(True, None, horizon, {"rank": rk})
    else:
        free = Verdict(False, f"free-module map {first_bad[1]} in degree {first_bad[0]}", horizon,
                       {"rank": rk})
    fgen = Verdict(True, None, horizon, {"generators_through": hz_json(horizon)})
    return RankResult(rk, gens, free, fgen)


# ---------------------------------------------------------------------------
# engine


@dataclass
class Filtration:
    factors: list  # (shift, label), top-down
    passed: bool
    witness: str | None
    horizon: float

    def multiplicities(self, labels):
        out = {p: {} for p in labels}
        for m, p in self.factors:
            out[p][m] = out[p].get(m, 0) + 1
        return {p: LaurentPoly(c, self.horizon) for p, c in out.items()}


@dataclass
class Layer:
    label: object
    ideal_dims: LaurentPoly
    multiplicity: LaurentPoly
    si1: Verdict
    si2: Verdict
    idempotent_ideal: Verdict
    freeness: Verdict
    sc2: Verdict
    algebra: GradedAlgebra = None
    spaces: dict = None
    horizon: float = INF

    @property
    def passed(self):
        return all(v.passed for v in (self.si1, self.si2, self.idempotent_ideal, self.freeness, self.sc2))

    def first_failure(self):
        for name, v in (("SI2", self.si2), ("SI1", self.si1), ("J^2=J", self.idempotent_ideal),
                        ("freeness", self.freeness), ("SC2", self.sc2)):
            if not v.passed:
                return name, v.witness
        return None

    def to_json(self):
        return {"label": self.label, "dim_q_J": self.ideal_dims.to_json(),
                "multiplicity": self.multiplicity.to_json(), "SI1": self.si1.to_json(),
                "SI2": self.si2.to_json(), "J2": self.idempotent_ideal.to_json(),
                "freeness": self.freeness.to_json(), "SC2": self.sc2.to_json()}


@dataclass
class HeredityChain:
    extension: list
    layers: list
    passed: bool
    witness: str | None
    horizon: float

    def __len__(self):
        return len(self.layers)

    def to_json(self):
        return {"extension": self.extension, "passed": self.passed, "witness": self.witness,
                "horizon": hz_json(self.horizon), "layers": [l.to_json() for l in self.layers]}


@dataclass
class StratReport:
    cls: str
    verdict: str
    passed: bool
    horizon: float
    per_pi: dict
    decomposition: list
    p_delta: list
    ranks: dict
    axioms: dict
    witnesses: list
    labels: list
    bgg: bool | None = None
    chain: list = field(default_factory=list)
    weak: bool = False

    def to_json(self):
        lp = lambda x: x.to_json() if isinstance(x, LaurentPoly) else x
        return {
            "verdict": self.verdict,
            "passed": self.passed,
            "weak": self.weak,
            "class": self.cls,
            "horizon": hz_json(self.horizon),
            "labels": self.labels,
            "per_pi": {str(p): {k: lp(v) for k, v in d.items()} for p, d in self.per_pi.items()},
            "decomposition": [[lp(x) for x in row] for row in self.decomposition],
            "p_delta": [[lp(x) for x in row] for row in self.p_delta],
            "ranks": {k: lp(v) for k, v in self.ranks.items()},
            "axioms": {k: v.to_json() for k, v in self.axioms.items()},
            "bgg": self.bgg,
            "chain": self.chain,
            "witnesses": self.witnesses,
        }


class Stratification:
    """Standard-module theory of an algebra with respect to an order."""

    def __init__(self, A: GradedAlgebra, order: OrderSpec, tau: Involution | None = None):
        if set(order.labels) != set(A.labels):
            raise OrderError(f"order labels {order.labels} differ from the algebra's {A.labels}")
        self.A = A
        self.order = order
        self.tau = tau
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def P(self, p) -> FreeModule:
        return self._memo(("P", p), lambda: projective(self.A, p))

    # standard objects
    def standard_module(self, p):
        """(Delta(p), K(p)) with K = O^{<=p}(P(p))."""
        def build():
            K, D = truncate_sigma(self.P(p), self.order.below(p))
            return D, K
        return self._memo(("D", p), build)

    def proper_standard(self, p) -> QuotientModule:
        """P(p) / O^{<p}(rad P(p))."""
        def build():
            P = self.P(p)
            R = radical_submodule(P)
            keep = set(self.order.strictly_below(p))
            A = self.A
            gens = []
            for n in R.degrees():
                if not R.dim(n):
                    continue
                for s, lab in enumerate(A.slot_class):
                    if lab in keep:
                        continue
                    M = P.act_elem(A.slot_idem[s], n)
                    for v in R.space(n).rows:
                        w = [sum(M[r][j] * v[j] for j in range(len(v))) for r in range(len(M))]
                        w = [self.A.field.norm(x) for x in w]
                        if any(w):
                            gens.append((n, w))
            S = submodule_generated(P, gens)
            return QuotientModule(P, S)
        return self._memo(("Dbar", p), build)

    def proper_standard_via_B(self, p) -> QuotientModule:
        """Delta(p) / Delta(p) N_p, realised as a quotient of P(p)."""
        def build():
            D, K = self.standard_module(p)
            P = self.P(p)
            A = self.A
            s = A.slot(p)
            gens = list(K.gens or [])
            rad = []
            for n in range(max(1, P.lo), int(P.last) + 1):
                sp = A.radical_space(n)
                for row in sp.rows:
                    e = A.from_dense(row, n)
                    e = {i: c for i, c in e.items() if A.basis[i].left == s and A.basis[i].right == s}
                    if e:
                        rad.append(P.element_vector(0, e))
            for n, sp in ((n, A.radical_space(n)) for n in range(P.lo, 1)):
                for row in sp.rows:
                    e = {i: c for i, c in A.from_dense(row, n).items()
                         if A.basis[i].left == s and A.basis[i].right == s}
                    if e:
                        rad.append(P.element_vector(0, e))
            S = submodule_generated(P, gens + rad)
            return QuotientModule(P, S)
        return self._memo(("DbarB", p), build)

    def endo_algebra(self, p) -> EndoAlgebra:
        """B_p = e_p Delta(p) with x*y = lift(x).y."""
        def build():
            D, _ = self.standard_module(p)
            A, F = self.A, self.A.field
            P = self.P(p)
            spaces = {n: D.idem_image(p, n) for n in D.degrees() if D.dim(n)}
            spaces = {n: sp for n, sp in spaces.items() if sp.dim}
            src_cache = {}

            def mul(n, x, m, y):
                lifted = D.lift(n, x)
                src = P.basis_at(n)[0]
                out = [0] * D.dim(n + m)
                for c, val in enumerate(lifted):
                    if val:
                        _, i = src[c]
                        img = D.apply_basis(i, m, y)
                        for j, z in enumerate(img):
                            if z:
                                out[j] += val * z
                return [F.norm(t) for t in out]

            return EndoAlgebra(p, spaces, mul, D.complete_to if not D.finite else INF, F)
        return self._memo(("B", p), build)

    def right_action(self, p):
        """(n, v, k, b) -> v.b for v in Delta(p)_n, b in B_p of degree k."""
        D, _ = self.standard_module(p)
        B = self.endo_algebra(p)

        def act(n, v, k, b):
            return B.mul(n, v, k, b)

        return act

    def free_rank_check(self, s, p) -> RankResult:
        """rank_q of e_s Delta(p) (all of Delta(p) when s is None) as a right B_p-module."""
        def build():
            D, _ = self.standard_module(p)
            B = self.endo_algebra(p)
            if s is None:
                M = {n: Subspace(D.dim(n), self.A.field, _unit_rows(D.dim(n)))
                     for n in D.degrees() if D.dim(n)}
            else:
                M = {n: D.idem_image(s, n) for n in D.degrees() if D.dim(n)}
            hz = D.complete_to if not D.finite else INF
            if not B.connected():
                v = Verdict(False, f"B_{p} is not connected", hz)
                return RankResult(LaurentPoly({}, hz), [], v, v)
            return _rank_over(B, M, self.right_action(p), D.dim, hz)
        return self._memo(("rank", s, p), build)

    # filtrations
    def delta_filtration(self, V: GradedModule, constraint=None) -> Filtration:
        """Peel minimal head labels: V -> sum q^m Delta(s) with kernel O^{<=s}(V)."""
        order = self.order
        factors = []
        cur = V
        seen = set()
        horizon = INF if V.finite else V.complete_to
        for _ in range(len(order.labels) + 1):
            heads, ghz = gen_top(cur)
            horizon = _hz(horizon, ghz, None if cur.finite else cur.complete_to)
            if not heads:
                if all(cur.dim(n) == 0 for n in cur.degrees() if n <= horizon):
                    return Filtration(factors, True, None, horizon)
                return Filtration(factors, False, "module has no head within the window", horizon)
            labels = [h.label for h in heads]
            cands = order.minimal(set(labels))
            sigma = next(x for x in order.labels if x in cands)
            if sigma in seen:
                return Filtration(factors, False,
                                  f"label {sigma} reappears in the head after it was peeled", horizon)
            seen.add(sigma)
            shifts = sorted(h.degree for h in heads if h.label == sigma)
            O, Q = truncate_sigma(cur, order.below(sigma))
            D, _ = self.standard_module(sigma)
            want = LaurentPoly({}, INF)
            for m in shifts:
                want = want + D.dim_q().shift(m)
            got = Q.dim_q()
            h = _hz(horizon, got.valid_to, want.valid_to)
            if not D.finite and Q.finite:
                return Filtration(factors, False,
                                  f"no surjection onto shifted Δ({sigma}): Δ({sigma}) is infinite "
                                  f"dimensional but the quotient is not", h)
            if h != INF:
                top = int(h)
            else:
                top = max(int(Q.last), want.degree() if want.degree() is not None else Q.lo)
            bot = min(Q.lo, want.lowdeg() if want.lowdeg() is not None else Q.lo)
            for n in range(bot, top + 1):
                if got.get(n, 0) != want.get(n, 0):
                    return Filtration(factors, False,
                                      f"no surjection onto shifted Δ({sigma}): the quotient has dimension "
                                      f"{got.get(n, 0)} instead of {want.get(n, 0)} in degree {n}", h)
            for m in shifts:
                if constraint is not None:
                    bad = constraint(sigma)
                    if bad:
                        factors.append((m, sigma))
                        return Filtration(factors, False, bad, h)
                factors.append((m, sigma))
            horizon = h
            cur = O
        return Filtration(factors, False, "filtration did not terminate", horizon)

    def grothendieck_multiplicities(self, V: GradedModule):
        """Solve [V] = sum (V:Delta(s)) [Delta(s)] by triangularity; None if it has no nonnegative solution."""
        lin = self.order.linear_extension()
        mult = {}
        for s in reversed(lin):
            rest = graded_multiplicity(V, s)
            for r in mult:
                if self.order.lt(s, r):
                    D, _ = self.standard_module(r)
                    rest = rest - mult[r] * graded_multiplicity(D, s)
            B = self.endo_algebra(s)
            try:
                m = rest.exact_divide(B.dims())
            except NotDivisible as e:
                return None, f"[V:L({s})] is not divisible by dim_q B_{s} (degree {e.degree})"
            if not m.is_nonnegative():
                return None, f"candidate multiplicity (V:Delta({s})) = {m} has a negative coefficient"
            mult[s] = m
        return mult, None

    # axioms
    def check_axioms(self, cls="polynomial") -> StratReport:
        A, order = self.A, self.order
        labels = order.labels
        witnesses = []
        axioms = {}
        per_pi = {}
        ranks = {}
        horizon = A.horizon
        sc1 = sc2 = hwc = fgen = True
        for p in labels:
            D, K = self.standard_module(p)
            B = self.endo_algebra(p)
            Db = self.proper_standard(p)
            horizon = _hz(horizon, None if D.finite else D.complete_to)

            def constraint(s, p=p):
                if order.lt(p, s):
                    return None
                rel = "<" if order.lt(s, p) else "incomparable to"
                return f"SC1 fails at π = {p}: factor Δ({s}) with {s} {rel} {p}"

            filt = self.delta_filtration(K, constraint)
            if not filt.passed:
                w = filt.witness if filt.witness.startswith("SC1") else f"SC1 fails at π = {p}: {filt.witness}"
                axioms[f"SC1:{p}"] = Verdict(False, w, filt.horizon)
                witnesses.append(w)
                sc1 = False
            else:
                axioms[f"SC1:{p}"] = Verdict(True, None, filt.horizon)
            mem = B.membership(cls)
            axioms[f"SC2:{p}"] = mem
            if not mem:
                w = f"SC2 fails at π = {p}: {mem.witness}"
                mem.witness = w
                witnesses.append(w)
                sc2 = False
            diag = graded_multiplicity(D, p)
            per_pi[p] = {
                "dim_q_delta": D.dim_q(),
                "dim_q_bar_delta": Db.dim_q(),
                "dim_q_B": B.dims(),
                "class": {"name": cls, "passed": mem.passed,
                          **({"generator_degrees": mem.detail["generator_degrees"]}
                             if "generator_degrees" in mem.detail else {})},
                "head_check": diag.agrees_with(B.dims()),
            }
            conn = B.connected()
            if conn:
                whole = self.free_rank_check(None, p)
                per_pi[p]["rank_q_delta"] = whole.rank
                per_pi[p]["rank_identity"] = D.dim_q().agrees_with(whole.rank * B.dims())
            for s in labels:
                if not conn:
                    continue
                rr = self.free_rank_check(s, p)
                ranks[f"{s},{p}"] = rr.rank
                if not rr.free:
                    w = f"HWC fails at ({s}, {p}): {rr.free.witness}"
                    axioms[f"HWC:{s},{p}"] = Verdict(False, w, rr.free.horizon)
                    witnesses.append(w)
                    hwc = False
                if not rr.fgen:
                    fgen = False
            if not conn:
                axioms[f"HWC:{p}"] = Verdict(False, f"HWC needs a connected B_{p}", horizon)
                hwc = False
                fgen = False
        name = {"F": "F", "connected": "connected", "polynomial": "polynomial", "any": "Laurentian"}[cls]
        if sc1 and sc2 and hwc:
            verdict, passed = f"{name} highest weight", True
        elif sc1 and sc2 and fgen:
            verdict, passed = f"weakly {name} highest weight", True
        else:
            verdict, passed = "not highest weight", False
        if horizon != INF:
            verdict += f", verified to degree {int(horizon)}"
        decomposition = [[graded_multiplicity(self.standard_module(p)[0], s) for s in labels] for p in labels]
        p_delta = []
        for p in labels:
            f = self.delta_filtration(self.P(p))
            mult = f.multiplicities(labels)
            p_delta.append([mult[s] if f.passed else None for s in labels])
        return StratReport(cls, verdict, passed, horizon, per_pi, decomposition, p_delta, ranks,
                           axioms, witnesses, labels, weak=passed and not hwc)

    # BGG
    def bgg_check(self, tau: Involution | None = None):
        """Compare (P(p):Δ(s))_q with the costandard side on every pair.

        With a balanced involution the right-hand side is [Δ̄(s):L(p)]_q.
        Without one, ∇̄(s) is the graded dual of the proper standard right
        module, so [∇̄(s):L(p)]_{q^{-1}} is read off the opposite algebra.
        """
        A, labels = self.A, self.order.labels
        if tau is None:
            op = self._memo("op", lambda: Stratification(A.opposite(), self.order))
            side, name = op.proper_standard, "[∇̄({s}):L({p})]_(q^-1)"
        else:
            side, name = self.proper_standard, "[Δ̄({s}):L({p})]_q"
        table = {}
        ok = True
        witness = None
        for p in labels:
            f = self.delta_filtration(self.P(p))
            mult = f.multiplicities(labels)
            for s in labels:
                left = mult[s]
                right = graded_multiplicity(side(s), p)
                match = f.passed and left.agrees_with(right)
                table[(p, s)] = (left, right, match)
                if not match and ok:
                    ok, witness = False, f"(P({p}):Δ({s}))_q = {left} but {name.format(s=s, p=p)} = {right}"
        duality = None
        if tau is not None:
            duality = self.duality_check(tau)
            if not duality.passed and ok:
                ok, witness = False, duality.witness
        return {"table": table, "passed": ok, "witness": witness, "duality": duality}

    def check_balanced(self, tau: Involution):
        tau.verify()
        perm = tau.slot_permutation()
        A = self.A
        if perm is None:
            raise NotBalanced("the involution does not permute the idempotents")
        for s, t in perm.items():
            if A.slot_class[s] != A.slot_class[t]:
                raise NotBalanced(f"the involution moves class {A.slot_class[s]} to {A.slot_class[t]}")
        return True

    def costandard(self, s, tau):
        Db = self.proper_standard(s)
        if not Db.finite:
            raise HorizonTooLow(f"proper standard module of {s} is not finite dimensional in the window")
        return dual(Db, tau)

    def duality_check(self, tau: Involution) -> Verdict:
        self.check_balanced(tau)
        labels = self.order.labels
        detail = {}
        for s in labels:
            N = self.costandard(s, tau)
            soc = socle(N)
            for p in labels:
                want = 1 if p == s else 0
                got = graded_multiplicity(soc, p)
                if got != LaurentPoly({0: want}) if want else not got.is_zero():
                    return Verdict(False, f"socle of the costandard module of {s} is not L({s})")
            for p in labels:
                D, _ = self.standard_module(p)
                h = hom_all(D, N).dims
                e1 = ext_against_finite(D, N, 1)
                want = LaurentPoly({0: 1}) if p == s else LaurentPoly({})
                detail[(p, s)] = (h, e1)
                if not h.agrees_with(want) or not e1.is_zero():
                    return Verdict(False, f"Hom/Ext against the costandard module fails at ({p}, {s}): "
                                          f"Hom = {h}, Ext^1 = {e1}", INF, detail)
        return Verdict(True, None, INF, detail)

    # heredity chain
    def heredity_chain(self, cls="polynomial") -> HeredityChain:
        lin = self.order.linear_extension()
        cur = self.A
        layers = []
        horizon = self.A.horizon
        for p in reversed(lin):
            layer = heredity_layer(cur, p, cls)
            layers.append(layer)
            horizon = _hz(horizon, layer.horizon)
            if not layer.passed:
                name, w = layer.first_failure()
                return HeredityChain(lin, layers, False, f"layer {len(layers)} ({p}): {name} fails: {w}", horizon)
            cur, _ = cur.quotient(layer.spaces, layer.horizon)
        return HeredityChain(lin, layers, True, None, horizon)

    # resolutions
    def resolution_checks(self, max_len=None):
        order, A = self.order, self.A
        out = {"pd": {}, "koszul": {}, "gldim": None, "passed": True, "witnesses": []}
        for p in order.labels:
            D, _ = self.standard_module(p)
            bound = order.length(order.above(p))
            res = minimal_resolution(D, (max_len or bound + 2))
            pd = res.length
            ok = pd is not None and pd <= bound
            out["pd"][p] = {"pd": pd, "bound": bound, "passed": ok, "horizon": hz_json(res.horizon)}
            if not ok:
                out["passed"] = False
                out["witnesses"].append(f"pd Δ({p}) = {pd} exceeds l(Π≥{p}) = {bound}")
            B = self.endo_algebra(p)
            pol = B.polynomial()
            if pol:
                kz = self.koszul_check(p, pol.detail["generator_degrees"])
                out["koszul"][p] = kz
                if not kz["passed"]:
                    out["passed"] = False
                    out["witnesses"].append(kz["witness"])
        pols = [self.endo_algebra(p).polynomial() for p in order.labels]
        if A.finite and all(pols):
            dmax = max(len(pol.detail["generator_degrees"]) for pol in pols)
            bound = 2 * order.length(order.labels) + dmax
            ext = {}
            gl = 0
            for p in order.labels:
                for s in order.labels:
                    for i in range(1, bound + 2):
                        e = ext_against_finite(simple(A, p), simple(A, s), i)
                        ext[(p, s, i)] = e
                        if not e.is_zero():
                            gl = max(gl, i)
            out["gldim"] = {"bound": bound, "value": gl, "passed": gl <= bound, "ext": ext}
            if gl > bound:
                out["passed"] = False
                out["witnesses"].append(f"Ext^{gl}(L, L') is nonzero beyond the bound {bound}")
        return out

    def koszul_check(self, p, degs):
        """Koszul complex of Delta(p) over B_p resolves the proper standard module."""
        D, _ = self.standard_module(p)
        Db = self.proper_standard(p)
        B = self.endo_algebra(p)
        F = self.A.field
        act = self.right_action(p)
        # pick generators: complement of N^2 in each degree
        gens = []
        for d in sorted(set(degs)):
            sq = B.radical_squared(d)
            cur = sq
            for b in B.basis(d):
                if not cur.contains(b):
                    cur = cur.extended([b])
                    gens.append((d, b))
        k = len(gens)
        subsets = {j: [S for S in _subsets(k, j)] for j in range(k + 1)}
        hz = D.complete_to if not D.finite else D.top
        hz = int(hz)

        def term_dim(j, n):
            return sum(D.dim(n - sum(gens[i][0] for i in S)) if n - sum(gens[i][0] for i in S) >= D.lo else 0
                       for S in subsets[j])

        def diff(j, n):
            # K_j -> K_{j-1} in degree n
            rows_blocks = []
            src = [(S, n - sum(gens[i][0] for i in S)) for S in subsets[j]]
            tgt = [(S, n - sum(gens[i][0] for i in S)) for S in subsets[j - 1]]
            toff, o = {}, 0
            for S, m in tgt:
                toff[S] = o
                o += D.dim(m) if m >= D.lo else 0
            cols = []
            for S, m in src:
                dm = D.dim(m) if m >= D.lo else 0
                for c in range(dm):
                    v = [0] * dm
                    v[c] = 1
                    col = [0] * o
                    for pos, i in enumerate(S):
                        T = tuple(x for x in S if x != i)
                        sign = -1 if pos % 2 else 1
                        d, b = gens[i]
                        img = act(m, v, d, b)
                        for r, x in enumerate(img):
                            if x:
                                col[toff[T] + r] += sign * x
                    cols.append([F.norm(x) for x in col])
            return cols, o

        for n in range(D.lo, hz + 1):
            ranks = {}
            for j in range(1, k + 1):
                cols, o = diff(j, n)
                ranks[j] = rank_rows(cols, o, F) if cols and o else 0
            h0 = term_dim(0, n) - ranks.get(1, 0)
            if h0 != Db.dim(n):
                return {"passed": False, "witness": f"Koszul H_0 of Δ({p}) differs from Δ̄({p}) in degree {n}",
                        "length": k, "horizon": hz}
            for j in range(1, k + 1):
                hj = term_dim(j, n) - ranks[j] - ranks.get(j + 1, 0)
                if hj:
                    return {"passed": False, "witness": f"Koszul complex of Δ({p}) has H_{j} in degree {n}",
                            "length": k, "horizon": hz}
        return {"passed": True, "witness": None, "length": k, "horizon": hz}

    # cellularity
    def cellularize(self, chain: HeredityChain, tau: Involution | None):
        if tau is None:
            raise ValueError("cellularize needs an antiinvolution")
        if self.A.field.characteristic == 2:
            raise CharacteristicTwo("cell data extraction needs characteristic != 2")
        if not chain.passed:
            raise ValueError("cellularize needs a verified heredity chain")
        self.check_balanced(tau)
        t = tau
        out = []
        ok, witness = True, None
        for layer in chain.layers:
            p = layer.label
            A = layer.algebra
            # quotients are built deterministically, so the descended images
            # index the chain's own layer algebra
            t = Involution(A, t.images)
            rec = cell_layer(A, p, layer.spaces, layer.horizon, t)
            rec["V"] = self.proper_standard(p).dim_q()
            out.append(rec)
            if not rec["passed"] and ok:
                ok, witness = False, rec["witness"]
            Q, proj = A.quotient(layer.spaces, layer.horizon)
            t = t.descend(Q, proj)
        return {"layers": out, "passed": ok, "witness": witness}


def _subsets(k, j):
    from itertools import combinations
    return list(combinations(range(k), j))


# ---------------------------------------------------------------------------
# heredity layers and cell data (algebra-level computations)


def _ideal_as_module(A: GradedAlgebra, spaces, horizon):
    """The two-sided ideal ``spaces`` as a left submodule of the regular module."""
    R = FreeModule(A, [(s, 0) for s in range(len(A.slot_idem))])
    out = {}
    for n, sp in spaces.items():
        if n > horizon:
            continue
        src, pos = R.basis_at(n)
        idx = A.by_degree.get(n, [])
        vecs = []
        for row in sp.rows:
            v = [0] * len(src)
            for p, c in enumerate(row):
                if c:
                    i = idx[p]
                    v[pos[(A.basis[i].right, i)]] = c
            vecs.append(v)
        out[n] = Subspace(len(src), A.field, vecs)
    return R, SubModule(R, out, horizon)


def heredity_layer(A: GradedAlgebra, p, cls) -> Layer:
    F = A.field
    spaces, hz = A.ideal_generated_by_idempotent(p)
    R, J = _ideal_as_module(A, spaces, hz)
    jd = LaurentPoly({n: sp.dim for n, sp in spaces.items()}, hz)
    # SI2: J = m(q) P(p)
    heads, ghz = gen_top(J)
    hz = _hz(hz, ghz)
    bad = [h for h in heads if h.label != p]
    mq = LaurentPoly({}, hz)
    for h in heads:
        mq = mq + LaurentPoly({h.degree: 1})
    mq = mq.truncate(hz)
    if bad:
        si2 = Verdict(False, f"ideal has a head constituent L({bad[0].label}) in degree {bad[0].degree}", hz)
    else:
        Pd = projective(A, p).dim_q()
        expect = mq * Pd
        top = min(hz, expect.valid_to)
        mism = [n for n in sorted(set(jd.coeffs) | set(expect.coeffs))
                if n <= top and jd.get(n, 0) != expect.get(n, 0)]
        if mism:
            si2 = Verdict(False, f"dim_q J = {jd} is not m(q) dim_q P({p}) = {expect} (degree {mism[0]})", hz)
        else:
            si2 = Verdict(True, None, hz, {"m": mq})
    # SI1: e_p (A/J) = 0, i.e. every slot of class p is inside J
    Q, proj = A.quotient(spaces, hz)
    left = [s for s, lab in enumerate(Q.slot_class) if lab == p]
    if left:
        si1 = Verdict(False, f"e_{p} survives in H/J", hz)
    else:
        si1 = Verdict(True, None, hz)
    # J^2 = J
    vecs = {}
    jb = {n: [A.from_dense(r, n) for r in sp.rows] for n, sp in spaces.items()}
    for n, xs in jb.items():
        for m, ys in jb.items():
            if n + m > hz or n + m not in spaces:
                continue
            for x in xs:
                for y in ys:
                    pr = A.multiply(x, y)
                    if pr:
                        vecs.setdefault(n + m, []).append(A.to_dense(pr, n + m))
    j2 = Verdict(True, None, hz)
    for n, sp in spaces.items():
        if n > hz:
            continue
        got = Subspace(sp.n, F, vecs.get(n, []))
        if got.dim != sp.dim:
            j2 = Verdict(False, f"J^2 != J in degree {n}", hz)
            break
    # freeness of A e over e A e, class of e A e
    B = _corner_algebra(A, p)
    sc2 = B.membership(cls)
    if not B.connected():
        free = Verdict(False, f"e A e is not connected", hz)
    else:
        s = A.slot(p)
        M = {}
        for n, idx in A.by_degree.items():
            vs = []
            for k, i in enumerate(idx):
                if A.basis[i].right == s:
                    v = [0] * len(idx)
                    v[k] = 1
                    vs.append(v)
            if vs:
                M[n] = Subspace(len(idx), F, vs)

        def act(n, m, k, b):
            return A.to_dense(A.multiply(A.from_dense(m, n), A.from_dense(b, k)), n + k)

        rr = _rank_over(B, M, act, A.dim, hz)
        free = rr.free
    return Layer(p, jd, mq, si1, si2, j2, free, sc2, A, spaces, hz)


def cell_layer(A: GradedAlgebra, p, spaces, hz, tau: Involution):
    """Cell data of one layer: J = A e A with A e free over B = eAe and J = Ae (x)_B eA."""
    F = A.field
    s = A.slot(p)
    rec = {"label": p, "passed": True, "witness": None, "horizon": hz}
    # tau(J) = J
    for n, sp in spaces.items():
        for row in sp.rows:
            img = tau(A.from_dense(row, n))
            if img and not sp.contains(A.to_dense(img, n)):
                rec.update(passed=False, witness=f"τ(J) ≠ J in degree {n} for layer {p}")
                return rec
    e = A.idempotent(p)
    if tau(e) != e:
        rec.update(passed=False, witness=f"τ does not fix e_{p}")
        return rec
    B = _corner_algebra(A, p)
    rec["B"] = B.dims()
    rec["tau_restricts"] = all(A.basis[i].left == s and A.basis[i].right == s
                               for n in B.spaces for r in B.basis(n)
                               for i in tau(A.from_dense(r, n)))
    if not rec["tau_restricts"]:
        rec.update(passed=False, witness=f"τ does not preserve e_{p} H e_{p}")
        return rec

    def column_space(right):
        M = {}
        for n, idx in A.by_degree.items():
            vs = []
            for k, i in enumerate(idx):
                b = A.basis[i]
                if (b.right if right else b.left) == s:
                    v = [0] * len(idx)
                    v[k] = 1
                    vs.append(v)
            if vs:
                M[n] = Subspace(len(idx), F, vs)
        return M

    He, eH = column_space(True), column_space(False)
    ract = lambda n, m, k, b: A.to_dense(A.multiply(A.from_dense(m, n), A.from_dense(b, k)), n + k)
    lact = lambda n, m, k, b: A.to_dense(A.multiply(A.from_dense(b, k), A.from_dense(m, n)), n + k)
    r1 = _rank_over(B, He, ract, A.dim, hz)
    r2 = _rank_over(B, eH, lact, A.dim, hz)
    rec["rank_He"] = r1.rank
    rec["rank_eH"] = r2.rank
    if not (r1.free and r2.free):
        rec.update(passed=False, witness=f"He or eH is not free over eHe in layer {p}")
        return rec
    jd = LaurentPoly({n: sp.dim for n, sp in spaces.items()}, hz)
    expect = r1.rank * r2.rank * B.dims()
    top = min(hz, expect.valid_to)
    rec["dim_q_J"] = jd
    rec["expected"] = expect
    if not jd.agrees_with(expect, top):
        rec.update(passed=False, witness=f"dim_q J = {jd} but rank(He) rank(eH) dim_q B = {expect}")
        return rec
    # He.eH spans J
    vecs = {}
    for n, sp in He.items():
        for m, sq in eH.items():
            if n + m > hz:
                continue
            for x in sp.rows:
                for y in sq.rows:
                    pr = A.multiply(A.from_dense(x, n), A.from_dense(y, m))
                    if pr:
                        vecs.setdefault(n + m, []).append(A.to_dense(pr, n + m))
    for n, sp in spaces.items():
        if n <= hz and Subspace(sp.n, F, vecs.get(n, [])).dim != sp.dim:
            rec.update(passed=False, witness=f"He · eH does not span J in degree {n}")
            return rec
    return rec


# ---------------------------------------------------------------------------
# resolutions and Ext


@dataclass
class Resolution:
    modules: list  # FreeModule P_j
    differentials: list  # d_j: images of generators of P_j as vectors in P_{j-1} (j >= 1)
    horizons: list
    length: int | None
    horizon: float


def minimal_resolution(V: GradedModule, steps: int) -> Resolution:
    """P_0 <- P_1 <- ... built from minimal generators of successive kernels."""
    P0, f, gens, hz = projective_cover(V)
    mods, diffs, hzs = [P0], [None], [hz if not V.finite else INF]
    K = map_kernel(f)
    length = None
    for j in range(1, steps + 1):
        kg, khz = gen_top(K)
        hzs.append(_hz(khz, None if K.finite else K.complete_to))
        if not kg:
            if all(K.dim(n) == 0 for n in K.degrees() if n <= hzs[-1]):
                length = j - 1
                hzs.pop()
                break
        Pj = FreeModule(V.A, [(V.A.slot(g.label), g.degree) for g in kg])
        # generator vectors are already in the ambient P_{j-1}
        images = [list(g.vector) for g in kg]
        prev = mods[-1]
        K_ambient = K.parent
        images = [_to_ambient(K, g.degree, g.vector) for g in kg]
        d = free_map(Pj, prev, images)
        mods.append(Pj)
        diffs.append(images)
        K = map_kernel(d)
    return Resolution(mods, diffs, hzs, length, min(hzs) if hzs else INF)


def _to_ambient(K: GradedModule, n, v):
    """Express a vector of a (nested) submodule in the coordinates of its free ambient module."""
    while isinstance(K, SubModule):
        rows = K.space(n).rows
        out = [0] * K.parent.dim(n)
        for c, r in zip(v, rows):
            if c:
                for j, x in enumerate(r):
                    if x:
                        out[j] += c * x
        v = [K.F.norm(x) for x in out]
        K = K.parent
    return v


def _cochain_basis(P: FreeModule, W: GradedModule, deg):
    blocks, off = [], 0
    A = P.A
    for k, (s, t) in enumerate(P.summands):
        n = t + deg
        if n < W.lo or n > W.last or not W.dim(n):
            blocks.append((n, [], off))
            continue
        M = W.act_elem(A.slot_idem[s], n)
        sp = Subspace(W.dim(n), P.F, [list(c) for c in zip(*M)])
        blocks.append((n, sp.rows, off))
        off += sp.dim
    return blocks, off


def _coboundary(Pj: FreeModule, Pk: FreeModule, images, W, deg, F):
    """Matrix of Hom(P_j, W)_deg -> Hom(P_k, W)_deg, phi -> phi o d, d: P_k -> P_j."""
    src_blocks, ns = _cochain_basis(Pj, W, deg)
    tgt_blocks, nt = _cochain_basis(Pk, W, deg)
    cols = []
    for k0, (n, rows, off) in enumerate(src_blocks):
        for w in rows:
            col = [0] * nt
            for g, img in enumerate(images):
                tn, trows, toff = tgt_blocks[g]
                if not trows:
                    continue
                m = Pk.summands[g][1]
                src, _ = Pj.basis_at(m)
                val = [0] * W.dim(tn)
                for c, x in enumerate(img):
                    if not x:
                        continue
                    kk, i = src[c]
                    if kk != k0:
                        continue
                    imgw = W.apply_basis(i, n, w)
                    for r, y in enumerate(imgw):
                        if y:
                            val[r] += x * y
                val = [F.norm(x) for x in val]
                # coordinates in e W basis rows (RREF rows: read pivots)
                sp = Subspace(W.dim(tn), F, trows)
                coords = sp.coords(val)
                for r, cc in enumerate(coords):
                    col[toff + r] = cc
            cols.append(col)
    return cols, ns, nt


def ext_against_finite(V: GradedModule, W: GradedModule, i: int) -> LaurentPoly:
    """dim_q Ext^i(V, W) for finite-dimensional W, from a minimal projective resolution of V.

    Generators of the resolution are known through some degree h; the
    answer is exact in degrees >= top(W) - h, which is everything when the
    algebra is finite dimensional.
    """
    if not W.finite:
        raise HorizonTooLow("Ext target must be finite dimensional")
    F = V.F
    res = minimal_resolution(V, i + 1)
    mods = res.modules
    if i >= len(mods):
        return LaurentPoly({})
    Pi = mods[i]
    hzs = [res.horizons[j] for j in range(max(0, i - 1), min(len(mods), i + 2))]
    h = min(hzs) if hzs else INF
    shifts = [t for _, t in Pi.summands]
    if not shifts:
        return LaurentPoly({}, INF, -INF if h == INF else W.top - h)
    lo = W.lo - max(shifts)
    hi = W.top - min(shifts)
    vf = -INF if h == INF else W.top - h
    dims = {}
    for deg in range(lo, hi + 1):
        if vf != -INF and deg < vf:
            continue
        # ker(delta^i) / im(delta^{i-1})
        if i + 1 < len(mods):
            cols, ns, nt = _coboundary(Pi, mods[i + 1], res.differentials[i + 1], W, deg, F)
            rk_out = rank_rows(cols, nt, F) if cols and nt else 0
        else:
            _, ns = _cochain_basis(Pi, W, deg)
            rk_out = 0
        if ns == 0:
            continue
        if i >= 1:
            cols, ps, nt2 = _coboundary(mods[i - 1], Pi, res.differentials[i], W, deg, F)
            rk_in = rank_rows(cols, nt2, F) if cols and nt2 else 0
        else:
            rk_in = 0
        d = ns - rk_out - rk_in
        if d:
            dims[deg] = d
    return LaurentPoly(dims, INF, vf)


# ---------------------------------------------------------------------------
# convenience wrappers


def standard_module(S: Stratification, p):
    return S.standard_module(p)


def proper_standard(S: Stratification, p):
    return S.proper_standard(p)


def endo_algebra(S: Stratification, p):
    return S.endo_algebra(p)


def free_rank_check(S: Stratification, s, p):
    return S.free_rank_check(s, p)


def delta_filtration(S: Stratification, V):
    return S.delta_filtration(V)


def check_axioms(S: Stratification, cls="polynomial"):
    return S.check_axioms(cls)


def bgg_check(S: Stratification, tau=None):
    return S.bgg_check(tau)


def heredity_chain(S: Stratification, cls="polynomial"):
    return S.heredity_chain(cls)


def resolution_checks(S: Stratification):
    return S.resolution_checks()


def cellularize(S: Stratification, chain, tau):
    return S.cellularize(chain, tau)
