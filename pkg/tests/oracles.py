"""Independent brute-force computations used as test oracles.

Nothing here imports the package under test: monomial path algebras are
enumerated directly and homology is computed with sympy.
"""
from __future__ import annotations

import itertools

import sympy


def nonzero_paths(vertices, arrows, zero_paths=(), max_degree=8):
    """All paths (src, dst, names) of degree <= max_degree avoiding the zero subpaths.

    ``arrows`` are (name, src, dst, degree); a path ``a*b`` traverses a, then b.
    Trivial paths are (v, v, ()).
    """
    zero = [tuple(z) for z in zero_paths]
    by_src = {}
    for a in arrows:
        by_src.setdefault(a[1], []).append(a)
    out = []
    stack = [(v, v, (), 0) for v in vertices]
    while stack:
        s, t, names, d = stack.pop()
        out.append((s, t, names, d))
        for name, src, dst, deg in by_src.get(t, []):
            nd = d + deg
            if nd > max_degree:
                continue
            new = names + (name,)
            if any(new[i:i + len(z)] == z for z in zero for i in range(len(new) - len(z) + 1)):
                continue
            stack.append((s, dst, new, nd))
    return out


def count_paths(vertices, arrows, zero_paths=(), max_degree=8):
    """{(dst, src): {degree: count}}: graded dimension of e_dst H e_src."""
    out = {}
    for s, t, names, d in nonzero_paths(vertices, arrows, zero_paths, max_degree):
        c = out.setdefault((t, s), {})
        c[d] = c.get(d, 0) + 1
    return out


def count_partitions(parts, top):
    """{n: number of ways to write n as a sum of the given part sizes}, n <= top."""
    out = {}
    ranges = [range(0, top // p + 1) for p in parts]
    for ks in itertools.product(*ranges):
        n = sum(k * p for k, p in zip(ks, parts))
        if n <= top:
            out[n] = out.get(n, 0) + 1
    return out


def bar_ext(vertices, arrows, zero_paths, i, target, source, max_degree=32):
    """Graded dimension of Ext^i(L(source), L(target)) for a finite monomial algebra.

    Uses the normalized bar complex over the semisimple degree-0 part: chains
    in homological degree i are tensors n_1 (x) ... (x) n_i of nonzero paths of
    positive degree that compose, starting at ``source`` and ending at
    ``target``.  The boundary multiplies neighbouring factors.  A chain of
    internal degree d contributes to Ext in degree -d.
    """
    paths = [p for p in nonzero_paths(vertices, arrows, zero_paths, max_degree) if p[3] > 0]
    zero = [tuple(z) for z in zero_paths]

    def concat(p, r):
        # p then r (traversal order), zero if a forbidden subpath appears
        if p[1] != r[0]:
            return None
        names = p[2] + r[2]
        if any(names[k:k + len(z)] == z for z in zero for k in range(len(names) - len(z) + 1)):
            return None
        return (p[0], r[1], names, p[3] + r[3])

    def chains(k):
        # sequences of paths traversed one after another, from source to target
        out = []
        if k < 0:
            return []
        if k == 0:
            return [()] if source == target else []

        def go(seq, at):
            if len(seq) == k:
                if at == target:
                    out.append(tuple(seq))
                return
            for p in paths:
                if p[0] == at:
                    go(seq + [p], p[1])

        go([], source)
        return out

    def by_degree(cs):
        out = {}
        for c in cs:
            out.setdefault(sum(p[3] for p in c), []).append(c)
        return out

    def boundary(src_chains, tgt_chains):
        pos = {c: r for r, c in enumerate(tgt_chains)}
        M = sympy.zeros(len(tgt_chains), len(src_chains))
        for col, c in enumerate(src_chains):
            for j in range(len(c) - 1):
                prod = concat(c[j], c[j + 1])
                if prod is None:
                    continue
                new = c[:j] + (prod,) + c[j + 2:]
                M[pos[new], col] += (-1) ** (j + 1)
        return M

    lo, mid, hi = by_degree(chains(i - 1)), by_degree(chains(i)), by_degree(chains(i + 1))
    dims = {}
    for d, cs in mid.items():
        rk_out = boundary(cs, lo.get(d, [])).rank() if i > 0 and lo.get(d) else 0
        rk_in = boundary(hi.get(d, []), cs).rank() if hi.get(d) else 0
        h = len(cs) - rk_out - rk_in
        if h:
            dims[-d] = h
    return dims


def brute_rank(rows, char=0):
    """Rank over Q (char 0) or F_p via sympy."""
    if not rows or not rows[0]:
        return 0
    M = sympy.Matrix(rows)
    if char == 0:
        return M.rank()
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix.from_Matrix(M).convert_to(GF(char))
    return dm.rank()
