"""Integer Laurent polynomials that know how far they can be trusted.

A :class:`LaurentPoly` stores finitely many nonzero coefficients together with
``valid_to``: coefficients above that degree are *unknown*, not zero.  An
optional ``valid_from`` marks the symmetric situation (unknown below), which
only arises for Ext groups against finite-dimensional targets.
"""
from __future__ import annotations

import math
import re
from typing import Mapping

INF = math.inf
_TERM = re.compile(r"([+-]?)(O\(q\^-?\d+\)|\d*\*?q(?:\^-?\d+)?|\d+)")


class ZeroDivisor(ZeroDivisionError):
    pass


class NotDivisible(ArithmeticError):
    def __init__(self, degree: int):
        super().__init__(f"not divisible: first offending degree {degree}")
        self.degree = degree


def _norm_horizon(h):
    if h is None or h == INF:
        return INF
    return int(h)


class LaurentPoly:
    __slots__ = ("_c", "valid_to", "valid_from", "_lo")

    def __init__(self, coeffs: Mapping[int, int] | None = None, valid_to=INF, valid_from=-INF):
        valid_to = _norm_horizon(valid_to)
        valid_from = -INF if valid_from is None or valid_from == -INF else int(valid_from)
        c = {}
        for d, x in (coeffs or {}).items():
            d = int(d)
            if x and valid_from <= d <= valid_to:
                c[d] = int(x)
        self._c = c
        self.valid_to = valid_to
        self.valid_from = valid_from
        self._lo = min(c) if c else None

    # construction helpers
    @classmethod
    def monomial(cls, degree: int, coeff: int = 1, valid_to=INF):
        return cls({degree: coeff}, valid_to)

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], valid_to=INF):
        return cls(dict(dims), valid_to)

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def zero(cls, valid_to=INF):
        return cls({}, valid_to)

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, d: int) -> int:
        if d > self.valid_to or d < self.valid_from:
            raise KeyError(f"coefficient of q^{d} lies beyond the validity horizon")
        return self._c.get(d, 0)

    def get(self, d: int, default=None):
        try:
            return self[d]
        except KeyError:
            return default

    def lowdeg(self):
        """Lowest degree with a nonzero coefficient (None for the zero polynomial)."""
        return self._lo

    def degree(self):
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def is_exact(self) -> bool:
        return self.valid_to == INF and self.valid_from == -INF

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self._c.values())

    def __bool__(self):
        return bool(self._c)

    def _effective_low(self):
        # a truncated zero may still start right after its horizon
        if self._lo is not None:
            return self._lo
        return self.valid_to + 1 if self.valid_to != INF else INF

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for d, x in other._c.items():
            c[d] = c.get(d, 0) + x
        return LaurentPoly(c, min(self.valid_to, other.valid_to), max(self.valid_from, other.valid_from))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -x for d, x in self._c.items()}, self.valid_to, self.valid_from)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.valid_from != -INF or other.valid_from != -INF:
            if not (self.is_exact() or other.is_exact()) or self.valid_to != INF or other.valid_to != INF:
                raise ValueError("products of series unknown at both ends are not supported")
        if (self._lo is None and self.valid_to == INF) or (other._lo is None and other.valid_to == INF):
            return LaurentPoly({}, INF)
        vt = min(self.valid_to + other._effective_low(), other.valid_to + self._effective_low())
        vf = -INF
        if self.valid_from != -INF or other.valid_from != -INF:
            hi_a = self.degree() if self.degree() is not None else 0
            hi_b = other.degree() if other.degree() is not None else 0
            vf = max(self.valid_from + hi_b, other.valid_from + hi_a)
        c = {}
        for d1, x1 in self._c.items():
            for d2, x2 in other._c.items():
                d = d1 + d2
                if d <= vt:
                    c[d] = c.get(d, 0) + x1 * x2
        return LaurentPoly(c, vt, vf)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by q^n."""
        return LaurentPoly({d + n: x for d, x in self._c.items()}, self.valid_to + n, self.valid_from + n)

    def bar(self) -> "LaurentPoly":
        """Substitute q -> q^{-1}; unknown-above becomes unknown-below."""
        return LaurentPoly({-d: x for d, x in self._c.items()}, -self.valid_from, -self.valid_to)

    def truncate(self, valid_to) -> "LaurentPoly":
        return LaurentPoly(self._c, min(self.valid_to, _norm_horizon(valid_to)), self.valid_from)

    def at_one(self) -> int:
        return sum(self._c.values())

    def exact_divide(self, den: "LaurentPoly") -> "LaurentPoly":
        """Quotient self/den; raises NotDivisible or ZeroDivisor.

        Honest Laurent polynomials divide exactly (top-down, remainder must
        vanish).  Truncated series divide from the lowest degree up to the
        joint horizon.
        """
        if den._lo is None:
            raise ZeroDivisor("division by the zero Laurent polynomial")
        if self.valid_from != -INF or den.valid_from != -INF:
            raise ValueError("exact_divide requires series bounded below")
        d0 = den._lo
        lead = den._c[d0]
        if self.valid_to == INF and den.valid_to == INF:
            rem = dict(self._c)
            top_den = den.degree()
            lead_top = den._c[top_den]
            q = {}
            while rem:
                t = max(rem)
                k = t - top_den
                if k < self._lo - d0 or rem[t] % lead_top:
                    raise NotDivisible(t)
                coef = rem[t] // lead_top
                q[k] = coef
                for d, x in den._c.items():
                    rem[d + k] = rem.get(d + k, 0) - coef * x
                    if rem[d + k] == 0:
                        del rem[d + k]
            return LaurentPoly(q)
        if self._lo is None:
            return LaurentPoly({}, self.valid_to - d0)
        q_lo = self._lo - d0
        vt = min(self.valid_to - d0, den.valid_to - d0 + q_lo)
        rem = dict(self._c)
        q = {}
        k = q_lo
        while k <= vt:
            r = rem.get(k + d0, 0)
            if r:
                if r % lead:
                    raise NotDivisible(k + d0)
                coef = r // lead
                q[k] = coef
                for d, x in den._c.items():
                    rem[d + k] = rem.get(d + k, 0) - coef * x
            k += 1
        return LaurentPoly(q, vt)

    # comparison
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c and self.valid_to == other.valid_to and self.valid_from == other.valid_from

    def __hash__(self):
        return hash((tuple(sorted(self._c.items())), self.valid_to, self.valid_from))

    def agrees_with(self, other: "LaurentPoly", through=INF) -> bool:
        """Coefficientwise equality on the degrees both operands certify (and <= through)."""
        top = min(self.valid_to, other.valid_to, _norm_horizon(through))
        bot = max(self.valid_from, other.valid_from)
        degs = set(self._c) | set(other._c)
        return all(self._c.get(d, 0) == other._c.get(d, 0) for d in degs if bot <= d <= top)

    # rendering
    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def to_text(self) -> str:
        parts = []
        if self.valid_from != -INF:
            parts.append(f"O(q^{self.valid_from - 1})")
        for d in sorted(self._c):
            x = self._c[d]
            if d == 0:
                body = str(abs(x))
            else:
                mono = "q" if d == 1 else f"q^{d}"
                body = mono if abs(x) == 1 else f"{abs(x)}*{mono}"
            if not parts:
                parts.append(body if x > 0 else f"-{body}")
            else:
                parts.append(("+ " if x > 0 else "- ") + body)
        if self.valid_to != INF:
            parts.append(f"O(q^{self.valid_to + 1})" if not parts else f"+ O(q^{self.valid_to + 1})")
        if not parts:
            return "0"
        if len(parts) == 1 and self.valid_from != -INF:
            parts.append("+ 0")
        if self.valid_from != -INF and len(parts) > 1 and not parts[1].startswith(("+", "-")):
            parts[1] = "+ " + parts[1]
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of :meth:`to_text`: ``"1 + 2*q^2 - q^-1 + O(q^9)"``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        valid_to, valid_from = INF, -INF
        coeffs = {}
        pos = 0
        for m in _TERM.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            pos = m.end()
            sign, body = m.group(1), m.group(2)
            o = re.fullmatch(r"O\(q\^(-?\d+)\)", body)
            if o:
                if not coeffs and valid_to == INF and m.start() == 0 and len(s) > m.end():
                    valid_from = int(o.group(1)) + 1
                else:
                    valid_to = int(o.group(1)) - 1
                continue
            t = re.fullmatch(r"(?:(\d+)\*?)?(q(?:\^(-?\d+))?)?", body)
            if not t or not (t.group(1) or t.group(2)):
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            c = int(t.group(1)) if t.group(1) else 1
            d = 0 if not t.group(2) else (int(t.group(3)) if t.group(3) else 1)
            coeffs[d] = coeffs.get(d, 0) + (-c if sign == "-" else c)
        if pos != len(s):
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        return cls(coeffs, valid_to, valid_from)

    def to_json(self) -> dict:
        out = {"coeffs": {str(d): self._c[d] for d in sorted(self._c)},
               "valid_to": None if self.valid_to == INF else self.valid_to}
        if self.valid_from != -INF:
            out["valid_from"] = self.valid_from
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        vt = obj.get("valid_to")
        vf = obj.get("valid_from")
        return cls({int(k): v for k, v in obj["coeffs"].items()},
                   INF if vt is None else vt, -INF if vf is None else vf)


def q(n: int = 1) -> LaurentPoly:
    """The monomial q^n."""
    return LaurentPoly({n: 1})


def arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown kind {kind!r}")


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    return num.exact_divide(den)


def is_nonnegative(a: LaurentPoly) -> bool:
    return a.is_nonnegative()
