"""Built-in example algebras with hand-verified expected data.

Every entry is shipped as a declarative input file (``corpus_files/*.toml``)
so the command line tool can run it by name, and carries expected values,
each with a note saying how the value was derived.  ``tests/oracles.py``
holds the brute-force scripts the notes refer to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .galgebra import GradedAlgebra
from .inputfile import Problem, parse_text
from .laurent import LaurentPoly
from .strat import Stratification


class UnknownExample(LookupError):
    def __init__(self, name):
        super().__init__(f"unknown example {name!r}; known: {', '.join(sorted(EXPECTED))}")
        self.name = name


@dataclass(frozen=True)
class Expected:
    value: object
    note: str


@dataclass
class CorpusEntry:
    name: str
    problem: Problem
    description: str
    expected: dict = field(default_factory=dict)

    @property
    def mode(self):
        return self.problem.mode

    @property
    def order_covers(self):
        return list(self.problem.order_covers)

    @property
    def involution(self):
        return self.problem.involution

    @property
    def cls(self):
        return self.problem.cls

    @property
    def window(self):
        return self.problem.window

    def algebra(self) -> GradedAlgebra:
        return self.problem.build()

    def stratification(self) -> Stratification:
        A = self.algebra()
        return Stratification(A, self.problem.order(A), A.involution)

    def reproduce(self) -> dict:
        """Recompute every expected key with the main pipeline."""
        S = self.stratification()
        memo = {}
        return {key: _measure(S, self.cls, key, memo) for key in self.expected}

    def mismatches(self) -> list:
        got = self.reproduce()
        return [(k, e.value, got[k]) for k, e in self.expected.items() if got[k] != e.value]


def _text(x):
    return x.to_text() if isinstance(x, LaurentPoly) else x


def _measure(S: Stratification, cls, key, memo):
    """Evaluate one expected-value key such as ``dim_q_B[+]`` or ``p_delta[-,+]``."""
    def report(c):
        if ("check", c) not in memo:
            memo[("check", c)] = S.check_axioms(c)
        return memo[("check", c)]

    name, _, arg = key.partition("[")
    args = arg.rstrip("]").split(",") if arg else []
    labels = S.order.labels
    if name == "verdict":
        return report(args[0] if args else cls).verdict
    if name in ("dim_q_delta", "dim_q_bar_delta", "dim_q_B", "rank_q_delta"):
        return _text(report(cls).per_pi[args[0]][name])
    if name == "generator_degrees":
        return list(S.endo_algebra(args[0]).polynomial().detail.get("generator_degrees", []))
    if name in ("p_delta", "decomposition"):
        table = getattr(report(cls), name)
        return _text(table[labels.index(args[0])][labels.index(args[1])])
    if name == "cartan":
        return _text(S.A.peirce_dims()[(args[0], args[1])])
    if name == "chain_length":
        ch = S.heredity_chain(cls)
        return len(ch) if ch.passed else None
    if name == "pd":
        if "resolve" not in memo:
            memo["resolve"] = S.resolution_checks()
        return memo["resolve"]["pd"][args[0]]["pd"]
    raise KeyError(f"unknown expected-value key {key!r}")


_PATHS = "path oracle (tests/oracles.py: count_paths)"

EXPECTED = {
    "a2_path": (
        "Quiver 1 -> 2 with one arrow of degree 1 and no relations, order 1 < 2.",
        {
            "verdict": Expected("F highest weight", "finite-dimensional, so exact; classical example"),
            "cartan[1,1]": Expected("1", _PATHS),
            "cartan[1,2]": Expected("0", _PATHS),
            "cartan[2,1]": Expected("q", _PATHS + ": the arrow is the only path 1 -> 2"),
            "cartan[2,2]": Expected("1", _PATHS),
            "p_delta[1,2]": Expected("q", "P(1) = e_1 + a; a spans a copy of Delta(2) = L(2) in degree 1"),
            "pd[1]": Expected(1, "0 -> P(2)<1> -> P(1) -> Delta(1) -> 0 by hand"),
            "pd[2]": Expected(0, "Delta(2) = P(2)"),
            "chain_length": Expected(2, "one layer per label"),
        },
    ),
    "poly_line": (
        "One vertex with a loop x of degree 2 and no relations: H = F[x].",
        {
            "verdict": Expected("polynomial highest weight, verified to degree 8", "H = F[x], B = H"),
            "dim_q_delta[o]": Expected("1 + q^2 + q^4 + q^6 + q^8 + O(q^9)", _PATHS + ": Delta = P = H"),
            "dim_q_bar_delta[o]": Expected("1", "Delta-bar = H / xH = L"),
            "generator_degrees[o]": Expected([2], "one loop of degree 2"),
            "chain_length": Expected(1, "single label"),
        },
    ),
    "skew_c2": (
        "Two vertices +, - with arrows alpha: + -> -, beta: - -> + of degree 2, no relations, "
        "order - < +, involution swapping alpha and beta.",
        {
            "verdict": Expected("polynomial highest weight, verified to degree 8",
                                _PATHS + " plus the standard-module count below"),
            "dim_q_B[+]": Expected("1 + q^4 + q^8 + O(q^9)", _PATHS + ": closed walks (alpha beta)^k at +"),
            "dim_q_bar_delta[+]": Expected("1 + q^2", "P(+) modulo paths returning to +: e_+ and alpha"),
            "p_delta[-,+]": Expected("q^2 + O(q^9)", "P(-) = L(-) + beta P(+), beta of degree 2"),
            "p_delta[+,+]": Expected("1 + O(q^9)", "P(+) = Delta(+) since + is maximal"),
            "generator_degrees[+]": Expected([4], "B_+ = F[alpha beta]"),
            "chain_length": Expected(2, "one layer per label"),
        },
    ),
    "nilhecke2": (
        "Mat_2(F[x1, x2]^S2) graded so that E21 has degree 2; the invariants are generated in "
        "degrees 2 and 4.  Single simple class.",
        {
            "verdict": Expected("polynomial highest weight, verified to degree 12",
                                "Morita equivalent to the polynomial ring B"),
            "generator_degrees[1]": Expected([2, 4], "symmetric polynomials e1, e2 in deg x = 2"),
            "dim_q_B[1]": Expected("1 + q^2 + 2*q^4 + 2*q^6 + 3*q^8 + 3*q^10 + 4*q^12 + O(q^13)",
                                   "partitions into parts 2 and 4 (tests/oracles.py: count_partitions)"),
            "rank_q_delta[1]": Expected("1 + q^2 + O(q^13)", "Delta = first column, entries in degrees 0 and 2"),
            "dim_q_bar_delta[1]": Expected("1 + q^2 + O(q^13)", "first column modulo the augmentation ideal"),
            "chain_length": Expected(1, "single label"),
        },
    ),
    "dual_numbers": (
        "One vertex with a loop x of degree 1 and the relation x*x: H = F[x]/(x^2).",
        {
            "verdict[polynomial]": Expected(
                "not highest weight", "B = F[x]/(x^2) is finite, a polynomial ring on a degree-1 generator is not"),
            "verdict[any]": Expected("Laurentian highest weight", "Delta = P = H, so SC1 and HWC hold trivially"),
            "dim_q_B[o]": Expected("1 + q", _PATHS),
        },
    ),
    "skew_c2_badorder": (
        "skew_c2 with the order reversed (+ < -).  The vertex swap is an automorphism, so this "
        "order is as good as the original one.",
        {
            "verdict": Expected("polynomial highest weight, verified to degree 8",
                                "image of skew_c2 under the swap alpha <-> beta, + <-> -"),
        },
    ),
    "cycle_zero": (
        "Two-cycle a: 1 -> 2, b: 2 -> 1 of degree 1 with a*b = 0, order 1 < 2.",
        {
            "verdict": Expected("not highest weight",
                                "the kernel of P(1) -> Delta(1) is L(2), which is not Delta(2) = P(2)"),
        },
    ),
}


def example_names():
    return sorted(EXPECTED)


def example_text(name: str) -> str:
    if name not in EXPECTED:
        raise UnknownExample(name)
    return resources.files("laurentia").joinpath("corpus_files").joinpath(f"{name}.toml").read_text(encoding="utf-8")


def load_example(name: str) -> CorpusEntry:
    text = example_text(name)
    desc, expected = EXPECTED[name]
    return CorpusEntry(name, parse_text(text, name), desc, dict(expected))
