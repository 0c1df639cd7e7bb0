"""Command line front end: ``laurentia COMMAND INPUT [flags]``.

INPUT is a declarative TOML file or the name of a built-in example.  Exit
status is 0 when every requested verdict passes, 1 when a verdict fails and
2 for input or precondition errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import EXPECTED, example_text
from .exactlin import Field
from .galgebra import AlgebraError, AboveHorizon
from .gmodule import ModuleError
from .inputfile import InputError, Problem, parse_file, parse_text
from .laurent import INF, LaurentPoly
from .strat import CLASSES, CharacteristicTwo, NotBalanced, OrderError, Stratification, Verdict, hz_json

COMMANDS = ("inspect", "standardize", "check", "bgg", "chain", "resolve", "cellularize")
EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: str
    source: str
    passed: bool
    witness: str | None
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"command": self.command, "input": self.source, "passed": self.passed,
                "witness": self.witness, **self.data}

    @classmethod
    def from_json(cls, obj: dict) -> "Report":
        obj = dict(obj)
        return cls(obj.pop("command"), obj.pop("input"), obj.pop("passed"), obj.pop("witness"), obj)


def _plain(x):
    """JSON-ready copy of engine output (Laurent polynomials, verdicts, tuple keys)."""
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, Verdict):
        return x.to_json()
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, float) and x == INF:
        return None
    return x


def export_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return ("\n".join(_text_lines(report)) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")


def load_report(data: bytes | str) -> Report:
    if isinstance(data, bytes):
        data = data.decode()
    return Report.from_json(json.loads(data))


def _is_poly(x):
    return isinstance(x, dict) and set(x) >= {"coeffs", "valid_to"} and set(x) <= {"coeffs", "valid_to", "valid_from"}


def _fmt(x):
    if _is_poly(x):
        return LaurentPoly.from_json(x).to_text()
    if isinstance(x, list) and all(not isinstance(v, (dict, list)) or _is_poly(v) for v in x):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "pass" if x else "FAIL"
    return str(x)


# booleans that state a property rather than a check result
_FACTS = {"finite", "weak", "tau_restricts"}


def _render(x, indent, out):
    pad = "  " * indent
    for k in sorted(x):
        v = x[k]
        if isinstance(v, dict) and not _is_poly(v):
            out.append(f"{pad}{k}:")
            _render(v, indent + 1, out)
        elif isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            out.append(f"{pad}{k}:")
            for r in v:
                out.append(f"{pad}  {_fmt(r)}")
        elif isinstance(v, list) and v and all(isinstance(r, dict) and not _is_poly(r) for r in v):
            out.append(f"{pad}{k}:")
            for i, r in enumerate(v):
                out.append(f"{pad}  [{i}]")
                _render(r, indent + 2, out)
        elif v is None and k in ("horizon", "window"):
            out.append(f"{pad}{k}: exact")
        elif isinstance(v, bool) and k in _FACTS:
            out.append(f"{pad}{k}: {'yes' if v else 'no'}")
        else:
            out.append(f"{pad}{k}: {_fmt(v)}")


def _text_lines(report: Report):
    out = [f"{report.command} {report.source}: {'pass' if report.passed else 'FAIL'}"]
    if report.witness:
        out.append(f"witness: {report.witness}")
    _render(report.data, 0, out)
    return out


# ---------------------------------------------------------------------------
# loading


def load_problem(path: str) -> Problem:
    p = Path(path)
    if p.exists():
        return parse_file(p)
    stem = p.name[:-5] if p.name.endswith(".toml") else p.name
    if stem in EXPECTED:
        return parse_text(example_text(stem), stem)
    raise InputError(f"no such input file or built-in example: {path}")


def _threads():
    try:
        return max(1, int(os.environ.get("LAURENTIA_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# commands


def _settings(problem, A, cls):
    return {"class": cls, "window": hz_json(A.horizon), "characteristic": A.field.characteristic,
            "labels": list(A.labels)}


def _inspect(problem, A, S, cls):
    labels = A.labels
    peirce = A.peirce_dims()
    data = {"dim_q": A.dim_q(), "finite": A.finite,
            "cartan": [[peirce[(s, p)] for p in labels] for s in labels]}
    return True, None, data


def _standardize(problem, A, S, cls):
    std = {}
    for p in S.order.labels:
        D, _ = S.standard_module(p)
        std[p] = {"dim_q_delta": D.dim_q(), "dim_q_bar_delta": S.proper_standard(p).dim_q(),
                  "dim_q_B": S.endo_algebra(p).dims()}
    return True, None, {"standard": std}


def _chain_summary(ch):
    return [{"label": l.label, "multiplicity": l.multiplicity, "passed": l.passed} for l in ch.layers]


def _check(problem, A, S, cls):
    def axioms():
        return S.check_axioms(cls)

    def bgg():
        return Stratification(A, S.order, S.tau).bgg_check(None)

    def chain():
        return Stratification(A, S.order, S.tau).heredity_chain(cls)

    n = _threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=min(n, 3)) as ex:
            fr, fb, fc = ex.submit(axioms), ex.submit(bgg), ex.submit(chain)
            rep, b, ch = fr.result(), fb.result(), fc.result()
    else:
        rep, b, ch = axioms(), bgg(), chain()
    rep.bgg = b["passed"]
    rep.chain = _chain_summary(ch)
    data = rep.to_json()
    data.pop("passed")
    return rep.passed, rep.witnesses[0] if rep.witnesses else None, data


def _bgg(problem, A, S, cls):
    tau = A.involution
    if tau is not None:
        S.check_balanced(tau)
    res = S.bgg_check(tau)
    rows = [{"P": p, "Delta": s, "left": l, "right": r, "match": m}
            for (p, s), (l, r, m) in res["table"].items()]
    data = {"table": rows, "side": "proper standard" if tau is not None else "proper costandard"}
    if res["duality"] is not None:
        d = res["duality"]
        data["duality"] = {"passed": d.passed, "witness": d.witness,
                           "pairs": [{"Delta": p, "costandard": s, "hom": h, "ext1": e}
                                     for (p, s), (h, e) in d.detail.items()]}
    return res["passed"], res["witness"], data


def _chain(problem, A, S, cls):
    ch = S.heredity_chain(cls)
    return ch.passed, ch.witness, ch.to_json()


def _resolve(problem, A, S, cls):
    res = S.resolution_checks()
    data = {"pd": res["pd"], "koszul": res["koszul"], "gldim": res["gldim"]}
    return res["passed"], res["witnesses"][0] if res["witnesses"] else None, data


def _cellularize(problem, A, S, cls):
    if A.involution is None:
        raise NotBalanced("cellularize needs an [involution] section")
    ch = S.heredity_chain(cls)
    if not ch.passed:
        return False, ch.witness, {"chain": ch.to_json()}
    res = S.cellularize(ch, A.involution)
    return res["passed"], res["witness"], {"layers": res["layers"]}


_RUNNERS = {"inspect": _inspect, "standardize": _standardize, "check": _check, "bgg": _bgg,
            "chain": _chain, "resolve": _resolve, "cellularize": _cellularize}

_ERRORS = (InputError, AlgebraError, AboveHorizon, ModuleError, OrderError, NotBalanced,
           CharacteristicTwo)


def run_check(path, command="check", window=None, characteristic=None, cls=None) -> Report:
    """Parse ``path`` and run one command; raises the input/precondition errors."""
    if command not in _RUNNERS:
        raise ValueError(f"unknown command {command!r}")
    problem = load_problem(str(path))
    cls = cls or problem.cls
    if cls not in CLASSES:
        raise InputError(f"unknown class {cls!r}")
    A = problem.build(window, characteristic)
    S = Stratification(A, problem.order(A), A.involution)
    passed, witness, data = _RUNNERS[command](problem, A, S, cls)
    data = {**_plain(data), "settings": _settings(problem, A, cls)}
    return Report(command, problem.name or str(path), bool(passed), witness, data)


def build_parser():
    ap = argparse.ArgumentParser(prog="laurentia", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="TOML input file or built-in example name")
    ap.add_argument("--window", type=int, help="top degree of the computation window")
    ap.add_argument("--field", type=int, default=None, metavar="P",
                    help="characteristic: 0 for the rationals or a prime")
    ap.add_argument("--class", dest="cls", choices=CLASSES, help="class of the algebras B_pi")
    ap.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    ap.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.field is not None:
        try:
            Field(args.field)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR
    try:
        report = run_check(args.input, args.command, args.window, args.field, args.cls)
    except _ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.buffer.write(export_report(report, args.format))
    sys.stdout.flush()
    if args.json:
        Path(args.json).write_bytes(export_report(report, "json"))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
