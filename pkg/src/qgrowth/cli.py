"""Command-line front end.

Usage::

    qgrowth series --object ao:3 --K 10
    qgrowth growth --object ao:3 --K 5 --format csv
    qgrowth walk --object lie:A1 --k 3
    qgrowth lie --object lie:G2 --K 20
    qgrowth ratio --family as --n 5
    qgrowth conjecture --object lie:A2

Objects are ring expressions (``ao:3``, ``prod(zr:1,free:2)``,
``freeversion(ao:2)``, ...) or compact Lie groups ``lie:A2``.  Output is
deterministic: exact rationals are ``"p/q"`` strings, exact integers are
decimal strings and floats carry 12 significant digits.

Exit codes: 0 success, 2 malformed input, 3 guard violation, 4 the
computation itself failed (for instance a subexponential ratio request).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Callable

from . import asymptotics, fusion, lie, qgroups, series
from .fusion import FusionRing
from .lie import RootSystem

__all__ = ["RunSpec", "CliError", "run", "main", "COMMANDS", "GUARDS"]

COMMANDS = ("series", "growth", "walk", "lie", "ratio", "conjecture")

GUARDS = {
    "ball-size": 10**6,
    "delta-expansion": lie.MAX_DELTA_ROOTS,
    "exact-walk": 10**3,
}

EXIT_PARSE, EXIT_GUARD, EXIT_COMPUTE = 2, 3, 4

_ANCHORS = {
    "series": "sphere and ball series S, B with P = 1 - 1/S and Q = (1 + 1/z) P",
    "growth": "ball volumes b_k as sums of dim^2 over irreducibles of length <= k",
    "walk": "return probability p_k = n^(-2k) * multiplicity of 1 in u^(2k)",
    "lie": "Weyl dimension formula, Weyl density and the Gaussian limit of p_k",
    "ratio": "closed-form sphere series of A_o(n), A_u(n), A_s(n) and their poles",
    "conjecture": "b_k ~ k^d versus p_k ~ k^(-d/2), numerical comparison only",
}

_RATIO_ORACLES: dict[str, tuple[Callable[[int], float], Callable[[int], str]]] = {
    "ao": (lambda n: asymptotics.root_qn(n + 2).value ** 2, lambda n: f"q_{n + 2}^2"),
    "au": (asymptotics.root_rn, lambda n: f"r_{n}"),
    "as": (lambda n: asymptotics.root_qn(n).value ** 2, lambda n: f"q_{n}^2"),
}


class CliError(Exception):
    """Carries the exit code and a message naming the grammar production or guard."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunSpec:
    command: str
    object: str | None = None
    family: str | None = None
    n: int | None = None
    K: int | None = None
    k: int | None = None
    format: str = "json"
    mode: str = "exact"
    window: tuple[int, int] | None = None
    threads: int = 1

    def params(self) -> dict:
        out = {}
        for name in ("family", "n", "K", "k", "mode", "window", "threads"):
            val = getattr(self, name)
            if val is not None:
                out[name] = list(val) if isinstance(val, tuple) else val
        return out


# serialization


def _int(x: int) -> str:
    return str(int(x))


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _flt(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None if x is None else str(x)
    return float(f"{x:.12g}")


def _fit(f: asymptotics.FitResult) -> dict:
    d = f.to_dict()
    d["estimate"] = _flt(d["estimate"])
    d["residual"] = _flt(d["residual"])
    return d


def _frac_log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


# object resolution


@dataclass
class _Object:
    text: str
    ring: FusionRing | None = None
    rs: RootSystem | None = None


def _resolve(text: str | None) -> _Object:
    if not text:
        raise CliError(EXIT_PARSE, "object: --object is required for this command")
    if text.startswith("lie:"):
        try:
            return _Object(text, rs=lie.build_root_system(text[4:]))
        except ValueError as e:
            raise CliError(EXIT_PARSE, f"lie: {e}") from None
    try:
        return _Object(text, ring=qgroups.parse_ring(text))
    except qgroups.RingSpecError as e:
        raise CliError(EXIT_PARSE, str(e)) from None


def _need(value, name: str, command: str):
    if value is None:
        raise CliError(EXIT_PARSE, f"{command}: --{name} is required")
    return value


def _lie_ball_guard(rs: RootSystem, K: int) -> None:
    # dominant weights with sum of labels <= K
    size = math.comb(K + rs.rank, rs.rank)
    if size > GUARDS["ball-size"]:
        raise CliError(EXIT_GUARD, f"guard ball-size: {size} irreducibles exceeds {GUARDS['ball-size']}")


def _delta_guard(rs: RootSystem) -> None:
    if rs.num_roots > GUARDS["delta-expansion"]:
        raise CliError(
            EXIT_GUARD,
            f"guard delta-expansion: {rs.name} has {rs.num_roots} roots, limit {GUARDS['delta-expansion']}",
        )


def _volumes(spec: RunSpec, K: int) -> tuple[list[int], list[int]]:
    if spec.family is not None:
        rf = _closed_form(spec)
        s = series.expand(rf, K).as_ints()
        return list(accumulate(s)), s
    obj = _resolve(spec.object)
    if obj.rs is not None:
        _lie_ball_guard(obj.rs, K)
        return lie.lie_volumes(obj.rs, K)
    try:
        return fusion.volumes(obj.ring, K, limit=GUARDS["ball-size"])
    except fusion.BallLimitExceeded as e:
        raise CliError(EXIT_GUARD, f"guard {e}") from None


def _closed_form(spec: RunSpec) -> series.RationalFunction:
    n = _need(spec.n, "n", "family")
    try:
        return series.closed_form(spec.family, n)
    except ValueError as e:
        raise CliError(EXIT_PARSE, f"family: {e}") from None


def _subject(spec: RunSpec) -> str:
    return spec.object if spec.family is None else f"{spec.family}:{spec.n}"


# commands


def _rf_dict(rf: series.RationalFunction) -> dict:
    return {"num": [_rat(c) for c in rf.num.coeffs], "den": [_rat(c) for c in rf.den.coeffs]}


def _cmd_series(spec: RunSpec) -> tuple[dict, list]:
    K = _need(spec.K, "K", "series")
    b, s = _volumes(spec, K)
    S = series.RationalFunction(series.Polynomial(s))
    P = series.expand(series.p_invariant(S), K)
    # Q = P + P/z; its coefficient k needs P_{k+1}, so Q is known to order K-1
    Q = [P[j] + P[j + 1] for j in range(K)]
    res = {
        "k": list(range(K + 1)),
        "s": [_int(x) for x in s],
        "b": [_int(x) for x in b],
        "P": [_rat(x) for x in P],
        "Q": [_rat(x) for x in Q],
    }
    if spec.family is not None:
        rf = _closed_form(spec)
        res["S_closed_form"] = _rf_dict(rf)
        res["P_closed_form"] = _rf_dict(series.p_invariant(rf))
        res["Q_closed_form"] = _rf_dict(series.q_invariant(rf))
    rows = [["k", "s_k", "b_k"]] + [[k, s[k], b[k]] for k in range(K + 1)]
    return res, rows


def _cmd_growth(spec: RunSpec) -> tuple[dict, list]:
    K = _need(spec.K, "K", "growth")
    b, s = _volumes(spec, K)
    res = {"k": list(range(K + 1)), "s": [_int(x) for x in s], "b": [_int(x) for x in b]}
    if K >= 4:
        res["fit"] = _fit(asymptotics.classify_growth(b, spec.window))
    rows = [["k", "s_k", "b_k"]] + [[k, s[k], b[k]] for k in range(K + 1)]
    return res, rows


def _walk_table(obj: _Object, k: int, mode: str) -> dict[int, Fraction | float]:
    """Exact ``p_j`` (Fractions) or ``log p_j`` (floats) for ``j = 1..k``."""
    ks = range(1, k + 1)
    if obj.rs is not None:
        _delta_guard(obj.rs)
        if mode == "exact":
            return lie.lie_exact_return_probabilities(obj.rs, ks)
        return {j: math.log(p) if p > 0 else -math.inf for j, p in lie.lie_return_probabilities(obj.rs, ks).items()}
    if not obj.ring.exact_fusion:
        raise CliError(EXIT_COMPUTE, f"walk: {obj.text} carries lengths and dimensions only")
    if mode == "exact":
        return fusion.return_probabilities(obj.ring, ks)
    return fusion.log_return_probabilities(obj.ring, ks, mode)


def _cmd_walk(spec: RunSpec) -> tuple[dict, list]:
    k = _need(spec.k, "k", "walk")
    if k < 1:
        raise CliError(EXIT_PARSE, "walk: --k must be >= 1")
    if spec.mode == "exact" and k > GUARDS["exact-walk"]:
        raise CliError(EXIT_GUARD, f"guard exact-walk: k = {k} exceeds {GUARDS['exact-walk']}; use --mode logfloat")
    table = _walk_table(_resolve(spec.object), k, spec.mode)
    rows = [["k", "p_k_num", "p_k_den", "p_k_float"]]
    if spec.mode == "exact":
        res = {"k": k, "p": _rat(table[k]), "p_float": _flt(float(table[k])), "table": [_rat(table[j]) for j in sorted(table)]}
        rows += [[j, p.numerator, p.denominator, f"{float(p):.12g}"] for j, p in sorted(table.items())]
    else:
        res = {"k": k, "log_p": _flt(table[k]), "table_log_p": [_flt(table[j]) for j in sorted(table)]}
        rows += [[j, "", "", f"{math.exp(lp):.12g}"] for j, lp in sorted(table.items())]
    return res, rows


def _cmd_lie(spec: RunSpec) -> tuple[dict, list]:
    obj = _resolve(spec.object)
    if obj.rs is None:
        raise CliError(EXIT_PARSE, f"lie: expected an object of the form lie:NAME, got {obj.text!r}")
    rs = obj.rs
    rank = rs.rank
    fund = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    res = {
        "name": rs.name,
        "rank": rank,
        "dimension": rs.dimension,
        "num_roots": rs.num_roots,
        "weyl_order": rs.weyl_order,
        "cartan": [[int(x) for x in row] for row in rs.cartan],
        "fundamental_dims": [_int(lie.weyl_dim(rs, w)) for w in fund],
        "generator_dim": sum(lie.generator_weights(rs).values()),
    }
    if rs.num_roots <= GUARDS["delta-expansion"]:
        dh = lie.delta_hat(rs)
        res["delta_hat"] = {",".join(map(str, a)): c for a, c in sorted(dh.items())}
        res["walk_lattice_index"] = lie.walk_lattice_index(rs)
        if rank <= 2:
            res["gaussian_limit_constant"] = _flt(lie.gaussian_limit_constant(rs))
    rows = [["k", "s_k", "b_k"]]
    if spec.K is not None:
        _lie_ball_guard(rs, spec.K)
        b, s = lie.lie_volumes(rs, spec.K)
        res["s"] = [_int(x) for x in s]
        res["b"] = [_int(x) for x in b]
        rows += [[k, s[k], b[k]] for k in range(spec.K + 1)]
    return res, rows


def _cmd_ratio(spec: RunSpec) -> tuple[dict, list]:
    if spec.family is None:
        K = _need(spec.K, "K", "ratio")
        b, _ = _volumes(spec, K)
        fit = asymptotics.fit_exponential_ratio(b, spec.window)
        res = {"ratio": _flt(fit.estimate), "fit": _fit(fit)}
        return res, [["ratio"], [f"{fit.estimate:.12g}"]]
    fam = spec.family.lower()
    n = _need(spec.n, "n", "ratio")
    rf = _closed_form(spec)
    try:
        ratio = series.growth_ratio(rf)
    except series.SubexponentialGrowth as e:
        raise CliError(EXIT_COMPUTE, f"ratio: {e}") from None
    oracle_fn, oracle_name = _RATIO_ORACLES[fam]
    oracle = oracle_fn(n)
    res = {
        "ratio": _flt(ratio),
        "oracle": oracle_name(n),
        "oracle_value": _flt(oracle),
        "abs_difference": _flt(abs(ratio - oracle)),
    }
    return res, [["ratio", "oracle", "oracle_value"], [f"{ratio:.12g}", oracle_name(n), f"{oracle:.12g}"]]


def _cmd_conjecture(spec: RunSpec) -> tuple[dict, list]:
    obj = _resolve(spec.object)
    K = spec.K if spec.K is not None else 200
    k = spec.k if spec.k is not None else 400
    mode = "logfloat" if spec.mode == "exact" and k > GUARDS["exact-walk"] else spec.mode

    def growth_side():
        b, _ = _volumes(spec, K)
        return asymptotics.classify_growth(b, spec.window)

    def walk_side():
        # the exact engine only matters for tiny k; floats suffice for a slope
        table = _walk_table(obj, k, "logfloat" if mode == "logfloat" or obj.rs is not None else "exact")
        logs = {j: (v if isinstance(v, float) else _frac_log(v)) for j, v in table.items()}
        return asymptotics.classify_growth(logs, spec.window, logs=True)

    with ThreadPoolExecutor(max_workers=max(1, spec.threads)) as pool:
        g_future, w_future = pool.submit(growth_side), pool.submit(walk_side)
        g, w = g_future.result(), w_future.result()
    verdict = asymptotics.conjecture_report(g, w)
    vd = verdict.to_dict()
    for key in ("growth_exponent", "walk_exponent", "difference"):
        vd[key] = _flt(vd[key])
    res = {"growth_fit": _fit(g), "walk_fit": _fit(w), "report": vd}
    rows = [
        ["growth_exponent", "walk_exponent", "difference", "passed", "verdict"],
        [vd["growth_exponent"], vd["walk_exponent"], vd["difference"], vd["passed"], vd["verdict"]],
    ]
    return res, rows


_HANDLERS = {
    "series": _cmd_series,
    "growth": _cmd_growth,
    "walk": _cmd_walk,
    "lie": _cmd_lie,
    "ratio": _cmd_ratio,
    "conjecture": _cmd_conjecture,
}


def _render(spec: RunSpec, results: dict, rows: list) -> str:
    if spec.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    doc = {
        "command": spec.command,
        "object": _subject(spec),
        "params": spec.params(),
        "results": results,
        "provenance": {"paper_anchor": _ANCHORS[spec.command]},
    }
    return json.dumps(doc, indent=2) + "\n"


def run(spec: RunSpec) -> tuple[int, str]:
    """Execute ``spec``; returns ``(exit_code, text)`` where text is the document or the error message."""
    if spec.command not in _HANDLERS:
        return EXIT_PARSE, f"command: unknown command {spec.command!r}; expected one of {', '.join(COMMANDS)}"
    if spec.format not in ("json", "csv"):
        return EXIT_PARSE, f"format: expected json or csv, got {spec.format!r}"
    if spec.mode not in fusion.MODES:
        return EXIT_PARSE, f"mode: expected exact or logfloat, got {spec.mode!r}"
    if spec.family is not None and spec.family.lower() not in _RATIO_ORACLES:
        return EXIT_PARSE, f"family: unknown family {spec.family!r}; expected ao, au or as"
    try:
        results, rows = _HANDLERS[spec.command](spec)
    except CliError as e:
        return e.code, str(e)
    except (series.SubexponentialGrowth, series.DegenerateSeriesError, ArithmeticError) as e:
        return EXIT_COMPUTE, f"{spec.command}: {e}"
    return 0, _render(spec, results, rows)


_WINDOW = re.compile(r"^(\d+):(\d+)$")


def _window(text: str) -> tuple[int, int]:
    m = _WINDOW.match(text)
    if not m or int(m.group(1)) >= int(m.group(2)):
        raise argparse.ArgumentTypeError(f"window: expected a:b with a < b, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgrowth", description="Growth and random-walk invariants of discrete quantum groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=_ANCHORS[name])
        p.add_argument("--object", help="ring expression such as ao:3, prod(a,b), free(a,b), freeversion(a), or lie:A2")
        p.add_argument("--family", choices=["ao", "au", "as"], help="closed-form family instead of --object")
        p.add_argument("--n", type=int)
        p.add_argument("--K", type=int, help="radius for volumes")
        p.add_argument("--k", type=int, help="largest walk length")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--mode", choices=list(fusion.MODES), default="exact")
        p.add_argument("--window", type=_window, help="fit window a:b")
        p.add_argument("--threads", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = RunSpec(
        command=args.command,
        object=args.object,
        family=args.family,
        n=args.n,
        K=args.K,
        k=args.k,
        format=args.format,
        mode=args.mode,
        window=args.window,
        threads=args.threads,
    )
    code, text = run(spec)
    if code:
        print(f"qgrowth: error: {text}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
