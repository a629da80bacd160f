"""Command-line front end.

    hopfrenorm decompose --input phi.json [--degree N] [--method all]
    hopfrenorm idempotents --degree N [--series left]
    hopfrenorm verify --suite all --degree 5 --seed 1
    hopfrenorm beta --input phi.json [--degree N]

Exit codes: 0 success, 2 bad input or arguments, 3 degree or pole bound
exceeded, 4 the decompositions disagree (or a verification check failed).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import descent as dsc
from . import suites
from .characters import InfChar, LinMap, character_from_json, character_to_json, tree_values
from .descent import DegreeTooLarge
from .hopf import DEFAULT_DEGREE, Forest, parse_tree
from .renorm import (
    ACCELERATED,
    PLAIN,
    bogoliubov_decompose,
    beta,
    exp_decompose,
)
from .series import FloorExceeded, LaurentSeries, pole_bound_scope

log = logging.getLogger("hopfrenorm")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BOUND = 3
EXIT_MISMATCH = 4

METHODS = ("bogoliubov", "zassenhaus", "accelerated", "all")
SERIES_CHOICES = ("left", "right", "accel-left", "accel-right", "dynkin")


class InputError(ValueError):
    """Unreadable or malformed input."""


@dataclass
class RunConfig:
    command: str
    degree: int | None = None
    hopf: str | None = None
    input: Path | None = None
    output: Path | None = None
    format: str = "json"
    seed: int = 1
    method: str = "all"
    series: str = "left"
    suite: str = "all"
    count: int = 50

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(
            command=ns.command,
            degree=getattr(ns, "degree", None),
            hopf=getattr(ns, "hopf", None),
            input=Path(ns.input) if getattr(ns, "input", None) else None,
            output=Path(ns.output) if getattr(ns, "output", None) else None,
            format=getattr(ns, "format", "json"),
            seed=getattr(ns, "seed", 1),
            method=getattr(ns, "method", "all"),
            series=getattr(ns, "series", "left"),
            suite=getattr(ns, "suite", "all"),
            count=getattr(ns, "count", 50),
        )


def check_degree(N: int, family: str | None) -> None:
    cap = DEFAULT_DEGREE.get(family, dsc.WEIGHT_CAP) if family else dsc.WEIGHT_CAP
    cap = dsc.max_degree(cap)
    if N > cap:
        raise DegreeTooLarge(f"degree {N} exceeds cap {cap} for {family or 'descent algebra'}")
    if N < 0:
        raise InputError("degree must be nonnegative")


def load_character(cfg: RunConfig):
    try:
        text = cfg.input.read_text() if cfg.input and str(cfg.input) != "-" else sys.stdin.read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read character: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("character JSON must be an object")
    if cfg.hopf and obj.get("hopf") != cfg.hopf:
        raise InputError(f"input is a {obj.get('hopf')} character, not {cfg.hopf}")
    N = cfg.degree if cfg.degree is not None else obj.get("truncation")
    try:
        N = int(N)
        check_degree(N, obj.get("hopf"))
        return character_from_json(obj, N)
    except DegreeTooLarge:
        raise
    except (ValueError, TypeError, KeyError, ArithmeticError) as exc:
        raise InputError(f"malformed character: {exc}") from exc


def inf_char_to_json(f: LinMap) -> dict:
    return {t.code(): v.to_json() for t, v in tree_values(f).items() if f.values.get(Forest((t,)))}


def _fmt_map(name: str, f: LinMap) -> list[str]:
    return [f"{name}({t.code()}) = {v}" for t, v in tree_values(f).items()]


def decompose_report(phi, method: str = "all") -> dict:
    bog = bogoliubov_decompose(phi)
    pairs = {"bogoliubov": (bog.phi_minus, bog.phi_plus)}
    facts = {}
    if method in ("zassenhaus", "all"):
        facts["plain"], *pairs["zassenhaus"] = exp_decompose(phi, PLAIN)
    if method in ("accelerated", "all"):
        facts["accelerated"], *pairs["accelerated"] = exp_decompose(phi, ACCELERATED)
    chosen = "bogoliubov" if method == "all" else method
    mismatch = None
    disagreeing = None
    for name, (m, p) in pairs.items():
        if name == "bogoliubov":
            continue
        bad = bog.phi_minus.first_mismatch(m) or bog.phi_plus.first_mismatch(p)
        if bad is not None and mismatch is None:
            mismatch, disagreeing = bad, name
    factors = []
    for mode, fact in facts.items():
        for level, ((lo, hi), lm, lp) in enumerate(
                zip(fact.blocks, fact.factors_minus, fact.factors_plus), start=1):
            factors.append({
                "mode": mode,
                "level": level,
                "degrees": [lo, hi],
                "minus": inf_char_to_json(lm),
                "plus": inf_char_to_json(lp),
            })
    phi_minus, phi_plus = pairs[chosen]
    return {
        "hopf": phi.H.family,
        "truncation": phi.H.N,
        "method": method,
        "phi_minus": character_to_json(phi_minus),
        "phi_plus": character_to_json(phi_plus),
        "factors": factors,
        "agreement": mismatch is None,
        "first_mismatch": mismatch.code() if mismatch is not None else None,
        "disagreeing_method": disagreeing,
    }


def report_table(report: dict, phi) -> str:
    lines = [f"# {report['hopf']}, N = {report['truncation']}, method = {report['method']}"]
    for key in ("phi_minus", "phi_plus"):
        m = character_from_json(report[key])
        lines += _fmt_map(key, m)
    for f in report["factors"]:
        lo, hi = f["degrees"]
        H = phi.H
        for side in ("minus", "plus"):
            vals = InfChar.from_tree_values(H, {parse_tree(c): LaurentSeries.from_json(s) for c, s in f[side].items()})
            for t, v in tree_values(vals).items():
                if vals.values.get(Forest((t,))):
                    lines.append(f"{f['mode']} level {f['level']} [{lo},{hi}] {side}({t.code()}) = {v}")
    lines.append(f"agreement: {str(report['agreement']).lower()}")
    if report["first_mismatch"]:
        lines.append(f"first mismatch: {report['first_mismatch']} ({report['disagreeing_method']})")
    return "\n".join(lines)


def emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        cfg.output.write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_decompose(cfg: RunConfig) -> int:
    phi = load_character(cfg)
    with pole_bound_scope(max(phi.H.N, 1)):
        report = decompose_report(phi, cfg.method)
    if cfg.format == "table":
        emit(cfg, report_table(report, phi))
    else:
        emit(cfg, json.dumps(report, indent=2))
    return EXIT_OK if report["agreement"] else EXIT_MISMATCH


def series_elements(N: int, series: str) -> list[dsc.DescentElement]:
    if series == "dynkin":
        return dsc.dynkin(N)
    side = dsc.RIGHT if series.endswith("right") else dsc.LEFT
    mode = dsc.ACCELERATED if series.startswith("accel") else dsc.PLAIN
    return dsc.zassenhaus(N, side, mode)


def _word_line(n: int, coeffs: dict, symbol: str) -> str:
    if not coeffs:
        return f"{n}: 0"
    parts = []
    for c, v in sorted(coeffs.items(), key=lambda kv: dsc.comp_key(kv[0])):
        body = f"{dsc._fmt(abs(v))}·{symbol}({dsc.format_composition(c)})"
        parts.append(body if not parts and v > 0 else
                     ("−" + body if not parts else ("+ " if v > 0 else "− ") + body))
    return f"{n}: " + " ".join(parts)


def cmd_idempotents(cfg: RunConfig) -> int:
    N = cfg.degree if cfg.degree is not None else 4
    check_degree(N, None)
    if N < 1:
        raise InputError("degree must be at least 1")
    elems = series_elements(N, cfg.series)
    table = dsc.change_of_basis(N)
    if cfg.format == "json":
        out = {
            "series": cfg.series,
            "elements": [e.to_json() if e else {"degree": n, "basis": "composition", "element": {}}
                         for n, e in enumerate(elems, start=1)],
            "dynkin_in_right_zassenhaus_words": dsc.coefficient_table_json(table),
        }
        emit(cfg, json.dumps(out, indent=2))
        return EXIT_OK
    lines = [f"# {cfg.series} series in the composition basis"]
    lines += [f"{n}: {e}" for n, e in enumerate(elems, start=1)]
    lines.append("# D_n in words of the right Zassenhaus series")
    lines += [_word_line(n, row, "Z~") for n, row in sorted(table.items())]
    emit(cfg, "\n".join(lines))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite not in suites.SUITES:
        raise InputError(f"unknown suite {cfg.suite!r}; choose from {', '.join(suites.SUITES)}")
    N = cfg.degree if cfg.degree is not None else 5
    check_degree(N, "rooted_trees")
    t0 = time.perf_counter()
    checks = suites.run_suite(cfg.suite, N, cfg.seed, cfg.count)
    lines = [c.line() for c in checks]
    ok = all(c.passed for c in checks)
    lines.append(f"{'PASS' if ok else 'FAIL'}: {sum(c.passed for c in checks)}/{len(checks)} checks "
                 f"in {time.perf_counter() - t0:.2f}s")
    emit(cfg, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_beta(cfg: RunConfig) -> int:
    phi = load_character(cfg)
    check_degree(phi.H.N, None)
    with pole_bound_scope(max(phi.H.N, 1)):
        comps = beta(phi)
    if cfg.format == "table":
        lines = [f"# beta components, {phi.H.family}, N = {phi.H.N}"]
        for n, b in enumerate(comps, start=1):
            lines += [f"{n}: " + s for s in _fmt_map("beta", b) if not s.endswith("= 0")]
        emit(cfg, "\n".join(lines))
    else:
        out = {"hopf": phi.H.family, "truncation": phi.H.N,
               "beta": [{"degree": n, "values": inf_char_to_json(b)}
                        for n, b in enumerate(comps, start=1)]}
        emit(cfg, json.dumps(out, indent=2))
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "idempotents": cmd_idempotents,
    "verify": cmd_verify,
    "beta": cmd_beta,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfrenorm", description="Birkhoff decomposition of characters on rooted trees.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", "-i", required=True, help="character JSON ('-' for stdin)")
            sp.add_argument("--hopf", choices=("rooted_trees", "ladders"),
                            help="require the input to be on this family")
        sp.add_argument("--degree", "-N", type=int, help="truncation degree")
        sp.add_argument("--output", "-o", help="write here instead of stdout")
        sp.add_argument("--format", choices=("json", "table"), default="json" if with_input else "table")

    d = sub.add_parser("decompose", help="Bogoliubov and exponential decompositions")
    common(d)
    d.add_argument("--method", choices=METHODS, default="all")

    i = sub.add_parser("idempotents", help="Zassenhaus and Dynkin elements")
    common(i, with_input=False)
    i.add_argument("--series", choices=SERIES_CHOICES, default="left")

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", default="all", help=", ".join(suites.SUITES))
    v.add_argument("--degree", "-N", type=int, default=5)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--count", type=int, default=50, help="random characters per suite")
    v.add_argument("--output", "-o")

    b = sub.add_parser("beta", help="beta function components")
    common(b)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FloorExceeded, DegreeTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
