"""Command-line interface: ``frobcoh <command> ...``.

Exit codes: 0 success, 1 a check reported a mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .chevalley import structure_constants
from .classify import (CohClass, br_conflicts, br_weights_in_box, classify_H3_B, classify_H3_B1,
                       classify_H3_Br, cohomology_B1, gamma_w_table_check)
from .cohomology import TRIVIAL, USTAR, TChar, ce_cohomology, h3_U1_char, kostant_check
from .crosscheck import closed_form, oracle_crosscheck, ustar_h1_check
from .errors import FiltrationViolation, FrobcohError, InternalInconsistency
from .induction import good_filtration_factors
from .rootsums import SOLVERS, compare_catalog
from .rootsys import RootSystem, Weight, build_root_system

SCHEMA = 1


class InputError(FrobcohError, ValueError):
    pass


# -- weight expressions --------------------------------------------------------

_LITERAL = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")
_DOT0 = re.compile(r"w\.0\(([^)]*)\)")


def parse_weight(text: str, R: RootSystem, p: int) -> Weight:
    """Parse a weight in the user's labels.

    Accepts ``"1,-3,0"`` (fundamental-weight coordinates) or an expression
    in ``p``, ``a1..an`` / ``a, b, c, ...`` (simple roots), ``w1..wn``
    (fundamental weights), ``rho`` and ``w.0(s1 s2 s1)`` (dot action on 0).
    Juxtaposition such as ``7b`` means ``7*b`` and ``^`` means power.
    """
    if _LITERAL.match(text):
        coords = [int(x) for x in text.split(",")]
        if len(coords) != R.rank:
            raise InputError(f"expected {R.rank} coordinates, got {len(coords)}")
        return R.from_user(Weight(tuple(coords)))
    # w.0(s1 s2) -> dotzero("1.2") so the digits survive the juxtaposition rule below
    src = _DOT0.sub(lambda m: f'dotzero("{_reflections(m.group(1))}")', text).replace("^", "**")
    src = re.sub(r"(\d)\s*([A-Za-z(])", r"\1*\2", src)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse weight {text!r}") from exc
    value = _Evaluator(R, p).visit(tree.body)
    if not isinstance(value, Weight):
        raise InputError(f"{text!r} is a number, not a weight")
    return value


def _reflections(word: str) -> str:
    out = []
    for s in word.replace(",", " ").split():
        m = re.fullmatch(r"s(\d+)", s)
        if not m:
            raise InputError(f"bad reflection {s!r}")
        out.append(m.group(1))
    return ".".join(out)


class _Evaluator:
    def __init__(self, R: RootSystem, p: int):
        self.R, self.p = R, p

    def name(self, ident: str):
        R = self.R
        if ident == "p":
            return self.p
        if ident == "rho":
            return R.rho
        m = re.fullmatch(r"([aw])(\d+)", ident)
        if m:
            i = int(m.group(2))
            if not 1 <= i <= R.rank:
                raise InputError(f"{ident}: index out of range for {R.label}")
            k = R.user_index(i - 1)
            return R.simple_weights[k] if m.group(1) == "a" else R.fundamental(k)
        if len(ident) == 1 and ident in "abcdefgh" and ord(ident) - 97 < R.rank:
            return R.simple_weights[R.user_index(ord(ident) - 97)]
        raise InputError(f"unknown name {ident!r}")

    def dotzero(self, word: str) -> Weight:
        idx = []
        for i in (int(x) for x in word.split(".") if x):
            if not 1 <= i <= self.R.rank:
                raise InputError(f"s{i}: index out of range for {self.R.label}")
            idx.append(self.R.user_index(i - 1))
        return self.R.element(idx).dot(self.R.zero())

    def visit(self, node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            return self.name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.visit(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "dotzero":
            return self.dotzero(node.args[0].value)
        if isinstance(node, ast.BinOp):
            a, b = self.visit(node.left), self.visit(node.right)
            if isinstance(node.op, ast.Add) and type(a) is type(b):
                return a + b
            if isinstance(node.op, ast.Sub) and type(a) is type(b):
                return a - b
            if isinstance(node.op, ast.Mult) and (isinstance(a, int) or isinstance(b, int)):
                return a * b
            if isinstance(node.op, ast.Pow) and isinstance(a, int) and isinstance(b, int) and b >= 0:
                return a ** b
        raise InputError(f"unsupported expression: {ast.dump(node)}")


# -- config ----------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise InputError(f"empty list {text!r}")
    return out


@dataclass
class RunConfig:
    system: RootSystem
    primes: list[int]
    rs: list[int]
    degrees: list[int]
    box: int | None
    fmt: str
    jobs: int
    force: bool
    extra: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.primes[0]

    @classmethod
    def from_args(cls, args) -> RunConfig:
        try:
            R = build_root_system(args.type)
            primes = _int_list(args.p)
            rs = _int_list(args.r)
            degrees = _int_list(args.deg) if args.deg is not None else []
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if any(p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)) for p in primes):
            raise InputError(f"--p must list primes, got {primes}")
        if any(r < 1 for r in rs):
            raise InputError("--r must be positive")
        if any(n < 0 for n in degrees):
            raise InputError("--deg must be non-negative")
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        return cls(R, primes, rs, degrees, args.box, args.format, args.jobs, args.force)


# -- output --------------------------------------------------------------------


def wjson(R: RootSystem, w: Weight | None) -> list[int] | None:
    return None if w is None else list(R.to_user(w).coords)


def wtext(R: RootSystem, w: Weight | None) -> str:
    return "-" if w is None else "[" + ",".join(map(str, R.to_user(w).coords)) + "]"


def char_rows(R: RootSystem, ch: TChar) -> list[dict]:
    rows = [{"omega": wjson(R, w), "mult": m} for w, m in ch.items()]
    return sorted(rows, key=lambda d: d["omega"])


def class_json(R: RootSystem, c: CohClass) -> dict:
    return {"tag": c.tag, "nu": wjson(R, c.nu), "twist": c.twist, "mult": c.mult,
            "dim": c.dim, "case": c.case, "conflicts": list(c.conflicts)}


@dataclass
class Report:
    meta: dict
    result: dict | None = None
    rows: list[dict] | None = None
    status: int = 0


def _flat(v: Any) -> str:
    if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, dict) for x in v)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, list):
        return "[" + ",".join(_flat(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, **rep.meta}
        if rep.result is not None:
            doc["result"] = rep.result
        if rep.rows is not None:
            doc["rows"] = rep.rows
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    rows = rep.rows if rep.rows is not None else [rep.result or {}]
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(cols)
        for r in rows:
            wr.writerow([_flat(r.get(c)) for c in cols])
        return buf.getvalue()
    head = " ".join(f"{k}={_flat(v)}" for k, v in rep.meta.items())
    if not cols:
        return head + "\n"
    table = [[_flat(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(t[i]) for t in table]) for i, c in enumerate(cols)]
    lines = [head, "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(t, widths)).rstrip() for t in table]
    return "\n".join(lines) + "\n"


def _meta(cfg: RunConfig, **more) -> dict:
    R = cfg.system
    return {"system": {"type": R.label, "rank": R.rank}, **more}


# -- commands --------------------------------------------------------------------


def cmd_coho_u(cfg: RunConfig, args) -> Report:
    R = cfg.system
    A = structure_constants(R)
    coeff = USTAR if args.coeff == "ustar" else TRIVIAL
    degrees = cfg.degrees or list(range(min(A.dim, 3) + 1))
    inside = [n for n in degrees if n <= A.dim]  # Λ^n(u*) = 0 beyond dim u
    rows, status = [], 0
    for p in cfg.primes:
        for n in inside:
            for row in char_rows(R, ce_cohomology(A, p, n, coeff)):
                rows.append({"p": p, "degree": n, **row})
        if args.check == "kostant" and coeff == TRIVIAL and inside:
            for rep in kostant_check(A, p, max(inside), inside):
                status |= 0 if rep.match else 1
                rows.append({"p": p, "degree": rep.degree, "check": "kostant",
                             "verdict": "match" if rep.match else "mismatch",
                             "excess": rep.excess.dim, "missing": rep.missing.dim})
    return Report(_meta(cfg, p=cfg.primes, coeff=coeff), rows=rows, status=status)


def cmd_coho_u1(cfg: RunConfig, args) -> Report:
    R = cfg.system
    rows = []
    for p in cfg.primes:
        if args.coeff == "ustar":
            oracle, ce = ustar_h1_check(R, p)
            rows += [{"p": p, "degree": 1, "source": "U1", **r} for r in char_rows(R, oracle)]
            if oracle != ce:
                return Report(_meta(cfg, p=cfg.primes), rows=rows, status=1)
        else:
            ch = h3_U1_char(structure_constants(R), p, cfg.force)
            rows += [{"p": p, "degree": 3, **r} for r in char_rows(R, ch)]
    return Report(_meta(cfg, p=cfg.primes), rows=rows)


def _lam(cfg: RunConfig, args) -> Weight:
    if args.lam is None:
        raise InputError("--lambda is required")
    return parse_weight(args.lam, cfg.system, cfg.p)


def cmd_b1(cfg: RunConfig, args) -> Report:
    lam = _lam(cfg, args)
    n = cfg.degrees[0] if cfg.degrees else 3
    c = cohomology_B1(cfg.system, lam, n, cfg.p, cfg.force)
    return Report(_meta(cfg, p=cfg.p, r=1, degree=n, **{"lambda": wjson(cfg.system, lam)}),
                  result=class_json(cfg.system, c))


def cmd_br(cfg: RunConfig, args) -> Report:
    lam = _lam(cfg, args)
    n = cfg.degrees[0] if cfg.degrees else 3
    r = cfg.rs[0]
    if r == 1:
        c = cohomology_B1(cfg.system, lam, n, cfg.p, cfg.force)
    elif n == 3:
        c = classify_H3_Br(cfg.system, lam, cfg.p, r, cfg.force)
    else:
        c = closed_form(cfg.system, lam, cfg.p, r, n)
        if c is None:
            raise InputError(f"no closed form for degree {n} with r={r}")
    return Report(_meta(cfg, p=cfg.p, r=r, degree=n, **{"lambda": wjson(cfg.system, lam)}),
                  result=class_json(cfg.system, c))


def cmd_b(cfg: RunConfig, args) -> Report:
    lam = _lam(cfg, args)
    res = classify_H3_B(cfg.system, lam, cfg.p, cfg.force)
    return Report(_meta(cfg, p=cfg.p, degree=3, **{"lambda": wjson(cfg.system, lam)}),
                  result={"dim": res.dim, "cases": list(res.cases)})


def cmd_gr(cfg: RunConfig, args) -> Report:
    R = cfg.system
    lam = _lam(cfg, args)
    r = cfg.rs[0]
    g = good_filtration_factors(R, lam, cfg.p, r, cfg.force)
    result = {"class": class_json(R, g.cls), "dim": g.dim,
              "factors": [{"omega": wjson(R, w), "mult": m} for w, m in g.factors],
              "dropped": [wjson(R, w) for w in g.dropped]}
    return Report(_meta(cfg, p=cfg.p, r=r, degree=3, **{"lambda": wjson(R, lam)}), result=result)


def _scan_one(label: str, p: int, r: int, box: int) -> tuple[list[tuple], list[str]]:
    R = build_root_system(label)
    seen = {}
    for lam, _ in br_weights_in_box(R, p, r, box):
        if lam not in seen:
            c = classify_H3_Br(R, lam, p, r)
            seen[lam] = (c.tag, c.nu, c.mult, c.dim, c.case)
    conflicts = [f"{c.first.label} / {c.second.label}" for c in br_conflicts(R, p, r, box)]
    return sorted((lam,) + v for lam, v in seen.items()), conflicts


def cmd_scan(cfg: RunConfig, args) -> Report:
    R = cfg.system
    box = cfg.box if cfg.box is not None else 2 * cfg.p ** 3
    tasks = [(R.label, p, r, box) for p in cfg.primes for r in cfg.rs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_scan_one, *zip(*tasks)))
    else:
        results = [_scan_one(*t) for t in tasks]
    rows, status = [], 0
    for (_, p, r, _), (found, conflicts) in zip(tasks, results):
        for lam, tag, nu, mult, dim, case in found:
            rows.append({"p": p, "r": r, "lambda": wjson(R, lam), "tag": tag, "nu": wjson(R, nu),
                         "mult": mult, "dim": dim, "case": case})
        for c in conflicts:
            status = 1
            rows.append({"p": p, "r": r, "conflict": c})
    return Report(_meta(cfg, p=cfg.primes, r=cfg.rs, box=box), rows=rows, status=status)


def cmd_rootsum(cfg: RunConfig, args) -> Report:
    R = cfg.system
    forms = [args.form] if args.form else list(SOLVERS)
    rows, status = [], 0
    for p in cfg.primes:
        for form in forms:
            d = compare_catalog(R, p, form)
            verdict = {True: "match", False: "mismatch", None: "uncatalogued"}[d.match]
            status |= int(d.match is False)
            for s in d.found:
                rows.append({"p": p, "form": form, "solution": s.describe(R),
                             "listed": None if d.expected is None else s not in d.extra})
            for s in d.missing:
                rows.append({"p": p, "form": form, "solution": s.describe(R), "listed": "missing"})
            rows.append({"p": p, "form": form, "verdict": verdict, "count": len(d.found)})
    return Report(_meta(cfg, p=cfg.primes), rows=rows, status=status)


def cmd_gamma(cfg: RunConfig, args) -> Report:
    R = cfg.system
    rows, status = [], 0
    for p in cfg.primes:
        for g in gamma_w_table_check(R, p):
            status |= int(not g.match)
            rows.append({"p": p, "w": g.w.label, "case": g.case, "exception": g.exception,
                         "gamma": wjson(R, g.computed), "table": wjson(R, g.tabulated),
                         "verdict": "match" if g.match else "mismatch"})
    return Report(_meta(cfg, p=cfg.primes), rows=rows, status=status)


def cmd_crosscheck(cfg: RunConfig, args) -> Report:
    R = cfg.system
    rows, status = [], 0
    degrees = cfg.degrees or [0, 1, 2, 3]
    for p in cfg.primes:
        for r in cfg.rs:
            for row in oracle_crosscheck(R, p, r, degrees):
                status |= int(row.status == "mismatch")
                rows.append({"p": p, "r": r, "degree": row.degree, "lambda": wjson(R, row.lam),
                             "oracle": row.oracle.dim,
                             "closed": None if row.closed is None else row.closed.dim,
                             "verdict": row.status})
            if r == 1 and R.rank > 1:
                oracle, ce = ustar_h1_check(R, p)
                status |= int(oracle != ce)
                rows.append({"p": p, "r": 1, "degree": 1, "lambda": "u*", "oracle": oracle.dim,
                             "closed": ce.dim, "verdict": "match" if oracle == ce else "mismatch"})
    return Report(_meta(cfg, p=cfg.primes, r=cfg.rs), rows=rows, status=status)


# -- parser --------------------------------------------------------------------


def _common(sp: argparse.ArgumentParser, type_default: str | None = None) -> None:
    sp.add_argument("--type", required=type_default is None, default=type_default,
                    help="root system, e.g. A2, B3, F4" + (f" (default {type_default})" if type_default else ""))
    sp.add_argument("--p", default="5", help="prime or comma list of primes")
    sp.add_argument("--r", default="1", help="Frobenius exponent r, or a range like 1-4")
    sp.add_argument("--deg", default=None, help="degree or range like 0-3")
    sp.add_argument("--box", type=int, default=None, help="coordinate bound for scans (default 2p^3)")
    sp.add_argument("--lambda", dest="lam", default=None, help='weight, e.g. "1,-3,0" or "p^2*w.0(s1 s2 s1) - p*a2"')
    sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    sp.add_argument("--force", action="store_true", help="downgrade prime gates to warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobcoh", description="Cohomology of Frobenius kernels and Borel subgroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    coho = sub.add_parser("coho", help="cohomology in a given setting")
    csub = coho.add_subparsers(dest="what", required=True)
    for name, fn in (("u", cmd_coho_u), ("u1", cmd_coho_u1), ("b1", cmd_b1), ("br", cmd_br),
                     ("b", cmd_b), ("gr", cmd_gr)):
        sp = csub.add_parser(name)
        _common(sp, "B3" if name in ("b1", "br", "b", "gr") else None)
        sp.set_defaults(func=fn)
        if name in ("u", "u1"):
            sp.add_argument("--coeff", choices=("trivial", "ustar"), default="trivial")
        if name == "u":
            sp.add_argument("--check", choices=("kostant",), default=None)

    classify = sub.add_parser("classify", help="degree-3 classifiers for B_1, B_r and B")
    ksub = classify.add_subparsers(dest="what", required=True)
    for name, fn in (("b1", cmd_b1), ("br", cmd_br), ("b", cmd_b)):
        sp = ksub.add_parser(name)
        _common(sp, "B3")
        sp.set_defaults(func=fn, deg="3")

    for name, fn, hlp in (("scan", cmd_scan, "classify every weight of a box"),
                          ("rootsum", cmd_rootsum, "root-sum solution catalogs"),
                          ("gamma", cmd_gamma, "the gamma_w table check"),
                          ("crosscheck", cmd_crosscheck, "oracle against closed forms")):
        sp = sub.add_parser(name, help=hlp)
        _common(sp)
        sp.set_defaults(func=fn)
        if name == "rootsum":
            sp.add_argument("--form", choices=tuple(SOLVERS), default=None)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--lambda -7b-a`` through: argparse would read the value as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--lambda" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--lambda={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    func: Callable[[RunConfig, Any], Report] = args.func
    try:
        cfg = RunConfig.from_args(args)
        rep = func(cfg, args)
    except (InternalInconsistency, FiltrationViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FrobcohError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(rep, cfg.fmt))
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
