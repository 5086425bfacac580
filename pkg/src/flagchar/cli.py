"""Command-line front end.

    flagchar orbits --n 6 --q 2 --lambda 3,3 --sbar 2,5,6
    flagchar verify --suite superchars --n 3 --q 2
    flagchar census --n 6 --lambda 4,2 --q 2 --compare-q 3

Exit codes: 0 success, 1 invalid configuration, 2 budget exceeded,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import itertools
import json
import os
import re
import sys
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from . import analysis as an
from .combinat import (
    Composition,
    ConditionSet,
    Tableau,
    compositions,
    enumerate_rstd,
    main_condition_sets,
    minimal_fitting_tableau,
)
from .errors import CheckFailed, FlagcharError, TooLarge, budget
from .field import field_of_order
from .monomial import LabelSpace, orbit_enumerate, orbit_partition
from .pattern import Split

FORMAT_VERSION = "flagchar-report/1"
SUITES = ("cocycle", "oracle215", "verges", "stabilizers", "thm716", "census", "superchars", "induced")
EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_CHECK = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    p: int
    e: int
    lam: tuple | None
    sbar: object  # tuple of ints, "all" or None
    conditions: tuple | None  # ((i, j, value), ...)
    suite: str | None
    fmt: str
    out: str | None
    budget: int
    compare_q: int | None

    @property
    def q(self):
        return self.p**self.e

    @property
    def field(self):
        return field_of_order(self.q)

    def as_json(self):
        d = asdict(self)
        d["q"] = self.q
        d["lam"] = list(self.lam) if self.lam else None
        d["sbar"] = list(self.sbar) if isinstance(self.sbar, tuple) else self.sbar
        d["conditions"] = [list(c) for c in self.conditions] if self.conditions else None
        d.pop("out")
        return d


# -- parsing ---------------------------------------------------------------


def _int_list(text, what):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ConfigError(f"bad {what}: {text!r}") from None


_COND = re.compile(r"\((\d+),(\d+)\)=([0-9]+)")


def parse_conditions(text, field):
    """Comma-separated "(i,j)=v" literals, whitespace-insensitive."""
    compact = re.sub(r"\s+", "", text)
    out = []
    pos = 0
    while pos < len(compact):
        m = _COND.match(compact, pos)
        if not m:
            raise ConfigError(f"bad condition literal near {compact[pos:]!r}")
        i, j = int(m.group(1)), int(m.group(2))
        try:
            v = field.parse(m.group(3))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if v == 0:
            raise ConfigError(f"condition ({i},{j}) has value zero")
        out.append((i, j, int(v)))
        pos = m.end()
        if pos < len(compact):
            if compact[pos] != ",":
                raise ConfigError(f"expected ',' near {compact[pos:]!r}")
            pos += 1
    return tuple(sorted(out))


def build_parser():
    ap = argparse.ArgumentParser(prog="flagchar", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--q", type=int, default=2)
        sp.add_argument("--lambda", dest="lam", default=None, help="composition, e.g. 3,3")
        sp.add_argument("--sbar", default=None, help='second tableau row, e.g. 2,5,6, or "all"')
        sp.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--out", default=None)
        sp.add_argument("--budget", type=int, default=None)

    common(sub.add_parser("orbits", help="U_K-orbits of the labels of an s-component"))
    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--conditions", default=None, help='e.g. "(3,1)=1,(5,2)=1"')
    c = sub.add_parser("census", help="constituent census of a two-part shape")
    common(c)
    c.add_argument("--compare-q", type=int, default=None)
    return ap


def make_config(args):
    if not 1 <= args.n <= 8:
        raise ConfigError(f"n={args.n} is out of range 1..8")
    try:
        field = field_of_order(args.q)
    except (FlagcharError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    lam = _int_list(args.lam, "lambda") if args.lam else None
    if lam is not None and (sum(lam) != args.n or any(x <= 0 for x in lam)):
        raise ConfigError(f"lambda {lam} is not a composition of {args.n}")
    sbar = None
    if args.sbar is not None:
        if args.sbar.strip() == "all":
            sbar = "all"
        else:
            sbar = tuple(sorted(_int_list(args.sbar, "sbar")))
            if len(set(sbar)) != len(sbar) or any(not 1 <= x <= args.n for x in sbar):
                raise ConfigError(f"sbar {sbar} is not a subset of 1..{args.n}")
            if lam is None:
                lam = (args.n - len(sbar), len(sbar))
            if len(lam) != 2 or lam[1] != len(sbar):
                raise ConfigError(f"sbar {sbar} does not match lambda {lam}")
    conditions = getattr(args, "conditions", None)
    conditions = parse_conditions(conditions, field) if conditions else None
    b = args.budget if args.budget is not None else budget()
    if b <= 0:
        raise ConfigError("budget must be positive")
    cq = getattr(args, "compare_q", None)
    if cq is not None:
        try:
            field_of_order(cq)
        except (FlagcharError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
    if args.command == "census" and (lam is None or len(lam) != 2):
        raise ConfigError("census needs a two-part --lambda")
    return RunConfig(
        args.command, args.n, field.p, field.e, lam, sbar, conditions,
        getattr(args, "suite", None), args.fmt, args.out, b, cq,
    )


def tableaux(cfg, two_part=True):
    """Tableaux selected by --lambda/--sbar (default: all of the shape or of all shapes)."""
    if isinstance(cfg.sbar, tuple):
        return [Tableau.from_sbar(cfg.n, cfg.sbar)]
    if cfg.lam is not None:
        lams = [Composition(cfg.lam)]
    else:
        lams = [c for c in compositions(cfg.n) if not two_part or len(c) == 2]
    return [s for lam in lams for s in enumerate_rstd(lam)]


# -- serialization ---------------------------------------------------------


def _jsonable(x, field):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v, field) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, field) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist(), field)
    return x


def sparse(A, field):
    """Matrix as sparse triples (i, j, element literal)."""
    A = np.asarray(A)
    return [[int(i) + 1, int(j) + 1, field.format(A[i, j])] for i, j in zip(*np.nonzero(A))]


def tableau_text(s):
    return " | ".join(" ".join(map(str, r)) for r in s.rows)


def compartment_display(A, s, field):
    """Rows in s-reading order with a separator between compartments."""
    A = np.asarray(A)
    lines = []
    for k, row in enumerate(s.rows):
        if k:
            lines.append("-" * (3 * s.n))
        for i in row:
            lines.append(f"{i:>2} " + " ".join(field.format(A[i - 1, j]) if j < i - 1 else "." for j in range(s.n)))
    return "\n".join(lines)


def emit(cfg, payload, records, checks=None):
    """Write the report; records is a list of flat dicts for csv/text."""
    if cfg.fmt == "json":
        doc = {
            "format": FORMAT_VERSION,
            "config": cfg.as_json(),
            "budget": cfg.budget,
            "result": payload,
        }
        if checks is not None:
            doc["checks"] = checks
        text = json.dumps(_jsonable(doc, cfg.field), sort_keys=True, indent=1) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        cols = sorted({k for r in records for k in r})
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(_jsonable(v, cfg.field)) if isinstance(v, (list, tuple, dict)) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        lines = [f"# {FORMAT_VERSION} {cfg.command} n={cfg.n} q={cfg.q} budget={cfg.budget}"]
        for r in records:
            lines.append("  ".join(f"{k}={r[k]}" for k in sorted(r) if k != "display"))
            if "display" in r:
                lines.append(r["display"])
        if checks is not None:
            for c in checks:
                lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  {c.get('detail', '')}".rstrip())
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def cmd_orbits(cfg):
    F = cfg.field
    payload = []
    records = []
    for s in tableaux(cfg, two_part=False):
        split = Split.from_tableau(s, F)
        space = LabelSpace(split.J, F)
        if space.size > cfg.budget:
            raise TooLarge(f"E_J for s={tableau_text(s)}", space.size, cfg.budget)
        part = orbit_partition(split)
        verges = part.verges()
        sizes = part.sizes()
        orbits = []
        for k in range(part.count):
            A = space.matrix_of_code(verges[k])
            depth = int(orbit_enumerate(int(verges[k]), split).depth.max())
            main = [[int(i) + 1, int(j) + 1] for i, j in zip(*np.nonzero(A))]
            orbits.append({"verge": sparse(A, F), "main": main, "size": int(sizes[k]), "depth": depth})
            rec = {"tableau": tableau_text(s), "main": main, "verge": sparse(A, F), "size": int(sizes[k]), "depth": depth}
            if cfg.fmt == "text":
                rec["display"] = compartment_display(A, s, F)
            records.append(rec)
        orbits.sort(key=lambda o: (o["size"], o["main"], o["verge"]))
        payload.append(
            {"tableau": [list(r) for r in s.rows], "J_size": len(split.J), "orbit_count": part.count,
             "total": int(sizes.sum()), "orbits": orbits}
        )
    emit(cfg, payload, records)
    return EXIT_OK


def _check(name, passed, detail=""):
    return {"name": name, "passed": bool(passed), "detail": str(detail)}


def _condition_sets(cfg, hook_disconnected):
    if cfg.conditions:
        p = ConditionSet(cfg.n, tuple((i, j) for i, j, _ in cfg.conditions))
        return [(p, tuple(v for _, _, v in cfg.conditions))]
    F = cfg.field
    out = []
    for p in main_condition_sets(cfg.n, disconnected=hook_disconnected):
        for fill in itertools.product(F.nonzero(), repeat=len(p)):
            out.append((p, tuple(int(x) for x in fill)))
    return out


def suite_cocycle(cfg):
    checks = []
    for s in tableaux(cfg, two_part=False):
        split = Split.from_tableau(s, cfg.field)
        pairs = an.check_cocycle(split)
        checks.append(_check(f"cocycle s={tableau_text(s)}", True, f"{pairs} pairs"))
    return checks


def suite_oracle215(cfg):
    checks = []
    for s in tableaux(cfg, two_part=False):
        split = Split.from_tableau(s, cfg.field)
        size = cfg.field.q ** len(split.J) * len(split.K) * (cfg.field.q - 1)
        if size <= cfg.budget:
            n = an.check_oracle215(split)
            checks.append(_check(f"matrix formula exhaustive s={tableau_text(s)}", True, f"{n} checks"))
        else:
            n = an.check_oracle215(split, sample=10_000)
            checks.append(_check(f"matrix formula sampled s={tableau_text(s)}", True, f"{n} checks"))
    return checks


def suite_verges(cfg):
    checks = []
    for s in tableaux(cfg):
        split = Split.from_tableau(s, cfg.field)
        count = an.check_verges(split)
        checks.append(_check(f"one verge per orbit s={tableau_text(s)}", True, f"{count} orbits"))
    full = Split.full(cfg.n, cfg.field)
    if cfg.field.q ** len(full.J) <= cfg.budget and cfg.sbar is None and cfg.lam is None:
        from .monomial import biorbit_partition

        part = biorbit_partition(full)
        part.verges()
        checks.append(_check("one verge per biorbit", True, f"{part.count} biorbits"))
    return checks


def _rep_checks(rep, prefix):
    return [_check(f"{prefix}: {c.name}", c.passed, c.detail) for c in rep.checks]


def suite_stabilizers(cfg):
    F = cfg.field
    checks = []
    for p, fill in _condition_sets(cfg, hook_disconnected=True):
        A = an.verge_matrix(p, fill)
        if len(p) == 0:
            continue
        s = Tableau.from_sbar(cfg.n, cfg.sbar) if isinstance(cfg.sbar, tuple) else minimal_fitting_tableau(p)
        rep = an.verify_stabilizers(A, s, F)
        checks.extend(_rep_checks(rep, f"p={p} fill={fill} s={tableau_text(s)}"))
    if cfg.conditions is None and F.q ** (cfg.n * (cfg.n - 1) // 2) <= 2**15:
        bad = 0
        total = 0
        for p, fill in _condition_sets(cfg, hook_disconnected=False):
            rep = an.verify_pstab(an.verge_matrix(p, fill), F)
            total += 1
            if not rep.passed:
                bad += 1
                checks.extend(_rep_checks(rep, f"pstab p={p} fill={fill}"))
        checks.append(_check("pstab equals U_R for all verges", bad == 0, f"{total - bad}/{total}"))
    return checks


def suite_thm716(cfg):
    checks = []
    for p, fill in _condition_sets(cfg, hook_disconnected=True):
        rep = an.verify_7_16(p, fill, cfg.field, cfg.budget)
        detail = f"<chi1,chi1>={rep.chi1_norm} <chi1,chi2>={rep.cross} <chi2,chi2>={rep.chi2_norm} expected {rep.expected_chi2_norm}"
        checks.append(_check(f"p={p} fill={fill}", rep.passed, detail))
    return checks


def suite_census(cfg):
    checks = []
    lams = [Composition(cfg.lam)] if cfg.lam else [c for c in compositions(cfg.n) if len(c) == 2]
    for lam in lams:
        rep = an.census(lam, cfg.field, cfg.budget)
        checks.append(_check(f"census lambda={lam.parts}", rep.passed, f"{len(rep.rows)} condition sets"))
    return checks


def suite_superchars(cfg):
    t = an.supercharacter_table(cfg.n, cfg.field, cfg.budget)
    return [
        _check("verges", True, f"{len(t.rows)} verges"),
        _check("verge characters orthogonal", t.orthogonal),
        _check("distinct biorbits orthogonal", t.cross_biorbit_zero),
        _check("identical characters within a biorbit", t.identical_within_biorbit),
        _check("biorbits partition Lie(U)", t.biorbit_total == cfg.q ** (cfg.n * (cfg.n - 1) // 2), t.biorbit_total),
    ]


def suite_induced(cfg):
    checks = []
    for s in tableaux(cfg, two_part=False):
        split = Split.from_tableau(s, cfg.field)
        an.check_induced(split)
        checks.append(_check(f"regular on U_J and induced on U_K s={tableau_text(s)}", True))
    return checks


SUITE_FUNCS = {
    "cocycle": suite_cocycle,
    "oracle215": suite_oracle215,
    "verges": suite_verges,
    "stabilizers": suite_stabilizers,
    "thm716": suite_thm716,
    "census": suite_census,
    "superchars": suite_superchars,
    "induced": suite_induced,
}


def cmd_verify(cfg):
    try:
        checks = SUITE_FUNCS[cfg.suite](cfg)
    except CheckFailed as exc:
        checks = [_check(exc.check, False, str(exc))]
    records = [dict(c) for c in checks]
    ok = all(c["passed"] for c in checks)
    emit(cfg, {"suite": cfg.suite, "passed": ok, "count": len(checks)}, records, checks)
    return EXIT_OK if ok else EXIT_CHECK


def _census_payload(rep):
    return [
        {
            "p": [list(x) for x in r.p.pairs],
            "size_p": len(r.p),
            "exponent": r.exponent,
            "k": r.k,
            "fillings": r.fillings,
            "orbit_counts": {",".join(map(str, k)): v for k, v in sorted(r.orbit_counts.items())},
        }
        for r in rep.rows
    ]


def cmd_census(cfg):
    F = cfg.field
    rep = an.census(Composition(cfg.lam), F, cfg.budget)
    rows = _census_payload(rep)
    checks = [
        _check("orbit count per (p, s) is (q-1)^|p|", all(r.consistent for r in rep.rows)),
        _check("orbit size depends only on p", rep.size_depends_only_on_p),
        _check("sum over p of (q-1)^|p| q^c(p) = q^|J(s)|", rep.partition_identity),
        _check("observed main sets fit s", rep.observed_sets_fit),
    ]
    payload = {"rows": rows, "q": F.q}
    if cfg.compare_q is not None:
        other = an.census(Composition(cfg.lam), field_of_order(cfg.compare_q), cfg.budget)
        same_k, same_c = an.compare_census(rep, other)
        checks.append(_check(f"k_lambda,p agrees for q={F.q} and q={cfg.compare_q}", same_k))
        checks.append(_check(f"orbit exponents agree for q={F.q} and q={cfg.compare_q}", same_c))
        checks.append(_check(f"q={cfg.compare_q} census consistent", other.passed))
        payload["compare"] = {"q": cfg.compare_q, "rows": _census_payload(other)}
    records = [{"p": r["p"], "k": r["k"], "exponent": r["exponent"], "fillings": r["fillings"]} for r in rows]
    emit(cfg, payload, records, checks)
    return EXIT_OK if all(c["passed"] for c in checks) else EXIT_CHECK


COMMANDS = {"orbits": cmd_orbits, "verify": cmd_verify, "census": cmd_census}


@contextlib.contextmanager
def _budget_env(value):
    old = os.environ.get("FLAGCHAR_BUDGET")
    os.environ["FLAGCHAR_BUDGET"] = str(value)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("FLAGCHAR_BUDGET", None)
        else:
            os.environ["FLAGCHAR_BUDGET"] = old


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = make_config(args)
    except (ConfigError, FlagcharError, ValueError) as exc:
        print(f"flagchar: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        with _budget_env(cfg.budget):
            return COMMANDS[cfg.command](cfg)
    except TooLarge as exc:
        print(f"flagchar: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CheckFailed as exc:
        print(f"flagchar: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (FlagcharError, ValueError) as exc:
        print(f"flagchar: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
