"""Command line: verify | orders | generate | coxeter | export.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
input or I/O failure, 3 a resource budget was exceeded.

Every flag can also be set through an environment variable with prefix
MCGSYM_ (MCGSYM_GENUS=3,4 MCGSYM_PRIMES=2,3 MCGSYM_ORBIT_BUDGET=...,
MCGSYM_ORDER_CAP, MCGSYM_SEED, MCGSYM_OUT, MCGSYM_JSON=1). Flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from sympy import isprime

from . import certify
from .finite import SCOPE_NOTE, ResourceError
from .models import ConstructionError, CurveTable, SymmetryTable, full_model, tables_from_json, tables_to_json
from .symplectic import (
    GeneratorTable,
    NotSymplecticError,
    SympMatrix,
    TrivialClassError,
    auto_order_cap,
    build_table,
    coxeter_probe,
    evaluate,
    matrix_order,
    verify,
)
from .words import SIX_INVOLUTIONS, Identity, UnknownGeneratorError, UnsupportedGenusError, word_Q, word_S

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
ENV_PREFIX = "MCGSYM_"

DEFAULT_GENUS = (3, 4, 5)
DEFAULT_PRIMES = (2, 3, 5, 7)
DEFAULT_CELLS = ((3, 2), (3, 3), (3, 5), (4, 2), (4, 3), (5, 2))


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    genus: tuple[int, ...] = DEFAULT_GENUS
    primes: tuple[int, ...] = DEFAULT_PRIMES
    orbit_budget: int = 10**7
    order_cap: int | None = None  # None: 4g + 2 per genus
    seed: int = 0
    out: Path | None = None
    json: bool = False
    verbose: int = 0
    suite: str = "all"
    sets: tuple[str, ...] = certify.PRIMARY_SETS
    cells: tuple[tuple[int, int], ...] | None = None
    left_handed: tuple[str, ...] = ()
    drop: tuple[str, ...] = ()
    bundle: Path | None = None

    def validate(self, command: str) -> None:
        if not self.genus or any(g < 2 for g in self.genus):
            raise ConfigError("genus must be >= 2")
        if command in ("coxeter",) and any(g < 3 for g in self.genus):
            raise ConfigError("the involution commands need g >= 3")
        if command == "verify" and self.suite == "involutions" and any(g < 3 for g in self.genus):
            raise ConfigError("the involution suite needs g >= 3")
        if any(not isprime(p) for p in self.primes):
            raise ConfigError(f"not all primes are prime: {self.primes}")
        if self.orbit_budget <= 0:
            raise ConfigError("orbit budget must be positive")
        if self.order_cap is not None and self.order_cap <= 0:
            raise ConfigError("order cap must be positive")
        for name in self.sets:
            if name not in certify.SETS:
                raise ConfigError(f"unknown set {name!r}")

    def cap(self, g: int) -> int:
        return self.order_cap if self.order_cap is not None else auto_order_cap(g)

    def battery(self) -> tuple[tuple[int, int], ...]:
        if self.cells is not None:
            return self.cells
        return tuple((g, p) for g in self.genus for p in self.primes)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _cap(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("order cap must be an integer or 'auto'") from None


def _cells(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in _str_list(text):
        try:
            g, p = item.split(":")
            out.append((int(g), int(p)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"cells look like 3:2,4:3; got {item!r}") from None
    return tuple(out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _env(name: str, env) -> str | None:
    return env.get(ENV_PREFIX + name)


def build_parser(env=os.environ) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--genus", type=_int_list, default=None, help="comma list, default 3,4,5")
    common.add_argument("--primes", type=_int_list, default=None, help="comma list, default 2,3,5,7")
    common.add_argument("--orbit-budget", type=int, default=None, help="largest p^(2g) allowed, default 10^7")
    common.add_argument("--order-cap", default=None, help="integer or auto (4g+2)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--json", action="store_true", default=None, help="print JSON instead of text")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="mcgsym", description="Torsion and involution generating sets checked in Sp(2g,Z) and Sp(2g,p).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="check every witness identity")
    v.add_argument("--suite", choices=certify.SUITES, default="all")
    v.add_argument("--inject-left-handed", type=_str_list, default=(), metavar="CURVES",
                   help="negative control: invert the twists about these curves")
    v.add_argument("--drop", type=_str_list, default=(), metavar="LETTERS",
                   help="negative control: remove these letters from the generator table")
    v.add_argument("--bundle", type=Path, default=None, help="verify the identities stored in an export bundle")

    sub.add_parser("orders", parents=[common], help="orders of the torsion elements")

    gen = sub.add_parser("generate", parents=[common], help="certify generation of Sp(2g,p)")
    gen.add_argument("--sets", type=_str_list, default=certify.PRIMARY_SETS, help=f"known: {', '.join(certify.SETS)}")
    gen.add_argument("--cells", type=_cells, default=None, help="explicit g:p cells, e.g. 3:2,4:3")

    sub.add_parser("coxeter", parents=[common], help="pairwise product orders of the six involutions")
    sub.add_parser("export", parents=[common], help="JSON bundle of models, words and witnesses")
    return parser


def parse_config(argv: Sequence[str] | None, env=os.environ) -> tuple[str, RunConfig]:
    ns = build_parser(env).parse_args(argv)
    cfg = RunConfig()
    try:
        cfg.genus = ns.genus or (_int_list(_env("GENUS", env)) if _env("GENUS", env) else DEFAULT_GENUS)
        cfg.primes = ns.primes or (_int_list(_env("PRIMES", env)) if _env("PRIMES", env) else DEFAULT_PRIMES)
        cfg.orbit_budget = ns.orbit_budget if ns.orbit_budget is not None else int(_env("ORBIT_BUDGET", env) or 10**7)
        cfg.order_cap = _cap(ns.order_cap or _env("ORDER_CAP", env) or "auto")
        cfg.seed = ns.seed if ns.seed is not None else int(_env("SEED", env) or 0)
        out = ns.out or _env("OUT", env)
        cfg.out = Path(out) if out else None
        cfg.json = bool(ns.json) or (_env("JSON", env) or "") not in ("", "0")
    except (ValueError, argparse.ArgumentTypeError) as e:
        raise ConfigError(f"bad setting: {e}") from None
    cfg.verbose = ns.verbose
    cfg.suite = getattr(ns, "suite", "all")
    cfg.left_handed = getattr(ns, "inject_left_handed", ())
    cfg.drop = getattr(ns, "drop", ())
    cfg.bundle = getattr(ns, "bundle", None)
    if ns.command == "generate":
        cfg.sets = ns.sets
        cfg.cells = ns.cells
        if ns.cells is None and ns.genus is None and ns.primes is None and not _env("GENUS", env) and not _env("PRIMES", env):
            cfg.cells = DEFAULT_CELLS
    cfg.validate(ns.command)
    return ns.command, cfg


# -- commands ---------------------------------------------------------------


@dataclass
class Report:
    command: str
    ok: bool
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    exit_code: int | None = None

    @property
    def code(self) -> int:
        if self.exit_code is not None:
            return self.exit_code
        return EXIT_OK if self.ok else EXIT_FAIL


def _control_table(table: GeneratorTable, cfg: RunConfig) -> GeneratorTable:
    for c in cfg.left_handed:
        table = table.with_left_handed(c)
    for d in cfg.drop:
        table = table.without(d)
    return table


def _check_identities(ids: Sequence[Identity], table: GeneratorTable, g: int, rep: Report) -> list[dict]:
    rows = []
    for ident in ids:
        try:
            v = verify(ident, table)
            row = {"g": g, **v.to_dict()}
            holds = v.holds
        except UnknownGeneratorError as e:
            row = {"g": g, "name": ident.name, "holds": False, "missing_letter": e.args[0]}
            holds = False
        rows.append(row)
        if not holds:
            rep.ok = False
            detail = f"missing letter {row['missing_letter']}" if "missing_letter" in row else (
                f"column {row['column']}: {row['lhs_column']} != {row['rhs_column']}"
            )
            rep.lines.append(f"FAIL g={g} {ident.name}: {detail}")
        else:
            rep.lines.append(f"ok   g={g} {ident.name}")
    return rows


def cmd_verify(cfg: RunConfig) -> Report:
    rep = Report("verify", True)
    rows = []
    if cfg.bundle is not None:
        bundle = load_bundle(cfg.bundle)
        for gkey, entry in sorted(bundle["genera"].items(), key=lambda kv: int(kv[0])):
            g = int(gkey)
            ids = [Identity.from_dict(d) for d in entry["witnesses"]]
            rows += _check_identities(ids, _control_table(entry["table"], cfg), g, rep)
    else:
        for g in cfg.genus:
            ids = certify.witness_identities(g, cfg.suite)
            if g < 3 and cfg.suite == "all":
                rep.lines.append(f"note g={g}: involution identities need g >= 3, torsion part only")
            rows += _check_identities(ids, _control_table(certify.table_for(g), cfg), g, rep)
    rep.data = {"identities": rows, "all_hold": rep.ok}
    return rep


def _orders_for(g: int, cfg: RunConfig) -> list[dict]:
    t = certify.table_for(g)
    cap = cfg.cap(g)
    named: list[tuple[str, SympMatrix, Callable[[int | None], bool], str]] = [
        ("Q", evaluate(word_Q(g), t), lambda o: o is not None and (2 * g + 2) % o == 0, f"divides {2 * g + 2}"),
        ("S", evaluate(word_S(g), t), lambda o: o is not None and (4 * g + 2) % o == 0, f"divides {4 * g + 2}"),
        ("R_g", t["R_g"], lambda o: o == g, f"equals {g}"),
    ]
    for name in ("rho1", "rho2", "I1", "J1", "J2", "J3", "J4", "K"):
        if name in t:
            named.append((name, t[name], lambda o: o == 2, "equals 2"))
    rows = []
    for name, m, ok, claim in named:
        r = matrix_order(m, cap)
        rows.append({"g": g, "element": name, "order": r.order, "status": r.status, "claim": claim, "pass": ok(r.order)})
    return rows


def cmd_orders(cfg: RunConfig) -> Report:
    rep = Report("orders", True)
    rows = []
    for g in cfg.genus:
        for row in _orders_for(g, cfg):
            rows.append(row)
            mark = "ok  " if row["pass"] else "FAIL"
            shown = row["order"] if row["status"] == "finite" else row["status"]
            rep.lines.append(f"{mark} g={g} order({row['element']}) = {shown} ({row['claim']})")
            rep.ok &= row["pass"]
    rep.data = {"orders": rows}
    return rep


def cmd_generate(cfg: RunConfig) -> Report:
    rep = Report("generate", True)
    rows = []
    expected_true = set(certify.PRIMARY_SETS) | {"three_torsion_rotation"}
    for g, p in cfg.battery():
        for name in cfg.sets:
            try:
                v = certify.generation_verdict(name, g, p, cfg.orbit_budget, cfg.seed)
            except ResourceError as e:
                rep.lines.append(f"RESOURCE g={g} p={p} {name}: {e}")
                rep.exit_code = EXIT_RESOURCE
                rep.ok = False
                rows.append({"set": name, "g": g, "p": p, "error": str(e)})
                continue
            except UnsupportedGenusError as e:
                raise ConfigError(str(e)) from None
            d = v.to_dict()
            rows.append(d)
            expect = name in expected_true
            good = v.generates or not expect
            rep.ok &= good
            verdict = "generates" if v.generates else f"proper subgroup, index {v.full_order // v.subgroup_order}"
            rep.lines.append(f"{'ok  ' if good else 'FAIL'} g={g} p={p} {name}: {verdict} ({v.ms} ms)")
    rep.lines.append(f"scope: {SCOPE_NOTE}")
    rep.data = {"verdicts": rows, "scope": SCOPE_NOTE}
    return rep


def _coxeter(g: int) -> dict:
    t = certify.table_for(g)
    return coxeter_probe({n: t[n] for n in SIX_INVOLUTIONS}).to_dict()


def cmd_coxeter(cfg: RunConfig) -> Report:
    rep = Report("coxeter", True)
    out = {}
    for g in cfg.genus:
        d = _coxeter(g)
        out[str(g)] = d
        names = d["names"]
        rep.lines.append(f"g={g}  " + " ".join(f"{n:>8}" for n in names))
        for n, row in zip(names, d["orders"]):
            rep.lines.append(f"{n:>6}  " + " ".join(f"{str(x):>8}" for x in row))
        rep.ok &= d["orders"][0][1] == g
    rep.data = {"coxeter": out}
    return rep


# -- export bundle ---------------------------------------------------------


def build_bundle(cfg: RunConfig) -> dict:
    genera = {}
    for g in cfg.genus:
        if g < 3:
            raise ConfigError("export covers the full model and needs g >= 3")
        fm = full_model(g)
        curves = dict(fm.curves.classes)
        syms = dict(fm.symmetries.entries)
        genera[str(g)] = {
            "surface": fm.base.surface.to_dict(),
            "tables": json.loads(tables_to_json(CurveTable(g, curves), SymmetryTable(g, syms))),
            "sets": {name: certify.generating_set(name, g).to_dict() for name in certify.PRIMARY_SETS},
            "witnesses": [i.to_dict() for i in certify.witness_identities(g)],
            "coxeter": _coxeter(g),
        }
    return {"format": "mcgsym-bundle", "version": 1, "seed": cfg.seed, "genera": genera}


def dump_bundle(bundle: dict) -> str:
    return json.dumps(bundle, sort_keys=True, indent=1) + "\n"


def load_bundle(path: Path) -> dict:
    """Read a bundle and rebuild generator tables; every matrix is re-checked."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read bundle {path}: {e}") from None
    if raw.get("format") != "mcgsym-bundle":
        raise ConfigError("not an mcgsym bundle")
    for gkey, entry in raw["genera"].items():
        try:
            curves, syms = tables_from_json(json.dumps(entry["tables"]))
            entry["table"] = build_table(curves.classes, {k: s.matrix for k, s in syms.entries.items()}, int(gkey))
        except (ConstructionError, NotSymplecticError, TrivialClassError) as e:
            raise ConfigError(f"bundle genus {gkey}: {e}") from None
    return raw


def cmd_export(cfg: RunConfig) -> Report:
    bundle = build_bundle(cfg)
    rep = Report("export", True, data=bundle)
    rep.lines.append(f"bundle for g in {list(cfg.genus)}: {len(dump_bundle(bundle))} bytes")
    return rep


COMMANDS = {
    "verify": cmd_verify,
    "orders": cmd_orders,
    "generate": cmd_generate,
    "coxeter": cmd_coxeter,
    "export": cmd_export,
}


def run(argv: Sequence[str] | None = None, env=os.environ, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        command, cfg = parse_config(argv, env)
        rep = COMMANDS[command](cfg)
    except (ConfigError, UnsupportedGenusError) as e:
        print(f"mcgsym: error: {e}", file=stderr)
        return EXIT_INPUT
    except ResourceError as e:
        print(f"mcgsym: resource budget: {e}", file=stderr)
        return EXIT_RESOURCE
    payload = dump_bundle(rep.data) if command == "export" else json.dumps(
        {"command": rep.command, "ok": rep.ok, **rep.data}, sort_keys=True, indent=1
    ) + "\n"
    if cfg.out is not None:
        try:
            cfg.out.write_text(payload)
        except OSError as e:
            print(f"mcgsym: error: cannot write {cfg.out}: {e}", file=stderr)
            return EXIT_INPUT
    if cfg.json:
        stdout.write(payload)
    else:
        for line in rep.lines:
            print(line, file=stdout)
    return rep.code


def main(argv: Sequence[str] | None = None) -> None:
    try:
        code = run(argv)
    except SystemExit as e:  # argparse
        code = e.code if isinstance(e.code, int) else EXIT_INPUT
    sys.exit(code)
