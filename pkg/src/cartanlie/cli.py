"""Command line front end.

Subcommands: dim, bracket, h2, h3, verify, export.  Everything is
deterministic for a given configuration; JSON output omits timings so it is
byte-identical across runs (add --timing to get them back).

Exit codes: 0 all good, 1 a gating verification check failed, 2 bad usage
or a domain error, 3 the memory budget stopped a computation.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

from . import cartan_lie as cl
from . import cocycles as cc
from . import cohomology as co
from . import verification_suite as vs
from .fp_linalg import DEFAULT_BUDGET_ENV, BudgetExceeded
from .truncated_algebra import format_poly

_FORMATS = ("table", "json", "csv")


@dataclass
class CliConfig:
    command: str
    family: str = "H"
    p: int = 5
    n: int = 2
    coefficients: str = "adjoint"
    k: int = 2
    weight_zero: bool = False
    degree: object = None
    nonneg: bool = False
    fmt: str = "table"
    threads: int = 0
    experimental: bool = False
    timing: bool = False

    def validate(self):
        if self.family not in ("H", "K"):
            raise ValueError("family must be H or K, got %r" % self.family)
        if self.p < 2 or self.n < 1:
            raise ValueError("want p >= 2 and n >= 1")
        if self.fmt not in _FORMATS:
            raise ValueError("format must be one of %s" % (_FORMATS,))
        if self.threads < 0:
            raise ValueError("threads must be nonnegative")
        if self.k not in (0, 1, 2, 3):
            raise ValueError("cohomology is wired up for k in 0..3")

    @property
    def thread_count(self):
        return self.threads or os.cpu_count() or 1

    def model(self):
        base = cl.lie_algebra(self.family, self.p, self.n)
        return cl.nonneg_part(base) if self.nonneg else base


def _emit(cfg, as_json, as_table):
    if cfg.fmt == "json":
        print(json.dumps(as_json(), indent=2))
    else:
        print(as_table())


# -- subcommands ---------------------------------------------------------


def cmd_dim(cfg):
    model = cfg.model()
    lo, hi = cl.degree_range(model)
    dec = cl.cartan_decomposition(model)
    zero = (0,) * len(next(iter(dec)))
    info = {
        "schema": 1,
        "family": model.family,
        "p": model.p,
        "n": model.n,
        "dim": model.dim,
        "degree_min": lo,
        "degree_max": hi,
        "cartan_dim": len(dec.get(zero, ())),
        "weight_classes": len(dec),
    }
    _emit(cfg, lambda: info,
          lambda: "\n".join("%-14s %s" % (k, v) for k, v in info.items()
                            if k != "schema"))
    return 0


def _parse_exponents(text, cfg):
    try:
        a = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError("want a comma list of exponents, got %r" % text)
    if len(a) != cfg.n:
        raise ValueError("want %d exponents, got %d" % (cfg.n, len(a)))
    if not all(0 <= x < cfg.p for x in a):
        raise ValueError("exponents must sit in [0, %d)" % cfg.p)
    return a


def cmd_bracket(cfg, a_text, b_text):
    model = cfg.model()
    a = _parse_exponents(a_text, cfg)
    b = _parse_exponents(b_text, cfg)
    result = cl.bracket(model, a, b)
    text = format_poly(result)
    _emit(cfg, lambda: {"schema": 1, "family": cfg.family, "p": cfg.p,
                        "n": cfg.n, "a": list(a), "b": list(b),
                        "bracket": text},
          lambda: text)
    return 0


def _report_table(rep):
    data = rep.to_json()
    lines = ["%-14s %s" % (k, data[k])
             for k in ("family", "p", "n", "k", "module", "filter",
                       "dimC", "dimZ", "dimB", "dimH")]
    if data["blocks"]:
        lines.append("%-14s %s" % ("blocks", data["blocks"]))
    lines.append("%-14s %d" % ("representatives", len(data["representatives"])))
    for note in data["notes"]:
        lines.append("note: %s" % note)
    return "\n".join(lines)


def cmd_cohomology(cfg):
    model = cfg.model()
    module = cl.module_by_name(cfg.coefficients, model)
    rep = co.cohomology_dim(model, module, cfg.k,
                            weight_zero=cfg.weight_zero, degree=cfg.degree,
                            threads=cfg.thread_count)
    if not cfg.timing:
        rep.elapsed_ms = 0
    _emit(cfg, rep.to_json, lambda: _report_table(rep))
    return 0


def cmd_verify(cfg, theorem, lemmas, cocycle, include_slow, stretch):
    checks = []
    if theorem:
        if theorem == "K":
            checks.append(vs.verify_theorem_K(cfg.p, cfg.n,
                                              threads=cfg.thread_count))
        else:
            checks.append(vs.verify_theorem_H(cfg.p, cfg.n,
                                              include_stretch=stretch,
                                              threads=cfg.thread_count))
    if lemmas:
        checks.extend(vs.verify_lemmas(cfg.family, cfg.p, cfg.n))
    if cocycle:
        checks.extend(_cocycle_checks(cfg, cocycle))
    if not (theorem or lemmas or cocycle):
        checks = vs.run_all(include_slow=include_slow,
                            include_stretch=stretch,
                            threads=cfg.thread_count)
        if cfg.experimental:
            checks.append(vs.verify_upsilon_report())

    if cfg.fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["id", "status", "expected", "computed", "note"])
        for c in sorted(checks, key=lambda c: c.ident):
            writer.writerow([c.ident, c.status, c.expected, c.computed,
                             c.note])
    else:
        _emit(cfg, lambda: vs.ledger_json(checks, timing=cfg.timing),
              lambda: vs.ledger_table(checks))
    return 0 if vs.all_passing(checks) else 1


def _cocycle_checks(cfg, name):
    if name.startswith("Upsilon"):
        if not cfg.experimental:
            raise ValueError(
                "%s is experimental; pass --experimental to evaluate it"
                % name)
        return [vs.verify_upsilon_report(cfg.p, cfg.n)]
    checks = [vs.verify_cocycle_closed(name, cfg.family, cfg.p, cfg.n,
                                       restricted=cfg.n >= 4)]
    if name == "Phi":
        checks.append(vs.verify_phi_top_projection(cfg.p, cfg.n))
        if cfg.n == 2:
            checks.append(vs.verify_phi_transcription(cfg.p, cfg.n))
    return checks


def cmd_export(cfg, what):
    model = cfg.model()
    writer = csv.writer(sys.stdout)
    if what == "structure":
        writer.writerow(["i", "j", "k", "coeff"])
        for row in cl.structure_constants_entries(model):
            writer.writerow(row)
        return 0
    module = cl.module_by_name(cfg.coefficients, model)
    space = co.CochainSpace(model, module, cfg.k,
                            weight_zero=cfg.weight_zero, degree=cfg.degree)
    matrix = co.differential_matrix(space)
    writer.writerow(["row", "col", "value"])
    for (r, c), v in sorted(matrix.entries.items()):
        writer.writerow([r, c, v])
    return 0


# -- wiring --------------------------------------------------------------


def _build_parser():
    top = argparse.ArgumentParser(
        prog="cartanlie",
        description="Graded Cartan-type Lie algebras over F_p: structure, "
                    "cocycles, low-degree cohomology, verification ledger.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, coefficients=False, cohomology=False):
        sp.add_argument("--family", default="H", choices=("H", "K"))
        sp.add_argument("--p", type=int, default=5)
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--format", dest="fmt", default="table",
                        choices=_FORMATS)
        sp.add_argument("--memory-budget", type=int, metavar="BYTES",
                        help="override the %s budget" % DEFAULT_BUDGET_ENV)
        sp.add_argument("--threads", type=int, default=0,
                        help="0 means all available cores")
        sp.add_argument("--timing", action="store_true",
                        help="include elapsed times in the output")
        if coefficients:
            sp.add_argument("--coefficients", default="adjoint",
                            help="adjoint, trivial, ambient, functions, ...")
        if cohomology:
            sp.add_argument("--weight-zero", action="store_true",
                            help="restrict to torus-weight-zero cochains")
            sp.add_argument("--degree", type=int, default=None,
                            help="fix one total-degree block")
            sp.add_argument("--nonneg", action="store_true",
                            help="use the nonnegative-degree subalgebra")

    common(sub.add_parser("dim", help="basis and grading summary"))

    br = sub.add_parser("bracket", help="bracket of two basis monomials")
    common(br)
    br.add_argument("--a", required=True, metavar="E1,...,EN")
    br.add_argument("--b", required=True, metavar="E1,...,EN")

    for k in (2, 3):
        hp = sub.add_parser("h%d" % k, help="dim H^%d and representatives" % k)
        common(hp, coefficients=True, cohomology=True)

    ver = sub.add_parser("verify", help="run verification checks")
    common(ver, coefficients=False)
    ver.add_argument("--theorem", choices=("H", "K"),
                     help="one main second-cohomology theorem at (p, n)")
    ver.add_argument("--lemmas", action="store_true",
                     help="dimension/Cartan/generation claims at (family, p, n)")
    ver.add_argument("--cocycle", metavar="NAME",
                     help="closedness of one named cochain, e.g. Sq:x1, Phi")
    ver.add_argument("--include-slow", action="store_true",
                     help="add the n=4 sweeps and the n=6 quadruple sweep")
    ver.add_argument("--stretch", action="store_true",
                     help="attempt the n=4 block cohomology inside the budget")
    ver.add_argument("--experimental", action="store_true",
                     help="include evaluation-only experimental entries")

    ex = sub.add_parser("export", help="CSV export for external auditing")
    common(ex, coefficients=True, cohomology=True)
    ex.add_argument("--what", required=True,
                    choices=("structure", "differential"))
    ex.add_argument("--k", type=int, default=2)
    return top


def main(argv=None):
    args = _build_parser().parse_args(argv)
    cfg = CliConfig(
        command=args.command,
        family=getattr(args, "family", "H"),
        p=getattr(args, "p", 5),
        n=getattr(args, "n", 2),
        coefficients=getattr(args, "coefficients", "adjoint"),
        k=getattr(args, "k", 2) if args.command != "h3" else 3,
        weight_zero=getattr(args, "weight_zero", False),
        degree=getattr(args, "degree", None),
        nonneg=getattr(args, "nonneg", False),
        fmt=args.fmt,
        threads=args.threads,
        experimental=getattr(args, "experimental", False),
        timing=args.timing,
    )
    if args.memory_budget is not None:
        os.environ[DEFAULT_BUDGET_ENV] = str(args.memory_budget)
    try:
        cfg.validate()
        if cfg.command == "dim":
            return cmd_dim(cfg)
        if cfg.command == "bracket":
            return cmd_bracket(cfg, args.a, args.b)
        if cfg.command in ("h2", "h3"):
            return cmd_cohomology(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg, args.theorem, args.lemmas, args.cocycle,
                              args.include_slow, args.stretch)
        if cfg.command == "export":
            return cmd_export(cfg, args.what)
        raise ValueError("unknown command %r" % cfg.command)
    except BudgetExceeded as exc:
        print("budget: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
