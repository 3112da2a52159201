"""Command line: ``analyze``, ``lattice``, ``h0`` and ``verify``.

Exit codes: 0 all tasks proven, 3 finished with bound-only or flagged
entries, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import __version__
from .config import InvalidInputError, RunConfig, load_config
from .interpolation import colinear, det3, divisor_to_system, h0, h0_modular, NonUniformOrbitError
from .lattice import (NotGlueableError, chi_glued_difference, format_class, glue, gram_matrix,
                      intersection_table, ks_relation_holds, parse_class)
from .pencil import ConfigurationError, base_locus, hessian_det
from .verifier import Report, plane_twist_excess, verify_all

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_INCOMPLETE = 0, 1, 2, 3

TSV_FIELDS = ("task", "method", "reduced_to", "representative", "twists", "h0_on_Y", "bound", "status", "reason")


def _grid(rows, out):
    for r in rows:
        out.write("\t".join(str(v) for v in r) + "\n")


def cmd_lattice(args, out) -> int:
    names, table = intersection_table()
    out.write("# glued intersections\n")
    _grid([[""] + names] + [[n] + row for n, row in zip(names, table)], out)
    out.write("# Gram matrix of D1..D11\n")
    _grid(gram_matrix(), out)
    out.write(f"K_S relation (D1+..+D10-3D11 ~ E0): {ks_relation_holds()}\n")
    zeros = sum(chi_glued_difference(i, j) == 0 for i in range(13) for j in range(i))
    out.write(f"chi(-D_i+D_j) = 0 for {zeros}/78 pairs\n")
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    run = load_config(args.config)
    cfg = run.point_config
    h1, h2 = cfg.cubics
    out.write(f"h1\t{h1}\nh2\t{h2}\n")
    for name, cubic, node in (("h1", h1, cfg.node1 if cfg.node_assignment == "h1->B1" else cfg.node2),
                              ("h2", h2, cfg.node2 if cfg.node_assignment == "h1->B1" else cfg.node1)):
        out.write(f"node of {name}\t{node}\thessian {hessian_det(cubic, node)}\n")
    locus = base_locus(h1, h2)
    out.write(f"rational base points\t{' '.join(str(p) for p in locus.rational)}\n")
    out.write(f"eliminant\t{locus.eliminant.to_multipoly('t')}\n")
    orb = cfg.orbit
    out.write(f"e9\t{cfg.e9}\ne0\t{cfg.e0}\nB1\t{cfg.node1}\nB2\t{cfg.node2}\n")
    for name, poly in (("block f(t)", orb.minpoly), ("xi(t)", orb.xi), ("eta(t)", orb.eta)):
        out.write(f"{name}\t{poly.to_multipoly('t')}\n")
    cert = f"irreducible mod {orb.irreducible_mod}" if orb.irreducible_mod else "not certified irreducible"
    out.write(f"block degree\t{orb.degree}\t{cert}\n")
    members = orb.rational_members()
    if members:
        out.write(f"rational points inside the block\t{' '.join(str(p) for p in members)}\n")
    for label, tri in (("e9,e0,B1", (cfg.e9, cfg.e0, cfg.node1)), ("e9,B1,B2", (cfg.e9, cfg.node1, cfg.node2))):
        out.write(f"colinear({label})\t{colinear(*tri)}\tdet {det3(*tri)}\n")
    return EXIT_OK


def cmd_h0(args, out) -> int:
    run = load_config(args.config)
    d = parse_class(args.divisor)
    try:
        sys_ = divisor_to_system(d, run.point_config)
    except NonUniformOrbitError as exc:
        raise InvalidInputError(str(exc)) from exc
    value = h0(sys_)
    out.write(f"divisor\t{format_class(d)}\n")
    out.write(f"h0 on Y\t{value}\n")
    if args.oracle == "modular":
        mod, _ = h0_modular(sys_)
        out.write(f"modular oracle\t{mod}\n")
    try:
        g = glue(d)
    except NotGlueableError:
        out.write("glueable\tno\n")
    else:
        bound = value + plane_twist_excess(g.d1) + plane_twist_excess(g.d2)
        out.write(f"twists\t{g.d1}\t{g.d2}\nsemicontinuity bound\t{bound}\n")
    return EXIT_OK


def write_tsv(report: Report, out) -> None:
    w = csv.writer(out, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_FIELDS)
    for e in report.entries:
        w.writerow([
            e.task.key, e.method, e.reduced_to.key if e.reduced_to else "",
            format_class(e.representative) if e.representative is not None else "",
            ",".join(map(str, e.twists)) if e.twists else "",
            "" if e.h0_on_Y is None else e.h0_on_Y, e.bound, e.verdict.status, e.verdict.reason,
        ])


def cmd_verify(args, out) -> int:
    run: RunConfig = load_config(args.config)
    report = verify_all(run.point_config, run.ks_torsion, args.oracle, run.overrides)
    write_tsv(report, out)
    s = report.summary
    out.write("# " + " ".join(f"{k}={v}" for k, v in s["methods"].items()) + "\n")
    out.write("# " + " ".join(f"{k}={v}" for k, v in s["verdicts"].items()) + "\n")
    for f in report.findings:
        out.write(f"# finding: {f}\n")
    if args.json:
        Path(args.json).write_text(report.dumps())
    if args.tsv:
        with open(args.tsv, "w", newline="") as fh:
            write_tsv(report, fh)
    if args.figures:
        from .plotting import write_figures
        for p in write_figures(report, run.point_config, args.figures):
            out.write(f"# figure: {p}\n")
    out.write(f"# exit {report.exit_code}\n")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="enriques-verify", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("lattice", help="glued intersection table, Gram matrix, K_S relation")

    p = sub.add_parser("analyze", help="nodes, base locus and block of a configuration")
    p.add_argument("config")

    p = sub.add_parser("h0", help="h0 of a class on Y (13 integers in basis H,E0,E1..E9,B1,B2)")
    p.add_argument("config")
    p.add_argument("divisor", nargs=13, type=int)
    p.add_argument("--oracle", choices=("modular", "off"), default="off")

    p = sub.add_parser("verify", help="resolve all 156 vanishing tasks")
    p.add_argument("config")
    p.add_argument("--json", metavar="OUT")
    p.add_argument("--tsv", metavar="OUT")
    p.add_argument("--figures", metavar="DIR")
    p.add_argument("--oracle", choices=("modular", "off"), default="modular")
    return ap


COMMANDS = {"lattice": cmd_lattice, "analyze": cmd_analyze, "h0": cmd_h0, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (InvalidInputError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
