"""Command line front end.

Exit codes: 0 when every checked identity holds, 1 when one fails (the
report carries a witness), 2 for input or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import incidence_algebra
from .dynkin import (
    all_orientations,
    auslander_coxeter,
    endomorphism_grade_bijection,
    higher_ar_formula_defects,
    knit,
    dynkin_path_algebra,
    mesh_defects,
    positive_root_count,
    verify_nrf_identity,
)
from .errors import ConventionMismatch, CoxeterCrossCheckFailed, NonSimpleTop, RowcoxError
from .fields import field_for
from .homology import (
    cartan_matrix,
    coxeter_matrix,
    grade_bijection,
    is_auslander_regular,
    rowmotion_coxeter_report,
)
from .io import Report, nrf_document, parse_dynkin_spec, parse_nrf, parse_poset
from .poset import (
    DEFAULT_IDEAL_CAP,
    distributivity_witness,
    lattice_rowmotion,
    lattice_tests,
    max_antichain,
    order_ideals,
    rowmotion_matrix,
)
from .search import ENUMERATION_CAP, enumerate_candidates, random_candidates, run_checks

# failures of these mean a checked identity broke, not bad input
_IDENTITY_ERRORS = (ConventionMismatch, CoxeterCrossCheckFailed, NonSimpleTop)


class ConfigError(RowcoxError):
    pass


def _label(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(map(str, x))) + "}"
    return str(x)


def _load_target(args):
    """The poset from the input file, or its ideal lattice with ``--ideal-lattice``."""
    pf = parse_poset(args.input)
    poset = pf.poset
    if getattr(args, "ideal_lattice", False):
        lattice = order_ideals(poset, args.ideal_cap)
        return pf, lattice.as_poset(), [lattice.label(k) for k in range(len(lattice))]
    return pf, poset, [str(e) for e in poset.elements]


def _perm_map(perm, labels) -> dict:
    return {labels[j]: labels[perm(j)] for j in range(len(labels))}


# -- subcommands ---------------------------------------------------------------------

def cmd_ideals(args) -> Report:
    pf = parse_poset(args.input)
    lattice = order_ideals(pf.poset, args.ideal_cap)
    ideals = [
        {"ideal": lattice.label(k), "maximal": _label(max_antichain(pf.poset, lattice.ideals[k]))}
        for k in range(len(lattice))
    ]
    return Report(_echo(args), {"poset": pf.name, "ideals": ideals}, {"count": len(lattice)})


def cmd_rowmotion(args) -> Report:
    pf = parse_poset(args.input)
    lattice = order_ideals(pf.poset, args.ideal_cap)
    labels = [lattice.label(k) for k in range(len(lattice))]
    perm = rowmotion_matrix(lattice)
    orbits = [[labels[i] for i in cyc] for cyc in perm.cycles()]
    results = {"poset": pf.name, "permutation": perm, "rowmotion": _perm_map(perm, labels), "orbits": orbits}
    return Report(_echo(args), results, {"ideals": len(lattice), "orbit_lengths": sorted(len(o) for o in orbits), "order": perm.order()})


def _rowmotion_source(alg, target):
    """R for the Hopkins check: rowmotion on a distributive lattice, else the grade
    bijection when the algebra is Auslander regular, else None."""
    tests = lattice_tests(target)
    extra = {"is_lattice": tests.is_lattice, "is_distributive": tests.is_distributive}
    if tests.is_lattice and not tests.is_distributive:
        extra["distributivity_witness"] = [_label(x) for x in distributivity_witness(target)]
    if tests.is_distributive:
        return lattice_rowmotion(target), "rowmotion", extra
    verdict = is_auslander_regular(alg)
    extra["auslander_regular"] = verdict.regular
    if verdict:
        return grade_bijection(alg, check_regular=False).permutation, "grade bijection", extra
    return None, None, extra


def cmd_coxeter(args) -> Report:
    pf, target, labels = _load_target(args)
    alg = incidence_algebra(target, field_for(args.char))
    cartan = cartan_matrix(alg)
    cox = coxeter_matrix(alg)
    r, source, results = _rowmotion_source(alg, target)
    results.update({"poset": pf.name, "labels": labels, "cartan": cartan, "coxeter": cox, "rowmotion_source": source})
    exit_code = 0
    if r is None:
        results["hopkins_identity"] = None
    else:
        rep = rowmotion_coxeter_report(cox, r)
        results.update({
            "rowmotion": _perm_map(r, labels),
            "rowmotion_inverse_times_coxeter": rep.product,
            "minimal_polynomial": rep.minimal_polynomial,
            "hopkins_identity": rep.square_is_identity,
        })
        # the identity is a theorem only for distributive lattices
        if results["is_distributive"] and not rep.square_is_identity:
            exit_code = 1
    return Report(_echo(args), results, {"vertices": len(labels)}, exit_code)


def cmd_auslander(args) -> Report:
    pf, target, labels = _load_target(args)
    alg = incidence_algebra(target, field_for(args.char))
    verdict = is_auslander_regular(alg)
    tests = lattice_tests(target)
    results = {
        "poset": pf.name,
        "labels": labels,
        "auslander_regular": verdict.regular,
        "global_dimension": verdict.global_dimension,
        "is_distributive": tests.is_distributive,
    }
    exit_code = 0
    if verdict.witness:
        i, u, pd, v = verdict.witness
        results["witness"] = {
            "degree": i,
            "injective_summand": f"I[{labels[u]}]",
            "projective_dimension": pd,
            "coresolved_projective": f"P[{labels[v]}]",
        }
        if tests.is_distributive:
            exit_code = 1
    else:
        gb = grade_bijection(alg, check_regular=False)
        cox = coxeter_matrix(alg)
        rep = rowmotion_coxeter_report(cox, gb.permutation)
        results.update({
            "grade_bijection": _perm_map(gb.permutation, labels),
            "grades": dict(zip(labels, gb.grades)),
            "cogrades_of_images": dict(zip(labels, gb.cogrades)),
            "grade_equals_cograde": gb.grades == gb.cogrades,
            "minimal_polynomial": rep.minimal_polynomial,
            "hopkins_identity": rep.square_is_identity,
        })
        if tests.is_distributive:
            matches = lattice_rowmotion(target) == gb.permutation
            results["grade_bijection_is_rowmotion"] = matches
            if not (matches and rep.square_is_identity):
                exit_code = 1
        if gb.grades != gb.cogrades:
            exit_code = 1
    return Report(_echo(args), results, {"vertices": len(labels)}, exit_code)


def _parse_sizes(text: str) -> tuple[int, int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"--size expects N or LO-HI, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise ConfigError(f"bad size range {text!r}")
    return lo, hi


def cmd_hopkins_search(args) -> Report:
    if (args.enumerate is None) == (args.random is None):
        raise ConfigError("give exactly one of --enumerate and --random")
    if args.enumerate is not None:
        if not 0 <= args.enumerate <= ENUMERATION_CAP:
            raise ConfigError(f"--enumerate is capped at {ENUMERATION_CAP}")
        candidates = enumerate_candidates(args.enumerate)
        mode = {"mode": "enumerate", "max_size": args.enumerate}
    else:
        if args.seed is None:
            raise ConfigError("--random needs --seed")
        if args.size is None:
            raise ConfigError("--random needs --size")
        sizes = _parse_sizes(args.size)
        candidates = random_candidates(args.random, sizes, args.seed)
        mode = {"mode": "random", "count": args.random, "sizes": list(sizes), "seed": args.seed}
    results = run_checks(candidates, args.ideal_cap, args.jobs)
    failures = [
        {"size": len(r.downs), "down_sets": list(r.downs), "ideals": r.ideals, "witness": r.witness}
        for r in results if not r.holds
    ]
    by_size: dict[str, int] = {}
    for r in results:
        by_size[str(len(r.downs))] = by_size.get(str(len(r.downs)), 0) + 1
    summary = {
        "tested": len(results),
        "by_size": by_size,
        "failures": len(failures),
        "largest_lattice": max((r.ideals for r in results), default=0),
    }
    return Report(_echo(args), {**mode, "violations": failures}, summary, 1 if failures else 0)


def _dynkin_case(kind, rank, orientation, field, full: bool) -> tuple[dict, bool, object]:
    alg = dynkin_path_algebra(kind, rank, orientation, field)
    data = knit(alg)
    try:
        auslander_coxeter(data)
        cross = True
    except CoxeterCrossCheckFailed:
        cross = False
    report = verify_nrf_identity(data) if cross else None
    mesh = mesh_defects(data)
    expected = positive_root_count(kind, rank)
    case = {
        "orientation": alg.dynkin_type[2],
        "indecomposables": data.size,
        "positive_roots": expected,
        "coxeter_cross_check": cross,
        "mesh_defects": [data.labels[x] for x in mesh],
        "identity": report.identity if report else None,
        "identity_holds": bool(report and report.passed),
        "minimal_polynomial": report.minimal_polynomial if report else None,
    }
    if full:
        case.update({
            "labels": data.labels,
            "dimension_vectors": {data.labels[i]: list(m.dims) for i, m in enumerate(data.modules)},
            "tau": {data.labels[a]: data.labels[b] for a, b in sorted(data.tau.items())},
            "nu": {data.labels[a]: data.labels[b] for a, b in sorted(data.nu.items())},
            "cartan": data.cartan(),
            "coxeter": report.coxeter if report else None,
            "grade_bijection": _perm_map(endomorphism_grade_bijection(data).permutation, data.labels),
        })
        defects = higher_ar_formula_defects(data)
        case["ar_formula_defects"] = [[data.labels[x], data.labels[y]] for x, y in defects]
    ok = data.size == expected and cross and not mesh and bool(report and report.passed)
    if full and case.get("ar_formula_defects"):
        ok = False
    return case, ok, data


def cmd_dynkin(args) -> Report:
    if args.spec:
        spec = parse_dynkin_spec(args.spec)
        kind, rank, orientation = spec.kind, spec.rank, spec.orientation
    elif args.type and args.rank:
        kind, rank, orientation = args.type.upper(), args.rank, args.orientation
    else:
        raise ConfigError("give a Dynkin spec file or --type and --rank")
    if args.orientation and args.spec:
        orientation = args.orientation
    field = field_for(args.char)
    orientations = all_orientations(kind, rank) if args.all_orientations else [orientation]
    if args.all_orientations and args.export_nrf:
        raise ConfigError("--export-nrf needs a single orientation")
    cases, all_ok, last = [], True, None
    for o in orientations:
        case, ok, last = _dynkin_case(kind, rank, o, field, full=not args.all_orientations)
        cases.append(case)
        all_ok = all_ok and ok
    if args.export_nrf:
        Path(args.export_nrf).write_text(json.dumps(nrf_document(last), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    results = {"type": f"{kind}{rank}", "cases": cases}
    summary = {"orientations": len(cases), "passed": sum(1 for c in cases if c["identity_holds"])}
    return Report(_echo(args), results, summary, 0 if all_ok else 1)


def cmd_verify_nrf(args) -> Report:
    data = parse_nrf(args.input)
    rep = verify_nrf_identity(data)
    results = {
        "n": rep.n,
        "size": rep.size,
        "identity": rep.identity,
        "passed": rep.passed,
        "coxeter": rep.coxeter,
        "grade_bijection": _perm_map(rep.permutation, data.labels),
        "coxeter_times_inverse_grade_bijection": rep.product,
        "minimal_polynomial": rep.minimal_polynomial,
        "witness": rep.witness,
    }
    return Report(_echo(args), results, {"passed": rep.passed}, 0 if rep.passed else 1)


# -- plumbing ------------------------------------------------------------------------

_COMMANDS = {
    "ideals": cmd_ideals,
    "rowmotion": cmd_rowmotion,
    "coxeter": cmd_coxeter,
    "auslander": cmd_auslander,
    "hopkins-search": cmd_hopkins_search,
    "dynkin": cmd_dynkin,
    "verify-nrf": cmd_verify_nrf,
}

def _echo(args) -> dict:
    skip = {"func"}
    return {"name": args.command, **{k: v for k, v in sorted(vars(args).items()) if k not in skip and k != "command"}}


def _global_options(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--char", type=int, default=d(0), help="field characteristic: 0 or a prime (default 0)")
    parser.add_argument("--format", choices=("human", "structured"), default=d("human"), help="output format")
    parser.add_argument("--ideal-cap", type=int, default=d(DEFAULT_IDEAL_CAP), help="maximum number of order ideals")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rowcox", description="Rowmotion, Coxeter matrices and grade bijections.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        return p

    add("ideals", "list the order ideals of a poset").add_argument("input")
    add("rowmotion", "rowmotion permutation and orbits").add_argument("input")
    for name, text in (("coxeter", "Cartan/Coxeter matrices and the Hopkins identity"),
                       ("auslander", "Auslander regularity and the grade bijection")):
        p = add(name, text)
        p.add_argument("input")
        p.add_argument("--ideal-lattice", action="store_true", help="work with the lattice of order ideals J(P)")
    p = add("hopkins-search", "search for violations of the distributive-lattice identity")
    p.add_argument("--enumerate", type=int, metavar="N", help=f"all labeled posets on at most N (<= {ENUMERATION_CAP}) elements")
    p.add_argument("--random", type=int, metavar="COUNT", help="number of distinct random posets")
    p.add_argument("--size", help="poset size N or range LO-HI for --random")
    p.add_argument("--seed", type=int, help="random seed (required with --random)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p = add("dynkin", "knit a Dynkin quiver and verify the Auslander algebra identity")
    p.add_argument("spec", nargs="?", help="Dynkin spec file")
    p.add_argument("--type", choices=("A", "D", "E", "a", "d", "e"))
    p.add_argument("--rank", type=int)
    p.add_argument("--orientation", help="one of '<' '>' per edge")
    p.add_argument("--all-orientations", action="store_true")
    p.add_argument("--export-nrf", metavar="PATH", help="write the knitted data as an NRF file")
    add("verify-nrf", "check the parity identity on an NRF data file").add_argument("input")
    return parser


def run(argv=None) -> tuple[Report | None, int, str | None]:
    """Parse, dispatch and return ``(report, exit_code, error_message)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0), None
    try:
        if args.char:
            field_for(args.char)
        if args.ideal_cap < 1:
            raise ConfigError("--ideal-cap must be positive")
        report = _COMMANDS[args.command](args)
        return report, report.exit_code, None
    except _IDENTITY_ERRORS as exc:
        return Report(_echo(args), {"error": f"{type(exc).__name__}: {exc}"}, {}, 1), 1, str(exc)
    except (RowcoxError, ValueError, KeyError, OSError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return Report(_echo(args), {"error": msg}, {}, 2), 2, msg


def main(argv=None) -> int:
    report, code, err = run(argv)
    if report is None:
        return code
    fmt = report.command.get("format", "human")
    if fmt == "structured":
        sys.stdout.write(report.to_json())
    else:
        if err:
            print(f"rowcox: {err}", file=sys.stderr)
        else:
            sys.stdout.write(report.render_human())
    return code


if __name__ == "__main__":
    sys.exit(main())
