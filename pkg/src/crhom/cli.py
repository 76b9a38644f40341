"""Command-line front end.

Every subcommand builds a report dict ``{command, inputs, results,
assertions, notes, ok}`` and prints it as JSON or text.  Exit status is 0
when all assertions hold, 1 on a failed assertion or computational error,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .bloomgraham import Inconclusive, PointNotOnSurface, bg_type, surface_point
from .polyring import GaussianRational, ParseError, parse_gaussian

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _gaussian(text: str) -> GaussianRational:
    try:
        return parse_gaussian(text)
    except (ParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"not a Gaussian rational: {text!r}") from exc


def _point_list(text: str) -> List[GaussianRational]:
    return [_gaussian(t) for t in re.split(r"[,;\s]+", text.strip()) if t]


_Q_RE = re.compile(r"^Q\(?\s*([^,()]+)\s*,\s*([^,()]+)\s*,\s*([^,()]+)\s*\)?$", re.I)


def load_surface(arg: str):
    """A surface file, a named model (``TUBE_C``, ``E``, ...) or ``Q(a,b,c)``."""
    from .surface import NAMED, make_named, make_q, parse_surface

    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_surface(fh.read())
    if arg.upper() in NAMED:
        return make_named(arg.upper())
    m = _Q_RE.match(arg.strip())
    if m:
        return make_q(tuple(Fraction(x) for x in m.groups()))
    raise UsageError(f"no surface file or named model {arg!r}")


def _report(command: str, inputs: Dict, results, assertions=None, notes=None) -> Dict:
    assertions = assertions or []
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "assertions": assertions,
        "notes": list(notes or []),
        "ok": all(a["passed"] for a in assertions),
    }


def _assert(name: str, passed: bool) -> Dict:
    return {"name": name, "passed": bool(passed)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_bg_type(a) -> Dict:
    s = load_surface(a.surface)
    pts = a.points or []
    pt = surface_point(s, pts) if pts else None
    t = bg_type(s, pt, cap=a.cap)
    return _report(
        "bg-type",
        {"surface": s.label or a.surface, "point": [str(x) for x in pts]},
        {"type": str(t), "pairs": [list(p) for p in t.pairs], "finite": t.finite, "dims": list(t.dims)},
        [_assert("sum of jumps equals codimension", not t.finite or sum(k for _, k in t.pairs) == s.codim)],
    )


def _parse_directions(text: Optional[str]):
    from .criteria import DIRECTIONS

    if not text:
        return DIRECTIONS
    out = []
    for chunk in text.split(";"):
        parts = [Fraction(x) for x in chunk.split(",")]
        if len(parts) != 3:
            raise UsageError(f"direction {chunk!r} needs three entries")
        out.append(tuple(parts))
    return out


def cmd_homogeneity_scan(a) -> Dict:
    from .criteria import PROBE_Z, _proportional_to_320, homogeneity_scan

    dirs = _parse_directions(a.directions)
    pts = a.points or list(PROBE_Z)
    scan = homogeneity_scan(dirs, pts)
    asserts = [
        _assert(f"({','.join(r['params'])}) constant iff proportional to (3:2:0)", r["constant"] == _proportional_to_320(p))
        for p, r in zip(dirs, scan)
    ]
    return _report("homogeneity-scan", {"points": [str(p) for p in pts]}, {"scan": scan}, asserts)


def cmd_moduli_eq(a) -> Dict:
    from .surface import make_q, model_equivalence, verify_equivalence_map

    p, q = tuple(a.params[:3]), tuple(a.params[3:])
    m = model_equivalence(p, q)
    res = {"equivalent": m is not None}
    asserts = []
    if m is not None:
        res["witness"] = {
            "z": f"{m.beta} z",
            "w2": f"{m.beta2} w2",
            "w3": f"{m.beta3} w3",
            "w4": f"{m.beta4} w4" + (f" + {m.gamma4} w2^2" if m.gamma4 else ""),
        }
        asserts.append(_assert("witness map verified by substitution", verify_equivalence_map(make_q(p), make_q(q), m)))
    return _report("moduli-eq", {"p": [str(x) for x in p], "q": [str(x) for x in q]}, res, asserts)


def cmd_orbit(a) -> Dict:
    from .group import generator_matrix, orbit_descriptor, to_real_coords
    from .orbitclass import classify

    pt = a.coords
    d = orbit_descriptor(pt)
    _, r = generator_matrix(to_real_coords(pt))
    res = d.to_json()
    res["rank_at_point"] = r
    res["model"] = str(classify(d))
    expect = 5 if d.branch == "SURFACE_C" else 6
    return _report("orbit", {"point": [str(x) for x in pt]}, res, [_assert(f"rank is {expect}", r == expect)])


def _descriptor_from_args(a):
    from .group import make_descriptor, orbit_descriptor

    if a.point:
        if len(a.point) != 4:
            raise UsageError("--point needs four coordinates")
        return orbit_descriptor(a.point)
    b = a.branch.upper()
    if b == "POS":
        return make_descriptor(b, mu=_need(a.mu, "--mu"), sigma=_need(a.sigma, "--sigma"))
    if b == "NEG":
        return make_descriptor(b, nu=_need(a.nu, "--nu"), sigma=_need(a.sigma, "--sigma"))
    if b == "RHO":
        return make_descriptor(b, rho=_need(a.rho, "--rho"))
    if b == "TAU":
        return make_descriptor(b, tau=_need(a.tau, "--tau"))
    return make_descriptor(b)


def _need(v, flag):
    if v is None:
        raise UsageError(f"{flag} is required for this branch")
    return v


def cmd_classify_orbit(a) -> Dict:
    from .orbitclass import Backend, classify, classify_table, degeneracy_flags

    d = _descriptor_from_args(a)
    pen = classify(d, Backend.PENCIL)
    levi = classify(d, Backend.LEVI)
    tab = classify_table(d)
    notes = []
    if tab.status != "ok":
        notes.append(f"printed table is {tab.status} here (rows {list(tab.rows)})")
    elif tab.tag != pen:
        notes.append(f"printed table gives {tab.tag}, pencil gives {pen}")
    if tab.malformed:
        notes.append("a matching printed row is malformed; evaluated with mu in place of 'mu'")
    if levi != pen:
        notes.append(f"exact Levi pair gives {levi}")
    return _report(
        "classify-orbit",
        {"descriptor": d.label()},
        {"pencil": str(pen), "levi": str(levi), "table": tab.to_json(), "flags": degeneracy_flags(d)},
        [],
        notes,
    )


def cmd_sweep(a) -> Dict:
    from .orbitclass import parse_range, sweep

    grid_a = parse_range(a.range)
    grid_b = parse_range(a.sigma_range) if a.sigma_range else None
    rep = sweep(a.branch, grid_a, grid_b)
    notes = []
    if rep["disagreements"]:
        notes.append(f"{rep['disagreements']} grid points where the printed table and the pencil disagree")
    return _report("sweep", {"branch": a.branch.upper(), "range": a.range, "sigma_range": a.sigma_range}, rep, [], notes)


def cmd_aut_dim(a) -> Dict:
    from .autalg import aut_basis, bracket_closure, tangency_recheck

    s = load_surface(a.surface)
    b = aut_basis(s, a.max_weight)
    res = b.to_json(per_weight=a.per_weight)
    asserts = [
        _assert("every field passes the tangency recheck", all(tangency_recheck(s, X) for X in b.fields())),
        _assert("weight spaces closed under bracket", not bracket_closure(b, s)),
    ]
    return _report("aut-dim", {"surface": s.label or a.surface, "max_weight": a.max_weight}, res, asserts)


def cmd_verify_paper(a) -> Dict:
    from .criteria import run_all

    only = [int(x) for x in a.only.split(",")] if a.only else None
    results = run_all(a.seed, only)
    asserts = [_assert(f"criterion {r.id} internally consistent", r.consistent) for r in results]
    notes = []
    for r in results:
        for d in r.discrepancies:
            notes.append(f"criterion {r.id}: {d}")
    out = []
    for r in results:
        j = r.to_json()
        if not a.timings:
            j.pop("elapsed_s")
            j["details"] = {k: v for k, v in j.get("details", {}).items() if not k.endswith("_s")}
        out.append(j)
    rep = _report("verify-paper", {"seed": a.seed, "only": only}, {"criteria": out}, asserts, notes)
    rep["_lines"] = [r.line() if a.timings else re.sub(r"  \[[0-9.]+s\]", "", r.line()) for r in results]
    return rep


# ---------------------------------------------------------------------------


def _text(rep: Dict) -> str:
    lines = rep.pop("_lines", None)
    cmd = rep["command"]
    out = []
    res = rep["results"]
    if lines is not None:
        out.extend(lines)
    elif cmd == "bg-type":
        out.append(res["type"] if res["finite"] else res["type"] + " (infinite)")
    elif cmd == "moduli-eq":
        out.append("equivalent" if res["equivalent"] else "not equivalent")
        for k, v in res.get("witness", {}).items():
            out.append(f"  {k} -> {v}")
    elif cmd == "orbit":
        params = ", ".join(f"{k}={v['exact']} ({v['float']:.6g})" for k, v in res["params"].items())
        out.append(f"{res['branch']}({params}) rank {res['rank_at_point']} model {res['model']}")
    elif cmd == "classify-orbit":
        t = res["table"]
        out.append(f"{rep['inputs']['descriptor']}: {res['pencil']}")
        out.append(f"  levi {res['levi']}, table {t['tag']} [{t['status']}; rows {','.join(t['rows'])}]")
    elif cmd == "homogeneity-scan":
        for r in res["scan"]:
            out.append(f"({','.join(r['params'])}) {'constant' if r['constant'] else 'varies'}: {' '.join(r['types'])}")
    elif cmd == "sweep":
        for rid, c in res["rows"].items():
            out.append(f"{rid}: {c['points']} points, {c['agree']} agree, {c['disagree']} disagree")
        out.append(f"boundary: {res['boundary']['zero_set']}")
    elif cmd == "aut-dim":
        out.append(f"dim = {res['total_dim']} (weights up to {res['weight_cap']})")
        if "per_weight" in res:
            out.append("  " + " ".join(f"{d}:{n}" for d, n in res["per_weight"].items()))
        if res["holomorphically_degenerate"]:
            out.append("  holomorphically degenerate")
    else:
        out.append(json.dumps(res, sort_keys=True))
    for a in rep["assertions"]:
        if not a["passed"]:
            out.append(f"FAILED: {a['name']}")
    for n in rep["notes"]:
        out.append(f"note: {n}")
    return "\n".join(out)


def _csv(rep: Dict) -> str:
    from .orbitclass import sweep_csv

    if rep["command"] != "sweep":
        raise UsageError("csv output is only available for sweep")
    return sweep_csv(rep["results"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json", help="same as --format json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=8, help="bracket layer cap for bg-type")
    common.add_argument("--points", type=_point_list, default=None, help="comma separated Gaussian rationals")

    p = argparse.ArgumentParser(prog="crhom", description="Model surfaces, orbits and automorphisms in C^4.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("bg-type", parents=[common], help="Bloom-Graham type at a point")
    s.add_argument("surface")
    s.set_defaults(fn=cmd_bg_type)

    s = sub.add_parser("homogeneity-scan", parents=[common], help="type constancy over probe points")
    s.add_argument("--directions", help="e.g. '3,2,0;1,0,0'")
    s.set_defaults(fn=cmd_homogeneity_scan)

    s = sub.add_parser("moduli-eq", parents=[common], help="equivalence of Q_(a,b,c) and Q_(a',b',c')")
    s.add_argument("params", nargs=6, type=_fraction)
    s.set_defaults(fn=cmd_moduli_eq)

    s = sub.add_parser("orbit", parents=[common], help="orbit descriptor of a point of C^4")
    s.add_argument("coords", nargs=4, type=_gaussian)
    s.set_defaults(fn=cmd_orbit)

    s = sub.add_parser("classify-orbit", parents=[common], help="model surface of an orbit")
    s.add_argument("--branch", default="pos", type=str.lower,
                   choices=("pos", "neg", "rho", "tau", "oplus", "ominus", "surface_c"))
    for name in ("mu", "nu", "sigma", "rho", "tau"):
        s.add_argument(f"--{name}", type=_fraction)
    s.add_argument("--point", nargs=4, type=_gaussian, help="classify the orbit through this point instead")
    s.set_defaults(fn=cmd_classify_orbit)

    s = sub.add_parser("sweep", parents=[common], help="classify a parameter grid")
    s.add_argument("--branch", required=True, type=str.lower, choices=("pos", "neg", "rho", "tau"))
    s.add_argument("--range", required=True, help="lo:hi:step for mu/nu/rho/tau")
    s.add_argument("--sigma-range", help="lo:hi:step for sigma (default: same as --range)")
    s.set_defaults(fn=cmd_sweep)

    s = sub.add_parser("aut-dim", parents=[common], help="graded infinitesimal automorphisms")
    s.add_argument("surface")
    s.add_argument("--max-weight", type=int, default=4)
    s.add_argument("--per-weight", action="store_true")
    s.set_defaults(fn=cmd_aut_dim)

    s = sub.add_parser("verify-paper", parents=[common], help="run every verification check")
    s.add_argument("--only", help="comma separated criterion numbers")
    s.add_argument("--timings", action="store_true", help="include wall times (output no longer byte-stable)")
    s.set_defaults(fn=cmd_verify_paper)
    return p


_NEG_IMAG = re.compile(r"^-[0-9/.]*\*?I$")


def _glue_ranges(argv: List[str]) -> List[str]:
    # "--range -3:3:1/4" and "-I" would otherwise be read as options
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if _NEG_IMAG.match(tok):
            tok = "0" + tok
        if tok in ("--range", "--sigma-range") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    from .autalg import CapExceeded
    from .surface import InvalidParams, InvalidSurface, UnsupportedAlgebraic

    parser = build_parser()
    args = parser.parse_args(_glue_ranges(sys.argv[1:] if argv is None else list(argv)))
    try:
        rep = args.fn(args)
        if args.format == "json":
            rep.pop("_lines", None)
            text = json.dumps(rep, indent=2, sort_keys=True, default=str)
        elif args.format == "csv":
            text = _csv(rep)
        else:
            text = _text(rep)
    except UsageError as exc:
        parser.error(str(exc))
        return EXIT_USAGE
    except (PointNotOnSurface, InvalidParams, InvalidSurface, ParseError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (Inconclusive, CapExceeded, UnsupportedAlgebraic, ArithmeticError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK if rep["ok"] else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
