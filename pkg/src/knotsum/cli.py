"""Command-line front end: parse diagram files, dispatch, render.

Output is deterministic plain text; ``--json`` switches polynomial output
to ``{"terms": [[exponent_quarter_units, coefficient], ...]}`` sorted by
descending exponent. Exit codes: 0 success, 1 domain error (the error
class name is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .alexander import alexander_poly, knot_determinant
from .bracket import bracket, f_poly, jones, switching_check
from .coloring import fox_colorings, region_colorings
from .diagram import (
    LinkDiagram,
    checkerboard,
    checkerboard_graph,
    parse_pd,
    spanning_tree_count,
)
from .errors import KnotError
from .khovanov import (
    build_complex,
    graded_euler,
    homology,
    jones_calibrated,
    verify_d2,
)
from .laurent import LaurentPoly
from .moves import smooth_crossing, switch_crossing
from .states import (
    alexander_state_sum,
    conway_state_sum,
    enumerate_states,
    enumerate_states_bruteforce,
    make_skein_triple,
    skein_check,
    state_epsilon,
)
from .tangle import (
    closure,
    hopf_pairing,
    omega_matrix,
    omega_surgery,
    parse_pattern,
    parse_tangle,
    tangle_bracket,
)


def _exp_str(quarters: int) -> str:
    if quarters % 4 == 0:
        return str(quarters // 4)
    if quarters % 2 == 0:
        return f"{quarters // 2}/2"
    return f"{quarters}/4"


def render_poly(p: LaurentPoly, variable: str = "x") -> str:
    """Terms in strictly decreasing exponent order; unit coefficients elided."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            coeff = "" if mag == 1 else str(mag)
            exp = _exp_str(e)
            body = f"{coeff}{variable}" + ("" if exp == "1" else f"^{exp}")
        pieces.append((c < 0, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def poly_json(p: LaurentPoly) -> str:
    terms = sorted(p.terms.items(), reverse=True)
    return json.dumps({"terms": [[e, c] for e, c in terms]})


def _emit_poly(args, p: LaurentPoly, variable: str, label: str) -> None:
    if args.json:
        print(poly_json(p))
    else:
        print(f"{label} = {render_poly(p, variable)}")


def _load_diagram(path: str) -> LinkDiagram:
    with open(path) as fh:
        return parse_pd(fh.read())


def _load_tangle(path: str):
    with open(path) as fh:
        return parse_tangle(fh.read())


def _parse_stars(text: str | None):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise KnotError(f"stars must be 'f1,f2', got {text!r}")
    return (int(parts[0]), int(parts[1]))


# -- verbs ------------------------------------------------------------------


def _cmd_alexander(args) -> int:
    d = _load_diagram(args.input)
    _emit_poly(args, alexander_poly(d, _parse_stars(args.stars)), "x", "Delta")
    return 0


def _cmd_conway(args) -> int:
    d = _load_diagram(args.input)
    _emit_poly(args, conway_state_sum(d, _parse_stars(args.stars)), "x", "Omega")
    return 0


def _cmd_bracket(args) -> int:
    d = _load_diagram(args.input)
    _emit_poly(args, bracket(d), "A", "<K>")
    return 0


def _cmd_jones(args) -> int:
    d = _load_diagram(args.input)
    _emit_poly(args, jones(d), "t", "V")
    return 0


def _cmd_det(args) -> int:
    d = _load_diagram(args.input)
    print(knot_determinant(d))
    return 0


def _cmd_states(args) -> int:
    d = _load_diagram(args.input)
    stars = _parse_stars(args.stars)
    states = enumerate_states(d, stars)
    print(f"states = {len(states)}")
    print(f"epsilon = {state_epsilon(d, stars):+d}")
    return 0


def _cmd_colorings(args) -> int:
    d = _load_diagram(args.input)
    fox = fox_colorings(d, args.modulus)
    reg = region_colorings(d, args.modulus)
    print(f"fox colorings mod {args.modulus} = {fox.count} "
          f"(nonconstant {fox.nonconstant_count})")
    print(f"region colorings mod {args.modulus} = {reg.count} "
          f"(nonconstant {reg.nonconstant_count})")
    return 0


def _cmd_tree_count(args) -> int:
    d = _load_diagram(args.input)
    print(spanning_tree_count(checkerboard_graph(d, checkerboard(d))))
    return 0


def _cmd_tangle(args) -> int:
    t = _load_tangle(args.input)
    if args.pattern:
        t = omega_surgery(t, parse_pattern(open(args.pattern).read()),
                          inverse=args.inverse)
    bv = tangle_bracket(t)
    if args.json:
        print(json.dumps({
            "alpha": json.loads(poly_json(bv.alpha))["terms"],
            "beta": json.loads(poly_json(bv.beta))["terms"],
        }))
    else:
        print(f"alpha = {render_poly(bv.alpha, 'A')}")
        print(f"beta = {render_poly(bv.beta, 'A')}")
    return 0


def _cmd_hopf_pair(args) -> int:
    t = _load_tangle(args.input)
    u = _load_tangle(args.second)
    diagram, value = hopf_pairing(t, u)
    direct = bracket(diagram)
    _emit_poly(args, value, "A", "<H(T,U)>")
    if value != direct:
        print("matrix pairing disagrees with the direct bracket", file=sys.stderr)
        return 1
    return 0


def _cmd_khovanov(args) -> int:
    d = _load_diagram(args.input)
    c = build_complex(d, args.field)
    if not verify_d2(c):
        print("d^2 != 0", file=sys.stderr)
        return 1
    h = homology(c)
    for (i, j), r in h.items():
        print(f"i={i} j={j} rank={r}")
    print(f"euler = {render_poly(graded_euler(h), 'q')}")
    return 0


def _cmd_verify(args) -> int:
    d = _load_diagram(args.input)
    failures = 0

    def report(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        failures += 0 if ok else 1

    delta = alexander_poly(d)
    report("alexander state sum matches determinant",
           alexander_state_sum(d).dot_equals(delta)[0])
    omega = conway_state_sum(d)
    report("conway state sum matches alexander up to units",
           omega.dot_equals(delta.substitute(1, 8))[0])
    if d.n:
        kp, km, k0 = make_skein_triple(d, 0)
        site = 0 if d.sign[0] > 0 else None
        if site is None:
            site = next(v for v in range(kp.n) if kp.sign[v] > 0)
        report("skein relation at a crossing", skein_check(kp, km, k0, site))
    if d.n <= 7:
        bfs = enumerate_states(d)
        brute = enumerate_states_bruteforce(d)
        report("clock moves reach every state", bfs == brute)
    if d.n:
        a_part = smooth_crossing(d, 0, "A")
        b_part = smooth_crossing(d, 0, "B")
        expect = (LaurentPoly.monomial(1, 4) * bracket(a_part)
                  + LaurentPoly.monomial(1, -4) * bracket(b_part))
        report("bracket smoothing axiom at crossing 0", bracket(d) == expect)
        report("switching formula at crossing 0",
               switching_check(d, switch_crossing(d, 0), 0))
    for field in ("Q", "F2"):
        c = build_complex(d, field)
        report(f"khovanov differential squares to zero over {field}", verify_d2(c))
    h = homology(build_complex(d, "F2"))
    report("graded euler characteristic matches the jones polynomial",
           graded_euler(h) == jones_calibrated(d))
    if d.is_connected and d.is_alternating():
        trees = spanning_tree_count(checkerboard_graph(d, checkerboard(d)))
        report("alternating tree count equals |Delta(-1)|",
               trees == knot_determinant(d))
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="knot",
        description="Exact knot and link invariants from planar diagram codes.",
    )
    parser.add_argument("--version", action="version", version=f"knot {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("input", help="diagram or tangle file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    for name, fn in (("alexander", _cmd_alexander), ("conway", _cmd_conway)):
        p = add(name, fn)
        p.add_argument("--stars", help="starred face pair, e.g. 0,1")
    add("bracket", _cmd_bracket)
    add("jones", _cmd_jones)
    add("det", _cmd_det)
    p = add("states", _cmd_states)
    p.add_argument("--stars", help="starred face pair, e.g. 0,1")
    p = add("colorings", _cmd_colorings)
    p.add_argument("--modulus", type=int, default=3)
    add("tree-count", _cmd_tree_count)
    p = add("tangle", _cmd_tangle)
    p.add_argument("--pattern", help="surgery pattern file to apply first")
    p.add_argument("--inverse", action="store_true",
                   help="apply the mirrored pattern")
    p = add("hopf-pair", _cmd_hopf_pair)
    p.add_argument("second", help="second tangle file")
    p = add("khovanov", _cmd_khovanov)
    p.add_argument("--field", choices=("Q", "F2"), default="Q")
    add("verify", _cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except KnotError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
