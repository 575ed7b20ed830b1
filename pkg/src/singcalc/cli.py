"""Command-line front ends.

tpcalc: the characteristic-class calculators (gtp, morin, total-sw), the
coincidence/pushforward verifiers, and the whole suite. germlab: the exact
germ computations (sigma, Jacobians, corank stratification, transversality).

Exit codes: 0 when every asserted identity holds, 1 when a verifier reports
a failed identity (witnesses in the report), 2 on usage errors. The default
degree bound 4(k+1) can be overridden per-call with --max-deg or globally
with the environment variable SINGCALC_MAX_DEG.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from . import germs, gysin, thom
from .bundles import MorinNu1, Prim, TwistedPrim, apply_regime, parse_bundle_expr, total_sw
from .gf2 import poly_to_json
from .integral import iclass_to_json
from .jets import jacobian_ad, jacobian_fd
from .reports import FAIL, INFO, PASS, Report
from .suite import SECTION_NAMES, failures, run_suite


def _max_deg(opt):
    if opt is not None:
        return opt
    env = os.environ.get("SINGCALC_MAX_DEG")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise click.UsageError(f"SINGCALC_MAX_DEG must be an integer, got {env!r}")


def _run(fn, *args, **kwargs):
    # domain validation errors are usage errors at the CLI boundary (exit 2)
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(report.to_json_dict(), indent=2))
    else:
        click.echo(report.to_text())
    if report.status == FAIL:
        sys.exit(1)


def _parse_fractions(text: str, what: str):
    cleaned = text.replace("−", "-")
    parts = [s.strip() for s in cleaned.split(",") if s.strip()]
    if not parts:
        raise click.UsageError(f"empty {what}: {text!r}")
    try:
        return [Fraction(s) for s in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"cannot parse {what} {text!r}: {exc}")


def _parse_fraction(text: str, what: str) -> Fraction:
    vals = _parse_fractions(text, what)
    if len(vals) != 1:
        raise click.UsageError(f"{what} must be a single rational, got {text!r}")
    return vals[0]


# ---------------------------------------------------------------------------
# tpcalc


@click.group()
def tpcalc():
    """Thom polynomial calculators and identity verifiers."""


@tpcalc.command("gtp")
@click.option("--r", type=int, required=True, help="corank of the locus")
@click.option("--l", type=int, required=True, help="codimension of the map")
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def gtp_cmd(r, l, max_deg, as_json):
    """Determinantal class of the corank-r locus in codimension l."""
    d = _max_deg(max_deg)
    p = _run(thom.gtp, r, l, d)
    if as_json:
        click.echo(json.dumps({"command": "gtp",
                               "params": {"r": r, "l": l, "max_degree": d},
                               "polynomial": poly_to_json(p)}, indent=2))
    else:
        click.echo(str(p))


@tpcalc.command("morin")
@click.option("--r", type=int, required=True, help="length of the kernel flag")
@click.option("--k", type=int, required=True, help="codimension of the map")
@click.option("--integral", is_flag=True, help="integral class (odd k, even r)")
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def morin_cmd(r, k, integral, max_deg, as_json):
    """Closed-form class of the Morin locus with r ones."""
    if integral:
        c = _run(thom.morin_tp_integral, r, k)
        if as_json:
            click.echo(json.dumps({"command": "morin",
                                   "params": {"r": r, "k": k, "integral": True},
                                   "class": iclass_to_json(c)}, indent=2))
        else:
            click.echo(str(c))
        return
    d = _max_deg(max_deg)
    p = _run(thom.morin_tp, r, k, d)
    if as_json:
        click.echo(json.dumps({"command": "morin",
                               "params": {"r": r, "k": k, "integral": False,
                                          "max_degree": d},
                               "polynomial": poly_to_json(p)}, indent=2))
    else:
        click.echo(str(p))


@tpcalc.command("total-sw")
@click.argument("expr")
@click.option("--rank", "rank_specs", multiple=True, metavar="NAME=RANK",
              help="rank of a named bundle, repeatable (default: nu_f=8 TM=8 F=8)")
@click.option("--regime", type=click.Choice(["none", "prim", "twisted", "nu1"]),
              default="none", help="rewriting applied to the result")
@click.option("--k", type=int, default=None, help="regime parameter")
@click.option("--tag", default="t", help="line-class tag used by twisted regimes")
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def total_sw_cmd(expr, rank_specs, regime, k, tag, max_deg, as_json):
    """Total Stiefel-Whitney class of a bundle expression.

    EXPR grammar: nu_f, TM, F, eps(R), line(TAG), A + B, A - B,
    tensor(TAG, A).
    """
    ranks = {"nu_f": 8, "TM": 8, "F": 8}
    for spec in rank_specs:
        name, _, val = spec.partition("=")
        if not val:
            raise click.UsageError(f"--rank expects NAME=RANK, got {spec!r}")
        try:
            ranks[name.strip()] = int(val)
        except ValueError:
            raise click.UsageError(f"--rank expects an integer rank, got {spec!r}")
    d = _max_deg(max_deg)
    tree = _run(parse_bundle_expr, expr, ranks)
    rank, total = _run(total_sw, tree, d)
    if regime != "none":
        if k is None:
            raise click.UsageError(f"--regime {regime} needs --k")
        reg = {"prim": Prim(k), "twisted": TwistedPrim(k, tag),
               "nu1": MorinNu1(k, tag)}[regime]
        total = apply_regime(total, reg)
    if as_json:
        click.echo(json.dumps({"command": "total-sw",
                               "params": {"expr": expr, "ranks": ranks,
                                          "regime": regime, "k": k, "tag": tag},
                               "rank": rank, "total": poly_to_json(total)},
                              indent=2))
    else:
        click.echo(f"rank {rank}")
        click.echo(str(total))


@tpcalc.group("verify")
def verify():
    """Symbolic identity verifiers; exit 1 when an identity fails."""


def _alias(group, command, name):
    group.add_command(click.Command(
        name, params=command.params, callback=command.callback,
        help=command.help), name)


@verify.command("convention")
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_convention(max_deg, as_json):
    """Pin the documented determinant entry layout."""
    _emit(_run(thom.verify_gtp_convention, _max_deg(max_deg)), as_json)


@verify.command("cusp")
@click.option("--k", type=int, required=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_cusp(k, max_deg, as_json):
    """Corank-2 determinant equals the length-2 Morin class."""
    _emit(_run(thom.verify_cusp_coincidence, k, _max_deg(max_deg)), as_json)


@verify.command("prim")
@click.option("--r", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_prim(r, k, max_deg, as_json):
    """Both class families reduce to w_{k+1}^r when the kernel line is trivial."""
    _emit(_run(thom.verify_prim_coincidence, r, k, _max_deg(max_deg)), as_json)


@verify.command("twisted")
@click.option("--k", type=int, required=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_twisted(k, max_deg, as_json):
    """Doubled integral classes agree when the kernel line extends."""
    _emit(_run(thom.verify_twisted_coincidence, k, _max_deg(max_deg)), as_json)


@verify.command("morin-derivation")
@click.option("--r", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_morin(r, k, max_deg, as_json):
    """Re-derive the Morin class by Euler classes and pushforward."""
    _emit(_run(thom.verify_morin_derivation, r, k, _max_deg(max_deg)), as_json)


@verify.command("lemma-pushforward")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_lemma(n, k, r, max_deg, as_json):
    """Fiber integration over the projectivized bundle equals the
    degree-(k+r+1) normal class."""
    _emit(_run(gysin.verify_pushforward, n, k, r, _max_deg(max_deg)), as_json)


_alias(verify, verify_cusp, "cusp-coincidence")
_alias(verify, verify_prim, "prim-coincidence")
_alias(verify, verify_twisted, "twisted-coincidence")


@tpcalc.command("suite")
@click.option("--sections", default=None,
              help="comma-separated subset of: " + ", ".join(SECTION_NAMES))
@click.option("--max-deg", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def suite_cmd(sections, max_deg, as_json):
    """Run the whole verification suite."""
    names = None
    if sections is not None:
        names = [s.strip() for s in sections.split(",") if s.strip()]
    reports = _run(run_suite, names, _max_deg(max_deg))
    bad = failures(reports)
    if as_json:
        click.echo(json.dumps(
            {"command": "suite", "status": "fail" if bad else "pass",
             "sections": list(names if names is not None else SECTION_NAMES),
             "reports": [r.to_json_dict() for r in reports]}, indent=2))
    else:
        for rep in reports:
            click.echo(rep.to_text())
        click.echo(f"suite: {len(reports)} reports, {len(bad)} failing")
    if bad:
        sys.exit(1)


# ---------------------------------------------------------------------------
# germlab


@click.group()
def germlab():
    """Exact-rational computations for the cusp germ family."""


def _germ_point(n, k, point_text, t=None):
    coords = _parse_fractions(point_text, "point")
    return _run(germs.GermPoint.make, n, k, coords,
                None if t is None else _parse_fraction(t, "t"))


@germlab.command("sigma")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--point", required=True,
              help='comma-separated exact coordinates, e.g. "-2,1,-3,1"')
@click.option("--json", "as_json", is_flag=True)
def sigma_cmd(n, k, point, as_json):
    """Perturbation section at a point; on the singular locus the closed
    form is cross-checked against the projection oracle."""
    p = _germ_point(n, k, point)
    rep = Report("germlab sigma",
                 {"n": n, "k": k, "point": [str(c) for c in p.coords()]})
    closed = _run(germs.sigma_closed, n, k, p)
    rep.artifacts["sigma"] = [str(c) for c in closed]
    if germs.on_sigma(n, k, p):
        rep.check_equal("closed form equals the projection oracle",
                        closed, germs.sigma_oracle(n, k, p))
        rep.add("cusp locus membership", INFO,
                str(germs.on_cusp_locus(n, k, p)))
    else:
        rep.add("point is off the singular locus", INFO,
                "closed form evaluated; the projection oracle needs a singular point")
    _emit(rep, as_json)


@germlab.command("jacobian")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--point", required=True)
@click.option("--t", required=True, help="family parameter, exact rational")
@click.option("--check-fd", is_flag=True,
              help="also compare against float central differences (1e-6 relative)")
@click.option("--json", "as_json", is_flag=True)
def jacobian_cmd(n, k, point, t, check_fd, as_json):
    """Family Jacobian at a point: closed form, checked against the
    dual-number oracle."""
    p = _germ_point(n, k, point, t)
    rep = Report("germlab jacobian",
                 {"n": n, "k": k, "point": [str(c) for c in p.coords()],
                  "t": str(p.t)})
    hand = _run(germs.jacobian_tilde_f, n, k, p)
    rep.artifacts["jacobian"] = [[str(e) for e in row] for row in hand]
    coords = p.coords() + [p.t]
    ad = jacobian_ad(lambda c: germs._tilde_f_coords(n, k, c), coords)
    rep.check_equal("closed form equals the dual-number oracle", hand, ad)
    jr = germs.corank(hand)
    rep.add("rank", INFO, f"rank {jr.rank}, corank {jr.corank}")
    if check_fd:
        fd = jacobian_fd(lambda c: germs._tilde_f_coords(n, k, c),
                         [float(c) for c in coords])
        worst = 0.0
        shape_ok = len(fd) == len(hand)
        if shape_ok:
            for r1, r2 in zip(fd, hand):
                for a, b in zip(r1, r2):
                    worst = max(worst, abs(a - float(b)) / max(1.0, abs(float(b))))
        ok = shape_ok and worst < 1e-6
        rep.add("finite differences agree to 1e-6 relative",
                PASS if ok else FAIL, f"worst relative error {worst:.3e}")
    _emit(rep, as_json)


@germlab.command("transversality")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--point", required=True)
@click.option("--t", required=True)
@click.option("--json", "as_json", is_flag=True)
def transversality_cmd(n, k, point, t, as_json):
    """Rank of the projected second derivative at a corank-2 family point."""
    p = _germ_point(n, k, point, t)
    jr = _run(germs.transversality_check, n, k, p)
    rep = Report("germlab transversality",
                 {"n": n, "k": k, "point": [str(c) for c in p.coords()],
                  "t": str(p.t)})
    rep.artifacts["jet_report"] = jr.to_json_dict()
    tr = jr.transversality
    rep.add("projected second derivative rank", INFO,
            f"{tr['rank']} of required {tr['required_rank']}, "
            f"surjective: {tr['surjective']}")
    rep.add("hand-listed spanning set", INFO,
            f"claimed units span: {tr['claimed_units_span']}, "
            f"z-variant units span: {tr['z_variant_units_span']}")
    _emit(rep, as_json)


@germlab.command("stratify")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--grid", required=True, help='comma-separated values, e.g. "-1,0,1"')
@click.option("--t-grid", default=None, help="also scan the family over these t values")
@click.option("--json", "as_json", is_flag=True)
def stratify_cmd(n, k, grid, t_grid, as_json):
    """Corank of the germ differential over a product grid, cross-checked
    against the closed-form singular-locus equations."""
    gvals = _parse_fractions(grid, "grid")
    tvals = None if t_grid is None else _parse_fractions(t_grid, "t-grid")
    _emit(_run(germs.stratify_grid, n, k, gvals, tvals), as_json)


@germlab.command("scan-sigma2")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--grid", required=True)
@click.option("--t-grid", default=None,
              help="family parameter values (default: same as --grid)")
@click.option("--report", "report_path", default=None, type=click.Path(),
              help="write the full JSON report here")
@click.option("--json", "as_json", is_flag=True)
def scan_sigma2_cmd(n, k, grid, t_grid, report_path, as_json):
    """Scan the family over (point, t) grids for corank-2 points; the corank
    profile is reported verbatim, not asserted."""
    gvals = _parse_fractions(grid, "grid")
    tvals = gvals if t_grid is None else _parse_fractions(t_grid, "t-grid")
    rep = _run(germs.stratify_grid, n, k, gvals, tvals)
    rep.command = "germlab scan-sigma2"
    if report_path:
        with open(report_path, "w") as fh:
            json.dump(rep.to_json_dict(), fh, indent=2)
            fh.write("\n")
    _emit(rep, as_json)


if __name__ == "__main__":  # pragma: no cover
    sys.argv[0] = "tpcalc"
    tpcalc()
