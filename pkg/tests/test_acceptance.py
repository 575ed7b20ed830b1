"""Acceptance gate: one test per contract item, each emitting a single
pass/fail line.

Every numbered item is checked at its stated range with an independent route
where one exists (in-file permutation-sum oracle, separate random generators,
dual-number differentiation). Nothing here reuses the suite's witnesses
except item 11, whose subject is the suite itself.
"""

import random
from fractions import Fraction
from itertools import permutations

import pytest

import singcalc.germs as germs
import singcalc.gf2 as gf2
import singcalc.gysin as gysin
import singcalc.suite as suite
import singcalc.thom as thom
from singcalc.bundles import Prim, apply_regime
from singcalc.gf2 import GF2Poly, sq1, wgen, wpoly
from singcalc.integral import IntPoly, torsion_in_sq1_image
from singcalc.jets import jacobian_ad, jacobian_fd
from singcalc.suite import failures, run_suite


def _conclude(label, problems):
    status = "FAIL" if problems else "PASS"
    print(f"[{status}] {label}" + (f" ({len(problems)} problems)" if problems else ""))
    assert not problems, f"{label}: {problems[:5]}"


def test_criterion_01_cusp_coincidence():
    problems = []
    for k in range(1, 9):
        d = 2 * (k + 1)
        closed = wpoly(k + 1, "", d) ** 2 + wpoly(k, "", d) * wpoly(k + 2, "", d)
        if thom.gtp(2, k - 1, d) != closed:
            problems.append(("gtp", k))
        if thom.morin_tp(2, k, d) != closed:
            problems.append(("morin", k))
        if k % 2 == 1:
            cls = thom.sigma2_integral(k)
            if cls != thom.morin_tp_integral(2, k):
                problems.append(("integral lift", k))
            if cls.reduce_mod2() != closed:
                problems.append(("integral reduction", k))
    _conclude("criterion 1: corank-2 determinant/Morin/closed-form coincidence, k=1..8",
              problems)


def test_criterion_02_prim_collapse():
    problems = []
    for r in range(1, 7):
        for k in range(r - 1, 9):
            d = r * (k + 1)
            regime = Prim(k)
            target = wpoly(k + 1, "", d) ** r
            if apply_regime(thom.gtp(r, k - r + 1, d), regime) != target:
                problems.append(("gtp", r, k))
            if apply_regime(thom.morin_tp(r, k, d), regime) != target:
                problems.append(("morin", r, k))
            if k % 2 == 1 and r % 2 == 0:
                got = thom.morin_tp_integral(r, k).rationalize()
                if got != IntPoly.p((k + 1) // 2) ** (r // 2):
                    problems.append(("pontryagin power", r, k))
    _conclude("criterion 2: vanishing-regime collapse to w_{k+1}^r, r=1..6 k=r-1..8",
              problems)


def test_criterion_03_morin_derivation():
    problems = [(r, k)
                for r in range(1, 7) for k in range(1, 7)
                if thom.verify_morin_derivation(r, k).status != "pass"]
    _conclude("criterion 3: Morin family re-derivation, r=1..6 k=1..6", problems)


def test_criterion_04_pushforward_lemma():
    problems = [(n, k, r)
                for n in range(1, 7) for k in range(0, 6) for r in range(0, 6)
                if gysin.verify_pushforward(n, k, r).status != "pass"]
    _conclude("criterion 4: fiber-integration lemma, n=1..6 k=0..5 r=0..5",
              problems)


def _own_sparse_poly(rng, max_deg=16):
    # independent generator: up to 4 monomials in w_1..w_8
    terms = []
    for _ in range(rng.randint(0, 4)):
        m = []
        deg = 0
        for _ in range(rng.randint(1, 3)):
            i = rng.randint(1, 8)
            e = rng.randint(1, 2)
            if deg + i * e > max_deg:
                continue
            deg += i * e
            m.append((wgen(i), e))
        terms.append(gf2.mono(m))
    return GF2Poly.from_terms(terms)


def test_criterion_05_steenrod():
    rng = random.Random(160916)
    problems = []
    polys = [_own_sparse_poly(rng) for _ in range(1000)]
    for idx, p in enumerate(polys):
        if not sq1(sq1(p)).is_zero():
            problems.append(("sq1 squared", idx))
        q = polys[(idx + 1) % len(polys)]
        if sq1(p * q) != sq1(p) * q + p * sq1(q):
            problems.append(("derivation", idx))
    for i in range(1, 16, 2):
        if sq1(wpoly(i) * wpoly(i + 1)) != wpoly(i) * wpoly(i + 2):
            problems.append(("odd pair", i))
    _conclude("criterion 5: sq1 is a square-zero derivation, 1000 random polys",
              problems)


def test_criterion_06_integral_classes():
    problems = []
    for k in (1, 3, 5, 7):
        for r in (2, 4, 6):
            cls = thom.morin_tp_integral(r, k)
            if cls.reduce_mod2() != thom.morin_tp(r, k):
                problems.append(("reduction", r, k))
            if not torsion_in_sq1_image(cls):
                problems.append(("torsion membership", r, k))
            if not cls.scale(2).torsion.is_zero():
                problems.append(("2-torsion", r, k))
    _conclude("criterion 6: integral lifts reduce correctly, torsion in im sq1 "
              "and 2-torsion, odd k<=7 even r<=6", problems)


def test_criterion_07_determinant_oracle():
    problems = []
    for r in range(1, 5):
        for l in range(0, 7):
            acc = GF2Poly.zero()
            for perm in permutations(range(1, r + 1)):
                m = GF2Poly.one()
                for i in range(1, r + 1):
                    m = m * wpoly(l + r + perm[i - 1] - i)
                acc = acc + m
            if thom.gtp(r, l) != acc:
                problems.append((r, l))
    _conclude("criterion 7: determinant equals permutation-sum oracle, "
              "r<=4 l<=6", problems)


def _rnd_fraction(rng):
    return Fraction(rng.randint(-8, 8), rng.randint(1, 5))


def _rnd_sigma_point(rng, n, k):
    z = _rnd_fraction(rng)
    coords = []
    for _ in range(k):
        xe = _rnd_fraction(rng)
        coords.extend([-2 * z * xe, xe])
    coords.extend([-3 * z * z, z])
    coords.extend(_rnd_fraction(rng) for _ in range(n - 2 * k - 2))
    return germs.GermPoint.make(n, k, coords)


def test_criterion_08_sigma_closed_form():
    rng = random.Random(160917)
    problems = []
    for k in (1, 2, 3):
        n = 2 * k + 2
        for i in range(100):
            p = _rnd_sigma_point(rng, n, k)
            if germs.sigma_closed(n, k, p) != germs.sigma_oracle(n, k, p):
                problems.append(("oracle", k, i))
    vals = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    seen_on_locus = 0
    for c1 in vals:
        for c2 in vals:
            for c3 in vals:
                for c4 in vals:
                    p = germs.GermPoint.make(4, 1, [c1, c2, c3, c4])
                    if not germs.on_sigma(4, 1, p):
                        continue
                    seen_on_locus += 1
                    vanishes = all(c == 0 for c in germs.sigma_closed(4, 1, p))
                    if vanishes != germs.on_cusp_locus(4, 1, p):
                        problems.append(("vanishing locus", p.coords()))
    if seen_on_locus == 0:
        problems.append(("empty grid intersection",))
    _conclude("criterion 8: perturbation direction equals projection oracle "
              "(100 points, k=1,2,3) and vanishes exactly on the cusp locus",
              problems)


def test_criterion_09_jacobian_closed_form():
    rng = random.Random(160918)
    problems = []
    for n, k in ((4, 1), (6, 2)):
        for i in range(50):
            coords = [_rnd_fraction(rng) for _ in range(n)]
            t = _rnd_fraction(rng)
            p = germs.GermPoint.make(n, k, coords, t=t)
            hand = germs.jacobian_tilde_f(n, k, p)
            ad = jacobian_ad(lambda v: germs._tilde_f_coords(n, k, v),
                             coords + [t])
            if hand != ad:
                problems.append(("ad", n, k, i))
        for i in range(5):
            floats = [rng.randint(-8, 8) / 16 for _ in range(n + 1)]
            exact = [Fraction(v) for v in floats]
            p = germs.GermPoint.make(n, k, exact[:-1], t=exact[-1])
            hand = germs.jacobian_tilde_f(n, k, p)
            fd = jacobian_fd(lambda v: germs._tilde_f_coords(n, k, v), floats)
            worst = max(abs(float(hand[a][b]) - fd[a][b])
                        / max(1.0, abs(float(hand[a][b])))
                        for a in range(len(hand)) for b in range(n + 1))
            if worst >= 1e-6:
                problems.append(("fd", n, k, i, worst))
    _conclude("criterion 9: family Jacobian equals dual-number derivative "
              "(50 points each shape) and finite differences to 1e-6",
              problems)


def test_criterion_10_corank_and_transversality(capsys):
    problems = []
    s_samples = {0: [()], 1: [(Fraction(0),), (Fraction(1, 2),), (Fraction(-3),)]}
    for n, k in ((4, 1), (5, 1), (6, 2)):
        for s in s_samples[n - 2 * k - 2]:
            p = germs.GermPoint.make(n, k, [0] * (2 * k + 2) + list(s), t=0)
            rep = germs.corank(germs.jacobian_tilde_f(n, k, p))
            if rep.corank != 2:
                problems.append(("corank", n, k, s))
            jr = germs.transversality_check(n, k, p)
            tr = jr.transversality
            if not (tr["rank"] == tr["required_rank"] == 2 * (k + 1)
                    and tr["surjective"]):
                problems.append(("transversality", n, k, s))
        # the t != 0 profile is reported, never asserted
        profile = {}
        for t in (Fraction(1, 2), Fraction(-1), Fraction(3)):
            p = germs.GermPoint.make(n, k, [0] * n, t=t)
            profile[str(t)] = germs.corank(germs.jacobian_tilde_f(n, k, p)).corank
        print(f"  info: (n,k)=({n},{k}) corank profile off t=0: {profile}")
    strat = germs.stratify_grid(4, 1, [Fraction(-1), Fraction(0), Fraction(1)])
    if strat.status != "pass":
        problems.append(("stratification vs closed form",))
    expected = sorted(
        [["0", str(x2), "0", "0"] for x2 in (-1, 0, 1)])
    if sorted(strat.artifacts["singular_points"]) != expected:
        problems.append(("singular set", strat.artifacts["singular_points"]))
    _conclude("criterion 10: corank 2 exactly at the cusp origin with "
              "transversal second derivative; stratification matches the "
              "closed-form equations", problems)


def test_criterion_11_fault_injection(monkeypatch):
    problems = []

    # baseline: the targeted sections are green
    for name in ("convention", "lemma-pushforward", "germ-jacobian",
                 "germ-corank", "germ-transversality"):
        if failures(run_suite([name])):
            problems.append(("baseline", name))

    # fault a: flipped determinant filling convention (the transpose)
    orig_idx = thom._entry_index
    with monkeypatch.context() as mp:
        mp.setattr(thom, "_entry_index",
                   lambda r, l, i, j: orig_idx(r, l, j, i))
        if not failures(run_suite(["convention"])):
            problems.append(("flip survives",))

    # fault b: losing the w_0 = 1 convention
    def drop0(i, bundle="", max_degree=None):
        if i == 0:
            return GF2Poly.zero(max_degree)
        return GF2Poly.gen(wgen(i, bundle), max_degree)

    with monkeypatch.context() as mp:
        mp.setattr(gf2, "wpoly", drop0)
        mp.setattr(thom, "wpoly", drop0)
        mp.setattr(gysin, "wpoly", drop0)
        if not failures(run_suite(["lemma-pushforward"])):
            problems.append(("w0 drop survives",))

    # fault c: omitting the perturbation column of the family Jacobian
    orig_jac = germs.jacobian_tilde_f

    def no_t_column(n, k, p, t=None):
        return [row[:-1] for row in orig_jac(n, k, p, t=t)]

    with monkeypatch.context() as mp:
        mp.setattr(germs, "jacobian_tilde_f", no_t_column)
        got = run_suite(["germ-jacobian", "germ-corank", "germ-transversality"])
        if not failures(got):
            problems.append(("t-column drop survives",))

    _conclude("criterion 11: each seeded fault is caught by the suite",
              problems)
