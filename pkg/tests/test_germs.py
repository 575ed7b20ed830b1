"""Cusp normal form, its characteristic perturbation direction, and the
exact-rational Jacobian and transversality checks."""

import random
from fractions import Fraction

import pytest

from singcalc.germs import (GermPoint, corank, jacobian_f, jacobian_tilde_f,
                            normal_form_f, on_cusp_locus, on_sigma,
                            sigma_closed, sigma_oracle, stratify_grid,
                            tilde_f, transversality_check)
from singcalc.jets import jacobian_ad
from singcalc.germs import _tilde_f_coords


def test_point_validation():
    with pytest.raises(ValueError):
        GermPoint.make(3, 1, [0, 0, 0])  # n < 2k+2
    with pytest.raises(ValueError):
        GermPoint.make(4, 1, [0, 0, 0])  # wrong length
    with pytest.raises(ValueError):
        GermPoint.make(4, 0, [0, 0, 0, 0])  # k < 1
    p = GermPoint.make(4, 1, ["1/2", -1, "2/3", 0])
    assert p.x == (Fraction(1, 2), Fraction(-1))
    assert p.y == Fraction(2, 3)
    assert p.z == Fraction(0)
    assert p.s == ()


REF = GermPoint.make(4, 1, [-2, 1, -3, 1])


def test_reference_point_values():
    # frozen values at a point on the kernel-line locus
    assert on_sigma(4, 1, REF)
    assert not on_cusp_locus(4, 1, REF)
    assert normal_form_f(4, 1, REF) == tuple(
        Fraction(v) for v in (-2, 1, -3, -1, -2))
    assert sigma_closed(4, 1, REF) == (
        Fraction(-2, 3), Fraction(-2, 3), Fraction(-3),
        Fraction(2, 3), Fraction(3))
    pt = GermPoint.make(4, 1, [-2, 1, -3, 1], t=1)
    assert tilde_f(4, 1, pt) == (
        Fraction(-8, 3), Fraction(1, 3), Fraction(-6),
        Fraction(-1, 3), Fraction(1))


def _rfrac(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def _random_sigma_point(rng, n, k):
    # choose free coordinates, then solve the locus equations for the rest
    z = _rfrac(rng)
    coords = []
    for _ in range(k):
        xe = _rfrac(rng)
        coords.extend([-2 * z * xe, xe])
    coords.append(-3 * z * z)
    coords.append(z)
    coords.extend(_rfrac(rng) for _ in range(n - 2 * k - 2))
    return GermPoint.make(n, k, coords)


@pytest.mark.parametrize("n,k", [(4, 1), (5, 1), (6, 2), (8, 3)])
def test_sigma_closed_matches_gram_schmidt_oracle(n, k):
    rng = random.Random(100 * n + k)
    for _ in range(30):
        p = _random_sigma_point(rng, n, k)
        assert sigma_closed(n, k, p) == sigma_oracle(n, k, p)


def test_sigma_oracle_rejects_off_locus():
    p = GermPoint.make(4, 1, [1, 1, 1, 1])
    assert not on_sigma(4, 1, p)
    with pytest.raises(ValueError):
        sigma_oracle(4, 1, p)


def test_sigma_vanishing_is_cusp_locus():
    # within the locus, sigma = 0 exactly on x = y = z = 0
    vals = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    rng = random.Random(7)
    for _ in range(200):
        z = rng.choice(vals)
        xe = rng.choice(vals)
        x2 = rng.choice(vals)
        p = GermPoint.make(6, 2, [-2 * z * xe, xe, -2 * z * x2, x2,
                                  -3 * z * z, z])
        sig = sigma_closed(6, 2, p)
        vanishes = all(c == 0 for c in sig)
        assert vanishes == on_cusp_locus(6, 2, p)


def test_tilde_f_is_f_plus_t_sigma():
    rng = random.Random(9)
    for n, k in [(4, 1), (6, 2)]:
        for _ in range(20):
            p = _random_sigma_point(rng, n, k)
            t = _rfrac(rng)
            pt = GermPoint.make(n, k, p.coords(), t=t)
            f = normal_form_f(n, k, p)
            sig = sigma_closed(n, k, p)
            assert tilde_f(n, k, pt) == tuple(
                a + t * b for a, b in zip(f, sig))


def test_jacobian_hand_matches_ad():
    rng = random.Random(13)
    for n, k in [(4, 1), (6, 2)]:
        for _ in range(15):
            coords = [_rfrac(rng) for _ in range(n)]
            t = _rfrac(rng)
            p = GermPoint.make(n, k, coords, t=t)
            hand = jacobian_tilde_f(n, k, p)
            ad = jacobian_ad(lambda v: _tilde_f_coords(n, k, v),
                             coords + [t])
            assert hand == ad


def test_jacobian_t_column_is_sigma():
    # the perturbation column equals the characteristic direction when the
    # point sits on the locus
    rng = random.Random(14)
    for n, k in [(4, 1), (6, 2)]:
        for _ in range(10):
            p = _random_sigma_point(rng, n, k)
            t = _rfrac(rng)
            pt = GermPoint.make(n, k, p.coords(), t=t)
            hand = jacobian_tilde_f(n, k, pt)
            sig = sigma_closed(n, k, p)
            assert tuple(row[n] for row in hand) == sig


def test_jacobian_f_drops_t_column():
    p = GermPoint.make(4, 1, [-2, 1, -3, 1])
    pt = GermPoint.make(4, 1, [-2, 1, -3, 1], t=0)
    full = jacobian_tilde_f(4, 1, pt)
    assert jacobian_f(4, 1, p) == [row[:4] for row in full]


def test_corank_two_exactly_at_origin_with_t_zero():
    for n, k in [(4, 1), (5, 1), (6, 2)]:
        pt = GermPoint.make(n, k, [0] * n, t=0)
        rep = corank(jacobian_tilde_f(n, k, pt))
        assert rep.corank == 2
        assert rep.rank == n - 1
        # kernel concentrates on the z and t columns
        cols = set()
        for v in rep.kernel_basis:
            cols |= {i for i, c in enumerate(v) if c != 0}
        assert cols == {2 * k + 1, n}


def test_corank_drops_to_one_when_t_moves():
    for t in (Fraction(1, 2), Fraction(-1), Fraction(3)):
        pt = GermPoint.make(4, 1, [0, 0, 0, 0], t=t)
        rep = corank(jacobian_tilde_f(4, 1, pt))
        assert rep.corank == 1
        assert rep.rank == 4


def test_unperturbed_jacobian_never_reaches_corank_two():
    # without the t column the corank stays 1 even on the cusp locus
    p0 = GermPoint.make(4, 1, [0, 0, 0, 0])
    assert corank(jacobian_f(4, 1, p0)).corank == 1
    assert corank(jacobian_f(4, 1, REF)).corank == 1


def test_stratify_grid_matches_closed_form():
    rep = stratify_grid(4, 1, [Fraction(-1), Fraction(0), Fraction(1)])
    assert rep.status == "pass"
    sing = rep.artifacts["singular_points"]
    assert len(sing) == 3
    # singular exactly where x1 = z = 0 and y = 0; x2 free on the grid
    assert rep.artifacts["corank2_points"] == []


def test_stratify_grid_family_profile():
    rep = stratify_grid(4, 1, [Fraction(-1), Fraction(0), Fraction(1)],
                        t_values=[Fraction(0), Fraction(1)])
    prof = rep.artifacts["family_corank_profile"]
    assert prof == {"0": {"0": 56, "1": 24, "2": 1},
                    "1": {"0": 66, "1": 15}}
    c2 = rep.artifacts["family_corank2_points"]
    assert c2 == [["0", "0", "0", "0", "0"]]  # t first, then coordinates


@pytest.mark.parametrize("n,k", [(4, 1), (5, 1), (6, 2)])
def test_transversality_at_cusp_origin(n, k):
    pt = GermPoint.make(n, k, [0] * n, t=0)
    rep = transversality_check(n, k, pt)
    trans = rep.transversality
    assert trans["required_rank"] == 2 * (k + 1)
    assert trans["rank"] == trans["required_rank"]
    assert trans["surjective"] is True
    # the y/t pair alone misses the target; swapping in the z column fixes it
    assert trans["claimed_units_span"] is False
    assert trans["z_variant_units_span"] is True


def test_transversality_invariant_under_s_translation():
    base = transversality_check(5, 1, GermPoint.make(5, 1, [0] * 5, t=0))
    moved = transversality_check(
        5, 1, GermPoint.make(5, 1, [0, 0, 0, 0, Fraction(7, 2)], t=0))
    assert base.transversality == moved.transversality
    assert (base.rank, base.corank) == (moved.rank, moved.corank)


def test_transversality_requires_corank_two():
    pt = GermPoint.make(4, 1, [0, 0, 0, 0], t=1)
    with pytest.raises(ValueError):
        transversality_check(4, 1, pt)
