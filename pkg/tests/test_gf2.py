"""Ring axioms, the sq1 derivation, preimages, inverse totals."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singcalc.gf2 import (GF2Poly, inverse_total, linegen, mono, mono_degree,
                          parse_gen, poly_from_json, poly_to_json, sq1,
                          sq1_preimage, wgen, wpoly)

GENS = [wgen(i) for i in range(1, 6)] + [wgen(2, "E"), linegen("t")]

monomials = st.lists(
    st.tuples(st.sampled_from(GENS), st.integers(1, 2)), max_size=3
).map(mono)
polys = st.lists(monomials, max_size=5).map(GF2Poly.from_terms)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + a).is_zero()
    assert a * GF2Poly.one() == a
    assert (a * GF2Poly.zero()).is_zero()


@given(polys, polys)
def test_frobenius(a, b):
    assert (a + b).square() == a.square() + b.square()
    assert a.square() == a * a
    assert a ** 3 == a * a * a


@given(polys, st.integers(0, 6))
def test_truncate_drops_terms_only(a, d):
    t = a.truncate(d)
    assert t.max_degree == a.max_degree
    assert all(mono_degree(m) <= d for m in t.terms)
    assert t + a.homogeneous_part(d + 1) == a.truncate(d + 1)


def test_bounded_product_is_quotient_image():
    a = wpoly(2) + wpoly(3)
    bounded = GF2Poly.from_terms(a.terms, 4)
    full = a * a
    assert bounded * bounded == full.truncate(4)


def test_wpoly_conventions():
    assert wpoly(0) == GF2Poly.one()
    assert wpoly(0, "E") == GF2Poly.one()
    with pytest.raises(ValueError):
        wgen(0)
    with pytest.raises(ValueError):
        wpoly(-1)


def test_generator_names_roundtrip():
    from singcalc.gf2 import gen_name
    for g in GENS:
        assert parse_gen(gen_name(g)) == g


@given(polys)
def test_json_roundtrip(a):
    assert poly_from_json(poly_to_json(a)) == a


# sq1 -----------------------------------------------------------------------

def test_sq1_on_generators():
    # anonymous: sq1 w_i = w_1 w_i + (i+1 choose i) w_{i+1}, i.e. the extra
    # w_{i+1} appears for even i only
    for i in range(1, 8):
        expect = wpoly(1) * wpoly(i)
        if i % 2 == 0:
            expect = expect + wpoly(i + 1)
        assert sq1(wpoly(i)) == expect
    # a line class squares
    t = GF2Poly.gen(linegen("t"))
    assert sq1(t) == t * t


@given(polys, polys)
@settings(max_examples=200)
def test_sq1_derivation_and_square_zero(a, b):
    assert sq1(a * b) == sq1(a) * b + a * sq1(b)
    assert sq1(sq1(a)).is_zero()


@given(polys)
def test_sq1_raises_degree_by_one(a):
    for d in {mono_degree(m) for m in a.terms}:
        part = sq1(a.homogeneous_part(d))
        assert part.is_zero() or part.is_homogeneous()
        assert part.is_zero() or part.degree() == d + 1


def test_sq1_odd_pair_instances():
    for i in range(1, 16, 2):
        assert sq1(wpoly(i) * wpoly(i + 1)) == wpoly(i) * wpoly(i + 2)


# sq1_preimage vs a brute-force linear solve --------------------------------

def _w_monomials_of_degree(d, max_gen=6):
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(mono(acc))
            return
        if i > remaining or i > max_gen:
            return
        rec(i + 1, remaining, acc)
        for e in range(1, remaining // i + 1):
            rec(i + 1, remaining - i * e, acc + [(wgen(i), e)])

    rec(1, d, [])
    return out


def _in_span_gf2(columns, target):
    # bitmask Gaussian elimination; columns/target are GF2Poly term sets
    basis_rows = sorted({m for c in columns for m in c} | set(target))
    idx = {m: i for i, m in enumerate(basis_rows)}
    vecs = []
    for c in columns:
        vecs.append(sum(1 << idx[m] for m in c))
    tv = sum(1 << idx[m] for m in target)
    for bit in range(len(basis_rows)):
        mask = 1 << bit
        piv = next((j for j, v in enumerate(vecs) if v & mask), None)
        if piv is None:
            continue
        pv = vecs.pop(piv)
        vecs = [v ^ pv if v & mask else v for v in vecs]
        if tv & mask:
            tv ^= pv
    return tv == 0


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_sq1_preimage_matches_solver(d):
    import random
    rng = random.Random(d * 101)
    domain = _w_monomials_of_degree(d)
    columns = [frozenset(sq1(GF2Poly.from_terms([m])).terms) for m in domain]
    codomain = _w_monomials_of_degree(d + 1)
    for _ in range(30):
        target = GF2Poly.from_terms(
            m for m in codomain if rng.random() < 0.3)
        solvable = _in_span_gf2(columns, frozenset(target.terms))
        pre = sq1_preimage(target)
        assert (pre is not None) == solvable, str(target)
        if pre is not None:
            assert sq1(pre) == target


def test_sq1_preimage_of_boundaries_and_edges():
    for seed in range(10):
        import random
        rng = random.Random(seed)
        p = GF2Poly.from_terms(
            m for m in _w_monomials_of_degree(5) if rng.random() < 0.4)
        a = sq1(p)
        pre = sq1_preimage(a)
        assert pre is not None and sq1(pre) == a
    assert sq1_preimage(GF2Poly.zero()) == GF2Poly.zero()
    # w_2 is not a boundary in degree 2
    assert sq1_preimage(wpoly(2)) is None
    # neither is w_3 alone; sq1(w_2) = w_1 w_2 + w_3 is by construction
    assert sq1_preimage(wpoly(3)) is None
    boundary = sq1(wpoly(2))
    assert sq1(sq1_preimage(boundary)) == boundary
    with pytest.raises(ValueError):
        sq1_preimage(wpoly(2, "E"))
    with pytest.raises(ValueError):
        sq1_preimage(wpoly(1) + wpoly(2))


# inverse total --------------------------------------------------------------

@pytest.mark.parametrize("top", [1, 2, 3, 5])
def test_inverse_total(top):
    total = GF2Poly.one(12)
    for i in range(1, top + 1):
        total = total + wpoly(i, "", 12)
    inv = inverse_total(total, 12)
    assert (total * inv) == GF2Poly.one(12)
    with pytest.raises(ValueError):
        inverse_total(wpoly(1), 4)


def test_inverse_total_first_terms():
    # wbar_1 = w_1, wbar_2 = w_1^2 + w_2 for a rank-2 total
    total = GF2Poly.one(6) + wpoly(1, "", 6) + wpoly(2, "", 6)
    inv = inverse_total(total, 6)
    assert inv.homogeneous_part(1) == wpoly(1, "", 6)
    assert inv.homogeneous_part(2) == wpoly(1, "", 6) ** 2 + wpoly(2, "", 6)
