"""Gysin (pushforward) calculus on the projectivized tangent bundle and on
singular loci.

Classes on P(TM) are polynomials in the tautological line class a with
coefficients in the independent generator families w_i(TM) (rank n) and
w_i(F) (rank n+k; F plays the pulled-back target tangent bundle).  The
fiber integration q_! sends a^m to the degree-(m-n+1) part of the inverse
total class of TM.

i_push implements the projection-formula pushforward along the inclusion
of a singular locus whose normal data contributes w_{k+m+1} for the m-th
power of the kernel line class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gf2 import (GF2Poly, inverse_total, linegen, mono, mono_degree,
                  mono_mul, poly_to_json, wgen, wpoly)
from .reports import INFO, Report

TAUT_TAG = "a"
TM = "TM"
F = "F"


@dataclass(frozen=True)
class PTMClass:
    """A class on the projectivized tangent bundle of an n-manifold."""

    poly: GF2Poly
    n: int


def tm_total(n: int, max_degree: Optional[int] = None) -> GF2Poly:
    total = GF2Poly.one(max_degree)
    top = n if max_degree is None else min(n, max_degree)
    for i in range(1, top + 1):
        total = total + GF2Poly.gen(wgen(i, TM), max_degree)
    return total


def f_total(n: int, k: int, max_degree: Optional[int] = None) -> GF2Poly:
    total = GF2Poly.one(max_degree)
    top = n + k if max_degree is None else min(n + k, max_degree)
    for i in range(1, top + 1):
        total = total + GF2Poly.gen(wgen(i, F), max_degree)
    return total


def taut_class(max_degree: Optional[int] = None) -> GF2Poly:
    return GF2Poly.gen(linegen(TAUT_TAG), max_degree)


def zero_locus_class(n: int, k: int, max_degree: Optional[int] = None) -> GF2Poly:
    """Top Stiefel-Whitney class of (tautological line) (x) F on P(TM)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    out = GF2Poly.zero(max_degree)
    for i in range(0, n + k + 1):
        out = out + taut_class(max_degree) ** i * wpoly(n + k - i, F, max_degree)
    return out


def q_push(x: GF2Poly, n: int, max_degree: int) -> GF2Poly:
    """Fiber integration along q: P(TM) -> M.

    Linear over TM/F classes; a^m integrates to the degree-(m-n+1)
    component of the inverse total class of TM (0 for negative index,
    1 for index 0).
    """
    wbar = inverse_total(tm_total(n, max_degree), max_degree)
    a = linegen(TAUT_TAG)
    out = GF2Poly.zero(max_degree)
    for m in x.terms:
        a_exp = 0
        rest = []
        for g, e in m:
            if g == a:
                a_exp = e
            else:
                rest.append((g, e))
        idx = a_exp - n + 1
        if idx < 0:
            continue
        part = GF2Poly.one(max_degree) if idx == 0 else wbar.homogeneous_part(idx)
        out = out + part * GF2Poly.from_terms([mono(rest)], max_degree)
    return out


def i_push(x: GF2Poly, k: int, max_degree: Optional[int] = None, tag: str = "t") -> GF2Poly:
    """Pushforward along a singular-locus inclusion, by the projection
    formula: t^m * X maps to w_{k+m+1} * X for X free of the line class."""
    t = linegen(tag)
    other_tags = x.line_tags() - {tag}
    if other_tags:
        raise ValueError(f"i_push: unexpected line classes {sorted(other_tags)}")
    out = set()
    for m in x.terms:
        t_exp = 0
        rest = []
        for g, e in m:
            if g == t:
                t_exp = e
            else:
                rest.append((g, e))
        pushed = mono_mul(mono(rest), mono([(wgen(k + t_exp + 1), 1)]))
        if max_degree is not None and mono_degree(pushed) > max_degree:
            continue
        out ^= {pushed}
    return GF2Poly.from_terms(out, max_degree)


def verify_pushforward(n: int, k: int, r: int, max_degree: Optional[int] = None) -> Report:
    """Check that integrating a^r times the zero-locus class over the fibers
    of P(TM) equals the degree-(k+r+1) part of total(F) / total(TM)."""
    if n < 1 or k < 0 or r < 0:
        raise ValueError("need n >= 1, k >= 0, r >= 0")
    needed = k + r + 1
    d = max(max_degree if max_degree is not None else 0, needed)
    report = Report("verify lemma-pushforward", {"n": n, "k": k, "r": r, "max_degree": d})
    lhs = q_push(taut_class(None) ** r * zero_locus_class(n, k, None), n, d)
    lhs = lhs.homogeneous_part(needed)
    rhs = (f_total(n, k, d) * inverse_total(tm_total(n, d), d)).homogeneous_part(needed)
    report.check_equal("fiber integration equals normal-class expansion", lhs, rhs,
                       detail=f"degree {needed}")
    report.artifacts["pushforward_side"] = poly_to_json(lhs)
    report.artifacts["normal_class_side"] = poly_to_json(rhs)
    report.add("degree", INFO, f"compared homogeneous degree {needed}")
    return report
