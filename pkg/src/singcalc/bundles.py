"""Rank-tracked virtual bundle expressions and their total
Stiefel-Whitney classes, plus relation regimes.

Expression leaves: named bundles (independent generator family per name;
the distinguished name "nu_f" uses the anonymous w_i), trivial bundles,
and line bundles.  Nodes: sum, difference (quotient of totals), and
tensoring by a line bundle.  Tensoring distributes through sums and
differences; on a leaf of genuine rank m it uses

    w_j(l (x) xi) = sum_{i<=min(j,m)} C(m-i, j-i) t^{j-i} w_i(xi)  mod 2.

Input components above the declared rank are ignored by that rule (a
genuine rank-m bundle has none).

A regime is a terminating rewriting system on the anonymous w-generators
encoding relations that hold on a singularity locus:
  * prim(k):  w_m -> 0 for m > k+1;
  * twisted / kernel-twist(k, tag):  w_m -> t * w_{m-1} for m >= k+2
    (so w_m normalizes to t^{m-k-1} w_{k+1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Union

from .gf2 import GF2Poly, gen_sort_key, inverse_total, linegen, mono, wgen

STABLE_BUNDLE_NAME = "nu_f"  # its classes are the anonymous w_i

# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Named:
    name: str
    rank: int


@dataclass(frozen=True)
class Trivial:
    rank: int


@dataclass(frozen=True)
class LineBundle:
    tag: str


@dataclass(frozen=True)
class Sum:
    left: "BundleExpr"
    right: "BundleExpr"


@dataclass(frozen=True)
class Diff:
    left: "BundleExpr"
    right: "BundleExpr"


@dataclass(frozen=True)
class TensorLine:
    tag: str
    inner: "BundleExpr"


BundleExpr = Union[Named, Trivial, LineBundle, Sum, Diff, TensorLine]


def tensor_line(tag: str, rank: int, total: GF2Poly, max_degree: Optional[int]) -> GF2Poly:
    """Total class of (line with class t) tensor (genuine rank-`rank` bundle)."""
    if rank < 0:
        raise ValueError("tensor_line needs rank >= 0")
    if total.homogeneous_part(0) != GF2Poly.one():
        raise ValueError("total class must have constant term 1")
    top = rank if max_degree is None else max(rank, max_degree)
    t = GF2Poly.gen(linegen(tag))
    out = GF2Poly.zero(max_degree)
    tpow = [GF2Poly.one(max_degree)]
    for _ in range(top):
        tpow.append(tpow[-1] * t)
    for j in range(0, top + 1):
        if max_degree is not None and j > max_degree:
            break
        for i in range(0, min(j, rank) + 1):
            if comb(rank - i, j - i) % 2 == 0:
                continue
            part = total.homogeneous_part(i)
            if part.is_zero():
                continue
            out = out + tpow[j - i] * part
    return out


def total_sw(expr: BundleExpr, max_degree: Optional[int] = None) -> tuple:
    """(rank, total Stiefel-Whitney class) of a bundle expression."""
    if isinstance(expr, Named):
        if expr.rank < 0:
            raise ValueError("named bundle needs rank >= 0")
        bundle = "" if expr.name == STABLE_BUNDLE_NAME else expr.name
        top = expr.rank if max_degree is None else min(expr.rank, max_degree)
        total = GF2Poly.one(max_degree)
        for i in range(1, top + 1):
            total = total + GF2Poly.gen(wgen(i, bundle), max_degree)
        return expr.rank, total
    if isinstance(expr, Trivial):
        if expr.rank < 0:
            raise ValueError("trivial bundle needs rank >= 0")
        return expr.rank, GF2Poly.one(max_degree)
    if isinstance(expr, LineBundle):
        return 1, GF2Poly.one(max_degree) + GF2Poly.gen(linegen(expr.tag), max_degree)
    if isinstance(expr, Sum):
        r1, t1 = total_sw(expr.left, max_degree)
        r2, t2 = total_sw(expr.right, max_degree)
        return r1 + r2, t1 * t2
    if isinstance(expr, Diff):
        r1, t1 = total_sw(expr.left, max_degree)
        r2, t2 = total_sw(expr.right, max_degree)
        if r1 - r2 < 0:
            raise ValueError("difference would have negative rank")
        if max_degree is None:
            raise ValueError("difference needs a truncation degree")
        return r1 - r2, (t1 * inverse_total(t2, max_degree)).truncate(max_degree)
    if isinstance(expr, TensorLine):
        inner = expr.inner
        if isinstance(inner, Sum):
            return total_sw(Sum(TensorLine(expr.tag, inner.left),
                                TensorLine(expr.tag, inner.right)), max_degree)
        if isinstance(inner, Diff):
            return total_sw(Diff(TensorLine(expr.tag, inner.left),
                                 TensorLine(expr.tag, inner.right)), max_degree)
        rank, total = total_sw(inner, max_degree)
        return rank, tensor_line(expr.tag, rank, total, max_degree)
    raise TypeError(f"not a bundle expression: {expr!r}")


# ---------------------------------------------------------------------------
# regimes


@dataclass(frozen=True)
class Prim:
    """Locus with w_m(nu) = 0 for m > k+1."""

    k: int


@dataclass(frozen=True)
class TwistedPrim:
    """Locus with w_m(nu) = t * w_{m-1}(nu) for m >= k+2."""

    k: int
    tag: str = "t"


@dataclass(frozen=True)
class MorinNu1:
    """Same rewriting as TwistedPrim; arises from a genuine rank-(k+1)
    representative of nu (+) l on the singular locus of a Morin map."""

    k: int
    tag: str = "t"


Regime = Union[Prim, TwistedPrim, MorinNu1]


def apply_regime(p: GF2Poly, regime: Regime) -> GF2Poly:
    """Normal form of p under the regime's rewriting (anonymous w's only)."""
    k = regime.k
    if isinstance(regime, Prim):
        kept = [m for m in p.terms
                if all(not (g[0] == "w" and g[1] == "" and g[2] > k + 1) for g, _ in m)]
        return GF2Poly.from_terms(kept, p.max_degree)
    tag = linegen(regime.tag)
    out = set()
    for m in p.terms:
        pairs = []
        t_extra = 0
        k1_extra = 0
        for g, e in m:
            if g[0] == "w" and g[1] == "" and g[2] >= k + 2:
                t_extra += (g[2] - (k + 1)) * e
                k1_extra += e
            else:
                pairs.append((g, e))
        if t_extra:
            pairs.append((tag, t_extra))
        if k1_extra:
            pairs.append((wgen(k + 1), k1_extra))
        out ^= {mono(pairs)}
    return GF2Poly.from_terms(out, p.max_degree)


# ---------------------------------------------------------------------------
# textual expression grammar for the CLI:
#   expr := term (('+'|'-') term)* ;
#   term := 'eps' '(' INT ')' | 'line' '(' TAG ')'
#         | 'tensor' '(' TAG ',' expr ')' | NAME | '(' expr ')'
# Named ranks come from the context dict, e.g. {"nu_f": k+1, "TM": n, "F": n+k}.


def parse_bundle_expr(text: str, ranks: dict) -> BundleExpr:
    tokens = _tokenize(text)
    expr, pos = _parse_sum(tokens, 0, ranks)
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {pos}: {tokens[pos:]}")
    return expr


def _tokenize(text: str) -> list:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()+-,":
            out.append(ch)
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise ValueError(f"bad character {ch!r} in bundle expression")
    return out


def _parse_sum(tokens: list, pos: int, ranks: dict):
    left, pos = _parse_term(tokens, pos, ranks)
    while pos < len(tokens) and tokens[pos] in "+-":
        op = tokens[pos]
        right, pos = _parse_term(tokens, pos + 1, ranks)
        left = Sum(left, right) if op == "+" else Diff(left, right)
    return left, pos


def _expect(tokens: list, pos: int, what: str) -> int:
    if pos >= len(tokens) or tokens[pos] != what:
        raise ValueError(f"expected {what!r} at token {pos}")
    return pos + 1


def _parse_term(tokens: list, pos: int, ranks: dict):
    if pos >= len(tokens):
        raise ValueError("unexpected end of bundle expression")
    tok = tokens[pos]
    if tok == "(":
        expr, pos = _parse_sum(tokens, pos + 1, ranks)
        return expr, _expect(tokens, pos, ")")
    if tok == "eps":
        pos = _expect(tokens, pos + 1, "(")
        rank = int(tokens[pos])
        return Trivial(rank), _expect(tokens, pos + 1, ")")
    if tok == "line":
        pos = _expect(tokens, pos + 1, "(")
        tag = tokens[pos]
        return LineBundle(tag), _expect(tokens, pos + 1, ")")
    if tok == "tensor":
        pos = _expect(tokens, pos + 1, "(")
        tag = tokens[pos]
        pos = _expect(tokens, pos + 1, ",")
        inner, pos = _parse_sum(tokens, pos, ranks)
        return TensorLine(tag, inner), _expect(tokens, pos, ")")
    if tok in ranks:
        return Named(tok, ranks[tok]), pos + 1
    raise ValueError(f"unknown bundle name {tok!r} (known: {sorted(ranks)})")
