"""Exact-rational lab for the cusp normal form, its perturbation section and
the transversality test.

The germ is f: R^n -> R^{n+k} in coordinates (x_1..x_{2k}, y, z, s_1..),
the (n-2k-2)-fold suspension of the codimension-k cusp prototype. The
perturbation direction sigma is the second derivative along the kernel
line projected onto the orthogonal complement of im df, and the perturbed
family is tilde_f(p, t) = f(p) + t*sigma(p).

sigma_closed carries the closed form of that projection; sigma_oracle
recomputes it from scratch by Gram-Schmidt. The closed form differs from a
naively simplified one in the X_{2i} and X_{2k+1} slots (denominators
1+z^2+z^4 vs 1+z^2, and a z^2 vs z^3 numerator); the oracle equality tests
pin the version that actually is orthogonal to im df.

Everything is Fraction arithmetic; rank decisions never see floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .jets import hessian_ad, jacobian_ad
from .linalg import bareiss_rank, cokernel_basis, kernel_basis, rref
from .reports import FAIL, INFO, PASS, Report

Vec = Tuple[Fraction, ...]


@dataclass(frozen=True)
class GermPoint:
    """A domain point (x, y, z, s) of the germ, optionally with the family
    parameter t."""

    x: Vec
    y: Fraction
    z: Fraction
    s: Vec = ()
    t: Optional[Fraction] = None

    @staticmethod
    def make(n: int, k: int, coords: Sequence, t=None) -> "GermPoint":
        _validate_dims(n, k)
        vals = [Fraction(c) for c in coords]
        if len(vals) != n:
            raise ValueError(f"expected {n} coordinates, got {len(vals)}")
        return GermPoint(tuple(vals[:2 * k]), vals[2 * k], vals[2 * k + 1],
                         tuple(vals[2 * k + 2:]),
                         None if t is None else Fraction(t))

    def coords(self) -> List[Fraction]:
        return list(self.x) + [self.y, self.z] + list(self.s)


def _validate_dims(n: int, k: int) -> None:
    if k < 1:
        raise ValueError("need k >= 1")
    if n < 2 * k + 2:
        raise ValueError("need n >= 2k+2")


def _check_point(n: int, k: int, p: GermPoint) -> None:
    _validate_dims(n, k)
    if len(p.x) != 2 * k or len(p.s) != n - 2 * k - 2:
        raise ValueError(f"point does not have the (n,k)=({n},{k}) shape")


# the germ and its perturbation --------------------------------------------

def _f_coords(n: int, k: int, coords: Sequence) -> list:
    """Normal form, generically over any field elements."""
    xs = coords[:2 * k]
    y = coords[2 * k]
    z = coords[2 * k + 1]
    ss = coords[2 * k + 2:]
    out = list(xs)
    out.append(y)
    for i in range(1, k + 1):
        out.append(z * xs[2 * i - 2] + z * z * xs[2 * i - 1])
    out.append(z * y + z * z * z)
    out.extend(ss)
    return out


def _tilde_f_coords(n: int, k: int, coords: Sequence) -> list:
    """Perturbed family, generically; coords = (x, y, z, s, t)."""
    xs = coords[:2 * k]
    y = coords[2 * k]
    z = coords[2 * k + 1]
    ss = coords[2 * k + 2:n]
    t = coords[n]
    q1 = 1 + z * z
    q2 = 1 + z * z + z * z * z * z
    out = []
    for i in range(1, k + 1):
        xo, xe = xs[2 * i - 2], xs[2 * i - 1]
        out.append(xo - 2 * t * z * xe / q2)
        out.append(xe - 2 * t * z * z * xe / q2)
    out.append(y - 6 * t * z * z / q1)
    for i in range(1, k + 1):
        xo, xe = xs[2 * i - 2], xs[2 * i - 1]
        out.append(z * xo + z * z * xe + 2 * t * xe / q2)
    out.append(z * y + z * z * z + 6 * t * z / q1)
    out.extend(ss)
    return out


def normal_form_f(n: int, k: int, p: GermPoint) -> Vec:
    """f(p): suspension of the cusp prototype, exactly."""
    _check_point(n, k, p)
    return tuple(Fraction(v) for v in _f_coords(n, k, p.coords()))


def sigma_closed(n: int, k: int, p: GermPoint) -> Vec:
    """Closed form of the perturbation section.

    Coordinates (q1 = 1+z^2, q2 = 1+z^2+z^4):
      X_{2i-1}: -2 z x_{2i} / q2      X_{2i}: -2 z^2 x_{2i} / q2
      X_{2k+1}: -6 z^2 / q1
      Y_i:       2 x_{2i} / q2        Z:      6 z / q1
    and 0 on the S block.
    """
    _check_point(n, k, p)
    z = p.z
    q1 = 1 + z * z
    q2 = 1 + z * z + z ** 4
    out = []
    for i in range(1, k + 1):
        xe = p.x[2 * i - 1]
        out.append(-2 * z * xe / q2)
        out.append(-2 * z * z * xe / q2)
    out.append(Fraction(-6) * z * z / q1)
    for i in range(1, k + 1):
        out.append(2 * p.x[2 * i - 1] / q2)
    out.append(Fraction(6) * z / q1)
    out.extend([Fraction(0)] * len(p.s))
    return tuple(Fraction(v) for v in out)


def on_sigma(n: int, k: int, p: GermPoint) -> bool:
    """Whether p satisfies the singular-locus equations of f exactly:
    x_{2i-1} = -2 z x_{2i} and y = -3 z^2."""
    _check_point(n, k, p)
    return (all(p.x[2 * i - 2] == -2 * p.z * p.x[2 * i - 1] for i in range(1, k + 1))
            and p.y == -3 * p.z * p.z)


def on_cusp_locus(n: int, k: int, p: GermPoint) -> bool:
    """The deeper stratum inside the singular locus: x = y = z = 0, s free.
    Along the singular locus this is exactly where sigma vanishes."""
    _check_point(n, k, p)
    return all(c == 0 for c in p.x) and p.y == 0 and p.z == 0


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sigma_oracle(n: int, k: int, p: GermPoint) -> Vec:
    """Recompute sigma from first principles at a singular point of f.

    Builds the listed basis of im df (u_i, u_{k+1}, v_i), orthogonalizes the
    v_i against the u_i, and projects d^2 f/dz^2 off the span. Independent
    of sigma_closed by construction.
    """
    _check_point(n, k, p)
    if not on_sigma(n, k, p):
        raise ValueError("sigma_oracle needs a point on the singular locus of f")
    dim = n + k
    z = p.z

    def vec(entries: dict) -> List[Fraction]:
        v = [Fraction(0)] * dim
        for idx, val in entries.items():
            v[idx] = Fraction(val)
        return v

    def X(j: int) -> int:
        return j - 1

    def Y(i: int) -> int:
        return 2 * k + 1 + i - 1

    Z = 2 * k + 1 + k

    us = [vec({X(2 * i - 1): 1, Y(i): z}) for i in range(1, k + 1)]
    us.append(vec({X(2 * k + 1): 1, Z: z}))
    vs = [vec({X(2 * i): 1, Y(i): z * z}) for i in range(1, k + 1)]
    d2 = vec({Y(i): 2 * p.x[2 * i - 1] for i in range(1, k + 1)})
    d2[Z] = 6 * z

    vts = []
    for u, v in zip(us, vs):
        c = _dot(u, v) / _dot(u, u)
        vts.append([b - c * a for a, b in zip(u, v)])
    sigma = d2
    for u in us + vts:
        c = _dot(u, sigma) / _dot(u, u)
        sigma = [b - c * a for a, b in zip(u, sigma)]
    return tuple(sigma)


def tilde_f(n: int, k: int, p: GermPoint) -> Vec:
    """f(p) + t * sigma(p), exactly."""
    _check_point(n, k, p)
    if p.t is None:
        raise ValueError("tilde_f needs a point with the t parameter")
    return tuple(Fraction(v) for v in
                 _tilde_f_coords(n, k, p.coords() + [p.t]))


# closed-form Jacobian ------------------------------------------------------

def jacobian_tilde_f(n: int, k: int, p: GermPoint,
                     t=None) -> List[List[Fraction]]:
    """d tilde_f as an (n+k) x (n+1) matrix of exact rationals, from the
    hand-differentiated entries; the dual-number oracle reproduces it."""
    _check_point(n, k, p)
    if t is None:
        t = p.t
    if t is None:
        raise ValueError("jacobian_tilde_f needs t (in the point or as an argument)")
    t = Fraction(t)
    z = p.z
    y = p.y
    q1 = 1 + z * z
    q2 = 1 + z * z + z ** 4
    ncols = n + 1
    col_y, col_z, col_t = 2 * k, 2 * k + 1, n

    def row(entries: dict) -> List[Fraction]:
        r = [Fraction(0)] * ncols
        for idx, val in entries.items():
            r[idx] = Fraction(val)
        return r

    rows = []
    for i in range(1, k + 1):
        co, ce = 2 * i - 2, 2 * i - 1
        xe = p.x[ce]
        rows.append(row({co: 1, ce: -2 * t * z / q2,
                         col_z: -2 * t * xe * (1 - z * z - 3 * z ** 4) / q2 ** 2,
                         col_t: -2 * z * xe / q2}))
        rows.append(row({ce: 1 - 2 * t * z * z / q2,
                         col_z: -4 * t * z * (1 - z ** 4) * xe / q2 ** 2,
                         col_t: -2 * z * z * xe / q2}))
    rows.append(row({col_y: 1, col_z: -12 * t * z / q1 ** 2,
                     col_t: -6 * z * z / q1}))
    for i in range(1, k + 1):
        co, ce = 2 * i - 2, 2 * i - 1
        xo, xe = p.x[co], p.x[ce]
        rows.append(row({co: z, ce: z * z + 2 * t / q2,
                         col_z: xo + 2 * z * xe - 2 * t * xe * (2 * z + 4 * z ** 3) / q2 ** 2,
                         col_t: 2 * xe / q2}))
    rows.append(row({col_y: z, col_z: y + 3 * z * z + 6 * t * (1 - z * z) / q1 ** 2,
                     col_t: 6 * z / q1}))
    for i in range(n - 2 * k - 2):
        rows.append(row({2 * k + 2 + i: 1}))
    return rows


def jacobian_f(n: int, k: int, p: GermPoint) -> List[List[Fraction]]:
    """df of the unperturbed germ: the family Jacobian at t=0 without the
    t-column (that column is sigma itself)."""
    return [r[:-1] for r in jacobian_tilde_f(n, k, p, t=0)]


# corank reports ------------------------------------------------------------

@dataclass
class JetReport:
    """Exact rank data of one differential, with optional transversality."""

    rank: int
    corank: int
    kernel_basis: List[Vec]
    cokernel_basis: List[Vec]
    transversality: Optional[dict] = None

    def to_json_dict(self) -> dict:
        def fmt(vecs):
            return [[str(c) for c in v] for v in vecs]
        out = {"rank": self.rank, "corank": self.corank,
               "kernel_basis": fmt(self.kernel_basis),
               "cokernel_basis": fmt(self.cokernel_basis)}
        if self.transversality is not None:
            out["transversality"] = self.transversality
        return out


def corank(matrix: Sequence[Sequence]) -> JetReport:
    """Exact rank/corank with kernel and cokernel bases."""
    rk = bareiss_rank(matrix)
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    return JetReport(rank=rk, corank=min(rows, cols) - rk,
                     kernel_basis=kernel_basis(matrix),
                     cokernel_basis=cokernel_basis(matrix))


# stratification ------------------------------------------------------------

def _grid_points(n: int, values: Sequence[Fraction]):
    # odometer over n coordinates; deterministic order
    idx = [0] * n
    vals = [Fraction(v) for v in values]
    while True:
        yield tuple(vals[i] for i in idx)
        j = n - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(vals):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return


def stratify_grid(n: int, k: int, grid: Sequence,
                  t_values: Optional[Sequence] = None) -> Report:
    """Scan a product grid: corank of df everywhere, cross-checked against
    the closed-form singular-locus equations; optionally the corank profile
    of d tilde_f over a t-grid (reported, not asserted)."""
    _validate_dims(n, k)
    report = Report("stratify", {"n": n, "k": k,
                                 "grid": [str(Fraction(g)) for g in grid],
                                 "t_values": None if t_values is None else
                                 [str(Fraction(t)) for t in t_values]})
    singular = []
    corank2 = []
    mismatch = []
    count = 0
    for coords in _grid_points(n, grid):
        count += 1
        p = GermPoint.make(n, k, coords)
        rep = corank(jacobian_f(n, k, p))
        if rep.corank >= 1:
            singular.append(coords)
        if rep.corank >= 2:
            corank2.append(coords)
        if (rep.corank >= 1) != on_sigma(n, k, p):
            mismatch.append(coords)
    fmt = lambda pts: [[str(c) for c in pt] for pt in pts]
    report.params["points_scanned"] = count
    report.artifacts["singular_points"] = fmt(singular)
    report.artifacts["corank2_points"] = fmt(corank2)
    if mismatch:
        report.add("singular set matches the closed-form equations", FAIL,
                   f"{len(mismatch)} grid points disagree",
                   witnesses=fmt(mismatch))
    else:
        report.add("singular set matches the closed-form equations", PASS,
                   f"{len(singular)} singular among {count} points")
    if t_values is not None:
        profile = {}
        family_c2 = []
        for tv in t_values:
            counts: dict = {}
            for coords in _grid_points(n, grid):
                p = GermPoint.make(n, k, coords)
                rep = corank(jacobian_tilde_f(n, k, p, t=tv))
                counts[rep.corank] = counts.get(rep.corank, 0) + 1
                if rep.corank >= 2:
                    family_c2.append([str(Fraction(tv))] + [str(c) for c in coords])
            profile[str(Fraction(tv))] = {str(c): v for c, v in sorted(counts.items())}
        report.artifacts["family_corank_profile"] = profile
        report.artifacts["family_corank2_points"] = family_c2
        report.add("family corank profile", INFO,
                   "recorded per t in artifacts, not asserted")
    return report


# transversality -------------------------------------------------------------

def transversality_check(n: int, k: int, p: GermPoint, t=None) -> JetReport:
    """At a corank-2 point of d tilde_f, test that the second derivative,
    projected to Hom(ker, coker), is onto.

    The projected derivative in direction v sends a kernel vector b and a
    cokernel covector a to a . (d_v J) b, assembled from the exact Hessian
    tensor; surjectivity is rank 2(k+1) of the resulting (n+1) x 2(k+1)
    matrix. The hand-listed spanning claim (the yY_i, yZ, tY_i, tZ matrix
    units) is evaluated against the same kernel/cokernel and reported
    alongside a z-variant (zY_i, zZ, tY_i, tZ); neither is asserted here.
    """
    _check_point(n, k, p)
    if t is None:
        t = p.t
    if t is None:
        raise ValueError("transversality_check needs t")
    t = Fraction(t)
    jac = jacobian_tilde_f(n, k, p, t=t)
    base = corank(jac)
    if base.corank != 2:
        raise ValueError(f"precondition: corank 2 expected, found {base.corank}")
    kerb = base.kernel_basis
    cokb = base.cokernel_basis
    point = p.coords() + [t]
    hess = hessian_ad(lambda c: _tilde_f_coords(n, k, c), point)
    m = n + 1

    def pair(a: Vec, v: int, b: Vec) -> Fraction:
        acc = Fraction(0)
        for row, arow in enumerate(a):
            if not arow:
                continue
            hrow = hess[row]
            acc += arow * sum((hrow[v][j] * b[j] for j in range(m)), Fraction(0))
        return acc

    pairing = [[pair(a, v, b) for a in cokb for b in kerb] for v in range(m)]
    required = 2 * (k + 1)
    got = bareiss_rank(pairing)

    def unit_spans(domain_cols: List[int]) -> bool:
        # matrix units E_{Q,q}, Q over the Y/Z rows, q over domain_cols,
        # projected into Hom(ker, coker): a . E b = a_Q * b_q
        vecs = []
        for q in domain_cols:
            for Q in range(2 * k + 1, 2 * k + 1 + k + 1):
                vecs.append([a[Q] * b[q] for a in cokb for b in kerb])
        return bareiss_rank(vecs) == required

    col_y, col_z, col_t = 2 * k, 2 * k + 1, n
    trans = {
        "required_rank": required,
        "rank": got,
        "surjective": got == required,
        "claimed_units_span": unit_spans([col_y, col_t]),
        "z_variant_units_span": unit_spans([col_z, col_t]),
    }
    return JetReport(rank=base.rank, corank=base.corank,
                     kernel_basis=kerb, cokernel_basis=cokb,
                     transversality=trans)
