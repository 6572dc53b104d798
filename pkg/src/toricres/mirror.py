"""Generating series of intersection numbers for two bundled family shapes.

Covered families: hypersurface/complete-intersection data on a weighted
projective space (one series variable), and on a product of projective
spaces (one variable per factor).  Both pipelines produce exact rational
coefficients; the weighted case also has a closed form, and the product
case carries factorial-form cross-checks for the two bundled fixtures.

Curve classes are enumerated over the nonnegative orthant (a single ray in
the weighted case), and coefficients whose extraction window is empty are
zero.  Series are expanded around the origin of the y-chart.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .laurent import LaurentPolynomial
from .linalg import quotient_by_vector
from .polytope import check_nef_partition
from .residue import (
    residue_functional,
    residue_of_polynomial,
    system_from_coefficients,
)
from .series import (
    RationalFunctionSpec,
    TruncatedSeries,
    _graded_exponents,
    expand_rational,
    inv_factorial,
    linear_form_power_coefficient,
)


class WpsFamily:
    """Weight vector plus a grouping of the coordinates.

    weights w_1..w_n define the ambient weighted projective space of
    dimension d = n - 1; parts is a partition of the coordinate indices
    0..n-1 into r groups, giving group degrees d_j = sum of the grouped
    weights.  Validity: gcd(w) = 1, every w_i divides the weight total,
    and every w_i divides every d_j.
    """

    __slots__ = ("weights", "parts", "degrees")

    def __init__(self, weights, parts):
        weights = tuple(int(w) for w in weights)
        if len(weights) < 2 or any(w < 1 for w in weights):
            raise ValueError("weights must be positive, two or more")
        if math.gcd(*weights) != 1:
            raise ValueError("weights must have gcd 1")
        parts = tuple(tuple(sorted(int(i) for i in part)) for part in parts)
        seen = [i for part in parts for i in part]
        if sorted(seen) != list(range(len(weights))) or not all(parts):
            raise ValueError(
                "parts must split the coordinate indices into nonempty groups")
        degrees = tuple(sum(weights[i] for i in part) for part in parts)
        total = sum(weights)
        for w in weights:
            if total % w:
                raise ValueError(f"weight {w} does not divide the total {total}")
            for dj in degrees:
                if dj % w:
                    raise ValueError(
                        f"weight {w} does not divide the group degree {dj}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "degrees", degrees)

    def __setattr__(self, *_):
        raise AttributeError("WpsFamily is immutable")

    @property
    def n(self):
        return len(self.weights)

    @property
    def dim(self):
        return len(self.weights) - 1

    @property
    def r(self):
        return len(self.parts)

    def __repr__(self):
        return (f"WpsFamily(weights={list(self.weights)}, "
                f"parts={[list(p) for p in self.parts]})")


class ProductFamily:
    """Product of projective spaces with a degree matrix.

    dims are the factor dimensions d_1..d_p; matrix[i][j] is the degree
    n_ij of the j-th equation on the i-th factor, with row sums d_i + 1.
    y_scales rescales the i-th series variable so bundled closed forms
    match verbatim; it defaults to all ones.
    """

    __slots__ = ("dims", "matrix", "y_scales")

    def __init__(self, dims, matrix, y_scales=None):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("factor dimensions must be positive")
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(matrix) != len(dims):
            raise ValueError("degree matrix needs one row per factor")
        r = len(matrix[0])
        if any(len(row) != r for row in matrix) or r < 1:
            raise ValueError("degree matrix rows must share a positive length")
        if any(x < 0 for row in matrix for x in row):
            raise ValueError("degrees must be nonnegative")
        for d, row in zip(dims, matrix):
            if sum(row) != d + 1:
                raise ValueError(
                    f"row {list(row)} must sum to {d + 1} for a factor of "
                    f"dimension {d}")
        if y_scales is None:
            y_scales = (1,) * len(dims)
        y_scales = tuple(int(s) for s in y_scales)
        if len(y_scales) != len(dims) or any(s < 1 for s in y_scales):
            raise ValueError("y_scales needs one positive entry per factor")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "y_scales", y_scales)

    def __setattr__(self, *_):
        raise AttributeError("ProductFamily is immutable")

    @property
    def p(self):
        return len(self.dims)

    @property
    def r(self):
        return len(self.matrix[0])

    @property
    def ambient_dim(self):
        return sum(self.dims)

    def __repr__(self):
        return (f"ProductFamily(dims={list(self.dims)}, "
                f"matrix={[list(r) for r in self.matrix]}, "
                f"y_scales={list(self.y_scales)})")


P3XP3 = ProductFamily((3, 3), ((3, 0, 1), (0, 3, 1)), (27, 27))
P4XP1 = ProductFamily((4, 1), ((4, 1), (0, 2)), (1, 1))


def _fixture_key(fam):
    data = (fam.dims, fam.matrix, fam.y_scales)
    if data == (P3XP3.dims, P3XP3.matrix, P3XP3.y_scales):
        return "P3xP3"
    if data == (P4XP1.dims, P4XP1.matrix, P4XP1.y_scales):
        return "P4xP1"
    return None


def _check_polynomial(P, nvars, what="P"):
    if not isinstance(P, LaurentPolynomial):
        raise TypeError(f"{what} must be a LaurentPolynomial")
    if P.dim != nvars:
        raise ValueError(f"{what} must use {nvars} variables, got {P.dim}")
    if not P.terms:
        raise ValueError(f"{what} must be nonzero")
    for e in P.terms:
        if any(x < 0 for x in e):
            raise ValueError(f"{what} has a negative exponent in {e}")


def _total_degree(P, what="P"):
    degs = {sum(e) for e in P.terms}
    if len(degs) != 1:
        raise ValueError(f"{what} is not homogeneous")
    return degs.pop()


def _group_degrees(P, parts, what="P"):
    out = None
    for e in P.terms:
        degs = tuple(sum(e[i] for i in part) for part in parts)
        if out is None:
            out = degs
        elif degs != out:
            raise ValueError(f"{what} is not homogeneous per group")
    return out


def wps_vertex_vectors(fam):
    """One primitive lattice vector per coordinate, summing to 0 weightedly.

    Columns of a surjection that kills exactly the weight direction; the
    i-th vector is the image of the i-th coordinate ray.
    """
    rows = quotient_by_vector(fam.weights)
    vecs = tuple(tuple(row[i] for row in rows) for i in range(fam.n))
    assert all(
        sum(w * v[j] for w, v in zip(fam.weights, vecs)) == 0
        for j in range(fam.dim))
    return vecs


def wps_nef_partition(fam):
    """The family's Minkowski decomposition plus a coordinate position map.

    Returns (nef, positions) where positions[i] locates the i-th
    coordinate's vector inside nef.points.
    """
    vecs = wps_vertex_vectors(fam)
    if len(set(vecs)) != len(vecs):
        raise ValueError("coordinate vectors are not distinct")
    nef = check_nef_partition([[vecs[i] for i in part] for part in fam.parts])
    positions = [None] * fam.n
    offset = 0
    for j, part in enumerate(fam.parts):
        sorted_part = nef.parts[j]
        for i in part:
            positions[i] = offset + sorted_part.index(vecs[i])
        offset += len(sorted_part)
    assert sorted(positions) == list(range(fam.n))
    return nef, tuple(positions)


def wps_intersection_series(fam, P, order):
    """Termwise generating series: each coefficient from its own product.

    Coefficient at y^b is P(w) * (prod d_j^d_j)^b / prod w_i^(w_i*b + 1),
    computed independently of the closed form.
    """
    _check_polynomial(P, fam.n)
    if _total_degree(P) != fam.dim:
        raise ValueError(
            f"P must be homogeneous of degree {fam.dim}")
    order = int(order)
    pw = P.evaluate(fam.weights)
    step = 1
    for dj in fam.degrees:
        step *= dj ** dj
    coeffs = {}
    for b in range(order + 1):
        den = 1
        for w in fam.weights:
            den *= w ** (w * b + 1)
        coeffs[(b,)] = pw * Fraction(step ** b, den)
    return TruncatedSeries(1, order, coeffs)


def wps_closed_form(fam, P):
    """Rational form nu * P(w) / (1 - mu*y) of the same series."""
    _check_polynomial(P, fam.n)
    if _total_degree(P) != fam.dim:
        raise ValueError(
            f"P must be homogeneous of degree {fam.dim}")
    pw = P.evaluate(fam.weights)
    wprod = 1
    wpow = 1
    for w in fam.weights:
        wprod *= w
        wpow *= w ** w
    step = 1
    for dj in fam.degrees:
        step *= dj ** dj
    nu = Fraction(1, wprod)
    mu = Fraction(step, wpow)
    return RationalFunctionSpec(
        1, {(0,): nu * pw}, [({(0,): Fraction(1), (1,): -mu}, 1)])


def _factorial_coefficient(key, k, b):
    # Independent closed-form coefficients for the bundled product
    # families, used to cross-check the extraction path.
    if key == "P3xP3":
        b1, b2 = b
        k1, k2 = k
        return (9 * math.factorial(b1 + b2 + 1)
                * inv_factorial(b1 - k1 + 2) * inv_factorial(b2 - k2 + 2))
    if key == "P4xP1":
        b1, b2 = b
        k1, k2 = k
        return (Fraction(2) ** (8 * b1 + 2 * b2 - k2 + 3)
                * math.factorial(b1 + 2 * b2 + 1)
                * inv_factorial(b1 - k1 + 3) * inv_factorial(2 * b2 - k2 + 1))
    raise ValueError(f"no factorial form for {key}")


def product_intersection_series(fam, k, order):
    """Series over the factor curve degrees, one y-variable per factor.

    The coefficient at beta is the z^(n_i b_i + d_i - k_i) coefficient of
    prod_j (sum_i n_ij z_i)^(sum_i n_ij b_i + 1), divided by the variable
    scales; out-of-range extraction windows give 0.
    """
    k = tuple(int(x) for x in k)
    if len(k) != fam.p:
        raise ValueError(f"k must have {fam.p} entries")
    if any(x < 0 for x in k):
        raise ValueError("k entries must be nonnegative")
    want = fam.ambient_dim - fam.r
    if sum(k) != want:
        raise ValueError(f"sum of k must be {want}")
    order = int(order)
    key = _fixture_key(fam)
    ns = tuple(d + 1 for d in fam.dims)
    columns = [tuple(fam.matrix[i][j] for i in range(fam.p))
               for j in range(fam.r)]
    coeffs = {}
    for beta in _graded_exponents(fam.p, order):
        target = tuple(n * b + d - kk
                       for n, b, d, kk in zip(ns, beta, fam.dims, k))
        forms = [(col, sum(c * b for c, b in zip(col, beta)) + 1)
                 for col in columns]
        raw = linear_form_power_coefficient(forms, target)
        scale = 1
        for s, b in zip(fam.y_scales, beta):
            scale *= s ** b
        c = raw / scale
        if key is not None:
            assert c == _factorial_coefficient(key, k, beta)
        if c != 0:
            coeffs[beta] = c
    return TruncatedSeries(fam.p, order, coeffs)


def q_to_p(Q, parts, degree=None):
    """Multiply a per-group homogeneous Q by every group's coordinate sum.

    Each group degree rises by one, so the total climbs by the number of
    groups.  When the target total degree of the result is known, pass it
    as degree and Q is checked against degree - r up front.
    """
    parts = tuple(tuple(sorted(int(i) for i in part)) for part in parts)
    n = max((i for part in parts for i in part), default=-1) + 1
    seen = sorted(i for part in parts for i in part)
    if seen != list(range(n)) or not all(parts):
        raise ValueError(
            "parts must split the coordinate indices into nonempty groups")
    _check_polynomial(Q, n, "Q")
    _group_degrees(Q, parts, "Q")
    if degree is not None:
        want = int(degree) - len(parts)
        if _total_degree(Q, "Q") != want:
            raise ValueError(f"Q must be homogeneous of degree {want}")
    P = Q
    for part in parts:
        unit = lambda i: tuple(1 if j == i else 0 for j in range(n))
        P = P * LaurentPolynomial(n, {unit(i): Fraction(1) for i in part})
    return P


def yukawa_fixture(name, indices):
    """Bundled closed-form coupling for a named family and index choice."""
    indices = tuple(int(x) for x in indices)
    if name == "P3xP3":
        big = {(0, 0): 1, (1, 0): -1, (0, 1): -1}
        l1 = {(0, 0): 1, (1, 0): -1}
        l2 = {(0, 0): 1, (0, 1): -1}
        table = {
            (3, 0): ({(1, 0): 9}, [(big, 1), (l1, 2)]),
            (2, 1): ({(0, 0): 9}, [(big, 1), (l1, 1)]),
            (1, 2): ({(0, 0): 9}, [(big, 1), (l2, 1)]),
            (0, 3): ({(0, 1): 9}, [(big, 1), (l2, 2)]),
        }
        if indices not in table:
            raise ValueError(f"unknown indices {indices} for {name}")
        num, den = table[indices]
        return RationalFunctionSpec(2, num, den)
    if name == "P4xP1":
        d0 = {(0, 0): 1, (1, 0): -512, (2, 0): 65536, (0, 1): -4}
        d1 = {(0, 0): 1, (0, 1): -4}
        table = {
            (3, 0): ({(0, 0): 8}, [(d0, 1)]),
            (2, 1): ({(0, 0): 4, (1, 0): -1024, (0, 1): 16},
                     [(d0, 1), (d1, 1)]),
            (1, 2): ({(0, 1): 24, (1, 1): -4096, (0, 2): 32},
                     [(d0, 1), (d1, 2)]),
            (0, 3): ({(0, 1): 4, (1, 1): -1024, (0, 2): 96,
                      (1, 2): -12288, (0, 3): 64},
                     [(d0, 1), (d1, 3)]),
        }
        if indices not in table:
            raise ValueError(f"unknown indices {indices} for {name}")
        num, den = table[indices]
        return RationalFunctionSpec(2, num, den)
    if name == "wps_diag":
        if indices != (3, 3):
            raise ValueError(f"unknown indices {indices} for {name}")
        # 18*(3 - 2y) / ((1 - 2y)(1 - y)^2)
        return RationalFunctionSpec(
            1, {(0,): 54, (1,): -36},
            [({(0,): 1, (1,): -2}, 1), ({(0,): 1, (1,): -1}, 2)])
    raise ValueError(f"unknown fixture {name!r}")


def _default_points(n):
    return [tuple(Fraction(1, i + 2) for i in range(n)),
            tuple(Fraction(1, i + 3) for i in range(n))]


def draw_wps_points(fam, rng, count=2):
    """Seeded regular coefficient points for a weighted family.

    Draws small positive fractions per coordinate, keeping only tuples
    whose linear system is regular, until count points are collected.
    """
    from .residue import draw_regular_coefficients

    nef, positions = wps_nef_partition(fam)
    points = []
    for _ in range(int(count)):
        coeffs, _, _ = draw_regular_coefficients(nef, rng)
        points.append(tuple(coeffs[positions[i]] for i in range(fam.n)))
    return points


def _wps_residue_value(fam, nef, positions, P, point, kbar):
    coeffs = [None] * len(nef.points)
    for i, a in enumerate(point):
        coeffs[positions[i]] = a
    fs = system_from_coefficients(nef, coeffs)
    rf = residue_functional(fs, nef)
    if not rf.regular:
        raise ValueError(
            f"coefficient point {tuple(point)} gives a non-regular system; "
            "supply different points")
    remapped = {}
    for e, c in P.terms.items():
        new = [0] * len(nef.points)
        for i, x in enumerate(e):
            new[positions[i]] = x
        remapped[tuple(new)] = c
    P_in = LaurentPolynomial(len(nef.points), remapped)
    return residue_of_polynomial(rf, nef, P_in, coeffs, kbar)


def verify_family(fam, order, P=None, k=None, points=None):
    """Compare the series pipelines for one family, coefficient by coefficient.

    Weighted families: the termwise series against the closed-form
    expansion, plus the closed form against the residue pairing at two or
    more rational coefficient points.  Product families: the extraction
    series against the bundled closed-form fixture.  Returns a report dict
    whose "ok" is True only when every comparison is an exact match.
    """
    order = int(order)
    if isinstance(fam, WpsFamily):
        if P is None:
            raise ValueError("a weighted family needs the polynomial P")
        termwise = wps_intersection_series(fam, P, order)
        cf = wps_closed_form(fam, P)
        expanded = expand_rational(cf, order)
        rows = []
        for b in range(order + 1):
            lhs = termwise.coefficient((b,))
            rhs = expanded.coefficient((b,))
            rows.append({"exponent": (b,), "termwise": lhs,
                         "closed_form": rhs, "equal": lhs == rhs})
        kbar = _group_degrees(P, fam.parts)
        nef, positions = wps_nef_partition(fam)
        if points is None:
            points = _default_points(fam.n)
        points = [tuple(Fraction(a) for a in pt) for pt in points]
        if len(points) < 2:
            raise ValueError("at least two coefficient points are required")
        point_rows = []
        for pt in points:
            if len(pt) != fam.n or any(a == 0 for a in pt):
                raise ValueError(f"bad coefficient point {pt}")
            y = Fraction(1)
            for a, w in zip(pt, fam.weights):
                y *= a ** w
            closed = cf.evaluate([y])
            res = _wps_residue_value(fam, nef, positions, P, pt, kbar)
            point_rows.append({"a": pt, "y": y, "closed_form": closed,
                               "residue": res, "equal": closed == res})
        ok = all(r["equal"] for r in rows) and all(
            r["equal"] for r in point_rows)
        report = {"mode": "wps", "order": order, "rows": rows,
                  "points": point_rows, "ok": ok}
    elif isinstance(fam, ProductFamily):
        if k is None:
            raise ValueError("a product family needs the index tuple k")
        key = _fixture_key(fam)
        if key is None:
            raise ValueError(
                "no bundled closed form matches this product family")
        k = tuple(int(x) for x in k)
        series = product_intersection_series(fam, k, order)
        expanded = expand_rational(yukawa_fixture(key, k), order)
        rows = []
        for e in _graded_exponents(fam.p, order):
            lhs = series.coefficient(e)
            rhs = expanded.coefficient(e)
            rows.append({"exponent": e, "termwise": lhs,
                         "closed_form": rhs, "equal": lhs == rhs})
        ok = all(r["equal"] for r in rows)
        report = {"mode": "product", "order": order, "rows": rows,
                  "points": [], "ok": ok}
    else:
        raise TypeError("expected a WpsFamily or ProductFamily")
    report["mismatches"] = [r for r in report["rows"] if not r["equal"]]
    return report
