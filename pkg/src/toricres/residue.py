"""Toric residue functionals on graded pieces of a Cayley semigroup ring.

The residue functional of a regular system is pinned down by finitely many
linear conditions: it kills every product of a system log-derivative with a
monomial one level down, and it sends the system Hessian to the normalized
volume of the Cayley polytope.  Everything here is exact linear algebra
over Q; non-regularity is reported as a value, never as a crash.

Graded pieces are indexed by the trailing block of exponents: the piece at
multidegree k has monomial basis the lattice points of k_1*D_1 + ... +
k_r*D_r, embedded at height k.  Interior pieces (all k_i >= 1) are obtained
by the reflexive shift k -> k - (1,...,1) and cross-checked against strict
cone-interior inequalities.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .laurent import (
    LaurentPolynomial,
    cayley_polynomial,
    hessian_by_subsets,
    log_derivative,
    mixed_hessian,
    monomial,
    positive_compositions,
)
from .linalg import NOT_UNIQUE, dot, solve_functional
from .polytope import cayley_polytope, lattice_points, minkowski_sum_all

DEFAULT_MAX_BASIS = 20000


def _max_basis():
    return int(os.environ.get("TORIC_MAX_BASIS", DEFAULT_MAX_BASIS))


class GradedPieceBasis:
    """Ordered monomial basis of one graded piece.

    multidegree: the common trailing exponent block, or None for a union
    across blocks.  monomials: full embedded exponent vectors in
    lexicographic order.  index: vector -> position.
    """

    __slots__ = ("multidegree", "monomials", "index")

    def __init__(self, multidegree, monomials):
        self.multidegree = (None if multidegree is None
                            else tuple(int(x) for x in multidegree))
        self.monomials = tuple(sorted(tuple(int(x) for x in m)
                                      for m in monomials))
        assert len(set(self.monomials)) == len(self.monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __repr__(self):
        return (f"GradedPieceBasis(multidegree={self.multidegree}, "
                f"size={len(self.monomials)})")


def _check_multidegree(nef, k):
    k = tuple(int(x) for x in k)
    if len(k) != nef.r:
        raise ValueError("multidegree length must equal the number of parts")
    if any(x < 0 for x in k):
        raise ValueError("multidegree must be nonnegative")
    return k


def _guard_size(n):
    limit = _max_basis()
    if n > limit:
        raise ValueError(
            f"graded piece needs {n} monomials, above the limit {limit}; "
            "set TORIC_MAX_BASIS to override")


def graded_basis(nef, k):
    """Monomial basis of the full graded piece at multidegree k."""
    k = _check_multidegree(nef, k)
    summands = [poly.dilate(m) for poly, m in zip(nef.polytopes, k)]
    pts = lattice_points(minkowski_sum_all(summands))
    _guard_size(len(pts))
    return GradedPieceBasis(k, [p + k for p in pts])


def interior_basis(nef, k, _cayley=None):
    """Basis of the interior piece at multidegree k (every k_i >= 1).

    Built by the reflexive shift k -> k - (1,...,1) and cross-checked, point
    by point, against the strict facet inequalities of the cone over the
    Cayley polytope; for desk-scale pieces the strict-inequality route is
    also run in full and must agree.
    """
    k = _check_multidegree(nef, k)
    if any(x < 1 for x in k):
        raise ValueError("interior piece needs every k_i >= 1")
    shifted = [poly.dilate(m - 1) for poly, m in zip(nef.polytopes, k)]
    pts = lattice_points(minkowski_sum_all(shifted))
    _guard_size(len(pts))
    mons = [p + k for p in pts]
    cay = _cayley if _cayley is not None else cayley_polytope(nef.polytopes)
    level = sum(k)
    # strict cone interiority of every shifted monomial
    for m in mons:
        assert all(dot(n, m) + c * level > 0 for n, c in cay.facets)
    # and the converse on the full piece: no strict point is missed
    full = graded_basis(nef, k)
    strict = [m for m in full.monomials
              if all(dot(n, m) + c * level > 0 for n, c in cay.facets)]
    assert sorted(mons) == strict
    return GradedPieceBasis(k, mons)


def interior_level_basis(nef, level, _cayley=None):
    """Union of the interior pieces over all positive k with |k| = level."""
    cay = _cayley if _cayley is not None else cayley_polytope(nef.polytopes)
    mons = []
    for k in positive_compositions(level, nef.r):
        mons.extend(interior_basis(nef, k, _cayley=cay).monomials)
    _guard_size(len(mons))
    return GradedPieceBasis(None, mons)


class ResidueFunctional:
    """The residue functional on the top interior level, when it exists.

    basis: interior basis at total degree d+r; values: one rational per
    basis monomial (None when not regular); vol: normalized volume of the
    Cayley polytope; regular: whether the defining linear conditions pin
    down a unique functional.
    """

    __slots__ = ("basis", "values", "vol", "regular")

    def __init__(self, basis, values, vol, regular):
        self.basis = basis
        self.values = values
        self.vol = vol
        self.regular = regular

    def __repr__(self):
        return (f"ResidueFunctional(size={len(self.basis)}, vol={self.vol}, "
                f"regular={self.regular})")


def _as_vector(poly, basis):
    vec = [Fraction(0)] * len(basis.monomials)
    for e, c in poly.terms.items():
        i = basis.index.get(e)
        if i is None:
            raise ValueError(f"monomial {e} lies outside the graded basis")
        vec[i] = c
    return vec


def residue_functional(fs, nef):
    """Solve for the functional that kills all derivative products and
    sends the Hessian to the Cayley volume.

    Span vectors are the products of each of the d+r log-derivatives of the
    combined polynomial with every interior monomial one level down.  A
    non-unique or unreachable solution means the system is not regular.
    """
    fs = list(fs)
    d, r = nef.dim, nef.r
    if len(fs) != r:
        raise ValueError("need one polynomial per part")
    for f, poly in zip(fs, nef.polytopes):
        if f.dim != d:
            raise ValueError("polynomial dimension mismatch")
        if f.is_zero():
            raise ValueError("zero polynomial in the system")
        for e in f.terms:
            if not poly.contains(e):
                raise ValueError(f"support point {e} outside its polytope")
    cay = cayley_polytope(nef.polytopes)
    vol = cay.normalized_volume()
    n = d + r
    top = interior_level_basis(nef, n, _cayley=cay)
    lower = interior_level_basis(nef, n - 1, _cayley=cay)
    F = cayley_polynomial(fs)
    span = []
    for i in range(n):
        g = log_derivative(F, i)
        if g.is_zero():
            continue
        for mono in lower.monomials:
            span.append(_as_vector(g * monomial(n, mono), top))
    target = _as_vector(hessian_by_subsets(F), top)
    lam = solve_functional(span, target, vol)
    if lam is NOT_UNIQUE:
        return ResidueFunctional(top, None, vol, False)
    return ResidueFunctional(top, tuple(lam), vol, True)


def mixed_residue(rf, h, k=None):
    """Evaluate the functional on an element supported in the top basis.

    With k given, every monomial of h must carry exactly that trailing
    block.  Support outside the recorded basis signals a mis-built element
    and is rejected.
    """
    if not rf.regular:
        raise ValueError("functional is not regular")
    if k is not None:
        k = tuple(int(x) for x in k)
        for e in h.terms:
            if e[len(e) - len(k):] != k:
                raise ValueError(f"monomial {e} is not of multidegree {k}")
    total = Fraction(0)
    for e, c in h.terms.items():
        i = rf.basis.index.get(e)
        if i is None:
            raise ValueError(f"monomial {e} lies outside the recorded basis")
        total += c * rf.values[i]
    return total


def check_mixed_volume_identity(fs, nef):
    """Compare each top Hessian component's residue with a mixed volume.

    For every positive multidegree k at the top level, the residue of the
    k-component must equal the mixed volume of the parts taken with
    multiplicities k_i - 1, and the residues must sum to the Cayley volume.
    Returns a report dict (CLI surface: `residue conjecture310`).
    """
    from .polytope import mixed_volume

    rf = residue_functional(fs, nef)
    if not rf.regular:
        raise ValueError("system is not regular")
    d, r = nef.dim, nef.r
    rows = []
    total = Fraction(0)
    for k in positive_compositions(d + r, r):
        comp = mixed_hessian(fs, k)
        res = mixed_residue(rf, comp, k)
        multiset = []
        for poly, m in zip(nef.polytopes, k):
            multiset.extend([poly] * (m - 1))
        mv = mixed_volume(multiset)
        rows.append({"k": k, "residue": res, "mixed_volume": mv,
                     "equal": res == mv})
        total += res
    return {
        "rows": rows,
        "sum": total,
        "vol": rf.vol,
        "sum_equals_vol": total == rf.vol,
        "all_equal": all(row["equal"] for row in rows),
    }


def residue_of_polynomial(rf, nef, P, a, kbar):
    """Residue pairing of a part-homogeneous coefficient polynomial.

    P is a polynomial whose variables correspond one-to-one with
    nef.points; it must be homogeneous of degree kbar_i in the block of
    variables of part i, with |kbar| = d.  Each monomial x^m is sent to
    prod(a_i^m_i) t^(sum m_i v_i), placed at trailing block kbar + 1 (one
    step inside the cone), evaluated by the functional, with a global sign
    (-1)^d.  (CLI surface: `residue eval`.)
    """
    if not rf.regular:
        raise ValueError("functional is not regular")
    d, r = nef.dim, nef.r
    pts = nef.points
    if P.dim != len(pts):
        raise ValueError("polynomial must have one variable per part point")
    kbar = tuple(int(x) for x in kbar)
    if len(kbar) != r or any(x < 0 for x in kbar):
        raise ValueError("bad part degrees")
    if sum(kbar) != d:
        raise ValueError("part degrees must sum to the dimension")
    sizes = [len(part) for part in nef.parts]
    starts = [sum(sizes[:i]) for i in range(r)]
    a = [Fraction(x) for x in a]
    if len(a) != len(pts):
        raise ValueError("need one coefficient per part point")
    tail = tuple(x + 1 for x in kbar)
    terms = {}
    for m, c in P.terms.items():
        if any(x < 0 for x in m):
            raise ValueError("negative exponent in a coefficient polynomial")
        for j in range(r):
            block = m[starts[j]:starts[j] + sizes[j]]
            if sum(block) != kbar[j]:
                raise ValueError(
                    f"monomial {m} is not homogeneous of degree {kbar}")
        coef = c
        exp = (0,) * d
        for mi, ai, v in zip(m, a, pts):
            if mi:
                coef *= ai ** mi
                exp = tuple(e + mi * vi for e, vi in zip(exp, v))
        full = exp + tail
        terms[full] = terms.get(full, Fraction(0)) + coef
    g = LaurentPolynomial(d + r, terms)
    return (-1) ** d * mixed_residue(rf, g, tail)


def system_from_coefficients(nef, coeffs):
    """Build f_i = 1 - sum of c_p t^p over part i, in nef.points order."""
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) != len(nef.points):
        raise ValueError("need one coefficient per part point")
    it = iter(coeffs)
    fs = []
    for part in nef.parts:
        terms = {(0,) * nef.dim: Fraction(1)}
        for p in part:
            terms[p] = -next(it)
        fs.append(LaurentPolynomial(nef.dim, terms))
    return fs


def draw_regular_coefficients(nef, rng, attempts=50):
    """Random small positive coefficients giving a regular system.

    Returns (coeffs, fs, rf); retries on non-regular draws.
    """
    for _ in range(attempts):
        coeffs = [Fraction(rng.randint(1, 9), rng.randint(1, 9))
                  for _ in nef.points]
        fs = system_from_coefficients(nef, coeffs)
        rf = residue_functional(fs, nef)
        if rf.regular:
            return coeffs, fs, rf
    raise RuntimeError("no regular coefficient tuple found")
