"""JSON input parsing and canonical report serialization.

All numbers travel as exact integers or rational strings "p/q"; float
literals are rejected at parse time.  Reports are serialized canonically
(sorted keys, fixed separators) so identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .laurent import LaurentPolynomial
from .linalg import integer_kernel_basis
from .mirror import ProductFamily, WpsFamily
from .polytope import LatticePolytope, check_nef_partition
from .series import TruncatedSeries


class InputError(Exception):
    """A problem with usage or input files (exit code 1)."""


def rat_str(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value, where):
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: bad rational literal {value!r}")
    raise InputError(f"{where}: expected an integer or 'p/q' string")


def _reject_float(text):
    raise InputError(
        f"floating point literal {text!r} is not accepted; "
        "write an integer or a 'p/q' string")


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh, parse_float=_reject_float)
    except InputError as e:
        raise InputError(f"{path}: {e}")
    except FileNotFoundError:
        raise InputError(f"input file not found: {path}")
    except IsADirectoryError:
        raise InputError(f"input path is a directory: {path}")
    except json.JSONDecodeError as e:
        raise InputError(
            f"{path}: invalid JSON at line {e.lineno} column {e.colno}: "
            f"{e.msg}")


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _need(data, key, path, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{path}: missing required key {key!r}")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"{path}: key {key!r} has the wrong type")
    return value


def _int_tuple(values, where):
    try:
        out = tuple(int(x) for x in values)
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected a list of integers")
    if any(isinstance(x, bool) for x in values):
        raise InputError(f"{where}: expected integers, got booleans")
    return out


def _point_list(values, dim, where):
    points = []
    for p in values:
        pt = _int_tuple(p, where)
        if len(pt) != dim:
            raise InputError(
                f"{where}: point {list(pt)} does not have {dim} coordinates")
        points.append(pt)
    if not points:
        raise InputError(f"{where}: empty point list")
    return points


def load_polytope_file(path):
    data = load_json(path)
    dim = _need(data, "dim", path, int)
    points = _point_list(_need(data, "points", path, list), dim, path)
    return LatticePolytope(points, dim)


def load_nefpart_file(path):
    """Parts of a proposed decomposition, unvalidated points per summand."""
    data = load_json(path)
    dim = _need(data, "dim", path, int)
    raw = _need(data, "parts", path, list)
    if not raw:
        raise InputError(f"{path}: empty parts list")
    return dim, [_point_list(part, dim, f"{path} part {i}")
                 for i, part in enumerate(raw)]


def load_laurent(data, where):
    if isinstance(data, str):
        where = data
        data = load_json(data)
    dim = _need(data, "dim", where, int)
    terms = {}
    for i, t in enumerate(_need(data, "terms", where, list)):
        exp = _int_tuple(_need(t, "exp", f"{where} term {i}"),
                         f"{where} term {i}")
        if len(exp) != dim:
            raise InputError(f"{where} term {i}: exponent length != {dim}")
        if exp in terms:
            raise InputError(f"{where} term {i}: repeated exponent {list(exp)}")
        terms[exp] = parse_rational(_need(t, "coef", f"{where} term {i}"),
                                    f"{where} term {i}")
    return LaurentPolynomial(dim, terms)


def laurent_json(poly):
    return {"dim": poly.dim,
            "terms": [{"exp": list(e), "coef": rat_str(c)}
                      for e, c in sorted(poly.terms.items())]}


def load_system_file(path):
    data = load_json(path)
    dim = _need(data, "dim", path, int)
    polys = _need(data, "polys", path, list)
    if not polys:
        raise InputError(f"{path}: empty system")
    out = []
    for i, p in enumerate(polys):
        f = load_laurent(p, f"{path} poly {i}")
        if f.dim != dim:
            raise InputError(f"{path} poly {i}: dimension != {dim}")
        out.append(f)
    return dim, out


def load_coeffs_file(path, count=None):
    data = load_json(path)
    raw = _need(data, "coeffs", path, list)
    coeffs = [parse_rational(v, f"{path} coeff {i}")
              for i, v in enumerate(raw)]
    if count is not None and len(coeffs) != count:
        raise InputError(
            f"{path}: expected {count} coefficients, got {len(coeffs)}")
    return coeffs


def series_json(series):
    if not isinstance(series, TruncatedSeries):
        raise TypeError("expected a TruncatedSeries")
    return {"vars": series.nvars, "order": series.order,
            "coeffs": [{"exp": list(e), "value": rat_str(c)}
                       for e, c in series.items()]}


def weights_from_points(points, where):
    """The unique positive primitive relation among fan points.

    points: n lattice points in Z^d whose kernel (as columns) has rank 1;
    the generator, sign-fixed to be positive, is the weight vector.
    """
    n = len(points)
    d = len(points[0])
    rows = [[p[j] for p in points] for j in range(d)]
    kernel = integer_kernel_basis(rows, n)
    if len(kernel) != 1:
        raise InputError(
            f"{where}: the points do not define a weighted family "
            f"(relation rank {len(kernel)}, expected 1)")
    w = list(kernel[0])
    if all(x <= 0 for x in w):
        w = [-x for x in w]
    if any(x <= 0 for x in w):
        raise InputError(
            f"{where}: the point relation {w} is not positive")
    return tuple(w)


def load_family_file(path):
    """A family description: weighted (two spellings) or product type.

    Returns ("wps", WpsFamily) or ("product", ProductFamily).  Weighted
    families are written either as explicit weights with index groups, or
    as a nef-partition style file whose points determine the weights; in
    the second form coordinate i is the i-th point of the validated
    decomposition, so polynomials refer to that order.
    """
    data = load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        if "matrix" in data:
            dims = _int_tuple(_need(data, "dims", path, list), path)
            matrix = [_int_tuple(row, path)
                      for row in _need(data, "matrix", path, list)]
            scales = data.get("y_scales")
            if scales is not None:
                scales = _int_tuple(scales, path)
            return "product", ProductFamily(dims, matrix, scales)
        if "weights" in data:
            weights = _int_tuple(_need(data, "weights", path, list), path)
            parts = [_int_tuple(g, path)
                     for g in _need(data, "parts", path, list)]
            return "wps", WpsFamily(weights, parts)
        if "parts" in data and "dim" in data:
            dim, parts = load_nefpart_file(path)
            nef = check_nef_partition(parts, dim)
            weights = weights_from_points(nef.points, path)
            groups = []
            offset = 0
            for part in nef.parts:
                groups.append(tuple(range(offset, offset + len(part))))
                offset += len(part)
            return "wps", WpsFamily(weights, groups)
    except ValueError as e:
        raise InputError(f"{path}: {e}")
    raise InputError(
        f"{path}: family file needs 'matrix', 'weights', or nef-partition "
        "style 'dim'/'parts' keys")


def load_manifest_file(path):
    data = load_json(path)
    raw = _need(data, "cases", path, list)
    cases = []
    for i, case in enumerate(raw):
        where = f"{path} case {i}"
        name = _need(case, "name", where, str)
        argv = _need(case, "argv", where, list)
        if not all(isinstance(a, str) for a in argv):
            raise InputError(f"{where}: argv must be a list of strings")
        expect = case.get("expect_exit", 0)
        if not isinstance(expect, int) or isinstance(expect, bool):
            raise InputError(f"{where}: expect_exit must be an integer")
        golden = case.get("golden")
        if golden is not None and not isinstance(golden, dict):
            raise InputError(f"{where}: golden must be an object")
        cases.append({"name": name, "argv": list(argv),
                      "expect_exit": expect, "golden": golden})
    return cases
