"""Points, lines, and projectivities of PG(2,q) over GF(2^r).

Points and lines share one representation: triples of field values,
normalized so the last nonzero coordinate is 1.  That keeps the natural
representatives (a, b, 1) for affine points, (a, b, 0) for points at
infinity, and [0, 0, 1] for the line at infinity.  Projectivities are 3x3
invertible matrices scaled so the first nonzero entry (row-major) is 1,
so tuple equality is equality in PGL(3,q).
"""

from __future__ import annotations

from functools import lru_cache

from hyperarcs.gf2 import FieldSpec, _raw_mul, inv_table, mul_table

Point = tuple[int, int, int]
Line = tuple[int, int, int]
Matrix = tuple[tuple[int, int, int], ...]


class GeometryError(ValueError):
    """Degenerate input to a geometric operation."""


@lru_cache(maxsize=None)
def _fast_ops(spec: FieldSpec):
    """(mul, inv) closures over cached tables; the geometry below is
    multiplication-bound, so it binds these once per call instead of going
    through the checked field methods."""
    if spec.r <= 8:
        mt = mul_table(spec)
        it = inv_table(spec)
        return (lambda a, b: mt[a][b]), (lambda a: it[a])
    r, poly = spec.r, spec.poly
    return (lambda a, b: _raw_mul(a, b, r, poly)), spec.inv


def normalize(spec: FieldSpec, triple) -> Point:
    x1, x2, x3 = triple
    spec.check(x1, x2, x3)
    return _normalize_fast(spec, x1, x2, x3)


def _normalize_fast(spec: FieldSpec, x1: int, x2: int, x3: int) -> Point:
    mul, inv = _fast_ops(spec)
    if x3:
        if x3 == 1:
            return (x1, x2, 1)
        s = inv(x3)
        return (mul(x1, s), mul(x2, s), 1)
    if x2:
        if x2 == 1:
            return (x1, 1, 0)
        s = inv(x2)
        return (mul(x1, s), 1, 0)
    if x1:
        return (1, 0, 0)
    raise GeometryError("zero triple is not a projective point")


LINE_AT_INFINITY: Line = (0, 0, 1)
ORIGIN: Point = (0, 0, 1)

# The standard frame: no three of these are collinear in any PG(2,q).
STANDARD_FRAME: tuple[Point, ...] = ((0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1))


def affine_point(spec: FieldSpec, a: int, b: int) -> Point:
    spec.check(a, b)
    return (a, b, 1)


def direction_point(spec: FieldSpec, a: int, b: int) -> Point:
    """Point at infinity in the direction (a, b), normalized."""
    if a == 0 and b == 0:
        raise GeometryError("direction (0,0) is not a point")
    return normalize(spec, (a, b, 0))


def incident(spec: FieldSpec, point: Point, line: Line) -> bool:
    mul, _ = _fast_ops(spec)
    return (
        mul(point[0], line[0]) ^ mul(point[1], line[1]) ^ mul(point[2], line[2])
    ) == 0


def _cross(spec: FieldSpec, u, v) -> tuple[int, int, int]:
    # characteristic two: the cross product's signs all collapse to xor
    m, _ = _fast_ops(spec)
    return (
        m(u[1], v[2]) ^ m(u[2], v[1]),
        m(u[2], v[0]) ^ m(u[0], v[2]),
        m(u[0], v[1]) ^ m(u[1], v[0]),
    )


def line_through(spec: FieldSpec, p: Point, q: Point) -> Line:
    if p == q:
        raise GeometryError("no unique line through a repeated point")
    t = _cross(spec, p, q)
    return _normalize_fast(spec, t[0], t[1], t[2])


def meet(spec: FieldSpec, l1: Line, l2: Line) -> Point:
    if l1 == l2:
        raise GeometryError("no unique meet of a repeated line")
    t = _cross(spec, l1, l2)
    return _normalize_fast(spec, t[0], t[1], t[2])


def det3(spec: FieldSpec, rows) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    m, _ = _fast_ops(spec)
    return (
        m(a, m(e, i)) ^ m(a, m(f, h))
        ^ m(b, m(d, i)) ^ m(b, m(f, g))
        ^ m(c, m(d, h)) ^ m(c, m(e, g))
    )


def collinear(spec: FieldSpec, p: Point, q: Point, r: Point) -> bool:
    return det3(spec, (p, q, r)) == 0


def all_points(spec: FieldSpec) -> list[Point]:
    """All q^2 + q + 1 points, affine first, then the line at infinity."""
    pts = [(a, b, 1) for a in spec.elements() for b in spec.elements()]
    pts += [(a, 1, 0) for a in spec.elements()]
    pts.append((1, 0, 0))
    return pts


def all_lines(spec: FieldSpec) -> list[Line]:
    return all_points(spec)  # same triples, read as line coordinates


def line_points(spec: FieldSpec, line: Line) -> list[Point]:
    """The q + 1 points of a line, via a spanning pair."""
    mul, _ = _fast_ops(spec)
    l1, l2, l3 = line
    if l1 == 0 and l2 == 0:
        base, other = (1, 0, 0), (0, 1, 0)
    elif l1 == 0:
        # x2 determined by x3
        base, other = (1, 0, 0), _normalize_fast(spec, 0, l3, l2)
    else:
        base = _normalize_fast(spec, l2, l1, 0)
        other = _normalize_fast(spec, l3, 0, l1)
    pts = [other]
    for t in spec.nonzero():
        pts.append(
            _normalize_fast(
                spec,
                other[0] ^ mul(t, base[0]),
                other[1] ^ mul(t, base[1]),
                other[2] ^ mul(t, base[2]),
            )
        )
    pts.append(base)
    return pts


# ---------------------------------------------------------------------------
# Projectivities


def _scale_matrix(spec: FieldSpec, rows) -> Matrix:
    flat = [v for row in rows for v in row]
    lead = next((v for v in flat if v), 0)
    if lead == 0:
        raise GeometryError("zero matrix")
    s = spec.inv(lead)
    return tuple(tuple(spec.mul(v, s) for v in row) for row in rows)


def matrix_make(spec: FieldSpec, rows) -> Matrix:
    rows = tuple(tuple(row) for row in rows)
    for row in rows:
        spec.check(*row)
    if matrix_det(spec, rows) == 0:
        raise GeometryError("singular matrix is not a projectivity")
    return _scale_matrix(spec, rows)


def matrix_det(spec: FieldSpec, rows) -> int:
    return det3(spec, rows)


def apply_point(spec: FieldSpec, mat: Matrix, p: Point) -> Point:
    m, _ = _fast_ops(spec)
    return _normalize_fast(
        spec,
        m(mat[0][0], p[0]) ^ m(mat[0][1], p[1]) ^ m(mat[0][2], p[2]),
        m(mat[1][0], p[0]) ^ m(mat[1][1], p[1]) ^ m(mat[1][2], p[2]),
        m(mat[2][0], p[0]) ^ m(mat[2][1], p[1]) ^ m(mat[2][2], p[2]),
    )


def compose(spec: FieldSpec, f: Matrix, g: Matrix) -> Matrix:
    """The projectivity applying g first, then f (matrix product f @ g)."""
    m = spec.mul
    rows = tuple(
        tuple(
            m(f[i][0], g[0][j]) ^ m(f[i][1], g[1][j]) ^ m(f[i][2], g[2][j])
            for j in range(3)
        )
        for i in range(3)
    )
    return _scale_matrix(spec, rows)


def inverse(spec: FieldSpec, mat: Matrix) -> Matrix:
    m = spec.mul
    (a, b, c), (d, e, f), (g, h, i) = mat
    cof = (
        (m(e, i) ^ m(f, h), m(c, h) ^ m(b, i), m(b, f) ^ m(c, e)),
        (m(f, g) ^ m(d, i), m(a, i) ^ m(c, g), m(c, d) ^ m(a, f)),
        (m(d, h) ^ m(e, g), m(b, g) ^ m(a, h), m(a, e) ^ m(b, d)),
    )
    det = matrix_det(spec, mat)
    if det == 0:
        raise GeometryError("singular matrix")
    s = spec.inv(det)
    return _scale_matrix(spec, tuple(tuple(m(v, s) for v in row) for row in cof))


def identity_matrix(spec: FieldSpec) -> Matrix:
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def elation(spec: FieldSpec, a1: int, a2: int) -> Matrix:
    """Translation (X1 + a1*X3, X2 + a2*X3, X3): an elation fixing the line
    at infinity pointwise, with center in the direction (a1, a2)."""
    spec.check(a1, a2)
    return ((1, 0, a1), (0, 1, a2), (0, 0, 1))


def homology(spec: FieldSpec, lam: int, a1: int, a2: int) -> Matrix:
    """(X1, X2, X3) -> (lam*X1 + a1*X3, lam*X2 + a2*X3, X3).

    For lam not in {0, 1} this is a homology with axis the line at infinity
    and affine center (a1, a2, 1 + lam); lam = 1 degenerates to an elation.
    """
    spec.check(lam, a1, a2)
    if lam == 0:
        raise GeometryError("lam = 0 gives a singular map")
    return _scale_matrix(spec, ((lam, 0, a1), (0, lam, a2), (0, 0, 1)))


def center(spec: FieldSpec, mat: Matrix) -> Point:
    """Center of a central collineation with axis the line at infinity.

    Rejects matrices that do not fix the line at infinity pointwise, and
    the identity (every point is fixed, no center).
    """
    (a, b, c), (d, e, f), (g, h, i) = mat
    if not (b == 0 and d == 0 and g == 0 and h == 0 and a == e and i != 0):
        raise GeometryError("not a central collineation with axis X3 = 0")
    s = spec.inv(i)
    lam, a1, a2 = spec.mul(a, s), spec.mul(c, s), spec.mul(f, s)
    if lam == 1:
        if a1 == 0 and a2 == 0:
            raise GeometryError("identity has no center")
        return direction_point(spec, a1, a2)
    return normalize(spec, (a1, a2, 1 ^ lam))


def _solve3(spec: FieldSpec, mat_rows, rhs):
    """Solve a 3x3 linear system by Gaussian elimination."""
    m = spec.mul
    aug = [list(row) + [r] for row, r in zip(mat_rows, rhs)]
    for col in range(3):
        pivot = next((r for r in range(col, 3) if aug[r][col]), None)
        if pivot is None:
            raise GeometryError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        s = spec.inv(aug[col][col])
        aug[col] = [m(v, s) for v in aug[col]]
        for r in range(3):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v ^ m(factor, w) for v, w in zip(aug[r], aug[col])]
    return [aug[r][3] for r in range(3)]


def _frame_to_standard(spec: FieldSpec, pts) -> Matrix:
    """Matrix sending the basis frame e1, e2, e3, e1+e2+e3 to the 4 points."""
    p1, p2, p3, p4 = pts
    if (
        collinear(spec, p1, p2, p3)
        or collinear(spec, p1, p2, p4)
        or collinear(spec, p1, p3, p4)
        or collinear(spec, p2, p3, p4)
    ):
        raise GeometryError("frame points are not in general position")
    cols = tuple(zip(p1, p2, p3))
    c1, c2, c3 = _solve3(spec, cols, p4)
    m = spec.mul
    rows = tuple(
        (m(c1, p1[k]), m(c2, p2[k]), m(c3, p3[k])) for k in range(3)
    )
    return matrix_make(spec, rows)


def frame_map(spec: FieldSpec, sources, targets) -> Matrix:
    """The unique projectivity sending one 4-point frame to another, in order."""
    a = _frame_to_standard(spec, tuple(sources))
    b = _frame_to_standard(spec, tuple(targets))
    return compose(spec, b, inverse(spec, a))


def point_to_json(p: Point) -> list[str]:
    return [f"0x{v:x}" for v in p]


def line_to_json(l: Line) -> dict:
    return {"line": point_to_json(l)}


def line_from_json(spec: FieldSpec, obj) -> Line:
    if not isinstance(obj, dict) or "line" not in obj:
        raise GeometryError(f"malformed line: {obj!r}")
    return point_from_json(spec, obj["line"])


def matrix_to_json(mat: Matrix) -> list[str]:
    return [f"0x{v:x}" for row in mat for v in row]


def matrix_from_json(spec: FieldSpec, obj) -> Matrix:
    if not isinstance(obj, (list, tuple)) or len(obj) != 9:
        raise GeometryError(f"malformed projectivity: {obj!r}")
    vals = []
    for v in obj:
        try:
            vals.append(int(v, 16) if isinstance(v, str) else int(v))
        except (TypeError, ValueError) as exc:
            raise GeometryError(f"malformed entry: {v!r}") from exc
    return matrix_make(spec, (tuple(vals[0:3]), tuple(vals[3:6]), tuple(vals[6:9])))


def point_from_json(spec: FieldSpec, obj) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 3:
        raise GeometryError(f"malformed point: {obj!r}")
    vals = []
    for v in obj:
        try:
            vals.append(int(v, 16) if isinstance(v, str) else int(v))
        except (TypeError, ValueError) as exc:
            raise GeometryError(f"malformed coordinate: {v!r}") from exc
    return normalize(spec, tuple(vals))
