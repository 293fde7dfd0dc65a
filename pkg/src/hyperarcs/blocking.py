"""Blocking sets of the secants of an arc.

A k-arc has k(k-1)/2 secants, and an external point covers at most k/2 of
them, so a blocking set needs at least k - 1 points.  At that minimum the
counting is rigid: k must be even, every blocker lies on exactly k/2
secants, and every secant carries exactly one blocker.  That rigidity is
what the exact-cover search below exploits, and it is also what turns a
minimum blocking set into a 1-factorization of the complete graph on the
arc: each blocker's secants read off a perfect matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from hyperarcs.gf2 import FieldSpec
from hyperarcs import projplane as pp
from hyperarcs.arcs import Arc, ArcError, AdditiveSubgroup, secant_directions, secants, translation_arc
from hyperarcs.projplane import Matrix, Point
from hyperarcs.onefact import OneFactorization


class BlockingError(ValueError):
    """A point set that violates a blocking-set contract."""


@dataclass(frozen=True)
class BlockingSet:
    """External points meeting every secant of a fixed arc."""

    spec: FieldSpec
    points: tuple[Point, ...]
    arc: Arc

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(set(self.points))))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def linear(self) -> bool:
        return is_linear(self.spec, self.points)

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "points": [pp.point_to_json(p) for p in self.points],
            "linear": self.linear,
        }


def is_blocking(arc: Arc, points) -> bool:
    """Every secant meets the point set; the set must avoid the arc."""
    pts = set(points)
    if pts & set(arc.points):
        raise BlockingError("blocking set intersects the arc")
    spec = arc.spec
    return all(
        any(pp.incident(spec, p, line) for p in pts) for line in secants(arc)
    )


def is_linear(spec: FieldSpec, points) -> bool:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return True
    base, second = pts[0], pts[1]
    line = pp.line_through(spec, base, second)
    return all(pp.incident(spec, p, line) for p in pts[2:])


def min_blocking_sets(arc: Arc) -> list[BlockingSet]:
    """All blocking sets of the secants of minimum size k - 1.

    Odd k admits none (an external point covers at most (k-1)/2 < k/2
    secants, so k - 1 of them cannot reach k(k-1)/2).  For even k the
    candidates are the external points on exactly k/2 secants, and the
    search is an exact cover of the secants, branching on the secant with
    fewest remaining candidates.
    """
    k = len(arc)
    if k < 3:
        raise ArcError("blocking needs at least three arc points")
    if k % 2 == 1:
        return []
    spec = arc.spec
    lines = secants(arc)
    arc_pts = set(arc.points)
    candidates = []
    for p in pp.all_points(spec):
        if p in arc_pts:
            continue
        mask = 0
        for idx, line in enumerate(lines):
            if pp.incident(spec, p, line):
                mask |= 1 << idx
        if mask.bit_count() == k // 2:
            candidates.append((p, mask))

    full = (1 << len(lines)) - 1
    by_secant: list[list[int]] = [[] for _ in lines]
    for ci, (_, mask) in enumerate(candidates):
        m = mask
        while m:
            low = m & -m
            by_secant[low.bit_length() - 1].append(ci)
            m ^= low

    solutions: list[tuple[Point, ...]] = []
    chosen: list[int] = []

    def search(covered: int):
        if covered == full:
            solutions.append(tuple(candidates[ci][0] for ci in chosen))
            return
        # branch on the uncovered secant with fewest usable candidates
        best, best_list = None, None
        rem = full & ~covered
        while rem:
            low = rem & -rem
            idx = low.bit_length() - 1
            rem ^= low
            usable = [
                ci
                for ci in by_secant[idx]
                if not candidates[ci][1] & covered
            ]
            if best_list is None or len(usable) < len(best_list):
                best, best_list = idx, usable
                if not usable:
                    return
        for ci in best_list:
            chosen.append(ci)
            search(covered | candidates[ci][1])
            chosen.pop()

    search(0)
    out = [BlockingSet(spec, pts, arc) for pts in solutions]
    out.sort(key=lambda b: b.points)
    for b in out:
        _assert_minimum_counting(arc, b)
    return out


def _assert_minimum_counting(arc: Arc, blocking: BlockingSet) -> None:
    """The forced structure at minimum size: one blocker per secant, k/2
    secants per blocker."""
    spec = arc.spec
    k = len(arc)
    per_point = {p: 0 for p in blocking.points}
    for line in secants(arc):
        hits = [p for p in blocking.points if pp.incident(spec, p, line)]
        if len(hits) != 1:
            raise BlockingError(f"secant {line} carries {len(hits)} blockers")
        per_point[hits[0]] += 1
    if any(c != k // 2 for c in per_point.values()):
        raise BlockingError("a blocker misses its k/2 secant count")


# ---------------------------------------------------------------------------
# The doubled-arc construction with a non-linear blocking set


def ghf_construct(group: AdditiveSubgroup, phi: Matrix) -> tuple[Arc, BlockingSet]:
    """Join a translation arc with its image under a homology fixing the
    line at infinity, and block the secants of the union.

    Secants inside either half already pass through a direction of G on the
    line at infinity; a cross secant from P to phi(Q) passes through the
    center of phi composed with the translation by P + Q.  The directions
    plus all such centers (the center of phi itself included) make 2k - 1
    points, one per secant: a minimum blocking set, never linear.
    """
    spec = group.spec
    k = group.order
    if k < 4:
        raise BlockingError("need a translation arc of size at least 4")
    lam_center = pp.center(spec, phi)
    if lam_center[2] == 0:
        raise BlockingError("map must be a homology (affine center), not an elation")
    arc = translation_arc(group)
    if lam_center in arc:
        raise BlockingError("homology center lies on the arc")
    image = [pp.apply_point(spec, phi, p) for p in arc.points]
    try:
        union = Arc(spec, arc.points + tuple(image))
    except ArcError as exc:
        raise BlockingError(f"union with the image is not an arc: {exc}") from exc
    if len(union) != 2 * k:
        raise BlockingError("image overlaps the arc")

    blockers = set(secant_directions(group))
    for a1, a2 in group.elements:
        composed = pp.compose(spec, phi, pp.elation(spec, a1, a2))
        blockers.add(pp.center(spec, composed))
    bset = BlockingSet(spec, tuple(blockers), union)
    if len(bset) != 2 * k - 1:
        raise BlockingError(f"expected {2 * k - 1} blockers, found {len(bset)}")
    if not is_blocking(union, bset.points):
        raise BlockingError("constructed set fails to block")
    if bset.linear:
        raise BlockingError("constructed set is unexpectedly linear")
    return union, bset


def ghf_eight(
    spec: FieldSpec,
    lam: int | None = None,
    a1: int | None = None,
    a2: int | None = None,
) -> tuple[Arc, BlockingSet, tuple[int, int, int]]:
    """The 8-point generalized hyperfocused arc over the quadrangle group.

    Valid parameters need lam outside {0, 1} and {a1, a2, a1 + a2} disjoint
    from {0, 1, lam, lam + 1}, which forces q >= 8.  With parameters omitted
    the first valid triple in scan order is used.  The 7 blockers form a
    subplane of order 2, which is re-checked here.
    """
    group = _quadrangle_group(spec)

    def valid(l, x, y):
        return l not in (0, 1) and not (
            {x, y, x ^ y} & {0, 1, l, l ^ 1}
        )

    if lam is None and a1 is None and a2 is None:
        found = next(
            (
                (l, x, y)
                for l in spec.elements()
                for x in spec.elements()
                for y in spec.elements()
                if valid(l, x, y)
            ),
            None,
        )
        if found is None:
            raise BlockingError(f"no valid parameters exist for q = {spec.q}")
        lam, a1, a2 = found
    elif lam is None or a1 is None or a2 is None:
        raise BlockingError("give all of lam, a1, a2, or none")
    else:
        spec.check(lam, a1, a2)
        if not valid(lam, a1, a2):
            raise BlockingError(f"(lam={lam}, a1={a1}, a2={a2}) violates the constraints")

    arc, bset = ghf_construct(group, pp.homology(spec, lam, a1, a2))
    if not is_fano_configuration(spec, bset.points):
        raise BlockingError("blockers do not form a subplane of order 2")
    return arc, bset, (lam, a1, a2)


def _quadrangle_group(spec: FieldSpec) -> AdditiveSubgroup:
    from hyperarcs.arcs import subgroup_make

    return subgroup_make(spec, [(0, 1), (1, 0)])


def is_fano_configuration(spec: FieldSpec, points) -> bool:
    """Seven points forming a subplane of order 2: every line through two
    of them contains exactly one more."""
    pts = sorted(set(points))
    if len(pts) != 7:
        return False
    for p, q in combinations(pts, 2):
        line = pp.line_through(spec, p, q)
        others = sum(
            1 for s in pts if s not in (p, q) and pp.incident(spec, s, line)
        )
        if others != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# The collinearity forced on blockers of a triangle


def secant_blocker_map(arc: Arc, blocking: BlockingSet) -> dict:
    """Unique blocker per secant; raises unless the set is minimum-size."""
    spec = arc.spec
    if set(blocking.points) & set(arc.points):
        raise BlockingError("blocking set intersects the arc")
    if len(blocking) != len(arc) - 1:
        raise BlockingError("not a minimum-size blocking set")
    mapping = {}
    for p, q in combinations(arc.points, 2):
        line = pp.line_through(spec, p, q)
        hits = [b for b in blocking.points if pp.incident(spec, b, line)]
        if len(hits) != 1:
            raise BlockingError(f"secant {line} carries {len(hits)} blockers")
        mapping[frozenset((p, q))] = hits[0]
    return mapping


def triangle_collinearity(arc: Arc, blocking: BlockingSet):
    """For every triangle in the arc, the blockers of its three sides are
    collinear.  Returns (True, None) or (False, first offending triangle)."""
    spec = arc.spec
    blocker_of = secant_blocker_map(arc, blocking)
    for tri in combinations(arc.points, 3):
        p1, p2, p3 = tri
        q1 = blocker_of[frozenset((p2, p3))]
        q2 = blocker_of[frozenset((p1, p3))]
        q3 = blocker_of[frozenset((p1, p2))]
        if not pp.collinear(spec, q1, q2, q3):
            return False, tri
    return True, None


def factorization_of(arc: Arc, blocking: BlockingSet) -> OneFactorization:
    """Read the minimum blocking set as a 1-factorization of the complete
    graph on the arc points (canonical order, 1-based vertices)."""
    blocker_of = secant_blocker_map(arc, blocking)
    index = {p: i + 1 for i, p in enumerate(arc.points)}
    factors = []
    for b in blocking.points:
        edges = sorted(
            tuple(sorted((index[p], index[q])))
            for (p, q) in (tuple(fs) for fs, blk in blocker_of.items() if blk == b)
        )
        factors.append(tuple(edges))
    factors.sort()
    return OneFactorization(len(arc), tuple(factors))


# ---------------------------------------------------------------------------
# Projective equivalence of arcs


@lru_cache(maxsize=8192)
def arc_canonical_form(arc: Arc) -> tuple:
    """Canonical representative of the arc's projective class: the least
    sorted image over all maps sending an ordered 4-subset of the arc to
    the standard frame.  Equal forms mean projectively equivalent arcs.

    Any 4 arc points are in general position, so no frame is degenerate;
    that allows a division-free inner loop (Cramer solves and adjugates,
    with projective scale factors dropped)."""
    spec = arc.spec
    if len(arc) < 4:
        raise ArcError("canonical form needs at least four points")
    mul = spec.mul
    inv = spec.inv
    pts = arc.points

    def det(p, q, s):
        return (
            mul(p[0], mul(q[1], s[2])) ^ mul(p[0], mul(q[2], s[1]))
            ^ mul(p[1], mul(q[0], s[2])) ^ mul(p[1], mul(q[2], s[0]))
            ^ mul(p[2], mul(q[0], s[1])) ^ mul(p[2], mul(q[1], s[0]))
        )

    best = None
    for p1, p2, p3, p4 in permutations(pts, 4):
        # columns of the map standard-basis -> frame, Cramer without the
        # common denominator (a global scale is projectively irrelevant)
        c1 = det(p4, p2, p3)
        c2 = det(p1, p4, p3)
        c3 = det(p1, p2, p4)
        a = (mul(c1, p1[0]), mul(c1, p1[1]), mul(c1, p1[2]))
        b = (mul(c2, p2[0]), mul(c2, p2[1]), mul(c2, p2[2]))
        c = (mul(c3, p3[0]), mul(c3, p3[1]), mul(c3, p3[2]))
        # adjugate of the column matrix [a b c]: rows of the inverse map
        adj = (
            (mul(b[1], c[2]) ^ mul(b[2], c[1]),
             mul(b[2], c[0]) ^ mul(b[0], c[2]),
             mul(b[0], c[1]) ^ mul(b[1], c[0])),
            (mul(a[2], c[1]) ^ mul(a[1], c[2]),
             mul(a[0], c[2]) ^ mul(a[2], c[0]),
             mul(a[1], c[0]) ^ mul(a[0], c[1])),
            (mul(a[1], b[2]) ^ mul(a[2], b[1]),
             mul(a[2], b[0]) ^ mul(a[0], b[2]),
             mul(a[0], b[1]) ^ mul(a[1], b[0])),
        )
        # left-multiplying by the standard-frame basis matrix just rewires
        # rows: (row2, row1, row0 + row1 + row2)
        m0, m1, m2 = adj[2], adj[1], (
            adj[0][0] ^ adj[1][0] ^ adj[2][0],
            adj[0][1] ^ adj[1][1] ^ adj[2][1],
            adj[0][2] ^ adj[1][2] ^ adj[2][2],
        )
        image = []
        for p in pts:
            x = mul(m0[0], p[0]) ^ mul(m0[1], p[1]) ^ mul(m0[2], p[2])
            y = mul(m1[0], p[0]) ^ mul(m1[1], p[1]) ^ mul(m1[2], p[2])
            z = mul(m2[0], p[0]) ^ mul(m2[1], p[1]) ^ mul(m2[2], p[2])
            if z:
                s = inv(z)
                image.append((mul(x, s), mul(y, s), 1))
            elif y:
                s = inv(y)
                image.append((mul(x, s), 1, 0))
            else:
                image.append((1, 0, 0))
        image.sort()
        image = tuple(image)
        if best is None or image < best:
            best = image
    return best
