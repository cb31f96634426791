"""Exact projective arithmetic over the rationals.

Points carry canonical integer coordinates (coprime, first nonzero entry
positive), so point equality is tuple equality and every determinant built
from canonical points is plain integer arithmetic.  Local parameters on a
line live in Q together with a single tagged INFINITY value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class GeometryError(Exception):
    """Base class for exact-geometry failures."""


class NotCollinear(GeometryError):
    """Cross-ratio arguments do not lie on one line."""


class DegenerateWitness(GeometryError):
    """A cross-ratio witness lies on the line (or fails to span)."""


class InfinityProduct(GeometryError):
    """The product 0 * INFINITY has no projective meaning."""


class _Infinity:
    """Tagged value for the parameter 1/0; distinct from every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def param_inv(x):
    """1/x on Q ∪ {INFINITY}: sends 0 to INFINITY and INFINITY to 0."""
    if x is INFINITY:
        return Fraction(0)
    x = Fraction(x)
    return INFINITY if x == 0 else 1 / x


def param_mul(x, y):
    """x*y on Q ∪ {INFINITY}; 0 * INFINITY raises InfinityProduct."""
    if x is INFINITY or y is INFINITY:
        other = y if x is INFINITY else x
        if other is not INFINITY and Fraction(other) == 0:
            raise InfinityProduct("0 * INFINITY is undefined")
        return INFINITY
    return Fraction(x) * Fraction(y)


def _canonical_ints(values):
    fracs = [Fraction(v) for v in values]
    if all(f == 0 for f in fracs):
        raise ValueError("homogeneous coordinates must not all be zero")
    mult = lcm(*(f.denominator for f in fracs))
    ints = [int(f * mult) for f in fracs]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


class Point:
    """A point of P^1, P^2 or P^3 in canonical homogeneous coordinates.

    Coordinates may be given as ints, Fractions or rational strings such as
    "-3/7"; they are cleared to coprime integers with the first nonzero
    entry positive, so two Points are equal iff their coords tuples are.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) not in (2, 3, 4):
            raise ValueError("points live in P^1, P^2 or P^3")
        object.__setattr__(self, "coords", _canonical_ints(coords))

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @property
    def dim(self):
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def to_strings(self):
        return [str(c) for c in self.coords]

    @classmethod
    def from_strings(cls, items):
        return cls(Fraction(s) for s in items)


E0 = Point((1, 0, 0, 0))
E1 = Point((0, 1, 0, 0))
E2 = Point((0, 0, 1, 0))
E3 = Point((0, 0, 0, 1))
ONES = Point((1, 1, 1, 1))
STANDARD_BASIS = (E0, E1, E2, E3)


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - b[0] * (a[1] * c[2] - a[2] * c[1])
        + c[0] * (a[1] * b[2] - a[2] * b[1])
    )


def det4(a, b, c, d):
    """Determinant of the 4x4 matrix with columns a, b, c, d.

    Laplace expansion along the first two columns; exact for ints and
    Fractions alike.
    """
    m = {}
    for i in range(4):
        for j in range(i + 1, 4):
            m[i, j] = a[i] * b[j] - a[j] * b[i]
    n = {}
    for i in range(4):
        for j in range(i + 1, 4):
            n[i, j] = c[i] * d[j] - c[j] * d[i]
    return (
        m[0, 1] * n[2, 3]
        - m[0, 2] * n[1, 3]
        + m[0, 3] * n[1, 2]
        + m[1, 2] * n[0, 3]
        - m[1, 3] * n[0, 2]
        + m[2, 3] * n[0, 1]
    )


def bracket(a: Point, b: Point, c: Point, d: Point):
    """[abcd]: determinant of canonical coordinates, columns a, b, c, d."""
    return det4(a.coords, b.coords, c.coords, d.coords)


def _det_any(*columns):
    k = len(columns[0])
    if k == 2:
        return det2(*columns)
    if k == 3:
        return det3(*columns)
    return det4(*columns)


def rank_of_vectors(vectors) -> int:
    """Exact rank of the span of the given coordinate vectors.

    Integer inputs take a fraction-free elimination path; anything else is
    reduced over Q.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    cols = len(rows[0])
    if all(type(x) is int for row in rows for x in row):
        rank = 0
        for c in range(cols):
            pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            prow = rows[rank]
            pv = prow[c]
            for i in range(rank + 1, len(rows)):
                xv = rows[i][c]
                if xv != 0:
                    rows[i] = [pv * a - xv * b for a, b in zip(rows[i], prow)]
            rank += 1
            if rank == min(len(rows), cols):
                break
        return rank
    rows = [[Fraction(x) for x in v] for v in rows]
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / prow[c]
                rows[i] = [rows[i][k] - f * prow[k] for k in range(cols)]
        rank += 1
        if rank == min(len(rows), cols):
            break
    return rank


def rank_of_points(points) -> int:
    """Rank of the matrix whose columns are the points' coordinates."""
    return rank_of_vectors([p.coords for p in points])


def kernel_basis(rows):
    """Basis of the right kernel of the row matrix, as integer tuples.

    Echelon form over Q, free variables set to 1 in ascending column order;
    each basis vector is cleared to coprime integers with positive leading
    sign, so the output is deterministic.
    """
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        raise ValueError("kernel_basis needs the column count from its rows")
    cols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        rows[rank] = [x / prow[c] for x in prow]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [rows[i][k] - f * prow[k] for k in range(cols)]
        pivots.append(c)
        rank += 1
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(_canonical_ints(vec))
    return basis


def bareiss_det(rows):
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def coordinates_in_basis(basis_points, p: Point):
    """Write p as a rational combination of the basis points, or None."""
    rows = [[Fraction(bp.coords[i]) for bp in basis_points] for i in range(p.dim)]
    target = [Fraction(c) for c in p.coords]
    n = len(basis_points)
    aug = [rows[i] + [target[i]] for i in range(p.dim)]
    rank = 0
    pivots = []
    for c in range(n):
        pivot = next((i for i in range(rank, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        prow = aug[rank]
        aug[rank] = [x / prow[c] for x in prow]
        prow = aug[rank]
        for i in range(len(aug)):
            if i != rank and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [aug[i][k] - f * prow[k] for k in range(n + 1)]
        pivots.append(c)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        sol[pc] = aug[r][n]
    return tuple(sol)


def cross_ratio(a: Point, b: Point, c: Point, d: Point, witnesses=()):
    """The cross ratio (a, b; c, d) of four collinear points.

    Equals the local parameter x of d when (a, b, c) play the roles of
    infinity, zero and unit on the line.  In P^2 one witness point off the
    line is required, in P^3 two; witnesses must span the ambient space
    together with the line.  Returns INFINITY when the denominator bracket
    product vanishes (d = a).
    """
    pts = (a, b, c, d)
    dim = a.dim
    if any(p.dim != dim for p in pts):
        raise ValueError("cross-ratio arguments must share a dimension")
    if len({a, b, c}) != 3:
        raise ValueError("a, b, c must be pairwise distinct")
    if rank_of_points(pts) > 2:
        raise NotCollinear(f"{pts} are not collinear")
    witnesses = tuple(witnesses)
    if len(witnesses) != dim - 2:
        raise DegenerateWitness(
            f"need {dim - 2} witnesses for P^{dim - 1}, got {len(witnesses)}"
        )
    if witnesses and rank_of_points((a, b) + witnesses) != dim:
        raise DegenerateWitness("witnesses must span the space with the line")
    w = tuple(p.coords for p in witnesses)
    num = _det_any(a.coords, c.coords, *w) * _det_any(b.coords, d.coords, *w)
    den = _det_any(a.coords, d.coords, *w) * _det_any(b.coords, c.coords, *w)
    if den == 0:
        return INFINITY
    return Fraction(num, den)


def default_witnesses(line_points):
    """Two deterministic points off the line through the given P^3 points."""
    found = []
    span = list(line_points)
    for cand in (E0, E1, E2, E3):
        if rank_of_points(span + [cand]) == len(span) + 1:
            span.append(cand)
            found.append(cand)
            if len(found) == 2:
                return tuple(found)
    raise GeometryError("could not complete the line to a basis")


@dataclass(frozen=True)
class Transform:
    """An invertible projective transformation of P^3 (4x4, det != 0)."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("transform matrix must be 4x4")
        object.__setattr__(self, "matrix", rows)
        if self.det() == 0:
            raise ValueError("transform matrix must be invertible")

    def det(self):
        cols = [[self.matrix[i][j] for i in range(4)] for j in range(4)]
        return det4(*cols)

    def apply_vector(self, vec):
        return tuple(
            sum(self.matrix[i][j] * Fraction(vec[j]) for j in range(4))
            for i in range(4)
        )

    def apply(self, p: Point) -> Point:
        return Point(self.apply_vector(p.coords))

    @classmethod
    def identity(cls):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def from_columns(cls, columns):
        return cls(tuple(tuple(col[i] for col in columns) for i in range(4)))

    def inverse(self) -> "Transform":
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(4)]
             for i, row in enumerate(self.matrix)]
        for c in range(4):
            pivot = next(i for i in range(c, 4) if a[i][c] != 0)
            a[c], a[pivot] = a[pivot], a[c]
            a[c] = [x / a[c][c] for x in a[c]]
            for i in range(4):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [a[i][k] - f * a[c][k] for k in range(8)]
        return Transform(tuple(tuple(row[4:]) for row in a))


MONOMIALS = ((0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))


@dataclass(frozen=True)
class QuadricCoeffs:
    """Coefficients of a nonzero quadric in the fixed monomial order
    x², xy, xz, xw, y², yz, yw, z², zw, w²."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if len(c) != 10:
            raise ValueError("a quadric has 10 coefficients")
        object.__setattr__(self, "coeffs", _canonical_ints(c))

    def evaluate(self, p: Point):
        v = p.coords
        return sum(c * v[i] * v[j] for c, (i, j) in zip(self.coeffs, MONOMIALS))

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items):
        return cls(tuple(Fraction(s) for s in items))
