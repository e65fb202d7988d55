"""Exact rational linear algebra and integer-lattice computations.

Everything here is over ``fractions.Fraction``; there is no floating point
anywhere in the engine.  Subspaces and lattices are stored in canonical
echelon form (reduced row echelon over the rationals, Hermite normal form
for lattices) so that structural equality coincides with mathematical
equality and derived objects can be hashed and compared directly.

Integer problems (lattice membership, affine lattice sections) are decided
by Hermite/Smith normal form, never by search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatchError, NotInvariantError

Rat = Fraction


def rat(x) -> Rat:
    """Coerce an int, string like '1/2', or Fraction to an exact rational."""
    return Fraction(x)


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vec:
    """An exact rational vector."""

    entries: tuple[Rat, ...]

    def __init__(self, entries: Iterable) -> None:
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __add__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self.entries)

    def scale(self, c) -> "Vec":
        c = Fraction(c)
        return Vec(c * a for a in self.entries)

    def dot(self, other: "Vec") -> Rat:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_dim(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"vector dims {self.dim} != {other.dim}")

    @staticmethod
    def zero(dim: int) -> "Vec":
        return Vec([0] * dim)

    @staticmethod
    def unit(dim: int, i: int) -> "Vec":
        return Vec([1 if j == i else 0 for j in range(dim)])


@dataclass(frozen=True)
class Mat:
    """An exact rational matrix, stored as a tuple of row tuples."""

    rows: tuple[tuple[Rat, ...], ...]

    def __init__(self, rows: Iterable[Iterable]) -> None:
        object.__setattr__(
            self, "rows", tuple(tuple(Fraction(e) for e in row) for row in rows)
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def apply(self, v: Vec) -> Vec:
        if self.ncols != v.dim:
            raise DimensionMismatchError(f"matrix cols {self.ncols} != vec dim {v.dim}")
        return Vec(
            sum((r * e for r, e in zip(row, v.entries)), Fraction(0))
            for row in self.rows
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise DimensionMismatchError("matrix product shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        return Mat(
            [
                [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                for row in self.rows
            ]
        )

    def transpose(self) -> "Mat":
        return Mat(zip(*self.rows)) if self.rows else Mat([])

    def is_orthogonal(self) -> bool:
        return self.is_square() and self.transpose() @ self == Mat.identity(self.nrows)

    @staticmethod
    def identity(dim: int) -> "Mat":
        return Mat([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @staticmethod
    def zero(dim: int) -> "Mat":
        return Mat([[0] * dim for _ in range(dim)])

    @staticmethod
    def diagonal(entries: Iterable) -> "Mat":
        ds = [Fraction(e) for e in entries]
        n = len(ds)
        return Mat([[ds[i] if i == j else 0 for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# Rational Gauss-Jordan
# ---------------------------------------------------------------------------


def _rref_rows(rows: list[list[Rat]]) -> tuple[list[list[Rat]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * e for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Mat) -> tuple[Mat, int]:
    """Reduced row echelon form over the rationals and its rank."""
    rows = [list(row) for row in m.rows]
    rows, pivots = _rref_rows(rows)
    return Mat(rows), len(pivots)


def nullspace(m: Mat) -> list[Vec]:
    """A canonical basis of the rational kernel {v : m v = 0}."""
    ncols = m.ncols
    rows = [list(row) for row in m.rows]
    rows, pivots = _rref_rows(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(Vec(v))
    return basis


def solve(m: Mat, b: Vec) -> Optional[Vec]:
    """One rational solution of m x = b, or None if the system is inconsistent."""
    if m.nrows != b.dim:
        raise DimensionMismatchError("solve: rhs length mismatch")
    ncols = m.ncols
    rows = [list(row) + [be] for row, be in zip(m.rows, b.entries)]
    rows, pivots = _rref_rows(rows)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return Vec(x)


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    The result is in row echelon form with positive pivots, entries above
    each pivot reduced into [0, pivot), and zero rows dropped.  Two
    generating sets of the same row lattice produce identical output.
    """
    work = [list(map(int, row)) for row in rows]
    if not work:
        return []
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        # Collapse all entries in column c at or below row r onto row r.
        nonzero = [i for i in range(r, len(work)) if work[i][c] != 0]
        if not nonzero:
            continue
        i0 = nonzero[0]
        work[r], work[i0] = work[i0], work[r]
        for i in range(r + 1, len(work)):
            while work[i][c] != 0:
                if abs(work[i][c]) < abs(work[r][c]):
                    work[r], work[i] = work[i], work[r]
                q = work[i][c] // work[r][c]
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        if work[r][c] < 0:
            work[r] = [-a for a in work[r]]
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r] if any(row)]


def smith_normal_form(
    a: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (u, d, v) with u*a*v = d, u and v unimodular, and d diagonal
    with each diagonal entry nonnegative and dividing the next.
    """
    d = [list(map(int, row)) for row in a]
    m = len(d)
    n = len(d[0]) if d else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [a - q * b for a, b in zip(d[i], d[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while True:
        entries = [
            (abs(d[i][j]), i, j)
            for i in range(t, m)
            for j in range(t, n)
            if d[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, m):
            if d[i][t] != 0:
                row_op(i, t, d[i][t] // d[t][t])
                dirty = dirty or d[i][t] != 0
        for j in range(t + 1, n):
            if d[t][j] != 0:
                col_op(j, t, d[t][j] // d[t][t])
                dirty = dirty or d[t][j] != 0
        if dirty:
            continue
        # Enforce the divisibility chain before moving on.
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            d[t] = [a + b for a, b in zip(d[t], d[bad])]
            u[t] = [a + b for a, b in zip(u[t], u[bad])]
            continue
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
        t += 1
        if t == min(m, n):
            break
    return u, d, v


def solve_integer(
    a: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[list[int]]:
    """One integer solution x of a x = b, or None if no integer solution exists."""
    m = len(a)
    n = len(a[0]) if a else 0
    if m == 0:
        return [0] * n
    u, d, v = smith_normal_form(a)
    ub = [sum(u[i][k] * int(b[k]) for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return [sum(v[i][k] * y[k] for k in range(n)) for i in range(n)]


def integer_nullspace(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """A lattice basis of the integer kernel {x : a x = 0}."""
    m = len(a)
    n = len(a[0]) if a else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    _, d, v = smith_normal_form(a)
    kernel_cols = [j for j in range(n) if j >= min(m, n) or d[j][j] == 0]
    return [[v[i][j] for i in range(n)] for j in kernel_cols]


def _scale_rows_to_int(
    rows: Sequence[Sequence[Rat]], rhs: Optional[Sequence[Rat]] = None
):
    """Clear denominators row by row (preserves the integer solution set)."""
    int_rows = []
    int_rhs = [] if rhs is not None else None
    for i, row in enumerate(rows):
        denoms = [Fraction(e).denominator for e in row]
        if rhs is not None:
            denoms.append(Fraction(rhs[i]).denominator)
        scale = lcm(*denoms) if denoms else 1
        int_rows.append([int(Fraction(e) * scale) for e in row])
        if rhs is not None:
            int_rhs.append(int(Fraction(rhs[i]) * scale))
    return (int_rows, int_rhs) if rhs is not None else int_rows


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A rational linear subspace in canonical (RREF) basis form.

    The empty basis encodes the zero subspace.
    """

    basis: tuple[Vec, ...]
    ambient_dim: int

    @staticmethod
    def spanned_by(vectors: Iterable[Vec], ambient_dim: int) -> "Subspace":
        vecs = [v for v in vectors]
        for v in vecs:
            if v.dim != ambient_dim:
                raise DimensionMismatchError("basis vector of wrong dimension")
        if not vecs:
            return Subspace(basis=(), ambient_dim=ambient_dim)
        rows = [list(v.entries) for v in vecs]
        rows, pivots = _rref_rows(rows)
        return Subspace(
            basis=tuple(Vec(rows[i]) for i in range(len(pivots))),
            ambient_dim=ambient_dim,
        )

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(basis=(), ambient_dim=ambient_dim)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.spanned_by(
            [Vec.unit(ambient_dim, i) for i in range(ambient_dim)], ambient_dim
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Vec) -> bool:
        if v.dim != self.ambient_dim:
            raise DimensionMismatchError("vector of wrong ambient dimension")
        return self.coordinates(v) is not None

    def coordinates(self, v: Vec) -> Optional[Vec]:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        if not self.basis:
            return Vec([]) if v.is_zero() else None
        cols = Mat([[b.entries[i] for b in self.basis] for i in range(v.dim)])
        return solve(cols, v)

    def from_coordinates(self, coords: Vec) -> Vec:
        total = Vec.zero(self.ambient_dim)
        for c, b in zip(coords.entries, self.basis):
            total = total + b.scale(c)
        return total

    def project(self, v: Vec) -> Vec:
        """Orthogonal projection of v onto this subspace."""
        if not self.basis:
            return Vec.zero(self.ambient_dim)
        gram = Mat([[bi.dot(bj) for bj in self.basis] for bi in self.basis])
        rhs = Vec([b.dot(v) for b in self.basis])
        coords = solve(gram, rhs)
        assert coords is not None
        return self.from_coordinates(coords)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """The intersection of two subspaces of the same ambient space."""
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError("subspace ambient dimensions differ")
    if s1.is_zero() or s2.is_zero():
        return Subspace.zero(s1.ambient_dim)
    # Solve x * B1 = y * B2: kernel of the stacked basis matrix.
    n = s1.ambient_dim
    stacked = Mat(
        [
            [b.entries[i] for b in s1.basis] + [-b.entries[i] for b in s2.basis]
            for i in range(n)
        ]
    )
    vecs = []
    for k in nullspace(stacked):
        coords = Vec(k.entries[: s1.dim])
        vecs.append(s1.from_coordinates(coords))
    return Subspace.spanned_by(vecs, n)


def orthogonal_complement(s: Subspace) -> Subspace:
    """The orthogonal complement with respect to the standard dot product."""
    if not s.basis:
        return Subspace.full(s.ambient_dim)
    m = Mat([b.entries for b in s.basis])
    return Subspace.spanned_by(nullspace(m), s.ambient_dim)


def eigenspace(m: Mat, lam, restrict_to: Subspace) -> Subspace:
    """{v in restrict_to : m v = lam v}, as a subspace of the ambient space.

    Raises NotInvariantError if restrict_to is not invariant under m.
    """
    lam = Fraction(lam)
    if m.ncols != restrict_to.ambient_dim:
        raise DimensionMismatchError("matrix does not act on the ambient space")
    for b in restrict_to.basis:
        if not restrict_to.contains(m.apply(b)):
            raise NotInvariantError("subspace is not invariant under the map")
    if restrict_to.is_zero():
        return restrict_to
    # (m - lam) applied to a coordinate combination of the basis.
    cols = []
    for b in restrict_to.basis:
        w = m.apply(b) - b.scale(lam)
        cols.append(w.entries)
    system = Mat([[col[i] for col in cols] for i in range(restrict_to.ambient_dim)])
    vecs = [restrict_to.from_coordinates(k) for k in nullspace(system)]
    return Subspace.spanned_by(vecs, restrict_to.ambient_dim)


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """A discrete subgroup of Q^n in canonical Hermite-form basis.

    The basis rows are the rational Hermite normal form of any generating
    set, so equal lattices have identical representations.  An empty basis
    encodes the zero lattice.
    """

    basis: tuple[Vec, ...]
    ambient_dim: int

    @staticmethod
    def generated_by(vectors: Iterable[Vec], ambient_dim: int) -> "Lattice":
        vecs = [v for v in vectors if not v.is_zero()]
        for v in vecs:
            if v.dim != ambient_dim:
                raise DimensionMismatchError("lattice vector of wrong dimension")
        if not vecs:
            return Lattice(basis=(), ambient_dim=ambient_dim)
        denom = lcm(*[e.denominator for v in vecs for e in v.entries])
        int_rows = [[int(e * denom) for e in v.entries] for v in vecs]
        reduced = hnf(int_rows)
        return Lattice(
            basis=tuple(Vec([Fraction(e, denom) for e in row]) for row in reduced),
            ambient_dim=ambient_dim,
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def span(self) -> Subspace:
        return Subspace.spanned_by(self.basis, self.ambient_dim)

    def contains(self, v: Vec) -> bool:
        if v.dim != self.ambient_dim:
            raise DimensionMismatchError("vector of wrong ambient dimension")
        if v.is_zero():
            return True
        if not self.basis:
            return False
        cols = Mat([[b.entries[i] for b in self.basis] for i in range(v.dim)])
        coords = solve(cols, v)
        return coords is not None and all(c.denominator == 1 for c in coords.entries)

    def intersect_subspace(self, s: Subspace) -> "Lattice":
        """The sublattice of lattice points lying inside the subspace s."""
        if s.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("subspace ambient dimension differs")
        if not self.basis:
            return self
        constraint = orthogonal_complement(s)
        if constraint.is_zero():
            return self
        rows = [
            [c.dot(b) for b in self.basis] for c in constraint.basis
        ]  # constraint on integer coefficients
        int_rows = _scale_rows_to_int(rows)
        kernel = integer_nullspace(int_rows)
        vecs = []
        for coeffs in kernel:
            total = Vec.zero(self.ambient_dim)
            for k, b in zip(coeffs, self.basis):
                total = total + b.scale(k)
            vecs.append(total)
        return Lattice.generated_by(vecs, self.ambient_dim)


def lattice_solve(l: Lattice, target: Vec, constraint: Subspace) -> Optional[Vec]:
    """Some x with x in target + l and x in constraint, or None.

    Decided exactly by integer linear algebra on the lattice basis (Smith
    normal form); absence of a solution is a definitive answer.
    """
    if target.dim != l.ambient_dim or constraint.ambient_dim != l.ambient_dim:
        raise DimensionMismatchError("ambient dimensions disagree")
    comp = orthogonal_complement(constraint)
    if comp.is_zero():
        return target
    if not l.basis:
        in_constraint = all(c.dot(target) == 0 for c in comp.basis)
        return target if in_constraint else None
    rows = [[c.dot(b) for b in l.basis] for c in comp.basis]
    rhs = [-c.dot(target) for c in comp.basis]
    int_rows, int_rhs = _scale_rows_to_int(rows, rhs)
    coeffs = solve_integer(int_rows, int_rhs)
    if coeffs is None:
        return None
    x = target
    for k, b in zip(coeffs, l.basis):
        x = x + b.scale(k)
    return x
