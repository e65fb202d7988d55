"""Euclidean isometries and crystallographic groups.

A group is entered by generators only.  The finite point group and the
translation lattice are derived eagerly at construction: the point group by
closure (bounded, so non-crystallographic input is rejected), the lattice
from the pure-translation Schreier generators of the point-group coset
transversal -- words of length at most twice the point-group order, which
provably generate the full translation subgroup.  Membership, normality,
span, completeness and quotient-type detection are all exact decision
procedures on top of that data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    ConsistencyError,
    DimensionMismatchError,
    NotASpaceGroupError,
    NotCompleteError,
    NotInvariantError,
    NotMemberError,
    NotNormalError,
)
from .exactlin import (
    Lattice,
    Mat,
    Subspace,
    Vec,
    lattice_solve,
    orthogonal_complement,
    solve,
)

POINT_GROUP_BOUND = 48


@dataclass(frozen=True)
class Isometry:
    """An isometry a + A of E^n with exact rational a and orthogonal A."""

    translation: Vec
    linear: Mat

    def __post_init__(self) -> None:
        if not self.linear.is_square() or self.linear.nrows != self.translation.dim:
            raise DimensionMismatchError("translation and linear part disagree")
        if not self.linear.is_orthogonal():
            raise ValueError("linear part is not orthogonal")

    @property
    def dim(self) -> int:
        return self.translation.dim

    def __mul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def inverse(self) -> "Isometry":
        inv = self.linear.transpose()
        return Isometry(-inv.apply(self.translation), inv)

    def apply(self, x: Vec) -> Vec:
        return self.translation + self.linear.apply(x)

    def is_translation(self) -> bool:
        return self.linear == Mat.identity(self.dim)

    def is_identity(self) -> bool:
        return self.is_translation() and self.translation.is_zero()

    @staticmethod
    def identity(dim: int) -> "Isometry":
        return Isometry(Vec.zero(dim), Mat.identity(dim))

    @staticmethod
    def from_translation(v: Vec) -> "Isometry":
        return Isometry(v, Mat.identity(v.dim))


def compose(f: Isometry, g: Isometry) -> Isometry:
    """(a + A)(b + B) = (a + A b) + A B."""
    if f.dim != g.dim:
        raise DimensionMismatchError("isometries of different dimensions")
    return Isometry(f.translation + f.linear.apply(g.translation), f.linear @ g.linear)


class QuotientKind(enum.Enum):
    INFINITE_CYCLIC = "InfiniteCyclic"
    INFINITE_DIHEDRAL = "InfiniteDihedral"
    OTHER = "Other"


class OneOrbifoldKind(enum.Enum):
    CIRCLE = "Circle"
    INTERVAL = "Interval"


# ---------------------------------------------------------------------------
# Derived group data (point classes and translation lattice)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupData:
    """Coset data of a finitely generated group of rational isometries.

    ``point_classes`` maps each linear part occurring in the group to one
    representative element; ``lattice`` is the full subgroup of pure
    translations.  Together these decide membership exactly: a + A lies in
    the group iff A is a known linear part and a differs from the
    representative's translation by a lattice vector.
    """

    dim: int
    point_classes: dict
    lattice: Lattice

    def members(self, x: Isometry) -> bool:
        rep = self.point_classes.get(x.linear)
        if rep is None:
            return False
        return self.lattice.contains(x.translation - rep.translation)

    def same_group(self, other: "GroupData") -> bool:
        if self.dim != other.dim or self.lattice != other.lattice:
            return False
        if set(self.point_classes) != set(other.point_classes):
            return False
        return all(
            self.lattice.contains(
                rep.translation - other.point_classes[lin].translation
            )
            for lin, rep in self.point_classes.items()
        )

    def canonical_generators(self) -> tuple[Isometry, ...]:
        """Lattice basis translations plus one reduced representative per
        nonidentity linear part; equal groups yield equal tuples."""
        dim = self.dim
        gens = [Isometry.from_translation(b) for b in self.lattice.basis]
        for lin in sorted(self.point_classes, key=lambda m: m.rows):
            if lin == Mat.identity(dim):
                continue
            rep = self.point_classes[lin]
            gens.append(Isometry(self._reduce(rep.translation), lin))
        return tuple(gens)

    def _reduce(self, t: Vec) -> Vec:
        """Reduce a translation modulo the lattice (canonical residue)."""
        if self.lattice.is_zero():
            return t
        projected = self.lattice.span().project(t)
        coords = solve(
            Mat(
                [
                    [b.entries[i] for b in self.lattice.basis]
                    for i in range(self.dim)
                ]
            ),
            projected,
        )
        assert coords is not None
        out = t
        for c, b in zip(coords.entries, self.lattice.basis):
            out = out - b.scale(c.numerator // c.denominator)
        return out


def derive_group_data(
    dim: int,
    generators: Sequence[Isometry],
    point_bound: int = POINT_GROUP_BOUND,
) -> GroupData:
    """Close the generators' linear parts and extract the translation lattice.

    Raises NotASpaceGroupError if the linear-part closure exceeds the bound
    (non-crystallographic input, e.g. a rational rotation of infinite order).
    """
    for g in generators:
        if g.dim != dim:
            raise DimensionMismatchError("generator of wrong dimension")
    identity = Isometry.identity(dim)
    gens = list(generators) + [g.inverse() for g in generators]
    reps = {identity.linear: identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y.linear not in reps:
                if len(reps) >= point_bound:
                    raise NotASpaceGroupError(
                        f"point-group closure exceeds bound {point_bound}"
                    )
                reps[y.linear] = y
                frontier.append(y)
    translations = []
    for rep in reps.values():
        for g in gens:
            y = rep * g
            z = y * reps[y.linear].inverse()
            if not z.is_translation():
                raise ConsistencyError("Schreier element is not a translation")
            translations.append(z.translation)
    lattice = Lattice.generated_by(translations, dim)
    for lin in reps:
        for b in lattice.basis:
            if not lattice.contains(lin.apply(b)):
                raise ConsistencyError("translation lattice not point-group stable")
    return GroupData(dim=dim, point_classes=reps, lattice=lattice)


# ---------------------------------------------------------------------------
# Space groups and designated subgroups
# ---------------------------------------------------------------------------


class SpaceGroup:
    """A crystallographic group of E^n given by generators.

    Construction rejects input whose point-group closure exceeds the bound
    or whose translation lattice is not full rank (not cocompact).
    """

    def __init__(
        self,
        dim: int,
        generators: Iterable[Isometry],
        point_bound: int = POINT_GROUP_BOUND,
    ) -> None:
        self.dim = dim
        self.generators = tuple(generators)
        if not self.generators:
            raise NotASpaceGroupError("a space group needs at least one generator")
        self.data = derive_group_data(dim, self.generators, point_bound)
        if self.data.lattice.rank != dim:
            raise NotASpaceGroupError(
                f"translation lattice has rank {self.data.lattice.rank} < {dim}"
            )
        self.translation_lattice = self.data.lattice
        self.point_group = tuple(self.data.point_classes.keys())

    def contains(self, x: Isometry) -> bool:
        return self.data.members(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpaceGroup) and self.data.same_group(other.data)

    def __hash__(self) -> int:
        return hash((self.dim, self.translation_lattice, frozenset(self.point_group)))


class SubgroupDesignation:
    """A designated subgroup of a space group, given by member isometries."""

    def __init__(self, parent: SpaceGroup, generators: Iterable[Isometry]) -> None:
        self.parent = parent
        self.generators = tuple(generators)
        for g in self.generators:
            if not parent.contains(g):
                raise NotMemberError(f"designated generator {g} is not in the parent")
        self.data = derive_group_data(parent.dim, self.generators)

    @property
    def dim(self) -> int:
        return self.parent.dim

    def contains(self, x: Isometry) -> bool:
        return self.data.members(x)

    def is_trivial(self) -> bool:
        return self.data.lattice.is_zero() and len(self.data.point_classes) == 1

    def canonical_generators(self) -> tuple[Isometry, ...]:
        return self.data.canonical_generators()

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupDesignation) and self.data.same_group(
            other.data
        )

    def __hash__(self) -> int:
        return hash(self.canonical_generators())


def membership(g: SpaceGroup, x: Isometry) -> bool:
    """Exact membership test for a finitely generated crystallographic group."""
    if x.dim != g.dim:
        raise DimensionMismatchError("isometry of wrong dimension")
    return g.contains(x)


def is_normal(n: SubgroupDesignation) -> bool:
    """gamma nu gamma^-1 in N for parent generators (and inverses) gamma."""
    conjugators = list(n.parent.generators) + [
        g.inverse() for g in n.parent.generators
    ]
    for gamma in conjugators:
        for nu in n.generators:
            if not n.contains(gamma * nu * gamma.inverse()):
                return False
    return True


def span(n: SubgroupDesignation) -> Subspace:
    """The rational span of N's translation vectors.

    N's translation lattice suffices: for a normal subgroup the pure
    translations of N generate Span(N).
    """
    return n.data.lattice.span()


def fixes_pointwise(a: Mat, s: Subspace) -> bool:
    return all(a.apply(b) == b for b in s.basis)


def axis_subgroup(
    g: SpaceGroup, move: Subspace, fix: Subspace
) -> SubgroupDesignation:
    """The subgroup {a + A in g : a in move and fix <= Fix(A)}.

    Generators: a lattice basis of (translations inside move) plus, for
    each point-group element fixing ``fix`` pointwise, one member with
    translation inside move when the lattice coset admits one.
    """
    gens: list[Isometry] = []
    inner = g.translation_lattice.intersect_subspace(move)
    gens.extend(Isometry.from_translation(b) for b in inner.basis)
    identity = Mat.identity(g.dim)
    for lin, rep in g.data.point_classes.items():
        if lin == identity or not fixes_pointwise(lin, fix):
            continue
        a = lattice_solve(g.translation_lattice, rep.translation, move)
        if a is not None:
            gens.append(Isometry(a, lin))
    return SubgroupDesignation(g, gens)


def complete_subgroup(g: SpaceGroup, v: Subspace) -> SubgroupDesignation:
    """{a + A in g : a in V and V-perp <= Fix(A)} -- the completion of V."""
    return axis_subgroup(g, v, orthogonal_complement(v))


def is_complete(n: SubgroupDesignation) -> bool:
    """Whether N equals the full subgroup translating inside Span(N) and
    fixing its orthogonal complement pointwise."""
    if not is_normal(n):
        raise NotNormalError("completeness is only defined for normal subgroups")
    full = complete_subgroup(n.parent, span(n))
    return n.data.same_group(full.data)


def restrict(x: Isometry, s: Subspace) -> Isometry:
    """The isometry induced by x on s, in coordinates of s's canonical basis.

    The translation is orthogonally projected to s; the linear part is the
    restriction of x's linear part.  Raises NotInvariantError when s is not
    invariant.
    """
    if s.dim == 0:
        raise NotInvariantError("cannot restrict to the zero subspace")
    cols = []
    for b in s.basis:
        image = x.linear.apply(b)
        coords = s.coordinates(image)
        if coords is None:
            raise NotInvariantError("subspace not invariant under the linear part")
        cols.append(coords.entries)
    lin = Mat([[cols[j][i] for j in range(s.dim)] for i in range(s.dim)])
    proj = s.project(x.translation)
    t_coords = s.coordinates(proj)
    assert t_coords is not None
    return Isometry(t_coords, lin)


def quotient_kind(n: SubgroupDesignation) -> QuotientKind:
    """Type of Gamma/N acting on the orthogonal line: dihedral iff some
    generator restricts with linear part -1."""
    v = span(n)
    v_perp = orthogonal_complement(v)
    if v_perp.dim != 1:
        return QuotientKind.OTHER
    if not is_complete(n):
        raise NotCompleteError("quotient type requires a complete normal subgroup")
    for g in n.parent.generators:
        r = restrict(g, v_perp)
        if r.linear.rows[0][0] == -1:
            return QuotientKind.INFINITE_DIHEDRAL
    return QuotientKind.INFINITE_CYCLIC


def enumerate_ball(
    generators: Sequence[Isometry] | SpaceGroup | SubgroupDesignation,
    radius: int,
) -> list[Isometry]:
    """All products of at most ``radius`` generators and inverses, deduplicated.

    Brute-force oracle used by tests; not part of any decision procedure.
    """
    if isinstance(generators, (SpaceGroup, SubgroupDesignation)):
        gens = list(generators.generators)
        dim = generators.dim
    else:
        gens = list(generators)
        dim = gens[0].dim if gens else 1
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    identity = Isometry.identity(dim)
    seen = {identity}
    frontier = [identity]
    moves = gens + [g.inverse() for g in gens]
    for _ in range(radius):
        new_frontier = []
        for x in frontier:
            for g in moves:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new_frontier.append(y)
        frontier = new_frontier
    return list(seen)
