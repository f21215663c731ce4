"""Gluing data for surfaces built from marked annuli, the matching
curve-side data (chains and rings of stacky rational curves), and the
closed-form topology predictions that the surface oracle is checked
against.

Two shapes exist on each side.  A *linear* gluing has components
1..n with ranks ``r_0..r_n``; component i is an annulus whose two
boundary circles carry ``r_{i-1}`` and ``r_i`` marked points, and
junction i (for 1 <= i <= n-1) glues the plus side of component i to
the minus side of component i+1 through a permutation of its r_i
strips.  A *circular* gluing has ranks ``r_1..r_n``, every component
glued to the next cyclically, with n junctions.  On the curve side the
same numbers appear as a chain or ring of rational curves with stacky
points of the given orders and a twist k_i at each node, gcd(k_i, r_i)
= 1; the node permutation is x |-> -k_i * x.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import FalsificationError, SpecError
from .perms import Permutation, from_twist, tau

LINEAR = "linear"
CIRCULAR = "circular"
CHAIN = "chain"
RING = "ring"


@dataclass(frozen=True)
class SurfaceTopology:
    """Genus, Euler characteristic, and the multiset of boundary mark
    counts of a compact oriented surface with marked boundary."""

    genus: int
    boundary_marks: tuple[int, ...]
    euler_characteristic: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "boundary_marks", tuple(sorted(self.boundary_marks))
        )
        expected = 2 - 2 * self.genus - len(self.boundary_marks)
        if expected != self.euler_characteristic:
            raise SpecError(
                f"inconsistent topology: genus {self.genus} with "
                f"{len(self.boundary_marks)} boundary components forces "
                f"chi = {expected}, got {self.euler_characteristic}"
            )

    @property
    def num_boundary(self) -> int:
        return len(self.boundary_marks)

    @property
    def num_marks(self) -> int:
        return sum(self.boundary_marks)

    @property
    def k0_rank(self) -> int:
        """Rank of the expected Grothendieck group: one generator per
        mark minus the Euler characteristic."""
        return self.num_marks - self.euler_characteristic


@dataclass(frozen=True)
class GluingSpec:
    """Combinatorial gluing data for a surface assembled from annuli.

    ``perms[i]`` is the strip permutation at junction i+1 and must have
    degree equal to the rank of that junction.
    """

    shape: str
    ranks: tuple[int, ...]
    perms: tuple[Permutation, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "perms", tuple(self.perms))
        if self.shape not in (LINEAR, CIRCULAR):
            raise SpecError(f"unknown shape {self.shape!r}")
        if any(r < 1 for r in self.ranks):
            raise SpecError("ranks must be positive")
        if self.shape == LINEAR:
            if len(self.ranks) < 2:
                raise SpecError("a linear gluing needs at least two ranks")
            expected = len(self.ranks) - 2
        else:
            if len(self.ranks) < 1:
                raise SpecError("a circular gluing needs at least one rank")
            expected = len(self.ranks)
        if len(self.perms) != expected:
            raise SpecError(
                f"{self.shape} gluing with ranks {self.ranks} needs "
                f"{expected} permutations, got {len(self.perms)}"
            )
        for i, p in zip(self.junctions(), self.perms):
            if p.degree != self.junction_rank(i):
                raise SpecError(
                    f"junction {i} has rank {self.junction_rank(i)} but "
                    f"its permutation has degree {p.degree}"
                )

    @property
    def n_components(self) -> int:
        if self.shape == LINEAR:
            return len(self.ranks) - 1
        return len(self.ranks)

    def components(self) -> range:
        return range(1, self.n_components + 1)

    def junctions(self) -> range:
        if self.shape == LINEAR:
            return range(1, self.n_components)
        return range(1, self.n_components + 1)

    def minus_rank(self, i: int) -> int:
        """Mark count on the minus boundary circle of component i."""
        if self.shape == LINEAR:
            return self.ranks[i - 1]
        return self.ranks[(i - 2) % self.n_components]

    def plus_rank(self, i: int) -> int:
        if self.shape == LINEAR:
            return self.ranks[i]
        return self.ranks[i - 1]

    def junction_rank(self, i: int) -> int:
        return self.plus_rank(i)

    def perm(self, i: int) -> Permutation:
        return self.perms[i - 1]

    def next_component(self, i: int) -> int:
        if self.shape == CIRCULAR:
            return i % self.n_components + 1
        return i + 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "shape": self.shape,
                "ranks": list(self.ranks),
                "perms": [list(p.image) for p in self.perms],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GluingSpec":
        data = json.loads(text)
        try:
            return cls(
                shape=data["shape"],
                ranks=tuple(data["ranks"]),
                perms=tuple(Permutation(tuple(im)) for im in data["perms"]),
            )
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad gluing data: {exc}") from exc


@dataclass(frozen=True)
class StackyCurveSpec:
    """A chain or ring of rational curves with one stacky point of order
    ``ranks[i]`` per component and twist ``twists[i]`` at node i.

    A chain with ranks ``r_0..r_n`` has n-1 nodes (the two end ranks are
    untwisted); a ring with ranks ``r_1..r_n`` has n nodes.  Every twist
    must be a unit modulo the rank of its node.
    """

    shape: str
    ranks: tuple[int, ...]
    twists: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.shape not in (CHAIN, RING):
            raise SpecError(f"unknown shape {self.shape!r}")
        if any(r < 1 for r in self.ranks):
            raise SpecError("ranks must be positive")
        if self.shape == CHAIN:
            if len(self.ranks) < 2:
                raise SpecError("a chain needs at least two ranks")
            expected = len(self.ranks) - 2
        else:
            if len(self.ranks) < 1:
                raise SpecError("a ring needs at least one rank")
            expected = len(self.ranks)
        if len(self.twists) != expected:
            raise SpecError(
                f"{self.shape} with ranks {self.ranks} needs {expected} "
                f"twists, got {len(self.twists)}"
            )
        for i, (k, r) in enumerate(zip(self.twists, self.node_ranks()), 1):
            if math.gcd(k, r) != 1:
                raise SpecError(f"twist {k} at node {i} is not a unit mod {r}")

    def node_ranks(self) -> tuple[int, ...]:
        if self.shape == CHAIN:
            return self.ranks[1:-1]
        return self.ranks

    def to_json(self) -> str:
        return json.dumps(
            {
                "shape": self.shape,
                "ranks": list(self.ranks),
                "twists": list(self.twists),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "StackyCurveSpec":
        data = json.loads(text)
        try:
            return cls(
                shape=data["shape"],
                ranks=tuple(data["ranks"]),
                twists=tuple(data["twists"]),
            )
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad curve data: {exc}") from exc


def from_curve(curve: StackyCurveSpec) -> GluingSpec:
    """The gluing mirror to a stacky curve: twist k at a node of rank r
    becomes the strip permutation x |-> -k*x mod r."""
    shape = LINEAR if curve.shape == CHAIN else CIRCULAR
    perms = tuple(
        from_twist(k, r) for k, r in zip(curve.twists, curve.node_ranks())
    )
    return GluingSpec(shape=shape, ranks=curve.ranks, perms=perms)


def predicted_topology(g: GluingSpec) -> SurfaceTopology:
    """Topology of the glued surface, read off from commutators.

    Each junction contributes -r_i to the Euler characteristic.  Its
    boundary circles correspond to the cycles of [sigma_i, tau]; a cycle
    of length l yields a circle with 2l marks.  A linear gluing keeps
    two unglued circles with r_0 and r_n marks.
    """
    boundary: list[int] = []
    chi = 0
    for i in g.junctions():
        r = g.junction_rank(i)
        chi -= r
        comm = g.perm(i).commutator(tau(r))
        boundary.extend(2 * l for l in comm.cycle_decomposition().lengths)
    if g.shape == LINEAR:
        boundary.append(g.ranks[0])
        boundary.append(g.ranks[-1])
    genus2 = 2 - len(boundary) - chi
    if genus2 % 2:
        # Commutators are even permutations, so this cannot happen.
        raise FalsificationError(f"odd 2g = {genus2} for {g}")
    return SurfaceTopology(
        genus=genus2 // 2,
        boundary_marks=tuple(boundary),
        euler_characteristic=chi,
    )


def predicted_topology_curve(curve: StackyCurveSpec) -> SurfaceTopology:
    """Topology of the mirror surface of a stacky curve, in closed form.

    Node i of rank r with twist k splits into p = gcd(k+1, r) boundary
    circles of 2r/p marks each; the genus is half the total rank defect
    sum(r_i - p_i), plus one for a ring.
    """
    boundary: list[int] = []
    defect = 0
    for k, r in zip(curve.twists, curve.node_ranks()):
        p = math.gcd(k + 1, r)
        defect += r - p
        boundary.extend([2 * (r // p)] * p)
    if curve.shape == CHAIN:
        boundary.append(curve.ranks[0])
        boundary.append(curve.ranks[-1])
        genus = defect // 2
    else:
        genus = 1 + defect // 2
    return SurfaceTopology(
        genus=genus,
        boundary_marks=tuple(boundary),
        euler_characteristic=-sum(curve.node_ranks()),
    )
