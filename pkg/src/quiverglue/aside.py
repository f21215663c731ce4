"""Generator quivers of the glued surfaces.

One component of rank pair (r_minus, r_plus) contributes two arrow
chains P-(i,0) -> ... -> P-(i,r_minus) and P+(i,0) -> ... ->
P+(i,r_plus) sharing their first and last vertices.  Each junction
layer adds source vertices S(i,j) with two outgoing arrows: a(i,j) into
the plus chain of component i at position j, and b(i,j) into the minus
chain of the next component at position r_i - 1 - sigma_i(j).  The only
relations kill the composites y∘a and x∘b.  All arrows sit in degree 0.
"""

from __future__ import annotations

from .errors import FalsificationError
from .gluing import LINEAR, GluingSpec
from .quiver import GradedQuiver


def build_aside(g: GluingSpec) -> GradedQuiver:
    """The generator quiver of a gluing.  The input spec is kept on the
    result as ``q.gluing`` for downstream constructions."""
    q = GradedQuiver()
    for i in g.components():
        rm, rp = g.minus_rank(i), g.plus_rank(i)
        q.add_vertex(("P-", i, 0), ("P+", i, 0))
        for j in range(1, rm):
            q.add_vertex(("P-", i, j))
        for j in range(1, rp):
            q.add_vertex(("P+", i, j))
        q.add_vertex(("P-", i, rm), ("P+", i, rp))
        for j in range(rm):
            q.add_arrow(("x", i, j), ("P-", i, j), ("P-", i, j + 1))
        for j in range(rp):
            q.add_arrow(("y", i, j), ("P+", i, j), ("P+", i, j + 1))
    for i in g.junctions():
        r = g.junction_rank(i)
        sigma = g.perm(i)
        nxt = g.next_component(i)
        for j in range(r):
            q.add_vertex(("S", i, j))
            q.add_arrow(("a", i, j), ("S", i, j), ("P+", i, j))
            q.add_arrow(("b", i, j), ("S", i, j), ("P-", nxt, r - 1 - sigma(j)))
            q.add_relation(("a", i, j), ("y", i, j))
            q.add_relation(("b", i, j), ("x", nxt, r - 1 - sigma(j)))
    if not q.is_acyclic():
        raise FalsificationError("generator quiver came out cyclic")
    q.gluing = g
    return q


def object_count(g: GluingSpec) -> int:
    """Closed-form generator count: r_0 + 3*sum(interior) + r_n for a
    linear gluing, 3*sum(ranks) for a circular one."""
    if g.shape == LINEAR:
        return g.ranks[0] + 3 * sum(g.ranks[1:-1]) + g.ranks[-1]
    return 3 * sum(g.ranks)
