"""Exceptional-collection quivers of stacky chains and rings.

Component i carries the collection based at a window origin (j_i, m_i):
an x-row P(i, j_i .. j_i+r_minus, m_i) and a y-row P(i, j_i, m_i ..
m_i+r_plus) that share their first vertex, with the far endpoints
identified into a single sink.  Node i contributes twist classes
S(i, c), c mod r_i, at shift -1, each with exactly two outgoing arrows:

    b(i, j): S(i, -j_{i+1} - j - 1) -> x-row slot j of component i+1
    a(i, m): S(i, -k_i (m_i + m + 1)) -> y-row slot m of component i

Relations are x∘b = 0 and y∘a = 0 at the matching slots.  Row arrows
are labeled by slot, so x(i, t) leaves x-row slot t regardless of the
window origin; with the default base (0, -1) slots and absolute
coordinates coincide.
"""

from __future__ import annotations

from .errors import FalsificationError, SpecError
from .gluing import CHAIN, StackyCurveSpec
from .quiver import GradedQuiver

DEFAULT_BASE = (0, -1)


def _component_ranks(c: StackyCurveSpec, i: int, n: int) -> tuple[int, int]:
    if c.shape == CHAIN:
        return c.ranks[i - 1], c.ranks[i]
    return c.ranks[(i - 2) % n], c.ranks[i - 1]


def build_bside(
    c: StackyCurveSpec,
    bases: dict[int, tuple[int, int]] | None = None,
) -> GradedQuiver:
    """Quiver of the exceptional collection of a chain or ring, over a
    per-component choice of window origin (default (0, -1) for all).
    """
    n = len(c.ranks) - 1 if c.shape == CHAIN else len(c.ranks)
    base = {i: DEFAULT_BASE for i in range(1, n + 1)}
    if bases:
        unknown = set(bases) - set(base)
        if unknown:
            raise SpecError(f"no components {sorted(unknown)}")
        base.update(bases)

    q = GradedQuiver()
    for i in range(1, n + 1):
        rm, rp = _component_ranks(c, i, n)
        ji, mi = base[i]
        q.add_vertex(("P", i, ji, mi))
        for t in range(1, rm):
            q.add_vertex(("P", i, ji + t, mi))
        for s in range(1, rp):
            q.add_vertex(("P", i, ji, mi + s))
        q.add_vertex(("P", i, ji + rm, mi), ("P", i, ji, mi + rp))
        for t in range(rm):
            q.add_arrow(("x", i, t), ("P", i, ji + t, mi), ("P", i, ji + t + 1, mi))
        for s in range(rp):
            q.add_arrow(("y", i, s), ("P", i, ji, mi + s), ("P", i, ji, mi + s + 1))

    nodes = range(1, n) if c.shape == CHAIN else range(1, n + 1)
    for i in nodes:
        r = c.ranks[i - 1] if c.shape != CHAIN else c.ranks[i]
        k = c.twists[i - 1]
        nxt = i % n + 1 if c.shape != CHAIN else i + 1
        jn, _ = base[nxt]
        ji, mi = base[i]
        for cls in range(r):
            q.add_vertex(("S", i, cls), shift=-1)
        for j in range(r):
            q.add_arrow(
                ("b", i, j), ("S", i, (-jn - j - 1) % r), ("P", nxt, jn + j, base[nxt][1])
            )
            q.add_relation(("b", i, j), ("x", nxt, j))
        for m in range(r):
            q.add_arrow(
                ("a", i, m), ("S", i, (-k * (mi + m + 1)) % r), ("P", i, ji, mi + m)
            )
            q.add_relation(("a", i, m), ("y", i, m))
    if not q.is_acyclic():
        raise FalsificationError("exceptional-collection quiver came out cyclic")
    q.curve = c
    return q
