"""Graded quivers with quadratic monomial relations.

This is the shared representation for every endomorphism algebra in the
package: vertices (with optional alias labels and a shift tag), arrows
carrying integer degrees, and relations that are always of the form
"g after f is zero" for a composable arrow pair (f, g).  Vertex and
arrow names are structured tuples like ``("P-", 1, 0)`` or
``("x", 1, 2)``; :func:`label_str` renders them for reports.

Besides construction, the module computes path-space dimensions (the
Hom spaces of the algebra), checks whether a given vertex bijection is
an isomorphism of quivers with relations, and searches for one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import QuiverError

Label = tuple
ArrowName = tuple


def label_str(label) -> str:
    if isinstance(label, tuple):
        head, *rest = label
        return f"{head}({','.join(str(x) for x in rest)})" if rest else str(head)
    return str(label)


@dataclass(frozen=True)
class Arrow:
    name: ArrowName
    source: int
    target: int
    degree: int = 0


class GradedQuiver:
    def __init__(self) -> None:
        self._label_to_id: dict[Label, int] = {}
        self.vertex_labels: list[tuple[Label, ...]] = []
        self.vertex_shifts: list[int] = []
        self.arrows: list[Arrow] = []
        self._arrow_by_name: dict[ArrowName, Arrow] = {}
        self.relations: set[tuple[ArrowName, ArrowName]] = set()

    # -- construction ---------------------------------------------------

    def add_vertex(self, *labels: Label, shift: int = 0) -> Label:
        """Add one vertex carrying all the given labels (aliases for the
        same object); returns the primary (first) label."""
        if not labels:
            raise QuiverError("vertex needs at least one label")
        for lab in labels:
            if lab in self._label_to_id:
                raise QuiverError(f"duplicate vertex label {label_str(lab)}")
        vid = len(self.vertex_labels)
        for lab in labels:
            self._label_to_id[lab] = vid
        self.vertex_labels.append(tuple(labels))
        self.vertex_shifts.append(shift)
        return labels[0]

    def vertex_id(self, label: Label) -> int:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise QuiverError(f"unknown vertex {label_str(label)}") from None

    def primary_label(self, vid: int) -> Label:
        return self.vertex_labels[vid][0]

    def shift_of(self, label: Label) -> int:
        return self.vertex_shifts[self.vertex_id(label)]

    def add_arrow(
        self, name: ArrowName, source: Label, target: Label, degree: int = 0
    ) -> Arrow:
        if name in self._arrow_by_name:
            raise QuiverError(f"duplicate arrow {label_str(name)}")
        ar = Arrow(name, self.vertex_id(source), self.vertex_id(target), degree)
        self.arrows.append(ar)
        self._arrow_by_name[name] = ar
        return ar

    def arrow(self, name: ArrowName) -> Arrow:
        try:
            return self._arrow_by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {label_str(name)}") from None

    def add_relation(self, f: ArrowName, g: ArrowName) -> None:
        """Declare g∘f = 0.  The pair must be composable."""
        fa, ga = self.arrow(f), self.arrow(g)
        if fa.target != ga.source:
            raise QuiverError(
                f"relation pair not composable: {label_str(f)} ends at "
                f"{label_str(self.primary_label(fa.target))}, {label_str(g)} "
                f"starts at {label_str(self.primary_label(ga.source))}"
            )
        self.relations.add((f, g))

    # -- structure ------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    def arrows_from(self, vid: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vid]

    def arrows_into(self, vid: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vid]

    def topological_order(self) -> list[int]:
        """Vertex ids in topological order; raises on a directed cycle."""
        indeg = [0] * self.num_vertices
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in range(self.num_vertices) if indeg[v] == 0]
        order = []
        while queue:
            v = queue.pop()
            order.append(v)
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        if len(order) != self.num_vertices:
            raise QuiverError("quiver has a directed cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except QuiverError:
            return False

    # -- paths ----------------------------------------------------------

    def path_is_zero(self, names: tuple[ArrowName, ...]) -> bool:
        """True when a composable arrow sequence dies in the algebra,
        i.e. some adjacent pair is a declared relation."""
        return any(pair in self.relations for pair in zip(names, names[1:]))

    def path_dims(self) -> "HomTable":
        """All nonzero paths between all vertex pairs, organized by
        degree.  Dynamic programming over a topological order with the
        last arrow as state, so forbidden pairs prune exactly.  Rejects
        cyclic quivers, whose path spaces may be infinite."""
        order = self.topological_order()
        out_arrows = [self.arrows_from(v) for v in range(self.num_vertices)]
        position = {v: i for i, v in enumerate(order)}
        paths: dict[tuple[Label, Label, int], list[tuple[ArrowName, ...]]] = {}
        for start in range(self.num_vertices):
            # state[v] maps last-arrow name (None at the start) to the
            # relation-free paths from start to v ending with it
            state: dict[int, dict] = {start: {None: [()]}}
            for v in order[position[start]:]:
                if v not in state:
                    continue
                for last, plist in state[v].items():
                    for ar in out_arrows[v]:
                        if last is not None and (last, ar.name) in self.relations:
                            continue
                        bucket = state.setdefault(ar.target, {}).setdefault(
                            ar.name, []
                        )
                        bucket.extend(p + (ar.name,) for p in plist)
            s_lab = self.primary_label(start)
            for v, by_last in state.items():
                t_lab = self.primary_label(v)
                for plist in by_last.values():
                    for p in plist:
                        deg = sum(self.arrow(n).degree for n in p)
                        paths.setdefault((s_lab, t_lab, deg), []).append(p)
        return HomTable(paths)

    def paths_between(
        self, source: Label, target: Label
    ) -> list[tuple[ArrowName, ...]]:
        """Nonzero paths source -> target by depth-first search; usable
        on any quiver whose nonzero paths are finite in number."""
        s, t = self.vertex_id(source), self.vertex_id(target)
        found = []
        limit = len(self.arrows) * max(1, self.num_vertices) + 1

        def extend(v: int, names: tuple[ArrowName, ...]) -> None:
            if len(names) > limit:
                raise QuiverError("path space appears infinite")
            if v == t:
                found.append(names)
            for ar in self.arrows_from(v):
                if names and (names[-1], ar.name) in self.relations:
                    continue
                extend(ar.target, names + (ar.name,))

        extend(s, ())
        return found

    # -- export ---------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "vertices": [
                {"labels": [list(l) for l in labs], "shift": sh}
                for labs, sh in zip(self.vertex_labels, self.vertex_shifts)
            ],
            "arrows": [
                {
                    "name": list(a.name),
                    "source": list(self.primary_label(a.source)),
                    "target": list(self.primary_label(a.target)),
                    "degree": a.degree,
                }
                for a in self.arrows
            ],
            "relations": sorted(
                [list(f), list(g)] for f, g in self.relations
            ),
        }

    @classmethod
    def from_json_obj(cls, data: dict) -> "GradedQuiver":
        q = cls()
        for v in data["vertices"]:
            q.add_vertex(*(tuple(l) for l in v["labels"]), shift=v["shift"])
        for a in data["arrows"]:
            q.add_arrow(
                tuple(a["name"]),
                tuple(a["source"]),
                tuple(a["target"]),
                a.get("degree", 0),
            )
        for f, g in data["relations"]:
            q.add_relation(tuple(f), tuple(g))
        return q

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for labs, sh in zip(self.vertex_labels, self.vertex_shifts):
            name = label_str(labs[0])
            extra = "".join(" = " + label_str(l) for l in labs[1:])
            tag = f"{name}{extra}" + (f" [{sh}]" if sh else "")
            lines.append(f'  "{name}" [label="{tag}"];')
        for a in self.arrows:
            s = label_str(self.primary_label(a.source))
            t = label_str(self.primary_label(a.target))
            deg = f" ({a.degree})" if a.degree else ""
            lines.append(
                f'  "{s}" -> "{t}" [label="{label_str(a.name)}{deg}"];'
            )
        for f, g in sorted(self.relations):
            lines.append(
                f"  // relation: {label_str(g)} o {label_str(f)} = 0"
            )
        lines.append("}")
        return "\n".join(lines)


@dataclass
class HomTable:
    """Path bases keyed by (source label, target label, degree)."""

    paths: dict[tuple[Label, Label, int], list[tuple[ArrowName, ...]]]

    @property
    def dims(self) -> dict[tuple[Label, Label, int], int]:
        return {k: len(v) for k, v in self.paths.items()}

    def dim(self, source: Label, target: Label, degree: int = 0) -> int:
        return len(self.paths.get((source, target, degree), []))

    def between(self, source: Label, target: Label) -> dict[int, int]:
        out = {}
        for (s, t, d), plist in self.paths.items():
            if s == source and t == target and plist:
                out[d] = len(plist)
        return out

    def total(self, source: Label, target: Label) -> int:
        return sum(self.between(source, target).values())


@dataclass
class MatchReport:
    ok: bool
    diffs: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _resolve_vmap(
    q1: GradedQuiver, q2: GradedQuiver, vmap: dict
) -> tuple[dict[int, int] | None, list[str]]:
    diffs = []
    id_map: dict[int, int] = {}
    for l1, l2 in vmap.items():
        v1, v2 = q1.vertex_id(l1), q2.vertex_id(l2)
        if id_map.get(v1, v2) != v2:
            diffs.append(
                f"vertex {label_str(l1)} mapped to two distinct targets"
            )
        id_map[v1] = v2
    if len(id_map) != q1.num_vertices:
        diffs.append(
            f"map covers {len(id_map)} of {q1.num_vertices} vertices"
        )
    if len(set(id_map.values())) != len(id_map):
        diffs.append("map is not injective on vertices")
    if q1.num_vertices != q2.num_vertices:
        diffs.append(
            f"vertex counts differ: {q1.num_vertices} vs {q2.num_vertices}"
        )
    return (None, diffs) if diffs else (id_map, [])


def map_equals(q1: GradedQuiver, q2: GradedQuiver, vmap: dict) -> MatchReport:
    """Check that a vertex bijection is an isomorphism of quivers with
    relations: arrows must match as multisets per (source, target,
    degree), and some arrow matching within those multisets must carry
    the relation set of one side exactly onto the other.

    ``vmap`` maps q1 vertex labels (any alias) to q2 vertex labels.  The
    report lists the first structural mismatches found.
    """
    id_map, diffs = _resolve_vmap(q1, q2, vmap)
    if id_map is None:
        return MatchReport(False, diffs)

    groups1: dict[tuple[int, int, int], list[Arrow]] = {}
    for a in q1.arrows:
        key = (id_map[a.source], id_map[a.target], a.degree)
        groups1.setdefault(key, []).append(a)
    groups2: dict[tuple[int, int, int], list[Arrow]] = {}
    for a in q2.arrows:
        groups2.setdefault((a.source, a.target, a.degree), []).append(a)

    for key, g1 in groups1.items():
        g2 = groups2.get(key, [])
        if len(g1) != len(g2):
            src, tgt, deg = key
            diffs.append(
                f"{len(g1)} vs {len(g2)} arrows "
                f"{label_str(q2.primary_label(src))} -> "
                f"{label_str(q2.primary_label(tgt))} at degree {deg} "
                f"(left: {', '.join(label_str(a.name) for a in g1)})"
            )
    for key, g2 in groups2.items():
        if key not in groups1:
            src, tgt, deg = key
            diffs.append(
                f"extra arrows {', '.join(label_str(a.name) for a in g2)} "
                f"on right at degree {deg}"
            )
    if diffs:
        return MatchReport(False, diffs)
    if len(q1.relations) != len(q2.relations):
        diffs.append(
            f"relation counts differ: {len(q1.relations)} vs "
            f"{len(q2.relations)}"
        )

    keys = list(groups1)
    group_of1 = {a.name: i for i, key in enumerate(keys) for a in groups1[key]}
    group_of2 = {a.name: i for i, key in enumerate(keys) for a in groups2[key]}

    def relations_match(arrow_map: dict, done: set[int]) -> bool:
        inv = {v: k for k, v in arrow_map.items()}
        for f, g in q1.relations:
            if group_of1[f] in done and group_of1[g] in done:
                if (arrow_map[f], arrow_map[g]) not in q2.relations:
                    return False
        for f, g in q2.relations:
            if group_of2.get(f) in done and group_of2.get(g) in done:
                if (inv[f], inv[g]) not in q1.relations:
                    return False
        return True

    def search(k: int, arrow_map: dict, done: set[int]) -> dict | None:
        if k == len(keys):
            return dict(arrow_map)
        g1, g2 = groups1[keys[k]], groups2[keys[k]]
        for perm in itertools.permutations(g2):
            for a1, a2 in zip(g1, perm):
                arrow_map[a1.name] = a2.name
            done.add(k)
            if relations_match(arrow_map, done):
                result = search(k + 1, arrow_map, done)
                if result is not None:
                    return result
            done.discard(k)
            for a1 in g1:
                del arrow_map[a1.name]
        return None

    if not diffs and search(0, {}, set()) is not None:
        return MatchReport(True)

    # No arrow matching carries the relations across.  Report against
    # the order-preserving matching so the diff names concrete pairs.
    canonical = {
        a1.name: a2.name
        for key in keys
        for a1, a2 in zip(groups1[key], groups2[key])
    }
    inv = {v: k for k, v in canonical.items()}
    for f, g in sorted(q1.relations):
        if (canonical[f], canonical[g]) not in q2.relations:
            diffs.append(
                f"relation {label_str(g)} o {label_str(f)} = 0 has no "
                f"image on the right"
            )
    for f, g in sorted(q2.relations):
        if (inv[f], inv[g]) not in q1.relations:
            diffs.append(
                f"right relation {label_str(g)} o {label_str(f)} = 0 has "
                f"no preimage"
            )
    if not diffs:
        diffs.append("no arrow matching transports the relation set")
    return MatchReport(False, diffs)


def _refine_colors(q: GradedQuiver) -> list[int]:
    colors = [0] * q.num_vertices
    outs = [[(a.degree, a.target) for a in q.arrows_from(v)]
            for v in range(q.num_vertices)]
    ins = [[(a.degree, a.source) for a in q.arrows_into(v)]
           for v in range(q.num_vertices)]
    while True:
        sigs = []
        for v in range(q.num_vertices):
            sigs.append(
                (
                    colors[v],
                    tuple(sorted((d, colors[t]) for d, t in outs[v])),
                    tuple(sorted((d, colors[s]) for d, s in ins[v])),
                )
            )
        canon = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [canon[sig] for sig in sigs]
        if new == colors:
            return colors
        colors = new


def find_isomorphism(q1: GradedQuiver, q2: GradedQuiver) -> dict | None:
    """Search for a vertex bijection under which map_equals holds.

    Color refinement narrows the candidates, then backtracking with
    pairwise arrow-multiset pruning; the witness is validated by
    map_equals before being returned.  Exhaustive at the sizes this
    package sweeps, so None means non-isomorphic.
    """
    if (
        q1.num_vertices != q2.num_vertices
        or len(q1.arrows) != len(q2.arrows)
        or len(q1.relations) != len(q2.relations)
    ):
        return None
    c1, c2 = _refine_colors(q1), _refine_colors(q2)
    if sorted(c1) != sorted(c2):
        return None
    candidates = {
        v: [w for w in range(q2.num_vertices) if c2[w] == c1[v]]
        for v in range(q1.num_vertices)
    }
    order = sorted(range(q1.num_vertices), key=lambda v: len(candidates[v]))

    def profile(q: GradedQuiver, u: int, v: int) -> tuple:
        return tuple(
            sorted(
                a.degree for a in q.arrows if a.source == u and a.target == v
            )
        )

    assignment: dict[int, int] = {}
    used: set[int] = set()
    found: list[dict] = []

    def place(k: int) -> bool:
        if k == len(order):
            # Vertex-level match; confirm arrows and relations transport.
            vmap = {
                q1.primary_label(v): q2.primary_label(w)
                for v, w in assignment.items()
            }
            if map_equals(q1, q2, vmap):
                found.append(vmap)
                return True
            return False
        v = order[k]
        for w in candidates[v]:
            if w in used:
                continue
            if all(
                profile(q1, u, v) == profile(q2, assignment[u], w)
                and profile(q1, v, u) == profile(q2, w, assignment[u])
                for u in assignment
            ):
                assignment[v] = w
                used.add(w)
                if place(k + 1):
                    return True
                del assignment[v]
                used.discard(w)
        return False

    return found[0] if place(0) else None
