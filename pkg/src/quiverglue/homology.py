"""Twisted complexes over the constructed path algebras, Hom-complex
cohomology by exact rational linear algebra, the localization objects
that delete a marked point, and their identification as thin modules.

Conventions, fixed once and used everywhere:

* A twisted complex lists summands (vertex, shift) with the shift
  decreasing along the differential; the entry from list position b to
  position a (b < a) is a rational combination of quiver paths of
  degree 1 + shift_a - shift_b, so with degree-0 arrows a path entry
  drops the shift by exactly one.  delta^2 must vanish modulo the
  quiver's relations.
* A Hom-complex basis element is (source summand, target summand,
  nonzero path); its degree is the path degree plus shift(source) minus
  shift(target).  The differential is D(f) = delta_Y∘f - (-1)^|f|
  f∘delta_X.  The mirrored sign choice (available as
  convention="flipped") also squares to zero and yields the same
  dimensions; tests exercise both.
* Hom(P(v), E) for a projective P(v) is the module value at v; arrows
  act by precomposition, so the action of an arrow u -> w carries the
  value at w to the value at u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FalsificationError, SpecError
from .gluing import LINEAR, GluingSpec
from .linalg import kernel_basis, rank, solve
from .quiver import ArrowName, GradedQuiver, Label

GradedDims = dict[int, int]

Path = tuple  # of ArrowName
Entry = list[tuple[Fraction, Path]]


def _paths(q: GradedQuiver, u: Label, v: Label) -> tuple[Path, ...]:
    cache = getattr(q, "_paths_cache", None)
    if cache is None:
        cache = q._paths_cache = {}
    key = (q.vertex_id(u), q.vertex_id(v))
    if key not in cache:
        cache[key] = tuple(q.paths_between(u, v))
    return cache[key]


def _path_degree(q: GradedQuiver, p: Path) -> int:
    return sum(q.arrow(name).degree for name in p)


@dataclass
class TwistedComplex:
    """A formal shifted sum of quiver vertices with a strictly
    triangular differential; validated on construction."""

    quiver: GradedQuiver
    summands: tuple[tuple[Label, int], ...]
    diff: dict[tuple[int, int], Entry] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.summands = tuple((lab, int(n)) for lab, n in self.summands)
        q = self.quiver
        for lab, _ in self.summands:
            q.vertex_id(lab)
        for (a, b), entry in self.diff.items():
            if not 0 <= b < a < len(self.summands):
                raise SpecError(f"differential entry {a}<-{b} is not forward")
            va, na = self.summands[a]
            vb, nb = self.summands[b]
            for _, p in entry:
                if self._endpoints(p, vb) != q.vertex_id(va):
                    raise SpecError(f"entry {a}<-{b}: path does not connect")
                if q.path_is_zero(p):
                    raise SpecError(f"entry {a}<-{b}: path is zero in the algebra")
                if _path_degree(q, p) != 1 + na - nb:
                    raise SpecError(
                        f"entry {a}<-{b}: path degree {_path_degree(q, p)} != "
                        f"{1 + na - nb}"
                    )
        self._check_delta_squared()

    def _endpoints(self, p: Path, start_label: Label) -> int:
        q = self.quiver
        v = q.vertex_id(start_label)
        for name in p:
            ar = q.arrow(name)
            if ar.source != v:
                raise SpecError(f"path breaks at {name}")
            v = ar.target
        return v

    def _check_delta_squared(self) -> None:
        q = self.quiver
        n = len(self.summands)
        for b in range(n):
            for c in range(b + 2, n):
                acc: dict[Path, Fraction] = {}
                for a in range(b + 1, c):
                    for c1, p1 in self.diff.get((a, b), []):
                        for c2, p2 in self.diff.get((c, a), []):
                            comp = p1 + p2
                            if p1 and p2 and (p1[-1], p2[0]) in q.relations:
                                continue
                            acc[comp] = acc.get(comp, Fraction(0)) + c1 * c2
                if any(acc.values()):
                    raise SpecError(
                        f"differential does not square to zero at {c}<-{b}"
                    )

    def shift_of(self, index: int) -> int:
        return self.summands[index][1]

    def vertex_of(self, index: int) -> Label:
        return self.summands[index][0]


def projective(q: GradedQuiver, v: Label) -> TwistedComplex:
    return TwistedComplex(q, ((q.primary_label(q.vertex_id(v)), 0),))


@dataclass(frozen=True)
class Cocycle:
    hom: "HomComplex"
    degree: int
    vector: tuple[Fraction, ...]


class HomComplex:
    """The graded Hom space between two twisted complexes over one
    quiver, with its differential realized as sparse integer matrices
    between degree slices."""

    def __init__(
        self,
        X: TwistedComplex,
        Y: TwistedComplex,
        convention: str = "standard",
    ) -> None:
        if X.quiver is not Y.quiver:
            raise SpecError("complexes live over different quivers")
        if convention not in ("standard", "flipped"):
            raise SpecError(f"unknown sign convention {convention!r}")
        self.X, self.Y, self.quiver = X, Y, X.quiver
        self.convention = convention
        q = self.quiver

        self.basis: list[tuple[int, int, Path]] = []
        for si, (vs, ns) in enumerate(X.summands):
            for ti, (vt, nt) in enumerate(Y.summands):
                for p in _paths(q, vs, vt):
                    self.basis.append((si, ti, p))
        self._index = {elt: i for i, elt in enumerate(self.basis)}
        self.degrees: dict[int, list[int]] = {}
        self._degree_of: list[int] = []
        for i, (si, ti, p) in enumerate(self.basis):
            d = _path_degree(q, p) + X.shift_of(si) - Y.shift_of(ti)
            self._degree_of.append(d)
            self.degrees.setdefault(d, []).append(i)
        self._diff_cache: dict[int, list[list[Fraction]]] = {}

    def degree_of(self, index: int) -> int:
        return self._degree_of[index]

    def _compose(self, p: Path, p2: Path) -> Path | None:
        """p then p2, or None when the junction hits a relation."""
        if p and p2 and (p[-1], p2[0]) in self.quiver.relations:
            return None
        return p + p2

    def apply(self, index: int) -> dict[int, Fraction]:
        """Image of a basis element under D, as sparse coefficients."""
        si, ti, p = self.basis[index]
        d = self._degree_of[index]
        out: dict[int, Fraction] = {}
        for (ta, tb), entry in self.Y.diff.items():
            if tb != ti:
                continue
            for c, qpath in entry:
                comp = self._compose(p, qpath)
                if comp is None:
                    continue
                j = self._index[(si, ta, comp)]
                out[j] = out.get(j, Fraction(0)) + c
        sign = 1 if self.convention == "flipped" else -1
        sign *= -1 if d % 2 else 1
        for (sa, sb), entry in self.X.diff.items():
            if sa != si:
                continue
            for c, qpath in entry:
                comp = self._compose(qpath, p)
                if comp is None:
                    continue
                j = self._index[(sb, ti, comp)]
                out[j] = out.get(j, Fraction(0)) + sign * c
        return {j: c for j, c in out.items() if c}

    def matrix(self, d: int) -> list[list[Fraction]]:
        """D on degree d: one row per degree-(d+1) basis element, one
        column per degree-d element."""
        if d in self._diff_cache:
            return self._diff_cache[d]
        src = self.degrees.get(d, [])
        tgt = self.degrees.get(d + 1, [])
        pos = {j: r for r, j in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for col, i in enumerate(src):
            for j, c in self.apply(i).items():
                mat[pos[j]][col] = c
        self._diff_cache[d] = mat
        return mat

    def cohomology(self) -> GradedDims:
        dims: GradedDims = {}
        for d, idxs in self.degrees.items():
            h = len(idxs) - rank(self.matrix(d)) - rank(self.matrix(d - 1))
            if h:
                dims[d] = h
        return dims

    def d_squared_vanishes(self) -> bool:
        for i in range(len(self.basis)):
            acc: dict[int, Fraction] = {}
            for j, c in self.apply(i).items():
                for l, c2 in self.apply(j).items():
                    acc[l] = acc.get(l, Fraction(0)) + c * c2
            if any(acc.values()):
                return False
        return True

    # -- cocycles and classes ------------------------------------------

    def cocycle(self, vector, degree: int) -> Cocycle:
        vec = tuple(Fraction(x) for x in vector)
        idxs = self.degrees.get(degree, [])
        if len(vec) != len(idxs):
            raise SpecError("vector length does not match the degree slice")
        image: dict[int, Fraction] = {}
        for col, (i, c) in enumerate(zip(idxs, vec)):
            if not c:
                continue
            for j, cc in self.apply(i).items():
                image[j] = image.get(j, Fraction(0)) + c * cc
        if any(image.values()):
            raise SpecError("not a cocycle")
        return Cocycle(self, degree, vec)

    def identity_cocycle(self) -> Cocycle:
        if self.X != self.Y:
            raise SpecError("identity lives in an endomorphism complex")
        vec = [Fraction(0)] * len(self.degrees.get(0, []))
        for pos, i in enumerate(self.degrees.get(0, [])):
            si, ti, p = self.basis[i]
            if si == ti and not p:
                vec[pos] = Fraction(1)
        return self.cocycle(vec, 0)

    def cocycle_space(self, degree: int) -> list[list[Fraction]]:
        src = self.degrees.get(degree, [])
        return kernel_basis(self.matrix(degree), len(src))

    def is_coboundary(self, cocycle: Cocycle) -> bool:
        below = self.degrees.get(cocycle.degree - 1, [])
        if not any(cocycle.vector):
            return True
        if not below:
            return False
        mat = self.matrix(cocycle.degree - 1)
        return solve(mat, list(cocycle.vector)) is not None

    def scalar_against(self, cocycle: Cocycle, generator: Cocycle) -> Fraction:
        """The lambda with cocycle = lambda * generator in cohomology;
        requires the class to lie on the line the generator spans."""
        if cocycle.degree != generator.degree:
            raise SpecError("degree mismatch")
        mat = [row[:] for row in self.matrix(cocycle.degree - 1)]
        n = len(self.degrees.get(cocycle.degree, []))
        if not mat:
            mat = [[] for _ in range(n)]
        for row, g in zip(mat, generator.vector):
            row.append(g)
        x = solve(mat, list(cocycle.vector))
        if x is None:
            raise FalsificationError("class off the generator line")
        return x[-1]


def hom_cohomology(
    X: TwistedComplex, Y: TwistedComplex, convention: str = "standard"
) -> GradedDims:
    return HomComplex(X, Y, convention).cohomology()


def euler_characteristic(X: TwistedComplex, Y: TwistedComplex) -> int:
    """Alternating sum over the raw path basis; no linear algebra, so
    it cross-checks the cohomology computation."""
    q = X.quiver
    total = 0
    for vs, ns in X.summands:
        for vt, nt in Y.summands:
            for p in _paths(q, vs, vt):
                total += -1 if (_path_degree(q, p) + ns - nt) % 2 else 1
    return total


def ext_product(
    f: Cocycle, g: Cocycle, target: HomComplex | None = None
) -> Cocycle:
    """Composition f∘g of cocycle classes, with g: X -> Y applied first
    and f: Y -> Z; returns a cocycle in Hom(X, Z).  ``target`` lets the
    caller reuse an already-built Hom complex for that pair."""
    hg, hf = g.hom, f.hom
    if hg.Y != hf.X:
        raise SpecError("cocycles do not share the middle complex")
    if target is None:
        target = HomComplex(hg.X, hf.Y, hg.convention)
    acc: dict[int, Fraction] = {}
    g_idxs = hg.degrees.get(g.degree, [])
    f_idxs = hf.degrees.get(f.degree, [])
    for cg, ig in zip(g.vector, g_idxs):
        if not cg:
            continue
        si, ti, p = hg.basis[ig]
        for cf, jf in zip(f.vector, f_idxs):
            if not cf:
                continue
            sj, tj, p2 = hf.basis[jf]
            if sj != ti:
                continue
            comp = target._compose(p, p2)
            if comp is None:
                continue
            idx = target._index[(si, tj, comp)]
            acc[idx] = acc.get(idx, Fraction(0)) + cg * cf
    degree = f.degree + g.degree
    idxs = target.degrees.get(degree, [])
    vec = [acc.get(i, Fraction(0)) for i in idxs]
    leftovers = set(acc) - set(idxs)
    if any(acc[i] for i in leftovers):
        raise FalsificationError("product left its expected degree")
    return target.cocycle(vec, degree)


# -- localization objects ----------------------------------------------


@dataclass(frozen=True)
class LocObject:
    kind: str
    component: int
    position: int
    cx: TwistedComplex


def _junction_before(g: GluingSpec, i: int) -> int | None:
    """The junction feeding the minus side of component i, if any."""
    if g.shape == LINEAR:
        return i - 1 if i > 1 else None
    return (i - 2) % g.n_components + 1


def _junction_after(g: GluingSpec, i: int) -> int | None:
    if g.shape == LINEAR:
        return i if i < g.n_components else None
    return i


def localization_object(
    aq: GradedQuiver, kind: str, i: int, j: int
) -> TwistedComplex:
    """The object whose quotient deletes one marked point: a two-term
    cone over the chain arrow at a free boundary, with the matching S
    generator stacked on top wherever a junction meets the chain."""
    g: GluingSpec = aq.gluing
    if i not in g.components():
        raise SpecError(f"no component {i}")
    one = Fraction(1)
    if kind == "E-":
        r = g.minus_rank(i)
        if not 0 <= j < r:
            raise SpecError(f"position {j} out of range for E-({i},·)")
        chain = [(("P-", i, j), 2), (("P-", i, j + 1), 1)]
        step = ("x", i, j)
        junction = _junction_before(g, i)
        if junction is not None:
            # this S index is the one whose b-arrow lands on P-(i,j)
            sigma = g.perm(junction)
            s_vertex = ("S", junction, sigma.inverse()(r - 1 - j))
            feed = ("b", junction, sigma.inverse()(r - 1 - j))
    elif kind == "E+":
        r = g.plus_rank(i)
        if not 0 <= j < r:
            raise SpecError(f"position {j} out of range for E+({i},·)")
        chain = [(("P+", i, j), 2), (("P+", i, j + 1), 1)]
        step = ("y", i, j)
        junction = _junction_after(g, i)
        if junction is not None:
            s_vertex = ("S", i, j)
            feed = ("a", i, j)
    else:
        raise SpecError(f"unknown localization kind {kind!r}")

    if junction is None:
        return TwistedComplex(
            aq, tuple(chain), {(1, 0): [(one, (step,))]}
        )
    return TwistedComplex(
        aq,
        ((s_vertex, 3), *chain),
        {(1, 0): [(one, (feed,))], (2, 1): [(one, (step,))]},
    )


def all_localization_objects(aq: GradedQuiver) -> list[LocObject]:
    g: GluingSpec = aq.gluing
    out = []
    for i in g.components():
        for j in range(g.minus_rank(i)):
            out.append(LocObject("E-", i, j, localization_object(aq, "E-", i, j)))
        for j in range(g.plus_rank(i)):
            out.append(LocObject("E+", i, j, localization_object(aq, "E+", i, j)))
    return out


# -- thin modules ------------------------------------------------------


@dataclass
class ThinModule:
    """A representation with every vertex space of dimension 0 or 1,
    recorded as its support plus one scalar per arrow (the map induced
    between the endpoint values; absent means zero).  ``degree`` is the
    cohomological degree the values sit in, when known."""

    dims: dict[Label, int]
    actions: dict[ArrowName, Fraction]
    degree: int | None = None

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, d in self.dims.items() if d)

    @property
    def nonzero_actions(self) -> frozenset:
        return frozenset(a for a, c in self.actions.items() if c)

    def same_pattern(self, other: "ThinModule") -> bool:
        """Isomorphism test for thin modules: dimensions and the
        zero/nonzero pattern of the actions determine the module."""
        return (
            self.support == other.support
            and self.nonzero_actions == other.nonzero_actions
        )

    def validate(self, q: GradedQuiver) -> None:
        for v, d in self.dims.items():
            if d not in (0, 1):
                raise SpecError(f"dimension {d} at {v} is not thin")
        sup = self.support
        for name, c in self.actions.items():
            ar = q.arrow(name)
            if c and not (
                q.primary_label(ar.source) in sup
                and q.primary_label(ar.target) in sup
            ):
                raise SpecError(f"action of {name} off the support")
        for f, g in q.relations:
            if self.actions.get(f) and self.actions.get(g):
                raise SpecError(f"relation pair {f}, {g} both act nonzero")


def module_of(E: TwistedComplex) -> ThinModule:
    """Hom(P(v), E) at every vertex v, assembled into a thin module.

    Raises a falsification alarm unless every value space has dimension
    at most one and all of them sit in one cohomological degree; both
    facts are theorems for localization objects.
    """
    q = E.quiver
    dims: dict[Label, int] = {}
    degree: int | None = None
    homs: dict[Label, HomComplex] = {}
    gens: dict[Label, Cocycle] = {}
    for vid in range(q.num_vertices):
        v = q.primary_label(vid)
        h = HomComplex(projective(q, v), E)
        coh = h.cohomology()
        if not coh:
            continue
        if sum(coh.values()) > 1:
            raise FalsificationError(f"value at {v} is not thin: {coh}")
        (d,) = coh
        if degree is None:
            degree = d
        elif degree != d:
            raise FalsificationError(
                f"values spread over degrees {degree} and {d}"
            )
        dims[v] = 1
        homs[v] = h
        for vec in h.cocycle_space(d):
            cand = h.cocycle(vec, d)
            if not h.is_coboundary(cand):
                gens[v] = cand
                break
        else:
            raise FalsificationError(f"no generating cocycle at {v}")

    actions: dict[ArrowName, Fraction] = {}
    for ar in q.arrows:
        u, w = q.primary_label(ar.source), q.primary_label(ar.target)
        if u not in dims or w not in dims:
            continue
        composite = ext_product(gens[w], _arrow_cocycle(q, ar.name), target=homs[u])
        lam = homs[u].scalar_against(composite, gens[u])
        if lam:
            actions[ar.name] = lam
    module = ThinModule(dims, actions, degree)
    module.validate(q)
    return module


def _arrow_cocycle(q: GradedQuiver, name: ArrowName) -> Cocycle:
    """The degree-0 class of a single arrow in Hom(P(source), P(target)),
    cached per quiver."""
    cache = getattr(q, "_arrow_cocycles", None)
    if cache is None:
        cache = q._arrow_cocycles = {}
    if name not in cache:
        ar = q.arrow(name)
        h = HomComplex(
            projective(q, q.primary_label(ar.source)),
            projective(q, q.primary_label(ar.target)),
        )
        pos = h.degrees[0]
        vec = [Fraction(0)] * len(pos)
        vec[pos.index(h._index[(0, 0, (name,))])] = Fraction(1)
        cache[name] = h.cocycle(vec, 0)
    return cache[name]


def predicted_module(aq: GradedQuiver, kind: str, i: int, j: int) -> ThinModule:
    """The transported presentation of a localization object, computed
    combinatorially: one basis path per supported vertex, namely the
    unique nonzero path into the cone tip that does not route through
    the collapsed chain arrow.  Independent of all linear algebra."""
    if kind == "E-":
        tip = ("P-", i, j + 1)
        collapsed = ("x", i, j)
    elif kind == "E+":
        tip = ("P+", i, j + 1)
        collapsed = ("y", i, j)
    else:
        raise SpecError(f"unknown localization kind {kind!r}")
    tip = aq.primary_label(aq.vertex_id(tip))

    chosen: dict[Label, Path] = {}
    for vid in range(aq.num_vertices):
        v = aq.primary_label(vid)
        allowed = [
            p
            for p in _paths(aq, v, tip)
            if not (p and p[-1] == collapsed)
        ]
        if len(allowed) > 1:
            raise FalsificationError(f"{len(allowed)} admissible paths at {v}")
        if allowed:
            chosen[v] = allowed[0]

    actions: dict[ArrowName, Fraction] = {}
    for ar in aq.arrows:
        u, w = aq.primary_label(ar.source), aq.primary_label(ar.target)
        if u not in chosen or w not in chosen:
            continue
        composite = (ar.name,) + chosen[w]
        if aq.path_is_zero(composite) or composite[-1] == collapsed:
            continue
        if composite != chosen[u]:
            raise FalsificationError("thin action is not consistent")
        actions[ar.name] = Fraction(1)
    module = ThinModule({v: 1 for v in chosen}, actions)
    module.validate(aq)
    return module


def is_stop_orthogonal(X: TwistedComplex, objects) -> bool:
    """True when X sees none of the given localization objects from
    either side; operationally, membership in the compact part."""
    for obj in objects:
        E = obj.cx if isinstance(obj, LocObject) else obj
        if hom_cohomology(X, E) or hom_cohomology(E, X):
            return False
    return True
