"""Polyhedra with a prescribed pointed recession cone, plus the formal
empty coefficient.

The coefficient semiring of the whole package: elements of Pol+_sigma(N)
are polyhedra with recession cone exactly sigma, together with the empty
element that soaks up Minkowski sums. A TailedPolyhedron carries its tail
cone even when empty, because the empty coefficient still remembers which
semiring it belongs to (scaling by zero must return the tail cone).

Canonical form is inherited from the homogenization cone: vertices are the
dehomogenized extremal rays with positive last coordinate, the tail is the
slice at zero. Equality and hashing are therefore exact set equality.

eval_min returns +inf on the empty element and -inf when the direction is
negative somewhere on the tail; both are comparison-only sentinels and
never enter arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg as la
from .cone import Cone
from .linalg import Vec, dot, is_zero, vec
from .vectors import coords_of

_ZERO = Fraction(0)
_ONE = Fraction(1)

# pairwise-operation memo; fan closure sweeps hit the same coefficient
# pairs over and over, keys are the exact canonical forms
_pair_memo: dict = {}
_PAIR_MEMO_CAP = 200000


def _pair_memo_put(key, value):
    if len(_pair_memo) > _PAIR_MEMO_CAP:
        _pair_memo.clear()
    _pair_memo[key] = value
    return value


class TailedPolyhedron:
    """Either a proper polyhedron (vertices + pointed tail cone) or the
    empty coefficient with a nominal tail."""

    __slots__ = ("kind", "vertices", "tail", "_hom", "_faces", "_nf", "_fa")

    def __init__(self, kind, vertices, tail, hom):
        self.kind = kind
        self.vertices = vertices
        self.tail = tail
        self._hom = hom
        self._faces = None
        self._nf = None
        self._fa = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def proper(cls, vertices, tail_rays=(), *, tail: Cone | None = None) -> "TailedPolyhedron":
        vertices = [coords_of(v, "N") for v in vertices]
        if not vertices:
            raise ValueError("a proper polyhedron needs at least one vertex; "
                             "use TailedPolyhedron.empty for the empty coefficient")
        rays = list(tail_rays)
        if tail is not None:
            if tail.lines:
                raise ValueError("tail cone must be pointed")
            rays = rays + list(tail.rays)
        rays = [coords_of(r, "N") for r in rays]
        d = len(vertices[0])
        gens = [(*v, _ONE) for v in vertices] + [(*r, _ZERO) for r in rays]
        hom = Cone.from_rays(gens, dim=d + 1)
        if hom.lines:
            raise ValueError("tail cone must be pointed")
        return cls._from_hom(hom)

    @classmethod
    def _from_hom(cls, hom: Cone) -> "TailedPolyhedron":
        d = hom.dim - 1
        vs = []
        ts = []
        for r in hom.rays:
            if r[-1] > 0:
                vs.append(tuple(c / r[-1] for c in r[:-1]))
            elif r[-1] == 0:
                ts.append(r[:-1])
            else:
                raise ValueError("homogenization cone dips below the hyperplane at infinity")
        if not vs:
            raise ValueError("empty or vertexless polyhedron in _from_hom")
        tail = Cone.from_rays(ts, dim=d)
        return cls("proper", tuple(sorted(vs)), tail, hom)

    @classmethod
    def empty(cls, tail: Cone) -> "TailedPolyhedron":
        if tail.lines:
            raise ValueError("tail cone must be pointed")
        return cls("empty", (), tail, None)

    @classmethod
    def cone_poly(cls, tail: Cone) -> "TailedPolyhedron":
        """The tail cone viewed as a polyhedron with vertex 0: the neutral
        element of Minkowski sum in its semiring."""
        return cls.proper([la.zero(tail.dim)], tail.rays)

    # -- structure ---------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def ambient_dim(self) -> int:
        return self.tail.dim

    def key(self):
        return (self.kind, self.vertices, self.tail.key())

    def __eq__(self, other):
        return isinstance(other, TailedPolyhedron) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_empty:
            return f"TailedPolyhedron.empty(tail_rays={self.tail.rays})"
        return f"TailedPolyhedron(vertices={self.vertices}, tail_rays={self.tail.rays})"

    def dim(self) -> int:
        if self.is_empty:
            return -1
        return self._hom.cone_dim() - 1

    def is_full_dim(self) -> bool:
        return self.dim() == self.ambient_dim

    def hrep(self) -> tuple[tuple[tuple[Vec, Fraction], ...], tuple[tuple[Vec, Fraction], ...]]:
        """(equalities, inequalities) as (normal a, constant c) meaning
        <a, x> = c respectively <a, x> >= c. Empty has no hrep."""
        if self.is_empty:
            raise ValueError("empty coefficient has no inequality description")
        eqs = tuple((e[:-1], -e[-1]) for e in self._hom.eqs)
        ieqs = tuple((h[:-1], -h[-1]) for h in self._hom.ieqs)
        return eqs, ieqs

    def contains(self, x) -> bool:
        if self.is_empty:
            return False
        x = coords_of(x, "N")
        eqs, ieqs = self.hrep()
        return (all(dot(a, x) == c for a, c in eqs)
                and all(dot(a, x) >= c for a, c in ieqs))

    def contains_poly(self, other: "TailedPolyhedron") -> bool:
        """Set containment other subset-of self. Empty is in everything."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        eqs, ieqs = self.hrep()
        for v in other.vertices:
            if not (all(dot(a, v) == c for a, c in eqs) and all(dot(a, v) >= c for a, c in ieqs)):
                return False
        for r in other.tail.generators():
            if not (all(dot(a, r) == 0 for a, _ in eqs) and all(dot(a, r) >= 0 for a, _ in ieqs)):
                return False
        return True

    # -- evaluation --------------------------------------------------------

    def eval_min(self, w):
        """min <w, .> over the polyhedron: a Fraction, +inf when empty,
        -inf when unbounded below in direction w."""
        if self.is_empty:
            return math.inf
        w = coords_of(w, "M")
        if any(dot(w, r) < 0 for r in self.tail.generators()):
            return -math.inf
        return min(dot(w, v) for v in self.vertices)

    def face_at(self, w) -> "TailedPolyhedron":
        """argmin of <w, .>; error when the minimum does not exist."""
        w = coords_of(w, "M")
        cached = self._fa.get(w)
        if cached is not None:
            return cached
        newtail = self.tail.intersect(_wperp(w, self.ambient_dim))
        if self.is_empty:
            out = TailedPolyhedron.empty(newtail)
        else:
            m = self.eval_min(w)
            if m == -math.inf:
                raise ValueError("direction is unbounded below on the tail; face_at "
                                 "needs w in the dual of the tail cone")
            verts = [v for v in self.vertices if dot(w, v) == m]
            out = TailedPolyhedron.proper(verts, newtail.rays)
        self._fa[w] = out
        return out

    # -- semiring ops ------------------------------------------------------

    def minkowski(self, other: "TailedPolyhedron") -> "TailedPolyhedron":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        memo_key = ("mink",) + tuple(sorted((self.key(), other.key())))
        hit = _pair_memo.get(memo_key)
        if hit is not None:
            return hit
        tail = Cone.from_rays(list(self.tail.rays) + list(other.tail.rays),
                              dim=self.ambient_dim)
        if tail.lines:
            raise ValueError("tails of the summands span a non-pointed cone; "
                             "the sum leaves the coefficient semiring")
        if self.is_empty or other.is_empty:
            return _pair_memo_put(memo_key, TailedPolyhedron.empty(tail))
        verts = [la.add(v, w) for v in self.vertices for w in other.vertices]
        return _pair_memo_put(memo_key, TailedPolyhedron.proper(verts, tail.rays))

    def scale(self, c) -> "TailedPolyhedron":
        """Dilation by c >= 0; c == 0 collapses to the tail cone, also for
        the empty coefficient."""
        c = Fraction(c)
        if c < 0:
            raise ValueError("scaling factor must be nonnegative")
        if c == 0:
            return TailedPolyhedron.cone_poly(self.tail)
        if self.is_empty:
            return self
        return TailedPolyhedron.proper([la.smul(c, v) for v in self.vertices],
                                       self.tail.rays)

    def intersect(self, other: "TailedPolyhedron") -> "TailedPolyhedron":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        memo_key = ("cap",) + tuple(sorted((self.key(), other.key())))
        hit = _pair_memo.get(memo_key)
        if hit is not None:
            return hit
        tail = self.tail.intersect(other.tail)
        if self.is_empty or other.is_empty:
            return _pair_memo_put(memo_key, TailedPolyhedron.empty(tail))
        hom = self._hom.intersect(other._hom)
        if not any(r[-1] > 0 for r in hom.rays):
            return _pair_memo_put(memo_key, TailedPolyhedron.empty(tail))
        return _pair_memo_put(memo_key, TailedPolyhedron._from_hom(hom))

    def translate(self, v) -> "TailedPolyhedron":
        v = coords_of(v, "N")
        if self.is_empty:
            return self
        return TailedPolyhedron.proper([la.add(p, v) for p in self.vertices],
                                       self.tail.rays)

    def cut_hyperplane(self, u, c) -> "TailedPolyhedron":
        """Intersection with the affine hyperplane <u, x> = c. The tail of
        the result is tail cap u-perp, also when the cut is empty."""
        u = coords_of(u, "M")
        c = Fraction(c)
        newtail = self.tail.intersect(_wperp(u, self.ambient_dim))
        if self.is_empty:
            return TailedPolyhedron.empty(newtail)
        cut = _cut_by(self, [(u, c)])
        if cut is None:
            return TailedPolyhedron.empty(newtail)
        return cut

    def cut_halfspace(self, u, c) -> "TailedPolyhedron":
        """Intersection with the affine halfspace <u, x> >= c; the tail
        picks up the recession constraint <u, .> >= 0 either way."""
        u = coords_of(u, "M")
        c = Fraction(c)
        newtail = self.tail.intersect(
            Cone.from_halfspaces(self.ambient_dim, [u]))
        if self.is_empty:
            return TailedPolyhedron.empty(newtail)
        hom = self._hom
        cut = Cone.from_halfspaces(hom.dim, list(hom.ieqs) + [(*u, -c)], hom.eqs)
        if not any(r[-1] > 0 for r in cut.rays):
            return TailedPolyhedron.empty(newtail)
        return TailedPolyhedron._from_hom(cut)

    def image(self, rows) -> "TailedPolyhedron":
        """Image under the linear map with the given matrix rows. The
        image of the tail cone must come out pointed to stay inside the
        coefficient semiring."""
        m = la.mat(rows)
        tail = self.tail.image(rows)
        if tail.lines:
            raise ValueError("image of the tail cone is not pointed")
        if self.is_empty:
            return TailedPolyhedron.empty(tail)
        return TailedPolyhedron.proper(
            [la.matvec(m, v) for v in self.vertices],
            [la.matvec(m, r) for r in self.tail.rays])

    # -- faces -------------------------------------------------------------

    def is_face_of(self, other: "TailedPolyhedron") -> bool:
        """Exact face test: self is the intersection of other with the
        inequalities of other tight on all of self. Empty is a face of
        everything."""
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        memo_key = ("face", self.key(), other.key())
        hit = _pair_memo.get(memo_key)
        if hit is not None:
            return hit
        if not other.contains_poly(self):
            return _pair_memo_put(memo_key, False)
        eqs, ieqs = other.hrep()
        tight = [
            (a, c) for a, c in ieqs
            if all(dot(a, v) == c for v in self.vertices)
            and all(dot(a, r) == 0 for r in self.tail.generators())
        ]
        face = _cut_by(other, tight)
        return _pair_memo_put(memo_key, face == self)

    def faces(self) -> list["TailedPolyhedron"]:
        """Nonempty faces, self included, by tight-set closure search."""
        if self.is_empty:
            return []
        if self._faces is not None:
            return self._faces
        eqs, ieqs = self.hrep()
        found: dict = {}
        visited: set = set()
        queue = [frozenset()]
        while queue:
            tight = queue.pop()
            if tight in visited:
                continue
            visited.add(tight)
            f = _cut_by(self, [ieqs[i] for i in sorted(tight)])
            if f is None:
                continue
            closure = frozenset(
                i for i, (a, c) in enumerate(ieqs)
                if all(dot(a, v) == c for v in f.vertices)
                and all(dot(a, r) == 0 for r in f.tail.generators())
            )
            visited.add(closure)
            if closure not in found:
                found[closure] = f
                for i in range(len(ieqs)):
                    if i not in closure:
                        queue.append(closure | {i})
        self._faces = list(found.values())
        return self._faces

    def normal_fan(self) -> list[tuple["TailedPolyhedron", Cone]]:
        """(face, normal cone) pairs; the cones subdivide the dual of the
        tail cone and the map is inclusion reversing."""
        if self.is_empty:
            raise ValueError("empty coefficient has no normal fan")
        if self._nf is not None:
            return self._nf
        eqs, ieqs = self.hrep()
        out = []
        for f in self.faces():
            active = [
                a for a, c in ieqs
                if all(dot(a, v) == c for v in f.vertices)
                and all(dot(a, r) == 0 for r in f.tail.generators())
            ]
            cone = Cone.from_rays(active, [a for a, _ in eqs], self.ambient_dim)
            out.append((f, cone))
        out.sort(key=lambda fc: (fc[0].dim(), fc[0].key()))
        self._nf = out
        return out


def _wperp(w: Vec, dim: int) -> Cone:
    return Cone.from_halfspaces(dim, [], [w])


def _cut_by(p: TailedPolyhedron, tight) -> TailedPolyhedron | None:
    """p intersected with equalities <a,x> = c; None when empty."""
    if not tight:
        return p
    d = p.ambient_dim
    hom = p._hom
    extra = [(*a, -c) for a, c in tight]
    cut = Cone.from_halfspaces(
        d + 1,
        hom.ieqs,
        list(hom.eqs) + extra,
    )
    if not any(r[-1] > 0 for r in cut.rays):
        return None
    return TailedPolyhedron._from_hom(cut)


# -- module-level operation names ------------------------------------------

def minkowski_sum(a: TailedPolyhedron, b: TailedPolyhedron) -> TailedPolyhedron:
    return a.minkowski(b)


def scale(c, a: TailedPolyhedron) -> TailedPolyhedron:
    return a.scale(c)


def eval_min(a: TailedPolyhedron, w):
    return a.eval_min(w)


def face_at(a: TailedPolyhedron, w) -> TailedPolyhedron:
    return a.face_at(w)


def intersect(a: TailedPolyhedron, b: TailedPolyhedron) -> TailedPolyhedron:
    return a.intersect(b)


def is_face_of(a: TailedPolyhedron, b: TailedPolyhedron) -> bool:
    return a.is_face_of(b)


def normal_fan(a: TailedPolyhedron) -> list[tuple[TailedPolyhedron, Cone]]:
    return a.normal_fan()


def polyhedron(vertices, tail_rays=()) -> TailedPolyhedron:
    return TailedPolyhedron.proper(vertices, tail_rays)


def interval(a, b) -> TailedPolyhedron:
    """Closed segment [a, b] in Q^1."""
    return TailedPolyhedron.proper([(Fraction(a),), (Fraction(b),)])


def ray_poly(v, direction) -> TailedPolyhedron:
    return TailedPolyhedron.proper([v], [direction])
