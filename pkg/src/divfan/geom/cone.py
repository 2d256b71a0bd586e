"""Rational polyhedral cones by double description.

A cone is stored in canonical V-form: a reduced-row-echelon basis of its
lineality space plus the extremal rays reduced modulo that space, primitive
and sorted. Two Cone objects are equal iff they are the same cone. The dual
H-form (facet normals and span equations) is computed on construction by an
incremental double description sweep and cached; it is canonical too, so it
doubles as the hash-stable face bookkeeping for everything downstream.

The sweep keeps intermediate ray sets small by discarding non-extremal rays
after every imposed constraint, using the rank test: with the constraints
imposed so far as context, a ray is extremal iff the tight ones cut its
minimal face down to dimension lineality + 1.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import linalg as la
from .linalg import Vec, dot, is_zero, primitive, primitive_signed, smul, sub, vec


def _dedupe(rays: list[Vec]) -> list[Vec]:
    seen = set()
    out = []
    for r in rays:
        p = primitive(r)
        if is_zero(p) or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def _prune(rays: list[Vec], nlines: int, dim: int, context: list[tuple[Vec, bool]]) -> list[Vec]:
    """Keep rays whose tight constraints in context define a face of
    dimension nlines + 1. Context rows are (normal, is_equality)."""
    if len(rays) <= 1:
        return rays
    kept = []
    for r in rays:
        active = [h for h, eq in context if eq or dot(h, r) == 0]
        if dim - la.rank(active) == nlines + 1:
            kept.append(r)
    return kept


def _impose(dim: int, lines: list[Vec], rays: list[Vec],
            constraints: list[tuple[Vec, bool]],
            context: list[tuple[Vec, bool]] | None = None) -> tuple[list[Vec], list[Vec]]:
    """Incremental DD: cut the cone spanned by (lines, rays) with the given
    (normal, is_equality) constraints. context carries an H-form of the
    starting cone when it is not the full space."""
    L = [vec(l) for l in lines]
    R = _dedupe([vec(r) for r in rays])
    seen: list[tuple[Vec, bool]] = list(context) if context else []
    for h, eq in constraints:
        h = vec(h)
        if is_zero(h):
            continue
        pidx = next((i for i, l in enumerate(L) if dot(h, l) != 0), None)
        if pidx is not None:
            piv = L[pidx]
            if not eq and dot(h, piv) < 0:
                piv = la.neg(piv)
            hp = dot(h, piv)
            # pivot leaves the lineality; the rest is projected onto h=0 along it
            newL = []
            for i, l in enumerate(L):
                if i == pidx:
                    continue
                c = dot(h, l)
                newL.append(l if c == 0 else sub(l, smul(c / hp, piv)))
            L = [l for l in newL if not is_zero(l)]
            R = [sub(r, smul(dot(h, r) / hp, piv)) if dot(h, r) != 0 else r for r in R]
            if not eq:
                R.append(piv)
        else:
            pos = [r for r in R if dot(h, r) > 0]
            zero_ = [r for r in R if dot(h, r) == 0]
            negs = [r for r in R if dot(h, r) < 0]
            combos = [
                la.add(smul(dot(h, rp), rn), smul(-dot(h, rn), rp))
                for rp in pos for rn in negs
            ]
            R = (pos if not eq else []) + zero_ + combos
        seen.append((h, eq))
        R = _dedupe(R)
        R = _prune(R, len(L), dim, seen)
    return L, R


# construction memo, keyed by the tuplized raw generators or halfspaces;
# the same cones are rebuilt constantly during fan closure sweeps
_cone_memo: dict = {}
_CONE_MEMO_CAP = 200000


def _dual_gens(dim: int, lines, rays) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Generators of {u : <u, l> = 0, <u, r> >= 0}. Canonical."""
    gens = [vec(g) for g in list(lines) + list(rays)]
    dlines = la.nullspace(gens, dim)
    basis = [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
    constraints = [(vec(l), True) for l in lines] + [(vec(r), False) for r in rays]
    L, R = _impose(dim, basis, [], constraints)
    red, piv = la.rref(dlines)
    R = _dedupe([la.reduce_mod_rows(r, red, piv) for r in R])
    # extremality of dual rays, with the primal generators as the context
    ctx = [(vec(l), True) for l in lines] + [(vec(r), False) for r in rays]
    R = _prune(R, len(dlines), dim, ctx)
    return dlines, tuple(sorted(R))


class Cone:
    """Polyhedral cone in Q^dim, canonical. Compare/hash freely."""

    __slots__ = ("dim", "lines", "rays", "eqs", "ieqs", "_faces")

    def __init__(self, dim: int, lines, rays, eqs, ieqs):
        # trusted constructor: inputs already canonical
        self.dim = dim
        self.lines = lines
        self.rays = rays
        self.eqs = eqs
        self.ieqs = ieqs
        self._faces = None

    @classmethod
    def from_rays(cls, rays, lines=(), dim: int | None = None) -> "Cone":
        rays = [vec(r) for r in rays]
        lines = [vec(l) for l in lines]
        if dim is None:
            if not rays and not lines:
                raise ValueError("ambient dimension required for the zero cone")
            dim = len((rays + lines)[0])
        for g in rays + lines:
            if len(g) != dim:
                raise ValueError("generator dimension mismatch")
        memo_key = ("v", dim, tuple(rays), tuple(lines))
        hit = _cone_memo.get(memo_key)
        if hit is not None:
            return hit
        eqs, ieqs = _dual_gens(dim, lines, rays)
        lin = la.nullspace(list(eqs) + list(ieqs), dim)
        red, piv = la.rref(lin)
        cands = _dedupe([la.reduce_mod_rows(r, red, piv) for r in rays])
        ctx = [(e, True) for e in eqs] + [(h, False) for h in ieqs]
        ext = _prune(cands, len(lin), dim, ctx) if cands else []
        cone = cls(dim, tuple(sorted(lin)), tuple(sorted(ext)), eqs, ieqs)
        if len(_cone_memo) > _CONE_MEMO_CAP:
            _cone_memo.clear()
        _cone_memo[memo_key] = cone
        return cone

    @classmethod
    def from_halfspaces(cls, dim: int, ieqs, eqs=()) -> "Cone":
        ieqs = [vec(h) for h in ieqs]
        eqs = [vec(e) for e in eqs]
        memo_key = ("h", dim, tuple(ieqs), tuple(eqs))
        hit = _cone_memo.get(memo_key)
        if hit is not None:
            return hit
        basis = [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
        constraints = [(e, True) for e in eqs] + [(h, False) for h in ieqs]
        L, R = _impose(dim, basis, [], constraints)
        cone = cls.from_rays(R, L, dim)
        if len(_cone_memo) > _CONE_MEMO_CAP:
            _cone_memo.clear()
        _cone_memo[memo_key] = cone
        return cone

    @classmethod
    def zero(cls, dim: int) -> "Cone":
        return cls.from_rays([], [], dim)

    @classmethod
    def full(cls, dim: int) -> "Cone":
        basis = [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
        return cls.from_rays([], basis, dim)

    # -- structure ---------------------------------------------------------

    def key(self):
        return (self.dim, self.lines, self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        def fmt(vs):
            return "[" + ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in vs) + "]"
        return f"Cone(dim={self.dim}, lines={fmt(self.lines)}, rays={fmt(self.rays)})"

    @property
    def is_pointed(self) -> bool:
        return not self.lines

    def cone_dim(self) -> int:
        return self.dim - len(self.eqs)

    def is_full(self) -> bool:
        return self.cone_dim() == self.dim

    def generators(self) -> list[Vec]:
        out = list(self.rays)
        for l in self.lines:
            out.append(l)
            out.append(la.neg(l))
        return out

    def is_zero(self) -> bool:
        return not self.rays and not self.lines

    # -- predicates --------------------------------------------------------

    def contains(self, v) -> bool:
        v = vec(v)
        return all(dot(e, v) == 0 for e in self.eqs) and all(dot(h, v) >= 0 for h in self.ieqs)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators()) if not other.is_zero() else True

    def interior_point(self) -> Vec:
        """A point in the relative interior, primitive."""
        acc = la.zero(self.dim)
        for r in self.rays:
            acc = la.add(acc, r)
        if is_zero(acc) and self.rays:
            # cancellation cannot happen for extremal rays of a pointed part,
            # but guard anyway
            acc = self.rays[0]
        return primitive(acc) if not is_zero(acc) else acc

    def relint_contains(self, v) -> bool:
        v = vec(v)
        return (all(dot(e, v) == 0 for e in self.eqs)
                and all(dot(h, v) > 0 for h in self.ieqs))

    # -- operations --------------------------------------------------------

    def dual(self) -> "Cone":
        return Cone.from_rays(self.ieqs, self.eqs, self.dim)

    def intersect(self, other: "Cone") -> "Cone":
        if self.dim != other.dim:
            raise ValueError("ambient dimension mismatch")
        return Cone.from_halfspaces(
            self.dim,
            list(self.ieqs) + list(other.ieqs),
            list(self.eqs) + list(other.eqs),
        )

    def image(self, rows) -> "Cone":
        """Image under the linear map given by matrix rows."""
        m = la.mat(rows)
        return Cone.from_rays(
            [la.matvec(m, r) for r in self.rays],
            [la.matvec(m, l) for l in self.lines],
            len(m),
        )

    def faces(self) -> list["Cone"]:
        """All faces, self and the minimal face included."""
        if self._faces is not None:
            return self._faces
        found: dict = {}
        visited: set = set()
        queue = [frozenset()]
        ieqs = self.ieqs
        while queue:
            tight = queue.pop()
            if tight in visited:
                continue
            visited.add(tight)
            f = Cone.from_halfspaces(
                self.dim,
                ieqs,
                list(self.eqs) + [ieqs[i] for i in sorted(tight)],
            )
            gens = f.generators()
            if gens:
                closure = frozenset(
                    i for i, h in enumerate(ieqs)
                    if all(dot(h, g) == 0 for g in gens)
                )
            else:
                closure = frozenset(range(len(ieqs)))
            visited.add(closure)
            if closure not in found:
                found[closure] = f
                for i in range(len(ieqs)):
                    if i not in closure:
                        queue.append(closure | {i})
        self._faces = list(found.values())
        return self._faces

    def facets(self) -> list["Cone"]:
        d = self.cone_dim()
        return [f for f in self.faces() if f.cone_dim() == d - 1]
