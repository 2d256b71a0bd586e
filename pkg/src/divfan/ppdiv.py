"""Polyhedral divisors.

A PPDivisor is a finite formal sum sum_D Delta_D (x) D on a base variety,
with coefficients in Pol+_sigma(N) plus the empty element, all sharing the
pointed tail cone sigma. Primes that are not mentioned carry the tail cone
itself (the neutral coefficient); this matters everywhere, from evaluation
(neutral primes contribute zero) to weighted sums (neutral times any weight
stays neutral) to face tests in the fan module (the tail is a genuine
coefficient of infinitely many unnamed primes).

Evaluation at u in the dual tail cone produces the Q-divisor
D(u) = sum min <u, Delta_D> . D, restricted to the locus: primes with the
empty coefficient are cut out of the base and do not appear. Convexity
D(u + u') >= D(u) + D(u') holds coefficientwise because min is
superadditive under Minkowski sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .base import BaseVariety, QDivisor, UnsupportedBaseError, divisor_degree, is_principal
from .geom.cone import Cone
from .geom.linalg import add as vadd
from .geom.linalg import smul, vec
from .geom.polyhedron import TailedPolyhedron
from .geom.vectors import coords_of


@dataclass(frozen=True)
class WeightFunction:
    """Finitely supported weight mu: primes -> Q>=0. Zero weights are
    dropped, so support is exact."""
    weights: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, d: dict) -> "WeightFunction":
        items = []
        for k, v in d.items():
            v = Fraction(v)
            if v < 0:
                raise ValueError(f"weight of {k!r} is negative")
            if v != 0:
                items.append((str(k), v))
        return cls(tuple(sorted(items)))

    def weight(self, name: str) -> Fraction:
        return dict(self.weights).get(name, Fraction(0))

    @property
    def support(self) -> frozenset[str]:
        return frozenset(k for k, _ in self.weights)

    @classmethod
    def indicator(cls, names) -> "WeightFunction":
        return cls.of({n: 1 for n in names})

    def __repr__(self):
        return "WeightFunction(" + ", ".join(f"{k}={v}" for k, v in self.weights) + ")"


class PPDivisor:
    """Polyhedral divisor on a base variety. Canonical: coefficients equal
    to the tail cone are not stored, so equality is exact."""

    __slots__ = ("base", "tail", "_coeffs", "_trivial", "_fibers", "_deg")

    def __init__(self, base: BaseVariety, tail: Cone, coeffs: dict):
        if tail.lines:
            raise ValueError("tail cone must be pointed")
        stored: dict[str, TailedPolyhedron] = {}
        trivial = TailedPolyhedron.cone_poly(tail)
        for name, c in coeffs.items():
            name = str(name)
            if not base.has_prime(name):
                raise KeyError(f"no prime named {name!r} on the base")
            if not isinstance(c, TailedPolyhedron):
                raise TypeError("coefficients must be TailedPolyhedron")
            if c.tail != tail:
                raise ValueError(
                    f"coefficient at {name!r} has tail {c.tail.rays}, expected {tail.rays}")
            if c != trivial:
                stored[name] = c
        self.base = base
        self.tail = tail
        self._coeffs = dict(sorted(stored.items()))
        self._trivial = trivial
        self._fibers = {}
        self._deg = None

    # -- structure ---------------------------------------------------------

    def coeff(self, name: str) -> TailedPolyhedron:
        if not self.base.has_prime(name):
            raise KeyError(f"no prime named {name!r} on the base")
        c = self._coeffs.get(name)
        return c if c is not None else self._trivial

    @property
    def tail_poly(self) -> TailedPolyhedron:
        return self._trivial

    @property
    def support(self) -> tuple[str, ...]:
        """Primes with nontrivial coefficient, sorted."""
        return tuple(self._coeffs)

    @property
    def irr(self) -> frozenset[str]:
        """Primes with the empty coefficient: the complement of the locus."""
        return frozenset(n for n, c in self._coeffs.items() if c.is_empty)

    @property
    def has_affine_locus(self) -> bool:
        """Whether the locus is affine for certain: either the base is, or
        an empty coefficient chops a complete curve / removes an ample
        divisor from P^n."""
        if self.base.kind == "A1":
            return True
        return bool(self.irr) and self.base.kind in ("P1", "Pn")

    def items(self):
        return self._coeffs.items()

    def key(self):
        return (self.tail.key(), tuple((n, c.key()) for n, c in self._coeffs.items()))

    def __eq__(self, other):
        return (isinstance(other, PPDivisor) and self.base == other.base
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = []
        for n, c in self._coeffs.items():
            if c.is_empty:
                parts.append(f"empty(x){n}")
            else:
                parts.append(f"{list(c.vertices)}+tail(x){n}")
        body = " + ".join(parts) if parts else "0"
        return f"PPDivisor({body}; tail={list(self.tail.rays)})"


# -- operations -------------------------------------------------------------

def evaluate(d: PPDivisor, u) -> QDivisor:
    """D(u) on the locus. u must pair nonnegatively with the tail cone,
    otherwise every nonempty coefficient evaluates to -inf and the request
    is an error."""
    u = coords_of(u, "M")
    out = {}
    for name, c in d.items():
        v = c.eval_min(u)
        if v == math.inf:
            continue  # prime removed from the locus
        if v == -math.inf:
            raise ValueError("evaluation unbounded: u is outside the dual tail cone")
        out[name] = v
    # unmentioned primes carry the tail cone, contributing 0, but only when
    # u is in the dual; a divisor whose stored coefficients are all empty
    # would otherwise let a bad u through
    if d.tail_poly.eval_min(u) == -math.inf:
        raise ValueError("evaluation unbounded: u is outside the dual tail cone")
    return QDivisor.of(out)


def weighted_sum(d: PPDivisor, mu: WeightFunction) -> TailedPolyhedron:
    """Minkowski combination sum mu(D) . Delta_D. Weight zero contributes
    the neutral tail; the empty coefficient soaks up any positive weight.
    mu identically zero returns the tail cone."""
    acc = d.tail_poly
    for name in sorted(mu.support):
        acc = acc.minkowski(d.coeff(name).scale(mu.weight(name)))
    return acc


def fiber_polyhedron(d: PPDivisor, incidence) -> TailedPolyhedron:
    """Delta_y for a point class named by the primes through it. The class
    must be one the base declares (generic, a single prime, or a declared
    coincidence)."""
    inc = frozenset(str(x) for x in incidence)
    cached = d._fibers.get(inc)
    if cached is not None:
        return cached
    if inc not in set(d.base.incidence_sets()):
        raise ValueError(f"point class {sorted(inc)} is not declared on this base")
    out = weighted_sum(d, WeightFunction.indicator(inc))
    d._fibers[inc] = out
    return out


@dataclass
class FiberPoset:
    """Faces of a fiber polyhedron with their normal cones. The normal
    cones subdivide the dual tail cone; face inclusion reverses cone
    inclusion, which is exactly the orbit poset of the fiber."""
    fiber: TailedPolyhedron
    faces: list[TailedPolyhedron]
    cones: list[Cone]

    def face_leq(self, i: int, j: int) -> bool:
        return self.faces[j].contains_poly(self.faces[i])

    def cone_leq(self, i: int, j: int) -> bool:
        return self.cones[j].contains_cone(self.cones[i])


def fiber_orbit_poset(d: PPDivisor, incidence) -> FiberPoset:
    fib = fiber_polyhedron(d, incidence)
    if fib.is_empty:
        raise ValueError("point class lies outside the locus; the fiber is empty")
    pairs = fib.normal_fan()
    return FiberPoset(fib, [f for f, _ in pairs], [c for _, c in pairs])


def degree(d: PPDivisor) -> TailedPolyhedron:
    """deg D: on P^1 the plain Minkowski sum of all coefficients, on P^n
    weighted by hypersurface degrees. Not defined on affine or toric
    bases."""
    if d._deg is not None:
        return d._deg
    if d.base.kind == "P1":
        mu = WeightFunction.of({n: 1 for n in d.support})
    elif d.base.kind == "Pn":
        mu = WeightFunction.of({n: d.base.prime(n).degree for n in d.support})
    else:
        raise UnsupportedBaseError("degree needs a projective curve or space")
    d._deg = weighted_sum(d, mu)
    return d._deg


def is_pp(d: PPDivisor) -> str:
    """'true' / 'false' / 'unsupported': is this divisor proper, i.e. does
    it define an affine T-variety?

    On the affine line every polyhedral divisor qualifies. On P^1 and P^n
    the criterion is: empty degree (the locus is affine), or deg D a proper
    subset of the tail cone together with principality of D(u) for the
    tail-dual directions u where min <deg D, u> = 0. Since
    min <deg D, u> equals the class degree of D(u) on these rational bases,
    the principality side is checked via degree zero of the evaluation,
    sampled at the rays of the normal fan of deg D (the condition is linear
    on each normal cone, so rays decide it)."""
    if d.base.kind == "A1":
        return "true"
    if d.base.kind == "toric":
        return "unsupported"
    dg = degree(d)
    if dg.is_empty:
        return "true"
    tail_poly = d.tail_poly
    if not tail_poly.contains_poly(dg) or dg == tail_poly:
        return "false"
    for _, cone in dg.normal_fan():
        for u in cone.rays:
            if tail_poly.eval_min(u) == -math.inf:
                continue  # outside the dual tail cone
            if dg.eval_min(u) == 0:
                ev = evaluate(d, u)
                if divisor_degree(d.base, ev) != 0:
                    return "false"
    return "true"


def localize(d: PPDivisor, w, zero_set: QDivisor) -> PPDivisor:
    """Localization in the direction w by a chosen zero set.

    zero_set must be an effective divisor with zero_set - D(w) principal;
    the result lives on the complement of its support, has tail
    sigma cap w-perp, and coefficient face_at(Delta_D, w) elsewhere."""
    w = coords_of(w, "M")
    if any(x.denominator != 1 for x in w):
        raise ValueError("w must be a lattice point of M")
    if d.tail_poly.eval_min(w) == -math.inf:
        raise ValueError("w must lie in the dual of the tail cone")
    if not zero_set.is_effective():
        raise ValueError("zero_set must be effective")
    dw = evaluate(d, w)
    diff = zero_set - dw
    for name in diff.support:
        if not d.base.has_prime(name):
            raise KeyError(f"no prime named {name!r} on the base")
    verdict = is_principal(d.base, diff)
    if verdict == "no":
        raise ValueError("zero_set - D(w) is not principal")
    if verdict == "unknown":
        raise UnsupportedBaseError("principality undecidable on this base")
    newtail = d.tail.intersect(Cone.from_halfspaces(d.tail.dim, [], [w]))
    coeffs: dict[str, TailedPolyhedron] = {}
    for name in set(d.support) | set(zero_set.support):
        if zero_set.coeff(name) > 0:
            coeffs[name] = TailedPolyhedron.empty(newtail)
        else:
            coeffs[name] = d.coeff(name).face_at(w)
    return PPDivisor(d.base, newtail, coeffs)


def localization_identity_check(d: PPDivisor, w, zero_set: QDivisor, u, k: int) -> bool:
    """Verify D_f(u) = (D(u + k w) - k D(w)) away from the zero set, the
    identity that makes localization compatible with evaluation. k must be
    large enough that u + k w lies in the dual tail cone."""
    w = coords_of(w, "M")
    u = coords_of(u, "M")
    loc = localize(d, w, zero_set)
    if loc.tail_poly.eval_min(u) == -math.inf:
        raise ValueError("u must pair nonnegatively with the localized tail")
    shifted = vadd(u, smul(k, w))
    if d.tail_poly.eval_min(shifted) == -math.inf:
        raise ValueError("k too small: u + k w leaves the dual tail cone")
    lhs = evaluate(loc, u)
    rhs = evaluate(d, shifted) - evaluate(d, w).scale(k)
    removed = set(zero_set.support) | set(d.irr)
    return lhs == rhs.drop(removed)
