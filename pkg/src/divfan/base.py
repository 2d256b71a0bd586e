"""Base varieties and their divisor arithmetic.

Four kinds are supported: the affine line, the projective line, projective
space of any dimension with named hypersurfaces, and toric bases given by a
fan (used as targets of the downgrade construction). Everything a polyhedral
divisor needs from its base is funneled through this module: prime
divisors, degrees, principality, incidence data for point classes, and the
existence question for effective representatives avoiding a point.

Incidence sets name classes of closed points by the primes passing through
them: on a curve only single primes carry special points, on P^n any two
hypersurfaces meet, and further coincidences must be declared up front. On
a toric base the classes are the torus orbits, one per cone of the fan,
named by the rays of the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geom.cone import Cone
from .geom.fans import fan_is_complete
from .geom.linalg import int_solve, primitive, vec


class UnsupportedBaseError(NotImplementedError):
    """An operation without meaning (or without an implementation) on this
    kind of base."""


@dataclass(frozen=True, order=True)
class Prime:
    """A named prime divisor on the base. degree is None when the base has
    no degree theory (toric bases)."""
    name: str
    degree: Fraction | None = None
    ray: tuple | None = None  # toric bases: the primitive ray


@dataclass(frozen=True)
class QDivisor:
    """Q-divisor on the base as a finite map prime name -> coefficient.
    Zero coefficients are dropped, so equality is exact equality of
    divisors."""
    coeffs: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, d: dict) -> "QDivisor":
        items = tuple(sorted((k, Fraction(v)) for k, v in d.items() if Fraction(v) != 0))
        return cls(items)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def coeff(self, name: str) -> Fraction:
        return dict(self.coeffs).get(name, Fraction(0))

    @property
    def support(self) -> frozenset[str]:
        return frozenset(k for k, _ in self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coeffs)

    def __add__(self, other: "QDivisor") -> "QDivisor":
        d = self.as_dict()
        for k, c in other.coeffs:
            d[k] = d.get(k, Fraction(0)) + c
        return QDivisor.of(d)

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return self + other.scale(-1)

    def scale(self, c) -> "QDivisor":
        c = Fraction(c)
        return QDivisor.of({k: c * v for k, v in self.coeffs})

    def restrict(self, keep) -> "QDivisor":
        keep = set(keep)
        return QDivisor.of({k: v for k, v in self.coeffs if k in keep})

    def drop(self, remove) -> "QDivisor":
        remove = set(remove)
        return QDivisor.of({k: v for k, v in self.coeffs if k not in remove})

    def __repr__(self):
        if not self.coeffs:
            return "QDivisor(0)"
        return "QDivisor(" + " + ".join(f"{c}*[{k}]" for k, c in self.coeffs) + ")"


ZERO_DIVISOR = QDivisor(())


@dataclass(frozen=True)
class BaseVariety:
    kind: str                       # "A1" | "P1" | "Pn" | "toric"
    dim: int
    primes: tuple[Prime, ...]
    complete: bool
    extra_incidence: tuple[frozenset, ...] = ()
    fan: tuple[Cone, ...] | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def affine_line(cls, points) -> "BaseVariety":
        ps = tuple(Prime(str(p), Fraction(1)) for p in points)
        _check_distinct(ps)
        return cls("A1", 1, ps, complete=False)

    @classmethod
    def proj_line(cls, points) -> "BaseVariety":
        ps = tuple(Prime(str(p), Fraction(1)) for p in points)
        _check_distinct(ps)
        return cls("P1", 1, ps, complete=True)

    @classmethod
    def proj_space(cls, n: int, hypersurfaces, incidence=()) -> "BaseVariety":
        """P^n with named hypersurfaces given as (name, degree) pairs.
        Pairs of hypersurfaces always meet; larger coincident families must
        be declared through incidence."""
        if n < 1:
            raise ValueError("projective space needs n >= 1")
        ps = tuple(Prime(str(name), Fraction(deg)) for name, deg in hypersurfaces)
        _check_distinct(ps)
        for p in ps:
            if p.degree <= 0:
                raise ValueError(f"hypersurface {p.name} needs positive degree")
        names = {p.name for p in ps}
        extra = []
        for group in incidence:
            g = frozenset(str(x) for x in group)
            if not g <= names:
                raise ValueError(f"incidence set {sorted(g)} mentions unknown primes")
            extra.append(g)
        return cls("Pn", n, ps, complete=True, extra_incidence=tuple(extra))

    @classmethod
    def toric(cls, max_cones) -> "BaseVariety":
        """Toric base from the maximal cones of a fan. Primes are the rays,
        named D[a,b,...] by primitive coordinates."""
        cones = tuple(max_cones)
        if not cones:
            raise ValueError("toric base needs at least one cone")
        dim = cones[0].dim
        for c in cones:
            if c.lines:
                raise ValueError("fan cones must be pointed")
            if c.dim != dim:
                raise ValueError("mixed ambient dimensions in fan")
        rays = []
        seen = set()
        for c in cones:
            for r in c.rays:
                p = primitive(r)
                if p not in seen:
                    seen.add(p)
                    rays.append(p)
        ps = tuple(Prime(ray_name(r), None, tuple(int(x) for x in r)) for r in sorted(rays))
        return cls("toric", dim, ps, complete=fan_is_complete(cones), fan=cones)

    # -- lookups -----------------------------------------------------------

    def prime(self, name: str) -> Prime:
        for p in self.primes:
            if p.name == name:
                return p
        raise KeyError(f"no prime named {name!r} on this base")

    def has_prime(self, name: str) -> bool:
        return any(p.name == name for p in self.primes)

    @property
    def prime_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.primes)

    @property
    def is_curve(self) -> bool:
        return self.dim == 1

    @property
    def has_degrees(self) -> bool:
        return self.kind in ("A1", "P1", "Pn")

    def incidence_sets(self) -> list[frozenset]:
        """Declared point classes: which sets of primes meet in a point.
        Always includes the empty set (generic points) and all singletons."""
        out = [frozenset()]
        out += [frozenset([p.name]) for p in self.primes]
        if self.kind == "Pn" and self.dim >= 2:
            names = self.prime_names
            for i in range(len(names)):
                for j in range(i + 1, len(names)):
                    out.append(frozenset([names[i], names[j]]))
        if self.kind == "toric":
            for c in self.fan:
                for f in c.faces():
                    out.append(frozenset(ray_name(primitive(r)) for r in f.rays))
        out += list(self.extra_incidence)
        seen = set()
        uniq = []
        for s in out:
            if s not in seen:
                seen.add(s)
                uniq.append(s)
        return uniq

    def __repr__(self):
        return f"BaseVariety({self.kind}, primes={[p.name for p in self.primes]})"


def ray_name(r) -> str:
    return "D[" + ",".join(str(int(x)) for x in primitive(r)) + "]"


def _check_distinct(primes):
    names = [p.name for p in primes]
    if len(set(names)) != len(names):
        raise ValueError("prime names must be distinct")


# -- divisor arithmetic on a base ------------------------------------------

def divisor_degree(base: BaseVariety, d: QDivisor) -> Fraction:
    """Total degree; on P^n the coefficients are weighted by hypersurface
    degrees."""
    if not base.has_degrees:
        raise UnsupportedBaseError("no degree theory on this base kind")
    total = Fraction(0)
    for name, c in d.coeffs:
        total += c * base.prime(name).degree
    return total


def is_principal(base: BaseVariety, d: QDivisor) -> str:
    """'yes' / 'no' / 'unknown'.

    On P^1 and P^n a Q-divisor is principal iff it is integral of degree
    zero; principality here means D = div(f), which for the package's use
    (twisting by a character) is the right notion. On A^1 any integral
    divisor is principal. On a toric base: D = div(chi^m), i.e. the ray
    evaluation map must hit the coefficients for some lattice point m.
    """
    if base.kind in ("P1", "Pn"):
        if not d.is_integral():
            return "no"
        return "yes" if divisor_degree(base, d) == 0 else "no"
    if base.kind == "A1":
        return "yes" if d.is_integral() else "no"
    if base.kind == "toric":
        if not d.is_integral():
            return "no"
        rays = [p.ray for p in base.primes]
        rhs = [int(d.coeff(p.name)) for p in base.primes]
        # find integral m with <m, ray> = coeff for every ray
        sol = int_solve([vec(r) for r in rays], vec(rhs))
        return "yes" if sol is not None else "no"
    return "unknown"


def exists_effective_avoiding(base: BaseVariety, degree: Fraction,
                              must_contain, avoid) -> bool:
    """Is there an effective divisor of the given class degree whose support
    contains the primes in must_contain and misses the point class avoid?

    The geometric question is about members of a linear system; after
    replacing the character by a high multiple the only obstructions left
    are the sign of the degree and forced incidences, which is what this
    decides. must_contain are primes that have to appear in the support;
    avoid is an incidence set naming the point to stay away from.
    """
    degree = Fraction(degree)
    mc = frozenset(must_contain)
    av = frozenset(avoid)
    for name in mc | av:
        if not base.has_prime(name):
            raise KeyError(f"unknown prime {name!r}")
    if base.kind == "A1":
        # affine: sections exist in abundance; only forced incidence obstructs
        return mc.isdisjoint(av)
    if base.kind in ("P1", "Pn"):
        if degree < 0:
            return False
        if degree == 0:
            return not mc
        return mc.isdisjoint(av)
    raise UnsupportedBaseError("effective-avoidance is not decided on toric bases")
