"""Divisorial fans: finite sets of polyhedral divisors closed under
coefficientwise intersection, glued along faces.

The two load-bearing decision procedures live here.

is_face decides whether one divisor is a face of another, i.e. whether the
associated affine piece embeds openly. For each declared point class the
criterion asks for a direction u with (a) the fiber of the small divisor
equal to the u-face of the fiber of the big one, (b) global agreement of
u-faces of the coefficients away from a permitted zero set B(u) that must
miss the class, with the tail cones agreeing on the nose (unnamed primes
all carry the tail, and a zero set is finite), and (c) an effective member
of |D(ku)| through B(u) avoiding the class, which after passing to a high
multiple is governed by the sign of the class degree alone, and is
automatic over an affine locus. All three conditions are constant on
relative interiors of the cells of an explicit normal-fan refinement, so
sampling one interior point per cell decides the existence of u exactly.

check_coherence searches, per pair of divisors, for a direction u and
constants c_D putting each pair of coefficients on opposite sides of the
hyperplane <u, .> = c_D with equal slices; u-space is again cut into cells
on which feasibility is constant (normal fans of the right-hand
coefficients, reflected normal fans of the left-hand ones, and the
difference hyperplanes of vertex pairs), so an exhaustive cell sweep
either produces a certificate, verified independently afterwards, or is a
proof of refutation. The 'unknown' verdict is reserved in the result type
but the sweep never needs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .base import (
    BaseVariety,
    QDivisor,
    UnsupportedBaseError,
    divisor_degree,
    exists_effective_avoiding,
)
from .geom.cone import Cone
from .geom.fans import common_refinement, covers_space, is_polyhedral_complex
from .geom.linalg import is_zero, neg, primitive, vec
from .geom.polyhedron import TailedPolyhedron
from .ppdiv import (
    PPDivisor,
    WeightFunction,
    degree,
    evaluate,
    fiber_polyhedron,
    is_pp,
    weighted_sum,
)


# -- intersections ----------------------------------------------------------

def intersect_divisors(a: PPDivisor, b: PPDivisor) -> PPDivisor:
    """Coefficientwise intersection; the tail is the intersection of
    tails, and unnamed primes take care of themselves."""
    if a.base != b.base:
        raise ValueError("divisors live on different bases")
    tail = a.tail.intersect(b.tail)
    coeffs = {}
    for name in set(a.support) | set(b.support):
        coeffs[name] = a.coeff(name).intersect(b.coeff(name))
    return PPDivisor(a.base, tail, coeffs)


# -- face criterion ---------------------------------------------------------

@dataclass
class FaceResult:
    ok: bool
    reason: str = ""
    point_class: frozenset | None = None
    direction: tuple | None = None  # a witnessing u for the last class checked

    def __bool__(self):
        return self.ok


def _neg_cone(c: Cone) -> Cone:
    return Cone.from_rays([neg(r) for r in c.rays], [l for l in c.lines], c.dim)


def _halfspace_pair(v, dim) -> list[Cone]:
    return [Cone.from_halfspaces(dim, [v]), Cone.from_halfspaces(dim, [neg(vec(v))])]


def _candidate_directions(cones: list[Cone]) -> list:
    cells = common_refinement(cones)
    out = []
    seen = set()
    for c in cells:
        u = c.interior_point()
        if u not in seen:
            seen.add(u)
            out.append(u)
    z = vec([0] * cones[0].dim) if cones else ()
    if z not in seen:
        out.append(z)
    return out


def _disagreement_set(small: PPDivisor, big: PPDivisor, u) -> set[str] | None:
    """B(u): primes of the big locus where the u-faces of the coefficients
    disagree. None signals the hard failure of the tail condition."""
    small_tail_face = small.tail_poly.face_at(u)
    big_tail_face = big.tail_poly.face_at(u)
    if small_tail_face != big_tail_face:
        return None
    B: set[str] = set()
    for name in set(small.support) | set(big.support):
        cb = big.coeff(name)
        if cb.is_empty:
            continue  # outside the big locus: no condition
        cs = small.coeff(name)
        if cs.is_empty:
            B.add(name)
            continue
        if cs.face_at(u) != cb.face_at(u):
            B.add(name)
    return B


def is_face(small: PPDivisor, big: PPDivisor) -> FaceResult:
    """Open-embedding test small <= big.

    Supported on bases with a degree theory (A1, P1, Pn); on toric bases
    the linear-system side is undecided here and the call raises."""
    if small.base != big.base:
        raise ValueError("divisors live on different bases")
    base = small.base
    if not base.has_degrees:
        raise UnsupportedBaseError("face test needs a base with a degree theory")

    if not big.tail.contains_cone(small.tail):
        return FaceResult(False, "tail cone not contained")
    for name in set(small.support) | set(big.support):
        if not big.coeff(name).contains_poly(small.coeff(name)):
            return FaceResult(False, f"coefficient at {name!r} not contained")

    affine = big.has_affine_locus
    dg = None if affine else degree(big)

    # cells of u-space on which all three conditions are constant
    cones: list[Cone] = []
    for name in set(small.support) | set(big.support):
        for c in (small.coeff(name), big.coeff(name)):
            if not c.is_empty:
                cones += [k for _, k in c.normal_fan()]
    for tp in (small.tail_poly, big.tail_poly):
        cones += [k for _, k in tp.normal_fan()]
    if dg is not None:
        cones += [k for _, k in dg.normal_fan()]
        for v in dg.vertices:
            if not is_zero(v):
                cones += _halfspace_pair(v, big.tail.dim)
    candidates = _candidate_directions(cones)

    for inc in base.incidence_sets():
        if inc & small.irr:
            continue  # the class lies outside the small locus
        f_small = fiber_polyhedron(small, inc)
        f_big = fiber_polyhedron(big, inc)
        if not f_small.is_face_of(f_big):
            return FaceResult(False, "fiber is not a face of the big fiber", inc)
        ok_u = None
        for u in candidates:
            if f_big.eval_min(u) == -math.inf:
                continue
            if f_big.face_at(u) != f_small:
                continue
            B = _disagreement_set(small, big, u)
            if B is None or B & inc:
                continue
            if affine:
                ok_u = u
                break
            dn = divisor_degree(base, evaluate(big, u))
            if exists_effective_avoiding(base, dn, B, inc):
                ok_u = u
                break
        if ok_u is None:
            return FaceResult(False, "no supporting direction for this point class", inc)
    return FaceResult(True, direction=None)


# -- closure and validation -------------------------------------------------

@dataclass
class FanReport:
    face_failures: list = field(default_factory=list)   # (i, j, FaceResult)
    pp_failures: list = field(default_factory=list)     # (i, verdict)
    complex_failures: list = field(default_factory=list)  # (incidence, i, j)
    gluing_failures: list = field(default_factory=list)  # (i, j, k)
    skipped_checks: list = field(default_factory=list)  # human readable notes

    @property
    def ok(self) -> bool:
        return not (self.face_failures or self.pp_failures
                    or self.complex_failures or self.gluing_failures)

    def summary(self) -> str:
        if self.ok:
            lines = ["valid divisorial fan"]
        else:
            lines = ["not a divisorial fan"]
        for i, j, res in self.face_failures:
            cls = sorted(res.point_class) if res.point_class is not None else None
            lines.append(f"  intersection of #{i} and #{j} is not a face: "
                         f"{res.reason}" + (f" at point class {cls}" if cls else ""))
        for i, verdict in self.pp_failures:
            lines.append(f"  divisor #{i} is not proper (is_pp = {verdict})")
        for inc, i, j in self.complex_failures:
            lines.append(f"  slices at point class {sorted(inc)} of #{i} and #{j} "
                         "do not meet in a common face")
        for i, j, k in self.gluing_failures:
            lines.append(f"  triple intersection of #{i}, #{j}, #{k} depends on order")
        for note in self.skipped_checks:
            lines.append(f"  skipped: {note}")
        return "\n".join(lines)


class FanError(ValueError):
    def __init__(self, report: FanReport):
        super().__init__(report.summary())
        self.report = report


@dataclass
class DivisorialFan:
    base: BaseVariety
    divisors: tuple[PPDivisor, ...]
    generator_count: int
    face_matrix: dict          # (i, j) with i < j -> index of the intersection
    validation: FanReport | None = None
    coherence_certificates: dict | None = None

    @property
    def generators(self) -> tuple[PPDivisor, ...]:
        return self.divisors[: self.generator_count]

    def __len__(self):
        return len(self.divisors)

    def __iter__(self):
        return iter(self.divisors)

    def intersection_of(self, i: int, j: int) -> PPDivisor:
        if i == j:
            return self.divisors[i]
        key = (min(i, j), max(i, j))
        return self.divisors[self.face_matrix[key]]

    @property
    def prime_support(self) -> tuple[str, ...]:
        names: set[str] = set()
        for d in self.divisors:
            names.update(d.support)
        return tuple(sorted(names))


def close_under_intersection(generators) -> tuple[list[PPDivisor], dict]:
    """Pairwise-intersection closure with bookkeeping. Terminates because
    every coefficient of every element is an intersection of original
    coefficients."""
    divisors: list[PPDivisor] = []
    for g in generators:
        if g not in divisors:
            divisors.append(g)
    if not divisors:
        raise ValueError("at least one generator required")
    face_matrix: dict = {}
    pending = [(i, j) for i in range(len(divisors)) for j in range(i + 1, len(divisors))]
    while pending:
        i, j = pending.pop(0)
        c = intersect_divisors(divisors[i], divisors[j])
        try:
            k = divisors.index(c)
        except ValueError:
            k = len(divisors)
            divisors.append(c)
            pending += [(min(k, m), max(k, m)) for m in range(k)]
        face_matrix[(i, j)] = k
    return divisors, face_matrix


def generate_fan(generators, *, require_pp: bool = True) -> DivisorialFan:
    """Close the generators under intersection and validate the result;
    raises FanError with a full report when the set cannot be a divisorial
    fan. Checks without meaning on the base (properness and the open
    embedding criterion on toric bases) are recorded as skipped."""
    gens = list(generators)
    base = gens[0].base
    for g in gens:
        if g.base != base:
            raise ValueError("generators live on different bases")
    divisors, face_matrix = close_under_intersection(gens)
    report = FanReport()

    if require_pp:
        unsupported = False
        for i, d in enumerate(divisors):
            verdict = is_pp(d)
            if verdict == "false":
                report.pp_failures.append((i, verdict))
            elif verdict == "unsupported":
                unsupported = True
        if unsupported:
            report.skipped_checks.append("properness undecided on this base kind")

    if base.has_degrees:
        for (i, j), k in sorted(face_matrix.items()):
            small = divisors[k]
            for parent in (i, j):
                res = is_face(small, divisors[parent])
                if not res:
                    report.face_failures.append((i, j, res))
                    break
    else:
        report.skipped_checks.append("open-embedding face checks undecided on this base kind")

    for inc in base.incidence_sets():
        fibers = [fiber_polyhedron(d, inc) for d in divisors]
        for (i, j), k in sorted(face_matrix.items()):
            fk = fibers[k]
            if not (fk.is_face_of(fibers[i]) and fk.is_face_of(fibers[j])):
                report.complex_failures.append((inc, i, j))

    # gluing consistency over generator triples: equality is on canonical
    # forms, so a discrepancy can only come from a normalization defect
    n = len(gens)
    for i in range(n):
        for j in range(i + 1, n):
            ij = intersect_divisors(divisors[i], divisors[j])
            for k in range(j + 1, n):
                jk = intersect_divisors(divisors[j], divisors[k])
                if intersect_divisors(ij, divisors[k]) != intersect_divisors(divisors[i], jk):
                    report.gluing_failures.append((i, j, k))

    if not report.ok:
        raise FanError(report)
    return DivisorialFan(base, tuple(divisors), len(gens), face_matrix, report)


# -- slices -----------------------------------------------------------------

@dataclass
class Slice:
    mu: WeightFunction
    cells: list[TailedPolyhedron]
    labels: list[str]

    @property
    def nonempty_cells(self) -> list[TailedPolyhedron]:
        return [c for c in self.cells if not c.is_empty]

    def is_complex(self) -> bool:
        return is_polyhedral_complex(self.nonempty_cells)

    def covers(self) -> bool:
        return covers_space(self.nonempty_cells)


def _divisor_list(fan_or_divisors):
    if isinstance(fan_or_divisors, DivisorialFan):
        return list(fan_or_divisors.divisors)
    return list(fan_or_divisors)


def slice_fan(fan_or_divisors, mu: WeightFunction) -> Slice:
    divs = _divisor_list(fan_or_divisors)
    cells = [weighted_sum(d, mu) for d in divs]
    labels = [f"#{i}" for i in range(len(divs))]
    return Slice(mu, cells, labels)


def prime_slice(fan_or_divisors, name: str) -> Slice:
    return slice_fan(fan_or_divisors, WeightFunction.indicator([name]))


def tail_slice(fan_or_divisors) -> Slice:
    return slice_fan(fan_or_divisors, WeightFunction.of({}))


# -- coherence --------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    u: tuple
    constants: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, u, cmap: dict) -> "Certificate":
        return cls(tuple(u), tuple(sorted((str(k), Fraction(v)) for k, v in cmap.items())))

    def constant(self, name: str) -> Fraction:
        return dict(self.constants).get(name, Fraction(0))


@dataclass
class CoherenceResult:
    status: str  # "coherent" | "not_coherent" | "unknown"
    certificates: dict  # (i, j) -> Certificate
    witness_pair: tuple | None = None


def _max_at(p: TailedPolyhedron, u):
    """sup <u, .>; -inf on empty, +inf when unbounded above."""
    if p.is_empty:
        return -math.inf
    m = p.eval_min(neg(vec(u)))
    return math.inf if m == -math.inf else -m


def _slices_equal(a: TailedPolyhedron, b: TailedPolyhedron) -> bool:
    if a.is_empty or b.is_empty:
        return a.is_empty and b.is_empty
    return a == b


def _certificate_at(a: PPDivisor, b: PPDivisor, u) -> dict | None:
    """Constants c_D for the direction u, or None when u does not work.
    The tail pair is the unnamed-prime condition and must come out at 0."""
    names = sorted(set(a.support) | set(b.support))
    items = [(None, a.tail_poly, b.tail_poly)]
    items += [(n, a.coeff(n), b.coeff(n)) for n in names]
    cmap: dict[str, Fraction] = {}
    for name, A, B in items:
        hi = _max_at(A, u)           # left side must stay below c
        lo = B.eval_min(u)           # right side must stay above c
        if A.is_empty and B.is_empty:
            c = Fraction(0)
        elif A.is_empty:
            if lo == -math.inf:
                return None
            c = lo - 1
        elif B.is_empty:
            if hi == math.inf:
                return None
            c = hi + 1
        else:
            if hi == math.inf or lo == -math.inf or hi > lo:
                return None
            if hi < lo:
                c = (hi + lo) / 2
            else:
                c = hi
                if A.face_at(neg(vec(u))) != B.face_at(u):
                    return None
        if name is None:
            if c != 0:
                return None
        else:
            cmap[name] = c
    return cmap


def verify_certificate(a: PPDivisor, b: PPDivisor, cert: Certificate) -> bool:
    """Independent recheck straight from the definition: sides and slice
    equality for every named prime and for the tails."""
    u = vec(cert.u)
    names = sorted(set(a.support) | set(b.support))
    items = [(Fraction(0), a.tail_poly, b.tail_poly)]
    items += [(cert.constant(n), a.coeff(n), b.coeff(n)) for n in names]
    for c, A, B in items:
        if _max_at(A, u) > c or B.eval_min(u) < c:
            return False
        if not _slices_equal(A.cut_hyperplane(u, c), B.cut_hyperplane(u, c)):
            return False
    return True


def _pair_certificate(a: PPDivisor, b: PPDivisor) -> Certificate | None:
    """Exhaustive search over the cell decomposition of u-space."""
    dim = a.tail.dim
    names = sorted(set(a.support) | set(b.support))
    pairs = [(a.tail_poly, b.tail_poly)]
    pairs += [(a.coeff(n), b.coeff(n)) for n in names]
    cones: list[Cone] = []
    for A, B in pairs:
        if not B.is_empty:
            cones += [k for _, k in B.normal_fan()]
        if not A.is_empty:
            cones += [_neg_cone(k) for _, k in A.normal_fan()]
        if not A.is_empty and not B.is_empty:
            for va in A.vertices:
                for vb in B.vertices:
                    d = vec([x - y for x, y in zip(vb, va)])
                    if not is_zero(d):
                        cones += _halfspace_pair(d, dim)
    for u in _candidate_directions(cones):
        cmap = _certificate_at(a, b, u)
        if cmap is not None:
            cert = Certificate.of(u, cmap)
            if verify_certificate(a, b, cert):
                return cert
    return None


def check_coherence(fan_or_divisors) -> CoherenceResult:
    divs = _divisor_list(fan_or_divisors)
    certs: dict = {}
    for i in range(len(divs)):
        for j in range(i + 1, len(divs)):
            cert = _pair_certificate(divs[i], divs[j])
            if cert is None:
                return CoherenceResult("not_coherent", certs, (i, j))
            certs[(i, j)] = cert
    if isinstance(fan_or_divisors, DivisorialFan):
        fan_or_divisors.coherence_certificates = certs
    return CoherenceResult("coherent", certs)


def derive_intersection_certificate(cert_ik: Certificate, cert_jk: Certificate) -> Certificate:
    """Certificate for (D_i cap D_j, D_k) from certificates for (D_i, D_k)
    and (D_j, D_k): directions and constants add. Verify independently."""
    u = tuple(x + y for x, y in zip(vec(cert_ik.u), vec(cert_jk.u)))
    names = {n for n, _ in cert_ik.constants} | {n for n, _ in cert_jk.constants}
    cmap = {n: cert_ik.constant(n) + cert_jk.constant(n) for n in names}
    return Certificate.of(u, cmap)


# -- separateness and completeness -----------------------------------------

@dataclass
class SeparatedResult:
    status: str  # "SEPARATED" | "NOT_SEPARATED" | "PASSED_SAMPLED"
    method: str = ""
    witness_mu: WeightFunction | None = None
    witness_pair: tuple | None = None


@dataclass
class CompleteResult:
    status: str  # "COMPLETE" | "NOT_COMPLETE" | "PASSED_SAMPLED"
    reason: str = ""
    witness_mu: WeightFunction | None = None


def enumerate_weights(base: BaseVariety, bound: int = 3) -> list[WeightFunction]:
    """Integer weight functions with support inside one declared point
    class and entries up to the bound; the zero weight is included."""
    out = [WeightFunction.of({})]
    seen = {out[0]}
    for inc in base.incidence_sets():
        if not inc:
            continue
        names = sorted(inc)
        for combo in product(range(bound + 1), repeat=len(names)):
            if all(c == 0 for c in combo):
                continue
            mu = WeightFunction.of(dict(zip(names, combo)))
            if mu not in seen:
                seen.add(mu)
                out.append(mu)
    return out


def _separated_violation(fan: DivisorialFan, mu: WeightFunction):
    for (i, j), k in sorted(fan.face_matrix.items()):
        lhs = weighted_sum(fan.divisors[k], mu)
        rhs = weighted_sum(fan.divisors[i], mu).intersect(weighted_sum(fan.divisors[j], mu))
        if not _slices_equal(lhs, rhs):
            return (i, j)
    return None


def check_separated(fan: DivisorialFan, mus=(), bound: int = 3) -> SeparatedResult:
    """Separateness of the glued scheme. Exact over curves and whenever the
    fan is coherent; otherwise the slice identity
    mu(D_i cap D_j) = mu(D_i) cap mu(D_j) is sampled over the supplied and
    enumerated weight functions."""
    if fan.base.is_curve:
        return SeparatedResult("SEPARATED", method="curve base")
    co = check_coherence(fan)
    if co.status == "coherent":
        return SeparatedResult("SEPARATED", method="coherent")
    for mu in list(mus) + enumerate_weights(fan.base, bound):
        pair = _separated_violation(fan, mu)
        if pair is not None:
            return SeparatedResult("NOT_SEPARATED", method="slice witness",
                                   witness_mu=mu, witness_pair=pair)
    return SeparatedResult("PASSED_SAMPLED", method="sampled slice identities")


def check_complete(fan: DivisorialFan, mus=(), bound: int = 3) -> CompleteResult:
    """Completeness of the glued scheme. Necessary conditions first (base
    complete, tail fan and every prime slice covering); over a curve these
    are sufficient. Otherwise sampled slice coverings can refute, never
    confirm."""
    if not fan.base.complete:
        return CompleteResult("NOT_COMPLETE", reason="base is not complete")
    if not tail_slice(fan).covers():
        return CompleteResult("NOT_COMPLETE", reason="tail fan does not cover N_Q",
                              witness_mu=WeightFunction.of({}))
    for name in fan.prime_support:
        s = prime_slice(fan, name)
        if not s.covers():
            return CompleteResult("NOT_COMPLETE", reason=f"slice at {name!r} does not cover",
                                  witness_mu=s.mu)
    if fan.base.is_curve:
        return CompleteResult("COMPLETE", reason="complete curve, covering slices")
    sep = check_separated(fan, mus=mus, bound=bound)
    if sep.status == "NOT_SEPARATED":
        return CompleteResult("NOT_COMPLETE", reason="not separated",
                              witness_mu=sep.witness_mu)
    for mu in list(mus) + enumerate_weights(fan.base, bound):
        if not slice_fan(fan, mu).covers():
            return CompleteResult("NOT_COMPLETE", reason="slice does not cover",
                                  witness_mu=mu)
    return CompleteResult("PASSED_SAMPLED", reason="sampled slices all cover")
