"""Toric downgrades: reading a polyhedral divisor off a cone when the
acting torus is cut down along a surjection of lattices.

The input is the matrix of a surjection deg from the big character lattice
onto the character lattice of the subtorus we keep (rows), together with an
integral section. The kernel basis, in Hermite-derived sign-normalized
form, provides the projection to the quotient lattice; its images of the
faces of the input cone, refined against one another, form the fan of the
quotient base. Coefficients are section-transposed slices of the cone over
the primitive ray generators of that fan.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import BaseVariety, ray_name
from .geom import linalg as la
from .geom.cone import Cone
from .geom.fans import common_refinement
from .geom.polyhedron import TailedPolyhedron
from .ppdiv import PPDivisor


@dataclass(frozen=True)
class DowngradeData:
    """The split exact sequence behind a downgrade.

    deg: rows of the surjection N' -> N.
    section: rows of a right inverse N -> N' (deg . section = id).
    kernel: basis vectors of ker(deg) as a saturated sublattice, each
        sign-normalized so the first nonzero entry is positive; read as
        rows they are the projection N' -> N''.
    """

    deg: tuple
    section: tuple
    kernel: tuple

    @classmethod
    def from_deg(cls, deg, section=None) -> "DowngradeData":
        dm = la.mat(deg)
        if not dm or not dm[0]:
            raise ValueError("deg needs at least one row and one column")
        n = len(dm[0])
        m = len(dm)
        for row in dm:
            for x in row:
                if x.denominator != 1:
                    raise ValueError("deg must be an integer matrix")
        if la.rank(list(dm)) != m:
            raise ValueError("deg must have full row rank")
        default = la.int_section(dm)
        if default is None:
            raise ValueError("deg is not surjective onto the integral lattice")
        if section is None:
            sec = default
        else:
            sec = la.mat(section)
            if len(sec) != n or any(len(r) != m for r in sec):
                raise ValueError(f"section must be a {n}x{m} matrix (columns in N')")
            for row in sec:
                for x in row:
                    if x.denominator != 1:
                        raise ValueError("section must be integral")
            if la.matmul(dm, sec) != la.identity(m):
                raise ValueError("deg . section is not the identity")
        ker = la.int_kernel_basis(dm)
        if len(ker) + m != n:
            raise ValueError("kernel rank does not complement deg; sequence not exact")
        return cls(tuple(dm), tuple(sec), tuple(ker))

    @property
    def source_dim(self) -> int:
        return len(self.deg[0])

    @property
    def quotient_dim(self) -> int:
        return len(self.kernel)

    @property
    def projection(self):
        """Rows of p: N' -> N'', the transposed kernel basis."""
        return self.kernel

    @property
    def coefficient_map(self):
        """Rows of the transposed section, carrying slices into N_Q."""
        return tuple(la.transpose(self.section))

    def retraction(self):
        """t with kernel . t = id - section . deg, the quotient-side
        splitting. Informational; coefficients never consult it."""
        n = self.source_dim
        sd = la.matmul(self.section, self.deg)
        bmat = la.transpose(self.kernel)  # kernel vectors as columns
        cols = []
        for j in range(n):
            b = tuple((1 if i == j else 0) - sd[i][j] for i in range(n))
            x = la.int_solve(list(bmat), b)
            if x is None:
                raise AssertionError("retraction solve failed; kernel basis inconsistent")
            cols.append(x)
        return tuple(la.transpose(cols))


def _check_cone(delta: Cone, data: DowngradeData):
    if delta.dim != data.source_dim:
        raise ValueError("cone dimension does not match deg")
    if delta.lines:
        raise ValueError("input cone must be pointed")


def quotient_fan(data: DowngradeData, cones) -> list[Cone]:
    """All cells of the common refinement of the projected faces."""
    pieces = []
    for delta in cones:
        _check_cone(delta, data)
        for f in delta.faces():
            pieces.append(f.image(data.projection))
    return common_refinement(pieces)


def maximal_cells(cells) -> list[Cone]:
    return [c for c in cells
            if not any(d != c and d.contains_cone(c) for d in cells)]


def _slice_at(delta: Cone, data: DowngradeData, rho) -> TailedPolyhedron:
    """s-transposed image of {x in delta : p(x) = rho}."""
    poly = TailedPolyhedron.cone_poly(delta)
    for prow, level in zip(data.projection, rho):
        poly = poly.cut_hyperplane(prow, level)
    return poly.image(data.coefficient_map)


def downgrade_cone(delta: Cone, data: DowngradeData,
                   base: BaseVariety | None = None) -> PPDivisor:
    """The polyhedral divisor of a single cone over the quotient base.

    When no base is passed, one is built from the maximal cells of the
    quotient fan of this cone alone; to put several cones on a common
    footing, build the base from the full quotient fan first."""
    _check_cone(delta, data)
    if base is None:
        cells = quotient_fan(data, [delta])
        base = BaseVariety.toric(maximal_cells(cells))
    tail = _slice_at(delta, data, [0] * data.quotient_dim).tail
    coeffs = {}
    for prime in base.primes:
        if prime.ray is None:
            raise ValueError("downgrade base must be toric")
        coeffs[prime.name] = _slice_at(delta, data, prime.ray)
    return PPDivisor(base, tail, coeffs)


def downgrade_fan(cones, data: DowngradeData) -> list[PPDivisor]:
    """One divisor per maximal cone, on a base shared by all of them."""
    cones = list(cones)
    cells = quotient_fan(data, cones)
    base = BaseVariety.toric(maximal_cells(cells))
    return [downgrade_cone(delta, data, base) for delta in cones]
