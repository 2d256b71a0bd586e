"""Tagged rational vectors.

N is the cocharacter side (where cones and coefficient polyhedra live),
M the character side (evaluation directions, weights). Pairing is only
defined across the two; trying to pair two vectors from the same side is
always a bug in the caller, so it raises.

Geometry kernels accept plain sequences as untagged input; the tag is
checked whenever a RatVec is passed where a specific side is expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import SpaceMismatchError, Vec, dot, vec


@dataclass(frozen=True)
class RatVec:
    coords: Vec
    space: str  # "N" or "M"

    def __post_init__(self):
        object.__setattr__(self, "coords", vec(self.coords))
        if self.space not in ("N", "M"):
            raise ValueError("space must be 'N' or 'M'")

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "RatVec") -> "RatVec":
        if self.space != other.space:
            raise SpaceMismatchError("cannot add N and M vectors")
        return RatVec(tuple(a + b for a, b in zip(self.coords, other.coords)), self.space)

    def __sub__(self, other: "RatVec") -> "RatVec":
        if self.space != other.space:
            raise SpaceMismatchError("cannot subtract N and M vectors")
        return RatVec(tuple(a - b for a, b in zip(self.coords, other.coords)), self.space)

    def __neg__(self) -> "RatVec":
        return RatVec(tuple(-a for a in self.coords), self.space)

    def scale(self, c) -> "RatVec":
        c = Fraction(c)
        return RatVec(tuple(c * a for a in self.coords), self.space)

    def pair(self, other: "RatVec") -> Fraction:
        if not isinstance(other, RatVec):
            return dot(self.coords, vec(other))
        if self.space == other.space:
            raise SpaceMismatchError(
                f"pairing requires one N and one M vector, got two {self.space}"
            )
        return dot(self.coords, other.coords)


def nvec(xs) -> RatVec:
    return RatVec(vec(xs), "N")


def mvec(xs) -> RatVec:
    return RatVec(vec(xs), "M")


def coords_of(x, expect: str | None = None) -> Vec:
    """Unwrap a RatVec (checking its side when expect is given) or convert a
    plain sequence."""
    if isinstance(x, RatVec):
        if expect is not None and x.space != expect:
            raise SpaceMismatchError(f"expected {expect} vector, got {x.space}")
        return x.coords
    return vec(x)
