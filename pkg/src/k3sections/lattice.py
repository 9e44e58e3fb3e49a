"""Exact arithmetic on the rank-2 lattice Z*H + Z*C of a polarized K3 surface.

A K3 surface of degree 2n in P^(n+1) carrying a curve of degree d and genus
g has, in the Picard-number-two case, divisor class group Z*H + Z*C with
intersection numbers

    H.H = 2n,    H.C = d,    C.C = 2g - 2,

where H is the hyperplane class and C the curve class.  Everything in this
module is plain integer arithmetic.  Python integers are exact and
unbounded, so intermediate products cannot wrap or lose precision; the
documented input bounds (n, d, g each at most 10**9, under which every
derived quantity fits in 128-bit signed arithmetic) are enforced when a
SurfaceSpec is created.

Health checks (`lattice_health`) are reported, never enforced: the decision
procedures run on any spec that passes the SurfaceSpec invariants, and it is
exactly the unhealthy specs that exhibit the documented delta = 0 divergence
between the closed-form test and the witness search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from .errors import InvalidInputError

#: Largest accepted value for each of n, d, g.  Within this bound all
#: formulas in the package fit in 128-bit signed integers, which gives
#: consumers of the file formats a checkable contract.
MAX_INPUT = 10**9


@dataclass(frozen=True, slots=True)
class SurfaceSpec:
    """The triple (n, d, g) defining the lattice: degree-2n surface in
    P^(n+1), curve class of degree d and genus g.

    n >= 2, d >= 1, g >= 0; g = 0 and g = 1 are allowed (C^2 = -2 and 0)
    and need no special casing anywhere.
    """

    n: int
    d: int
    g: int

    def __post_init__(self) -> None:
        for name, value, lo in (("n", self.n, 2), ("d", self.d, 1), ("g", self.g, 0)):
            if not isinstance(value, int):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
            if value < lo:
                raise InvalidInputError(f"{name} must be >= {lo}, got {value}")
            if value > MAX_INPUT:
                raise InvalidInputError(f"{name} must be <= {MAX_INPUT}, got {value}")


@dataclass(frozen=True, slots=True)
class DivisorClass:
    """Integer combination a*H + b*C; any pair of integers is a class."""

    a: int
    b: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)


#: The hyperplane class.
H = DivisorClass(1, 0)
#: The curve class.
C = DivisorClass(0, 1)


def gram_matrix(spec: SurfaceSpec) -> tuple[tuple[int, int], tuple[int, int]]:
    """Intersection matrix ((H.H, H.C), (C.H, C.C)) = ((2n, d), (d, 2g-2))."""
    return ((2 * spec.n, spec.d), (spec.d, 2 * spec.g - 2))


def pair(spec: SurfaceSpec, d1: DivisorClass, d2: DivisorClass) -> int:
    """Intersection number of two classes (symmetric bilinear form)."""
    a1, b1 = d1.a, d1.b
    a2, b2 = d2.a, d2.b
    return 2 * spec.n * a1 * a2 + spec.d * (a1 * b2 + a2 * b1) + (2 * spec.g - 2) * b1 * b2


def degree(spec: SurfaceSpec, dc: DivisorClass) -> int:
    """Degree of the class in projective space: dc.H = 2n*a + d*b."""
    return 2 * spec.n * dc.a + spec.d * dc.b


def self_intersection(spec: SurfaceSpec, dc: DivisorClass) -> int:
    """dc.dc = 2*(n*a^2 + d*a*b + (g-1)*b^2); always even (even lattice)."""
    return 2 * (spec.n * dc.a * dc.a + spec.d * dc.a * dc.b + (spec.g - 1) * dc.b * dc.b)


def euler_characteristic(spec: SurfaceSpec, dc: DivisorClass) -> int:
    """chi(O(dc)) = 2 + dc^2/2, by Riemann-Roch on a K3 surface.

    When dc^2 >= -2 and deg dc > 0 this is >= 1, which is what forces the
    linear system of dc to be non-empty; chi(0) = 2 = chi(O_S).
    """
    return 2 + self_intersection(spec, dc) // 2


@dataclass(frozen=True, slots=True)
class LatticeHealth:
    """Sanity flags for a spec; informational only.

    `discriminant` is det of the Gram matrix, 4n(g-1) - d^2; the lattice is
    hyperbolic (signature (1,1)), as any genuine surface's must be, exactly
    when it is negative.  `degree_zero_minus_two_class`, when present, is a
    class P with P.H = 0 and P^2 = -2; no surface with H very ample admits
    one, so its presence flags a spec realized by no actual embedding.
    """

    discriminant: int
    hyperbolic: bool
    degree_zero_minus_two_class: Optional[DivisorClass]


def lattice_health(spec: SurfaceSpec) -> LatticeHealth:
    """Compute the signature and degree-zero sanity flags for ``spec``.

    The classes of degree zero form the rank-1 sublattice generated by
    P0 = (-d/e)*H + (2n/e)*C with e = gcd(2n, d), so a degree-0 class of
    square -2 exists iff t^2 * P0^2 = -2 for some integer t >= 1 (in fact
    only t = 1 can work, since P0^2 is even).
    """
    n, d = spec.n, spec.d
    disc = 4 * n * (spec.g - 1) - d * d
    e = gcd(2 * n, d)
    p0 = DivisorClass(-(d // e), 2 * n // e)
    p0_sq = self_intersection(spec, p0)
    klass = None
    if p0_sq < 0:
        t_sq, rem = divmod(-2, p0_sq)
        if rem == 0 and t_sq >= 1:
            t = isqrt(t_sq)
            if t * t == t_sq:
                klass = DivisorClass(t * p0.a, t * p0.b)
    return LatticeHealth(
        discriminant=disc,
        hyperbolic=disc < 0,
        degree_zero_minus_two_class=klass,
    )
