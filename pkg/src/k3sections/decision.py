"""Decision procedures for reducible or non-reduced hyperplane sections.

Three routes answer the same question about a surface spec and are meant to
cross-validate each other:

* `closed_form_decide` compares g against the threshold (d^2 - delta^2)/(4n),
  where delta is the distance from d to the nearest multiple of 2n;
* `brute_force_decide` searches for an explicit witness class D = a*H + b*C
  with 0 < deg D <= n and D^2 >= -2, over a provably sufficient range of b;
* `lemma_branch` reduces the whole search to one candidate class a1*H +/- C
  picked by the residue of d modulo 2n, and tests just that candidate.

On a hyperbolic lattice with delta > 0 all three must agree.  `decide` runs
them side by side and records agreement instead of assuming it.  The one
divergence, surfaced as ``agree = False``, is delta = 0 with g = d^2/(4n)
exactly: the threshold test says a reducible section exists while the degree
window 0 < 2n*a + b*d <= n is unsatisfiable for every (a, b).  Such specs
force a degree-0 class of square -2 (see `lattice_health`), so no embedded
surface with a very ample hyperplane class realizes them.

All residues are taken in [0, 2n) regardless of sign, and all ceilings are
computed by exact integer division; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Optional

from .errors import InvalidInputError, NonHyperbolicLatticeError
from .lattice import (
    H,
    DivisorClass,
    LatticeHealth,
    SurfaceSpec,
    lattice_health,
    self_intersection,
)


def ceil_div(p: int, q: int) -> int:
    """Exact ceiling of p / q for q > 0.

    >>> ceil_div(7, 2)
    4
    >>> ceil_div(6, 3)
    2
    >>> ceil_div(-7, 2)
    -3
    >>> ceil_div(-8, 2)
    -4
    """
    return -((-p) // q)


def _require_nd(n: int, d: int) -> None:
    if n < 2:
        raise InvalidInputError(f"n must be >= 2, got {n}")
    if d < 1:
        raise InvalidInputError(f"d must be >= 1, got {d}")


def delta(n: int, d: int) -> int:
    """Distance from d to the nearest integer multiple of 2n; lies in [0, n].

    >>> delta(3, 8)
    2
    >>> delta(2, 8)
    0
    >>> delta(5, 3)
    3
    """
    _require_nd(n, d)
    r = d % (2 * n)
    return min(r, 2 * n - r)


def _threshold(n: int, d: int, dlt: int) -> int:
    # Writing d = 2nq +/- delta gives d^2 - delta^2 = 4n(nq^2 +/- q*delta),
    # so the division is exact for every (n, d).
    q, rem = divmod(d * d - dlt * dlt, 4 * n)
    assert rem == 0, (n, d, dlt)
    return q


def genus_threshold(n: int, d: int) -> int:
    """Smallest genus admitting a reducible or non-reduced section:
    (d^2 - delta(n, d)^2) / (4n), an exact integer division."""
    _require_nd(n, d)
    return _threshold(n, d, delta(n, d))


def closed_form_decide(spec: SurfaceSpec) -> bool:
    """Threshold test: True iff g >= (d^2 - delta^2)/(4n), i.e. iff some
    hyperplane section is reducible or non-reduced."""
    return spec.g >= genus_threshold(spec.n, spec.d)


def bn_general(spec: SurfaceSpec) -> bool:
    """True iff g < (d^2 - delta^2)/(4n), in which case a general hyperplane
    section is guaranteed to be a Brill-Noether general curve.

    Exactly the negation of `closed_form_decide`.
    """
    return spec.g < genus_threshold(spec.n, spec.d)


def forced_a(n: int, d: int, b: int) -> Optional[int]:
    """The unique a with 0 < 2n*a + b*d <= n, or None when no integer works.

    Adding multiples of 2n to b*d steps the degree 2n*a + b*d through exactly
    one representative in [1, 2n] per residue class, so with
    eps = b*d mod 2n (representative in [0, 2n)) the window (0, n] is hit
    iff 1 <= eps <= n, at a = (eps - b*d)/(2n), with resulting degree eps.

    >>> forced_a(3, 8, 1)
    -1
    >>> forced_a(3, 8, -1) is None
    True
    >>> forced_a(2, 4, 1) is None
    True
    """
    _require_nd(n, d)
    twon = 2 * n
    eps = (b * d) % twon
    if not 1 <= eps <= n:
        return None
    return (eps - b * d) // twon


@dataclass(frozen=True, slots=True)
class Witness:
    """A class D = a*H + b*C certifying a reducible or non-reduced section.

    Its degree lies in (0, n] and its square is >= -2, so D moves in a
    non-empty linear system and splits off from a hyperplane section;
    complement_degree = 2n - degree is the degree of the other summand.
    """

    klass: DivisorClass
    degree: int
    square: int
    complement_degree: int


def witness_search_bound(spec: SurfaceSpec) -> int:
    """Largest |b| any witness can have; defined only on hyperbolic lattices.

    Any (a, b) satisfying the system has degree eps = b*d mod 2n in [1, n]
    and square 2*((eps^2 - d^2*b^2)/(4n) + (g-1)*b^2) >= -2.  Bounding eps^2
    by n^2 and rearranging gives

        b^2 * (d^2 - 4n(g-1)) <= n^2 + 4n,

    so when the left factor is positive the search may stop at
    B = floor(sqrt((n^2 + 4n) / (d^2 - 4n(g-1)))).  When it is not
    (non-hyperbolic lattice) the inequality constrains nothing and no finite
    bound exists: callers get an error rather than a scan that cannot be
    shown to terminate.
    """
    n, d, g = spec.n, spec.d, spec.g
    margin = d * d - 4 * n * (g - 1)
    if margin <= 0:
        raise NonHyperbolicLatticeError(
            f"d^2 - 4n(g-1) = {margin} <= 0 for (n={n}, d={d}, g={g}); "
            "the witness search bound requires a hyperbolic lattice"
        )
    # floor(sqrt(p/q)) == isqrt(p//q) for positive integers: if k = isqrt(p//q)
    # then q*(k+1)^2 >= q*(p//q) + q > p.
    return isqrt((n * n + 4 * n) // margin)


def _witness_at(spec: SurfaceSpec, b: int) -> Optional[Witness]:
    """The witness with this exact b (and the forced a), if one exists."""
    n, d, g = spec.n, spec.d, spec.g
    twon = 2 * n
    eps = (b * d) % twon
    if not 1 <= eps <= n:
        return None
    a = (eps - b * d) // twon
    half_square = n * a * a + d * a * b + (g - 1) * b * b
    if half_square < -1:
        return None
    return Witness(
        klass=DivisorClass(a, b),
        degree=eps,
        square=2 * half_square,
        complement_degree=twon - eps,
    )


def _search(spec: SurfaceSpec, max_abs_b: int) -> Optional[Witness]:
    # Deterministic tie-break: smallest |b| first, positive before negative.
    for abs_b in range(1, max_abs_b + 1):
        for b in (abs_b, -abs_b):
            w = _witness_at(spec, b)
            if w is not None:
                return w
    return None


def brute_force_decide(spec: SurfaceSpec) -> Optional[Witness]:
    """Search exhaustively for a witness; None means none exists.

    b runs over 1 <= |b| <= max(B, 1) with B = `witness_search_bound`;
    |b| = 1 is tried even when B = 0, as insurance against an error in the
    bound derivation.  b = 0 need not be tried: the window 0 < 2n*a <= n
    contains no multiple of 2n.  For each b the value of a is forced, so the
    scan is linear in B.  The first match under the tie-break order
    (smallest |b|, then positive b before negative) is returned, making the
    output deterministic even though witnesses are rarely unique.

    Raises NonHyperbolicLatticeError when d^2 <= 4n(g-1).
    """
    return _search(spec, max(witness_search_bound(spec), 1))


class ResidueBranch(Enum):
    """Which side of n the residue r = d mod 2n falls on."""

    R_LE_N = "r<=n"
    R_GT_N = "r>n"


@dataclass(frozen=True, slots=True)
class LemmaBranch:
    """Single-candidate reduction of the witness search.

    r is the residue of d modulo 2n.  For r <= n the candidate is a1*H + C
    with a1 = ceil(-d/2n); for r > n it is a1*H - C with a1 = ceil(d/2n).
    Either way deg(candidate) = delta(n, d), and condition_holds
    (candidate^2 >= -2) is equivalent to the threshold test, giving a third
    route to the same answer.
    """

    r: int
    branch: ResidueBranch
    a1: int
    candidate: DivisorClass
    condition_holds: bool


def lemma_branch(spec: SurfaceSpec) -> LemmaBranch:
    """Evaluate the single-candidate residue reduction for ``spec``."""
    n, d = spec.n, spec.d
    r = d % (2 * n)
    if r <= n:
        branch = ResidueBranch.R_LE_N
        a1 = ceil_div(-d, 2 * n)
        candidate = DivisorClass(a1, 1)
    else:
        branch = ResidueBranch.R_GT_N
        a1 = ceil_div(d, 2 * n)
        candidate = DivisorClass(a1, -1)
    return LemmaBranch(
        r=r,
        branch=branch,
        a1=a1,
        candidate=candidate,
        condition_holds=self_intersection(spec, candidate) >= -2,
    )


def splitting_witness(
    spec: SurfaceSpec, w: Witness
) -> tuple[tuple[DivisorClass, int], tuple[DivisorClass, int]]:
    """The two summands of the splitting H = D + (H - D) a witness induces,
    each with its degree.  deg D <= n < 2n, so both degrees are positive and
    they sum to 2n."""
    return (w.klass, w.degree), (H - w.klass, 2 * spec.n - w.degree)


@dataclass(frozen=True, slots=True)
class Verdict:
    """Complete decision record for one spec.

    ``agree`` holds iff the threshold test and the witness search reached
    the same answer; disagreement is data, never an error.
    """

    spec: SurfaceSpec
    delta: int
    genus_threshold: int
    closed_form: bool
    brute_force: Optional[Witness]
    lemma: LemmaBranch
    bn_general_guaranteed: bool
    health: LatticeHealth
    agree: bool


def decide(spec: SurfaceSpec) -> Verdict:
    """Run every procedure on ``spec`` and report them side by side.

    Never rejects an unhealthy lattice; health flags travel with the answer.
    On a hyperbolic lattice the witness field is filled by
    `brute_force_decide`.  Otherwise that bounded search is unavailable, but
    none is needed: 4n(g-1) >= d^2 makes the square condition automatic for
    every class with a forced coefficient (half-square >= eps^2/(4n) >= 0),
    so a witness exists iff some b puts eps = b*d mod 2n in [1, n] -- and
    b = +/-1 realizes eps = delta whenever any b works at all (if 2n | d
    every eps is 0).  Searching |b| <= 1 is therefore complete there.
    """
    n, d, g = spec.n, spec.d, spec.g
    dlt = delta(n, d)
    thr = _threshold(n, d, dlt)
    closed = g >= thr
    if d * d - 4 * n * (g - 1) > 0:
        w = brute_force_decide(spec)
    else:
        w = _search(spec, 1)
    return Verdict(
        spec=spec,
        delta=dlt,
        genus_threshold=thr,
        closed_form=closed,
        brute_force=w,
        lemma=lemma_branch(spec),
        bn_general_guaranteed=not closed,
        health=lattice_health(spec),
        agree=closed == (w is not None),
    )
