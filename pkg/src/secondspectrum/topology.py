"""Finite topologies given by a closed sub-basis, and the spectra built on them.

Point sets are int bitmasks over ``range(ground_size)``.  A FiniteTopology
always knows the closure of every single point (the intersection of the
sub-basic closed sets through it), which on a finite ground set determines
the whole topology.  The full closed family is built lazily and only up to
``family_cap`` sets; predicates use it literally when it is small enough and
fall back to the point closures otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .algebra import (
    CapacityError,
    FiniteModule,
    ModuleHom,
    Submodule,
    annihilator,
    bits,
    prime_divisors,
)
from .second import second_spectrum, socle, v_star_mask, v_star_masks

FAMILY_CAP = 1 << 20
LITERAL_LIMIT = 512
SCAN_LIMIT = 1 << 16
EXHAUSTIVE_POINTS = 12


def popcount(mask: int) -> int:
    return mask.bit_count()


class FiniteTopology:
    def __init__(
        self,
        ground_size: int,
        closed_subbasis: Iterable[int],
        provenance: str = "custom",
        family_cap: int = FAMILY_CAP,
    ):
        self.ground_size = ground_size
        self.full = (1 << ground_size) - 1
        basis = set()
        for b in closed_subbasis:
            if b & ~self.full:
                raise ValueError(f"sub-basic set {b:#x} exceeds ground size {ground_size}")
            basis.add(b)
        basis.update((0, self.full))
        self.subbasis = tuple(sorted(basis, key=lambda m: (popcount(m), m)))
        self.provenance = provenance
        self.family_cap = family_cap

    def __repr__(self):
        return f"FiniteTopology({self.ground_size} points, {self.provenance})"

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        out = []
        for x in range(self.ground_size):
            c = self.full
            for b in self.subbasis:
                if (b >> x) & 1:
                    c &= b
            out.append(c)
        return tuple(out)

    @cached_property
    def minimal_open(self) -> tuple[int, ...]:
        """Smallest open set containing each point: {y : x in cl({y})}."""
        cl = self.point_closures
        out = [0] * self.ground_size
        for y, c in enumerate(cl):
            for x in bits(c):
                out[x] |= 1 << y
        return tuple(out)

    def closure_from_points(self, Y: int) -> int:
        out = 0
        cl = self.point_closures
        for y in bits(Y):
            out |= cl[y]
        return out

    # -- closed family ------------------------------------------------------

    @cached_property
    def _family_lower_bound_exponent(self) -> int:
        # Points with equal closure size and distinct closures are pairwise
        # incomparable, and every subset of an antichain spans a distinct
        # closed set.
        by_size: dict[int, set[int]] = {}
        for c in self.point_closures:
            by_size.setdefault(popcount(c), set()).add(c)
        return max((len(v) for v in by_size.values()), default=0)

    @cached_property
    def _family(self) -> tuple[int, ...] | None:
        if self.ground_size == 0:
            return (0,)
        if (1 << self._family_lower_bound_exponent) > self.family_cap:
            return None
        cl = self.point_closures
        up = self.minimal_open
        # largest closures first: everything above a point is decided before it
        order = sorted(range(self.ground_size), key=lambda x: (-popcount(cl[x]), x))
        found: list[int] = []
        stack = [(0, 0, 0)]
        while stack:
            pos, inc, exc = stack.pop()
            while pos < len(order) and ((inc | exc) >> order[pos]) & 1:
                pos += 1
            if pos == len(order):
                found.append(inc)
                if len(found) > self.family_cap:
                    return None
                continue
            x = order[pos]
            stack.append((pos + 1, inc, exc | up[x]))
            stack.append((pos + 1, inc | cl[x], exc))
        return tuple(sorted(found, key=lambda m: (popcount(m), m)))

    @property
    def closed_family(self) -> tuple[int, ...]:
        fam = self._family
        if fam is None:
            raise CapacityError(
                f"closed family of {self!r} exceeds cap {self.family_cap}"
            )
        return fam

    def family_within(self, limit: int) -> tuple[int, ...] | None:
        if (1 << min(self._family_lower_bound_exponent, 64)) > limit:
            return None
        fam = self._family
        if fam is None or len(fam) > limit:
            return None
        return fam

    @cached_property
    def _family_set(self) -> frozenset[int]:
        return frozenset(self.closed_family)

    # -- basic predicates ---------------------------------------------------

    def is_closed(self, Y: int) -> bool:
        fam = self.family_within(LITERAL_LIMIT)
        if fam is not None:
            return Y in self._family_set
        return self.closure_from_points(Y) == Y

    def is_open(self, U: int) -> bool:
        return self.is_closed(self.full & ~U)

    def closure_literal(self, Y: int, family: Sequence[int]) -> int:
        out = self.full
        for C in family:
            if Y & ~C == 0:
                out &= C
        return out

    @cached_property
    def _literal_point_closures(self) -> tuple[int, ...]:
        fam = self.closed_family
        return tuple(self.closure_literal(1 << x, fam) for x in range(self.ground_size))

    def closure(self, Y: int) -> int:
        """Intersection of all closed sets containing Y."""
        fam = self.family_within(LITERAL_LIMIT)
        if fam is None:
            return self.closure_from_points(Y)
        if Y and Y & (Y - 1) == 0:
            return self._literal_point_closures[Y.bit_length() - 1]
        return self.closure_literal(Y, fam)


def generate_topology(
    ground_size: int,
    closed_subbasis: Iterable[int],
    provenance: str = "custom",
    family_cap: int = FAMILY_CAP,
    materialize: bool = True,
) -> FiniteTopology:
    """Topology whose closed sets are generated by ``closed_subbasis``.

    With ``materialize`` the closed family is built at once, raising
    CapacityError if it has more than ``family_cap`` members.
    """
    top = FiniteTopology(ground_size, closed_subbasis, provenance, family_cap)
    if materialize:
        top.closed_family
    return top


def closure(top: FiniteTopology, Y: int) -> int:
    return top.closure(Y)


@dataclass(frozen=True)
class SeparationProfile:
    t0: bool
    t1: bool
    hausdorff: bool
    discrete: bool
    cofinite: bool


def separation_profile(top: FiniteTopology) -> SeparationProfile:
    n = top.ground_size
    cl = top.point_closures
    t0 = len(set(cl)) == n
    t1 = all(top.is_closed(1 << x) for x in range(n))
    nbhd = top.minimal_open
    hausdorff = all(nbhd[x] & nbhd[y] == 0 for x, y in itertools.combinations(range(n), 2))
    discrete = all(top.is_open(1 << x) for x in range(n))
    # cofinite: closed sets are exactly the finite sets and the whole space;
    # every subset of a finite ground set is finite
    if n <= EXHAUSTIVE_POINTS:
        cofinite = all(top.is_closed(Y) for Y in range(top.full + 1))
    else:
        # finite subsets are finite unions of points, and closed sets are
        # closed under finite unions, so closed points suffice
        cofinite = all(top.closure_from_points(1 << x) == 1 << x for x in range(n))
    return SeparationProfile(t0, t1, hausdorff, discrete, cofinite)


def is_irreducible(top: FiniteTopology, Y: int) -> bool:
    """Y is nonempty and any two closed sets covering Y have one containing Y."""
    if not Y:
        return False
    fam = top.family_within(LITERAL_LIMIT)
    if fam is not None:
        for C1 in fam:
            if Y & ~C1 == 0:
                continue
            # the smallest closed set covering the rest of Y
            C2 = top.closure_from_points(Y & ~C1)
            if Y & ~C2:
                return False
        return True
    # finite space: Y is a finite union of the closures of its points
    cl = top.point_closures
    return any(Y & ~cl[y] == 0 for y in bits(Y))


def generic_points(top: FiniteTopology, Y: int) -> list[int]:
    if not top.is_closed(Y):
        raise ValueError(f"{Y:#x} is not closed")
    return [y for y in bits(Y) if top.closure(1 << y) == Y]


@dataclass
class SpectralReport:
    is_t0: bool
    irreducible_closed_sets: list[int]
    generic_point_of: dict[int, int]
    is_spectral: bool
    failure_witness: dict | None = None
    exhaustive: bool = True
    quasi_compact: str = "automatic: finite ground set"
    quasi_compact_open_base: str = "automatic: finite ground set"


def spectral_check(top: FiniteTopology) -> SpectralReport:
    cl = top.point_closures
    witness = None
    seen: dict[int, int] = {}
    t0 = True
    for x, c in enumerate(cl):
        if c in seen:
            t0 = False
            witness = {"kind": "not_t0", "points": [seen[c], x]}
            break
        seen[c] = x
    fam = top.family_within(SCAN_LIMIT)
    exhaustive = fam is not None
    if fam is None:
        # every irreducible closed set is the closure of one of its points
        candidates = sorted(set(cl), key=lambda m: (popcount(m), m))
    else:
        candidates = list(fam)
    irreducible = [C for C in candidates if is_irreducible(top, C)]
    generic: dict[int, int] = {}
    for C in irreducible:
        pts = generic_points(top, C)
        if pts:
            generic[C] = pts[0]
        elif witness is None:
            witness = {"kind": "no_generic_point", "closed_set": C}
    spectral = t0 and len(generic) == len(irreducible)
    return SpectralReport(t0, irreducible, generic, spectral, None if spectral else witness, exhaustive)


def refines(fine: FiniteTopology, coarse: FiniteTopology) -> bool:
    """Every closed set of ``coarse`` is closed in ``fine``."""
    if fine.ground_size != coarse.ground_size:
        raise ValueError("topologies live on different ground sets")
    # closed sets of fine are closed under finite unions and intersections
    return all(fine.closure_from_points(b) == b for b in coarse.subbasis)


def same_topology(a: FiniteTopology, b: FiniteTopology) -> bool:
    return refines(a, b) and refines(b, a)


@dataclass(frozen=True)
class PointMap:
    source_size: int
    target_size: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source_size:
            raise ValueError("point map must be total on its source")
        if any(not 0 <= t < self.target_size for t in self.assignment):
            raise ValueError("point map image out of range")

    def preimage(self, Y: int) -> int:
        out = 0
        for i, t in enumerate(self.assignment):
            if (Y >> t) & 1:
                out |= 1 << i
        return out

    def image(self, X: int) -> int:
        out = 0
        for i in bits(X):
            out |= 1 << self.assignment[i]
        return out


def is_continuous(f: PointMap, src: FiniteTopology, dst: FiniteTopology) -> bool:
    if f.source_size != src.ground_size or f.target_size != dst.ground_size:
        raise ValueError("map does not match the given spaces")
    return all(src.closure_from_points(pre) == pre for pre in map(f.preimage, dst.subbasis))


def subspace(top: FiniteTopology, Y: int, provenance: str = "subspace") -> tuple[FiniteTopology, list[int]]:
    """Induced topology on Y, re-indexed along the increasing points of Y."""
    pts = list(bits(Y))

    def pull(b: int) -> int:
        return sum(1 << k for k, y in enumerate(pts) if (b >> y) & 1)

    return FiniteTopology(len(pts), (pull(b) for b in top.subbasis), provenance), pts


# ---------------------------------------------------------------------------
# Topologies on the second spectrum
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def second_zariski(M: FiniteModule, family_cap: int = FAMILY_CAP) -> FiniteTopology:
    spec = second_spectrum(M)
    return FiniteTopology(len(spec), set(v_star_masks(M)), "second-zariski", family_cap)


def patch_topology(M: FiniteModule, family_cap: int = FAMILY_CAP) -> FiniteTopology:
    """Topology with every V^{s*}(N) and every W^s(K) open.

    The sets V^{s*}(N) & W^s(K) are pairwise intersections of these, and
    conversely each V^{s*}(N) = V^{s*}(N) & W^s(0) and W^s(K) = V^{s*}(M) & W^s(K),
    so both families generate the same topology.
    """
    spec = second_spectrum(M)
    full = spec.full
    vs = set(v_star_masks(M))
    closed = {full & ~v for v in vs} | vs
    return FiniteTopology(len(spec), closed, "patch", family_cap)


@dataclass(frozen=True)
class RingSpectrumSpace:
    """Spec(R/I) for R = Z/n and I = (i): the primes p | i."""

    modulus: int
    ideal_generator: int
    primes: tuple[int, ...]
    topology: FiniteTopology


def quotient_spectrum(modulus: int, i: int) -> RingSpectrumSpace:
    primes = tuple(prime_divisors(i)) if i > 1 else ()
    closed = []
    for d in range(1, i + 1):
        if i % d == 0:
            # V((d)/I): primes containing d
            closed.append(sum(1 << k for k, p in enumerate(primes) if d % p == 0))
    top = FiniteTopology(len(primes), closed, "ring-spectrum")
    return RingSpectrumSpace(modulus, i, primes, top)


def psi_map(M: FiniteModule) -> tuple[PointMap, RingSpectrumSpace]:
    """S -> Ann(S)/I_M into Spec(R/I_M), with I_M = Ann(soc M)."""
    spec = second_spectrum(M)
    i_m = annihilator(socle(M.whole)).generator
    dst = quotient_spectrum(M.ring.modulus, i_m)
    assignment = []
    for S in spec:
        ann = annihilator(S)
        if not ann.is_prime:
            raise ArithmeticError(f"annihilator {ann} of second submodule {S} is not prime")
        assignment.append(dst.primes.index(ann.generator))
    return PointMap(len(spec), len(dst.primes), tuple(assignment)), dst


def nu_map(h: ModuleHom) -> PointMap:
    """S -> f(S) from the second spectrum of the source into that of the target."""
    if not h.is_injective:
        raise ValueError("nu is only defined for monomorphisms")
    src = second_spectrum(h.source)
    dst = second_spectrum(h.target)
    if not src.points:
        raise ValueError("source module has no second submodules")
    assignment = []
    for S in src:
        j = dst.index.get(h.map_mask(S.mask))
        if j is None:
            raise ArithmeticError(f"image of {S} is not a second submodule of the target")
        assignment.append(j)
    return PointMap(len(src), len(dst), tuple(assignment))


def lemma31_bijection_check(h: ModuleHom, N: Submodule) -> bool:
    """S -> f^{-1}(S) maps V^{s*}(N) bijectively onto V^{s*}(f^{-1}(N))."""
    if not h.is_injective:
        raise ValueError("homomorphism is not injective")
    if N.owner != h.target or N.mask & ~h.image_mask:
        raise ValueError("N must be a submodule of the image")
    tgt = second_spectrum(h.target)
    src = second_spectrum(h.source)
    v_n = v_star_mask(h.target, N.mask)
    v_pre = v_star_mask(h.source, h.preimage_mask(N.mask))
    hit = 0
    for i in bits(v_n):
        j = src.index.get(h.preimage_mask(tgt.points[i].mask))
        if j is None or not (v_pre >> j) & 1 or (hit >> j) & 1:
            return False
        hit |= 1 << j
    return hit == v_pre
