"""Second submodules, the second spectrum, and module classification."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from functools import cached_property, lru_cache
from typing import Iterator

from .algebra import (
    FiniteModule,
    Submodule,
    annihilator,
    bits,
    colon_ideal,
    enumerate_submodules,
    sum_of,
    zero_colon,
)


def is_second(N: Submodule) -> bool:
    """N is nonzero and every scalar acts on N as zero or onto N.

    N is finite, so surjective multiplication is the same as rN == N.
    """
    if N.is_zero:
        return False
    M = N.owner
    for r in range(M.ring.modulus):
        rN = N.scaled(r).mask
        if rN != 1 and rN != N.mask:
            return False
    return True


def is_second_via_colon(N: Submodule) -> bool:
    """For every scalar r and submodule K: rN in K implies rN = 0 or N in K."""
    if N.is_zero:
        return False
    M = N.owner
    lattice = enumerate_submodules(M)
    for r in range(M.ring.modulus):
        rN = N.scaled(r).mask
        for K in lattice:
            if rN & ~K.mask == 0 and rN != 1 and N.mask & ~K.mask:
                return False
    return True


@dataclass(frozen=True)
class SecondSpectrum:
    owner: FiniteModule
    points: tuple[Submodule, ...]

    @cached_property
    def index(self) -> dict[int, int]:
        return {s.mask: i for i, s in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def pointset(self, mask: int) -> "PointSet":
        return PointSet(self, mask)

    def below_mask(self, N: Submodule) -> int:
        """Point mask of the second submodules contained in N."""
        out = 0
        n = N.mask
        for i, s in enumerate(self.points):
            if s.mask & ~n == 0:
                out |= 1 << i
        return out

    @cached_property
    def strictly_below(self) -> tuple[int, ...]:
        """strictly_below[i]: point mask of points properly contained in point i."""
        return tuple(self.below_mask(s) & ~(1 << i) for i, s in enumerate(self.points))


@dataclass(frozen=True)
class PointSet:
    spectrum: SecondSpectrum
    members: int

    def __iter__(self) -> Iterator[Submodule]:
        pts = self.spectrum.points
        return (pts[i] for i in bits(self.members))

    def __len__(self):
        return self.members.bit_count()

    def __contains__(self, s: Submodule) -> bool:
        i = self.spectrum.index.get(s.mask)
        return i is not None and bool((self.members >> i) & 1)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.spectrum, self.members | other.members)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.spectrum, self.members & other.members)

    def complement(self) -> "PointSet":
        return PointSet(self.spectrum, self.spectrum.full & ~self.members)

    def __le__(self, other: "PointSet") -> bool:
        return self.members & ~other.members == 0


@lru_cache(maxsize=512)
def second_spectrum(M: FiniteModule) -> SecondSpectrum:
    lattice = enumerate_submodules(M)
    return SecondSpectrum(M, tuple(s for s in lattice if is_second(s)))


def socle(N: Submodule) -> Submodule:
    """Sum of the second submodules of the owner contained in N (0 if none)."""
    spec = second_spectrum(N.owner)
    return sum_of(N.owner, (s for s in spec if s.mask & ~N.mask == 0))


def second_dim(M: FiniteModule) -> int:
    """Length of the longest strict chain of second submodules; -1 if there are none."""
    spec = second_spectrum(M)
    if not spec.points:
        return -1
    below = spec.strictly_below
    height: list[int] = []
    # points are sorted by cardinality, so anything strictly below comes first
    for i in range(len(spec)):
        height.append(max((height[j] + 1 for j in bits(below[i])), default=0))
    return max(height)


def minimal_submodules(M: FiniteModule) -> list[Submodule]:
    return list(enumerate_submodules(M).minimal_nonzero)


def v_star(N: Submodule) -> PointSet:
    spec = second_spectrum(N.owner)
    return PointSet(spec, spec.below_mask(N))


def w_s(N: Submodule) -> PointSet:
    return v_star(N).complement()


def t_sum(Y: PointSet) -> Submodule:
    return sum_of(Y.spectrum.owner, Y)


def prime_submodules(M: FiniteModule) -> list[Submodule]:
    """Proper P such that rm in P forces m in P or rM in P."""
    out = []
    table = M.scalar_table
    for P in enumerate_submodules(M):
        if P.is_whole:
            continue
        colon = colon_ideal(P, M)
        ok = True
        for r in range(M.ring.modulus):
            if r in colon:
                continue
            row = table[r]
            for m in range(M.order):
                if (P.mask >> row[m]) & 1 and not (P.mask >> m) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(P)
    return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationFlags:
    is_second_module: bool
    is_semisimple: bool
    is_cosemisimple: bool
    is_comultiplication: bool
    is_weak_comultiplication: bool
    is_cotop: bool
    satisfies_star: bool
    satisfies_star_star: bool
    is_fully_semisecond: bool
    is_fully_semiprime: bool
    is_cocyclic: bool
    is_finitely_cogenerated: bool

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@lru_cache(maxsize=512)
def v_star_masks(M: FiniteModule) -> tuple[int, ...]:
    """V^{s*}(N) as point masks, one per lattice position."""
    spec = second_spectrum(M)
    return tuple(spec.below_mask(N) for N in enumerate_submodules(M))


def v_star_mask(M: FiniteModule, mask: int) -> int:
    """V^{s*} of the submodule with the given element mask."""
    return v_star_masks(M)[enumerate_submodules(M).index[mask]]


def satisfies_star_star(M: FiniteModule) -> bool:
    vs = v_star_masks(M)
    return len(set(vs)) == len(vs)


def satisfies_star(M: FiniteModule) -> bool:
    primes = [P.mask for P in prime_submodules(M)]
    varieties = []
    for N in enumerate_submodules(M):
        v = 0
        for i, p in enumerate(primes):
            if N.mask & ~p == 0:
                v |= 1 << i
        varieties.append(v)
    return len(set(varieties)) == len(varieties)


def is_cotop(M: FiniteModule) -> bool:
    family = sorted(set(v_star_masks(M)))
    members = set(family)
    return all(a | b in members for i, a in enumerate(family) for b in family[i + 1 :])


def is_comultiplication(M: FiniteModule) -> bool:
    return all(zero_colon(M, annihilator(N)).mask == N.mask for N in enumerate_submodules(M))


def is_weak_comultiplication(M: FiniteModule) -> bool:
    return all(zero_colon(M, annihilator(S)).mask == S.mask for S in second_spectrum(M))


def is_semisecond(N: Submodule) -> bool:
    if N.is_zero:
        return False
    n = N.owner.ring.modulus
    return all(N.scaled(r).mask == N.scaled(r * r % n).mask for r in range(n))


def is_fully_semisecond(M: FiniteModule) -> bool:
    return all(is_semisecond(N) for N in enumerate_submodules(M) if not N.is_zero)


def is_fully_semiprime(M: FiniteModule) -> bool:
    """Every proper P: I^2 N in P implies IN in P, over all ideals I and submodules N."""
    lattice = enumerate_submodules(M)
    pairs = []
    for I in M.ring.ideals:
        sq = (I * I).generator
        for N in lattice:
            # I = (d) is principal, so IN = dN
            pairs.append((N.scaled(sq).mask, N.scaled(I.generator).mask))
    for P in lattice:
        if P.is_whole:
            continue
        p = P.mask
        for sq_n, i_n in pairs:
            if sq_n & ~p == 0 and i_n & ~p:
                return False
    return True


def is_semisimple(M: FiniteModule) -> bool:
    return sum_of(M, minimal_submodules(M)).is_whole


def is_cosemisimple(M: FiniteModule) -> bool:
    """Every proper submodule is an intersection of maximal submodules."""
    lattice = enumerate_submodules(M)
    maximal = [m.mask for m in lattice.maximal_proper]
    for N in lattice:
        if N.is_whole:
            continue
        meet = M.full_mask
        for m in maximal:
            if N.mask & ~m == 0:
                meet &= m
        if meet != N.mask:
            return False
    return True


def classical_socle(M: FiniteModule) -> Submodule:
    return sum_of(M, minimal_submodules(M))


def is_cocyclic(M: FiniteModule) -> bool:
    """The classical socle is simple and essential."""
    soc = classical_socle(M)
    mins = minimal_submodules(M)
    if len(mins) != 1 or soc.mask != mins[0].mask:
        return False
    return all(soc.mask & ~N.mask == 0 for N in enumerate_submodules(M) if not N.is_zero)


@lru_cache(maxsize=512)
def classify(M: FiniteModule) -> ClassificationFlags:
    return ClassificationFlags(
        is_second_module=is_second(M.whole),
        is_semisimple=is_semisimple(M),
        is_cosemisimple=is_cosemisimple(M),
        is_comultiplication=is_comultiplication(M),
        is_weak_comultiplication=is_weak_comultiplication(M),
        is_cotop=is_cotop(M),
        satisfies_star=satisfies_star(M),
        satisfies_star_star=satisfies_star_star(M),
        is_fully_semisecond=is_fully_semisecond(M),
        is_fully_semiprime=is_fully_semiprime(M),
        is_cocyclic=is_cocyclic(M),
        is_finitely_cogenerated=True,
    )
