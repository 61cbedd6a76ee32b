"""Exact arithmetic for Z/nZ and finite modules over it.

Elements of a module are enumerated in mixed-radix order (first coordinate
most significant), so index 0 is always the zero element.  Subsets of a
module are Python ints used as bitmasks over that enumeration; a submodule
is such a mask together with its owner.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 256
MAX_SUBMODULES = 100_000


class CapacityError(RuntimeError):
    """A configured size cap was exceeded; results would be incomplete."""


class DescriptorError(ValueError):
    pass


class DescriptorSyntaxError(DescriptorError):
    pass


class DivisibilityError(DescriptorError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_divisors(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_divisors(n) == [n]


# ---------------------------------------------------------------------------
# Ring and ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicRing:
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"ring modulus must be >= 1, got {self.modulus}")

    @property
    def ideals(self) -> tuple["Ideal", ...]:
        return tuple(Ideal(self, d) for d in divisors(self.modulus))

    def ideal(self, r: int) -> "Ideal":
        """The principal ideal generated by the residue ``r``."""
        return Ideal(self, gcd(r % self.modulus, self.modulus))

    @property
    def zero_ideal(self) -> "Ideal":
        return Ideal(self, self.modulus)

    @property
    def unit_ideal(self) -> "Ideal":
        return Ideal(self, 1)

    def __str__(self):
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class Ideal:
    """The ideal (d) of Z/nZ, with d a divisor of n."""

    ring: CyclicRing
    generator: int

    def __post_init__(self):
        n = self.ring.modulus
        if self.generator < 1 or n % self.generator:
            raise ValueError(f"{self.generator} does not divide {n}")

    def __contains__(self, r: int) -> bool:
        return (r % self.ring.modulus) % self.generator == 0

    def elements(self) -> range:
        return range(0, self.ring.modulus, self.generator)

    def __mul__(self, other: "Ideal") -> "Ideal":
        n = self.ring.modulus
        return Ideal(self.ring, gcd(self.generator * other.generator, n))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, gcd(self.generator, other.generator))

    def __and__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, lcm(self.generator, other.generator))

    def __le__(self, other: "Ideal") -> bool:
        # (a) is contained in (b) iff b | a
        return self.generator % other.generator == 0

    def __ge__(self, other: "Ideal") -> bool:
        return other <= self

    @property
    def is_prime(self) -> bool:
        return is_prime(self.generator)

    def __str__(self):
        return f"({self.generator})"


def make_ring(n: int) -> CyclicRing:
    if n < 1:
        raise ValueError(f"ring modulus must be >= 1, got {n}")
    return CyclicRing(n)


def ring_spectrum(ring: CyclicRing) -> list[Ideal]:
    return [Ideal(ring, p) for p in prime_divisors(ring.modulus)]


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteModule:
    """Z_{d1} + ... + Z_{dk} as a module over Z/nZ.

    Factors are kept sorted in decreasing order; (n, factors) is the identity
    of the module, and two equal descriptors give identical enumerations.
    """

    ring: CyclicRing
    factors: tuple[int, ...]

    def __post_init__(self):
        n = self.ring.modulus
        for d in self.factors:
            if d < 2:
                raise ValueError(f"factor {d} must be >= 2")
            if n % d:
                raise DivisibilityError(f"factor {d} does not divide {n}")
        object.__setattr__(self, "factors", tuple(sorted(self.factors, reverse=True)))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def descriptor(self) -> str:
        return f"Z{self.ring.modulus}[{','.join(map(str, self.factors))}]"

    def __str__(self):
        return self.descriptor

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides, acc = [], 1
        for d in reversed(self.factors):
            strides.append(acc)
            acc *= d
        return tuple(reversed(strides))

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        return sum((a % d) * s for a, d, s in zip(coords, self.factors, self._strides))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        idx, els = self.index, self.elements
        return tuple(
            tuple(idx([a + b for a, b in zip(x, y)]) for y in els) for x in els
        )

    @cached_property
    def scalar_table(self) -> tuple[tuple[int, ...], ...]:
        """scalar_table[r][i] is the index of r * element_i."""
        idx, els = self.index, self.elements
        return tuple(
            tuple(idx([r * a for a in x]) for x in els) for r in range(self.ring.modulus)
        )

    def scale(self, r: int, i: int) -> int:
        return self.scalar_table[r % self.ring.modulus][i]

    def element_order(self, i: int) -> int:
        x = self.elements[i]
        return reduce(lcm, (d // gcd(a, d) for a, d in zip(x, self.factors)), 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def generators(self) -> tuple[int, ...]:
        """Indices of the canonical generators e_1, ..., e_k."""
        k = len(self.factors)
        return tuple(self.index([int(i == j) for j in range(k)]) for i in range(k))

    # -- subgroup closure ---------------------------------------------------

    def extend(self, mask: int, g: int) -> int:
        """Smallest submodule containing the submodule ``mask`` and element ``g``."""
        if (mask >> g) & 1:
            return mask
        members = list(bits(mask))
        add = self.add_table
        result = mask
        t = g
        while not (mask >> t) & 1:
            row = add[t]
            for s in members:
                result |= 1 << row[s]
            t = add[t][g]
        return result

    def span(self, elements: Iterable[int]) -> int:
        mask = 1
        for g in elements:
            mask = self.extend(mask, g)
        return mask

    def is_submodule_mask(self, mask: int) -> bool:
        """Direct check of the submodule axioms on an arbitrary element subset."""
        if not mask & 1:
            return False
        members = list(bits(mask))
        add = self.add_table
        for a in members:
            row = add[a]
            for b in members:
                if not (mask >> row[b]) & 1:
                    return False
        for row in self.scalar_table:
            for a in members:
                if not (mask >> row[a]) & 1:
                    return False
        return True

    def submodule(self, mask: int) -> "Submodule":
        return Submodule(self, mask)

    def generated(self, coords_list: Iterable[Sequence[int]]) -> "Submodule":
        return Submodule(self, self.span(self.index(c) for c in coords_list))

    @property
    def zero(self) -> "Submodule":
        return Submodule(self, 1)

    @property
    def whole(self) -> "Submodule":
        return Submodule(self, self.full_mask)


def make_module(ring: CyclicRing, factors: Sequence[int]) -> FiniteModule:
    for d in factors:
        if d < 2:
            raise ValueError(f"factor {d} must be >= 2")
        if ring.modulus % d:
            raise DivisibilityError(f"factor {d} does not divide {ring.modulus}")
    return FiniteModule(ring, tuple(factors))


def make_z_module(factors: Sequence[int]) -> FiniteModule:
    """A finite Z-module, normalized to a module over Z/lcm(factors)."""
    return make_module(CyclicRing(reduce(lcm, factors, 1)), factors)


@dataclass(frozen=True)
class ModuleElement:
    owner: FiniteModule
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.owner.factors) or any(
            not 0 <= a < d for a, d in zip(self.coords, self.owner.factors)
        ):
            raise ValueError(f"{self.coords} is not an element of {self.owner}")

    @property
    def index(self) -> int:
        return self.owner.index(self.coords)


@dataclass(frozen=True)
class Submodule:
    owner: FiniteModule
    mask: int

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self):
        return self.cardinality

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def elements(self) -> list[tuple[int, ...]]:
        els = self.owner.elements
        return [els[i] for i in bits(self.mask)]

    def __contains__(self, item) -> bool:
        if isinstance(item, ModuleElement):
            item = item.index
        elif isinstance(item, tuple):
            item = self.owner.index(item)
        return bool((self.mask >> item) & 1)

    def __le__(self, other: "Submodule") -> bool:
        _same_owner(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.mask != other.mask

    def __add__(self, other: "Submodule") -> "Submodule":
        return submodule_sum(self, other)

    def __and__(self, other: "Submodule") -> "Submodule":
        return submodule_intersect(self, other)

    @property
    def is_zero(self) -> bool:
        return self.mask == 1

    @property
    def is_whole(self) -> bool:
        return self.mask == self.owner.full_mask

    def scaled(self, r: int) -> "Submodule":
        """The submodule rN."""
        row = self.owner.scalar_table[r % self.owner.ring.modulus]
        out = 0
        for i in bits(self.mask):
            out |= 1 << row[i]
        return Submodule(self.owner, out)

    def sort_key(self):
        return (self.cardinality, self.indices)

    def __repr__(self):
        return f"Submodule({self.owner.descriptor}, {self.elements})"


def _same_owner(a: Submodule, b: Submodule):
    if a.owner != b.owner:
        raise ValueError(f"owner mismatch: {a.owner} vs {b.owner}")


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    _same_owner(a, b)
    M = a.owner
    mask = a.mask
    for g in bits(b.mask & ~a.mask):
        mask = M.extend(mask, g)
    return Submodule(M, mask)


def submodule_intersect(a: Submodule, b: Submodule) -> Submodule:
    _same_owner(a, b)
    return Submodule(a.owner, a.mask & b.mask)


def sum_of(module: FiniteModule, subs: Iterable[Submodule]) -> Submodule:
    total = module.zero
    for s in subs:
        total = submodule_sum(total, s)
    return total


# ---------------------------------------------------------------------------
# Submodule lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleLattice:
    owner: FiniteModule
    all: tuple[Submodule, ...]

    @cached_property
    def index(self) -> dict[int, int]:
        return {s.mask: i for i, s in enumerate(self.all)}

    def __len__(self):
        return len(self.all)

    def __iter__(self):
        return iter(self.all)

    def __contains__(self, s: Submodule) -> bool:
        return s.owner == self.owner and s.mask in self.index

    def position(self, s: Submodule) -> int:
        return self.index[s.mask]

    @cached_property
    def inclusion(self) -> tuple[int, ...]:
        """inclusion[j] is a bitmask over lattice positions i with all[i] <= all[j]."""
        masks = [s.mask for s in self.all]
        out = []
        for b in masks:
            row = 0
            for i, a in enumerate(masks):
                if a & ~b == 0:
                    row |= 1 << i
            out.append(row)
        return tuple(out)

    def leq(self, i: int, j: int) -> bool:
        return self.all[i].mask & ~self.all[j].mask == 0

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram edges (i, j): all[j] covers all[i]."""
        inc = self.inclusion
        edges = []
        for j in range(len(self.all)):
            below = inc[j] & ~(1 << j)
            for i in bits(below):
                if not any(k != i and (inc[k] >> i) & 1 for k in bits(below)):
                    edges.append((i, j))
        return tuple(edges)

    @cached_property
    def minimal_nonzero(self) -> tuple[Submodule, ...]:
        nonzero = [s for s in self.all if not s.is_zero]
        return tuple(
            s for s in nonzero if not any(t.mask != s.mask and t.mask & ~s.mask == 0 for t in nonzero)
        )

    @cached_property
    def maximal_proper(self) -> tuple[Submodule, ...]:
        proper = [s for s in self.all if not s.is_whole]
        return tuple(
            s for s in proper if not any(t.mask != s.mask and s.mask & ~t.mask == 0 for t in proper)
        )


@lru_cache(maxsize=512)
def enumerate_submodules(
    module: FiniteModule, max_order: int = MAX_ORDER, max_submodules: int = MAX_SUBMODULES
) -> SubmoduleLattice:
    """All submodules of ``module``, grown breadth-first from the zero submodule.

    Each known submodule is extended by one element at a time until no new
    submodule appears.  Raises CapacityError instead of truncating.
    """
    if module.order > max_order:
        raise CapacityError(f"module order {module.order} exceeds cap {max_order}")
    seen = {1}
    frontier = [1]
    order = module.order
    while frontier:
        nxt = []
        for mask in frontier:
            for g in range(order):
                if (mask >> g) & 1:
                    continue
                t = module.extend(mask, g)
                if t not in seen:
                    seen.add(t)
                    if len(seen) > max_submodules:
                        raise CapacityError(
                            f"{module}: more than {max_submodules} submodules"
                        )
                    nxt.append(t)
        frontier = nxt
    subs = sorted((Submodule(module, m) for m in seen), key=Submodule.sort_key)
    return SubmoduleLattice(module, tuple(subs))


# ---------------------------------------------------------------------------
# Annihilators and colons
# ---------------------------------------------------------------------------


def _ideal_from_residues(ring: CyclicRing, residues: Iterable[int]) -> Ideal:
    g = ring.modulus
    for r in residues:
        g = gcd(g, r)
    return Ideal(ring, g)


def annihilator(N: Submodule) -> Ideal:
    """Ann_R(N) = {r : rN = 0}."""
    M = N.owner
    members = N.indices
    table = M.scalar_table
    killers = [r for r in range(M.ring.modulus) if all(table[r][i] == 0 for i in members)]
    return _ideal_from_residues(M.ring, killers)


def colon_into(K: Submodule, I: Ideal) -> Submodule:
    """(K :_M I) = {m : Im subset of K}."""
    M = K.owner
    if I.ring != M.ring:
        raise ValueError("ideal and module live over different rings")
    rows = [M.scalar_table[r] for r in I.elements()]
    mask = 0
    for m in range(M.order):
        if all((K.mask >> row[m]) & 1 for row in rows):
            mask |= 1 << m
    return Submodule(M, mask)


def residual_by_scalar(K: Submodule, r: int) -> Submodule:
    """(K :_M r) = {m : rm in K}."""
    M = K.owner
    row = M.scalar_table[r % M.ring.modulus]
    mask = 0
    for m in range(M.order):
        if (K.mask >> row[m]) & 1:
            mask |= 1 << m
    return Submodule(M, mask)


def colon_ideal(N: Submodule, M: FiniteModule | None = None) -> Ideal:
    """(N :_R M) = {r : rM subset of N}."""
    M = M or N.owner
    if N.owner != M:
        raise ValueError("N is not a submodule of M")
    rs = [
        r
        for r in range(M.ring.modulus)
        if all((N.mask >> j) & 1 for j in M.scalar_table[r])
    ]
    return _ideal_from_residues(M.ring, rs)


def zero_colon(M: FiniteModule, I: Ideal) -> Submodule:
    """(0 :_M I)."""
    return colon_into(M.zero, I)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    images: tuple[int, ...]  # target element index for each source generator

    @cached_property
    def table(self) -> tuple[int, ...]:
        tgt = self.target
        add = tgt.add_table
        out = []
        for x in self.source.elements:
            acc = 0
            for a, g in zip(x, self.images):
                acc = add[acc][tgt.scale(a, g)]
            out.append(acc)
        return tuple(out)

    def __call__(self, i: int) -> int:
        return self.table[i]

    @cached_property
    def kernel(self) -> Submodule:
        mask = 0
        for i, j in enumerate(self.table):
            if j == 0:
                mask |= 1 << i
        return Submodule(self.source, mask)

    @cached_property
    def image_mask(self) -> int:
        mask = 0
        for j in self.table:
            mask |= 1 << j
        return mask

    @property
    def image(self) -> Submodule:
        return Submodule(self.target, self.image_mask)

    @property
    def is_injective(self) -> bool:
        return self.kernel.is_zero

    def map_mask(self, mask: int) -> int:
        table = self.table
        out = 0
        for i in bits(mask):
            out |= 1 << table[i]
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.table):
            if (mask >> j) & 1:
                out |= 1 << i
        return out


def _as_index(module: FiniteModule, item) -> int:
    if isinstance(item, ModuleElement):
        if item.owner != module:
            raise ValueError("element belongs to a different module")
        return item.index
    if isinstance(item, int):
        return item
    return module.index(tuple(item))


def make_hom(source: FiniteModule, target: FiniteModule, images: Sequence) -> ModuleHom:
    """Homomorphism sending the i-th canonical generator of ``source`` to images[i]."""
    if source.ring != target.ring:
        raise ValueError("source and target must be modules over the same ring")
    if len(images) != len(source.factors):
        raise ValueError(f"need {len(source.factors)} images, got {len(images)}")
    idx = tuple(_as_index(target, x) for x in images)
    for d, g in zip(source.factors, idx):
        if target.scale(d, g) != 0:
            raise ValueError(
                f"ill-defined: {d} * {target.elements[g]} != 0 in {target}"
            )
    return ModuleHom(source, target, idx)


def hom_image(h: ModuleHom, N: Submodule) -> Submodule:
    if N.owner != h.source:
        raise ValueError("submodule is not in the source")
    return Submodule(h.target, h.map_mask(N.mask))


def hom_preimage(h: ModuleHom, K: Submodule) -> Submodule:
    if K.owner != h.target:
        raise ValueError("submodule is not in the target")
    return Submodule(h.source, h.preimage_mask(K.mask))


def all_homs(source: FiniteModule, target: FiniteModule) -> Iterator[ModuleHom]:
    choices = [
        [j for j in range(target.order) if target.scale(d, j) == 0] for d in source.factors
    ]
    for imgs in itertools.product(*choices):
        yield ModuleHom(source, target, tuple(imgs))


def realize(N: Submodule) -> ModuleHom:
    """A monomorphism from a standalone module onto ``N``.

    Searches for independent elements of N whose orders multiply to |N|,
    largest orders first, backtracking when a choice cannot be completed.
    """
    M = N.owner
    size = N.cardinality
    cands = sorted((i for i in N.indices if i), key=lambda i: (-M.element_order(i), i))
    orders = {i: M.element_order(i) for i in cands}

    def search(span: int, have: int, chosen: list[int]) -> list[int] | None:
        if have == size:
            return chosen
        for i in cands:
            if (span >> i) & 1:
                continue
            grown = M.extend(span, i)
            if grown.bit_count() == have * orders[i]:
                found = search(grown, have * orders[i], chosen + [i])
                if found is not None:
                    return found
        return None

    gens = search(1, 1, [])
    if gens is None:  # pragma: no cover - a basis always exists
        raise RuntimeError(f"no basis found for {N}")
    source = FiniteModule(M.ring, tuple(orders[g] for g in gens))
    h = ModuleHom(source, M, tuple(gens))
    assert h.is_injective and h.image_mask == N.mask
    return h


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

_DESCRIPTOR = re.compile(r"^Z(\d*)\[([\d,]*)\]$")


def parse_descriptor(text: str) -> tuple[CyclicRing, list[int]]:
    """Parse ``Z<n>[d1,d2,...]``; ``Z[...]`` means a Z-module, n = lcm of factors."""
    compact = re.sub(r"\s+", "", text)
    m = _DESCRIPTOR.match(compact)
    if not m:
        raise DescriptorSyntaxError(f"bad module descriptor {text!r}; expected Z<n>[d1,...]")
    body = m.group(2)
    parts = body.split(",") if body else []
    if any(p == "" for p in parts):
        raise DescriptorSyntaxError(f"empty factor in {text!r}")
    factors = [int(p) for p in parts]
    n = int(m.group(1)) if m.group(1) else reduce(lcm, factors, 1)
    if n < 1:
        raise DescriptorSyntaxError(f"ring modulus must be >= 1 in {text!r}")
    for d in factors:
        if d < 2:
            raise DescriptorSyntaxError(f"factor {d} must be >= 2 in {text!r}")
        if n % d:
            raise DivisibilityError(f"factor {d} does not divide {n} in {text!r}")
    return CyclicRing(n), factors


def module_from_descriptor(text: str) -> FiniteModule:
    ring, factors = parse_descriptor(text)
    return make_module(ring, factors)
