"""Exhaustive replay of the second-spectrum theorems over small modules."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from functools import cached_property, lru_cache, reduce
from math import lcm
from typing import Callable, Iterable, Iterator

from .algebra import (
    MAX_ORDER,
    CapacityError,
    CyclicRing,
    FiniteModule,
    ModuleHom,
    Submodule,
    all_homs,
    bits,
    enumerate_submodules,
    realize,
    sum_of,
)
from .second import (
    classify,
    is_second,
    is_second_via_colon,
    minimal_submodules,
    second_dim,
    second_spectrum,
    socle,
    v_star_masks,
)
from .topology import (
    EXHAUSTIVE_POINTS,
    SCAN_LIMIT,
    FiniteTopology,
    is_continuous,
    is_irreducible,
    lemma31_bijection_check,
    nu_map,
    patch_topology,
    psi_map,
    refines,
    same_topology,
    second_zariski,
    separation_profile,
    spectral_check,
    subspace,
)

# embeddings of every point are replayed only for spectra up to this size;
# larger spectra use the maximal second submodules
EMBED_POINT_LIMIT = 64
# pairs are sampled from at most this many evenly spaced points (or V-sets)
PAIR_SAMPLE = 24


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    max_order: int
    max_factors: int | None = None
    ring_policy: str = "exponent"  # exponent | fixed | all
    fixed_n: int | None = None

    def __post_init__(self):
        if self.ring_policy not in ("exponent", "fixed", "all"):
            raise ValueError(f"unknown ring policy {self.ring_policy!r}")
        if self.ring_policy == "fixed" and not self.fixed_n:
            raise ValueError("ring policy 'fixed' needs fixed_n")
        if self.max_order > MAX_ORDER:
            raise CapacityError(f"max_order {self.max_order} exceeds cap {MAX_ORDER}")


def factor_multisets(
    max_order: int, max_factors: int | None = None, allowed: Iterable[int] | None = None
) -> Iterator[tuple[int, ...]]:
    """Non-increasing factor tuples (each >= 2) with product <= max_order."""
    choices = sorted(allowed) if allowed is not None else list(range(2, max_order + 1))
    limit = max_factors if max_factors is not None else max_order

    # largest factor first keeps tuples non-increasing
    def rec(prefix, room):
        yield prefix
        if len(prefix) >= limit:
            return
        top = prefix[-1] if prefix else max_order
        for d in reversed(choices):
            if d <= top and d <= room:
                yield from rec(prefix + (d,), room // d)

    yield from rec((), max_order)


def generate_corpus(spec: CorpusSpec) -> list[FiniteModule]:
    out: list[FiniteModule] = []
    if spec.ring_policy == "exponent":
        for fs in factor_multisets(spec.max_order, spec.max_factors):
            out.append(FiniteModule(CyclicRing(reduce(lcm, fs, 1)), fs))
        key = lambda M: (M.order, len(M.factors), M.ring.modulus, M.factors)
    else:
        rings = [spec.fixed_n] if spec.ring_policy == "fixed" else range(2, spec.max_order + 1)
        if spec.ring_policy == "all":
            out.append(FiniteModule(CyclicRing(1), ()))
        for n in rings:
            allowed = [d for d in range(2, n + 1) if n % d == 0]
            for fs in factor_multisets(spec.max_order, spec.max_factors, allowed):
                if fs:
                    out.append(FiniteModule(CyclicRing(n), fs))
        key = lambda M: (M.order, M.ring.modulus, len(M.factors), M.factors)
    return sorted(set(out), key=key)


# ---------------------------------------------------------------------------
# Per-module analysis, computed once and shared by all checks
# ---------------------------------------------------------------------------


class Analysis:
    def __init__(self, M: FiniteModule):
        self.M = M

    @cached_property
    def lattice(self):
        return enumerate_submodules(self.M)

    @cached_property
    def spec(self):
        return second_spectrum(self.M)

    @cached_property
    def flags(self):
        return classify(self.M)

    @cached_property
    def top(self) -> FiniteTopology:
        return second_zariski(self.M)

    @cached_property
    def profile(self):
        return separation_profile(self.top)

    @cached_property
    def sdim(self) -> int:
        return second_dim(self.M)

    @cached_property
    def vm(self) -> list[int]:
        return v_star_masks(self.M)

    @cached_property
    def point_v(self) -> list[int]:
        """V^{s*}(S) for each spectrum point S."""
        pos = self.lattice.index
        return [self.vm[pos[S.mask]] for S in self.spec]

    @cached_property
    def minimal(self) -> list[Submodule]:
        return minimal_submodules(self.M)

    @cached_property
    def spectral(self):
        return spectral_check(self.top)

    @cached_property
    def patch(self) -> FiniteTopology:
        return patch_topology(self.M)

    @cached_property
    def soc(self) -> Submodule:
        return socle(self.M.whole)

    def union_v(self, Y: int) -> int:
        out = 0
        pv = self.point_v
        for i in bits(Y):
            out |= pv[i]
        return out

    def t_sum(self, Y: int) -> Submodule:
        pts = self.spec.points
        return sum_of(self.M, (pts[i] for i in bits(Y)))

    def sample_sets(self) -> tuple[list[int], str]:
        """Every point subset for small spectra; otherwise a structured sample."""
        n = len(self.spec)
        if n <= EXHAUSTIVE_POINTS:
            return list(range(1 << n)), "exhaustive"
        sets = {0, self.spec.full}
        sets.update(1 << i for i in range(n))
        sets.update((1 << i) | (1 << j) for i, j in itertools.combinations(_spread(range(n)), 2))
        sets.update(self.vm)
        return sorted(sets, key=lambda m: (m.bit_count(), m)), "partial"

    def closed_sets(self) -> tuple[list[int], str]:
        fam = self.top.family_within(SCAN_LIMIT)
        if fam is not None:
            return list(fam), "exhaustive"
        vs = sorted(set(self.vm))
        sets = set(vs)
        sets.update(a | b for a, b in itertools.combinations(_spread(vs), 2))
        return sorted(sets, key=lambda m: (m.bit_count(), m)), "partial"

    @cached_property
    def embeddings(self) -> tuple[list[tuple[str, ModuleHom]], str]:
        """Monomorphisms into M used for the map checks."""
        M = self.M
        out = [("identity", ModuleHom(M, M, M.generators))]
        out.append(("socle", realize(self.soc)))
        coverage = "exhaustive"
        pts = list(self.spec.points)
        if len(pts) > EMBED_POINT_LIMIT:
            coverage = "partial"
            below = self.spec.strictly_below
            # maximal second submodules: not strictly below any other point
            covered = 0
            for b in below:
                covered |= b
            pts = [p for i, p in enumerate(pts) if not (covered >> i) & 1]
        for S in pts:
            out.append((f"point {describe(S)}", realize(S)))
        return out, coverage


def _spread(items) -> list:
    items = list(items)
    if len(items) <= PAIR_SAMPLE:
        return items
    step = (len(items) - 1) / (PAIR_SAMPLE - 1)
    return [items[round(k * step)] for k in range(PAIR_SAMPLE)]


@lru_cache(maxsize=8)
def analysis(M: FiniteModule) -> Analysis:
    return Analysis(M)


def describe(S: Submodule) -> list[list[int]]:
    return [list(x) for x in S.elements]


def describe_points(a: Analysis, Y: int) -> list[list[list[int]]]:
    return [describe(a.spec.points[i]) for i in bits(Y)]


# ---------------------------------------------------------------------------
# Results and the registry
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    witness: dict | None = None
    coverage: str = "exhaustive"
    observed: tuple | None = None
    note: str | None = None


@dataclass
class CheckResult:
    theorem_id: str
    module: str
    status: str  # pass | fail | skipped
    reason: str | None = None
    witness: dict | None = None
    coverage: str = "exhaustive"
    observed: list | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v is not None}


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    hypothesis: Callable[[Analysis], str | None]
    check: Callable[[Analysis], Verdict]


REGISTRY: dict[str, Theorem] = {}


def theorem(tid: str, statement: str, hypothesis: Callable[[Analysis], str | None] | None = None):
    def deco(fn):
        REGISTRY[tid] = Theorem(tid, statement, hypothesis or (lambda a: None), fn)
        return fn

    return deco


def _requires(flag: Callable[[Analysis], bool], name: str):
    return lambda a: None if flag(a) else f"hypothesis not met: {name}"


def _iff(*values: bool, witness: dict | None = None) -> Verdict:
    ok = len(set(values)) <= 1
    return Verdict(ok, None if ok else (witness or {"values": list(values)}), observed=tuple(values))


nonzero = _requires(lambda a: a.M.order > 1, "nonzero module")


@theorem("P2.2", "(**) holds iff every nonzero submodule is a socle submodule", nonzero)
def _p2_2(a: Analysis) -> Verdict:
    bad = [N for N in a.lattice if not N.is_zero and socle(N).mask != N.mask]
    lhs = a.flags.satisfies_star_star
    rhs = not bad
    return _iff(lhs, rhs, witness={"star_star": lhs, "non_socle": describe(bad[0]) if bad else None})


@theorem("C2.3", "semisimple modules satisfy (**)", _requires(lambda a: a.flags.is_semisimple, "semisimple"))
def _c2_3(a: Analysis) -> Verdict:
    return Verdict(a.flags.satisfies_star_star)


@theorem("C2.5", "(*), fully semiprime, (**) and fully semisecond coincide")
def _c2_5(a: Analysis) -> Verdict:
    f = a.flags
    values = (f.satisfies_star, f.is_fully_semiprime, f.satisfies_star_star, f.is_fully_semisecond)
    v = _iff(*values, witness=dict(zip(("star", "fully_semiprime", "star_star", "fully_semisecond"), values)))
    if f.is_cosemisimple != f.satisfies_star:
        v.note = f"finding: cosemisimple={f.is_cosemisimple} differs from the other clauses"
    return v


@theorem("T2.6", "the spectrum is T1 iff its second dimension is at most 0")
def _t2_6(a: Analysis) -> Verdict:
    return _iff(a.profile.t1, a.sdim <= 0)


@theorem("P2.7", "semisimple with dimension 0 iff T1 and (**)", nonzero)
def _p2_7(a: Analysis) -> Verdict:
    f = a.flags
    return _iff(f.is_semisimple and a.sdim == 0, a.profile.t1 and f.satisfies_star_star)


@theorem("T2.10", "a T1 spectrum forces a comultiplication module", _requires(lambda a: a.profile.t1, "T1 spectrum"))
def _t2_10(a: Analysis) -> Verdict:
    return Verdict(a.flags.is_comultiplication)


@theorem("T2.11", "minimal submodules exist iff second submodules do; each second submodule is semisimple")
def _t2_11(a: Analysis) -> Verdict:
    v = _iff(bool(a.minimal), bool(a.spec.points))
    if not v.ok:
        return v
    for S in a.spec:
        inside = [m for m in a.minimal if m.mask & ~S.mask == 0]
        if sum_of(a.M, inside).mask != S.mask:
            return Verdict(False, {"second_not_semisimple": describe(S)}, observed=v.observed)
    return v


@theorem("T2.12", "T1 iff the spectrum is empty or equals the minimal submodules")
def _t2_12(a: Analysis) -> Verdict:
    pts = {S.mask for S in a.spec}
    mins = {m.mask for m in a.minimal}
    return _iff(a.profile.t1, not pts or pts == mins)


@theorem("T2.13", "cofinite iff dimension <= 0 and every V-set is finite or everything")
def _t2_13(a: Analysis) -> Verdict:
    full = a.spec.full
    # every V-set of a finite spectrum is finite
    finite_or_all = all(v == full or v.bit_count() < float("inf") for v in a.vm)
    return _iff(a.profile.cofinite, a.sdim <= 0 and finite_or_all)


@theorem("C2.14", "finite spectrum: Hausdorff, T1, cofinite, discrete and dimension <= 0 coincide")
def _c2_14(a: Analysis) -> Verdict:
    p = a.profile
    return _iff(p.hausdorff, p.t1, p.cofinite, p.discrete, a.sdim <= 0)


@theorem(
    "L2.16",
    "weak comultiplication modules of finite length have a cofinite spectrum",
    _requires(lambda a: a.flags.is_weak_comultiplication, "weak comultiplication"),
)
def _l2_16(a: Analysis) -> Verdict:
    return Verdict(a.profile.cofinite)


@theorem(
    "C2.17",
    "finitely generated cocyclic modules have a cofinite spectrum",
    _requires(lambda a: a.flags.is_cocyclic, "cocyclic"),
)
def _c2_17(a: Analysis) -> Verdict:
    return Verdict(a.profile.cofinite)


@theorem(
    "T2.19",
    "Hausdorff with at least two points: dimension 0 and a cover by proper V-sets",
    _requires(lambda a: a.profile.hausdorff and len(a.spec) >= 2, "Hausdorff with >= 2 points"),
)
def _t2_19(a: Analysis) -> Verdict:
    full = a.spec.full
    cover = 0
    for v in a.vm:
        if v != full:
            cover |= v
    ok = a.sdim == 0 and cover == full
    return Verdict(ok, None if ok else {"second_dim": a.sdim, "proper_cover": cover == full})


def _min_clause(a: Analysis) -> bool:
    return {S.mask for S in a.spec} == {m.mask for m in a.minimal}


@theorem("C2.20", "Artinian: Hausdorff, T1, cofinite, discrete and spectrum = minimal submodules coincide")
def _c2_20(a: Analysis) -> Verdict:
    p = a.profile
    return _iff(p.hausdorff, p.t1, p.cofinite, p.discrete, _min_clause(a))


@theorem("T3.75", "Noetherian: Hausdorff, T1, cofinite, discrete and (empty or minimal) coincide")
def _t3_75(a: Analysis) -> Verdict:
    p = a.profile
    return _iff(p.hausdorff, p.t1, p.cofinite, p.discrete, not a.spec.points or _min_clause(a))


@theorem(
    "L2.22",
    "for a second module, T1 iff the module is its only second submodule",
    _requires(lambda a: a.flags.is_second_module, "second module"),
)
def _l2_22(a: Analysis) -> Verdict:
    return _iff(a.profile.t1, len(a.spec) == 1)


@theorem("L2.25", "second iff the colon criterion holds, for every submodule")
def _l2_25(a: Analysis) -> Verdict:
    for N in a.lattice:
        x, y = is_second(N), is_second_via_colon(N)
        if x != y:
            return Verdict(False, {"submodule": describe(N), "is_second": x, "via_colon": y})
    return Verdict(True)


@theorem("P2.200a", "closure of Y is the union of V(S) over S in Y")
def _p2_200a(a: Analysis) -> Verdict:
    sets, coverage = a.sample_sets()
    for Y in sets:
        if a.top.closure(Y) != a.union_v(Y):
            return Verdict(False, {"Y": describe_points(a, Y)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("P2.200b", "each closed Y is the union of V(S) over S in Y")
def _p2_200b(a: Analysis) -> Verdict:
    sets, coverage = a.closed_sets()
    for Y in sets:
        if a.union_v(Y) != Y:
            return Verdict(False, {"closed_set": describe_points(a, Y)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem(
    "P2.200c",
    "cotop: the closed sets are exactly the V-sets and cl(Y) = V(T(Y))",
    _requires(lambda a: a.flags.is_cotop, "cotop"),
)
def _p2_200c(a: Analysis) -> Verdict:
    if set(a.top.closed_family) != set(a.vm):
        return Verdict(False, {"reason": "closed family differs from the V-sets"})
    sets, coverage = a.sample_sets()
    pos = a.lattice.index
    for Y in sets:
        if a.top.closure(Y) != a.vm[pos[a.t_sum(Y).mask]]:
            return Verdict(False, {"Y": describe_points(a, Y)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("C2.24", "cl({S}) = V(S); S1 in cl({S}) iff S1 <= S; {S} closed iff S is minimal second")
def _c2_24(a: Analysis) -> Verdict:
    pts = a.spec.points
    pv = a.point_v
    below = a.spec.strictly_below
    for i, S in enumerate(pts):
        cl = a.top.closure(1 << i)
        if cl != pv[i]:
            return Verdict(False, {"point": describe(S), "clause": "a"})
        for j, T in enumerate(pts):
            x = bool((cl >> j) & 1)
            y = T.mask & ~S.mask == 0
            z = pv[j] & ~pv[i] == 0
            if not x == y == z:
                return Verdict(False, {"points": [describe(T), describe(S)], "clause": "b"})
        if a.top.is_closed(1 << i) != (below[i] == 0):
            return Verdict(False, {"point": describe(S), "clause": "c"})
    return Verdict(True)


@theorem("L_c22.24", "V(S) is irreducible for every point S")
def _l_c22_24(a: Analysis) -> Verdict:
    for i, S in enumerate(a.spec):
        if not is_irreducible(a.top, a.point_v[i]):
            return Verdict(False, {"point": describe(S)})
    v = Verdict(True)
    whole = is_irreducible(a.top, a.spec.full)
    if a.spec.points and not whole:
        v.note = "whole spectrum is reducible; it is irreducible exactly when soc(M) is second"
    return v


@theorem("T2.25a", "Y irreducible implies T(Y) is second")
def _t2_25a(a: Analysis) -> Verdict:
    sets, coverage = a.sample_sets()
    if coverage == "partial":
        extra, _ = a.closed_sets()
        sets = sorted(set(sets) | set(extra), key=lambda m: (m.bit_count(), m))
    for Y in sets:
        if is_irreducible(a.top, Y) and not is_second(a.t_sum(Y)):
            return Verdict(False, {"Y": describe_points(a, Y)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("T2.25b", "T(Y) second and in cl(Y) implies Y irreducible")
def _t2_25b(a: Analysis) -> Verdict:
    sets, coverage = a.sample_sets()
    for Y in sets:
        T = a.t_sum(Y)
        if not is_second(T):
            continue
        k = a.spec.index[T.mask]
        if (a.top.closure(Y) >> k) & 1 and not is_irreducible(a.top, Y):
            return Verdict(False, {"Y": describe_points(a, Y)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("C2.27", "V(N) irreducible iff soc(N) is second")
def _c2_27(a: Analysis) -> Verdict:
    observed = set()
    for N, v in zip(a.lattice, a.vm):
        lhs = is_irreducible(a.top, v)
        rhs = is_second(a.t_sum(v))
        observed.add((lhs, rhs))
        if lhs != rhs:
            return Verdict(False, {"submodule": describe(N), "irreducible": lhs, "socle_second": rhs})
    whole = is_irreducible(a.top, a.spec.full) == is_second(a.soc)
    return Verdict(whole, None if whole else {"whole_space": True}, observed=tuple(sorted(observed)))


@theorem("L2.28", "the spectrum is T0 and each S is a generic point of V(S)")
def _l2_28(a: Analysis) -> Verdict:
    if not a.profile.t0:
        return Verdict(False, {"reason": "not T0"})
    for i, S in enumerate(a.spec):
        if not a.top.is_closed(a.point_v[i]) or a.top.closure(1 << i) != a.point_v[i]:
            return Verdict(False, {"point": describe(S)})
    return Verdict(True)


@theorem("P2.29c", "cotop iff comultiplication; for cotop modules the closed sets are the V-sets")
def _p2_29c(a: Analysis) -> Verdict:
    f = a.flags
    v = _iff(f.is_cotop, f.is_comultiplication)
    if v.ok and f.is_cotop and set(a.top.closed_family) != set(a.vm):
        return Verdict(False, {"reason": "closed family differs from the V-sets"}, observed=v.observed)
    return v


def _spectral_verdict(a: Analysis) -> Verdict:
    r = a.spectral
    cov = "exhaustive" if r.exhaustive else "partial"
    return Verdict(r.is_spectral, r.failure_witness, cov)


has_points = _requires(lambda a: bool(a.spec.points), "nonempty spectrum")

theorem("P3.30", "comultiplication modules of finite length have a spectral spectrum",
        _requires(lambda a: a.flags.is_comultiplication and a.spec.points, "comultiplication, nonempty spectrum"))(_spectral_verdict)
theorem("T3.31", "a finite second spectrum is a spectral space", has_points)(_spectral_verdict)
theorem("T3.11", "dcc on socle submodules gives a spectral space", has_points)(_spectral_verdict)


@theorem("P3.800", "each irreducible closed set has exactly one generic point")
def _p3_800(a: Analysis) -> Verdict:
    r = a.spectral
    from .topology import generic_points

    for C in r.irreducible_closed_sets:
        pts = generic_points(a.top, C)
        if len(pts) != 1:
            return Verdict(False, {"closed_set": describe_points(a, C), "generic_points": len(pts)})
    return Verdict(True, coverage="exhaustive" if r.exhaustive else "partial")


@theorem("T3.9", "the patch topology refines the Zariski one and makes every V(N), W(N) clopen")
def _t3_9(a: Analysis) -> Verdict:
    patch = a.patch
    if not refines(patch, a.top):
        return Verdict(False, {"reason": "patch does not refine second-zariski"})
    full = a.spec.full
    for N, v in zip(a.lattice, a.vm):
        for s in (v, full & ~v):
            if patch.closure_from_points(s) != s or patch.closure_from_points(full & ~s) != full & ~s:
                return Verdict(False, {"submodule": describe(N)})
    return Verdict(True, note="compactness holds automatically on a finite ground set")


@theorem("L3.1", "S -> f^{-1}(S) is a bijection V(N) -> V(f^{-1}(N)) for monos f and N in im f")
def _l3_1(a: Analysis) -> Verdict:
    embs, coverage = a.embeddings
    for label, h in embs:
        for N in a.lattice:
            if N.mask & ~h.image_mask:
                continue
            if not lemma31_bijection_check(h, N):
                return Verdict(False, {"embedding": label, "submodule": describe(N)}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("P3.3", "nu: S -> f(S) is continuous for monos f")
def _p3_3(a: Analysis) -> Verdict:
    embs, coverage = a.embeddings
    for label, h in embs:
        if not second_spectrum(h.source).points:
            continue
        nu = nu_map(h)
        if not is_continuous(nu, second_zariski(h.source), a.top):
            return Verdict(False, {"embedding": label}, coverage)
    return Verdict(True, coverage=coverage)


@theorem("P3.7", "psi: S -> Ann(S)/I_M is continuous and agrees with psi of soc(M)")
def _p3_7(a: Analysis) -> Verdict:
    psi, dst = psi_map(a.M)
    if not is_continuous(psi, a.top, dst.topology):
        return Verdict(False, {"reason": "psi not continuous"})
    h = realize(a.soc)
    psi_s, dst_s = psi_map(h.source)
    if dst_s.primes != dst.primes:
        return Verdict(False, {"reason": "targets differ", "M": list(dst.primes), "soc": list(dst_s.primes)})
    if second_spectrum(h.source).points:
        nu = nu_map(h)
        for t, img in enumerate(nu.assignment):
            if dst_s.primes[psi_s.assignment[t]] != dst.primes[psi.assignment[img]]:
                return Verdict(False, {"point": describe(a.spec.points[img])})
    return Verdict(True)


@theorem("R100", "the second spectrum of M is that of soc(M)")
def _r100(a: Analysis) -> Verdict:
    if any(S.mask & ~a.soc.mask for S in a.spec):
        return Verdict(False, {"reason": "a second submodule escapes soc(M)"})
    h = realize(a.soc)
    src = second_spectrum(h.source)
    if len(src) != len(a.spec):
        return Verdict(False, {"sizes": [len(src), len(a.spec)]})
    if src.points and sorted(nu_map(h).assignment) != list(range(len(a.spec))):
        return Verdict(False, {"reason": "nu is not a bijection"})
    return Verdict(True)


@theorem("L3.6", "the subspace V(S) is homeomorphic to the spectrum of S")
def _l3_6(a: Analysis) -> Verdict:
    embs, coverage = a.embeddings
    for label, h in embs:
        if not label.startswith("point"):
            continue
        S = Submodule(a.M, h.image_mask)
        i = a.spec.index[S.mask]
        sub, pts = subspace(a.top, a.point_v[i])
        where = {p: k for k, p in enumerate(pts)}
        nu = nu_map(h)
        if sorted(nu.assignment) != pts:
            return Verdict(False, {"point": describe(S), "reason": "nu not onto V(S)"}, coverage)
        own = second_zariski(h.source)
        moved = FiniteTopology(
            len(pts),
            (sum(1 << where[nu.assignment[t]] for t in bits(b)) for b in own.subbasis),
        )
        if not same_topology(sub, moved):
            return Verdict(False, {"point": describe(S)}, coverage)
    return Verdict(True, coverage=coverage)


THEOREM_IDS = tuple(REGISTRY)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------


def run_check(theorem_id: str, M: FiniteModule) -> CheckResult:
    if theorem_id not in REGISTRY:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    th = REGISTRY[theorem_id]
    a = analysis(M)
    try:
        reason = th.hypothesis(a)
        if reason:
            return CheckResult(theorem_id, M.descriptor, "skipped", reason=reason)
        v = th.check(a)
    except CapacityError as exc:
        return CheckResult(theorem_id, M.descriptor, "skipped", reason=f"capacity: {exc}")
    witness = None
    if not v.ok:
        witness = dict(v.witness or {})
        witness["replay"] = f"secondspec verify --modules '{M.descriptor}' --theorems {theorem_id}"
    return CheckResult(
        theorem_id,
        M.descriptor,
        "pass" if v.ok else "fail",
        witness=witness,
        coverage=v.coverage,
        observed=[list(v.observed)] if v.observed is not None and not isinstance(v.observed[0], tuple) else (
            [list(o) for o in v.observed] if v.observed is not None else None
        ),
        note=v.note,
    )


@dataclass
class SuiteReport:
    corpus: dict
    theorem_ids: list[str]
    modules: list[str]
    results: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, dict[str, int]]:
        out = {tid: {"pass": 0, "fail": 0, "skipped": 0, "partial": 0} for tid in self.theorem_ids}
        for r in self.results:
            out[r.theorem_id][r.status] += 1
            if r.status == "pass" and r.coverage == "partial":
                out[r.theorem_id]["partial"] += 1
        return out

    def undistinguished(self) -> list[str]:
        """Equivalences whose sides were never separated across the corpus."""
        out = []
        for tid in self.theorem_ids:
            patterns = set()
            for r in self.results:
                if r.theorem_id == tid and r.observed:
                    patterns.update(tuple(o) for o in r.observed)
            if patterns and len({p[0] for p in patterns}) < 2:
                out.append(tid)
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "corpus": self.corpus,
            "theorem_ids": self.theorem_ids,
            "modules": self.modules,
            "counts": self.counts(),
            "undistinguished": self.undistinguished(),
            "ok": self.ok,
            "results": [r.to_dict() for r in self.results],
        }


def run_suite(
    spec: CorpusSpec | None = None,
    ids: Iterable[str] | None = None,
    modules: Iterable[FiniteModule] | None = None,
) -> SuiteReport:
    ids = list(ids) if ids else list(THEOREM_IDS)
    for tid in ids:
        if tid not in REGISTRY:
            raise KeyError(f"unknown theorem id {tid!r}")
    mods = list(modules) if modules is not None else generate_corpus(spec)
    corpus = asdict(spec) if spec is not None else {"modules": [M.descriptor for M in mods]}
    report = SuiteReport(corpus, ids, [M.descriptor for M in mods])
    for M in mods:
        for tid in ids:
            report.results.append(run_check(tid, M))
    return report


# ---------------------------------------------------------------------------
# Homomorphism corpus
# ---------------------------------------------------------------------------


def monomorphisms(modules: Iterable[FiniteModule]) -> Iterator[ModuleHom]:
    """All injective homs between modules over the same ring."""
    mods = list(modules)
    for A, B in itertools.product(mods, repeat=2):
        if A.ring != B.ring or A.order > B.order or not A.factors:
            continue
        for h in all_homs(A, B):
            if h.is_injective:
                yield h


def check_monomorphism(h: ModuleHom) -> str | None:
    """Continuity of nu and the preimage bijection on every N inside im h.

    Returns a description of the first problem, or None.
    """
    if second_spectrum(h.source).points:
        if not is_continuous(nu_map(h), second_zariski(h.source), second_zariski(h.target)):
            return "nu is not continuous"
    for N in enumerate_submodules(h.target):
        if N.mask & ~h.image_mask == 0 and not lemma31_bijection_check(h, N):
            return f"preimage bijection fails for {describe(N)}"
    return None
