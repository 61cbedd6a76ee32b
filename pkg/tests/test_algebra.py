import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from secondspectrum.algebra import (
    CapacityError,
    DescriptorSyntaxError,
    DivisibilityError,
    ModuleElement,
    Submodule,
    all_homs,
    annihilator,
    colon_ideal,
    colon_into,
    enumerate_submodules,
    hom_image,
    hom_preimage,
    make_hom,
    make_module,
    make_ring,
    make_z_module,
    module_from_descriptor,
    parse_descriptor,
    realize,
    residual_by_scalar,
    ring_spectrum,
    zero_colon,
)
from secondspectrum.verify import CorpusSpec, generate_corpus


def sub(M, *coords):
    return M.generated(coords)


def elems(N):
    return {tuple(x) for x in N.elements}


# ---------------------------------------------------------------- rings


@pytest.mark.parametrize(
    "n, gens",
    [(6, [1, 2, 3, 6]), (1, [1]), (4, [1, 2, 4]), (12, [1, 2, 3, 4, 6, 12])],
)
def test_ideals_are_divisors(n, gens):
    assert [I.generator for I in make_ring(n).ideals] == gens


@pytest.mark.parametrize("n, primes", [(6, [2, 3]), (4, [2]), (1, []), (30, [2, 3, 5])])
def test_ring_spectrum(n, primes):
    assert [P.generator for P in ring_spectrum(make_ring(n))] == primes


def test_ideal_arithmetic():
    R = make_ring(12)
    a, b = R.ideal(2), R.ideal(3)
    assert (a + b).generator == 1
    assert (a & b).generator == 6
    assert (a * a).generator == 4
    assert R.ideal(4) <= a and not a <= R.ideal(4)
    assert 8 in a and 3 not in a
    assert R.ideal(5) == R.unit_ideal
    assert R.ideal(0) == R.zero_ideal


def test_make_ring_rejects_nonpositive():
    with pytest.raises(ValueError):
        make_ring(0)


# ---------------------------------------------------------------- modules


def test_module_orders():
    assert make_module(make_ring(6), [6]).order == 6
    assert make_module(make_ring(2), [2, 2]).order == 4
    assert make_module(make_ring(1), []).order == 1


def test_make_module_checks_divisibility():
    with pytest.raises(DivisibilityError):
        make_module(make_ring(4), [3])
    with pytest.raises(ValueError):
        make_module(make_ring(4), [1])


def test_z_module_uses_exponent():
    assert make_z_module([4, 2]).ring.modulus == 4
    assert make_z_module([3, 2]).ring.modulus == 6


@pytest.mark.parametrize(
    "text, n, factors",
    [
        ("Z6[6]", 6, [6]),
        ("Z2[2,2]", 2, [2, 2]),
        (" Z4 [ 4 , 2 ] ", 4, [4, 2]),
        ("Z4[2,4]", 4, [4, 2]),
        ("Z1[]", 1, []),
        ("Z[4,2]", 4, [4, 2]),
    ],
)
def test_parse_descriptor(text, n, factors):
    ring, fs = parse_descriptor(text)
    assert ring.modulus == n
    assert list(module_from_descriptor(text).factors) == factors


@pytest.mark.parametrize("text", ["Z4[4", "Q4[4]", "Z4(4)", "Z4[a]", "", "Z0[]"])
def test_descriptor_syntax_errors(text):
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor(text)


def test_descriptor_divisibility_error_is_distinct():
    with pytest.raises(DivisibilityError) as exc:
        parse_descriptor("Z4[3]")
    assert not isinstance(exc.value, DescriptorSyntaxError)
    assert "3" in str(exc.value) and "4" in str(exc.value)


def test_descriptor_round_trip():
    for M in generate_corpus(CorpusSpec(24, ring_policy="all")):
        assert module_from_descriptor(M.descriptor) == M


def test_element_validation():
    M = module_from_descriptor("Z4[4,2]")
    assert ModuleElement(M, (3, 1)).index == M.index((3, 1))
    with pytest.raises(ValueError):
        ModuleElement(M, (4, 0))


# ---------------------------------------------------------------- lattice


@pytest.mark.parametrize("desc, count", [("Z4[4]", 3), ("Z2[2,2]", 5), ("Z6[6]", 4), ("Z1[]", 1)])
def test_submodule_counts(desc, count):
    assert len(enumerate_submodules(module_from_descriptor(desc))) == count


def test_z4_submodules_exactly():
    M = module_from_descriptor("Z4[4]")
    got = [sorted(elems(N)) for N in enumerate_submodules(M)]
    assert got == [[(0,)], [(0,), (2,)], [(0,), (1,), (2,), (3,)]]


# frozen from the generator-closure oracle
FROZEN_COUNTS = {
    "Z2[2,2,2]": 16,
    "Z4[4,2]": 8,
    "Z4[4,4]": 15,
    "Z8[8,2]": 11,
    "Z4[4,2,2]": 27,
    "Z2[2,2,2,2]": 67,
    "Z16[16]": 5,
    "Z12[12]": 6,
    "Z6[6,2]": 10,
}


@pytest.mark.parametrize("desc, count", sorted(FROZEN_COUNTS.items()))
def test_frozen_submodule_counts(desc, count):
    assert len(enumerate_submodules(module_from_descriptor(desc))) == count


def test_lattice_matches_subset_oracle_small():
    for M in generate_corpus(CorpusSpec(8, ring_policy="all")):
        want = O.submodules_by_subsets(M.factors, M.ring.modulus)
        got = {frozenset(elems(N)) for N in enumerate_submodules(M)}
        assert got == want, M.descriptor


@pytest.mark.slow
def test_lattice_matches_generator_oracle():
    for M in generate_corpus(CorpusSpec(16, ring_policy="all")):
        want = O.submodules_by_generators(M.factors, M.ring.modulus)
        got = {frozenset(elems(N)) for N in enumerate_submodules(M)}
        assert got == want, M.descriptor


def test_lattice_is_sorted_and_closed():
    M = module_from_descriptor("Z4[4,2]")
    L = enumerate_submodules(M)
    keys = [N.sort_key() for N in L]
    assert keys == sorted(keys)
    for A in L:
        assert M.is_submodule_mask(A.mask)
        for B in L:
            assert (A + B) in L and (A & B) in L


def test_covers_and_extremes():
    M = module_from_descriptor("Z2[2,2]")
    L = enumerate_submodules(M)
    assert len(L.covers) == 6
    assert len(L.minimal_nonzero) == 3 and len(L.maximal_proper) == 3


def test_capacity_error():
    M = module_from_descriptor("Z2[2,2,2,2,2,2]")
    with pytest.raises(CapacityError):
        enumerate_submodules(M, max_submodules=100)
    with pytest.raises(CapacityError):
        enumerate_submodules(module_from_descriptor("Z2[2,2,2,2,2,2,2,2,2]"))


def test_sum_and_intersection_examples():
    M = module_from_descriptor("Z6[6]")
    two, three = sub(M, (2,)), sub(M, (3,))
    assert (two + three).is_whole
    assert (two & three).is_zero
    assert (two & two) == two


# ---------------------------------------------------------------- annihilators and colons


def test_annihilator_examples():
    Z4 = module_from_descriptor("Z4[4]")
    Z6 = module_from_descriptor("Z6[6]")
    assert annihilator(sub(Z4, (2,))).generator == 2
    assert annihilator(Z4.zero).generator == 1
    assert annihilator(sub(Z6, (2,))).generator == 3


def test_zero_colon_examples():
    Z6 = module_from_descriptor("Z6[6]")
    Z4 = module_from_descriptor("Z4[4]")
    assert elems(zero_colon(Z6, Z6.ring.ideal(2))) == {(0,), (3,)}
    assert zero_colon(Z6, Z6.ring.unit_ideal).is_zero
    assert elems(zero_colon(Z4, Z4.ring.ideal(2))) == {(0,), (2,)}


def test_residual_examples():
    Z4 = module_from_descriptor("Z4[4]")
    Z6 = module_from_descriptor("Z6[6]")
    assert elems(residual_by_scalar(Z4.zero, 2)) == {(0,), (2,)}
    assert residual_by_scalar(Z4.zero, 0).is_whole
    assert elems(residual_by_scalar(sub(Z6, (3,)), 2)) == {(0,), (3,)}
    assert colon_into(Z4.zero, Z4.ring.ideal(2)) == residual_by_scalar(Z4.zero, 2)


def test_colon_ideal_examples():
    Z6 = module_from_descriptor("Z6[6]")
    Z4 = module_from_descriptor("Z4[4]")
    assert colon_ideal(sub(Z6, (2,)), Z6).generator == 2
    assert colon_ideal(Z6.whole, Z6).generator == 1
    assert colon_ideal(Z4.zero, Z4).generator == 4


descriptors = st.sampled_from([M.descriptor for M in generate_corpus(CorpusSpec(16, ring_policy="all"))])


@settings(max_examples=60, deadline=None)
@given(descriptors, st.data())
def test_annihilator_is_literal(desc, data):
    M = module_from_descriptor(desc)
    L = enumerate_submodules(M)
    N = data.draw(st.sampled_from(L.all))
    ann = annihilator(N)
    for r in range(M.ring.modulus):
        kills = N.scaled(r).is_zero
        assert kills == (r in ann)


@settings(max_examples=60, deadline=None)
@given(descriptors, st.data())
def test_modular_law(desc, data):
    M = module_from_descriptor(desc)
    L = enumerate_submodules(M)
    A, B, C = (data.draw(st.sampled_from(L.all)) for _ in range(3))
    if A <= C:
        assert (A + (B & C)) == ((A + B) & C)


# ---------------------------------------------------------------- homomorphisms


def test_hom_examples():
    Z2 = module_from_descriptor("Z4[2]")
    Z4 = module_from_descriptor("Z4[4]")
    f = make_hom(Z2, Z4, [(2,)])
    assert f.is_injective
    assert elems(f.image) == {(0,), (2,)}
    assert hom_image(f, Z2.whole) == f.image
    assert hom_preimage(f, sub(Z4, (2,))).is_whole
    with pytest.raises(ValueError):
        make_hom(Z2, Z4, [(1,)])
    Z6 = module_from_descriptor("Z6[6]")
    ident = make_hom(Z6, Z6, [(1,)])
    assert ident.is_injective and ident.image.is_whole
    double = make_hom(Z6, Z6, [(2,)])
    assert elems(hom_preimage(double, Z6.zero)) == {(0,), (3,)}


def test_hom_count():
    A = module_from_descriptor("Z4[4,2]")
    B = module_from_descriptor("Z4[4]")
    # images of the generators: anything for the order-4 one, the 2-torsion for the other
    assert sum(1 for _ in all_homs(A, B)) == 4 * 2


@settings(max_examples=40, deadline=None)
@given(descriptors, st.data())
def test_realize_is_an_isomorphism_onto(desc, data):
    M = module_from_descriptor(desc)
    N = data.draw(st.sampled_from(enumerate_submodules(M).all))
    h = realize(N)
    assert h.is_injective
    assert h.image_mask == N.mask
    assert h.source.order == N.cardinality


def test_submodule_scaled():
    M = module_from_descriptor("Z4[4,2]")
    assert elems(M.whole.scaled(2)) == {(0, 0), (2, 0)}
    assert isinstance(M.whole.scaled(0), Submodule) and M.whole.scaled(0).is_zero
