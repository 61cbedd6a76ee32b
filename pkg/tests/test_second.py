import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from secondspectrum.algebra import enumerate_submodules, module_from_descriptor as mod
from secondspectrum.second import (
    ClassificationFlags,
    classify,
    is_second,
    is_second_via_colon,
    minimal_submodules,
    prime_submodules,
    second_dim,
    second_spectrum,
    socle,
    t_sum,
    v_star,
    w_s,
)
from secondspectrum.verify import CorpusSpec, generate_corpus


def elems(N):
    return {tuple(x) for x in N.elements}


def sub(M, *coords):
    return M.generated(coords)


CORPUS_16 = generate_corpus(CorpusSpec(16, ring_policy="all"))


# ---------------------------------------------------------------- second submodules


def test_is_second_examples():
    Z6 = mod("Z6[6]")
    assert is_second(sub(Z6, (2,)))
    assert not is_second(Z6.whole)
    assert not is_second(Z6.zero)


def test_colon_criterion_examples():
    Z4 = mod("Z4[4]")
    assert is_second_via_colon(sub(Z4, (2,)))
    assert not is_second_via_colon(Z4.whole)
    assert not is_second_via_colon(Z4.zero)


@pytest.mark.parametrize("M", CORPUS_16, ids=lambda M: M.descriptor)
def test_second_agrees_with_oracle_and_colon_criterion(M):
    for N in enumerate_submodules(M):
        want = O.is_second_set(elems(N), M.factors, M.ring.modulus)
        assert is_second(N) == want
        assert is_second_via_colon(N) == want


@pytest.mark.parametrize("M", CORPUS_16, ids=lambda M: M.descriptor)
def test_second_means_elementary_abelian(M):
    # over Z/n a second submodule is a nonzero subgroup killed by a single prime
    for N in enumerate_submodules(M):
        elementary = not N.is_zero and any(N.scaled(p).is_zero for p in O.prime_factors(M.ring.modulus))
        assert is_second(N) == elementary


# ---------------------------------------------------------------- spectrum


def test_spectrum_examples():
    assert [elems(S) for S in second_spectrum(mod("Z6[6]"))] == [{(0,), (3,)}, {(0,), (2,), (4,)}]
    assert len(second_spectrum(mod("Z2[2,2]"))) == 4
    assert len(second_spectrum(mod("Z1[]"))) == 0


def test_socle_examples():
    assert elems(socle(mod("Z4[4]").whole)) == {(0,), (2,)}
    assert socle(mod("Z6[6]").whole).is_whole
    assert socle(mod("Z1[]").whole).is_zero


@pytest.mark.parametrize("desc, dim", [("Z1[]", -1), ("Z6[6]", 0), ("Z2[2,2]", 1), ("Z4[4]", 0), ("Z2[2,2,2]", 2)])
def test_second_dim(desc, dim):
    assert second_dim(mod(desc)) == dim


def test_minimal_submodules_examples():
    assert [elems(S) for S in minimal_submodules(mod("Z4[4]"))] == [{(0,), (2,)}]
    assert len(minimal_submodules(mod("Z6[6]"))) == 2
    assert len(minimal_submodules(mod("Z2[2,2]"))) == 3


def test_v_star_and_w_s():
    Z6 = mod("Z6[6]")
    spec = second_spectrum(Z6)
    two = sub(Z6, (2,))
    assert len(v_star(Z6.zero)) == 0
    assert [elems(S) for S in v_star(two)] == [elems(two)]
    assert [elems(S) for S in w_s(two)] == [{(0,), (3,)}]
    assert t_sum(spec.pointset(0)).is_zero
    assert t_sum(spec.pointset(spec.full)).is_whole


def test_t_sum_of_single_line():
    M = mod("Z2[2,2]")
    spec = second_spectrum(M)
    assert t_sum(spec.pointset(1)) == spec.points[0]


def test_pointset_algebra():
    spec = second_spectrum(mod("Z2[2,2]"))
    a, b = spec.pointset(0b0011), spec.pointset(0b0110)
    assert (a | b).members == 0b0111 and (a & b).members == 0b0010
    assert a.complement().members == 0b1100
    assert (a & b) <= a and not a <= b
    assert spec.points[0] in a and spec.points[3] not in a


@pytest.mark.parametrize("desc, count", [("Z6[6]", 2), ("Z4[4]", 1), ("Z1[]", 0)])
def test_prime_submodule_counts(desc, count):
    assert len(prime_submodules(mod(desc))) == count


# ---------------------------------------------------------------- classification


def test_classification_z6():
    f = classify(mod("Z6[6]"))
    assert f.satisfies_star_star and f.is_semisimple and f.is_comultiplication
    assert not f.is_cocyclic


def test_classification_z2_squared():
    f = classify(mod("Z2[2,2]"))
    assert f.satisfies_star_star and not f.is_cotop and not f.is_comultiplication
    assert f.is_second_module


def test_classification_z4():
    f = classify(mod("Z4[4]"))
    assert not f.satisfies_star_star and not f.satisfies_star
    assert f.is_cocyclic and f.is_comultiplication


def test_flag_names_are_complete():
    names = ClassificationFlags.names()
    assert len(names) == 12 and set(classify(mod("Z6[6]")).as_dict()) == set(names)


@pytest.mark.parametrize("M", generate_corpus(CorpusSpec(32, ring_policy="all")), ids=lambda M: M.descriptor)
def test_flags_match_structure(M):
    """Cross-check each literal quantifier scan against the group structure."""
    fs = M.factors
    e = O.exponent(fs)
    sqfree = O.squarefree(e)
    cyclic = all(O.p_rank(fs, p) <= 1 for p in O.prime_factors(e))
    single_prime = len(O.prime_factors(e)) == 1
    f = classify(M)
    for name in ("is_semisimple", "is_cosemisimple", "satisfies_star", "satisfies_star_star",
                 "is_fully_semisecond", "is_fully_semiprime"):
        assert getattr(f, name) == sqfree, name
    for name in ("is_comultiplication", "is_weak_comultiplication", "is_cotop"):
        assert getattr(f, name) == cyclic, name
    assert f.is_second_module == (bool(fs) and sqfree and single_prime)
    assert f.is_cocyclic == (len(fs) == 1 and single_prime)


descriptors = st.sampled_from([M.descriptor for M in CORPUS_16])


@settings(max_examples=50, deadline=None)
@given(descriptors, st.data())
def test_socle_is_the_sum_of_minimal_submodules_inside(desc, data):
    M = mod(desc)
    N = data.draw(st.sampled_from(enumerate_submodules(M).all))
    inside = [m for m in minimal_submodules(M) if m <= N]
    total = M.zero
    for m in inside:
        total = total + m
    assert socle(N) == total


@settings(max_examples=50, deadline=None)
@given(descriptors, st.data())
def test_v_star_is_monotone_and_meets(desc, data):
    M = mod(desc)
    L = enumerate_submodules(M).all
    A, B = data.draw(st.sampled_from(L)), data.draw(st.sampled_from(L))
    if A <= B:
        assert v_star(A) <= v_star(B)
    assert v_star(A & B) == v_star(A) & v_star(B)
