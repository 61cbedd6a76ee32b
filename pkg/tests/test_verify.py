import json

import pytest

from secondspectrum.algebra import CapacityError, module_from_descriptor as mod
from secondspectrum.topology import separation_profile, second_zariski
from secondspectrum.verify import (
    REGISTRY,
    THEOREM_IDS,
    CorpusSpec,
    factor_multisets,
    generate_corpus,
    monomorphisms,
    run_check,
    run_suite,
)

REQUIRED_IDS = (
    "P2.2 C2.3 C2.5 T2.6 P2.7 T2.10 T2.11 T2.12 T2.13 C2.14 L2.16 C2.17 T2.19 C2.20 T3.75 "
    "L2.22 L2.25 P2.200a P2.200b P2.200c C2.24 L_c22.24 T2.25a C2.27 L2.28 P2.29c P3.30 "
    "T3.31 P3.800 T3.9 L3.1 P3.3 P3.7 R100 L3.6"
).split()


def descriptors(spec):
    return [M.descriptor for M in generate_corpus(spec)]


# ---------------------------------------------------------------- corpus


def test_exponent_corpus_order_8():
    assert descriptors(CorpusSpec(8)) == [
        "Z1[]", "Z2[2]", "Z3[3]", "Z4[4]", "Z2[2,2]", "Z5[5]", "Z6[6]", "Z6[3,2]",
        "Z7[7]", "Z8[8]", "Z4[4,2]", "Z2[2,2,2]",
    ]


def test_trivial_corpus():
    assert descriptors(CorpusSpec(1)) == ["Z1[]"]


def test_fixed_ring_corpus():
    assert descriptors(CorpusSpec(4, ring_policy="fixed", fixed_n=4)) == ["Z4[2]", "Z4[4]", "Z4[2,2]"]


def test_all_policy_has_each_ring_and_multiset_once():
    names = descriptors(CorpusSpec(12, ring_policy="all"))
    assert len(names) == len(set(names))
    assert names[0] == "Z1[]"
    assert {"Z4[2]", "Z6[2]", "Z12[6,2]", "Z2[2,2,2]"} <= set(names)
    for M in generate_corpus(CorpusSpec(12, ring_policy="all")):
        assert M.order <= 12 and all(M.ring.modulus % d == 0 for d in M.factors)


def test_max_factors():
    assert all(len(M.factors) <= 1 for M in generate_corpus(CorpusSpec(16, max_factors=1)))


def test_factor_multisets_are_complete():
    got = set(factor_multisets(12))
    assert (3, 2, 2) in got and (2, 2, 3) not in got and (12,) in got and () in got
    assert all(list(t) == sorted(t, reverse=True) for t in got)


def test_corpus_rejects_bad_specs():
    with pytest.raises(CapacityError):
        CorpusSpec(1000)
    with pytest.raises(ValueError):
        CorpusSpec(8, ring_policy="fixed")
    with pytest.raises(ValueError):
        CorpusSpec(8, ring_policy="odd")


# ---------------------------------------------------------------- registry


def test_registry_covers_required_ids():
    assert set(REQUIRED_IDS) <= set(THEOREM_IDS)
    assert all(REGISTRY[t].statement for t in THEOREM_IDS)


def test_run_check_examples():
    assert run_check("T2.6", mod("Z6[6]")).status == "pass"
    assert run_check("T2.6", mod("Z2[2,2]")).status == "pass"
    skipped = run_check("L2.22", mod("Z6[6]"))
    assert skipped.status == "skipped" and "second module" in skipped.reason
    with pytest.raises(KeyError):
        run_check("BOGUS", mod("Z6[6]"))


def test_run_check_records_truth_patterns():
    assert run_check("T2.6", mod("Z6[6]")).observed == [[True, True]]
    assert run_check("T2.6", mod("Z2[2,2]")).observed == [[False, False]]


def test_zero_module_suite_is_degenerate_but_clean():
    report = run_suite(CorpusSpec(1))
    assert report.ok
    assert {r.status for r in report.results} <= {"pass", "skipped"}


def test_t2_10_counts_t1_modules():
    spec = CorpusSpec(16)
    report = run_suite(spec, ["T2.10"])
    t1 = sum(separation_profile(second_zariski(M)).t1 for M in generate_corpus(spec))
    assert report.counts()["T2.10"]["pass"] == t1


def test_every_skip_has_a_reason():
    report = run_suite(CorpusSpec(12))
    for r in report.results:
        if r.status == "skipped":
            assert r.reason


def test_full_suite_order_16_passes():
    report = run_suite(CorpusSpec(16))
    assert report.failures == []
    counts = report.counts()
    assert all(c["fail"] == 0 for c in counts.values())
    assert all(c["pass"] > 0 for c in counts.values())


def test_suite_over_all_rings_passes():
    assert run_suite(CorpusSpec(12, ring_policy="all")).ok


def test_suite_json_is_deterministic():
    a = json.dumps(run_suite(CorpusSpec(10)).to_dict(), sort_keys=True)
    b = json.dumps(run_suite(CorpusSpec(10)).to_dict(), sort_keys=True)
    assert a == b


def test_undistinguished_annotation():
    report = run_suite(CorpusSpec(16), ["T2.6", "C2.3"])
    # T2.6 sees both truth values; C2.3 is a plain implication with nothing to distinguish
    assert report.undistinguished() == []
    one_sided = run_suite(CorpusSpec(4), ["T2.6"], modules=[mod("Z6[6]"), mod("Z2[2]")])
    assert one_sided.undistinguished() == ["T2.6"]


def test_failures_carry_replayable_witness(monkeypatch):
    import secondspectrum.verify as V

    th = REGISTRY["T2.6"]
    broken = V.Theorem(th.id, th.statement, th.hypothesis, lambda a: V.Verdict(False, {"why": "forced"}))
    monkeypatch.setitem(REGISTRY, "T2.6", broken)
    r = run_check("T2.6", mod("Z4[4]"))
    assert r.status == "fail"
    assert r.witness["why"] == "forced"
    assert r.witness["replay"] == "secondspec verify --modules 'Z4[4]' --theorems T2.6"


def test_monomorphisms_are_injective_and_same_ring():
    mods = generate_corpus(CorpusSpec(8, ring_policy="all"))
    count = 0
    for h in monomorphisms(mods):
        assert h.is_injective and h.source.ring == h.target.ring
        count += 1
    assert count > 0
