import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modlattice import finmod as F
from modlattice import laws
from modlattice.errors import UnknownLaw

SMALL = laws.LawConfig(max_module=32, max_lattice=500, random_modules=1, pid_modules=20, mixed_primes=10, samples_per_module=2)

EXPECTED_IDS = (
    "L2.3eq L2.4eq L2.5 L2.6 L2.7 L2.8fwd L2.10 L2.11 L2.12 L2.13 L2.14 L2.16 "
    "L2.17.1 L2.17.2 L2.17.3 L2.18 L3.2 L3.6 L3.7min"
).split()


@pytest.fixture(scope="module")
def small_reports():
    return laws.run_all(SMALL, seed=7)


def test_registry_is_closed():
    assert list(laws.LAW_IDS) == EXPECTED_IDS
    assert set(laws.REGISTRY) == set(EXPECTED_IDS)


def test_all_laws_pass_on_small_config(small_reports):
    for rep in small_reports:
        assert rep.ok, rep.to_json()
        assert rep.instances_generated > 0, rep.law
    assert laws.exit_status(small_reports) == 0


def test_report_invariants(small_reports):
    for rep in small_reports:
        out = rep.to_json()
        assert set(out) == {"law", "instancesGenerated", "passed", "counterexample", "seed", "error"}
        assert out["passed"] <= out["instancesGenerated"]
        assert (out["counterexample"] is not None) == (out["passed"] < out["instancesGenerated"])
        assert out["seed"] == str(laws.derive_seed(7, rep.law))
        assert "elapsed" in rep.to_json(include_timing=True)


def test_runs_are_deterministic(small_reports):
    again = laws.run_all(SMALL, seed=7)
    first = json.dumps([r.to_json() for r in small_reports], sort_keys=True)
    second = json.dumps([r.to_json() for r in again], sort_keys=True)
    assert first == second


@given(st.integers(0, 2**63), st.sampled_from(EXPECTED_IDS))
def test_derive_seed_is_stable_and_law_specific(root, law):
    s = laws.derive_seed(root, law)
    assert s == laws.derive_seed(root, law)
    assert 0 <= s < 2**64
    other = "L2.5" if law != "L2.5" else "L2.6"
    assert s != laws.derive_seed(root, other)


def test_corpus_shape():
    corpus = laws.finite_corpus(laws.LawConfig(), 0)
    assert {M.ring.spec() for M in corpus} == set(laws.CORPUS_RINGS)
    assert all(1 < M.size <= 256 for M in corpus)
    # every corpus ring contributes its regular module
    for spec in laws.CORPUS_RINGS:
        assert any(M.ring.spec() == spec and M.rank == 1 and not M.relations for M in corpus)


def test_ring_filter():
    cfg = laws.LawConfig(max_module=64, ring="Z/4", random_modules=1, samples_per_module=2)
    rep = laws.run_law("L2.3eq", cfg, seed=1)
    assert rep.ok and rep.instances_generated > 0
    assert {M.ring.spec() for M in laws.finite_corpus(cfg, 1)} == {"Z/4"}


def test_unknown_law():
    with pytest.raises(UnknownLaw):
        laws.run_law("L9.9", SMALL, seed=0)


def test_bound_exceeded_is_reported():
    cfg = laws.LawConfig(max_module=0)
    reports = laws.run_all(cfg, seed=42)
    assert len(reports) == len(EXPECTED_IDS)
    assert all(r.error and r.error.startswith("BoundExceeded") for r in reports)
    assert laws.exit_status(reports) == 4


# --- a deliberately false law exercises counterexample reporting and shrinking


def _gen_big(ctx, rng):
    R = laws.parse_ring("Z/12")
    M = F.make_module(R, 2, [(R.from_int(2), 0), (0, R.from_int(3))])
    yield laws.Instance(laws.fin_spec(M), (M, None))
    yield laws.Instance(laws.fin_spec(M), (M, None))


def _claims_every_module_is_zero(M, P=None):
    return M.size == 1


BOGUS = {"BOGUS": laws.Law("BOGUS", "every module is zero", _gen_big, _claims_every_module_is_zero)}


def test_failing_law_is_shrunk():
    rep = laws.run_law("BOGUS", SMALL, seed=3, registry=BOGUS)
    assert not rep.ok
    assert rep.instances_generated == 1 and rep.passed == 0
    assert rep.counterexample == {"ring": "Z/2", "rank": 1, "relations": []}
    assert laws.exit_status([rep]) == 1


def test_shrink_keeps_failing_and_stops():
    law = BOGUS["BOGUS"]
    start = {"ring": "Z/12", "rank": 2, "relations": [[2, 0], [0, 3]]}
    small = laws.shrink(law, start)
    assert laws._fails(law, small)
    assert all(not laws._fails(law, c) for c in laws.shrink_candidates(small))


def test_check_errors_are_reported_not_raised():
    def broken(M, P=None):
        raise RuntimeError("boom")

    reg = {"X": laws.Law("X", "raises", _gen_big, broken)}
    rep = laws.run_law("X", SMALL, seed=0, registry=reg)
    assert rep.error == "RuntimeError: boom"
    assert laws.exit_status([rep]) == 5
