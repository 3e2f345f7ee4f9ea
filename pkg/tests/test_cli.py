import io
import json
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlattice import cli
from modlattice.errors import ParseError


def run(args, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(args, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(args, stdin=""):
    code, out, err = run(args, stdin)
    assert code == 0, err
    return json.loads(out)


def test_classify_finite():
    res = run_json(["classify", "--ring", "Z/6", "--module", '{"rank":1}', "--submodule", '{"generators":[3]}'])["result"]
    assert res["classicalPrime"] and res["prime"] and res["maximal"]
    res = run_json(["classify", "--ring", "Z/4", "--module", '{"rank":1}', "--submodule", '{"generators":[]}'])["result"]
    assert not res["classicalPrime"] and not res["prime"]


def test_classify_pid_and_echo():
    report = run_json(["classify", "--domain", "Z", "--module", '{"rank":2}', "--submodule", '{"generators":[[4,0]]}'])
    assert report["toolVersion"] == "0.1.0"
    assert report["input"]["domain"] == "Z" and report["input"]["command"] == "classify"
    assert report["result"]["classicalPrime"] is False
    assert report["result"]["shape"] == {"freeRank": 1, "invariantFactors": [4]}


def test_module_from_stdin_and_file(tmp_path):
    res = run_json(["cl-hilbert", "--ring", "Z/4", "--module", "-"], stdin='{"rank":2}')["result"]
    assert res["verdict"] is True and res["tag"] == "Exhaustive"
    path = tmp_path / "m.json"
    path.write_text('{"rank":1,"relations":[]}')
    res = run_json(["cl-hilbert", "--domain", "Zloc(5)", "--module", f"@{path}"])["result"]
    assert res["verdict"] is False


def lattice(ring, module):
    return run_json(["lattice", "--ring", ring, "--module", module])["result"]


def test_lattice_json():
    res = lattice("Z/4", '{"rank":1}')
    assert res["count"] == 3 and res["edges"] == [[0, 1], [1, 2]]
    assert [n["flags"] for n in res["nodes"]] == ["", "MPCR", ""]
    res = lattice("Z/2", '{"rank":2}')
    assert res["count"] == 5 and len(res["edges"]) == 6
    assert res["nodes"][0]["flags"] == "PCR"  # over a field 0 is prime


@pytest.mark.parametrize(
    "ring,module,nodes,edges",
    [("Z/4", '{"rank":1}', 3, 2), ("Z/4", '{"rank":1,"relations":[[1]]}', 1, 0), ("Z/2", '{"rank":2}', 5, 6)],
)
def test_lattice_dot(ring, module, nodes, edges):
    code, out, _ = run(["lattice", "--ring", ring, "--module", module, "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph lattice {") and out.endswith("}\n")
    assert out.count("[label=") == nodes
    assert out.count(" -> ") == edges


def test_covers_are_exact_cover_relation():
    from modlattice import finmod, rings

    R = rings.parse_ring("Z/12")
    M = finmod.make_module(R, 1)
    subs = finmod.all_submodules(M)
    covers = set(cli._covers(M, subs))
    for i, A in enumerate(subs):
        for j, B in enumerate(subs):
            between = any(A < X < B for X in subs)
            assert ((i, j) in covers) == (A < B and not between)


@pytest.mark.parametrize(
    "args,code",
    [
        (["classify", "--ring", "Z/1", "--module", '{"rank":1}', "--submodule", '{"generators":[]}'], 3),
        (["classify", "--ring", "Q", "--module", '{"rank":1}', "--submodule", '{"generators":[]}'], 3),
        (["classify", "--ring", "Z/4", "--module", "{bad", "--submodule", '{"generators":[]}'], 2),
        (["classify", "--ring", "Z/4", "--module", '{"rank":1}'], 2),
        (["laws", "run", "--all"], 2),
        (["laws", "run", "--law", "L0", "--seed", "1"], 2),
        (["lattice", "--domain", "Z", "--module", '{"rank":1}'], 2),
        (["lattice", "--ring", "Z/2", "--module", '{"rank":9}', "--max-module", "64"], 4),
        (["classify", "--ring", "Z/4", "--module", '{"rank":1}', "--submodule", '{"generators":[1]}'], 5),
        (["witness", "zx", "--p", "4", "--samples", "10", "--seed", "1"], 3),
        ([], 2),
    ],
)
def test_exit_codes(args, code):
    got, out, err = run(args)
    assert got == code
    if code:
        assert out == ""
        if args:
            assert "error" in json.loads(err)


def test_laws_bound_exceeded_exit_code():
    code, out, _ = run(["laws", "run", "--all", "--seed", "42", "--max-module", "0"])
    assert code == 4
    reports = json.loads(out)["result"]["reports"]
    assert len(reports) == 19 and all(r["error"].startswith("BoundExceeded") for r in reports)


def test_single_law_run():
    report = run_json(["laws", "run", "--law", "L2.11", "--seed", "5", "--ring", "Z/4"])
    assert report["result"]["allPassed"]
    assert [r["law"] for r in report["result"]["reports"]] == ["L2.11"]


def test_witness_command():
    res = run_json(["witness", "zx", "--p", "3", "--samples", "300", "--seed", "9"])["result"]
    assert res["notPrime"]["verified"] and res["radicalObstruction"]["verified"]
    assert res["falsifier"] == {"kind": "NoCounterexample", "samples": 300, "tested": res["falsifier"]["tested"]}


def test_out_is_written_atomically(tmp_path):
    target = tmp_path / "report.json"
    target.write_text("old")
    code, out, _ = run(["witness", "zx", "--p", "2", "--samples", "10", "--seed", "0", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["p"] == 2
    assert os.listdir(tmp_path) == ["report.json"]


def test_max_cells_env(monkeypatch):
    monkeypatch.setenv("MODLATTICE_MAX_CELLS", "50")
    code, _, err = run(["cl-hilbert", "--ring", "Z/11", "--module", '{"rank":2}'])
    assert code == 4 and json.loads(err)["error"] == "BoundExceeded"


def test_canonical_json_big_ints():
    text = cli.dumps({"b": 2**60, "a": [1, -(2**53)]})
    assert text == '{\n  "a": [\n    1,\n    "-9007199254740992"\n  ],\n  "b": "1152921504606846976"\n}\n'


def test_output_is_byte_stable():
    args = ["lattice", "--ring", "Z/2 x Z/3", "--module", '{"rank":1}']
    assert run(args)[1] == run(args)[1]


# --- parse/render round trip

rings = st.sampled_from(["Z/4", "Z/6", "Z/2 x Z/2", "GF(2)[x]/[1,1,1]"])
domains = st.sampled_from(["Z", "GF(3)[x]", "Zloc(2)"])
maybe_pos = st.none() | st.integers(1, 10**6)
modules = st.builds(lambda k, rels: {"rank": k, "relations": rels}, st.integers(1, 3), st.just([]))

finite_jobs = st.builds(
    lambda cmd, ring, module, mm, ml, fmt: cli.JobSpec(
        cmd, ring=ring, module=module, submodule={"generators": []} if cmd == "classify" else None,
        max_module=mm, max_lattice=ml, format=fmt if cmd == "lattice" else "json",
    ),
    st.sampled_from(["classify", "lattice", "cl-hilbert"]),
    rings,
    modules,
    maybe_pos,
    maybe_pos,
    st.sampled_from(["json", "dot"]),
)
pid_jobs = st.builds(
    lambda cmd, domain, module: cli.JobSpec(cmd, domain=domain, module=module, submodule={"generators": []} if cmd == "classify" else None),
    st.sampled_from(["classify", "cl-hilbert"]),
    domains,
    modules,
)
law_jobs = st.builds(
    lambda law, seed, ring, mm: cli.JobSpec("laws", law=law, all=law is None, seed=seed, ring=ring, max_module=mm),
    st.none() | st.sampled_from(["L2.5", "L3.6"]),
    st.integers(0, 2**40),
    st.none() | rings,
    maybe_pos,
)
witness_jobs = st.builds(
    lambda p, n, seed: cli.JobSpec("witness", p=p, samples=n, seed=seed),
    st.sampled_from([2, 3, 5]),
    st.integers(1, 10**5),
    st.integers(-5, 10**9),
)


@given(finite_jobs | pid_jobs | law_jobs | witness_jobs)
@settings(max_examples=150)
def test_parse_render_roundtrip(job):
    assert cli.parse_job(cli.render_job(job)) == job


def test_parse_rejects_bad_numbers():
    with pytest.raises(ParseError):
        cli.parse_job(["witness", "zx", "--p", "2", "--samples", "-1", "--seed", "1"])
    with pytest.raises(ParseError):
        cli.parse_job(["laws", "run", "--all", "--seed", "x"])
