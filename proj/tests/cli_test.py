#!/usr/bin/env python3
"""End-to-end checks of the poslab command line: output formats, exit codes,
determinism, and the --verify replay paths."""

import json
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

CLI = None
WORK = None

E2 = "2 2 1\n0 1\n"
E3 = "3 3 1\n0 1 2\n"
K3 = "2 3 3\n0 1\n0 2\n1 2\n"
P3 = "2 3 2\n0 1\n1 2\n"
C4 = "2 4 4\n0 1\n0 3\n1 2\n2 3\n"
C63 = "3 6 6\n0 1 2\n0 1 5\n0 4 5\n1 2 3\n2 3 4\n3 4 5\n"
PENDANT = "2 5 5\n0 1\n0 3\n0 4\n1 2\n2 3\n"
NOEDGE = "2 3 0\n"


def path_of(name, text):
    p = os.path.join(WORK, name)
    with open(p, "w") as f:
        f.write(text)
    return p


def run(*args, expect=0, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    if proc.returncode != expect:
        raise AssertionError(
            f"poslab {' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def jout(proc):
    return json.loads(proc.stdout)


def test_density():
    e2 = path_of("e2.txt", E2)
    k3 = path_of("k3.txt", K3)
    c4 = path_of("c4.txt", C4)
    p3 = path_of("p3.txt", P3)

    assert jout(run("density", "--input", e2, "--kernel", "constant:2:1/2")) == {"density": "1/2"}
    assert jout(run("density", "--input", e2, "--kernel", f"kernel-of:{k3}")) == {"density": "2/3"}
    # parity kernel: 1 on all-even-degree graphs, 0 otherwise
    assert jout(run("density", "--input", c4, "--kernel", "parity:2")) == {"density": "1"}
    assert jout(run("density", "--input", p3, "--kernel", "parity:2")) == {"density": "0"}
    assert jout(run("density", "--input", e2, "--kernel", "odd-witness:2/5")) == {
        "density": "-3/25"
    }

    # uniformity mismatch is a contract violation
    run("density", "--input", e2, "--kernel", "parity:3", expect=2)
    # malformed kernel specs and missing files are I/O failures
    run("density", "--input", e2, "--kernel", "constant:2", expect=4)
    run("density", "--input", e2, "--kernel", os.path.join(WORK, "no-such.json"), expect=4)
    run("density", "--input", os.path.join(WORK, "no-such.txt"), "--kernel", "parity:2", expect=4)
    # tiny budget trips the evaluation cap
    run("density", "--input", c4, "--kernel", "parity:2", "--budget", "2", expect=3)


def test_indpoly():
    p3 = path_of("p3.txt", P3)
    out = jout(run("indpoly", "--input", p3))
    assert out["coefficients"] == ["1", "-3", "1"]
    assert out["degree"] == 2
    lo, hi = Fraction(out["bracket"]["lo"]), Fraction(out["bracket"]["hi"])
    assert 0 < lo < hi < 1

    bare = path_of("noedge.txt", NOEDGE)
    assert jout(run("indpoly", "--input", bare))["bracket"] is None

    run("indpoly", "--input", p3, "--tol", "nonsense", expect=4)


def test_certify_odd():
    e2 = path_of("e2.txt", E2)
    out = run("certify-odd", "--input", e2)
    cert = jout(out)
    assert cert["certificate"]["alpha"] == "2/5"
    assert cert["certificate"]["density"] == "-3/25"
    assert cert["certificate"]["polynomial"] == ["1", "-2"]

    saved = path_of("e2_cert.json", out.stdout)
    assert jout(run("certify-odd", "--verify", saved)) == {"valid": True}

    cert["certificate"]["alpha"] = "1/2"
    tampered = path_of("e2_bad.json", json.dumps(cert))
    assert jout(run("certify-odd", "--verify", tampered, expect=2)) == {"valid": False}

    # even degrees violate the contract
    c4 = path_of("c4.txt", C4)
    run("certify-odd", "--input", c4, expect=2)


def test_levi():
    c63 = path_of("c63.txt", C63)
    out = run("levi", "--input", c63)
    rep = jout(out)
    assert rep["levi"].startswith("2 12 18\n")
    assert rep["certificate"]["alpha"] == "1/5"
    assert rep["certificate"]["density"] == "-188416/244140625"

    saved = path_of("levi_cert.json", out.stdout)
    assert jout(run("levi", "--verify", saved)) == {"valid": True}

    rep["levi"] = E2  # wrong incidence graph
    tampered = path_of("levi_bad.json", json.dumps(rep))
    assert jout(run("levi", "--verify", tampered, expect=2)) == {"valid": False}


def test_qvanish():
    pendant = path_of("pendant.txt", PENDANT)
    out = run("qvanish", "--input", pendant, "--family", "[[1]]")
    cert = jout(out)
    assert cert["vanishing"] is True
    assert len(cert["phi"]) == 2

    saved = path_of("pendant_cert.json", out.stdout)
    assert jout(run("qvanish", "--verify", saved)) == {"valid": True}

    cert["phi"] = list(reversed(cert["phi"]))
    tampered = path_of("pendant_bad.json", json.dumps(cert))
    assert jout(run("qvanish", "--verify", tampered, expect=2)) == {"valid": False}

    # the plain four-cycle does not vanish for {{1}}
    c4 = path_of("c4.txt", C4)
    none = jout(run("qvanish", "--input", c4, "--family", "[[1]]"))
    assert none["vanishing"] is False

    run("qvanish", "--input", c4, expect=4)  # no family given
    fam = path_of("fam.json", "[[1]]")
    run("qvanish", "--input", c4, "--family", "[[1]]", "--family-file", fam, expect=4)
    run("qvanish", "--input", c4, "--family", "[[1,2]]", expect=4)  # improper subset


def test_build_hq():
    built = os.path.join(WORK, "hq.txt")
    out = jout(run("build-hq", "--r", "3", "--family", "[[1,2],[3]]", "--output", built))
    assert out["hypergraph"] == "3 6 4\n0 2 4\n0 2 5\n1 3 4\n1 3 5\n"
    assert out["classes"] == [[0, 1], [2, 3], [4, 5]]
    assert out["pair_intersection_ordering"]["exists"] is True
    with open(built) as f:
        assert f.read() == out["hypergraph"]

    run("build-hq", "--r", "8", "--family", "[[1]]", expect=3)  # size cap


def test_copy_prob():
    e3 = path_of("e3.txt", E3)
    assert jout(run("copy-prob", "--input", e3))["probability"] == "1/4"

    c63 = path_of("c63.txt", C63)
    both = jout(run("copy-prob", "--input", c63, "--exhaustive"))
    assert both["exact"]["probability"] == "1/2048"
    assert both["exact"]["rank"] == 11
    assert both["exact"]["variables"] == 12
    assert both["exhaustive"]["probability"] == "1/2048"
    assert both["agree"] is True

    e2 = path_of("e2.txt", E2)
    run("copy-prob", "--input", e2, expect=2)  # needs r >= 3


def test_mc_density():
    e3 = path_of("e3.txt", E3)
    base = ["mc-density", "--input", e3, "--n", "20", "--samples", "4000", "--seed", "17"]

    csv = run(*base, "--format", "csv").stdout.splitlines()
    assert csv[0] == "H-name,r,n,samples,estimate,stderr,seed"
    fields = csv[1].split(",")
    assert fields[0] == "e3" and fields[1] == "3" and fields[2] == "20"
    assert fields[3] == "4000" and fields[6] == "17"

    first = run(*base).stdout
    again = run(*base).stdout
    assert first == again  # fixed seed, byte-identical
    assert run(*base, env={"POSLAB_THREADS": "1"}).stdout == first
    assert run(*base, env={"POSLAB_THREADS": "4"}).stdout == first

    rep = json.loads(first)
    assert abs(float(rep["estimate"]) - 0.25) < 0.1
    other = jout(run("mc-density", "--input", e3, "--n", "20", "--samples", "4000",
                     "--seed", "18"))
    assert other["hits"] != rep["hits"]

    run("mc-density", "--input", e3, "--n", "2", "--samples", "10", "--seed", "1", expect=2)
    run("mc-density", "--input", e3, "--n", "20", "--samples", "0", "--seed", "1", expect=2)


def test_minimize():
    k3 = path_of("k3.txt", K3)
    out = run("minimize", "--input", k3, "--parts", "2", "--budget", "200000", "--seed", "9")
    res = jout(out)
    assert res["value"] == "-1"
    assert res["negative"] is True

    assert run("minimize", "--input", k3, "--parts", "2", "--budget", "200000",
               "--seed", "9").stdout == out.stdout  # deterministic

    saved = path_of("min_res.json", out.stdout)
    assert jout(run("minimize", "--verify", saved)) == {"valid": True}

    res["value"] = "0"
    tampered = path_of("min_bad.json", json.dumps(res))
    assert jout(run("minimize", "--verify", tampered, expect=2)) == {"valid": False}

    run("minimize", "--input", k3, "--parts", "0", "--seed", "1", expect=2)


def test_cycle_demo():
    out = run("cycle-demo", "--r", "3", "--ell", "6", "--n", "12", "--seed", "11")
    rep = json.loads(out.stdout)
    assert rep["copy_probability"]["probability"] == "1/2048"
    assert rep["vanishing_count"] == 62
    assert rep["all_proper_vanish"] is True
    assert rep["full_cycle_vanishes"] is False
    assert rep["random_bound"] == "1/4096"
    assert rep["decay"][0]["values"][0] == "-1/16"
    assert "62/62" in out.stderr

    again = run("cycle-demo", "--r", "3", "--ell", "6", "--n", "12", "--seed", "11")
    assert again.stdout == out.stdout

    run("cycle-demo", "--r", "4", "--ell", "6", "--seed", "1", expect=2)


def test_grid_demo():
    rep = jout(run("grid-demo", "--r", "3"))
    assert rep["checked"] == 63
    assert rep["mismatches"] == 0
    assert rep["full_grid_attains_one"] is True

    capped = jout(run("grid-demo", "--r", "3", "--budget", "10"))
    assert capped["skipped"] > 0
    assert capped["checked"] + capped["skipped"] == 63

    run("grid-demo", "--r", "9", expect=2)


def test_code_commands():
    p3 = path_of("p3.txt", P3)
    bound = jout(run("code-bound", "--input", p3, "--n", "4"))
    assert bound["copy_count"] == 12
    assert bound["beta"] == "3/16"
    assert bound["gamma"] == "-1/16"
    assert bound["bound"] == "1/3"

    spec = run("code-spectrum", "--input", p3, "--n", "4", "--format", "csv")
    lines = spec.stdout.splitlines()
    assert lines[0] == "x-hex,coefficient"
    assert len(lines) == 65  # header + all 64 points
    assert lines[1] == "n=4:00,3/16"  # coefficient at zero is the copy density
    summary = json.loads(spec.stderr)
    assert summary["bound"] == "1/3"

    assert jout(run("code-spectrum", "--input", p3, "--n", "4"))["gamma"] == "-1/16"
    run("code-spectrum", "--input", p3, "--n", "7", "--format", "csv", expect=3)

    k3 = path_of("k3.txt", K3)
    mc = jout(run("max-code", "--input", k3, "--n", "3", "--check"))
    assert mc["max_size"] == 4
    assert mc["total"] == 8
    assert mc["agree"] is True
    run("max-code", "--input", k3, "--n", "6", expect=3)


def test_stable_involution():
    c4 = path_of("c4.txt", C4)
    out = jout(run("stable-involution", "--input", c4))
    assert out["exists"] is True
    assert out["involution"] == [0, 3, 2, 1]

    k3 = path_of("k3.txt", K3)
    assert jout(run("stable-involution", "--input", k3))["exists"] is False

    c63 = path_of("c63.txt", C63)
    run("stable-involution", "--input", c63, expect=2)  # graphs only


def test_global_flags():
    run("--help")
    run("no-such-command", expect=4)
    run(expect=4)  # a subcommand is required


def main():
    global CLI, WORK
    if len(sys.argv) != 2:
        print("usage: cli_test.py <path-to-poslab>", file=sys.stderr)
        return 2
    CLI = sys.argv[1]

    tests = [
        test_density,
        test_indpoly,
        test_certify_odd,
        test_levi,
        test_qvanish,
        test_build_hq,
        test_copy_prob,
        test_mc_density,
        test_minimize,
        test_cycle_demo,
        test_grid_demo,
        test_code_commands,
        test_stable_involution,
        test_global_flags,
    ]
    failed = 0
    with tempfile.TemporaryDirectory() as work:
        WORK = work
        for t in tests:
            try:
                t()
                print(f"ok   {t.__name__}")
            except AssertionError as e:
                failed += 1
                print(f"FAIL {t.__name__}: {e}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
