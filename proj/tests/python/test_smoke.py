import json
import os
import subprocess

import pytest

import krec


def test_version_and_limits():
    assert krec.__version__ == "1.0.0"
    assert krec.PZ_LIMIT_V == 0.25
    assert krec.PZ_LIMIT_U == 1.0 / 16384.0


def test_params():
    p = krec.make_params(64, 4, 8)
    assert (p.n, p.m, p.k) == (64, 4, 8)
    q = krec.derive_params(64, 0.5, 3.5)
    assert (q.m, q.k) == (8, 21)
    with pytest.raises(ValueError):
        krec.make_params(3, 1, 2)


def test_generate_and_kmers():
    p = krec.make_params(32, 2, 6)
    seqs = krec.generate(p, 7)
    assert len(seqs) == 2
    assert all(len(s) == 32 and set(s) <= {"0", "1"} for s in seqs)
    assert seqs == krec.generate(p, 7)

    kmers = krec.extract_kmers(["0101"], 2)
    assert kmers == ["010", "101"]


def test_events_and_swap():
    w = krec.detect(["01010"], 2, "A")
    assert w is not None and (w.i, w.a, w.b) == (1, 1, 3)
    assert krec.detect(["00110"], 3, "A") is None
    assert krec.count_event(["01010"], 2, "A") == 2

    x = ["00010", "10011"]
    d = krec.detect(x, 2, "D")
    assert d is not None
    xt = krec.swap(x, d)
    assert sorted(xt) == ["00011", "10010"]
    assert krec.verify_equivalent(x, xt, 2)


def test_statistics_and_theory():
    assert krec.v_statistic(["0101", "0110"], 2) == 1
    assert krec.u_statistic(["00111", "01110"], 2) == 3

    verdict, binding = krec.classify_region(1.0, 3.5)
    assert (verdict, binding) == ("feasible", "2a+1")
    assert krec.classify_region(0.5, 2.2)[0] == "unknown"

    mv = krec.moments_v(krec.make_params(64, 4, 8))
    assert mv["e_first"] == 1.3359375
    assert mv["e_second_bound"] == 80.0
    assert 0 < mv["pz_lower"] < krec.PZ_LIMIT_V


def test_reconstruction():
    y = krec.extract_kmers(["0101", "0110"], 2)
    sols, exhausted, expansions = krec.enumerate_reconstructions(y, 2, 4, max_solutions=16)
    assert exhausted and expansions > 0
    assert [sorted(s) for s in sols] == [["0101", "0110"], ["0110", "1010"]]
    assert krec.is_unique(["0101", "0110"], 2) == "ambiguous"
    assert krec.is_unique(["0011"], 2) == "unique"
    assert krec.brute_force_oracle(y, 2, 4) == [sorted(s) for s in sols]
    assert krec.count_shared_subpaths(["00010", "10011"], ["00011", "10010"], 2) == 2


def test_graph_views():
    lines = krec.dump_graph(["001", "011"], 1).splitlines()
    assert lines == ["00 -> 01 [mult=1]", "01 -> 11 [mult=1]"]
    mu = krec.label_multiplicities(["001", "011"], 1)
    assert mu == {"00": 1, "01": 1, "11": 1}
    assert krec.true_multiplicities(["0011"], 2) == {"00": 1, "01": 1, "11": 1}


def test_grid_csv():
    cfg = json.dumps(
        {"n": 16, "alpha": [0.0, 0.5], "beta": 1.5, "trials": 4, "seed": 3,
         "measures": ["eventA", "repeat_free"]}
    )
    csv = krec.run_grid_csv(cfg, 2)
    lines = csv.strip().split("\n")
    assert lines[0] == "alpha,beta,n,m,k,trials,measure,count,estimate,stderr,verdict"
    assert len(lines) == 5
    assert csv == krec.run_grid_csv(cfg, 1)

    svg = krec.run_grid_svg(cfg, "eventA", 2)
    assert svg.startswith("<svg") and svg.count("<polyline") == 2


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("KREC_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("KREC_CLI not set")
    return path


def run_cli(cli, args, stdin=""):
    return subprocess.run([cli, *args], input=stdin, capture_output=True, text=True)


def test_cli_generate_kmers_solve(cli):
    gen = run_cli(cli, ["generate", "--n", "24", "--m", "2", "--seed", "5"])
    assert gen.returncode == 0
    seqs = gen.stdout.split()
    assert len(seqs) == 2 and all(len(s) == 24 for s in seqs)
    assert gen.stdout == run_cli(cli, ["generate", "--n", "24", "--m", "2", "--seed", "5"]).stdout

    km = run_cli(cli, ["kmers", "--k", "12"], stdin=gen.stdout)
    assert km.returncode == 0
    words = km.stdout.split()
    assert words == sorted(set(words)) and all(len(w) == 13 for w in words)

    solve = run_cli(cli, ["solve", "--m", "2", "--n", "24", "--max-solutions", "64"],
                    stdin=km.stdout)
    assert solve.returncode in (0, 1)  # unique or ambiguous, never an error
    blocks = [b.split() for b in solve.stdout.strip().split("\n\n") if b.strip()]
    assert any(sorted(b) == sorted(seqs) for b in blocks)


def test_cli_detect_and_bounds(cli):
    det = run_cli(cli, ["detect", "--k", "2", "--event", "A"], stdin="01010\n")
    assert det.returncode == 0
    w = json.loads(det.stdout.strip())
    assert w == {"kind": "A", "i": 1, "a": 1, "b": 3}

    bounds = run_cli(cli, ["bounds", "--n", "64", "--alpha", "0.5", "--beta", "3.5"])
    assert bounds.returncode == 0
    assert "feasible" in bounds.stdout


def test_cli_oracle(cli):
    res = run_cli(cli, ["oracle", "--n", "6", "--m", "2", "--k", "2",
                        "--instances", "25", "--seed", "3"])
    assert res.returncode == 0
    assert "25/25" in res.stdout
