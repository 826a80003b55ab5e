import json

import pytest
from click.testing import CliRunner

from divlat.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestFrozenOutputs:
    def test_mu(self, runner):
        r = invoke(runner, "mu", "--x", "5", "--d", "5")
        assert r.exit_code == 0
        assert r.output == "20\n"

    def test_mu_rational(self, runner):
        r = invoke(runner, "mu", "--x", "1/3", "--d", "1")
        assert r.output == "16/3\n"

    def test_pullback(self, runner):
        r = invoke(
            runner, "pullback",
            "--resolution", "corpus:elliptic_resolution", "--divisor", "C1",
        )
        assert r.exit_code == 0
        assert r.output == "C'1 + 1/3 C'3\n"

    def test_connectivity_block(self, runner):
        r = invoke(
            runner, "connectivity",
            "--model", "corpus:l3_surface", "--divisor", "2C'1 + 2C'2 + 2C'3",
        )
        assert r.exit_code == 0
        assert r.output == (
            "chain-connected: yes\n"
            "  chain start: C'1\n"
            "  add C'2 (pairing 1)\n"
            "  add C'3 (pairing 2)\n"
            "  add C'1 (pairing 1)\n"
            "  add C'2 (pairing 1)\n"
            "  add C'3 (pairing 1)\n"
            "numerically strictly 0-connected: no\n"
            "  minimum A.B = 0\n"
            "  A = C'1 + C'2 + C'3\n"
            "  B = C'1 + C'2 + C'3\n"
            "  A.B = 0\n"
        )

    def test_zariski(self, runner):
        r = invoke(
            runner, "zariski",
            "--model", "corpus:l3_surface", "--divisor", "C'1 + C'2 + C'3",
        )
        assert r.output == (
            "P = C'1 + 4/5 C'2 + 3/5 C'3\n"
            "N = 1/5 C'2 + 2/5 C'3\n"
            "P^2 = 2/5\n"
            "big: yes\n"
        )

    def test_delta_default_cycle(self, runner):
        r = invoke(runner, "delta", "--resolution", "corpus:duval_d4")
        assert r.output == (
            "Z = 2E0 + E1 + E2 + E3\n"
            "Delta = 0\n"
            "delta = 2\n"
            "class: duval (default cycle)\n"
        )

    def test_qmin(self, runner):
        r = invoke(runner, "qmin", "--model", "corpus:l2_surface", "--box", "4")
        assert r.output == "q = 1/3 at C1 + C2 (box 4, searched 25)\n"

    def test_frobenius(self, runner):
        r = invoke(runner, "frobenius", "--matrix", "0,1;0,0", "--p", "2")
        assert r.output == "p = 2, dimension = 2\nsemisimple = 0\nnilpotent = 2\n"

    def test_gonality(self, runner):
        r = invoke(runner, "gonality", "--m", "7")
        assert r.output == "6\n"


class TestExitCodes:
    def test_parse_error_is_2(self, runner):
        r = invoke(
            runner, "connectivity",
            "--model", "corpus:l3_surface", "--divisor", "2C'1 + ?",
        )
        assert r.exit_code == 2
        assert r.stderr.startswith("divlat: error [E_PARSE]")
        assert r.stdout == ""

    def test_unknown_corpus_name_lists_alternatives(self, runner):
        r = invoke(runner, "connectivity", "--model", "corpus:nope", "--divisor", "A")
        assert r.exit_code == 2
        assert "[E_MISSING]" in r.stderr
        assert "l3_surface" in r.stderr

    def test_budget_error_is_3(self, runner):
        r = invoke(
            runner, "connectivity",
            "--model", "corpus:l3_surface",
            "--divisor", "2C'1 + 2C'2 + 2C'3",
            "--budget", "5",
        )
        assert r.exit_code == 3
        assert "[E_BUDGET]" in r.stderr

    def test_intersect_needs_exactly_two(self, runner):
        r = runner.invoke(
            main,
            ["intersect", "--model", "corpus:l2_surface", "--divisor", "C1"],
        )
        assert r.exit_code == 2

    def test_missing_file_model(self, runner, tmp_path):
        r = invoke(
            runner, "connectivity",
            "--model", str(tmp_path / "no.json"), "--divisor", "A",
        )
        assert r.exit_code == 2
        assert "[E_INPUT]" in r.stderr


class TestStructuredOutput:
    def test_structured_is_json_and_deterministic(self, runner):
        args = (
            "connectivity", "--model", "corpus:l3_surface",
            "--divisor", "2C'1 + 2C'2 + 2C'3", "--format", "structured",
        )
        r1 = invoke(runner, *args)
        r2 = invoke(runner, *args)
        assert r1.exit_code == 0
        assert r1.output == r2.output
        body = json.loads(r1.output)
        assert body["chain_connected"] is True
        assert [s["prime"] for s in body["chain"]["steps"]] == [
            "C'2", "C'3", "C'1", "C'2", "C'3",
        ]

    def test_structured_report(self, runner):
        r = invoke(
            runner, "fujita", "--m", "3", "--hsq", "2",
            "--question", "bpf", "--format", "structured",
        )
        body = json.loads(r.output)
        assert [rep["criterion"] for rep in body["reports"]] == ["fujita-adjoint-bpf"]


class TestModelReferences:
    def test_local_lattice_file(self, runner, tmp_path):
        data = {
            "kind": "lattice",
            "name": "toy",
            "primes": ["A", "B"],
            "matrix": [[0, 1], [1, 0]],
        }
        p = tmp_path / "toy.json"
        p.write_text(json.dumps(data), encoding="utf-8")
        r = invoke(runner, "intersect", "--model", str(p),
                   "--divisor", "A", "--divisor", "B")
        assert r.exit_code == 0
        assert r.output.endswith("A.B = 1\n")

    def test_check_model_all_kinds(self, runner):
        r = invoke(runner, "check-model", "--model", "corpus:l2_surface")
        assert r.output == "ok: lattice l2_surface (primes: C1, C2)\n"
        r = invoke(runner, "check-model", "--model", "corpus:duval_a2")
        assert r.exit_code == 0 and "resolution duval_a2" in r.output
        r = invoke(runner, "check-model", "--model", "corpus:nodal_cubic")
        assert r.exit_code == 0 and "dualgraph nodal_cubic" in r.output

    def test_corpus_list_and_show(self, runner):
        r = invoke(runner, "corpus", "list")
        assert "l3_surface" in r.output.splitlines()
        r = invoke(runner, "corpus", "show", "l1_fiber")
        assert json.loads(r.output)["kind"] == "lattice"


class TestMicroSyntax:
    def test_cluster_spec(self, runner):
        r = invoke(
            runner, "reider",
            "--model", "corpus:l2_surface", "--divisor", "4C1 + 4C2",
            "--delta", "4/3", "--cluster", "p=C1,C2@duval",
        )
        assert r.exit_code == 0
        assert "inconclusive" in r.output or "witness" in r.output

    def test_bad_cluster_spec(self, runner):
        r = runner.invoke(main, [
            "reider", "--model", "corpus:l2_surface", "--divisor", "C1",
            "--delta", "1", "--cluster", "@@",
        ])
        assert r.exit_code == 2

    def test_dims_spec(self, runner):
        r = invoke(
            runner, "fujita", "--m", "2", "--hsq", "2",
            "--question", "bpf", "--dims", "dimD=20,h1n=0",
        )
        assert r.exit_code == 0
        assert "[holds   ]" in r.output or "holds" in r.output

    def test_bad_dims_key(self, runner):
        r = runner.invoke(main, [
            "fujita", "--m", "2", "--hsq", "2", "--dims", "bogus=1",
        ])
        assert r.exit_code == 2

    def test_bad_matrix(self, runner):
        r = runner.invoke(main, ["frobenius", "--matrix", "1,x;0,1", "--p", "2"])
        assert r.exit_code == 2
