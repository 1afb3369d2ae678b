import json

import pytest

from monores.cli import (
    FuzzRecord,
    derive_trial_seed,
    main,
    replay_fuzz_record,
    run_conjecture_trial,
)
from monores.monomials import IdealRandomSpec
from monores.homology import FieldSpec

EXAMPLE_TEXT = "vars: 4\nx1^2\nx2^2\nx3^2\nx1*x3\nx2*x4\n"
SQUAREFREE_TEXT = "vars: 6\nx1*x4\nx2*x5\nx3*x6\nx1*x2*x3\n"


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.ideal"
    path.write_text(EXAMPLE_TEXT)
    return str(path)


@pytest.fixture
def squarefree_file(tmp_path):
    path = tmp_path / "squarefree.ideal"
    path.write_text(SQUAREFREE_TEXT)
    return str(path)


class TestMingens:
    def test_drops_and_round_trips(self, capsys, tmp_path):
        path = tmp_path / "raw.ideal"
        path.write_text("vars: 1\nx1\nx1^2\n")
        code, out, err = run(capsys, ["mingens", str(path)])
        assert code == 0
        assert out == "vars: 1\nx1\n"
        assert "dropped 1" in err

    def test_json_round_trip(self, capsys, example_file):
        code, out, _ = run(capsys, ["mingens", example_file, "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["variables"] == 4
        assert len(data["generators"]) == 5

    def test_inline(self, capsys):
        code, out, _ = run(capsys, ["mingens", "--inline", "vars: 2\nx1*x2\n"])
        assert code == 0
        assert "x1*x2" in out

    def test_parse_error_exit_code(self, capsys, tmp_path):
        path = tmp_path / "bad.ideal"
        path.write_text("vars: 2\nnonsense\n")
        code, _, err = run(capsys, ["mingens", str(path)])
        assert code == 2
        assert "error" in err


class TestComplexCommand:
    def test_bu_text(self, capsys, example_file):
        code, out, _ = run(capsys, ["complex", example_file, "--kind", "bu"])
        assert code == 0
        assert "f-vector: [5, 9, 7, 2]" in out

    def test_graph_dot(self, capsys, example_file):
        code, out, _ = run(capsys, ["complex", example_file, "--kind", "graph", "--format", "dot"])
        assert code == 0
        assert out.startswith("graph ")
        assert out.count("--") == 9
        assert out.count("{") == out.count("}") == 1

    def test_scarf_json(self, capsys, squarefree_file):
        code, out, _ = run(capsys, ["complex", squarefree_file, "--kind", "scarf", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert len(data["faces"]["2"]) == 3

    def test_clique_kind(self, capsys, example_file):
        code, out, _ = run(capsys, ["complex", example_file, "--kind", "clique", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert len(data["vertices"]) == 5

    def test_cap_exit_code(self, capsys, squarefree_file):
        code, _, err = run(
            capsys,
            ["complex", squarefree_file, "--kind", "taylor", "--cap-faces", "4"],
        )
        assert code == 3
        assert "cap" in err.lower()

    def test_byte_identical_json(self, capsys, example_file):
        _, first, _ = run(capsys, ["complex", example_file, "--kind", "bu", "--format", "json"])
        _, second, _ = run(capsys, ["complex", example_file, "--kind", "bu", "--format", "json"])
        assert first == second


class TestBettiCommand:
    @pytest.mark.parametrize("method", ["faces", "interval", "agreement"])
    def test_example_totals(self, capsys, example_file, method):
        code, out, _ = run(
            capsys, ["betti", example_file, "--method", method, "--format", "json"]
        )
        assert code == 0
        assert json.loads(out)["totals"] == [5, 9, 7, 2]

    def test_non_minimal_faces_method(self, capsys, squarefree_file):
        code, _, err = run(capsys, ["betti", squarefree_file, "--method", "faces"])
        assert code == 4
        assert "label" in err

    def test_single_generator(self, capsys):
        code, out, _ = run(
            capsys,
            ["betti", "--inline", "vars: 2\nx1^2*x2\n", "--method", "interval", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["totals"] == [1]

    def test_prime_field_flag(self, capsys, example_file):
        code, out, _ = run(
            capsys,
            ["betti", example_file, "--method", "interval", "--field", "2", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["totals"] == [5, 9, 7, 2]

    def test_methods_agree_on_random_seeds(self, capsys):
        for seed in (1, 2, 3):
            argv = ["random", "--vars", "3", "--gens", "4", "--maxdeg", "4", "--seed", str(seed)]
            code, ideal_text, _ = run(capsys, argv)
            assert code == 0
            tables = []
            for method in ("interval", "agreement"):
                code, out, _ = run(
                    capsys,
                    ["betti", "--inline", ideal_text, "--method", method, "--format", "json"],
                )
                assert code == 0
                tables.append(out)
            assert tables[0] == tables[1]


class TestVerifyCommand:
    def test_example_passes(self, capsys, example_file):
        code, out, _ = run(capsys, ["verify", example_file, "--fields", "0,2", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["minimal"] is True
        assert data["report"]["all_passed"] is True

    def test_squarefree_not_minimal_but_passes(self, capsys, squarefree_file):
        code, out, _ = run(capsys, ["verify", squarefree_file, "--format", "json"])
        assert code == 0
        assert json.loads(out)["minimal"] is False

    def test_text_mode(self, capsys, example_file):
        code, out, _ = run(capsys, ["verify", example_file])
        assert code == 0
        assert "PASS" in out


class TestRandomCommand:
    def test_deterministic(self, capsys):
        argv = ["random", "--vars", "4", "--gens", "6", "--maxdeg", "5", "--seed", "9"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_strongly_generic_mode(self, capsys):
        code, out, _ = run(
            capsys,
            ["random", "--vars", "3", "--gens", "5", "--maxdeg", "9",
             "--mode", "strongly-generic", "--seed", "4"],
        )
        assert code == 0
        from monores import is_strongly_generic, parse_ideal

        assert is_strongly_generic(parse_ideal(out))

    def test_feeds_verify(self, capsys):
        _, ideal_text, _ = run(
            capsys, ["random", "--vars", "3", "--gens", "4", "--maxdeg", "4", "--seed", "2"]
        )
        code, _, _ = run(capsys, ["verify", "--inline", ideal_text])
        assert code == 0


class TestIbarCommand:
    def test_generic_input_passes(self, capsys):
        code, out, _ = run(
            capsys,
            ["ibar", "--inline", "vars: 2\nx1^2*x2\nx1*x2^2\n", "--M", "1", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["all_passed"] is True

    def test_non_generic_exit_code(self, capsys):
        code, _, err = run(
            capsys, ["ibar", "--inline", "vars: 3\nx1*x2\nx2*x3\n", "--M", "1"]
        )
        assert code == 5
        assert "generic" in err

    def test_bad_bound_is_input_error(self, capsys):
        code, _, _ = run(
            capsys,
            ["ibar", "--inline", "vars: 2\nx1^2*x2\nx1*x2^2\n", "--u", "1,1", "--M", "1"],
        )
        assert code == 2


class TestConjectureCommand:
    def test_deterministic_run_with_log(self, capsys, tmp_path):
        log = tmp_path / "fuzz.jsonl"
        argv = [
            "conjecture", "--vars", "4", "--gens", "6", "--maxdeg", "5",
            "--trials", "6", "--seed", "1", "--log", str(log), "--format", "json",
        ]
        code, out, _ = run(capsys, argv)
        assert code == 0
        summary = json.loads(out)
        assert summary["trials"] == 6
        assert summary["consistent"] == 6
        lines = log.read_text().splitlines()
        assert len(lines) == 6

        # appending a second identical run doubles the log with equal verdicts
        code, out2, _ = run(capsys, argv)
        assert out == out2
        lines = log.read_text().splitlines()
        assert len(lines) == 12
        first, second = lines[:6], lines[6:]
        for a, b in zip(first, second):
            ra, rb = FuzzRecord.from_json_line(a), FuzzRecord.from_json_line(b)
            assert ra.verdict == rb.verdict
            assert ra.checks == rb.checks
            assert ra.seed == rb.seed

    def test_replay_records(self, tmp_path, capsys):
        log = tmp_path / "fuzz.jsonl"
        code, _, _ = run(
            capsys,
            ["conjecture", "--vars", "3", "--gens", "5", "--maxdeg", "4",
             "--trials", "4", "--seed", "7", "--log", str(log)],
        )
        assert code == 0
        for line in log.read_text().splitlines():
            assert replay_fuzz_record(FuzzRecord.from_json_line(line))

    def test_strongly_generic_stream(self, tmp_path, capsys):
        from monores import (
            buchberger_graph,
            is_connected,
            is_planar,
            random_ideal,
        )

        log = tmp_path / "sg.jsonl"
        code, _, _ = run(
            capsys,
            ["conjecture", "--vars", "3", "--gens", "4", "--maxdeg", "7",
             "--mode", "strongly-generic", "--trials", "5", "--seed", "2",
             "--log", str(log)],
        )
        assert code == 0
        for line in log.read_text().splitlines():
            record = FuzzRecord.from_json_line(line)
            assert record.verdict == "consistent"
            assert replay_fuzz_record(record)
            # the regenerated instances satisfy the planar three-variable picture
            graph = buchberger_graph(random_ideal(record.spec()))
            assert is_planar(graph) and is_connected(graph)


class TestWorkerPool:
    def test_threaded_run_is_byte_identical(self, capsys, tmp_path, monkeypatch):
        argv = [
            "conjecture", "--vars", "3", "--gens", "5", "--maxdeg", "4",
            "--trials", "8", "--seed", "3", "--format", "json",
        ]
        monkeypatch.delenv("MONORES_THREADS", raising=False)
        _, serial, _ = run(capsys, argv)
        monkeypatch.setenv("MONORES_THREADS", "4")
        _, threaded, _ = run(capsys, argv)
        assert serial == threaded


class TestSeedDerivation:
    def test_stable_values(self):
        assert derive_trial_seed(0, 0) != derive_trial_seed(0, 1)
        assert derive_trial_seed(1, 0) == derive_trial_seed(1, 0)
        assert 0 <= derive_trial_seed(2**63, 12345) < 2**64

    def test_trial_is_replayable_directly(self):
        spec = IdealRandomSpec(3, 4, 4, "arbitrary", 99)
        fields = (FieldSpec(0), FieldSpec(2))
        a = run_conjecture_trial(spec, fields)
        b = run_conjecture_trial(spec, fields)
        assert a.verdict == b.verdict
        assert a.checks == b.checks
