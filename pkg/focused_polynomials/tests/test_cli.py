import json

import pytest

from focused_polynomials.cli import (
    EXIT_NOT_APPLICABLE,
    EXIT_OK,
    EXIT_UNKNOWN_COMMAND,
    EXIT_VALIDATION,
    cmd_dispatch,
    create_app,
)


def write_json(path, document) -> str:
    path.write_text(json.dumps(document))
    return str(path)


@pytest.fixture
def polynomial_file(tmp_path) -> str:
    """<(1, 1, 0), x> <(1, 0, 1), x> + <(1, 1, 1), x>^2 in R^3"""
    return write_json(
        tmp_path / "poly.json",
        {
            "n": 3,
            "m": 2,
            "generators": [[1, 1, 0], [1, 0, 1], [1, 1, 1]],
            "terms": [{"indices": [1, 2], "weight": 1}, {"indices": [3, 3], "weight": "1.0"}],
        },
    )


def run(capsys, *args):
    code = cmd_dispatch(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_haf_and_per(tmp_path, capsys):
    """
    1. The all-ones 4x4 matrix has hafnian 3 (three perfect matchings).
    2. The all-ones 3x3 matrix has permanent 3! = 6, also as {"matrix": [...]}.
    3. Both documents carry the schema version and a manifest without timing.
    """
    ones = write_json(tmp_path / "ones.json", [[1] * 4] * 4)
    code, out, _ = run(capsys, "haf", "--input", ones)
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["value"] == 3.0
    assert document["size"] == 4
    assert document["schema"] == 1
    assert document["manifest"]["command"] == "haf"
    assert "duration_seconds" not in document["manifest"]

    wrapped = write_json(tmp_path / "wrapped.json", {"matrix": [[1] * 3] * 3})
    code, out, _ = run(capsys, "per", "--input", wrapped, "--with-timing")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["value"] == pytest.approx(6.0)
    assert document["manifest"]["duration_seconds"] >= 0


def test_oracle_option(tmp_path, capsys):
    matrix = write_json(tmp_path / "m.json", [[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]])
    _, fast, _ = run(capsys, "haf", "--input", matrix)
    _, slow, _ = run(capsys, "haf", "--input", matrix, "--oracle")
    assert json.loads(fast)["value"] == pytest.approx(1 * 6 + 2 * 5 + 3 * 4)
    assert json.loads(fast)["value"] == pytest.approx(json.loads(slow)["value"])


def test_invalid_input(tmp_path, capsys):
    """
    1. Malformed JSON is reported with its position.
    2. A missing file is invalid input.
    3. A missing required option is a usage error.
    4. Randomized runs need an explicit seed.
    5. Odd orders have no hafnian.
    """
    broken = tmp_path / "broken.json"
    broken.write_text('{"matrix": [[1, 2], [3, 4]')
    code, _, err = run(capsys, "haf", "--input", str(broken))
    assert code == EXIT_VALIDATION
    assert "line 1" in err

    code, _, _ = run(capsys, "per", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_VALIDATION

    code, _, err = run(capsys, "haf")
    assert code == EXIT_VALIDATION
    assert "--input" in err

    poly = write_json(tmp_path / "poly.json", {"n": 1, "m": 1, "generators": [[1]], "terms": [{"indices": [1], "weight": 1}]})
    code, _, err = run(capsys, "integrate", "--randomized", "--input", poly)
    assert code == EXIT_VALIDATION
    assert "--seed" in err

    odd = write_json(tmp_path / "odd.json", [[1] * 3] * 3)
    assert run(capsys, "haf", "--input", odd)[0] == EXIT_VALIDATION


def test_ragged_generators(tmp_path, capsys):
    """Generators of unequal length are invalid input, not a crash, for polynomials and pairs."""
    ragged = write_json(
        tmp_path / "ragged.json",
        {"n": 2, "m": 1, "generators": [[1, 0], [1]], "terms": [{"indices": [1], "weight": 1}]},
    )
    code, out, err = run(capsys, "integrate", "--input", ragged)
    assert code == EXIT_VALIDATION
    assert out == ""
    assert "dimension 2" in err

    pair = write_json(
        tmp_path / "pair.json",
        {
            "n": 2,
            "m": 1,
            "a_generators": [[1, 0]],
            "f_terms": [{"indices": [1], "weight": 1}],
            "b_generators": [[1, 0, 0]],
            "g_terms": [{"indices": [1], "weight": 1}],
        },
    )
    assert run(capsys, "pair", "--input", pair)[0] == EXIT_VALIDATION


def test_unknown_command(capsys):
    code, out, err = run(capsys, "frobnicate")
    assert code == EXIT_UNKNOWN_COMMAND
    assert out == ""
    assert "frobnicate" in err
    assert "integrate" in err


def test_not_applicable(tmp_path, capsys, monkeypatch):
    """
    1. Orthogonal generators are not focused.
    2. Matrices beyond the hafnian cap (here set through the environment) are refused.
    """
    orthogonal = write_json(
        tmp_path / "orthogonal.json",
        {"n": 2, "m": 2, "generators": [[1, 0], [0, 1]], "terms": [{"indices": [1, 2], "weight": 1}]},
    )
    code, _, err = run(capsys, "integrate", "--randomized", "--seed", "1", "--input", orthogonal)
    assert code == EXIT_NOT_APPLICABLE
    assert "cosine" in err

    monkeypatch.setenv("FOCUSED_HAFNIAN_CAP", "2")
    ones = write_json(tmp_path / "ones.json", [[1] * 4] * 4)
    assert run(capsys, "haf", "--input", ones)[0] == EXIT_NOT_APPLICABLE


def test_integrate(polynomial_file, capsys):
    """
    The Gaussian integral is <(1,1,0),(1,0,1)> + ||(1,1,1)||^2 = 1 + 3 = 4;
    on S^2 it is a third of that.
    """
    code, out, _ = run(capsys, "integrate", "--input", polynomial_file)
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(4.0)

    _, out, _ = run(capsys, "integrate", "--measure", "sphere", "--input", polynomial_file)
    assert json.loads(out)["value"] == pytest.approx(4 / 3)

    _, out, _ = run(capsys, "integrate", "--randomized", "--seed", "3", "--trials", "5", "--input", polynomial_file)
    document = json.loads(out)
    assert document["report"]["estimate"] == pytest.approx(4.0)
    assert len(document["report"]["per_trial"]) == 5
    assert document["manifest"]["seed"] == 3


def test_seeded_runs_are_byte_identical(polynomial_file, tmp_path, capsys):
    outputs = [tmp_path / "first.json", tmp_path / "second.json"]
    for output in outputs:
        code, out, _ = run(
            capsys, "integrate", "--randomized", "--seed", "7", "--k", "2", "--input", polynomial_file, "--output", str(output)
        )
        assert code == EXIT_OK
        assert out == ""
    assert outputs[0].read_bytes() == outputs[1].read_bytes()
    assert json.loads(outputs[0].read_text())["report"]["k_used"] == 2


def test_hafnian_command(tmp_path, capsys):
    shifted = write_json(tmp_path / "j.json", [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    code, out, _ = run(capsys, "hafnian", "--input", shifted, "--seed", "1", "--trials", "3")
    assert code == EXIT_OK
    report = json.loads(out)["report"]
    assert report["estimate"] == pytest.approx(3.0, rel=1e-9)
    assert report["details"]["shift_policy"] == "min-eigenvalue"

    _, out, _ = run(capsys, "hafnian", "--exact", "--input", shifted)
    assert json.loads(out)["value"] == pytest.approx(3.0)

    code, _, _ = run(capsys, "hafnian", "--input", shifted, "--seed", "1", "--shift", "big")
    assert code == EXIT_VALIDATION


def test_pair_command(tmp_path, capsys):
    """<x_1^2, x_1^2> = 2"""
    pair = write_json(
        tmp_path / "pair.json",
        {
            "n": 2,
            "m": 2,
            "a_generators": [[1, 0]],
            "f_terms": [{"indices": [1, 1], "weight": 1}],
            "b_generators": [[1, 0]],
            "g_terms": [{"indices": [1, 1], "weight": 1}],
        },
    )
    code, out, _ = run(capsys, "pair", "--input", pair)
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(2.0)

    _, out, _ = run(capsys, "pair", "--randomized", "--seed", "4", "--input", pair)
    assert json.loads(out)["report"]["estimate"] == pytest.approx(2.0)


def test_vpartition_command(tmp_path, capsys):
    instance = write_json(tmp_path / "vp.json", {"a_vectors": [[1], [1]], "b": [2], "M": 2})
    code, out, _ = run(capsys, "vpartition", "--input", instance, "--check")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["count"] == 3
    assert document["enumerated"] == 3

    broken = write_json(tmp_path / "broken.json", {"a_vectors": [[1]], "b": [2]})
    assert run(capsys, "vpartition", "--input", broken)[0] == EXIT_VALIDATION


def test_sample_subspace_command(capsys):
    code, out, _ = run(capsys, "sample-subspace", "--n", "5", "--k", "2", "--seed", "3", "--stream", "1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert (document["n"], document["k"]) == (5, 2)
    assert len(document["frame"]) == 5
    assert all(len(row) == 2 for row in document["frame"])
    assert run(capsys, "sample-subspace", "--n", "2", "--k", "3", "--seed", "3")[0] == EXIT_VALIDATION


def test_maximize_command(tmp_path, capsys):
    """<c, x>^2 with ||c|| = 3 has maximum 9 on the sphere."""
    poly = write_json(
        tmp_path / "square.json",
        {"n": 3, "m": 2, "generators": [[1, 2, 2]], "terms": [{"indices": [1, 1], "weight": 1}]},
    )
    code, out, _ = run(capsys, "maximize", "--input", poly, "--seed", "2", "--restarts", "4", "--norm-power", "1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["report"]["max_estimate"] == pytest.approx(9.0, rel=1e-6)
    assert 0 < document["norm_estimate"] <= 9.0


def test_benchmark_command(capsys):
    code, out, _ = run(capsys, "benchmark", "--n", "3", "--k-power", "1", "--mc-samples", "1000", "--seed", "5")
    assert code == EXIT_OK
    rows = {row["method"]: row for row in json.loads(out)["table"]}
    assert set(rows) == {"exact", "monte_carlo", "subspace"}
    assert rows["exact"]["estimate"] == pytest.approx(1 / 3)
    assert rows["subspace"]["standard_error"] is None


def test_create_app_reads_the_environment(monkeypatch):
    """
    1. JSON values are decoded, other values are kept as strings.
    2. Explicit config overrides the environment.
    """
    monkeypatch.setenv("FOCUSED_THREADS", "4")
    monkeypatch.setenv("FOCUSED_LOGGING_LEVEL", "debug")
    app = create_app()
    assert app.config["FOCUSED_THREADS"] == 4
    assert app.config["FOCUSED_LOGGING_LEVEL"] == "debug"
    assert app.logger.level == 10

    app = create_app({"FOCUSED_THREADS": 2})
    assert app.config["FOCUSED_THREADS"] == 2
