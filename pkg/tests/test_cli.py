import json

import pytest

from qcluster import cli, surface


def run(argv):
    return cli.main(argv)


@pytest.fixture()
def triangle_file(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(surface.triangle_dt(0, 1).to_json())
    return path


@pytest.fixture()
def quad_file(tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(surface.case_dt("I").to_json())
    return path


def test_build_triangle(tmp_path, triangle_file, capsys):
    out = tmp_path / "seed.json"
    assert run(["build", "--surface", str(triangle_file),
                "--pi", "auto", "--out", str(out)]) == 0
    seed = json.loads(out.read_text())
    assert seed["n"] == 8
    text = capsys.readouterr().out
    assert "compatibility row e1: ok" in text


def test_build_quadrilateral(tmp_path, quad_file):
    out = tmp_path / "seed.json"
    assert run(["build", "--surface", str(quad_file),
                "--pi", "auto", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 14


def test_build_schema_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SystemExit) as err:
        run(["build", "--surface", str(bad), "--out", str(tmp_path / "x")])
    assert err.value.code == cli.EXIT_SCHEMA


def test_mutate_logs_relation(tmp_path, triangle_file, capsys):
    seedf = tmp_path / "seed.json"
    run(["build", "--surface", str(triangle_file), "--out", str(seedf)])
    capsys.readouterr()
    out = tmp_path / "out.json"
    log = tmp_path / "log.txt"
    assert run(["mutate", "--seed", str(seedf), "--word", "1",
                "--out", str(out), "--log", str(log)]) == 0
    assert "e1 e1' = q^{-1/2}([e2 e3] + q [e4 e5 e7])" in log.read_text()


def test_mutate_frozen_exit(tmp_path, triangle_file):
    seedf = tmp_path / "seed.json"
    run(["build", "--surface", str(triangle_file), "--out", str(seedf)])
    assert run(["mutate", "--seed", str(seedf), "--word", "3",
                "--out", str(tmp_path / "x.json")]) == cli.EXIT_FROZEN


def test_word_involution_on_quad(tmp_path, quad_file):
    seedf = tmp_path / "seed.json"
    run(["build", "--surface", str(quad_file), "--out", str(seedf)])
    out = tmp_path / "out.json"
    assert run(["mutate", "--seed", str(seedf), "--word", "3 3",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == json.loads(seedf.read_text())


def test_explore_outputs(tmp_path, triangle_file, capsys):
    seedf = tmp_path / "seed.json"
    run(["build", "--surface", str(triangle_file), "--out", str(seedf)])
    capsys.readouterr()
    dot = tmp_path / "g.dot"
    gj = tmp_path / "g.json"
    assert run(["explore", "--seed", str(seedf), "--dot", str(dot),
                "--json", str(gj)]) == 0
    assert "6 seeds, 6 edges" in capsys.readouterr().out
    assert dot.read_text().startswith("graph exchange")
    assert json.loads(gj.read_text())["vertices"] == 6


def test_explore_depth_zero(tmp_path, quad_file, capsys):
    seedf = tmp_path / "seed.json"
    run(["build", "--surface", str(quad_file), "--out", str(seedf)])
    capsys.readouterr()
    assert run(["explore", "--seed", str(seedf), "--depth", "0"]) == 0
    assert "1 seeds" in capsys.readouterr().out


def test_verify_triangle_suite(capsys):
    assert run(["verify", "--suite", "triangle"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_verify_json_output(capsys):
    assert run(["verify", "--suite", "quad", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(item["ok"] for item in data)


def test_verify_flip_suite(capsys):
    assert run(["verify", "--suite", "flip"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
