import json

import pytest

from crystalpaths import energy
from crystalpaths.cli import main, parse_weight_selector
from crystalpaths.weights import LevelWeight


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weight_selector_parsing():
    assert parse_weight_selector("L0", 2) == LevelWeight(1, (0, 0), 0)
    assert parse_weight_selector("2L0", 3) == LevelWeight(2, (0, 0, 0), 0)
    assert parse_weight_selector("L0+L1", 3) == LevelWeight(2, (1, 0, 0), 0)
    assert parse_weight_selector("2L0+L2", 3) == LevelWeight(3, (1, 1, 0), 0)
    with pytest.raises(ValueError):
        parse_weight_selector("1,0", 2)
    with pytest.raises(ValueError):
        parse_weight_selector("L5", 3)


def test_kostka_classical_json(capsys):
    code, out, _ = run(
        capsys, "kostka", "--n", "2", "--shapes", "1x1,1x1", "--lambda", "2,0"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["path_count"] == 1
    assert len(payload["polynomial"]) == 1


def test_kostka_level_json(capsys):
    code, out, _ = run(
        capsys, "kostka", "--n", "2", "--shapes", "1x1,1x1", "--level", "1",
        "--Lambda", "L0",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["polynomial"] == [[-1, 1]]


def test_validation_exit_code(capsys):
    code, _, err = run(capsys, "kostka", "--n", "3", "--shapes", "3x1", "--lambda", "1,1,1")
    assert code == 2
    assert "height" in err
    code, _, err = run(capsys, "kostka", "--n", "2", "--shapes", "1x1")
    assert code == 2


def test_verify_command(capsys):
    code, out, _ = run(
        capsys, "verify", "--n", "2", "--level", "1", "--shapes", "1x1,1x1",
        "--Lambda", "L0", "--LambdaPrime", "L0", "--widen-check",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    assert payload["widen_certificate"]["stable"] is True
    assert payload["warnings"] == []


def test_verify_zero_command(capsys):
    code, out, _ = run(capsys, "verify-zero", "--n", "2", "--shapes", "1x1,1x1,1x1")
    assert code == 0
    payload = json.loads(out)
    assert payload["lhs_polynomial"] == []
    assert payload["pairing_size"] * 2 == payload["pairing_summands"]
    code, out, _ = run(capsys, "verify-zero", "--n", "2", "--shapes", "")
    assert code == 0
    assert json.loads(out)["lhs_polynomial"] == [[0, 1]]


def test_output_determinism(capsys):
    args = ("verify", "--n", "2", "--level", "1", "--shapes", "1x1,1x1", "--Lambda", "L0")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_table_format(capsys):
    code, out, _ = run(
        capsys, "kostka", "--n", "2", "--shapes", "1x1,1x1", "--lambda", "1,1",
        "--format", "table",
    )
    assert code == 0
    assert "polynomial:" in out and "path_count" in out


def test_cache_commands(tmp_path, capsys, caplog):
    energy.clear_memory_tables()
    cache = str(tmp_path)
    code, out, _ = run(
        capsys, "cache", "build", "--n", "2", "--shapes", "1x2,1x1", "--cache-dir", cache
    )
    assert code == 0
    built = json.loads(out)["built"]
    assert (tmp_path / built).exists()

    code, out, _ = run(capsys, "cache", "list", "--cache-dir", cache)
    entries = json.loads(out)["entries"]
    assert len(entries) == 1 and entries[0]["file"] == built

    # corrupt, then rebuild through a computation
    raw = bytearray((tmp_path / built).read_bytes())
    raw[len(raw) // 3] ^= 0xFF
    (tmp_path / built).write_bytes(bytes(raw))
    energy.clear_memory_tables()
    code, out, _ = run(
        capsys, "kostka", "--n", "2", "--shapes", "1x2,1x1", "--lambda", "2,1",
        "--cache-dir", cache,
    )
    assert code == 0
    assert any("rebuilding" in rec.message for rec in caplog.records)

    code, out, _ = run(capsys, "cache", "clear", "--cache-dir", cache)
    assert code == 0
    assert json.loads(out)["removed"] == [built]
    assert not list(tmp_path.glob("R_*.json"))


def test_cache_requires_directory(capsys, monkeypatch):
    monkeypatch.delenv("CRYSTAL_CACHE_DIR", raising=False)
    code, _, err = run(capsys, "cache", "list")
    assert code == 2 and "cache" in err


def test_cache_env_var_default(tmp_path, capsys, monkeypatch):
    energy.clear_memory_tables()
    monkeypatch.setenv("CRYSTAL_CACHE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "cache", "build", "--n", "2", "--shapes", "1x1,1x1")
    assert code == 0
    assert list(tmp_path.glob("R_*.json"))


def test_straighten_command(capsys):
    code, out, _ = run(capsys, "straighten", "n=2", "l=1", "alpha=2,-2")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == {"beta": [0, 0], "qpow": -2, "sign": -1}
    code, out, _ = run(capsys, "straighten", "n=2", "l=1", "alpha=1,2")
    assert json.loads(out)["result"] == "zero"
    code, _, err = run(capsys, "straighten", "n=2", "alpha=1,2")
    assert code == 2 and "missing l" in err


def test_jobs_flag(capsys):
    code, out, _ = run(
        capsys, "kostka", "--n", "2", "--shapes", "1x1,1x1,1x1", "--lambda", "2,1",
        "--jobs", "2",
    )
    assert code == 0
    assert json.loads(out)["path_count"] == 2
