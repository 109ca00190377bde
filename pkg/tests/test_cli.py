import json
from pathlib import Path

import pytest

from ptl.cache import ResultCache, code_version
from ptl.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_typed_solve_json(capsys):
    code, out = run_cli(capsys, "typed", "solve", "--n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "D" and doc["n"] == 2
    assert doc["display_series"] == "1"
    assert doc["dual_weights"] == {"0": 1}


def test_counts_examples(capsys):
    code, out = run_cli(capsys, "counts", "multipartitions", "--n", "5", "--i", "1")
    assert code == 0 and out.strip() == "7"
    code, out = run_cli(capsys, "counts", "p", "--n", "4", "--i", "2")
    assert out.strip() == "2"
    code, out = run_cli(capsys, "counts", "p-prime", "--n", "8", "--i", "5")
    assert out.strip() == "1"
    code, out = run_cli(capsys, "counts", "hh0", "--family", "typeD", "--n", "6")
    assert out.strip() == "6"
    code, out = run_cli(capsys, "counts", "prime-bound", "--family", "typeD",
                        "--n", "4", "--i", "2", "--d", "1,0,1")
    assert out.strip() == "4"


def test_compare_verdict_equal(capsys):
    code, out = run_cli(capsys, "compare", "hp0-hh0", "--family", "D",
                        "--n-max", "6", "--format", "json", "--no-cache")
    doc = json.loads(out)
    assert doc["verdict"] == "equal"
    assert all(r["relation"] == "equal" for r in doc["rows"])


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["typed", "solve", "--n", "2", "--bogus"])
    assert exc.value.code == 2


def test_guardrail_exit_3(capsys):
    code, out = run_cli(capsys, "hp0", "brute", "--group", "hyperoctahedral",
                        "--n", "2", "--max-degree", "8", "--max-columns", "5",
                        "--no-cache", "--format", "json")
    assert code == 3
    doc = json.loads(out)
    assert doc["truncated"] is True


def test_cache_roundtrip_and_byte_identical(tmp_path, capsys):
    args = ("typed", "solve", "--n", "4", "--format", "json",
            "--cache-dir", str(tmp_path))
    code, cold = run_cli(capsys, *args)
    assert code == 0
    assert len(list(tmp_path.glob("*.json"))) == 1
    code, warm = run_cli(capsys, *args)
    assert code == 0
    assert warm == cold


def test_hp0_cache_byte_identical(tmp_path, capsys):
    args = ("hp0", "brute", "--group", "demihyperoctahedral", "--n", "2",
            "--max-degree", "6", "--format", "json", "--cache-dir", str(tmp_path))
    _, cold = run_cli(capsys, *args)
    _, warm = run_cli(capsys, *args)
    assert warm == cold


def test_cache_corruption_exit_4(tmp_path, capsys):
    args = ("typed", "solve", "--n", "3", "--format", "json",
            "--cache-dir", str(tmp_path))
    run_cli(capsys, *args)
    record = next(tmp_path.glob("*.json"))
    data = json.loads(record.read_text())
    data["payload"]["display_series"] = "tampered"
    record.write_text(json.dumps(data))
    code, _ = run_cli(capsys, *args)
    assert code == 4


def test_cache_verify_detects_tampering(tmp_path, capsys):
    run_cli(capsys, "typed", "solve", "--n", "2", "--cache-dir", str(tmp_path))
    code, out = run_cli(capsys, "cache", "verify", "--cache-dir", str(tmp_path))
    assert code == 0 and "1 cache entries" in out
    record = next(tmp_path.glob("*.json"))
    record.write_text(record.read_text().replace("s1^2", "s1^3"))
    code, _ = run_cli(capsys, "cache", "verify", "--cache-dir", str(tmp_path))
    assert code == 4


def test_cache_reverifies_kernel_payload(tmp_path, capsys):
    # a forged payload with a consistent checksum still fails kernel re-checks
    args = ("typed", "solve", "--n", "2", "--format", "json",
            "--cache-dir", str(tmp_path))
    run_cli(capsys, *args)
    cache = ResultCache(tmp_path)
    record_path = next(tmp_path.glob("*.json"))
    record = json.loads(record_path.read_text())
    key = record["key"]
    payload = dict(record["payload"])
    payload["vectors"] = ["s2"]  # not in the kernel
    cache.put(key, payload)     # checksum now matches the forged payload
    code, _ = run_cli(capsys, *args)
    assert code == 4


def test_latex_figure_shape(capsys):
    code, out = run_cli(capsys, "typed", "solve", "--n-max", "4",
                        "--format", "latex", "--no-cache")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "\\begin{tabular}{c|c}"
    assert "t^{\\frac{1}{4}}" in lines[1]
    assert lines[2] == "$2$ & $1$ \\\\"
    assert lines[-1] == "\\end{tabular}"


def test_schema_validation(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (Path(__file__).resolve().parents[1] / "src" / "ptl" / "schemas"
         / "output-v1.schema.json").read_text())
    docs = []
    for argv in (
        ("typed", "solve", "--n", "3", "--format", "json", "--no-cache"),
        ("typed", "solve", "--n-max", "3", "--format", "json", "--no-cache"),
        ("typed", "families", "--n", "4", "--format", "json"),
        ("hp0", "brute", "--group", "hyperoctahedral", "--n", "2",
         "--max-degree", "6", "--format", "json", "--no-cache"),
        ("hp0", "aminus", "--n", "2", "--max-degree", "4", "--format", "json"),
        ("counts", "multipartitions", "--n", "3", "--i", "2", "--format", "json"),
        ("counts", "bn-hilbert", "--n", "3", "--format", "json"),
        ("strata", "kleinian", "--n", "2", "--m", "1", "--format", "json"),
        ("series", "burgers", "--order", "4", "--format", "json"),
        ("compare", "hp0-hh0", "--n-max", "4", "--format", "json", "--no-cache"),
        ("cache", "info", "--no-cache", "--format", "json"),
    ):
        code = main(list(argv))
        out = capsys.readouterr().out
        assert code == 0, argv
        docs.append(json.loads(out))
    for doc in docs:
        jsonschema.validate(doc, schema)


def test_strata_type_d_uses_solver_dims(capsys):
    code, out = run_cli(capsys, "strata", "type-d", "--n", "2",
                        "--format", "json", "--no-cache")
    doc = json.loads(out)
    labels = {leaf["label"] for leaf in doc["leaves"]}
    assert "(ii) {2}" in labels and "(i) (r=2; {})" in labels


def test_workers_deterministic(capsys):
    _, seq = run_cli(capsys, "typed", "solve", "--n-max", "5",
                     "--format", "json", "--no-cache")
    _, par = run_cli(capsys, "typed", "solve", "--n-max", "5",
                     "--format", "json", "--no-cache", "--workers", "2")
    assert seq == par


def test_typed_solve_weight_filter(capsys):
    code, out = run_cli(capsys, "typed", "solve", "--n", "4", "--weight", "-8",
                        "--format", "json", "--no-cache")
    doc = json.loads(out)
    assert doc["dual_weights"] == {"-8": 1}
    assert doc["display_series"] == "t^2"


def test_typed_families_cli(capsys):
    code, out = run_cli(capsys, "typed", "families", "--n", "4")
    assert code == 0
    assert "s1^2*s2" in out and "s2^2" in out


def test_code_version_stable():
    assert code_version() == code_version()
    assert len(code_version()) == 16
