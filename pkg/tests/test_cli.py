"""End-to-end CLI behavior: formats, exit codes, manifests, schemas."""

import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from faasim import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


@pytest.fixture(scope="module")
def report_schema():
    return json.loads(
        (resources.files("faasim") / "data" / "schemas" / "report.schema.json").read_text()
    )


def table_values(text):
    values = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition("  ")
        values[key.strip()] = value.strip()
    return values


# --- basic subcommands ---------------------------------------------------------


def test_breakeven():
    doc = run_json("breakeven", "--ratio", "7.5")
    assert doc["result"]["breakeven_duty_cycle"] == pytest.approx(0.133333)
    assert doc["result"]["breakeven_percent"] == "13.33%"


def test_comm_function_grained_shuffle():
    doc = run_json("comm", "--pattern", "shuffle", "--n", "2", "--k", "2", "--granularity", "function")
    assert doc["result"]["messages"] == 16


def test_catalog_cost_capacity():
    doc = run_json("catalog", "cost", "--service", "object", "--capacity-gb", "1")
    assert doc["result"]["capacity_usd"] == 0.023


def test_catalog_cost_iops_per_minute():
    doc = run_json(
        "catalog", "cost", "--service", "object", "--iops", "100000", "--per", "minute", "--mix", "1.0"
    )
    assert doc["result"]["iops_usd_per_minute"] == 30.0


def test_catalog_show_table_runs():
    code, out, _ = run("catalog", "show", "--format", "table")
    assert code == 0
    assert "object" in out and "elastic-db" in out


def test_catalog_show_empty(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text('{"compute": [], "storage": []}')
    code, out, _ = run("catalog", "show", "--format", "table", "--catalog", str(empty))
    assert code == 0


def test_shuffle_plan_staged():
    doc = run_json("shuffle", "plan", "--data", "100TB", "--block", "3GB", "--stages", "50")
    assert doc["result"]["fast_storage_bytes"] == 2 * 10**12
    assert doc["result"]["fast_storage_human"] == "2 TB"
    assert doc["result"]["transfers"] == 1_111_155_556


def test_shuffle_price_preset():
    doc = run_json("shuffle", "price", "--preset", "cloudsort100tb")
    cost = doc["result"]["cost"]
    assert cost["total_usd"] == 163.0
    assert cost["compute_usd"] == 117.0
    assert cost["slow_store_request_usd"] == 14.0
    assert cost["fast_store_usd"] == 32.0


def test_workload_gen_and_profile(tmp_path):
    graph_path = tmp_path / "graph.json"
    code, _, err = run("workload", "gen", "--kind", "cholesky", "--blocks", "4", "-o", str(graph_path))
    assert code == 0, err
    doc = run_json("workload", "profile", "--graph", str(graph_path))
    assert doc["result"]["peak_width"] == 6


def test_workload_trace_simulate_roundtrip(tmp_path):
    trace_path = tmp_path / "trace.json"
    code, _, err = run(
        "workload", "trace", "--arrivals", "poisson", "--count", "20", "--rate", "2",
        "--duration", "0.3", "--seed", "3", "-o", str(trace_path),
    )
    assert code == 0, err
    doc = run_json("simulate", "--trace", str(trace_path), "--keep-alive", "1", "--t-env", "1")
    assert doc["result"]["cold_starts"] >= 1
    assert doc["manifest"]["parameters"]["keep_alive"] == 1.0
    assert doc["manifest"]["catalog_sha256"]


def test_place_compares_planners(tmp_path):
    graph_path = tmp_path / "graph.json"
    run("workload", "gen", "--kind", "shuffle", "--mappers", "2", "--reducers", "2",
        "--bytes", "1MB", "-o", str(graph_path))
    doc = run_json("place", "--graph", str(graph_path), "--instances", "2", "--slots", "2")
    comparison = doc["result"]["comparison"]
    assert comparison["greedy"]["cross_instance_bytes"] == comparison["exhaustive_optimum"]["cross_instance_bytes"]
    # 2x2 shuffle, every task on its own instance: all 4 transfers remote
    assert comparison["singleton_baseline"]["remote_message_count"] == 4
    assert comparison["singleton_baseline"]["cross_instance_bytes"] == 4 * 10**6


def test_repro_passes():
    doc = run_json("repro")
    assert doc["result"]["failed"] == 0
    assert doc["result"]["passed"] >= 20
    assert doc["result"]["external"] == 5
    external = [c for c in doc["result"]["checks"] if c["status"] == "external"]
    assert all(c["actual"] == "not checked" for c in external)


# --- formats, manifests, exit codes ---------------------------------------------


def test_json_reports_validate_and_round_trip(report_schema):
    commands = [
        ["breakeven", "--ratio", "7.5"],
        ["comm", "--pattern", "broadcast", "--n", "3", "--k", "10", "--payload", "1MB"],
        ["shuffle", "plan", "--data", "10GB", "--block", "1GB"],
        ["catalog", "cost", "--service", "block", "--iops", "1"],
    ]
    for argv in commands:
        code, out, err = run(*argv, "--format", "json")
        assert code == 0, err
        doc = json.loads(out)
        jsonschema.validate(doc, report_schema)
        again = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        assert again == out  # parse -> emit is byte-identical


def test_table_and_json_agree():
    args = ["catalog", "cost", "--service", "object", "--iops", "1", "--full-precision"]
    json_doc = run_json(*args)
    code, table, _ = run(*args, "--format", "table")
    assert code == 0
    values = table_values(table)
    json_value = float(json_doc["result"]["iops_usd_per_month"])
    assert float(values["iops_usd_per_month"]) == pytest.approx(json_value, abs=1e-6)

    args = ["comm", "--pattern", "shuffle", "--n", "3", "--k", "2", "--payload", "1MB"]
    json_doc = run_json(*args)
    _, table, _ = run(*args, "--format", "table")
    values = table_values(table)
    assert int(values["messages"]) == json_doc["result"]["messages"]
    assert int(values["bytes"]) == json_doc["result"]["bytes"]


def test_csv_format():
    code, out, _ = run("comm", "--pattern", "shuffle", "--n", "2", "--k", "2",
                       "--granularity", "function", "--format", "csv")
    assert code == 0
    rows = dict((row[0], row[1]) for row in csv.reader(io.StringIO(out)) if row)
    assert rows["messages"] == "16"


def test_validation_error_exit_code_and_prefix():
    code, out, err = run("comm", "--pattern", "shuffle", "--n", "0", "--k", "2")
    assert code == 2
    assert err.startswith("error:")
    code, _, err = run("catalog", "cost", "--service", "nonesuch", "--iops", "1")
    assert code == 2 and "nonesuch" in err


def test_bad_flags_exit_nonzero():
    with pytest.raises(SystemExit) as exc:
        cli.main(["comm", "--pattern", "gossip", "--n", "1"], out=io.StringIO(), err=io.StringIO())
    assert exc.value.code == 2


def test_env_var_catalog(tmp_path, monkeypatch):
    bad = tmp_path / "cat.json"
    bad.write_text('{"compute": [], "storage": []}')
    monkeypatch.setenv("FAASIM_CATALOG", str(bad))
    code, _, err = run("catalog", "cost", "--service", "object", "--iops", "1")
    assert code == 2  # the empty catalog has no object service
    assert "object" in err


def test_binary_units_flag():
    decimal = run_json("shuffle", "plan", "--data", "1GB", "--block", "1GB")
    binary = run_json("shuffle", "plan", "--data", "1GB", "--block", "1GB", "--binary-units")
    assert decimal["manifest"]["parameters"]["data_bytes"] == 10**9
    assert binary["manifest"]["parameters"]["data_bytes"] == 2**30


def test_manifest_fields():
    doc = run_json("workload", "trace", "--count", "3", "--seed", "9")
    manifest = doc["manifest"]
    assert manifest["subcommand"] == "workload trace"
    assert manifest["seed"] == 9
    assert manifest["version"]
    assert isinstance(doc["result"], list) and len(doc["result"]) == 3


def test_identical_runs_identical_output():
    first = run("simulate", "--trace", "/nonexistent", "--format", "json")
    second = run("simulate", "--trace", "/nonexistent", "--format", "json")
    assert first == second
    a = run_json("comm", "--pattern", "aggregation", "--n", "4", "--k", "3")
    b = run_json("comm", "--pattern", "aggregation", "--n", "4", "--k", "3")
    assert a == b
