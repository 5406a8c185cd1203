import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hexspine.cli import RunConfig, parse_grid, parse_value, run
from hexspine.errors import BadGrid, OutOfRange


@pytest.fixture(scope="module")
def schema():
    text = resources.files("hexspine").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(schema, *argv):
    code, text = call(*argv)
    doc = json.loads(text)
    jsonschema.validate(doc, schema)
    return code, doc


def test_trig(schema):
    code, doc = call_json(schema, "trig", "--eps", "1.5707963")
    assert code == 0
    assert doc["result"]["cosh_L"] == pytest.approx(2.0, abs=1e-12)
    assert doc["result"]["cosh_H"] == pytest.approx(2.0, abs=1e-12)
    assert "cosh_L" in doc["meta"]["tolerance"]


def test_every_numeric_field_has_tolerance(schema):
    _, doc = call_json(schema, "pants", "--k", "4", "--eps", "1.0")
    for k, v in doc["result"].items():
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            assert k in doc["meta"]["tolerance"]


def test_bound_exit_codes(schema):
    code, doc = call_json(schema, "bound", "--g", "15")
    assert code == 2 and doc["error"] == "OutOfDomain"
    code, doc = call_json(schema, "bound", "--g", "1000")
    assert code == 0 and doc["result"]["ratio"] == pytest.approx(2 / 3, abs=1e-12)


def test_codim_report_cli(schema):
    code, doc = call_json(schema, "codim-report", "--preset", "gen17", "--indices", "3,4,5,6")
    # with the default absolute threshold no witness is found (exit 3)
    assert code == 3 and doc["error"] == "NoWitness"
    code, doc = call_json(
        schema, "codim-report", "--preset", "gen17", "--indices", "3,4,5,6", "--threshold", "1e-30"
    )
    assert code == 0
    r = doc["result"]
    assert {k: r[k] for k in ("genus", "curves", "filling_size", "codim_bound", "two_g_minus_1")} == {
        "genus": 17, "curves": 48, "filling_size": 32, "codim_bound": 31, "two_g_minus_1": 33,
    }


def test_preset_and_map_file(schema, tmp_path):
    out = tmp_path / "g17.json"
    code, doc = call_json(schema, "preset", "build", "gen17", "--out", str(out))
    assert code == 0 and doc["result"]["genus"] == 17
    code, doc = call_json(schema, "axioms", "check", "--map", str(out))
    assert code == 0 and doc["result"]["passed"]
    code, doc = call_json(schema, "curves", "list", "--map", str(out))
    assert doc["result"]["count"] == 48


def test_bad_map_file(schema, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"faces": [{"id": 0, "sides": []}]}')
    code, doc = call_json(schema, "axioms", "check", "--map", str(bad))
    assert code == 2 and doc["error"] == "MalformedMap"


def test_filling_cli(schema):
    code, doc = call_json(schema, "filling", "--preset", "gen17", "--indices", "3,4,5,6")
    assert doc["result"]["filling"] and doc["result"]["size"] == 32


def test_delta_csv_and_determinism():
    args = ("delta", "--preset", "gen17", "--grid", "4e-3,2e-3,pi/2-0.1", "--format", "csv")
    c1, t1 = call(*args)
    c2, t2 = call(*args)
    assert c1 == 0 and t1 == t2
    lines = t1.strip().splitlines()
    assert lines[0] == "eps,delta,max_abs_M_minus_I,min_singular_value"
    assert len(lines) == 4


def test_json_determinism():
    args = ("bracket", "--preset", "gen17", "--eps", "0.5", "--elide")
    assert call(*args)[1] == call(*args)[1]


def test_jobs_do_not_change_output():
    args = ["delta", "--preset", "gen17", "--grid", "0.3,0.6,0.9,1.2"]
    assert call(*args, "--jobs", "1")[1] == call(*args, "--jobs", "2")[1]


def test_svg(tmp_path):
    path = tmp_path / "d.svg"
    code, _ = call("delta", "--preset", "gen17", "--grid", "0.2,0.5,0.9", "--svg", str(path))
    assert code == 0
    text = path.read_text()
    assert text.startswith("<svg") and "polyline" in text
    path = tmp_path / "h.svg"
    call("trig", "--eps", "1.0", "--svg", str(path))
    assert "polyline" in path.read_text()


def test_config_validation(schema):
    code, doc = call_json(schema, "delta", "--grid", "0.5,4.0")
    assert code == 2 and doc["error"] == "BadGrid"
    code, doc = call_json(schema, "--tol", "1.0", "trig", "--eps", "1.0")
    assert code == 2
    code, doc = call_json(schema, "--radius", "3", "systoles", "--preset", "gen2")
    assert code == 2
    with pytest.raises(OutOfRange):
        RunConfig(jobs=0).validate()


def test_csv_unsupported(schema):
    code, doc = call_json(schema, "bound", "--g", "100", "--format", "csv")
    assert code == 2


def test_grid_parsing():
    assert parse_value("pi/2") == pytest.approx(math.pi / 2)
    assert parse_value("pi/2-0.1") == pytest.approx(math.pi / 2 - 0.1)
    assert parse_value("3*pi/4") == pytest.approx(3 * math.pi / 4)
    assert parse_grid("0.1:0.3:3") == pytest.approx([0.1, 0.2, 0.3])
    assert parse_grid("1e-5:1e-3:3:log") == pytest.approx([1e-3, 1e-4, 1e-5])
    with pytest.raises(BadGrid):
        parse_value("tau")


def test_usage_error_is_machine_readable():
    proc = subprocess.run([sys.executable, "-m", "hexspine", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stderr)["error"] == "UsageError"


def test_pants_asymptotics_cli(schema):
    code, doc = call_json(schema, "pants-asymptotics", "--k", "4")
    s, e = doc["result"]["slopes"], doc["result"]["expected"]
    assert s["cosh_d"] == pytest.approx(e["cosh_d"], abs=0.05)
