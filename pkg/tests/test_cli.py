import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource
from referencing.jsonschema import DRAFT202012

from commgraph.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


REGISTRY = Registry().with_resources(
    (path.name, Resource.from_contents(json.loads(path.read_text()), default_specification=DRAFT202012))
    for path in SCHEMAS.glob("*.schema.json")
)


def validate(obj, name):
    jsonschema.Draft202012Validator(schema(name), registry=REGISTRY).validate(obj)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


def test_enumerate_text(capsys, fixtures):
    code, out, _ = run(capsys, "enumerate", fixtures / "s1.pres")
    assert code == 0
    assert out.splitlines()[:2] == ["order: 5", "elements: 0 a b ab ba"]


def test_enumerate_table(capsys, fixtures):
    code, out, _ = run(capsys, "enumerate", fixtures / "s1.pres", "--table")
    assert code == 0
    rows = out.splitlines()[3:]
    assert rows[2].split() == ["a", "|", "0", "0", "ab", "0", "0"]


def test_enumerate_json(capsys, fixtures):
    code, out, _ = run(capsys, "enumerate", fixtures / "knit.pres", "--json")
    data = json.loads(out)
    validate(data, "semigroup")
    assert code == 0 and data["order"] == 11


def test_analyze_json_and_dot(capsys, fixtures, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "analyze", fixtures / "sn3.pres", "--json", "--dot", dot)
    data = json.loads(out)
    validate(data, "report")
    assert code == 0
    assert data["semigroup_order"] == 11 and data["clique_number"] == 5 and data["star_free"]
    text = dot.read_text()
    assert text.startswith("graph Gamma {") and 'label="a"' in text


def test_analyze_text(capsys, fixtures):
    code, out, _ = run(capsys, "analyze", fixtures / "s1.pres")
    assert code == 0
    assert "girth: null" in out and "order: 2" in out


def test_knit(capsys, fixtures):
    code, out, _ = run(capsys, "knit", fixtures / "knit.pres", "--json")
    data = json.loads(out)
    validate(data, "knit")
    assert code == 0 and data == {"knit_degree": 3, "witness": ["x1", "x2", "x3", "x4"]}
    code, out, _ = run(capsys, "knit", fixtures / "s1.pres")
    assert code == 0 and "none" in out


def test_realize_round_trip(capsys, fixtures, tmp_path):
    out_file = tmp_path / "c4.pres"
    code, _, _ = run(capsys, "realize", fixtures / "c4.graph", "--out", out_file)
    assert code == 0
    code, out, _ = run(capsys, "enumerate", out_file)
    assert code == 0 and out.startswith("order: 17")
    code, out, _ = run(capsys, "realize", fixtures / "c4.graph", "--variant", "monomial")
    assert code == 0 and "rel: v1 v2 = 0" in out


def test_exit_codes(capsys, fixtures, tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: a\nrel: a b = 0\n")
    code, _, err = run(capsys, "enumerate", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "enumerate", tmp_path / "missing.pres")[0] == 2
    code, _, err = run(capsys, "enumerate", fixtures / "free2.pres")
    assert code == 3 and "BudgetExceeded" in err
    assert run(capsys, "enumerate", fixtures / "sn3.pres", "--max-classes", "4")[0] == 3
    code, _, err = run(capsys, "realize", fixtures / "k13.graph")
    assert code == 4 and "NotStarFree" in err
    badg = tmp_path / "bad.graph"
    badg.write_text("vertices: a\nedge: a z\n")
    assert run(capsys, "realize", badg)[0] == 2
    assert run(capsys, "explore", "--filter", "nonsense>=1", "--budget", "1")[0] == 2


def test_verify_json(capsys):
    code, out, err = run(capsys, "verify", "knit3")
    data = json.loads(out)
    validate(data, "verify_result")
    assert code == 0 and data["ok"] and "wall_time" not in data
    assert "knit3" in err
    code, out, _ = run(capsys, "verify", "prop5", "--n-max", "3", "--timing")
    data = json.loads(out)
    validate(data, "verify_result")
    assert data["run"] == 3 and data["passed"] == 3 and "wall_time" in data


def test_explore_stream(capsys):
    code, out, _ = run(capsys, "explore", "--gens", "2", "--max-len", "3", "--budget", "20")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 21
    for line in lines[:-1]:
        validate(line, "explore_line")
    assert lines[-1]["summary"]["emitted"] == 20


def test_explore_contains_s1(capsys):
    _, out, _ = run(capsys, "explore", "--gens", "2", "--max-len", "3", "--budget", "200")
    encoded = [json.loads(x).get("presentation") for x in out.splitlines()]
    # S_1 as a monomial antichain: a^2, b^2, aba, bab
    from commgraph.constructions import make_S1

    assert make_S1().encode() in encoded


def test_explore_filter(capsys):
    _, out, _ = run(capsys, "explore", "--gens", "2", "--max-len", "4", "--budget", "60", "--sample", "--seed", "4",
                    "--filter", "girth>=4")
    lines = [json.loads(x) for x in out.splitlines()][:-1]
    assert lines
    for line in lines:
        assert not line["report"]["girth_finite"] or line["report"]["girth"] >= 4


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "commgraph.cli", *map(str, argv)], capture_output=True, check=False)


@pytest.mark.parametrize(
    "argv",
    [
        ("explore", "--gens", "2", "--max-len", "3", "--budget", "15", "--sample", "--seed", "9"),
        ("verify", "oracle", "--samples", "10", "--seed", "2"),
        ("analyze", "tests/fixtures/knit.pres", "--json"),
    ],
)
def test_byte_identical_output(argv):
    root = Path(__file__).resolve().parents[1]
    argv = [str(root / a) if a.startswith("tests/") else a for a in argv]
    a, b = _subprocess(*argv), _subprocess(*argv)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_schema_rejects_bad_report():
    with pytest.raises(jsonschema.ValidationError):
        validate({"presentation": "gens: a\n", "report": {"order": -1}}, "explore_line")
