import json

import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture

from tests.utils import book, cycle
from turanbench.cli import cli
from turanbench.constructions import build_hn
from turanbench.graph import Graph
from turanbench.graph6 import decode_graph6, encode_graph6, write_graph6
from turanbench.manifest import file_digest, manifest_path


@pytest.fixture(autouse=True)
def keep_logging(mocker: MockerFixture):
    # The CLI installs a root handler; keep pytest's log capture in place.
    mocker.patch("turanbench.cli.logging.basicConfig")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def graphs_file(tmp_path):
    def write(*graphs):
        path = tmp_path / "in.g6"
        write_graph6(path, list(graphs))
        return str(path)

    return write


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_construct_prints_graph6(runner):
    result = runner.invoke(cli, ["construct", "--family", "hn", "--n", "8"])
    assert result.exit_code == 0
    assert result.output.strip() == encode_graph6(build_hn(8))


def test_construct_json(runner):
    data = _json(
        runner.invoke(
            cli,
            ["--json", "construct", "--family", "fnk", "--n", "8", "--k", "5"],
        )
    )
    assert data["triangles"] == data["formula"] == 16
    assert data["ok"]
    assert data["b_links_match"]
    assert decode_graph6(data["graph6"]).n == 8


def test_construct_out(runner, tmp_path):
    out = tmp_path / "h8.g6"
    result = runner.invoke(
        cli,
        [
            "--json",
            "construct",
            "--family",
            "hn",
            "--n",
            "8",
            "--out",
            str(out),
        ],
    )
    data = _json(result)
    assert data["ok"]
    assert out.read_text() == encode_graph6(build_hn(8)) + "\n"
    manifest = json.loads(manifest_path(out).read_text())
    assert manifest["argv"] == [
        "--json",
        "construct",
        "--family=hn",
        "--n=8",
        f"--out={out}",
    ]
    assert manifest["inputs"] == {}


def test_construct_bad_n(runner):
    result = runner.invoke(cli, ["construct", "--family", "hn", "--n", "6"])
    assert result.exit_code == 2


def test_check(runner, graphs_file):
    path = graphs_file(Graph.complete(4), cycle(5))
    result = runner.invoke(
        cli, ["--json", "check", "--in", path, "--forbid", "k4"]
    )
    assert result.exit_code == 1
    data = json.loads(result.output)
    assert [r["free"] for r in data] == [False, True]
    assert data[0]["pattern"] == "k4"
    assert data[0]["witness"] == [0, 1, 2, 3]
    assert data[1]["witness"] is None


def test_check_table(runner, graphs_file):
    path = graphs_file(cycle(5))
    result = runner.invoke(cli, ["check", "--in", path, "--forbid", "k3,k4"])
    assert result.exit_code == 0
    assert "True" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["check", "--forbid", "nonsense"],
        ["--max-vertices", "4", "check", "--forbid", "k4"],
        ["levels", "--k", "1"],
    ],
)
def test_usage_errors(runner, graphs_file, args):
    path = graphs_file(cycle(5))
    result = runner.invoke(cli, args + ["--in", path])
    assert result.exit_code == 2


def test_empty_input(runner, tmp_path):
    path = tmp_path / "empty.g6"
    path.write_text("")
    result = runner.invoke(cli, ["count", "--in", str(path)])
    assert result.exit_code == 2
    assert "holds no graphs" in result.output


def test_count(runner, graphs_file):
    data = _json(
        runner.invoke(
            cli, ["--json", "count", "--in", graphs_file(Graph.complete(4))]
        )
    )
    assert data[0]["t"] == 4
    assert data[0]["e"] == 6
    assert data[0]["sum_link_edges"] == 12
    assert data[0]["nordhaus_stewart_holds"]


def test_blocks(runner, graphs_file):
    data = _json(
        runner.invoke(cli, ["--json", "blocks", "--in", graphs_file(book(3))])
    )
    assert data[0]["index"] == 0
    assert [b["label"] for b in data[0]["blocks"]] == ["book:3"]
    assert data[0]["blocks"][0]["triangles"] == 3
    assert data[0]["uncovered"] == []


def test_pack(runner, graphs_file):
    path = graphs_file(Graph.complete(5), book(3))
    data = _json(runner.invoke(cli, ["--json", "pack", "--in", path]))
    assert [r["size"] for r in data] == [2, 1]
    assert all(r["exact"] for r in data)


def test_levels(runner, graphs_file):
    data = _json(
        runner.invoke(
            cli,
            [
                "--json",
                "levels",
                "--in",
                graphs_file(cycle(5)),
                "--k",
                "2",
                "--root",
                "0",
            ],
        )
    )
    assert data == [
        {
            "index": 0,
            "root": 0,
            "sizes": [1, 2, 2],
            "inner_edges": [0, 0, 1],
            "cross_edges": [2, 2, 0],
            "violations": [],
        }
    ]


def test_levels_needs_cycle_free(runner, graphs_file):
    result = runner.invoke(
        cli, ["levels", "--in", graphs_file(cycle(4)), "--k", "2"]
    )
    assert result.exit_code == 1
    assert "graph contains cycle:4" in result.output


def test_clean(runner, graphs_file, tmp_path):
    path = graphs_file(Graph.complete(5))
    out = tmp_path / "clean.g6"
    data = _json(
        runner.invoke(cli, ["--json", "clean", "--in", path, "--out", str(out)])
    )
    totals = data[0]["totals"]
    assert (totals["t_before"], totals["t_after"]) == (10, 3)
    assert totals["per_pattern"] == {"k5": 1, "k5minus": 1, "k4": 1}
    cleaned = decode_graph6(out.read_text().strip())
    assert cleaned.edge_count == 7
    manifest = json.loads(manifest_path(out).read_text())
    assert manifest["inputs"] == {path: file_digest(path)}


def test_clean_precondition(runner, graphs_file):
    result = runner.invoke(
        cli, ["clean", "--in", graphs_file(Graph.complete(6))]
    )
    assert result.exit_code == 1
    assert "suspension:path:4" in result.output


def test_certify_and_replay(runner, graphs_file, tmp_path):
    path = graphs_file(book(3), cycle(5))
    out = tmp_path / "certs.json"
    data = _json(
        runner.invoke(
            cli, ["--json", "certify", "--in", path, "--out", str(out)]
        )
    )
    assert [c["holds"] for c in data] == [True, True]
    assert data[0]["kind"] == "light-pair-deletion"
    stored = json.loads(out.read_text())
    assert stored["manifest"]["inputs"] == {path: file_digest(path)}
    assert stored["certificates"] == data

    result = runner.invoke(
        cli, ["certify", "--in", path, "--replay", str(out)]
    )
    assert result.exit_code == 0, result.output


def test_replay_count_mismatch(runner, graphs_file, tmp_path):
    path = graphs_file(book(3))
    out = tmp_path / "certs.json"
    runner.invoke(cli, ["certify", "--in", path, "--out", str(out)])
    other = graphs_file(book(3), book(2))
    result = runner.invoke(
        cli, ["certify", "--in", other, "--replay", str(out)]
    )
    assert result.exit_code == 2


def test_certify_unit(runner, graphs_file):
    path = graphs_file(Graph.complete(5))
    data = _json(
        runner.invoke(cli, ["--json", "certify", "--in", path, "--law", "unit"])
    )
    assert data[0]["law"] == "unit"
    assert data[0]["conclusion"] == "t = 10 <= e = 10"


def test_certify_unexpected_deviation(runner, graphs_file, tmp_path):
    path = graphs_file(Graph.complete(5))
    out = tmp_path / "certs.json"
    runner.invoke(
        cli, ["certify", "--in", path, "--law", "unit", "--out", str(out)]
    )
    stored = json.loads(out.read_text())

    stored["certificates"][0]["deviations"] = [
        "k6-3-1 (plain): own set removes 10 triangles with 9 edges"
    ]
    out.write_text(json.dumps(stored))
    result = runner.invoke(
        cli, ["certify", "--in", path, "--replay", str(out)]
    )
    assert result.exit_code == 0, result.output

    stored["certificates"][0]["deviations"] = [
        "k5 (block): own set removes 11 triangles with 10 edges"
    ]
    out.write_text(json.dumps(stored))
    result = runner.invoke(
        cli, ["certify", "--in", path, "--replay", str(out)]
    )
    assert result.exit_code == 1
    assert "Error: certificate 0: k5 (block)" in result.output


def test_certify_precondition(runner, graphs_file):
    result = runner.invoke(
        cli, ["certify", "--in", graphs_file(Graph.complete(4))]
    )
    assert result.exit_code == 1
    assert "graph contains k4" in result.output


def test_search_and_report(runner, tmp_path):
    db = tmp_path / "db.jsonl"
    for n in (4, 5):
        data = _json(
            runner.invoke(
                cli,
                [
                    "--json",
                    "search",
                    "--n",
                    str(n),
                    "--forbid",
                    "p3hat",
                    "--db",
                    str(db),
                ],
            )
        )
        assert data["record"]["value"] == 4
        assert all(check["holds"] for check in data["bounds"])
    rows = [json.loads(line) for line in db.read_text().splitlines()]
    assert [row["record"]["n"] for row in rows] == [4, 5]
    assert rows[0]["manifest"]["argv"][:2] == ["--json", "search"]

    result = runner.invoke(cli, ["report", "--db", str(db), "--csv", "-"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("n,forbidden,method")
    assert lines[1] == "4,suspension:path:3,exhaustive,triangles,4,4,4,0"

    csv_path = tmp_path / "report.csv"
    data = _json(
        runner.invoke(
            cli, ["--json", "report", "--db", str(db), "--csv", str(csv_path)]
        )
    )
    assert len(data["rows"]) == 2
    manifest = json.loads(manifest_path(csv_path).read_text())
    assert manifest["inputs"] == {str(db): file_digest(db)}


def test_search_local(runner, graphs_file):
    path = graphs_file(build_hn(8))
    data = _json(
        runner.invoke(
            cli,
            [
                "--json",
                "search",
                "--n",
                "8",
                "--forbid",
                "k122",
                "--local",
                "--budget",
                "2",
                "--seed",
                "3",
                "--start",
                path,
            ],
        )
    )
    record = data["record"]
    assert record["method"] == "local-search"
    assert (record["seed"], record["budget"]) == (3, 2)
    assert record["value"] >= 16
    assert data["bounds"] == []


def test_search_unsupported_bounds_are_skipped(runner):
    data = _json(
        runner.invoke(cli, ["--json", "search", "--n", "5", "--forbid", "k4"])
    )
    assert data["record"]["value"] == 4
    assert data["bounds"] == []


def test_report_counterexample(runner, tmp_path):
    db = tmp_path / "db.jsonl"
    rows = [
        {"n": 4, "value": 4},
        {"n": 5, "value": 3},
    ]
    with db.open("w") as out:
        for row in rows:
            record = dict(
                row,
                forbidden=["suspension:path:3"],
                witness="C~",
                graphs_scanned=1,
                method="exhaustive",
            )
            out.write(json.dumps({"record": record}) + "\n")
    result = runner.invoke(cli, ["report", "--db", str(db)])
    assert result.exit_code == 1
    assert "Counterexample: report:monotone" in result.output


def test_patterns(runner):
    data = _json(runner.invoke(cli, ["--json", "patterns"]))
    names = [entry["name"] for entry in data["catalog"]]
    assert "k122" in names
    assert "p4hat" in names
    assert "path" in data["families"]
    result = runner.invoke(cli, ["patterns"])
    assert result.exit_code == 0
    assert "k122" in result.output
