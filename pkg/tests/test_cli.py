import numpy as np
import pytest

from tdom import CANONICAL_TEXT, emit_dataset
from tdom.cli import main

from _gen import random_dataset


@pytest.fixture()
def corpus_file(tmp_path):
    path = tmp_path / "corpus.tdom"
    path.write_text(CANONICAL_TEXT, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidateCommand:
    def test_clean_corpus_exits_zero(self, corpus_file, capsys):
        code, out, err = run(capsys, "validate", corpus_file)
        assert code == 0
        assert out == "ok: 10 task(s), 60 action(s), 0 warning(s)\n"

    def test_rule_error_exits_one(self, tmp_path, capsys):
        path = tmp_path / "bad.tdom"
        path.write_text(
            'task "Slip" id T1\n'
            'action T1-1 "slide" M: G N | G: N N | NPE: N | NPA: N N'
            " | CS: N A N | D: N | S: N | US: N\n",
            encoding="utf-8",
        )
        code, out, err = run(capsys, "validate", str(path))
        assert code == 1
        assert "ERROR R1_SlidingRequiresContact T1-1:" in out
        assert "1 error(s), 0 warning(s)" in out

    def test_warning_only_exits_zero(self, tmp_path, capsys):
        path = tmp_path / "warn.tdom"
        path.write_text(
            'task "Stretch" id T1\n'
            'action T1-1 "pull" M: G N | G: P N | NPE: N | NPA: N N'
            " | CS: N N N | D: TN | S: N | US: N\n",
            encoding="utf-8",
        )
        code, out, err = run(capsys, "validate", str(path))
        assert code == 0
        assert "WARNING R3_TensionNeedsTwoConstraints" in out

    def test_missing_file_exits_three(self, capsys, tmp_path):
        code, out, err = run(capsys, "validate", str(tmp_path / "nope.tdom"))
        assert code == 3
        assert "cannot read" in err

    def test_parse_failure_exits_three(self, tmp_path, capsys):
        path = tmp_path / "broken.tdom"
        path.write_text("task oops\n", encoding="utf-8")
        code, out, err = run(capsys, "validate", str(path))
        assert code == 3
        assert "parse failed" in err
        assert "ERROR parse/" in err


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_subcommand(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_flag(self, corpus_file, capsys):
        assert run(capsys, "validate", corpus_file, "--nope")[0] == 2

    def test_unknown_view(self, corpus_file, capsys):
        code, out, err = run(capsys, "cluster", corpus_file, "--view", "Nope")
        assert code == 2
        assert "unknown taxonomy view" in err

    def test_dot_requires_sink(self, corpus_file, capsys):
        code, out, err = run(
            capsys, "cluster", corpus_file, "--view", "tdom", "--format", "dot"
        )
        assert code == 2
        assert "needs -o <path> or --stdout" in err
        code, out, err = run(capsys, "graph", corpus_file, "--view", "tdom")
        assert code == 2

    def test_bad_direction(self, tmp_path, capsys):
        poly = tmp_path / "p.poly"
        poly.write_text("0 0 0\n1 0 0\n", encoding="utf-8")
        code, out, err = run(
            capsys, "bend", "polyline", str(poly), "--direction", "1,2"
        )
        assert code == 2
        assert "direction" in err


class TestAnalysisGate:
    def test_report_refuses_rule_errors(self, tmp_path, capsys):
        path = tmp_path / "bad.tdom"
        path.write_text(
            'task "Slip" id T1\n'
            'action T1-1 "slide" M: G N | G: N N | NPE: N | NPA: N N'
            " | CS: N A N | D: N | S: N | US: N\n",
            encoding="utf-8",
        )
        code, out, err = run(capsys, "report", str(path))
        assert code == 1
        assert "rule errors" in err


class TestSegmentCommand:
    def test_single_task(self, corpus_file, capsys):
        code, out, err = run(
            capsys,
            "segment",
            corpus_file,
            "--task",
            "T4",
            "--views",
            "tdom,bullock,paulius-segment",
        )
        assert code == 0
        assert out.startswith("task T4 'Edge tracing': 3 action(s)\n")
        assert "1 segment(s), constant" in out

    def test_all_tasks_by_default(self, corpus_file, capsys):
        code, out, err = run(capsys, "segment", corpus_file)
        assert code == 0
        assert out.count("task T") == 10

    def test_unknown_task(self, corpus_file, capsys):
        code, out, err = run(capsys, "segment", corpus_file, "--task", "T99")
        assert code == 1
        assert "no task with id" in err


class TestClusterCommand:
    def test_table(self, corpus_file, capsys):
        code, out, err = run(capsys, "cluster", corpus_file, "--view", "tdom")
        assert code == 0
        assert "tdom  56              4                      2" in out
        assert "multi-member clusters: 4" in out
        assert "T1-6 T2-2" in out

    def test_csv(self, corpus_file, capsys):
        code, out, err = run(
            capsys, "cluster", corpus_file, "--view", "bullock", "--format", "csv"
        )
        assert code == 0
        assert out == (
            "view,distinct_codes,multi-member_clusters,largest_size\n"
            "bullock,21,10,11\n"
        )

    def test_mask_deformation_equals_nodef(self, corpus_file, capsys):
        masked = run(
            capsys,
            "cluster",
            corpus_file,
            "--view",
            "tdom",
            "--mask-deformation",
            "--format",
            "csv",
        )[1]
        nodef = run(
            capsys, "cluster", corpus_file, "--view", "tdom-nodef", "--format", "csv"
        )[1]
        assert masked.split("\n")[1].split(",")[1:] == nodef.split("\n")[1].split(",")[1:]

    def test_dot_to_file(self, corpus_file, capsys, tmp_path):
        out_path = tmp_path / "g.dot"
        code, out, err = run(
            capsys,
            "cluster",
            corpus_file,
            "--view",
            "tdom",
            "--format",
            "dot",
            "-o",
            str(out_path),
        )
        assert code == 0
        assert out == ""
        text = out_path.read_text(encoding="utf-8")
        assert text.startswith('graph "tdom" {\n')
        assert text.endswith("}\n")


class TestProjectCommand:
    def test_bullock_lines(self, corpus_file, capsys):
        code, out, err = run(capsys, "project", corpus_file, "--view", "bullock")
        assert code == 0
        lines = out.rstrip("\n").split("\n")
        assert len(lines) == 60
        assert lines[0].split(None, 1) == ["T1-1", "L(NC, M NW, -) R(NC, NM, -)"]

    def test_paulius_views(self, corpus_file, capsys):
        cl = run(capsys, "project", corpus_file, "--view", "paulius-cluster")[1]
        seg = run(capsys, "project", corpus_file, "--view", "paulius-segment")[1]
        assert "MOV" in cl and "MOV" not in seg

    def test_view_required(self, corpus_file, capsys):
        assert run(capsys, "project", corpus_file)[0] == 2

    def test_tdom_not_a_projection(self, corpus_file, capsys):
        assert run(capsys, "project", corpus_file, "--view", "tdom")[0] == 2


class TestGraphCommand:
    def test_stdout(self, corpus_file, capsys):
        code, out, err = run(capsys, "graph", corpus_file, "--view", "tdom", "--stdout")
        assert code == 0
        assert out.startswith('graph "tdom" {\n')
        assert out.count('" -- "') == 4  # four multi-member pairs

    def test_palette_flag(self, corpus_file, capsys, tmp_path):
        palette = tmp_path / "pal.json"
        palette.write_text('{"N": "#010203"}', encoding="utf-8")
        out = run(
            capsys,
            "graph",
            corpus_file,
            "--view",
            "tdom",
            "--stdout",
            "--palette",
            str(palette),
        )[1]
        assert '#010203' in out

    def test_palette_env_var(self, corpus_file, capsys, tmp_path, monkeypatch):
        palette = tmp_path / "pal.json"
        palette.write_text('{"N": "#040506"}', encoding="utf-8")
        monkeypatch.setenv("TDOM_PALETTE", str(palette))
        out = run(capsys, "graph", corpus_file, "--view", "tdom", "--stdout")[1]
        assert "#040506" in out

    def test_malformed_palette_exits_three(self, corpus_file, capsys, tmp_path):
        palette = tmp_path / "pal.json"
        palette.write_text('["x"]', encoding="utf-8")
        code, out, err = run(
            capsys,
            "graph",
            corpus_file,
            "--view",
            "tdom",
            "--stdout",
            "--palette",
            str(palette),
        )
        assert code == 3
        assert "malformed palette" in err


class TestBendCommands:
    def test_polyline_loop(self, tmp_path, capsys):
        poly = tmp_path / "alpha.poly"
        poly.write_text(
            "0 0 0\n2 0 0\n2 1 0.01\n0 1 0.01\n1 -0.5 0.02\n", encoding="utf-8"
        )
        code, out, err = run(capsys, "bend", "polyline", str(poly))
        assert code == 0
        assert out == (
            "polyline: 5 vertices, open\n"
            "crossings: 1 raw, 1 removed, 0 irreducible\n"
            "structured: L1\n"
            "unstructured: N\n"
        )

    def test_polyline_custom_direction_and_buckets(self, tmp_path, capsys):
        poly = tmp_path / "straight.poly"
        poly.write_text("0 0 0\n0 1 0\n0 2 0\n", encoding="utf-8")
        buckets = tmp_path / "buckets.json"
        buckets.write_text('{"buckets": [[1, 1]]}', encoding="utf-8")
        code, out, err = run(
            capsys,
            "bend",
            "polyline",
            str(poly),
            "--direction",
            "1,0,0",
            "--buckets",
            str(buckets),
        )
        assert code == 0
        assert "structured: N" in out

    def test_degenerate_projection_exits_one(self, tmp_path, capsys):
        poly = tmp_path / "flat.poly"
        poly.write_text(
            "0 0 0\n2 0 0\n2 1 0\n0 1 0\n1 -0.5 0\n", encoding="utf-8"
        )
        code, out, err = run(capsys, "bend", "polyline", str(poly))
        assert code == 1
        assert "degenerate projection" in err

    def test_malformed_polyline_exits_three(self, tmp_path, capsys):
        poly = tmp_path / "bad.poly"
        poly.write_text("0 0\n", encoding="utf-8")
        assert run(capsys, "bend", "polyline", str(poly))[0] == 3

    def test_cloth(self, tmp_path, capsys):
        state = tmp_path / "cloth.state"
        state.write_text(
            "keypoint c1 accessible\nkeypoint c2 occluded\nwrinkled true\n",
            encoding="utf-8",
        )
        code, out, err = run(capsys, "bend", "cloth", str(state))
        assert code == 0
        assert out == (
            "cloth: 2 keypoint(s), 1 accessible, gfolds 0, wrinkled yes,"
            " transition no\n"
            "structured: N\n"
            "unstructured: L1\n"
        )


class TestDatasetExport:
    def test_stdout_is_verbatim_corpus(self, capsys):
        code, out, err = run(capsys, "dataset", "export")
        assert code == 0
        assert out == CANONICAL_TEXT

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / "out.tdom"
        code, out, err = run(capsys, "dataset", "export", "-o", str(path))
        assert code == 0
        assert path.read_text(encoding="utf-8") == CANONICAL_TEXT


class TestReportCommand:
    def test_all_views_listed(self, corpus_file, capsys):
        code, out, err = run(capsys, "report", corpus_file)
        assert code == 0
        assert "dataset: 10 task(s), 60 action(s)" in out
        for view in ("tdom", "tdom-nodef", "bullock", "paulius-segment", "paulius-cluster"):
            assert f"\n{view} " in out


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("validate",),
            ("report",),
            ("segment",),
            ("cluster", "--view", "tdom", "--format", "table"),
            ("graph", "--view", "bullock", "--stdout"),
            ("project", "--view", "paulius-cluster"),
        ],
    )
    def test_byte_identical_across_runs(self, corpus_file, capsys, argv):
        cmd = [argv[0], corpus_file, *argv[1:]]
        first = run(capsys, *cmd)
        second = run(capsys, *cmd)
        assert first == second

    def test_random_files_round_trip_through_cli(self, tmp_path, capsys):
        rng = np.random.default_rng(99)
        for i in range(10):
            ds = random_dataset(rng)
            path = tmp_path / f"r{i}.tdom"
            path.write_text(emit_dataset(ds), encoding="utf-8")
            code, out, err = run(capsys, "validate", str(path))
            assert code in (0, 1)  # random codes may break rules, never parsing
            assert "parse failed" not in err
