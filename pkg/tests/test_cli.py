import io
import json

from edgedim import cli
from edgedim.graphs import parse_edge_list


def run_cli(args, capsys, monkeypatch=None, stdin=""):
    if monkeypatch is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.run(args)
    out, err = capsys.readouterr()
    return code, out, err


class TestGen:
    def test_grid_roundtrip(self, capsys):
        code, out, _ = run_cli(["gen", "grid", "--dims", "3,3"], capsys)
        assert code == 0
        g = parse_edge_list(out)
        assert g.n == 9 and g.edge_count == 12

    def test_ring(self, capsys):
        code, out, _ = run_cli(["gen", "ring", "--n", "12"], capsys)
        assert code == 0
        g = parse_edge_list(out)
        assert g.n == 12 and g.edge_count == 12

    def test_gstar_comment_carries_endpoints(self, capsys):
        code, out, _ = run_cli(["gen", "gstar", "--n", "8"], capsys)
        assert code == 0
        assert "E=25" in out and "F=0" in out
        assert parse_edge_list(out).n == 26


class TestMd:
    def test_pipe_grid_md(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "grid", "--dims", "3,3"], capsys)
        code, out, _ = run_cli(["md", "-"], capsys, monkeypatch, stdin=el)
        assert code == 0
        res = json.loads(out)
        assert res["dimension"] == 2

    def test_input_flag_with_file(self, capsys, tmp_path):
        p = tmp_path / "g.el"
        p.write_text("p 3\n0 1\n1 2\n")
        code, out, _ = run_cli(["md", "--input", str(p)], capsys)
        assert code == 0
        assert json.loads(out)["dimension"] == 1

    def test_kmax_exceeded_is_a_result(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "grid", "--dims", "3,3"], capsys)
        code, out, _ = run_cli(["md", "-", "--kmax", "1"], capsys, monkeypatch, stdin=el)
        assert code == 0
        assert json.loads(out)["exceeds_k_max"] == 1

    def test_bad_edge_list_exit_3(self, capsys, monkeypatch):
        code, _, err = run_cli(["md", "-"], capsys, monkeypatch, stdin="0 1\n")
        assert code == 3
        assert "error" in json.loads(err)

    def test_missing_file_exit_3(self, capsys):
        code, _, err = run_cli(["md", "--input", "/nonexistent.el"], capsys)
        assert code == 3
        assert "error" in json.loads(err)


class TestPerturb:
    def test_regions_ring10(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "ring", "--n", "10"], capsys)
        code, out, _ = run_cli(
            ["perturb", "--input", "-", "--edge", "0,5", "--report", "regions"],
            capsys,
            monkeypatch,
            stdin=el,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["regions"]["N"]
        total = sum(len(v) for v in rep["regions"].values())
        assert total == 10

    def test_gains_report(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "ring", "--n", "10"], capsys)
        code, out, _ = run_cli(
            ["perturb", "--input", "-", "--edge", "0,5", "--report", "gains"],
            capsys,
            monkeypatch,
            stdin=el,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["gain_ef"] == 4  # EF - 1 on the 10-ring

    def test_bounds_report_ok(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "ring", "--n", "9"], capsys)
        code, out, _ = run_cli(
            ["perturb", "--input", "-", "--edge", "0,4", "--report", "bounds"],
            capsys,
            monkeypatch,
            stdin=el,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["composition"]["holds"] and rep["decrease"]["resolves_base"]

    def test_adjacent_edge_exit_2(self, capsys, monkeypatch):
        _, el, _ = run_cli(["gen", "ring", "--n", "10"], capsys)
        code, _, err = run_cli(
            ["perturb", "--input", "-", "--edge", "0,1"], capsys, monkeypatch, stdin=el
        )
        assert code == 2
        assert "error" in json.loads(err)


class TestGrid2d:
    def test_predict_golden_line(self, capsys):
        code, out, _ = run_cli(
            ["grid2d", "predict", "--n", "15", "--m", "15", "--edge", "9,4,6,10"], capsys
        )
        assert code == 0
        assert out == '{"clause": "beta4", "matched": ["beta4"], "predicted": 4}\n'

    def test_verify_clean_exit_zero(self, capsys):
        code, out, _ = run_cli(["grid2d", "verify", "--n", "5"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["mismatches"] == [] and rep["checked"] == 260 and rep["complete"]

    def test_verify_workers_smoke(self, capsys):
        code, out, _ = run_cli(["grid2d", "verify", "--n", "4", "--workers", "2"], capsys)
        assert code == 0
        assert json.loads(out)["checked"] == 96

    def test_verify_mismatch_exit_one(self, capsys, monkeypatch):
        # force a wrong prediction to exercise the gate
        from edgedim import grid2d as g2

        real = g2.conjecture_predict

        def skewed(cfg):
            v = real(cfg)
            if cfg.e == (1, 1) and cfg.f == (3, 1):
                return g2.ConjectureVerdict(4, "beta4", ("beta4",))
            return v

        monkeypatch.setattr(g2, "conjecture_predict", skewed)
        code, out, _ = run_cli(["grid2d", "verify", "--n", "4"], capsys)
        assert code == 1
        rep = json.loads(out)
        assert len(rep["mismatches"]) == 1
        assert rep["mismatches"][0]["predicted"] == 4

    def test_regions_ascii(self, capsys):
        code, out, _ = run_cli(
            ["grid2d", "regions", "--n", "9", "--edge", "4,2,3,6", "--format", "ascii"], capsys
        )
        assert code == 0
        rows = out.strip("\n").split("\n")
        assert len(rows) == 9 and rows[1][3] == "e"

    def test_regions_json(self, capsys):
        code, out, _ = run_cli(
            ["grid2d", "regions", "--n", "9", "--edge", "4,2,3,6", "--format", "json"], capsys
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["gain_prime"] == 2

    def test_bad_edge_arity_exit_2(self, capsys):
        code, _, err = run_cli(["grid2d", "predict", "--n", "9", "--edge", "1,2,3"], capsys)
        assert code == 2
        assert "error" in json.loads(err)


class TestDist:
    def test_conjecture_report(self, capsys):
        code, out, _ = run_cli(["dist", "--n", "12", "--mode", "conjecture"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["n"] == 12 and rep["mode"] == "conjecture"
        assert sum(rep["counts"].values()) == rep["total"]

    def test_sample_needs_seed(self, capsys):
        code, _, err = run_cli(
            ["dist", "--n", "12", "--mode", "sample", "--samples", "10"], capsys
        )
        assert code == 2
        assert "error" in json.loads(err)

    def test_sample_deterministic(self, capsys):
        args = ["dist", "--n", "12", "--mode", "sample", "--samples", "50", "--seed", "5"]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1 == out2


class TestProtocol:
    def test_unknown_command_exit_2(self, capsys):
        code, _, err = run_cli(["frobnicate"], capsys)
        assert code == 2
        assert "error" in json.loads(err)

    def test_json_keys_sorted(self, capsys):
        for args in (
            ["dist", "--n", "10", "--mode", "conjecture"],
            ["grid2d", "predict", "--n", "9", "--edge", "4,2,3,6"],
        ):
            _, out, _ = run_cli(args, capsys)
            parsed = json.loads(out)
            assert out == json.dumps(parsed, sort_keys=True) + "\n"
