"""End-to-end CLI behavior: schemas, exit codes, determinism, batch mode."""

import io
import json
import sys

from phinmod import cli
from phinmod.errors import UnsupportedCaseError


def run_cli(argv, payload=None, capsys=None, monkeypatch=None):
    """Invoke main() in-process; returns (exit_code, parsed_stdout)."""
    if payload is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(payload)))
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_validate_ok(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 2]]], "nil": [[[0, 1], [0, 0]]]}
    code, out, _ = run_cli(["--cmd", "validate"], payload, capsys, monkeypatch)
    assert code == 0
    assert out == {"valid": True, "n": 2, "f": 1, "p": 2}


def test_validate_reports_failing_index(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 1]]], "nil": [[[0, 1], [0, 0]]]}
    code, out, _ = run_cli(["--cmd", "validate", "--n", "2"],
                           payload, capsys, monkeypatch)
    assert code == 1
    assert out["error"]["code"] == "INVALID_INPUT"
    assert out["error"]["details"]["index"] == 0


def test_gl3_certificate_output(capsys, monkeypatch):
    payload = {"phi": [[1, 0, 0], [0, 2, 0], [0, 0, 2]]}
    code, out, _ = run_cli(["--cmd", "gl3-certificate", "--p", "2"],
                           payload, capsys, monkeypatch)
    assert code == 0
    assert out["verdict"] == "SINGULAR"
    assert out["preimages"] == "P1"
    assert out["in_x_reg"] is False
    assert out["tangent_span_dim"] >= 10


def test_gl2_report_output(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 2]]]}
    code, out, _ = run_cli(["--cmd", "gl2-report", "--p", "2", "--f", "1"],
                           payload, capsys, monkeypatch)
    assert code == 0
    assert out["on_divisor"] is True
    assert out["kernel_dim"] == 1
    assert out["divisor_value"] == ["0/1", "0/1"]


def test_canonical_point_then_complex_dims(capsys, monkeypatch):
    payload = {"mat": [[0, 1, 0], [0, 0, 1], [0, 0, 0]]}
    code, pt, _ = run_cli(["--cmd", "canonical-point"], payload, capsys, monkeypatch)
    assert code == 0
    code, rep, _ = run_cli(["--cmd", "complex-dims"], pt, capsys, monkeypatch)
    assert code == 0
    assert rep["h2"] == 0 and rep["tangent_dim"] == 9


def test_complex_dims_filtered(capsys, monkeypatch):
    payload = {"mat": [[0, 1], [0, 0]]}
    code, pt, _ = run_cli(["--cmd", "canonical-point"], payload, capsys, monkeypatch)
    pt["hodge_weights"] = [1, 0]
    code, rep, _ = run_cli(["--cmd", "complex-dims-filtered"], pt, capsys, monkeypatch)
    assert code == 0
    assert rep["filtered"] is True
    assert (rep["h0"], rep["h1"], rep["h2"]) == (1, 2, 0)


def test_kernel_command(capsys, monkeypatch):
    payload = {"phi": [[[1, 0, 0], [0, 2, 0], [0, 0, 2]]]}
    code, out, _ = run_cli(["--cmd", "kernel"], payload, capsys, monkeypatch)
    assert code == 0
    assert out["dim"] == 2
    assert len(out["basis"]) == 2
    assert out["basis"][0][0][0][1] == ["1/1", "0/1"]  # e12 leading entry


def test_jordan_type_command_and_error(capsys, monkeypatch):
    code, out, _ = run_cli(["--cmd", "jordan-type"],
                           {"mat": [[0, 1], [0, 0]]}, capsys, monkeypatch)
    assert code == 0 and out == {"partition": [2]}
    code, out, _ = run_cli(["--cmd", "jordan-type"],
                           {"mat": [[1, 0], [0, 1]]}, capsys, monkeypatch)
    assert code == 1 and out["error"]["code"] == "INVALID_INPUT"


def test_tangent_dim_command(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 2]]], "nil": [[[0, 1], [0, 0]]]}
    code, out, _ = run_cli(["--cmd", "tangent-dim"], payload, capsys, monkeypatch)
    assert code == 0 and out == {"tangent_dim": 4}


def test_gl2_x0_tangent_command(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 2]]]}
    code, out, _ = run_cli(["--cmd", "gl2-x0-tangent"], payload, capsys, monkeypatch)
    assert code == 0 and out == {"dim": 4}


def test_reg_reconstruct_command(capsys, monkeypatch):
    code, pt, _ = run_cli(["--cmd", "canonical-point"],
                          {"mat": [[0, 1], [0, 0]]}, capsys, monkeypatch)
    code, out, _ = run_cli(["--cmd", "reg-reconstruct"], pt, capsys, monkeypatch)
    assert code == 0
    assert out["p_lie"]["pattern"] == [[1, 1], [1, 2], [2, 2]]
    assert out["weights"] == [1, -1]


def test_sub_fiber_command(capsys, monkeypatch):
    payload = {"phi": [[1, 0, 0], [0, 2, 0], [0, 0, 4]]}
    code, out, _ = run_cli(["--cmd", "gl3-sub-fiber"], payload, capsys, monkeypatch)
    assert code == 0
    assert out["cardinality"] == 2
    assert all(r["phi_in_parabolic"] for r in out["rays"])


def test_determinism_byte_identical(capsys, monkeypatch):
    payload = {"phi": [[1, 0, 0], [0, 2, 0], [0, 0, 4]]}
    _, _, raw1 = run_cli(["--cmd", "gl3-sub-fiber"], payload, capsys, monkeypatch)
    _, _, raw2 = run_cli(["--cmd", "gl3-sub-fiber"], payload, capsys, monkeypatch)
    assert raw1 == raw2
    assert raw1.endswith("\n")


def test_batch_isolation(capsys, monkeypatch):
    items = [
        {"mat": [[0, 1], [0, 0]]},
        {"mat": [[1, 0], [0, 1]]},   # not nilpotent: fails alone
        {"mat": [[0, 0], [0, 0]]},
    ]
    code, out, _ = run_cli(["--cmd", "jordan-type", "--batch"],
                           items, capsys, monkeypatch)
    assert code == 1
    assert [item["ok"] for item in out] == [True, False, True]
    assert out[0]["result"] == {"partition": [2]}
    assert out[2]["result"] == {"partition": [1, 1]}


def test_batch_requires_array(capsys, monkeypatch):
    code, out, _ = run_cli(["--cmd", "jordan-type", "--batch"],
                           {"mat": [[0]]}, capsys, monkeypatch)
    assert code == 1 and out["error"]["code"] == "INVALID_INPUT"


def test_bad_prime_and_bounds(capsys, monkeypatch):
    code, out, _ = run_cli(["--cmd", "jordan-type", "--p", "4"],
                           {"mat": [[0]]}, capsys, monkeypatch)
    assert code == 1 and "prime" in out["error"]["message"]
    code, out, _ = run_cli(["--cmd", "jordan-type", "--n", "7"],
                           {"mat": [[0]]}, capsys, monkeypatch)
    assert code == 1
    code, out, _ = run_cli(["--cmd", "jordan-type", "--f", "9"],
                           {"mat": [[0]]}, capsys, monkeypatch)
    assert code == 1


def test_unsupported_maps_to_exit_two(capsys, monkeypatch):
    def boom(payload, opts):
        raise UnsupportedCaseError("out of exact range")
    monkeypatch.setitem(cli.HANDLERS, "jordan-type", boom)
    code, out, _ = run_cli(["--cmd", "jordan-type"], {"mat": [[0]]},
                           capsys, monkeypatch)
    assert code == 2
    assert out["error"]["code"] == "UNSUPPORTED"


def test_selftest_command(capsys, monkeypatch):
    code = cli.main(["--cmd", "selftest"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["ok"] is True and out["failed"] == 0


def test_file_io(tmp_path, capsys):
    inpath = tmp_path / "in.json"
    outpath = tmp_path / "out.json"
    inpath.write_text(json.dumps({"mat": [[0, 1], [0, 0]]}))
    code = cli.main(["--cmd", "assoc-cochar", "--in", str(inpath),
                     "--out", str(outpath)])
    assert code == 0
    data = json.loads(outpath.read_text())
    assert data["weights"] == [1, -1]
    assert capsys.readouterr().out == ""


def test_missing_payload_file(capsys):
    code = cli.main(["--cmd", "jordan-type", "--in", "/nonexistent/x.json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and out["error"]["code"] == "INVALID_INPUT"


def test_malformed_json(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("{not json"))
    code = cli.main(["--cmd", "jordan-type"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and out["error"]["code"] == "INVALID_INPUT"


def test_charpoly_ad_command(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 1]]]}
    code, out, _ = run_cli(["--cmd", "charpoly-ad"], payload, capsys, monkeypatch)
    assert code == 0
    # Ad(I) on gl_2 is the identity: (t - 1)^4
    assert out["charpoly"] == [["1/1", "0/1"], ["-4/1", "0/1"], ["6/1", "0/1"],
                               ["-4/1", "0/1"], ["1/1", "0/1"]]


def test_shape_flag_mismatch(capsys, monkeypatch):
    payload = {"phi": [[[1, 0], [0, 2]]], "nil": [[[0, 1], [0, 0]]]}
    code, out, _ = run_cli(["--cmd", "validate", "--n", "3"],
                           payload, capsys, monkeypatch)
    assert code == 1 and out["error"]["code"] == "INVALID_INPUT"
