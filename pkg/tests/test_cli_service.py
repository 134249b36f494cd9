"""CLI exit codes and output, HTTP service routes and status mapping."""

import json
import subprocess
import sys
import urllib.error
import urllib.request

import numpy as np
import pytest

from curvecraft.datasets import demo_dataset


def run_cli(*args, stdin: bytes | None = None):
    proc = subprocess.run(
        [sys.executable, "-m", "curvecraft", *args], input=stdin, capture_output=True
    )
    return proc.returncode, proc.stdout, proc.stderr


def http_get(port, path):
    try:
        with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def http_post(port, path, body, raw: bytes | None = None):
    data = raw if raw is not None else json.dumps(body).encode()
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}", data=data, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def demo_csv() -> bytes:
    data = demo_dataset()
    lines = ["x,f"] + [f"{x},{f}" for x, f in zip(data.x, data.f)]
    return ("\n".join(lines) + "\n").encode()


def demo_pairs():
    data = demo_dataset()
    return [[float(x), float(f)] for x, f in zip(data.x, data.f)]


CURVE_BODY = {
    "basis": {
        "system": {"family": "yan_cubic", "lambda": 0.5},
        "aux": {"aux": "trig", "k": 1},
        "sigma": 0.75,
    },
    "polygon": [[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 0.0]],
}


class TestCliEvalBasis:
    def test_csv_output(self):
        rc, out, _ = run_cli("eval-basis", "--system", "bernstein:3", "--sigma", "1", "--samples", "5")
        assert rc == 0
        lines = out.decode().splitlines()
        assert lines[0] == "t,T0,T1,T2,T3"
        assert len(lines) == 6
        mid = [float(v) for v in lines[3].split(",")]
        assert mid[1:] == pytest.approx([0.125, 0.375, 0.375, 0.125], abs=1e-15)

    def test_bad_shorthand_is_exit_one(self):
        rc, _, err = run_cli("eval-basis", "--system", "martian:3", "--sigma", "0.5")
        assert rc == 1
        assert b"error:" in err

    def test_sigma_out_of_range_is_exit_one(self):
        rc, _, err = run_cli("eval-basis", "--system", "bernstein:3", "--sigma", "1.5")
        assert rc == 1

    def test_missing_required_flag_is_exit_two(self):
        rc, _, _ = run_cli("eval-basis", "--system", "bernstein:3")
        assert rc == 2


class TestCliCurve:
    def test_csv_from_stdin(self):
        rc, out, _ = run_cli(
            "curve", "--problem", "-", "--samples", "3", stdin=json.dumps(CURVE_BODY).encode()
        )
        assert rc == 0
        assert out.startswith(b"t,x,y\n")

    def test_svg_output(self):
        rc, out, _ = run_cli(
            "curve", "--problem", "-", "--samples", "17", "--out", "svg",
            stdin=json.dumps(CURVE_BODY).encode(),
        )
        assert rc == 0
        assert out.startswith(b"<svg ")

    def test_sigma_sweep_blocks(self):
        rc, out, _ = run_cli(
            "curve", "--problem", "-", "--samples", "3", "--sigma-sweep", "3",
            stdin=json.dumps(CURVE_BODY).encode(),
        )
        assert rc == 0
        lines = out.decode().splitlines()
        assert lines[0] == "sigma,t,x,y"
        assert len(lines) == 1 + 3 * 3

    def test_malformed_json_is_exit_one(self):
        rc, _, err = run_cli("curve", "--problem", "-", stdin=b"{nope")
        assert rc == 1
        assert b"error:" in err

    def test_missing_file_is_exit_one(self):
        rc, _, _ = run_cli("curve", "--problem", "/nonexistent/problem.json")
        assert rc == 1


class TestCliInterp:
    def test_csv_default(self):
        rc, out, _ = run_cli(
            "interp", "--data", "-", "--mode", "c1", "--s", "0.05", "--sigma", "0.5",
            "--samples", "9", stdin=demo_csv(),
        )
        assert rc == 0
        lines = out.decode().splitlines()
        assert lines[0] == "x,y"
        assert len(lines) == 10

    def test_json_with_report(self):
        rc, out, _ = run_cli(
            "interp", "--data", "-", "--mode", "c2", "--strategy", "remark",
            "--zeta", "0.02", "--eta", "0.003", "--sigma", "0.5",
            "--samples", "9", "--out", "json", "--report", stdin=demo_csv(),
        )
        assert rc == 0
        doc = json.loads(out)
        assert doc["report"]["violations"] == []
        assert max(doc["report"]["continuity"]["order2"]) < 1e-6

    def test_infeasible_is_exit_one_with_bound_on_stderr(self):
        rc, _, err = run_cli(
            "interp", "--data", "-", "--mode", "c1", "--s", "0.5", "--sigma", "0.5", stdin=demo_csv()
        )
        assert rc == 1
        assert b"bound" in err

    def test_report_requires_json_output(self):
        rc, _, err = run_cli(
            "interp", "--data", "-", "--mode", "c1", "--s", "0.05", "--sigma", "0.5",
            "--report", stdin=demo_csv(),
        )
        assert rc == 1
        assert b"--out json" in err

    def test_unknown_mode_is_exit_two(self):
        rc, _, _ = run_cli(
            "interp", "--data", "-", "--mode", "c9", "--s", "0.05", "--sigma", "0.5", stdin=demo_csv()
        )
        assert rc == 2


class TestCliValidateAux:
    def test_report_document(self):
        rc, out, _ = run_cli("validate-aux", "--aux", "expo_rational")
        assert rc == 0
        doc = json.loads(out)
        assert doc["flags"]["increasing"] is True
        names = {c["name"]: c["passed"] for c in doc["report"]["checks"]}
        assert names["partition"] is True
        assert names["c2_endpoints"] is False

    def test_bad_aux_is_exit_one(self):
        rc, _, _ = run_cli("validate-aux", "--aux", "bernstein_tail:4")
        assert rc == 1


class TestCliFigures:
    def test_single_figure_written(self, tmp_path):
        rc, out, _ = run_cli("figures", "--which", "5", "--outdir", str(tmp_path))
        assert rc == 0
        names = sorted(p.name for p in tmp_path.glob("*.svg"))
        assert names == ["fig5_errors.svg", "fig5_interpolants.svg"]
        listed = sorted(ln.split("/")[-1] for ln in out.decode().strip().splitlines())
        assert listed == names

    def test_unknown_figure_is_exit_two(self, tmp_path):
        rc, _, _ = run_cli("figures", "--which", "9", "--outdir", str(tmp_path))
        assert rc == 2


class TestServiceCatalogs:
    def test_bases(self, service_port):
        status, body = http_get(service_port, "/api/bases")
        assert status == 200
        fams = {f["family"] for f in json.loads(body)["families"]}
        assert fams == {"bernstein", "p_bezier", "lambda_mu", "yan_cubic"}

    def test_aux(self, service_port):
        status, body = http_get(service_port, "/api/aux")
        assert status == 200
        names = {a["aux"] for a in json.loads(body)["aux"]}
        assert names == {"cubic", "quintic", "bernstein_tail", "trig", "expo_rational", "pseudo_psi"}

    def test_unknown_route(self, service_port):
        status, body = http_get(service_port, "/api/unknown")
        assert status == 404
        assert json.loads(body)["code"] == "not_found"


class TestServiceCurve:
    def test_json_response(self, service_port):
        status, body = http_post(service_port, "/api/curve", {**CURVE_BODY, "samples": 11})
        assert status == 200
        doc = json.loads(body)
        assert len(doc["t"]) == 11
        assert len(doc["curves"]) == 1
        assert doc["curves"][0]["sigma"] == 0.75
        assert np.allclose(doc["curves"][0]["points"][0], [0.0, 0.0], atol=1e-12)

    def test_sigma_sweep(self, service_port):
        status, body = http_post(
            service_port, "/api/curve", {**CURVE_BODY, "sigmas": [0.0, 0.5, 1.0], "samples": 5}
        )
        assert status == 200
        assert [c["sigma"] for c in json.loads(body)["curves"]] == [0.0, 0.5, 1.0]

    def test_csv_matches_cli_bytes(self, service_port):
        status, body = http_post(service_port, "/api/curve", {**CURVE_BODY, "format": "csv", "samples": 33})
        assert status == 200
        rc, out, _ = run_cli(
            "curve", "--problem", "-", "--samples", "33", stdin=json.dumps(CURVE_BODY).encode()
        )
        assert rc == 0
        assert body == out

    def test_schema_error_with_field(self, service_port):
        bad = json.loads(json.dumps(CURVE_BODY))
        del bad["basis"]["sigma"]
        status, body = http_post(service_port, "/api/curve", bad)
        doc = json.loads(body)
        assert status == 400
        assert doc["code"] == "schema_error"
        assert doc["field"] == "basis.sigma"

    def test_domain_error(self, service_port):
        bad = json.loads(json.dumps(CURVE_BODY))
        bad["basis"]["sigma"] = 2.0
        status, body = http_post(service_port, "/api/curve", bad)
        assert status == 400
        assert json.loads(body)["code"] == "domain_error"

    def test_malformed_body(self, service_port):
        status, body = http_post(service_port, "/api/curve", None, raw=b"{oops")
        assert status == 400
        assert json.loads(body)["code"] == "schema_error"


class TestServiceInterpolate:
    def test_json_response(self, service_port):
        body = {"dataset": demo_pairs(), "mode": "c2", "solution_strategy": "appendix_c",
                "s": 0.03, "sigma": 0.5, "samples": 21}
        status, payload = http_post(service_port, "/api/interpolate", body)
        assert status == 200
        doc = json.loads(payload)
        assert doc["bounds"]["s"] == pytest.approx(0.0673333333333, abs=1e-9)
        assert doc["report"]["violations"] == []
        assert len(doc["samples"]["x"]) == 21

    def test_csv_matches_cli_bytes(self, service_port):
        body = {"dataset": demo_pairs(), "mode": "c1", "s": 0.05, "sigma": 0.9,
                "format": "csv", "samples": 41}
        status, payload = http_post(service_port, "/api/interpolate", body)
        assert status == 200
        rc, out, _ = run_cli(
            "interp", "--data", "-", "--mode", "c1", "--s", "0.05", "--sigma", "0.9",
            "--samples", "41", stdin=demo_csv(),
        )
        assert rc == 0
        assert payload == out

    def test_infeasible_is_422_with_bound(self, service_port):
        body = {"dataset": demo_pairs(), "mode": "c1", "s": 0.5, "sigma": 0.5}
        status, payload = http_post(service_port, "/api/interpolate", body)
        doc = json.loads(payload)
        assert status == 422
        assert doc["code"] == "infeasible_parameter"
        assert doc["field"] == "s"
        assert doc["bound"] == pytest.approx(0.0845, abs=1e-12)

    def test_remark_eta_overflow_is_422(self, service_port):
        body = {"dataset": demo_pairs(), "mode": "c2", "solution_strategy": "remark",
                "zeta": 0.02, "eta": 0.05, "sigma": 0.5}
        status, payload = http_post(service_port, "/api/interpolate", body)
        assert status == 422
        assert "bound" in json.loads(payload)

    def test_error_profile_in_report(self, service_port):
        xs = np.linspace(0.0, 2.0, 21)
        ref = [[float(x), float(1.0 / (1.0 + np.exp(-x)))] for x in xs]
        body = {"dataset": demo_pairs(), "mode": "c1", "s": 0.05, "sigma": 1.0,
                "reference": ref, "samples": 11}
        status, payload = http_post(service_port, "/api/interpolate", body)
        assert status == 200
        profile = json.loads(payload)["report"]["error_profile"]
        assert 0.0 < profile["max_error"] < 0.05

    def test_bad_samples_value(self, service_port):
        body = {"dataset": demo_pairs(), "mode": "c1", "s": 0.05, "sigma": 0.5, "samples": 1}
        status, payload = http_post(service_port, "/api/interpolate", body)
        assert status == 400
        assert json.loads(payload)["field"] == "samples"
