"""Command line behavior: outputs, exit codes, JSON determinism, remote mode."""

import io
import json
import contextlib

import pytest

from skewpbw.cli import main
from skewpbw.presets import PRESET_NAMES, preset_document
from skewpbw.service import app

from support import ServiceClient


def run(argv, client=None):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv, http_client=client)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def specs(tmp_path_factory):
    root = tmp_path_factory.mktemp("specs")
    paths = {}
    for name in ("weyl", "q-weyl", "weyl-ratfunc"):
        path = root / f"{name}.spec"
        path.write_text(preset_document(name), encoding="utf-8")
        paths[name] = str(path)
    bad = root / "bad.spec"
    bad.write_text("format = 1\n[ring]\nkind = rational\n"
                   "[vars]\nnames = x1, x2\n[relations]\nx2*x1 = x1\n",
                   encoding="utf-8")
    paths["bad"] = str(bad)
    return paths


class TestEval:
    def test_q_weyl_values(self, specs):
        assert run(["eval", specs["q-weyl"], "x*y"]) == (0, "2*y*x + 1\n", "")
        assert run(["eval", specs["q-weyl"], "x^2*y"]) == (0, "4*y*x^2 + 3*x\n", "")

    def test_parse_error_exit_2(self, specs):
        code, out, err = run(["eval", specs["weyl"], "x*("])
        assert code == 2
        assert "column 4" in err

    def test_missing_file_exit_2(self):
        code, _, err = run(["eval", "/nonexistent.spec", "x"])
        assert code == 2
        assert "error" in err


class TestValidate:
    def test_ok(self, specs):
        assert run(["validate", specs["weyl"]]) == (0, "ok\n", "")

    def test_failing_report_exit_1(self, specs):
        code, out, _ = run(["validate", specs["bad"]])
        assert code == 1
        assert "pair-constant-zero" in out


class TestCommutes:
    def test_false_exit_1(self, specs):
        assert run(["commutes", specs["weyl"], "x", "y"]) == (1, "false\n", "")

    def test_true_exit_0(self, specs):
        assert run(["commutes", specs["weyl"], "x", "x^2 + 1"]) == (0, "true\n", "")


class TestCentralizer:
    def test_weyl_probe(self, specs):
        code, out, _ = run(["centralizer", specs["weyl"], "x^2",
                            "--deg", "4", "--coeff-deg", "0"])
        assert code == 0
        assert out.splitlines() == ["1", "x", "x^2", "x^3", "x^4"]


class TestAnnihilate:
    def test_golden(self, specs):
        code, out, _ = run(["annihilate", specs["weyl"], "x^2", "x^3"])
        assert (code, out) == (0, "s^3 - t^2\n")

    def test_ratfunc_golden(self, specs):
        code, out, _ = run(["annihilate", specs["weyl-ratfunc"],
                            "x^2 - 2*y^-2", "x^3 - 3*y^-2*x + 3*y^-3"])
        assert (code, out) == (0, "s^3 - t^2\n")

    def test_non_commuting_exit_1(self, specs):
        code, _, err = run(["annihilate", specs["weyl"], "x", "y"])
        assert code == 1
        assert "commute" in err

    def test_cap_exhausted_exit_3(self, specs):
        code, _, err = run(["annihilate", specs["weyl"], "x", "x^2",
                            "--max-s", "1"])
        assert code == 3
        assert "cap-exhausted" in err


class TestVerify:
    def test_zero(self, specs):
        code, out, _ = run(["verify", specs["weyl"], "x^2", "x^3", "s^3 - t^2"])
        assert (code, out) == (0, "true\n")

    def test_nonzero_exit_1(self, specs):
        code, out, _ = run(["verify", specs["weyl"], "x^2", "x^3", "s - t"])
        assert (code, out) == (1, "false\n")

    def test_bad_polynomial_exit_2(self, specs):
        code, _, err = run(["verify", specs["weyl"], "x^2", "x^3", "s + u"])
        assert code == 2


class TestJson:
    def test_envelope_shape(self, specs):
        code, out, _ = run(["annihilate", specs["weyl"], "x^2", "x^3", "--json"])
        assert code == 0
        data = json.loads(out)
        assert sorted(data) == ["bounds", "command", "inputs", "residual",
                                "result", "timing_ms"]
        assert data["command"] == "annihilate"
        assert data["inputs"]["spec"] == specs["weyl"]
        assert data["result"] == {"found": True, "polynomial": "s^3 - t^2",
                                  "verified": True}
        assert data["residual"] == "0"
        assert data["bounds"] == {"s": 3, "t": 2, "max_s": None}

    def test_determinism_modulo_timing(self, specs):
        def snap(argv):
            code, out, _ = run(argv)
            assert code == 0
            data = json.loads(out)
            data.pop("timing_ms")
            return json.dumps(data, sort_keys=True)

        argv = ["eval", specs["q-weyl"], "x^2*y", "--json"]
        assert snap(argv) == snap(argv)
        argv = ["annihilate", specs["weyl"], "x^2", "x^3", "--json"]
        assert snap(argv) == snap(argv)

    def test_json_on_failure_paths(self, specs):
        code, out, _ = run(["annihilate", specs["weyl"], "x", "y", "--json"])
        assert code == 1
        assert json.loads(out)["result"]["reason"] == "inputs do not commute"


class TestPreset:
    def test_list(self):
        code, out, _ = run(["preset", "--list"])
        assert code == 0
        assert out.split() == list(PRESET_NAMES)
        assert run(["preset"]) == (0, out, "")

    def test_document_output(self):
        code, out, _ = run(["preset", "q-weyl"])
        assert code == 0
        assert out == preset_document("q-weyl")

    def test_param(self):
        code, out, _ = run(["preset", "q-weyl", "--param", "q=3"])
        assert code == 0
        assert "sigma.x.y = 3*y" in out

    def test_unknown_exit_2(self):
        code, _, err = run(["preset", "so-not-a-preset"])
        assert code == 2
        assert "unknown preset" in err

    def test_bad_param_exit_2(self):
        assert run(["preset", "q-weyl", "--param", "q=0"])[0] == 2
        assert run(["preset", "q-weyl", "--param", "nonsense"])[0] == 2
        assert run(["preset", "weyl", "--param", "q=2"])[0] == 2


class TestUsage:
    def test_unknown_subcommand(self):
        code, _, _ = run(["frobnicate"])
        assert code == 2

    def test_no_arguments(self):
        assert run([])[0] == 2

    def test_missing_operand(self):
        assert run(["eval"])[0] == 2


class TestRemote:
    def test_same_output_as_local(self, specs):
        client = ServiceClient(app)
        local_code, local_out, _ = run(["annihilate", specs["weyl"],
                                        "x^2", "x^3", "--json"])
        remote_code, remote_out, _ = run(
            ["annihilate", specs["weyl"], "x^2", "x^3",
             "--json", "--server", "http://svc"], client=client)
        assert (local_code, remote_code) == (0, 0)
        local = json.loads(local_out)
        remote = json.loads(remote_out)
        local.pop("timing_ms")
        remote.pop("timing_ms")
        assert local == remote

    def test_remote_parse_error_exit_2(self, specs):
        client = ServiceClient(app)
        code, _, err = run(["eval", specs["weyl"], "x*(",
                            "--server", "http://svc"], client=client)
        assert code == 2
        assert "column 4" in err

    def test_remote_plain_output(self, specs):
        client = ServiceClient(app)
        code, out, _ = run(["commutes", specs["weyl"], "x", "y",
                            "--server", "http://svc"], client=client)
        assert (code, out) == (1, "false\n")
