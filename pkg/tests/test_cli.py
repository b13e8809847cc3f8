"""End-to-end CLI checks: exit codes, payload shapes, deterministic output."""

import json

import numpy as np
import pytest

from gaussatlas.cli import main
from gaussatlas.phase_space import fock1_output_p

EB_CHANNEL = '{"X": [[0.6, 0.0], [0.0, 0.6]], "Y": [[4.0, 0.0], [0.0, 0.8]]}'
NCB_CHANNEL = '{"X": [[0.6, 0.0], [0.0, 0.6]], "Y": [[2.0, 0.0], [0.0, 3.0]]}'
CP_ONLY_CHANNEL = '{"X": [[1.0, 0.0], [0.0, 1.0]], "Y": [[1.0, 0.0], [0.0, 1.0]]}'
NON_CP_CHANNEL = '{"X": [[1.0, 0.0], [0.0, -1.0]], "Y": [[0.0, 0.0], [0.0, 0.0]]}'
UNIT_GAIN_CHANNEL = '{"X": [[1.0, 0.0], [0.0, 1.0]], "Y": [[3.0, 0.0], [0.0, 3.0]]}'


def _write(tmp_path, text, name="channel.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestClassify:
    def test_ncb_channel_payload(self, tmp_path, capsys):
        code = main(["classify", _write(tmp_path, NCB_CHANNEL)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["form"]["kind"] == "I"
        assert payload["form"]["kappa"] == 0.6
        assert payload["form"]["a"] == 3.0 and payload["form"]["b"] == 2.0
        assert payload["cp"] and payload["eb"] and payload["ncb"]
        assert payload["class"] == "ncb"
        assert payload["shifted_noise"] == [2.36, 1.36]
        assert np.array(payload["form"]["S"]).shape == (2, 2)

    def test_non_cp_pair_classifies_as_unphysical(self, tmp_path, capsys):
        code = main(["classify", _write(tmp_path, NON_CP_CHANNEL)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["form"]["kind"] == "II"
        assert not payload["cp"]
        assert payload["class"] == "unphysical"

    def test_missing_file_is_usage_error(self, tmp_path, capsys):
        assert main(["classify", str(tmp_path / "nope.json")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_descriptor_is_usage_error(self, tmp_path, capsys):
        path = _write(tmp_path, '{"X": [[1, 0], [0, 1]]}')
        assert main(["classify", path]) == 2
        assert "invalid channel descriptor" in capsys.readouterr().err


class TestCheck:
    def test_oracles_agree_on_eb_channel(self, tmp_path, capsys):
        code = main(["check", _write(tmp_path, EB_CHANNEL)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["closed_form"] == {
            "cp": True, "eb": True, "ncb": False,
            "margins": payload["closed_form"]["margins"]}
        assert payload["oracles"]["ncb_gaussian"] is False
        assert payload["oracles"]["eb_tmsv"] is True
        assert payload["agree"] is True

    def test_unit_gain_adds_single_photon_oracle(self, tmp_path, capsys):
        code = main(["check", _write(tmp_path, UNIT_GAIN_CHANNEL)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["oracles"]["ncb_fock1"] is True
        assert payload["agree"] is True

    def test_non_cp_skips_oracles(self, tmp_path, capsys):
        code = main(["check", _write(tmp_path, NON_CP_CHANNEL)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert "note" in payload["oracles"]
        assert payload["agree"] is True  # verdict correctly flags non-CP


class TestSweep:
    ARGS = ["sweep", "--form", "I", "--kappa", "0.6", "--amin", "0.1",
            "--amax", "4", "--bmin", "0.1", "--bmax", "4", "--grid", "6"]

    def test_stdout_layout(self, capsys):
        assert main(self.ARGS) == 0
        out = capsys.readouterr().out
        blocks = out.split("\n\n")
        assert len(blocks) == 2
        records = blocks[0].splitlines()
        assert records[0] == "kind,kappa,a,b,class,cp_margin,eb_margin,ncb_margin"
        assert len(records) == 1 + 36
        curves = blocks[1].splitlines()
        assert curves[0] == "curve,a,b"
        assert len(curves) == 1 + 3 * 512
        assert {line.split(",")[0] for line in curves[1:]} == {"cp", "eb", "ncb"}

    def test_all_four_classes_present_for_attenuator(self, capsys):
        assert main(self.ARGS) == 0
        records = capsys.readouterr().out.split("\n\n")[0].splitlines()[1:]
        classes = {line.split(",")[4] for line in records}
        assert classes == {"unphysical", "cp_only", "eb_not_ncb", "ncb"}

    def test_unit_gain_has_no_unphysical_region(self, capsys):
        args = list(self.ARGS)
        args[args.index("0.6")] = "1.0"
        assert main(args) == 0
        records = capsys.readouterr().out.split("\n\n")[0].splitlines()[1:]
        assert all(line.split(",")[4] != "unphysical" for line in records)

    def test_reflection_has_no_cp_only_region(self, capsys):
        args = list(self.ARGS)
        args[args.index("I")] = "II"
        assert main(args) == 0
        records = capsys.readouterr().out.split("\n\n")[0].splitlines()[1:]
        assert all(line.split(",")[4] != "cp_only" for line in records)

    def test_output_files_and_summary(self, tmp_path, capsys):
        out = tmp_path / "regions.csv"
        assert main(self.ARGS + ["--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "wrote 36 records" in text
        assert "ncb:" in text and "unphysical:" in text
        curves = tmp_path / "regions_curves.csv"
        assert out.exists() and curves.exists()
        assert out.read_text().splitlines()[0].startswith("kind,")
        assert curves.read_text().splitlines()[0] == "curve,a,b"

    def test_deterministic_bytes(self, capsys):
        assert main(self.ARGS) == 0
        first = capsys.readouterr().out
        assert main(self.ARGS) == 0
        assert capsys.readouterr().out == first

    def test_json_format(self, capsys):
        assert main(self.ARGS + ["--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["records"]) == 36
        assert set(payload["curves"]) == {"cp", "eb", "ncb"}
        assert len(payload["curves"]["eb"]["a"]) == 512
        # curve points above a = 1 are finite; the JSON carries null for inf
        assert payload["records"][0]["class"] == "unphysical"

    def test_bad_ranges_and_grid(self, capsys):
        assert main(["sweep", "--amin", "2.0", "--amax", "1.0"]) == 2
        assert main(["sweep", "--amin", "-1.0"]) == 2
        assert main(["sweep", "--grid", "1"]) == 2
        assert "error:" in capsys.readouterr().err


class TestOrbit:
    def test_trace_with_r0_header(self, tmp_path, capsys):
        code = main(["orbit", _write(tmp_path, EB_CHANNEL), "--grid", "11"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("# r0 = 0.4023594")
        assert abs(float(lines[0].split("=")[1]) - 0.25 * np.log(5.0)) < 1e-6
        assert lines[1] == "r,a_r,b_r,ncb"
        assert len(lines) == 2 + 11
        assert lines[2].split(",")[3] in ("true", "false")

    def test_trace_written_to_file(self, tmp_path, capsys):
        out = tmp_path / "orbit.csv"
        code = main(["orbit", _write(tmp_path, EB_CHANNEL), "--grid", "11",
                     "--out", str(out)])
        assert code == 0
        assert "r0 = " in capsys.readouterr().out
        assert out.read_text().splitlines()[0] == "r,a_r,b_r,ncb"

    def test_json_trace(self, tmp_path, capsys):
        code = main(["orbit", _write(tmp_path, EB_CHANNEL), "--grid", "7",
                     "--format", "json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["r0"] - 0.25 * np.log(5.0)) < 1e-6
        assert len(payload["trace"]) == 7
        assert {"r", "a_r", "b_r", "ncb"} <= set(payload["trace"][0])

    def test_non_eb_channel_fails(self, tmp_path, capsys):
        code = main(["orbit", _write(tmp_path, CP_ONLY_CHANNEL)])
        assert code == 1
        assert "not entanglement-breaking" in capsys.readouterr().err


class TestPfunc:
    def test_closed_form_samples(self, capsys):
        code = main(["pfunc", "--a", "3", "--b", "1.5", "--grid", "21"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "alpha1,alpha2,value"
        assert len(lines) == 1 + 21 * 21
        mid = 1 + 10 * 21 + 10  # origin row
        a1, a2, v = (float(x) for x in lines[mid].split(","))
        assert a1 == 0.0 and a2 == 0.0
        assert abs(v - fock1_output_p(3.0, 1.5, 0.0, 0.0)) < 1e-10

    def test_printed_variant_differs(self, capsys):
        base = ["--a", "3", "--b", "1.5", "--grid", "9", "--extent", "2"]
        assert main(["pfunc"] + base) == 0
        first = capsys.readouterr().out
        assert main(["pfunc"] + base + ["--variant", "printed"]) == 0
        assert capsys.readouterr().out != first

    def test_fft_variant_matches_closed_form(self, tmp_path):
        out = tmp_path / "p.json"
        code = main(["pfunc", "--a", "2", "--b", "2", "--variant", "fft",
                     "--format", "json", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        axis = np.array(payload["alpha_axis"], dtype=float)
        values = np.array(payload["values"], dtype=float)
        a1, a2 = np.meshgrid(axis, axis, indexing="ij")
        ref = fock1_output_p(2.0, 2.0, a1, a2)
        assert np.abs(values - ref).max() < 1e-6

    def test_fft_refuses_cramped_grid(self, capsys):
        with pytest.warns(RuntimeWarning):
            code = main(["pfunc", "--a", "2", "--b", "2", "--variant", "fft",
                         "--grid", "65", "--extent", "3"])
        assert code == 1
        assert "transform refused" in capsys.readouterr().err

    def test_usage_errors(self, capsys):
        assert main(["pfunc", "--a", "0", "--b", "2"]) == 2
        assert main(["pfunc", "--a", "2", "--b", "2", "--grid", "1"]) == 2
        # fft needs an odd grid side
        assert main(["pfunc", "--a", "2", "--b", "2", "--variant", "fft",
                     "--grid", "64"]) == 2
        assert "error:" in capsys.readouterr().err


class TestVerify:
    def test_named_suite_passes(self, capsys):
        code = main(["verify", "fock"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("PASS ")
        assert "1/1 checks passed" in out

    def test_unknown_suite_rejected(self):
        with pytest.raises(SystemExit):
            main(["verify", "everything"])


def test_no_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
