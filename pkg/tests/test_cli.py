import json

import pytest

from modclass.catalog import affine_example, q_example
from modclass.cli import main
from modclass.structfile import from_catalog_entry, parse, serialize

JACOBI_VIOLATOR = (
    "[algebra]\nlabels = x y z\n"
    "bracket x y = y\nbracket x z = z\nbracket y z = x\n"
)


@pytest.fixture()
def affine_file(tmp_path):
    path = tmp_path / "affine.lie"
    path.write_text(serialize(from_catalog_entry(affine_example())), encoding="utf-8")
    return path


@pytest.fixture()
def affine_no_twist_file(tmp_path, affine_file):
    data = parse(affine_file.read_text(encoding="utf-8"))
    stripped = type(data)(
        algebra=data.algebra,
        name=data.name,
        r=data.r,
        psi=None,
        subalgebra_vectors=data.subalgebra_vectors,
        mu=data.mu,
        xi=data.xi,
    )
    path = tmp_path / "affine_nopsi.lie"
    path.write_text(serialize(stripped), encoding="utf-8")
    return path


class TestVerify:
    def test_affine_verifies(self, affine_file, capsys):
        assert main(["verify", str(affine_file)]) == 0
        out = capsys.readouterr().out
        assert "status: VERIFIED" in out

    def test_zeroed_twist_fails_with_residual(self, affine_no_twist_file, capsys):
        assert main(["verify", str(affine_no_twist_file)]) == 1
        out = capsys.readouterr().out
        assert "yang-baxter: FAIL" in out
        assert "residual" in out and "e11^e13^e23" in out

    def test_jacobi_violator_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.lie"
        path.write_text(JACOBI_VIOLATOR, encoding="utf-8")
        assert main(["verify", str(path)]) == 2
        out = capsys.readouterr().out
        assert "Jacobi" in out and "('x', 'y', 'z')" in out

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["verify", str(tmp_path / "absent.lie")]) == 2

    def test_all_flag_over_directory(self, tmp_path, affine_file, capsys):
        assert main(["verify", "--all", str(tmp_path)]) == 0
        assert "VERIFIED" in capsys.readouterr().out

    def test_all_flag_worst_exit_code(self, affine_file, affine_no_twist_file, capsys):
        code = main(["verify", "--all", str(affine_file), str(affine_no_twist_file)])
        assert code == 1
        out = capsys.readouterr().out
        assert "VERIFIED" in out and "FAILED" in out

    def test_multiple_inputs_need_all(self, affine_file):
        assert main(["verify", str(affine_file), str(affine_file)]) == 2

    def test_json_format(self, affine_file, capsys):
        assert main(["verify", str(affine_file), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "verified"
        assert payload["yang_baxter"] is True


class TestModular:
    def test_affine_report(self, affine_file, capsys):
        assert main(["modular", str(affine_file)]) == 0
        out = capsys.readouterr().out
        assert "representative: 0" in out
        assert "carrier dim: 4" in out

    def test_q3_report_values(self, tmp_path, capsys):
        path = tmp_path / "q3.lie"
        path.write_text(serialize(from_catalog_entry(q_example(3))), encoding="utf-8")
        assert main(["modular", str(path), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["representative"] == {"e13": "-1", "e23": "-1"}
        assert all(isinstance(v, str) for v in payload["representative"].values())

    def test_rejects_invalid_structure(self, affine_no_twist_file):
        assert main(["modular", str(affine_no_twist_file)]) == 1


class TestRelations:
    def test_affine(self, affine_file, capsys):
        assert main(["relations", str(affine_file)]) == 0
        out = capsys.readouterr().out
        assert out.count(": 0") >= 3


class TestFrobenius:
    def test_gg3(self, tmp_path, capsys):
        from modclass.catalog import gg_example

        path = tmp_path / "gg3.lie"
        path.write_text(serialize(from_catalog_entry(gg_example(3))), encoding="utf-8")
        assert main(["frobenius", str(path)]) == 0
        out = capsys.readouterr().out
        assert "frobenius: yes" in out
        assert "- 2 e12 - e23" in out

    def test_missing_xi_is_bad_input(self, tmp_path):
        path = tmp_path / "q3.lie"
        path.write_text(serialize(from_catalog_entry(q_example(3))), encoding="utf-8")
        assert main(["frobenius", str(path)]) == 2

    def test_degenerate_pair_fails(self, tmp_path, capsys):
        text = (
            "[algebra]\nlabels = a b\n"  # abelian
            "[subalgebra]\nvector = a\nvector = b\n"
            "[xi]\nterm a = 1\n"
        )
        path = tmp_path / "abelian.lie"
        path.write_text(text, encoding="utf-8")
        assert main(["frobenius", str(path)]) == 1
        assert "degenerate" in capsys.readouterr().out

    def test_unclosed_span_names_the_witness(self, tmp_path, capsys):
        text = (
            "[algebra]\nlabels = e11 e12 e21 e22\n"
            "bracket e11 e12 = e12\nbracket e11 e21 = - e21\n"
            "bracket e12 e21 = e11 - e22\nbracket e12 e22 = e12\n"
            "bracket e21 e22 = - e21\n"
            "[subalgebra]\nvector = e12\nvector = e21\n"
            "[xi]\nterm e12 = 1\n"
        )
        path = tmp_path / "unclosed.lie"
        path.write_text(text, encoding="utf-8")
        assert main(["frobenius", str(path)]) == 1
        out = capsys.readouterr().out
        assert "bracket of (e12) and (e21) is e11 - e22" in out


class TestLinearize:
    def test_pipeline_output_verifies(self, tmp_path, affine_file, capsys):
        out_path = tmp_path / "derived.lie"
        assert main(["linearize", str(affine_file), "-o", str(out_path)]) == 0
        capsys.readouterr()
        assert main(["verify", str(out_path)]) == 0
        assert "VERIFIED" in capsys.readouterr().out

    def test_stdout_mode_round_trips(self, affine_file, capsys):
        assert main(["linearize", str(affine_file)]) == 0
        text = capsys.readouterr().out
        data = parse(text)
        entry = affine_example()
        assert data.r == entry.printed_r
        assert data.psi == entry.printed_psi1

    def test_degenerate_restriction_fails(self, tmp_path, capsys):
        text = (
            "[algebra]\nlabels = x y\nbracket x y = y\n"
            "[subalgebra]\nvector = x\n"
            "[mu]\nterm x y = 1\n"
        )
        path = tmp_path / "degen.lie"
        path.write_text(text, encoding="utf-8")
        assert main(["linearize", str(path)]) == 1

    def test_missing_mu_is_bad_input(self, affine_file, tmp_path):
        data = parse(affine_file.read_text(encoding="utf-8"))
        stripped = type(data)(
            algebra=data.algebra,
            name=data.name,
            r=data.r,
            psi=data.psi,
            subalgebra_vectors=data.subalgebra_vectors,
        )
        path = tmp_path / "nomu.lie"
        path.write_text(serialize(stripped), encoding="utf-8")
        assert main(["linearize", str(path)]) == 2


class TestCatalog:
    def test_emit_and_verify(self, tmp_path, capsys):
        out = tmp_path / "q2.lie"
        assert main(["catalog", "q", "--n", "2", "-o", str(out)]) == 0
        capsys.readouterr()
        assert main(["verify", str(out)]) == 0

    def test_check_gg3(self, capsys):
        assert main(["catalog", "gg", "--n", "3", "--check"]) == 0
        out = capsys.readouterr().out
        assert "- 2 e12 - e23" in out
        assert "expected values: match" in out

    def test_check_gg3_json_coordinates(self, capsys):
        assert main(["catalog", "gg", "--n", "3", "--check", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["representative"] == {"e12": "-2", "e23": "-1"}
        assert payload["mismatches"] == []

    def test_affine_rejects_n(self):
        assert main(["catalog", "affine", "--n", "3"]) == 2

    def test_q_requires_n(self):
        assert main(["catalog", "q"]) == 2


class TestReportHygiene:
    def test_no_floating_point_in_reports(self, tmp_path, capsys):
        path = tmp_path / "q3.lie"
        path.write_text(serialize(from_catalog_entry(q_example(3))), encoding="utf-8")
        main(["modular", str(path)])
        main(["modular", str(path), "--format", "json"])
        out = capsys.readouterr().out
        assert "float" not in out
        payload_part = out[out.index("{") :]
        payload = json.loads(payload_part)

        def walk(x):
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)
            else:
                assert not isinstance(x, float), x

        walk(payload)
