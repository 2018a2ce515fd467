import os

import pytest

from conftest import fixture_path
from qsmooth.cli import config_from_args, main, run


def run_cli(argv, env_threads=None):
    if env_threads is not None:
        os.environ["QSM_THREADS"] = str(env_threads)
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    finally:
        os.environ.pop("QSM_THREADS", None)


def check_args(ambient, monomials, *extra):
    return [
        "check",
        "--ambient",
        fixture_path(ambient),
        "--monomials",
        fixture_path(monomials),
        *extra,
    ]


class TestCheckCommand:
    def test_quasismooth_fixture_exits_zero(self):
        code, report = run_cli(
            check_args(
                "ambient_p2xp1.txt",
                "monomials_p2xp1_deg32.txt",
                "--output",
                "machine",
                "--witness",
            )
        )
        assert code == 0
        assert "status = quasismooth" in report
        lines = report.splitlines()
        first = lines.index("[stratum 1]")
        block = lines[first : first + 6]
        assert "vars = x2 x3" in block
        assert "gamma = x2 x3" in block
        assert "rank_small = 2" in block
        assert "rank_big = 3" in block

    def test_not_quasismooth_fixture_exits_one(self):
        code, report = run_cli(
            check_args(
                "ambient_p1p1p1.txt",
                "monomials_p1p1p1_deg222.txt",
                "--output",
                "machine",
            )
        )
        assert code == 1
        assert "status = not_quasismooth" in report
        assert "vars = x2 x4" in report
        assert "reason = no_degenerate_subcollection" in report

    def test_triple_point_failure_reported(self):
        code, report = run_cli(
            check_args("ambient_p4.txt", "monomials_p4_triple_point.txt")
        )
        assert code == 1
        assert "x1 x2 x3" in report
        assert "all_faces_empty" in report

    def test_method_flag(self):
        for method in ("rank", "polytope", "both"):
            code, report = run_cli(
                check_args(
                    "ambient_p2xp1.txt",
                    "monomials_p2xp1_deg32.txt",
                    "--method",
                    method,
                )
            )
            assert code == 0

    def test_machine_output_is_byte_stable(self):
        args = check_args(
            "ambient_blowup_p3_quotient.txt",
            "monomials_blowup_p3.txt",
            "--output",
            "machine",
            "--witness",
        )
        first = run_cli(args)
        second = run_cli(args)
        threaded = run_cli(args, env_threads=3)
        assert first == second == threaded

    def test_missing_file_exits_two(self):
        code, report = run_cli(check_args("ambient_p2xp1.txt", "no_such_file.txt"))
        assert code == 2


class TestValidateCommand:
    def test_valid_inputs(self):
        code, _ = run_cli(
            [
                "validate",
                "--ambient",
                fixture_path("ambient_p2xp1.txt"),
                "--monomials",
                fixture_path("monomials_p2xp1_deg32.txt"),
            ]
        )
        assert code == 0

    def test_inhomogeneous_exits_two_with_diagnostic(self):
        code, report = run_cli(
            [
                "validate",
                "--ambient",
                fixture_path("ambient_p4.txt"),
                "--monomials",
                fixture_path("monomials_nonhomog.txt"),
            ]
        )
        assert code == 2
        assert "monomials 1 and 2" in report
        assert "difference" in report or "differ" in report


class TestStrataCommand:
    def test_lists_strata(self):
        code, report = run_cli(
            [
                "strata",
                "--ambient",
                fixture_path("ambient_p2xp1.txt"),
                "--monomials",
                fixture_path("monomials_p2xp1_deg32.txt"),
                "--output",
                "machine",
            ]
        )
        assert code == 0
        assert "count = 3" in report
        assert "vars = x2 x3" in report


class TestDelsarteCommands:
    def setup_method(self):
        import pathlib
        import tempfile

        self.tmp = tempfile.mkdtemp()
        amb = pathlib.Path(self.tmp, "wps.txt")
        amb.write_text("[grading]\n1 1 1\n[irrelevant]\n1 2 3\n", encoding="utf-8")
        mono = pathlib.Path(self.tmp, "loop.txt")
        mono.write_text("x1^2*x2\nx2^2*x3\nx3^2*x1\n", encoding="utf-8")
        self.amb = str(amb)
        self.mono = str(mono)

    def test_delsarte_decomposes_loop(self):
        code, report = run_cli(
            ["delsarte", "--ambient", self.amb, "--monomials", self.mono,
             "--output", "machine"]
        )
        assert code == 0
        assert "decomposition = loop(x1^2->x2^2->x3^2->x1)" in report

    def test_transpose_roundtrip_weights(self):
        code, report = run_cli(
            ["transpose", "--ambient", self.amb, "--monomials", self.mono,
             "--output", "machine"]
        )
        assert code == 0
        assert "weights = 1 1 1" in report
        assert "degree = 3" in report

    def test_non_decomposable_exits_one(self):
        import pathlib

        bad = pathlib.Path(self.tmp, "bad.txt")
        bad.write_text("x1^2*x2^2\nx2^2*x3^2\nx3^2*x1^2\n", encoding="utf-8")
        code, report = run_cli(
            ["delsarte", "--ambient", self.amb, "--monomials", str(bad)]
        )
        assert code == 1


class TestPolytopeCommands:
    def test_goodpair(self):
        code, report = run_cli(
            [
                "goodpair",
                "--p1",
                fixture_path("poly_newton_deg32.txt"),
                "--p2",
                fixture_path("poly_anticanonical_p2xp1.txt"),
                "--output",
                "machine",
            ]
        )
        assert code == 0
        assert "good = true" in report

    def test_dualize_emits_two_polytopes(self):
        code, report = run_cli(
            [
                "dualize",
                "--p1",
                fixture_path("poly_newton_deg32.txt"),
                "--p2",
                fixture_path("poly_anticanonical_p2xp1.txt"),
            ]
        )
        assert code == 0
        assert report.count("# dual pair") == 2

    def test_induce_writes_files(self, tmp_path):
        out_amb = tmp_path / "amb.txt"
        out_mono = tmp_path / "mono.txt"
        code, report = run_cli(
            [
                "induce",
                "--p1",
                fixture_path("poly_newton_deg32.txt"),
                "--p2",
                fixture_path("poly_anticanonical_p2xp1.txt"),
                "--out-ambient",
                str(out_amb),
                "--out-monomials",
                str(out_mono),
            ]
        )
        assert code == 0
        from qsmooth.linsys import load_system

        sys_ = load_system(str(out_amb), str(out_mono))
        assert sys_.num_monomials == 27

        from qsmooth.qscheck import is_quasismooth

        assert is_quasismooth(sys_).quasismooth

    def test_induce_roundtrip_through_check(self, tmp_path):
        out_amb = tmp_path / "amb.txt"
        out_mono = tmp_path / "mono.txt"
        run_cli(
            [
                "induce",
                "--p1",
                fixture_path("poly_newton_deg32.txt"),
                "--p2",
                fixture_path("poly_anticanonical_p2xp1.txt"),
                "--out-ambient",
                str(out_amb),
                "--out-monomials",
                str(out_mono),
            ]
        )
        code, report = run_cli(
            ["check", "--ambient", str(out_amb), "--monomials", str(out_mono)]
        )
        assert code == 0


class TestMainEntry:
    def test_main_exits_with_verdict_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(check_args("ambient_p2xp1.txt", "monomials_p2xp1_deg32.txt"))
        assert exc.value.code == 0
        assert "quasismooth" in capsys.readouterr().out
