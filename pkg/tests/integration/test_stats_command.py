"""Integration tests for ``xlbench stats``."""

from pathlib import Path

import pandas as pd
import pytest

from src.main import main


@pytest.fixture
def runs_csv(tmp_path: Path) -> Path:
    """Provide runs on two instances of 5 and 10 customers."""
    path = tmp_path / "runs.csv"
    path.write_text(
        "instance,method,seed,cost\n"
        "T-n6-k2,baseline,0,101\n"
        "T-n6-k2,baseline,1,103\n"
        "T-n11-k3,baseline,0,206\n"
        "T-n11-k3,baseline,1,\n"
    )
    return path


@pytest.fixture
def two_bks(tmp_path: Path) -> Path:
    """Provide BKS 100 and 200 for the two run instances."""
    path = tmp_path / "two_bks.csv"
    path.write_text("instance,cost\nT-n6-k2,100\nT-n11-k3,200\n")
    return path


@pytest.mark.integration
class TestStatsCommand:
    """Test suite for gap reporting from the command line."""

    def test_summary_and_groups(
        self, runs_csv: Path, two_bks: Path, tmp_path: Path
    ) -> None:
        """Test per-instance gaps and the dataset average."""
        out = tmp_path / "report"

        code = main(["stats", str(runs_csv), "--bks", str(two_bks), "--out", str(out)])

        assert code == 0
        summary = pd.read_csv(out / "summary.csv").set_index("instance")
        assert summary.loc["T-n6-k2", "best"] == 101
        assert summary.loc["T-n6-k2", "gap_mean"] == 2.0
        assert summary.loc["T-n11-k3", "feasible_runs"] == 1
        groups = pd.read_csv(out / "groups.csv")
        assert list(groups["group"]) == ["all"]
        assert groups.loc[0, "avg_gap_best"] == 2.0

    def test_split(self, runs_csv: Path, two_bks: Path, tmp_path: Path) -> None:
        """Test that --split adds two size groups."""
        out = tmp_path / "report"

        code = main(
            [
                "stats", str(runs_csv),
                "--bks", str(two_bks),
                "--split", "8",
                "--out", str(out),
            ]
        )

        groups = pd.read_csv(out / "groups.csv").set_index("group")
        assert code == 0
        assert list(groups.index) == ["all", "< 8", ">= 8"]
        assert groups.loc["< 8", "avg_gap_best"] == 1.0
        assert groups.loc[">= 8", "avg_gap_best"] == 3.0

    def test_attribute_table(
        self,
        runs_csv: Path,
        two_bks: Path,
        tmp_path: Path,
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        """Test attribute averages from an index-style manifest."""
        manifest = tmp_path / "index.csv"
        manifest.write_text(
            "name,depot,customers,demand,route_class\n"
            "T-n6-k2,R,C,U,S\n"
            "T-n11-k3,R,RC,U,L\n"
        )
        out = tmp_path / "report"

        code = main(
            [
                "stats", str(runs_csv),
                "--bks", str(two_bks),
                "--manifest", str(manifest),
                "--out", str(out),
            ]
        )

        assert code == 0
        cells = pd.read_csv(out / "attributes.csv", keep_default_na=False)
        depot = cells[(cells["attribute"] == "depot") & (cells["level"] == "R")]
        assert depot["avg_gap_best"].tolist() == [2.0]
        assert "overall" in capsys.readouterr().out

    def test_single_run_prints_table(
        self, two_bks: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test a one-run file without --out."""
        runs = tmp_path / "one.csv"
        runs.write_text("instance,seed,cost\nT-n6-k2,0,100\n")

        code = main(["stats", str(runs), "--bks", str(two_bks)])

        assert code == 0
        assert "T-n6-k2" in capsys.readouterr().out

    def test_missing_bks(self, runs_csv: Path, tmp_path: Path) -> None:
        """Test that a run without BKS entry exits 2."""
        bks = tmp_path / "partial.csv"
        bks.write_text("instance,cost\nT-n6-k2,100\n")

        assert main(["stats", str(runs_csv), "--bks", str(bks)]) == 2

    def test_reference_bks_by_default(self, runs_csv: Path) -> None:
        """Test that the bundled table is used without --bks."""
        assert main(["stats", str(runs_csv)]) == 2

    def test_missing_runs_file(self, tmp_path: Path) -> None:
        """Test that a missing runs file exits 2."""
        assert main(["stats", str(tmp_path / "none.csv")]) == 2
