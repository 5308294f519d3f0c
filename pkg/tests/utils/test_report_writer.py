import json
import pandas as pd
import pytest
from experiments.claim_check import at_most
from experiments.rate_fit import fit_rate
from utils.exceptions import ReportFormatError, ReportReadError
from utils.report_format import ReportFormat
from utils.report_writer import emit_report, load_report

EPS = [0.125, 0.0625, 0.03125, 0.015625, 0.0078125]

@pytest.fixture
def table():
    return pd.DataFrame({
        "epsilon": EPS,
        "status": ["ok"] * 5,
        "reason": [""] * 5,
        "tau": [0.3 * eps for eps in EPS],
    })

class TestEmitReport:
    def test_csv_has_header_and_one_line_per_row(self, table, tmp_path):
        path = emit_report(table, ReportFormat.CSV, str(tmp_path / "sweep.csv"))
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert path.endswith("sweep.csv")
        assert len(lines) == 6
        assert lines[0] == "epsilon,status,reason,tau"

    def test_csv_keeps_full_precision(self, table, tmp_path):
        path = emit_report(table, "csv", str(tmp_path / "sweep.csv"))
        loaded = load_report(path)
        pd.testing.assert_frame_equal(loaded.table, table)

    def test_json_carries_fits_and_claims(self, table, tmp_path):
        fit = fit_rate(list(zip(table["epsilon"], table["tau"])))
        path = emit_report(
            table, "json", str(tmp_path / "nested" / "sweep.json"),
            experiment="resolvent-rate",
            config={"schema_version": "1.0", "seed": 0},
            fits={"tau": fit},
            claims=[at_most("tau floor", 1e-12, 1e-8)],
        )
        with open(path) as file:
            payload = json.load(file)
        assert payload["schema"] == "thin_channel_lab.report/1.0"
        assert payload["fits"]["tau"]["preferred"] == "power"
        assert payload["fits"]["tau"]["p"] == pytest.approx(1.0)

        loaded = load_report(path)
        assert loaded.experiment == "resolvent-rate"
        assert loaded.claims == [{"name": "tau floor", "passed": True, "detail": "1e-12 <= 1e-08"}]
        pd.testing.assert_frame_equal(loaded.table, table)

    def test_empty_table_is_refused(self, tmp_path):
        with pytest.raises(ValueError):
            emit_report(pd.DataFrame(), "csv", str(tmp_path / "empty.csv"))

    def test_unknown_format(self, table, tmp_path):
        with pytest.raises(ReportFormatError):
            emit_report(table, "xml", str(tmp_path / "sweep.xml"))

class TestLoadReport:
    def test_unknown_extension(self, tmp_path):
        with pytest.raises(ReportFormatError):
            load_report(str(tmp_path / "sweep.txt"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ReportReadError):
            load_report(str(tmp_path / "absent.csv"))

    def test_json_without_schema_tag(self, tmp_path):
        path = tmp_path / "foreign.json"
        path.write_text(json.dumps({"rows": []}))
        with pytest.raises(ReportReadError):
            load_report(str(path))
