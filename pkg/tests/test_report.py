import pytest

from kempe_recon import __version__
from kempe_recon.Agents.CertificationAgent import CertificationAgent, certify_instance
from kempe_recon.data_sources import TOY_CTT, CertRecord
from kempe_recon.report import Report, read_csv_report

from conftest import markdown_rows
from test_instance_io import TIM_MN

CSV_HEADER = "instance,p,deg,subdeg_ub,connected_basic,connected_availability"


@pytest.fixture
def instance_files(tmp_path):
    toy = tmp_path / "toy.ctt"
    toy.write_text(TOY_CTT)
    tim = tmp_path / "tiny.tim"
    tim.write_text(TIM_MN)
    broken = tmp_path / "broken.ctt"
    broken.write_text(TOY_CTT.replace("Courses: 4", "Courses: 5"))
    return toy, tim, broken


def test_cert_record_verdicts():
    record = CertRecord.from_values("x", 20, 10, 21)
    assert record.connected_basic
    assert record.connected_with_availability is False
    assert CertRecord.from_values("x", 5, 5, None).connected_with_availability is None


def test_certify_toy(toy_instance):
    record = certify_instance(toy_instance)
    assert (record.p, record.deg, record.subdeg_ub) == (20, 10, 11)
    assert record.connected_basic and record.connected_with_availability


def test_csv_report():
    report = Report(
        records=[CertRecord.from_values("toy", 20, 10, 11), CertRecord.from_values("tiny", 45, 1, None)],
        failures=[("broken.ctt", "line 2: bad")],
        tool_version="0.1.0",
    )
    assert report.to_csv() == (
        "# kempe-recon 0.1.0\n"
        f"{CSV_HEADER}\n"
        "toy,20,10,11,true,true\n"
        "tiny,45,1,n/a,true,n/a\n"
        "# failed broken.ctt: line 2: bad\n"
    )
    assert not report.all_parsed


def test_csv_report_reads_back(instance_files):
    toy, tim, broken = instance_files
    report = CertificationAgent(jobs=1).execute_task([toy, broken, tim])
    table = read_csv_report(report.to_csv())
    assert list(table.columns) == CSV_HEADER.split(",")
    assert table.values.tolist() == [
        ["toy", "20", "10", "11", "true", "true"],
        ["tiny", "45", "1", "n/a", "true", "n/a"],
    ]


def test_markdown_report_marks_certificates():
    report = Report(
        records=[CertRecord.from_values("toy", 20, 10, 11), CertRecord.from_values("hard", 10, 12, 10)],
        tool_version="0.1.0",
        timestamp="2024-01-01T00:00:00Z",
    )
    text = report.render("md")
    assert text.startswith("# kempe-recon 0.1.0 generated 2024-01-01T00:00:00Z\n")
    assert markdown_rows(text) == [
        ["instance", "p", "deg(G)", "subdeg_ub"],
        ["toy", "20", "**10**", "**11**"],
        ["hard", "10", "12", "10"],
    ]
    with pytest.raises(ValueError):
        report.render("html")


def test_agent_collects_failures(instance_files):
    toy, tim, broken = instance_files
    report = CertificationAgent(jobs=1).execute_task([toy, broken, tim], timestamp=False)
    assert [r.instance_name for r in report.records] == ["toy", "tiny"]
    assert report.failures[0][0] == str(broken)
    assert "declares 5 courses" in report.failures[0][1]
    assert report.tool_version == __version__
    assert report.timestamp is None
    assert report.records[1].subdeg_ub is None


def test_agent_in_parallel_keeps_input_order(instance_files):
    toy, tim, _ = instance_files
    report = CertificationAgent(jobs=2).execute_task([tim, toy, tim])
    assert [r.instance_name for r in report.records] == ["tiny", "toy", "tiny"]
    assert report.all_parsed
    assert report.timestamp is not None


def test_agent_rejects_unknown_format():
    with pytest.raises(ValueError, match="Unsupported format"):
        CertificationAgent(format_hint="xml")


def test_certify_missing_file(tmp_path):
    path, record, error = CertificationAgent().certify_file(tmp_path / "nope.ctt")
    assert record is None
    assert error
