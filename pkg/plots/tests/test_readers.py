import csv

import pytest

from sdesplots import readers


def test_read_scan_parses_full_file(scan_csv):
    rows = readers.read_scan(scan_csv)
    assert len(rows) == 1024
    assert {r.reference_key for r in rows} == {"1010000010"}
    assert all(isinstance(r.distance, int) for r in rows)
    assert all(isinstance(r.fitness, float) for r in rows)
    assert sorted(int(r.candidate_key, 2) for r in rows) == list(range(1024))


def test_scan_header_error_names_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("reference_key,candidate_key,distance,fit\n")
    with pytest.raises(readers.SchemaError) as err:
        readers.read_scan(path)
    assert "fitness" in str(err.value) and "fit" in str(err.value)


def test_scan_header_order_matters(tmp_path):
    path = tmp_path / "swapped.csv"
    path.write_text("candidate_key,reference_key,distance,fitness\n")
    with pytest.raises(readers.SchemaError, match="out of order"):
        readers.read_scan(path)


def test_scan_rejects_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("reference_key,candidate_key,distance,fitness\n")
    with pytest.raises(readers.SchemaError, match="no data rows"):
        readers.read_scan(path)


def test_scan_rejects_mixed_reference_keys(tmp_path):
    path = tmp_path / "mixed.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(readers.SCAN_COLUMNS)
        writer.writerow(["0000000000", "0000000001", 1, "1.0"])
        writer.writerow(["1111111111", "0000000001", 9, "2.0"])
    with pytest.raises(readers.SchemaError, match="mixed reference keys"):
        readers.read_scan(path)


def test_scan_rejects_short_key(tmp_path):
    path = tmp_path / "short.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(readers.SCAN_COLUMNS)
        writer.writerow(["000000000", "0000000001", 1, "1.0"])
    with pytest.raises(readers.SchemaError, match="bit-strings"):
        readers.read_scan(path)


def test_scan_rejects_out_of_range_distance(tmp_path):
    path = tmp_path / "far.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(readers.SCAN_COLUMNS)
        writer.writerow(["0000000000", "0000000001", 11, "1.0"])
    with pytest.raises(readers.SchemaError, match="out of range"):
        readers.read_scan(path)


def test_scan_bad_value_reports_line(tmp_path):
    path = tmp_path / "nan.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(readers.SCAN_COLUMNS)
        writer.writerow(["0000000000", "0000000001", 1, "1.0"])
        writer.writerow(["0000000000", "0000000011", "two", "1.0"])
    with pytest.raises(readers.SchemaError, match="nan.csv:3"):
        readers.read_scan(path)


def test_read_summary_parses_types(summary_csv):
    rows = readers.read_summary(summary_csv)
    assert len(rows) == 22
    assert {r.algorithm for r in rows} == {"rs", "ga"}
    first = rows[0]
    assert isinstance(first.text_size, int)
    assert isinstance(first.mean_matched, float)
    assert isinstance(first.best_matched, int)


def test_summary_header_error(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("algorithm,text_size,mean,std_matched,best_matched\n")
    with pytest.raises(readers.SchemaError) as err:
        readers.read_summary(path)
    assert "mean_matched" in str(err.value)


def test_summary_rejects_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text(",".join(readers.SUMMARY_COLUMNS) + "\n")
    with pytest.raises(readers.SchemaError, match="no data rows"):
        readers.read_summary(path)


def test_summary_bad_row_reports_line(summary_csv):
    with open(summary_csv, "a", newline="") as fh:
        fh.write("rs,100,notanumber,1.0,10\n")
    with pytest.raises(readers.SchemaError, match="summary.csv:24"):
        readers.read_summary(summary_csv)


def test_scan_factory_round_trip(make_scan):
    scan = make_scan("s.csv", reference="1111100000")
    rows = readers.read_scan(scan)
    assert rows[0].reference_key == "1111100000"
    assert max(r.distance for r in rows) == 10
