import logging

import numpy as np
import pytest

from lorenz_jel.curves import Sample
from lorenz_jel.distributions import SeededStream
from lorenz_jel.ingest import IngestSpec, load_sample, read_column, subsample


def _write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_log_transform(tmp_path):
    p = _write(tmp_path, "100\n200\n300\n")
    s = load_sample(IngestSpec(p, log_transform=True))
    assert np.allclose(s.values, [4.60517, 5.29832, 5.70378], atol=1e-5)


def test_header_autodetect_and_named_column(tmp_path):
    p = _write(tmp_path, "id,income\n1,10\n2,20\n3,30\n")
    rep = read_column(IngestSpec(p, column="income"))
    assert list(rep.values) == [10, 20, 30] and rep.total_rows == 3
    assert list(read_column(IngestSpec(p, column=1)).values) == [10, 20, 30]


def test_headerless_file(tmp_path):
    p = _write(tmp_path, "5\n6\n7\n")
    assert list(read_column(IngestSpec(p)).values) == [5, 6, 7]
    # forcing a header swallows the first row
    assert list(read_column(IngestSpec(p, has_header=True)).values) == [6, 7]


def test_nonnumeric_rows_dropped(tmp_path, caplog):
    p = _write(tmp_path, "x\n1\nNA\n\n3\nabc\ninf\n")
    with caplog.at_level(logging.WARNING):
        rep = read_column(IngestSpec(p))
    assert list(rep.values) == [1, 3]
    assert rep.dropped_nonnumeric == 3
    assert "non-numeric" in caplog.text


def test_min_value_before_log(tmp_path):
    p = _write(tmp_path, "0\n-2\n1\n10\n")
    rep = read_column(IngestSpec(p, min_value=0.5, log_transform=True))
    assert rep.dropped_below_min == 2
    assert np.allclose(rep.values, [0.0, np.log(10)])


def test_log_of_nonpositive_raises(tmp_path):
    p = _write(tmp_path, "0\n1\n2\n")
    with pytest.raises(ValueError, match="1 row"):
        load_sample(IngestSpec(p, log_transform=True))


def test_delimiter(tmp_path):
    p = _write(tmp_path, "a;b\n1;2\n3;4\n")
    assert list(read_column(IngestSpec(p, column="b", delimiter=";")).values) == [2, 4]


def test_errors(tmp_path):
    with pytest.raises(OSError):
        read_column(IngestSpec(tmp_path / "missing.csv"))
    with pytest.raises(ValueError):
        read_column(IngestSpec(_write(tmp_path, "a\nx\ny\n", "bad.csv")))
    with pytest.raises(ValueError, match="not found"):
        read_column(IngestSpec(_write(tmp_path, "a\n1\n", "one.csv"), column="b"))


def test_subsample():
    s = Sample(np.arange(100.0))
    a = subsample(s, 10, SeededStream(4, 1))
    b = subsample(s, 10, SeededStream(4, 1))
    assert np.array_equal(a.values, b.values)
    assert len(set(a.values)) == 10 and set(a.values) <= set(s.values)
    assert np.array_equal(np.sort(subsample(s, 100, SeededStream(1)).values), s.values)
    for bad in (0, 101):
        with pytest.raises(ValueError):
            subsample(s, bad, SeededStream(1))
