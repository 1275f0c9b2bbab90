import pandas as pd

from orthotest.errors import GraphFormatError
from orthotest.utilities import (read_bench_table, read_graph_file,
                                 write_pandas, write_text)


class TestReadGraphFile:
    def test_utf8(self, tmp_path):
        fp = tmp_path / "square.txt"
        fp.write_text("0 1\n1 2\n2 3\n3 0\n", encoding='utf-8')
        g, encoding, error = read_graph_file(str(fp))
        assert error is None
        assert encoding == 'utf-8'
        assert (g.n, g.m) == (4, 4)

    def test_latin1_comment(self, tmp_path):
        fp = tmp_path / "path.txt"
        fp.write_bytes(b"# caf\xe9\n0 1\n1 2\n")
        g, encoding, error = read_graph_file(str(fp))
        assert error is None
        assert encoding == 'latin-1'
        assert g.m == 2

    def test_explicit_encoding(self, tmp_path):
        fp = tmp_path / "path.txt"
        fp.write_bytes(b"# caf\xe9\n0 1\n")
        _, _, error = read_graph_file(str(fp), 'utf-8')
        assert isinstance(error, UnicodeDecodeError)

    def test_missing_file(self, tmp_path):
        g, encoding, error = read_graph_file(str(tmp_path / "nope.txt"))
        assert g is None and encoding is None
        assert isinstance(error, OSError)

    def test_bad_content(self, tmp_path):
        fp = tmp_path / "bad.json"
        fp.write_text('{"n": 3', encoding='utf-8')
        g, encoding, error = read_graph_file(str(fp))
        assert g is None
        assert encoding == 'utf-8'
        assert isinstance(error, GraphFormatError)


class TestWriters:
    def test_write_text(self, tmp_path):
        fp = tmp_path / "out.txt"
        assert write_text(str(fp), "YES\n") is None
        assert fp.read_text(encoding='utf-8') == "YES\n"

    def test_missing_directory(self, tmp_path):
        error = write_text(str(tmp_path / "missing" / "out.txt"), "x")
        assert isinstance(error, OSError)

    def test_bench_table_round_trip(self, tmp_path):
        fp = str(tmp_path / "bench.csv")
        df = pd.DataFrame([{'n': 10, 'edges': 12, 'kind': 'sp', 'verdict': 'YES',
                            'micros': 150}])
        assert write_pandas(df, fp) is None
        read, error = read_bench_table(fp)
        assert error is None
        assert read.to_dict('records') == df.to_dict('records')
