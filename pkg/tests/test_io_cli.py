import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemefusion import generators as gen
from schemefusion.cli import main
from schemefusion.errors import ParseError
from schemefusion.exact import RatMatrix
from schemefusion.io import format_eigen, format_scheme, load, parse_eigen, parse_scheme
from schemefusion.scheme import RelationTable, spectrum, validate_table


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def files(tmp_path):
    w = tmp_path / "w.scheme"
    w.write_text(format_scheme(gen.wreath_chain(2, 2, 2), comment="chain"))
    g = tmp_path / "grid3.scheme"
    g.write_text(format_scheme(gen.latin_scheme(3, 2)))
    e = tmp_path / "grid3.eigen"
    e.write_text(format_eigen(spectrum(validate_table(gen.latin_scheme(3, 2))).P))
    return tmp_path


# --- file formats -------------------------------------------------------------------

@given(st.integers(1, 7), st.data())
@settings(max_examples=60, deadline=None)
def test_scheme_text_round_trip(v, data):
    d = data.draw(st.integers(1, 4))
    cells = np.array(data.draw(st.lists(st.lists(st.integers(0, d), min_size=v, max_size=v),
                                        min_size=v, max_size=v)))
    table = RelationTable(cells, d=d)
    assert parse_scheme(format_scheme(table, comment="x\ny")) == table


@given(st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_eigen_text_round_trip(d, data):
    entry = st.fractions(min_value=-50, max_value=50, max_denominator=12)
    rows = data.draw(st.lists(st.lists(entry, min_size=d + 1, max_size=d + 1),
                              min_size=d + 1, max_size=d + 1))
    M = RatMatrix(rows)
    assert parse_eigen(format_eigen(M)) == M


def test_eigen_accepts_fractions():
    M = parse_eigen("# c\n1\n1 3/2\n1 -1\n")
    assert M[0, 1] == Fraction(3, 2)


@pytest.mark.parametrize("text", ["", "3\n0 1\n", "2 1\n0 1\n1 x\n", "2 1\n0 1\n", "2 1\n0 5\n5 0\n"])
def test_scheme_parse_errors(text):
    with pytest.raises(ParseError):
        parse_scheme(text)


@pytest.mark.parametrize("text", ["", "x\n", "1\n1 1\n", "1\n1 1\n1 1/0\n"])
def test_eigen_parse_errors(text):
    with pytest.raises(ParseError):
        parse_eigen(text)


def test_load_dispatches_on_suffix(files):
    assert isinstance(load(files / "w.scheme"), RelationTable)
    assert isinstance(load(files / "grid3.eigen"), RatMatrix)
    with pytest.raises(ParseError):
        load(files / "missing.scheme")


# --- commands -----------------------------------------------------------------------

def test_gen_then_graph_prints_path(tmp_path, capsys):
    out_file = tmp_path / "w.scheme"
    code, _, _ = run(capsys, "gen", "chain", "2,2,2", "-o", out_file)
    assert code == 0 and out_file.exists()
    code, out, _ = run(capsys, "graph", out_file, "--kind", "relations")
    assert code == 0 and out.strip() == "path 1-2-3"


def test_graph_of_idempotents_and_dot(files, capsys):
    dot = files / "g.dot"
    code, out, _ = run(capsys, "graph", files / "w.scheme", "--kind", "idempotents", "--dot", dot)
    assert code == 0 and out.strip() == "path 1-2-3"
    assert dot.read_text().startswith("graph idempotents {")


def test_amorphic_with_oracle(files, capsys):
    code, out, _ = run(capsys, "amorphic", files / "grid3.scheme", "--oracle")
    assert code == 0 and out.strip() == "amorphic: yes (canonical+oracle agree)"


def test_amorphic_no(files, capsys):
    code, out, _ = run(capsys, "amorphic", files / "w.scheme", "--oracle")
    assert code == 0 and out.startswith("amorphic: no")


def test_fuse_rejected_partition(files, capsys):
    code, _, err = run(capsys, "fuse", files / "w.scheme", "--parts", "1,3|2")
    assert code == 1 and "NoFusion" in err


def test_fuse_writes_table(files, capsys):
    out_file = files / "f.scheme"
    code, out, _ = run(capsys, "fuse", files / "w.scheme", "--parts", "1,2|3", "-o", out_file)
    assert code == 0 and "dual partition 1,2|3" in out
    assert validate_table(load(out_file)).valencies == (1, 6, 1)


def test_fuse_on_eigenmatrix(files, capsys):
    out_file = files / "f.eigen"
    code, _, _ = run(capsys, "fuse", files / "grid3.eigen", "--parts", "1,2|3", "-o", out_file)
    assert code == 0 and load(out_file).row(0) == (1, 4, 4)


def test_bad_partition_is_input_error(files, capsys):
    code, _, err = run(capsys, "fuse", files / "w.scheme", "--parts", "1,2")
    assert code == 2 and err.startswith("error:")


def test_pairs(files, capsys):
    code, out, _ = run(capsys, "pairs", files / "w.scheme")
    assert code == 0 and out.splitlines() == ["1,2 <-> 1,2", "2,3 <-> 2,3"]
    code, out, _ = run(capsys, "pairs", files / "grid3.eigen", "--dual")
    assert code == 0 and len(out.splitlines()) == 3


def test_spectrum_json(files, capsys):
    code, out, _ = run(capsys, "spectrum", files / "w.scheme", "--json")
    data = json.loads(out)
    assert code == 0 and data["P"][1] == ["1", "-4", "2", "1"] and data["multiplicities"] == [1, 1, 2, 4]


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", files / "w.scheme")
    assert code == 0 and "relation 2: not strongly regular" in out


def test_validate(files, capsys):
    assert run(capsys, "validate", files / "w.scheme")[0] == 0
    assert run(capsys, "validate", files / "grid3.eigen")[0] == 0


def test_validate_inconsistent_table(tmp_path, capsys):
    cells = np.array(gen.latin_scheme(3, 2).cells)
    x, y = map(int, np.argwhere(cells == 3)[0])
    cells[x, y] = cells[y, x] = 1
    bad = tmp_path / "bad.scheme"
    bad.write_text(format_scheme(RelationTable(cells, d=3)))
    code, _, err = run(capsys, "validate", bad)
    assert code == 1 and "InconsistentTriple" in err


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "gen", "latin", "4", "2", "-o", "/dev/null")[0] == 2
    assert run(capsys, "validate", "/nonexistent/file.scheme")[0] == 2


def test_gen_wreath_from_file(files, capsys):
    out_file = files / "wg.scheme"
    code, _, _ = run(capsys, "gen", "wreath", "2", files / "grid3.scheme", "-o", out_file)
    assert code == 0
    code, out, _ = run(capsys, "graph", out_file)
    assert out.startswith("disconnected graph, 3 edges")


# --- verify-paper on a small catalog -------------------------------------------------

@pytest.fixture()
def catalog(tmp_path):
    d = tmp_path / "cat"
    d.mkdir()
    (d / "a_chain.scheme").write_text(format_scheme(gen.wreath_chain(2, 2, 2, 2)))
    (d / "b_grid.eigen").write_text(format_eigen(spectrum(validate_table(gen.latin_scheme(3, 2))).P))
    cells = np.array(gen.latin_scheme(3, 2).cells)
    x, y = map(int, np.argwhere(cells == 3)[0])
    cells[x, y] = cells[y, x] = 1
    (d / "c_corrupt.scheme").write_text(format_scheme(RelationTable(cells, d=3)))
    return d


def test_verify_paper_reports_corrupted_entry(catalog, tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog, "--report", report)
    data = json.loads(report.read_text())
    assert list(data) == ["reportVersion", "schemes", "summary"]
    bad = [s for s in data["schemes"] if s["id"] == "c_corrupt"][0]
    assert bad["status"] == "error" and bad["errorType"] == "InconsistentTriple"
    assert data["summary"]["schemes"] == 3 and data["summary"]["errors"] == 1
    assert data["summary"]["violations"] == 0
    assert code == 1 and "ERROR c_corrupt: InconsistentTriple" in out


def test_verify_paper_clean_catalog_exit_zero(catalog, tmp_path, capsys):
    (catalog / "c_corrupt.scheme").unlink()
    code, out, _ = run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog)
    assert code == 0 and "violations=0" in out
    assert out.splitlines()[0] == "=== verify-paper ===" and out.splitlines()[-1] == "=== end ==="


def test_verify_paper_eigen_entry_skips_table_checks(catalog, tmp_path, capsys):
    report = tmp_path / "r.json"
    run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog, "--report", report)
    grid = [s for s in json.loads(report.read_text())["schemes"] if s["id"] == "b_grid"][0]
    names = {c["name"] for c in grid["checks"]}
    assert grid["kind"] == "eigen" and grid["verdicts"]["oracle"] is True
    assert not any(n.startswith("relations-contraction-table") for n in names)
    assert grid["graphs"]["relations"]["edgeCount"] == 3


def test_verify_paper_is_byte_identical(catalog, tmp_path, capsys):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog, "--report", r1)
    run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog, "--report", r2, "--jobs", "2")
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_paper_figures(catalog, tmp_path, capsys):
    figs = tmp_path / "figs"
    run(capsys, "verify-paper", "--no-builtin", "--catalog", catalog, "--figures", figs)
    names = sorted(p.name for p in figs.iterdir())
    assert names == ["a_chain.png", "b_grid.png", "overview.png"]
    assert all((figs / n).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" for n in names)


def test_verify_paper_missing_catalog(capsys):
    assert run(capsys, "verify-paper", "--no-builtin", "--catalog", "/nonexistent")[0] == 2
