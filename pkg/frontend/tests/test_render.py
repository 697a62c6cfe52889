import pytest

from selplots.cli import main
from selplots.render import PlotSpec, render

from test_aggregate import make_csv, row


@pytest.fixture
def csv_file(tmp_path):
    path = tmp_path / "sweep.csv"
    path.write_text(make_csv([
        row(algorithm="naive", target=0.0),
        row(algorithm="naive", target=1.0, eta=4.0, alg=4.0),
        row(algorithm="revoke-unit", target=0.0, model="revocable"),
        row(algorithm="revoke-unit", target=1.0, eta=4.0, alg=6.0, model="revocable"),
    ]))
    return path


def test_one_figure_per_group(csv_file, tmp_path):
    out = tmp_path / "figs"
    written = render(PlotSpec(str(csv_file), str(out)))
    assert sorted(p.split("/")[-1] for p in written) == [
        "trace_unit_irrevocable.png",
        "trace_unit_revocable.png",
    ]
    for path in written:
        assert (out / path.split("/")[-1]).stat().st_size > 0


def test_rerender_is_byte_identical(csv_file, tmp_path):
    spec1 = PlotSpec(str(csv_file), str(tmp_path / "a"))
    spec2 = PlotSpec(str(csv_file), str(tmp_path / "b"))
    (p1, _), (p2, _) = sorted(render(spec1)), sorted(render(spec2))
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_empty_csv_writes_nothing(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    out = tmp_path / "figs"
    assert main(["--csv", str(empty), "--out", str(out)]) == 2
    assert not out.exists()


def test_cli_happy_path(csv_file, tmp_path, capsys):
    out = tmp_path / "figs"
    assert main(["--csv", str(csv_file), "--out", str(out),
                 "--stat", "median", "--fmt", "png"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_cli_missing_csv(tmp_path):
    assert main(["--csv", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == 2
