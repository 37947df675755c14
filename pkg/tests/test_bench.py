import pytest

from pafp import StructureClass, classify_instance
from pafp.bench import bench_instance, run_bench


def test_bench_instance_is_deterministic_and_well_parenthesized():
    a = bench_instance(96, 7)
    b = bench_instance(96, 7)
    assert a == b
    assert classify_instance(a).structure is StructureClass.WELL_PARENTHESIZED
    assert len(a.pairs) == 96 // 8


def test_run_bench_records_cells_and_slope():
    report = run_bench(["cubic"], [16, 24, 32, 48], repeats=2, seed=3)
    assert len(report.cells) == 4
    assert all(not c.skipped and c.seconds is not None for c in report.cells)
    assert report.slopes["cubic"] is not None
    assert report.cell("cubic", 32).repeats == 2


def test_run_bench_slope_needs_four_sizes():
    report = run_bench(["cubic"], [16, 32], repeats=1, seed=3)
    assert report.slopes["cubic"] is None


def test_run_bench_time_cap_marks_cells_skipped():
    report = run_bench(["cubic"], [64], repeats=2, seed=0, time_cap=0.0)
    cell = report.cell("cubic", 64)
    assert cell.skipped and cell.seconds is None
    assert report.slopes["cubic"] is None


def test_run_bench_rejects_unknown_solver():
    with pytest.raises(ValueError):
        run_bench(["quantum"], [16], repeats=1)


def test_plot_report_writes_file(tmp_path):
    pytest.importorskip("matplotlib")
    report = run_bench(["cubic", "matrix"], [16, 32], repeats=1, seed=1)
    out = tmp_path / "bench.png"
    from pafp.bench import plot_report

    plot_report(report, str(out))
    assert out.stat().st_size > 0
