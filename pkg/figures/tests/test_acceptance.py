"""Figure-pipeline acceptance: generate fresh CSVs through the core CLI (its
external interface) and render all three figure kinds from them."""
import subprocess
import sys
import time

import numpy as np

from peerlens_figures import FigureSpec, load_scatter, render


def run_core_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "peerlens", *argv],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_figure_pipeline(tmp_path, capsys):
    start = time.perf_counter()
    curve_csv = tmp_path / "private.csv"
    surface_csv = tmp_path / "public.csv"
    scatter_csv = tmp_path / "choices.csv"

    run_core_cli("landscape", "--mode", "private", "--grid", "41", "--out", str(curve_csv))
    run_core_cli("landscape", "--mode", "public", "--grid", "21", "--out", str(surface_csv))
    run_core_cli(
        "simulate",
        "--criterion",
        "reviewer-public",
        "--investigators",
        "50",
        "--candidates",
        "15",
        "--seed",
        "42",
        "--out",
        str(scatter_csv),
    )

    outputs = [
        render(FigureSpec("curve", curve_csv, tmp_path / "curve.png")),
        render(FigureSpec("heatmap", surface_csv, tmp_path / "heatmap.png")),
        render(
            FigureSpec(
                "scatter", scatter_csv, tmp_path / "scatter.png", marker=(0.5, 0.26)
            )
        ),
    ]
    rendered = all(path.exists() and path.stat().st_size > 0 for path in outputs)

    means, sds = load_scatter(scatter_csv)
    bound = np.sqrt(means * (1.0 - means))
    under_arc = bool(np.all(sds <= bound + 1e-12))

    elapsed = time.perf_counter() - start
    ok = rendered and under_arc
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(
            f"[ACCEPTANCE] figure-pipeline: {status} "
            f"(3 kinds rendered={rendered}, scatter under arc={under_arc}, {elapsed:.1f}s)"
        )
    assert ok
