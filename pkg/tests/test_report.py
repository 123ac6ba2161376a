from __future__ import annotations

import random

from stardecomp.discharge import apply_rules
from stardecomp.gen import config_free, extremal_search
from stardecomp.report import plot_charges, plot_extremal


def test_plots_are_written(tmp_path):
    g = config_free("L5", random.Random(1))
    out = plot_charges(apply_rules(g, "L5"), tmp_path / "c.png")
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    recs = extremal_search(5, 3, cap=4)
    out = plot_extremal(recs, tmp_path / "e.svg", 3)
    assert out.read_text().lstrip().startswith("<?xml")
    assert plot_extremal([], tmp_path / "none.png", 4).exists()
