import math

from lostatsea import CaseLabel, Region, Strategy2, build_zalgaller
from lostatsea.svg import figure2, figure6, plot_path, plot_realizations


def test_figure2_spans_three_cases():
    svg, labels = figure2()
    assert len(labels) == 4 and len(set(labels)) == 3
    assert svg.startswith("<svg") and svg.count("<polyline") == 4
    assert figure2()[0] == svg  # byte-deterministic


def test_figure6_all_case2():
    svg, labels = figure6()
    assert labels == [CaseLabel.DISK2] * 3
    assert "Case 2'" in svg and "<circle" in svg


def test_zalgaller_path_plot():
    svg = plot_path(build_zalgaller().polyline, "zalgaller")
    assert svg.count("<polyline") == 1 and "<title>zalgaller</title>" in svg


def test_custom_realizations():
    svg, labels = plot_realizations(Region.STRIP, Strategy2(1.2, 1.3),
                                    [(0.2, math.radians(-40)), (0.6, 1.0)])
    assert len(labels) == 2 and svg.endswith("</svg>\n")
