"""Deterministic demo problems for the CLI and the golden tests."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .operators import (
    DenseMatrixOperator,
    GridDerivativeOperator,
    apply_series,
    forward_even_convolution,
    forward_exponential_volterra,
    forward_filter,
)
from .rational import FilterSpec
from .serialization import write_signal
from .series import ResolventSeries

__all__ = ["write_demo_files"]

TWO_POLE_TERMS = [{"a": [1.0, 0.0], "alpha": [1.0, 0.0]},
                  {"a": [1.0, 0.0], "alpha": [3.0, 0.0]}]


def _matrix_json(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _demo_matrix(n: int, shift: float = 5.0, coupling: float = 0.1
                 ) -> np.ndarray:
    m = np.diag(shift + np.arange(n, dtype=float)).astype(complex)
    for i in range(n - 1):
        m[i, i + 1] = coupling
    return m


def write_demo_files(directory: Path) -> list[Path]:
    """Write the demo problem and input files; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def dump(name, doc):
        path = directory / name
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        written.append(path)

    def signal(name, values):
        path = directory / name
        write_signal(path, values)
        written.append(path)

    dump("series_admissible.json", {
        "kind": "series", "terms": TWO_POLE_TERMS,
        "spectrum": {"variant": "point_set", "points": [[10.0, 0.0]]},
    })
    dump("series_inadmissible.json", {
        "kind": "series", "terms": TWO_POLE_TERMS,
        "spectrum": {"variant": "point_set", "points": [[2.0, 0.0]]},
    })

    series = ResolventSeries(((1.0, 1.0), (1.0, 3.0)))

    m4 = _demo_matrix(4)
    dump("matrix.json", {"kind": "matrix", "matrix": _matrix_json(m4),
                         "terms": TWO_POLE_TERMS})
    x0 = np.array([1.0, 2.0, 3.0, 4.0], dtype=complex)
    signal("matrix_y.csv", apply_series(series, DenseMatrixOperator(m4), x0))
    signal("matrix_x0.csv", x0)

    spec = FilterSpec((-0.5, 1.0), (1.0,))
    dump("filter.json", {"kind": "filter",
                         "c": [[-0.5, 0.0], [1.0, 0.0]],
                         "b": [[1.0, 0.0]]})
    xf = np.zeros(16, dtype=complex)
    xf[0] = 1.0
    signal("filter_x0.csv", xf)
    signal("filter_y.csv", forward_filter(spec, xf))

    grid = GridDerivativeOperator(0.0, 10.0, 400)
    dump("integral.json", {"kind": "integral",
                           "kernel": [{"a": [1.0, 0.0], "alpha": [1.0, 0.0]},
                                      {"a": [1.0, 0.0], "alpha": [2.0, 0.0]}],
                           "grid": {"t0": 0.0, "L": 10.0, "n": 400}})
    kernel = ResolventSeries(((1.0, 1.0), (1.0, 2.0)))
    xi = np.exp(-((grid.t - 4.0) ** 2)).astype(complex)
    signal("integral_x0.csv", xi)
    signal("integral_y.csv", forward_exponential_volterra(kernel, xi, grid))

    conv_terms = [(-0.5, -1j)]
    dump("convolution.json", {"kind": "convolution",
                              "terms": [{"b": [-0.5, 0.0],
                                         "beta": [0.0, -1.0]}],
                              "period": 8.0})
    t = np.linspace(0.0, 8.0, 64, endpoint=False)
    xc = (np.cos(2.0 * np.pi * t / 8.0)
          + 0.5 * np.sin(4.0 * np.pi * t / 8.0)).astype(complex)
    signal("convolution_x0.csv", xc)
    signal("convolution_y.csv", forward_even_convolution(conv_terms, xc, 8.0))

    m8 = _demo_matrix(8, coupling=0.05)
    dump("sweep.json", {"kind": "sweep", "matrix": _matrix_json(m8),
                        "terms": TWO_POLE_TERMS,
                        "alpha_grid": [10.0 ** (-k) for k in range(2, 11)]})
    xs = np.sin(1.0 + np.arange(8, dtype=float)).astype(complex)
    signal("sweep_x.csv", xs)

    return written
