"""CSV and JSON encodings of probability tables.

Tables are written sparsely: only non-zero entries appear as rows.  Floats
use 17 significant digits in CSV (and Python's shortest round-trip repr in
JSON), so decoding reproduces every double exactly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

import numpy as np

from squeezestats.joint import Pmf2D
from squeezestats.total import Pmf1D


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def total_rows(pmf: Pmf1D) -> list[tuple[int, float]]:
    return [(int(n), float(w)) for n, w in enumerate(pmf.values) if w != 0.0]


def joint_rows(table: Pmf2D) -> list[tuple[int, int, float]]:
    w = table.bin_width
    i, j = np.nonzero(table.values)
    return [(int(a) * w, int(b) * w, float(table.values[a, b])) for a, b in zip(i, j)]


def rows_to_csv(header: Iterable[str], rows: Iterable[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def total_csv(pmf: Pmf1D) -> str:
    return rows_to_csv(["n", "W"], total_rows(pmf))


def joint_csv(table: Pmf2D) -> str:
    return rows_to_csv(["n1", "n2", "W"], joint_rows(table))


def total_document(pmf: Pmf1D, params: dict) -> dict:
    return {
        "params": params,
        "bounds": {"n_max": pmf.n_max},
        "tail_bound": pmf.tail_bound,
        "values": [[n, w] for n, w in total_rows(pmf)],
    }


def joint_document(table: Pmf2D) -> dict:
    return {
        "params": table.params.as_dict(),
        "bounds": {"n1_max": table.n1_max * table.bin_width, "n2_max": table.n2_max * table.bin_width, "bin_width": table.bin_width},
        "captured_mass": table.captured_mass,
        "values": [[a, b, w] for a, b, w in joint_rows(table)],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def read_csv_rows(text: str) -> tuple[list[str], list[list[float]]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[float(v) for v in row] for row in reader]


def total_values_from_rows(rows, n_max: int) -> np.ndarray:
    out = np.zeros(n_max + 1)
    for n, w in rows:
        out[int(n)] = w
    return out


def joint_values_from_rows(rows, shape: tuple[int, int], bin_width: int = 1) -> np.ndarray:
    out = np.zeros(shape)
    for n1, n2, w in rows:
        out[int(n1) // bin_width, int(n2) // bin_width] = w
    return out
