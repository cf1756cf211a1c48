"""
CSV and JSON writers for grids, comparison reports and hump catalogs.

CSV files always start with a header row and list rows in a fixed order;
floats are written with 17 significant digits so values round-trip.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .coherent import HusimiGrid
from .semiclassical import ComparisonReport, HumpDescriptor


def _f(x) -> str:
    return f"{float(x):.17g}"


def write_grid_csv(fh, q, p, values) -> None:
    """Rows (q, p, value), q-major."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["q", "p", "value"])
    for i, qi in enumerate(q):
        for k, pk in enumerate(p):
            w.writerow([_f(qi), _f(pk), _f(values[i, k])])


def read_grid_csv(fh):
    """Inverse of write_grid_csv: returns (q, p, values)."""
    rows = list(csv.reader(fh))
    if rows[0] != ["q", "p", "value"]:
        raise ValueError(f"unexpected header {rows[0]!r}")
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    q = np.unique(data[:, 0])
    p = np.unique(data[:, 1])
    return q, p, data[:, 2].reshape(len(q), len(p))


def husimi_csv(grid: HusimiGrid, fh) -> None:
    write_grid_csv(fh, grid.q, grid.p, grid.values)


def husimi_envelope(grid: HusimiGrid, extra: dict | None = None) -> dict:
    meta = dict(grid.metadata)
    if extra:
        meta.update(extra)
    return {"metadata": meta,
            "q": [float(x) for x in grid.q],
            "p": [float(x) for x in grid.p],
            "values": [[float(v) for v in row] for row in grid.values]}


def comparison_envelope(report: ComparisonReport, extra: dict | None = None) -> dict:
    meta = dict(report.metadata)
    if extra:
        meta.update(extra)
    humps = []
    for h, e, s, rel in zip(report.humps, report.hump_exact, report.hump_semiclassical,
                            report.hump_height_errors):
        humps.append({"kappa": h.kappa, "b1": h.b1, "b2": h.b2, "weight": h.weight,
                      "is_classical": h.is_classical, "exact": float(e),
                      "semiclassical": float(s), "relative_error": float(rel)})
    return {"metadata": meta, "linf_error": report.linf_error,
            "l2_error": report.l2_error, "humps": humps}


def humps_csv(catalog: list[HumpDescriptor], fh, singular: bool = False) -> None:
    """Hump catalog rows; refuses to write weights that do not sum to one."""
    total = sum(h.weight for h in catalog)
    if abs(total - 1.0) > 1e-10:
        raise ArithmeticError(f"hump weights sum to {total!r}, not 1")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["kappa", "b1", "b2", "weight", "is_classical", "singular"])
    for h in catalog:
        w.writerow([h.kappa, _f(h.b1), _f(h.b2), _f(h.weight), int(h.is_classical), int(singular)])


def psi_curve_csv(fh, a2, kappas, curves, singular) -> None:
    """Columns a2, psi2_k<kappa>..., singular; one row per a2 sample."""
    total = curves.sum(axis=0)
    if np.any(np.abs(total - 1.0) > 1e-10):
        raise ArithmeticError("Psi^2 curves do not sum to one")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["a2"] + [f"psi2_k{k}" for k in kappas] + ["singular"])
    for i, x in enumerate(a2):
        w.writerow([_f(x)] + [_f(c[i]) for c in curves] + [int(singular[i])])


def dump_json(obj, fh) -> None:
    json.dump(obj, fh, indent=2, sort_keys=True)
    fh.write("\n")
