"""Tiny text renderer shared by the demos."""

import numpy as np

SHADES = " .:-=+*#%@"


def render(values, q_rows=True):
    """Draw a (nq, np) grid with p increasing upwards and q to the right."""
    v = np.asarray(values, float)
    top = v.max() if v.max() > 0 else 1.0
    idx = np.minimum((v / top * (len(SHADES) - 1)).round().astype(int), len(SHADES) - 1)
    lines = []
    for k in range(v.shape[1] - 1, -1, -1):
        lines.append("|" + "".join(SHADES[idx[i, k]] * 2 for i in range(v.shape[0])) + "|")
    return "\n".join(lines)
