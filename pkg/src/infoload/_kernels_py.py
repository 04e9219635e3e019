"""Pure-numpy fallback for the grid utility kernel."""

import numpy as np

BACKEND = "python"

_EXP_CLIP = 700.0  # exp argument above this overflows float64


def utility_grid(grid, s_code, s_param, c_code, c_scale, c_param, gain, loss):
    """Expected utility at every grid point for one trader.

    Curve families are passed as integer codes so the compiled backend can
    share the same calling convention.
    """
    i = np.asarray(grid, dtype=np.float64)
    if s_code == 0:
        lam = -np.expm1(-s_param * i)
    else:
        lam = i / (i + s_param)
    if c_code == 0:
        cost = 0.0
    elif c_code == 1:
        with np.errstate(over="ignore"):
            cost = c_scale * np.power(i, c_param)
    else:
        arg = c_param * i
        cost = np.where(arg < _EXP_CLIP, c_scale * np.expm1(np.minimum(arg, _EXP_CLIP)), np.inf)
    return lam * gain - (1.0 - lam) * loss - cost
