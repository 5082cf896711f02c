"""Numba-jitted kernel evaluation: the accelerated backend.

Same contract as ``_kernels_np.eval_kernel``, fused into a single pass per
point.  fastmath stays off so both backends agree to the last few ulps.
"""

import math

import numpy as np
from numba import njit

from ._kernels_np import (
    K_LP,
    K_RECIP_LP,
    K_SHEET_PHASE,
    K_UNIT,
    S_ABS,
    S_CONST,
    S_ID,
    S_LOG,
    S_RECIP,
    S_RECIPLOG,
    TWO_PI,
)


@njit(cache=True)
def _eval(pts, code, k, scale, sheet_code, c_re, c_im, ph_re, ph_im):
    npts, ndim = pts.shape
    out = np.empty(npts, dtype=np.complex128)
    if code == K_UNIT:
        for i in range(npts):
            out[i] = 1.0 + 0.0j
        return out
    inv_k = 1.0 / k
    for i in range(npts):
        s = 0.0
        for j in range(ndim):
            s += pts[i, j] ** k
        lp = s ** inv_k
        if code == K_LP:
            out[i] = complex(lp, 0.0)
        elif code == K_RECIP_LP:
            out[i] = complex(1.0 / lp, 0.0)
        else:
            r = lp / scale
            if sheet_code == S_CONST:
                out[i] = complex(c_re, c_im)
            elif sheet_code == S_ID or sheet_code == S_RECIP:
                sgn = 1.0 if sheet_code == S_ID else -1.0
                mag = math.exp(-TWO_PI * sgn * ph_im * r)
                ang = TWO_PI * sgn * ph_re * r
                out[i] = complex(mag * math.cos(ang), mag * math.sin(ang))
            elif sheet_code == S_LOG:
                out[i] = complex(-TWO_PI * r * ph_im, TWO_PI * r * ph_re)
            elif sheet_code == S_RECIPLOG:
                d_re = -TWO_PI * r * ph_im
                d_im = TWO_PI * r * ph_re
                den = d_re * d_re + d_im * d_im
                out[i] = complex(d_re / den, -d_im / den)
            else:
                out[i] = complex(math.exp(-TWO_PI * ph_im * r), 0.0)
    return out


def eval_kernel(pts, code, k, scale, sheet_code, c_re, c_im, ph_re, ph_im):
    return _eval(
        np.ascontiguousarray(pts),
        code,
        k,
        scale,
        sheet_code,
        c_re,
        c_im,
        ph_re,
        ph_im,
    )
