"""Pure-numpy kernel evaluation: the fallback backend.

Mirrors ``_kernels_nb`` exactly; see ``backend`` for how one of the two is
selected.  Overflow and division by zero are left to produce inf/NaN here;
the integration layer turns non-finite values into NonFiniteIntegrand.
"""

import numpy as np

TWO_PI = 6.283185307179586

K_UNIT = 0
K_LP = 1
K_RECIP_LP = 2
K_SHEET_PHASE = 3

S_CONST = 0
S_ID = 1
S_RECIP = 2
S_LOG = 3
S_RECIPLOG = 4
S_ABS = 5


def eval_kernel(pts, code, k, scale, sheet_code, c_re, c_im, ph_re, ph_im):
    """Evaluate one structured kernel at a (N, n) block of box points.

    ``(ph_re, ph_im)`` is i^k; ``scale`` divides the point norm to give the
    phase radius r.  Returns complex128 of length N.
    """
    npts = pts.shape[0]
    if code == K_UNIT:
        return np.ones(npts, dtype=np.complex128)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore", under="ignore"):
        s = np.sum(pts ** k, axis=1)
        lp = s ** (1.0 / k)
        if code == K_LP:
            return lp.astype(np.complex128)
        if code == K_RECIP_LP:
            return (1.0 / lp).astype(np.complex128)
        r = lp / scale
        if sheet_code == S_CONST:
            return np.full(npts, complex(c_re, c_im))
        if sheet_code == S_ID or sheet_code == S_RECIP:
            sgn = 1.0 if sheet_code == S_ID else -1.0
            mag = np.exp(-TWO_PI * sgn * ph_im * r)
            ang = TWO_PI * sgn * ph_re * r
            return mag * (np.cos(ang) + 1j * np.sin(ang))
        if sheet_code == S_LOG:
            return (TWO_PI * r) * complex(-ph_im, ph_re)
        if sheet_code == S_RECIPLOG:
            return 1.0 / ((TWO_PI * r) * complex(-ph_im, ph_re))
        if sheet_code == S_ABS:
            return np.exp(-TWO_PI * ph_im * r).astype(np.complex128)
    raise ValueError(f"unknown kernel/sheet code ({code}, {sheet_code})")
