"""Compensated (double-double) arithmetic for series with heavy cancellation.

A double-double value is an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
giving ~31 significant decimal digits.  Only the handful of operations the
series kernels need are provided; everything is numpy-vectorized and works
on scalars and arrays alike.

The error-free transforms use Dekker's product split (no FMA assumption).
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    """Error-free a + b = s + e."""
    s = a + b
    v = s - a
    e = (a - (s - v)) + (b - v)
    return s, e


def quick_two_sum(a, b):
    """Error-free a + b = s + e assuming |a| >= |b|."""
    s = a + b
    e = b - (s - a)
    return s, e


def two_prod(a, b):
    """Error-free a * b = p + e via Dekker splitting."""
    p = a * b
    ca = _SPLIT * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLIT * b
    bh = cb - (cb - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def dd_add(xh, xl, yh, yl):
    sh, se = two_sum(xh, yh)
    te = se + xl + yl
    return quick_two_sum(sh, te)


def dd_mul(xh, xl, yh, yl):
    ph, pe = two_prod(xh, yh)
    pe = pe + xh * yl + xl * yh
    return quick_two_sum(ph, pe)


def dd_mul_d(xh, xl, d):
    ph, pe = two_prod(xh, d)
    pe = pe + xl * d
    return quick_two_sum(ph, pe)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    # r = x - q1*y, evaluated in double-double
    th, tl = dd_mul_d(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = (rh + rl) / yh
    return quick_two_sum(q1, q2)


# Complex double-double values are 4-tuples (re_hi, re_lo, im_hi, im_lo).

def cdd_from_complex(z):
    z = np.asarray(z)
    re = np.real(z).astype(float)
    im = np.imag(z).astype(float)
    return re, np.zeros_like(re), im, np.zeros_like(im)


def cdd_add(x, y):
    rh, rl = dd_add(x[0], x[1], y[0], y[1])
    ih, il = dd_add(x[2], x[3], y[2], y[3])
    return rh, rl, ih, il


def cdd_mul(x, y):
    ac_h, ac_l = dd_mul(x[0], x[1], y[0], y[1])
    bd_h, bd_l = dd_mul(x[2], x[3], y[2], y[3])
    ad_h, ad_l = dd_mul(x[0], x[1], y[2], y[3])
    bc_h, bc_l = dd_mul(x[2], x[3], y[0], y[1])
    rh, rl = dd_add(ac_h, ac_l, -bd_h, -bd_l)
    ih, il = dd_add(ad_h, ad_l, bc_h, bc_l)
    return rh, rl, ih, il


def cdd_div_dd(x, dh, dl):
    """Complex double-double divided by a real double-double."""
    rh, rl = dd_div(x[0], x[1], dh, dl)
    ih, il = dd_div(x[2], x[3], dh, dl)
    return rh, rl, ih, il


def cdd_to_complex(x):
    return (x[0] + x[1]) + 1j * (x[2] + x[3])


def cdd_abs(x):
    return np.abs(cdd_to_complex(x))
