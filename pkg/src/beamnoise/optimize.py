"""Bracketed one-dimensional minimization."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200):
    """Minimize a unimodal ``f`` on [lo, hi]; returns (x_min, f_min).

    Stops once the bracket is narrower than ``tol``. Ties go to the left point.
    """
    if hi < lo:
        lo, hi = hi, lo
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    # the endpoints are candidates too: the minimum may sit on the boundary
    candidates = [(lo, f(lo)), (c, fc), (d, fd), (hi, f(hi))]
    x_best, f_best = min(candidates, key=lambda t: (t[1], t[0]))
    return x_best, f_best


def scan_bracket(f: Callable[[float], float], lo: float, hi: float, points: int = 64):
    """Coarse scan; returns a sub-interval around the smallest sample."""
    xs = np.linspace(lo, hi, points)
    fs = np.array([f(x) for x in xs])
    i = int(np.argmin(fs))  # first minimum, i.e. the smaller x on ties
    return float(xs[max(i - 1, 0)]), float(xs[min(i + 1, points - 1)])


def minimize_scalar_bracketed(f, lo, hi, tol=1e-10, scan_points=64):
    a, b = scan_bracket(f, lo, hi, scan_points)
    return golden_section(f, a, b, tol)
