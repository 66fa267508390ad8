#!/usr/bin/env python3
"""Fractional integration: closed forms and smoothing of the error term.

The fractional integral of order a interpolates between the identity (a -> 0)
and the running integral (a = 1).  On the lattice-point remainder it damps
the jumps while keeping the oscillation visible.
"""

import math

import numpy as np

from hypcircle import FracOrder, Point, SampledSeries, frac_integrate
from hypcircle.counting import BallSpec, list_distances
from hypcircle.experiments import sample_e_alpha, sample_error

step = 1.0 / 512.0
n = int(8.0 / step) + 1
grid = step * np.arange(n)

print("closed-form checks: the operator applied to 1 gives s^a/Gamma(a+1):")
ones = SampledSeries(0.0, step, np.ones(n))
for alpha in (0.25, 0.5, 0.75):
    out = frac_integrate(ones, FracOrder(alpha)).values
    s = 5.0
    k = int(round(s / step))
    ref = s ** alpha / math.gamma(alpha + 1.0)
    print(f"  a = {alpha}: I_a(1)(5) = {out[k]:.10f}   exact {ref:.10f}")

print("\nsmoothing the lattice remainder (z = w = i, radius up to 8):")
z = Point(0.0, 1.0)
dist = list_distances(BallSpec(z, z, 8.0))
e = sample_error(z, z, 8.0, distances=dist)
print(f"  raw remainder:   sup |e|  = {np.max(np.abs(e.values)):.3f}")
for alpha in (0.25, 0.5, 0.9):
    ea = sample_e_alpha(z, z, alpha, 8.0, distances=dist)
    print(f"  order a = {alpha}: sup |e_a| = {np.max(np.abs(ea.values)):.3f}")

print("\nhigher order integrates away more of the roughness; above a = 1/2 the")
print("result is a bounded, almost periodic-looking signal.")
