#!/usr/bin/env python3
"""Counting orbit points of the modular group in hyperbolic balls.

The number of group translates of w within hyperbolic distance s of z grows
like (pi/vol) e^s.  This demo counts exactly, checks the fast enumeration
against a brute-force matrix scan, and watches the normalized error term.
"""

import math

import numpy as np

from hypcircle import BallSpec, Point, brute_force_count, count_ball, required_entry_bound
from hypcircle.counting import list_distances

z = Point(0.0, 1.0)

print("exact counts at z = w = i:")
for s in (0.0, 1.0, 2.0, 4.0, 8.0, 12.0):
    n = count_ball(BallSpec(z, z, s))
    print(f"  N({s:4.1f}) = {n:10d}   N/3e^s = {n / (3.0 * math.exp(s)):.6f}")

print("\ncross-check against the entry-bounded scan (s <= 4):")
for s in (1.0, 2.5, 4.0):
    spec = BallSpec(z, z, s)
    fast = count_ball(spec)
    slow = brute_force_count(spec, required_entry_bound(spec))
    print(f"  s = {s}: fast = {fast}, brute force = {slow}, agree = {fast == slow}")

print("\nnormalized remainder e(s) = (N - 3e^s) e^(-s/2) along a grid:")
dist = list_distances(BallSpec(z, z, 12.0))
for s in np.arange(2.0, 12.5, 2.0):
    n = np.searchsorted(dist.values, s, side="right")
    e = (n - 3.0 * math.exp(s)) * math.exp(-0.5 * s)
    print(f"  s = {s:4.1f}:  N = {int(n):8d}   e(s) = {e:+.4f}")

print("\nthe remainder stays O(1) while N itself spans five orders of magnitude.")
