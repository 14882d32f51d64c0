#!/usr/bin/env python3
# Copyright 2026 The Collcone Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes the obstacle-E point cloud used by sim1.yaml.

Uniform samples on the ten faces of a pentagonal bipyramid whose apex axis is
tilted in the y-z plane.
"""

import argparse

import numpy as np


def bipyramid(radius, half_height, count, tilt_deg, seed):
    rng = np.random.default_rng(seed)
    t = 2.0 * np.pi * np.arange(5) / 5.0
    ring = np.stack([radius * np.cos(t), np.zeros(5), radius * np.sin(t)], axis=1)
    pts = []
    for _ in range(count):
        f = rng.integers(10)
        apex = np.array([0.0, half_height if f < 5 else -half_height, 0.0])
        p1, p2 = ring[f % 5], ring[(f % 5 + 1) % 5]
        u, v = rng.random(2)
        if u + v > 1.0:
            u, v = 1.0 - u, 1.0 - v
        pts.append(apex + u * (p1 - apex) + v * (p2 - apex))
    a = np.radians(tilt_deg)
    rot = np.array([[1, 0, 0], [0, np.cos(a), -np.sin(a)], [0, np.sin(a), np.cos(a)]])
    return np.asarray(pts) @ rot.T


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--radius", type=float, default=6.0)
    ap.add_argument("--half-height", type=float, default=22.0)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--tilt-deg", type=float, default=35.0)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    pts = bipyramid(args.radius, args.half_height, args.count, args.tilt_deg, args.seed)
    with open(args.out, "w") as fh:
        fh.write("# pentagonal bipyramid, offsets from the obstacle center\n")
        fh.write("x,y,z\n")
        for p in pts:
            fh.write("%.6f,%.6f,%.6f\n" % tuple(p))


if __name__ == "__main__":
    main()
