#!/usr/bin/env python3
"""Generate the triangular meshes used by the 2D benchmark cases.

Writes the ASCII format read by load_mesh_2d: a "nv nt nb" header, nv vertex
lines "x y", nt triangle lines "i j k" (0-based, counterclockwise) and nb
boundary edge lines "i j tag".
"""

import argparse
import os

import numpy as np
from scipy.spatial import Delaunay


def disk_points(radius, nrings):
    """Concentric rings of roughly uniform spacing, half-step staggered."""
    pts = [(0.0, 0.0)]
    for i in range(1, nrings + 1):
        r = radius * i / nrings
        m = max(6, int(round(2.0 * np.pi * i)))
        off = 0.5 / m if i % 2 else 0.0
        for k in range(m):
            a = 2.0 * np.pi * (k / m + off)
            pts.append((r * np.cos(a), r * np.sin(a)))
    return np.array(pts)


def orient_ccw(pts, tris):
    out = []
    for a, b, c in tris:
        u, v = pts[b] - pts[a], pts[c] - pts[a]
        cross = u[0] * v[1] - u[1] * v[0]
        out.append((a, b, c) if cross > 0 else (a, c, b))
    return np.array(out, dtype=int)


def boundary_edges(tris):
    """Edges that belong to exactly one triangle, as (v0, v1) pairs."""
    count = {}
    for a, b, c in tris:
        for e in ((a, b), (b, c), (c, a)):
            count[tuple(sorted(e))] = count.get(tuple(sorted(e)), 0) + 1
    return [e for e, n in count.items() if n == 1]


def disk_mesh(radius, nrings):
    pts = disk_points(radius, nrings)
    tris = orient_ccw(pts, Delaunay(pts).simplices)
    bedges = [(a, b, "outflow") for a, b in boundary_edges(tris)]
    return pts, tris, bedges


def disk_mesh_near(radius, target_tris):
    """Pick the ring count whose triangle count is closest to the target."""
    best = None
    for nr in range(8, 60):
        pts, tris, bedges = disk_mesh(radius, nr)
        gap = abs(len(tris) - target_tris)
        if best is None or gap < best[0]:
            best = (gap, pts, tris, bedges)
    return best[1], best[2], best[3]


def dmr_mesh(nx, ny):
    """Structured mesh of the ramp quad (0,0)-(2.2,1.2467)-(2.2,3)-(0,3).

    The bottom edge is the oblique wall, the top edge a straight wall,
    the left edge supersonic inflow and the right edge outflow.
    """
    xmax, yramp, ytop = 2.2, 1.2467, 3.0
    pts = []
    for j in range(ny + 1):
        for i in range(nx + 1):
            s = i / nx
            t = j / ny
            yb = yramp * s
            pts.append((xmax * s, yb + t * (ytop - yb)))
    pts = np.array(pts)

    def vid(i, j):
        return j * (nx + 1) + i

    tris = []
    for j in range(ny):
        for i in range(nx):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            if (i + j) % 2 == 0:
                tris += [(a, b, c), (a, c, d)]
            else:
                tris += [(a, b, d), (b, c, d)]
    tris = orient_ccw(pts, np.array(tris, dtype=int))

    bedges = []
    for i in range(nx):
        bedges.append((vid(i, 0), vid(i + 1, 0), "wall"))
        bedges.append((vid(i, ny), vid(i + 1, ny), "wall"))
    for j in range(ny):
        bedges.append((vid(0, j), vid(0, j + 1), "inflow"))
        bedges.append((vid(nx, j), vid(nx, j + 1), "outflow"))
    return pts, tris, bedges


def write_mesh(path, pts, tris, bedges):
    with open(path, "w") as f:
        f.write(f"{len(pts)} {len(tris)} {len(bedges)}\n")
        for x, y in pts:
            f.write(f"{x:.16g} {y:.16g}\n")
        for a, b, c in tris:
            f.write(f"{a} {b} {c}\n")
        for a, b, tag in bedges:
            f.write(f"{a} {b} {tag}\n")
    print(f"{path}: {len(pts)} vertices, {len(tris)} triangles, {len(bedges)} boundary edges")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="meshes", help="output directory")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    pts, tris, be = disk_mesh_near(1.0, 3576)
    write_mesh(os.path.join(args.out, "disk1.txt"), pts, tris, be)

    for name, nr in (("disk10_coarse", 12), ("disk10_mid", 18), ("disk10_fine", 27)):
        pts, tris, be = disk_mesh(10.0, nr)
        write_mesh(os.path.join(args.out, f"{name}.txt"), pts, tris, be)

    pts, tris, be = dmr_mesh(44, 30)
    write_mesh(os.path.join(args.out, "dmr.txt"), pts, tris, be)


if __name__ == "__main__":
    main()
