"""Pure-Python kernels, used when the compiled extension is unavailable.

Must stay bit-for-bit equivalent to _core.pyx; tests/test_kernels.py
checks the two implementations against each other.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def rainbow_hit_time(edges_flat, offsets, pos, colors):
    """Smallest m such that the first m elements of the trial permutation
    contain a rainbow edge; len(pos)+1 when no edge is ever rainbow.

    pos[v] is the position of vertex v in the permutation (0-based);
    colors[v] >= 1 is the color v would receive once sampled.
    """
    n = len(pos)
    best = n + 1
    for ei in range(len(offsets) - 1):
        lo, hi = offsets[ei], offsets[ei + 1]
        verts = edges_flat[lo:hi]
        ok = True
        t = 0
        for i in range(len(verts)):
            ci = colors[verts[i]]
            for j in range(i + 1, len(verts)):
                if ci == colors[verts[j]]:
                    ok = False
                    break
            if not ok:
                break
            p = pos[verts[i]]
            if p > t:
                t = p
        if ok and t + 1 < best:
            best = t + 1
    return best


def cover_hit_time(edges_flat, offsets, pos):
    """Uncolored variant of rainbow_hit_time (plain edge containment)."""
    n = len(pos)
    best = n + 1
    for ei in range(len(offsets) - 1):
        lo, hi = offsets[ei], offsets[ei + 1]
        t = 0
        for v in edges_flat[lo:hi]:
            p = pos[v]
            if p > t:
                t = p
        if t + 1 < best:
            best = t + 1
    return best


def first_rainbow_edge(edges_flat, offsets, wcolor):
    """Lowest edge index fully inside the colored set and rainbow, else -1.

    wcolor[v] is the assigned color (>= 1), or 0 when v is unsampled.
    """
    for ei in range(len(offsets) - 1):
        lo, hi = offsets[ei], offsets[ei + 1]
        verts = edges_flat[lo:hi]
        ok = True
        for i in range(len(verts)):
            ci = wcolor[verts[i]]
            if ci == 0:
                ok = False
                break
            for j in range(i + 1, len(verts)):
                if ci == wcolor[verts[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return ei
    return -1
