# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for the Monte Carlo paths.

Semantics must match pyfallback.py exactly; see tests/test_kernels.py.
"""

import numpy as np

IMPLEMENTATION = "cython"


def rainbow_hit_time(long long[::1] edges_flat, long long[::1] offsets,
                     long long[::1] pos, long long[::1] colors):
    cdef Py_ssize_t n = pos.shape[0]
    cdef long long best = n + 1
    cdef Py_ssize_t ei, i, j, lo, hi
    cdef long long t, p, ci
    cdef bint ok
    for ei in range(offsets.shape[0] - 1):
        lo = offsets[ei]
        hi = offsets[ei + 1]
        ok = True
        t = 0
        for i in range(lo, hi):
            ci = colors[edges_flat[i]]
            for j in range(i + 1, hi):
                if ci == colors[edges_flat[j]]:
                    ok = False
                    break
            if not ok:
                break
            p = pos[edges_flat[i]]
            if p > t:
                t = p
        if ok and t + 1 < best:
            best = t + 1
    return best


def cover_hit_time(long long[::1] edges_flat, long long[::1] offsets,
                   long long[::1] pos):
    cdef Py_ssize_t n = pos.shape[0]
    cdef long long best = n + 1
    cdef Py_ssize_t ei, i, lo, hi
    cdef long long t, p
    for ei in range(offsets.shape[0] - 1):
        lo = offsets[ei]
        hi = offsets[ei + 1]
        t = 0
        for i in range(lo, hi):
            p = pos[edges_flat[i]]
            if p > t:
                t = p
        if t + 1 < best:
            best = t + 1
    return best


def first_rainbow_edge(long long[::1] edges_flat, long long[::1] offsets,
                       long long[::1] wcolor):
    cdef Py_ssize_t ei, i, j, lo, hi
    cdef long long ci
    cdef bint ok
    for ei in range(offsets.shape[0] - 1):
        lo = offsets[ei]
        hi = offsets[ei + 1]
        ok = True
        for i in range(lo, hi):
            ci = wcolor[edges_flat[i]]
            if ci == 0:
                ok = False
                break
            for j in range(i + 1, hi):
                if ci == wcolor[edges_flat[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return ei
    return -1
