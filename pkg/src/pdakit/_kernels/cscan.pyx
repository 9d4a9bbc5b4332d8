# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled same-symbol pair scan; mirrors pyscan.c3_pair_scan exactly."""


def c3_pair_scan(const int[:, ::1] grid,
                 const long long[::1] rows,
                 const long long[::1] cols,
                 const long long[::1] starts):
    out = []
    cdef Py_ssize_t g, i, j, lo, hi
    cdef long long r1, c1, r2, c2
    for g in range(starts.shape[0] - 1):
        lo = <Py_ssize_t> starts[g]
        hi = <Py_ssize_t> starts[g + 1]
        for i in range(lo, hi):
            r1 = rows[i]
            c1 = cols[i]
            for j in range(i + 1, hi):
                r2 = rows[j]
                c2 = cols[j]
                if r1 == r2 or c1 == c2:
                    out.append((0, r1, c1, r2, c2))
                elif grid[<Py_ssize_t> r1, <Py_ssize_t> c2] != 0 or \
                        grid[<Py_ssize_t> r2, <Py_ssize_t> c1] != 0:
                    out.append((1, r1, c1, r2, c2))
    return out
