# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reachability kernel: per-source DFS over a CSR adjacency."""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


def reachable_pairs(int n, edges, long limit=0):
    """All pairs (u, v) with v reachable from u by a path of length >= 1.

    Same contract as fuzzonto._closure_py.reachable_pairs: sorted output,
    (u, u) included exactly when u lies on a cycle, OverflowError once the
    result would exceed `limit` pairs (0 disables the bound).
    """
    cdef list edge_list = sorted(set((int(u), int(v)) for u, v in edges))
    cdef Py_ssize_t m = len(edge_list)
    cdef Py_ssize_t i, s, top, pos
    cdef int u, v, w
    cdef long produced = 0

    for u, v in edge_list:
        if u < 0 or u >= n or v < 0 or v >= n:
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")

    if n == 0:
        return []

    # CSR adjacency
    cdef int *starts = <int *> malloc((n + 1) * sizeof(int))
    cdef int *targets = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef int *stack = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef char *visited = <char *> malloc(n)
    if starts == NULL or targets == NULL or stack == NULL or visited == NULL:
        free(starts); free(targets); free(stack); free(visited)
        raise MemoryError()

    cdef list pairs = []
    try:
        memset(starts, 0, (n + 1) * sizeof(int))
        for i in range(m):
            u = edge_list[i][0]
            starts[u + 1] += 1
        for i in range(n):
            starts[i + 1] += starts[i]
        for i in range(m):
            u = edge_list[i][0]
            v = edge_list[i][1]
            # edge_list is sorted, so filling in order keeps CSR rows sorted
            targets[starts[u]] = v
            starts[u] += 1
        for i in range(n, 0, -1):
            starts[i] = starts[i - 1]
        starts[0] = 0

        for s in range(n):
            memset(visited, 0, n)
            top = 0
            for pos in range(starts[s], starts[s + 1]):
                stack[top] = targets[pos]
                top += 1
            while top > 0:
                top -= 1
                w = stack[top]
                if visited[w]:
                    continue
                visited[w] = 1
                for pos in range(starts[w], starts[w + 1]):
                    v = targets[pos]
                    if not visited[v]:
                        stack[top] = v
                        top += 1
            for v in range(n):
                if visited[v]:
                    pairs.append((s, v))
                    produced += 1
            if limit and produced > limit:
                raise OverflowError(f"reachable pair count exceeds limit {limit}")
    finally:
        free(starts)
        free(targets)
        free(stack)
        free(visited)
    return pairs
