"""Pure-Python reachability kernel.

Fallback used when the compiled extension is unavailable; same contract as
fuzzonto._closure_cy.reachable_pairs.
"""

from __future__ import annotations


def reachable_pairs(
    n: int, edges, limit: int = 0
) -> list[tuple[int, int]]:
    """All pairs (u, v) such that v is reachable from u by a path of length >= 1.

    Nodes are 0..n-1.  A pair (u, u) appears exactly when u lies on a cycle.
    Output is sorted.  When limit > 0 and the result would exceed limit pairs,
    OverflowError is raised.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if (u, v) not in seen:
            seen.add((u, v))
            adj[u].append(v)

    pairs: list[tuple[int, int]] = []
    for s in range(n):
        visited = bytearray(n)
        stack = list(adj[s])
        while stack:
            v = stack.pop()
            if not visited[v]:
                visited[v] = 1
                stack.extend(adj[v])
        pairs.extend((s, v) for v in range(n) if visited[v])
        if limit and len(pairs) > limit:
            raise OverflowError(f"reachable pair count exceeds limit {limit}")
    return pairs
