"""Independent brute-force oracles the tests compare the package against.

Each oracle re-derives its quantity from the definition, avoiding the
package's own code paths: full-matrix edit distance, explicit truncated
windows with a sort-based median, closed-form fractional ranks, and a
breadth-first transitive closure for clustering.
"""
from __future__ import annotations


def levenshtein_dp(a: str, b: str) -> int:
    """Textbook full dynamic-programming matrix."""
    rows, cols = len(a) + 1, len(b) + 1
    dist = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        dist[i][0] = i
    for j in range(cols):
        dist[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            dist[i][j] = min(
                dist[i - 1][j] + 1,
                dist[i][j - 1] + 1,
                dist[i - 1][j - 1] + (a[i - 1] != b[j - 1]),
            )
    return dist[-1][-1]


def similarity_oracle(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    return 1.0 if longest == 0 else 1.0 - levenshtein_dp(a, b) / longest


def window_median_oracle(counts: list[int], index: int) -> float:
    """Median over the explicit truncated window [index-2, index+2]."""
    window = sorted(
        counts[i] for i in range(index - 2, index + 3) if 0 <= i < len(counts)
    )
    mid = len(window) // 2
    if len(window) % 2:
        return window[mid]
    return (window[mid - 1] + window[mid]) / 2


def hazen_oracle(counts: list[int]) -> list[tuple[float, float]]:
    """(rank, quantile) per year from the closed-form fractional rank."""
    n = len(counts)
    out = []
    for c in counts:
        less = sum(1 for other in counts if other < c)
        equal = sum(1 for other in counts if other == c)
        rank = less + (equal + 1) / 2
        out.append((rank, (rank - 0.5) / n * 100))
    return out


def cluster_partition_oracle(
    keyed: list[tuple[str, int | None]], threshold: float
) -> list[frozenset[int]]:
    """Transitive closure by breadth-first search over similar same-year pairs.

    Takes (normalized key, rpy) per input index; returns the partition as
    a set of index-frozensets, order-free for comparison.
    """
    n = len(keyed)
    adjacent: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if keyed[i][1] != keyed[j][1]:
                continue
            if similarity_oracle(keyed[i][0], keyed[j][0]) >= threshold:
                adjacent[i].append(j)
                adjacent[j].append(i)
    seen: set[int] = set()
    groups = []
    for start in range(n):
        if start in seen:
            continue
        frontier = [start]
        component = set()
        while frontier:
            node = frontier.pop()
            if node in component:
                continue
            component.add(node)
            frontier.extend(adjacent[node])
        seen |= component
        groups.append(frozenset(component))
    return groups


def cr_line_count(text: str) -> int:
    """Count cited-reference lines straight off the export text.

    A CR tag line plus every non-blank continuation line that follows it
    before the next tag/terminator is one cited reference each.
    """
    total = 0
    in_cr = False
    for line in text.splitlines():
        if line.startswith("CR ") or line.rstrip() == "CR":
            if line[3:].strip():
                total += 1
            in_cr = True
        elif line.startswith("   "):
            if in_cr and line[3:].strip():
                total += 1
        else:
            in_cr = False
    return total
