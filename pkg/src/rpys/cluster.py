"""Variant aggregation: group cited-reference spellings denoting one work.

Matching is classic record linkage: references are blocked by reference
publication year (clusters never span years -- a cross-year merge would
corrupt the spectrum even when the variants denote one work), compared
pairwise on normalized keys with Levenshtein similarity, and merged by
transitive closure over a union-find. Two references land in one cluster
iff a chain of pairwise similarities >= threshold connects them inside
their year block.

Exhaustive pairwise comparison within a block is made affordable by three
exact shortcuts that never change the result:

  * entries with identical keys merge without any distance computation;
  * a pair already in the same component is skipped;
  * a character-bag bound (a true lower bound on edit distance, computed
    for a whole block with numpy) prunes pairs that provably cannot reach
    the threshold, and the banded distance of the survivors stops early
    once the allowance is exceeded.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .refs import CitedRef, normalize_key

Member = tuple[CitedRef, int]


@dataclass(frozen=True)
class ClusterConfig:
    threshold: float = 0.75
    block_by_year: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")
        if not self.block_by_year:
            raise ValueError("year blocking is fixed on; clusters never span years")


@dataclass(frozen=True)
class RefCluster:
    """A set of spelling variants judged to denote the same cited work."""

    cluster_id: int
    canonical: CitedRef
    members: tuple[Member, ...]
    tcr: int

    def __post_init__(self) -> None:
        if self.tcr != sum(count for _, count in self.members):
            raise ValueError("tcr must equal the sum of member occurrence counts")
        years = {ref.rpy for ref, _ in self.members}
        if len(years) > 1:
            raise ValueError("cluster members must share one rpy")


def levenshtein(a: str, b: str) -> int:
    """Plain two-row edit distance."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """1 - edit_distance / max length, on normalized keys; 1.0 for two empties."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def _levenshtein_within(a: str, b: str, allowance: int) -> int | None:
    """Banded edit distance; None as soon as it provably exceeds allowance."""
    la, lb = len(a), len(b)
    if la > lb:
        a, b, la, lb = b, a, lb, la
    if lb - la > allowance:
        return None
    if allowance == 0:
        return 0 if a == b else None
    big = allowance + 1
    prev = list(range(la + 1))
    for j in range(1, lb + 1):
        cj = b[j - 1]
        lo = max(1, j - allowance)
        hi = min(la, j + allowance)
        cur = [big] * (la + 1)
        if lo == 1:
            cur[0] = j if j <= allowance else big
        best = cur[0]
        for i in range(lo, hi + 1):
            cost = prev[i - 1] + (a[i - 1] != cj)
            above = prev[i] + 1
            if above < cost:
                cost = above
            left = cur[i - 1] + 1
            if left < cost:
                cost = left
            cur[i] = cost
            if cost < best:
                best = cost
        if best > allowance:
            return None
        prev = cur
    return prev[la] if prev[la] <= allowance else None


def _max_allowed_distance(threshold: float, longest: int) -> int:
    """Largest integer distance d with 1 - d/longest >= threshold (float exact)."""
    d = int((1.0 - threshold) * longest)
    while d + 1 <= longest and 1.0 - (d + 1) / longest >= threshold:
        d += 1
    while d > 0 and 1.0 - d / longest < threshold:
        d -= 1
    return d


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def elect_canonical(members: list[Member] | tuple[Member, ...]) -> CitedRef:
    """The most frequent member; ties go to the smallest normalized key."""
    if not members:
        raise ValueError("members must be non-empty")
    return min(members, key=lambda m: (-m[1], normalize_key(m[0]), m[0].raw))[0]


def _char_count_matrix(keys: list[str]) -> np.ndarray:
    alphabet = {c: i for i, c in enumerate(sorted(set().union(*keys)))}
    counts = np.zeros((len(keys), len(alphabet)), dtype=np.int32)
    for row, key in enumerate(keys):
        for ch in key:
            counts[row, alphabet[ch]] += 1
    return counts


def _merge_block(keys: list[str], threshold: float) -> _UnionFind:
    """Union keys of one year block by transitive similarity closure."""
    n = len(keys)
    uf = _UnionFind(n)
    if n < 2 or threshold == 1.0:
        return uf  # distinct keys cannot merge at threshold 1
    if threshold <= 0.0:
        for i in range(1, n):
            uf.union(0, i)
        return uf

    lengths = np.array([len(k) for k in keys], dtype=np.int32)
    counts = _char_count_matrix(keys)
    slack = 1.0 - threshold
    for i in range(n - 1):
        longest = np.maximum(lengths[i], lengths[i + 1:])
        # conservative integer allowance; survivors get the exact check
        cap = np.floor(slack * longest).astype(np.int64) + 1
        diff = counts[i] - counts[i + 1:]
        bag = np.maximum(
            np.clip(diff, 0, None).sum(axis=1),
            np.clip(-diff, 0, None).sum(axis=1),
        )
        for j_off in np.nonzero(bag <= cap)[0]:
            j = i + 1 + int(j_off)
            if uf.find(i) == uf.find(j):
                continue
            allowed = _max_allowed_distance(threshold, int(longest[j_off]))
            if _levenshtein_within(keys[i], keys[j], allowed) is not None:
                uf.union(i, j)
    return uf


def cluster_refs(
    refs: list[Member] | tuple[Member, ...], config: ClusterConfig | None = None
) -> list[RefCluster]:
    """Partition (CitedRef, occurrence_count) entries into variant clusters.

    Every input entry appears in exactly one cluster, so total occurrence
    counts are conserved. Output is ordered by descending tcr, ties by
    ascending canonical key; cluster ids follow that order starting at 1.
    The result is invariant under permutation of the input.
    """
    config = config or ClusterConfig()
    if any(count < 1 for _, count in refs):
        raise ValueError("occurrence counts must be >= 1")

    blocks: dict[int | None, dict[str, list[int]]] = {}
    keys = [normalize_key(ref) for ref, _ in refs]
    for idx, (ref, _) in enumerate(refs):
        blocks.setdefault(ref.rpy, {}).setdefault(keys[idx], []).append(idx)

    clusters: list[tuple[CitedRef, tuple[Member, ...], int]] = []
    for _, by_key in sorted(blocks.items(), key=lambda kv: (kv[0] is None, kv[0])):
        unique_keys = sorted(by_key)
        uf = _merge_block(unique_keys, config.threshold)
        components: dict[int, list[int]] = {}
        for key_idx in range(len(unique_keys)):
            components.setdefault(uf.find(key_idx), []).extend(
                by_key[unique_keys[key_idx]]
            )
        for _, indices in sorted(components.items()):
            members = sorted(
                (refs[i] for i in indices),
                key=lambda m: (-m[1], normalize_key(m[0]), m[0].raw),
            )
            tcr = sum(count for _, count in members)
            clusters.append((elect_canonical(members), tuple(members), tcr))

    clusters.sort(key=lambda c: (-c[2], normalize_key(c[0])))
    return [
        RefCluster(cluster_id=i, canonical=canonical, members=members, tcr=tcr)
        for i, (canonical, members, tcr) in enumerate(clusters, start=1)
    ]
