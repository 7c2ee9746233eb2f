"""Bipartite b-matching between a left vertex set and vertices of capacity two.

Right vertices are duplicated into two copies; a plain augmenting-path matching
(Kuhn) runs on the copies. Sizes here are small, so the O(VE) bound is fine.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class DoubleMatching:
    """Maximum matching of ``left`` vertices into two copies of each ``right`` vertex.

    ``nbrs[x]`` lists the right-side neighbours of left vertex ``x``. After
    construction, ``mate[x]`` is the right vertex ``x`` is matched to (or absent)
    and ``owners[h]`` the (at most two) left vertices matched into ``h``.
    """

    def __init__(self, left: Sequence[int], right: Iterable[int], nbrs: Mapping[int, Sequence[int]]):
        self.left = list(left)
        self.right = sorted(right)
        self.nbrs = nbrs
        self.mate: dict[int, int] = {}
        self.owners: dict[int, list[int]] = {h: [] for h in self.right}
        for x in self.left:
            self._augment(x)

    def _augment(self, root: int) -> bool:
        owners, nbrs = self.owners, self.nbrs
        # BFS over left vertices; x -> y when y owns a right vertex adjacent to x
        came_from: dict[int, tuple[int, int] | None] = {root: None}
        queue = [root]
        for x in queue:
            for h in nbrs[x]:
                held = owners.get(h)
                if held is None:
                    continue
                if len(held) < 2:
                    self._flip(x, h, came_from)
                    return True
                for y in held:
                    if y not in came_from:
                        came_from[y] = (x, h)
                        queue.append(y)
        return False

    def _flip(self, x: int, h: int, came_from: dict[int, tuple[int, int] | None]) -> None:
        while True:
            old = self.mate.get(x)
            if old is not None:
                self.owners[old].remove(x)
            self.mate[x] = h
            self.owners[h].append(x)
            back = came_from[x]
            if back is None:
                return
            x, h = back

    def size(self) -> int:
        return len(self.mate)

    def saturated(self, h: int) -> bool:
        return len(self.owners[h]) == 2

    def reach_from_unmatched_left(self) -> tuple[set[int], set[int]]:
        """Left and right vertices reachable by alternating paths from unmatched left vertices."""
        left_seen = {x for x in self.left if x not in self.mate}
        right_seen: set[int] = set()
        stack = list(left_seen)
        while stack:
            x = stack.pop()
            for h in self.nbrs[x]:
                if h in right_seen or h not in self.owners:
                    continue
                right_seen.add(h)
                for y in self.owners[h]:
                    if y not in left_seen:
                        left_seen.add(y)
                        stack.append(y)
        return left_seen, right_seen
