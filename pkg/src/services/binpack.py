"""Exact minimum bin count (K_min) for a demand multiset.

The search proceeds bound-first: the continuous bound L1 and the
Martello-Toth bound L2 are compared with the best of first-fit decreasing
and two minimum-slack packings, and only a remaining gap triggers
branch-and-bound.
"""

import bisect
import math
import time
from collections import Counter
from dataclasses import dataclass, field

from src.core.exceptions import BinPackInfeasibleError
from src.core.logging import get_logger
from src.models.binpack import BinPackMethod, BinPackProblem, BinPackResult

logger = get_logger(__name__)

# Deadline is checked every this many nodes
_CLOCK_STRIDE = 256


def _check_feasible(problem: BinPackProblem) -> None:
    if problem.items and max(problem.items) > problem.capacity:
        raise BinPackInfeasibleError(
            f"item {max(problem.items)} exceeds capacity {problem.capacity}",
            details={"item": max(problem.items), "capacity": problem.capacity},
        )


def _ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def lb_l1(problem: BinPackProblem) -> int:
    """Continuous lower bound ceil(sum / capacity)."""
    return _ceil_div(problem.total, problem.capacity)


def lb_l2(problem: BinPackProblem) -> int:
    """Martello-Toth L2 lower bound, maximised over thresholds k <= C/2.

    Items are grouped by value, so the work is quadratic in the number of
    distinct sizes only.
    """
    if not problem.items:
        return 0
    capacity = problem.capacity
    counts = Counter(problem.items)
    values = sorted(counts)
    thresholds = [0] + [v for v in values if 2 * v <= capacity]

    best = 0
    for k in thresholds:
        big = 0  # J1: w > C - k
        medium_count = 0  # J2: C - k >= w > C/2
        medium_sum = 0
        small_sum = 0  # J3: C/2 >= w >= k
        for value in values:
            count = counts[value]
            if value > capacity - k:
                big += count
            elif 2 * value > capacity:
                medium_count += count
                medium_sum += count * value
            elif value >= k:
                small_sum += count * value
        spare = medium_count * capacity - medium_sum
        extra = max(0, math.ceil((small_sum - spare) / capacity))
        best = max(best, big + medium_count + extra)
    return best


class _FirstFitTree:
    """Max segment tree over bin residuals; finds the leftmost bin that fits."""

    def __init__(self, slots: int, capacity: int) -> None:
        size = 1
        while size < slots:
            size *= 2
        self._size = size
        self._tree = [capacity] * (2 * size)
        self.used = 0

    def insert(self, item: int) -> int:
        """Place an item in the leftmost bin with room; return the bin index."""
        tree = self._tree
        node = 1
        while node < self._size:
            node = 2 * node if tree[2 * node] >= item else 2 * node + 1
        slot = node - self._size
        tree[node] -= item
        node //= 2
        while node:
            tree[node] = max(tree[2 * node], tree[2 * node + 1])
            node //= 2
        self.used = max(self.used, slot + 1)
        return slot


def ffd(problem: BinPackProblem) -> int:
    """Number of bins used by first-fit decreasing.

    Raises:
        BinPackInfeasibleError: If an item exceeds the capacity.
    """
    _check_feasible(problem)
    if not problem.items:
        return 0
    tree = _FirstFitTree(len(problem.items), problem.capacity)
    for item in sorted(problem.items, reverse=True):
        tree.insert(item)
    return tree.used


def _fullest_fill(
    values: list[int], counts: Counter[int], room: int, prefer_small: bool
) -> Counter[int]:
    """Multiset of remaining items with the largest sum not above ``room``.

    Bounded subset sum over distinct values on an integer bitset, copies
    split in powers of two. Among equally full fills the one avoiding large
    values (``prefer_small``) or small values is returned.
    """
    mask = (1 << (room + 1)) - 1
    reach = 1
    chunks: list[tuple[int, int, int]] = []  # (value, copies, reach before)
    for value in values if prefer_small else reversed(values):
        if value > room:
            continue
        available = min(counts[value], room // value)
        copies = 1
        while available > 0:
            take = min(copies, available)
            chunks.append((value, take, reach))
            reach = (reach | (reach << (take * value))) & mask
            available -= take
            copies *= 2

    target = reach.bit_length() - 1
    picked: Counter[int] = Counter()
    for value, take, before in reversed(chunks):
        if target == 0:
            break
        if (before >> target) & 1:
            continue
        picked[value] += take
        target -= take * value
    return picked


def _min_slack_bins(
    problem: BinPackProblem, prefer_small: bool, deadline: float | None
) -> int | None:
    """Bins used when each bin, opened by the largest remaining item, is filled
    as fully as the remaining items allow. None when the deadline passes."""
    remaining = Counter(problem.items)
    values = sorted(remaining)
    bins = 0
    while values:
        if deadline is not None and time.perf_counter() >= deadline:
            return None
        largest = values[-1]
        remaining[largest] -= 1
        room = problem.capacity - largest
        fill = _fullest_fill(values, remaining, room, prefer_small)
        for value, copies in fill.items():
            remaining[value] -= copies
        values = [value for value in values if remaining[value] > 0]
        bins += 1
    return bins


def _upper_bound(problem: BinPackProblem, lower: int, deadline: float | None) -> int:
    upper = ffd(problem)
    for prefer_small in (True, False):
        if upper == lower:
            break
        bins = _min_slack_bins(problem, prefer_small, deadline)
        if bins is not None:
            upper = min(upper, bins)
    return upper


@dataclass
class _Frame:
    index: int
    ceiling: int
    choices: list[int]
    placed: int | None = None


@dataclass
class _BranchAndBound:
    """Depth-first search placing items in decreasing order.

    Bins are identified by their residual capacity: open bins with equal
    residual are interchangeable, so each distinct residual that fits is one
    branch, plus a new bin (residual C). Copies of one value are placed in
    non-increasing order of the residual they go into, which collapses the
    permutations of identical items.
    """

    items: list[int]
    capacity: int
    lower: int
    best: int
    deadline: float | None
    node_limit: int | None
    nodes: int = 0
    timed_out: bool = False
    open_bins: int = 0
    free: int = 0
    dead: int = 0
    levels: list[int] = field(default_factory=list)
    counts: Counter[int] = field(default_factory=Counter)

    def __post_init__(self) -> None:
        n = len(self.items)
        self._suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self._suffix[i] = self._suffix[i + 1] + self.items[i]
        self._descending_keys = [-item for item in self.items]
        # items are sorted decreasing; prefix [0, _half_end) holds the > C/2 ones
        self._half_end = sum(1 for item in self.items if 2 * item > self.capacity)
        self._smallest = self.items[-1]

    def _add_residual(self, residual: int) -> None:
        self.counts[residual] += 1
        if self.counts[residual] == 1:
            bisect.insort(self.levels, residual)
        self.free += residual
        if residual < self._smallest:
            self.dead += residual

    def _remove_residual(self, residual: int) -> None:
        self.counts[residual] -= 1
        if self.counts[residual] == 0:
            del self.counts[residual]
            del self.levels[bisect.bisect_left(self.levels, residual)]
        self.free -= residual
        if residual < self._smallest:
            self.dead -= residual

    def _bound(self, index: int) -> int:
        """Bins any completion of the current node needs."""
        capacity = self.capacity
        remaining = self._suffix[index]
        # residuals below the smallest item can never be used
        continuous = _ceil_div(max(0, remaining - (self.free - self.dead)), capacity)

        # items larger than every open residual go to new bins; L2 with k = 0 on them
        largest_gap = self.levels[-1] if self.levels else 0
        end = bisect.bisect_left(self._descending_keys, -largest_gap, lo=index)
        split = max(index, min(end, self._half_end))
        halves = split - index
        spare = halves * capacity - (self._suffix[index] - self._suffix[split])
        rest = self._suffix[split] - self._suffix[end]
        forced = halves + _ceil_div(max(0, rest - spare), capacity)

        return self.open_bins + max(continuous, forced)

    def _expand(self, index: int, ceiling: int) -> _Frame | None:
        if self._bound(index) >= self.best:
            return None
        item = self.items[index]
        low = bisect.bisect_left(self.levels, item)
        high = bisect.bisect_right(self.levels, min(ceiling, self.capacity - 1))
        # best fit first, new bin last; choices are popped from the end
        choices = self.levels[low:high]
        if ceiling == self.capacity and self.open_bins + 1 < self.best:
            choices.append(self.capacity)
        if not choices:
            return None
        choices.reverse()
        return _Frame(index=index, ceiling=ceiling, choices=choices)

    def _place(self, frame: _Frame, residual: int) -> None:
        item = self.items[frame.index]
        if residual == self.capacity:
            self.open_bins += 1
        else:
            self._remove_residual(residual)
        self._add_residual(residual - item)
        frame.placed = residual

    def _undo(self, frame: _Frame) -> None:
        if frame.placed is None:
            return
        item = self.items[frame.index]
        self._remove_residual(frame.placed - item)
        if frame.placed == self.capacity:
            self.open_bins -= 1
        else:
            self._add_residual(frame.placed)
        frame.placed = None

    def _out_of_budget(self) -> bool:
        if self.node_limit is not None and self.nodes >= self.node_limit:
            return True
        return (
            self.deadline is not None
            and self.nodes % _CLOCK_STRIDE == 0
            and time.perf_counter() >= self.deadline
        )

    def run(self) -> None:
        """Search until the gap closes, the tree is exhausted or budget runs out."""
        n = len(self.items)
        root = self._expand(0, self.capacity)
        frames = [root] if root else []
        while frames:
            if self.best == self.lower:
                break
            if self._out_of_budget():
                self.timed_out = True
                break
            top = frames[-1]
            self._undo(top)
            if not top.choices:
                frames.pop()
                continue
            self._place(top, top.choices.pop())
            self.nodes += 1
            following = top.index + 1
            if following == n:
                self.best = min(self.best, self.open_bins)
                continue
            # copies of a value go into bins no roomier than the previous copy's
            same = self.items[following] == self.items[top.index]
            child = self._expand(following, top.placed if same else self.capacity)
            if child is not None:
                frames.append(child)


def k_min(
    problem: BinPackProblem,
    time_limit: float | None = 60.0,
    node_limit: int | None = None,
) -> BinPackResult:
    """Minimum number of bins with an optimality certificate when attainable.

    Args:
        problem: Items and capacity.
        time_limit: Wall-clock budget for the whole computation, seconds
            (None = no limit).
        node_limit: Optional cap on explored nodes.

    Returns:
        BinPackResult; on budget exhaustion the best upper bound is returned
        with ``proven_optimal`` False.

    Raises:
        BinPackInfeasibleError: If an item exceeds the capacity.
    """
    _check_feasible(problem)
    started = time.perf_counter()
    if not problem.items:
        return BinPackResult(
            bins=0, proven_optimal=True, lower_bound=0, method=BinPackMethod.L1_MATCH
        )

    deadline = None if time_limit is None else started + time_limit
    l1 = lb_l1(problem)
    l2 = lb_l2(problem)
    lower = max(l1, l2)
    upper = _upper_bound(problem, lower, deadline)

    if upper == lower:
        method = BinPackMethod.L1_MATCH if upper == l1 else BinPackMethod.L2_MATCH
        return BinPackResult(
            bins=upper,
            proven_optimal=True,
            lower_bound=lower,
            method=method,
            elapsed_seconds=time.perf_counter() - started,
        )

    search = _BranchAndBound(
        items=sorted(problem.items, reverse=True),
        capacity=problem.capacity,
        lower=lower,
        best=upper,
        deadline=deadline,
        node_limit=node_limit,
    )
    search.run()
    elapsed = time.perf_counter() - started
    proven = not search.timed_out or search.best == lower

    logger.debug(
        "binpack_search_finished",
        items=len(problem.items),
        capacity=problem.capacity,
        lower=lower,
        upper=upper,
        bins=search.best,
        nodes=search.nodes,
        proven=proven,
        elapsed_seconds=round(elapsed, 3),
    )
    return BinPackResult(
        bins=search.best,
        proven_optimal=proven,
        lower_bound=search.best if proven else lower,
        method=BinPackMethod.BRANCH_AND_BOUND if proven else BinPackMethod.TIMED_OUT,
        nodes=search.nodes,
        elapsed_seconds=elapsed,
    )
