"""
Worst-case search-tree sizes, used as default node budgets.
"""
from math import comb


def max_tree_depth(k: int, r: int) -> int:
    """Each branching step grows one slot by one element; slots start non-empty."""
    return (r - 1) * k


def tree_size_bound(k: int, r: int) -> int:
    """C(k·r·(k-1), k) · (r(k-1))^((r-1)k)."""
    return comb(k * r * (k - 1), k) * (r * (k - 1)) ** max_tree_depth(k, r)


def pch_tree_size_bound(k: int, r: int, head_count: int, shared_heads: bool = False) -> int:
    """Roots times the size of a full r(k-1)-ary tree of height (r-1)k."""
    if shared_heads:
        roots = comb(head_count + k - 1, k)
    else:
        roots = comb(head_count, k)
    fanout = r * (k - 1)
    return roots * sum(fanout ** h for h in range(max_tree_depth(k, r) + 1))
