"""Partitions, cell labels and up-down tableaux.

A cell label (n, f, shape) indexes a cell module: shape is a partition of
n - 2f.  An up-down tableau for that label is a tuple (t_0, ..., t_n) of
partitions with t_0 = (), t_n = shape, consecutive entries differing by
exactly one box.  Partitions are plain tuples of weakly decreasing positive
ints, nodes are 1-based (row, col) pairs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cache
from typing import NamedTuple

from .ring import DeltaScalar

__all__ = [
    "CellLabel",
    "cell_label",
    "partitions_of",
    "conjugate",
    "dominance_leq",
    "cell_order_lt",
    "all_cell_labels",
    "addable_nodes",
    "removable_nodes",
    "add_box",
    "remove_box",
    "restricted_node_sets",
    "node_content",
    "node_content2",
    "leading_tableau",
    "enumerate_updown",
    "validate_tableau",
    "tableau_content",
    "tableau_content2",
    "k_equivalence_class",
    "apply_transposition",
    "cell_dim",
    "branching_edges",
    "hat_tilde",
]


class CellLabel(NamedTuple):
    n: int
    f: int
    shape: tuple


def _check_partition(shape):
    shape = tuple(shape)
    for i, part in enumerate(shape):
        if not isinstance(part, int) or part < 1:
            raise ValueError(f"bad partition part {part!r}")
        if i and shape[i - 1] < part:
            raise ValueError(f"parts not weakly decreasing: {shape}")
    return shape


def cell_label(n, f, shape):
    shape = _check_partition(shape)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= f <= n // 2:
        raise ValueError(f"defect f={f} out of range for n={n}")
    if n - 2 * f != sum(shape):
        raise ValueError(f"|shape|={sum(shape)} != n-2f={n - 2 * f}")
    return CellLabel(n, f, shape)


@cache
def partitions_of(m):
    """All partitions of m, descending lexicographic."""
    if m < 0:
        raise ValueError("negative size")

    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(m, m))


def conjugate(shape):
    if not shape:
        return ()
    return tuple(
        sum(1 for part in shape if part >= j) for j in range(1, shape[0] + 1)
    )


def dominance_leq(a, b):
    """a dominated-or-equal b; only defined for equal-size partitions."""
    if sum(a) != sum(b):
        raise ValueError(f"sizes differ: {a} vs {b}")
    ta = sb = 0
    for i in range(max(len(a), len(b))):
        ta += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if ta > sb:
            return False
    return True


def cell_order_lt(a, b):
    """Strict cell order: (f,shape) below (f',shape')."""
    if a.n != b.n:
        raise ValueError(f"labels live in different algebras: n={a.n} vs n={b.n}")
    if a.f != b.f:
        return a.f < b.f
    return a.shape != b.shape and dominance_leq(a.shape, b.shape)


def all_cell_labels(n):
    return tuple(
        CellLabel(n, f, shape)
        for f in range(n // 2 + 1)
        for shape in partitions_of(n - 2 * f)
    )


# ---------------------------------------------------------------------------
# nodes and contents


def _row_len(shape, i):
    return shape[i - 1] if 1 <= i <= len(shape) else 0


def addable_nodes(shape):
    out = []
    for i in range(1, len(shape) + 2):
        if i == 1 or _row_len(shape, i - 1) > _row_len(shape, i):
            out.append((i, _row_len(shape, i) + 1))
    return tuple(out)


def removable_nodes(shape):
    out = []
    for i in range(1, len(shape) + 1):
        if _row_len(shape, i) > _row_len(shape, i + 1):
            out.append((i, _row_len(shape, i)))
    return tuple(out)


def add_box(shape, row):
    if (row, _row_len(shape, row) + 1) not in addable_nodes(shape):
        raise ValueError(f"row {row} not addable in {shape}")
    if row == len(shape) + 1:
        return shape + (1,)
    return shape[: row - 1] + (shape[row - 1] + 1,) + shape[row:]


def remove_box(shape, row):
    if (row, _row_len(shape, row)) not in removable_nodes(shape):
        raise ValueError(f"row {row} not removable in {shape}")
    if shape[row - 1] == 1:
        return shape[: row - 1]
    return shape[: row - 1] + (shape[row - 1] - 1,) + shape[row:]


def restricted_node_sets(shape, p):
    """Split the addable/removable nodes of shape around node p.

    Returns (removable_below, addable_below, at_or_above) where "below"
    means strictly later rows than p and at_or_above collects both kinds
    from rows <= row(p) as ((row, col), kind) pairs sorted by position.
    """
    add = addable_nodes(shape)
    rem = removable_nodes(shape)
    if p not in add and p not in rem:
        raise ValueError(f"{p} is neither addable nor removable in {shape}")
    k = p[0]
    rem_below = tuple(q for q in rem if q[0] > k)
    add_below = tuple(q for q in add if q[0] > k)
    at_or_above = tuple(
        sorted(
            [(q, "removable") for q in rem if q[0] <= k]
            + [(q, "addable") for q in add if q[0] <= k]
        )
    )
    return rem_below, add_below, at_or_above


def node_content2(p, kind):
    """Doubled content of a node as (eps, m): 2*content = eps*d + m, m odd."""
    i, j = p
    if kind == "addable":
        return 1, 2 * (j - i) - 1
    if kind == "removable":
        return -1, 1 - 2 * (j - i)
    raise ValueError(f"bad kind {kind!r}")


def node_content(p, kind):
    """Content (d-1)/2 + j - i of an added box, or its negative if removed."""
    eps, m = node_content2(p, kind)
    return DeltaScalar((Fraction(m, 2), Fraction(eps, 2)))


# ---------------------------------------------------------------------------
# up-down tableaux


def _box_diff(big, small):
    """The unique node in big but not small, assuming they differ by one box."""
    for i in range(1, max(len(big), len(small)) + 1):
        a, b = _row_len(big, i), _row_len(small, i)
        if a != b:
            return (i, a)
    raise ValueError(f"shapes do not differ: {big} vs {small}")


def _neighbors(shape):
    out = [add_box(shape, p[0]) for p in addable_nodes(shape)]
    out.extend(remove_box(shape, p[0]) for p in removable_nodes(shape))
    return out


def _box_distance(a, b):
    dist = 0
    for i in range(1, max(len(a), len(b)) + 1):
        dist += abs(_row_len(a, i) - _row_len(b, i))
    return dist


def validate_tableau(t):
    t = tuple(tuple(shape) for shape in t)
    if len(t) < 1 or t[0] != ():
        raise ValueError("tableau must start at the empty partition")
    for i in range(1, len(t)):
        _check_partition(t[i])
        if _box_distance(t[i - 1], t[i]) != 1:
            raise ValueError(f"levels {i - 1}->{i} differ by != 1 box in {t}")
    return t


def _tableau_sort_key(t):
    n = len(t) - 1
    return tuple(
        (sum(t[i]), tuple(-part for part in t[i])) for i in range(n - 1, 0, -1)
    )


@cache
def enumerate_updown(label):
    """All up-down tableaux of a cell label, most dominant path first."""
    n, f, shape = cell_label(*label)
    paths = [((),)]
    for level in range(1, n + 1):
        remaining = n - level
        new_paths = []
        for path in paths:
            for nxt in _neighbors(path[-1]):
                gap = _box_distance(nxt, shape)
                if gap <= remaining and (remaining - gap) % 2 == 0:
                    new_paths.append(path + (nxt,))
        paths = new_paths
    paths.sort(key=_tableau_sort_key)
    return tuple(paths)


def leading_tableau(label):
    """The maximal tableau: f up-down pumps, then a row-by-row filling."""
    n, f, shape = cell_label(*label)
    levels = [()]
    for i in range(1, 2 * f + 1):
        levels.append((1,) if i % 2 else ())
    for i in range(2 * f + 1, n + 1):
        m = i - 2 * f
        filled = []
        for part in shape:
            take = min(part, m)
            if take == 0:
                break
            filled.append(take)
            m -= take
        levels.append(tuple(filled))
    return tuple(levels)


def tableau_content2(t, k):
    if not 1 <= k <= len(t) - 1:
        raise ValueError(f"level {k} out of range")
    if sum(t[k]) > sum(t[k - 1]):
        return node_content2(_box_diff(t[k], t[k - 1]), "addable")
    return node_content2(_box_diff(t[k - 1], t[k]), "removable")


def tableau_content(t, k):
    eps, m = tableau_content2(t, k)
    return DeltaScalar((Fraction(m, 2), Fraction(eps, 2)))


def k_equivalence_class(t, k):
    """All tableaux equal to t away from level k, in enumeration order."""
    n = len(t) - 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= {n - 1}, got {k}")
    out = []
    for mid in _neighbors(t[k - 1]):
        if _box_distance(mid, t[k + 1]) == 1:
            out.append(t[:k] + (mid,) + t[k + 1 :])
    out.sort(key=_tableau_sort_key)
    return tuple(out)


def apply_transposition(t, k):
    """Swap levels around k, or None when the two moved boxes collide."""
    if t[k - 1] == t[k + 1]:
        raise ValueError(f"levels {k - 1} and {k + 1} agree; class is not a pair")
    others = [s for s in k_equivalence_class(t, k) if s != t]
    if not others:
        return None
    if len(others) > 1:
        raise AssertionError(f"class of {t} at {k} has {len(others) + 1} members")
    return others[0]


# ---------------------------------------------------------------------------
# dimensions and branching


def _double_factorial(m):
    if m < -1:
        raise ValueError("double factorial of < -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def cell_dim(label):
    """Number of up-down tableaux, by the hook-length formula."""
    n, f, shape = cell_label(*label)
    conj = conjugate(shape)
    hooks = 1
    for i in range(1, len(shape) + 1):
        for j in range(1, shape[i - 1] + 1):
            hooks *= shape[i - 1] + conj[j - 1] - i - j + 1
    numer = math.factorial(n) * _double_factorial(2 * f - 1)
    denom = math.factorial(2 * f) * hooks
    dim, rem = divmod(numer, denom)
    if rem:
        raise AssertionError(f"hook formula not integral for {label}")
    return dim


def branching_edges(label):
    """Children of a cell with the box moved, in descending cell order.

    Returns ((child_label, node), ...): first the same-f children (node
    removed from shape, later rows first), then for f >= 1 the f-1 children
    (node added to shape, earlier rows first).
    """
    n, f, shape = cell_label(*label)
    if n == 1:
        return ()
    out = []
    for p in reversed(removable_nodes(shape)):
        out.append((CellLabel(n - 1, f, remove_box(shape, p[0])), p))
    if f >= 1:
        for p in addable_nodes(shape):
            out.append((CellLabel(n - 1, f - 1, add_box(shape, p[0])), p))
    return tuple(out)


def hat_tilde(t):
    """Truncate t below the top, and replay its last step from the leading path."""
    n = len(t) - 1
    if n < 1:
        raise ValueError("tableau too short")
    t_hat = t[:n]
    mu = t[n - 1]
    f_mu = (n - 1 - sum(mu)) // 2
    t_tilde = leading_tableau(CellLabel(n - 1, f_mu, mu)) + (t[n],)
    return t_hat, t_tilde
