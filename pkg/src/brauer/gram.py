"""Gram determinants of cell modules by the branching recursion.

Each branching edge from a cell (n, f, shape) to a child at level n-1
carries a rational-function factor gamma; the determinant of the cell's
Gram matrix is the product over edges of (child determinant) times
gamma^(child dimension).  All gammas are ratios of integer constants and
monic linear polynomials in d, so determinants are assembled purely in
factored form -- exponents become astronomically large long before the
expanded polynomials could ever be written down.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .combinat import (
    CellLabel,
    add_box,
    addable_nodes,
    all_cell_labels,
    branching_edges,
    cell_dim,
    cell_label,
    node_content2,
    remove_box,
    removable_nodes,
    restricted_node_sets,
)
from .ring import (
    FactoredPoly,
    _as_fraction,
    _factor_int,
    fp_expand,
    fp_finalize,
)

__all__ = [
    "GammaFactor",
    "gamma_remove_box",
    "gamma_add_box",
    "GramResult",
    "gram_det",
    "gram_det_table",
    "iter_gram_det_table",
    "semisimple_check",
]


_factor_small = lru_cache(maxsize=None)(_factor_int)


# ---------------------------------------------------------------------------
# edge factors


def _gamma_core(shape, p, add):
    """sign, {shift: exp}, {const: exp} of the edge factor at a parent shape.

    add=False: the box p is removed going down (defect preserved);
    add=True: the box p is added going down (defect drops by one).
    Contents are handled as doubled pairs (eps, m) with 2c = eps*d + m, so a
    sum or difference of two contents is either an integer constant or
    +-(d + integer); no rational arithmetic is needed.
    """
    lin = {}
    consts = {}
    state = {"sign": 1}

    def mul_const(c, exp):
        if c == 0:
            raise AssertionError("vanishing gamma factor")
        if c < 0 and exp % 2:
            state["sign"] = -state["sign"]
        c = abs(c)
        if c != 1:
            consts[c] = consts.get(c, 0) + exp

    def mul_lin(shift, exp, sgn=1):
        if sgn < 0 and exp % 2:
            state["sign"] = -state["sign"]
        lin[shift] = lin.get(shift, 0) + exp

    def mul_pair(c1, c2, op, exp):
        eps = c1[0] + c2[0] if op == "+" else c1[0] - c2[0]
        m = c1[1] + c2[1] if op == "+" else c1[1] - c2[1]
        if eps == 0:
            mul_const(m // 2, exp)
        elif eps == 2:
            mul_lin(m // 2, exp)
        else:
            mul_lin(-(m // 2), exp, sgn=-1)

    if not add:
        state["sign"] = -state["sign"]
        cp = node_content2(p, "removable")
        rem_below, add_below, _ = restricted_node_sets(shape, p)
        for q in add_below:
            mul_pair(cp, node_content2(q, "addable"), "+", 1)
        for r in rem_below:
            mul_pair(cp, node_content2(r, "removable"), "-", -1)
    else:
        k = p[0]
        mu = add_box(shape, k)
        mu_k = mu[k - 1]
        mul_lin(2 * mu_k - 2 * k, 1)
        cp = node_content2(p, "addable")
        _, _, at_or_above = restricted_node_sets(shape, p)
        for q, kind in at_or_above:
            if q == p:
                continue
            cq = node_content2(q, kind)
            mul_pair(cp, cq, "+", 1)
            mul_pair(cp, cq, "-", -1)
        if k >= len(shape):
            if k == len(shape):
                mul_lin(shape[k - 1] - 2 * k, 1)
        else:
            state["sign"] = -state["sign"]
            cpm = node_content2(p, "removable")
            rem_below, add_below, _ = restricted_node_sets(mu, p)
            for q in add_below:
                mul_pair(cpm, node_content2(q, "addable"), "-", 1)
            for r in rem_below:
                mul_pair(cpm, node_content2(r, "removable"), "+", -1)
            if (k, shape[k - 1]) not in removable_nodes(shape):
                mul_lin(2 * mu_k - 2 * k - 2, -1)

    lin = {s: e for s, e in lin.items() if e}
    consts = {c: e for c, e in consts.items() if e}
    return state["sign"], lin, consts


def _core_to_factored(sign, lin, consts):
    primes = {}
    for c, e in consts.items():
        for q, qe in _factor_small(c).items():
            primes[q] = primes.get(q, 0) + qe * e
    return FactoredPoly(sign, primes, lin)


@dataclass(frozen=True)
class GammaFactor:
    """The factor attached to one branching edge (child, parent)."""

    parent: CellLabel
    child: CellLabel
    node: tuple
    factored: FactoredPoly

    @property
    def edge(self):
        return (self.child, self.parent)

    @cached_property
    def value(self):
        return fp_expand(self.factored)

    def evaluate(self, delta0):
        return self.value.evaluate(_as_fraction(delta0))


def gamma_remove_box(parent, p):
    """Edge factor when box p of the parent shape is absent in the child.

    The child keeps the parent's defect; the factor is a rational constant.
    """
    parent = cell_label(*parent)
    if p not in removable_nodes(parent.shape):
        raise ValueError(f"{p} is not removable in {parent.shape}")
    child = CellLabel(parent.n - 1, parent.f, remove_box(parent.shape, p[0]))
    factored = _core_to_factored(*_gamma_core(parent.shape, p, add=False))
    return GammaFactor(parent, child, p, factored)


def gamma_add_box(parent, p):
    """Edge factor when box p is added to the parent shape in the child.

    The child's defect drops by one (an arc closes), so the parent needs
    f >= 1; p must be addable in the parent shape.
    """
    parent = cell_label(*parent)
    if parent.f < 1:
        raise ValueError(f"no defect to spend at {parent}")
    if p not in addable_nodes(parent.shape):
        raise ValueError(f"{p} is not addable in {parent.shape}")
    child = CellLabel(parent.n - 1, parent.f - 1, add_box(parent.shape, p[0]))
    factored = _core_to_factored(*_gamma_core(parent.shape, p, add=True))
    return GammaFactor(parent, child, p, factored)


def _edge_gamma(parent, child, p):
    if child.f == parent.f:
        return gamma_remove_box(parent, p)
    return gamma_add_box(parent, p)


# ---------------------------------------------------------------------------
# determinants


@dataclass(frozen=True)
class GramResult:
    label: CellLabel
    dim: int
    det: FactoredPoly


class _LevelSweep:
    """Determinant accumulation in fixed-size exponent vectors.

    A state is (sign, shifts, primes): shifts[i] is the exponent of
    (d + i - offset), primes[j] the exponent of the j-th small prime in the
    unit.  All shifts and unit primes of any determinant with n <= n_max
    fit these bounds.
    """

    def __init__(self, n_max):
        self.offset = 2 * n_max + 2
        self.size = 2 * self.offset + 1
        self.primes = _primes_upto(2 * n_max + 3)
        self.pindex = {p: i for i, p in enumerate(self.primes)}

    def base_state(self):
        return (1, [0] * self.size, [0] * len(self.primes))

    def parent_state(self, label, child_states, dims):
        sign = 1
        shifts = None
        primes = None
        for child, p in branching_edges(label):
            csign, cshifts, cprimes = child_states[child]
            dim = dims[child]
            gsign, glin, gconst = _gamma_core(label.shape, p, add=child.f < label.f)
            sign *= csign
            if gsign < 0 and dim % 2:
                sign = -sign
            if shifts is None:
                shifts = list(cshifts)
                primes = list(cprimes)
            else:
                shifts = [a + b for a, b in zip(shifts, cshifts)]
                primes = [a + b for a, b in zip(primes, cprimes)]
            for s, e in glin.items():
                shifts[s + self.offset] += e * dim
            for c, e in gconst.items():
                for q, qe in _factor_small(c).items():
                    primes[self.pindex[q]] += qe * e * dim
        if shifts is None:
            raise AssertionError(f"no branching edges below {label}")
        return (sign, shifts, primes)

    def to_factored(self, state):
        sign, shifts, primes = state
        return FactoredPoly(
            sign,
            {self.primes[i]: e for i, e in enumerate(primes) if e},
            {i - self.offset: e for i, e in enumerate(shifts) if e},
        )

    def from_factored(self, fp):
        shifts = [0] * self.size
        for s, e in fp.factors.items():
            idx = s + self.offset
            if not isinstance(s, int) or not 0 <= idx < self.size:
                raise ValueError(f"cached factor shift {s} out of range")
            shifts[idx] = e
        primes = [0] * len(self.primes)
        for q, e in fp.unit_primes.items():
            if q not in self.pindex:
                raise ValueError(f"cached unit prime {q} out of range")
            primes[self.pindex[q]] = e
        return (fp.sign, shifts, primes)


@lru_cache(maxsize=None)
def _primes_upto(m):
    sieve = bytearray([1]) * (m + 1)
    sieve[:2] = b"\x00\x00"
    for q in range(2, int(math.isqrt(m)) + 1):
        if sieve[q]:
            sieve[q * q :: q] = b"\x00" * len(sieve[q * q :: q])
    return tuple(q for q in range(2, m + 1) if sieve[q])


_DET_MEMO = {}
_DET_LOCK = threading.Lock()


def gram_det(label, cache=None):
    """The Gram determinant of one cell module, fully factored over Z[d].

    Consults (and feeds) an in-memory memo keyed by the label, plus an
    optional on-disk cache object with .get(label) -> GramResult | None
    and .add(result) methods.
    """
    label = cell_label(*label)
    with _DET_LOCK:
        hit = _DET_MEMO.get(label)
    if hit is not None:
        return hit
    if cache is not None:
        rec = cache.get(label)
        if rec is not None:
            with _DET_LOCK:
                _DET_MEMO[label] = rec
            return rec

    sweep = _LevelSweep(label.n)
    known = {}

    def leaf_state(lbl):
        if lbl.n == 1:
            return sweep.base_state()
        with _DET_LOCK:
            hit = _DET_MEMO.get(lbl)
        if hit is None and cache is not None:
            hit = cache.get(lbl)
        if hit is not None:
            return sweep.from_factored(hit.det)
        return None

    order = []
    seen = {label}
    stack = [label]
    while stack:
        lbl = stack.pop()
        state = leaf_state(lbl)
        if state is not None:
            known[lbl] = state
            continue
        order.append(lbl)
        for child, _ in branching_edges(lbl):
            if child not in seen:
                seen.add(child)
                stack.append(child)

    dims = {lbl: cell_dim(lbl) for lbl in seen}
    for lbl in sorted(order, key=lambda c: c.n):
        known[lbl] = sweep.parent_state(lbl, known, dims)

    result = GramResult(label, dims[label], fp_finalize(sweep.to_factored(known[label])))
    with _DET_LOCK:
        _DET_MEMO[label] = result
    if cache is not None:
        cache.add(result)
    return result


def iter_gram_det_table(n_max, cache=None):
    """Stream GramResult for every cell label with n <= n_max.

    Order: n ascending, then defect ascending, then shapes as listed by
    partitions_of.  Only one level of states is held at a time, so the
    n ~ 35 range is reachable; with a cache, fully cached leading levels
    are replayed instead of recomputed.
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    sweep = _LevelSweep(n_max)
    prefix = 0
    if cache is not None:
        for m in range(1, n_max + 1):
            if all(cache.get(lbl) is not None for lbl in all_cell_labels(m)):
                prefix = m
            else:
                break
    prev_states = None
    for m in range(1, n_max + 1):
        labels = all_cell_labels(m)
        dims = {lbl: cell_dim(lbl) for lbl in labels}
        results = {}
        states = {}
        if m <= prefix:
            for lbl in labels:
                results[lbl] = cache.get(lbl)
            if m == prefix or m == n_max:
                for lbl in labels:
                    states[lbl] = sweep.from_factored(results[lbl].det)
        elif m == 1:
            base = cell_label(1, 0, (1,))
            states[base] = sweep.base_state()
            results[base] = GramResult(base, 1, fp_finalize(sweep.to_factored(states[base])))
        else:
            child_dims = {c: cell_dim(c) for c in all_cell_labels(m - 1)}
            for lbl in labels:
                states[lbl] = sweep.parent_state(lbl, prev_states, child_dims)
                results[lbl] = GramResult(
                    lbl, dims[lbl], fp_finalize(sweep.to_factored(states[lbl]))
                )
        if cache is not None and m > prefix:
            for lbl in labels:
                cache.add(results[lbl])
        prev_states = states
        for lbl in labels:
            yield results[lbl]


def gram_det_table(n_max, cache=None):
    """The full determinant table for n <= n_max, as a list of GramResult."""
    return list(iter_gram_det_table(n_max, cache))


# ---------------------------------------------------------------------------
# semisimplicity


def semisimple_check(n, delta, char_e=0):
    """Semisimplicity of the algebra on n strands over a field.

    delta: an exact rational parameter value, or None for a parameter that
    is not an integer (transcendental or generic).  char_e: the field
    characteristic; 0, None or math.inf all mean characteristic zero.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if char_e in (0, None, math.inf):
        char_ok = True
    else:
        if not isinstance(char_e, int) or char_e < 2:
            raise ValueError(f"bad characteristic {char_e!r}")
        char_ok = math.factorial(n) % char_e != 0
    if delta is None:
        return char_ok
    delta = _as_fraction(delta)
    if delta.denominator != 1:
        return char_ok
    d = int(delta)
    if d == 0:
        return char_ok and n in (1, 3, 5)
    bad = (
        (1 <= d <= n - 2)
        or (d < 0 and d % 2 == 0 and -d <= 2 * (n - 2))
        or (4 - n <= d <= -1)
    )
    return char_ok and not bad
