"""Diagram arithmetic in the Brauer algebra and the Murphy-basis oracle.

A diagram on n strands is a perfect matching of {1..2n} (top vertices 1..n,
bottom vertices n+1..2n) stored as a sorted tuple of sorted pairs.  In a
product a*b the diagrams of a sit on top: bottom vertices of a are glued to
top vertices of b, and every closed middle loop contributes one factor of
the parameter.

Elements carry either symbolic coefficients (delta=None, DeltaScalar) or
exact rational ones (delta an int/Fraction, coefficients are Fractions).
The oracle half of the module expands arbitrary elements over the cellular
(Murphy) basis by solving against the full diagram basis: the transition
matrix is integral, independent of the parameter, and unimodular, so one
modular LU per n serves every evaluation point.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache

import numpy as np

from .combinat import (
    CellLabel,
    all_cell_labels,
    cell_label,
    enumerate_updown,
    leading_tableau,
    tableau_content,
    validate_tableau,
    _box_diff,
)
from .ring import DeltaScalar, _as_fraction

__all__ = [
    "AlgebraElement",
    "compose",
    "all_diagrams",
    "identity_diagram",
    "s_diagram",
    "e_diagram",
    "generators",
    "from_permutation",
    "sigma",
    "s_chain",
    "jm_element",
    "murphy_cell_generator",
    "b_element",
    "murphy_basis_element",
    "express_in_murphy_basis",
    "gram_matrix_oracle",
    "module_action_oracle",
    "orthogonal_vectors_oracle",
    "OrthogonalData",
    "is_sanctioned",
]


# ---------------------------------------------------------------------------
# diagrams


def _canonical(edges):
    return tuple(sorted(tuple(sorted(e)) for e in edges))


@lru_cache(maxsize=1 << 16)
def _partners(diagram):
    p = [0] * (4 * len(diagram) + 1)
    for a, b in diagram:
        p[a] = b
        p[b] = a
    return tuple(p)


def _trace(p1, p2, n):
    """Glue two partner tables; return (canonical edges, closed loop count)."""
    edges = []
    seen_mid = [False] * (n + 1)
    done_top = [False] * (n + 1)
    done_bot = [False] * (n + 1)

    def walk(layer, v):
        while True:
            w = p1[v] if layer == 1 else p2[v]
            if layer == 1:
                if w <= n:
                    return "top", w
                seen_mid[w - n] = True
                layer, v = 2, w - n
            else:
                if w > n:
                    return "bot", w - n
                seen_mid[w] = True
                layer, v = 1, n + w

    for i in range(1, n + 1):
        if done_top[i]:
            continue
        done_top[i] = True
        kind, j = walk(1, i)
        if kind == "top":
            done_top[j] = True
            edges.append((i, j))
        else:
            done_bot[j] = True
            edges.append((i, n + j))
    for i in range(1, n + 1):
        if done_bot[i]:
            continue
        done_bot[i] = True
        kind, j = walk(2, n + i)
        done_bot[j] = True
        edges.append((n + i, n + j))
    loops = 0
    for m in range(1, n + 1):
        if seen_mid[m]:
            continue
        loops += 1
        a = m
        while not seen_mid[a]:
            seen_mid[a] = True
            b = p1[n + a] - n
            seen_mid[b] = True
            a = p2[b]
    return _canonical(edges), loops


def compose(d1, d2):
    """Stack d1 over d2; returns (diagram, loop_count)."""
    if len(d1) != len(d2):
        raise ValueError("diagrams on different strand counts")
    return _trace(_partners(d1), _partners(d2), len(d1))


def identity_diagram(n):
    return tuple((i, n + i) for i in range(1, n + 1))


def s_diagram(n, i):
    if not 1 <= i <= n - 1:
        raise ValueError(f"s_{i} undefined for n={n}")
    return _transposition_diagram(n, i, i + 1)


def _transposition_diagram(n, a, b):
    edges = [(a, n + b), (b, n + a)]
    edges.extend((j, n + j) for j in range(1, n + 1) if j not in (a, b))
    return _canonical(edges)


def e_diagram(n, i):
    if not 1 <= i <= n - 1:
        raise ValueError(f"e_{i} undefined for n={n}")
    return _contraction_diagram(n, i, i + 1)


def _contraction_diagram(n, a, b):
    edges = [(a, b), (n + a, n + b)]
    edges.extend((j, n + j) for j in range(1, n + 1) if j not in (a, b))
    return _canonical(edges)


def _flip_diagram(diagram):
    n = len(diagram)
    return _canonical(
        tuple(v - n if v > n else v + n for v in edge) for edge in diagram
    )


@cache
def all_diagrams(n):
    """Every Brauer diagram on n strands, canonically sorted; (2n-1)!! many."""

    def pair_up(verts):
        if not verts:
            yield ()
            return
        a = verts[0]
        for pos in range(1, len(verts)):
            rest = verts[1:pos] + verts[pos + 1 :]
            for tail in pair_up(rest):
                yield ((a, verts[pos]),) + tail

    return tuple(sorted(pair_up(tuple(range(1, 2 * n + 1)))))


# ---------------------------------------------------------------------------
# algebra elements


_DELTA = DeltaScalar.delta()


@cache
def _delta_power_sym(k):
    out = DeltaScalar.constant(1)
    for _ in range(k):
        out = out * _DELTA
    return out


class AlgebraElement:
    """A finite linear combination of diagrams on n strands."""

    __slots__ = ("n", "delta", "terms")

    def __init__(self, n, terms=None, delta=None):
        self.n = n
        self.delta = None if delta is None else _as_fraction(delta)
        clean = {}
        for dgm, coeff in (terms or {}).items():
            coeff = self._coerce(coeff)
            if not self._coeff_is_zero(coeff):
                clean[dgm] = coeff
        self.terms = clean

    # -- coefficients --------------------------------------------------------

    def _coerce(self, c):
        if self.delta is None:
            if isinstance(c, DeltaScalar):
                return c
            return DeltaScalar.constant(_as_fraction(c))
        if isinstance(c, DeltaScalar):
            return c.evaluate(self.delta)
        return _as_fraction(c)

    @staticmethod
    def _coeff_is_zero(c):
        return c.is_zero if isinstance(c, DeltaScalar) else c == 0

    def _delta_power(self, k):
        if self.delta is None:
            return _delta_power_sym(k)
        return self.delta**k

    # -- constructors --------------------------------------------------------

    @classmethod
    def unit(cls, n, delta=None):
        return cls(n, {identity_diagram(n): 1}, delta)

    @classmethod
    def from_diagram(cls, n, diagram, delta=None, coeff=1):
        return cls(n, {diagram: coeff}, delta)

    def evaluate(self, delta0):
        """Specialize a symbolic element at an exact rational point."""
        if self.delta is not None:
            if _as_fraction(delta0) != self.delta:
                raise ValueError("element already evaluated elsewhere")
            return self
        return AlgebraElement(self.n, self.terms, delta0)

    # -- ring structure ------------------------------------------------------

    def _check_compatible(self, other):
        if self.n != other.n:
            raise ValueError(f"mixing strand counts {self.n} and {other.n}")
        if self.delta != other.delta:
            raise ValueError("mixing evaluation points")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for dgm, c in other.terms.items():
            out[dgm] = out[dgm] + c if dgm in out else c
        return AlgebraElement(self.n, out, self.delta)

    def __neg__(self):
        return AlgebraElement(
            self.n, {d: -c for d, c in self.terms.items()}, self.delta
        )

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = self._coerce(c)
        return AlgebraElement(
            self.n, {d: v * c for d, v in self.terms.items()}, self.delta
        )

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check_compatible(other)
        n = self.n
        out = {}
        right = [(d, _partners(d), c) for d, c in other.terms.items()]
        for d1, c1 in self.terms.items():
            p1 = _partners(d1)
            for d2, p2, c2 in right:
                dgm, loops = _trace(p1, p2, n)
                c = c1 * c2
                if loops:
                    c = c * self._delta_power(loops)
                out[dgm] = out[dgm] + c if dgm in out else c
        return AlgebraElement(n, out, self.delta)

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return NotImplemented
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.n == other.n
            and self.delta == other.delta
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.delta, tuple(sorted(self.terms.items()))))

    @property
    def is_zero(self):
        return not self.terms

    def coefficient(self, diagram):
        if diagram in self.terms:
            return self.terms[diagram]
        return DeltaScalar.constant(0) if self.delta is None else Fraction(0)

    def sigma(self):
        """Flip every diagram top-to-bottom (the cellular anti-automorphism)."""
        return AlgebraElement(
            self.n,
            {_flip_diagram(d): c for d, c in self.terms.items()},
            self.delta,
        )

    def __repr__(self):
        if not self.terms:
            return f"AlgebraElement(n={self.n}, 0)"
        parts = [f"({c})*{d}" for d, c in sorted(self.terms.items())[:4]]
        more = "" if len(self.terms) <= 4 else f" ... [{len(self.terms)} terms]"
        return f"AlgebraElement(n={self.n}, {' + '.join(parts)}{more})"


def sigma(a):
    return a.sigma()


def generators(n, delta=None):
    """The s_i and e_i, as dicts keyed by i = 1..n-1."""
    s = {i: AlgebraElement.from_diagram(n, s_diagram(n, i), delta) for i in range(1, n)}
    e = {i: AlgebraElement.from_diagram(n, e_diagram(n, i), delta) for i in range(1, n)}
    return s, e


def from_permutation(images, delta=None):
    """Permutation diagram from a 1-based one-line image tuple."""
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {images}")
    edges = tuple((i, n + images[i - 1]) for i in range(1, n + 1))
    return AlgebraElement.from_diagram(n, _canonical(edges), delta)


def s_chain(n, i, j, delta=None):
    """The element s_{i,j}: a walking product of adjacent transpositions.

    For j > i this is s_i s_{i+1} ... s_{j-1}; for j < i it is
    s_{i-1} s_{i-2} ... s_j; the empty cases (i = j, or an index out of
    range at the border) give the identity.
    """
    out = AlgebraElement.unit(n, delta)
    if i <= 0 or j <= 0:
        return out
    rng = range(i, j) if j > i else range(i - 1, j - 1, -1)
    for k in rng:
        out = out * AlgebraElement.from_diagram(n, s_diagram(n, k), delta)
    return out


def jm_element(n, i, delta=None):
    """The i-th Jucys-Murphy element x_i of the Brauer algebra.

    x_1 = (d-1)/2, and for i >= 2:
    x_i = (d-1)/2 + sum over k < i of (transposition (k i) - contraction {k,i}).
    """
    if not 1 <= i <= n:
        raise ValueError(f"x_{i} undefined for n={n}")
    half = (
        (DeltaScalar.delta() - 1) / 2
        if delta is None
        else (_as_fraction(delta) - 1) / 2
    )
    terms = {identity_diagram(n): half}
    x = AlgebraElement(n, terms, delta)
    for k in range(1, i):
        x = x + AlgebraElement.from_diagram(n, _transposition_diagram(n, k, i), delta)
        x = x - AlgebraElement.from_diagram(n, _contraction_diagram(n, k, i), delta)
    return x


# ---------------------------------------------------------------------------
# the Murphy basis


def _young_blocks(n, f, shape):
    blocks = []
    start = 2 * f
    for part in shape:
        blocks.append(tuple(range(start + 1, start + part + 1)))
        start += part
    return blocks


def murphy_cell_generator(label, delta=None):
    """m_lambda = (arc pumps on the first 2f strands) * (row symmetrizer)."""
    n, f, shape = cell_label(*label)
    edges = [(2 * i - 1, 2 * i) for i in range(1, f + 1)]
    edges += [(n + 2 * i - 1, n + 2 * i) for i in range(1, f + 1)]
    edges += [(j, n + j) for j in range(2 * f + 1, n + 1)]
    pump = _canonical(edges)
    blocks = _young_blocks(n, f, shape)
    terms = {}
    for perm_choice in itertools.product(
        *(itertools.permutations(block) for block in blocks)
    ):
        images = list(range(1, n + 1))
        for block, permuted in zip(blocks, perm_choice):
            for src, dst in zip(block, permuted):
                images[src - 1] = dst
        w = _canonical((i, n + images[i - 1]) for i in range(1, n + 1))
        dgm, loops = compose(pump, w)
        assert loops == 0
        terms[dgm] = terms.get(dgm, 0) + 1
    return AlgebraElement(n, terms, delta)


def b_element(t, delta=None):
    """The straightening element b_t of an up-down tableau."""
    t = validate_tableau(t)
    n = len(t) - 1
    out = AlgebraElement.unit(n, delta)
    for i in range(1, n + 1):
        prev, cur = t[i - 1], t[i]
        f_i = (i - sum(cur)) // 2
        if sum(cur) > sum(prev):
            k = _box_diff(cur, prev)[0]
            factor = s_chain(n, 2 * f_i + sum(cur[:k]), i, delta)
        else:
            k = _box_diff(prev, cur)[0]
            lo = 2 * (f_i - 1) + sum(prev[: k - 1])
            hi = 2 * (f_i - 1) + sum(prev[:k])
            inner = None
            for j in range(lo + 1, hi + 1):
                link = s_chain(n, 2 * f_i - 1, j, delta)
                inner = link if inner is None else inner + link
            factor = s_chain(n, 2 * f_i, i, delta) * inner
        out = factor * out
    return out


def murphy_basis_element(s, t, delta=None):
    """m_{s,t} = sigma(b_s) * m_lambda * b_t for same-shape tableaux s, t."""
    s = validate_tableau(s)
    t = validate_tableau(t)
    if len(s) != len(t) or s[-1] != t[-1]:
        raise ValueError("tableaux must share their final shape")
    n = len(t) - 1
    f = (n - sum(t[-1])) // 2
    label = CellLabel(n, f, t[-1])
    mlam = murphy_cell_generator(label, delta)
    return b_element(s, delta).sigma() * mlam * b_element(t, delta)


# ---------------------------------------------------------------------------
# expansion over the full basis (integer, parameter-free, unimodular)


def _is_prime(m):
    if m < 2:
        return False
    for q in range(2, math.isqrt(m) + 1):
        if m % q == 0:
            return False
    return True


@cache
def _solver_primes():
    out = []
    p = (1 << 20) - 1
    while len(out) < 8:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return tuple(out)


def _mod_inverse_matrix(mat, p):
    dim = mat.shape[0]
    work = np.array(mat % p, dtype=np.int64)
    inv = np.eye(dim, dtype=np.int64)
    for j in range(dim):
        nz = np.nonzero(work[j:, j])[0]
        if nz.size == 0:
            raise ValueError(f"basis matrix singular mod {p}")
        r = j + int(nz[0])
        if r != j:
            work[[j, r]] = work[[r, j]]
            inv[[j, r]] = inv[[r, j]]
        piv_inv = pow(int(work[j, j]), p - 2, p)
        work[j] = work[j] * piv_inv % p
        inv[j] = inv[j] * piv_inv % p
        factors = work[:, j].copy()
        factors[j] = 0
        work -= np.outer(factors, work[j])
        inv -= np.outer(factors, inv[j])
        work %= p
        inv %= p
    return inv


def _crt_pair(r1, m1, r2, m2):
    diff = (r2 - r1) % m2
    return r1 + m1 * (diff * pow(m1, -1, m2) % m2), m1 * m2


class _MurphyExpander:
    """Per-n transition data between diagrams and the Murphy basis."""

    def __init__(self, n):
        self.n = n
        self.diagrams = all_diagrams(n)
        self.dim = len(self.diagrams)
        self.row = {d: i for i, d in enumerate(self.diagrams)}
        self.keys = []
        cols = []
        for label in all_cell_labels(n):
            tabs = enumerate_updown(label)
            mlam = murphy_cell_generator(label)
            bs = [b_element(t) for t in tabs]
            lefts = [b.sigma() * mlam for b in bs]
            for i in range(len(tabs)):
                for j in range(len(tabs)):
                    elt = lefts[i] * bs[j]
                    col = {}
                    for dgm, coeff in elt.terms.items():
                        val = coeff.as_fraction()
                        if val.denominator != 1:
                            raise AssertionError("non-integer basis coefficient")
                        col[self.row[dgm]] = int(val)
                    self.keys.append((label, i, j))
                    cols.append(col)
        if len(self.keys) != self.dim:
            raise AssertionError("Murphy basis has the wrong cardinality")
        self.key_index = {k: i for i, k in enumerate(self.keys)}
        self.cols = [(tuple(c.keys()), tuple(c.values())) for c in cols]
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        for cidx, (rows, vals) in enumerate(self.cols):
            mat[list(rows), cidx] = vals
        self._mat = mat
        self._inverses = {}

    def _inverse(self, p):
        if p not in self._inverses:
            self._inverses[p] = _mod_inverse_matrix(self._mat, p)
        return self._inverses[p]

    def _apply_exact(self, x):
        out = [0] * self.dim
        for cidx, xc in enumerate(x):
            if xc:
                rows, vals = self.cols[cidx]
                for r, v in zip(rows, vals):
                    out[r] += v * xc
        return out

    def solve(self, vec):
        """Solve basis_matrix @ x = vec (a sparse dict row->Fraction)."""
        if not vec:
            return [Fraction(0)] * self.dim
        den = math.lcm(*(c.denominator for c in vec.values()))
        b = [0] * self.dim
        for r, c in vec.items():
            b[r] = int(c * den)
        lift, mod = None, 1
        for p in _solver_primes():
            bm = np.array([v % p for v in b], dtype=np.int64)
            xp = (self._inverse(p) @ bm) % p
            if lift is None:
                lift = [int(v) for v in xp]
                mod = p
            else:
                lift = [
                    _crt_pair(lift[i], mod, int(xp[i]), p)[0]
                    for i in range(self.dim)
                ]
                mod *= p
            half = mod // 2
            x = [v - mod if v > half else v for v in lift]
            lift = [v % mod for v in x]
            if self._apply_exact(x) == b:
                return [Fraction(v, den) for v in x]
        raise ArithmeticError("basis expansion did not stabilize; add primes")


_EXPANDERS = {}
_EXPANDER_LOCK = threading.Lock()


def _expander(n):
    with _EXPANDER_LOCK:
        exp = _EXPANDERS.get(n)
        if exp is None:
            exp = _EXPANDERS[n] = _MurphyExpander(n)
        return exp


def express_in_murphy_basis(a, delta0=None):
    """Coordinates of an element over the Murphy basis.

    Returns {(cell_label, i, j): Fraction} with i, j indexing the cell's
    tableaux in enumeration order; zero coordinates are omitted.
    """
    if a.delta is None:
        if delta0 is None:
            raise ValueError("need an evaluation point for a symbolic element")
        a = a.evaluate(delta0)
    elif delta0 is not None and _as_fraction(delta0) != a.delta:
        raise ValueError("delta0 disagrees with the element's evaluation point")
    exp = _expander(a.n)
    vec = {exp.row[d]: c for d, c in a.terms.items()}
    coords = exp.solve(vec)
    return {exp.keys[i]: c for i, c in enumerate(coords) if c}


# ---------------------------------------------------------------------------
# oracles for a single cell module


@lru_cache(maxsize=32)
def _cell_setup(label, delta0):
    label = cell_label(*label)
    delta0 = _as_fraction(delta0)
    exp = _expander(label.n)
    tabs = enumerate_updown(label)
    if tabs[0] != leading_tableau(label):
        raise AssertionError("leading tableau not first in enumeration order")
    mlam = murphy_cell_generator(label, delta0)
    lefts = [mlam * b_element(t, delta0) for t in tabs]
    return label, delta0, exp, tabs, lefts


def gram_matrix_oracle(label, delta0):
    """The Gram matrix of the cell bilinear form at an exact rational point."""
    label, delta0, exp, tabs, lefts = _cell_setup(label, delta0)
    rights = [x.sigma() for x in lefts]
    target = exp.key_index[(label, 0, 0)]
    dim = len(tabs)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            prod = lefts[i] * rights[j]
            vec = {exp.row[d]: c for d, c in prod.terms.items()}
            row.append(exp.solve(vec)[target])
        out.append(row)
    return out


def module_action_oracle(label, g, delta0=None):
    """Matrix of right multiplication by g on the cell module.

    Column j holds the coordinates of (j-th basis vector) * g over the
    module's Murphy basis, tableaux in enumeration order.
    """
    if g.delta is None:
        if delta0 is None:
            raise ValueError("need an evaluation point")
        g = g.evaluate(delta0)
    label, delta0, exp, tabs, lefts = _cell_setup(label, g.delta)
    dim = len(tabs)
    mat = [[Fraction(0)] * dim for _ in range(dim)]
    for j in range(dim):
        prod = lefts[j] * g
        vec = {exp.row[d]: c for d, c in prod.terms.items()}
        coords = exp.solve(vec)
        for i in range(dim):
            mat[i][j] = coords[exp.key_index[(label, 0, i)]]
        for i in range(1, dim):
            for jj in range(dim):
                if coords[exp.key_index[(label, i, jj)]]:
                    raise AssertionError("cell action leaked outside its layer")
    return mat


def is_sanctioned(n, delta0):
    """Integer evaluation points of magnitude >= 2n+1 keep contents distinct."""
    delta0 = _as_fraction(delta0)
    return delta0.denominator == 1 and abs(delta0) >= 2 * n + 1


def _matvec(mat, v):
    return [sum(row[i] * v[i] for i in range(len(v)) if v[i]) for row in mat]


def _unitriangular_solve(columns, w):
    dim = len(w)
    c = [Fraction(0)] * dim
    for i in range(dim - 1, -1, -1):
        acc = w[i]
        for j in range(i + 1, dim):
            if c[j] and columns[j][i]:
                acc -= columns[j][i] * c[j]
        c[i] = acc
    return c


@dataclass
class OrthogonalData:
    """Seminormal data of one cell module at one evaluation point.

    vectors[j] are the coordinates of the j-th orthogonal vector over the
    Murphy basis (unitriangular); e_coeffs[(i, j, k)] is the coefficient of
    the i-th orthogonal vector in (j-th vector) * e_k, likewise s_coeffs.
    """

    label: CellLabel
    delta: Fraction
    tableaux: tuple
    contents: list
    gram: list
    vectors: list
    norms: list
    e_coeffs: dict
    s_coeffs: dict


def orthogonal_vectors_oracle(label, delta0):
    label = cell_label(*label)
    delta0 = _as_fraction(delta0)
    n = label.n
    if not is_sanctioned(n, delta0):
        raise ValueError(
            f"delta={delta0} unsanctioned for n={n}: need an integer with |delta| >= {2 * n + 1}"
        )
    tabs = enumerate_updown(label)
    dim = len(tabs)
    gram = gram_matrix_oracle(label, delta0)
    contents = [
        [tableau_content(t, k).evaluate(delta0) for k in range(1, n + 1)]
        for t in tabs
    ]
    acts = [
        module_action_oracle(label, jm_element(n, k, delta0))
        for k in range(1, n + 1)
    ]
    vectors = []
    for idx in range(dim):
        v = [Fraction(0)] * dim
        v[idx] = Fraction(1)
        for k in range(n):
            ck = contents[idx][k]
            for r in sorted({contents[s][k] for s in range(dim)} - {ck}):
                w = _matvec(acts[k], v)
                v = [(w[i] - r * v[i]) / (ck - r) for i in range(dim)]
        if v[idx] != 1 or any(v[i] for i in range(idx + 1, dim)):
            raise AssertionError("orthogonal vector is not unitriangular")
        vectors.append(v)
    norms = []
    for v in vectors:
        gv = _matvec(gram, v)
        norms.append(sum(v[i] * gv[i] for i in range(dim)))
    sgen, egen = generators(n, delta0)
    e_coeffs, s_coeffs = {}, {}
    for k in range(1, n):
        for gen, store in ((egen[k], e_coeffs), (sgen[k], s_coeffs)):
            act = module_action_oracle(label, gen)
            for j in range(dim):
                coeffs = _unitriangular_solve(vectors, _matvec(act, vectors[j]))
                for i in range(dim):
                    store[(i, j, k)] = coeffs[i]
    return OrthogonalData(
        label, delta0, tabs, contents, gram, vectors, norms, e_coeffs, s_coeffs
    )
