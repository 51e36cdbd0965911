from fractions import Fraction

import pytest

from brauer.combinat import CellLabel, all_cell_labels, cell_dim
from brauer.diagram import gram_matrix_oracle
from brauer.gram import (
    GramResult,
    gamma_add_box,
    gamma_remove_box,
    gram_det,
    gram_det_table,
    iter_gram_det_table,
    semisimple_check,
)
from brauer.ring import FactoredPoly, fp_evaluate, fp_to_text


def frac_det(mat):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                factor = m[r][c] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[c])]
    return det


GAMMA_REMOVE = {
    ((1, 0, (1,)), (1, 1)): "1",
    ((2, 0, (2,)), (1, 2)): "2",
    ((2, 0, (1, 1)), (2, 1)): "1",
    ((3, 0, (3,)), (1, 3)): "3",
    ((3, 0, (2, 1)), (2, 1)): "1",
    ((3, 0, (2, 1)), (1, 2)): "3/2",
    ((3, 0, (1, 1, 1)), (3, 1)): "1",
}

GAMMA_ADD = {
    ((2, 1, ()), (1, 1)): "d",
    ((3, 1, (1,)), (1, 2)): "(d^2 + d - 2)/(d)",
    ((3, 1, (1,)), (2, 1)): "1/2*d - 1/2",
    ((4, 1, (2,)), (1, 3)): "(d^2 + 4*d)/(d + 2)",
    ((4, 1, (2,)), (2, 1)): "(2/3*d^2 - 4/3*d)/(d - 1)",
    ((4, 1, (1, 1)), (3, 1)): "1/3*d - 2/3",
    ((4, 1, (1, 1)), (1, 2)): "(d^2 - 4)/(d - 1)",
}


def test_gamma_remove_frozen():
    for (parent, node), text in GAMMA_REMOVE.items():
        g = gamma_remove_box(parent, node)
        assert str(g.value) == text
        assert g.parent == CellLabel(*parent)
        n, f, shape = parent
        assert g.child.n == n - 1 and g.child.f == f
        assert sum(g.child.shape) == sum(shape) - 1
        assert g.node == node
        assert g.edge == (g.child, g.parent)
        assert g.evaluate(Fraction(7)) == g.value.evaluate(Fraction(7))


def test_gamma_add_frozen():
    for (parent, node), text in GAMMA_ADD.items():
        g = gamma_add_box(parent, node)
        assert str(g.value) == text
        n, f, shape = parent
        assert g.child.n == n - 1 and g.child.f == f - 1
        assert sum(g.child.shape) == sum(shape) + 1


def test_gamma_errors():
    with pytest.raises(ValueError):
        gamma_remove_box((3, 0, (2, 1)), (1, 1))  # not removable
    with pytest.raises(ValueError):
        gamma_add_box((3, 1, (1,)), (1, 1))  # occupied, not addable
    with pytest.raises(ValueError):
        gamma_add_box((3, 0, (2, 1)), (1, 3))  # no arc to spend


FROZEN_DETS = {
    (1, 0, (1,)): ("1", 1),
    (2, 0, (2,)): ("2", 1),
    (2, 0, (1, 1)): ("1", 1),
    (2, 1, ()): ("d", 1),
    (3, 0, (3,)): ("6", 1),
    (3, 0, (2, 1)): ("3", 2),
    (3, 0, (1, 1, 1)): ("1", 1),
    (3, 1, (1,)): ("(d-1)^2 * (d+2)", 3),
    (4, 1, (2,)): ("64 * d^3 * (d-2)^2 * (d+4)", 6),
    (4, 1, (1, 1)): ("(d-2)^3 * (d+2)^3", 6),
    (4, 2, ()): ("d^3 * (d-1)^2 * (d+2)", 3),
}


def test_frozen_determinants():
    for label, (text, dim) in FROZEN_DETS.items():
        res = gram_det(label)
        assert isinstance(res, GramResult)
        assert res.label == CellLabel(*label)
        assert res.dim == cell_dim(label) == dim
        assert fp_to_text(res.det) == text
    # structural form of the flagship value
    det = gram_det((4, 1, (2,))).det
    assert det == FactoredPoly(1, {2: 6}, {0: 3, -2: 2, 4: 1})
    assert det.unit_value() == 64 and det.factors == {0: 3, -2: 2, 4: 1}


def test_table_matches_single_calls():
    results = gram_det_table(4)
    assert [r.label for r in results] == [
        lbl for n in range(1, 5) for lbl in all_cell_labels(n)
    ]
    for r in results:
        assert r.det == gram_det(r.label).det
    assert results == list(iter_gram_det_table(4))


def test_recursion_agrees_with_diagram_oracle():
    for delta0 in (Fraction(11), Fraction(-7, 2)):
        for n in range(1, 5):
            for label in all_cell_labels(n):
                expected = frac_det(gram_matrix_oracle(label, delta0))
                got = fp_evaluate(gram_det(label).det, delta0)
                assert got == expected, (label, delta0)


def test_dets_finalize_integrally():
    for r in gram_det_table(9):
        det = r.det
        assert det.sign == 1
        assert all(isinstance(e, int) and e >= 1 for e in det.unit_primes.values())
        assert all(isinstance(e, int) and e >= 1 for e in det.factors.values())
        assert all(isinstance(s, int) for s in det.factors)


class RecordingCache:
    def __init__(self):
        self.store = {}
        self.gets = 0
        self.hits = 0

    def get(self, label):
        self.gets += 1
        found = self.store.get(label)
        if found is not None:
            self.hits += 1
        return found

    def add(self, result):
        self.store.setdefault(result.label, result)


def test_cache_protocol():
    from brauer import gram

    cache = RecordingCache()
    label = (5, 1, (2, 1))
    first = gram_det(label, cache=cache)
    assert cache.store == {CellLabel(*label): first}

    gram._DET_MEMO.clear()
    cache.gets = cache.hits = 0
    second = gram_det(label, cache=cache)
    assert second == first
    assert cache.hits >= 1  # served from the cache, not recomputed

    # a cold table run can reuse the same cache
    gram._DET_MEMO.clear()
    results = gram_det_table(5, cache=cache)
    assert [r for r in results if r.label == CellLabel(*label)][0] == first


def test_semisimple_spot_values():
    # positive integers fail in [1, n-2]
    assert not semisimple_check(4, 1)
    assert not semisimple_check(4, 2)
    assert semisimple_check(4, 3)
    assert semisimple_check(4, 5)
    # negative even integers fail down to -2(n-2)
    assert not semisimple_check(6, -2)
    assert not semisimple_check(6, -8)
    assert semisimple_check(6, -10)
    # the negative window [4-n, -1] opens at n=5
    assert semisimple_check(4, -1)
    assert not semisimple_check(5, -1)
    assert not semisimple_check(6, -2)
    # delta = 0 only leaves odd levels up to five
    assert semisimple_check(1, 0) and semisimple_check(3, 0) and semisimple_check(5, 0)
    assert not semisimple_check(2, 0) and not semisimple_check(4, 0)
    assert not semisimple_check(6, 0) and not semisimple_check(7, 0)
    # non-integer points are always fine in characteristic zero
    assert semisimple_check(8, Fraction(1, 2))
    assert semisimple_check(8, None)
    # positive characteristic must not divide n!
    assert not semisimple_check(4, 11, char_e=2)
    assert not semisimple_check(4, 11, char_e=3)
    assert semisimple_check(4, 11, char_e=5)
    assert not semisimple_check(7, Fraction(1, 2), char_e=7)
    with pytest.raises(ValueError):
        semisimple_check(4, 11, char_e=1)


def test_semisimple_matches_nonvanishing_small():
    for n in range(2, 5):
        labels = all_cell_labels(n)
        dets = [gram_det(lbl).det for lbl in labels]
        for d0 in range(-10, 11):
            nonvanishing = all(fp_evaluate(det, Fraction(d0)) != 0 for det in dets)
            assert semisimple_check(n, d0) == nonvanishing, (n, d0)
