"""Closed-form action coefficients on the orthogonal basis, with checks.

For a cell module at a sanctioned parameter value the Gram form is
definite enough to orthogonalize, and the generators act on the resulting
basis by short closed formulas in step contents: the contraction
generator has explicit diagonal entries, the transposition generator
mixes at most two basis vectors, and the squared norm of each basis
vector is a product of branching-edge factors along its path.
verify_seminormal recomputes everything from raw diagram arithmetic and
compares, entry by entry.
"""

from __future__ import annotations

from fractions import Fraction

from .combinat import (
    _tableau_sort_key,
    apply_transposition,
    cell_label,
    enumerate_updown,
    k_equivalence_class,
    tableau_content,
    validate_tableau,
)
from .diagram import is_sanctioned, orthogonal_vectors_oracle
from .gram import gamma_add_box, gamma_remove_box
from .ring import DeltaScalar, _as_fraction

__all__ = [
    "e_diag_closed",
    "s_action_closed",
    "norm_closed",
    "verify_seminormal",
]

_ONE = DeltaScalar.constant(1)
_TWO = DeltaScalar.constant(2)


def e_diag_closed(t, k):
    """Diagonal coefficient of the contraction generator e_k at tableau t.

    Defined only when steps k and k+1 cancel (t_{k-1} == t_{k+1}); the
    other members of the k-equivalence class enter through a product of
    content sums over content differences.
    """
    t = validate_tableau(t)
    n = len(t) - 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range for n={n}")
    if t[k - 1] != t[k + 1]:
        raise ValueError(f"steps {k},{k + 1} of {t} do not cancel")
    ct = tableau_content(t, k)
    out = _TWO * ct + _ONE
    for s in k_equivalence_class(t, k):
        if s == t:
            continue
        cs = tableau_content(s, k)
        out = out * (ct + cs) / (ct - cs)
    return out


def s_action_closed(t, k):
    """Coefficients of f_t . s_k on the orthogonal basis, as {tableau: value}.

    Three regimes: a missing swap partner gives +-1 on the diagonal; a
    valid partner u gives 1/(content gap) on the diagonal plus an entry at
    u whose form depends on which of t, u comes first in enumeration
    order.  When steps k and k+1 cancel, only the diagonal coefficient is
    returned: the rest of the column is the contraction block scaled by
    content sums, s_ut = e_ut / (c_u(k) + c_t(k)) over the k-class, which
    verify_seminormal checks entry by entry.
    """
    t = validate_tableau(t)
    n = len(t) - 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range for n={n}")
    if t[k - 1] == t[k + 1]:
        ct = tableau_content(t, k)
        return {t: (e_diag_closed(t, k) - _ONE) / (_TWO * ct)}
    gap = tableau_content(t, k + 1) - tableau_content(t, k)
    u = apply_transposition(t, k)
    if u is None:
        return {t: _ONE / gap}
    out = {t: _ONE / gap}
    if _tableau_sort_key(u) > _tableau_sort_key(t):
        out[u] = _ONE
    else:
        out[u] = (gap + _ONE) * (gap - _ONE) / (gap * gap)
    return out


def norm_closed(t):
    """Squared norm of the orthogonal basis vector at t.

    One branching-edge factor per step: an added box contributes the
    factor of the edge that removes it again, a removed box the factor of
    the edge that adds it back.
    """
    t = validate_tableau(t)
    out = _ONE
    for i in range(1, len(t)):
        prev, cur = t[i - 1], t[i]
        f = (i - sum(cur)) // 2
        parent = cell_label(i, f, cur)
        if sum(cur) > sum(prev):
            box = _changed_box(prev, cur)
            out = out * gamma_remove_box(parent, box).value
        else:
            box = _changed_box(cur, prev)
            out = out * gamma_add_box(parent, box).value
    return out


def _changed_box(small, large):
    for r in range(len(large)):
        a = small[r] if r < len(small) else 0
        if large[r] != a:
            return (r + 1, large[r])
    raise AssertionError(f"{small} -> {large} adds no box")


def _check(report, name, failures, count):
    report["checks"].append(
        {"name": name, "count": count, "pass": not failures, "failures": failures[:5]}
    )


def verify_seminormal(label, delta0):
    """Compare every closed-form coefficient against diagram arithmetic.

    Needs a sanctioned parameter value (an integer far enough from zero
    that no content gap or norm can vanish); raises ValueError otherwise.
    Returns a JSON-ready report; report["pass"] is the overall verdict.
    """
    label = cell_label(*label)
    delta0 = _as_fraction(delta0)
    if not is_sanctioned(label.n, delta0):
        raise ValueError(
            f"delta={delta0} is not sanctioned for n={label.n}"
            f" (need an integer with |delta| >= {2 * label.n + 1})"
        )
    data = orthogonal_vectors_oracle(label, delta0)
    tabs = data.tableaux
    index = {t: i for i, t in enumerate(tabs)}
    m = len(tabs)
    n = label.n
    report = {
        "cell": {"n": label.n, "f": label.f, "shape": list(label.shape)},
        "delta": str(delta0),
        "tableaux": m,
        "checks": [],
    }

    # orthogonality: vectors^T gram vectors is diag(norms)
    failures = []
    count = 0
    gv = [
        [sum(data.gram[r][c] * data.vectors[j][c] for c in range(m)) for r in range(m)]
        for j in range(m)
    ]
    for i in range(m):
        for j in range(m):
            count += 1
            val = sum(data.vectors[i][r] * gv[j][r] for r in range(m))
            want = data.norms[i] if i == j else Fraction(0)
            if val != want:
                failures.append({"i": i, "j": j, "got": str(val), "want": str(want)})
    _check(report, "orthogonality", failures, count)

    failures = []
    count = 0
    for i, t in enumerate(tabs):
        count += 1
        val = norm_closed(t).evaluate(delta0)
        if val != data.norms[i]:
            failures.append({"t": i, "got": str(val), "want": str(data.norms[i])})
    _check(report, "norms", failures, count)

    failures = []
    count = 0
    for k in range(1, n):
        for j, t in enumerate(tabs):
            if t[k - 1] != t[k + 1]:
                continue
            count += 1
            val = e_diag_closed(t, k).evaluate(delta0)
            if val != data.e_coeffs[(j, j, k)]:
                failures.append(
                    {"t": j, "k": k, "got": str(val), "want": str(data.e_coeffs[(j, j, k)])}
                )
    _check(report, "contraction_diagonal", failures, count)

    # f_t . e_k = 0 for non-cancelling steps; cancelling columns are
    # supported on the k-class only
    failures = []
    count = 0
    for k in range(1, n):
        for j, t in enumerate(tabs):
            if t[k - 1] == t[k + 1]:
                support = {index[u] for u in k_equivalence_class(t, k)}
            else:
                support = set()
            for i in range(m):
                if i in support:
                    continue
                count += 1
                if data.e_coeffs[(i, j, k)] != 0:
                    failures.append(
                        {"i": i, "j": j, "k": k, "got": str(data.e_coeffs[(i, j, k)])}
                    )
    _check(report, "contraction_vanishing", failures, count)

    failures = []
    count = 0
    for k in range(1, n):
        for t in tabs:
            if t[k - 1] != t[k + 1]:
                continue
            cls = [index[u] for u in k_equivalence_class(t, k)]
            j = index[t]
            for i in cls:
                for u in cls:
                    count += 1
                    lhs = data.e_coeffs[(i, j, k)] * data.e_coeffs[(u, u, k)]
                    rhs = data.e_coeffs[(i, u, k)] * data.e_coeffs[(u, j, k)]
                    if lhs != rhs:
                        failures.append({"i": i, "j": j, "u": u, "k": k})
            count += 1
            trace = sum(data.e_coeffs[(u, u, k)] for u in cls)
            if trace != delta0:
                failures.append({"t": j, "k": k, "trace": str(trace)})
    _check(report, "contraction_rank_one_and_trace", failures, count)

    failures = []
    count = 0
    for k in range(1, n):
        for j, t in enumerate(tabs):
            expect = {
                index[u]: val.evaluate(delta0) for u, val in s_action_closed(t, k).items()
            }
            if t[k - 1] == t[k + 1]:
                # closed form covers the diagonal; the rest of the column is
                # the contraction block over content sums (anticommutator of
                # s_k with the step-content operator), zero off the k-class
                cls = set(k_equivalence_class(t, k))
                cj = tableau_content(t, k).evaluate(delta0)
                for i, u in enumerate(tabs):
                    count += 1
                    got = data.s_coeffs[(i, j, k)]
                    if u == t:
                        want = expect[i]
                    elif u in cls:
                        ci = tableau_content(u, k).evaluate(delta0)
                        want = data.e_coeffs[(i, j, k)] / (ci + cj)
                    else:
                        want = Fraction(0)
                    if got != want:
                        failures.append(
                            {"i": i, "j": j, "k": k, "got": str(got), "want": str(want)}
                        )
                continue
            for i in range(m):
                count += 1
                want = expect.get(i, Fraction(0))
                got = data.s_coeffs[(i, j, k)]
                if got != want:
                    failures.append(
                        {"i": i, "j": j, "k": k, "got": str(got), "want": str(want)}
                    )
    _check(report, "transposition_action", failures, count)

    failures = []
    count = 0
    for name, coeffs in (("e", data.e_coeffs), ("s", data.s_coeffs)):
        for k in range(1, n):
            for i in range(m):
                for j in range(m):
                    count += 1
                    lhs = data.norms[i] * coeffs[(i, j, k)]
                    rhs = data.norms[j] * coeffs[(j, i, k)]
                    if lhs != rhs:
                        failures.append({"gen": name, "i": i, "j": j, "k": k})
    _check(report, "adjoint_symmetry", failures, count)

    report["pass"] = all(c["pass"] for c in report["checks"])
    return report
