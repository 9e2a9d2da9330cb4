"""Shared helpers for the test suite: independent oracles and verdict
bookkeeping for the acceptance run.

The oracles here deliberately take different routes than the library code
they check (plain Gaussian elimination on stacked spans, truncated formal
substitution) so that agreement is evidence, not tautology.
"""

from fractions import Fraction

from chordbars import INF
from chordbars.linalg import rank

VERDICTS = []


def record(name, ok):
    VERDICTS.append((name, bool(ok)))
    assert ok, "acceptance criterion failed: %s" % name


# ---------------------------------------------------------------------------
# sublevel homology rank oracle
# ---------------------------------------------------------------------------

def _degree_d_prefix(cx, d, cut):
    return [g for g in cx.generators if g.degree == d and g.action < cut]


def rank_phi(cx, c, s):
    """Rank of the inclusion-induced map H(C^{<c}) -> H(C^{<s}), c <= s.

    Per degree: rank(span(cycles below c) + span(boundaries below s))
    minus rank(span(boundaries below s)), all by exact elimination.
    """
    assert c <= s
    field = cx.field
    total = 0
    degrees = sorted({g.degree for g in cx.generators})
    for d in degrees:
        cols_s = _degree_d_prefix(cx, d, s)
        if not cols_s:
            continue
        index_s = {g.id: i for i, g in enumerate(cols_s)}
        # cycles of the c-sublevel, in s-sublevel coordinates
        cols_c = _degree_d_prefix(cx, d, c)
        cycles = []
        if cols_c:
            rows = [g for g in cx.generators if g.degree == d - 1]
            row_index = {g.id: i for i, g in enumerate(rows)}
            M = [[field.zero_raw] * len(cols_c) for _ in rows]
            for j, g in enumerate(cols_c):
                for tgt, q in cx.differential_raw(g.id).items():
                    M[row_index[tgt]][j] = q
            from chordbars.linalg import nullspace
            for v in nullspace(M, field, ncols=len(cols_c)):
                vec = [field.zero_raw] * len(cols_s)
                for j, q in enumerate(v):
                    vec[index_s[cols_c[j].id]] = q
                cycles.append(vec)
        # boundaries that exist in the s-sublevel
        bounds = []
        for g in cx.generators:
            if g.degree != d + 1 or not g.action < s:
                continue
            vec = [field.zero_raw] * len(cols_s)
            hit = False
            for tgt, q in cx.differential_raw(g.id).items():
                vec[index_s[tgt]] = q
                hit = True
            if hit:
                bounds.append(vec)
        if cycles:
            total += rank(cycles + bounds, field) - (
                rank(bounds, field) if bounds else 0)
    return total


# ---------------------------------------------------------------------------
# linearization oracle: truncated formal substitution
# ---------------------------------------------------------------------------

def linearized_rows_oracle(D, eps, window, l=INF):
    """Rows of the window linearization by substituting value + variable
    for every letter and keeping the part linear in the variables.

    Every letter contributes (constant, variable): an augmented pure letter
    contributes (eps(p), p-hat), everything else (0, letter-hat).  Products
    are truncated at linear order; variables of chords that are not
    forward-mixed or not in the window are discarded at the end.
    """
    field = D.field
    a, b = window
    kept = {m.label for m in D.forward_mixed()
            if a <= m.length and (b == INF or m.length < b)}
    rows = {}
    for label in kept:
        acc = {}
        for word, q in D.diff_of(label).terms.items():
            const = field.one_raw
            lin = {}
            for lab in word:
                ch = D.chord(lab)
                if ch.kind == "pure" and (l == INF or ch.length < l):
                    lc = eps.value_raw(lab)
                else:
                    lc = field.zero_raw
                new_lin = {}
                for k, v in lin.items():
                    w = field.mul(v, lc)
                    if w:
                        new_lin[k] = w
                hat = field.mul(const, field.one_raw)
                if hat:
                    new_lin[lab] = field.add(new_lin.get(lab, field.zero_raw),
                                             hat)
                    if not new_lin[lab]:
                        del new_lin[lab]
                const = field.mul(const, lc)
                lin = new_lin
            for k, v in lin.items():
                w = field.mul(q, v)
                prev = acc.get(k, field.zero_raw)
                tot = field.add(prev, w)
                if tot:
                    acc[k] = tot
                else:
                    acc.pop(k, None)
        trimmed = {k: v for k, v in acc.items() if k in kept}
        if trimmed:
            rows[label] = trimmed
    return rows


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------

def bars_as_tuples(B):
    return sorted((b.start, b.end, b.degree) for b in B.bars)


def half(x):
    return Fraction(x) / 2
