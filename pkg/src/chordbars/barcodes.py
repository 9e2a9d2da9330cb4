"""Barcodes of filtered complexes.

Two independent computations are provided on purpose:

* :func:`canonical_form` / :func:`barcode_from_canonical` — an
  action-preserving upper-triangular change of basis after which the
  differential maps each basis element to zero or to a single partner
  (killer/killed pairing), read off as bars;

* :func:`barcode_definitional` — a literal rank bookkeeping over sublevel
  complexes: bars alive past a level are counted through dimensions of
  (cycles-below + boundaries-below) spans.  With exact rationals the
  "sufficiently small epsilon" of one-sided limits is realized by
  half-the-minimal-gap probes, which the ``<=`` comparisons below encode.

They share no reduction code; agreement between them is the core oracle test
of the package.
"""

from collections import Counter
from fractions import Fraction

from . import linalg
from .complexes import INF, FilteredComplex
from .errors import EngineMismatch, InconsistentTable, ValidationError
from .linalg import RankAccumulator


class Bar:
    """Half-open interval [start, end) with optional homological degree."""

    __slots__ = ("start", "end", "degree")

    def __init__(self, start, end, degree=None):
        if isinstance(start, float):
            raise ValidationError("bar start must be finite exact, got %r" % (start,))
        start = Fraction(start)
        if end != INF:
            end = Fraction(end)
        if not start < end:
            raise ValidationError("bar needs start < end, got [%s, %s)" % (start, end))
        self.start = start
        self.end = end
        self.degree = degree

    @property
    def is_infinite(self):
        return self.end == INF

    @property
    def length(self):
        return INF if self.is_infinite else self.end - self.start

    def contains(self, level):
        return self.start <= level and level < self.end

    @property
    def key(self):
        dk = (0, 0) if self.degree is None else (1, self.degree)
        ek = (1, Fraction(0)) if self.is_infinite else (0, self.end)
        return (dk, self.start, ek)

    def astuple(self):
        return (self.start, self.end, self.degree)

    def __eq__(self, other):
        return isinstance(other, Bar) and self.astuple() == other.astuple()

    def __hash__(self):
        return hash(self.astuple())

    def __repr__(self):
        e = "inf" if self.is_infinite else str(self.end)
        d = "" if self.degree is None else " deg %d" % self.degree
        return "Bar[%s, %s)%s" % (self.start, e, d)


class Barcode:
    """Finite multiset of bars; equality is multiset equality."""

    __slots__ = ("bars",)

    def __init__(self, bars=()):
        self.bars = tuple(sorted(bars, key=lambda b: b.key))

    def __iter__(self):
        return iter(self.bars)

    def __len__(self):
        return len(self.bars)

    def __eq__(self, other):
        return isinstance(other, Barcode) and Counter(self.bars) == Counter(other.bars)

    def __repr__(self):
        return "Barcode(%s)" % (list(self.bars),)

    def in_degree(self, d):
        return Barcode(b for b in self.bars if b.degree == d)

    def degrees(self):
        return sorted({b.degree for b in self.bars if b.degree is not None})

    def intervals(self):
        """Degree-stripped multiset, for degree-agnostic comparisons."""
        return Counter((b.start, b.end) for b in self.bars)

    def persisting_count(self, level, start_below=None):
        """Bars containing `level`, optionally restricted to start < start_below."""
        n = 0
        for b in self.bars:
            if b.contains(level) and (start_below is None or b.start < start_below):
                n += 1
        return n

    def endpoints_at(self, l):
        """Number of bar endpoints (starts plus finite ends) equal to l."""
        return sum((b.start == l) + (b.end == l) for b in self.bars)

    def longer_than(self, threshold):
        return [b for b in self.bars if b.length >= threshold]


def persisting_count(B, level, start_below=None):
    return B.persisting_count(level, start_below)


def endpoints_at(B, l):
    return B.endpoints_at(l)


# ---------------------------------------------------------------------------
# canonical pairing form
# ---------------------------------------------------------------------------

class BarannikovForm:
    """Result of the pairing reduction.

    ``order`` lists generator ids sorted by (action, id); ``base_change`` is
    the upper-triangular matrix G over that order (new basis vectors as
    columns, raw field values); after the change of basis the differential
    maps each killer to its killed partner with coefficient exactly 1 and
    every other basis vector to 0.
    """

    __slots__ = ("field", "order", "base_change", "pairs", "unpaired")

    def __init__(self, field, order, base_change, pairs, unpaired):
        self.field = field
        self.order = tuple(order)
        self.base_change = base_change
        self.pairs = tuple(pairs)
        self.unpaired = tuple(unpaired)


def _find_low(col_of, T, j, n):
    for i in range(n - 1, -1, -1):
        if T[i][j]:
            return i
    return None


def canonical_form(C):
    """Action-preserving reduction of the differential to killer/killed form.

    Left-to-right column reduction in action order with lowest-entry pairing;
    every column operation is mirrored by the row operation that makes the
    whole transformation a conjugation, so the output matrix stays the matrix
    of the same differential in the new basis.
    """
    field = C.field
    gens = C.generators  # already sorted by (action, id)
    n = len(gens)
    index = {g.id: i for i, g in enumerate(gens)}
    T = linalg.zeros(n, n, field)
    for j, g in enumerate(gens):
        for tgt, c in C.differential_raw(g.id).items():
            T[index[tgt]][j] = c
    G = linalg.identity(n, field)

    low_owner = {}
    pairs_idx = {}  # killer column -> killed row
    for j in range(n):
        while True:
            i = _find_low(None, T, j, n)
            if i is None:
                break
            j2 = low_owner.get(i)
            if j2 is None:
                low_owner[i] = j
                pairs_idx[j] = i
                break
            # cancel the shared low: column op col_j -= a*col_j2 ...
            a = field.div(T[i][j], T[i][j2])
            for r in range(i + 1):
                if T[r][j2]:
                    T[r][j] = field.sub(T[r][j], field.mul(a, T[r][j2]))
                if G[r][j2]:
                    G[r][j] = field.sub(G[r][j], field.mul(a, G[r][j2]))
            for r in range(i + 1, n):
                if G[r][j2]:
                    G[r][j] = field.sub(G[r][j], field.mul(a, G[r][j2]))
            # ... mirrored by the row op that re-expresses old basis vectors;
            # it only touches columns m > j (strict upper-triangularity).
            row_j = T[j]
            row_j2 = T[j2]
            for m in range(j + 1, n):
                if row_j[m]:
                    row_j2[m] = field.add(row_j2[m], field.mul(a, row_j[m]))

    killed = set(pairs_idx.values())
    killers = set(pairs_idx)

    # cleanup: clear entries above each pair pivot.  Support rows of killer
    # columns are never killer indices themselves (a consequence of T^2 = 0
    # with distinct lows), so the mirrored column ops below add zero columns
    # and the matrix only changes through the explicit row updates.
    for j, i in sorted(pairs_idx.items(), key=lambda kv: -kv[1]):
        pivot = T[i][j]
        assert pivot
        for h in range(i - 1, -1, -1):
            if not T[h][j]:
                continue
            assert h not in killers, "pivot-row support hit a killer column"
            d = field.div(T[h][j], pivot)
            # conjugation: basis vector at i absorbs d * (vector at h)
            for r in range(h + 1):
                if G[r][h]:
                    G[r][i] = field.add(G[r][i], field.mul(d, G[r][h]))
            Th, Ti = T[h], T[i]
            for m in range(n):
                if Ti[m]:
                    Th[m] = field.sub(Th[m], field.mul(d, Ti[m]))
            assert not T[h][j]

    # normalize pivots to 1 by rescaling the killed basis vectors
    one = field.one_raw
    for j, i in pairs_idx.items():
        pivot = T[i][j]
        if pivot != one:
            inv = field.inv(pivot)
            for r in range(i + 1):
                if G[r][i]:
                    G[r][i] = field.mul(pivot, G[r][i])
            Ti = T[i]
            for m in range(n):
                if Ti[m]:
                    Ti[m] = field.mul(inv, Ti[m])

    if __debug__:
        # final shape: exactly one unit entry per pair, nothing else
        for j in range(n):
            for i in range(n):
                expect = one if pairs_idx.get(j) == i else field.zero_raw
                assert T[i][j] == expect, "reduction left a stray entry"
        # conjugation witness: D G = G T exactly
        D = linalg.zeros(n, n, field)
        for j, g in enumerate(gens):
            for tgt, c in C.differential_raw(g.id).items():
                D[index[tgt]][j] = c
        assert linalg.matmul(D, G, field) == linalg.matmul(G, T, field)

    order = [g.id for g in gens]
    pairs = [(order[j], order[i]) for j, i in sorted(pairs_idx.items())]
    unpaired = [order[m] for m in range(n) if m not in killers and m not in killed]
    return BarannikovForm(field, order, G, pairs, unpaired)


def barcode_from_canonical(F, C):
    """Read the barcode off a canonical form of C."""
    bars = []
    for killer, killed in F.pairs:
        gk = C.generator(killer)
        gd = C.generator(killed)
        assert gd.action < gk.action
        bars.append(Bar(gd.action, gk.action, gd.degree))
    for gid in F.unpaired:
        g = C.generator(gid)
        bars.append(Bar(g.action, INF, g.degree))
    return Barcode(bars)


# ---------------------------------------------------------------------------
# definitional oracle
# ---------------------------------------------------------------------------

def barcode_definitional(C):
    """Barcode straight from sublevel rank bookkeeping (independent oracle).

    Per degree d: W(s, e) = number of degree-d classes born at or below s and
    still alive just past e equals dim(Z_{<=s} + B_{<=e}) - dim B_{<=e}; the
    bar multiset is recovered from second differences of W.  ``<=`` on a
    rational grid realizes the probes at level + (minimal gap)/2.
    """
    field = C.field
    bars = []
    for d in C.degrees():
        Md, _, cols_d = C.boundary_matrix(d)
        Mup, rows_up, cols_up = C.boundary_matrix(d + 1)
        n_d = len(cols_d)
        if n_d == 0:
            continue
        assert [g.id for g in rows_up] == [g.id for g in cols_d]
        start_levels = sorted({g.action for g in cols_d})
        crit = sorted({g.action for g in cols_d} | {g.action for g in cols_up})
        k = len(crit)

        # boundary columns (vectors over the degree-d basis) in action order
        up_cols = [[Mup[r][j] for r in range(n_d)] for j in range(len(cols_up))]
        up_actions = [g.action for g in cols_up]

        # dim B_{<=e} for every critical level e
        dimB = []
        accB = RankAccumulator(field)
        p = 0
        for e in crit:
            while p < len(up_cols) and up_actions[p] <= e:
                accB.add(up_cols[p])
                p += 1
            dimB.append(accB.rank)

        W_prev = [0] * k
        col_actions = [g.action for g in cols_d]
        for s in start_levels:
            m = 0
            while m < n_d and col_actions[m] <= s:
                m += 1
            sub = [row[:m] for row in Md]
            kernel = linalg.nullspace(sub, field, ncols=m)
            acc = RankAccumulator(field)
            zero_tail = [field.zero_raw] * (n_d - m)
            for v in kernel:
                acc.add(v + zero_tail)
            W_row = []
            p = 0
            for e_idx, e in enumerate(crit):
                while p < len(up_cols) and up_actions[p] <= e:
                    acc.add(up_cols[p])
                    p += 1
                W_row.append(acc.rank - dimB[e_idx])

            # A(e) = bars starting exactly at s, alive past crit[e]
            A = [w - wp for w, wp in zip(W_row, W_prev)]
            s_idx = crit.index(s)
            for e_idx in range(s_idx + 1, k):
                died = A[e_idx - 1] - A[e_idx]
                assert died >= 0
                for _ in range(died):
                    bars.append(Bar(s, crit[e_idx], d))
            for _ in range(A[k - 1]):
                bars.append(Bar(s, INF, d))
            W_prev = W_row
    return Barcode(bars)


def barcode_of(C, engine="canonical"):
    """Barcode of a complex; engine one of canonical|definitional|both."""
    if engine == "canonical":
        return barcode_from_canonical(canonical_form(C), C)
    if engine == "definitional":
        return barcode_definitional(C)
    if engine == "both":
        b1 = barcode_from_canonical(canonical_form(C), C)
        b2 = barcode_definitional(C)
        if b1 != b2:
            raise EngineMismatch(
                "reduction and definitional engines disagree: %r vs %r" % (b1, b2))
        return b1
    raise ValidationError("unknown engine %r" % (engine,))


# ---------------------------------------------------------------------------
# table extraction and recovery
# ---------------------------------------------------------------------------

def extract_table(B):
    """Critical values and the persisting-count table of a barcode.

    Probes sit between consecutive critical values (and one unit above the
    top); entry [j][i] counts bars starting exactly at crit[j] that are
    still alive at probe i.  This is the data the recovery construction needs.
    """
    crit = sorted({b.start for b in B.bars}
                  | {b.end for b in B.bars if not b.is_infinite})
    k = len(crit)
    probes = [(crit[i] + crit[i + 1]) / 2 for i in range(k - 1)]
    if k:
        probes.append(crit[k - 1] + 1)
    table = [[0] * k for _ in range(k)]
    for b in B.bars:
        j = crit.index(b.start)
        for i in range(j, k):
            if b.contains(probes[i]):
                table[j][i] += 1
    return crit, table


def recover(critical_values, table):
    """Rebuild the interval multiset from a persisting-count table.

    Inverse of :func:`extract_table`; the output is degree-agnostic (bars
    carry degree None).  Monotonicity violations raise InconsistentTable.
    """
    crit = [Fraction(c) if not isinstance(c, Fraction) else c for c in critical_values]
    if sorted(crit) != crit or len(set(crit)) != len(crit):
        raise InconsistentTable("critical values must be strictly increasing")
    k = len(crit)
    if len(table) != k or any(len(row) != k for row in table):
        raise InconsistentTable("table must be %d x %d" % (k, k))
    bars = []
    for j in range(k):
        for i in range(k):
            v = table[j][i]
            if v < 0:
                raise InconsistentTable("negative count at (%d, %d)" % (j, i))
            if i < j and v != 0:
                raise InconsistentTable(
                    "bars starting at %s cannot be alive below it (entry (%d, %d))"
                    % (crit[j], j, i))
        for i in range(j, k - 1):
            died = table[j][i] - table[j][i + 1]
            if died < 0:
                raise InconsistentTable(
                    "persisting counts increased from probe %d to %d for start %s"
                    % (i, i + 1, crit[j]))
            for _ in range(died):
                bars.append(Bar(crit[j], crit[i + 1]))
        for _ in range(table[j][k - 1]):
            bars.append(Bar(crit[j], INF))
    return Barcode(bars)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def format_action(v):
    return "inf" if v == INF else str(v)


def barcode_table_lines(B):
    """One line per bar: "[start, end) deg d"."""
    return ["[%s, %s) deg %s" % (b.start, format_action(b.end),
                                 "-" if b.degree is None else b.degree)
            for b in B.bars]


def barcode_diagram_lines(B, width=48):
    """Plain-text bar diagram, one row per bar, columns scaled to width."""
    if not B.bars:
        return ["(empty barcode)"]
    starts = [b.start for b in B.bars]
    finite_ends = [b.end for b in B.bars if not b.is_infinite]
    lo = min(starts)
    hi = max(finite_ends + starts)
    if hi == lo:
        hi = lo + 1
    span = hi - lo
    lines = []
    for b in B.bars:
        c0 = int((b.start - lo) * (width - 1) / span)
        if b.is_infinite:
            c1 = width - 1
            tail = ">"
        else:
            c1 = max(c0 + 1, int((b.end - lo) * (width - 1) / span))
            tail = "|"
        row = " " * c0 + "=" * (c1 - c0) + tail
        label = "[%s, %s) deg %s" % (b.start, format_action(b.end),
                                     "-" if b.degree is None else b.degree)
        lines.append("%-22s %s" % (label, row))
    return lines


def barcode_csv_rows(B):
    """Rows for the plot-data emitter: start, end, degree."""
    rows = [("start", "end", "degree")]
    for b in B.bars:
        rows.append((str(b.start), format_action(b.end),
                     "" if b.degree is None else str(b.degree)))
    return rows
