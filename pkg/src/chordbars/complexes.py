"""Filtered chain complexes with a half-open action window.

A complex is a finite basis of generators, each carrying an exact rational
action and an integer degree, plus a degree -1 differential that strictly
decreases action.  The window [a, b) bounds where generators may live; the
upper bound may be +infinity (``math.inf`` is used purely as an order/
serialization sentinel, it never enters field arithmetic).
"""

import math
from fractions import Fraction

from . import linalg
from .errors import (ActionIncrease, ActionOutsideWindow, DegreeMismatch,
                     DuplicateId, ForeignGenerator, LevelOutsideWindow,
                     NotSquareZero, ValidationError, WindowNotNested)
from .fields import Field, Scalar

INF = math.inf
NEG_INF = -math.inf


def as_action(value, allow_inf=False):
    """Coerce an exact action value (int, str, Fraction; optionally inf)."""
    if value in (INF, "inf") and allow_inf:
        return INF
    if isinstance(value, (float, bool)):
        raise ValidationError("action values must be exact rationals, got %r" % (value,))
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError("cannot read action value %r" % (value,))


class Generator:
    """A basis element: opaque id, exact action, integer degree."""

    __slots__ = ("id", "action", "degree")

    def __init__(self, id, action, degree):
        if not isinstance(id, str) or not id:
            raise ValidationError("generator id must be a nonempty string, got %r" % (id,))
        self.id = id
        self.action = as_action(action)
        self.degree = int(degree)

    @property
    def sort_key(self):
        return (self.action, self.id)

    def __repr__(self):
        return "Generator(%r, action=%s, degree=%d)" % (self.id, self.action, self.degree)

    def __eq__(self, other):
        return (isinstance(other, Generator)
                and (self.id, self.action, self.degree) == (other.id, other.action, other.degree))

    def __hash__(self):
        return hash((self.id, self.action, self.degree))


class FilteredComplex:
    """Immutable validated filtered complex over an exact field.

    ``differential`` maps a generator id to its boundary chain; chains are
    sparse {id: Scalar} maps with no zero entries.  Construction performs the
    full invariant check (square-zero, strict action decrease, degree -1,
    window containment) and raises a specific error with a witness.
    """

    __slots__ = ("field", "window", "generators", "_diff", "_by_id")

    def __init__(self, field, window, generators, differential):
        if not isinstance(field, Field):
            raise ValidationError("field must be a Field, got %r" % (field,))
        self.field = field
        a = as_action(window[0])
        b = as_action(window[1], allow_inf=True)
        if not a < b:
            raise ValidationError("empty window [%s, %s)" % (a, b))
        self.window = (a, b)

        gens = []
        for g in generators:
            gens.append(g if isinstance(g, Generator) else Generator(*g))
        gens.sort(key=lambda g: g.sort_key)
        by_id = {}
        for g in gens:
            if g.id in by_id:
                raise DuplicateId("generator id %r appears twice" % g.id)
            by_id[g.id] = g
            if not (a <= g.action and g.action < b):
                raise ActionOutsideWindow("generator %r has action %s outside [%s, %s)"
                                          % (g.id, g.action, a, b))
        self.generators = tuple(gens)
        self._by_id = by_id

        # normalize the differential to raw coefficients, dropping zeros
        diff = {}
        for src_id, chain in differential.items():
            src = by_id.get(src_id)
            if src is None:
                raise ForeignGenerator("differential source %r is not a generator" % (src_id,))
            row = {}
            for tgt_id, coeff in chain.items():
                tgt = by_id.get(tgt_id)
                if tgt is None:
                    raise ForeignGenerator("differential of %r hits unknown id %r"
                                           % (src_id, tgt_id))
                c = field.coerce(coeff)
                if not c:
                    continue
                if tgt.degree != src.degree - 1:
                    raise DegreeMismatch(
                        "differential of %r (degree %d) hits %r (degree %d); expected degree %d"
                        % (src_id, src.degree, tgt_id, tgt.degree, src.degree - 1))
                if not tgt.action < src.action:
                    raise ActionIncrease(
                        "differential of %r (action %s) hits %r (action %s); "
                        "strict decrease required" % (src_id, src.action, tgt_id, tgt.action))
                row[tgt_id] = c
            if row:
                diff[src_id] = row
        self._diff = diff

        # exact square-zero check
        for g in self.generators:
            sq = self._boundary_raw(self._diff.get(g.id, {}))
            if sq:
                raise NotSquareZero("differential does not square to zero on %r" % g.id,
                                    witness=g.id)

    # construction aliases -----------------------------------------------------

    @classmethod
    def build(cls, field, window, generators, differential):
        return cls(field, window, generators, differential)

    # basic queries --------------------------------------------------------------

    def generator(self, gid):
        g = self._by_id.get(gid)
        if g is None:
            raise ForeignGenerator("unknown generator id %r" % (gid,))
        return g

    def has_generator(self, gid):
        return gid in self._by_id

    def __len__(self):
        return len(self.generators)

    def degrees(self):
        return sorted({g.degree for g in self.generators})

    def generators_of_degree(self, d):
        return [g for g in self.generators if g.degree == d]

    def differential_raw(self, gid):
        """Raw sparse boundary row of one generator ({} if zero)."""
        return dict(self._diff.get(gid, ()))

    def boundary(self, x):
        """Boundary of a chain (sparse {id: Scalar} in, same out)."""
        raw = self._coerce_chain(x)
        out = self._boundary_raw(raw)
        return {gid: Scalar(self.field, c) for gid, c in out.items()}

    def _coerce_chain(self, x):
        raw = {}
        for gid, coeff in x.items():
            if gid not in self._by_id:
                raise ForeignGenerator("chain references unknown id %r" % (gid,))
            c = self.field.coerce(coeff)
            if c:
                raw[gid] = c
        return raw

    def _boundary_raw(self, raw_chain):
        field = self.field
        out = {}
        for gid, c in raw_chain.items():
            for tgt, d in self._diff.get(gid, {}).items():
                acc = field.add(out.get(tgt, field.zero_raw), field.mul(c, d))
                if acc:
                    out[tgt] = acc
                else:
                    out.pop(tgt, None)
        return out

    def action_of(self, x):
        """Max generator action over nonzero coefficients; -inf for zero."""
        raw = self._coerce_chain(x)
        if not raw:
            return NEG_INF
        return max(self._by_id[gid].action for gid in raw)

    # window operations ------------------------------------------------------------

    def sublevel(self, c):
        """Subcomplex spanned by generators with action < c (window kept)."""
        a, b = self.window
        c = as_action(c, allow_inf=True)
        if not (a <= c and c <= b):
            raise LevelOutsideWindow("level %s outside window [%s, %s)" % (c, a, b))
        keep = {g.id for g in self.generators if g.action < c}
        gens = [g for g in self.generators if g.id in keep]
        # closed under the differential because targets have smaller action
        diff = {gid: dict(row) for gid, row in self._diff.items() if gid in keep}
        return FilteredComplex(self.field, self.window, gens, diff)

    def restrict_window(self, a2, b2):
        """Quotient-and-subcomplex for a nested window [a2, b2)."""
        a, b = self.window
        a2 = as_action(a2)
        b2 = as_action(b2, allow_inf=True)
        if not (a <= a2 and b2 <= b and a2 < b2):
            raise WindowNotNested("window [%s, %s) is not nested in [%s, %s)"
                                  % (a2, b2, a, b))
        keep = {g.id for g in self.generators if a2 <= g.action and g.action < b2}
        gens = [g for g in self.generators if g.id in keep]
        diff = {}
        for gid, row in self._diff.items():
            if gid not in keep:
                continue
            # terms below the new bottom are killed by the quotient
            new_row = {tgt: c for tgt, c in row.items() if tgt in keep}
            if new_row:
                diff[gid] = new_row
        return FilteredComplex(self.field, (a2, b2), gens, diff)

    # linear algebra views ------------------------------------------------------------

    def boundary_matrix(self, degree):
        """Dense raw matrix of ∂ from degree to degree-1, action-ordered columns.

        Returns (matrix rows-by-cols, row generators, column generators);
        rows are the degree-1 generators, also in action order.
        """
        cols = self.generators_of_degree(degree)
        rows = self.generators_of_degree(degree - 1)
        row_index = {g.id: i for i, g in enumerate(rows)}
        M = linalg.zeros(len(rows), len(cols), self.field)
        for j, g in enumerate(cols):
            for tgt, c in self._diff.get(g.id, {}).items():
                M[row_index[tgt]][j] = c
        return M, rows, cols

    def homology_rank(self, degree):
        """dim ker ∂|_degree − rank ∂|_(degree+1), by exact elimination."""
        Md, _, cols = self.boundary_matrix(degree)
        n_d = len(cols)
        rank_d = linalg.rank(Md, self.field) if Md and n_d else 0
        Mup, _, cols_up = self.boundary_matrix(degree + 1)
        rank_up = linalg.rank(Mup, self.field) if Mup and cols_up else 0
        return (n_d - rank_d) - rank_up

    # comparisons -----------------------------------------------------------------------

    def same_as(self, other):
        """Structural equality: field, window, generators and differential."""
        return (isinstance(other, FilteredComplex)
                and self.field is other.field
                and self.window == other.window
                and self.generators == other.generators
                and self._diff == other._diff)

    def __repr__(self):
        a, b = self.window
        return ("FilteredComplex(%s, window=[%s, %s), %d generators)"
                % (self.field.tag, a, "inf" if b == INF else b, len(self.generators)))


def random_complex(rng, field, max_generators=20, max_degree=3,
                   window=(0, 16), grid_step=Fraction(1, 4), allow_inf_top=True):
    """Seeded random valid complex.

    Actions are sampled on a rational grid; generators are processed in
    action order and each differential is drawn from the exact kernel of the
    already-built boundary restricted to strictly-lower generators one degree
    down, so ∂² = 0 holds by construction (no rejection loop).
    """
    a = Fraction(window[0])
    b_val = Fraction(window[1])
    n = rng.randint(1, max_generators)
    slots = int((b_val - a) / grid_step)
    gens = []
    for i in range(n):
        action = a + grid_step * rng.randrange(slots)
        degree = rng.randint(0, max_degree)
        gens.append(Generator("g%02d" % i, action, degree))
    gens.sort(key=lambda g: g.sort_key)

    diff = {}
    # boundary rows of already-processed generators, per degree, as raw dicts
    processed = []
    for g in gens:
        allowed = [h for h in processed
                   if h.degree == g.degree - 1 and h.action < g.action]
        if allowed and rng.random() < 0.8:
            # matrix of ∂ restricted to the allowed targets (their own targets
            # live two degrees down among processed generators)
            targets2 = sorted({tid for h in allowed for tid in diff.get(h.id, ())})
            t2_index = {tid: i for i, tid in enumerate(targets2)}
            M = linalg.zeros(len(targets2), len(allowed), field)
            for j, h in enumerate(allowed):
                for tid, c in diff.get(h.id, {}).items():
                    M[t2_index[tid]][j] = c
            kernel = linalg.nullspace(M, field, ncols=len(allowed))
            if kernel:
                picks = rng.sample(kernel, k=min(len(kernel), rng.randint(1, 3)))
                combo = [field.zero_raw] * len(allowed)
                for v in picks:
                    c = field.random_unit_raw(rng)
                    combo = [field.add(x, field.mul(c, y)) for x, y in zip(combo, v)]
                row = {h.id: c for h, c in zip(allowed, combo) if c}
                if row:
                    diff[g.id] = row
        processed.append(g)

    top = INF if (allow_inf_top and rng.random() < 0.3) else b_val
    return FilteredComplex(field, (a, top), gens, diff)
