"""Piecewise-linear paths with exact breakpoint arithmetic.

A :class:`PLPath` is a continuous piecewise-linear function given by its
breakpoints.  With ``Fraction`` inputs every operation here (evaluation,
sums, integrals, zero-crossings) is exact; the same code runs on floats for
the measured-profile mode of the displacement layer.
"""

from fractions import Fraction

from .errors import NonMonotoneTime, ValidationError


class PLPath:
    """Continuous piecewise-linear function on a closed interval."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = tuple((t, v) for t, v in points)
        if len(pts) < 2:
            raise ValidationError("a path needs at least two breakpoints")
        for (t0, _), (t1, _) in zip(pts, pts[1:]):
            if not t0 < t1:
                raise NonMonotoneTime("breakpoint times must strictly increase "
                                      "(%s then %s)" % (t0, t1))
        self.points = pts

    @classmethod
    def constant(cls, value, t0, t1):
        return cls(((t0, value), (t1, value)))

    @classmethod
    def linear(cls, t0, v0, t1, v1):
        return cls(((t0, v0), (t1, v1)))

    @property
    def t_start(self):
        return self.points[0][0]

    @property
    def t_end(self):
        return self.points[-1][0]

    @property
    def start_value(self):
        return self.points[0][1]

    @property
    def end_value(self):
        return self.points[-1][1]

    def breakpoint_times(self):
        return [t for t, _ in self.points]

    def __repr__(self):
        return "PLPath(%s)" % (list(self.points),)

    def __eq__(self, other):
        return isinstance(other, PLPath) and self.points == other.points

    def _locate(self, t):
        # index i with points[i].t <= t <= points[i+1].t
        assert self.t_start <= t <= self.t_end, "time %s outside path domain" % (t,)
        lo, hi = 0, len(self.points) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.points[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        return lo

    def value(self, t):
        i = self._locate(t)
        (t0, v0), (t1, v1) = self.points[i], self.points[i + 1]
        if t == t0:
            return v0
        if t == t1:
            return v1
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def slope_after(self, t):
        """One-sided derivative just to the right of t."""
        assert t < self.t_end
        i = self._locate(t)
        if t == self.points[i + 1][0]:
            i += 1
        (t0, v0), (t1, v1) = self.points[i], self.points[i + 1]
        return (v1 - v0) / (t1 - t0)

    def slope_before(self, t):
        assert t > self.t_start
        i = self._locate(t)
        if t == self.points[i][0]:
            i -= 1
        (t0, v0), (t1, v1) = self.points[i], self.points[i + 1]
        return (v1 - v0) / (t1 - t0)

    def restrict(self, t0, t1):
        assert self.t_start <= t0 < t1 <= self.t_end
        pts = [(t0, self.value(t0))]
        for t, v in self.points:
            if t0 < t < t1:
                pts.append((t, v))
        pts.append((t1, self.value(t1)))
        return PLPath(pts)

    def pieces(self):
        """Iterate (t0, v0, t1, v1) over the linear pieces."""
        for (t0, v0), (t1, v1) in zip(self.points, self.points[1:]):
            yield t0, v0, t1, v1

    # pointwise arithmetic ----------------------------------------------------

    def _zip_with(self, other, op):
        if isinstance(other, PLPath):
            assert (self.t_start, self.t_end) == (other.t_start, other.t_end), \
                "paths live on different intervals"
            ts = merge_times(self.breakpoint_times(), other.breakpoint_times())
            return PLPath([(t, op(self.value(t), other.value(t))) for t in ts])
        return PLPath([(t, op(v, other)) for t, v in self.points])

    def __add__(self, other):
        return self._zip_with(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip_with(other, lambda x, y: x - y)

    def __neg__(self):
        return PLPath([(t, -v) for t, v in self.points])

    def scale(self, c):
        return PLPath([(t, c * v) for t, v in self.points])

    def min_value(self):
        return min(v for _, v in self.points)

    def max_value(self):
        return max(v for _, v in self.points)

    def integral(self, t0=None, t1=None):
        """Exact trapezoid integral over [t0, t1] (defaults: whole domain)."""
        if t0 is None:
            t0 = self.t_start
        if t1 is None:
            t1 = self.t_end
        if t0 == t1:
            return 0 * self.points[0][1]
        p = self.restrict(t0, t1)
        total = 0
        for a, va, b, vb in p.pieces():
            total = total + (va + vb) * (b - a) / 2
        return total

    def zeros(self):
        """Exact zero set: (isolated roots, intervals where identically 0)."""
        roots = []
        flats = []
        for t0, v0, t1, v1 in self.pieces():
            if v0 == 0 and v1 == 0:
                flats.append((t0, t1))
            elif v0 == 0:
                roots.append(t0)
            elif v1 == 0:
                roots.append(t1)
            elif (v0 < 0) != (v1 < 0):
                roots.append(t0 + (t1 - t0) * v0 / (v0 - v1))
        # merge duplicates from shared breakpoints, keep sorted
        out = []
        for r in sorted(roots):
            if not out or out[-1] != r:
                out.append(r)
        return out, _merge_intervals(flats)


def _merge_intervals(ivs):
    merged = []
    for a, b in sorted(ivs):
        if merged and merged[-1][1] == a:
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return merged


def merge_times(*lists):
    """Sorted union of breakpoint-time lists."""
    seen = set()
    for ts in lists:
        seen.update(ts)
    return sorted(seen)


def as_fraction(x):
    """Exact conversion for schema values; floats are rejected on purpose."""
    if isinstance(x, float):
        raise ValidationError("floats are not allowed in exact contexts: %r" % (x,))
    return Fraction(x)
