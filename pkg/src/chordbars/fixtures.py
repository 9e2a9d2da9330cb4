"""Named example inputs used by the demos, the CLI and the test-suite.

The shapes are parameterized by their lengths so tests can place chords
wherever a scenario needs them; all differentials are explicit input data.
The random generator builds two-component chord algebras whose square-zero
law holds by construction: chords are processed in increasing length and
each boundary is sampled from the exact kernel of the differential on the
span of admissible shorter words.
"""

import itertools
from fractions import Fraction

from . import linalg
from .complexes import INF, FilteredComplex, Generator
from .dga import AlgebraElement, Chord, ChordDGA
from .errors import ValidationError


def standard_unknot_shape(field, length=1):
    """A single degree-1 pure chord with vanishing boundary.

    The zero assignment is an augmentation, so every sub-level of the
    algebra admits one.
    """
    return ChordDGA(field, [Chord("c", length, 1, (0, 0))], {})


def stabilized_unknot_shape(field, l1=1, l2=2, l0=4):
    """Two chords each bounding the unit, tied together in one degree up.

    Because eps(d(c1)) = eps(1) = 1 for any candidate eps, the full algebra
    admits no augmentation; cutting below min(l1, l2) removes both
    obstructions.  (The unit-bounding chords must sit in degree 1 for the
    boundary to drop degree by one.)
    """
    l1, l2, l0 = Fraction(l1), Fraction(l2), Fraction(l0)
    if not (0 < l1 and 0 < l2 and max(l1, l2) < l0):
        raise ValidationError("lengths must satisfy 0 < l1, l2 < l0")
    chords = [Chord("c1", l1, 1, (0, 0)),
              Chord("c2", l2, 1, (0, 0)),
              Chord("c0", l0, 2, (0, 0))]
    diff = {"c1": {(): 1},
            "c2": {(): 1},
            "c0": {("c1",): 1, ("c2",): -1}}
    return ChordDGA(field, chords, diff)


def two_copy_template(field, separation, base_chords, morse_chords=(),
                      differential=None):
    """Chord set of a component and its far pushoff.

    Each base chord ``(name, length, degree)`` contributes pure copies
    ``name@0`` / ``name@1`` on the two components and a forward-mixed pair:
    ``q_name`` of length separation + length (same degree) and ``p_name`` of
    length separation - length (dual degree ``-degree - 1``).  Extra mixed
    chords cluster near the separation itself via ``(name, offset, degree)``
    triples.  The differential is caller data; the template only fixes
    labels, lengths, degrees and components.
    """
    sep = Fraction(separation)
    base = [(str(n), Fraction(l), int(d)) for n, l, d in base_chords]
    morse = [(str(n), Fraction(off), int(d)) for n, off, d in morse_chords]
    if base:
        lengths = [l for _, l, _ in base]
        if not sep > 2 * max(lengths):
            raise ValidationError(
                "separation %s must exceed twice the longest chord" % sep)
        for name, off, _ in morse:
            if not abs(off) < min(lengths):
                raise ValidationError(
                    "offset of %r reaches into the side clusters" % name)
    elif not sep > 0:
        raise ValidationError("separation must be positive")
    chords = []
    for name, l, d in base:
        chords.append(Chord(name + "@0", l, d, (0, 0)))
        chords.append(Chord(name + "@1", l, d, (1, 1)))
        chords.append(Chord("q_" + name, sep + l, d, (0, 1)))
        chords.append(Chord("p_" + name, sep - l, -d - 1, (0, 1)))
    for name, off, d in morse:
        chords.append(Chord(name, sep + off, d, (0, 1)))
    return ChordDGA(field, chords, differential or {})


# ---------------------------------------------------------------------------
# two separated action clusters forcing a long bar
# ---------------------------------------------------------------------------

def two_cluster_complex(rng, field, gap, bottom_count=5, top_count=4,
                        base=1, spread=Fraction(1, 4)):
    """Random valid complex whose generators sit in two action clusters
    separated by ``gap``.

    The bottom cluster lies inside [base, base + spread], the top inside
    [base + gap + spread, base + gap + 2·spread], so any bar with one foot
    in each cluster — or one infinite foot — has length ≥ gap.  With an odd
    bottom count, in-cluster bars (which consume two bottom generators each)
    always leave one generator over, forcing at least one bar of length
    ≥ gap no matter which valid differential is sampled.
    """
    if bottom_count % 2 == 0:
        raise ValidationError("the parity argument needs an odd bottom count")
    gap = Fraction(gap)
    base = Fraction(base)
    spread = Fraction(spread)
    if not (gap > 0 and base > 0 and spread > 0 and spread < gap):
        raise ValidationError("cluster geometry must satisfy 0 < spread < gap")

    def cluster_actions(count, lo):
        step = spread / (count + 1)
        ticks = [lo + step * (i + 1) for i in range(count)]
        rng.shuffle(ticks)
        return ticks

    gens = []
    for i, action in enumerate(cluster_actions(bottom_count, base)):
        gens.append(Generator("lo%02d" % i, action, rng.randint(0, 2)))
    top_lo = base + gap + spread
    for i, action in enumerate(cluster_actions(top_count, top_lo)):
        gens.append(Generator("hi%02d" % i, action, rng.randint(0, 3)))
    gens.sort(key=lambda g: g.sort_key)

    diff = {}
    processed = []
    for g in gens:
        allowed = [h for h in processed
                   if h.degree == g.degree - 1 and h.action < g.action]
        if allowed and rng.random() < 0.85:
            targets2 = sorted({t for h in allowed for t in diff.get(h.id, ())})
            t2_index = {t: i for i, t in enumerate(targets2)}
            M = [[field.zero_raw] * len(allowed) for _ in targets2]
            for j, h in enumerate(allowed):
                for t, c in diff.get(h.id, {}).items():
                    M[t2_index[t]][j] = c
            kernel = linalg.nullspace(M, field, ncols=len(allowed))
            if kernel:
                combo = [field.zero_raw] * len(allowed)
                for v in rng.sample(kernel, k=min(len(kernel),
                                                  rng.randint(1, 3))):
                    c = field.random_unit_raw(rng)
                    combo = [field.add(x, field.mul(c, y))
                             for x, y in zip(combo, v)]
                row = {h.id: c for h, c in zip(allowed, combo) if c}
                if row:
                    diff[g.id] = row
        processed.append(g)
    return FilteredComplex(field, (0, INF), gens, diff)


# ---------------------------------------------------------------------------
# random two-component algebras
# ---------------------------------------------------------------------------

def _admissible_words(D, chord, max_pure_letters=2, max_letters=3):
    """Words eligible as boundary terms of ``chord``: degree one below,
    total length strictly below, and — for a mixed chord — containing
    exactly one shorter forward-mixed letter with pure letters on the
    matching components around it."""
    want_degree = chord.degree - 1
    budget = chord.length
    out = []
    if chord.kind == "pure":
        pool = [c for c in D.pure_chords(chord.component)
                if c.length < budget]
        for n in range(1, max_letters + 1):
            for combo in itertools.product(pool, repeat=n):
                if sum(c.length for c in combo) >= budget:
                    continue
                if sum(c.degree for c in combo) != want_degree:
                    continue
                out.append(tuple(c.label for c in combo))
    else:
        mids = [c for c in D.forward_mixed() if c.length < budget]
        pool0 = D.pure_chords(0)
        pool1 = D.pure_chords(1)
        for mid in mids:
            rest = budget - mid.length
            for n0 in range(max_pure_letters + 1):
                for left in itertools.product(pool0, repeat=n0):
                    llen = sum(c.length for c in left)
                    if llen >= rest:
                        continue
                    for n1 in range(max_pure_letters + 1 - n0):
                        for right in itertools.product(pool1, repeat=n1):
                            if llen + sum(c.length for c in right) >= rest:
                                continue
                            word = tuple(c.label for c in left) + (mid.label,) \
                                + tuple(c.label for c in right)
                            if D.word_degree(word) == want_degree:
                                out.append(word)
    return sorted(set(out), key=lambda w: (len(w), w))


def _kernel_sample(rng, D, candidates):
    """A random element of the exact kernel of the differential on the span
    of the candidate words (possibly zero)."""
    field = D.field
    images = [D.diff_word(w) for w in candidates]
    support = sorted({w for img in images for w in img.terms},
                     key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(support)}
    M = [[field.zero_raw] * len(candidates) for _ in support]
    for j, img in enumerate(images):
        for w, c in img.terms.items():
            M[index[w]][j] = c
    basis = linalg.nullspace(M, field, ncols=len(candidates))
    if not basis or rng.random() < 0.15:
        return AlgebraElement.zero(field)
    picks = rng.sample(basis, k=min(len(basis), rng.randint(1, 2)))
    terms = {}
    for vec in picks:
        coeff = field.random_unit_raw(rng)
        for j, v in enumerate(vec):
            if v:
                prev = terms.get(candidates[j], field.zero_raw)
                terms[candidates[j]] = field.add(prev, field.mul(v, coeff))
    return AlgebraElement(field, terms)


def random_two_component_dga(rng, field, max_pure=3, max_mixed=4,
                             max_candidates=24):
    """A valid two-component chord algebra with nontrivial boundaries.

    No boundary ever contains the unit word, so the zero assignment is
    always an augmentation; richer ones can be found by exhaustive search.
    """
    n0 = rng.randint(1, max_pure)
    n1 = rng.randint(1, max_pure)
    nm = rng.randint(3, max(3, max_mixed))
    grid = [Fraction(k, 4) for k in range(1, 40)]
    lengths = rng.sample(grid, n0 + n1 + nm)
    specs = []
    # pure degrees cluster at 0 and mixed degrees climb with length, so that
    # shorter chords routinely supply words of degree one below a longer one
    for i in range(n0):
        specs.append(("u%d" % i, lengths[i],
                      rng.choice((0, 0, 0, 1)), (0, 0)))
    for i in range(n1):
        specs.append(("v%d" % i, lengths[n0 + i],
                      rng.choice((0, 0, 0, 1)), (1, 1)))
    mixed_lengths = sorted(lengths[n0 + n1:])
    for i, l in enumerate(mixed_lengths):
        specs.append(("m%d" % i, l, i + rng.choice((-1, 0, 0)), (0, 1)))
    specs.sort(key=lambda s: s[1])
    chords = []
    rows = {}
    for name, length, degree, ends in specs:
        chord = Chord(name, length, degree, ends)
        state = ChordDGA(field, chords, rows)
        candidates = _admissible_words(state, chord)
        if len(candidates) > max_candidates:
            candidates = rng.sample(candidates, max_candidates)
            candidates.sort(key=lambda w: (len(w), w))
        elem = _kernel_sample(rng, state, candidates)
        chords.append(chord)
        if elem:
            rows[name] = elem
    return ChordDGA(field, chords, rows)
