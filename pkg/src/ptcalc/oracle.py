"""Brute-force cross-checks that do not reuse the ring normalizer.

The rewriting here is deliberately naive: a term is a sorted tuple of raw
generator triples, and at every step a uniformly random term and a uniformly
random violating pair inside it are chosen.  Agreement with ``ring.multiply``
for many seeds is a confluence check of the deterministic normalizer.
"""

from __future__ import annotations

import random
from collections import defaultdict
from itertools import product

from .errors import ObstacleCountTooSmall
from .ring import Element, Generator, Monomial, Space, SpaceSpec, canonical_generator


def _family(m, gen):
    i, j, primed = gen
    if j <= m:
        return "base"
    return "primed" if primed else "unprimed"


def _violations(m, term):
    out = []
    for a in range(len(term)):
        for b in range(a + 1, len(term)):
            ga, gb = term[a], term[b]
            if ga[1] == gb[1] and _family(m, ga) == _family(m, gb):
                out.append((a, b))
    return out


def _fold(m, i, j, primed):
    return (i, j, primed and j > m)


def _rewrite(m, term, a, b):
    """Apply one relation to the pair at positions a, b; returns [(term, sign)]."""
    ga, gb = term[a], term[b]
    rest = [g for idx, g in enumerate(term) if idx not in (a, b)]
    if ga == gb:
        return []
    r = ga[1]
    lo, hi = sorted((ga[0], gb[0]))
    primed = _family(m, ga) == "primed"
    left = _fold(m, lo, hi, primed)
    return [
        (tuple(sorted(rest + [left, _fold(m, hi, r, primed)])), 1),
        (tuple(sorted(rest + [left, _fold(m, lo, r, primed)])), -1),
    ]


def _to_monomial(m, term):
    base, unprimed, primed = [], [], []
    for i, j, p in term:
        {"base": base, "unprimed": unprimed, "primed": primed}[_family(m, (i, j, p))].append((i, j))
    key = lambda pair: pair[1]
    return Monomial(tuple(sorted(base, key=key)), tuple(sorted(unprimed, key=key)), tuple(sorted(primed, key=key)))


def randomized_normalize(spec: SpaceSpec, gens, seed: int) -> Element:
    """Normalize a product of generators, rewriting a random violation each step."""
    rng = random.Random(seed)
    m = spec.m
    start = []
    sign = 1
    for g in gens:
        s, cg = canonical_generator(spec, g.i, g.j, g.side)
        sign *= s
        start.append(tuple(cg))
    pending = {tuple(sorted(start)): sign}
    done: dict = defaultdict(int)
    while pending:
        term = rng.choice(sorted(pending))
        coeff = pending.pop(term)
        if coeff == 0:
            continue
        bad = _violations(m, term)
        if not bad:
            done[term] += coeff
            continue
        a, b = rng.choice(bad)
        for new, s in _rewrite(m, term, a, b):
            pending[new] = pending.get(new, 0) + s * coeff
    terms = {}
    for term, c in done.items():
        if not c:
            continue
        mono = _to_monomial(m, term)
        if spec.space is Space.FIBRE_X and mono.base:
            continue
        terms[mono] = c
    return Element(spec, terms)


def naive_theorem_y(spec: SpaceSpec, seed: int = 0) -> Element:
    """prod_{i=2..m} (w(i,m+1) - w'(i,m+1)) * prod_{j=m+1..m+n} w(1,j) w'(1,j).

    Each of the 2^(m-1) products in the binomial expansion is normalized on
    its own by the randomized rewriter and the results are summed.
    """
    n, m = spec.n, spec.m
    if m < 2:
        raise ObstacleCountTooSmall("need at least two obstacles")
    p = m + 1
    tail = []
    for j in range(m + 1, m + n + 1):
        tail += [Generator(1, j, False), Generator(1, j, True)]
    total = Element.zero(spec)
    for choice in product((False, True), repeat=m - 1):
        gens = [Generator(i, p, primed) for i, primed in zip(range(2, m + 1), choice)]
        sign = (-1) ** sum(choice)
        total = total + sign * randomized_normalize(spec, gens + tail, seed)
    return total

