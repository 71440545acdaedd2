"""Canonical additive basis of the rings and their Poincare polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .ring import Monomial, Space, SpaceSpec, _pair_key


@dataclass(frozen=True)
class PoincarePolynomial:
    """Ranks per grade; ``coefficients[p]`` is the rank in degree p(k-1)."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, p: int) -> int:
        return self.coefficients[p] if 0 <= p < len(self.coefficients) else 0

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for a, x in enumerate(self.coefficients):
            for b, y in enumerate(other.coefficients):
                out[a + b] += x * y
        return PoincarePolynomial(tuple(out))

    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self):
        terms = []
        for p, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if p == 0 else f"{c}t" if p == 1 else f"{c}t^{p}")
        return " + ".join(terms)


def _linear_product(slopes) -> PoincarePolynomial:
    poly = PoincarePolynomial((1,))
    for a in slopes:
        poly = poly * PoincarePolynomial((1, a))
    return poly


def poincare_polynomial(spec: SpaceSpec) -> PoincarePolynomial:
    n, m = spec.n, spec.m
    base = _linear_product(range(1, m))
    fibre = _linear_product(m + i for i in range(n))
    if spec.space is Space.BASE_B:
        return base
    if spec.space is Space.TOTAL_E:
        return _linear_product(range(1, m + n))
    if spec.space is Space.FIBRE_X:
        return fibre
    return base * fibre * fibre


def top_grade(spec: SpaceSpec) -> int:
    """Highest nonzero grade; 2n + m - 1 for the fibre product."""
    return poincare_polynomial(spec).degree


@lru_cache(maxsize=None)
def _block(tops: tuple[int, ...]) -> tuple:
    """All blocks (pairs with increasing tops drawn from ``tops``), sorted by (j, i) key."""
    blocks = []
    for size in range(len(tops) + 1):
        for chosen in combinations(tops, size):
            for lows in product(*(range(1, j) for j in chosen)):
                blocks.append(tuple(zip(lows, chosen)))
    blocks.sort(key=_pair_key)
    return tuple(blocks)


def _blocks_by_grade(tops: tuple[int, ...]) -> dict[int, list]:
    grouped: dict[int, list] = {}
    for blk in _block(tops):
        grouped.setdefault(len(blk), []).append(blk)
    return grouped


def iter_basis(spec: SpaceSpec, grade: int) -> Iterator[Monomial]:
    """Yield the canonical monomials of ``grade`` in canonical order without storing them."""
    if grade < 0:
        raise ValueError("grade must be nonnegative")
    n, m, space = spec.n, spec.m, spec.space
    base_tops = tuple(range(2, m + 1))
    fibre_tops = tuple(range(m + 1, m + n + 1))
    base_by_grade = _blocks_by_grade(base_tops)
    if space is Space.FIBRE_X:
        base_by_grade = {0: [()]}
    unprimed_all = _block(fibre_tops) if space is not Space.BASE_B else ((),)
    primed_all = _block(fibre_tops) if space is Space.FIBREPRODUCT_EBE else ((),)
    for pr in primed_all:
        left = grade - len(pr)
        if left < 0:
            continue
        for up in unprimed_all:
            rem = left - len(up)
            if rem < 0:
                continue
            for bs in base_by_grade.get(rem, ()):
                yield Monomial(bs, up, pr)


def enumerate_basis(spec: SpaceSpec, grade: int) -> list[Monomial]:
    return list(iter_basis(spec, grade))


def basis_dims(spec: SpaceSpec) -> list[int]:
    return list(poincare_polynomial(spec).coefficients)
