"""Exact arithmetic in the integral cohomology of the fibre product E x_B E.

Here E = F(R^k, n+m), B = F(R^k, m) and p: E -> B forgets the last n points.
The ring is generated by degree k-1 classes w(i,j) and w'(i,j); for odd k
all generators have even degree, so the ring is commutative and every
generator squares to zero.  Elements are sparse integer combinations of
canonical monomials, i.e. products of three blocks

    base part        w(i,j)   with j <= m
    unprimed fibre   w(i,j)   with j > m
    primed fibre     w'(i,j)  with j > m

in which the top indices j of each block are strictly increasing.  These
monomials form a free basis of the cohomology, so two Elements are equal
iff their term maps are equal.

Normalization rewrites products with the three-term relation

    w(i,r) w(j,r) = w(i,j) (w(j,r) - w(i,r)),   i < j < r,

applied separately inside the unprimed and the primed family, with the
identification w'(i,j) = w(i,j) for j <= m.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, replace
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import (
    EqualIndices,
    IndexOutOfRange,
    IntegerOverflow,
    InvalidSpec,
    SpaceMismatch,
    UnsupportedDimension,
)

INT64_MAX = 2**63 - 1

BASE, UNPRIMED, PRIMED = 0, 1, 2


class Space(enum.Enum):
    TOTAL_E = "total"
    BASE_B = "base"
    FIBREPRODUCT_EBE = "ebe"
    FIBRE_X = "fibre"


class Side(enum.Enum):
    UNPRIMED = "unprimed"
    PRIMED = "primed"


@dataclass(frozen=True)
class SpaceSpec:
    """Which ring is in play: n robots, m obstacles, ambient dimension k."""

    n: int
    m: int
    k: int = 3
    space: Space = Space.FIBREPRODUCT_EBE

    def __post_init__(self):
        if not isinstance(self.space, Space):
            object.__setattr__(self, "space", Space(self.space))
        if self.k % 2 == 0:
            raise UnsupportedDimension(
                f"even k unsupported (k={self.k}): only odd ambient dimension k >= 3 is handled"
            )
        if self.k < 3:
            raise UnsupportedDimension(f"k must be an odd integer >= 3, got {self.k}")
        if self.n < 1:
            raise InvalidSpec(f"need n >= 1 robots, got {self.n}")
        if self.m < 1:
            raise InvalidSpec(f"need m >= 1 obstacles, got {self.m}")

    @property
    def size(self) -> int:
        return self.n + self.m

    def with_space(self, space: Space) -> "SpaceSpec":
        return replace(self, space=space)

    def admits_monomial(self, mono: "Monomial") -> bool:
        if self.space is Space.BASE_B:
            return not mono.unprimed and not mono.primed
        if self.space is Space.TOTAL_E:
            return not mono.primed
        if self.space is Space.FIBRE_X:
            return not mono.base and not mono.primed
        return True


class Generator(NamedTuple):
    """A canonical generator: i < j, and primed only when j > m."""

    i: int
    j: int
    primed: bool = False

    @property
    def side(self) -> Side:
        return Side.PRIMED if self.primed else Side.UNPRIMED

    def __str__(self):
        prime = "'" if self.primed else ""
        return f"w{prime}({self.i},{self.j})"


def canonical_generator(spec: SpaceSpec, i: int, j: int, side: Side = Side.UNPRIMED) -> tuple[int, Generator]:
    """Apply w(i,j) = -w(j,i) and w'(i,j) = w(i,j) for j <= m.

    Returns ``(sign, generator)``.
    """
    if isinstance(side, bool):
        side = Side.PRIMED if side else Side.UNPRIMED
    if i == j:
        raise EqualIndices(f"generator indices must differ, got ({i},{j})")
    top = spec.size
    for idx in (i, j):
        if not 1 <= idx <= top:
            raise IndexOutOfRange(f"index {idx} outside 1..{top}")
    sign = 1
    if i > j:
        i, j, sign = j, i, -1
    primed = side is Side.PRIMED and j > spec.m
    space = spec.space
    if space is Space.BASE_B and j > spec.m:
        raise SpaceMismatch(f"w({i},{j}) is not a class of the base (indices must be <= m={spec.m})")
    if space is Space.TOTAL_E and primed:
        raise SpaceMismatch(f"w'({i},{j}) is not a class of the total space E")
    if space is Space.FIBRE_X and (primed or j <= spec.m):
        raise SpaceMismatch(f"generator ({i},{j}) is not a class of the fibre X")
    return sign, Generator(i, j, primed)


def _pair_key(pairs):
    return tuple((j, i) for i, j in pairs)


class Monomial(NamedTuple):
    """Canonical basis monomial; each block is a tuple of (i, j) sorted by j."""

    base: tuple = ()
    unprimed: tuple = ()
    primed: tuple = ()

    @property
    def grade(self) -> int:
        return len(self.base) + len(self.unprimed) + len(self.primed)

    def generators(self) -> Iterator[Generator]:
        for i, j in self.base:
            yield Generator(i, j, False)
        for i, j in self.unprimed:
            yield Generator(i, j, False)
        for i, j in self.primed:
            yield Generator(i, j, True)

    def is_canonical(self) -> bool:
        for part in self:
            tops = [j for i, j in part]
            if any(not i < j for i, j in part) or tops != sorted(set(tops)):
                return False
        return True

    def to_expr(self) -> str:
        if not self.grade:
            return "1"
        return "*".join(str(g) for g in self.generators())

    def __str__(self):
        return self.to_expr()


UNIT = Monomial()


def monomial_key(mono: Monomial):
    """Total order used for printing and enumeration.

    Grade first, then the primed block, the unprimed block and the base
    block, each compared as a sequence of (j, i).
    """
    return (mono.grade, _pair_key(mono.primed), _pair_key(mono.unprimed), _pair_key(mono.base))


def grade_of(mono: Monomial) -> int:
    """Number of generator factors; the cohomological degree is grade * (k - 1)."""
    return mono.grade


@lru_cache(maxsize=None)
def _times_generator(m: int, mono: Monomial, gen: Generator) -> tuple:
    # mono canonical, gen canonical; returns the normal form as ((mono, coeff), ...)
    i, j, primed = gen
    part = BASE if j <= m else (PRIMED if primed else UNPRIMED)
    pairs = mono[part]
    pos = len(pairs)
    for idx, (a, r) in enumerate(pairs):
        if r < j:
            continue
        if r > j:
            pos = idx
            break
        # same top index in the same family
        if a == i:
            return ()
        lo, hi = (a, i) if a < i else (i, a)
        family_primed = part == PRIMED
        rest = _with_part(mono, part, pairs[:idx] + pairs[idx + 1:])
        small = Generator(lo, hi, family_primed and hi > m)
        acc: dict = defaultdict(int)
        for t, c in _times_generator(m, rest, small):
            for u, d in _times_generator(m, t, Generator(hi, j, family_primed)):
                acc[u] += c * d
            for u, d in _times_generator(m, t, Generator(lo, j, family_primed)):
                acc[u] -= c * d
        return tuple((u, c) for u, c in acc.items() if c)
    return ((_with_part(mono, part, pairs[:pos] + ((i, j),) + pairs[pos:]), 1),)


def _with_part(mono: Monomial, part: int, pairs: tuple) -> Monomial:
    if part == BASE:
        return Monomial(pairs, mono.unprimed, mono.primed)
    if part == UNPRIMED:
        return Monomial(mono.base, pairs, mono.primed)
    return Monomial(mono.base, mono.unprimed, pairs)


@lru_cache(maxsize=None)
def _times_monomial(m: int, a: Monomial, b: Monomial) -> tuple:
    current = {a: 1}
    for gen in b.generators():
        nxt: dict = defaultdict(int)
        for mono, c in current.items():
            for u, d in _times_generator(m, mono, gen):
                nxt[u] += c * d
        current = {u: c for u, c in nxt.items() if c}
        if not current:
            return ()
    return tuple(current.items())


def clear_caches() -> None:
    _times_generator.cache_clear()
    _times_monomial.cache_clear()


def _check(terms: dict) -> dict:
    for c in terms.values():
        if c > INT64_MAX or c < -INT64_MAX - 1:
            raise IntegerOverflow(f"coefficient {c} exceeds the signed 64-bit range")
    return terms


def _same_ring(a: "Element", b: "Element") -> None:
    if a.spec != b.spec:
        raise SpaceMismatch(f"operands live in different rings: {a.spec} vs {b.spec}")


class Element:
    """Sparse integer combination of canonical monomials in a fixed ring."""

    __slots__ = ("spec", "_terms", "_hash")

    def __init__(self, spec: SpaceSpec, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(*mono)
            if not mono.is_canonical():
                raise ValueError(f"monomial {mono!r} is not in canonical form")
            if not spec.admits_monomial(mono) or any(j > spec.size for _, j in _all_pairs(mono)):
                raise SpaceMismatch(f"monomial {mono} does not belong to {spec.space.name}")
            c = int(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.spec = spec
        self._terms = _check({u: c for u, c in clean.items() if c})
        self._hash = None

    @classmethod
    def _raw(cls, spec: SpaceSpec, terms: dict) -> "Element":
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._terms = _check(terms)
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, spec: SpaceSpec) -> "Element":
        return cls._raw(spec, {})

    @classmethod
    def one(cls, spec: SpaceSpec) -> "Element":
        return cls._raw(spec, {UNIT: 1})

    @classmethod
    def scalar(cls, spec: SpaceSpec, c: int) -> "Element":
        return cls._raw(spec, {UNIT: int(c)} if c else {})

    @classmethod
    def monomial(cls, spec: SpaceSpec, mono: Monomial, coeff: int = 1) -> "Element":
        return cls(spec, {mono: coeff})

    # inspection

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in canonical print order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def grades(self) -> set[int]:
        return {mono.grade for mono in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def __add__(self, other):
        if isinstance(other, int):
            other = Element.scalar(self.spec, other)
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scalar_multiply(-1, self)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Element.scalar(self.spec, other)
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return scalar_multiply(other, self)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scalar_multiply(other, self)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Element.one(self.spec)
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    # printing

    def to_expr(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for idx, (mono, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono.grade == 0:
                body = str(mag)
            elif mag == 1:
                body = mono.to_expr()
            else:
                body = f"{mag}*{mono.to_expr()}"
            if idx == 0:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"Element({self.spec.space.name}, n={self.spec.n}, m={self.spec.m}: {self.to_expr()})"


def _all_pairs(mono: Monomial) -> Iterable[tuple[int, int]]:
    yield from mono.base
    yield from mono.unprimed
    yield from mono.primed


def make_generator(spec: SpaceSpec, i: int, j: int, side: Side = Side.UNPRIMED) -> Element:
    """The class w(i,j) (or w'(i,j)) as a signed Element of ``spec``'s ring."""
    sign, gen = canonical_generator(spec, i, j, side)
    part = BASE if gen.j <= spec.m else (PRIMED if gen.primed else UNPRIMED)
    mono = _with_part(UNIT, part, ((gen.i, gen.j),))
    return Element._raw(spec, {mono: sign})


def add(a: Element, b: Element) -> Element:
    _same_ring(a, b)
    out = dict(a._terms)
    for mono, c in b._terms.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return Element._raw(a.spec, out)


def scalar_multiply(c: int, a: Element) -> Element:
    c = int(c)
    if c == 0:
        return Element.zero(a.spec)
    return Element._raw(a.spec, {mono: c * d for mono, d in a._terms.items()})


def multiply(a: Element, b: Element) -> Element:
    """Normalized product of two Elements of the same ring."""
    _same_ring(a, b)
    spec = a.spec
    m = spec.m
    out: dict = defaultdict(int)
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            for u, d in _times_monomial(m, ma, mb):
                out[u] += ca * cb * d
    if spec.space is Space.FIBRE_X:
        # restriction to the fibre kills every class pulled back from the base
        return Element._raw(spec, {u: c for u, c in out.items() if c and not u.base})
    return Element._raw(spec, {u: c for u, c in out.items() if c})


def multiply_all(spec: SpaceSpec, factors: Iterable[Element]) -> Element:
    result = Element.one(spec)
    for f in factors:
        result = multiply(result, f)
        if not result:
            break
    return result


def monomial_element(spec: SpaceSpec, gens: Iterable[Generator]) -> Element:
    """Normalized product of a list of canonical generators."""
    result = Element.one(spec)
    for g in gens:
        result = multiply(result, make_generator(spec, g.i, g.j, g.side))
    return result
