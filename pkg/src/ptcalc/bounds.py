"""Lower and upper bounds for parametrised topological complexity.

Lower bounds come from nonzero cup products of classes killed by the
diagonal; upper bounds from homotopical dimension and fibre connectivity.
For the Fadell-Neuwirth bundle F(R^k, n+m) -> F(R^k, m) with odd k both
meet at 2n + m - 1.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .basis import basis_dims
from .diagonal import diagonal_apply, kernel_generators, kernel_pairs, zero_divisor
from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    KindMismatch,
    NotAZeroDivisor,
    ObstacleCountTooSmall,
    SpaceMismatch,
    TheoremCheckFailed,
)
from .ring import Element, Monomial, Side, Space, SpaceSpec, make_generator, monomial_key, multiply


class BoundKind(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BoundRecord:
    value: int
    kind: BoundKind
    provenance: str
    witness: Monomial | None = None
    witness_coefficient: int | None = None
    factors: tuple[str, ...] = ()
    partial: bool = False

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound values are nonnegative")


@dataclass
class TcCertificate:
    """Machine-checkable record that lower and upper bound agree."""

    n: int
    m: int
    k: int
    lower_bound: int
    upper_bound: int
    tc_exact: int | None
    factor_list: list[Element]
    witness_monomial: Monomial
    witness_coefficient: int
    basis_dims: list[int] = field(default_factory=list)
    elapsed_ms: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.lower_bound > self.upper_bound:
            raise ValueError("lower bound exceeds upper bound")
        if self.witness_coefficient == 0:
            raise ValueError("witness coefficient must be nonzero")
        if not self.witness_monomial.grade == len(self.factor_list) == self.lower_bound:
            raise ValueError("witness grade, factor count and lower bound disagree")

    SCHEMA = 1

    def to_dict(self) -> dict:
        return {
            "schema": self.SCHEMA,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "tc_exact": self.tc_exact,
            "factors": [f.to_expr() for f in self.factor_list],
            "witness": {
                "monomial": self.witness_monomial.to_expr(),
                "coefficient": self.witness_coefficient,
            },
            "basis_dims": list(self.basis_dims),
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TcCertificate":
        from .expr import evaluate, parse

        if data.get("schema") != cls.SCHEMA:
            raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
        spec = SpaceSpec(data["n"], data["m"], data["k"])
        factors = [evaluate(parse(text), spec) for text in data["factors"]]
        witness = evaluate(parse(data["witness"]["monomial"]), spec)
        if len(witness) != 1:
            raise ValueError("witness must be a single monomial")
        (mono, sign), = witness.terms.items()
        if sign != 1:
            raise ValueError("witness monomial must be written in canonical form")
        return cls(
            n=data["n"],
            m=data["m"],
            k=data["k"],
            lower_bound=data["lower_bound"],
            upper_bound=data["upper_bound"],
            tc_exact=data["tc_exact"],
            factor_list=factors,
            witness_monomial=mono,
            witness_coefficient=data["witness"]["coefficient"],
            basis_dims=list(data.get("basis_dims", [])),
            elapsed_ms=data.get("elapsed_ms", 0.0),
        )


def _require_ebe(spec: SpaceSpec) -> None:
    if spec.space is not Space.FIBREPRODUCT_EBE:
        raise SpaceMismatch("this operation needs the fibre product ring E x_B E")


def strict_connectivity_bound(hdim: int, r: int) -> int:
    """Largest integer t with t < (hdim + 1) / (r + 1), in exact integer arithmetic."""
    # t (r+1) < hdim + 1  <=>  t (r+1) <= hdim
    return hdim // (r + 1)


def upper_bound_dimension(spec: SpaceSpec) -> BoundRecord:
    """Fibre is (k-2)-connected and hdim(E x_B E) = (k-1)(2n+m-1)."""
    _require_ebe(spec)
    r = spec.k - 2
    hdim = (spec.k - 1) * (2 * spec.n + spec.m - 1)
    return BoundRecord(strict_connectivity_bound(hdim, r), BoundKind.UPPER, "dimension/connectivity")


def product_inequality_combine(a: BoundRecord, b: BoundRecord) -> BoundRecord:
    """Upper bound for a product fibration: the bounds add."""
    if a.kind is not BoundKind.UPPER or b.kind is not BoundKind.UPPER:
        raise KindMismatch("the product inequality combines two upper bounds")
    return BoundRecord(a.value + b.value, BoundKind.UPPER, "product-combinator")


def _product_checked(spec: SpaceSpec, factors: Sequence[Element]) -> Element:
    _require_ebe(spec)
    result = Element.one(spec)
    for idx, f in enumerate(factors):
        if f.spec != spec:
            raise SpaceMismatch(f"factor {idx} lives in a different ring")
        if diagonal_apply(f):
            raise NotAZeroDivisor(f"factor {idx} ({f}) is not in the kernel of the diagonal")
    for f in factors:
        result = multiply(result, f)
        if not result:
            break
    return result


def pick_witness(spec: SpaceSpec, product: Element) -> tuple[Monomial, int]:
    """Prefer the distinguished monomial of x when present, else the first term."""
    preferred = theorem_witness(spec) if spec.m >= 2 else None
    if preferred is not None and product.coefficient(preferred):
        return preferred, product.coefficient(preferred)
    mono = min(product.terms, key=monomial_key)
    return mono, product.coefficient(mono)


def cup_length_lower_bound(spec: SpaceSpec, factors: Sequence[Element]) -> BoundRecord | None:
    """LOWER len(factors) if the product of the zero-divisors is nonzero, else None."""
    product = _product_checked(spec, factors)
    if not product:
        return None
    mono, coeff = pick_witness(spec, product)
    return BoundRecord(
        len(factors),
        BoundKind.LOWER,
        "cup-length",
        witness=mono,
        witness_coefficient=coeff,
        factors=tuple(f.to_expr() for f in factors),
    )


def theorem_factors(spec: SpaceSpec) -> list[Element]:
    """prod_{i=2..m} (w(i,m+1) - w'(i,m+1)) * prod_{j=m+1..m+n} (w(1,j) - w'(1,j))^2."""
    _require_ebe(spec)
    if spec.m < 2:
        raise ObstacleCountTooSmall(f"need m >= 2 obstacles, got m={spec.m}")
    p = spec.m + 1
    factors = [zero_divisor(spec, i, p) for i in range(2, spec.m + 1)]
    for j in range(spec.m + 1, spec.m + spec.n + 1):
        z = zero_divisor(spec, 1, j)
        factors += [z, z]
    return factors


def theorem_product(spec: SpaceSpec) -> Element:
    result = Element.one(spec)
    for f in theorem_factors(spec):
        result = multiply(result, f)
    return result


def theorem_witness(spec: SpaceSpec) -> Monomial:
    """w12 w23 ... w2m * w(1,m+1) w'(2,m+1) * prod_{j=m+2..m+n} w(1,j) w'(1,j)."""
    n, m = spec.n, spec.m
    base = ((1, 2),) + tuple((2, j) for j in range(3, m + 1))
    rest = tuple((1, j) for j in range(m + 2, m + n + 1))
    return Monomial(base, ((1, m + 1),) + rest, ((2, m + 1),) + rest)


def verify_theorem(spec: SpaceSpec) -> TcCertificate:
    """Certify tc = 2n + m - 1 by matching the cup-length and dimension bounds."""
    start = time.perf_counter()
    _require_ebe(spec)
    if spec.m < 2:
        raise ObstacleCountTooSmall(f"need m >= 2 obstacles, got m={spec.m}")
    factors = theorem_factors(spec)
    lower = cup_length_lower_bound(spec, factors)
    if lower is None:
        raise TheoremCheckFailed(
            f"the product of {len(factors)} zero-divisors normalized to 0 for n={spec.n}, m={spec.m}"
        )
    upper = upper_bound_dimension(spec)
    if lower.value > upper.value:
        raise TheoremCheckFailed(f"lower bound {lower.value} exceeds upper bound {upper.value}")
    return TcCertificate(
        n=spec.n,
        m=spec.m,
        k=spec.k,
        lower_bound=lower.value,
        upper_bound=upper.value,
        tc_exact=lower.value if lower.value == upper.value else None,
        factor_list=factors,
        witness_monomial=lower.witness,
        witness_coefficient=lower.witness_coefficient,
        basis_dims=basis_dims(spec),
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def exhaustive_zero_divisor_search(
    spec: SpaceSpec, max_length: int, max_candidates: int = 100_000, threads: int = 1
) -> BoundRecord:
    """Longest nonzero product of kernel generators, breadth-first over multisets.

    A zero partial product prunes every extension of it.  Raises
    BudgetExceeded (carrying the partial bound) when the candidate cap is
    reached before a length level is complete.
    """
    _require_ebe(spec)
    gens = kernel_generators(spec)
    labels = [f"(w({i},{j})-w'({i},{j}))" for i, j in kernel_pairs(spec)]
    # level entries: (multiset as index tuple, partial product)
    level = [((), Element.one(spec))]
    best = BoundRecord(0, BoundKind.LOWER, "exhaustive-search", factors=())
    candidates = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def extend(entry, t):
        idx, prod = entry
        return idx + (t,), multiply(prod, gens[t])

    try:
        for length in range(1, max_length + 1):
            jobs = [(entry, t) for entry in level for t in range((entry[0][-1] if entry[0] else 0), len(gens))]
            if not jobs:
                break
            if candidates + len(jobs) > max_candidates:
                raise BudgetExceeded(
                    f"candidate cap {max_candidates} hit at length {length}",
                    partial=BoundRecord(best.value, BoundKind.LOWER, best.provenance,
                                        best.witness, best.witness_coefficient, best.factors, partial=True),
                )
            candidates += len(jobs)
            if pool is not None:
                results = list(pool.map(lambda job: extend(*job), jobs))
            else:
                results = [extend(*job) for job in jobs]
            level = [(idx, prod) for idx, prod in results if prod]
            if not level:
                break
            idx, prod = level[0]
            mono, coeff = pick_witness(spec, prod)
            best = BoundRecord(length, BoundKind.LOWER, "exhaustive-search", mono, coeff,
                               tuple(labels[t] for t in idx))
    finally:
        if pool is not None:
            pool.shutdown()
    return best


def lemma_95_expand(spec: SpaceSpec, T, p: int, primed: bool = False) -> tuple[Element, Element]:
    """Both sides of the expansion of prod_{i in T} w(i,p).

    direct:      prod_{i in T} w(i,p)                       (w' if primed)
    closed form: (-1)^(|T|-1) sum_{i in T} (prod_{j in T-i} w(i,j)) w(i,p)
    """
    T = sorted(set(T))
    if not T:
        raise ValueError("T must be nonempty")
    if any(not 1 <= t <= spec.m for t in T):
        raise IndexOutOfRange(f"T must lie in 1..{spec.m}")
    if not spec.m < p <= spec.m + spec.n:
        raise IndexOutOfRange(f"p must lie in {spec.m + 1}..{spec.m + spec.n}")
    side = Side.PRIMED if primed else Side.UNPRIMED
    direct = Element.one(spec)
    for i in T:
        direct = multiply(direct, make_generator(spec, i, p, side))
    closed = Element.zero(spec)
    for i in T:
        term = make_generator(spec, i, p, side)
        for j in T:
            if j != i:
                term = multiply(term, make_generator(spec, i, j))
        closed = closed + term
    if (len(T) - 1) % 2:
        closed = -closed
    return direct, closed
