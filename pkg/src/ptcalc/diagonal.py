"""The diagonal E -> E x_B E on cohomology, and zero-divisors in its kernel."""

from __future__ import annotations

from .errors import SpaceMismatch
from .ring import Element, Monomial, Side, Space, SpaceSpec, make_generator, multiply


def diagonal_apply(a: Element) -> Element:
    """Send w'(i,j) to w(i,j) and renormalize in H*(E)."""
    if a.spec.space is not Space.FIBREPRODUCT_EBE:
        raise SpaceMismatch("diagonal_apply expects an element of the fibre product ring")
    target = a.spec.with_space(Space.TOTAL_E)
    out = Element.zero(target)
    for mono, c in a.terms.items():
        img = Element.monomial(target, Monomial(mono.base, mono.unprimed), c)
        for i, j in mono.primed:
            img = multiply(img, make_generator(target, i, j))
            if not img:
                break
        out = out + img
    return out


def kernel_pairs(spec: SpaceSpec) -> list[tuple[int, int]]:
    m, size = spec.m, spec.size
    return [(i, j) for j in range(m + 1, size + 1) for i in range(1, j)]


def zero_divisor(spec: SpaceSpec, i: int, j: int) -> Element:
    """w(i,j) - w'(i,j)."""
    return make_generator(spec, i, j) - make_generator(spec, i, j, Side.PRIMED)


def kernel_generators(spec: SpaceSpec) -> list[Element]:
    """The classes w(i,j) - w'(i,j) with j > m, ordered by (j, i)."""
    if spec.space is not Space.FIBREPRODUCT_EBE:
        raise SpaceMismatch("kernel generators live in the fibre product ring")
    gens = []
    for i, j in kernel_pairs(spec):
        z = zero_divisor(spec, i, j)
        assert not diagonal_apply(z), f"w({i},{j}) - w'({i},{j}) escaped the kernel"
        gens.append(z)
    return gens


def embed_total(a: Element) -> Element:
    """View an element of H*(E) as an unprimed element of the fibre product ring."""
    if a.spec.space is not Space.TOTAL_E:
        raise SpaceMismatch("embed_total expects an element of H*(E)")
    return Element(a.spec.with_space(Space.FIBREPRODUCT_EBE), dict(a.terms))

