"""Extraction of embedding-problem data from a group with pinned central kernel(s).

Given a presentation, one or two central kernel generators, and an ordered
list of pre-image generators whose images must decompose the abelian quotient
as a direct product of cyclic factors, this module computes the cyclic factor
levels n_i and, per kernel, the residues m_i (kernel component of
s_i^{p^{n_i}}) and the strictly upper-triangular d with

    d_ij = central_log([s_j, s_i], kernel)   for i < j,

projected modulo the other kernel in the two-kernel (pullback) case.  That
sign convention is the one under which the obstruction product
prod_{i<j} (a_j, a_i; zeta)^{d_ij} reproduces the reference tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import groups
from .groups import Element, Presentation

DEFAULT_INDEPENDENCE_BOUND = 10**6


class ExtensionError(ValueError):
    """Kernel or pre-image data violating the embedding-problem preconditions."""


@dataclass(frozen=True)
class EmbeddingProblemSpec:
    """A central embedding problem: kernel(s) of order p^n inside G with a
    designated ordered set of pre-images generating the abelian quotient."""

    presentation: Presentation
    kernel_names: tuple[str, ...]
    kernel_level: int
    preimage_names: tuple[str, ...]
    root_level: int

    def __post_init__(self):
        P = self.presentation
        if not 1 <= len(self.kernel_names) <= 2:
            raise ExtensionError("one or two kernel generators expected")
        if len(self.kernel_names) == 2 and self.kernel_level != 1:
            raise ExtensionError("two-kernel problems require kernel level 1")
        for name in self.kernel_names:
            if name not in P.index:
                raise ExtensionError(f"unknown kernel generator {name!r}")
            g = P.generator(name)
            if not groups.is_central_element(P, g):
                raise ExtensionError(f"kernel generator {name!r} is not central")
            if groups.element_order(P, g) != P.p**self.kernel_level:
                raise ExtensionError(
                    f"kernel generator {name!r} does not have order p^{self.kernel_level}"
                )
        for name in self.preimage_names:
            if name not in P.index:
                raise ExtensionError(f"unknown pre-image generator {name!r}")

    @property
    def preimages(self) -> tuple[Element, ...]:
        return tuple(self.presentation.generator(n) for n in self.preimage_names)

    def labels(self) -> tuple[str, ...]:
        return tuple(f"a{i}" for i in range(1, len(self.preimage_names) + 1))


@dataclass(frozen=True)
class ExtensionParams:
    """(n_i, m_i, d_ij) of one kernel projection, in pre-image order (unsorted)."""

    n: tuple[int, ...]
    m: tuple[int, ...]
    d: tuple[tuple[int, ...], ...]  # full t x t, zero on and below the diagonal
    kernel_index: int

    @property
    def t(self) -> int:
        return len(self.n)


def _p_power_exponent(P: Presentation, x: Element, in_kernel) -> int:
    """Smallest e with x^{p^e} in the kernel subgroup."""
    e = 0
    y = x
    while not in_kernel(y):
        y = groups.pow_element(P, y, P.p)
        e += 1
        if P.p**e > groups.group_order(P):
            raise ExtensionError("pre-image order computation diverged")
    return e


def quotient_structure(spec: EmbeddingProblemSpec,
                       bound: int = DEFAULT_INDEPENDENCE_BOUND) -> tuple[int, ...]:
    """Levels n_i of the pre-image images in G/(kernel product), verified to be
    independent direct-factor generators of the whole quotient."""
    P = spec.presentation
    if not groups.is_abelian_quotient(P, list(spec.kernel_names)):
        raise ExtensionError("quotient by the kernel product is not abelian")
    Q, proj = groups.quotient_by_central(P, list(spec.kernel_names))
    images = [proj(x) for x in spec.preimages]
    n = tuple(_p_power_exponent(Q, img, lambda y: y == Q.identity) for img in images)

    target = 1
    for ni in n:
        target *= P.p**ni
    if target != groups.group_order(Q):
        raise ExtensionError(
            "pre-images do not generate a direct decomposition: "
            f"prod p^n_i = {target} != quotient order {groups.group_order(Q)}"
        )
    if target > bound:
        raise ExtensionError("independence check exceeds enumeration bound")
    plain = all(t is None for t in Q.power_tails) and not Q.comm
    supports = [frozenset(i for i, c in enumerate(img) if c) for img in images]
    if plain and all(s.isdisjoint(t) for s, t in itertools.combinations(supports, 2)):
        # coordinate-disjoint images of the right orders span a direct product
        # of size prod p^{n_i}, which the order check above pinned to |Q|
        return n
    span = _abelian_span(Q, images, n) if plain else _generic_span(Q, images, n)
    if len(span) != target:
        raise ExtensionError("pre-image images are not independent generators of the quotient")
    return n


def _abelian_span(Q: Presentation, images: list[Element], n: tuple[int, ...]) -> set[Element]:
    span = {Q.identity}
    for img, ni in zip(images, n):
        powers = []
        acc = Q.identity
        for _ in range(Q.p**ni):
            powers.append(acc)
            acc = tuple((a + b) % o for a, b, o in zip(acc, img, Q.orders))
        span = {tuple((a + b) % o for a, b, o in zip(x, y, Q.orders)) for x in span for y in powers}
    return span


def _generic_span(Q: Presentation, images: list[Element], n: tuple[int, ...]) -> set[Element]:
    span = set()
    ranges = [range(Q.p**ni) for ni in n]
    for combo in itertools.product(*ranges):
        acc = Q.identity
        for img, c in zip(images, combo):
            acc = groups.mul(Q, acc, groups.pow_element(Q, img, c))
        span.add(acc)
    return span


def extract_params(spec: EmbeddingProblemSpec, kernel_index: int = 0,
                   n: tuple[int, ...] | None = None) -> ExtensionParams:
    """m and d of the kernel_index projection; the other kernel is quotiented away."""
    P = spec.presentation
    if not 0 <= kernel_index < len(spec.kernel_names):
        raise ExtensionError(f"kernel index {kernel_index} out of range")
    eps = spec.kernel_names[kernel_index]
    complement = frozenset(k for i, k in enumerate(spec.kernel_names) if i != kernel_index)
    if n is None:
        n = quotient_structure(spec)
    modulus = P.p**spec.kernel_level
    s = spec.preimages
    m = tuple(
        groups.central_log(P, groups.pow_element(P, si, P.p**ni), eps, complement) % modulus
        for si, ni in zip(s, n)
    )
    t = len(s)
    d = [[0] * t for _ in range(t)]
    for i in range(t):
        for j in range(i + 1, t):
            d[i][j] = groups.central_log(P, groups.commutator(P, s[j], s[i]), eps, complement) % modulus
    return ExtensionParams(n=n, m=m, d=tuple(tuple(row) for row in d), kernel_index=kernel_index)


def commutator_log(spec: EmbeddingProblemSpec, kernel_index: int, j: int, i: int) -> int:
    """central_log([s_j, s_i]) on the selected kernel, for any index pair."""
    P = spec.presentation
    eps = spec.kernel_names[kernel_index]
    complement = frozenset(k for idx, k in enumerate(spec.kernel_names) if idx != kernel_index)
    s = spec.preimages
    return groups.central_log(P, groups.commutator(P, s[j], s[i]), eps, complement)


def minimal_root_level(spec: EmbeddingProblemSpec) -> int:
    """Smallest root-of-unity level N at which a complete condition set exists:
    the largest factor level carrying a nonzero kernel residue, but at least
    max n_i - 1 (cyclic realizability) and the kernel level itself."""
    n = quotient_structure(spec)
    level = max(1, spec.kernel_level, max(n) - 1)
    for k in range(len(spec.kernel_names)):
        params = extract_params(spec, k, n=n)
        positive = [ni for ni, mi in zip(params.n, params.m) if mi]
        if positive:
            level = max(level, max(positive))
    return level


def frattini_contains_kernel(P: Presentation, kernel_names: tuple[str, ...] | list[str]) -> bool:
    """True iff each kernel generator lies in G^p [G,G].

    For class-2 groups with p odd, that subgroup is generated by the p-th
    powers of the generators together with all commutator words.
    """
    gens = [groups.pow_element(P, P.generator(nm), P.p) for nm in P.names]
    gens += [tuple(c % o for c, o in zip(word, P.orders)) for _, _, word in P.comm]
    frattini = groups.subgroup_closure(P, [g for g in gens if g != P.identity])
    return all(P.generator(nm) in frattini for nm in kernel_names)


@dataclass(frozen=True)
class KernelCandidates:
    singles: tuple[Element, ...]          # central x of order p, <x> >= [G,G]
    pairs: tuple[tuple[Element, Element], ...]
    cyclic_p2: tuple[Element, ...]        # central x of order p^2 with homocyclic quotient


def find_central_kernels(P: Presentation, bound: int = 10**5) -> KernelCandidates:
    """Scan for admissible kernels: central subgroups of order p (and disjoint
    pairs, and central cyclic p^2 subgroups) whose quotient is abelian."""
    derived = groups.derived_subgroup(P)
    centre = groups.center(P, bound)
    order_p = [x for x in centre if x != P.identity and groups.element_order(P, x) == P.p]

    singles = []
    seen: set[frozenset] = set()
    for x in order_p:
        sub = frozenset(groups.subgroup_closure(P, [x]))
        if sub in seen:
            continue
        seen.add(sub)
        if derived <= sub:
            singles.append(x)

    pairs = []
    seen_pairs: set[frozenset] = set()
    for x, y in itertools.combinations(order_p, 2):
        sx = frozenset(groups.subgroup_closure(P, [x]))
        sy = frozenset(groups.subgroup_closure(P, [y]))
        if sx == sy:
            continue
        key = frozenset((sx, sy))
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        prod = frozenset(groups.subgroup_closure(P, [x, y]))
        if len(prod) == P.p**2 and derived <= prod:
            pairs.append((x, y))

    cyclic_p2 = []
    seen2: set[frozenset] = set()
    for x in centre:
        if x == P.identity or groups.element_order(P, x) != P.p**2:
            continue
        sub = frozenset(groups.subgroup_closure(P, [x]))
        if sub in seen2:
            continue
        seen2.add(sub)
        if derived <= sub:
            cyclic_p2.append(x)

    return KernelCandidates(tuple(singles), tuple(pairs), tuple(cyclic_p2))
