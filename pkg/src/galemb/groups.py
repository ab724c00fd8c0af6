"""Exact arithmetic in finite p-groups of nilpotency class <= 2.

A group is described by a power-commutator presentation: generator i has a
relative order p^{e_i}, a power relation g_i^{p^{e_i}} = tail_i, and sparse
commutator relations [g_j, g_i] = word for j > i.  Every tail and commutator
word is required to land on designated central generators whose own relations
are trivial; this makes the carry loop in `mul` provably terminating and keeps
collection a closed-form computation (coordinate sums plus central
corrections).

Elements are plain tuples of residues, coordinate i reduced mod p^{e_i}; the
tuple (x_0, ..., x_{k-1}) denotes the normal form g_0^{x_0} ... g_{k-1}^{x_{k-1}}.
All operations are pure functions of immutable inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .arith import is_prime, smallest_nonresidue, smallest_primitive_root

Element = tuple[int, ...]

DEFAULT_ENUMERATION_BOUND = 10**6


class PresentationError(ValueError):
    """Invalid power-commutator data (wrong orders, non-central tails, p even...)."""


class ElementError(ValueError):
    """Element incompatible with a presentation (wrong length, bad residue)."""


class EnumerationBoundError(RuntimeError):
    """Group too large for an exhaustive operation."""


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime p together with its smallest non-residue nu and primitive root g."""

    p: int
    nu: int
    g: int

    @classmethod
    def for_prime(cls, p: int) -> "PrimeContext":
        if p == 2:
            raise PresentationError("only odd primes are supported")
        if not is_prime(p):
            raise PresentationError(f"{p} is not prime")
        return cls(p=p, nu=smallest_nonresidue(p), g=smallest_primitive_root(p))


@dataclass(frozen=True)
class Presentation:
    """Validated class-<=2 power-commutator presentation.

    comm maps (j, i) with j > i to the exponent vector of [g_j, g_i]; pairs
    not present commute.  power_tails[i] is the exponent vector of
    g_i^{p^{e_i}}, or None when trivial.  central[i] flags the generators that
    tails and commutator words are allowed to hit.
    """

    ctx: PrimeContext
    names: tuple[str, ...]
    order_exps: tuple[int, ...]
    central: tuple[bool, ...] = field(compare=False)
    power_tails: tuple[Element | None, ...]
    comm: tuple[tuple[int, int, Element], ...]

    # derived, filled by make_presentation
    orders: tuple[int, ...] = field(compare=False, default=())
    index: dict = field(compare=False, default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.names)

    def generator(self, name: str) -> Element:
        i = self.index[name]
        e = [0] * len(self.names)
        e[i] = 1
        return tuple(e)

    def comm_entry(self, j: int, i: int) -> Element | None:
        for jj, ii, word in self.comm:
            if jj == j and ii == i:
                return word
        return None


def make_presentation(
    ctx: PrimeContext,
    gens: list[tuple[str, int]],
    power_tails: dict[str, dict[str, int]] | None = None,
    comms: dict[tuple[str, str], dict[str, int]] | None = None,
) -> Presentation:
    """Build and validate a presentation.

    gens: (name, e) pairs in normal-form order; generator has relative order p^e.
    power_tails: name -> {target: exponent} for nontrivial g^{p^e} words.
    comms: (x, y) -> {target: exponent} meaning [x, y] = word; either orientation
    is accepted and flipped into the stored (later, earlier) convention.
    """
    power_tails = power_tails or {}
    comms = comms or {}
    names = tuple(n for n, _ in gens)
    if len(set(names)) != len(names):
        raise PresentationError("duplicate generator names")
    index = {n: i for i, n in enumerate(names)}
    exps = tuple(e for _, e in gens)
    if any(e < 1 for e in exps):
        raise PresentationError("relative order exponents must be >= 1")
    p = ctx.p
    orders = tuple(p**e for e in exps)
    k = len(names)

    def resolve(word: dict[str, int]) -> Element:
        vec = [0] * k
        for name, exp in word.items():
            if name not in index:
                raise PresentationError(f"unknown generator {name!r} in relation")
            i = index[name]
            vec[i] = (vec[i] + exp) % orders[i]
        return tuple(vec)

    tails: list[Element | None] = [None] * k
    for name, word in power_tails.items():
        vec = resolve(word)
        tails[index[name]] = vec if any(vec) else None

    comm_entries: dict[tuple[int, int], list[int]] = {}
    for (x, y), word in comms.items():
        vec = resolve(word)
        if not any(vec):
            continue
        xi, yi = index[x], index[y]
        if xi == yi:
            raise PresentationError(f"commutator [{x},{x}] must be trivial")
        if xi > yi:
            j, i, entry = xi, yi, list(vec)
        else:
            # [x, y] given with x earlier: store [g_j, g_i] = word^{-1}
            j, i = yi, xi
            entry = [(-c) % o for c, o in zip(vec, orders)]
        if (j, i) in comm_entries:
            raise PresentationError(f"duplicate commutator relation for pair {names[j]},{names[i]}")
        comm_entries[(j, i)] = entry

    support = set()
    for vec in list(tails) + [v for v in comm_entries.values()]:
        if vec is None:
            continue
        support.update(i for i, c in enumerate(vec) if c)
    central = tuple(i in support for i in range(k))
    for i in support:
        if tails[i] is not None:
            raise PresentationError(
                f"generator {names[i]!r} carries relation values but has a nontrivial power tail"
            )
        if any(j == i or ii == i for j, ii in comm_entries):
            raise PresentationError(
                f"generator {names[i]!r} carries relation values but appears in a commutator"
            )

    pres = Presentation(
        ctx=ctx,
        names=names,
        order_exps=exps,
        central=central,
        power_tails=tuple(tails),
        comm=tuple((j, i, tuple(v)) for (j, i), v in sorted(comm_entries.items())),
        orders=orders,
        index=index,
    )
    return pres


def check_element(P: Presentation, x: Element) -> None:
    if len(x) != P.ngens:
        raise ElementError(f"element of length {len(x)} for a {P.ngens}-generator presentation")
    for c, o in zip(x, P.orders):
        if not 0 <= c < o:
            raise ElementError(f"coordinate {c} out of range [0,{o})")


def _carry(P: Presentation, z: list[int]) -> Element:
    orders = P.orders
    tails = P.power_tails
    # Tails land only on central generators whose own tails are trivial, so
    # at most a couple of passes are ever needed.
    changed = True
    while changed:
        changed = False
        for i in range(len(z)):
            if 0 <= z[i] < orders[i]:
                continue
            q, r = divmod(z[i], orders[i])
            z[i] = r
            tail = tails[i]
            if tail is not None and q:
                for t, c in enumerate(tail):
                    if c:
                        z[t] += c * q
            changed = True
    return tuple(z)


def mul(P: Presentation, x: Element, y: Element) -> Element:
    """Normal form of xy by class-2 collection."""
    if len(x) != P.ngens or len(y) != P.ngens:
        raise ElementError("element length does not match presentation")
    z = [a + b for a, b in zip(x, y)]
    # moving y's low generators left past x's high generators:
    # g_j^{x_j} g_i^{y_i} = g_i^{y_i} g_j^{x_j} [g_j, g_i]^{x_j y_i}  (j > i)
    for j, i, word in P.comm:
        c = x[j] * y[i]
        if c:
            for t, w in enumerate(word):
                if w:
                    z[t] += w * c
    return _carry(P, z)


def generator_power(P: Presentation, i: int, n: int) -> Element:
    """Normal form of g_i^n for any integer n."""
    z = [0] * P.ngens
    z[i] = n
    return _carry(P, z)


def inv(P: Presentation, x: Element) -> Element:
    """Inverse: collect g_{k-1}^{-x_{k-1}} ... g_0^{-x_0}."""
    acc = P.identity
    for i in range(P.ngens - 1, -1, -1):
        if x[i]:
            acc = mul(P, acc, generator_power(P, i, -x[i]))
    return acc


def pow_element(P: Presentation, x: Element, n: int) -> Element:
    """x^n by binary powering (agrees with n-fold mul)."""
    if n < 0:
        return pow_element(P, inv(P, x), -n)
    acc = P.identity
    base = x
    while n:
        if n & 1:
            acc = mul(P, acc, base)
        base = mul(P, base, base)
        n >>= 1
    return acc


def commutator(P: Presentation, x: Element, y: Element) -> Element:
    """[x, y] = x^-1 y^-1 x y; central for class-2 presentations."""
    return mul(P, mul(P, inv(P, x), inv(P, y)), mul(P, x, y))


def element_order(P: Presentation, x: Element) -> int:
    order = 1
    y = x
    while y != P.identity:
        y = pow_element(P, y, P.p)
        order *= P.p
        if order > group_order(P):
            raise ElementError("element order exceeds group order; presentation inconsistent")
    return order


def group_order(P: Presentation) -> int:
    n = 1
    for o in P.orders:
        n *= o
    return n


def enumerate_elements(P: Presentation, bound: int = DEFAULT_ENUMERATION_BOUND):
    """All elements in lexicographic coordinate order."""
    if group_order(P) > bound:
        raise EnumerationBoundError(f"group order {group_order(P)} exceeds bound {bound}")
    return [tuple(c) for c in itertools.product(*(range(o) for o in P.orders))]


def is_central_element(P: Presentation, x: Element) -> bool:
    return all(commutator(P, x, P.generator(n)) == P.identity for n in P.names)


def center(P: Presentation, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Element]:
    return [x for x in enumerate_elements(P, bound) if is_central_element(P, x)]


def subgroup_closure(P: Presentation, gens: list[Element], bound: int = DEFAULT_ENUMERATION_BOUND) -> set[Element]:
    """Subgroup generated by gens (finite group: closure under right products)."""
    seen = {P.identity}
    frontier = [P.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(P, x, g)
                if y not in seen:
                    if len(seen) >= bound:
                        raise EnumerationBoundError("subgroup closure exceeded bound")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def derived_subgroup(P: Presentation) -> set[Element]:
    """Subgroup generated by all commutator words of the presentation."""
    gens = [_vec_to_element(P, word) for _, _, word in P.comm]
    return subgroup_closure(P, gens)


def _vec_to_element(P: Presentation, vec: Element) -> Element:
    return tuple(c % o for c, o in zip(vec, P.orders))


def is_abelian_quotient(P: Presentation, kernel_names: list[str]) -> bool:
    """True iff every commutator word lies in the subgroup spanned by the kernel generators."""
    ker = set()
    for name in kernel_names:
        if name not in P.index:
            raise ElementError(f"unknown kernel generator {name!r}")
        if not is_central_element(P, P.generator(name)):
            raise ElementError(f"kernel generator {name!r} is not central")
        ker.add(P.index[name])
    for _, _, word in P.comm:
        if any(c and i not in ker for i, c in enumerate(word)):
            return False
    return True


def central_log(P: Presentation, x: Element, eps: str, complement: set[str] | frozenset[str] = frozenset()) -> int:
    """Exponent m with x = eps^m modulo the complement generators.

    eps must be a presentation generator; for catalog groups kernels are
    always single generators, so this is a coordinate read-off after a
    support check.
    """
    if eps not in P.index:
        raise ElementError(f"unknown generator {eps!r}")
    allowed = {P.index[eps]} | {P.index[c] for c in complement}
    for i, c in enumerate(x):
        if c and i not in allowed:
            raise ElementError(
                f"element {x} lies outside the central subgroup spanned by {eps!r} and {sorted(complement)}"
            )
    return x[P.index[eps]]


def quotient_by_central(P: Presentation, kernel_names: list[str]) -> tuple[Presentation, "QuotientMap"]:
    """Presentation of G/<kernel gens> obtained by dropping the kernel coordinates.

    Valid whenever the named generators are central; relation words keep their
    non-kernel support.
    """
    drop = set()
    for name in kernel_names:
        if name not in P.index:
            raise ElementError(f"unknown kernel generator {name!r}")
        if not is_central_element(P, P.generator(name)):
            raise ElementError(f"kernel generator {name!r} is not central")
        drop.add(P.index[name])
    keep = [i for i in range(P.ngens) if i not in drop]

    gens = [(P.names[i], P.order_exps[i]) for i in keep]
    tails = {}
    for i in keep:
        t = P.power_tails[i]
        if t is not None:
            word = {P.names[j]: t[j] for j in keep if t[j]}
            if word:
                tails[P.names[i]] = word
    comms = {}
    for j, i, word in P.comm:
        if j in drop or i in drop:
            continue
        w = {P.names[t]: word[t] for t in keep if word[t]}
        if w:
            comms[(P.names[j], P.names[i])] = w
    Q = make_presentation(P.ctx, gens, tails, comms)
    return Q, QuotientMap(P, Q, tuple(keep))


@dataclass(frozen=True)
class QuotientMap:
    source: Presentation
    quotient: Presentation
    keep: tuple[int, ...]

    def __call__(self, x: Element) -> Element:
        return tuple(x[i] for i in self.keep)


# ---------------------------------------------------------------------------
# bulk (vectorized) operations, used by the consistency sweeps


def bulk_mul(P: Presentation, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise collection product of two (n, k) coordinate arrays."""
    Z = X.astype(np.int64) + Y.astype(np.int64)
    for j, i, word in P.comm:
        c = X[:, j].astype(np.int64) * Y[:, i].astype(np.int64)
        for t, w in enumerate(word):
            if w:
                Z[:, t] += w * c
    orders = P.orders
    tails = P.power_tails
    for _ in range(P.ngens + 2):
        done = True
        for i in range(P.ngens):
            q = Z[:, i] // orders[i]
            if np.any(q):
                done = False
                Z[:, i] -= q * orders[i]
                tail = tails[i]
                if tail is not None:
                    for t, w in enumerate(tail):
                        if w:
                            Z[:, t] += w * q
        if done:
            break
    else:
        raise PresentationError("carry loop failed to settle; presentation invalid")
    return Z


def all_elements_array(P: Presentation) -> np.ndarray:
    grids = np.meshgrid(*(np.arange(o) for o in P.orders), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def cayley_table(P: Presentation, bound: int = 100_000) -> np.ndarray:
    n = group_order(P)
    if n > bound:
        raise EnumerationBoundError(f"group order {n} exceeds table bound {bound}")
    E = all_elements_array(P)
    weights = np.ones(P.ngens, dtype=np.int64)
    for i in range(P.ngens - 2, -1, -1):
        weights[i] = weights[i + 1] * P.orders[i + 1]
    left = np.repeat(E, n, axis=0)
    right = np.tile(E, (n, 1))
    prod = bulk_mul(P, left, right)
    return (prod @ weights).reshape(n, n).astype(np.int64)


def associativity_exhaustive(P: Presentation, bound: int = 100_000) -> bool:
    """Check (xy)z = x(yz) for every triple via the Cayley table."""
    T = cayley_table(P, bound)
    n = T.shape[0]
    for j in range(n):
        if not np.array_equal(T[T[:, j], :], T[:, T[j, :]]):
            return False
    return True


def associativity_random(P: Presentation, ntriples: int, seed: int = 0) -> bool:
    rng = np.random.default_rng(seed)
    cols = [rng.integers(0, o, size=(ntriples, 3)) for o in P.orders]
    coords = np.stack(cols, axis=2)  # (ntriples, 3, k)
    X, Y, Z = coords[:, 0], coords[:, 1], coords[:, 2]
    left = bulk_mul(P, bulk_mul(P, X, Y), Z)
    right = bulk_mul(P, X, bulk_mul(P, Y, Z))
    return bool(np.array_equal(left, right))
