"""Independent numeric check of symbol identities via tame symbols over Q_ell.

An assignment maps each basis symbol to an element of Q_ell^x recorded as a
(valuation, unit residue) pair, for a prime ell = 1 mod p^n.  The tame symbol

    c = (-1)^{v(x) v(y)} x^{v(y)} y^{-v(x)}  mod ell

composed with the power-residue map c -> c^{(ell-1)/p^n} lands in the order
p^n subgroup of F_ell^x, and its discrete log against a fixed order-p^n
element gives the symbol's value in Z/p^n.  The map is bilinear and
alternating by construction, so every formal rewriting rule the normalizer
uses must be invisible to it: a single disagreement between an expression and
its normal form is a hard failure of the symbol engine.

The root basis symbol is pinned to valuation 0 and a unit of exact order p^N,
which requires ell = 1 mod p^N.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .arith import is_prime, smallest_primitive_root
from .symbols import BrauerExpression, Monomial, NormalForm, SymbolBasis, bind_exponent

DEFAULT_PRIME_BOUND = 10**7


class OracleError(ValueError):
    """Degenerate assignment or no suitable evaluation prime."""


@dataclass(frozen=True)
class LocalAssignment:
    ell: int
    torsion_level: int
    zeta_base: int  # multiplicative order p^torsion_level mod ell
    values: tuple[tuple[str, tuple[int, int]], ...]  # label -> (valuation, unit)

    def value_of(self, label: str) -> tuple[int, int]:
        for name, pair in self.values:
            if name == label:
                return pair
        raise OracleError(f"assignment has no value for {label!r}")


def find_suitable_ell(p: int, level: int, count: int, bound: int = DEFAULT_PRIME_BOUND) -> list[int]:
    """First `count` primes ell = 1 mod p^level."""
    modulus = p**level
    out = []
    ell = modulus + 1
    while len(out) < count:
        if ell > bound:
            raise OracleError(f"no prime = 1 mod {modulus} below {bound}")
        if is_prime(ell):
            out.append(ell)
        ell += modulus
    return out


@lru_cache(maxsize=64)
def _element_of_order(ell: int, order: int) -> int:
    g = smallest_primitive_root(ell)
    return pow(g, (ell - 1) // order, ell)


@lru_cache(maxsize=64)
def _dlog_table(ell: int, base: int, order: int) -> dict[int, int]:
    table = {}
    acc = 1
    for k in range(order):
        table[acc] = k
        acc = acc * base % ell
    return table


def random_assignment(basis: SymbolBasis, ell: int, seed: int) -> LocalAssignment:
    """Deterministic assignment: root symbol pinned to a unit of exact order
    p^N; labels get small random valuations and uniform unit residues."""
    p, N, n = basis.p, basis.root_level, basis.torsion_level
    if (ell - 1) % p**N != 0:
        raise OracleError(f"ell={ell} does not admit a primitive p^{N}-th root of unity")
    rng = random.Random(f"{ell}:{seed}")
    values = [("z", (0, _element_of_order(ell, p**N)))]
    for label in basis.labels:
        values.append((label, (rng.randint(-2, 2), rng.randrange(1, ell))))
    return LocalAssignment(
        ell=ell,
        torsion_level=n,
        zeta_base=_element_of_order(ell, p**n),
        values=tuple(values),
    )


def _monomial_value(basis: SymbolBasis, assignment: LocalAssignment, mono: Monomial) -> tuple[int, int]:
    vec = basis.resolve(mono)
    ell = assignment.ell
    val = 0
    unit = 1
    for idx, e in enumerate(vec):
        if not e:
            continue
        v, u = assignment.value_of(basis.base_name(idx) if idx else "z")
        val += e * v
        unit = unit * pow(u, e % (ell - 1), ell) % ell
    return val, unit


def eval_symbol(left: Monomial, right: Monomial, assignment: LocalAssignment,
                basis: SymbolBasis) -> int:
    """Tame-symbol value of (left, right) in Z/p^n."""
    ell = assignment.ell
    vx, ux = _monomial_value(basis, assignment, left)
    vy, uy = _monomial_value(basis, assignment, right)
    if ux % ell == 0 or uy % ell == 0:
        raise OracleError("degenerate assignment: zero residue")
    sign = ell - 1 if (vx * vy) % 2 else 1
    c = sign * pow(ux, vy % (ell - 1), ell) * pow(uy, (-vx) % (ell - 1), ell) % ell
    torsion = basis.torsion
    t = pow(c, (ell - 1) // torsion, ell)
    table = _dlog_table(ell, assignment.zeta_base, torsion)
    if t not in table:
        raise OracleError("tame value outside the expected root-of-unity subgroup")
    return table[t]


def eval_expression(expr: BrauerExpression, assignment: LocalAssignment,
                    basis: SymbolBasis) -> int:
    total = 0
    for f in expr.factors:
        # fractional exponents bind mod p^n exactly as in normalization
        w = bind_exponent(f.exponent, basis.torsion)
        total += w * eval_symbol(f.left_mono(), f.right_mono(), assignment, basis)
    return total % basis.torsion


def eval_normal_form(nf: NormalForm, assignment: LocalAssignment) -> int:
    basis = nf.basis
    total = 0
    for u, v, e in nf.entries():
        total += e * eval_symbol({basis.base_name(u): 1}, {basis.base_name(v): 1},
                                 assignment, basis)
    return total % basis.torsion


@dataclass(frozen=True)
class EquivalenceVerdict:
    equal: bool
    trials: int
    counterexample: LocalAssignment | None = None


def _trial_assignments(basis: SymbolBasis, trials: int, seed: int, nells: int = 3):
    ells = find_suitable_ell(basis.p, basis.root_level, nells)
    for i in range(trials):
        yield random_assignment(basis, ells[i % len(ells)], seed=seed * 10_007 + i)


def check_equivalence(e1: BrauerExpression, e2: BrauerExpression, basis: SymbolBasis,
                      trials: int = 200, seed: int = 0) -> EquivalenceVerdict:
    """Numeric comparison over `trials` seeded assignments spread over >= 3 primes."""
    for i, assignment in enumerate(_trial_assignments(basis, trials, seed)):
        if eval_expression(e1, assignment, basis) != eval_expression(e2, assignment, basis):
            return EquivalenceVerdict(equal=False, trials=i + 1, counterexample=assignment)
    return EquivalenceVerdict(equal=True, trials=trials)


def check_raw_vs_normal(expr: BrauerExpression, nf: NormalForm, trials: int = 200,
                        seed: int = 0) -> EquivalenceVerdict:
    basis = nf.basis
    for i, assignment in enumerate(_trial_assignments(basis, trials, seed)):
        if eval_expression(expr, assignment, basis) != eval_normal_form(nf, assignment):
            return EquivalenceVerdict(equal=False, trials=i + 1, counterexample=assignment)
    return EquivalenceVerdict(equal=True, trials=trials)


def witness_nontrivial(expr: BrauerExpression, basis: SymbolBasis, trials: int = 500,
                       seed: int = 0) -> LocalAssignment | None:
    """Search for an assignment with nonzero value; expected to exist whenever
    the normal form is nonzero, since tame symbols realize all residues."""
    for assignment in _trial_assignments(basis, trials, seed, nells=4):
        if eval_expression(expr, assignment, basis) != 0:
            return assignment
    return None
