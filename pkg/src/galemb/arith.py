"""Small exact number-theory helpers used by the group catalog and the local oracle."""

from __future__ import annotations


class ModularArithmeticError(ValueError):
    """Raised for impossible modular arithmetic (no inverse, no discrete log)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def mod_inverse(x: int, m: int) -> int:
    try:
        return pow(x, -1, m)
    except ValueError as exc:
        raise ModularArithmeticError(f"{x} has no inverse mod {m}") from exc


def smallest_nonresidue(p: int) -> int:
    """Least positive quadratic non-residue mod an odd prime p."""
    for x in range(2, p):
        if pow(x, (p - 1) // 2, p) == p - 1:
            return x
    raise ModularArithmeticError(f"no quadratic non-residue mod {p}")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    """Least positive primitive root mod an odd prime p."""
    qs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ModularArithmeticError(f"no primitive root mod {p}")


def discrete_log_mod_p(base: int, target: int, p: int) -> int:
    """Smallest k >= 0 with base^k = target mod p, by exhaustive search."""
    target %= p
    if target == 0:
        raise ModularArithmeticError(f"discrete log of 0 mod {p} is undefined")
    acc = 1
    for k in range(p - 1):
        if acc == target:
            return k
        acc = acc * base % p
    raise ModularArithmeticError(f"{target} is not a power of {base} mod {p}")
