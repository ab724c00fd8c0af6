"""Formal products of cyclic-algebra classes (a, b; zeta_{p^n}) with a canonical form.

Symbols are bilinear and alternating in their two slots (valid for odd p, where
-1 is a p^n-th power), so a product of symbols over a finite monomial basis
normalizes to a strictly upper-triangular exponent matrix over Z/p^n.  The
basis consists of one root symbol z = zeta_{p^N} plus independent labels
a1..at; lower roots zeta_{p^K} (K < N) are powers z^{p^(N-K)} of the basis
root, which is what makes the vanishing of sub-level root factors a plain
mod-p^n reduction.

Formal equality is coarser than Brauer-group equality (no Steinberg or norm
relations) but sound: formally equal expressions are equal in Br(k) for every
admissible k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import mod_inverse

Monomial = dict[str, int | Fraction]

_LABEL_RE = re.compile(r"(a\d+|z\d*)")
_NUM_EXP_RE = re.compile(r"-?\d+(?:/\d+)?")
_NAME_EXP_RE = re.compile(r"-?[a-z][a-z0-9]*")


class ExpressionError(ValueError):
    """Syntax or binding error in a symbol expression."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class BasisError(ValueError):
    """Expression uses labels or torsion incompatible with the basis."""


@dataclass(frozen=True)
class SymbolBasis:
    """Monomial basis: labels a1..at plus the root symbol zeta_{p^N} at torsion p^n."""

    p: int
    labels: tuple[str, ...]
    root_level: int  # N
    torsion_level: int  # n

    def __post_init__(self):
        if not (self.root_level >= self.torsion_level >= 1):
            raise BasisError("need root_level >= torsion_level >= 1")
        if self.p == 2:
            raise BasisError("odd p only: the alternating rule needs -1 to be a p^n-th power")
        if len(self.labels) < 1:
            raise BasisError("at least one independent label required")

    @property
    def torsion(self) -> int:
        return self.p**self.torsion_level

    @property
    def size(self) -> int:
        # index 0 is the root symbol, 1..t the labels
        return len(self.labels) + 1

    def base_name(self, idx: int) -> str:
        return root_label(self.root_level) if idx == 0 else self.labels[idx - 1]

    def resolve(self, mono: Monomial) -> tuple[int, ...]:
        """Exponent vector over (z, a1..at); lower roots fold into the z slot.

        Fractional exponents bind mod p^n here: a different representative
        shifts the slot by a p^n-th power, invisible at torsion p^n.
        """
        vec = [0] * self.size
        for label, raw_exp in mono.items():
            exp = bind_exponent(raw_exp, self.torsion)
            if label.startswith("a"):
                try:
                    idx = self.labels.index(label) + 1
                except ValueError:
                    raise BasisError(f"unknown label {label!r} for basis {self.labels}")
                vec[idx] += exp
            else:
                level = root_level_of(label)
                if level > self.root_level:
                    raise BasisError(
                        f"root {label!r} exceeds the basis root level {self.root_level}"
                    )
                vec[0] += exp * self.p ** (self.root_level - level)
        return tuple(vec)


def root_label(level: int) -> str:
    return "z" if level == 1 else f"z{level}"


def root_level_of(label: str) -> int:
    if label == "z":
        return 1
    if label.startswith("z") and label[1:].isdigit():
        return int(label[1:])
    raise ExpressionError(f"bad root label {label!r}")


@dataclass(frozen=True)
class SymbolFactor:
    left: tuple[tuple[str, int], ...]
    right: tuple[tuple[str, int], ...]
    exponent: int | Fraction
    torsion_level: int

    def left_mono(self) -> Monomial:
        return dict(self.left)

    def right_mono(self) -> Monomial:
        return dict(self.right)


@dataclass(frozen=True)
class BrauerExpression:
    """Raw (unnormalized) product of symbol factors, all at one torsion level."""

    factors: tuple[SymbolFactor, ...]

    @property
    def torsion_level(self) -> int | None:
        return self.factors[0].torsion_level if self.factors else None

    def __mul__(self, other: "BrauerExpression") -> "BrauerExpression":
        if self.factors and other.factors and self.torsion_level != other.torsion_level:
            raise ExpressionError("torsion mismatch between factors")
        return BrauerExpression(self.factors + other.factors)


def symbol(left: Monomial, right: Monomial, level: int, exponent: int | Fraction = 1) -> BrauerExpression:
    return BrauerExpression(
        (
            SymbolFactor(
                left=tuple(sorted(left.items())),
                right=tuple(sorted(right.items())),
                exponent=exponent,
                torsion_level=level,
            ),
        )
    )


def one() -> BrauerExpression:
    return BrauerExpression(())


@dataclass(frozen=True)
class NormalForm:
    """Strictly upper-triangular matrix over Z/p^n indexed by (z, a1..at)."""

    basis: SymbolBasis
    matrix: tuple[tuple[int, ...], ...]

    def entry(self, u: int, v: int) -> int:
        return self.matrix[u][v]

    def is_zero(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.matrix)

    def entries(self):
        for u in range(self.basis.size):
            for v in range(u + 1, self.basis.size):
                if self.matrix[u][v]:
                    yield u, v, self.matrix[u][v]


def bind_exponent(exp: int | Fraction, torsion: int) -> int:
    if isinstance(exp, Fraction):
        return exp.numerator * mod_inverse(exp.denominator, torsion) % torsion
    return exp % torsion


def normalize(expr: BrauerExpression, basis: SymbolBasis) -> NormalForm:
    """Fold bilinearity, the alternating rule, inversion, root rescaling and
    exponent reduction mod p^n into the unique upper-triangular matrix."""
    n = basis.size
    torsion = basis.torsion
    M = [[0] * n for _ in range(n)]
    for f in expr.factors:
        if f.torsion_level != basis.torsion_level:
            raise BasisError(
                f"factor at torsion level {f.torsion_level} in a level-{basis.torsion_level} basis"
            )
        w = bind_exponent(f.exponent, torsion)
        if w == 0:
            continue
        L = basis.resolve(f.left_mono())
        R = basis.resolve(f.right_mono())
        for u in range(n):
            for v in range(u + 1, n):
                c = L[u] * R[v] - L[v] * R[u]
                if c:
                    M[u][v] = (M[u][v] + w * c) % torsion
    return NormalForm(basis=basis, matrix=tuple(tuple(row) for row in M))


def equal(e1: BrauerExpression, e2: BrauerExpression, basis: SymbolBasis) -> bool:
    return normalize(e1, basis) == normalize(e2, basis)


# ---------------------------------------------------------------------------
# parsing


def _parse_exponent(text: str, pos: int, env: dict[str, int] | None) -> tuple[int | Fraction, int]:
    m = _NUM_EXP_RE.match(text, pos)
    if m:
        tok = m.group(0)
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(int(num), int(den)), m.end()
        return int(tok), m.end()
    m = _NAME_EXP_RE.match(text, pos)
    if m:
        tok = m.group(0)
        sign = -1 if tok.startswith("-") else 1
        name = tok.lstrip("-")
        if env is None or name not in env:
            raise ExpressionError(f"unbound exponent placeholder {name!r}", pos)
        return sign * env[name], m.end()
    raise ExpressionError("expected an exponent", pos)


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_monomial(text: str, pos: int, stop: str, env) -> tuple[Monomial, int]:
    mono: Monomial = {}
    while True:
        pos = _skip_ws(text, pos)
        m = _LABEL_RE.match(text, pos)
        if not m:
            raise ExpressionError("expected a basis label (aN or z / zK)", pos)
        label = m.group(0)
        pos = m.end()
        exp: int | Fraction = 1
        if pos < len(text) and text[pos] == "^":
            exp, pos = _parse_exponent(text, pos + 1, env)
        mono[label] = mono.get(label, 0) + exp
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == "*":
            pos += 1
            continue
        if pos < len(text) and text[pos] in stop:
            return mono, pos
        raise ExpressionError(f"expected '*' or one of {stop!r}", pos)


def parse(text: str, env: dict[str, int] | None = None) -> BrauerExpression:
    """Parse the ASCII grammar: expr := \"1\" | term+ ;
    term := "(" mono "," mono ";" root ")" ["^" exp].

    Placeholder exponents (k, g, v, r) are substituted from env; fractional
    exponents like ^-1/4 stay symbolic until normalization binds them mod p^n.
    """
    s = text.strip()
    if s == "1":
        return one()
    factors: list[SymbolFactor] = []
    pos = 0
    level = None
    while True:
        pos = _skip_ws(s, pos)
        if pos >= len(s):
            break
        if s[pos] != "(":
            raise ExpressionError("expected '('", pos)
        left, pos = _parse_monomial(s, pos + 1, ",", env)
        right, pos = _parse_monomial(s, pos + 1, ";", env)
        pos = _skip_ws(s, pos + 1)
        m = _LABEL_RE.match(s, pos)
        if not m or not m.group(0).startswith("z"):
            raise ExpressionError("expected a root label after ';'", pos)
        term_level = root_level_of(m.group(0))
        pos = _skip_ws(s, m.end())
        if pos >= len(s) or s[pos] != ")":
            raise ExpressionError("expected ')'", pos)
        pos += 1
        exp: int | Fraction = 1
        if pos < len(s) and s[pos] == "^":
            exp, pos = _parse_exponent(s, pos + 1, env)
        if level is None:
            level = term_level
        elif level != term_level:
            raise ExpressionError("torsion mismatch between factors", pos)
        factors.append(
            SymbolFactor(
                left=tuple(sorted(left.items())),
                right=tuple(sorted(right.items())),
                exponent=exp,
                torsion_level=term_level,
            )
        )
    if not factors:
        raise ExpressionError("empty expression", 0)
    return BrauerExpression(tuple(factors))


# ---------------------------------------------------------------------------
# rendering


def _balanced(e: int, torsion: int) -> int:
    e %= torsion
    return e - torsion if e > torsion // 2 else e


def _render_power(label: str, e: int) -> str:
    return label if e == 1 else f"{label}^{e}"


def render(nf: NormalForm) -> str:
    """Compact text form: for each right-slot basis symbol in basis order,
    collect the left-slot monomial; pure-root columns flip to the
    (a, z^e) orientation the tables use.  parse(render(nf)) normalizes back
    to nf."""
    basis = nf.basis
    torsion = basis.torsion
    parts = []
    for v in range(1, basis.size):
        col = [(u, nf.matrix[u][v]) for u in range(v) if nf.matrix[u][v]]
        if not col:
            continue
        vname = basis.base_name(v)
        if len(col) == 1 and col[0][0] == 0:
            # only the root pairs with this label: render as (a, z^-e)
            e = _balanced(-col[0][1], torsion)
            parts.append(f"({vname}, {_render_power(root_label(basis.root_level), e)}; "
                         f"{root_label(basis.torsion_level)})")
            continue
        factors = [_render_power(basis.base_name(u), _balanced(c, torsion)) for u, c in col]
        parts.append(f"({'*'.join(factors)}, {vname}; {root_label(basis.torsion_level)})")
    return "".join(parts) if parts else "1"
