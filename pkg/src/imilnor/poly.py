"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are sorted tuples of ``(variable, exponent)`` pairs, so two equal
polynomials always have identical term dictionaries regardless of how they
were built.  Variables are plain strings; their relative order is a natural
sort of the names (``z2`` before ``z10``), which keeps printing and every
downstream basis computation deterministic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()

_NATURAL_SPLIT = re.compile(r"(\d+)")


def var_key(name: str) -> tuple:
    """Natural sort key for a variable name."""
    parts = _NATURAL_SPLIT.split(name)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def sort_vars(names: Iterable[str]) -> List[str]:
    return sorted(set(names), key=var_key)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda t: var_key(t[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class PolynomialError(ArithmeticError):
    pass


class Polynomial:
    """Immutable polynomial over the rationals.

    >>> x, z = Polynomial.var("x"), Polynomial.var("z")
    >>> str((x + z) ** 2)
    'x^2 + 2*x*z + z^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Scalar = 1) -> "Polynomial":
        m = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: var_key(t[0])))
        if any(e < 0 for _, e in m):
            raise PolynomialError("negative exponent")
        return cls({m: coeff})

    @staticmethod
    def coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to Polynomial")

    # inspection -------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    @property
    def variables(self) -> List[str]:
        return sort_vars(v for m in self._terms for v, _ in m)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONOMIAL for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def order(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return min(mono_degree(m) for m in self._terms)

    def degree(self, v: str) -> int:
        if not self._terms:
            return -1
        return max(dict(m).get(v, 0) for m in self._terms)

    def coefficients_in(self, v: str) -> Dict[int, "Polynomial"]:
        """Split as ``sum(c_e * v^e)`` and return ``{e: c_e}``."""
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            e = 0
            rest = []
            for w, k in m:
                if w == v:
                    e = k
                else:
                    rest.append((w, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial(t) for e, t in out.items()}

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = Polynomial.coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        other = Polynomial.coerce(other)
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise PolynomialError("exponent must be a non-negative integer")
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # calculus and substitution ---------------------------------------------

    def diff(self, v: str) -> "Polynomial":
        t: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if e == 0:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            key = tuple(sorted(d.items(), key=lambda p: var_key(p[0])))
            t[key] = t.get(key, 0) + c * e
        return Polynomial(t)

    def subs(self, bindings: Mapping[str, "Polynomial | Scalar"]) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials."""
        if not bindings:
            return self
        bound = {v: Polynomial.coerce(p) for v, p in bindings.items()}
        powers: Dict[Tuple[str, int], Polynomial] = {}
        acc: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            free = []
            term = Polynomial.const(c)
            for v, e in m:
                if v in bound:
                    if (v, e) not in powers:
                        powers[(v, e)] = bound[v] ** e
                    term = term * powers[(v, e)]
                else:
                    free.append((v, e))
            if free:
                term = term * Polynomial({tuple(free): 1})
            for tm, tc in term._terms.items():
                acc[tm] = acc.get(tm, 0) + tc
        return Polynomial(acc)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return self.subs({a: Polynomial.var(b) for a, b in mapping.items()})

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        p = self.subs(point)
        if not p.is_constant():
            raise PolynomialError(f"unbound variables {p.variables}")
        return p.constant_term()

    # division ---------------------------------------------------------------

    def leading_lex(self, variables: Sequence[str] | None = None) -> Tuple[Monomial, Fraction]:
        """Leading term for lex order on ``variables`` (default: natural order)."""
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        order = list(variables) if variables is not None else self.variables
        m = max(self._terms, key=lambda mono: _exponent_vector(mono, order))
        return m, self._terms[m]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if a remainder is left."""
        q, r = divmod_lex(self, other)
        if r:
            raise PolynomialError("inexact polynomial division")
        return q

    # printing ---------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (-mono_degree(t[0]), _print_key(t[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not body:
                coef = _fmt_rational(a)
            elif a == 1:
                coef = body
            else:
                coef = f"{_fmt_rational(a)}*{body}"
            if i == 0:
                out.append(f"-{coef}" if neg else coef)
            else:
                out.append(f" - {coef}" if neg else f" + {coef}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _exponent_vector(m: Monomial, order: Sequence[str]) -> Tuple[int, ...]:
    d = dict(m)
    return tuple(d.get(v, 0) for v in order)


def _print_key(m: Monomial):
    return tuple((var_key(v), -e) for v, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def _mono_quot(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for v, e in a:
        d[v] -= e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda t: var_key(t[0])))


def divmod_lex(f: Polynomial, g: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Multivariate division of ``f`` by a single ``g`` in lex order."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    order = sort_vars(f.variables + g.variables)
    lm, lc = g.leading_lex(order)
    q: Dict[Monomial, Fraction] = {}
    r: Dict[Monomial, Fraction] = {}
    h = f
    while h:
        m, c = h.leading_lex(order)
        if _mono_divides(lm, m):
            t = _mono_quot(m, lm)
            coef = c / lc
            q[t] = q.get(t, 0) + coef
            h = h - Polynomial({t: coef}) * g
        else:
            r[m] = c
            h = h - Polynomial({m: c})
    return Polynomial(q), Polynomial(r)


# linear algebra over the polynomial ring ------------------------------------


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(matrix)
    if n == 0:
        return Polynomial.const(1)
    if any(len(row) != n for row in matrix):
        raise PolynomialError("determinant of a non-square matrix")
    a = [[Polynomial.coerce(e) for e in row] for row in matrix]
    sign = 1
    prev = Polynomial.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def jacobian_maximal_minors(gens: Sequence[Polynomial], variables: Sequence[str]) -> List[Polynomial]:
    """All ``r x r`` minors of the Jacobian of ``r`` generators.

    Minors are listed by column subsets in lexicographic order of positions
    in ``variables``.

    >>> x, z = Polynomial.var("x"), Polynomial.var("z")
    >>> [str(m) for m in jacobian_maximal_minors([x**2 + z**2], ["x", "z"])]
    ['2*x', '2*z']
    """
    r = len(gens)
    if r > len(variables):
        raise ValueError(f"{r} generators but only {len(variables)} variables")
    jac = [[g.diff(v) for v in variables] for g in gens]
    minors = []
    for cols in combinations(range(len(variables)), r):
        minors.append(determinant([[row[c] for c in cols] for row in jac]))
    return minors


def sylvester_matrix(a: Polynomial, b: Polynomial, v: str) -> List[List[Polynomial]]:
    m, n = a.degree(v), b.degree(v)
    ca, cb = a.coefficients_in(v), b.coefficients_in(v)
    zero = Polynomial()
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for e, c in ca.items():
            row[i + m - e] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for e, c in cb.items():
            row[i + n - e] = c
        rows.append(row)
    return rows


def sylvester_resultant(a: Polynomial, b: Polynomial, v: str) -> Polynomial:
    """Resultant of ``a`` and ``b`` with respect to ``v``.

    >>> x, y, z = (Polynomial.var(s) for s in "xyz")
    >>> str(sylvester_resultant(x - z, z**2 - y, "z"))
    'x^2 - y'
    """
    if a.degree(v) < 1 or b.degree(v) < 1:
        raise ValueError(f"both operands must have positive degree in {v}")
    return determinant(sylvester_matrix(a, b, v))
