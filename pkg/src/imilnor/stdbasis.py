"""Gröbner and standard bases, and dimensions of quotient algebras.

Two monomial orders are supported:

``dp``
    global degree reverse lexicographic order (1 is the smallest monomial).
    Bases are computed with Buchberger's algorithm and the Gebauer-Möller
    pair criteria.

``ds``
    local negative degree reverse lexicographic order (1 is the largest
    monomial).  Bases are computed with Mora's tangent cone algorithm, whose
    weak normal form uses the ecart to guarantee termination.  The leading
    ideal then describes the quotient of the local ring at the origin.

Internally polynomials are dictionaries from exponent tuples to Fractions,
indexed by the ambient variable list of an :class:`IdealPresentation`.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .poly import Monomial, Polynomial, sort_vars, var_key

Exp = Tuple[int, ...]
Sparse = Dict[Exp, Fraction]

GLOBAL = "dp"
LOCAL = "ds"

DEFAULT_MAX_PAIRS = 10**6

_max_pairs: contextvars.ContextVar[int] = contextvars.ContextVar("max_pairs", default=DEFAULT_MAX_PAIRS)


class ResourceLimitError(RuntimeError):
    """Raised when a basis computation exceeds its configured pair budget."""


@contextlib.contextmanager
def limits(max_pairs: Optional[int] = None) -> Iterator[None]:
    """Temporarily change the pair budget for basis computations."""
    token = _max_pairs.set(max_pairs if max_pairs is not None else _max_pairs.get())
    try:
        yield
    finally:
        _max_pairs.reset(token)


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    variables: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in (GLOBAL, LOCAL):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def key(self, e: Exp):
        d = sum(e)
        rev = tuple(-x for x in reversed(e))
        return (d, rev) if self.kind == GLOBAL else (-d, rev)


@dataclass(frozen=True)
class IdealPresentation:
    generators: Tuple[Polynomial, ...]
    ambient_vars: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "ambient_vars", tuple(self.ambient_vars))
        if any(g.is_zero() for g in self.generators):
            raise ValueError("ideal generators must be nonzero")
        extra = set(v for g in self.generators for v in g.variables) - set(self.ambient_vars)
        if extra:
            raise ValueError(f"generators use variables outside the ambient space: {sorted(extra)}")

    @classmethod
    def of(cls, gens: Sequence[Polynomial], ambient_vars: Optional[Sequence[str]] = None) -> "IdealPresentation":
        """Build an ideal, dropping zero generators."""
        gens = [g for g in gens if not g.is_zero()]
        if ambient_vars is None:
            ambient_vars = sort_vars(v for g in gens for v in g.variables)
        return cls(tuple(gens), tuple(ambient_vars))

    def extend(self, more: Sequence[Polynomial]) -> "IdealPresentation":
        return IdealPresentation.of(list(self.generators) + list(more), self.ambient_vars)

    def reorder(self, ambient_vars: Sequence[str]) -> "IdealPresentation":
        if sorted(ambient_vars) != sorted(self.ambient_vars):
            raise ValueError("reordering must be a permutation of the ambient variables")
        return IdealPresentation(self.generators, tuple(ambient_vars))


@dataclass(frozen=True)
class QuotientDimension:
    """Dimension of a quotient algebra; ``value is None`` means infinite."""

    value: Optional[int]
    staircase: Tuple[Exp, ...] = ()
    variables: Tuple[str, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def standard_monomials(self) -> List[Polynomial]:
        return [Polynomial.monomial(dict(zip(self.variables, e))) for e in self.staircase]

    def __str__(self) -> str:
        return "infinite" if self.value is None else str(self.value)


# conversion -----------------------------------------------------------------


def to_sparse(p: Polynomial, variables: Sequence[str]) -> Sparse:
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    out: Sparse = {}
    for m, c in p.items():
        e = [0] * n
        for v, k in m:
            e[index[v]] = k
        out[tuple(e)] = c
    return out


def from_sparse(s: Sparse, variables: Sequence[str]) -> Polynomial:
    terms: Dict[Monomial, Fraction] = {}
    for e, c in s.items():
        m = tuple(sorted(((v, k) for v, k in zip(variables, e) if k), key=lambda t: var_key(t[0])))
        terms[m] = c
    return Polynomial(terms)


# sparse helpers -------------------------------------------------------------


class _Poly:
    """Sparse polynomial cached with its leading term under a fixed order."""

    __slots__ = ("terms", "lm", "lc", "ecart")

    def __init__(self, terms: Sparse, order: MonomialOrder):
        self.terms = terms
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        self.ecart = max(sum(e) for e in terms) - sum(self.lm)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _add_multiple(h: Sparse, g: Sparse, coef: Fraction, shift: Exp) -> Sparse:
    """Return ``h - coef * x^shift * g``."""
    out = dict(h)
    for e, c in g.items():
        m = tuple(x + y for x, y in zip(e, shift))
        v = out.get(m, 0) - coef * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _spoly(f: _Poly, g: _Poly) -> Sparse:
    L = _lcm(f.lm, g.lm)
    a = {tuple(x + y for x, y in zip(e, _sub(L, f.lm))): c / f.lc for e, c in f.terms.items()}
    return _add_multiple(a, g.terms, 1 / g.lc, _sub(L, g.lm))


def _monic(terms: Sparse, order: MonomialOrder) -> Sparse:
    lc = terms[max(terms, key=order.key)]
    if lc == 1:
        return terms
    return {e: c / lc for e, c in terms.items()}


# normal forms ---------------------------------------------------------------


def _reduce_full(f: Sparse, G: Sequence[_Poly], order: MonomialOrder) -> Sparse:
    """Remainder of division of ``f`` by ``G`` (global orders only)."""
    h = dict(f)
    r: Sparse = {}
    while h:
        lm = max(h, key=order.key)
        c = h[lm]
        for g in G:
            if _divides(g.lm, lm):
                h = _add_multiple(h, g.terms, c / g.lc, _sub(lm, g.lm))
                break
        else:
            r[lm] = c
            del h[lm]
    return r


def _mora_nf(f: Sparse, G: Sequence[_Poly], order: MonomialOrder) -> Sparse:
    """Mora's weak normal form of ``f`` with respect to ``G`` (local orders)."""
    T = list(G)
    h = f
    while h:
        hp = _Poly(h, order)
        cands = [g for g in T if _divides(g.lm, hp.lm)]
        if not cands:
            break
        g = min(cands, key=lambda q: q.ecart)
        if g.ecart > hp.ecart:
            T.append(hp)
        h = _add_multiple(h, g.terms, hp.lc / g.lc, _sub(hp.lm, g.lm))
    return h


# pair handling --------------------------------------------------------------


def _update(G: List[_Poly], pairs: set, h: _Poly, order: MonomialOrder) -> set:
    """Gebauer-Möller installation of ``h`` as the next basis element."""
    t = len(G)
    lmh = h.lm
    # drop old pairs whose lcm is strictly divisible by lm(h) (chain criterion)
    kept = set()
    for i, j in pairs:
        L = _lcm(G[i].lm, G[j].lm)
        if _divides(lmh, L) and L != _lcm(G[i].lm, lmh) and L != _lcm(G[j].lm, lmh):
            continue
        kept.add((i, j))
    by_lcm: Dict[Exp, List[int]] = {}
    for i, g in enumerate(G):
        by_lcm.setdefault(_lcm(g.lm, lmh), []).append(i)
    minimal: List[Exp] = []
    for L in sorted(by_lcm, key=lambda e: (sum(e), order.key(e))):
        if not any(_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        idx = by_lcm[L]
        # product criterion: coprime leading monomials
        if any(_lcm(G[i].lm, lmh) == tuple(x + y for x, y in zip(G[i].lm, lmh)) for i in idx):
            continue
        kept.add((min(idx), t))
    return kept


def _select(G: List[_Poly], pairs: set, order: MonomialOrder):
    def key(pair):
        L = _lcm(G[pair[0]].lm, G[pair[1]].lm)
        return (sum(L), order.key(L), pair)

    return min(pairs, key=key)


def _buchberger(F: List[Sparse], order: MonomialOrder) -> List[_Poly]:
    local = order.kind == LOCAL
    budget = _max_pairs.get()
    G: List[_Poly] = []
    pairs: set = set()
    for f in F:
        if not f:
            continue
        p = _Poly(_monic(f, order), order)
        pairs = _update(G, pairs, p, order)
        G.append(p)
    seen = 0
    while pairs:
        if len(pairs) > budget or seen > budget:
            raise ResourceLimitError(f"pair queue exceeded max_pairs={budget}")
        pair = _select(G, pairs, order)
        pairs.discard(pair)
        seen += 1
        s = _spoly(G[pair[0]], G[pair[1]])
        h = _mora_nf(s, G, order) if local else _reduce_full(s, G, order)
        if h:
            p = _Poly(_monic(h, order), order)
            pairs = _update(G, pairs, p, order)
            G.append(p)
    return G


def _minimalize(G: List[_Poly], order: MonomialOrder) -> List[_Poly]:
    ordered = sorted(G, key=lambda q: order.key(q.lm))
    out: List[_Poly] = []
    for i, g in enumerate(ordered):
        redundant = any(
            _divides(h.lm, g.lm) and (h.lm != g.lm or j < i) for j, h in enumerate(ordered) if j != i
        )
        if not redundant:
            out.append(g)
    return out


def _interreduce(G: List[_Poly], order: MonomialOrder) -> List[_Poly]:
    out = []
    for i, g in enumerate(G):
        rest = G[:i] + G[i + 1 :]
        out.append(_Poly(_monic(_reduce_full(g.terms, rest, order), order), order))
    return out


def _basis(ideal: IdealPresentation, order: MonomialOrder) -> List[_Poly]:
    vs = order.variables
    F = [to_sparse(g, vs) for g in ideal.generators]
    G = _minimalize(_buchberger(F, order), order)
    if order.kind == GLOBAL:
        G = _interreduce(G, order)
    return sorted(G, key=lambda q: order.key(q.lm))


# public API -----------------------------------------------------------------


def standard_basis(ideal: IdealPresentation, kind: str = LOCAL, variables: Optional[Sequence[str]] = None) -> List[Polynomial]:
    """Standard basis (``ds``) or reduced Gröbner basis (``dp``) of ``ideal``.

    ``variables`` gives the variable priority; it defaults to the ambient
    variable order of the presentation.
    """
    order = MonomialOrder(kind, tuple(variables or ideal.ambient_vars))
    return [from_sparse(g.terms, order.variables) for g in _basis(ideal, order)]


def leading_monomials(ideal: IdealPresentation, kind: str = LOCAL, variables: Optional[Sequence[str]] = None) -> List[Polynomial]:
    order = MonomialOrder(kind, tuple(variables or ideal.ambient_vars))
    return [from_sparse({g.lm: Fraction(1)}, order.variables) for g in _basis(ideal, order)]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], kind: str, variables: Sequence[str]) -> Polynomial:
    """Normal form of ``f`` against a precomputed basis.

    For the local order this is Mora's weak normal form, which is zero
    exactly when ``f`` lies in the ideal generated in the local ring.
    """
    order = MonomialOrder(kind, tuple(variables))
    G = [_Poly(to_sparse(g, order.variables), order) for g in basis if g]
    h = to_sparse(f, order.variables)
    if not h:
        return Polynomial()
    r = _mora_nf(h, G, order) if kind == LOCAL else _reduce_full(h, G, order)
    return from_sparse(r, order.variables)


def _staircase(lms: List[Exp], nvars: int) -> Optional[List[Exp]]:
    if any(sum(e) == 0 for e in lms):
        return []
    for i in range(nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in lms):
            return None
    zero = (0,) * nvars
    found = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                c = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if c in found or any(_divides(l, c) for l in lms):
                    continue
                found.add(c)
                nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda e: (sum(e), e))


def _quotient_dim(ideal: IdealPresentation, kind: str, variables: Optional[Sequence[str]]) -> QuotientDimension:
    order = MonomialOrder(kind, tuple(variables or ideal.ambient_vars))
    if not ideal.generators:
        return QuotientDimension(None if order.variables else 1, ((),) if not order.variables else (), order.variables)
    G = _basis(ideal, order)
    st = _staircase([g.lm for g in G], len(order.variables))
    if st is None:
        return QuotientDimension(None, (), order.variables)
    return QuotientDimension(len(st), tuple(st), order.variables)


def local_quotient_dim(ideal: IdealPresentation, variables: Optional[Sequence[str]] = None) -> QuotientDimension:
    """dim_C of the local ring at the origin modulo ``ideal``.

    Infinite when the origin is a non-isolated point of the zero set; zero
    when the origin is not on it at all.
    """
    return _quotient_dim(ideal, LOCAL, variables)


def global_quotient_dim(ideal: IdealPresentation, variables: Optional[Sequence[str]] = None) -> QuotientDimension:
    """dim_C of the polynomial ring modulo ``ideal``."""
    return _quotient_dim(ideal, GLOBAL, variables)


def is_zero_dim_at_origin(ideal: IdealPresentation) -> bool:
    return local_quotient_dim(ideal).is_finite


def contains_unit_locally(ideal: IdealPresentation) -> bool:
    """True when the ideal is the whole local ring, i.e. the origin is not a zero."""
    return local_quotient_dim(ideal).value == 0
