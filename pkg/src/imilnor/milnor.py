"""Milnor numbers of isolated complete intersection singularities.

The positive-dimensional case runs the Lê-Greuel recursion: for a generic
linear form ``p``

    mu(X) + mu(X ∩ {p = 0}) = dim O / ((g) + J(g, p))

where ``J(g, p)`` is generated by the maximal minors of the Jacobian of the
map ``(g, p)``.  A zero-dimensional ICIS has ``mu = deg - 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .poly import Polynomial, jacobian_maximal_minors
from .stdbasis import IdealPresentation, QuotientDimension, local_quotient_dim

COEFF_BOUND = 17
DRAWS_PER_ROUND = 3
MAX_ROUNDS = 5


class NotICISError(ValueError):
    pass


class NonIsolatedError(ValueError):
    pass


@dataclass(frozen=True)
class GenericForm:
    coefficients: Tuple[Fraction, ...]
    variables: Tuple[str, ...]
    seed: int
    attempt: int = 0

    @property
    def polynomial(self) -> Polynomial:
        out = Polynomial()
        for c, v in zip(self.coefficients, self.variables):
            out = out + Polynomial.var(v) * c
        return out

    def __str__(self) -> str:
        return str(self.polynomial)


def generic_linear_form(variables: Sequence[str], seed: int = 0, attempt: int = 0) -> GenericForm:
    """Reproducible pseudo-random linear form with coefficients in [-17, 17] \\ {0}."""
    rng = random.Random(f"linear-form/{seed}/{attempt}/{len(variables)}")
    coeffs = []
    for _ in variables:
        c = rng.randint(1, COEFF_BOUND)
        coeffs.append(Fraction(-c if rng.random() < 0.5 else c))
    return GenericForm(tuple(coeffs), tuple(variables), seed, attempt)


@dataclass(frozen=True)
class IcisPresentation:
    ideal: IdealPresentation
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("an ICIS has non-negative dimension")
        codim = len(self.ideal.ambient_vars) - self.dim
        if len(self.ideal.generators) != codim:
            raise NotICISError(
                f"{len(self.ideal.generators)} generators do not cut out a complete intersection "
                f"of dimension {self.dim} in {len(self.ideal.ambient_vars)} variables"
            )


def le_greuel_dimension(ideal: IdealPresentation, form: Polynomial) -> QuotientDimension:
    """dim O/((g) + J(g, p)) at the origin."""
    minors = jacobian_maximal_minors(list(ideal.generators) + [form], ideal.ambient_vars)
    return local_quotient_dim(ideal.extend(minors))


def agreed_minimum(evaluate: Callable[[GenericForm], Optional[int]], variables: Sequence[str], seed: int, depth: int = 0) -> Tuple[int, GenericForm]:
    """Smallest value of ``evaluate`` over generic forms, validated by agreement.

    Three forms are drawn per round; the smallest finite value is accepted
    when at least two draws agree on it, otherwise fresh forms are drawn.
    ``evaluate`` returns None for an infinite (non-generic) outcome.
    """
    for rnd in range(MAX_ROUNDS):
        draws = []
        for i in range(DRAWS_PER_ROUND):
            form = generic_linear_form(variables, seed, 1000 * depth + DRAWS_PER_ROUND * rnd + i)
            value = evaluate(form)
            if value is not None:
                draws.append((value, form))
        if not draws:
            continue
        best = min(v for v, _ in draws)
        if sum(1 for v, _ in draws if v == best) >= 2:
            return best, next(f for v, f in draws if v == best)
    raise NotICISError("no generic linear form gives a finite value")


def _generic_dimension(ideal: IdealPresentation, seed: int, depth: int) -> Tuple[int, GenericForm]:
    return agreed_minimum(
        lambda form: le_greuel_dimension(ideal, form.polynomial).value, ideal.ambient_vars, seed, depth
    )


def milnor_number_icis(X: IcisPresentation, seed: int = 0) -> int:
    """Milnor number of an ICIS presented by ``X``.

    >>> from imilnor.parse import parse_polynomial as P
    >>> X = IcisPresentation(IdealPresentation.of([P("x^2 + z^2")], ["x", "z"]), 1)
    >>> milnor_number_icis(X)
    1
    """
    return _milnor(X.ideal, X.dim, seed, 0)


def _milnor(ideal: IdealPresentation, d: int, seed: int, depth: int) -> int:
    if d == 0:
        q = local_quotient_dim(ideal)
        if not q.is_finite:
            raise NotICISError("zero-dimensional presentation has a non-isolated zero at the origin")
        if q.value == 0:
            raise NotICISError("the origin is not a point of the zero set")
        return q.value - 1
    total, form = _generic_dimension(ideal, seed, depth)
    section = ideal.extend([form.polynomial])
    return total - _milnor(section, d - 1, seed, depth + 1)


def milnor_chain(X: IcisPresentation, seed: int = 0) -> List[int]:
    """Le-Greuel dimensions used at each level, top level first (for reports)."""
    out = []
    ideal, d, depth = X.ideal, X.dim, 0
    while d > 0:
        total, form = _generic_dimension(ideal, seed, depth)
        out.append(total)
        ideal = ideal.extend([form.polynomial])
        d -= 1
        depth += 1
    q = local_quotient_dim(ideal)
    out.append(q.value)
    return out


def milnor_number_hypersurface(h: Polynomial, variables: Optional[Sequence[str]] = None) -> int:
    """dim O / (dh/dv_1, ..., dh/dv_N) at the origin."""
    vs = list(variables) if variables is not None else h.variables
    if h.constant_term() != 0:
        raise ValueError("the hypersurface does not pass through the origin")
    partials = [h.diff(v) for v in vs]
    q = local_quotient_dim(IdealPresentation.of(partials, vs))
    if not q.is_finite:
        raise NonIsolatedError(f"{h} does not have an isolated singularity at the origin")
    return q.value
