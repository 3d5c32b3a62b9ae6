"""Locally nilpotent derivations of presented algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DerivationError, NilpotencyError
from .groebner import DEFAULT_PAIR_BUDGET, Ideal
from .polycore import MonomialOrder, Poly, Ring, embed

DEFAULT_NILPOTENCY_BOUND = 64


class QuotientAlgebra:
    """``k[x_1..x_r]/I`` with canonical normal forms from a cached Groebner basis."""

    def __init__(self, ring: Ring, relations: Sequence[Poly] = (),
                 weights: Optional[Sequence[int]] = None, budget: int = DEFAULT_PAIR_BUDGET):
        self.ring = ring
        self.weights = tuple(weights) if weights is not None else None
        self.ideal = Ideal(ring, relations, MonomialOrder.wdegrevlex(ring.nvars), budget)
        self.relations = self.ideal.generators

    @property
    def names(self) -> Tuple[str, ...]:
        return self.ring.names

    def nf(self, p: Poly) -> Poly:
        return self.ideal.normal_form(p) if self.relations else p

    def var(self, name: str) -> Poly:
        return self.nf(self.ring.var(name))

    def gens(self) -> Tuple[Poly, ...]:
        return tuple(self.var(n) for n in self.names)

    def equal(self, a: Poly, b: Poly) -> bool:
        return self.nf(a - b).is_zero()

    def is_zero(self, a: Poly) -> bool:
        return self.nf(a).is_zero()

    def __repr__(self):
        rel = "; ".join(str(r) for r in self.relations) or "0"
        return f"QuotientAlgebra(k[{', '.join(self.names)}]/({rel}))"


@dataclass
class ValidationReport:
    well_defined: bool
    locally_nilpotent: Optional[bool] = None
    nil_degrees: Dict[str, int] = field(default_factory=dict)
    offending: Optional[Poly] = None
    offending_image: Optional[Poly] = None
    bound: Optional[int] = None
    message: str = ""

    def lines(self) -> List[str]:
        out = [f"well-defined: {'yes' if self.well_defined else 'no'}"]
        if self.offending is not None:
            out.append(f"  relation {self.offending} maps to {self.offending_image}, not in the ideal")
        if self.locally_nilpotent is not None:
            out.append(f"locally nilpotent: {'yes' if self.locally_nilpotent else 'no'}"
                       f" (bound {self.bound})")
        for name, d in self.nil_degrees.items():
            out.append(f"  nil-degree {name}: {d}")
        if self.message:
            out.append(self.message)
        return out


class Derivation:
    """A k-derivation of a :class:`QuotientAlgebra`, given by its values on variables.

    Variables missing from ``images`` are sent to zero.  Call :meth:`validate`
    before relying on well-definedness or local nilpotency.
    """

    def __init__(self, algebra: QuotientAlgebra, images: Mapping[str, Poly]):
        self.algebra = algebra
        ring = algebra.ring
        unknown = set(images) - set(ring.names)
        if unknown:
            raise KeyError(f"derivation images given for unknown variables {sorted(unknown)}")
        self.images: Dict[str, Poly] = {}
        for n in ring.names:
            img = images.get(n, ring.zero())
            if not isinstance(img, Poly):
                img = ring.const(img)
            self.images[n] = algebra.nf(img)
        self.well_defined: Optional[bool] = None
        self.locally_nilpotent: Optional[bool] = None
        self.nilpotency_bound_used: Optional[int] = None

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def raw(self, a: Poly) -> Poly:
        """Leibniz extension on a polynomial representative, without reduction."""
        out = self.ring.zero()
        for n in a.variables():
            img = self.images[n]
            if img:
                out = out + a.diff(n) * img
        return out

    def __call__(self, a: Poly) -> Poly:
        return self.algebra.nf(self.raw(a))

    def power(self, a: Poly, i: int) -> Poly:
        for _ in range(i):
            if not a:
                break
            a = self(a)
        return a

    def is_zero(self) -> bool:
        return all(not v for v in self.images.values())

    def validate(self, bound: int = DEFAULT_NILPOTENCY_BOUND) -> "Derivation":
        """Check well-definedness and local nilpotency; raise on failure."""
        report = check_derivation(self.algebra, self)
        if not report.well_defined:
            raise DerivationError(
                f"derivation does not preserve the ideal: {report.offending} -> {report.offending_image}",
                generator=report.offending)
        nilpotency_degrees(self, bound)
        return self

    def __repr__(self):
        parts = [f"{n} -> {v}" for n, v in self.images.items() if v]
        return f"Derivation({'; '.join(parts) or '0'})"


def check_derivation(algebra: QuotientAlgebra, d: Derivation) -> ValidationReport:
    """Whether ``d`` maps every defining relation into the defining ideal."""
    for g in algebra.relations:
        img = d.raw(g)
        if not algebra.is_zero(img):
            d.well_defined = False
            return ValidationReport(False, offending=g, offending_image=algebra.nf(img))
    d.well_defined = True
    return ValidationReport(True)


def apply(d: Derivation, a: Poly) -> Poly:
    return d(a)


def nil_degree(d: Derivation, a: Poly, bound: int = DEFAULT_NILPOTENCY_BOUND) -> int:
    """Least ``n`` with ``d^(n+1)(a) = 0``; raises :class:`NilpotencyError` past ``bound``."""
    b = d.algebra.nf(a)
    for n in range(bound + 1):
        b = d(b)
        if not b:
            return n
    raise NilpotencyError(f"nilpotency of {a} not established within bound {bound}",
                          element=a, bound=bound)


def nilpotency_degrees(d: Derivation, bound: int = DEFAULT_NILPOTENCY_BOUND) -> Dict[str, int]:
    """Nil-degree of every ring variable.

    Finite nil-degrees on generators imply local nilpotency on the whole
    algebra by the Leibniz rule.
    """
    d.nilpotency_bound_used = bound
    try:
        out = {n: nil_degree(d, d.algebra.var(n), bound) for n in d.ring.names}
    except NilpotencyError:
        d.locally_nilpotent = False
        raise
    d.locally_nilpotent = True
    return out


def is_locally_nilpotent(d: Derivation, bound: int = DEFAULT_NILPOTENCY_BOUND) -> bool:
    try:
        nilpotency_degrees(d, bound)
    except NilpotencyError:
        return False
    return True


def in_filtration(d: Derivation, a: Poly, n: int) -> bool:
    """Whether ``a`` lies in ``F_n = Ker d^(n+1)``."""
    if n < 0:
        return d.algebra.is_zero(a)
    return not d.power(d.algebra.nf(a), n + 1)


def divided_power(d: Derivation, a: Poly, i: int) -> Poly:
    """``d^i(a) / i!``."""
    return d.power(d.algebra.nf(a), i).scale(Fraction(1, factorial(i)))


def fresh_name(taken: Sequence[str], preferred: str) -> str:
    name = preferred
    while name in taken:
        name += "_"
    return name


def exp_t(d: Derivation, a: Poly, tvar: str = "t", bound: int = DEFAULT_NILPOTENCY_BOUND) -> Poly:
    """``exp(t d)(a) = sum_i d^i(a)/i! t^i`` in ``A[t]``.

    ``tvar`` is renamed (by appending underscores) if it clashes with a ring
    variable; the result's ring is ``A``'s variables followed by it.
    """
    ring = d.ring
    tname = fresh_name(ring.names, tvar)
    big = Ring(ring.names + (tname,))
    t = big.var(tname)
    out = big.zero()
    b = d.algebra.nf(a)
    i = 0
    while b:
        if i > bound:
            raise NilpotencyError(f"exp series of {a} did not terminate within {bound} terms",
                                  element=a, bound=bound)
        out = out + embed(b.scale(Fraction(1, factorial(i))), big) * t ** i
        b = d(b)
        i += 1
    return out
