"""Exact sparse multivariate polynomials over the rationals.

A :class:`Ring` is an ordered registry of variable names.  A :class:`Poly`
maps exponent tuples (one entry per ring variable) to nonzero
:class:`~fractions.Fraction` coefficients.  Polys are immutable values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, Fraction]

NEG_INF = float("-inf")


class RingMismatchError(ValueError):
    """Raised when combining polynomials from different variable registries."""


# -- monomial helpers ------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def mono_wdeg(m: Monomial, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(m, weights))


# -- orders ----------------------------------------------------------------


class MonomialOrder:
    """A term order on exponent tuples of a fixed length.

    ``kind`` is ``"lex"``, ``"wdegrevlex"`` or ``"block"``.  The weighted
    degree-reverse-lexicographic order compares the weighted degree first, then
    the plain total degree (so weight-zero variables still give a well order),
    then reverse lexicographically.  A block order compares the restriction to
    ``front`` first and the rest second, both under ``inner``.
    """

    __slots__ = ("kind", "nvars", "weights", "front", "inner", "_cache")

    def __init__(self, kind: str, nvars: int, weights: Optional[Sequence[int]] = None,
                 front: Iterable[int] = (), inner: Optional["MonomialOrder"] = None):
        if kind not in ("lex", "wdegrevlex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars or any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative, one per variable")
        self.front = frozenset(front)
        if kind == "block":
            self.inner = inner if inner is not None else MonomialOrder("wdegrevlex", nvars, self.weights)
        else:
            self.inner = None
        self._cache: Dict[Monomial, tuple] = {}

    @classmethod
    def lex(cls, nvars: int) -> "MonomialOrder":
        return cls("lex", nvars)

    @classmethod
    def wdegrevlex(cls, nvars: int, weights: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls("wdegrevlex", nvars, weights)

    @classmethod
    def elimination(cls, nvars: int, front: Iterable[int],
                    weights: Optional[Sequence[int]] = None) -> "MonomialOrder":
        """Two-block order eliminating the variables with indices in ``front``."""
        return cls("block", nvars, weights, front=front)

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def _key(self, m: Monomial) -> tuple:
        if self.kind == "lex":
            return m
        if self.kind == "wdegrevlex":
            return (mono_wdeg(m, self.weights), sum(m), tuple(-e for e in reversed(m)))
        head = tuple(e if i in self.front else 0 for i, e in enumerate(m))
        tail = tuple(0 if i in self.front else e for i, e in enumerate(m))
        return (self.inner.key(head), self.inner.key(tail))

    def signature(self) -> tuple:
        inner = self.inner.signature() if self.inner is not None else None
        return (self.kind, self.nvars, self.weights, tuple(sorted(self.front)), inner)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, front={sorted(self.front)}, weights={self.weights})"
        return f"MonomialOrder({self.kind}, weights={self.weights})"


# -- rings and polynomials -------------------------------------------------


class Ring:
    """An ordered set of variable names; the registry every Poly refers to."""

    __slots__ = ("names", "index", "_order")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.index = {n: i for i, n in enumerate(self.names)}
        self._order = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def default_order(self) -> MonomialOrder:
        if self._order is None:
            self._order = MonomialOrder.wdegrevlex(self.nvars)
        return self._order

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Poly":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self!r}") from None
        return Poly(self, {tuple(1 if j == i else 0 for j in range(self.nvars)): Fraction(1)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, m: Monomial, c=1) -> "Poly":
        c = Fraction(c)
        return Poly(self, {tuple(m): c} if c else {})

    def weights(self, mapping: Mapping[str, int], default: int = 0) -> Tuple[int, ...]:
        """Weight vector from a name -> weight mapping."""
        unknown = set(mapping) - set(self.names)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)}")
        return tuple(mapping.get(n, default) for n in self.names)


def _clean(terms: Terms) -> Terms:
    return {m: c for m, c in terms.items() if c}


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            clean: Terms = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {ring!r}")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            self.terms = _clean(clean)
        self._hash = None

    # arithmetic
    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, mul_terms(self.terms, other.terms), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: c * v for m, v in self.terms.items()}, _trusted=True)

    # comparisons
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables(self) -> Tuple[str, ...]:
        used = [False] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def total_degree(self) -> float:
        return max((sum(m) for m in self.terms), default=NEG_INF)

    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        order = order or self.ring.default_order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.default_order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: Optional[MonomialOrder] = None) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    def diff(self, name: str) -> "Poly":
        i = self.ring.index[name]
        out: Terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[mm] = c * m[i]
        return Poly(self.ring, out, _trusted=True)

    def format(self, order: Optional[MonomialOrder] = None) -> str:
        return format_terms(self.sorted_terms(order), self.ring.names)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


def mul_terms(a: Mapping[Monomial, Fraction], b: Mapping[Monomial, Fraction]) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_terms(terms, names: Sequence[str]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(m, names)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if sign == "-" else body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- gradings --------------------------------------------------------------


def weighted_degree(p: Poly, weights: Sequence[int]):
    """Largest weighted degree of a term of ``p``; ``NEG_INF`` for zero."""
    return max((mono_wdeg(m, weights) for m in p.terms), default=NEG_INF)


def is_homogeneous(p: Poly, weights: Sequence[int]) -> bool:
    return len({mono_wdeg(m, weights) for m in p.terms}) <= 1


def homogeneous_components(p: Poly, weights: Sequence[int]) -> Dict[int, Poly]:
    parts: Dict[int, Terms] = {}
    for m, c in p.terms.items():
        parts.setdefault(mono_wdeg(m, weights), {})[m] = c
    return {d: Poly(p.ring, t, _trusted=True) for d, t in sorted(parts.items())}


def homogenize(p: Poly, weights: Sequence[int], hvar: str) -> Poly:
    """Pad every term of ``p`` with powers of ``hvar`` up to the top weighted degree."""
    h = p.ring.index[hvar]
    if weights[h] != 1:
        raise ValueError(f"homogenizing variable {hvar!r} must have weight 1")
    if any(m[h] for m in p.terms):
        raise ValueError(f"homogenizing variable {hvar!r} occurs in {p}")
    if not p.terms:
        return p
    top = weighted_degree(p, weights)
    out = {}
    for m, c in p.terms.items():
        pad = top - mono_wdeg(m, weights)
        out[m[:h] + (pad,) + m[h + 1:]] = c
    return Poly(p.ring, out, _trusted=True)


def substitute(p: Poly, bindings: Mapping[str, Poly], target: Optional[Ring] = None) -> Poly:
    """Evaluate ``p`` with variables replaced by ``bindings``.

    Unbound variables map to the variable of the same name in ``target``
    (default: ``p``'s own ring).
    """
    target = target or p.ring
    images = []
    for n in p.ring.names:
        if n in bindings:
            img = bindings[n]
            if not isinstance(img, Poly):
                img = target.const(img)
            if img.ring != target:
                raise RingMismatchError(f"image of {n!r} lives in {img.ring!r}, not {target!r}")
            images.append(img)
        elif n in target.index:
            images.append(target.var(n))
        else:
            images.append(None)
    unknown = set(bindings) - set(p.ring.names)
    if unknown:
        raise KeyError(f"bindings for unknown variables {sorted(unknown)}")
    return evaluate(p, images, target)


def evaluate(p: Poly, images: Sequence[Optional[Poly]], target: Ring) -> Poly:
    """Evaluate ``p`` at a list of images, one per variable of ``p.ring``."""
    powers: Dict[Tuple[int, int], Terms] = {}

    def power(i: int, e: int) -> Terms:
        key = (i, e)
        if key not in powers:
            if e == 1:
                powers[key] = images[i].terms
            else:
                powers[key] = mul_terms(power(i, e - 1), images[i].terms)
        return powers[key]

    out: Terms = {}
    zero = (0,) * target.nvars
    for m, c in p.terms.items():
        acc: Terms = {zero: c}
        for i, e in enumerate(m):
            if e:
                if images[i] is None:
                    raise KeyError(f"variable {p.ring.names[i]!r} is unbound and absent from {target!r}")
                acc = mul_terms(acc, power(i, e))
        for mm, cc in acc.items():
            s = out.get(mm, 0) + cc
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
    return Poly(target, out, _trusted=True)


def embed(p: Poly, target: Ring) -> Poly:
    """Map ``p`` into a ring containing all of its variables, by name."""
    if p.ring == target:
        return p
    pos = [target.index.get(n) for n in p.ring.names]
    out = {}
    n = target.nvars
    for m, c in p.terms.items():
        mm = [0] * n
        for i, e in enumerate(m):
            if e:
                if pos[i] is None:
                    raise RingMismatchError(f"variable {p.ring.names[i]!r} missing from {target!r}")
                mm[pos[i]] = e
        out[tuple(mm)] = c
    return Poly(target, out, _trusted=True)
