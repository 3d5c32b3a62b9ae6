"""Buchberger's algorithm and the ideal-theoretic decision procedures built on it.

Internally polynomials are plain ``{exponent tuple: Fraction}`` dicts; the
public functions take and return :class:`~lndrees.polycore.Poly` values.
"""

from __future__ import annotations

import heapq
import threading
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import NotInIdealError, ResourceBudgetError
from .polycore import (
    Monomial,
    MonomialOrder,
    Poly,
    Ring,
    RingMismatchError,
    Terms,
    embed,
    evaluate,
    mono_coprime,
    mono_divides,
    mono_lcm,
)

DEFAULT_PAIR_BUDGET = 200_000

Basis = List[Tuple[Monomial, Terms]]


# -- low level -------------------------------------------------------------


def _leading(f: Terms, key) -> Monomial:
    return max(f, key=key)


def _monic(f: Terms, lm: Monomial) -> Terms:
    c = f[lm]
    if c == 1:
        return f
    inv = 1 / c
    return {m: v * inv for m, v in f.items()}


def _sub_multiple(f: Terms, c: Fraction, q: Monomial, g: Terms) -> None:
    """In place: f -= c * x^q * g."""
    for gm, gc in g.items():
        m = tuple(a + b for a, b in zip(gm, q))
        s = f.get(m, 0) - c * gc
        if s:
            f[m] = s
        else:
            del f[m]


def _reduce(f: Terms, basis: Basis, key, full: bool = True) -> Terms:
    """Remainder of ``f`` on division by a monic ``basis``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    f = dict(f)
    rem: Terms = {}
    while f:
        m = _leading(f, key)
        c = f[m]
        for lm, g in basis:
            if mono_divides(lm, m):
                _sub_multiple(f, c, tuple(a - b for a, b in zip(m, lm)), g)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


def _spoly(a: Tuple[Monomial, Terms], b: Tuple[Monomial, Terms]) -> Terms:
    (la, fa), (lb, fb) = a, b
    lcm = mono_lcm(la, lb)
    out: Terms = {}
    qa = tuple(x - y for x, y in zip(lcm, la))
    qb = tuple(x - y for x, y in zip(lcm, lb))
    for m, c in fa.items():
        out[tuple(x + y for x, y in zip(m, qa))] = c
    _sub_multiple(out, Fraction(1), qb, fb)
    return out


def _interreduce(basis: Basis, key) -> Basis:
    """Minimal, fully reduced, monic basis sorted by decreasing leading monomial."""
    basis = sorted(basis, key=lambda t: key(t[0]))
    minimal: Basis = []
    for i, (lm, g) in enumerate(basis):
        if any(mono_divides(basis[j][0], lm) for j in range(len(basis)) if j != i
               and (basis[j][0] != lm or j < i)):
            continue
        minimal.append((lm, g))
    out: Basis = []
    for i, (lm, g) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, key)
        red[lm] = Fraction(1)
        out.append((lm, red))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


def groebner_terms(gens: Sequence[Terms], order: MonomialOrder,
                   budget: int = DEFAULT_PAIR_BUDGET) -> Basis:
    """Reduced Groebner basis of term dicts.

    Pairs are selected by smallest total degree of their lcm, ties broken by
    pair index.  Both Buchberger criteria are applied.
    """
    key = order.key
    G: Basis = []
    pending: set = set()
    heap: list = []
    processed = 0

    def add(f: Terms) -> None:
        lm = _leading(f, key)
        f = _monic(f, lm)
        k = len(G)
        G.append((lm, f))
        for i in range(k):
            lcm = mono_lcm(G[i][0], lm)
            pending.add((i, k))
            heapq.heappush(heap, (sum(lcm), i, k))

    for g in gens:
        r = _reduce(g, G, key)
        if r:
            add(r)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > budget:
            raise ResourceBudgetError(
                f"S-pair budget of {budget} exceeded", processed=processed)
        li, lj = G[i][0], G[j][0]
        if mono_coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        chain = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if mono_divides(G[k][0], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    chain = True
                    break
        if chain:
            continue
        s = _spoly(G[i], G[j])
        r = _reduce(s, G, key)
        if r:
            add(r)
    return _interreduce(G, key)


# -- public API ------------------------------------------------------------


def _basis_polys(ring: Ring, basis: Basis) -> List[Poly]:
    return [Poly(ring, g, _trusted=True) for _, g in basis]


def buchberger(gens: Sequence[Poly], order: Optional[MonomialOrder] = None,
               budget: int = DEFAULT_PAIR_BUDGET, ring: Optional[Ring] = None) -> List[Poly]:
    """Reduced Groebner basis of ``gens`` under ``order``."""
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring!r} vs {ring!r}")
    order = order or ring.default_order
    basis = groebner_terms([g.terms for g in gens if g.terms], order, budget)
    return _basis_polys(ring, basis)


class Ideal:
    """An ideal of a polynomial ring with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: Ring, generators: Sequence[Poly] = (),
                 order: Optional[MonomialOrder] = None, budget: int = DEFAULT_PAIR_BUDGET):
        self.ring = ring
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring!r} vs {ring!r}")
        self.generators = tuple(g for g in generators if g)
        self.order = order or ring.default_order
        if self.order.nvars != ring.nvars:
            raise ValueError("order does not match the ring")
        self.budget = budget
        self._basis: Optional[Basis] = None
        self._lock = threading.Lock()

    def _gb_terms(self) -> Basis:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = groebner_terms(
                        [g.terms for g in self.generators], self.order, self.budget)
        return self._basis

    @property
    def reduced_gb(self) -> List[Poly]:
        return _basis_polys(self.ring, self._gb_terms())

    def normal_form(self, p: Poly) -> Poly:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring!r} vs {self.ring!r}")
        return Poly(self.ring, _reduce(p.terms, self._gb_terms(), self.order.key), _trusted=True)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.contains(self.ring.one())

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.ring, self.generators, order, self.budget)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
        return Ideal(self.ring, self.generators + other.generators, self.order, self.budget)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


def normal_form(p: Poly, ideal: Ideal) -> Poly:
    return ideal.normal_form(p)


def ideal_member(p: Poly, ideal: Ideal) -> bool:
    return ideal.contains(p)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Equality of ideals, decided by comparing reduced bases in ``a``'s order."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    if b.order != a.order:
        b = b.with_order(a.order)
    return a._gb_terms() == b._gb_terms()


def _inner_weights(order: MonomialOrder) -> Tuple[int, ...]:
    return order.weights if order.kind in ("wdegrevlex", "block") else (1,) * order.nvars


def eliminate(ideal: Ideal, drop: Sequence[str], weights: Optional[Sequence[int]] = None) -> Ideal:
    """``ideal`` intersected with the polynomial ring in the remaining variables.

    Returns an :class:`Ideal` over the subring of kept variables, ordered by the
    weighted degree-reverse-lexicographic order restricted to them.
    """
    ring = ideal.ring
    drop = set(drop)
    unknown = drop - set(ring.names)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    weights = tuple(weights) if weights is not None else _inner_weights(ideal.order)
    keep = [n for n in ring.names if n not in drop]
    sub = Ring(keep)
    sub_w = tuple(weights[ring.index[n]] for n in keep)
    sub_order = MonomialOrder.wdegrevlex(len(keep), sub_w)
    if not drop:
        return Ideal(sub, [embed(g, sub) for g in ideal.generators], sub_order, ideal.budget)
    order = MonomialOrder.elimination(ring.nvars, [ring.index[n] for n in drop], weights)
    gb = groebner_terms([g.terms for g in ideal.generators], order, ideal.budget)
    dropped = [ring.index[n] for n in drop]
    kept = [Poly(ring, g, _trusted=True) for lm, g in gb if not any(lm[i] for i in dropped)]
    return Ideal(sub, [_restrict(g, sub) for g in kept], sub_order, ideal.budget)


def _restrict(p: Poly, sub: Ring) -> Poly:
    idx = [p.ring.index[n] for n in sub.names]
    return Poly(sub, {tuple(m[i] for i in idx): c for m, c in p.terms.items()}, _trusted=True)


def _fresh_names(names: Sequence[str], taken: Sequence[str], prefix: str) -> List[str]:
    taken = set(taken)
    out = []
    for n in names:
        cand = prefix + n
        while cand in taken:
            cand = prefix + cand
        taken.add(cand)
        out.append(cand)
    return out


class RingMap:
    """A k-algebra map from a polynomial ring into a presented quotient ring.

    ``images[i]`` is the image of ``source.names[i]`` in ``target`` modulo the
    ideal generated by ``relations``.
    """

    def __init__(self, source: Ring, target: Ring, images: Sequence[Poly],
                 relations: Sequence[Poly] = (), source_weights: Optional[Sequence[int]] = None,
                 target_weights: Optional[Sequence[int]] = None):
        if len(images) != source.nvars:
            raise ValueError("one image per source variable required")
        for p in list(images) + list(relations):
            if p.ring != target:
                raise RingMismatchError(f"{p.ring!r} vs {target!r}")
        self.source = source
        self.target = target
        self.relations = tuple(relations)
        self.source_weights = tuple(source_weights) if source_weights is not None else (1,) * source.nvars
        self.target_weights = tuple(target_weights) if target_weights is not None else (1,) * target.nvars
        if self.relations:
            rel = Ideal(target, self.relations, MonomialOrder.wdegrevlex(target.nvars, self.target_weights))
            images = [rel.normal_form(p) for p in images]
        self.images = tuple(images)

    def __call__(self, p: Poly) -> Poly:
        if p.ring != self.source:
            raise RingMismatchError(f"{p.ring!r} vs {self.source!r}")
        return evaluate(p, self.images, self.target)


def ringmap_kernel(f: RingMap, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Kernel of ``f``, computed by eliminating the target variables.

    The target's defining relations are adjoined before eliminating.
    """
    tgt, src = f.target, f.source
    src_names = _fresh_names(src.names, tgt.names, "%")
    joint = Ring(tgt.names + tuple(src_names))
    gens = [embed(r, joint) for r in f.relations]
    for name, img in zip(src_names, f.images):
        gens.append(joint.var(name) - embed(img, joint))
    weights = f.target_weights + f.source_weights
    order = MonomialOrder.elimination(joint.nvars, range(tgt.nvars), weights)
    gb = groebner_terms([g.terms for g in gens if g.terms], order, budget)
    n = tgt.nvars
    src_order = MonomialOrder.wdegrevlex(src.nvars, f.source_weights)
    kept = [Poly(src, {m[n:]: c for m, c in g.items()}, _trusted=True)
            for lm, g in gb if not any(lm[:n])]
    return Ideal(src, kept, src_order, budget)


class Subalgebra:
    """The subalgebra of ``ambient/relations`` generated by ``gens``.

    Membership is decided by a normal form modulo the tag ideal
    ``relations + (Y_i - gens_i)`` under an order eliminating the ambient
    variables: an element is a member iff its normal form involves only tags.
    """

    def __init__(self, ambient: Ring, gens: Sequence[Poly], relations: Sequence[Poly] = (),
                 tag_names: Optional[Sequence[str]] = None,
                 ambient_weights: Optional[Sequence[int]] = None,
                 tag_weights: Optional[Sequence[int]] = None,
                 budget: int = DEFAULT_PAIR_BUDGET):
        for p in list(gens) + list(relations):
            if p.ring != ambient:
                raise RingMismatchError(f"{p.ring!r} vs {ambient!r}")
        self.ambient = ambient
        self.gens = tuple(gens)
        self.relations = tuple(relations)
        if tag_names is None:
            tag_names = [f"Y{i}" for i in range(len(gens))]
        self.tags = Ring(tag_names)
        internal = _fresh_names(self.tags.names, ambient.names, "%")
        self.joint = Ring(ambient.names + tuple(internal))
        aw = tuple(ambient_weights) if ambient_weights is not None else (1,) * ambient.nvars
        tw = tuple(tag_weights) if tag_weights is not None else (1,) * len(gens)
        self.order = MonomialOrder.elimination(self.joint.nvars, range(ambient.nvars), aw + tw)
        ideal_gens = [embed(r, self.joint) for r in relations]
        for name, g in zip(internal, gens):
            ideal_gens.append(self.joint.var(name) - embed(g, self.joint))
        self._basis = groebner_terms([g.terms for g in ideal_gens if g.terms], self.order, budget)

    def witness(self, g: Poly) -> Optional[Poly]:
        """A polynomial G in the tags with G(gens) = g, or None if g is not a member."""
        if g.ring != self.ambient:
            raise RingMismatchError(f"{g.ring!r} vs {self.ambient!r}")
        nf = _reduce(embed(g, self.joint).terms, self._basis, self.order.key)
        n = self.ambient.nvars
        if any(any(m[:n]) for m in nf):
            return None
        return Poly(self.tags, {m[n:]: c for m, c in nf.items()}, _trusted=True)

    def contains(self, g: Poly) -> bool:
        return self.witness(g) is not None

    __contains__ = contains


def subalgebra_member(g: Poly, gens: Sequence[Poly], relations: Sequence[Poly] = (),
                      budget: int = DEFAULT_PAIR_BUDGET) -> Tuple[bool, Optional[Poly]]:
    """Whether ``g`` lies in ``k[gens]`` modulo ``relations``, with a witness."""
    w = Subalgebra(g.ring, gens, relations, budget=budget).witness(g)
    return w is not None, w


def lift_combination(p: Poly, gens: Sequence[Poly], order: Optional[MonomialOrder] = None,
                     budget: int = DEFAULT_PAIR_BUDGET) -> List[Poly]:
    """Cofactors ``c`` with ``p = sum(c[j] * gens[j])``.

    Runs a cofactor-tracking Buchberger over ``gens`` and then divides ``p``.
    Raises :class:`NotInIdealError` if ``p`` is not in the ideal.
    """
    ring = p.ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring!r} vs {ring!r}")
    order = order or ring.default_order
    key = order.key
    r = len(gens)
    zero = (0,) * ring.nvars

    def unit(j):
        return [({zero: Fraction(1)} if k == j else {}) for k in range(r)]

    def add_into(dst, src, c, q):
        for k in range(r):
            if src[k]:
                _sub_multiple(dst[k], -c, q, src[k])

    # G entries: (lm, terms, cofactors) with terms = sum(cof_k * gens_k)
    G = []

    def reduce_tracked(f, cof):
        f = dict(f)
        cof = [dict(c) for c in cof]
        rem: Terms = {}
        while f:
            m = _leading(f, key)
            c = f[m]
            for lm, g, gc in G:
                if mono_divides(lm, m):
                    q = tuple(a - b for a, b in zip(m, lm))
                    _sub_multiple(f, c, q, g)
                    for k in range(r):
                        if gc[k]:
                            _sub_multiple(cof[k], c, q, gc[k])
                    break
            else:
                rem[m] = c
                del f[m]
        return rem, cof

    def push(f, cof):
        lm = _leading(f, key)
        inv = 1 / f[lm]
        G.append((lm, {m: v * inv for m, v in f.items()},
                  [{m: v * inv for m, v in c.items()} for c in cof]))

    for j, g in enumerate(gens):
        if g.terms:
            push(g.terms, unit(j))
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    processed = 0
    while pairs:
        i, j = pairs.pop(0)
        processed += 1
        if processed > budget:
            raise ResourceBudgetError(f"S-pair budget of {budget} exceeded", processed=processed)
        (li, fi, ci), (lj, fj, cj) = G[i], G[j]
        if mono_coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        qi = tuple(a - b for a, b in zip(lcm, li))
        qj = tuple(a - b for a, b in zip(lcm, lj))
        s: Terms = {}
        _sub_multiple(s, Fraction(-1), qi, fi)
        _sub_multiple(s, Fraction(1), qj, fj)
        scof = [dict() for _ in range(r)]
        add_into(scof, ci, Fraction(1), qi)
        add_into(scof, cj, Fraction(-1), qj)
        rem, cof = reduce_tracked(s, scof)
        if rem:
            # rem = s - (reductions) so its cofactors are cof
            push(rem, cof)
            k = len(G) - 1
            pairs.extend((i2, k) for i2 in range(k))
    rem, cof = reduce_tracked(p.terms, [dict() for _ in range(r)])
    if rem:
        raise NotInIdealError(f"{p} is not in the ideal")
    # starting from zero cofactors, reduction leaves p + sum(cof_k gens_k) = rem = 0
    return [-Poly(ring, c, _trusted=True) for c in cof]
