"""Rees algebras of locally nilpotent derivations.

The Rees algebra of ``(A, d)`` is identified with the graded subalgebra
``sum_n F_n upsilon^n`` of ``A[upsilon]``, where ``F_n = Ker d^(n+1)``.
:func:`rees_algorithm` finds finitely many generators ``a_i upsilon^e(i)``
and the homogeneous ideal of relations among them.

New generators come from the ideal of presentation polynomials ``P`` whose
image lies in ``upsilon R``.  That ideal is the kernel of the graded map
``tau: X_upsilon -> 0, X_i -> sigma(a_i, e(i)) w^e(i)`` into ``A[w]``, where
``sigma(a, n) = d^n(a)/n!`` is the top coefficient of ``a`` in ``F_n/F_{n-1}``:
``sigma`` is multiplicative on the filtration and vanishes exactly on
``upsilon R``, and the auxiliary weight-one variable ``w`` keeps the kernel
homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import FiltrationError, InconsistencyError, NonTerminationError
from .groebner import DEFAULT_PAIR_BUDGET, Ideal, RingMap, Subalgebra, ideal_equal, ringmap_kernel
from .lnd import (
    DEFAULT_NILPOTENCY_BOUND,
    Derivation,
    QuotientAlgebra,
    divided_power,
    fresh_name,
    in_filtration,
    nil_degree,
)
from .polycore import (
    MonomialOrder,
    Poly,
    Ring,
    embed,
    evaluate,
    format_terms,
    is_homogeneous,
    mono_wdeg,
    substitute,
)

UPSILON = "upsilon"
DEFAULT_MAX_ITER = 32


@dataclass(frozen=True)
class GradedGenerator:
    """``element * upsilon^weight``, an element of the Rees algebra."""

    element: Poly
    weight: int
    label: str
    # position used to order generators of equal weight
    seq: float = 0

    @property
    def is_upsilon(self) -> bool:
        return self.label == UPSILON

    def __str__(self):
        return f"{self.label}:{self.weight}"


def upsilon_generator(algebra: QuotientAlgebra) -> GradedGenerator:
    return GradedGenerator(algebra.ring.one(), 1, UPSILON, float("inf"))


def sort_generators(gens: Sequence[GradedGenerator]) -> List[GradedGenerator]:
    return sorted(gens, key=lambda g: (g.weight, g.seq))


def sigma(d: Derivation, a: Poly, n: int) -> Poly:
    """Top coefficient ``d^n(a)/n!`` of ``a`` viewed in ``F_n``."""
    if n < 0 or not in_filtration(d, a, n):
        raise FiltrationError(f"{a} is not in F_{n}")
    return divided_power(d, a, n)


# -- presentations ---------------------------------------------------------


def _upsilon_ring(algebra: QuotientAlgebra) -> Tuple[Ring, str]:
    name = fresh_name(algebra.names, UPSILON)
    return Ring(algebra.names + (name,)), name


def rees_elements(algebra: QuotientAlgebra, gens: Sequence[GradedGenerator]) -> Tuple[Ring, List[Poly]]:
    """The generators as elements ``a * upsilon^e`` of ``A[upsilon]``."""
    ring, u = _upsilon_ring(algebra)
    uv = ring.var(u)
    return ring, [embed(g.element, ring) * uv ** g.weight for g in gens]


def presentation_ring(gens: Sequence[GradedGenerator]) -> Tuple[Ring, Tuple[int, ...]]:
    return Ring(g.label for g in gens), tuple(g.weight for g in gens)


def presentation_relations(algebra: QuotientAlgebra, gens: Sequence[GradedGenerator],
                           budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Kernel of ``X_i -> a_i upsilon^e(i)`` into ``A[upsilon]``; checked homogeneous."""
    ring, weights = presentation_ring(gens)
    target, images = rees_elements(algebra, gens)
    rels = [embed(r, target) for r in algebra.relations]
    tw = (0,) * algebra.ring.nvars + (1,)
    f = RingMap(ring, target, images, rels, source_weights=weights, target_weights=tw)
    ideal = ringmap_kernel(f, budget)
    for g in ideal.reduced_gb:
        if not is_homogeneous(g, weights):
            raise InconsistencyError(f"relation {g} is not homogeneous for weights {weights}")
    return ideal


def graded_kernel(d: Derivation, gens: Sequence[GradedGenerator],
                  budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Polynomials in the generators whose image lies in ``upsilon R``.

    Computed as the kernel of ``tau`` (see the module docstring).
    """
    algebra = d.algebra
    ring, weights = presentation_ring(gens)
    wname = fresh_name(algebra.names, "w")
    target = Ring(algebra.names + (wname,))
    w = target.var(wname)
    images = []
    for g in gens:
        if g.is_upsilon:
            images.append(target.zero())
        else:
            images.append(embed(sigma(d, g.element, g.weight), target) * w ** g.weight)
    rels = [embed(r, target) for r in algebra.relations]
    tw = (0,) * algebra.ring.nvars + (1,)
    f = RingMap(ring, target, images, rels, source_weights=weights, target_weights=tw)
    return ringmap_kernel(f, budget)


def dehomogenized_value(algebra: QuotientAlgebra, gens: Sequence[GradedGenerator], q: Poly) -> Poly:
    """``Q(1, a_1, ..., a_m)`` in ``A``: the coefficient of ``phi(Q)`` for homogeneous ``Q``."""
    images = [algebra.ring.one() if g.is_upsilon else g.element for g in gens]
    return algebra.nf(evaluate(q, images, algebra.ring))


def subalgebra_of(algebra: QuotientAlgebra, gens: Sequence[GradedGenerator],
                  budget: int = DEFAULT_PAIR_BUDGET) -> Subalgebra:
    ring, elems = rees_elements(algebra, gens)
    rels = [embed(r, ring) for r in algebra.relations]
    aw = (0,) * algebra.ring.nvars + (1,)
    return Subalgebra(ring, elems, rels, tag_names=[g.label for g in gens],
                      ambient_weights=aw, tag_weights=[g.weight for g in gens], budget=budget)


def rees_element(algebra: QuotientAlgebra, a: Poly, n: int) -> Poly:
    ring, u = _upsilon_ring(algebra)
    return embed(algebra.nf(a), ring) * ring.var(u) ** n


@dataclass
class Candidate:
    relation: Poly
    element: Poly
    raw_weight: int
    weight: Optional[int]
    verdict: str  # "zero", "member" or "new"


@dataclass
class Iteration:
    index: int
    relations: List[Poly]
    candidates: List[Candidate]
    new: List[GradedGenerator]


@dataclass
class AlgorithmTrace:
    initial: List[GradedGenerator] = field(default_factory=list)
    iterations: List[Iteration] = field(default_factory=list)
    stabilized: bool = False

    def lines(self) -> List[str]:
        out = ["initial: " + " ".join(f"{g.label}:{g.weight}" for g in self.initial)]
        for it in self.iterations:
            out.append(f"iteration {it.index}: {len(it.relations)} kernel generators, "
                       f"{len(it.new)} new")
            for g in it.new:
                out.append(f"  {g.label}:{g.weight} = {g.element}")
        out.append("stabilized" if self.stabilized else "not stabilized")
        return out


@dataclass
class ReesPresentation:
    """Generators with weights and the homogeneous ideal of relations among them."""

    derivation: Derivation
    generators: List[GradedGenerator]
    relations: Ideal
    trace: Optional[AlgorithmTrace] = None

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.derivation.algebra

    @property
    def ring(self) -> Ring:
        return self.relations.ring

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(g.weight for g in self.generators)

    @property
    def upsilon(self) -> GradedGenerator:
        return next(g for g in self.generators if g.is_upsilon)

    def generator(self, label: str) -> GradedGenerator:
        for g in self.generators:
            if g.label == label:
                return g
        raise KeyError(label)

    def relation_lines(self) -> List[str]:
        return relation_lines(self.relations)

    def generator_lines(self) -> List[str]:
        out = []
        for g in self.generators:
            line = f"{g.label}:{g.weight}"
            if not g.is_upsilon and str(g.element) != g.label:
                line += f" = {g.element}"
            out.append(line)
        return out


def relation_lines(ideal: Ideal) -> List[str]:
    """Reduced basis of ``ideal``, ascending by leading monomial."""
    key = ideal.order.key
    gb = sorted(ideal.reduced_gb, key=lambda g: key(g.leading_term(ideal.order)[0]))
    return [format_relation(g) for g in gb]


def format_relation(p: Poly) -> str:
    """Relation printed in lex term order with a positive first coefficient."""
    terms = p.sorted_terms(MonomialOrder.lex(p.ring.nvars))
    if terms and terms[0][1] < 0:
        terms = [(m, -c) for m, c in terms]
    return format_terms(terms, p.ring.names)


def build_presentation(d: Derivation, gens: Sequence[GradedGenerator],
                       budget: int = DEFAULT_PAIR_BUDGET,
                       trace: Optional[AlgorithmTrace] = None) -> ReesPresentation:
    gens = list(gens)
    if not any(g.is_upsilon for g in gens):
        gens.append(upsilon_generator(d.algebra))
    gens = sort_generators(gens)
    return ReesPresentation(d, gens, presentation_relations(d.algebra, gens, budget), trace)


# -- the algorithm ---------------------------------------------------------


def initial_generators(d: Derivation, bound: int = DEFAULT_NILPOTENCY_BOUND) -> List[GradedGenerator]:
    """Ring variables at their nil-degrees; variables equal to constants in ``A`` are skipped."""
    out = []
    for i, name in enumerate(d.ring.names):
        a = d.algebra.var(name)
        if a.is_constant():
            continue
        out.append(GradedGenerator(a, nil_degree(d, a, bound), name, i))
    return out


def _normalize(algebra: QuotientAlgebra, q: Poly) -> Poly:
    return q.monic(algebra.ideal.order)


def rees_step(d: Derivation, gens: Sequence[GradedGenerator], index: int = 0,
              bound: int = DEFAULT_NILPOTENCY_BOUND, budget: int = DEFAULT_PAIR_BUDGET,
              label_start: int = 1) -> Iteration:
    """One round: evaluate the kernel generators, divide by upsilon, keep what is new."""
    algebra = d.algebra
    gens = list(gens)
    if not any(g.is_upsilon for g in gens):
        gens.append(upsilon_generator(algebra))
    gens = sort_generators(gens)
    kernel = graded_kernel(d, gens, budget).reduced_gb
    _, weights = presentation_ring(gens)
    sub = None
    seen = set()
    candidates: List[Candidate] = []
    new: List[GradedGenerator] = []
    next_seq = max((g.seq for g in gens if not g.is_upsilon), default=-1) + 1
    for Q in kernel:
        N = max(mono_wdeg(m, weights) for m in Q.terms)
        q = dehomogenized_value(algebra, gens, Q)
        if not q:
            candidates.append(Candidate(Q, q, N - 1, None, "zero"))
            continue
        q = _normalize(algebra, q)
        f = nil_degree(d, q, bound)
        if f > N - 1:
            raise InconsistencyError(f"{q} has nil-degree {f} > {N - 1} after division by upsilon")
        if sub is None:
            sub = subalgebra_of(algebra, gens, budget)
        if q in seen or q.is_constant() or sub.contains(rees_element(algebra, q, f)):
            candidates.append(Candidate(Q, q, N - 1, f, "member"))
            continue
        seen.add(q)
        label = f"g{label_start + len(new)}"
        g = GradedGenerator(q, f, label, next_seq)
        next_seq += 1
        new.append(g)
        candidates.append(Candidate(Q, q, N - 1, f, "new"))
    return Iteration(index, kernel, candidates, new)


def rees_algorithm(d: Derivation, max_iter: int = DEFAULT_MAX_ITER,
                   bound: int = DEFAULT_NILPOTENCY_BOUND,
                   budget: int = DEFAULT_PAIR_BUDGET) -> ReesPresentation:
    """Generators and relations of the Rees algebra of ``d``.

    Starts from the ring variables at their nil-degrees and adds generators
    until a round produces nothing new.  Raises :class:`NonTerminationError`
    carrying the partial trace after ``max_iter`` rounds without
    stabilization.
    """
    gens = initial_generators(d, bound) + [upsilon_generator(d.algebra)]
    trace = AlgorithmTrace(initial=sort_generators(gens))
    found = 0
    for it in range(max_iter):
        step = rees_step(d, gens, it, bound, budget, label_start=found + 1)
        trace.iterations.append(step)
        if not step.new:
            trace.stabilized = True
            return build_presentation(d, gens, budget, trace)
        found += len(step.new)
        gens.extend(step.new)
    raise NonTerminationError(
        f"no stabilization within {max_iter} iterations", trace=trace)


# -- derived outputs -------------------------------------------------------


@dataclass
class GradedPresentation:
    """A graded algebra ``k[X]/I`` with generator weights; used for gr."""

    ring: Ring
    weights: Tuple[int, ...]
    relations: Ideal
    derivation_images: Dict[str, Poly] = field(default_factory=dict)

    def relation_lines(self) -> List[str]:
        return relation_lines(self.relations)


def _drop_upsilon(pres: ReesPresentation, value: int) -> Tuple[Ring, Tuple[int, ...], List[Poly]]:
    others = [g for g in pres.generators if not g.is_upsilon]
    ring = Ring(g.label for g in others)
    weights = tuple(g.weight for g in others)
    rels = []
    for r in pres.relations.reduced_gb:
        s = substitute(r, {UPSILON: pres.ring.const(value)})
        s = _restrict_to(s, ring)
        if s:
            rels.append(s)
    return ring, weights, rels


def _restrict_to(p: Poly, sub: Ring) -> Poly:
    idx = [p.ring.index[n] for n in sub.names]
    return Poly(sub, {tuple(m[i] for i in idx): c for m, c in p.terms.items()})


def associated_graded(pres: ReesPresentation, with_derivation: bool = True) -> GradedPresentation:
    """``R/upsilon R``: relations at ``upsilon = 0`` on the remaining generators.

    With ``with_derivation`` the induced degree -1 derivation is given on each
    generator by expressing ``d(a) upsilon^(e-1)`` in the generators.
    """
    ring, weights, rels = _drop_upsilon(pres, 0)
    out = GradedPresentation(ring, weights, Ideal(ring, rels, MonomialOrder.wdegrevlex(ring.nvars, weights)))
    if with_derivation:
        d = pres.derivation
        sub = subalgebra_of(pres.algebra, pres.generators, pres.relations.budget)
        for g in pres.generators:
            if g.is_upsilon:
                continue
            if g.weight == 0:
                out.derivation_images[g.label] = ring.zero()
                continue
            wit = sub.witness(rees_element(pres.algebra, d(g.element), g.weight - 1))
            if wit is None:
                raise InconsistencyError(f"d({g.label}) not expressible in the generators")
            wit = substitute(wit, {UPSILON: wit.ring.const(0)})
            out.derivation_images[g.label] = out.relations.normal_form(_restrict_to(wit, ring))
    return out


@dataclass
class Specialization:
    ring: Ring
    relations: Ideal
    isomorphic: bool
    detail: str = ""

    def relation_lines(self) -> List[str]:
        return relation_lines(self.relations)


def specialize_upsilon_one(pres: ReesPresentation) -> Specialization:
    """Relations at ``upsilon = 1``, checked to present ``A`` again.

    The check: every variable of ``A`` lies in the subalgebra generated by
    the ``a_i``, and the kernel of ``X_i -> a_i`` equals the specialized ideal.
    """
    algebra = pres.algebra
    ring, _, rels = _drop_upsilon(pres, 1)
    spec = Ideal(ring, rels, MonomialOrder.wdegrevlex(ring.nvars))
    others = [g for g in pres.generators if not g.is_upsilon]
    elems = [g.element for g in others]
    sub = Subalgebra(algebra.ring, elems, algebra.relations, tag_names=ring.names,
                     budget=pres.relations.budget)
    missing = [n for n in algebra.names if not sub.contains(algebra.var(n))]
    if missing:
        return Specialization(ring, spec, False, f"variables not generated: {', '.join(missing)}")
    kernel = ringmap_kernel(RingMap(ring, algebra.ring, elems, algebra.relations),
                            pres.relations.budget)
    if not ideal_equal(spec, kernel):
        return Specialization(ring, spec, False, "specialized relations differ from the kernel")
    return Specialization(ring, spec, True)


def degree_module_gens(pres: ReesPresentation, n: int) -> List[Poly]:
    """Generators of ``F_n`` as a module over the kernel ``F_0``.

    These are the products of positive-weight generators of total weight at
    most ``n`` (including the empty product ``1``).
    """
    pos = [g for g in pres.generators if g.weight > 0 and not g.is_upsilon]
    one = pres.algebra.ring.one()
    out = [one]
    seen = {one}

    def rec(start: int, weight: int, elem: Poly):
        for i in range(start, len(pos)):
            w = weight + pos[i].weight
            if w > n:
                continue
            e = pres.algebra.nf(elem * pos[i].element)
            if e not in seen:
                seen.add(e)
                out.append(e)
            rec(i, w, e)

    rec(0, 0, one)
    return out


def kernel_generators(pres: ReesPresentation) -> List[Poly]:
    """The weight-zero generators; they generate ``Ker d`` as an algebra."""
    return [g.element for g in pres.generators if g.weight == 0 and not g.is_upsilon]


def prune_generators(pres: ReesPresentation) -> ReesPresentation:
    """Greedily drop generators expressible in the others (never ``upsilon``)."""
    algebra = pres.algebra
    gens = []
    seen = set()
    for g in pres.generators:
        key = (g.element, g.weight)
        if key not in seen:
            seen.add(key)
            gens.append(g)
    for g in sorted(gens, key=lambda g: g.seq, reverse=True):
        if g.is_upsilon:
            continue
        rest = [h for h in gens if h is not g]
        sub = subalgebra_of(algebra, rest, pres.relations.budget)
        if sub.contains(rees_element(algebra, g.element, g.weight)):
            gens = rest
    out = build_presentation(pres.derivation, gens, pres.relations.budget, pres.trace)
    before = subalgebra_of(algebra, out.generators, pres.relations.budget)
    for g in pres.generators:
        if not before.contains(rees_element(algebra, g.element, g.weight)):
            raise InconsistencyError(f"pruning lost {g.label}")
    return out


def proj_report(pres: ReesPresentation) -> str:
    """Weighted projective ambient, relations, boundary and the affine chart."""
    base = [g for g in pres.generators if g.weight == 0]
    pos = [g for g in pres.generators if g.weight > 0]
    ws = ",".join(str(g.weight) for g in sorted(pos, key=lambda g: (g.weight, g.seq)))
    base_ring = f"k[{', '.join(g.label for g in base)}]" if base else "k"
    lines = [
        f"ambient: P({ws}) over {base_ring}",
        "homogeneous coordinates: " + " ".join(f"{g.label}:{g.weight}" for g in pos),
        "relations:",
    ]
    lines += [f"  {r}" for r in pres.relation_lines()] or ["  (none)"]
    ring, _, rels = _drop_upsilon(pres, 0)
    lines.append("boundary (upsilon = 0):")
    if rels:
        bw = tuple(g.weight for g in pres.generators if not g.is_upsilon)
        bd = Ideal(ring, rels, MonomialOrder.wdegrevlex(ring.nvars, bw))
        lines += [f"  {r}" for r in relation_lines(bd)]
    else:
        lines.append("  (none)")
    ring1, _, rels1 = _drop_upsilon(pres, 1)
    lines.append("affine chart (upsilon = 1):")
    if rels1:
        ch = Ideal(ring1, rels1, MonomialOrder.wdegrevlex(ring1.nvars))
        lines += [f"  {r}" for r in relation_lines(ch)]
    else:
        lines.append("  (none)")
    return "\n".join(lines)

