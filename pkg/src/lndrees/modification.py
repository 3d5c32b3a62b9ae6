"""Equivariant affine modifications ``A[I/f]`` and their Rees algebras.

Localizations are modelled by adjoining a variable ``z`` with ``z f = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .errors import ModificationError
from .groebner import DEFAULT_PAIR_BUDGET, Ideal, RingMap, Subalgebra, lift_combination, ringmap_kernel
from .lnd import DEFAULT_NILPOTENCY_BOUND, Derivation, QuotientAlgebra, fresh_name
from .polycore import Poly, Ring, embed, mono_wdeg, substitute
from .rees import DEFAULT_MAX_ITER, ReesPresentation, dehomogenized_value, rees_algorithm, rees_elements


@dataclass
class ModificationInput:
    derivation: Derivation
    ideal: List[Poly]
    divisor: Poly

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.derivation.algebra


@dataclass
class InvariantReport:
    divisor_in_ideal: bool
    divisor_invariant: bool
    non_invariant: List[Poly] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.divisor_in_ideal and self.divisor_invariant and not self.non_invariant

    def lines(self) -> List[str]:
        out = [f"divisor in ideal: {'yes' if self.divisor_in_ideal else 'no'}",
               f"divisor invariant: {'yes' if self.divisor_invariant else 'no'}"]
        for g in self.non_invariant:
            out.append(f"  d({g}) not in the ideal")
        out.append("PASS" if self.passed else "FAIL")
        return out


def _ideal_in_algebra(algebra: QuotientAlgebra, gens: Sequence[Poly]) -> Ideal:
    return Ideal(algebra.ring, list(gens) + list(algebra.relations))


def check_invariants(inp: ModificationInput) -> InvariantReport:
    """``f`` in ``I``, ``d f = 0`` and ``d I`` contained in ``I`` (all modulo the relations of A)."""
    d, algebra = inp.derivation, inp.algebra
    ideal = _ideal_in_algebra(algebra, inp.ideal)
    bad = [g for g in inp.ideal if not ideal.contains(d(g))]
    return InvariantReport(ideal.contains(inp.divisor), algebra.is_zero(d(inp.divisor)), bad)


@dataclass
class ModificationOutput:
    source: ModificationInput
    algebra: QuotientAlgebra
    derivation: Derivation
    new_variables: List[str]
    inverse: str
    # images of the variables of A' in A[z]/(I_A, z f - 1)
    localization: Dict[str, Poly]
    local_ring: Ring
    local_relations: List[Poly]


def _localized(algebra: QuotientAlgebra, f: Poly, extra: Sequence[str] = ()):
    zname = fresh_name(algebra.names + tuple(extra), "z")
    ring = Ring(algebra.names + (zname,) + tuple(extra))
    rels = [embed(r, ring) for r in algebra.relations]
    rels.append(ring.var(zname) * embed(f, ring) - 1)
    return ring, zname, rels


def modify(inp: ModificationInput, bound: int = DEFAULT_NILPOTENCY_BOUND,
           budget: int = DEFAULT_PAIR_BUDGET, prefix: str = "t") -> ModificationOutput:
    """Presentation of ``A[I/f]`` with its induced derivation.

    ``t_i`` stands for ``g_i/f``; the defining ideal is the kernel of
    ``A[t] -> A[z]/(z f - 1)``, ``t_i -> g_i z``.  The derivation sends
    ``t_i`` to ``sum_j c_j t_j`` where ``d(g_i) = sum_j c_j g_j``.
    """
    report = check_invariants(inp)
    if not report.passed:
        raise ModificationError("invariance preconditions fail", report=report)
    algebra, d = inp.algebra, inp.derivation
    r = len(inp.ideal)
    tnames = []
    for i in range(r):
        tnames.append(fresh_name(algebra.names + tuple(tnames), f"{prefix}{i + 1}"))
    local, zname, lrels = _localized(algebra, inp.divisor)
    z = local.var(zname)
    src = Ring(algebra.names + tuple(tnames))
    images = [local.var(n) for n in algebra.names]
    images += [embed(g, local) * z for g in inp.ideal]
    kernel = ringmap_kernel(RingMap(src, local, images, lrels), budget)
    new_alg = QuotientAlgebra(src, kernel.reduced_gb, budget=budget)

    lift_gens = list(inp.ideal) + list(algebra.relations)
    ts = [src.var(t) for t in tnames]
    dimages: Dict[str, Poly] = {n: embed(d.images[n], src) for n in algebra.names}
    for t, g in zip(tnames, inp.ideal):
        cof = lift_combination(d(g), lift_gens, budget=budget)
        img = src.zero()
        for c, tj in zip(cof[:r], ts):
            img = img + embed(c, src) * tj
        dimages[t] = img
    new_d = Derivation(new_alg, dimages).validate(bound)
    localization = {n: img for n, img in zip(src.names, images)}
    return ModificationOutput(inp, new_alg, new_d, tnames, zname, localization, local, lrels)


def localization_identity(out: ModificationOutput) -> bool:
    """A' and A generate the same subalgebra of ``A_f`` once ``z = 1/f`` is adjoined."""
    ring, z = out.local_ring, out.local_ring.var(out.inverse)
    a_side = [ring.var(n) for n in out.source.algebra.names] + [z]
    a2_side = list(out.localization.values()) + [z]
    s1 = Subalgebra(ring, a_side, out.local_relations)
    s2 = Subalgebra(ring, a2_side, out.local_relations)
    return all(s1.contains(p) for p in a2_side) and all(s2.contains(p) for p in a_side)


def extension_ideal(pres: ReesPresentation, ideal: Sequence[Poly],
                    budget: int = DEFAULT_PAIR_BUDGET) -> List[Tuple[Poly, int]]:
    """Homogeneous generators ``(h, n)`` of the extension of ``I`` to the Rees algebra.

    These are the images of the kernel of ``X_i -> a_i upsilon^e(i)`` into
    ``A[upsilon]/(I_A + I)``; each ``h upsilon^n`` lies in ``I A[upsilon]``.
    """
    algebra = pres.algebra
    target, images = rees_elements(algebra, pres.generators)
    rels = [embed(r, target) for r in list(algebra.relations) + list(ideal)]
    tw = (0,) * algebra.ring.nvars + (1,)
    f = RingMap(pres.ring, target, images, rels, source_weights=pres.weights, target_weights=tw)
    out = []
    for P in ringmap_kernel(f, budget).reduced_gb:
        h = dehomogenized_value(algebra, pres.generators, P)
        if h:
            out.append((h, max(mono_wdeg(m, pres.weights) for m in P.terms)))
    return out


@dataclass
class LemmaVerdict:
    holds: bool
    base: ReesPresentation
    modified: ReesPresentation
    missing_left: List[str] = field(default_factory=list)
    missing_right: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        out = ["R(A,d) generators: " + " ".join(self.base.generator_lines()),
               "R(A',d') generators: " + " ".join(self.modified.generator_lines())]
        for m in self.missing_left:
            out.append(f"  not in R(A,d)[J/f]: {m}")
        for m in self.missing_right:
            out.append(f"  not in R(A',d'): {m}")
        out.append("lemma verified" if self.holds else "lemma FAILED")
        return out


def verify_rees_modification(inp: ModificationInput, max_iter: int = DEFAULT_MAX_ITER,
                             bound: int = DEFAULT_NILPOTENCY_BOUND,
                             budget: int = DEFAULT_PAIR_BUDGET) -> LemmaVerdict:
    """Compare ``R(A[I/f])`` with ``R(A)[J/f]`` inside ``R(A)_f``.

    ``J`` is the homogeneous ideal ``I A[upsilon]`` intersected with ``R(A)``,
    whose degree ``n`` part is ``(I meet F_n) upsilon^n``.  Both algebras are
    realized in ``A[z, upsilon]/(I_A, z f - 1)`` and compared by mutual
    subalgebra membership.
    """
    algebra, d = inp.algebra, inp.derivation
    base = rees_algorithm(d, max_iter, bound, budget)
    out = modify(inp, bound, budget)
    modified = rees_algorithm(out.derivation, max_iter, bound, budget)

    uname = fresh_name(algebra.names + (out.inverse,), "upsilon")
    ring, zname, rels = _localized(algebra, inp.divisor, (uname,))
    u, z = ring.var(uname), ring.var(zname)

    left = [embed(g.element, ring) * u ** g.weight for g in base.generators]
    left_labels = [g.label for g in base.generators]
    jgens = extension_ideal(base, inp.ideal, budget)
    for i, (h, n) in enumerate(jgens):
        left.append(embed(h, ring) * z * u ** n)
        left_labels.append(f"J{i + 1}/f")

    loc = {n: embed(p, ring) for n, p in out.localization.items()}
    right = []
    for g in modified.generators:
        elem = substitute(g.element, loc, ring)
        right.append(elem * u ** g.weight)
    right_labels = [g.label for g in modified.generators]

    aw = (0,) * (algebra.ring.nvars + 1) + (1,)
    lw = [g.weight for g in base.generators] + [n for _, n in jgens]
    rw = [g.weight for g in modified.generators]
    s_left = Subalgebra(ring, left, rels, ambient_weights=aw, tag_weights=lw, budget=budget)
    s_right = Subalgebra(ring, right, rels, ambient_weights=aw, tag_weights=rw, budget=budget)
    missing_left = [lab for lab, p in zip(right_labels, right) if not s_left.contains(p)]
    missing_right = [lab for lab, p in zip(left_labels, left) if not s_right.contains(p)]
    holds = not missing_left and not missing_right
    return LemmaVerdict(holds, base, modified, missing_left, missing_right)
