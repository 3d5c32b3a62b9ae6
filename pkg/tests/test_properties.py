"""Randomized laws for derivations, filtrations and Rees presentations.

Every test draws a fixture algebra and random elements of it; the default
profile runs 200 examples per test.
"""

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lndrees.groebner import Ideal, Subalgebra
from lndrees.lnd import divided_power, exp_t, fresh_name, in_filtration, nil_degree
from lndrees.polycore import MonomialOrder, Ring, embed, evaluate
from lndrees.rees import (
    UPSILON,
    rees_element,
    rees_elements,
    sigma,
    specialize_upsilon_one,
    subalgebra_of,
)

from .conftest import FIXTURES, fixture, polys, presentation

_cache = {}


def cached(key, make):
    if key not in _cache:
        _cache[key] = make()
    return _cache[key]


def element(data, name, max_terms=3, max_deg=3):
    algebra, _ = fixture(name)
    return algebra.nf(data.draw(polys(algebra.ring, max_terms, max_deg)))


names = st.sampled_from(FIXTURES)


def _extended(name, extra):
    """``A[extra]`` with the relations of ``A``: ring and an ideal for equality tests."""
    def make():
        algebra, _ = fixture(name)
        ring = Ring(algebra.names + tuple(extra))
        ideal = Ideal(ring, [embed(r, ring) for r in algebra.relations], MonomialOrder.wdegrevlex(ring.nvars))
        return ring, ideal
    return cached(("ext", name, tuple(extra)), make)


def equal_mod(ideal, a, b):
    return ideal.contains(a - b) if ideal.generators else a == b


# -- derivation laws -------------------------------------------------------


@given(st.data(), names)
def test_leibniz(data, name):
    algebra, d = fixture(name)
    a, b = element(data, name), element(data, name)
    assert d(a * b) == algebra.nf(a * d(b) + b * d(a))


@given(st.data(), names, st.integers(0, 4), st.integers(0, 4))
def test_divided_power_composition(data, name, i, j):
    _, d = fixture(name)
    a = element(data, name)
    lhs = divided_power(d, divided_power(d, a, j), i)
    assert lhs == divided_power(d, a, i + j).scale(comb(i + j, i))


@given(st.data(), names)
def test_exp_is_multiplicative(data, name):
    algebra, d = fixture(name)
    a, b = element(data, name, 2, 2), element(data, name, 2, 2)
    ea, eb, eab = exp_t(d, a, "s"), exp_t(d, b, "s"), exp_t(d, a * b, "s")
    _, ideal = _extended(name, [fresh_name(algebra.names, "s")])
    assert equal_mod(ideal, eab, ea * eb)


@given(st.data(), names)
def test_exp_coassociative(data, name):
    # exp(s d) exp(t d) a = exp((s + t) d) a
    algebra, d = fixture(name)
    a = element(data, name)
    sname = fresh_name(algebra.names, "s")
    tname = fresh_name(algebra.names + (sname,), "t")
    ring, ideal = _extended(name, [sname, tname])
    s, t = ring.var(sname), ring.var(tname)
    lhs = ring.zero()
    i, di = 0, a
    while di:
        j, dj = 0, di
        while dj:
            lhs = lhs + embed(dj, ring) * s ** j * t ** i
            j += 1
            dj = divided_power(d, di, j)
        i += 1
        di = divided_power(d, a, i)
    rhs = ring.zero()
    n, dn = 0, a
    while dn:
        rhs = rhs + embed(dn, ring) * (s + t) ** n
        n += 1
        dn = divided_power(d, a, n)
    assert equal_mod(ideal, lhs, rhs)


# -- filtration ------------------------------------------------------------


@given(st.data(), names)
def test_nil_degree_matches_scan(data, name):
    _, d = fixture(name)
    a = element(data, name)
    if not a:
        return
    n = 0
    while not in_filtration(d, a, n):
        n += 1
    assert nil_degree(d, a) == n


@given(st.data(), names)
def test_filtration_is_multiplicative(data, name):
    algebra, d = fixture(name)
    a, b = element(data, name), element(data, name)
    if not a or not b:
        return
    m, n = nil_degree(d, a), nil_degree(d, b)
    assert in_filtration(d, a * b, m + n)
    # every fixture algebra is a domain, where the degree is additive
    assert nil_degree(d, a * b) == m + n


@given(st.data(), names)
def test_derivation_lowers_filtration(data, name):
    _, d = fixture(name)
    a = element(data, name)
    if not a:
        return
    n = nil_degree(d, a)
    if n == 0:
        assert not d(a)
    else:
        assert in_filtration(d, d(a), n - 1)
        assert not in_filtration(d, d(a), n - 2)


@given(st.data(), names)
def test_sigma_multiplicative(data, name):
    algebra, d = fixture(name)
    a, b = element(data, name), element(data, name)
    if not a or not b:
        return
    m = nil_degree(d, a) + data.draw(st.integers(0, 1))
    n = nil_degree(d, b) + data.draw(st.integers(0, 1))
    assert sigma(d, a * b, m + n) == algebra.nf(sigma(d, a, m) * sigma(d, b, n))


@given(st.data(), names, st.integers(0, 2))
def test_sigma_kernel(data, name, k):
    # for a in F_n: sigma(a, n) = 0 exactly when a lies in F_(n-1)
    _, d = fixture(name)
    a = element(data, name)
    n = (nil_degree(d, a) if a else 0) + k
    assert (not sigma(d, a, n)) == in_filtration(d, a, n - 1)


# -- Rees presentations ----------------------------------------------------

STABLE = FIXTURES


def _rees_data(name):
    def make():
        pres = presentation(name)
        sub = subalgebra_of(pres.algebra, pres.generators)
        irrelevant = [pres.ring.var(g.label) for g in pres.generators if g.weight > 0]
        ideal = Ideal(pres.ring, irrelevant + pres.relations.reduced_gb)
        target, images = rees_elements(pres.algebra, pres.generators)
        rels = Ideal(target, [embed(r, target) for r in pres.algebra.relations])
        return pres, sub, ideal, target, images, rels
    return cached(("rees", name), make)


@given(st.data(), st.sampled_from(STABLE), st.integers(0, 2))
def test_irrelevant_ideal(data, name, k):
    # a upsilon^n with n > 0 is generated, and lies in (upsilon, positive-weight generators)
    pres, sub, ideal, target, images, rels = _rees_data(name)
    _, d = fixture(name)
    a = element(data, name, 3, 2)
    if not a:
        return
    n = max(nil_degree(d, a) + k, 1)
    elem = rees_element(pres.algebra, a, n)
    w = sub.witness(elem)
    assert w is not None
    assert w.ring.names == pres.ring.names
    assert equal_mod(rels, evaluate(w, images, target), embed(elem, target))
    assert ideal.contains(embed(w, pres.ring))


@pytest.mark.parametrize("name", STABLE)
def test_specialization_recovers_algebra(name):
    spec = specialize_upsilon_one(presentation(name))
    assert spec.isomorphic, spec.detail


@given(st.data(), st.sampled_from(STABLE))
def test_specialization_round_trip(data, name):
    # every element of A is a polynomial in the specialized generators
    def make():
        pres = presentation(name)
        others = [g for g in pres.generators if g.label != UPSILON]
        elems = [g.element for g in others]
        sub = Subalgebra(pres.algebra.ring, elems, pres.algebra.relations, tag_names=[g.label for g in others])
        return pres, sub, elems
    pres, sub, elems = cached(("spec", name), make)
    algebra = pres.algebra
    a = element(data, name)
    w = sub.witness(a)
    assert w is not None
    assert algebra.nf(evaluate(w, elems, algebra.ring)) == a


@given(st.data())
def test_local_slice_sl2(data):
    # on SL2 with s = u and f = x = d(s): a upsilon^n lies in (F_0)_f[s upsilon, upsilon]
    def make():
        algebra, _ = fixture("sl2")
        ring = Ring(algebra.names + ("z", "upsilon"))
        rels = [embed(r, ring) for r in algebra.relations]
        rels.append(ring.var("z") * ring.var("x") - 1)
        ups = ring.var("upsilon")
        gens = [ring.var("x"), ring.var("y"), ring.var("z"), ring.var("u") * ups, ups]
        aw = (0, 0, 0, 0, 0, 1)
        return ring, Subalgebra(ring, gens, rels, ambient_weights=aw, tag_weights=[0, 0, 0, 1, 1])
    ring, sub = cached("slice", make)
    algebra, d = fixture("sl2")
    a = element(data, "sl2")
    if not a:
        return
    n = nil_degree(d, a) + data.draw(st.integers(0, 1))
    assert sub.contains(embed(a, ring) * ring.var("upsilon") ** n)
