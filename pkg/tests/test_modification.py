import pytest

from lndrees.errors import ModificationError
from lndrees.groebner import Ideal, ideal_equal
from lndrees.modification import (
    ModificationInput,
    check_invariants,
    extension_ideal,
    localization_identity,
    modify,
    verify_rees_modification,
)
from lndrees.parser import parse_poly
from lndrees.polycore import embed

from .conftest import fixture, presentation


def _input(name, ideal, divisor):
    algebra, d = fixture(name)
    gens = [parse_poly(s, algebra.ring) for s in ideal]
    return ModificationInput(d, gens, parse_poly(divisor, algebra.ring))


def test_invariance_report():
    assert check_invariants(_input("plane", ["x", "y"], "x")).passed
    bad = check_invariants(_input("plane", ["y"], "y"))
    assert not bad.divisor_invariant and not bad.passed
    assert not check_invariants(_input("plane", ["x^2"], "x")).divisor_in_ideal


def test_modify_rejects_bad_input():
    with pytest.raises(ModificationError) as info:
        modify(_input("plane", ["y"], "y"))
    assert info.value.report is not None


def test_plane_modification():
    out = modify(_input("plane", ["x", "y"], "x"))
    ring = out.algebra.ring
    assert out.new_variables == ["t1", "t2"]
    want = Ideal(ring, [parse_poly("t1 - 1", ring), parse_poly("x*t2 - y", ring)])
    assert ideal_equal(out.algebra.ideal, want)
    # d'(y/x) = d(y)/x = 1
    assert out.derivation.images["t2"] == ring.one()
    assert localization_identity(out)


def test_sl2_modification_derivation():
    inp = _input("sl2", ["x", "y"], "x")
    out = modify(inp)
    assert out.derivation.well_defined and out.derivation.locally_nilpotent
    assert localization_identity(out)


def test_extension_of_unit_ideal_is_everything():
    # on SL2, (x, y) is the unit ideal since x*v - y*u = 1, so J contains 1
    pres = presentation("sl2")
    algebra = pres.algebra
    gens = [parse_poly(s, algebra.ring) for s in ("x", "y")]
    J = extension_ideal(pres, gens)
    assert [(algebra.nf(h).monic(), n) for h, n in J] == [(algebra.ring.one(), 0)]


def test_extension_ideal_on_plane():
    # I = (x, y) with d = x d/dy: I meets F_0 = k[x] in (x), and y lies in F_1
    pres = presentation("plane")
    algebra = pres.algebra
    J = extension_ideal(pres, [parse_poly(s, algebra.ring) for s in ("x", "y")])
    assert sorted((str(h), n) for h, n in J) == [("x", 0), ("y", 1)]


def test_lemma_on_plane():
    verdict = verify_rees_modification(_input("plane", ["x", "y"], "x"))
    assert verdict.holds, verdict.lines()
    assert verdict.lines()[-1] == "lemma verified"


def test_lemma_on_sl2():
    assert verify_rees_modification(_input("sl2", ["x", "y"], "x")).holds


def test_lemma_on_danielewski():
    # I = (x, y^2 - 1) is invariant: d(x) = 0, d(y^2 - 1) = 2*x*y
    assert verify_rees_modification(_input("danielewski", ["x", "y^2 - 1"], "x")).holds


@pytest.mark.parametrize("name", ["plane", "sl2"])
def test_induced_derivation_extends(name):
    inp = _input(name, ["x", "y"], "x")
    out = modify(inp)
    for n in inp.algebra.names:
        assert out.derivation.images[n] == out.algebra.nf(embed(inp.derivation.images[n], out.algebra.ring))
