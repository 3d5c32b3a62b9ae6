"""The shipped fixtures and the checks that certify them.

Each fixture is a spec file under ``fixtures/``.  The checks compare the
computed presentation with the expected one through an explicit matching of
expected generator names to computed labels; ideals are compared by reduced
Groebner bases.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NonTerminationError
from .groebner import Ideal, RingMap, Subalgebra, ideal_equal, ringmap_kernel
from .modification import ModificationInput, verify_rees_modification
from .parser import parse_poly, parse_spec
from .polycore import Poly, Ring, homogenize, substitute
from .rees import (
    UPSILON,
    ReesPresentation,
    degree_module_gens,
    kernel_generators,
    rees_algorithm,
)


def fixture_path(name: str):
    return resources.files("lndrees") / "fixtures" / name


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text()


def load(name: str, validate: bool = True):
    """``(algebra, derivation, options)`` for a fixture spec file."""
    return parse_spec(fixture_text(name), validate=validate)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Outcome:
    fixture: str
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))


# -- matching helpers ------------------------------------------------------


def find_generator(pres: ReesPresentation, element: Poly, weight: Optional[int] = None):
    """``(label, scale)`` with ``generator = scale * element``, or None."""
    element = pres.algebra.nf(element)
    for g in pres.generators:
        if g.is_upsilon or (weight is not None and g.weight != weight):
            continue
        for m, c in element.terms.items():
            if m in g.element.terms:
                scale = g.element.terms[m] / c
                if g.element == element.scale(scale):
                    return g.label, scale
            break
    return None


def matched_ideal(pres: ReesPresentation, names: Sequence[str], relations: Sequence[str],
                  matching: Dict[str, Tuple[str, object]]) -> Ideal:
    """Expected relations written in ``names``, moved to the presentation ring.

    ``matching`` maps an expected name to ``(label, scale)``; the expected
    variable becomes ``X_label / scale``.
    """
    src = Ring(names)
    bindings = {}
    for n in names:
        label, scale = matching.get(n, (n, 1))
        bindings[n] = pres.ring.var(label).scale(1 / scale) if scale != 1 else pres.ring.var(label)
    polys = [substitute(parse_poly(r, src), bindings, pres.ring) for r in relations]
    return Ideal(pres.ring, polys, pres.relations.order)


def same_elements_up_to_scale(got: Sequence[Poly], want: Sequence[Poly]) -> bool:
    def canon(p: Poly) -> Poly:
        return p.monic()

    return sorted(map(str, map(canon, got))) == sorted(map(str, map(canon, want)))


def _weights(pres: ReesPresentation) -> Dict[str, int]:
    return {g.label: g.weight for g in pres.generators}


# -- fixtures --------------------------------------------------------------


def check_intro() -> Outcome:
    out = Outcome("intro")
    _, d, _ = load("intro.spec")
    pres = rees_algorithm(d)
    out.add("generators t:1, upsilon:1", _weights(pres) == {"t": 1, UPSILON: 1})
    out.add("no relations", not pres.relations.reduced_gb, "; ".join(pres.relation_lines()))
    return out


def check_sl2() -> Outcome:
    out = Outcome("sl2")
    algebra, d, _ = load("sl2.spec")
    pres = rees_algorithm(d)
    out.add("weights x,y,u,v,upsilon = 0,0,1,1,1",
            _weights(pres) == {"x": 0, "y": 0, "u": 1, "v": 1, UPSILON: 1})
    want = matched_ideal(pres, ["x", "y", "u", "v", "upsilon"], ["x*v - y*u - upsilon"], {})
    out.add("relations = (x*v - y*u - upsilon)", ideal_equal(pres.relations, want),
            "; ".join(pres.relation_lines()))
    r = algebra.ring
    u, v = r.var("u"), r.var("v")
    out.add("F_1 generators {1, u, v}",
            same_elements_up_to_scale(degree_module_gens(pres, 1), [r.one(), u, v]))
    out.add("F_2 generators {1, u, v, u^2, u*v, v^2}",
            same_elements_up_to_scale(degree_module_gens(pres, 2),
                                      [r.one(), u, v, u * u, u * v, v * v]))
    return out


def check_danielewski() -> Outcome:
    out = Outcome("danielewski")
    _, d, _ = load("danielewski.spec")
    pres = rees_algorithm(d)
    out.add("weights x,y,z,upsilon = 0,1,2,1",
            _weights(pres) == {"x": 0, "y": 1, "z": 2, UPSILON: 1})
    hring = Ring(["x", "y", "upsilon"])
    p_tilde = homogenize(parse_poly("y^2 - 1", hring), (0, 1, 1), "upsilon")
    out.add("homogenized y^2 - 1 is y^2 - upsilon^2", p_tilde == parse_poly("y^2 - upsilon^2", hring))
    want = matched_ideal(pres, ["x", "y", "z", "upsilon"], [f"x*z - ({p_tilde})"], {})
    out.add("relations = (x*z - y^2 + upsilon^2)", ideal_equal(pres.relations, want),
            "; ".join(pres.relation_lines()))
    return out


def check_triangular() -> Outcome:
    out = Outcome("triangular")
    algebra, d, _ = load("triangular.spec")
    pres = rees_algorithm(d)
    r = algebra.ring
    w = parse_poly("x^2*z - y^2", r)
    found = find_generator(pres, w, 0)
    out.add("w = x^2*z - y^2 discovered at weight 0", found is not None)
    steps = [it for it in pres.trace.iterations if it.new]
    out.add("discovered by a nontrivial step", bool(steps) and found is not None
            and any(g.label == found[0] for it in steps for g in it.new))
    if found is None:
        return out
    out.add("weights y:1, upsilon:1, z:2",
            all(_weights(pres)[k] == v for k, v in {"y": 1, UPSILON: 1, "z": 2, "x": 0, "t": 0}.items()))
    want = matched_ideal(pres, ["x", "t", "w", "y", "upsilon", "z"],
                         ["x^2*z - y^2 - w*upsilon^2"], {"w": found})
    out.add("relations = (x^2*z - y^2 - w*upsilon^2)", ideal_equal(pres.relations, want),
            "; ".join(pres.relation_lines()))
    out.add("kernel generators {x, t, w}",
            same_elements_up_to_scale(kernel_generators(pres), [r.var("x"), r.var("t"), w]))
    return out


def check_threefold() -> Outcome:
    out = Outcome("threefold")
    _, d, _ = load("threefold.spec")
    pres = rees_algorithm(d)
    out.add("weights w1,w2,w3,upsilon = 1,1,2,1; x,y = 0",
            _weights(pres) == {"x": 0, "y": 0, "w1": 1, "w2": 1, "w3": 2, UPSILON: 1})
    want = matched_ideal(pres, ["x", "y", "w1", "w2", "w3", "upsilon"], [
        "x*w2 - y*(y*w1 + upsilon)",
        "y*w3 - w1*w2",
        "x*w3 - w1*(y*w1 + upsilon)",
    ], {})
    out.add("relations = (xW2 - y(yW1 + upsilon), yW3 - W1W2, xW3 - W1(yW1 + upsilon))",
            ideal_equal(pres.relations, want), "; ".join(pres.relation_lines()))
    return out


def check_winkelmann() -> Outcome:
    out = Outcome("winkelmann")
    algebra, d, _ = load("winkelmann.spec")
    pres = rees_algorithm(d)
    r = algebra.ring
    w = parse_poly("x*v - y*u", r)
    c1 = parse_poly("x*(1 + x*v - y*u) - u*z", r)
    c2 = parse_poly("y*(1 + x*v - y*u) - v*z", r)
    matching = {}
    for name, elem in (("w", w), ("c1", c1), ("c2", c2)):
        found = find_generator(pres, elem, 0)
        out.add(f"{name} discovered at weight 0", found is not None)
        if found is not None:
            matching[name] = found
    kgens = [r.var("u"), r.var("v"), w, c1, c2]
    out.add("kernel generators {u, v, w, c1, c2}",
            same_elements_up_to_scale(kernel_generators(pres), kgens))
    out.add("weights x,y,z,upsilon = 1",
            all(_weights(pres)[k] == 1 for k in ("x", "y", "z", UPSILON)))
    if len(matching) < 3:
        return out
    names = ["u", "v", "w", "c1", "c2", "x", "y", "z", "upsilon"]
    full = matched_ideal(pres, names, [
        "v*c1 - u*c2 - w*(w + 1)",
        "c2*x - c1*y + w*z",
        "w*upsilon + u*y - v*x",
        "c2*upsilon + v*z - (1 + w)*y",
        "c1*upsilon + u*z - (1 + w)*x",
    ], matching)
    out.add("relations = the five expected generators", ideal_equal(pres.relations, full),
            "; ".join(pres.relation_lines()))
    rel0 = matched_ideal(pres, names, ["v*c1 - u*c2 - w*(w + 1)"], matching).generators[0]
    deg0 = all(not any(m[i] for i, g in enumerate(pres.generators) if g.weight > 0)
               for m in rel0.terms)
    out.add("v*c1 - u*c2 - w*(w + 1) is a degree-0 relation", deg0 and pres.relations.contains(rel0))
    return out


def check_torsor() -> Outcome:
    out = Outcome("torsor")
    algebra, d, _ = load("torsor.spec")
    r = algebra.ring
    x, y, u, v = r.gens()
    ups = x * v - y * u
    # R = B[upsilon, X = xu, Z = xv, Y = yv]
    src = Ring(["x", "y", "upsilon", "X", "Z", "Y"])
    f = RingMap(src, r, [x, y, ups, x * u, x * v, y * v],
                source_weights=(0, 0, 1, 1, 1, 1), target_weights=(0, 0, 1, 1))
    kernel = ringmap_kernel(f)
    want = Ideal(src, [parse_poly(s, src) for s in
                       ("x*Y - y*Z", "y*X - x*(Z - upsilon)", "X*Y - Z*(Z - upsilon)")], kernel.order)
    out.add("R = B[upsilon,X,Z,Y]/J", ideal_equal(kernel, want),
            "; ".join(str(g) for g in kernel.reduced_gb))
    gens = [x, y, ups, v, x * u, u * v, x * u ** 2, x * u ** 3, x * u ** 4]
    sub = Subalgebra(r, gens)
    images = [d(g) for g in gens]
    out.add("R_0 = B[upsilon, v, xu, uv, xu^2, xu^3, xu^4] is stable",
            all(sub.contains(p) for p in images))
    out.add("d(uv) = 2xv - upsilon", d(u * v) == 2 * x * v - ups)
    return out


def check_modification() -> Outcome:
    out = Outcome("modification")
    for spec, ideal, divisor in (("plane.spec", "x; y", "x"), ("sl2.spec", "x; y", "x")):
        algebra, d, _ = load(spec)
        gens = [parse_poly(s, algebra.ring) for s in ideal.split(";")]
        verdict = verify_rees_modification(ModificationInput(d, gens, parse_poly(divisor, algebra.ring)))
        out.add(f"{spec}: R(A[I/f]) = R(A)[J/f] for I=({ideal}), f={divisor}", verdict.holds,
                "; ".join(verdict.lines()))
    return out


def check_nontermination() -> Outcome:
    out = Outcome("nontermination")
    _, d, opts = load("triangular_noiter.spec")
    try:
        rees_algorithm(d, max_iter=opts["max-iter"])
    except NonTerminationError as err:
        out.add("max-iter = 0 gives a non-termination report", True, str(err))
        out.add("report carries a partial trace", err.trace is not None and not err.trace.stabilized)
    else:
        out.add("max-iter = 0 gives a non-termination report", False, "a presentation was returned")
    return out


CHECKS: Dict[str, Callable[[], Outcome]] = {
    "intro": check_intro,
    "sl2": check_sl2,
    "danielewski": check_danielewski,
    "triangular": check_triangular,
    "threefold": check_threefold,
    "winkelmann": check_winkelmann,
    "torsor": check_torsor,
    "modification": check_modification,
    "nontermination": check_nontermination,
}

# fixtures with a golden ``rees`` output file
GOLDEN = ("intro", "sl2", "danielewski", "triangular", "threefold", "winkelmann", "torsor", "plane")


def run_check(name: str) -> Outcome:
    start = time.perf_counter()
    result = CHECKS[name]()
    result.seconds = time.perf_counter() - start
    return result
