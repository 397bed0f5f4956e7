import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import cotangent_points
from ellhiggs import group_actions as ga
from ellhiggs.errors import DomainError
from ellhiggs.torus import CZERO, ComplexRational, CotangentPoint, CurvePoint, cpoint

ALL_KINDS = ["sym", "hyperoct", "evensign", "symtranslate"]


def spec_for(kind, m, h=2):
    return ga.ActionSpec(kind, m, h if kind == "symtranslate" else 1)


def test_apply_single_flip():
    z = (cpoint("1/3", 0, 1), cpoint("1/4", 0, 2))
    g = ga.SignedPerm((-1, 1), (0, 1))
    assert ga.apply(g, z) == (cpoint("2/3", 0, -1), cpoint("1/4", 0, 2))


def test_apply_identity_and_translation():
    z = (cpoint("1/3", 0, 1), cpoint("1/4", "1/2", 2))
    assert ga.apply(ga.identity(2), z) == z
    w = CurvePoint("1/2", 0)
    assert ga.apply(w, z) == (cpoint("5/6", 0, 1), cpoint("3/4", "1/2", 2))


def test_signs_act_before_permutation():
    a, b = cpoint("1/3", 0, 1), cpoint("1/5", 0, 2)
    g = ga.SignedPerm((-1, 1), (1, 0))
    assert ga.apply(g, (a, b)) == (b, -a)


def test_apply_length_mismatch():
    with pytest.raises(DomainError):
        ga.apply(ga.identity(2), (cpoint(),))


def test_invalid_elements():
    with pytest.raises(DomainError):
        ga.SignedPerm((1, 1), (0, 0))
    with pytest.raises(DomainError):
        ga.SignedPerm((1, 2), (0, 1))
    with pytest.raises(DomainError):
        ga.ActionSpec("rotations", 2)
    with pytest.raises(DomainError):
        ga.ActionSpec("sym", 2, h=3)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_group_orders(kind):
    for m in range(4):
        spec = spec_for(kind, m)
        elems = list(ga.elements(spec))
        assert len(elems) == spec.order() == len(set(elems))


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_apply_respects_composition(kind):
    rng = random.Random(kind)
    spec = spec_for(kind, 3)
    z = tuple(cpoint(Fraction(rng.randrange(6), 6), Fraction(rng.randrange(6), 6), rng.randint(-2, 2)) for _ in range(3))
    elems = list(ga.elements(spec))
    for g in rng.sample(elems, min(20, len(elems))):
        for h in rng.sample(elems, min(20, len(elems))):
            assert ga.apply(g * h, z) == ga.apply(g, ga.apply(h, z))
        assert ga.apply(g * ga.identity(3), z) == ga.apply(g, z)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_generators_generate(kind):
    for m in range(1, 4):
        spec = spec_for(kind, m)
        gens = ga.generators(spec)
        closure = {ga.identity(m)}
        frontier = [ga.identity(m)]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = g * a
                    if c not in closure:
                        closure.add(c)
                        nxt.append(c)
            frontier = nxt
        assert closure == set(ga.elements(spec))


def test_generating_subset():
    elems = list(ga.elements(ga.ActionSpec("hyperoct", 3)))
    gens = ga.generating_subset(elems)
    assert len(gens) <= 4
    z = (cpoint("1/3", 0, 1), cpoint("1/4", 0, 2), cpoint(0, "1/5", 3))
    orb_all = {ga.apply(g, z) for g in elems}
    domain = sorted(orb_all)
    assert len(ga.orbit_partition(domain, gens, ga.apply)) == 1


def test_canonical_sym_examples():
    a, b = cpoint("1/3", 0, 1), cpoint("1/2", 0, 1)
    assert ga.canonical_sym((b, a)) == (a, b)
    assert ga.canonical_sym((a, b)) == (a, b)
    rng = random.Random(1)
    z = tuple(cpoint(Fraction(rng.randrange(5), 5), 0, rng.randint(0, 3)) for _ in range(4))
    outs = {ga.canonical_sym(tuple(z[i] for i in p)) for p in itertools.permutations(range(4))}
    assert len(outs) == 1


def test_canonical_hyperoct_examples():
    assert ga.canonical_hyperoct((cpoint("2/3", 0, 1),)) == (cpoint("1/3", 0, -1),)
    selfneg = (cpoint("1/2", 0, 0), cpoint(0, 0, 0), cpoint("1/2", "1/2", 0))
    assert ga.canonical_hyperoct(selfneg) == tuple(sorted(selfneg))
    rng = random.Random(2)
    z = tuple(cpoint(Fraction(rng.randrange(7), 7), Fraction(rng.randrange(7), 7), rng.randint(-3, 3)) for _ in range(3))
    images = {ga.canonical_hyperoct(ga.apply(g, z)) for g in ga.elements(ga.ActionSpec("hyperoct", 3))}
    assert len(images) == 1


def test_canonical_delta_examples():
    a, b = cpoint("1/3", 0, 1), cpoint("1/5", "2/5", 2)
    a, b = min(a, -a), min(b, -b)
    assert ga.canonical_delta((-a, -b)) == tuple(sorted((a, b)))
    z = (-a, b)
    orbit = {ga.apply(g, z) for g in ga.elements(ga.ActionSpec("evensign", 2))}
    assert len(orbit) == 4
    assert ga.canonical_delta(z) == min(orbit)
    assert ga.canonical_delta(z) != ga.canonical_hyperoct(z)
    w = (cpoint("1/2", 0, 0), b)
    assert ga.canonical_delta(w) == ga.canonical_hyperoct(w)


@given(st.lists(cotangent_points(), min_size=1, max_size=4), st.integers(0, 3))
def test_delta_with_self_negative_coordinate_matches_hyperoct(z, i):
    z = list(z)
    z[i % len(z)] = CotangentPoint(CurvePoint(Fraction(i % 2, 2), Fraction(i // 2, 2)), CZERO)
    assert ga.canonical_delta(z) == ga.canonical_hyperoct(z)


def test_canonical_translate_examples():
    z = (cpoint("1/3", 0, 1), cpoint("1/6", "1/2", 2))
    assert ga.canonical_translate(z, 1) == ga.canonical_sym(z)
    w = CurvePoint("1/2", 0)
    assert ga.canonical_translate(z, 2) == ga.canonical_translate(ga.apply(w, z), 2)
    with pytest.raises(DomainError):
        ga.canonical_translate(z, 0)


@settings(max_examples=60)
@given(st.sampled_from(ALL_KINDS), st.lists(cotangent_points(), min_size=1, max_size=3), st.data())
def test_canonical_is_idempotent_and_invariant(kind, z, data):
    spec = spec_for(kind, len(z), data.draw(st.sampled_from([1, 2, 3])))
    c = ga.canonical(spec, z)
    assert ga.canonical(spec, c) == c
    elems = list(ga.elements(spec))
    g = data.draw(st.sampled_from(elems))
    assert ga.canonical(spec, ga.apply(g, z)) == c


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("m", [1, 2])
def test_canonical_forms_match_brute_force_orbits_small(kind, m):
    h = 2
    domain = oracles.tuples_over(oracles.x2(), [ComplexRational(-1), CZERO, ComplexRational(1)], m)
    spec = spec_for(kind, m, h)
    by_canon = {}
    for z in domain:
        by_canon.setdefault(ga.canonical(spec, z), set()).add(z)
    assert {frozenset(v) for v in by_canon.values()} == oracles.orbit_classes(kind, domain, h)


def test_stabilizer_examples():
    distinct = (cpoint("1/3", 0, 1), cpoint("1/3", 0, 2), cpoint(0, 0, 3))
    assert ga.stabilizer_order(ga.ActionSpec("sym", 3), distinct) == 1
    t_only = (cpoint(0, 0, 0), cpoint(0, 0, 1), cpoint(0, 0, 1))
    assert ga.stabilizer_order(ga.ActionSpec("hyperoct", 3), t_only) == 4
    p = cpoint("1/3", 0, 1)
    assert ga.stabilizer_order(ga.ActionSpec("sym", 2), (p, p)) == 2


@settings(max_examples=80)
@given(st.sampled_from(ALL_KINDS), st.lists(st.sampled_from([
    cpoint(0, 0, 0), cpoint("1/2", 0, 0), cpoint("1/3", 0, 1), cpoint("2/3", 0, -1),
    cpoint("1/3", 0, -1), cpoint("1/2", "1/2", 1), cpoint(0, 0, 1),
]), min_size=1, max_size=4), st.sampled_from([1, 2, 3]))
def test_stabilizer_enumeration_matches_formula(kind, z, h):
    spec = spec_for(kind, len(z), h)
    assert ga.stabilizer_order(spec, z) == ga.stabilizer_order_formula(spec, z)
    # force the closed-form path (translations still need h^2 scans)
    cap = h * h if kind == "symtranslate" else 0
    assert ga.stabilizer_order(spec, z, cap=cap) == ga.stabilizer_order_formula(spec, z)


def test_stabilizer_large_group_uses_formula():
    z = tuple(cpoint(Fraction(i, 11), 0, i % 3) for i in range(10))
    spec = ga.ActionSpec("hyperoct", 10)
    assert spec.order() > ga.ENUMERATION_CAP
    assert ga.stabilizer_order(spec, z) == 2  # only the zero coordinate (0, 0) is self-negative


def test_stabilizer_unsupported_size():
    spec = ga.ActionSpec("symtranslate", 2, 5)
    z = (cpoint(), cpoint("1/5", 0, 0))
    with pytest.raises(DomainError, match="unsupported size"):
        ga.stabilizer_order(spec, z, cap=10)


def test_orbit_enumerate_examples():
    sym2 = ga.ActionSpec("sym", 2)
    assert ga.orbit_enumerate(sym2, ga.model_domain(2, 2, [CZERO, CZERO])).orbit_count == 10
    hyp1 = ga.ActionSpec("hyperoct", 1)
    assert ga.orbit_enumerate(hyp1, ga.model_domain(1, 3, [CZERO])).orbit_count == 5
    dom = ga.model_domain(1, 3, [CZERO])
    assert ga.orbit_enumerate(ga.ActionSpec("sym", 1), dom).orbit_count == len(dom)


def test_orbit_representatives_are_minima():
    spec = ga.ActionSpec("hyperoct", 2)
    report = ga.orbit_enumerate(spec, ga.model_domain(2, 3, [CZERO, CZERO]))
    for rep in report.representatives:
        assert rep == min(oracles.orbit("hyperoct", rep))


def test_orbit_enumerate_names_escaping_element():
    spec = ga.ActionSpec("hyperoct", 1)
    domain = [(cpoint("1/3", 0, 0),)]
    with pytest.raises(DomainError, match="escapes"):
        ga.orbit_enumerate(spec, domain)


def test_burnside_examples():
    C = ComplexRational
    assert ga.burnside_count(ga.ActionSpec("sym", 2), 3, [C(1), C(2)]).orbit_count == 81
    assert ga.burnside_count(ga.ActionSpec("sym", 2), 3, [C(1), C(1)]).orbit_count == 45
    assert ga.burnside_count(ga.ActionSpec("hyperoct", 2), 2, [C(0), C(0)]).orbit_count == 10


PATTERNS = [(0, 0, 0), (1, 1, 1), (0, 1, 1), (1, -1, 2), (-1, 1, 1), (1, 2, 3)]


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_burnside_matches_enumeration(kind, m, n):
    h = 2 if n % 2 == 0 else 1
    spec = spec_for(kind, m, h)
    patterns = {tuple(ComplexRational(t) for t in p[:m]) for p in PATTERNS}
    if n == 4 and m == 3:
        patterns = set(sorted(patterns)[:2])
    for ts in patterns:
        burn = ga.burnside_count(spec, n, ts)
        stab = ga.t_stabilizer(spec, ts)
        enum = ga.orbit_enumerate(spec, ga.model_domain(m, n, ts), ga.generating_subset(stab))
        assert burn.orbit_count == enum.orbit_count


def test_burnside_rejects_bad_translation_level():
    with pytest.raises(DomainError):
        ga.burnside_count(ga.ActionSpec("symtranslate", 2, 2), 3)


def test_json_round_trip():
    g = ga.SignedPerm((1, -1, 1), (2, 0, 1))
    assert ga.element_to_json(g) == {"signs": [1, -1, 1], "perm": [2, 0, 1]}
    assert ga.element_from_json(ga.element_to_json(g)) == g
    t = ga.translation(CurvePoint("1/2", 0), 2)
    assert ga.element_from_json(ga.element_to_json(t)) == t
    spec = ga.ActionSpec("hyperoct", 3)
    assert ga.spec_to_json(spec) == {"kind": "hyperoct", "m": 3}
    assert ga.spec_from_json(ga.spec_to_json(spec)) == spec
    st_spec = ga.ActionSpec("symtranslate", 2, 4)
    assert ga.spec_from_json(ga.spec_to_json(st_spec)) == st_spec
