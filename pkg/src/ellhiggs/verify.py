"""Executable checks of the weighted torsion-action lemmas and of the structure
maps between moduli spaces, each run against a brute-force computation."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any

import numpy as np

from . import group_actions as ga
from . import moduli as mod
from .errors import DomainError
from .hitchin import hitchin_map
from .moduli import GroupLabel
from .torus import (
    CZERO,
    IDENTITY,
    ComplexRational,
    CotangentPoint,
    CurvePoint,
    curve_to_json,
    torsion_subgroup,
)


@dataclass
class LemmaReport:
    statement: str
    parameters: dict
    verdict: str
    witness: Any = None
    counts: tuple[int, int] | None = None
    seed: int | None = None
    detail: dict = field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        return self.verdict == "confirmed"

    def to_json(self) -> dict:
        out: dict = {"statement": self.statement, "parameters": self.parameters, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counts is not None:
            out["counts"] = list(self.counts)
        if self.seed is not None:
            out["seed"] = self.seed
        if self.detail:
            out["detail"] = self.detail
        return out


def _verdict(ok: bool) -> str:
    return "confirmed" if ok else "refuted"


# weighted torsion actions


def weighted_gcd(h: int, weights) -> int:
    return gcd(h, *weights)


def check_freeness(h: int, weights) -> LemmaReport:
    """Is a -> (m_1 a, ..., m_l a) translation by X[h] free?  Compared with gcd(h, m) = 1."""
    if h < 1:
        raise DomainError(f"h must be positive, got {h}")
    weights = [int(w) for w in weights]
    r = weighted_gcd(h, weights)
    fixer = None
    for a in torsion_subgroup(h):
        if a.is_identity():
            continue
        if all((a * w).is_identity() for w in weights):
            fixer = a
            break
    free = fixer is None
    ok = free == (r == 1)
    witness = None
    if fixer is not None:
        witness = curve_to_json(fixer)
    elif not ok:
        witness = {"r": r, "note": "no fixing element although r > 1"}
    return LemmaReport(
        "weighted-action-free-iff-gcd-1",
        {"h": h, "weights": weights},
        _verdict(ok),
        witness,
        detail={"free": free, "r": r},
    )


def _dtype(ell: int, n: int):
    return np.int32 if n ** (2 * ell) < 2**31 else np.int64


def _encode(coords_i, coords_j, n):
    """Integer code of a tuple of X[n] points given per-coordinate index arrays."""
    if not coords_i:
        return np.zeros(1, dtype=np.int64)
    code = np.zeros(coords_i[0].shape, dtype=coords_i[0].dtype)
    for ci, cj in zip(coords_i, coords_j):
        code = code * (n * n) + (ci % n) * n + (cj % n)
    return code


def _model_arrays(ell: int, n: int):
    size = n ** (2 * ell)
    idx = np.arange(size, dtype=_dtype(ell, n))
    ci, cj = [], []
    for k in reversed(range(ell)):
        digit = (idx // (n * n) ** k) % (n * n)
        ci.append(digit // n)
        cj.append(digit % n)
    return ci, cj


def _group_shifts(h: int, n: int):
    step = n // h
    return [(u * step, v * step) for u in range(h) for v in range(h)]


def weighted_orbit_codes(h: int, weights, n: int):
    """For every tuple in X[n]^l, the minimum code over its X[h]-orbit."""
    weights = [w % n for w in weights]
    ell = len(weights)
    ci, cj = _model_arrays(ell, n)
    best = None
    for su, sv in _group_shifts(h, n):
        code = _encode([c + w * su for c, w in zip(ci, weights)], [c + w * sv for c, w in zip(cj, weights)], n)
        best = code if best is None else np.minimum(best, code)
    return best


def weighted_orbit_count(h: int, weights, n: int) -> int:
    if not weights:
        return 1
    ci, cj = _model_arrays(len(weights), n)
    # each orbit has exactly one member equal to its minimum code
    return int(np.count_nonzero(weighted_orbit_codes(h, weights, n) == _encode(ci, cj, n)))


def check_quotient_iso(h: int, weights, n: int) -> LemmaReport:
    """Finite-model check that X[N]^l / X[h] (weighted) has the size and the explicit
    orbit map predicted by the quotient isomorphism."""
    if h < 1 or n < 1:
        raise DomainError("h and N must be positive")
    if n % h:
        raise DomainError(f"N not a multiple of h: N={n}, h={h}")
    weights = [int(w) for w in weights]
    ell = len(weights)
    r = weighted_gcd(h, weights)
    orbits = weighted_orbit_count(h, weights, n)
    expected = r * r * n ** (2 * ell) // (h * h)
    params = {"h": h, "weights": weights, "N": n}
    detail: dict = {"r": r}
    ok = orbits == expected
    witness = None
    if not ok:
        witness = {"orbits": orbits, "expected": expected}
    if ell and ok:
        m1 = weights[0]
        r1 = gcd(m1, h)
        if r1 == 1:
            sub_ok, info = _check_bezout_map(h, weights, n, orbits)
            detail["bezout"] = info
        else:
            sub_ok, info = _check_factorization(h, weights, n, r1, orbits)
            detail["factorization"] = info
        if not sub_ok:
            ok = False
            witness = info
    return LemmaReport("weighted-quotient-iso", params, _verdict(ok), witness, (orbits, expected), detail=detail)


def _check_bezout_map(h: int, weights, n: int, orbits: int):
    m1 = weights[0]
    p = pow(m1, -1, h) if h > 1 else 0
    weights = [w % n for w in weights]
    ell = len(weights)
    ci, cj = _model_arrays(ell, n)

    def phi(ai, aj):
        first_i, first_j = ai[0] * h, aj[0] * h
        rest_i = [ai[k] - p * weights[k] * ai[0] for k in range(1, ell)]
        rest_j = [aj[k] - p * weights[k] * aj[0] for k in range(1, ell)]
        return _encode([first_i] + rest_i, [first_j] + rest_j, n)

    base = phi(ci, cj)
    for su, sv in _group_shifts(h, n):
        moved = phi([c + w * su for c, w in zip(ci, weights)], [c + w * sv for c, w in zip(cj, weights)])
        bad = np.nonzero(moved != base)[0]
        if bad.size:
            return False, {"p": p, "not_orbit_constant_at": int(bad[0]), "shift": [su, sv]}
    image = int(np.unique(base).size)
    expected_image = (n // h) ** 2 * n ** (2 * (ell - 1))
    ok = image == orbits == expected_image
    return ok, {"p": p, "image": image, "expected_image": expected_image}


def _check_factorization(h: int, weights, n: int, r1: int, orbits: int):
    """gcd(m_1, h) = r1 > 1: X[r1] fixes the first coordinate, the tail is a weighted
    X[r1]-quotient, and X[h]/X[r1] acts freely through the first coordinate."""
    m1 = weights[0]
    trivial_on_first = all((a * m1).is_identity() for a in torsion_subgroup(r1))
    free_residual = all(
        not (a * m1).is_identity() for a in torsion_subgroup(h) if not (a * r1).is_identity()
    )
    tail = weights[1:]
    tail_report = check_quotient_iso(r1, tail, n) if tail else None
    tail_count = weighted_orbit_count(r1, tail, n)
    q = h // r1
    assembled = n * n * tail_count // (q * q)
    ok = trivial_on_first and free_residual and assembled == orbits and (tail_report is None or tail_report.confirmed)
    return ok, {
        "r1": r1,
        "tail_orbits": tail_count,
        "assembled": assembled,
        "trivial_on_first": trivial_on_first,
        "residual_free": free_residual,
    }


# structure maps


DIAGRAM_FAMILIES = [
    GroupLabel.gl(6, 4),
    GroupLabel.gl(3, 0),
    GroupLabel.sl(3),
    GroupLabel.sl(4),
    GroupLabel.pgl(4, 2),
    GroupLabel.pgl(4, 0),
    GroupLabel.sp(3),
    GroupLabel.o(5, 3, 2),
    GroupLabel.o(6, 2, 4),
    GroupLabel.so(7, 1),
    GroupLabel.so(6, 0),
    GroupLabel.so(8, 1),
]


def _rand_curve(rng: random.Random, n: int) -> CurvePoint:
    return CurvePoint(Fraction(rng.randrange(n), n), Fraction(rng.randrange(n), n))


def _rand_t(rng: random.Random) -> ComplexRational:
    return ComplexRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-2, 2), rng.randint(1, 2)))


def _rand_point(rng: random.Random) -> CotangentPoint:
    return CotangentPoint(_rand_curve(rng, rng.randint(1, 6)), _rand_t(rng))


def random_raw_points(label: GroupLabel, rng: random.Random) -> list[CotangentPoint]:
    """Random torsion-valued raw tuple satisfying the label's constraints.  Values
    are drawn from a small pool so that repeats and sign coincidences occur."""
    m = label.copies
    pool = [_rand_point(rng) for _ in range(3)]
    pts = []
    for _ in range(m):
        p = rng.choice(pool) if rng.random() < 0.3 else _rand_point(rng)
        pts.append(-p if rng.random() < 0.3 else p)
    if label.family in ("SL", "PGL") and pts:
        s = sum(pts[:-1], CotangentPoint(IDENTITY, CZERO))
        pts[-1] = -s
    return pts


def random_element(spec: ga.ActionSpec, rng: random.Random) -> ga.SignedPerm:
    m = spec.m
    perm = list(range(m))
    rng.shuffle(perm)
    signs = [1] * m
    if spec.kind in ("hyperoct", "evensign"):
        signs = [rng.choice((1, -1)) for _ in range(m)]
        if spec.kind == "evensign" and signs.count(-1) % 2:
            signs[0] = -signs[0]
    shift = IDENTITY
    if spec.kind == "symtranslate":
        shift = _rand_curve(rng, spec.h)
    return ga.SignedPerm(tuple(signs), tuple(perm), shift)


def _zero_sum_shifts(m: int, rng: random.Random) -> list[CurvePoint]:
    ys = [_rand_curve(rng, rng.randint(1, 6)) for _ in range(m)]
    if ys:
        ys[-1] = -sum(ys[:-1], IDENTITY)
    return ys


class _Tally:
    def __init__(self, name: str, label: GroupLabel, seed: int):
        self.name, self.label, self.seed = name, label, seed
        self.passed = 0
        self.total = 0
        self.witness = None

    def record(self, ok: bool, witness) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif self.witness is None:
            self.witness = witness

    def report(self) -> LemmaReport:
        ok = self.passed == self.total
        return LemmaReport(
            self.name,
            {"group": mod.label_to_json(self.label), "samples": self.total},
            _verdict(ok),
            self.witness,
            (self.passed, self.total),
            self.seed,
        )


def _pts_json(pts):
    return [repr(p) for p in pts]


def _gl_checks(label, raw, c, rng, tallies):
    n = label.n
    det = mod.det_tr(c)
    direct = sum(raw, CotangentPoint(IDENTITY, CZERO))
    shuffled = list(raw)
    rng.shuffle(shuffled)
    ok = det == direct and mod.det_tr(mod.make_class(label, shuffled)) == det
    tallies["det-tr-sum"].record(ok, _pts_json(raw))

    v, w = _rand_point(rng), _rand_point(rng)
    moved = mod.translate(c, w)
    law = mod.det_tr(moved) - det == w * n
    action = mod.translate(mod.translate(c, v), w) == mod.translate(c, v + w)
    unit = mod.translate(c, CotangentPoint(IDENTITY, CZERO)) == c
    bundle = mod.underlying_bundle(mod.translate(c, CotangentPoint(w.x, CZERO))) == mod.translate_bundle(
        mod.underlying_bundle(c), w.x
    )
    tallies["translate-law"].record(law and action and unit and bundle, {"points": _pts_json(raw), "w": repr(w)})

    b = hitchin_map(c)
    # e1 is the sum of all eigenvalues; each t contributes n' eigenvalues t/n'
    e1_ok = b.elementary()[0] == det.t
    tallies["hitchin-invariance"].record(
        e1_ok and hitchin_map(mod.translate(c, CotangentPoint(_rand_curve(rng, 6), CZERO))) == b,
        _pts_json(raw),
    )


def _sl_chart_check(label, rng, tally):
    """Chart tuples of length n-1 complete to a zero-sum n-tuple; S_n acts on charts
    by completing, permuting and dropping the last entry."""
    n = label.n
    zero = CotangentPoint(IDENTITY, CZERO)

    def complete(y):
        return tuple(y) + (-sum(y, zero),)

    def chart_act(g, y):
        return ga.apply(g, complete(y))[:-1]

    seeds = [tuple(_rand_point(rng) for _ in range(n - 1)) for _ in range(2)]
    if rng.random() < 0.5:
        seeds.append(tuple([seeds[0][0]] * (n - 1)))
    perms = list(ga.elements(ga.ActionSpec("sym", n)))
    charts = set()
    for y in seeds:
        charts.update(chart_act(g, y) for g in perms)
    ok = all(complete(chart_act(g, y)) == ga.apply(g, complete(y)) for y in seeds for g in perms)
    orbits = ga.orbit_partition(list(charts), ga.generators(ga.ActionSpec("sym", n)), chart_act)
    by_orbit = {y: i for i, orb in enumerate(orbits) for y in orb}
    by_canon: dict = {}
    for y in charts:
        by_canon.setdefault(ga.canonical_sym(complete(y)), set()).add(by_orbit[y])
    ok = ok and all(len(s) == 1 for s in by_canon.values()) and len(by_canon) == len(orbits)
    tally.record(ok, [_pts_json(y) for y in seeds])


def _invariance_checks(label, raw, c, rng, tally):
    spec = label.action()
    b = hitchin_map(c)
    g = random_element(spec, rng)
    same_orbit = mod.make_class(label, ga.apply(g, raw))
    ok = same_orbit == c and hitchin_map(same_orbit) == b
    if label.family in ("SL", "PGL"):
        ys = _zero_sum_shifts(len(raw), rng)
    else:
        ys = [_rand_curve(rng, rng.randint(1, 6)) for _ in raw]
    shifted = mod.make_class(label, [CotangentPoint(p.x + y, p.t) for p, y in zip(raw, ys)])
    ok = ok and hitchin_map(shifted) == b
    tally.record(ok, {"points": _pts_json(raw), "element": ga.element_to_json(g)})


def check_diagrams(seed: int = 0, samples: int = 1000, families=None) -> list[LemmaReport]:
    """Seeded randomized checks of det/trace, translation and Hitchin-map compatibilities."""
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")
    families = DIAGRAM_FAMILIES if families is None else families
    reports = []
    for label in families:
        rng = random.Random(f"{seed}:{label}")
        names = ["hitchin-invariance"]
        if label.family == "GL":
            names = ["det-tr-sum", "translate-law", "hitchin-invariance"]
        if label.family == "SL":
            names.append("sl-chart-consistency")
        tallies = {k: _Tally(k, label, seed) for k in names}
        for _ in range(samples):
            raw = random_raw_points(label, rng)
            c = mod.make_class(label, raw)
            if label.family == "GL":
                _gl_checks(label, raw, c, rng, tallies)
            else:
                _invariance_checks(label, raw, c, rng, tallies["hitchin-invariance"])
            if label.family == "SL":
                _sl_chart_check(label, rng, tallies["sl-chart-consistency"])
        reports.extend(t.report() for t in tallies.values())
    return reports


def freeness_sweep(h_max: int, ell_max: int = 3, w_max: int = 6) -> list[LemmaReport]:
    out = []
    for h in range(1, h_max + 1):
        for ell in range(ell_max + 1):
            for ws in itertools.product(range(w_max + 1), repeat=ell):
                out.append(check_freeness(h, ws))
    return out
