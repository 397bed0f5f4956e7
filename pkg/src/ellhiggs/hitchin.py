"""The Hitchin map, spectral patterns and fiber structure.

A base point is the canonical tuple of t-coordinates; characteristic polynomial
coefficients are derived from it.  Fibers are described factor by factor and
checked against finite models where the curve is replaced by X[N].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial, gcd, prod
from typing import Sequence

from . import group_actions as ga
from .errors import DomainError, SizeError
from .moduli import GroupLabel, HiggsClass, label_to_json
from .torus import CZERO, IDENTITY, ComplexRational, CotangentPoint, complex_to_json

DEFAULT_CAP = 200_000


@dataclass(frozen=True)
class HitchinBasePoint:
    label: GroupLabel
    t: tuple[ComplexRational, ...]
    coefficients: tuple[ComplexRational, ...] = ()
    pfaffian: ComplexRational | None = None

    def elementary(self) -> tuple[ComplexRational, ...]:
        """e_1..e_n of the eigenvalues, read off the characteristic polynomial."""
        return tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients, start=1))


def matrix_size(label: GroupLabel) -> int:
    return label.n


def canonical_t(label: GroupLabel, ts: Sequence[ComplexRational]) -> tuple[ComplexRational, ...]:
    kind = label.action().kind
    if kind in ("sym", "symtranslate"):
        return tuple(sorted(ts))
    if kind == "hyperoct":
        return tuple(sorted(min(t, -t) for t in ts))
    lifted = ga.canonical_delta([CotangentPoint(IDENTITY, t) for t in ts])
    return tuple(p.t for p in lifted)


def _poly_mul(p: list, q: list) -> list:
    out = [CZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def eigenvalues(label: GroupLabel, ts: Sequence[ComplexRational]) -> list[ComplexRational]:
    """Eigenvalues of the Higgs field in the standard representation."""
    if label.family in ("GL", "SL", "PGL"):
        k = label.n_prime
        return [t / k for t in ts for _ in range(k)]
    zeros = label.block[0] if label.block else 0
    return [s for t in ts for s in (t, -t)] + [CZERO] * zeros


def _char_poly(label: GroupLabel, ts) -> tuple[ComplexRational, ...]:
    poly = [ComplexRational(1)]
    for lam in eigenvalues(label, ts):
        poly = _poly_mul(poly, [ComplexRational(1), -lam])
    if len(poly) != matrix_size(label) + 1:
        raise AssertionError("eigenvalue count does not match the matrix size")
    return tuple(poly[1:])


def base_point(label: GroupLabel, ts: Sequence[ComplexRational]) -> HitchinBasePoint:
    ts = tuple(t if isinstance(t, ComplexRational) else ComplexRational(t) for t in ts)
    if len(ts) != label.copies:
        raise DomainError(f"{label}: expected {label.copies} t-values, got {len(ts)}")
    if label.family in ("SL", "PGL"):
        total = sum(ts, CZERO)
        if not total.is_zero():
            raise DomainError(f"{label}: trace constraint violated, sum of t = {total!r}")
    tc = canonical_t(label, ts)
    pf = None
    if label.action().kind == "evensign":
        pf = prod(tc, start=ComplexRational(1))
    return HitchinBasePoint(label, tc, _char_poly(label, tc), pf)


def hitchin_map(c: HiggsClass) -> HitchinBasePoint:
    return base_point(c.label, [p.t for p in c.points])


def char_poly(b: HitchinBasePoint) -> tuple[ComplexRational, ...]:
    """Coefficients of the monic characteristic polynomial below the leading term,
    from degree n-1 down to 0."""
    return b.coefficients


# spectral patterns


@dataclass(frozen=True)
class SpectralPattern:
    groups: tuple[tuple[ComplexRational, int], ...]
    generic: bool
    m0: int | None = None
    kind: str = "generic"

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.groups)


def _group(values) -> tuple[tuple[ComplexRational, int], ...]:
    out: dict = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return tuple(sorted(out.items()))


def spectral_pattern(b: HitchinBasePoint) -> SpectralPattern:
    kind = b.label.action().kind
    if kind in ("sym", "symtranslate"):
        groups = _group(b.t)
        generic = all(k == 1 for _, k in groups)
        return SpectralPattern(groups, generic, None, "generic" if generic else "special")
    # values up to sign, reported by the larger representative
    m0 = sum(1 for t in b.t if t.is_zero())
    groups = _group(max(t, -t) for t in b.t if not t.is_zero())
    generic = m0 == 0 and all(k == 1 for _, k in groups)
    if kind == "hyperoct":
        return SpectralPattern(groups, generic, m0, "generic" if generic else "special")
    odd = sum(1 for t in b.t if -t < t) % 2 == 1
    if generic:
        kind = "g"
    elif m0 == 0 and odd:
        kind = "s1"
    else:
        kind = "s2"
    return SpectralPattern(groups, generic, m0, kind)


# fiber descriptors


@dataclass(frozen=True)
class FiberDescriptor:
    """Hitchin fiber over a base point.

    ``base`` is k for a fibration over X^k; ``fiber`` lists the fiber factors as
    ("P", k) for projective spaces and ("X/Delta", m) for X^m modulo even sign
    changes; ``r`` is the order-r torsion quotient for PGL.  ``factors`` is the
    composite form used for finite-model counting: ("Sym", m) is Sym^m X,
    ("SymR", m) is the sign-twisted copy of Sym^m X, ("Hyp", m) is Sym^m(X/Z2)
    and ("Delta", m) is X^m/Delta_m.
    """

    label: GroupLabel
    base: int
    fiber: tuple[tuple[str, int], ...]
    factors: tuple[tuple[str, int], ...]
    r: int | None = None
    sum_zero: bool = False
    translation: int = 1
    review: bool = False

    @property
    def dimension(self) -> int:
        return self.base + sum(k for _, k in self.fiber)

    @property
    def residual(self) -> tuple[int, tuple[int, ...]] | None:
        """(h/r, weights/r) of the residual torsion action for PGL."""
        if self.r is None:
            return None
        return self.translation // self.r, tuple(m // self.r for kind, m in self.factors)


def fiber_descriptor(label: GroupLabel, b: HitchinBasePoint) -> FiberDescriptor:
    if b.label != label:
        raise DomainError(f"incompatible pattern: base point of {b.label} used with {label}")
    pat = spectral_pattern(b)
    mults = pat.multiplicities
    ps = tuple(("P", k - 1) for k in mults if k > 1)
    syms = tuple(("Sym", k) for k in mults)
    f = label.family
    if f == "GL":
        return FiberDescriptor(label, len(mults), ps, syms)
    if f == "SL":
        return FiberDescriptor(label, len(mults) - 1, ps, syms, sum_zero=True)
    if f == "PGL":
        h = label.h
        r = gcd(h, *mults)
        return FiberDescriptor(label, len(mults) - 1, ps, syms, r, True, h, review=(r == h and h > 1))
    m0 = pat.m0
    if pat.kind in ("generic", "special"):
        zero = (("P", m0),) if m0 else ()
        return FiberDescriptor(label, len(mults), zero + ps, (("Hyp", m0),) + syms if m0 else syms)
    if pat.kind == "g":
        return FiberDescriptor(label, len(mults), (), syms)
    if pat.kind == "s1":
        return FiberDescriptor(label, len(mults), ps, (("SymR", mults[0]),) + syms[1:])
    zero = (("X/Delta", m0),) if m0 else ()
    return FiberDescriptor(label, len(mults), zero + ps, (("Delta", m0),) + syms if m0 else syms)


def hitchin_fiber_dimension(label: GroupLabel) -> int:
    """Complex dimension of a Hitchin fiber: half the moduli dimension."""
    m = label.copies
    return m - 1 if label.family in ("SL", "PGL") else m


# finite models


@dataclass(frozen=True)
class FiberCount:
    n: int
    enumerated: int
    predicted: int


def _tors(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n)]


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def factor_burnside(kind: str, m: int, n: int) -> int:
    """Orbit count of one fiber factor over the X[n] model, by Burnside.

    Fixed points of a signed permutation are counted cycle by cycle: a cycle
    whose signs multiply to +1 contributes n^2 choices, one with product -1
    needs a 2-torsion point."""
    two = gcd(2, n) ** 2
    total = 0
    order = 0
    signs_iter = [(1,) * m] if kind in ("Sym", "SymR") else itertools.product((1, -1), repeat=m)
    for signs in signs_iter:
        if kind == "Delta" and signs.count(-1) % 2:
            continue
        for perm in itertools.permutations(range(m)):
            order += 1
            fixed = 1
            for cyc in _cycles(perm):
                eps = prod(signs[i] for i in cyc)
                fixed *= n * n if eps == 1 else two
            total += fixed
    if total % order:
        raise AssertionError("Burnside sum not divisible by group order")
    return total // order


def _conv(p: dict, q: dict, n: int) -> dict:
    out: dict = {}
    for (a, b), u in p.items():
        for (c, d), v in q.items():
            key = ((a + c) % n, (b + d) % n)
            out[key] = out.get(key, 0) + u * v
    return out


def _sym_sum_distribution(m: int, n: int, omega: tuple[int, int]) -> dict:
    """Sum over sigma in S_m of the distribution of block sums among x in X[n]^m
    with sigma(x) = x + omega (as integer coordinates mod n)."""
    mult = {}
    for L in range(1, m + 1):
        dist: dict = {}
        for y in _tors(n):
            key = ((L * y[0]) % n, (L * y[1]) % n)
            dist[key] = dist.get(key, 0) + 1
        mult[L] = dist
    total: dict = {}
    for perm in itertools.permutations(range(m)):
        dist = {(0, 0): 1}
        ok = True
        shift = [0, 0]
        for cyc in _cycles(perm):
            L = len(cyc)
            if (L * omega[0]) % n or (L * omega[1]) % n:
                ok = False
                break
            dist = _conv(dist, mult[L], n)
            c = L * (L - 1) // 2
            shift[0] += c * omega[0]
            shift[1] += c * omega[1]
        if not ok:
            continue
        for (a, b), v in dist.items():
            key = ((a + shift[0]) % n, (b + shift[1]) % n)
            total[key] = total.get(key, 0) + v
    return total


def predicted_count(desc: FiberDescriptor, n: int) -> int:
    """Finite-model point count of the fiber, assembled from its factors."""
    if not desc.sum_zero:
        return prod(factor_burnside(kind, m, n) for kind, m in desc.factors)
    h = desc.translation
    if n % h:
        raise DomainError(f"translation level {h} must divide the model level {n}")
    step = n // h
    total = 0
    for u, v in _tors(h):
        omega = (u * step, v * step)
        dist = {(0, 0): 1}
        for kind, m in desc.factors:
            dist = _conv(dist, _sym_sum_distribution(m, n, omega), n)
        total += dist.get((0, 0), 0)
    order = h * h * prod(factorial(m) for _, m in desc.factors)
    if total % order:
        raise AssertionError("Burnside sum not divisible by group order")
    return total // order


def fiber_count_model(label: GroupLabel, b: HitchinBasePoint, n: int, cap: int = DEFAULT_CAP) -> FiberCount:
    """Enumerate the X[n]-model of the Hitchin fiber over b, and predict its size
    from the fiber descriptor."""
    if n < 1:
        raise DomainError(f"model level must be positive, got {n}")
    spec = label.action()
    if spec.kind == "symtranslate" and n % spec.h:
        raise DomainError(f"translation level {spec.h} must divide the model level {n}")
    m = spec.m
    if n ** (2 * m) > cap:
        raise SizeError(f"model X[{n}]^{m} has {n ** (2 * m)} assignments, over the cap {cap}")
    desc = fiber_descriptor(label, b)
    stab = ga.t_stabilizer(spec, b.t)
    gens = ga.generating_subset(stab)
    domain = ga.model_domain(m, n, b.t)
    if desc.sum_zero:
        domain = [z for z in domain if sum((p.x for p in z), IDENTITY).is_identity()]
    enumerated = len(ga.orbit_partition(domain, gens, ga.apply))
    return FiberCount(n, enumerated, predicted_count(desc, n))


def sym_closed_form(m: int, n: int) -> int:
    """Multisets of size m in X[n]."""
    return comb(n * n + m - 1, m)


# serialization


def pattern_to_json(p: SpectralPattern) -> dict:
    out: dict = {}
    if p.m0 is not None:
        out["m0"] = p.m0
    out["groups"] = [[complex_to_json(v), k] for v, k in p.groups]
    out["generic"] = p.generic
    out["kind"] = p.kind
    return out


def fiber_to_json(d: FiberDescriptor) -> dict:
    out: dict = {"base": ["X", d.base], "fiber": [list(f) for f in d.fiber]}
    if d.r is not None:
        out["r"] = d.r
    if d.review:
        out["review"] = True
    return out


def base_to_json(b: HitchinBasePoint) -> dict:
    out = {
        "group": label_to_json(b.label),
        "t": [complex_to_json(t) for t in b.t],
        "char_poly": [complex_to_json(c) for c in b.coefficients],
    }
    if b.pfaffian is not None:
        out["pfaffian"] = complex_to_json(b.pfaffian)
    return out
