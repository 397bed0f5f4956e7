"""Finite groups acting on tuples of cotangent points.

Four kinds of action are supported:

* ``sym``: S_m permuting coordinates;
* ``hyperoct``: signed permutations (Z/2)^m x| S_m, signs act by negation;
* ``evensign``: the signed permutations with an even number of sign flips;
* ``symtranslate``: S_m together with translation of every coordinate by the
  same h-torsion point.

Composition convention for signed permutations: the sign vector acts first and
the permutation then moves coordinate i to position perm[i].  For example
``SignedPerm((-1, 1), (1, 0))`` sends (z0, z1) to (z1, -z0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, Iterable, Sequence

from .errors import DomainError
from .torus import IDENTITY, CotangentPoint, CurvePoint, curve_from_json, curve_to_json, torsion_subgroup

Tup = tuple[CotangentPoint, ...]

KINDS = ("sym", "hyperoct", "evensign", "symtranslate")
ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class SignedPerm:
    """A group element (signs, perm, shift).  ``shift`` is a torsion translation
    and is only nontrivial for the symtranslate kind."""

    signs: tuple[int, ...]
    perm: tuple[int, ...]
    shift: CurvePoint = IDENTITY

    def __post_init__(self):
        m = len(self.perm)
        if len(self.signs) != m:
            raise DomainError("signs and perm have different lengths")
        if sorted(self.perm) != list(range(m)):
            raise DomainError(f"not a permutation: {self.perm}")
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError(f"signs must be +1 or -1: {self.signs}")

    @property
    def m(self) -> int:
        return len(self.perm)

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        """self * other acts as other first, then self."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.m))
        signs = tuple(self.signs[other.perm[i]] * other.signs[i] for i in range(self.m))
        # translation commutes with signed perms only up to sign; we only ever
        # combine shifts with unsigned permutations
        shift = self.shift + other.shift
        return SignedPerm(signs, perm, shift)

    def flips(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.m)) and all(s == 1 for s in self.signs) and self.shift.is_identity()


def identity(m: int) -> SignedPerm:
    return SignedPerm((1,) * m, tuple(range(m)))


def permutation(images: Sequence[int]) -> SignedPerm:
    return SignedPerm((1,) * len(images), tuple(images))


def translation(omega: CurvePoint, m: int) -> SignedPerm:
    return SignedPerm((1,) * m, tuple(range(m)), omega)


@dataclass(frozen=True)
class ActionSpec:
    kind: str
    m: int
    h: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown action kind {self.kind!r}")
        if self.m < 0 or self.h < 1:
            raise DomainError(f"invalid action parameters m={self.m}, h={self.h}")
        if self.kind != "symtranslate" and self.h != 1:
            raise DomainError("torsion level only applies to symtranslate")

    def order(self) -> int:
        if self.kind == "sym":
            return factorial(self.m)
        if self.kind == "hyperoct":
            return 2**self.m * factorial(self.m)
        if self.kind == "evensign":
            return max(1, 2 ** (self.m - 1)) * factorial(self.m)
        return factorial(self.m) * self.h**2


@dataclass(frozen=True)
class OrbitReport:
    orbit_count: int
    method: str
    stabilizer_order: int | None = None
    representatives: tuple = ()


def apply(g: SignedPerm | CurvePoint, z: Sequence[CotangentPoint]) -> Tup:
    """Act on a tuple.  A bare CurvePoint acts by translation."""
    if isinstance(g, CurvePoint):
        return tuple(CotangentPoint(p.x + g, p.t) for p in z)
    if g.m != len(z):
        raise DomainError(f"element of degree {g.m} applied to tuple of length {len(z)}")
    out: list = [None] * g.m
    for i, p in enumerate(z):
        out[g.perm[i]] = p if g.signs[i] == 1 else -p
    if not g.shift.is_identity():
        out = [CotangentPoint(p.x + g.shift, p.t) for p in out]
    return tuple(out)


def apply_t(g: SignedPerm, ts: Sequence) -> tuple:
    """Action on t-coordinates only (translations act trivially there)."""
    if g.m != len(ts):
        raise DomainError(f"element of degree {g.m} applied to tuple of length {len(ts)}")
    out: list = [None] * g.m
    for i, t in enumerate(ts):
        out[g.perm[i]] = t if g.signs[i] == 1 else -t
    return tuple(out)


# group elements and generators


def elements(spec: ActionSpec) -> Iterable[SignedPerm]:
    m = spec.m
    perms = list(itertools.permutations(range(m)))
    if spec.kind == "sym":
        for p in perms:
            yield SignedPerm((1,) * m, p)
    elif spec.kind in ("hyperoct", "evensign"):
        for signs in itertools.product((1, -1), repeat=m):
            if spec.kind == "evensign" and signs.count(-1) % 2:
                continue
            for p in perms:
                yield SignedPerm(signs, p)
    else:
        shifts = torsion_subgroup(spec.h)
        for p in perms:
            for w in shifts:
                yield SignedPerm((1,) * m, p, w)


def generators(spec: ActionSpec) -> list[SignedPerm]:
    m = spec.m
    gens = []
    for i in range(m - 1):
        images = list(range(m))
        images[i], images[i + 1] = i + 1, i
        gens.append(permutation(images))
    if spec.kind == "hyperoct" and m >= 1:
        gens.append(SignedPerm((-1,) + (1,) * (m - 1), tuple(range(m))))
    if spec.kind == "evensign" and m >= 2:
        gens.append(SignedPerm((-1, -1) + (1,) * (m - 2), tuple(range(m))))
    if spec.kind == "symtranslate" and spec.h > 1:
        gens.append(translation(CurvePoint(f"1/{spec.h}", 0), m))
        gens.append(translation(CurvePoint(0, f"1/{spec.h}"), m))
    return gens


def generating_subset(elems: Sequence[SignedPerm]) -> list[SignedPerm]:
    """A small subset of a finite group's elements generating the same group."""
    if not elems:
        return []
    m = elems[0].m
    gens: list[SignedPerm] = []
    closure = {identity(m)}
    for g in elems:
        if g in closure:
            continue
        gens.append(g)
        frontier = list(closure)
        while frontier:
            new = []
            for a in frontier:
                for s in gens:
                    c = s * a
                    if c not in closure:
                        closure.add(c)
                        new.append(c)
            frontier = new
    return gens


# canonical forms


def canonical_sym(z: Sequence[CotangentPoint]) -> Tup:
    return tuple(sorted(z))


def canonical_hyperoct(z: Sequence[CotangentPoint]) -> Tup:
    return tuple(sorted(min(p, -p) for p in z))


def canonical_delta(z: Sequence[CotangentPoint]) -> Tup:
    flipped = []
    strict = 0
    self_negative = False
    for p in z:
        q = -p
        if q < p:
            flipped.append(q)
            strict += 1
        else:
            flipped.append(p)
            if q == p:
                self_negative = True
    if strict % 2 == 0 or self_negative:
        return tuple(sorted(flipped))
    best = None
    for i in range(len(flipped)):
        cand = list(flipped)
        cand[i] = -cand[i]
        cand = tuple(sorted(cand))
        if best is None or cand < best:
            best = cand
    return best


def canonical_translate(z: Sequence[CotangentPoint], h: int) -> Tup:
    if h < 1:
        raise DomainError(f"translation level must be positive, got {h}")
    return min(canonical_sym(apply(w, z)) for w in torsion_subgroup(h))


def canonical(spec: ActionSpec, z: Sequence[CotangentPoint]) -> Tup:
    if len(z) != spec.m:
        raise DomainError(f"tuple of length {len(z)} for an action on {spec.m} coordinates")
    if spec.kind == "sym":
        return canonical_sym(z)
    if spec.kind == "hyperoct":
        return canonical_hyperoct(z)
    if spec.kind == "evensign":
        return canonical_delta(z)
    return canonical_translate(z, spec.h)


# stabilizers


def _multiplicities(values) -> list[int]:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return list(counts.values())


def stabilizer_order_formula(spec: ActionSpec, z: Sequence[CotangentPoint]) -> int:
    """Block-multiplicity closed form, no group enumeration."""
    if spec.kind == "sym":
        return prod(factorial(k) for k in _multiplicities(z))
    if spec.kind == "symtranslate":
        base = sorted(z)
        hits = sum(1 for w in torsion_subgroup(spec.h) if sorted(apply(w, z)) == base)
        return hits * prod(factorial(k) for k in _multiplicities(z))
    # signed permutations: a self-negative value of multiplicity p contributes
    # 2^p p!; a pair {v, -v} with p + q occurrences contributes (p+q)!
    total = 1
    has_self_negative = False
    for v, k in zip(*_blocks_up_to_sign(z)):
        if v.is_self_negative():
            has_self_negative = True
            total *= 2**k * factorial(k)
        else:
            total *= factorial(k)
    if spec.kind == "evensign" and has_self_negative:
        # flipping one self-negative coordinate toggles parity inside the stabilizer
        total //= 2
    return total


def _blocks_up_to_sign(z):
    counts: dict = {}
    for p in z:
        key = min(p, -p)
        counts[key] = counts.get(key, 0) + 1
    return list(counts.keys()), list(counts.values())


def stabilizer_elements(spec: ActionSpec, z: Sequence[CotangentPoint]) -> list[SignedPerm]:
    z = tuple(z)
    return [g for g in elements(spec) if apply(g, z) == z]


def stabilizer_order(spec: ActionSpec, z: Sequence[CotangentPoint], cap: int = ENUMERATION_CAP) -> int:
    if len(z) != spec.m:
        raise DomainError(f"tuple of length {len(z)} for an action on {spec.m} coordinates")
    if spec.order() <= cap:
        return len(stabilizer_elements(spec, z))
    if spec.kind != "symtranslate" or spec.h**2 <= cap:
        return stabilizer_order_formula(spec, z)
    raise DomainError(f"unsupported size: group of order {spec.order()} and {spec.h**2} translations to scan")


def t_stabilizer(spec: ActionSpec, ts: Sequence) -> list[SignedPerm]:
    """Elements of the group whose signed permutation part fixes the t-tuple."""
    ts = tuple(ts)
    return [g for g in elements(spec) if apply_t(g, ts) == ts]


# orbits


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so representatives are minima
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


def orbit_partition(domain: Sequence, gens: Sequence, act: Callable) -> list[list]:
    """Orbits of the group generated by gens on a finite closed domain."""
    items = sorted(set(domain))
    index = {z: i for i, z in enumerate(items)}
    uf = UnionFind(len(items))
    for i, z in enumerate(items):
        for g in gens:
            w = act(g, z)
            j = index.get(w)
            if j is None:
                raise DomainError(f"domain not closed: {w!r} escapes (image of {z!r})")
            uf.union(i, j)
    orbits: dict[int, list] = {}
    for i, z in enumerate(items):
        orbits.setdefault(uf.find(i), []).append(z)
    return [orbits[k] for k in sorted(orbits)]


def orbit_enumerate(spec: ActionSpec, domain: Sequence[Tup], gens: Sequence[SignedPerm] | None = None) -> OrbitReport:
    if gens is None:
        gens = generators(spec)
    orbits = orbit_partition(domain, gens, apply)
    return OrbitReport(len(orbits), "enumeration", representatives=tuple(o[0] for o in orbits))


def model_domain(m: int, n: int, ts: Sequence) -> list[Tup]:
    """All tuples with x-coordinates in X[n]^m and the given t-coordinates."""
    pts = torsion_subgroup(n)
    return [
        tuple(CotangentPoint(x, t) for x, t in zip(xs, ts))
        for xs in itertools.product(pts, repeat=m)
    ]


def burnside_count(spec: ActionSpec, n: int, t_pattern: Sequence | None = None) -> OrbitReport:
    """Orbit count of the t-pattern stabilizer on X[n]-valued x-assignments, by Burnside."""
    from .torus import CZERO

    ts = tuple(t_pattern) if t_pattern is not None else (CZERO,) * spec.m
    if len(ts) != spec.m:
        raise DomainError("t-pattern length does not match the action")
    if spec.kind == "symtranslate" and n % spec.h:
        raise DomainError(f"translation level {spec.h} does not divide model level {n}")
    group = t_stabilizer(spec, ts)
    domain = model_domain(spec.m, n, ts)
    fixed = sum(1 for g in group for z in domain if apply(g, z) == z)
    if fixed % len(group):
        raise AssertionError("Burnside sum not divisible by the group order")
    return OrbitReport(fixed // len(group), "burnside", stabilizer_order=len(group))


# serialization


def element_to_json(g: SignedPerm) -> dict:
    out = {"signs": list(g.signs), "perm": list(g.perm)}
    if not g.shift.is_identity():
        out["shift"] = curve_to_json(g.shift)
    return out


def element_from_json(data) -> SignedPerm:
    if not isinstance(data, dict) or "perm" not in data:
        raise DomainError(f"group element must be an object with 'perm', got {data!r}")
    perm = tuple(int(i) for i in data["perm"])
    signs = tuple(int(s) for s in data.get("signs", [1] * len(perm)))
    shift = curve_from_json(data["shift"]) if "shift" in data else IDENTITY
    return SignedPerm(signs, perm, shift)


def spec_to_json(spec: ActionSpec) -> dict:
    out = {"kind": spec.kind, "m": spec.m}
    if spec.kind == "symtranslate":
        out["h"] = spec.h
    return out


def spec_from_json(data) -> ActionSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise DomainError(f"action spec must be an object with 'kind', got {data!r}")
    return ActionSpec(data["kind"], int(data.get("m", 0)), int(data.get("h", 1)))
