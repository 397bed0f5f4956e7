"""Points of the Higgs (and bundle) moduli spaces as canonicalized tuples.

Every moduli space here is a quotient of a product of copies of T*X by a finite
group, so a point is stored as the canonical representative of its orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import group_actions as ga
from .errors import DomainError
from .torus import (
    CZERO,
    IDENTITY,
    CotangentPoint,
    CurvePoint,
    cotangent_from_json,
    cotangent_to_json,
    curve_from_json,
    curve_to_json,
    two_torsion,
)

FAMILIES = ("GL", "SL", "PGL", "Sp", "O", "SO")
BLOCK_COUNTS = (1, 4, 6, 4, 1)
PAIRS = list(itertools.combinations(range(4), 2))


@dataclass(frozen=True)
class GroupLabel:
    """A structure group together with the discrete invariant selecting a component.

    Sp is stored with its matrix size n = 2m.  O carries the component (k, a).
    SO carries w2, except SO(2) which carries the degree d.
    """

    family: str
    n: int
    d: int = 0
    k: int | None = None
    a: int | None = None
    w2: int | None = None

    def __post_init__(self):
        f, n = self.family, self.n
        if f not in FAMILIES:
            raise DomainError(f"unknown group family {f!r}")
        if n < 1:
            raise DomainError(f"{f}: n must be positive, got {n}")
        if f == "Sp" and n % 2:
            raise DomainError(f"Sp needs an even matrix size, got {n}")
        if f == "O":
            if self.k is None or self.a is None:
                raise DomainError("O labels need a component (k, a)")
            if not 0 <= self.k <= 4 or (n - self.k) % 2 or n < self.k:
                raise DomainError(f"invalid component indices k={self.k} for O({n})")
            if not 0 <= self.a < BLOCK_COUNTS[self.k]:
                raise DomainError(f"invalid component indices a={self.a} for k={self.k}")
        if f == "SO" and n != 2:
            if self.w2 not in (0, 1):
                raise DomainError(f"SO({n}) needs w2 in {{0, 1}}, got {self.w2}")
            if self.w2 == 1 and n <= 2:
                raise DomainError(f"SO({n}) has no component with w2 = 1")
            if self.w2 == 1 and n % 2 == 0 and n < 4:
                raise DomainError(f"SO({n}) has no component with w2 = 1")

    @staticmethod
    def gl(n: int, d: int = 0) -> GroupLabel:
        return GroupLabel("GL", n, d)

    @staticmethod
    def sl(n: int) -> GroupLabel:
        return GroupLabel("SL", n)

    @staticmethod
    def pgl(n: int, d: int = 0) -> GroupLabel:
        return GroupLabel("PGL", n, d)

    @staticmethod
    def sp(m: int) -> GroupLabel:
        return GroupLabel("Sp", 2 * m)

    @staticmethod
    def o(n: int, k: int, a: int = 0) -> GroupLabel:
        return GroupLabel("O", n, k=k, a=a)

    @staticmethod
    def so(n: int, w2: int = 0, d: int = 0) -> GroupLabel:
        if n == 2:
            return GroupLabel("SO", 2, d=d)
        return GroupLabel("SO", n, w2=w2)

    @property
    def h(self) -> int:
        """gcd(n, d) for GL and PGL; the number of stable pieces."""
        return gcd(self.n, self.d)

    @property
    def n_prime(self) -> int:
        """Rank of each stable piece for GL/SL/PGL."""
        if self.family == "GL" or self.family == "PGL":
            return self.n // self.h
        return 1

    @property
    def block(self) -> tuple[int, int] | None:
        """The stable block tag (k, a) forced by the label, if any."""
        if self.family == "O":
            return (self.k, self.a) if self.k else None
        if self.family == "SO" and self.n != 2:
            if self.n % 2:
                return (1, 0) if self.w2 == 0 else (3, 0)
            return (4, 0) if self.w2 == 1 else None
        return None

    @property
    def copies(self) -> int:
        f, n = self.family, self.n
        if f in ("GL", "PGL"):
            return self.h
        if f == "SL":
            return n
        if f == "Sp":
            return n // 2
        if f == "O":
            return (n - self.k) // 2
        if n == 2:
            return 1
        block = self.block
        return (n - (block[0] if block else 0)) // 2

    def action(self) -> ga.ActionSpec:
        f = self.family
        m = self.copies
        if f in ("GL", "SL"):
            return ga.ActionSpec("sym", m)
        if f == "PGL":
            return ga.ActionSpec("symtranslate", m, self.h)
        if f == "SO" and self.n % 2 == 0 and self.block is None:
            return ga.ActionSpec("evensign", m)
        return ga.ActionSpec("hyperoct", m)

    def __str__(self) -> str:
        f = self.family
        if f in ("GL", "PGL"):
            return f"{f}({self.n},{self.d})"
        if f == "SL":
            return f"SL({self.n})"
        if f == "Sp":
            return f"Sp({self.n})"
        if f == "O":
            return f"O({self.n},({self.k},{self.a}))"
        if self.n == 2:
            return f"SO(2,d={self.d})"
        return f"SO({self.n},w2={self.w2})"


@dataclass(frozen=True)
class ModuliDescriptor:
    label: GroupLabel
    copies: int
    action: ga.ActionSpec
    dimension: int
    effective_dimension: int
    level: str
    presentation: str


def descriptor(label: GroupLabel, level: str = "higgs") -> ModuliDescriptor:
    if level not in ("higgs", "bundle"):
        raise DomainError(f"level must be 'higgs' or 'bundle', got {level!r}")
    m = label.copies
    spec = label.action()
    per_copy = 2 if level == "higgs" else 1
    space = "T*X" if level == "higgs" else "X"
    constrained = label.family in ("SL", "PGL")
    effective = per_copy * (m - 1) if constrained else per_copy * m
    if spec.kind == "sym" and not constrained:
        pres = f"Sym^{m}({space})"
    elif label.family == "SL":
        pres = f"{{sum = 0}} in ({space})^{m} / S_{m}"
    elif label.family == "PGL":
        pres = f"{{sum = 0}} in ({space})^{m} / (S_{m} x X[{label.h}])"
    elif spec.kind == "hyperoct":
        pres = f"Sym^{m}({space}/Z2)"
    else:
        pres = f"({space})^{m} / Delta_{m}"
    return ModuliDescriptor(label, m, spec, per_copy * m, effective, level, pres)


def block_lines(block: tuple[int, int] | None) -> list[CurvePoint]:
    """The 2-torsion lines making up a stable block tag (k, a)."""
    if block is None:
        return []
    k, a = block
    js = two_torsion()
    if k == 0:
        return []
    if k == 1:
        return [js[a]]
    if k == 2:
        i, j = PAIRS[a]
        return [js[i], js[j]]
    if k == 3:
        return [js[b] for b in range(4) if b != a]
    if k == 4:
        return list(js)
    raise DomainError(f"invalid block k={k}")


@dataclass(frozen=True)
class HiggsClass:
    label: GroupLabel
    points: tuple[CotangentPoint, ...]
    block: tuple[int, int] | None = None


@dataclass(frozen=True)
class BundleClass:
    label: GroupLabel
    points: tuple[CurvePoint, ...]
    block: tuple[int, int] | None = None


@dataclass(frozen=True)
class Summand:
    """A stable piece (its cotangent point, with t = n' * eigenvalue) and its Jordan size."""

    stable_point: CotangentPoint
    jordan_size: int = 1

    def __post_init__(self):
        if self.jordan_size < 1:
            raise DomainError(f"jordan_size must be positive, got {self.jordan_size}")


def _sum(points) -> CotangentPoint:
    total = CotangentPoint(IDENTITY, CZERO)
    for p in points:
        total = total + p
    return total


def check_constraints(label: GroupLabel, points: Sequence[CotangentPoint]) -> None:
    if label.family not in ("SL", "PGL"):
        return
    s = _sum(points)
    if not s.t.is_zero():
        raise DomainError(f"{label}: trace constraint violated, sum of t = {s.t!r}")
    if not s.x.is_identity():
        raise DomainError(f"{label}: determinant constraint violated, sum of x = {s.x!r}")


def make_class(label: GroupLabel, points: Sequence[CotangentPoint], block: tuple[int, int] | None = None) -> HiggsClass:
    points = tuple(points)
    if len(points) != label.copies:
        raise DomainError(f"{label}: wrong length, expected {label.copies} points, got {len(points)}")
    if block is not None and tuple(block) != label.block:
        raise DomainError(f"{label}: inconsistent block {tuple(block)}, expected {label.block}")
    check_constraints(label, points)
    return HiggsClass(label, ga.canonical(label.action(), points), label.block)


def make_bundle(label: GroupLabel, xs: Sequence[CurvePoint]) -> BundleClass:
    lifted = make_class(label, [CotangentPoint(x, CZERO) for x in xs])
    return BundleClass(label, tuple(p.x for p in lifted.points), label.block)


def isomorphic(a: HiggsClass, b: HiggsClass) -> bool:
    if a.label != b.label:
        raise DomainError(f"label mismatch: {a.label} vs {b.label}")
    return a.points == b.points and a.block == b.block


def is_singular(c: HiggsClass) -> bool:
    """Whether the class lies in the singular locus: two isomorphic stable summands."""
    pts = c.points
    if c.label.family in ("GL", "SL", "PGL"):
        return any(pts[i] == pts[i + 1] for i in range(len(pts) - 1))
    if c.label.family == "SO" and c.label.n == 2:
        # SO(2) is abelian and its moduli space is T*X itself
        return False
    reduced = sorted(min(p, -p) for p in pts)
    if any(reduced[i] == reduced[i + 1] for i in range(len(reduced) - 1)):
        return True
    if any(p.is_self_negative() for p in pts):
        return True
    lines = {CotangentPoint(j, CZERO) for j in block_lines(c.block)}
    return any(p in lines for p in pts)


def underlying_bundle(c: HiggsClass) -> BundleClass:
    return make_bundle(c.label, [p.x for p in c.points])


def _require_gl(label: GroupLabel) -> None:
    if label.family != "GL":
        raise DomainError(f"operation needs a GL label, got {label}")


def det_tr(c: HiggsClass) -> CotangentPoint:
    _require_gl(c.label)
    return _sum(c.points)


def translate(c: HiggsClass, w: CotangentPoint) -> HiggsClass:
    """Tensor by the degree-zero line (with Higgs field) coded by w."""
    _require_gl(c.label)
    shift = w * c.label.n_prime
    return make_class(c.label, [p + shift for p in c.points])


def translate_bundle(b: BundleClass, x: CurvePoint) -> BundleClass:
    _require_gl(b.label)
    shift = x * b.label.n_prime
    return make_bundle(b.label, [p + shift for p in b.points])


def graded_object(label: GroupLabel, summands: Sequence[Summand]) -> HiggsClass:
    _require_gl(label)
    total = sum(s.jordan_size for s in summands)
    if total != label.h:
        raise DomainError(f"{label}: summand sizes sum to {total}, expected h = {label.h}")
    pts = [s.stable_point for s in summands for _ in range(s.jordan_size)]
    return make_class(label, pts)


def list_components(family: str, n: int) -> list[GroupLabel]:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if family == "O":
        out = []
        for k in range(5):
            if k <= n and (n - k) % 2 == 0:
                out.extend(GroupLabel.o(n, k, a) for a in range(BLOCK_COUNTS[k]))
        return out
    if family == "SO":
        if n == 2:
            return [GroupLabel.so(2, d=0), GroupLabel.so(2, d=1)]
        out = [GroupLabel.so(n, 0)]
        if (n % 2 and n >= 3) or (n % 2 == 0 and n >= 4):
            out.append(GroupLabel.so(n, 1))
        return out
    raise DomainError(f"component listing is for O and SO, got {family!r}")


def so_invariants(n: int, block: tuple[int, int] | None) -> tuple[int, int]:
    """(w2, number of line pairs) of an SO(n) polystable bundle with the given stable block."""
    k = block[0] if block else 0
    if k == 0 and n % 2 == 0:
        return 0, n // 2
    if k == 1 and n % 2 == 1:
        return 0, (n - 1) // 2
    if k == 3 and n % 2 == 1 and n >= 3:
        return 1, (n - 1) // 2 - 1
    if k == 4 and n % 2 == 0 and n >= 4:
        return 1, n // 2 - 2
    raise DomainError(f"inconsistent block {block} for SO({n})")


# serialization


def label_to_json(label: GroupLabel) -> dict:
    f = label.family
    if f in ("GL", "PGL"):
        return {"family": f, "n": label.n, "d": label.d}
    if f == "SL":
        return {"family": f, "n": label.n}
    if f == "Sp":
        return {"family": f, "m": label.n // 2}
    if f == "O":
        return {"family": f, "n": label.n, "k": label.k, "a": label.a}
    if label.n == 2:
        return {"family": f, "n": 2, "d": label.d}
    return {"family": f, "n": label.n, "w2": label.w2}


def label_from_json(data) -> GroupLabel:
    if not isinstance(data, dict) or "family" not in data:
        raise DomainError(f"group label must be an object with 'family', got {data!r}")
    f = data["family"]
    try:
        if f in ("GL", "PGL"):
            return GroupLabel(f, int(data["n"]), int(data.get("d", 0)))
        if f == "SL":
            return GroupLabel.sl(int(data["n"]))
        if f == "Sp":
            if "m" in data:
                return GroupLabel.sp(int(data["m"]))
            return GroupLabel("Sp", int(data["n"]))
        if f == "O":
            return GroupLabel.o(int(data["n"]), int(data["k"]), int(data.get("a", 0)))
        if f == "SO":
            n = int(data["n"])
            return GroupLabel.so(n, int(data.get("w2", 0)), int(data.get("d", 0)))
    except KeyError as exc:
        raise DomainError(f"group label {data!r} is missing field {exc}") from None
    raise DomainError(f"unknown group family {f!r}")


def _block_json(block):
    return None if block is None else {"k": block[0], "a": block[1]}


def _block_from_json(data):
    if data is None:
        return None
    return (int(data["k"]), int(data.get("a", 0)))


def class_to_json(c: HiggsClass) -> dict:
    return {
        "group": label_to_json(c.label),
        "block": _block_json(c.block),
        "points": [cotangent_to_json(p) for p in c.points],
    }


def class_from_json(data) -> HiggsClass:
    """Parse and canonicalize a class; raw (non-canonical) points are accepted."""
    if not isinstance(data, dict) or "group" not in data or "points" not in data:
        raise DomainError("class must be an object with 'group' and 'points'")
    label = label_from_json(data["group"])
    pts = [cotangent_from_json(p) for p in data["points"]]
    return make_class(label, pts, _block_from_json(data.get("block")))


def bundle_to_json(b: BundleClass) -> dict:
    return {
        "group": label_to_json(b.label),
        "block": _block_json(b.block),
        "points": [{"x": curve_to_json(x)} for x in b.points],
    }


def bundle_from_json(data) -> BundleClass:
    label = label_from_json(data["group"])
    xs = [curve_from_json(p["x"]) for p in data["points"]]
    b = make_bundle(label, xs)
    blk = _block_from_json(data.get("block"))
    if blk is not None and blk != label.block:
        raise DomainError(f"{label}: inconsistent block {blk}, expected {label.block}")
    return b


def descriptor_to_json(desc: ModuliDescriptor, verbose: bool = False) -> dict:
    out = {"copies": desc.copies, "action": desc.action.kind, "dim": desc.dimension}
    if desc.action.kind == "symtranslate":
        out["h"] = desc.action.h
    if desc.effective_dimension != desc.dimension:
        out["effective_dim"] = desc.effective_dimension
    if desc.level != "higgs":
        out["level"] = desc.level
    if verbose:
        out["presentation"] = desc.presentation
    return out
