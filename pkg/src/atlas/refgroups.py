"""Finite complex reflection groups of rank 2 as explicit matrix groups.

Four kinds of group are supported: the cyclic group generated by
diag(1, zeta_m), the product Z_m x Z_n, the imprimitive family G(m, p, 2),
and the nineteen exceptional Shephard-Todd groups 4..22.  Exceptional groups
are generated by S = lambda*S1, T = mu*T1 and the scalar Z = zeta_k*I, where
S1, T1 are Klein's matrices for the tetrahedral, octahedral or icosahedral
rotation group; the scalars are read from ``data/exceptional_groups.json``.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .exactnum import Cyclotomic, format_number, parse_number, root_of_unity

EXCEPTIONAL_FIELD = 120
CLOSURE_CAP = 10000

Matrix = tuple  # (a, b, c, d) for [[a, b], [c, d]], entries Cyclotomic


class SpecInvalid(ValueError):
    pass


class ClosureExceeded(RuntimeError):
    pass


class RelationFailed(AssertionError):
    def __init__(self, relation: str, lhs, rhs):
        super().__init__(f"{relation}: {format_matrix(lhs)} != {format_matrix(rhs)}")
        self.relation = relation
        self.lhs = lhs
        self.rhs = rhs


# 2x2 matrices over a fixed cyclotomic field

def mat(rows, order: int) -> Matrix:
    (a, b), (c, d) = rows
    return tuple(_as_cyclo(x, order) for x in (a, b, c, d))


def _as_cyclo(x, order: int) -> Cyclotomic:
    if isinstance(x, str):
        x = parse_number(x)
    if isinstance(x, Cyclotomic):
        return x.embed(order)
    return Cyclotomic.from_rational(x, order)


def identity(order: int) -> Matrix:
    one, zero = Cyclotomic.from_rational(1, order), Cyclotomic.from_rational(0, order)
    return (one, zero, zero, one)


def scalar_matrix(c: Cyclotomic, order: int) -> Matrix:
    zero = Cyclotomic.from_rational(0, order)
    c = c.embed(order)
    return (c, zero, zero, c)


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_pow(m: Matrix, k: int, order: int) -> Matrix:
    if k < 0:
        return mat_pow(mat_inv(m), -k, order)
    result = identity(order)
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_det(m: Matrix) -> Cyclotomic:
    a, b, c, d = m
    return a * d - b * c


def mat_inv(m: Matrix) -> Matrix:
    a, b, c, d = m
    det = mat_det(m)
    if not det:
        raise ZeroDivisionError("singular matrix")
    inv = det.inverse()
    return (d * inv, -b * inv, -c * inv, a * inv)


def scale_matrix(c: Cyclotomic, m: Matrix) -> Matrix:
    return tuple(c * x for x in m)


def commutator(m: Matrix, n: Matrix) -> Matrix:
    return mat_mul(mat_mul(m, n), mat_mul(mat_inv(m), mat_inv(n)))


def format_matrix(m: Matrix) -> str:
    a, b, c, d = (format_number(x) for x in m)
    return f"[[{a}, {b}], [{c}, {d}]]"


# table data

@lru_cache(maxsize=None)
def _table_text() -> str:
    return resources.files("atlas").joinpath("data/exceptional_groups.json").read_text()


@lru_cache(maxsize=None)
def exceptional_table() -> dict:
    return json.loads(_table_text())


@lru_cache(maxsize=None)
def klein_matrices(parent: str) -> tuple[Matrix, Matrix]:
    data = exceptional_table()["parents"]
    if parent not in data:
        raise SpecInvalid(f"unknown parent group {parent!r}")
    entry = data[parent]
    return mat(entry["S1"], EXCEPTIONAL_FIELD), mat(entry["T1"], EXCEPTIONAL_FIELD)


# specs

@dataclass(frozen=True)
class GroupSpec:
    kind: str  # cyclic | product | family | exceptional
    m: int | None = None
    n: int | None = None
    p: int | None = None
    no: int | None = None
    lam: Cyclotomic | None = field(default=None, compare=False)
    mu: Cyclotomic | None = field(default=None, compare=False)
    k1: int | None = field(default=None, compare=False)
    k2: int | None = field(default=None, compare=False)
    k3: int | None = field(default=None, compare=False)
    k: int | None = field(default=None, compare=False)
    exc_degrees: tuple[int, int] | None = field(default=None, compare=False)
    parent: str | None = field(default=None, compare=False)
    id_small_group: str | None = field(default=None, compare=False)

    @classmethod
    def cyclic(cls, m: int) -> "GroupSpec":
        if m < 1:
            raise SpecInvalid("cyclic order must be positive")
        return cls("cyclic", m=m)

    @classmethod
    def product(cls, m: int, n: int) -> "GroupSpec":
        if m < 1 or n < 1:
            raise SpecInvalid("product factors must be positive")
        return cls("product", m=m, n=n)

    @classmethod
    def family(cls, m: int, p: int) -> "GroupSpec":
        if m < 1 or p < 1 or m % p:
            raise SpecInvalid(f"G({m},{p},2) needs p | m")
        return cls("family", m=m, p=p)

    @classmethod
    def exceptional(cls, no: int) -> "GroupSpec":
        for row in exceptional_table()["rows"]:
            if row["no"] == no:
                return cls(
                    "exceptional",
                    no=no,
                    lam=parse_number(row["lambda"]),
                    mu=parse_number(row["mu"]),
                    k1=row["k1"],
                    k2=row["k2"],
                    k3=row["k3"],
                    k=row["k"],
                    exc_degrees=tuple(row["degrees"]),
                    parent=row["parent"],
                    id_small_group=row["id_small_group"],
                )
        raise SpecInvalid(f"no exceptional group numbered {no} (valid: 4..22)")

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"Z{self.m}"
        if self.kind == "product":
            return f"Z{self.m}xZ{self.n}"
        if self.kind == "family":
            return f"G({self.m},{self.p},2)"
        return f"ST{self.no}"

    @property
    def degrees(self) -> tuple[int, int]:
        """Degrees of a basic pair of invariants."""
        if self.kind == "cyclic":
            return (1, self.m)
        if self.kind == "product":
            return (self.m, self.n)
        if self.kind == "family":
            return (2 * self.m // self.p, self.m)
        return self.exc_degrees

    @property
    def expected_order(self) -> int:
        d1, d2 = self.degrees
        return d1 * d2

    @property
    def field_order(self) -> int:
        if self.kind == "exceptional":
            return EXCEPTIONAL_FIELD
        if self.kind == "product":
            return math.lcm(self.m, self.n)
        return self.m

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return {"kind": "cyclic", "m": self.m}
        if self.kind == "product":
            return {"kind": "product", "m": self.m, "n": self.n}
        if self.kind == "family":
            return {"kind": "family", "m": self.m, "p": self.p}
        return {"kind": "exceptional", "no": self.no}


def exceptional_specs() -> list[GroupSpec]:
    return [GroupSpec.exceptional(row["no"]) for row in exceptional_table()["rows"]]


def family_specs(max_m: int) -> list[GroupSpec]:
    return [GroupSpec.family(m, p) for m in range(1, max_m + 1) for p in range(1, m + 1) if m % p == 0]


_SPEC_PATTERNS = [
    (re.compile(r"^ST\s*(\d+)$", re.I), lambda g: GroupSpec.exceptional(int(g[0]))),
    (re.compile(r"^G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*2\s*\)$", re.I), lambda g: GroupSpec.family(int(g[0]), int(g[1]))),
    (re.compile(r"^Z(\d+)\s*x\s*Z(\d+)$", re.I), lambda g: GroupSpec.product(int(g[0]), int(g[1]))),
    (re.compile(r"^Z(\d+)$", re.I), lambda g: GroupSpec.cyclic(int(g[0]))),
]


def parse_group_spec(spec) -> GroupSpec:
    """Accepts ``ST4``, ``G(4,2,2)``, ``Z3``, ``Z2xZ3`` or a JSON-style dict."""
    if isinstance(spec, GroupSpec):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("kind")
        try:
            if kind == "exceptional":
                return GroupSpec.exceptional(int(spec["no"]))
            if kind == "family":
                return GroupSpec.family(int(spec["m"]), int(spec["p"]))
            if kind == "product":
                return GroupSpec.product(int(spec["m"]), int(spec["n"]))
            if kind == "cyclic":
                return GroupSpec.cyclic(int(spec["m"]))
        except KeyError as exc:
            raise SpecInvalid(f"missing field {exc} in group spec") from None
        raise SpecInvalid(f"unknown group kind {kind!r}")
    text = str(spec).strip()
    for pattern, make in _SPEC_PATTERNS:
        match = pattern.match(text)
        if match:
            return make(match.groups())
    raise SpecInvalid(f"cannot parse group spec {text!r}")


# generators and closure

def build_generators(spec: GroupSpec) -> dict[str, Matrix]:
    """Named generating matrices over Q(zeta_N), N = spec.field_order."""
    N = spec.field_order
    one = Cyclotomic.from_rational(1, N)
    zero = Cyclotomic.from_rational(0, N)
    if spec.kind == "cyclic":
        return {"g": (one, zero, zero, root_of_unity(spec.m).embed(N))}
    if spec.kind == "product":
        return {
            "g1": (root_of_unity(spec.m).embed(N), zero, zero, one),
            "g2": (one, zero, zero, root_of_unity(spec.n).embed(N)),
        }
    if spec.kind == "family":
        m, p = spec.m, spec.p
        theta = root_of_unity(m)
        return {
            "g1": (theta, zero, zero, theta.inverse()),
            "g2": (theta**p, zero, zero, one),
            "swap": (zero, one, one, zero),
        }
    if spec.kind == "exceptional":
        s1, t1 = klein_matrices(spec.parent)
        return {
            "S": scale_matrix(_as_cyclo(spec.lam, N), s1),
            "T": scale_matrix(_as_cyclo(spec.mu, N), t1),
            "Z": scalar_matrix(root_of_unity(spec.k), N),
        }
    raise SpecInvalid(f"unknown group kind {spec.kind!r}")


@dataclass(frozen=True)
class GeneratedGroup:
    field_order: int
    elements: frozenset
    generators: dict
    spec: GroupSpec | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m):
        return m in self.elements


def generate_closure(
    generators, field_order: int | None = None, cap: int = CLOSURE_CAP, spec: GroupSpec | None = None
) -> GeneratedGroup:
    """Breadth-first closure of a finite set of invertible matrices."""
    if isinstance(generators, dict):
        named = dict(generators)
    else:
        named = {f"g{i + 1}": g for i, g in enumerate(generators)}
    gens = list(named.values())
    if not gens:
        raise ValueError("at least one generator is required")
    if field_order is None:
        field_order = gens[0][0].order
    gens = [tuple(x.embed(field_order) for x in g) for g in gens]
    for g in gens:
        if not mat_det(g):
            raise ValueError("generators must be invertible")
    ident = identity(field_order)
    seen = {ident}
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            prod = mat_mul(h, g)
            if prod not in seen:
                seen.add(prod)
                if len(seen) > cap:
                    raise ClosureExceeded(f"closure exceeded {cap} elements")
                queue.append(prod)
    return GeneratedGroup(field_order, frozenset(seen), named, spec)


def group_from_spec(spec: GroupSpec | str, cap: int = CLOSURE_CAP) -> GeneratedGroup:
    spec = parse_group_spec(spec)
    return generate_closure(build_generators(spec), spec.field_order, cap, spec)


# verification

@dataclass
class PresentationReport:
    spec_name: str
    relations: dict[str, bool]
    satisfying_p: list[int]

    @property
    def ok(self) -> bool:
        return all(self.relations.values()) and bool(self.satisfying_p)

    def to_json(self) -> dict:
        return {
            "group": self.spec_name,
            "relations": dict(sorted(self.relations.items())),
            "st_power_p": self.satisfying_p,
            "ok": self.ok,
        }


def verify_presentation(g: GeneratedGroup | None, spec: GroupSpec, strict: bool = False,
                        p_range: Iterable[int] = range(1, 7)) -> PresentationReport:
    """Check S^2=Z^k1, T^3=Z^k2, Z^k=I, [S,Z]=[T,Z]=I and find p with (ST)^p=Z^k3."""
    if spec.kind != "exceptional":
        raise SpecInvalid("presentations are tabulated for exceptional groups only")
    N = spec.field_order
    gens = g.generators if g is not None else build_generators(spec)
    S, T, Z = gens["S"], gens["T"], gens["Z"]
    ident = identity(N)
    checks = {
        "S^2 = Z^k1": (mat_pow(S, 2, N), mat_pow(Z, spec.k1, N)),
        "T^3 = Z^k2": (mat_pow(T, 3, N), mat_pow(Z, spec.k2, N)),
        "Z^k = I": (mat_pow(Z, spec.k, N), ident),
        "[S,Z] = I": (commutator(S, Z), ident),
        "[T,Z] = I": (commutator(T, Z), ident),
    }
    relations = {}
    for name, (lhs, rhs) in checks.items():
        relations[name] = lhs == rhs
        if strict and lhs != rhs:
            raise RelationFailed(name, lhs, rhs)
    ST = mat_mul(S, T)
    target = mat_pow(Z, spec.k3, N)
    good = [p for p in p_range if mat_pow(ST, p, N) == target]
    if strict and not good:
        raise RelationFailed("(ST)^p = Z^k3 for some p", ST, target)
    return PresentationReport(spec.name, relations, good)


def is_reflection(m: Matrix) -> bool:
    """m != I and m - I has rank one, i.e. m fixes exactly a line pointwise."""
    a, b, c, d = m
    if a == 1 and d == 1 and not b and not c:
        return False
    return not ((a - 1) * (d - 1) - b * c)


def count_reflections(g: GeneratedGroup) -> int:
    return sum(1 for m in g.elements if is_reflection(m))


def expected_reflections(spec: GroupSpec) -> int:
    d1, d2 = spec.degrees
    return (d1 - 1) + (d2 - 1)


def is_closed(g: GeneratedGroup, sample=None) -> bool:
    """Closure under products and inverses (all pairs, or the given sample of pairs)."""
    els = g.elements
    pairs = sample if sample is not None else ((a, b) for a in els for b in els)
    for a, b in pairs:
        if mat_mul(a, b) not in els or mat_inv(a) not in els:
            return False
    return identity(g.field_order) in els
