"""Basic invariants of rank-2 reflection groups and the catalog of Galois quotient maps.

A catalog row pairs a reflection group G with a basic set of invariants
(phi1, phi2), so that (phi1, phi2): C^2 -> C^2 is the quotient by G, and a
branch curve B in the target.  Rows are checked by exact substitution
(invariance), the degree identity deg(phi1)*deg(phi2) = |G|, a nonzero
Jacobian determinant, and divisibility of B(phi1, phi2) by the reduced
critical curve.

Row names: ``f_m`` (cyclic), ``f_m,n`` (product), ``f_m,p,2`` (imprimitive
family) and ``ft4`` .. ``ft22`` for the exceptional groups.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .polyring import (
    DivisionFailed,
    MultiPoly,
    gcd_poly,
    jacobian_determinant,
    parse_poly,
    squarefree_part,
)
from .refgroups import (
    GeneratedGroup,
    GroupSpec,
    Matrix,
    SpecInvalid,
    build_generators,
    format_matrix,
    group_from_spec,
)

INVARIANT_NAMES = ("a4", "b6", "c8", "d12", "e12", "f20", "g30")


@lru_cache(maxsize=None)
def catalog_data() -> dict:
    text = resources.files("atlas").joinpath("data/normal_forms.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def builtin_invariant(name: str) -> MultiPoly:
    table = catalog_data()["invariants"]
    if name not in table:
        raise KeyError(f"unknown invariant {name!r}; expected one of {', '.join(INVARIANT_NAMES)}")
    return parse_poly(table[name], 2)


# pairs and rows

@dataclass(frozen=True)
class PowerOf:
    """base^exponent, kept factored so invariance can be tested on the base."""

    base: MultiPoly
    exponent: int = 1
    label: str = ""

    @property
    def poly(self) -> MultiPoly:
        return self.base**self.exponent

    def text(self) -> str:
        if self.exponent == 1:
            return self.label or str(self.base)
        return f"({self.label or self.base})^{self.exponent}"


@dataclass
class InvariantPair:
    phi1: MultiPoly
    phi2: MultiPoly
    group: GroupSpec
    factored: tuple[PowerOf, PowerOf] | None = None

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.phi1.degree(), self.phi2.degree())

    def jacobian(self) -> MultiPoly:
        return jacobian_determinant([self.phi1, self.phi2])


@dataclass
class NormalFormRow:
    name: str
    pair: InvariantPair
    branch: MultiPoly
    branch_text: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def group(self) -> GroupSpec:
        return self.pair.group

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": self.group.name,
            "group_spec": self.group.to_json(),
            "order": self.group.expected_order,
            "phi1": str(self.pair.phi1) if self.pair.factored is None else self.pair.factored[0].text(),
            "phi2": str(self.pair.phi2) if self.pair.factored is None else self.pair.factored[1].text(),
            "branch": str(self.branch),
            **({"meta": self.meta} if self.meta else {}),
        }


def _power(name: str, k: int) -> PowerOf:
    return PowerOf(builtin_invariant(name), k, name)


def cyclic_row(m: int) -> NormalFormRow:
    x, y = MultiPoly.gens(2)
    pair = InvariantPair(x, y**m, GroupSpec.cyclic(m))
    return NormalFormRow(f"f_{m}", pair, y, "y")


def product_row(m: int, n: int) -> NormalFormRow:
    x, y = MultiPoly.gens(2)
    pair = InvariantPair(x**m, y**n, GroupSpec.product(m, n))
    return NormalFormRow(f"f_{m},{n}", pair, x * y, "x*y")


def family_row(m: int, p: int) -> NormalFormRow:
    spec = GroupSpec.family(m, p)
    x, y = MultiPoly.gens(2)
    q = m // p
    pair = InvariantPair(x**q * y**q, x**m + y**m, spec)
    core = y**2 - 4 * x**p
    branch = core if p == m else x * core
    return NormalFormRow(f"f_{m},{p},2", pair, branch, str(branch))


@lru_cache(maxsize=None)
def exceptional_row(no: int) -> NormalFormRow:
    for entry in catalog_data()["exceptional_rows"]:
        if entry["no"] == no:
            (n1, k1), (n2, k2) = entry["pair"]
            f1, f2 = _power(n1, k1), _power(n2, k2)
            pair = InvariantPair(f1.poly, f2.poly, GroupSpec.exceptional(no), (f1, f2))
            branch = parse_poly(entry["branch"], 2)
            return NormalFormRow(f"ft{no}", pair, branch, entry["branch"])
    raise SpecInvalid(f"no catalog row for exceptional group {no}")


def exceptional_rows() -> list[NormalFormRow]:
    return [exceptional_row(e["no"]) for e in catalog_data()["exceptional_rows"]]


def family_instances(max_m: int = 6) -> list[NormalFormRow]:
    """Cyclic, product and imprimitive rows with parameters up to max_m."""
    rows = [cyclic_row(m) for m in range(2, max_m + 1)]
    rows += [product_row(m, n) for m in range(2, max_m + 1) for n in range(m, max_m + 1)]
    rows += [family_row(m, p) for m in range(1, max_m + 1) for p in range(1, m + 1) if m % p == 0]
    return rows


_ROW_PATTERNS = [
    (re.compile(r"^f(?:t|~)?(\d+)$"), lambda g: exceptional_row(int(g[0]))),
    (re.compile(r"^f_(\d+)$"), lambda g: cyclic_row(int(g[0]))),
    (re.compile(r"^f_(\d+),(\d+)$"), lambda g: product_row(int(g[0]), int(g[1]))),
    (re.compile(r"^f_(\d+),(\d+),2$"), lambda g: family_row(int(g[0]), int(g[1]))),
]


def lookup_row(name: str) -> NormalFormRow:
    """``ft8``/``f8`` for the exceptional rows, ``f_3``, ``f_2,3``, ``f_4,2,2`` otherwise."""
    key = name.replace(" ", "")
    for pattern, make in _ROW_PATTERNS:
        match = pattern.match(key)
        if match:
            return make(match.groups())
    raise SpecInvalid(f"unknown catalog row {name!r}")


def _is_reducible_family(m: int, p: int) -> bool:
    # G(1,1,2) is Z_2 and G(2,2,2) is Z_2 x Z_2 up to conjugacy
    return (m, p) in ((1, 1), (2, 2))


def enumerate_galois_degree(d: int) -> list[NormalFormRow]:
    """Every catalog row whose group has order d."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    rows = [cyclic_row(d)]
    rows += [product_row(m, d // m) for m in range(2, d + 1) if d % m == 0 and 2 <= m <= d // m]
    for m in range(1, d + 1):
        for p in range(1, m + 1):
            if m % p == 0 and 2 * m * m == d * p and not _is_reducible_family(m, p):
                rows.append(family_row(m, p))
    rows += [r for r in exceptional_rows() if r.group.expected_order == d]
    return rows


# verification

@dataclass
class InvarianceResult:
    ok: bool
    witness: Matrix | None = None
    image: MultiPoly | None = None

    def __bool__(self):
        return self.ok


def _act(p: MultiPoly, m: Matrix) -> MultiPoly:
    a, b, c, d = m
    return p.substitute_linear([[a, b], [c, d]])


def _invariant_under(p, m: Matrix):
    """(ok, image) for p(M x) = p; a PowerOf is tested through its base."""
    if isinstance(p, PowerOf):
        image = _act(p.base, m)
        if image == p.base:
            return True, image
        if not image or image.terms.keys() != p.base.terms.keys():
            return False, image
        ratio = image.leading_coefficient() / p.base.leading_coefficient()
        ok = image == p.base * ratio and ratio**p.exponent == 1
        return ok, image
    image = _act(p, m)
    return image == p, image


def check_invariance(p, g: GeneratedGroup | dict, mode: str = "generators") -> InvarianceResult:
    """True iff p(M x) = p for every M in the generators (or the whole group)."""
    if mode == "generators":
        mats = g.generators.values() if isinstance(g, GeneratedGroup) else g.values()
    elif mode == "group":
        if not isinstance(g, GeneratedGroup):
            raise ValueError("group mode needs a GeneratedGroup")
        mats = g.elements
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for m in mats:
        ok, image = _invariant_under(p, m)
        if not ok:
            return InvarianceResult(False, m, image if not isinstance(p, PowerOf) else image)
    return InvarianceResult(True)


@dataclass
class PairReport:
    invariant1: bool
    invariant2: bool
    degree_product: int
    group_order: int
    jacobian_nonzero: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.invariant1
            and self.invariant2
            and self.degree_product == self.group_order
            and self.jacobian_nonzero
        )

    def to_json(self) -> dict:
        out = {
            "invariant_phi1": self.invariant1,
            "invariant_phi2": self.invariant2,
            "degree_product": self.degree_product,
            "group_order": self.group_order,
            "jacobian_nonzero": self.jacobian_nonzero,
            "ok": self.ok,
        }
        if self.witness:
            out["witness"] = self.witness
        return out


def verify_basic_pair(pair: InvariantPair, g: GeneratedGroup | None = None, mode: str = "generators") -> PairReport:
    if g is None:
        if mode == "generators":
            g = build_generators(pair.group)
        else:
            g = group_from_spec(pair.group)
    order = g.order if isinstance(g, GeneratedGroup) else pair.group.expected_order
    f1, f2 = pair.factored if pair.factored else (pair.phi1, pair.phi2)
    r1 = check_invariance(f1, g, mode)
    r2 = check_invariance(f2, g, mode)
    witness = None
    for r, label in ((r1, "phi1"), (r2, "phi2")):
        if not r.ok:
            witness = f"{label} not fixed by {format_matrix(r.witness)}"
            break
    d1, d2 = pair.degrees
    return PairReport(r1.ok, r2.ok, d1 * d2, order, bool(pair.jacobian()), witness)


@dataclass
class BranchReport:
    row: str
    divides: bool
    reverse: bool | None
    critical_degree: int
    offending: str | None = None

    @property
    def ok(self) -> bool:
        return self.divides and self.reverse is not False

    def to_json(self) -> dict:
        out = {
            "row": self.row,
            "divides": self.divides,
            "reverse_inclusion": self.reverse,
            "reduced_critical_degree": self.critical_degree,
            "ok": self.ok,
        }
        if self.offending:
            out["non_dividing_part"] = self.offending
        return out


def branch_containment(components, branch: MultiPoly, critical: MultiPoly | None = None,
                       reverse: bool = True, reverse_limit: int = 400):
    """(divides, reverse, reduced critical curve, offending factor) for a planar map.

    ``divides`` certifies f(Crit f) in V(B).  ``reverse`` compares the reduced
    pullback B(f) with the reduced critical curve; it is None when skipped
    (pullback degree above ``reverse_limit``).
    """
    if critical is None:
        critical = jacobian_determinant(list(components))
    if not critical:
        raise ValueError("Jacobian determinant vanishes identically")
    reduced = squarefree_part(critical)
    pullback = branch.compose(list(components))
    offending = None
    try:
        pullback.divexact(reduced)
        divides = True
    except DivisionFailed:
        divides = False
        g = gcd_poly(reduced, pullback) if pullback else reduced
        offending = str(reduced.divexact(g))
    rev = None
    if reverse and divides and pullback and pullback.degree() <= reverse_limit:
        rev = squarefree_part(pullback).degree() == reduced.degree()
    return divides, rev, reduced, offending


def verify_branch_row(row: NormalFormRow, strict: bool = False) -> BranchReport:
    divides, rev, reduced, offending = branch_containment(
        [row.pair.phi1, row.pair.phi2], row.branch, row.pair.jacobian()
    )
    if strict and not divides:
        raise DivisionFailed(f"{row.name}: reduced critical curve does not divide the pulled-back branch "
                             f"curve; non-dividing part {offending}")
    return BranchReport(row.name, divides, rev, reduced.degree(), offending)


def catalog_json() -> dict:
    data = catalog_data()
    rows = [exceptional_row(e["no"]).to_json() for e in data["exceptional_rows"]]
    return {
        "schema": 1,
        "invariants": {name: str(builtin_invariant(name)) for name in INVARIANT_NAMES},
        "family_rows": data["family_rows"],
        "rows": rows,
        "metadata": data["metadata"],
    }
