"""Batch verification runs behind ``atlas reproduce``.

Each runner returns a list of Check records; names are path-like
(``tables/ST4/order``) and reports sort them, so output order never depends
on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .exactnum import root_of_unity
from .invarings import exceptional_rows, family_instances, verify_basic_pair, verify_branch_row
from .polyring import MultiPoly
from .propermaps import (
    classify,
    family_thmA,
    family_thmB,
    family_thmB1,
    normal_form_map,
    topological_degree,
)
from .refgroups import (
    GroupSpec,
    count_reflections,
    exceptional_specs,
    expected_reflections,
    family_specs,
    group_from_spec,
    verify_presentation,
)
from .singular import milnor_brieskorn, milnor_plane, ordinary_point_form

TARGETS = ("tables", "table4", "milnor", "families")

BRIESKORN_CASES = [
    (3, (2, 2)), (3, (2, 3)), (3, (3, 3)), (4, (2, 2)), (4, (2, 4)),
    (4, (3, 5)), (5, (3, 4)), (5, (2, 2)), (6, (4, 4)), (6, (2, 5)),
]

GAMMA_SAMPLES = {
    4: [Fraction(0), Fraction(1), Fraction(2), Fraction(-3, 7), root_of_unity(4)],
    5: [Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 3), root_of_unity(3)],
}


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


def run_tables(max_m: int = 8) -> list[Check]:
    checks = []
    for spec in exceptional_specs():
        g = group_from_spec(spec)
        pres = verify_presentation(g, spec)
        base = f"tables/{spec.name}"
        checks.append(Check(f"{base}/order", spec.expected_order, g.order))
        for rel, ok in pres.relations.items():
            checks.append(Check(f"{base}/relation {rel}", True, ok))
        checks.append(Check(f"{base}/(ST)^p = Z^k3 for some p", True, bool(pres.satisfying_p)))
        checks.append(Check(f"{base}/reflections", expected_reflections(spec), count_reflections(g)))
    specs = family_specs(max_m)
    specs += [GroupSpec.cyclic(m) for m in range(2, max_m + 1)]
    specs += [GroupSpec.product(m, n) for m in range(2, max_m + 1) for n in range(m, max_m + 1)]
    for spec in specs:
        g = group_from_spec(spec)
        checks.append(Check(f"tables/{spec.name}/order", spec.expected_order, g.order))
        checks.append(Check(f"tables/{spec.name}/reflections", expected_reflections(spec), count_reflections(g)))
    return checks


def run_normal_forms(max_m: int = 6) -> list[Check]:
    checks = []
    for row in exceptional_rows() + family_instances(max_m):
        base = f"table4/{row.name}"
        pr = verify_basic_pair(row.pair)
        checks.append(Check(f"{base}/invariant phi1", True, pr.invariant1))
        checks.append(Check(f"{base}/invariant phi2", True, pr.invariant2))
        checks.append(Check(f"{base}/degree product", row.group.expected_order, pr.degree_product))
        checks.append(Check(f"{base}/jacobian nonzero", True, pr.jacobian_nonzero))
        br = verify_branch_row(row)
        checks.append(Check(f"{base}/branch divisibility", True, br.divides))
    return checks


def run_milnor() -> list[Check]:
    checks = []
    x, y = MultiPoly.gens(2)
    for d in range(3, 7):
        for a in range(2, 6):
            mu = milnor_plane(y ** (d - 1) - x**a).milnor
            checks.append(Check(f"milnor/plane d={d} a={a}", (d - 2) * (a - 1), mu))
    for d, a in BRIESKORN_CASES:
        closed = d - 2
        for ai in a:
            closed *= ai - 1
        checks.append(Check(f"milnor/brieskorn d={d} a={list(a)}", closed, milnor_brieskorn(d, a).milnor))
    for d, lams in GAMMA_SAMPLES.items():
        for lam in lams:
            mu = milnor_plane(ordinary_point_form(d, lam)).milnor
            checks.append(Check(f"milnor/ordinary d={d} lambda={lam}", (d - 1) ** 2, mu))
    return checks


def run_families(seed: int = 0, modp_only: bool = False) -> list[Check]:
    checks = []
    exact = "modp" if modp_only else "exact"
    for d in range(3, 7):
        checks.append(Check(f"families/degree thmA d={d}", d, topological_degree(family_thmA(d), exact, seed)))
        for a in range(2, 5):
            checks.append(Check(f"families/degree thmB d={d} a={a}", d,
                                topological_degree(family_thmB(d, a), exact, seed)))
    for row in exceptional_rows():
        order = row.group.expected_order
        f = normal_form_map(row)
        if order <= 96 and not modp_only:
            checks.append(Check(f"families/degree {row.name} exact", order, topological_degree(f, "exact", seed)))
        checks.append(Check(f"families/degree {row.name} modp", order, topological_degree(f, "modp", seed)))
    pairs = [
        ("thmB:3,2 vs thmB:3,3", family_thmB(3, 2), family_thmB(3, 3), "NotEquivalent"),
        ("thmB1:4,1 vs thmB1:4,2", family_thmB1(4, 1), family_thmB1(4, 2), "NotEquivalent"),
        ("thmB1:4,1 vs thmB1:4,zeta(4)", family_thmB1(4, 1), family_thmB1(4, root_of_unity(4)), "Inconclusive"),
        ("f_2,1,2 vs f_4,4,2", normal_form_map("f_2,1,2"), normal_form_map("f_4,4,2"), "Inconclusive"),
    ]
    for name, f, g, verdict in pairs:
        checks.append(Check(f"families/classify {name}", verdict, classify(f, g, seed=seed).verdict))
    return checks


RUNNERS: dict[str, Callable[..., list[Check]]] = {
    "tables": lambda seed, modp_only: run_tables(),
    "table4": lambda seed, modp_only: run_normal_forms(),
    "milnor": lambda seed, modp_only: run_milnor(),
    "families": lambda seed, modp_only: run_families(seed, modp_only),
}


def run(target: str, seed: int = 0, modp_only: bool = False) -> list[Check]:
    targets = TARGETS if target == "all" else (target,)
    checks = []
    for t in targets:
        if t not in RUNNERS:
            raise ValueError(f"unknown reproduce target {t!r}")
        checks.extend(RUNNERS[t](seed, modp_only))
    return sorted(checks, key=lambda c: c.name)
