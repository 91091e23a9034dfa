"""Polynomial self-maps of C^n: Jacobians, generic fibre counts, properness
certificates, branch checks and a non-equivalence classifier."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .exactnum import Cyclotomic, format_number, parse_number, to_number
from .invarings import NormalFormRow, branch_containment, lookup_row
from .polyring import (
    MultiPoly,
    jacobian_determinant,
    parse_poly,
    squarefree_part,
    univar,
)
from .polyring import modp
from .singular import (
    NotInGamma,
    gamma_membership,
    kang_tag,
    milnor_brieskorn,
    milnor_plane,
    singular_locus_in_origin,
)

TARGET_RANGE = 1000
RETRIES = 5
PRIMES = 3


class DegreeUnstable(RuntimeError):
    pass


class NotDominant(RuntimeError):
    pass


class UnsupportedMap(NotImplementedError):
    pass


# maps

@dataclass(frozen=True)
class PolyMap:
    components: tuple
    tag: dict | None = None

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a map needs at least one component")
        n = len(comps)
        if any(c.nvars != n for c in comps):
            raise ValueError(f"all {n} components must be polynomials in {n} variables")

    @property
    def n(self) -> int:
        return len(self.components)

    @cached_property
    def jacobian(self) -> MultiPoly:
        return jacobian_determinant(list(self.components))

    @property
    def family(self) -> str | None:
        return self.tag.get("family") if self.tag else None

    def compose_after(self, other: "PolyMap") -> "PolyMap":
        """self o other (untagged)."""
        return PolyMap(tuple(c.compose(list(other.components)) for c in self.components))

    def to_json(self) -> dict:
        out = {"n": self.n, "components": [str(c) for c in self.components]}
        if self.tag:
            out["tag"] = _tag_json(self.tag)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PolyMap":
        n = int(data.get("n", len(data["components"])))
        comps = tuple(parse_poly(c, n) for c in data["components"])
        tag = data.get("tag")
        if tag and "lambda" in tag and isinstance(tag["lambda"], str):
            tag = dict(tag, **{"lambda": to_number(parse_number(tag["lambda"]))})
        if tag and isinstance(tag.get("a"), list):
            tag = dict(tag, a=tuple(tag["a"]))
        return cls(comps, tag)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _tag_json(tag: dict) -> dict:
    out = {}
    for k, v in tag.items():
        if isinstance(v, (Fraction, Cyclotomic)):
            out[k] = format_number(v)
        elif isinstance(v, tuple):
            out[k] = list(v)
        else:
            out[k] = v
    return out


def family_thmA(d: int) -> PolyMap:
    """(x + y + xy, x^(d-1) y)."""
    if d < 3:
        raise ValueError("d >= 3 required")
    x, y = MultiPoly.gens(2)
    return PolyMap((x + y + x * y, x ** (d - 1) * y), {"family": "thmA", "d": d})


def family_thmB(d: int, a: int) -> PolyMap:
    """(x, y^d - d x^a y)."""
    if d < 3 or a < 2:
        raise ValueError("d >= 3 and a >= 2 required")
    x, y = MultiPoly.gens(2)
    return PolyMap((x, y**d - x**a * y * d), {"family": "thmB", "d": d, "a": a})


def graph_potential(d: int, lam) -> MultiPoly:
    """y^(d+1)/(d+1) + (lam/2) x^(d-1) y^2 + x^d y, whose y-derivative is the ordinary d-fold form."""
    x, y = MultiPoly.gens(2)
    return y ** (d + 1) * Fraction(1, d + 1) + x ** (d - 1) * y**2 * (lam * Fraction(1, 2)) + x**d * y


def family_thmB1(d: int, lam) -> PolyMap:
    if d < 4:
        raise ValueError("d >= 4 required")
    lam = to_number(lam)
    if not gamma_membership(d, lam):
        raise NotInGamma(f"lambda = {lam} is not in Gamma_{d}")
    x, _ = MultiPoly.gens(2)
    return PolyMap((x, graph_potential(d, lam)), {"family": "thmB1", "d": d, "lambda": lam})


def family_thmD(d: int, a: Sequence[int]) -> PolyMap:
    """(x_1, ..., x_{n-1}, x_n^d - d (sum x_i^a_i) x_n)."""
    a = tuple(int(v) for v in a)
    if d < 3 or not a or any(v < 2 for v in a):
        raise ValueError("d >= 3 and a_i >= 2 required")
    n = len(a) + 1
    xs = MultiPoly.gens(n)
    s = MultiPoly.zero(n)
    for i, ai in enumerate(a):
        s = s + xs[i] ** ai
    last = xs[-1] ** d - s * xs[-1] * d
    return PolyMap(tuple(xs[:-1]) + (last,), {"family": "thmD", "d": d, "a": a})


def normal_form_map(row: NormalFormRow | str, n: int = 2) -> PolyMap:
    """The quotient map of a catalog row; for n = 3 the product (x1, f(x2, x3))."""
    if isinstance(row, str):
        row = lookup_row(row)
    tag = {"family": "normal_form", "row": row.name}
    if n == 2:
        return PolyMap((row.pair.phi1, row.pair.phi2), tag)
    if n == 3:
        x1 = MultiPoly.var(3, 0)
        comps = (x1,) + tuple(p.extend(3, [1, 2]) for p in (row.pair.phi1, row.pair.phi2))
        return PolyMap(comps, tag)
    raise ValueError("normal forms are available for n = 2 and n = 3")


def critical_locus(f: PolyMap) -> MultiPoly:
    return f.jacobian


# generic fibre counting

def _solve_linear_component(p: MultiPoly, used: set[int]):
    """(j, rest, c) with p = c x_j + rest, c constant and rest free of x_j."""
    for j in range(p.nvars):
        if j in used or p.degree_in(j) != 1:
            continue
        coeffs = p.coefficients_in(j)
        lead = coeffs[1]
        if lead.is_constant():
            rest = coeffs.get(0, MultiPoly.zero(p.nvars))
            return j, rest, lead.constant_value()
    return None


def _eliminate_graph_components(polys: list[MultiPoly]):
    """Substitute away components of the form c x_j + g(other variables)."""
    polys = list(polys)
    n = polys[0].nvars
    eliminated: set[int] = set()
    progress = True
    while progress and polys:
        progress = False
        for idx, p in enumerate(polys):
            hit = _solve_linear_component(p, eliminated)
            if hit is None:
                continue
            j, rest, c = hit
            value = rest * (-1 / c if not isinstance(c, int) else Fraction(-1, c))
            maps = MultiPoly.gens(n)
            maps[j] = value
            polys = [q.compose(maps) for k, q in enumerate(polys) if k != idx]
            eliminated.add(j)
            progress = True
            break
    free = [j for j in range(n) if j not in eliminated]
    return polys, free


def _restrict_vars(p: MultiPoly, keep: list[int]) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        if any(e[j] for j in range(p.nvars) if j not in keep):
            raise ValueError("polynomial depends on an eliminated variable")
        out[tuple(e[j] for j in keep)] = c
    return MultiPoly(len(keep), out)


def _coefficient_order(polys) -> int:
    orders = [1]
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, Cyclotomic) and not c.is_rational():
                orders.append(c.order)
    return modp.lcm_orders(orders)


def _pick_shear(a: MultiPoly, b: MultiPoly, rng) -> int:
    ta = a.homogeneous_part(a.degree())
    tb = b.homogeneous_part(b.degree())
    for _ in range(100):
        c = rng.randint(1, TARGET_RANGE)
        pt = [Fraction(c), Fraction(1)]
        if ta.evaluate(pt) and tb.evaluate(pt):
            return c
    raise DegreeUnstable("no admissible shear found")


def _sheared(p: MultiPoly, c: int) -> MultiPoly:
    x, y = MultiPoly.gens(2)
    return p.compose([x + y * c, y])


def _bivariate_count_exact(a: MultiPoly, b: MultiPoly):
    """Distinct common zeros of a, b (lc_y constant): distinct roots of Res_y."""
    da, db = a.degree(), b.degree()
    npts = da * db + 1
    ca, cb = a.coefficients_in(1), b.coefficients_in(1)
    values = []
    for k in range(npts):
        pt = [Fraction(k), Fraction(0)]
        ua = [ca[j].evaluate(pt) if j in ca else 0 for j in range(da + 1)]
        ub = [cb[j].evaluate(pt) if j in cb else 0 for j in range(db + 1)]
        values.append(univar.resultant(ua, ub, da, db))
    res = univar.interpolate_consecutive(values, Fraction(0))
    if not res:
        return None
    return univar.squarefree_degree(res)


def _dense_mod(p: MultiPoly, field: modp.PrimeField) -> np.ndarray:
    dx, dy = p.degree_in(0), p.degree_in(1)
    arr = np.zeros((dx + 1, dy + 1), dtype=np.int64)
    for (i, j), c in p.terms.items():
        arr[i, j] = field.reduce(c)
    return arr


def _evaluate_rows(arr: np.ndarray, npts: int, p: int, width: int) -> np.ndarray:
    """Rows k = 0..npts-1 hold the y-coefficients of the polynomial at x = k."""
    ks = np.arange(npts, dtype=np.int64) % p
    out = np.zeros((npts, width), dtype=np.int64)
    cols = arr.shape[1]
    for i in range(arr.shape[0] - 1, -1, -1):
        out = out * ks[:, None] % p
        out[:, :cols] = (out[:, :cols] + arr[i][None, :]) % p
    return out


def _bivariate_count_modp(a: MultiPoly, b: MultiPoly, field: modp.PrimeField):
    p = field.p
    da, db = a.degree(), b.degree()
    npts = da * db + 1
    A = _evaluate_rows(_dense_mod(a, field), npts, p, da + 1)
    B = _evaluate_rows(_dense_mod(b, field), npts, p, db + 1)
    if not A[:, -1].all() or not B[:, -1].all():
        return None  # leading coefficient vanished mod p
    values = modp.batched_resultant(A, B, p)
    res = modp.interpolate_consecutive(values, p)
    if not res.any():
        return None
    return modp.np_squarefree_degree(res, p)


def _univariate_count_exact(u: MultiPoly):
    dense = [u.terms.get((k,), 0) for k in range(u.degree() + 1)] if u else []
    dense = univar.trim(dense)
    if len(dense) <= 1:
        return None
    return univar.squarefree_degree(dense)


def _univariate_count_modp(u: MultiPoly, field: modp.PrimeField):
    if not u or u.is_constant():
        return None
    dense = np.zeros(u.degree() + 1, dtype=np.int64)
    for (k,), c in u.terms.items():
        dense[k] = field.reduce(c)
    if not dense[-1]:
        return None
    return modp.np_squarefree_degree(dense, field.p)


def fibre_count(f: PolyMap, target: Sequence[int], mode: str = "exact", rng=None, fields=None):
    """Number of distinct points in f^{-1}(target), or None if degenerate.

    In modp mode the count is computed over each field in ``fields`` and
    must agree across them.
    """
    rng = rng or random.Random(0)
    n = f.n
    polys = [c - Fraction(t) for c, t in zip(f.components, target)]
    polys, free = _eliminate_graph_components(polys)
    if len(polys) != len(free):
        raise UnsupportedMap("elimination left a non-square system")
    if not free:
        return 1
    if len(free) == 1:
        u = _restrict_vars(polys[0], free)
        if mode == "exact":
            return _univariate_count_exact(u)
        counts = {_univariate_count_modp(u, fld) for fld in fields}
        return counts.pop() if len(counts) == 1 else "split"
    if len(free) == 2:
        a, b = (_restrict_vars(p, free) for p in polys)
        if a.is_constant() or b.is_constant():
            return None
        c = _pick_shear(a, b, rng)
        a, b = _sheared(a, c), _sheared(b, c)
        if mode == "exact":
            return _bivariate_count_exact(a, b)
        counts = {_bivariate_count_modp(a, b, fld) for fld in fields}
        return counts.pop() if len(counts) == 1 else "split"
    raise UnsupportedMap(f"{len(free)} coupled variables remain after substitution; only <= 2 supported (n = {n})")


@dataclass
class DegreeReport:
    degree: int
    counts: list
    targets: list
    primes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"degree": self.degree, "targets": self.targets, "counts": self.counts}
        if self.primes:
            out["primes"] = self.primes
        return out


def degree_report(f: PolyMap, mode: str = "exact", seed: int | None = 0, rng=None,
                  retries: int = RETRIES, nprimes: int = PRIMES) -> DegreeReport:
    if mode not in ("exact", "modp"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng or random.Random(seed)
    order = _coefficient_order(f.components)
    counts, targets, primes = [], [], []
    for _ in range(2 + retries):
        target = [rng.randint(-TARGET_RANGE, TARGET_RANGE) for _ in range(f.n)]
        fields = None
        if mode == "modp":
            fields = [modp.PrimeField.random(rng, order) for _ in range(nprimes)]
            primes.append([fld.p for fld in fields])
        cnt = fibre_count(f, target, mode, rng, fields)
        targets.append(target)
        counts.append(cnt)
        good = [c for c in counts if isinstance(c, int)]
        for value in set(good):
            if good.count(value) >= 2 and value == max(good):
                return DegreeReport(value, counts, targets, primes)
    good = [c for c in counts if isinstance(c, int) and c > 0]
    if not good:
        raise NotDominant("every sampled target gave an empty or infinite fibre")
    raise DegreeUnstable(f"fibre counts disagree across targets: {counts}")


def topological_degree(f: PolyMap, mode: str = "exact", seed: int | None = 0, rng=None) -> int:
    """Cardinality of a generic fibre, cross-checked on independent random targets."""
    return degree_report(f, mode, seed, rng).degree


# properness

@dataclass
class ProperResult:
    status: str  # Proper | Unknown
    certificate: str | None = None

    @property
    def proper(self) -> bool:
        return self.status == "Proper"

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate}


def _coordinate_index(p: MultiPoly):
    if len(p.terms) == 1:
        (e, c), = p.terms.items()
        if c == 1 and sum(e) == 1:
            return e.index(1)
    return None


def properness_test(f: PolyMap) -> ProperResult:
    n = f.n
    comps = f.components
    coord = [_coordinate_index(c) for c in comps]
    for k in range(n):
        others = [coord[i] for i in range(n) if i != k]
        if None in others or len(set(others)) != n - 1:
            continue
        (rest,) = set(range(n)) - set(others)
        last = comps[k]
        deg = last.degree_in(rest)
        if deg >= 1 and last.lc_in(rest).is_constant():
            return ProperResult("Proper", "monic-graph")
    if n == 2:
        forms = [c.homogeneous_part(c.degree()) for c in comps]
        if all(forms) and all(c.degree() >= 1 for c in comps):
            dense = []
            for form in forms:
                d = form.degree()
                u = [0] * (d + 1)
                for (i, j), c in form.terms.items():
                    u[j] = c
                dense.append((univar.trim(u), d))
            (u1, d1), (u2, d2) = dense
            if univar.resultant(u1, u2, d1, d2):
                return ProperResult("Proper", "leading-forms")
    return ProperResult("Unknown", None)


def verify_branch_containment(f: PolyMap, branch: MultiPoly) -> bool:
    """True iff the reduced critical curve divides branch(f), i.e. f(Crit f) lies in V(branch)."""
    if f.n != 2:
        raise ValueError("branch containment is implemented for planar maps")
    divides, _, _, _ = branch_containment(list(f.components), branch, f.jacobian, reverse=False)
    return divides


# classification

@dataclass
class ClassificationReport:
    verdict: str  # NotEquivalent | Inconclusive
    witness: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "witness": self.witness, "notes": list(self.notes)}
        return out


def _json_value(v):
    if isinstance(v, (Fraction, Cyclotomic)):
        return format_number(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def milnor_multiset(f: PolyMap):
    """(multiset or None, note) for the singular points of the reduced critical curve."""
    if f.n != 2:
        return None, "milnor multiset only computed for planar maps"
    jac = f.jacobian
    if not jac:
        return None, "Jacobian vanishes identically"
    if jac.is_constant():
        return [], None
    curve = squarefree_part(jac)
    certified = singular_locus_in_origin(curve)
    at_o = not curve.terms.get((0, 0), 0)
    singular_o = at_o and not curve.partial(0).terms.get((0, 0), 0) and not curve.partial(1).terms.get((0, 0), 0)
    mu = milnor_plane(curve).milnor if singular_o else None
    if certified:
        return ([mu] if singular_o else []), None
    if mu is not None:
        return None, f"origin-local milnor number {mu} not used: singular locus not certified to be {{o}}"
    return None, "singular locus of the critical curve not certified"


def closed_form_milnor(f: PolyMap):
    fam = f.family
    if fam == "thmB":
        return (f.tag["d"] - 2) * (f.tag["a"] - 1)
    if fam == "thmD":
        return milnor_brieskorn(f.tag["d"], f.tag["a"]).milnor
    return None


def classify(f: PolyMap, g: PolyMap, degree_mode: str = "exact", seed: int = 0) -> ClassificationReport:
    """Compare computable equivalence invariants; never asserts equivalence."""
    if f.n != g.n:
        raise ValueError("maps must have the same dimension")
    notes = []

    def differ(name, a, b):
        return ClassificationReport("NotEquivalent", {"invariant": name, "left": _json_value(a), "right": _json_value(b)}, notes)

    degs = []
    for h in (f, g):
        try:
            degs.append(topological_degree(h, degree_mode, seed))
        except (DegreeUnstable, NotDominant, UnsupportedMap) as exc:
            degs.append(None)
            notes.append(f"topological degree unavailable: {exc}")
    if None not in degs:
        if degs[0] != degs[1]:
            return differ("topological_degree", degs[0], degs[1])
        notes.append(f"topological degree {degs[0]} on both sides")

    if f.n == 2:
        (m1, n1), (m2, n2) = milnor_multiset(f), milnor_multiset(g)
        notes.extend(x for x in (n1, n2) if x)
        if m1 is not None and m2 is not None:
            if sorted(m1) != sorted(m2):
                return differ("milnor", sorted(m1), sorted(m2))
            notes.append(f"milnor multiset {sorted(m1)} on both sides")

    if f.family == "thmB1" and g.family == "thmB1" and f.tag["d"] == g.tag["d"]:
        d = f.tag["d"]
        t1, t2 = kang_tag(d, f.tag["lambda"]), kang_tag(d, g.tag["lambda"])
        if t1 != t2:
            return differ("kang_tag", t1, t2)
        notes.append(f"kang tag {format_number(t1)} on both sides")

    if f.family in ("thmB", "thmD") and g.family in ("thmB", "thmD"):
        c1, c2 = closed_form_milnor(f), closed_form_milnor(g)
        if c1 != c2:
            return differ("milnor_closed_form", c1, c2)
        notes.append(f"closed-form milnor {c1} on both sides")

    return ClassificationReport("Inconclusive", None, notes)


def random_affine_automorphism(n: int, rng: random.Random, bound: int = 3) -> PolyMap:
    """x -> A x + b with a small-integer invertible A."""
    xs = MultiPoly.gens(n)
    while True:
        a = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if _int_det(a):
            break
    comps = []
    for i in range(n):
        comp = MultiPoly.constant(n, rng.randint(-bound, bound))
        for j in range(n):
            if a[i][j]:
                comp = comp + xs[j] * a[i][j]
        comps.append(comp)
    return PolyMap(tuple(comps))


def _int_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _int_det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(n))


# inline map specs

def parse_map_spec(text: str) -> PolyMap:
    """``thmA:3``, ``thmB:3,2``, ``thmB1:4,zeta(4)``, ``thmD:3,2,2``, ``ft4``, ``f_4,4,2``,
    optionally with ``@3`` for the three-dimensional product normal form."""
    text = text.strip()
    if ":" in text:
        kind, _, args = text.partition(":")
        kind = kind.strip().lower()
        parts = [s.strip() for s in _split_args(args)]
        if kind == "thma":
            return family_thmA(int(parts[0]))
        if kind == "thmb":
            return family_thmB(int(parts[0]), int(parts[1]))
        if kind == "thmb1":
            return family_thmB1(int(parts[0]), parse_number(parts[1]))
        if kind == "thmd":
            return family_thmD(int(parts[0]), [int(v) for v in parts[1:]])
        raise ValueError(f"unknown map family {kind!r}")
    n = 2
    if "@" in text:
        text, _, dim = text.partition("@")
        n = int(dim)
    return normal_form_map(lookup_row(text), n)


def _split_args(args: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in args:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out
