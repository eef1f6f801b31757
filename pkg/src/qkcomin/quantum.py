"""The quantum product on a type-A Grassmannian, built from curve neighborhoods.

For X = Gr(m,n) and a degree d, curves of degree d through X are encoded by
an incidence diagram of auxiliary flag varieties: Y_d records the kernel
and span dimensions a = max(m-d, 0), b = min(m+d, n), and T_d = Fl(a,m,b;n)
sits over both X and Y_d.  The class of the variety swept out by degree-d
curves meeting an opposite Schubert variety and a B-stable one is computed
by a push-pull along this diagram: form the Richardson class on Y_d, pull
back to T_d, push forward to X.  Both transports act basis-wise, so the
only heavy step is one triangular expansion on Y_d.

The generating series of these classes over all degrees is eventually the
unit class; applying (1 - q * shift), where the shift substitutes each
opposite Schubert index by its degree-one neighborhood index, telescopes
the series into the finite quantum product.  Structure tables, the sheaf
Euler characteristic specializations, and the verification reports are all
assembled from that product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from qkcomin.gkm import (
    OPPOSITE,
    PLAIN,
    CharacterMap,
    KModel,
    LocalizedClass,
    equivariant_chars,
    get_model,
    zspec_chars,
)
from qkcomin.laurent import LaurentElement
from qkcomin.weyl import (
    FlagShape,
    bruhat_leq,
    length,
    max_coset_rep,
    min_coset_rep,
    minrep_to_partition,
    partition_contains,
    partition_to_minrep,
    partitions_in_box,
    format_partition,
)


@dataclass(frozen=True, eq=False)
class Space:
    """A Grassmannian Gr(m,n) together with the scalar mode of computation."""

    m: int
    n: int
    equivariant: bool = False
    use_cache: bool = True

    def __post_init__(self):
        if not 0 < self.m < self.n:
            raise ValueError("need 0 < m < n")
        object.__setattr__(self, "_memo", {})

    @property
    def shape(self) -> FlagShape:
        return FlagShape((self.m,), self.n)

    @property
    def chars(self) -> CharacterMap:
        return equivariant_chars(self.n) if self.equivariant else zspec_chars(self.n)

    @property
    def model(self) -> KModel:
        return get_model(self.shape, self.chars, self.use_cache)

    @property
    def partitions(self) -> tuple:
        return partitions_in_box(self.m, self.n - self.m)

    def index_of(self, lam: tuple) -> int:
        return self.model.idx[partition_to_minrep(lam, self.m, self.n)]

    def partition_of(self, idx: int) -> tuple:
        return minrep_to_partition(self.model.points[idx], self.m, self.n)

    def submodel(self, shape: FlagShape) -> KModel:
        return get_model(shape, self.chars, self.use_cache)

    def public_scalar(self, c: LaurentElement) -> LaurentElement:
        """Output form of a scalar: specialized to integers non-equivariantly."""
        if self.equivariant:
            return c
        return c.substitute_letters(((),), 0)

    def __str__(self):
        return f"gr:{self.m},{self.n}"


@lru_cache(maxsize=None)
def get_space(m: int, n: int, equivariant: bool = False, use_cache: bool = True) -> Space:
    """Shared Space instances, so product memos persist across callers."""
    return Space(m, n, equivariant, use_cache)


def diameter(space: Space) -> int:
    """Smallest d with every point-to-point curve neighborhood equal to X."""
    return min(space.m, space.n - space.m)


def kernel_span_shapes(space: Space, d: int) -> tuple:
    """The auxiliary shapes (Y_d, T_d) parametrizing degree-d curves."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    a = max(space.m - d, 0)
    b = min(space.m + d, space.n)
    y = FlagShape.make((a, b), space.n)
    t = FlagShape.make((a, space.m, b), space.n)
    return y, t


# -- index transport around the diagram ----------------------------------------


def _indices_on_y(space: Space, d: int, u: tuple, v: tuple) -> tuple:
    """Transport (opposite u, plain v) to Schubert indices on Y_d."""
    y, _t = kernel_span_shapes(space, d)
    uw = partition_to_minrep(u, space.m, space.n)
    vw = partition_to_minrep(v, space.m, space.n)
    u_d = min_coset_rep(uw, y.blocks)
    v_d = min_coset_rep(max_coset_rep(vw, space.shape.blocks), y.blocks)
    return y, u_d, v_d


def _y_to_x_index(space: Space, y: FlagShape, w: tuple) -> tuple:
    """Composite transport of a plain index: pull back from Y_d, push to X."""
    return min_coset_rep(max_coset_rep(w, y.blocks), space.shape.blocks)


def _neighborhood_by_diagram(space: Space, lam: tuple, d: int) -> tuple:
    y, _t = kernel_span_shapes(space, d)
    w = partition_to_minrep(lam, space.m, space.n)
    w_y = min_coset_rep(w, y.blocks)
    w_x = min_coset_rep(w_y, space.shape.blocks)
    return minrep_to_partition(w_x, space.m, space.n)


def _shift_rule(lam: tuple, d: int, m: int) -> tuple:
    padded = tuple(lam) + (0,) * (m - len(lam))
    out = []
    for i in range(m):
        x = padded[i + d] - d if i + d < m else -d
        out.append(max(x, 0))
    return tuple(x for x in out if x)


@lru_cache(maxsize=None)
def _shift_rule_valid(m: int, n: int) -> bool:
    """Check the partition shift fast path against the diagram; once per shape."""
    space = Space(m, n, equivariant=False)
    for lam in partitions_in_box(m, n - m):
        for d in range(0, max(m, n - m) + 2):
            if _shift_rule(lam, d, m) != _neighborhood_by_diagram(space, lam, d):
                return False
    return True


def curve_neighborhood_index(space: Space, lam: tuple, d: int) -> tuple:
    """The index lam(-d) of the degree-d neighborhood of an opposite variety."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if not partition_contains(lam, ((space.n - space.m),) * space.m):
        raise ValueError("partition leaves the box")
    if _shift_rule_valid(space.m, space.n):
        return _shift_rule(lam, d, space.m)
    return _neighborhood_by_diagram(space, lam, d)


def dist(space: Space, u: tuple, v: tuple) -> int:
    """Smallest degree whose curve neighborhood of one variety meets the other."""
    d = 0
    while not partition_contains(curve_neighborhood_index(space, u, d), v):
        d += 1
        if d > diameter(space):
            raise AssertionError("distance exceeded the diameter")
    return d


# -- projected classes and the degree series -------------------------------------


def _stabilized_indices(space: Space, d: int, u: tuple, v: tuple) -> bool:
    """Index pre-check guaranteeing the degree-d class is the unit."""
    y, u_d, v_d = _indices_on_y(space, d, u, v)
    my = space.submodel(y)
    top = my.points[max(range(my.npoints), key=lambda p: my.lengths[p])]
    return length(u_d) == 0 and v_d == top


def _gw_plain_coeffs(space: Space, u: tuple, v: tuple, d: int) -> dict:
    """Plain-basis coefficients on X of the degree-d projected class.

    Richardson class on Y_d, expanded there, then transported index-wise:
    pulling back along T_d -> Y_d sends a basis class to the basis class of
    the full preimage index, and pushing forward along T_d -> X sends a
    basis class to the basis class of the image index.
    """
    memo = space._memo.setdefault("gw", {})
    key = (u, v, d)
    if key in memo:
        return memo[key]
    y, u_d, v_d = _indices_on_y(space, d, u, v)
    if not bruhat_leq(u_d, v_d):
        memo[key] = {}
        return {}
    my = space.submodel(y)
    rkey = (y, my.idx[u_d], my.idx[v_d])
    rmemo = space._memo.setdefault("richardson", {})
    out = rmemo.get(rkey)
    if out is None:
        rich = my.multiply_values(
            my.table(OPPOSITE)[my.idx[u_d]], my.table(PLAIN)[my.idx[v_d]]
        )
        coeffs = my.expand_values(rich, PLAIN)
        out = {}
        xm = space.model
        for widx, c in coeffs.items():
            tgt = xm.idx[_y_to_x_index(space, y, my.points[widx])]
            acc = out.get(tgt)
            out[tgt] = c if acc is None else acc + c
        out = {k: c for k, c in out.items() if not c.is_zero()}
        rmemo[rkey] = out
    memo[key] = out
    return out


def projected_gw_class(space: Space, u: tuple, v: tuple, d: int) -> LocalizedClass:
    """The K-class of the union of degree-d curves meeting both varieties."""
    coeffs = _gw_plain_coeffs(space, u, v, d)
    return LocalizedClass(space.model, space.model.recombine(coeffs, PLAIN))


def _unit_plain_coeffs(space: Space) -> dict:
    xm = space.model
    top = max(range(xm.npoints), key=lambda p: xm.lengths[p])
    return {top: xm.one()}


@dataclass(frozen=True, eq=False)
class TailedQSeries:
    """Eventually-constant series of projected classes; tail is the unit class."""

    space: Space
    heads: tuple  # plain-basis coefficient dicts for degrees < stabilization

    @property
    def stabilization(self) -> int:
        return len(self.heads)

    def head_class(self, d: int) -> LocalizedClass:
        xm = self.space.model
        coeffs = self.heads[d] if d < len(self.heads) else _unit_plain_coeffs(self.space)
        return LocalizedClass(xm, xm.recombine(coeffs, PLAIN))

    @property
    def tail_class(self) -> LocalizedClass:
        xm = self.space.model
        return LocalizedClass(xm, xm.unit_values())


def gw_series(space: Space, u: tuple, v: tuple) -> TailedQSeries:
    """Degree series of projected classes; normalized so D is minimal."""
    heads = []
    unit = _unit_plain_coeffs(space)
    d = 0
    while not _stabilized_indices(space, d, u, v):
        heads.append(_gw_plain_coeffs(space, u, v, d))
        d += 1
        if d > max(space.m, space.n - space.m) + 1:
            raise AssertionError("series did not stabilize")
    while heads and heads[-1] == unit:
        heads.pop()
    return TailedQSeries(space, tuple(heads))


# -- the shift endomorphism and the product ----------------------------------------


def _neighbor_index_map(space: Space) -> list:
    """Index substitution of the degree-one shift on the opposite basis."""
    memo = space._memo
    out = memo.get("shift_map")
    if out is None:
        out = [
            space.index_of(curve_neighborhood_index(space, space.partition_of(i), 1))
            for i in range(space.model.npoints)
        ]
        memo["shift_map"] = out
    return out


def shift_expansion(space: Space, exp: dict) -> dict:
    """Scalar-linear substitution O^w -> O^{w(-1)} on an opposite expansion."""
    nmap = _neighbor_index_map(space)
    out: dict = {}
    for widx, c in exp.items():
        tgt = nmap[widx]
        acc = out.get(tgt)
        out[tgt] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _plain_to_opposite(space: Space, coeffs: dict) -> dict:
    bc = space.model.basis_change(PLAIN)
    out: dict = {}
    for x, c in coeffs.items():
        for y, d in bc[x].items():
            acc = out.get(y)
            prod = c * d
            out[y] = prod if acc is None else acc + prod
    return {k: c for k, c in out.items() if not c.is_zero()}


@dataclass(frozen=True, eq=False)
class QKElement:
    """A finite q-polynomial with opposite-basis coefficients."""

    space: Space
    coeffs: dict  # degree -> {opposite index -> scalar}

    def normalized(self) -> "QKElement":
        out = {}
        for d, exp in self.coeffs.items():
            exp = {w: c for w, c in exp.items() if not c.is_zero()}
            if exp:
                out[d] = exp
        return QKElement(self.space, out)

    def __eq__(self, other):
        if not isinstance(other, QKElement):
            return NotImplemented
        return (
            self.space is other.space
            and self.normalized().coeffs == other.normalized().coeffs
        )

    def min_degree(self):
        keys = [d for d, exp in self.normalized().coeffs.items()]
        return min(keys) if keys else None


def quantum_product(space: Space, u: tuple, v: tuple) -> QKElement:
    """The product of the opposite class of u and the B-stable class of v."""
    memo = space._memo.setdefault("star", {})
    key = (u, v)
    hit = memo.get(key)
    if hit is not None:
        return hit
    series = gw_series(space, u, v)
    bigd = series.stabilization
    unit_opp = {0: space.model.one()}
    opp = [
        _plain_to_opposite(space, series.heads[d]) if d < bigd else unit_opp
        for d in range(bigd + 1)
    ]
    coeffs: dict = {}
    for d in range(bigd + 1):
        cur = dict(opp[d])
        if d:
            for w, c in shift_expansion(space, opp[d - 1]).items():
                acc = cur.get(w)
                cur[w] = -c if acc is None else acc - c
        cur = {w: c for w, c in cur.items() if not c.is_zero()}
        if cur:
            coeffs[d] = cur
    result = QKElement(space, coeffs)
    memo[key] = result
    return result


def _opposite_in_plain(space: Space, v: tuple) -> dict:
    """Expansion of an opposite basis class in the plain basis on X."""
    return space.model.basis_change(OPPOSITE)[space.index_of(v)]


def quantum_product_opposite_v(space: Space, u: tuple, v: tuple) -> QKElement:
    """The product of two opposite classes, via the exact change of basis."""
    memo = space._memo.setdefault("star_opp", {})
    hit = memo.get((u, v))
    if hit is not None:
        return hit
    total: dict = {}
    for xidx, gamma in _opposite_in_plain(space, v).items():
        part = quantum_product(space, u, space.partition_of(xidx))
        for d, exp in part.coeffs.items():
            bucket = total.setdefault(d, {})
            for w, c in exp.items():
                acc = bucket.get(w)
                prod = gamma * c
                bucket[w] = prod if acc is None else acc + prod
    result = QKElement(space, total).normalized()
    memo[(u, v)] = result
    return result


def star_elements(space: Space, a: QKElement, b: QKElement) -> QKElement:
    """Bilinear extension of the product to finite q-polynomials."""
    total: dict = {}
    for d1, e1 in a.coeffs.items():
        for x1, c1 in e1.items():
            for d2, e2 in b.coeffs.items():
                for x2, c2 in e2.items():
                    base = quantum_product_opposite_v(
                        space, space.partition_of(x1), space.partition_of(x2)
                    )
                    scale = c1 * c2
                    for d, exp in base.coeffs.items():
                        bucket = total.setdefault(d + d1 + d2, {})
                        for w, c in exp.items():
                            acc = bucket.get(w)
                            prod = scale * c
                            bucket[w] = prod if acc is None else acc + prod
    return QKElement(space, total).normalized()


def basis_element(space: Space, lam: tuple, degree: int = 0) -> QKElement:
    return QKElement(space, {degree: {space.index_of(lam): space.model.one()}})


# -- Euler characteristic maps -----------------------------------------------------


def euler_char_q(space: Space, elt: QKElement) -> dict:
    """Coefficient-wise sheaf Euler characteristic; a polynomial in q."""
    out = {}
    for d, exp in elt.coeffs.items():
        total = space.model.zero()
        for c in exp.values():
            total = total + c
        if not total.is_zero():
            out[d] = total
    return out


def euler_char_total(space: Space, elt: QKElement) -> LaurentElement:
    """Euler characteristic with q set to 1."""
    total = space.model.zero()
    for part in euler_char_q(space, elt).values():
        total = total + part
    return total


# -- structure tables ----------------------------------------------------------------


@dataclass(frozen=True)
class StructureTable:
    """All nonzero coefficients of one product of Schubert classes."""

    space_str: str
    equivariant: bool
    u: tuple
    v: tuple
    v_basis: str
    terms: tuple  # ((partition, degree, LaurentElement public scalar), ...)

    def sum_check(self) -> LaurentElement:
        nvars = self.terms[0][2].nvars if self.terms else 0
        total = LaurentElement.zero(nvars)
        for _w, _d, c in self.terms:
            total = total + c
        return total

    def to_json_dict(self) -> dict:
        return {
            "space": self.space_str,
            "equivariant": self.equivariant,
            "u": format_partition(self.u),
            "v": format_partition(self.v),
            "v_basis": self.v_basis,
            "terms": [
                {"w": format_partition(w), "d": d, "N": str(c)}
                for w, d, c in self.terms
            ],
            "sum_check": str(self.sum_check()),
        }


def structure_table(space: Space, u: tuple, v: tuple, v_basis: str = PLAIN) -> StructureTable:
    """Structure constants of a product, always reported in the opposite basis."""
    if v_basis == PLAIN:
        elt = quantum_product(space, u, v)
    elif v_basis == OPPOSITE:
        elt = quantum_product_opposite_v(space, u, v)
    else:
        raise ValueError(f"unknown basis {v_basis!r}")
    terms = []
    for d, exp in elt.coeffs.items():
        for widx, c in exp.items():
            pub = space.public_scalar(c)
            if not pub.is_zero():
                terms.append((space.partition_of(widx), d, pub))
    terms.sort(key=lambda t: (t[1], t[0]))
    return StructureTable(str(space), space.equivariant, u, v, v_basis, tuple(terms))


def load_table_json(doc: dict) -> StructureTable:
    """Rebuild a table from its JSON form, recomputing the checksum field."""
    from qkcomin.weyl import parse_partition

    nvars = 0
    if doc["equivariant"]:
        nvars = int(doc["space"].split(",")[1])
    terms = tuple(
        (parse_partition(t["w"]), int(t["d"]), LaurentElement.parse(t["N"], nvars))
        for t in doc["terms"]
    )
    table = StructureTable(
        doc["space"], bool(doc["equivariant"]), parse_partition(doc["u"]),
        parse_partition(doc["v"]), doc["v_basis"], terms,
    )
    if str(table.sum_check()) != doc["sum_check"]:
        raise ValueError("sum_check mismatch on ingestion")
    return table


# -- verification reports ---------------------------------------------------------------


@dataclass
class Report:
    space_str: str
    equivariant: bool
    pairs: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def all_pairs(space: Space) -> list:
    parts = space.partitions
    return [(u, v) for u in parts for v in parts]


def verify_coefficient_sum(space: Space, v_basis: str = OPPOSITE) -> Report:
    """Every structure table sums to exactly 1."""
    report = Report(str(space), space.equivariant)
    one = LaurentElement.one(space.chars.nvars if space.equivariant else 0)
    for u, v in all_pairs(space):
        report.pairs += 1
        total = structure_table(space, u, v, v_basis).sum_check()
        if total != one:
            report.violations.append(
                f"sum u={format_partition(u)} v={format_partition(v)} got={total}"
            )
    return report


def verify_euler_homomorphism(space: Space) -> Report:
    """chi-hat is multiplicative on all basis pairs (and sends q to 1)."""
    report = Report(str(space), space.equivariant)
    one = space.model.one()
    for u, v in all_pairs(space):
        report.pairs += 1
        total = euler_char_total(space, quantum_product(space, u, v))
        if total != one:
            report.violations.append(
                f"hom u={format_partition(u)} v={format_partition(v)} got={total}"
            )
    return report


def verify_min_degree(space: Space, oracle: bool = False) -> Report:
    """chi_q of every product is exactly q to the curve distance."""
    from qkcomin.oracles import MomentGraph

    report = Report(str(space), space.equivariant)
    graph = MomentGraph(space.m, space.n) if oracle else None
    one = space.model.one()
    for u, v in all_pairs(space):
        report.pairs += 1
        d0 = dist(space, u, v)
        if graph is not None and graph.dist(u, v) != d0:
            report.violations.append(
                f"dist-oracle u={format_partition(u)} v={format_partition(v)}"
            )
            continue
        elt = quantum_product(space, u, v)
        chi = euler_char_q(space, elt)
        if chi != {d0: one}:
            report.violations.append(
                f"mindeg u={format_partition(u)} v={format_partition(v)} "
                f"expected=q^{d0}"
            )
            continue
        if elt.min_degree() != d0:
            report.violations.append(
                f"lowest-power u={format_partition(u)} v={format_partition(v)}"
            )
    return report


CHECKS = {
    "sum": verify_coefficient_sum,
    "hom": verify_euler_homomorphism,
    "mindeg": verify_min_degree,
}


def verify_space(space: Space, checks=("sum", "hom", "mindeg"), oracle: bool = False) -> Report:
    merged = Report(str(space), space.equivariant)
    for name in checks:
        if name == "mindeg":
            rep = verify_min_degree(space, oracle=oracle)
        else:
            rep = CHECKS[name](space)
        merged.pairs = max(merged.pairs, rep.pairs)
        merged.violations.extend(f"{name}: {v}" for v in rep.violations)
    if oracle:
        graph_report = verify_neighborhoods_against_graph(space)
        merged.violations.extend(graph_report.violations)
    return merged


def verify_neighborhoods_against_graph(space: Space) -> Report:
    """Cross-check every curve neighborhood index against the moment graph."""
    from qkcomin.oracles import MomentGraph

    report = Report(str(space), space.equivariant)
    graph = MomentGraph(space.m, space.n)
    for lam in space.partitions:
        for d in range(0, diameter(space) + 2):
            report.pairs += 1
            if curve_neighborhood_index(space, lam, d) != graph.neighborhood_partition(lam, d):
                report.violations.append(
                    f"neighborhood lam={format_partition(lam)} d={d}"
                )
    return report


def positivity_sign_report(space: Space, table: StructureTable) -> dict:
    """Diagnostic sign-alternation report for a non-equivariant table.

    Convention (stated here and in the header field): the entry at (w, d)
    is expected to carry sign (-1)^(l(u)+l(v)-l(w)-d*n), with lengths taken
    in the codimension grading of the opposite basis and the degree scaled
    by the anticanonical degree n of a line.  Purely diagnostic.
    """
    convention = "(-1)^(l(u)+l(v)-l(w)-d*n)"
    lu, lv = sum(table.u), sum(table.v)
    flagged = []
    for w, d, c in table.terms:
        val = c.specialize_ones()
        if val == 0:
            continue
        expected = -1 if (lu + lv - sum(w) - d * space.n) % 2 else 1
        if (val > 0) != (expected > 0):
            flagged.append({"w": format_partition(w), "d": d, "N": str(val)})
    return {
        "convention": convention,
        "checked": len(table.terms),
        "flagged": flagged,
    }
