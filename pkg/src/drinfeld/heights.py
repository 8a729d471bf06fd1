"""Places and normalized valuations of F_q(T), and exact heights of
Drinfeld modules (naive and graded), all in rational arithmetic.

Every finite place is a monic irreducible p of A = F_q[T] with
v_p(f) = ord_p(f); the infinite place has v_inf(f/g) = deg g - deg f
and degree 1.  With these normalizations the product formula
sum_nu deg(nu) v_nu(x) = 0 holds for nonzero x.

Heights use the log-plus normalization max(0, -v) per place (the
summed form without the positive part collapses to zero by the product
formula); the unclamped per-place graded sum is still reported for
comparison.  For extension fields K/F of degree d > 1 the valuation
data is table-driven and taken on trust.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MathPreconditionError
from .fields import FunctionField, RationalFunc
from .modules import DrinfeldModule
from .polys import Poly, factor, multiplicity


@dataclass(frozen=True)
class Place:
    """A place of F_q(T): a monic irreducible of A, or the place at infinity."""

    poly: Poly | None  # None marks infinity

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def label(self) -> str:
        return "inf" if self.poly is None else repr(self.poly)

    def __repr__(self):
        return f"Place({self.label})"


INFINITE_PLACE = Place(None)


def valuation_at(x: RationalFunc, place: Place) -> int:
    if x.is_zero:
        raise ValueError("valuation of zero")
    if place.is_infinite:
        return x.den.degree - x.num.degree
    return multiplicity(x.num, place.poly) - multiplicity(x.den, place.poly)


def valuations_of(x: RationalFunc) -> list[tuple[Place, int]]:
    """All places where x has nonzero valuation, plus infinity always.

    Deterministic order: finite places by (degree, lex), infinity last.
    """
    if x.is_zero:
        raise ValueError("valuation of zero")
    vals: dict[Poly, int] = {}
    for p, m in factor(x.num).items():
        if p.degree > 0:
            vals[p] = vals.get(p, 0) + m
    for p, m in factor(x.den).items():
        if p.degree > 0:
            vals[p] = vals.get(p, 0) - m
    out = [
        (Place(p), v)
        for p, v in sorted(vals.items(), key=lambda t: _poly_sort_key(t[0]))
        if v
    ]
    out.append((INFINITE_PLACE, x.den.degree - x.num.degree))
    return out


def _poly_sort_key(p: Poly):
    coeffs = [c.val for c in p.to_list()]
    return (p.degree, list(reversed(coeffs[:-1])))


def coefficient_height(g: RationalFunc) -> Fraction:
    """Weil height of one coefficient: sum over places of
    deg(nu) * max(0, -v_nu(g)); h(0) = 0."""
    if g.is_zero:
        return Fraction(0)
    total = 0
    for place, v in valuations_of(g):
        if v < 0:
            total += place.degree * (-v)
    return Fraction(total)


@dataclass(frozen=True)
class PlaceData:
    """Per-place entry of a height report."""

    label: str
    degree: int
    n_nu: int
    valuations: tuple[int, ...]  # v(g_1), ..., v(g_r); 0 recorded for zero g_i
    naive_terms: tuple[Fraction, ...]  # contribution of this place to each h(g_i)
    graded_term: Fraction  # clamped per-place graded max
    graded_term_unclamped: Fraction


@dataclass(frozen=True)
class HeightReport:
    q: int
    rank: int
    d: int
    naive: Fraction
    graded: Fraction
    graded_unclamped: Fraction
    slack: Fraction  # (q^r - 1) h_G - h, nonnegative
    places: tuple[PlaceData, ...]
    trusted_table: bool = False  # true when d > 1 data was user-supplied

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "rank": self.rank,
            "d": self.d,
            "naive_height": str(self.naive),
            "graded_height": str(self.graded),
            "graded_height_unclamped": str(self.graded_unclamped),
            "height_ineq_slack": str(self.slack),
            "log_plus_clamp": True,
            "table_supplied": self.trusted_table,
            "places": [
                {
                    "place": pd.label,
                    "deg": pd.degree,
                    "n_nu": pd.n_nu,
                    "valuations": list(pd.valuations),
                    "naive_terms": [str(t) for t in pd.naive_terms],
                    "graded_term": str(pd.graded_term),
                    "graded_term_unclamped": str(pd.graded_term_unclamped),
                }
                for pd in self.places
            ],
        }


def _assemble_report(q, rank, d, rows) -> HeightReport:
    """rows: (label, deg, n_nu, valuations per coefficient)."""
    naive_sums = [Fraction(0)] * rank
    graded = Fraction(0)
    graded_unclamped = Fraction(0)
    place_data = []
    for label, deg, n_nu, vals in rows:
        naive_terms = []
        graded_best = None
        for i, v in enumerate(vals, start=1):
            naive_terms.append(Fraction(n_nu * deg * max(0, -v), d))
            term = Fraction(-v * deg, q**i - 1)
            if graded_best is None or term > graded_best:
                graded_best = term
        for i, t in enumerate(naive_terms):
            naive_sums[i] += t
        graded_term = Fraction(n_nu, d) * max(graded_best, Fraction(0))
        graded_unclamped_term = Fraction(n_nu, d) * graded_best
        graded += graded_term
        graded_unclamped += graded_unclamped_term
        place_data.append(
            PlaceData(
                label,
                deg,
                n_nu,
                tuple(vals),
                tuple(naive_terms),
                graded_term,
                graded_unclamped_term,
            )
        )
    naive = max(naive_sums) if naive_sums else Fraction(0)
    slack = (q**rank - 1) * graded - naive
    return HeightReport(
        q, rank, d, naive, graded, graded_unclamped, slack, tuple(place_data)
    )


def height_report(phi: DrinfeldModule) -> HeightReport:
    """Exact heights of a module over F_q(T) (d = 1, places enumerated)."""
    if not isinstance(phi.field, FunctionField):
        raise ValueError("heights are computed for modules over F_q(T)")
    q = phi.fq.q
    # union of supporting places over all nonzero coefficients
    finite: dict[Poly, None] = {}
    val_maps = []
    for g in phi.coeffs:
        if g.is_zero:
            val_maps.append({})
            continue
        vm = {}
        for place, v in valuations_of(g):
            if not place.is_infinite:
                finite[place.poly] = None
                vm[place.poly] = v
            else:
                vm[None] = v
        val_maps.append(vm)
    rows = []
    ordered = sorted(finite, key=_poly_sort_key)
    for p in ordered:
        vals = [vm.get(p, 0) if vm else 0 for vm in val_maps]
        rows.append((repr(p), p.degree, 1, vals))
    inf_vals = [
        vm.get(None, 0) if vm else 0 for vm in val_maps
    ]
    rows.append(("inf", 1, 1, inf_vals))
    return _assemble_report(q, phi.rank, 1, rows)


def naive_height(phi: DrinfeldModule) -> Fraction:
    return height_report(phi).naive


def graded_height(phi: DrinfeldModule) -> Fraction:
    return height_report(phi).graded


def check_height_ineq(phi: DrinfeldModule) -> tuple[bool, Fraction]:
    """h <= (q^r - 1) h_G; returns (holds, exact slack)."""
    slack = height_report(phi).slack
    return slack >= 0, slack


@dataclass(frozen=True)
class HeightDatum:
    """One user-supplied valuation row for a place of K, [K:F] = d > 1."""

    label: str
    degree: int
    n_nu: int
    valuations: tuple[int, ...]


def heights_from_table(
    q: int, d: int, rank: int, rows: list[HeightDatum]
) -> HeightReport:
    """Heights over an extension K/F of degree d from a trusted table."""
    if d < 1:
        raise ValueError("d must be >= 1")
    for row in rows:
        if len(row.valuations) != rank:
            raise MathPreconditionError(
                f"table row {row.label!r} has {len(row.valuations)} valuations, "
                f"expected {rank}"
            )
    report = _assemble_report(
        q, rank, d, [(r.label, r.degree, r.n_nu, list(r.valuations)) for r in rows]
    )
    return HeightReport(
        report.q,
        report.rank,
        report.d,
        report.naive,
        report.graded,
        report.graded_unclamped,
        report.slack,
        report.places,
        trusted_table=True,
    )


def bp_drift_bound(r: int, q: int, deg_n: int) -> Fraction:
    """Bound on |h_G(psi) - h_G(phi)| across an isogeny with kernel in
    phi[N]: deg N + q/(q-1) - q^r/(q^r-1), exactly."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    if deg_n < 0:
        raise ValueError("deg N must be >= 0")
    return Fraction(deg_n) + Fraction(1, q - 1) - Fraction(1, q**r - 1)
