"""Empirical irreducibility certification through Frobenius at good places.

For a module over F_q(T), a good finite place p and a prime l coprime
to p, the l-torsion of the reduction is an r-dimensional A/(l)-vector
space inside a finite extension of the residue field.  The residue
Frobenius x -> x^(q^deg p) acts A/(l)-linearly on it; the irreducible
factor degrees of its characteristic polynomial determine which proper
invariant-subspace dimensions are possible at that place (all subset
sums of the degree multiset, multiplicity included, no semisimplicity
assumed).  Intersecting those possibility sets across places gives a
sound one-sided certificate: an empty intersection proves the mod-l
representation has no proper nonzero invariant subspace.  The probe
never claims reducibility.

The splitting field is found by iterating the residue Frobenius in
k[x]/(torsion polynomial); its size is capped (default 3^12, a
configuration knob) before any large tower is built.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, MathPreconditionError
from .extension import (
    ExtField,
    _DensePolyArith,
    _QuotientRing,
    ext_field,
    kernel_of_additive,
    roots_in_field,
)
from .fields import FunctionField, ResidueElem, ResidueField
from .modules import DrinfeldModule, reduce_at_place
from .polys import Poly, factor_degrees, is_irreducible

DEFAULT_FIELD_CAP = 3**12


def _check_place_pair(place: Poly, ell: Poly):
    for name, f in (("place", place), ("ell", ell)):
        if not f.is_monic or not is_irreducible(f):
            raise ValueError(f"{name} {f!r} must be a monic irreducible")
    if place == ell:
        raise MathPreconditionError("l must be coprime to the place of reduction")


def splitting_degree(phibar: DrinfeldModule, ell: Poly, field_cap: int) -> int:
    """Minimal n with the full l-torsion of phibar rational over
    F_{(q^D)^n}, D = residue degree; errors when the capped search ends."""
    k: ResidueField = phibar.field
    torsion = phibar.phi(ell).to_q_poly().poly  # ordinary poly over k
    arith = _DensePolyArith(k)
    ring = _QuotientRing(arith, arith.from_poly(torsion))
    x = ring.embed(arith.from_poly(Poly(k, {1: k.one}, "x")))
    s = x
    n = 0
    while True:
        n += 1
        if k.size ** n > field_cap:
            raise MathPreconditionError(
                f"splitting field would exceed the cap ({k.size}^{n} > "
                f"{field_cap}); raise field_cap to proceed"
            )
        s = ring.pow(s, k.size)
        if (s == x).all():
            return n


@dataclass(frozen=True)
class TorsionBasis:
    """The l-torsion of a reduction, realized inside an extension tower."""

    place: Poly
    ell: Poly
    field: ExtField  # splitting field F_{q^{deg p * n}}
    module: DrinfeldModule  # the reduction, with coefficients embedded in field
    residue: ResidueField  # A/(l), the scalar field of the torsion module
    roots: tuple  # all q^(r deg l) torsion points, deterministic order
    basis: tuple  # r points that A/(l)-generate

    @property
    def rank(self) -> int:
        return self.module.rank


def _embed_reduction(
    reduced: DrinfeldModule, place: Poly, n: int
) -> tuple[ExtField, DrinfeldModule]:
    """Embed a module over A/(p) into the tower F_{q^{deg p * n}}."""
    k: ResidueField = reduced.field
    fq = k.fq
    tower = ext_field(fq, place.degree * n)
    if place.degree == 1:
        t_img = tower.from_base(-place.coeff(0))
    else:
        lifted = Poly(
            tower, {e: tower.from_base(c) for e, c in place.coeffs.items()}, "x"
        )
        t_img = roots_in_field(lifted, tower)[0]

    def embed(x: ResidueElem):
        out = tower.zero
        for e, c in sorted(x.value.coeffs.items(), reverse=True):
            out = out + tower.from_base(c) * t_img**e
        return out

    module = DrinfeldModule(
        tower,
        reduced.rank,
        [embed(g) for g in reduced.coeffs],
        gamma_t=t_img,
    )
    return tower, module


def torsion_basis_mod_p(
    phi: DrinfeldModule,
    place: Poly,
    ell: Poly,
    field_cap: int = DEFAULT_FIELD_CAP,
) -> TorsionBasis:
    """Roots of the reduced l-torsion in the minimal splitting tower,
    with a greedy A/(l)-basis (r elements, deterministic)."""
    _check_place_pair(place, ell)
    if isinstance(phi.field, ResidueField):
        if phi.field.modulus != place:
            raise ValueError("module is already reduced, but at a different place")
        reduced = phi
    else:
        reduced = reduce_at_place(phi, place)
    n = splitting_degree(reduced, ell, field_cap)
    tower, module = _embed_reduction(reduced, place, n)
    coeffs = module.phi(ell).coeffs
    roots = kernel_of_additive(list(coeffs), tower)
    q = phi.fq.q
    expected = q ** (module.rank * ell.degree)
    if len(roots) != expected:
        raise InternalInvariantError(
            f"torsion count {len(roots)} != q^(r deg l) = {expected}"
        )
    residue = ResidueField(ell)
    basis, span = _greedy_basis(module, residue, roots)
    if len(basis) != module.rank:
        raise InternalInvariantError("basis extraction did not reach full rank")
    if len(span) != expected:
        raise InternalInvariantError("basis span does not exhaust the torsion")
    return TorsionBasis(
        place, ell, tower, module, residue, tuple(roots), tuple(basis)
    )


def _residue_reps(residue: ResidueField) -> list[Poly]:
    """Representatives of A/(l) as polynomials of degree < deg l."""
    fq = residue.fq
    q = fq.q
    out = []
    for enc in range(residue.size):
        v = enc
        coeffs = {}
        for i in range(residue.deg):
            c = v % q
            v //= q
            if c:
                coeffs[i] = fq.element(c)
        out.append(Poly(fq, coeffs))
    return out


def _action_table(module: DrinfeldModule, residue: ResidueField, point):
    """Map A/(l) representative index -> phi_b(point)."""
    return [module.phi(b).q_eval(point) for b in _residue_reps(residue)]


def _greedy_basis(module: DrinfeldModule, residue: ResidueField, roots):
    """First roots (in order) that enlarge the A/(l)-span, r of them."""
    basis = []
    span = {module.field.zero}
    for root in roots:
        if root in span:
            continue
        basis.append(root)
        table = _action_table(module, residue, root)
        span = {s + img for s in span for img in table}
        if len(basis) == module.rank:
            break
    return basis, span


@dataclass(frozen=True)
class FrobeniusData:
    """Frobenius action on the l-torsion at one place, in a fixed basis."""

    place: Poly
    ell: Poly
    matrix: tuple  # rows of ResidueElem entries: Frob(b_j) = sum_i M[i][j] b_i
    char_poly: Poly  # over A/(l), variable X
    factor_degrees: tuple[int, ...]  # multiset, sorted
    rank: int

    def dim_set(self) -> frozenset[int]:
        return invariant_dim_set(self.factor_degrees, self.rank)


def frobenius_matrix(
    phi: DrinfeldModule,
    place: Poly,
    ell: Poly,
    field_cap: int = DEFAULT_FIELD_CAP,
    torsion: TorsionBasis | None = None,
) -> FrobeniusData:
    """Matrix of x -> x^(q^deg p) on the l-torsion of the reduction at
    `place`, verified against every torsion point; plus its
    characteristic polynomial and factor-degree multiset over A/(l)."""
    tb = torsion or torsion_basis_mod_p(phi, place, ell, field_cap)
    module, residue, tower = tb.module, tb.residue, tb.field
    reps = _residue_reps(residue)
    rep_elems = [residue.reduce(b) for b in reps]
    r = module.rank

    # coordinates of every point in the chosen basis
    tables = [_action_table(module, residue, b) for b in tb.basis]
    partial: dict = {module.field.zero: ()}
    for table in tables:
        new = {}
        for pt, cs in partial.items():
            for idx, img in enumerate(table):
                s = pt + img
                new[s] = cs + (rep_elems[idx],)
        partial = new
    coords = partial
    if len(coords) != len(tb.roots):
        raise InternalInvariantError("A/(l)-coordinates are not unique")

    d = place.degree
    frob = lambda x: tower.frobenius(x, d)
    columns = []
    for b in tb.basis:
        y = frob(b)
        if y not in coords:
            raise InternalInvariantError("Frobenius image left the torsion")
        columns.append(coords[y])
    matrix = tuple(
        tuple(columns[j][i] for j in range(r)) for i in range(r)
    )

    # verify on every root: coords(Frob(x)) == M * coords(x)
    for x in tb.roots:
        cx = coords[x]
        expect = tuple(
            _dot(matrix[i], cx, residue) for i in range(r)
        )
        if coords[frob(x)] != expect:
            raise InternalInvariantError("Frobenius matrix failed re-evaluation")

    cp = _char_poly(matrix, residue)
    det = cp.coeff(0)
    if (r % 2) == 0:
        det_m = det
    else:
        det_m = -det
    if not det_m:
        raise InternalInvariantError("Frobenius matrix is singular")
    degrees = tuple(factor_degrees(cp))
    return FrobeniusData(place, ell, matrix, cp, degrees, r)


def _dot(row, vec, residue: ResidueField) -> ResidueElem:
    out = residue.zero
    for a, b in zip(row, vec):
        out = out + a * b
    return out


def _char_poly(matrix, residue: ResidueField) -> Poly:
    """det(X I - M) over A/(l), by permutation expansion (small ranks)."""
    import itertools

    r = len(matrix)
    ring_one = Poly.one(residue, "X")
    x = Poly.x(residue, "X")
    entries = [
        [
            (x if i == j else Poly.zero(residue, "X"))
            - Poly.constant(residue, matrix[i][j], "X")
            for j in range(r)
        ]
        for i in range(r)
    ]
    total = Poly.zero(residue, "X")
    for perm in itertools.permutations(range(r)):
        sign = _perm_sign(perm)
        term = ring_one
        for i in range(r):
            term = term * entries[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def invariant_dim_set(degrees, rank: int) -> frozenset[int]:
    """Dimensions of proper nonzero invariant subspaces compatible with a
    characteristic polynomial of the given factor-degree multiset: all
    subset sums (multiplicity included) intersected with 1..rank-1."""
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return frozenset(s for s in sums if 1 <= s <= rank - 1)


@dataclass(frozen=True)
class PlaceWitness:
    place: Poly
    deg_p: int
    char_poly: Poly
    factor_degrees: tuple[int, ...]
    dims: frozenset[int]


@dataclass(frozen=True)
class Verdict:
    """Outcome of the probe: certified-irreducible or inconclusive."""

    status: str  # "certified-irreducible" | "inconclusive"
    surviving: frozenset[int]
    witnesses: tuple[PlaceWitness, ...]

    @property
    def certified(self) -> bool:
        return self.status == "certified-irreducible"


def certify_irreducible(
    phi: DrinfeldModule,
    ell: Poly,
    places: list[Poly],
    field_cap: int = DEFAULT_FIELD_CAP,
) -> Verdict:
    """Intersect possible invariant dimensions across places.

    Sound one-sided certificate: a global invariant subspace of
    dimension k would be invariant under the Frobenius at every good
    place, so an empty intersection certifies irreducibility.  All
    places must be good for phi and coprime to l (the CLI filters,
    the library errors)."""
    if not places:
        raise ValueError("at least one place is required")
    surviving = None
    witnesses = []
    for place in places:
        fd = frobenius_matrix(phi, place, ell, field_cap)
        dims = fd.dim_set()
        witnesses.append(
            PlaceWitness(place, place.degree, fd.char_poly, fd.factor_degrees, dims)
        )
        surviving = dims if surviving is None else (surviving & dims)
        if not surviving:
            break
    surviving = surviving if surviving is not None else frozenset()
    status = "certified-irreducible" if not surviving else "inconclusive"
    return Verdict(status, surviving, tuple(witnesses))
