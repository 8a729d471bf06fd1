"""Drinfeld F_q[T]-modules: construction, phi_a images, torsion, isogenies,
dual isogenies, kernel quotients, and reduction at finite places.

A module is determined by phi_T = gamma(T) + g_1 t + ... + g_r t^r with
g_r nonzero.  The structure map gamma: F_q[T] -> C is recorded through
gamma(T); over F_q(T) it is the natural embedding (generic
characteristic), over finite coefficient fields gamma(T) may be any
element (finite characteristic is first-class, as reductions need it).
"""

from __future__ import annotations

from .errors import MathPreconditionError
from .extension import ExtField
from .fields import FunctionField, ResidueField
from .fq import FqContext
from .polys import Poly, factor, multiplicity
from .twisted import QPolynomial, TwistedPoly


class DrinfeldModule:
    """Rank-r Drinfeld module over a coefficient field."""

    __slots__ = ("field", "rank", "coeffs", "gamma_t", "phi_t", "_hash")

    def __init__(self, field, rank: int, coeffs, gamma_t=None):
        coeffs = tuple(coeffs)
        if rank < 1:
            raise ValueError("rank must be >= 1")
        if len(coeffs) != rank:
            raise ValueError(f"expected {rank} coefficients g_1..g_{rank}")
        if not coeffs[-1]:
            raise ValueError("leading coefficient g_r must be nonzero")
        if gamma_t is None:
            if isinstance(field, FunctionField):
                gamma_t = field.t  # natural embedding: generic characteristic
            elif isinstance(field, ResidueField):
                gamma_t = field.t  # reduction of the natural embedding
            else:
                raise ValueError("gamma(T) must be supplied for this field")
        self.field = field
        self.rank = rank
        self.coeffs = coeffs
        self.gamma_t = gamma_t
        self.phi_t = TwistedPoly(field, [gamma_t, *coeffs])
        self._hash = None

    @property
    def fq(self) -> FqContext:
        return self.field.fq

    @property
    def is_generic_characteristic(self) -> bool:
        return isinstance(self.field, FunctionField)

    def gamma(self, a: Poly):
        """Image of a in A = F_q[T] under the structure map."""
        if a.field is not self.fq:
            raise ValueError("polynomial over a different F_q")
        out = self.field.zero
        t = self.gamma_t
        for e, c in sorted(a.coeffs.items(), reverse=True):
            out = out + self.field.from_base(c) * t**e
        return out

    def phi(self, a: Poly) -> TwistedPoly:
        """The image phi_a, of tau-degree r * deg a (phi_0 = 0)."""
        if a.field is not self.fq:
            raise ValueError("polynomial over a different F_q")
        # Horner: walk exponents high to low, multiplying by phi_T per gap
        # (constants from F_q are central, so the side does not matter)
        exps = sorted(a.coeffs, reverse=True)
        result = TwistedPoly.zero(self.field)
        prev = None
        for e in exps:
            if prev is not None:
                for _ in range(prev - e):
                    result = result * self.phi_t
            c = self.field.from_base(a.coeffs[e])
            result = result + TwistedPoly.constant(self.field, c)
            prev = e
        if prev is not None:
            for _ in range(prev):
                result = result * self.phi_t
        return result

    def torsion_poly(self, a: Poly) -> QPolynomial:
        """phi_a as an additive polynomial; its roots are the a-torsion."""
        if a.is_zero:
            raise ValueError("torsion requires a nonzero a")
        return self.phi(a).to_q_poly()

    def __eq__(self, other):
        return (
            isinstance(other, DrinfeldModule)
            and other.field == self.field
            and other.rank == self.rank
            and other.coeffs == self.coeffs
            and other.gamma_t == self.gamma_t
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.coeffs, self.gamma_t))
        return self._hash

    def __repr__(self):
        return f"DrinfeldModule(phi_T = {self.phi_t!r})"


def make_module(field, rank: int, coeffs, gamma_t=None) -> DrinfeldModule:
    """Validated construction; `coeffs` is (g_1, ..., g_rank)."""
    return DrinfeldModule(field, rank, coeffs, gamma_t)


def is_morphism(u: TwistedPoly, phi: DrinfeldModule, psi: DrinfeldModule) -> bool:
    """True iff u phi_a = psi_a u for all a; checking a = T suffices
    because A is generated by T."""
    if phi.field != psi.field or u.field != phi.field:
        raise ValueError("morphism check needs a common coefficient field")
    if phi.rank != psi.rank:
        raise ValueError("modules of different rank")
    return u * phi.phi_t == psi.phi_t * u


class Isogeny:
    """A nonzero morphism phi -> psi, validated at construction."""

    __slots__ = ("source", "target", "poly")

    def __init__(self, source: DrinfeldModule, target: DrinfeldModule, poly: TwistedPoly):
        if poly.is_zero:
            raise ValueError("an isogeny is a nonzero morphism")
        if not is_morphism(poly, source, target):
            raise MathPreconditionError("polynomial is not a morphism phi -> psi")
        if source.is_generic_characteristic and not poly.d_part:
            raise MathPreconditionError(
                "inseparable morphism in generic characteristic"
            )
        self.source = source
        self.target = target
        self.poly = poly

    @property
    def degree(self) -> int:
        """#ker: q^(deg_tau) when separable, with the inseparability
        correction q^(deg_tau - h) otherwise (h = lowest nonzero index)."""
        q = self.source.fq.q
        h = 0 if self.poly.d_part else self.poly.lowest_nonzero_index
        return q ** (self.poly.tau_degree - h)

    def __eq__(self, other):
        return (
            isinstance(other, Isogeny)
            and other.source == self.source
            and other.target == self.target
            and other.poly == self.poly
        )

    def __repr__(self):
        return f"Isogeny({self.poly!r})"


def isogeny_degree(f: Isogeny) -> int:
    return f.degree


def dual_isogeny(f: Isogeny, a: Poly) -> Isogeny:
    """The dual f_hat with f_hat * f = phi_a, for a killing ker f.

    `a` must satisfy ker(f) within phi[a], equivalently phi_a is right
    divisible by f; a nonzero remainder is reported as a precondition
    failure.
    """
    if a.is_zero:
        raise ValueError("a must be nonzero")
    phi_a = f.source.phi(a)
    quo, rem = phi_a.right_divmod(f.poly)
    if not rem.is_zero:
        raise MathPreconditionError(
            "kernel of f is not contained in phi[a] (nonzero remainder)"
        )
    return Isogeny(f.target, f.source, quo)


class KernelSubmodule:
    """A finite A-stable submodule H of the torsion of an ambient module.

    Stored as the full point set (elements of an extension tower or other
    finite coefficient field), plus the additive polynomial with exactly
    those roots.
    """

    __slots__ = ("ambient", "generators", "points", "kernel_poly")

    def __init__(self, ambient: DrinfeldModule, generators):
        generators = tuple(generators)
        if not generators:
            raise ValueError("at least one generator required")
        self.ambient = ambient
        self.generators = generators
        self.points = self._close(generators)
        self.kernel_poly = self._product_poly()

    def _close(self, generators) -> tuple:
        phi_t = self.ambient.phi_t
        pts = {self.ambient.field.zero}
        frontier = set(generators)
        while frontier:
            pts |= frontier
            new = set()
            for x in frontier:
                for y in pts:
                    s = x + y
                    if s not in pts:
                        new.add(s)
                tx = phi_t.q_eval(x)
                if tx not in pts:
                    new.add(tx)
            frontier = new - pts
        return tuple(sorted(pts, key=_point_key))

    def _product_poly(self) -> TwistedPoly:
        fld = self.ambient.field
        prod = Poly.one(fld, "x")
        x = Poly.x(fld, "x")
        for h in self.points:
            prod = prod * (x - Poly.constant(fld, h, "x"))
        # the product over an F_q-subspace must be additive
        from .twisted import ordinary_to_q_poly

        try:
            qp = ordinary_to_q_poly(prod)
        except ValueError as exc:
            raise MathPreconditionError(
                "kernel set is not an F_q-subspace (product not additive)"
            ) from exc
        return qp.to_twisted()

    @property
    def order(self) -> int:
        return len(self.points)

    def __repr__(self):
        return f"KernelSubmodule(order={self.order})"


def _point_key(x):
    if hasattr(x, "key"):  # ExtElem integer encoding
        return x.key
    if hasattr(x, "val"):  # FqElement
        return x.val
    if hasattr(x, "value"):  # ResidueElem: encode the representative
        k = 0
        for i in range(x.field.deg - 1, -1, -1):
            k = k * x.field.q + x.value.coeff(i).val
        return k
    raise TypeError(f"no deterministic order for {type(x)}")


def quotient_by_kernel_poly(phi: DrinfeldModule, u: TwistedPoly):
    """The quotient module psi with psi_T = (u phi_T) / u (exact right
    quotient), and the isogeny u: phi -> psi.

    Fails if the right division leaves a remainder (u does not generate
    the kernel of a quotient map) or if the quotient leaves the
    gamma-compatible category (d_part changes)."""
    if u.is_zero:
        raise ValueError("kernel polynomial must be nonzero")
    quo, rem = (u * phi.phi_t).right_divmod(u)
    if not rem.is_zero:
        raise MathPreconditionError("u phi_T is not right divisible by u")
    if quo.d_part != phi.gamma_t:
        raise MathPreconditionError(
            f"quotient is not gamma-compatible: d_part = {quo.d_part!r}"
        )
    psi = DrinfeldModule(
        phi.field, phi.rank, quo.coeffs[1:], gamma_t=phi.gamma_t
    )
    return psi, Isogeny(phi, psi, u)


def quotient_by_kernel(phi: DrinfeldModule, kernel: KernelSubmodule):
    """Quotient by a finite A-stable kernel submodule."""
    if kernel.ambient != phi:
        raise ValueError("kernel built for a different module")
    psi, f = quotient_by_kernel_poly(phi, kernel.kernel_poly)
    if f.degree != kernel.order:
        raise MathPreconditionError(
            "isogeny degree does not match kernel order (kernel not separable?)"
        )
    return psi, f


def reduce_at_place(phi: DrinfeldModule, place: Poly) -> DrinfeldModule:
    """Reduction of a module over F_q(T) at a monic irreducible place.

    Requires good reduction of full rank: v_p(g_i) >= 0 for all i and
    v_p(g_r) = 0."""
    if not isinstance(phi.field, FunctionField):
        raise ValueError("reduction applies to modules over F_q(T)")
    residue = ResidueField(place)
    reduced = []
    for i, g in enumerate(phi.coeffs, start=1):
        if g.is_zero:  # v_p(0) = +infinity: always reduces to zero
            reduced.append(residue.zero)
            continue
        v = _valuation_at(g, place)
        if v < 0:
            raise MathPreconditionError(
                f"bad reduction: v_p(g_{i}) = {v} < 0 at p = {place!r}"
            )
        if i == phi.rank and v > 0:
            raise MathPreconditionError(
                f"rank drop: v_p(g_{phi.rank}) = {v} > 0 at p = {place!r}"
            )
        num_red = residue.reduce(g.num)
        den_red = residue.reduce(g.den)
        reduced.append(num_red / den_red)
    return DrinfeldModule(residue, phi.rank, reduced)


def _valuation_at(x, place: Poly) -> int:
    if x.is_zero:
        raise ValueError("valuation of zero")
    return multiplicity(x.num, place) - multiplicity(x.den, place)
