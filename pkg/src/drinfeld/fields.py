"""Coefficient fields built on A = F_q[T]: the fraction field F_q(T) and
residue fields A/(l) at monic irreducibles.

Rational functions are kept in canonical form (reduced fraction, monic
denominator), so equality is structural.  Both field descriptors follow
the same protocol as FqContext: `zero`, `one`, `q`, `size`,
`frobenius`, `from_base`, `random_element`.
"""

from __future__ import annotations

import functools

from .fq import FqContext, FqElement
from .polys import Poly, is_irreducible


class FunctionField:
    """Descriptor of F_q(T); elements are RationalFunc."""

    def __init__(self, fq: FqContext):
        self.fq = fq
        self.q = fq.q
        self.size = None  # infinite
        self.zero = RationalFunc(self, Poly.zero(fq), Poly.one(fq), _reduced=True)
        self.one = RationalFunc(self, Poly.one(fq), Poly.one(fq), _reduced=True)
        self.t = self.from_poly(Poly.x(fq))

    def from_poly(self, a: Poly) -> "RationalFunc":
        if a.field is not self.fq:
            raise ValueError("polynomial over a different F_q")
        return RationalFunc(self, a, Poly.one(self.fq), _reduced=True)

    def from_base(self, c: FqElement) -> "RationalFunc":
        return self.from_poly(Poly.constant(self.fq, c))

    def from_int(self, n: int) -> "RationalFunc":
        return self.from_base(self.fq.from_int(n))

    def frobenius(self, x: "RationalFunc", k: int = 1) -> "RationalFunc":
        """x^(q^k), using (sum c T^e)^(q^k) = sum c T^(e q^k) over F_q."""
        if k == 0 or x.num.is_zero:
            return x
        s = self.q**k
        num = Poly(self.fq, {e * s: c for e, c in x.num.coeffs.items()})
        den = Poly(self.fq, {e * s: c for e, c in x.den.coeffs.items()})
        return RationalFunc(self, num, den, _reduced=True)

    def random_element(self, rng, max_degree: int = 2) -> "RationalFunc":
        num = Poly(
            self.fq,
            {i: self.fq.random_element(rng) for i in range(max_degree + 1)},
        )
        return self.from_poly(num)

    def __repr__(self):
        return f"F_{self.q}(T)"


@functools.cache
def function_field(fq: FqContext) -> FunctionField:
    return FunctionField(fq)


class RationalFunc:
    """Element of F_q(T): num/den, reduced, monic denominator."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: FunctionField, num: Poly, den: Poly, _reduced=False):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero:
                den = Poly.one(field.fq)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num // g, den // g
                if not den.is_monic:
                    lead_inv = den.lead.inverse()
                    num, den = num.scale(lead_inv), den.scale(lead_inv)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero

    def __add__(self, other):
        if not isinstance(other, RationalFunc) or other.field is not self.field:
            return NotImplemented
        if self.den == other.den:
            return RationalFunc(self.field, self.num + other.num, self.den)
        return RationalFunc(
            self.field,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    def __neg__(self):
        return RationalFunc(self.field, -self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunc) or other.field is not self.field:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunc) or other.field is not self.field:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.field.zero
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cross-reduce the small factors instead of gcd-ing the big products
        if d2.degree > 0:
            g = n1.gcd(d2)
            if g.degree > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree > 0:
            g = n2.gcd(d1)
            if g.degree > 0:
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if not den.is_monic:
            inv = den.lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunc(self.field, num, den, _reduced=True)

    def inverse(self) -> "RationalFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if not den.is_monic:
            inv = den.lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunc(self.field, num, den, _reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunc) or other.field is not self.field:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunc)
            and other.field is self.field
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.is_poly:
            return repr(self.num)
        ns = repr(self.num)
        if len(self.num.coeffs) > 1:
            ns = f"({ns})"
        ds = repr(self.den)
        if len(self.den.coeffs) > 1:
            ds = f"({ds})"
        return f"{ns} / {ds}"


class ResidueField:
    """The residue field A/(l) at a monic irreducible l; elements ResidueElem."""

    def __init__(self, modulus: Poly):
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus!r} is not irreducible")
        modulus = modulus.monic()
        self.fq: FqContext = modulus.field
        self.modulus = modulus
        self.q = self.fq.q
        self.deg = modulus.degree
        self.size = self.q**self.deg
        self.p = self.fq.p
        self.fp_dim = self.fq.e * self.deg
        self.zero = ResidueElem(self, Poly.zero(self.fq))
        self.one = ResidueElem(self, Poly.one(self.fq))
        self.t = self.reduce(Poly.x(self.fq))

    def reduce(self, a: Poly) -> "ResidueElem":
        if a.field is not self.fq:
            raise ValueError("polynomial over a different F_q")
        return ResidueElem(self, a % self.modulus)

    def from_base(self, c: FqElement) -> "ResidueElem":
        return ResidueElem(self, Poly.constant(self.fq, c))

    def from_int(self, n: int) -> "ResidueElem":
        return self.from_base(self.fq.from_int(n))

    def frobenius(self, x: "ResidueElem", k: int = 1) -> "ResidueElem":
        if k == 0 or not x:
            return x
        return x ** pow(self.q, k, self.size - 1) if self.size > 2 else x

    def random_element(self, rng) -> "ResidueElem":
        coeffs = {i: self.fq.random_element(rng) for i in range(self.deg)}
        return ResidueElem(self, Poly(self.fq, coeffs))

    def elements(self):
        q = self.q
        for enc in range(self.size):
            v = enc
            coeffs = {}
            for i in range(self.deg):
                c = v % q
                v //= q
                if c:
                    coeffs[i] = self.fq.element(c)
            yield ResidueElem(self, Poly(self.fq, coeffs))

    # F_p-coordinate protocol (used by the dense linear-algebra backend)

    def to_fp(self, x: "ResidueElem") -> list[int]:
        out = []
        for i in range(self.deg):
            out.extend(self.fq.to_fp(x.value.coeff(i)))
        return out

    def from_fp(self, coords) -> "ResidueElem":
        e = self.fq.e
        poly = {}
        for i in range(self.deg):
            c = self.fq.from_fp(coords[i * e : (i + 1) * e])
            if c:
                poly[i] = c
        return ResidueElem(self, Poly(self.fq, poly))

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and other.fq is self.fq
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((id(self.fq), self.modulus))

    def __repr__(self):
        return f"F_{self.q}[T]/({self.modulus!r})"


class ResidueElem:
    """Element of A/(l), stored as the reduced representative in A."""

    __slots__ = ("field", "value", "_hash")

    def __init__(self, field: ResidueField, value: Poly):
        self.field = field
        self.value = value
        self._hash = None

    def _ok(self, other) -> bool:
        return isinstance(other, ResidueElem) and other.field == self.field

    def __add__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ResidueElem(self.field, self.value + other.value)

    def __neg__(self):
        return ResidueElem(self.field, -self.value)

    def __sub__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ResidueElem(self.field, self.value - other.value)

    def __mul__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ResidueElem(self.field, (self.value * other.value) % self.field.modulus)

    def inverse(self) -> "ResidueElem":
        if self.value.is_zero:
            raise ZeroDivisionError("inverse of zero in residue field")
        g, s, _ = self.value.xgcd(self.field.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("non-invertible residue (modulus not prime?)")
        return ResidueElem(self.field, (s.scale(g.coeff(0).inverse())) % self.field.modulus)

    def __truediv__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if not self.value:
            if n == 0:
                return self.field.one
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return self
        n %= self.field.size - 1
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return not self.value.is_zero

    def __eq__(self, other):
        return self._ok(other) and other.value == self.value

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.value))
        return self._hash

    def __repr__(self):
        return repr(self.value)
