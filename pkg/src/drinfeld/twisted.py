"""The twisted polynomial ring C{t} with t*a = a^q * t.

Coefficients live in any of the package's coefficient fields (F_q(T),
a residue field A/(l), or an extension tower), all of which expose the
twist through `field.frobenius(x, k) = x^(q^k)`.  Multiplication is
non-commutative; only right division is provided, which is enough for
dual isogenies and kernel quotients since C{t} is right-Euclidean over
any coefficient field.

A twisted polynomial sum c_i t^i corresponds to the additive
q-polynomial sum c_i x^(q^i); `QPolynomial` is that view, with
composition matching twisted multiplication.
"""

from __future__ import annotations

from .polys import Poly


class TwistedPoly:
    """Immutable element of C{t}; coefficients stored dense, low-to-high."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "TwistedPoly":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "TwistedPoly":
        return cls(field, [field.one])

    @classmethod
    def tau(cls, field, k: int = 1) -> "TwistedPoly":
        return cls(field, [field.zero] * k + [field.one])

    @classmethod
    def constant(cls, field, c) -> "TwistedPoly":
        return cls(field, [c])

    # -- structure ------------------------------------------------------------

    @property
    def tau_degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    @property
    def d_part(self):
        """The constant coefficient c_0 (the derivative at 0 of the q-polynomial)."""
        return self.coeff(0)

    @property
    def lowest_nonzero_index(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero twisted polynomial")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TwistedPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(type(self.field)), self.coeffs))
        return self._hash

    # -- ring operations ---------------------------------------------------------

    def _ok(self, other) -> bool:
        if not isinstance(other, TwistedPoly):
            return False
        if other.field != self.field:
            raise ValueError("twisted polynomials over different coefficient fields")
        return True

    def __add__(self, other):
        if not self._ok(other):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedPoly(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return TwistedPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Twisted product: (a t^i)(b t^j) = a b^(q^i) t^(i+j)."""
        if not self._ok(other):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return TwistedPoly.zero(self.field)
        fld = self.field
        out = [fld.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                out[i + j] = out[i + j] + a * fld.frobenius(b, i)
        return TwistedPoly(fld, out)

    def scale(self, c) -> "TwistedPoly":
        """Left multiplication by the constant c."""
        return TwistedPoly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "TwistedPoly":
        if n < 0:
            raise ValueError("negative power in the twisted ring")
        out = TwistedPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def right_divmod(self, divisor: "TwistedPoly"):
        """(quotient, remainder) with self = quotient * divisor + remainder,
        tau-degree of the remainder below that of the divisor."""
        if not isinstance(divisor, TwistedPoly) or divisor.field != self.field:
            raise ValueError("twisted polynomials over different coefficient fields")
        if divisor.is_zero:
            raise ZeroDivisionError("twisted right division by zero")
        fld = self.field
        dv = divisor.tau_degree
        lead = divisor.coeffs[-1]
        rem = list(self.coeffs)
        quo = [fld.zero] * max(len(rem) - dv, 0)
        while len(rem) - 1 >= dv and rem:
            k = len(rem) - 1 - dv
            # (c t^k)(lead t^dv) = c lead^(q^k) t^(k+dv)
            c = rem[-1] * fld.frobenius(lead, k).inverse()
            if c:
                quo[k] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[k + j] = rem[k + j] - c * fld.frobenius(b, k)
            while rem and not rem[-1]:
                rem.pop()
        return TwistedPoly(fld, quo), TwistedPoly(fld, rem)

    # -- q-polynomial view ------------------------------------------------------------

    def to_q_poly(self) -> "QPolynomial":
        q = self.field.q
        return QPolynomial(
            Poly(
                self.field,
                {q**i: c for i, c in enumerate(self.coeffs) if c},
                "x",
            )
        )

    def q_eval(self, x):
        """Evaluate the associated q-polynomial sum c_i x^(q^i) at x."""
        fld = self.field
        out = None
        power = x  # x^(q^i), advanced by one Frobenius per step
        for i, c in enumerate(self.coeffs):
            if i > 0:
                power = fld.frobenius(power, 1)
            if not c:
                continue
            term = c * power
            out = term if out is None else out + term
        if out is None:
            return fld.zero
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = repr(c)
            if any(op in cs[1:] for op in "+-") or "/" in cs or "*" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                ts = "t" if i == 1 else f"t^{i}"
                terms.append(ts if cs == "1" else f"{cs}*{ts}")
        return " + ".join(terms)


class QPolynomial:
    """Additive polynomial sum c_i x^(q^i), as a sparse Poly in x."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    @property
    def field(self):
        return self.poly.field

    def eval(self, x):
        return self.poly.eval(x)

    def compose(self, other: "QPolynomial") -> "QPolynomial":
        """Substitution self(other(x)); matches twisted multiplication."""
        return QPolynomial(self.poly.eval(other.poly))

    def to_twisted(self) -> TwistedPoly:
        q = self.field.q
        coeffs = {}
        for e, c in self.poly.coeffs.items():
            i = 0
            ee = e
            while ee > 1:
                if ee % q:
                    raise ValueError("not a q-polynomial: stray exponent")
                ee //= q
                i += 1
            coeffs[i] = c
        n = max(coeffs) if coeffs else -1
        fld = self.field
        return TwistedPoly(fld, [coeffs.get(i, fld.zero) for i in range(n + 1)])

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and other.poly == self.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return repr(self.poly)


def ordinary_to_q_poly(f: Poly) -> QPolynomial:
    """Reinterpret an ordinary polynomial as a q-polynomial, checking shape."""
    q = f.field.q
    for e in f.coeffs:
        ee = e
        while ee > 1:
            if ee % q:
                raise ValueError(f"exponent {e} is not a power of q = {q}")
            ee //= q
    return QPolynomial(f)
