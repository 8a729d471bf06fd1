"""Sparse univariate polynomials over an arbitrary coefficient field.

Coefficients are kept in a dict {exponent: element} with no zero
entries; exponents are plain Python ints and may be astronomically
large (q-power exponents show up constantly), which is why the
representation is sparse.  The coefficient field is any descriptor
following the package's field protocol (`zero`, `one`, `size`,
`random_element`), with elements supporting +, -, *, `inverse` and
hashing.  Polynomials in T over F_q double as the ring A = F_q[T].
"""

from __future__ import annotations

import random

from .errors import MathPreconditionError


class Poly:
    """Immutable sparse polynomial; `var` is only used for display."""

    __slots__ = ("field", "coeffs", "var", "_hash")

    def __init__(self, field, coeffs: dict, var: str = "T"):
        self.field = field
        self.coeffs = {e: c for e, c in coeffs.items() if c}
        self.var = var
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, var: str = "T") -> "Poly":
        return cls(field, {}, var)

    @classmethod
    def one(cls, field, var: str = "T") -> "Poly":
        return cls(field, {0: field.one}, var)

    @classmethod
    def x(cls, field, var: str = "T") -> "Poly":
        return cls(field, {1: field.one}, var)

    @classmethod
    def constant(cls, field, c, var: str = "T") -> "Poly":
        return cls(field, {0: c}, var)

    @classmethod
    def from_list(cls, field, coeffs, var: str = "T") -> "Poly":
        """Coefficients listed low-to-high degree."""
        return cls(field, dict(enumerate(coeffs)), var)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[max(self.coeffs)]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == self.field.one

    def coeff(self, e: int):
        return self.coeffs.get(e, self.field.zero)

    def to_list(self) -> list:
        """Dense list of coefficients, low-to-high (degree must be modest)."""
        z = self.field.zero
        return [self.coeffs.get(i, z) for i in range(self.degree + 1)]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field is self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (id(self.field), tuple(sorted(self.coeffs.items(), key=lambda t: t[0])))
            )
        return self._hash

    # -- ring operations -----------------------------------------------------

    def _check(self, other) -> bool:
        return isinstance(other, Poly) and other.field is self.field

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Poly(self.field, out, self.var)

    def __neg__(self):
        return Poly(self.field, {e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not self._check(other):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                prod = ca * cb
                s = out.get(e)
                s = prod if s is None else s + prod
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Poly(self.field, out, self.var)

    def scale(self, c) -> "Poly":
        if not c:
            return Poly.zero(self.field, self.var)
        return Poly(self.field, {e: a * c for e, a in self.coeffs.items()}, self.var)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        return Poly(self.field, {e + k: c for e, c in self.coeffs.items()}, self.var)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one(self.field, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        if not self._check(other):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = other.lead.inverse()
        dg = other.degree
        rem = dict(self.coeffs)
        quo: dict = {}
        while rem:
            dr = max(rem)
            if dr < dg:
                break
            c = rem[dr] * inv_lead
            k = dr - dg
            quo[k] = c
            for e, b in other.coeffs.items():
                t = e + k
                s = rem.get(e + k, self.field.zero) - c * b
                if s:
                    rem[t] = s
                elif t in rem:
                    del rem[t]
        return Poly(self.field, quo, self.var), Poly(self.field, rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.lead.inverse())

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly"):
        """(g, s, t) with g = s*self + t*other, g monic."""
        a, b = self, other
        s0, s1 = Poly.one(self.field, self.var), Poly.zero(self.field, self.var)
        t0, t1 = Poly.zero(self.field, self.var), Poly.one(self.field, self.var)
        while not b.is_zero:
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero:
            return a, s0, t0
        inv = a.lead.inverse()
        return a.scale(inv), s0.scale(inv), t0.scale(inv)

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        out = Poly.one(self.field, self.var)
        base = self % modulus
        while n:
            if n & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return out

    def derivative(self) -> "Poly":
        p = _char_p(self.field)
        out = {}
        for e, c in self.coeffs.items():
            m = e % p
            if e == 0 or m == 0:
                continue
            s = self.field.zero
            for _ in range(m):
                s = s + c
            if s:
                out[e - 1] = s
        return Poly(self.field, out, self.var)

    # -- evaluation -----------------------------------------------------------

    def eval(self, x):
        """Evaluate at a field element or substitute another Poly."""
        if isinstance(x, Poly):
            out = Poly.zero(x.field, x.var)
            for e, c in self.coeffs.items():
                out = out + (x**e).scale(c)
            return out
        out = self.field.zero
        for e, c in sorted(self.coeffs.items(), reverse=True):
            out = out + c * x**e
        return out

    # -- display ----------------------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            cs = repr(c)
            if any(op in cs[1:] for op in "+-") or "/" in cs:
                cs = f"({cs})"
            if e == 0:
                terms.append(cs)
            else:
                xs = self.var if e == 1 else f"{self.var}^{e}"
                terms.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(terms)


# -- irreducibility and factorization over a finite coefficient field --------


def is_irreducible(f: Poly) -> bool:
    """True iff f is irreducible over its (finite) coefficient field."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    size = f.field.size
    if size is None:
        raise ValueError("irreducibility test needs a finite coefficient field")
    fm = f.monic()
    x = Poly.x(f.field, f.var)
    if x.pow_mod(size**d, fm) != x % fm:
        return False
    for r in _prime_divisors(d):
        t = x.pow_mod(size ** (d // r), fm) - x
        if t.gcd(fm).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _char_p(field) -> int:
    if hasattr(field, "p"):
        return field.p
    return field.fq.p


def _pth_root(f: Poly) -> Poly:
    """For f with zero derivative over a perfect field, g with g^p = f."""
    p = _char_p(f.field)
    size = f.field.size
    root_exp = size // p  # c -> c^(size/p) is the inverse of c -> c^p
    out = {}
    for e, c in f.coeffs.items():
        if e % p:
            raise ValueError("polynomial is not a p-th power")
        out[e // p] = c**root_exp
    return Poly(f.field, out, f.var)


def distinct_degree_factorization(f: Poly) -> list[tuple[int, Poly]]:
    """For squarefree monic f: list of (d, product of irreducible factors of degree d)."""
    size = f.field.size
    out = []
    rest = f.monic()
    x = Poly.x(f.field, f.var)
    frob = x
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest.degree, rest))
            break
        frob = frob.pow_mod(size, rest)
        g = (frob - x).gcd(rest)
        if g.degree > 0:
            out.append((d, g))
            rest = rest // g
            frob = frob % rest
    return out


def factor_degrees(f: Poly) -> list[int]:
    """Multiset (sorted list) of irreducible factor degrees, with multiplicity."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    if df.is_zero:
        inner = factor_degrees(_pth_root(f))
        return sorted(inner * _char_p(f.field))
    g = f.gcd(df)
    out = []
    squarefree = f // g
    for d, prod in distinct_degree_factorization(squarefree):
        out.extend([d] * (prod.degree // d))
    if g.degree > 0:
        out.extend(factor_degrees(g))
    return sorted(out)


def _split_equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f whose irreducible factors all have degree d."""
    if f.degree == d:
        return [f]
    size = f.field.size
    p = _char_p(f.field)
    while True:
        h = Poly(
            f.field,
            {i: f.field.random_element(rng) for i in range(f.degree)},
            f.var,
        )
        if h.is_zero:
            continue
        if p == 2:
            # trace map sum h^(2^i) over F_2, i < d*log2(size)
            k = d * (size.bit_length() - 1)
            t = h % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            g = acc.gcd(f)
        else:
            t = h.pow_mod((size**d - 1) // 2, f) - Poly.one(f.field, f.var)
            g = t.gcd(f)
        if 0 < g.degree < f.degree:
            left = _split_equal_degree(g, d, rng)
            right = _split_equal_degree(f // g, d, rng)
            return left + right


def factor(f: Poly) -> dict[Poly, int]:
    """Full factorization of f over its finite field: {monic irreducible: multiplicity}.

    Deterministic across runs (internal RNG has a fixed seed; output keys
    come out the same because splitting results are assembled into a dict
    keyed by the polynomials themselves).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(0x5EED)
    out: dict[Poly, int] = {}
    _factor_into(f.monic(), 1, out, rng)
    return out


def _factor_into(f: Poly, mult: int, out: dict, rng: random.Random):
    if f.degree == 0:
        return
    df = f.derivative()
    if df.is_zero:
        _factor_into(_pth_root(f), mult * _char_p(f.field), out, rng)
        return
    g = f.gcd(df)
    squarefree = f // g
    for d, prod in distinct_degree_factorization(squarefree):
        for irr in _split_equal_degree(prod, d, rng):
            out[irr] = out.get(irr, 0) + mult
    if g.degree > 0:
        _factor_into(g, mult, out, rng)


def multiplicity(f: Poly, p: Poly) -> int:
    """Largest k with p^k dividing f (f nonzero)."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    k = 0
    while True:
        q, r = divmod(f, p)
        if not r.is_zero:
            return k
        f = q
        k += 1


# -- enumeration ---------------------------------------------------------------


def iter_monic_polys(fq, degree: int, var: str = "T"):
    """Monic degree-`degree` polynomials over F_q in deterministic lex order.

    Order: coefficient tuples (c_0, ..., c_{degree-1}) compared
    lexicographically with c_0 first, each coefficient by its integer
    encoding.
    """
    q = fq.q
    for enc in range(q**degree):
        coeffs = {degree: fq.one}
        v = enc
        for i in range(degree - 1, -1, -1):  # c_0 extracted last = most significant
            c = v % q
            v //= q
            if c:
                coeffs[i] = fq.element(c)
        yield Poly(fq, coeffs, var)


def iter_monic_irreducibles(fq, max_degree: int, var: str = "T"):
    """All monic irreducibles of degree 1..max_degree, by (degree, lex)."""
    for d in range(1, max_degree + 1):
        for f in iter_monic_polys(fq, d, var):
            if is_irreducible(f):
                yield f
