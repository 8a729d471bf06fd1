"""Exact arithmetic in the finite field F_q, q = p^e.

Elements are stored as a single integer encoding sum(c_i * p^i) of their
coordinate vector (c_0, ..., c_{e-1}) over the prime field, c_i in
{0, ..., p-1}.  For e > 1 the field is F_p[z]/(m(z)) where m is the
lexicographically first monic irreducible of degree e over F_p
(coefficients compared low-to-high as integers).  Small fields intern
their elements and run on precomputed addition/multiplication tables.
"""

from __future__ import annotations

import functools

_TABLE_LIMIT = 512  # build full op tables when q <= this


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomial helpers over F_p (int lists, low-to-high) --------------


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
        _fp_trim(a)
    return a


def _fp_powmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while n:
        if n & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        n >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) == x mod f, and no fixed subfield of proper index
    if _fp_powmod(x, p**d, f, p) != _fp_mod(x, f, p):
        return False
    for r in _prime_divisors(d):
        t = _fp_powmod(x, p ** (d // r), f, p)
        t = [(c - xc) % p for c, xc in _zip_pad(t, x)]
        if len(_fp_gcd(_fp_trim(t), f, p)) - 1 != 0:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


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


def _first_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically first monic irreducible of degree e over F_p."""
    for enc in range(p**e):
        coeffs = []
        v = enc
        for _ in range(e):  # big-endian digits: c_0 is most significant
            coeffs.append(v % p)
            v //= p
        coeffs.reverse()  # now (c_0, ..., c_{e-1}) with c_0 compared first
        f = coeffs + [1]
        if _fp_is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible of degree {e} over F_{p}")


class FqContext:
    """The finite field F_q with q = p^e; also a coefficient-field descriptor.

    Attributes: p, e, q, and for e > 1 the defining modulus as an int
    list (low-to-high, monic).  Use :func:`fq_make` to construct;
    contexts are cached so equality is identity.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree e must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = _first_irreducible(p, e) if e > 1 else None
        self.size = self.q
        self.fp_dim = e
        self._elems = None
        self._mul_table = None
        self._inv_table = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()
        self.zero = self.element(0)
        self.one = self.element(1)
        self.generator = self.element(p) if e > 1 else None  # the class of z

    # -- construction ---------------------------------------------------

    def _build_tables(self):
        q, p, e = self.q, self.p, self.e
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            av = self._decode(a)
            for b in range(a + 1):
                prod = _fp_mul(av, self._decode(b), p)
                if e > 1:
                    prod = _fp_mod(prod, self.modulus, p)
                enc = self._encode(prod)
                mul[a][b] = enc
                mul[b][a] = enc
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv
        self._elems = [FqElement(self, v, _intern=True) for v in range(q)]

    def _decode(self, val: int) -> list[int]:
        out = []
        while val:
            out.append(val % self.p)
            val //= self.p
        return out

    def _encode(self, coeffs: list[int]) -> int:
        val = 0
        for c in reversed(coeffs):
            val = val * self.p + c
        return val

    def element(self, val: int) -> "FqElement":
        """Element with the given integer encoding (0 <= val < q)."""
        if not 0 <= val < self.q:
            raise ValueError(f"encoding {val} out of range for F_{self.q}")
        if self._elems is not None:
            return self._elems[val]
        return FqElement(self, val, _intern=True)

    def from_int(self, n: int) -> "FqElement":
        """Image of the integer n under the prime-field embedding."""
        return self.element(n % self.p)

    def from_coords(self, coords) -> "FqElement":
        coords = list(coords)
        if len(coords) > self.e:
            raise ValueError("too many coordinates")
        return self.element(self._encode([c % self.p for c in coords]))

    def elements(self):
        for v in range(self.q):
            yield self.element(v)

    def random_element(self, rng) -> "FqElement":
        return self.element(rng.randrange(self.q))

    # -- arithmetic on encodings -----------------------------------------

    def _add(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _neg(self, a: int) -> int:
        p = self.p
        if self.e == 1:
            return (-a) % p
        out, mult = 0, 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def _mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        prod = _fp_mul(self._decode(a), self._decode(b), self.p)
        if self.e > 1:
            prod = _fp_mod(prod, self.modulus, self.p)
        return self._encode(prod)

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self._inv_table is not None:
            return self._inv_table[a]
        # a^(q-2)
        out, base, n = 1, a, self.q - 2
        while n:
            if n & 1:
                out = self._mul(out, base)
            base = self._mul(base, base)
            n >>= 1
        return out

    # -- field-descriptor protocol (shared with the other coefficient fields)

    def frobenius(self, x: "FqElement", k: int = 1) -> "FqElement":
        return x  # x^q = x on F_q

    def from_base(self, c: "FqElement") -> "FqElement":
        if c.field is not self:
            raise ValueError("element from a different F_q")
        return c

    def to_fp(self, x: "FqElement") -> list[int]:
        v = self._decode(x.val)
        return v + [0] * (self.e - len(v))

    def from_fp(self, coords) -> "FqElement":
        return self.from_coords(coords)

    def __repr__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q} (F_{self.p}[z])"


class FqElement:
    """An element of F_q, hashable and immutable."""

    __slots__ = ("field", "val")

    def __init__(self, field: FqContext, val: int, _intern: bool = False):
        if not _intern:
            raise TypeError("use FqContext.element / from_int")
        self.field = field
        self.val = val

    def __add__(self, other):
        if not isinstance(other, FqElement) or other.field is not self.field:
            return NotImplemented
        return self.field.element(self.field._add(self.val, other.val))

    def __sub__(self, other):
        if not isinstance(other, FqElement) or other.field is not self.field:
            return NotImplemented
        return self.field.element(
            self.field._add(self.val, self.field._neg(other.val))
        )

    def __neg__(self):
        return self.field.element(self.field._neg(self.val))

    def __mul__(self, other):
        if not isinstance(other, FqElement) or other.field is not self.field:
            return NotImplemented
        return self.field.element(self.field._mul(self.val, other.val))

    def __truediv__(self, other):
        if not isinstance(other, FqElement) or other.field is not self.field:
            return NotImplemented
        return self.field.element(
            self.field._mul(self.val, self.field._inv(other.val))
        )

    def inverse(self):
        return self.field.element(self.field._inv(self.val))

    def __pow__(self, n: int):
        fld = self.field
        if self.val == 0:
            if n == 0:
                return fld.one
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return self
        n %= fld.q - 1
        out, base = fld.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FqElement)
            and other.field is self.field
            and other.val == self.val
        )

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __bool__(self):
        return self.val != 0

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.field.to_fp(self))

    def __repr__(self):
        fld = self.field
        if fld.e == 1:
            return str(self.val)
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("z" if c == 1 else f"{c}*z")
            else:
                terms.append(f"z^{i}" if c == 1 else f"{c}*z^{i}")
        return " + ".join(reversed(terms)) if terms else "0"


@functools.cache
def fq_make(p: int, e: int = 1) -> FqContext:
    """Construct (and cache) the finite field F_{p^e}."""
    return FqContext(p, e)
