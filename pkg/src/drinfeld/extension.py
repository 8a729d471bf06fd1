"""Extension tower F_{q^n} over F_q with exact, reasonably fast arithmetic.

Internally an element is a coordinate vector over the prime field F_p of
length e*n (e coordinates per power of the generator w).  Multiplication
runs as per-channel integer convolutions contracted against the
multiplication tensor of F_q, followed by a precomputed linear reduction
modulo the defining polynomial; everything stays exact because entries
are small residues mod p.  The defining polynomial is the
lexicographically first monic irreducible of degree n over F_q, so
towers are reproducible across runs.

This module also provides root finding: exhaustive scan on small
fields, gcd/equal-degree splitting above that, and a kernel-based
solver for F_q-linear (additive) polynomials that only needs linear
algebra over F_p.
"""

from __future__ import annotations

import functools
import random

import numpy as np

from .errors import MathPreconditionError
from .fq import FqContext, FqElement
from .polys import Poly, _prime_divisors

EXHAUSTIVE_ROOT_LIMIT = 3**8  # exhaustive evaluation below, splitting above


def _mul_tensor(field) -> np.ndarray:
    """W[a, b, c]: coordinate c of (basis_a * basis_b) over F_p."""
    dim = field.fp_dim
    w = np.zeros((dim, dim, dim), dtype=np.int64)
    basis = [
        field.from_fp([1 if i == j else 0 for j in range(dim)]) for i in range(dim)
    ]
    for a in range(dim):
        for b in range(dim):
            prod = basis[a] * basis[b]
            w[a, b, :] = field.to_fp(prod)
    return w


class _DensePolyArith:
    """Dense polynomials over a coordinatized field, as (length, dim) int
    arrays of F_p coordinates; works for F_q, residue fields and towers."""

    def __init__(self, field):
        self.field = field
        self.p = field.p
        self.dim = field.fp_dim
        self.tensor = _mul_tensor(field)

    def from_poly(self, f: Poly) -> np.ndarray:
        n = f.degree + 1
        arr = np.zeros((max(n, 1), self.dim), dtype=np.int64)
        for exp, c in f.coeffs.items():
            arr[exp, :] = self.field.to_fp(c)
        return arr

    def to_poly(self, arr: np.ndarray, var: str = "x") -> Poly:
        coeffs = {}
        for i in range(arr.shape[0]):
            c = self.field.from_fp(arr[i].tolist())
            if c:
                coeffs[i] = c
        return Poly(self.field, coeffs, var)

    @staticmethod
    def trim(arr: np.ndarray) -> np.ndarray:
        n = arr.shape[0]
        while n > 1 and not arr[n - 1].any():
            n -= 1
        return arr[:n]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        e = self.dim
        la, lb = a.shape[0], b.shape[0]
        chan = np.empty((la + lb - 1, e, e), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                chan[:, i, j] = np.convolve(a[:, i], b[:, j])
        out = np.einsum("nab,abc->nc", chan % self.p, self.tensor) % self.p
        return self.trim(out)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = max(a.shape[0], b.shape[0])
        out = np.zeros((n, self.dim), dtype=np.int64)
        out[: a.shape[0]] += a
        out[: b.shape[0]] += b
        return self.trim(out % self.p)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = max(a.shape[0], b.shape[0])
        out = np.zeros((n, self.dim), dtype=np.int64)
        out[: a.shape[0]] += a
        out[: b.shape[0]] -= b
        return self.trim(out % self.p)

    def scale(self, a: np.ndarray, c) -> np.ndarray:
        cv = np.array(self.field.to_fp(c), dtype=np.int64)
        out = np.einsum("na,abc,b->nc", a, self.tensor, cv) % self.p
        return self.trim(out)

    def lead_elem(self, a: np.ndarray):
        return self.field.from_fp(a[-1].tolist())

    def is_zero(self, a: np.ndarray) -> bool:
        return not a.any()

    def mod(self, a: np.ndarray, m: np.ndarray) -> np.ndarray:
        """Remainder of a by m (m monic not required)."""
        a = a % self.p
        dm = m.shape[0] - 1
        lead_inv = self.lead_elem(m).inverse()
        a = a.copy()
        for top in range(a.shape[0] - 1, dm - 1, -1):
            if not a[top].any():
                continue
            c = self.field.from_fp(a[top].tolist()) * lead_inv
            cv = np.array(self.field.to_fp(c), dtype=np.int64)
            piece = np.einsum("na,abc,b->nc", m, self.tensor, cv)
            a[top - dm : top + 1] = (a[top - dm : top + 1] - piece) % self.p
        return self.trim(a[:dm] if dm > 0 else np.zeros((1, self.dim), dtype=np.int64))

    def divmod(self, a: np.ndarray, m: np.ndarray):
        a = a.copy() % self.p
        dm = m.shape[0] - 1
        lead_inv = self.lead_elem(m).inverse()
        qarr = np.zeros((max(a.shape[0] - dm, 1), self.dim), dtype=np.int64)
        for top in range(a.shape[0] - 1, dm - 1, -1):
            if not a[top].any():
                continue
            c = self.field.from_fp(a[top].tolist()) * lead_inv
            cv = np.array(self.field.to_fp(c), dtype=np.int64)
            qarr[top - dm] = cv
            piece = np.einsum("na,abc,b->nc", m, self.tensor, cv)
            a[top - dm : top + 1] = (a[top - dm : top + 1] - piece) % self.p
        rem = self.trim(a[:dm] if dm > 0 else np.zeros((1, self.dim), dtype=np.int64))
        return self.trim(qarr), rem

    def gcd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        while not self.is_zero(b):
            a, b = b, self.mod(a, b)
        return a

    def powmod_x(self, exponent: int, m: np.ndarray) -> np.ndarray:
        """x^exponent mod m."""
        x = np.zeros((2, self.dim), dtype=np.int64)
        x[1, 0] = 1
        return self.powmod(x, exponent, m)

    def powmod(self, a: np.ndarray, exponent: int, m: np.ndarray) -> np.ndarray:
        out = np.zeros((1, self.dim), dtype=np.int64)
        out[0, 0] = 1
        base = self.mod(a, m)
        while exponent:
            if exponent & 1:
                out = self.mod(self.mul(out, base), m)
            base = self.mod(self.mul(base, base), m)
            exponent >>= 1
        return out

    def is_irreducible(self, f: np.ndarray) -> bool:
        d = f.shape[0] - 1
        if d < 1:
            return False
        if d == 1:
            return True
        q = self.field.q
        ring = _QuotientRing(self, f)
        x = np.zeros((2, self.dim), dtype=np.int64)
        x[1, 0] = 1
        xr = ring.embed(x)
        t = ring.pow(xr, q**d)
        if not np.array_equal(t, xr):
            return False
        for r in _prime_divisors(d):
            t = ring.pow(xr, q ** (d // r))
            g = self.gcd(f, self.sub(ring.lift(t), x))
            if g.shape[0] - 1 != 0:
                return False
        return True

    def eval_at_fq(self, f: np.ndarray, c):
        """Evaluate the dense polynomial at a base-field element."""
        acc = self.field.from_fp([0] * self.dim)
        for row in f[::-1]:
            acc = acc * c + self.field.from_fp(row.tolist())
        return acc


class _QuotientRing:
    """F_q[x]/(m) with a precomputed linear reduction, for fast powmods."""

    def __init__(self, arith: _DensePolyArith, mod_arr: np.ndarray):
        self.arith = arith
        self.p = arith.p
        self.e = arith.dim
        n = mod_arr.shape[0] - 1
        self.n = n
        lead = arith.lead_elem(mod_arr)
        if lead != arith.field.one:
            mod_arr = arith.scale(mod_arr, lead.inverse())
        self.mod_arr = mod_arr
        cols = []
        cur = arith.mod(self._basis(n), mod_arr)
        for _k in range(n - 1):
            for s in range(self.e):
                coords = [0] * self.e
                coords[s] = 1
                scaled = arith.scale(cur, arith.field.from_fp(coords)) if s else cur
                cols.append(self._flatten(scaled))
            shifted = np.zeros((cur.shape[0] + 1, self.e), dtype=np.int64)
            shifted[1:] = cur
            cur = arith.mod(shifted, mod_arr)
        self.red = (
            np.array(cols, dtype=np.int64).T % self.p
            if cols
            else np.zeros((n * self.e, 0), dtype=np.int64)
        )

    def _basis(self, k: int) -> np.ndarray:
        arr = np.zeros((k + 1, self.e), dtype=np.int64)
        arr[k, 0] = 1
        return arr

    def _flatten(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n * self.e, dtype=np.int64)
        flat = arr.reshape(-1)
        out[: flat.shape[0]] = flat
        return out

    def embed(self, a: np.ndarray) -> np.ndarray:
        """Dense polynomial -> fixed-shape (n, e) representative."""
        a = self.arith.mod(a, self.mod_arr)
        out = np.zeros((self.n, self.e), dtype=np.int64)
        out[: a.shape[0]] = a
        return out

    def lift(self, a: np.ndarray) -> np.ndarray:
        return self.arith.trim(a.copy())

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n, e = self.n, self.e
        prod = self.arith.mul(a, b)
        full = np.zeros((2 * n - 1, e), dtype=np.int64)
        full[: prod.shape[0]] = prod
        low = full[:n].reshape(-1)
        high = full[n:].reshape(-1)
        out = (low + self.red @ high) % self.p
        return out.reshape(n, e)

    def pow(self, a: np.ndarray, exponent: int) -> np.ndarray:
        out = np.zeros((self.n, self.e), dtype=np.int64)
        out[0, 0] = 1
        base = a
        while exponent:
            if exponent & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            exponent >>= 1
        return out


def _first_irreducible_dense(fq: FqContext, n: int) -> Poly:
    """Lex-first monic irreducible of degree n over F_q (dense search)."""
    arith = _DensePolyArith(fq)
    q = fq.q
    # a zero constant term means x divides the candidate, so the whole
    # c_0 = 0 prefix of the lex order can be skipped outright for n > 1
    start = q ** (n - 1) if n > 1 else 0
    for enc in range(start, q**n):
        coeffs = np.zeros((n + 1, fq.e), dtype=np.int64)
        coeffs[n, 0] = 1
        v = enc
        for i in range(n - 1, -1, -1):
            c = v % q
            v //= q
            if c:
                coeffs[i, :] = fq.to_fp(fq.element(c))
        if n > 1 and any(
            not arith.eval_at_fq(coeffs, c) for c in fq.elements()
        ):
            continue  # root in F_q, hence a linear factor
        if arith.is_irreducible(coeffs):
            return arith.to_poly(coeffs, "x")
    raise RuntimeError("no irreducible found")  # unreachable


class ExtField:
    """F_{q^n} = F_q[w]/(modulus), with numpy-backed internals."""

    def __init__(self, fq: FqContext, n: int):
        if n < 1:
            raise ValueError("tower degree must be >= 1")
        self.fq = fq
        self.n = n
        self.q = fq.q
        self.p = fq.p
        self.e = fq.e
        self.size = fq.q**n
        self.fp_dim = fq.e * n
        self.arith = _DensePolyArith(fq)
        self.modulus = (
            _first_irreducible_dense(fq, n) if n > 1 else Poly.x(fq, "x")
        )
        self._mod_arr = self.arith.from_poly(self.modulus)
        self._red = self._reduction_matrix()
        self.zero = self.element([0] * self.fp_dim)
        self.one = self.element([1] + [0] * (self.fp_dim - 1))
        gen = [0] * self.fp_dim
        if n > 1:
            gen[self.e] = 1
        self.generator = self.element(gen)
        self._frob_mats: dict[int, np.ndarray] = {}

    # -- internal vector arithmetic (vectors of length fp_dim = e*n) --------

    def _reduction_matrix(self) -> np.ndarray:
        """Maps F_p coords of x^n..x^(2n-2) (over F_q) to reduced coords."""
        n, e, dim = self.n, self.e, self.fp_dim
        if n == 1:
            return np.zeros((dim, 0), dtype=np.int64)
        cols = []
        # iteratively compute x^(n+k) mod modulus as dense arrays
        cur = self.arith.mod(self._basis_arr(n), self._mod_arr)
        for _k in range(n - 1):
            for s in range(e):
                shifted = self._fq_scale_basis(cur, s)
                cols.append(self._flatten(shifted))
            cur = self.arith.mod(self._shift_one(cur), self._mod_arr)
        return np.array(cols, dtype=np.int64).T % self.p

    def _basis_arr(self, k: int) -> np.ndarray:
        arr = np.zeros((k + 1, self.e), dtype=np.int64)
        arr[k, 0] = 1
        return arr

    def _shift_one(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros((arr.shape[0] + 1, self.e), dtype=np.int64)
        out[1:] = arr
        return out

    def _fq_scale_basis(self, arr: np.ndarray, s: int) -> np.ndarray:
        """Multiply a dense F_q-poly by the F_q basis element z^s."""
        if s == 0:
            return arr
        coords = [0] * self.e
        coords[s] = 1
        return self.arith.scale(arr, self.fq.from_fp(coords))

    def _flatten(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros(self.fp_dim, dtype=np.int64)
        flat = arr.reshape(-1)
        out[: flat.shape[0]] = flat
        return out

    def _vec_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n, e = self.n, self.e
        pa = a.reshape(n, e)
        pb = b.reshape(n, e)
        prod = self.arith.mul(pa, pb)  # length <= 2n-1
        full = np.zeros((2 * n - 1, e), dtype=np.int64)
        full[: prod.shape[0]] = prod
        low = self._flatten(full[:n])
        if n == 1:
            return low % self.p
        high = full[n:].reshape(-1)
        return (low + self._red @ high) % self.p

    def _vec_pow(self, a: np.ndarray, k: int) -> np.ndarray:
        out = np.zeros(self.fp_dim, dtype=np.int64)
        out[0] = 1
        base = a.copy()
        while k:
            if k & 1:
                out = self._vec_mul(out, base)
            base = self._vec_mul(base, base)
            k >>= 1
        return out

    def _frob_matrix(self, k: int = 1) -> np.ndarray:
        """Matrix of x -> x^(q^k) on F_p coordinates."""
        k = k % self.n if self.n > 0 else 0
        if k in self._frob_mats:
            return self._frob_mats[k]
        if k == 0:
            m = np.eye(self.fp_dim, dtype=np.int64)
        elif k == 1:
            cols = []
            for i in range(self.fp_dim):
                v = np.zeros(self.fp_dim, dtype=np.int64)
                v[i] = 1
                cols.append(self._vec_pow(v, self.q))
            m = np.array(cols, dtype=np.int64).T
        else:
            m = (self._frob_matrix(1) @ self._frob_matrix(k - 1)) % self.p
        self._frob_mats[k] = m
        return m

    # -- public element API ---------------------------------------------------

    def element(self, coords) -> "ExtElem":
        vec = np.asarray(coords, dtype=np.int64) % self.p
        if vec.shape != (self.fp_dim,):
            raise ValueError("coordinate vector of wrong length")
        return ExtElem(self, vec)

    def from_base(self, c: FqElement) -> "ExtElem":
        if c.field is not self.fq:
            raise ValueError("element from a different F_q")
        vec = np.zeros(self.fp_dim, dtype=np.int64)
        vec[: self.e] = self.fq.to_fp(c)
        return self.element(vec)

    def from_int(self, n: int) -> "ExtElem":
        return self.from_base(self.fq.from_int(n))

    def from_fq_coeffs(self, coeffs) -> "ExtElem":
        """Element sum coeffs[i] * w^i with coeffs over F_q."""
        vec = np.zeros(self.fp_dim, dtype=np.int64)
        for i, c in enumerate(coeffs):
            vec[i * self.e : (i + 1) * self.e] = self.fq.to_fp(c)
        return self.element(vec)

    def frobenius(self, x: "ExtElem", k: int = 1) -> "ExtElem":
        return ExtElem(self, (self._frob_matrix(k) @ x.vec) % self.p)

    def random_element(self, rng) -> "ExtElem":
        return self.element([rng.randrange(self.p) for _ in range(self.fp_dim)])

    def elements(self):
        for enc in range(self.size):
            coords = []
            v = enc
            for _ in range(self.fp_dim):
                coords.append(v % self.p)
                v //= self.p
            yield self.element(coords)

    def to_fp(self, x: "ExtElem") -> list[int]:
        return x.vec.tolist()

    def from_fp(self, coords) -> "ExtElem":
        return self.element(list(coords))

    def embed_fq_poly_root(self, f: Poly, which: int = 0) -> "ExtElem":
        """A deterministic root in this field of an irreducible f over F_q.

        Roots are ordered by integer encoding; `which` selects among them.
        Used to embed F_q[T]/(f) into the tower.
        """
        lifted = Poly(
            self, {e: self.from_base(c) for e, c in f.coeffs.items()}, "x"
        )
        rts = roots_in_field(lifted, self)
        if not rts:
            raise MathPreconditionError(
                f"{f!r} has no root in F_{self.q}^{self.n}"
            )
        return rts[which]

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.fq is self.fq
            and other.n == self.n
        )

    def __hash__(self):
        return hash((id(self.fq), self.n))

    def __repr__(self):
        return f"F_{self.q}^{self.n}"


@functools.cache
def ext_field(fq: FqContext, n: int) -> ExtField:
    return ExtField(fq, n)


class ExtElem:
    """Element of F_{q^n}; immutable, ordered by integer encoding."""

    __slots__ = ("field", "vec", "_key")

    def __init__(self, field: ExtField, vec: np.ndarray):
        self.field = field
        self.vec = vec
        vec.setflags(write=False)
        self._key = None

    @property
    def key(self) -> int:
        """Integer encoding sum c_i p^i (higher coordinates weigh more)."""
        if self._key is None:
            k = 0
            for c in reversed(self.vec.tolist()):
                k = k * self.field.p + c
            self._key = k
        return self._key

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.vec.tolist())

    def fq_coeffs(self) -> list[FqElement]:
        """Representation as a polynomial in w over F_q, low-to-high."""
        e = self.field.e
        return [
            self.field.fq.from_fp(self.vec[i * e : (i + 1) * e].tolist())
            for i in range(self.field.n)
        ]

    def _ok(self, other):
        return isinstance(other, ExtElem) and other.field == self.field

    def __add__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ExtElem(self.field, (self.vec + other.vec) % self.field.p)

    def __neg__(self):
        return ExtElem(self.field, (-self.vec) % self.field.p)

    def __sub__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ExtElem(self.field, (self.vec - other.vec) % self.field.p)

    def __mul__(self, other):
        if not self._ok(other):
            return NotImplemented
        return ExtElem(self.field, self.field._vec_mul(self.vec, other.vec))

    def inverse(self) -> "ExtElem":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if not self:
            if n == 0:
                return self.field.one
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return self
        n %= self.field.size - 1
        return ExtElem(self.field, self.field._vec_pow(self.vec, n))

    def __bool__(self):
        return bool(self.vec.any())

    def __eq__(self, other):
        return self._ok(other) and np.array_equal(other.vec, self.vec)

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        coeffs = self.fq_coeffs()
        terms = []
        for i, c in enumerate(coeffs):
            if not c:
                continue
            cs = repr(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                ws = "w" if i == 1 else f"w^{i}"
                terms.append(ws if cs == "1" else f"{cs}*{ws}")
        return " + ".join(reversed(terms)) if terms else "0"


# -- root finding -------------------------------------------------------------


def roots_in_field(f: Poly, field: ExtField) -> list["ExtElem"]:
    """All distinct roots of f (coefficients in `field`) lying in `field`.

    Exhaustive evaluation below EXHAUSTIVE_ROOT_LIMIT, gcd splitting with
    x^(size) - x above.  Deterministic (sorted by integer encoding).
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    if field.size <= EXHAUSTIVE_ROOT_LIMIT:
        out = [x for x in field.elements() if not f.eval(x)]
        return sorted(out, key=lambda r: r.key)
    fm = f.monic()
    x = Poly.x(field, f.var)
    linear_part = (x.pow_mod(field.size, fm) - x).gcd(fm)
    return sorted(_extract_roots(linear_part, field), key=lambda r: r.key)


def _extract_roots(g: Poly, field: ExtField) -> list["ExtElem"]:
    """Roots of g = product of distinct linear factors over `field`."""
    if g.degree == 0:
        return []
    if g.degree == 1:
        g = g.monic()
        return [-g.coeff(0)]
    rng = random.Random(g.degree * 7919 + field.size % 104729)
    x = Poly.x(field, g.var)
    one = Poly.one(field, g.var)
    while True:
        delta = field.random_element(rng)
        shifted = x + Poly.constant(field, delta, g.var)
        if field.p == 2:
            k = field.fp_dim  # size = 2^k; trace to F_2
            t = shifted % g
            acc = t
            for _ in range(k - 1):
                t = (t * t) % g
                acc = acc + t
            h = acc.gcd(g)
        else:
            t = shifted.pow_mod((field.size - 1) // 2, g) - one
            h = t.gcd(g)
        if 0 < h.degree < g.degree:
            return _extract_roots(h, field) + _extract_roots(g // h, field)


def roots_in_extension(f: Poly, n: int) -> list["ExtElem"]:
    """All roots of f in F_{q^{m n}}, where f has coefficients in F_{q^m}.

    The coefficient field may be F_q itself (m = 1) or an ExtField.
    Roots come back as elements of the degree-(m*n) tower over F_q, in
    deterministic order.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    base = f.field
    if isinstance(base, FqContext):
        target = ext_field(base, n)
        lifted = Poly(
            target, {e: target.from_base(c) for e, c in f.coeffs.items()}, "x"
        )
        return roots_in_field(lifted, target)
    if isinstance(base, ExtField):
        target = ext_field(base.fq, base.n * n)
        emb = embed_ext(base, target)
        lifted = Poly(target, {e: emb(c) for e, c in f.coeffs.items()}, "x")
        return roots_in_field(lifted, target)
    raise TypeError("roots_in_extension expects coefficients over F_{q^m}")


@functools.cache
def _embedding_image(src: ExtField, dst: ExtField) -> "ExtElem":
    """Deterministic image of src's generator inside dst."""
    if dst.n % src.n:
        raise ValueError("no embedding: tower degree does not divide")
    if src.n == 1:
        return dst.from_base(src.fq.one)
    lifted = Poly(
        dst,
        {e: dst.from_base(c) for e, c in src.modulus.coeffs.items()},
        "x",
    )
    rts = roots_in_field(lifted, dst)
    return rts[0]


def embed_ext(src: ExtField, dst: ExtField):
    """Field embedding F_{q^m} -> F_{q^{mn}} as a callable, deterministic."""
    img = _embedding_image(src, dst)
    powers = [dst.one]
    for _ in range(src.n - 1):
        powers.append(powers[-1] * img)

    def embed(x: "ExtElem") -> "ExtElem":
        out = dst.zero
        for c, wp in zip(x.fq_coeffs(), powers):
            if c:
                out = out + wp * dst.from_base(c)
        return out

    return embed


def kernel_of_additive(coeffs: list["ExtElem"], field: ExtField) -> list["ExtElem"]:
    """All roots in `field` of the additive map x -> sum coeffs[j] x^(q^j).

    Pure linear algebra over F_p: builds the F_p-matrix of the map and
    enumerates its kernel, so it stays fast even for large towers.
    Returned sorted by integer encoding.
    """
    dim = field.fp_dim
    p = field.p
    op = np.zeros((dim, dim), dtype=np.int64)
    for j, c in enumerate(coeffs):
        if not c:
            continue
        frob_j = field._frob_matrix(j)
        mc = _mult_matrix(field, c)
        op = (op + mc @ frob_j) % p
    basis = _nullspace_mod_p(op, p)
    # enumerate all F_p-combinations of the kernel basis
    roots = []
    k = len(basis)
    for enc in range(p**k):
        v = np.zeros(dim, dtype=np.int64)
        t = enc
        for b in basis:
            c = t % p
            t //= p
            if c:
                v = (v + c * b) % p
        roots.append(ExtElem(field, v))
    return sorted(roots, key=lambda r: r.key)


def _mult_matrix(field: ExtField, c: "ExtElem") -> np.ndarray:
    """F_p-matrix of multiplication by c on `field`."""
    dim = field.fp_dim
    cols = np.empty((dim, dim), dtype=np.int64)
    for i in range(dim):
        v = np.zeros(dim, dtype=np.int64)
        v[i] = 1
        cols[:, i] = field._vec_mul(c.vec, v)
    return cols


def _nullspace_mod_p(m: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right nullspace of m over F_p."""
    m = m.copy() % p
    rows, cols = m.shape
    pivot_col_of_row = []
    r = 0
    for c in range(cols):
        pivot = None
        for rr in range(r, rows):
            if m[rr, c] % p:
                pivot = rr
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for rr in range(rows):
            if rr != r and m[rr, c] % p:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivot_col_of_row.append(c)
        r += 1
        if r == rows:
            break
    pivot_cols = set(pivot_col_of_row)
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for row_idx, pc in enumerate(pivot_col_of_row):
            v[pc] = (-m[row_idx, fc]) % p
        basis.append(v)
    return basis


def solve_mod_p(m: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of m x = rhs over F_p, or None."""
    rows, cols = m.shape
    aug = np.concatenate([m % p, (rhs % p).reshape(rows, 1)], axis=1)
    r = 0
    pivot_col_of_row = []
    for c in range(cols):
        pivot = None
        for rr in range(r, rows):
            if aug[rr, c] % p:
                pivot = rr
                break
        if pivot is None:
            continue
        if pivot != r:
            aug[[r, pivot]] = aug[[pivot, r]]
        inv = pow(int(aug[r, c]), p - 2, p)
        aug[r] = (aug[r] * inv) % p
        for rr in range(rows):
            if rr != r and aug[rr, c] % p:
                aug[rr] = (aug[rr] - aug[rr, c] * aug[r]) % p
        pivot_col_of_row.append(c)
        r += 1
        if r == rows:
            break
    for rr in range(r, rows):
        if aug[rr, cols] % p:
            return None
    x = np.zeros(cols, dtype=np.int64)
    for row_idx, pc in enumerate(pivot_col_of_row):
        x[pc] = aug[row_idx, cols]
    return x
