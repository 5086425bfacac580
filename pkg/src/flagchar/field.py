"""Finite fields F_q for small q, the additive character theta, and Z[zeta_p].

Elements of F_q are plain integers in [0, q): the base-p digits of the
integer are the coefficients of the element in the polynomial basis
1, x, ..., x^(e-1) (lowest digit = constant term).  Arithmetic on scalars
and on numpy arrays goes through the FieldSpec methods.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    PrimeMismatch,
    ReducibleModulus,
    UnsupportedSize,
)

TABLE_LIMIT = 2**10

# monic, lowest coefficient first
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
}


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for t in range(dm + 1):
                a[k - dm + t] = (a[k - dm + t] - c * m[t]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m, p):
    e = len(m) - 1
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            d = list(low) + [1]
            if not any(_poly_mod(m, d, p)[:deg]):
                return False
    return True


class FieldSpec:
    """The field F_q, q = p^e, with table-driven arithmetic."""

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise UnsupportedSize(f"extension degree {e} < 1")
        q = p**e
        if q > 2**16:
            raise UnsupportedSize(f"q = {q} exceeds 2^16")
        if e > 1:
            if modulus is None:
                if (p, e) not in BUILTIN_MODULI:
                    raise UnsupportedSize(f"no built-in modulus for q = {p}^{e}")
                modulus = BUILTIN_MODULI[(p, e)]
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) == e:
                modulus = modulus + (1,)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus {modulus} is not monic of degree {e}")
            if not _is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
            if q > TABLE_LIMIT:
                raise UnsupportedSize(f"extension field of size {q} > {TABLE_LIMIT}")
        else:
            modulus = ()
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self.prime = e == 1
        self.has_tables = q <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()

    # -- construction -------------------------------------------------------

    def _digits(self, a):
        return [(a // self.p**k) % self.p for k in range(self.e)]

    def _from_digits(self, ds):
        return sum(int(d) % self.p * self.p**k for k, d in enumerate(ds))

    def _build_tables(self):
        q, p = self.q, self.p
        els = np.arange(q)
        if self.prime:
            add = (els[:, None] + els[None, :]) % p
            mul = (els[:, None] * els[None, :]) % p
        else:
            digs = np.array([self._digits(a) for a in range(q)])
            weights = p ** np.arange(self.e)
            add = ((digs[:, None, :] + digs[None, :, :]) % p) @ weights
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    prod = np.convolve(digs[a], digs[b]) % p
                    c = self._from_digits(_poly_mod(prod, self.modulus, p))
                    mul[a, b] = mul[b, a] = c
        neg = np.argmin(add, axis=1)  # add[a, neg[a]] == 0
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        # trace to the prime field: a + a^p + ... + a^(p^(e-1))
        theta = np.zeros(q, dtype=np.int64)
        for a in range(q):
            t, x = 0, a
            for _ in range(self.e):
                t = add[t, x]
                y = 1
                for _ in range(p):
                    y = mul[y, x]
                x = y
            theta[a] = t
        if np.any(theta >= p):
            raise ReducibleModulus("trace left the prime field")
        dt = np.int16
        self.add_t = add.astype(dt)
        self.mul_t = mul.astype(dt)
        self.neg_t = neg.astype(dt)
        self.inv_t = inv.astype(dt)
        self.theta_t = theta.astype(dt)
        self.sub_t = self.add_t[:, self.neg_t].astype(dt)
        # theta(a*b): the trace pairing used for Fourier transforms on V_J
        self.pair_t = self.theta_t[self.mul_t].astype(dt)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.prime:
            return f"FieldSpec(F_{self.q})"
        return f"FieldSpec(F_{self.q}, modulus={self.modulus})"

    # -- elementwise arithmetic (ints or integer arrays) ---------------------

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        return self.add_t[a, b]

    def sub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self.sub_t[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        return self.neg_t[a]

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self.mul_t[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("inverse of 0 in " + repr(self))
        if self.prime:
            return pow(int(a), self.p - 2, self.p) if np.ndim(a) == 0 else self.inv_t[a]
        return self.inv_t[a]

    def theta(self, a):
        """Exponent k with theta(a) = zeta_p^k."""
        if self.prime:
            return a % self.p
        return self.theta_t[a]

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def matmul(self, A, B):
        """Matrix product over F_q; broadcasts over leading batch axes."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.prime:
            return np.matmul(A, B) % self.p
        n = A.shape[-1]
        C = None
        for k in range(n):
            term = self.mul_t[A[..., :, k, None], B[..., None, k, :]]
            C = term if C is None else self.add_t[C, term]
        return C.astype(np.int64)

    # -- formatting ----------------------------------------------------------

    def format(self, a):
        """Base-p digit string, constant term last (e.g. 'x+1' in F_4 is '11')."""
        return "".join(str(d) for d in reversed(self._digits(int(a))))

    def parse(self, text):
        text = str(text).strip()
        if self.prime:
            return int(text) % self.p
        if len(text) != self.e or any(not c.isdigit() or int(c) >= self.p for c in text):
            raise ValueError(f"bad element literal {text!r} for {self!r}")
        return self._from_digits([int(c) for c in reversed(text)])

    def elem(self, a):
        return FieldElem(self, int(a))


@functools.lru_cache(maxsize=None)
def _cached_field(p, e, modulus):
    return FieldSpec(p, e, modulus)


def fq_make(p, e=1, modulus=None):
    """Validated FieldSpec for q = p^e (cached per argument tuple)."""
    return _cached_field(p, e, tuple(modulus) if modulus is not None else None)


def field_of_order(q):
    """FieldSpec for an integer prime power q, using built-in moduli."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return fq_make(p, e)


@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} out of range for {self.field!r}")

    def _other(self, b):
        if not isinstance(b, FieldElem):
            return self.field.elem(int(b) % self.field.q)
        if b.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {b.field!r}")
        return b

    def __add__(self, b):
        b = self._other(b)
        return FieldElem(self.field, int(self.field.add(self.value, b.value)))

    def __sub__(self, b):
        b = self._other(b)
        return FieldElem(self.field, int(self.field.sub(self.value, b.value)))

    def __mul__(self, b):
        b = self._other(b)
        return FieldElem(self.field, int(self.field.mul(self.value, b.value)))

    def __neg__(self):
        return FieldElem(self.field, int(self.field.neg(self.value)))

    def inverse(self):
        return FieldElem(self.field, int(self.field.inv(self.value)))

    def __truediv__(self, b):
        return self * self._other(b).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field.format(self.value)}@F{self.field.q}"


def fq_arith(op, a, b=None):
    """Dispatch one of add, sub, mul, inv, neg on FieldElems."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def theta(a):
    """Exponent k in Z/p with theta(a) = zeta_p^k; theta is zeta_p^Tr(a)."""
    return int(a.field.theta(a.value))


# -- Z[zeta_p] -------------------------------------------------------------


def canonical(vec):
    """Reduce a length-p coefficient vector (basis 1..zeta^(p-1)) so its last entry is 0.

    Works on the last axis of an integer array.
    """
    vec = np.asarray(vec, dtype=np.int64)
    return vec - vec[..., -1:]


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2)."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != max(self.p - 1, 1):
            raise ValueError("wrong number of coefficients")

    @classmethod
    def from_vector(cls, p, vec):
        """From a length-p vector of coefficients of 1, zeta, ..., zeta^(p-1)."""
        v = canonical(vec)
        if p == 2:
            # zeta = -1
            return cls(2, (int(v[0]),))
        return cls(p, tuple(int(x) for x in v[: p - 1]))

    @classmethod
    def integer(cls, p, k):
        v = np.zeros(p, dtype=np.int64)
        v[0] = k
        return cls.from_vector(p, v)

    @classmethod
    def root_of_unity(cls, p, k):
        v = np.zeros(p, dtype=np.int64)
        v[k % p] = 1
        return cls.from_vector(p, v)

    def vector(self):
        v = np.zeros(self.p, dtype=np.int64)
        if self.p == 2:
            v[0] = self.coeffs[0]
        else:
            v[: self.p - 1] = self.coeffs
        return v

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if other.p != self.p:
            raise PrimeMismatch(f"Z[zeta_{self.p}] vs Z[zeta_{other.p}]")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycInt.from_vector(self.p, self.vector() + other.vector())

    __radd__ = __add__

    def __neg__(self):
        return CycInt.from_vector(self.p, -self.vector())

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        a, b = self.vector(), other.vector()
        out = np.zeros(self.p, dtype=np.int64)
        for k in range(self.p):
            out += a[k] * np.roll(b, k)
        return CycInt.from_vector(self.p, out)

    __rmul__ = __mul__

    def conj(self):
        v = self.vector()
        return CycInt.from_vector(self.p, np.roll(v[::-1], 1))

    def scale(self, k):
        return CycInt.from_vector(self.p, k * self.vector())

    def trace(self):
        """Trace from Q(zeta_p) down to Q."""
        if self.p == 2:
            return self.coeffs[0]
        v = self.vector()
        return int(self.p * v[0] - v.sum())

    def is_integer(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return isinstance(other, CycInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return "CycInt[" + (" + ".join(terms) or "0") + f"; p={self.p}]"


def cyc_arith(op, *operands):
    """Dispatch add, mul, conj, root_of_unity, inner_scale on CycInts."""
    if op == "add":
        a, b = operands
        return a + b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "conj":
        (a,) = operands
        return a.conj()
    if op == "root_of_unity":
        p, k = operands
        return CycInt.root_of_unity(p, k)
    if op == "inner_scale":
        a, k = operands
        return a.scale(k)
    raise ValueError(f"unknown cyclotomic operation {op!r}")
