"""Exact arithmetic in the tower GF(p) <= GF(r) <= GF(q) <= GF(q^2).

Every element of every field in the tower is stored as its encoding in
GF(q^2): the integer whose base-p digits are the coefficients (low to high)
of the representing polynomial modulo the tower's modulus.  Subfields are
the sets fixed by the matching Frobenius power, so one set of tables serves
the whole tower.

Scalar work goes through :class:`FieldElement`; bulk work goes through the
vectorised methods of :class:`Field` and :class:`FieldTower`, which accept
and return integer numpy arrays of encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

#: Largest supported top-field order.  Log/exp tables are O(q^2).
MAX_FIELD_ORDER = 1 << 16
#: Up to this order the tower keeps dense q^2 x q^2 add/mul tables.
DENSE_TABLE_LIMIT = 1024

DTYPE = np.int64


class FieldMismatchError(ValueError):
    """Operands live in different fields of the tower."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over GF(p), coefficient lists low-to-high -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for k, bk in enumerate(b):
            a[shift + k] = (a[shift + k] - coef * bk) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim(list(modulus))
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(f, list(low) + [1], p):
                return False
    return True


def _digits(value: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        value, c = divmod(value, p)
        out.append(c)
    return out


def _encode(digits: Sequence[int], p: int) -> int:
    value = 0
    for c in reversed(digits):
        value = value * p + c
    return value


def _powers_of_x(modulus: Sequence[int], p: int) -> list[int] | None:
    """Encodings of x^0, x^1, ...; None unless x has order p^n - 1."""
    n = len(modulus) - 1
    order = p**n - 1
    lead_inv = pow(modulus[-1], p - 2, p)
    red = [(-c * lead_inv) % p for c in modulus[:-1]]
    digits = [1] + [0] * (n - 1)
    out = [1]
    for k in range(1, order + 1):
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            digits = [(d + top * c) % p for d, c in zip(digits, red)]
        enc = _encode(digits, p)
        if enc == 1:
            return out if k == order else None
        out.append(enc)
    return None


def _powers_of(gen: list[int], modulus: Sequence[int], p: int) -> list[int] | None:
    n = len(modulus) - 1
    order = p**n - 1
    cur = [1]
    out = [1]
    for k in range(1, order + 1):
        cur = _poly_mulmod(cur, gen, modulus, p)
        enc = _encode(cur + [0] * (n - len(cur)), p)
        if enc == 1:
            return out if k == order else None
        out.append(enc)
    return None


def find_primitive_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic degree-n polynomial over GF(p) for which x is primitive."""
    for low in range(1, p**n):
        coeffs = _digits(low, p, n)
        if coeffs[0] == 0:
            continue
        modulus = coeffs + [1]
        if _powers_of_x(modulus, p) is not None:
            return tuple(modulus)
    raise ValueError(f"no primitive polynomial of degree {n} over GF({p})")


# -- the tower ---------------------------------------------------------------

class FieldTower:
    """The chain GF(p) <= GF(r) <= GF(q) <= GF(q^2) with r = p^e, q = r^m.

    The modulus is verified irreducible on construction, and the
    multiplicative generator is checked to have order q^2 - 1.  Instances
    are immutable and safe to share.
    """

    def __init__(self, p: int, e: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1 or m < 1:
            raise ValueError("exponents e and m must be >= 1")
        degree = 2 * m * e
        if p**degree > MAX_FIELD_ORDER:
            raise ValueError(f"GF({p}^{degree}) exceeds the table bound {MAX_FIELD_ORDER}")

        self.p = p
        self.e = e
        self.m = m
        self.r = p**e
        self.q = self.r**m
        self.q2 = self.q**2
        self.h = 2 * m
        self.degree = degree

        if modulus is None:
            modulus = find_primitive_modulus(p, degree)
            powers = _powers_of_x(list(modulus), p)
            gen = [0, 1]
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(_trim(list(modulus))) != degree + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {degree}")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
            powers, gen = None, None
            for cand in range(p, self.q2):
                gen = _digits(cand, p, degree)
                powers = _powers_of(_trim(list(gen)), modulus, p)
                if powers is not None:
                    break
        assert powers is not None and len(powers) == self.q2 - 1
        self.modulus: tuple[int, ...] = tuple(modulus)
        self.generator = _encode(_trim(list(gen)), p)

        order = self.q2 - 1
        self.order = order
        exp = np.array(powers + powers, dtype=DTYPE)
        log = np.full(self.q2, -1, dtype=DTYPE)
        log[exp[:order]] = np.arange(order, dtype=DTYPE)
        if np.count_nonzero(log[1:] < 0):
            raise ValueError("log/exp tables are inconsistent")
        self.exp = exp
        self.log = log

        # digit-wise negation and "+1" give the additive structure
        digits = np.array([_digits(v, p, degree) for v in range(self.q2)], dtype=DTYPE)
        weights = p ** np.arange(degree, dtype=DTYPE)
        self._digits = digits
        self._weights = weights
        self.neg_table = ((-digits) % p) @ weights
        plus_one = digits.copy()
        plus_one[:, 0] = (plus_one[:, 0] + 1) % p
        plus_one = plus_one @ weights
        # zech[d] = log(1 + g^d), -1 where 1 + g^d = 0
        self.zech = log[plus_one[exp[:order]]]

        inv = np.full(self.q2, -1, dtype=DTYPE)
        inv[1:] = exp[(order - log[1:]) % order]
        self.inv_table = inv

        self._dense = self.q2 <= DENSE_TABLE_LIMIT
        if self._dense:
            allv = np.arange(self.q2, dtype=DTYPE)
            self.mul_table = self._mul_log(allv[:, None], allv[None, :]).ravel()
            if p == 2:
                self.add_table = (allv[:, None] ^ allv[None, :]).ravel()
            else:
                self.add_table = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).ravel()

    # -- identity / serialisation ------------------------------------------

    def describe(self) -> dict:
        return {
            "characteristic": self.p,
            "r": self.r,
            "m": self.m,
            "modulus": list(self.modulus),
        }

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, r={self.r}, q={self.q}, q2={self.q2}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldTower)
            and (self.p, self.e, self.m, self.modulus) == (other.p, other.e, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.m, self.modulus))

    def __getstate__(self):
        return (self.p, self.e, self.m, self.modulus)

    def __setstate__(self, state):
        self.__init__(*state)

    # -- vectorised arithmetic on encodings --------------------------------

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        s = self.log[a] + self.log[b]
        out = self.exp[np.where(s < 0, 0, s)]
        return np.where((a == 0) | (b == 0), 0, out)

    def add_zech(self, a, b):
        """Addition through Zech logarithms; valid in any characteristic."""
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        la = self.log[a]
        lb = self.log[b]
        d = (lb - la) % self.order
        z = self.zech[d]
        out = np.where(z < 0, 0, self.exp[np.where(z < 0, 0, la % self.order + z)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def add(self, a, b):
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        if self.p == 2:
            return a ^ b
        if self._dense:
            return self.add_table[a * self.q2 + b]
        return self.add_zech(a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=DTYPE)
        if self.p == 2:
            return a.copy()
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        if self._dense:
            return self.mul_table[a * self.q2 + b]
        return self._mul_log(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=DTYPE)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def power(self, a, k: int):
        """a**k elementwise; 0**0 == 1."""
        a = np.asarray(a, dtype=DTYPE)
        if k == 0:
            return np.ones_like(a)
        if k < 0:
            a = self.inv(a)
            k = -k
        la = self.log[a]
        out = self.exp[(np.where(la < 0, 0, la) * (k % self.order)) % self.order]
        return np.where(a == 0, 0, out)

    def frobenius(self, a, k: int = 1):
        """a ** (r**k), computed as a multiplication of the discrete log by r**k."""
        return self.power(a, pow(self.r, k % self.h, self.order) if self.order > 1 else 1)

    def trace(self, a):
        """Relative trace GF(q^2) -> GF(r): a + a^r + ... + a^(r^(h-1))."""
        return self.trace_table[np.asarray(a, dtype=DTYPE)]

    @cached_property
    def trace_table(self) -> np.ndarray:
        allv = np.arange(self.q2, dtype=DTYPE)
        acc = np.zeros(self.q2, dtype=DTYPE)
        for k in range(self.h):
            acc = self.add(acc, self.frobenius(allv, k))
        return acc

    # -- subfields ---------------------------------------------------------

    def subfield_elements(self, order: int) -> np.ndarray:
        """Sorted encodings of GF(order) inside GF(q^2)."""
        return self.field(order).elements

    def field(self, order: int) -> "Field":
        return _field(self, order)

    @property
    def top(self) -> "Field":
        return self.field(self.q2)

    @property
    def sub(self) -> "Field":
        return self.field(self.r)

    def element(self, value: int, order: int | None = None) -> "FieldElement":
        return FieldElement(self, self.q2 if order is None else order, int(value))

    # -- GF(r)-bases of GF(q^2) --------------------------------------------

    def r_basis(self, theta: int | None = None) -> tuple[int, ...]:
        """Power basis 1, theta, ..., theta^(h-1) of GF(q^2) over GF(r).

        ``theta`` defaults to the multiplicative generator; any element of
        degree h over GF(r) works.
        """
        theta = self.generator if theta is None else int(theta)
        return tuple(int(self.power(theta, k)) for k in range(self.h))

    def coordinate_table(self, basis: Sequence[int] | None = None) -> np.ndarray:
        """Table T with T[a] = GF(r)-coordinates of a in ``basis``; shape (q2, h).

        Raises ValueError if ``basis`` is not a GF(r)-basis.
        """
        basis = self.r_basis() if basis is None else tuple(int(b) for b in basis)
        key = basis
        cache = self.__dict__.setdefault("_coord_cache", {})
        if key in cache:
            return cache[key]
        if len(basis) != self.h:
            raise ValueError(f"a GF({self.r})-basis of GF({self.q2}) has {self.h} elements")
        sub = self.subfield_elements(self.r)
        values = np.zeros(1, dtype=DTYPE)
        coords = np.zeros((1, 0), dtype=DTYPE)
        for b in basis:
            terms = self.mul(sub, b)
            values = self.add(values[:, None], terms[None, :]).ravel()
            coords = np.concatenate(
                [np.repeat(coords, len(sub), axis=0), np.tile(sub, len(coords))[:, None]], axis=1
            )
        table = np.full((self.q2, self.h), -1, dtype=DTYPE)
        table[values] = coords
        if np.any(table < 0):
            raise ValueError("basis elements are not linearly independent over GF(r)")
        table.setflags(write=False)
        cache[key] = table
        return table

    def coords_in_r_basis(self, a: int, basis: Sequence[int] | None = None) -> np.ndarray:
        return self.coordinate_table(basis)[int(a)].copy()

    def combine(self, coords: Iterable[int], basis: Sequence[int] | None = None) -> int:
        basis = self.r_basis() if basis is None else basis
        acc = 0
        for c, b in zip(coords, basis):
            acc = int(self.add(acc, self.mul(c, b)))
        return acc

    def rth_root_preimage(self, beta: int) -> int:
        """The unique alpha with alpha ** (r ** (h-1)) == beta, i.e. alpha = beta ** r."""
        return int(self.frobenius(beta, 1))


def make_tower(p: int, e: int, m: int, modulus: Sequence[int] | None = None) -> FieldTower:
    return FieldTower(p, e, m, modulus)


# -- fields inside the tower -------------------------------------------------

class Field:
    """One field of the tower, viewed through the shared GF(q^2) encoding."""

    def __init__(self, tower: FieldTower, order: int):
        d = 0
        while tower.p**d < order:
            d += 1
        if tower.p**d != order or d == 0 or tower.degree % d:
            raise ValueError(f"GF({order}) is not a subfield of GF({tower.q2})")
        self.tower = tower
        self.order = order
        if order == tower.q2:
            els = np.arange(tower.q2, dtype=DTYPE)
        else:
            step = (tower.q2 - 1) // (order - 1)
            els = np.sort(np.concatenate([[0], tower.exp[0 : tower.order : step]]))
        els.setflags(write=False)
        self.elements = els
        member = np.zeros(tower.q2, dtype=bool)
        member[els] = True
        self._member = member

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.order == self.order and other.tower == self.tower

    def __hash__(self) -> int:
        return hash((self.tower, self.order))

    @property
    def characteristic(self) -> int:
        return self.tower.p

    def contains(self, a) -> np.ndarray:
        return self._member[np.asarray(a, dtype=DTYPE)]

    def check(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=DTYPE)
        if a.size and (a.min() < 0 or a.max() >= self.tower.q2 or not self.contains(a).all()):
            raise FieldMismatchError(f"entries outside {self}")
        return a

    def add(self, a, b):
        return self.tower.add(a, b)

    def sub(self, a, b):
        return self.tower.sub(a, b)

    def neg(self, a):
        return self.tower.neg(a)

    def mul(self, a, b):
        return self.tower.mul(a, b)

    def inv(self, a):
        return self.tower.inv(a)


_FIELD_CACHE: dict[tuple[FieldTower, int], Field] = {}


def _field(tower: FieldTower, order: int) -> Field:
    key = (tower, order)
    f = _FIELD_CACHE.get(key)
    if f is None or f.tower is not tower:
        f = Field(tower, order)
        _FIELD_CACHE[key] = f
    return f


@dataclass(frozen=True)
class FieldElement:
    """A scalar tagged with the field of the tower it belongs to.

    Arithmetic between different fields raises :class:`FieldMismatchError`;
    use :meth:`embed` to move a value into a larger field first.
    """

    tower: FieldTower
    order: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.tower.q2:
            raise ValueError(f"encoding {self.value} out of range")
        if not self.tower.field(self.order).contains(self.value):
            raise FieldMismatchError(f"{self.value} is not an element of GF({self.order})")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.order != self.order or other.tower != self.tower:
                raise FieldMismatchError(f"GF({self.order}) and GF({other.order}) operands")
            return other.value
        return NotImplemented

    def _new(self, value) -> "FieldElement":
        return FieldElement(self.tower, self.order, int(value))

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._new(self.tower.add(self.value, v))

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._new(self.tower.sub(self.value, v))

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._new(self.tower.mul(self.value, v))

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return self._new(self.tower.mul(self.value, self.tower.inv(v)))

    def __neg__(self):
        return self._new(self.tower.neg(self.value))

    def __pow__(self, k: int):
        return self._new(self.tower.power(self.value, int(k)))

    def inverse(self) -> "FieldElement":
        return self._new(self.tower.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def embed(self, order: int) -> "FieldElement":
        return FieldElement(self.tower, order, self.value)

    def frobenius(self, k: int = 1) -> "FieldElement":
        """x -> x^(r^k); stays in the same field."""
        return self._new(self.tower.frobenius(self.value, k))

    def trace(self) -> "FieldElement":
        if self.order != self.tower.q2:
            raise FieldMismatchError("the relative trace is defined on GF(q^2)")
        return FieldElement(self.tower, self.tower.r, int(self.tower.trace(self.value)))

    def __repr__(self) -> str:
        return f"GF({self.order})<{self.value}>"
