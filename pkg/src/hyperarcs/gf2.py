"""Exact arithmetic in GF(2^r), 1 <= r <= 16.

Field elements are plain ints in [0, 2^r), read as coefficient vectors in the
polynomial basis (bit k = coefficient of X^k).  All operations live on
FieldSpec and take element values explicitly; elements carry no back-reference
to their field.  A value outside [0, 2^r) is treated as a mixed-field mistake
and rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class FieldError(ValueError):
    """Bad field description or an element that does not fit the field."""


# One irreducible per degree.  Correctness is not taken on trust: every
# FieldSpec re-checks irreducibility at construction time.
DEFAULT_POLYS = {
    1: 0b11,                 # X + 1
    2: 0b111,                # X^2 + X + 1
    3: 0b1011,               # X^3 + X + 1
    4: 0b10011,              # X^4 + X + 1
    5: 0b100101,             # X^5 + X^2 + 1
    6: 0b1000011,            # X^6 + X + 1
    7: 0b10000011,           # X^7 + X + 1
    8: 0b100011011,          # X^8 + X^4 + X^3 + X + 1
    9: 0x211,                # X^9 + X^4 + 1
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
}

MAX_DEGREE = 16


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    """Remainder of a by m in GF(2)[X], both as bit masks."""
    dm = _poly_degree(m)
    while _poly_degree(a) >= dm and a:
        a ^= m << (_poly_degree(a) - dm)
    return a


def _raw_mul(a: int, b: int, r: int, poly: int) -> int:
    """Shift-and-xor product in the polynomial basis, reduced on the fly."""
    acc = 0
    top = 1 << r
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return acc


def is_irreducible(poly: int) -> bool:
    """Brute trial division by every monic polynomial of degree <= deg/2."""
    d = _poly_degree(poly)
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for low in range(1 << deg):
            divisor = (1 << deg) | low
            if _poly_mod(poly, divisor) == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^r) described by its degree and reduction polynomial."""

    r: int
    poly: int

    def __post_init__(self):
        if not 1 <= self.r <= MAX_DEGREE:
            raise FieldError(f"degree {self.r} out of range 1..{MAX_DEGREE}")
        if _poly_degree(self.poly) != self.r:
            raise FieldError(
                f"polynomial 0x{self.poly:x} is not monic of degree {self.r}"
            )
        if not is_irreducible(self.poly):
            raise FieldError(f"polynomial 0x{self.poly:x} is reducible over GF(2)")

    @property
    def q(self) -> int:
        return 1 << self.r

    def check(self, *values: int) -> None:
        for v in values:
            if not 0 <= v < self.q:
                raise FieldError(f"value {v} is not an element of GF(2^{self.r})")

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        self.check(a, b)
        return a ^ b

    # subtraction coincides with addition in characteristic two
    sub = add

    def mul(self, a: int, b: int) -> int:
        self.check(a, b)
        if self.r <= 8:
            return mul_table(self)[a][b]
        return _raw_mul(a, b, self.r, self.poly)

    def inv(self, a: int) -> int:
        self.check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.r <= 8:
            return inv_table(self)[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self.check(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1 or 1
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def frob(self, a: int, i: int) -> int:
        """a^(2^i); i taken mod r since Frobenius has order r."""
        self.check(a)
        for _ in range(i % self.r):
            a = self.mul(a, a)
        return a

    def subfield(self, s: int) -> list[int]:
        """Elements of the subfield GF(2^s), for s dividing r."""
        if self.r % s != 0:
            raise FieldError(f"GF(2^{s}) is not a subfield of GF(2^{self.r})")
        return [a for a in self.elements() if self.frob(a, s) == a]

    def to_json(self) -> dict:
        return {"r": self.r, "poly": f"0x{self.poly:x}"}


def field_make(r: int, poly: int | None = None) -> FieldSpec:
    """Build a validated FieldSpec; poly=None picks the default irreducible."""
    if not isinstance(r, int) or not 1 <= r <= MAX_DEGREE:
        raise FieldError(f"degree {r} out of range 1..{MAX_DEGREE}")
    if poly is None:
        poly = DEFAULT_POLYS[r]
    return FieldSpec(r, poly)


def field_from_json(obj: dict) -> FieldSpec:
    try:
        r = int(obj["r"])
        poly = obj.get("poly")
        poly = int(poly, 16) if isinstance(poly, str) else poly
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldError(f"malformed field description: {obj!r}") from exc
    return field_make(r, poly)


@lru_cache(maxsize=None)
def mul_table(spec: FieldSpec) -> list[list[int]]:
    """Full q x q product table; only sensible for r <= 8."""
    if spec.r > 8:
        raise FieldError("multiplication table only cached for r <= 8")
    q = spec.q
    table = [[0] * q for _ in range(q)]
    for a in range(q):
        row = table[a]
        for b in range(a, q):
            v = _raw_mul(a, b, spec.r, spec.poly)
            row[b] = v
            table[b][a] = v
    return table


@lru_cache(maxsize=None)
def inv_table(spec: FieldSpec) -> list[int]:
    if spec.r > 8:
        raise FieldError("inverse table only cached for r <= 8")
    return [0] + [
        _pow_raw(a, spec.q - 2, spec.r, spec.poly) for a in range(1, spec.q)
    ]


def _pow_raw(a: int, e: int, r: int, poly: int) -> int:
    acc = 1
    base = a
    while e:
        if e & 1:
            acc = _raw_mul(acc, base, r, poly)
        base = _raw_mul(base, base, r, poly)
        e >>= 1
    return acc
