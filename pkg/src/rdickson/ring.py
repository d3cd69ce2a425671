"""Residue rings, prime-field predicates and the quadratic extension F_{p^2}."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt


class NotInvertible(ArithmeticError):
    pass


class InvalidModulus(ValueError):
    pass


class UnsupportedRing(ValueError):
    pass


def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization, ascending primes."""
    if m < 1:
        raise InvalidModulus(f"cannot factor {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class ResidueRing:
    """Z_m together with its prime factorization."""

    m: int
    factors: tuple[tuple[int, int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise InvalidModulus(f"modulus must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "factors", factorize(self.m))

    @property
    def is_prime(self) -> bool:
        return self.factors == ((self.m, 1),)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    @property
    def characteristic_prime(self) -> int | None:
        """The prime p when m = p^t, else None."""
        return self.factors[0][0] if self.is_prime_power else None

    def __call__(self, a: int) -> int:
        return a % self.m

    def elements(self) -> range:
        return range(self.m)


def as_ring(ring: ResidueRing | int) -> ResidueRing:
    return ring if isinstance(ring, ResidueRing) else ResidueRing(int(ring))


def ring_inv(a: int, ring: ResidueRing | int) -> int:
    m = as_ring(ring).m
    a %= m
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def _check_odd_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise InvalidModulus(f"{p!r} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Quadratic character of a mod an odd prime: +1, -1 or 0."""
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mult_order(a: int, p: int) -> int:
    """Multiplicative order of a modulo the prime p."""
    a %= p
    if a == 0:
        raise NotInvertible(f"{p} divides {a}")
    n = p - 1
    order = n
    for q, _ in factorize(n) if n > 1 else ():
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def is_mersenne_prime(p: int) -> bool:
    # p + 1 a power of two, exponent >= 2
    return is_prime(p) and p >= 3 and (p + 1) & p == 0


def smallest_nonresidue(p: int) -> int:
    _check_odd_prime(p)
    d = 2
    while legendre(d, p) != -1:
        d += 1
    return d


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller square root of a mod the odd prime p, or None for non-residues."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    c, r, t, m = pow(z, q, p), pow(a, (q + 1) // 2, p), pow(a, q, p), s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r, c, t, m = r * b % p, b * b % p, t * b * b % p, i
    return min(r, p - r)


@dataclass(frozen=True)
class QuadExtElem:
    """a + b*sqrt(d) in F_{p^2}, d the smallest non-residue mod p."""

    a: int
    b: int
    p: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    @classmethod
    def of(cls, a: int, b: int, p: int) -> QuadExtElem:
        return cls(a, b, p, smallest_nonresidue(p))

    def _coerce(self, other) -> QuadExtElem:
        if isinstance(other, QuadExtElem):
            if (other.p, other.d) != (self.p, self.d):
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return QuadExtElem(other, 0, self.p, self.d)
        return NotImplemented

    @property
    def in_base_field(self) -> bool:
        return self.b == 0

    def __int__(self) -> int:
        if self.b:
            raise ValueError(f"{self} does not lie in F_{self.p}")
        return self.a

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.p, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.p, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = self.p
        return QuadExtElem(
            (self.a * o.a + self.b * o.b * self.d) % p,
            (self.a * o.b + o.a * self.b) % p,
            p,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) % self.p

    def inverse(self) -> QuadExtElem:
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("zero has no inverse in F_{p^2}")
        inv = pow(nrm, -1, self.p)
        return QuadExtElem(self.a * inv, -self.b * inv, self.p, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return ext_pow(self, n)

    def __str__(self):
        return f"{self.a}+{self.b}*sqrt({self.d}) mod {self.p}"


def ext_pow(y: QuadExtElem, n: int) -> QuadExtElem:
    if n < 0:
        return ext_pow(y.inverse(), -n)
    result = QuadExtElem(1, 0, y.p, y.d)
    base = y
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def ext_make(x: int, p: int) -> QuadExtElem:
    """Return y in F_{p^2} with y*(1 - y) = x.

    y = (1 + s)/2 with s^2 = 1 - 4x. The square root is canonical: the
    smaller of the two F_p roots, or t*sqrt(d) with the smaller t when
    1 - 4x is a non-residue.
    """
    _check_odd_prime(p)
    d = smallest_nonresidue(p)
    disc = (1 - 4 * x) % p
    half = pow(2, -1, p)
    s = sqrt_mod(disc, p)
    if s is not None:
        return QuadExtElem((1 + s) * half, 0, p, d)
    t = sqrt_mod(disc * pow(d, -1, p), p)
    return QuadExtElem(half, t * half, p, d)
