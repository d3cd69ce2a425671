"""Reversed Dickson polynomials D_{n,k}(a, x) over Z_m.

Kind k = 0 is the first kind D_n(a, x), k = 1 the second kind E_n(a, x),
and k >= 2 the (k+1)-th kind. Values are computed by three independent
routes: the three-term recurrence, the explicit binomial sum, and the
substitution x = y(1 - y) with y in F_{p^2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ring import (
    QuadExtElem,
    ResidueRing,
    UnsupportedRing,
    as_ring,
    ext_make,
    ext_pow,
)

FIRST = 0
SECOND = 1


@dataclass(frozen=True)
class RdpSpec:
    n: int
    kind: int = FIRST
    a: int = 1
    ring: ResidueRing = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"index must be non-negative, got {self.n}")
        if self.kind < 0:
            raise ValueError(f"kind must be non-negative, got {self.kind}")
        object.__setattr__(self, "ring", as_ring(self.ring))
        object.__setattr__(self, "a", self.a % self.ring.m)

    @property
    def m(self) -> int:
        return self.ring.m


@dataclass(frozen=True)
class CoefPoly:
    """Dense polynomial c_0 + c_1 x + ... over Z_m, trailing zeros trimmed."""

    ring: ResidueRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        m = self.ring.m
        cs = [c % m for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        m = self.ring.m
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def __add__(self, other: CoefPoly) -> CoefPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return CoefPoly(self.ring, tuple(x + y for x, y in zip(a, b)))


def _recurrence_values(n: int, kind: int, a: int, x: int, m: int) -> tuple[int, int]:
    """(D_n, E_n) at x mod m via the shared recurrence."""
    d0, d1 = 2 % m, a % m
    e0, e1 = 1 % m, a % m
    if n == 0:
        return d0, e0
    for _ in range(n - 1):
        d0, d1 = d1, (a * d1 - x * d0) % m
        e0, e1 = e1, (a * e1 - x * e0) % m
    return d1, e1


def _combine(kind: int, d: int, e: int, m: int) -> int:
    if kind == FIRST:
        return d % m
    if kind == SECOND:
        return e % m
    return ((1 - kind) * d + kind * e) % m


def eval_recurrence(spec: RdpSpec, x: int) -> int:
    d, e = _recurrence_values(spec.n, spec.kind, spec.a, x % spec.m, spec.m)
    return _combine(spec.kind, d, e, spec.m)


@lru_cache(maxsize=4096)
def integer_coefficients(n: int, kind: int) -> tuple[int, ...]:
    """Exact integers (n - k i)/(n - i) * C(n - i, i), i = 0..n//2.

    These multiply a^(n-2i) (-x)^i. Binomials are stepped by exact
    integer ratios so no modular division is ever needed.
    """
    if n == 0:
        return (2 - kind,)
    out = []
    binom = 1  # C(n - i, i)
    for i in range(n // 2 + 1):
        if i:
            # C(n-i, i) = C(n-i+1, i-1) * (n-2i+2)(n-2i+1) / (i (n-i+1))
            binom = binom * (n - 2 * i + 2) * (n - 2 * i + 1) // (i * (n - i + 1))
        num = (n - kind * i) * binom
        out.append(num // (n - i))
    return tuple(out)


def coefficient_poly(spec: RdpSpec) -> CoefPoly:
    m, n, a = spec.m, spec.n, spec.a
    coeffs = []
    for i, c in enumerate(integer_coefficients(n, spec.kind)):
        sign = -1 if i % 2 else 1
        coeffs.append(sign * c * pow(a, n - 2 * i, m))
    return CoefPoly(spec.ring, tuple(coeffs))


def eval_explicit(spec: RdpSpec, x: int) -> int:
    return coefficient_poly(spec)(x % spec.m)


def explicit_row(spec: RdpSpec) -> list[int]:
    """The explicit sum evaluated at every x in Z_m, via a Vandermonde product."""
    m = spec.m
    poly = coefficient_poly(spec)
    if m > 2**30:
        return [poly(x) for x in range(m)]
    coeffs = np.array(poly.coeffs or (0,), dtype=np.int64)
    xs = np.arange(m, dtype=np.int64)
    powers = np.empty((m, len(coeffs)), dtype=np.int64)
    powers[:, 0] = 1
    for i in range(1, len(coeffs)):
        powers[:, i] = powers[:, i - 1] * xs % m
    # accumulate in chunks so products stay inside int64
    out = np.zeros(m, dtype=np.int64)
    step = max(1, 2**62 // max(1, (m - 1) ** 2))
    for lo in range(0, len(coeffs), step):
        out = (out + powers[:, lo:lo + step] @ coeffs[lo:lo + step]) % m
    return out.tolist()


def _functional_y(spec: RdpSpec, x: int) -> QuadExtElem:
    ring = spec.ring
    if not ring.is_prime or ring.m == 2:
        raise UnsupportedRing(f"functional route needs an odd prime field, got Z_{ring.m}")
    if spec.a != 1:
        raise UnsupportedRing("functional route is defined for a = 1 only")
    return ext_make(x % ring.m, ring.m)


def _functional_pair(n: int, y: QuadExtElem) -> tuple[int, int]:
    p = y.p
    z = 1 - y
    d = ext_pow(y, n) + ext_pow(z, n)
    s = 2 * y - 1
    if s.a == 0 and s.b == 0:
        # x = 1/4: E_n = (n + 1) / 2^n
        e = (n + 1) * pow(pow(2, n, p), -1, p) % p
    else:
        e = int((ext_pow(y, n + 1) - ext_pow(z, n + 1)) / s)
    return int(d), e


def eval_functional(spec: RdpSpec, x: int) -> int:
    y = _functional_y(spec, x)
    d, e = _functional_pair(spec.n, y)
    return _combine(spec.kind, d, e, spec.m)


def formal_derivative(poly: CoefPoly) -> CoefPoly:
    return CoefPoly(poly.ring, tuple(i * c for i, c in enumerate(poly.coeffs) if i))


def _quarter(p: int) -> int:
    return pow(4, -1, p)


def derivative_first_kind(n: int, x: int, p: int) -> int:
    """D_n'(1, x) mod an odd prime p."""
    if n < 2:
        raise ValueError("identity route needs n >= 2")
    x %= p
    if x == _quarter(p):
        return formal_derivative(coefficient_poly(RdpSpec(n, FIRST, 1, p)))(x)
    return -n * eval_recurrence(RdpSpec(n - 2, SECOND, 1, p), x) % p


def derivative_second_kind(n: int, x: int, p: int) -> int:
    """E_n'(1, x) mod an odd prime p."""
    x %= p
    if x == _quarter(p):
        return formal_derivative(coefficient_poly(RdpSpec(n, SECOND, 1, p)))(x)
    d, e = _recurrence_values(n, SECOND, 1, x, p)
    inv = pow(1 - 4 * x, -1, p)
    return (-(n + 1) * d + 2 * e) * inv % p


def closed_form_a_zero(n: int, kind: int, x: int, ring: ResidueRing | int) -> int:
    m = as_ring(ring).m
    if kind not in (FIRST, SECOND):
        raise ValueError("closed form known for kinds 0 and 1 only")
    if n % 2:
        return 0
    scale = 2 if kind == FIRST else 1
    return scale * pow(-x, n // 2, m) % m


def sequence(kind: int, a: int, c: int, ring: ResidueRing | int, n_max: int) -> list[int]:
    """Values D_{n,kind}(a, c) for n = 0..n_max."""
    m = as_ring(ring).m
    a, c = a % m, c % m
    out = []
    d0, d1, e0, e1 = 2 % m, a, 1 % m, a
    for n in range(n_max + 1):
        if n == 0:
            d, e = d0, e0
        elif n == 1:
            d, e = d1, e1
        else:
            d0, d1 = d1, (a * d1 - c * d0) % m
            e0, e1 = e1, (a * e1 - c * e0) % m
            d, e = d1, e1
        out.append(_combine(kind, d, e, m))
    return out


def derivative_sequence(kind: int, c: int, ring: ResidueRing | int, n_max: int) -> list[int]:
    """Formal derivatives D_{n,kind}'(1, c) for n = 0..n_max.

    Uses the differentiated recurrence f_n' = f_{n-1}' - f_{n-2} - x f_{n-2}',
    which is the formal derivative of the recurrence-defined polynomial.
    """
    m = as_ring(ring).m
    c %= m
    d, e = (2 % m, 1 % m), (1 % m, 1 % m)
    dd, de = (0, 0), (0, 0)
    out = []
    for n in range(n_max + 1):
        if n >= 2:
            dd = (dd[1], (dd[1] - d[0] - c * dd[0]) % m)
            de = (de[1], (de[1] - e[0] - c * de[0]) % m)
            d = (d[1], (d[1] - c * d[0]) % m)
            e = (e[1], (e[1] - c * e[0]) % m)
        idx = 0 if n == 0 else 1
        out.append(_combine(kind, dd[idx], de[idx], m))
    return out


def value_table(kind: int, a: int, ring: ResidueRing | int, n_max: int) -> np.ndarray:
    """Array T with T[n, x] = D_{n,kind}(a, x) mod m, n = 0..n_max, all x."""
    m = as_ring(ring).m
    xs = np.arange(m, dtype=np.int64)
    a %= m
    out = np.empty((n_max + 1, m), dtype=np.int64)
    d0 = np.full(m, 2 % m, dtype=np.int64)
    d1 = np.full(m, a, dtype=np.int64)
    e0 = np.full(m, 1 % m, dtype=np.int64)
    e1 = np.full(m, a, dtype=np.int64)
    for n in range(n_max + 1):
        if n == 0:
            d, e = d0, e0
        elif n == 1:
            d, e = d1, e1
        else:
            d0, d1 = d1, (a * d1 - xs * d0) % m
            e0, e1 = e1, (a * e1 - xs * e0) % m
            d, e = d1, e1
        if kind == FIRST:
            out[n] = d
        elif kind == SECOND:
            out[n] = e
        else:
            out[n] = ((1 - kind) * d + kind * e) % m
    return out
