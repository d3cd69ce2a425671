"""Permutation, complete-permutation, fixed-point and cycle analysis of maps on Z_m."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .dickson import CoefPoly, RdpSpec, coefficient_poly, formal_derivative, value_table
from .ring import ResidueRing, UnsupportedRing, as_ring


class NotBijective(ValueError):
    pass


@dataclass(frozen=True)
class PermMap:
    ring: ResidueRing
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.ring.m:
            raise ValueError("image table length must equal the modulus")
        if any(not 0 <= v < self.ring.m for v in self.image):
            raise ValueError("image entries must lie in [0, m)")

    def __getitem__(self, x: int) -> int:
        return self.image[x]


@dataclass(frozen=True)
class CycleType:
    """Cycle lengths as (length, multiplicity) pairs, longest first."""

    cycles: tuple[tuple[int, int], ...]

    @classmethod
    def from_lengths(cls, lengths) -> CycleType:
        counts = Counter(lengths)
        return cls(tuple(sorted(counts.items(), reverse=True)))

    def lengths(self) -> list[int]:
        return [length for length, mult in self.cycles for _ in range(mult)]

    @property
    def size(self) -> int:
        return sum(length * mult for length, mult in self.cycles)

    def multiplicity(self, length: int) -> int:
        return dict(self.cycles).get(length, 0)

    def __str__(self):
        return "(" + ",".join(map(str, self.lengths())) + ")"


@dataclass(frozen=True)
class PermReport:
    is_pp: bool
    is_cpp: bool | None = None
    fixed_points: tuple[int, ...] = ()
    cycle_type: CycleType | None = None
    witness: tuple[int, int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "is_pp": self.is_pp,
            "is_cpp": self.is_cpp,
            "fixed_points": list(self.fixed_points),
            "cycle_type": self.cycle_type.lengths() if self.cycle_type else None,
            "witness": list(self.witness) if self.witness else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> PermReport:
        ct = d.get("cycle_type")
        w = d.get("witness")
        return cls(
            is_pp=d["is_pp"],
            is_cpp=d.get("is_cpp"),
            fixed_points=tuple(d.get("fixed_points", ())),
            cycle_type=CycleType.from_lengths(ct) if ct is not None else None,
            witness=tuple(w) if w else None,
        )


def tabulate(f: Callable[[int], int], ring: ResidueRing | int) -> PermMap:
    ring = as_ring(ring)
    return PermMap(ring, tuple(f(x) % ring.m for x in ring.elements()))


def rdp_map(n: int, kind: int = 0, a: int = 1, ring: ResidueRing | int = 5) -> PermMap:
    """Tabulate D_{n,kind}(a, .) on Z_m."""
    ring = as_ring(ring)
    row = value_table(kind, a, ring, n)[n]
    return PermMap(ring, tuple(int(v) for v in row))


def shifted(pm: PermMap) -> PermMap:
    """The map x -> f(x) + x."""
    m = pm.ring.m
    return PermMap(pm.ring, tuple((v + x) % m for x, v in enumerate(pm.image)))


def is_permutation(pm: PermMap) -> tuple[bool, tuple[int, int, int] | None]:
    """Bijectivity test; on failure returns the first collision (x1, x2, image)."""
    seen: dict[int, int] = {}
    for x, v in enumerate(pm.image):
        if v in seen:
            return False, (seen[v], x, v)
        seen[v] = x
    return True, None


def _is_bijective(values: Sequence[int], m: int) -> bool:
    return len(set(values)) == m


def is_pp_prime_power(n: int, kind: int, a: int, p: int, t: int) -> bool:
    """PP over Z_{p^t}: tabulate mod p, then the lifting criterion for t > 1."""
    if t < 1:
        raise ValueError("exponent must be positive")
    base = value_table(kind, a, p, n)[n]
    if not _is_bijective(base.tolist(), p):
        return False
    if t == 1:
        return True
    deriv = formal_derivative(coefficient_poly(RdpSpec(n, kind, a, p**t)))
    return all(deriv(s) % p != 0 for s in range(p))


def is_pp_crt(n: int, kind: int, a: int, m: int) -> bool:
    ring = as_ring(m)
    return all(is_pp_prime_power(n, kind, a, p, t) for p, t in ring.factors)


def is_cpp(n: int, kind: int, a: int, ring: ResidueRing | int) -> bool:
    pm = rdp_map(n, kind, a, ring)
    return is_permutation(pm)[0] and is_permutation(shifted(pm))[0]


def _polymulmod(f: list[int], g: list[int], p: int) -> list[int]:
    """f * g reduced mod (x^p - x, p); inputs and output have length p."""
    out = [0] * p
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                if gj:
                    k = i + j
                    if k >= p:
                        k -= p - 1
                    out[k] = (out[k] + fi * gj) % p
    return out


def reduce_mod_frobenius(poly: CoefPoly, p: int) -> list[int]:
    """Coefficients of poly mod (x^p - x), length p."""
    out = [0] * p
    for i, c in enumerate(poly.coeffs):
        k = i if i < p else (i - 1) % (p - 1) + 1
        out[k] = (out[k] + c) % p
    return out


def _degree(coeffs: list[int]) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return -1


def hermite_check(poly: CoefPoly, p: int) -> bool:
    """Hermite's criterion over F_p.

    f permutes F_p iff f has exactly one root in F_p and, for each
    1 <= t <= p - 2, f^t mod (x^p - x) has degree at most p - 2.
    """
    if not as_ring(p).is_prime or poly.ring.m != p:
        raise UnsupportedRing(f"Hermite's criterion needs a prime field, got Z_{poly.ring.m}")
    if sum(1 for x in range(p) if poly(x) == 0) != 1:
        return False
    f = reduce_mod_frobenius(poly, p)
    power = f
    for t in range(1, p - 1):
        if t > 1:
            power = _polymulmod(power, f, p)
        if _degree(power) > p - 2:
            return False
    return True


def fixed_points(pm: PermMap) -> list[int]:
    return [x for x, v in enumerate(pm.image) if v == x]


def cycle_type(pm: PermMap) -> CycleType:
    ok, witness = is_permutation(pm)
    if not ok:
        raise NotBijective(f"map is not a bijection: {witness}")
    seen = [False] * pm.ring.m
    lengths = []
    for start in range(pm.ring.m):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = pm.image[x]
            length += 1
        lengths.append(length)
    return CycleType.from_lengths(lengths)


def iterate_count(pm: PermMap, x: int, k: int) -> int:
    x %= pm.ring.m
    for _ in range(k):
        x = pm.image[x]
    return x


def analyze(pm: PermMap, *, cpp: bool = False) -> PermReport:
    ok, witness = is_permutation(pm)
    return PermReport(
        is_pp=ok,
        is_cpp=(ok and is_permutation(shifted(pm))[0]) if cpp else None,
        fixed_points=tuple(fixed_points(pm)),
        cycle_type=cycle_type(pm) if ok else None,
        witness=witness,
    )
