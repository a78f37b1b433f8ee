"""Sector geometry: rational sectors, staircases, and lattice-preserving maps.

The sector S(n/m) is the plane region {(x, y) : x, y >= 0 and m*y <= n*x}.
Its lattice points decompose into "staircases": for m >= 2, staircase c is
the set of lattice points on the line (m-1)*y = n*x - c*l, where
l = gcd(n, m-1).  Consecutive points on a staircase differ by the fixed
step ((m-1)/l, n/l).

Everything here is exact integer / reduced-rational arithmetic.  Boundary
membership (m*y == n*x) must be decided exactly, so no floating point is
used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import (
    DegenerateDual,
    NegativeImage,
    NotAdmissible,
    NotCoprime,
    NotInvertible,
    PointOutsideSector,
)

# All coefficient arithmetic rides on reduced rationals; the stdlib type
# already enforces gcd(|num|, den) = 1 and den >= 1.
Rational = Fraction


class LatticePoint(NamedTuple):
    x: int
    y: int


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers, not both zero."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of a modulo ``modulus``, in [0, modulus).

    For modulus 1 the inverse is 0 by convention.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if modulus == 1:
        return 0
    try:
        return pow(a, -1, modulus)
    except ValueError as exc:
        raise NotInvertible(f"{a} has no inverse mod {modulus}") from exc


@dataclass(frozen=True)
class Sector:
    """The sector S(n/m) with n, m coprime positive integers.

    ``l`` is gcd(n, m-1); for m == 1 we take l = n (the gcd(n, 0)
    convention).  Staircase operations require m >= 2, since the staircase
    slope n/(m-1) is undefined on integral sectors.
    """

    n: int
    m: int
    l: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.n, self.m)

    def __str__(self) -> str:
        return f"{self.n}/{self.m}"

    def contains(self, p: LatticePoint) -> bool:
        return p.x >= 0 and p.y >= 0 and p.y * self.m <= p.x * self.n

    def _need_staircases(self) -> None:
        if self.m < 2:
            raise ValueError("staircases are undefined on integral sectors (m must be >= 2)")

    def staircase_index(self, p: LatticePoint) -> int:
        """Index c of the staircase through p: c = (n*x - (m-1)*y) / l."""
        self._need_staircases()
        if not self.contains(p):
            raise PointOutsideSector(f"{tuple(p)} is not in S({self})")
        return (p.x * self.n - p.y * (self.m - 1)) // self.l

    def first_stair(self, c: int) -> LatticePoint:
        """Minimal-x lattice point with y >= 0 on the staircase-c line.

        With r the inverse of (m-1)/l mod n/l, the point is
        ((m-1)*z/n + c*l/n, z) for z = (-c*r) mod (n/l).  Whenever n
        divides (m-1)**2 this point lies in the sector; in general it may
        sit above the boundary ray.
        """
        self._need_staircases()
        u = (self.m - 1) // self.l
        v = self.n // self.l
        z = 0 if v == 1 else (-c * mod_inverse(u, v)) % v
        x = ((self.m - 1) * z + c * self.l) // self.n
        return LatticePoint(x, z)

    def stair_count(self, c: int) -> int:
        """Number of lattice points on staircase c inside the sector.

        Boundary points (m*y == n*x) count.  The bound comes from
        m*y <= n*x, which on the staircase line reads x <= m*c*l/n.
        """
        self._need_staircases()
        x0 = self.first_stair(c).x
        count = (self.m * c * self.l - self.n * x0) * self.l // (self.n * (self.m - 1)) + 1
        return max(count, 0)

    def stair_step(self) -> tuple[int, int]:
        self._need_staircases()
        return ((self.m - 1) // self.l, self.n // self.l)

    def stairs(self, c: int) -> list[LatticePoint]:
        """All stairs on staircase c inside the sector, by ascending x."""
        first = self.first_stair(c)
        dx, dy = self.stair_step()
        return [
            LatticePoint(first.x + t * dx, first.y + t * dy)
            for t in range(self.stair_count(c))
        ]

    def staircase(self, c: int) -> Staircase:
        return Staircase(
            sector=self,
            c=c,
            step=self.stair_step(),
            first=self.first_stair(c),
            count=self.stair_count(c),
        )


@dataclass(frozen=True)
class Quadrant:
    """Distinguished target of W-reduction when the reduced slope is 1/0.

    Stands for the whole first quadrant; reached only from sectors S(1/m).
    """

    def contains(self, p: LatticePoint) -> bool:
        return p.x >= 0 and p.y >= 0

    def __str__(self) -> str:
        return "quadrant"


QUADRANT = Quadrant()

Region = Union[Sector, Quadrant]


@dataclass(frozen=True)
class Staircase:
    sector: Sector
    c: int
    step: tuple[int, int]
    first: LatticePoint
    count: int

    def points(self) -> list[LatticePoint]:
        dx, dy = self.step
        return [
            LatticePoint(self.first.x + t * dx, self.first.y + t * dy)
            for t in range(self.count)
        ]


def sector(n: int, m: int) -> Sector:
    """Build S(n/m); n, m must be positive and coprime."""
    if n < 1 or m < 1:
        raise ValueError("sector parameters must be positive")
    if math.gcd(n, m) != 1:
        raise NotCoprime(f"gcd({n}, {m}) != 1")
    l = n if m == 1 else math.gcd(n, m - 1)
    return Sector(n=n, m=m, l=l)


def parse_sector(text: str) -> Sector:
    """Parse the text form "n/m" (a bare integer "n" means n/1)."""
    parts = text.strip().split("/")
    if len(parts) == 1:
        parts = [parts[0], "1"]
    if len(parts) != 2:
        raise ValueError(f"cannot parse sector {text!r}; expected n/m")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"cannot parse sector {text!r}; expected n/m") from None
    return sector(n, m)


@dataclass(frozen=True)
class LatticeMap:
    """An integer 2x2 map (x, y) -> (a11*x + a12*y, a21*x + a22*y).

    The maps used here all have determinant +-1 and send the source
    sector's lattice points bijectively onto the target's; that property
    is checked by tests, not enforced by construction.
    """

    a11: int
    a12: int
    a21: int
    a22: int
    source: Region
    target: Region

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def is_identity(self) -> bool:
        return (self.a11, self.a12, self.a21, self.a22) == (1, 0, 0, 1)

    def apply(self, p: LatticePoint) -> LatticePoint:
        if not self.source.contains(p):
            raise PointOutsideSector(f"{tuple(p)} is not in S({self.source})")
        q = LatticePoint(
            self.a11 * p.x + self.a12 * p.y,
            self.a21 * p.x + self.a22 * p.y,
        )
        if q.x < 0 or q.y < 0:
            raise NegativeImage(f"{tuple(p)} maps to {tuple(q)} outside the first quadrant")
        return q

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """The map "apply ``inner`` first, then self" (matrix product self*inner)."""
        return LatticeMap(
            a11=self.a11 * inner.a11 + self.a12 * inner.a21,
            a12=self.a11 * inner.a12 + self.a12 * inner.a22,
            a21=self.a21 * inner.a11 + self.a22 * inner.a21,
            a22=self.a21 * inner.a12 + self.a22 * inner.a22,
            source=inner.source,
            target=self.target,
        )

    def inverse(self) -> "LatticeMap":
        d = self.det
        if d not in (1, -1):
            raise ValueError("only unimodular maps can be inverted exactly")
        if d == 1:
            entries = (self.a22, -self.a12, -self.a21, self.a11)
        else:
            entries = (-self.a22, self.a12, self.a21, -self.a11)
        return LatticeMap(*entries, source=self.target, target=self.source)

    def to_json_dict(self) -> dict:
        return {
            "a11": self.a11,
            "a12": self.a12,
            "a21": self.a21,
            "a22": self.a22,
            "source": str(self.source),
            "target": str(self.target),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LatticeMap":
        def region(text: str) -> Region:
            return QUADRANT if text == "quadrant" else parse_sector(text)

        return cls(
            a11=int(data["a11"]),
            a12=int(data["a12"]),
            a21=int(data["a21"]),
            a22=int(data["a22"]),
            source=region(data["source"]),
            target=region(data["target"]),
        )


def identity_map(s: Region) -> LatticeMap:
    return LatticeMap(1, 0, 0, 1, source=s, target=s)


def apply_map(mapping: LatticeMap, p: LatticePoint) -> LatticePoint:
    return mapping.apply(p)


def w_reduce(s: Sector) -> tuple[Region, LatticeMap]:
    """Shear S(n/m) down to a slope >= 1 representative.

    For m < n the sector is already reduced and the identity is returned.
    Otherwise the map (x, y) -> (x - floor(m/n)*y, y) carries the lattice
    points of S(n/m) bijectively onto those of S(n / (m mod n)).  When
    m mod n == 0 (possible only for n = 1) the image is the whole first
    quadrant and the distinguished Quadrant value is returned.
    """
    if s.m < s.n:
        return s, identity_map(s)
    q = s.m // s.n
    m_red = s.m - s.n * q
    target: Region
    if m_red == 0:
        target = QUADRANT
    else:
        target = sector(s.n, m_red)
    return target, LatticeMap(1, -q, 0, 1, source=s, target=target)


def t_dual(s: Sector) -> tuple[Sector, LatticeMap]:
    """The determinant -1 duality map from S(n/m) onto S(n/(n+2-m)).

    Requires m >= 2 and n | (m-1)**2, which makes (1 - m'*m)/n an integer.
    Swaps ascending and descending stair polynomials between the two
    sectors; applying it twice on a self-dual sector is the identity.
    """
    if s.m < 2:
        raise NotAdmissible("T-duality is undefined on integral sectors")
    if (s.m - 1) ** 2 % s.n != 0:
        raise NotAdmissible(f"{s.n} does not divide ({s.m}-1)^2")
    m_dual = s.n + 2 - s.m
    if m_dual < 1 or math.gcd(s.n, m_dual) != 1:
        raise DegenerateDual(f"dual parameter n+2-m = {m_dual} is invalid for S({s})")
    dual = sector(s.n, m_dual)
    off_diag = (1 - m_dual * s.m) // s.n
    return dual, LatticeMap(m_dual, off_diag, s.n, -s.m, source=s, target=dual)
