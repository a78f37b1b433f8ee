"""Shared brute-force oracles, deliberately dumber than the library code."""

from __future__ import annotations

from fractions import Fraction

from sectorpack import LatticePoint, QuadPoly, Sector


def first_stair_scan(s: Sector, c: int) -> LatticePoint:
    """Scan x = 0, 1, 2, ... for the first lattice point with y >= 0 on the
    staircase-c line (m-1)*y = n*x - c*l."""
    x = 0
    while True:
        num = s.n * x - c * s.l
        if num >= 0 and num % (s.m - 1) == 0:
            return LatticePoint(x, num // (s.m - 1))
        x += 1


def sector_points(s: Sector, x_max: int) -> list[LatticePoint]:
    """Every sector lattice point with x <= x_max, by column scan."""
    return [
        LatticePoint(x, y)
        for x in range(x_max + 1)
        for y in range(x * s.n // s.m + 1)
    ]


def stairs_scan(s: Sector, c: int, x_max: int) -> list[LatticePoint]:
    """Sector points on staircase c with x <= x_max, found by raw scan."""
    return [
        p
        for p in sector_points(s, x_max)
        if (s.m - 1) * p.y == s.n * p.x - c * s.l
    ]


def values_by_rectangle(s: Sector, p: QuadPoly, x_max: int) -> dict[LatticePoint, Fraction]:
    return {pt: p.eval(pt) for pt in sector_points(s, x_max)}


def eval_raw(p: QuadPoly, x: int, y: int) -> Fraction:
    """Independent evaluation, written out long-hand."""
    return (
        p.a * x * x + p.b * x * y + p.c2 * y * y + p.d * x + p.e * y + p.f
    )
