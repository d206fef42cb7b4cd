"""Dirichlet characters mod D, built from the structure of (Z/D)^*."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .primes import factorize

MAX_CHARACTER_MODULUS = 10**4


@dataclass(frozen=True)
class DirichletCharacter:
    """A character chi mod D, tabulated on residues 1..D (values[n-1] = chi(n))."""

    modulus: int
    values: np.ndarray  # complex128, length D
    is_principal: bool

    def __call__(self, n: int) -> complex:
        return complex(self.values[(n - 1) % self.modulus])


def _primitive_root(p: int, k: int) -> int:
    """Primitive root mod p^k for odd prime p."""
    pk = p**k
    order = pk // p * (p - 1)
    fac = [q for q, _ in factorize(order)]
    for g in range(2, pk):
        if math.gcd(g, p) != 1:
            continue
        if all(pow(g, order // q, pk) != 1 for q in fac):
            return g
    raise RuntimeError(f"no primitive root mod {p}^{k}")  # unreachable


def _cyclic_dlogs(p: int, k: int) -> list[tuple[int, dict[int, int]]]:
    """Cyclic decomposition of (Z/p^k)^* as [(order, dlog table), ...].

    For 2^k with k >= 3 the group is <-1> x <5> and two factors are returned.
    """
    pk = p**k
    if p == 2:
        if k == 1:
            return []
        if k == 2:
            return [(2, {1: 0, 3: 1})]
        half = 2 ** (k - 2)
        sign_log: dict[int, int] = {}
        five_log: dict[int, int] = {}
        x = 1
        for j in range(half):
            sign_log[x] = 0
            five_log[x] = j
            sign_log[pk - x] = 1
            five_log[pk - x] = j
            x = x * 5 % pk
        return [(2, sign_log), (half, five_log)]
    g = _primitive_root(p, k)
    order = pk // p * (p - 1)
    table: dict[int, int] = {}
    x = 1
    for j in range(order):
        table[x] = j
        x = x * g % pk
    return [(order, table)]


def characters_mod(d: int) -> list[DirichletCharacter]:
    """All phi(d) Dirichlet characters mod d, principal character first."""
    if not (1 <= d <= MAX_CHARACTER_MODULUS):
        raise ValueError(f"modulus must be in [1, {MAX_CHARACTER_MODULUS}], got {d}")

    comps: list[tuple[int, int, dict[int, int]]] = []  # (prime power, order, dlog)
    for p, k in factorize(d):
        for order, table in _cyclic_dlogs(p, k):
            comps.append((p**k, order, table))

    units = [n for n in range(1, d + 1) if math.gcd(n, d) == 1]
    # exponent vector of each unit with respect to the cyclic components
    dlogs = np.array(
        [[table[n % pk] for n in units] for pk, _, table in comps], dtype=np.float64
    ).reshape(len(comps), len(units))
    orders = [order for _, order, _ in comps]

    chars = []
    for exps in product(*(range(o) for o in orders)):
        values = np.zeros(d, dtype=np.complex128)
        angle = np.zeros(len(units))
        for i, (e, o) in enumerate(zip(exps, orders)):
            angle += 2.0 * math.pi * e * dlogs[i] / o
        vals = np.exp(1j * angle)
        for n, v in zip(units, vals):
            values[n - 1] = v
        chars.append(
            DirichletCharacter(
                modulus=d,
                values=values,
                is_principal=all(e == 0 for e in exps),
            )
        )
    chars.sort(key=lambda c: not c.is_principal)
    return chars
