"""Classification of simple weak M(1)^+-modules with a Whittaker vector.

A type ``(s, lambda)`` with odd ``s = 2r+1`` is realized by exactly one
untwisted module M(1, zeta) up to ``zeta -> -zeta``; even ``s = 2r`` by one
twisted module M(1, zeta)(theta).  Solving for ``zeta`` is triangular: the top
eigenvalue fixes ``zeta_r^2``, and each lower eigenvalue is linear in one new
entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict

from .errors import DegenerateType, InvariantError, IrrationalParameter
from .fock import Sector
from .weak_modules import WhittakerParams, WhittakerType, whittaker_type_of

__all__ = [
    "WhittakerType",
    "ModuleDescriptor",
    "rational_sqrt",
    "params_from_type",
    "canonicalize",
    "classify",
    "fiber_check",
]


@dataclass(frozen=True)
class ModuleDescriptor:
    sector: Sector
    r: int
    params: WhittakerParams
    canonical: bool

    def __str__(self) -> str:
        return str(self.params)


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact non-negative square root, or :class:`IrrationalParameter`."""
    q = Fraction(q)
    if q < 0:
        raise IrrationalParameter(f"{q} has no real square root")
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise IrrationalParameter(f"{q} is not the square of a rational")
    return Fraction(a, b)


def canonicalize(p: WhittakerParams) -> WhittakerParams:
    """``p`` or ``-p``, whichever has its highest-index nonzero entry positive."""
    for z in reversed(p.zeta):
        if z:
            return p if z > 0 else -p
    return p


def _is_canonical(p: WhittakerParams) -> bool:
    return canonicalize(p) == p


def params_from_type(t: WhittakerType) -> ModuleDescriptor:
    if t.lam[-1] == 0:
        raise DegenerateType("lambda_s must be nonzero")
    s = t.s
    lam = t.as_dict()
    if s % 2:
        sector, r = Sector.UNTWISTED, (s - 1) // 2
        doubled = [2 * k for k in range(r + 1)]
    else:
        sector, r = Sector.TWISTED, s // 2
        doubled = [2 * k + 1 for k in range(r)]
    top2 = doubled[-1]
    zeta: Dict[int, Fraction] = {top2: rational_sqrt(2 * lam[s])}
    for i in range(s - 1, r, -1):
        total2 = 2 * (i - 1)
        low2 = total2 - top2
        others = sum((zeta[d] * zeta[total2 - d] for d in doubled
                      if low2 < d < top2 and low2 < total2 - d < top2), Fraction(0))
        zeta[low2] = (lam[i] - others / 2) / zeta[top2]
    params = WhittakerParams(sector, tuple(zeta[d] for d in doubled))
    return ModuleDescriptor(sector, r, params, _is_canonical(params))


def classify(t: WhittakerType) -> ModuleDescriptor:
    """The module (up to ``zeta -> -zeta``) containing a Whittaker vector of type ``t``."""
    desc = params_from_type(t)
    params = canonicalize(desc.params)
    if whittaker_type_of(params) != t:
        raise InvariantError(f"round trip failed for {t}: {params}")
    return ModuleDescriptor(desc.sector, desc.r, params, True)


def fiber_check(p: WhittakerParams, q: WhittakerParams) -> bool:
    """True iff ``type(p) == type(q)`` exactly when ``p == +-q``."""
    if p.sector is not q.sector or p.r != q.r:
        raise ValueError("fiber_check compares parameters of the same sector and r")
    same_type = whittaker_type_of(p) == whittaker_type_of(q)
    plus_minus = p.zeta == q.zeta or p.zeta == (-q).zeta
    return same_type == plus_minus
