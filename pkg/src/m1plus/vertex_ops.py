"""Vertex-operator machinery on M(1): n-th products, commutators, Borcherds identity.

All field modes are computed by one recursion.  For ``u = h(-i) u'`` the field
``Y(u, x)`` is the normal-ordered product of ``d^(i-1)/(i-1)! h(x)`` with
``Y(u', x)``; splitting the first factor into creation and annihilation halves
gives

    (h(-i)u')_n w = sum_{m<0}  C(-m-1, i-1) h(m) (u'_{n-m-i} w)
                  + sum_{m>=0} C(-m-1, i-1) u'_{n-m-i} (h(m) w)

which is the mode-tuple expansion summed one factor at a time.  The same
recursion runs on M(1) itself, on the Whittaker modules M(1, zeta) (where
``h(m)`` with ``0 <= m <= r`` acts on the cyclic vector by ``zeta_m``) and, with
half-integer modes, on the twisted modules.  A :class:`ModeContext` selects
which one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, NamedTuple, Tuple

from .errors import SectorError
from .fock import FockVector, Monomial, Sector, _insert, annihilate_monomial

__all__ = [
    "ModeContext",
    "VOA",
    "binomial",
    "nth_product",
    "field_mode",
    "vanishing_mode2",
    "CommutatorExpansion",
    "commutator_expansion",
    "borcherds_sides",
    "verify_borcherds",
    "virasoro_l",
]


class ModeContext(NamedTuple):
    """Where field modes act.

    ``zeta`` holds ``(doubled index, value)`` for the nonzero Whittaker
    parameters; ``reach2`` is the largest such doubled index (0 if none).
    """

    twisted: bool
    zeta: Tuple[Tuple[int, Fraction], ...]
    reach2: int

    @property
    def sector(self) -> Sector:
        return Sector.TWISTED if self.twisted else Sector.UNTWISTED

    @property
    def parity(self) -> int:
        return 1 if self.twisted else 0


VOA = ModeContext(False, (), 0)


@lru_cache(maxsize=4096)
def binomial(a, k: int) -> Fraction:
    """``C(a, k) = a(a-1)...(a-k+1)/k!`` for rational ``a``; zero for ``k < 0``."""
    if k < 0:
        return Fraction(0)
    if isinstance(a, int) and a >= 0:
        return Fraction(comb(a, k))
    a = Fraction(a)
    num = Fraction(1)
    for t in range(k):
        num *= a - t
    den = 1
    for t in range(2, k + 1):
        den *= t
    return num / den


def _annihilate_ctx(ctx: ModeContext, a2: int, mono: Monomial) -> List[Tuple[Monomial, Fraction]]:
    """``h(a2/2)``, ``a2 >= 0``, on ``mono`` applied to the cyclic vector of ``ctx``."""
    out = list(annihilate_monomial(a2, mono)) if a2 > 0 else []
    for d, z in ctx.zeta:
        if d == a2:
            out.append((mono, z))
            break
    return out


def vanishing_mode2(ctx: ModeContext, umono: Monomial, wmono: Monomial) -> int:
    """Doubled mode index from which ``u_n w`` is guaranteed zero.

    Annihilators can absorb at most ``wt(w)`` by contraction plus ``reach`` each
    from the cyclic vector, hence ``u_n w = 0`` once ``n + 1 > wt(u) + wt(w) + len(u)*reach``.
    """
    if not umono:
        return -1  # vac_n w = 0 for n >= 0 (and n != -1)
    return sum(umono) + sum(wmono) + len(umono) * ctx.reach2 - 1


@lru_cache(maxsize=1 << 18)
def _mode_mono(ctx: ModeContext, umono: Monomial, n2: int,
               wmono: Monomial) -> Tuple[Tuple[Monomial, Fraction], ...]:
    if not umono:
        return ((wmono, Fraction(1)),) if n2 == -2 else ()
    if n2 >= vanishing_mode2(ctx, umono, wmono):
        return ()
    i2, rest = umono[0], umono[1:]
    i = i2 // 2
    p = ctx.parity
    out: Dict[Monomial, Fraction] = {}

    # creation half: h(-c), c > 0
    if rest:
        c2_max = vanishing_mode2(ctx, rest, wmono) - n2 + i2 - 1
        c2_min = i2 if not ctx.twisted else 1
        creators = range(c2_min, c2_max + 1, 2)
    else:
        c2 = i2 - n2 - 2
        creators = (c2,) if c2 > 0 and c2 % 2 == p and (ctx.twisted or c2 >= i2) else ()
    for c2 in creators:
        b = binomial(Fraction(c2 - 2, 2) if c2 % 2 else c2 // 2 - 1, i - 1)
        if not b:
            continue
        for m, c in _mode_mono(ctx, rest, n2 + c2 - i2, wmono):
            key = _insert(m, c2)
            s = out.get(key, 0) + b * c
            if s:
                out[key] = s
            else:
                del out[key]

    # annihilation half: h(a), a >= 0
    top = max(wmono[0] if wmono else 0, ctx.reach2)
    a2_min = 1 if ctx.twisted else (0 if ctx.zeta and ctx.zeta[0][0] == 0 else 2)
    for a2 in range(a2_min, top + 1, 2):
        hits = _annihilate_ctx(ctx, a2, wmono)
        if not hits:
            continue
        b = binomial(Fraction(-a2 - 2, 2) if a2 % 2 else -a2 // 2 - 1, i - 1)
        for m1, c1 in hits:
            for m, c in _mode_mono(ctx, rest, n2 - a2 - i2, m1):
                s = out.get(m, 0) + b * c1 * c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return tuple(out.items())


def field_mode(ctx: ModeContext, u: FockVector, n2: int, w: FockVector) -> FockVector:
    """``Y_0(u, x)`` mode ``n2/2`` applied to ``w`` in the space selected by ``ctx``.

    For untwisted contexts this is the true module action.  For twisted
    contexts it is the bare normal-ordered field, without the exponential
    correction (see :func:`m1plus.weak_modules.module_mode_action`).
    """
    if u.sector is not Sector.UNTWISTED:
        raise SectorError("fields are only defined for elements of M(1)")
    if w.sector is not ctx.sector:
        raise SectorError("target vector lives in the wrong sector")
    acc: Dict[Monomial, Fraction] = {}
    for um, uc in u.items():
        for wm, wc in w.items():
            for m, c in _mode_mono(ctx, um, n2, wm):
                acc[m] = acc.get(m, 0) + uc * wc * c
    return FockVector({m: c for m, c in acc.items() if c}, ctx.sector)


def nth_product(u: FockVector, n: int, v: FockVector) -> FockVector:
    """The ``n``-th product ``u_n v`` in M(1)."""
    if u.sector is not Sector.UNTWISTED or v.sector is not Sector.UNTWISTED:
        raise SectorError("n-th products are defined on M(1) (untwisted sector)")
    return field_mode(VOA, u, 2 * n, v)


def virasoro_l(n: int, v: FockVector) -> FockVector:
    """``L(n) v = omega_{n+1} v``."""
    from .identities import OMEGA

    return nth_product(OMEGA, n + 1, v)


def _top_product_mode(u: FockVector, v: FockVector) -> int:
    # largest k with u_k v possibly nonzero
    return u.max_weight2() // 2 + v.max_weight2() // 2 - 1


@dataclass(frozen=True)
class CommutatorExpansion:
    """``[u_i, v_j] = sum_k C(i,k) (u_k v)_{i+j-k}`` as (coefficient, element, mode) triples."""

    entries: Tuple[Tuple[Fraction, FockVector, int], ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def act(self, w: FockVector, action=None) -> FockVector:
        """Apply the expansion to ``w``.

        ``action(element, mode, w)`` defaults to the n-th product of M(1); pass a
        module mode action to realize the commutator on a module.
        """
        action = action or nth_product
        total = FockVector({}, w.sector)
        for coeff, elem, mode in self.entries:
            total = total + coeff * action(elem, mode, w)
        return total

    def aggregate(self) -> Dict[int, FockVector]:
        """Entries summed per mode index (coefficients folded in)."""
        out: Dict[int, FockVector] = {}
        for coeff, elem, mode in self.entries:
            out[mode] = out.get(mode, FockVector({}, elem.sector)) + coeff * elem
        return {m: v for m, v in sorted(out.items()) if v}


def commutator_expansion(u: FockVector, i: int, v: FockVector, j: int) -> CommutatorExpansion:
    """Expand ``[u_i, v_j]`` by the commutator formula."""
    entries = []
    for k in range(0, _top_product_mode(u, v) + 1):
        c = binomial(i, k)
        if not c:
            continue
        ukv = nth_product(u, k, v)
        if ukv:
            entries.append((c, ukv, i + j - k))
    return CommutatorExpansion(tuple(entries))


def borcherds_sides(u: FockVector, v: FockVector, w: FockVector,
                    p: int, q: int, r: int) -> Tuple[FockVector, FockVector]:
    """Both sides of the Borcherds identity for ``(u, v, w)`` at ``(p, q, r)``.

    left  = sum_i C(p,i) (u_{r+i} v)_{p+q-i} w
    right = sum_i (-1)^i C(r,i) (u_{p+r-i} (v_{q+i} w) - (-1)^r v_{q+r-i} (u_{p+i} w))
    """
    wu, wv, ww = (x.max_weight2() // 2 for x in (u, v, w))
    left = FockVector({}, Sector.UNTWISTED)
    for i in range(0, max(0, wu + wv - r) + 1):
        c = binomial(p, i)
        if c:
            left = left + c * nth_product(nth_product(u, r + i, v), p + q - i, w)
    right = FockVector({}, Sector.UNTWISTED)
    sign_r = -1 if r % 2 else 1
    for i in range(0, max(0, wv + ww - q, wu + ww - p) + 1):
        c = binomial(r, i)
        if not c:
            continue
        c = c if i % 2 == 0 else -c
        if q + i < wv + ww:
            right = right + c * nth_product(u, p + r - i, nth_product(v, q + i, w))
        if p + i < wu + ww:
            right = right - (c * sign_r) * nth_product(v, q + r - i, nth_product(u, p + i, w))
    return left, right


def verify_borcherds(u: FockVector, v: FockVector, w: FockVector,
                     p: int, q: int, r: int) -> bool:
    """True iff the Borcherds identity holds exactly at ``(p, q, r)``."""
    left, right = borcherds_sides(u, v, w, p, q, r)
    return left == right
