"""Exact Fock-space arithmetic for the rank-one Heisenberg algebra.

A basis vector is a product of creation operators ``h(-i1)...h(-ik)`` applied
to a cyclic vector (the vacuum of M(1), or ``u_zeta`` in a Whittaker module).
Mode indices are stored *doubled* so that integer modes (untwisted sector) and
half-integer modes (twisted sector) share one integer representation: the
index ``3/2`` is stored as ``3`` and the index ``2`` as ``4``.

A monomial is a non-increasing tuple of positive doubled parts, e.g.
``h(-3)h(-1)^2`` is ``(6, 2, 2)``.
"""
from __future__ import annotations

import enum
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .errors import SectorError

Monomial = Tuple[int, ...]

__all__ = [
    "Sector",
    "Monomial",
    "FockVector",
    "to_doubled",
    "from_doubled",
    "vacuum",
    "monomial",
    "create",
    "annihilate",
    "theta",
    "weight_decompose",
    "graded_dim",
    "partition_count",
    "basis",
    "monomial_weight2",
]


class Sector(enum.Enum):
    UNTWISTED = "untwisted"
    TWISTED = "twisted"

    @property
    def parity(self) -> int:
        """Parity of doubled mode indices in this sector."""
        return 0 if self is Sector.UNTWISTED else 1

    @classmethod
    def parse(cls, text: str) -> "Sector":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise SectorError(f"unknown sector {text!r}") from None


def to_doubled(index) -> int:
    """Return ``2*index`` for an integer or half-integer ``index``."""
    if isinstance(index, bool):
        raise TypeError("bool is not a mode index")
    if isinstance(index, int):
        return 2 * index
    q = Fraction(index)
    d = 2 * q
    if d.denominator != 1:
        raise SectorError(f"{index} is neither an integer nor a half-integer")
    return int(d)


def from_doubled(d: int):
    """Inverse of :func:`to_doubled`; integers come back as ``int``."""
    return d // 2 if d % 2 == 0 else Fraction(d, 2)


def monomial_weight2(mono: Monomial) -> int:
    """Doubled conformal weight of a monomial."""
    return sum(mono)


def _insert(mono: Monomial, d: int) -> Monomial:
    parts = list(mono)
    k = 0
    while k < len(parts) and parts[k] >= d:
        k += 1
    parts.insert(k, d)
    return tuple(parts)


def _as_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


class FockVector:
    """Finite rational linear combination of Fock monomials in one sector.

    Instances are treated as immutable.  Zero coefficients are never stored,
    so the zero vector has an empty term map.
    """

    __slots__ = ("_sector", "_terms")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 sector: Sector = Sector.UNTWISTED):
        self._sector = sector
        clean: Dict[Monomial, Fraction] = {}
        p = sector.parity
        for mono, c in (terms or {}).items():
            c = _as_coeff(c)
            if c == 0:
                continue
            mono = tuple(sorted(mono, reverse=True))
            for d in mono:
                if d <= 0 or d % 2 != p:
                    raise SectorError(
                        f"part {from_doubled(d)} not allowed in the {sector.value} sector")
            clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], sector: Sector) -> "FockVector":
        # Trusted constructor: terms already canonical and nonzero.
        v = object.__new__(cls)
        v._sector = sector
        v._terms = terms
        return v

    @property
    def sector(self) -> Sector:
        return self._sector

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(sorted(mono, reverse=True)), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "FockVector") -> None:
        if other._sector is not self._sector:
            raise SectorError("cannot combine vectors from different sectors")

    def __add__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return FockVector._raw(out, self._sector)

    def __neg__(self):
        return FockVector._raw({m: -c for m, c in self._terms.items()}, self._sector)

    def __sub__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        try:
            s = _as_coeff(scalar)
        except TypeError:
            return NotImplemented
        if s == 0:
            return FockVector._raw({}, self._sector)
        return FockVector._raw({m: s * c for m, c in self._terms.items()}, self._sector)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, FockVector):
            return self._sector is other._sector and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self._sector, frozenset(self._terms.items())))

    def weights2(self) -> set:
        """Set of doubled weights occurring in the vector."""
        return {sum(m) for m in self._terms}

    def max_weight2(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def weight(self):
        """Weight of a homogeneous nonzero vector."""
        ws = self.weights2()
        if len(ws) != 1:
            raise ValueError("vector is not homogeneous")
        return from_doubled(ws.pop())

    def __repr__(self):
        from .grammar import format_element

        return f"FockVector({format_element(self)!r}, {self._sector.value})"

    def __str__(self):
        from .grammar import format_element

        return format_element(self)


def vacuum(sector: Sector = Sector.UNTWISTED) -> FockVector:
    return FockVector._raw({(): Fraction(1)}, sector)


def monomial(*parts, coeff=1, sector: Sector | None = None) -> FockVector:
    """``coeff * h(-p1)...h(-pk)`` on the cyclic vector; parts given as positive indices.

    The sector is inferred from the first part when not given.
    """
    doubled = [to_doubled(p) for p in parts]
    if sector is None:
        sector = Sector.TWISTED if doubled and doubled[0] % 2 else Sector.UNTWISTED
    return FockVector({tuple(doubled): coeff}, sector)


def _check_index(d: int, sector: Sector) -> None:
    if d <= 0:
        raise ValueError("creation/annihilation index must be positive")
    if d % 2 != sector.parity:
        raise SectorError(
            f"index {from_doubled(d)} does not belong to the {sector.value} sector")


def create(i, v: FockVector) -> FockVector:
    """Apply the creation operator ``h(-i)``."""
    d = to_doubled(i)
    _check_index(d, v.sector)
    return FockVector._raw({_insert(m, d): c for m, c in v.items()}, v.sector)


@lru_cache(maxsize=1 << 16)
def annihilate_monomial(d: int, mono: Monomial) -> Tuple[Tuple[Monomial, Fraction], ...]:
    """``h(d/2)`` on one monomial (cyclic vector killed), as (monomial, coeff) pairs."""
    k = mono.count(d)
    if k == 0:
        return ()
    pos = mono.index(d)
    rest = mono[:pos] + mono[pos + 1:]
    return ((rest, Fraction(k * d, 2)),)


def annihilate(i, v: FockVector) -> FockVector:
    """Apply ``h(i)``, ``i > 0``, acting as a derivation and killing the cyclic vector."""
    d = to_doubled(i)
    _check_index(d, v.sector)
    out: Dict[Monomial, Fraction] = {}
    for m, c in v.items():
        for m2, c2 in annihilate_monomial(d, m):
            out[m2] = out.get(m2, 0) + c * c2
    return FockVector({m: c for m, c in out.items()}, v.sector)


def theta(v: FockVector) -> FockVector:
    """The involution ``h(n) -> -h(n)``."""
    return FockVector._raw(
        {m: (-c if len(m) % 2 else c) for m, c in v.items()}, v.sector)


def weight_decompose(v: FockVector) -> Dict[object, FockVector]:
    """Split ``v`` into homogeneous components keyed by weight."""
    comps: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in v.items():
        comps.setdefault(sum(m), {})[m] = c
    return {from_doubled(w): FockVector._raw(t, v.sector) for w, t in sorted(comps.items())}


@lru_cache(maxsize=None)
def _partitions_by_length_parity(n: int) -> Tuple[int, int]:
    # counts[k][j][p]: partitions of j into parts <= k with length parity p
    row = [[0, 0] for _ in range(n + 1)]
    row[0][0] = 1
    for part in range(1, n + 1):
        for j in range(part, n + 1):
            row[j][0] += row[j - part][1]
            row[j][1] += row[j - part][0]
    return row[n][0], row[n][1]


def partition_count(n: int) -> int:
    even, odd = _partitions_by_length_parity(n)
    return even + odd


def graded_dim(n: int, parity: str = "all") -> int:
    """Dimension of the weight-``n`` subspace of M(1) (``all``), M(1)^+ (``even``) or M(1)^- (``odd``)."""
    if n < 0:
        raise ValueError("weight must be non-negative")
    even, odd = _partitions_by_length_parity(n)
    if parity == "even":
        return even
    if parity == "odd":
        return odd
    if parity == "all":
        return even + odd
    raise ValueError(f"parity must be even, odd or all, not {parity!r}")


def _partitions2(w2: int, max_part: int, parity: int) -> Iterator[Monomial]:
    if w2 == 0:
        yield ()
        return
    start = min(w2, max_part)
    if start % 2 != parity:
        start -= 1
    for d in range(start, 0, -2):
        for rest in _partitions2(w2 - d, d, parity):
            yield (d,) + rest


def basis(weight, sector: Sector = Sector.UNTWISTED) -> list:
    """All monomials of the given weight, as a list of monomials (doubled parts)."""
    w2 = to_doubled(weight)
    if w2 < 0:
        return []
    return list(_partitions2(w2, w2, sector.parity))


def basis_upto(weight, sector: Sector = Sector.UNTWISTED) -> list:
    """Monomials of every weight from 0 up to ``weight`` inclusive."""
    w2max = to_doubled(weight)
    out = []
    for w2 in range(0, w2max + 1):
        out.extend(_partitions2(w2, w2, sector.parity))
    return out


def random_element(rng, max_weight: int = 5, max_terms: int = 3,
                   homogeneous: bool = False) -> FockVector:
    """Random element of M(1) of weight <= max_weight with small rational coefficients."""
    weight = rng.randint(0, max_weight)
    pool = basis(weight) if homogeneous else basis_upto(weight)
    picks = rng.sample(pool, rng.randint(1, min(max_terms, len(pool))))
    return FockVector({m: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
                       for m in picks})


def collect(parts: Monomial) -> list:
    """``[(index, exponent), ...]`` for a monomial, largest index first."""
    cnt = Counter(parts)
    return [(from_doubled(d), cnt[d]) for d in sorted(cnt, reverse=True)]
