"""Mode actions of M(1) on the Whittaker modules M(1, zeta) and their twisted versions.

Untwisted: ``h(i)`` for ``0 <= i <= r`` acts on the cyclic vector ``u`` by
``zeta_i`` and higher ``h(i)`` kill it.  Twisted: the same with half-integer
``i = 1/2, ..., r - 1/2``; the vertex operator is ``Y_0(e^{Delta_x} u, x)``
where ``Delta_x = sum c_mn h(m) h(n) x^{-m-n}`` and the ``c_mn`` are the
coefficients of ``-log(((1+x)^(1/2) + (1+y)^(1/2)) / 2)``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from .errors import DegenerateType, NotWhittaker, SectorError
from .fock import FockVector, Sector, annihilate_monomial, to_doubled, vacuum
from .grammar import format_element, parse_element
from .vertex_ops import ModeContext, binomial, field_mode

__all__ = [
    "WhittakerParams",
    "WhittakerType",
    "ModuleVector",
    "CmnTable",
    "cmn_table",
    "exp_delta",
    "module_mode_action",
    "whittaker_type_of",
    "j_eigenvalues",
    "eigenvalue",
]


@dataclass(frozen=True)
class WhittakerParams:
    """Sector plus the tuple zeta.

    Untwisted: ``zeta = (zeta_0, ..., zeta_r)``.  Twisted:
    ``zeta = (zeta_{1/2}, ..., zeta_{r-1/2})``.  Trailing zeros are kept; they
    change ``r``.
    """

    sector: Sector
    zeta: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.zeta:
            raise ValueError("zeta must be non-empty")
        object.__setattr__(self, "zeta", tuple(Fraction(z) for z in self.zeta))

    @classmethod
    def untwisted(cls, *zeta) -> "WhittakerParams":
        return cls(Sector.UNTWISTED, tuple(zeta))

    @classmethod
    def twisted(cls, *zeta) -> "WhittakerParams":
        return cls(Sector.TWISTED, tuple(zeta))

    @property
    def r(self) -> int:
        return len(self.zeta) - 1 if self.sector is Sector.UNTWISTED else len(self.zeta)

    def doubled_indices(self) -> Tuple[int, ...]:
        """Doubled index carried by each zeta entry."""
        if self.sector is Sector.UNTWISTED:
            return tuple(2 * k for k in range(len(self.zeta)))
        return tuple(2 * k + 1 for k in range(len(self.zeta)))

    def value(self, index) -> Fraction:
        """``zeta_index`` (zero outside the stored range)."""
        d = to_doubled(index)
        for dd, z in zip(self.doubled_indices(), self.zeta):
            if dd == d:
                return z
        return Fraction(0)

    def context(self) -> ModeContext:
        nz = tuple((d, z) for d, z in zip(self.doubled_indices(), self.zeta) if z)
        reach = max((d for d, _ in nz), default=0)
        return ModeContext(self.sector is Sector.TWISTED, nz, reach)

    def __neg__(self) -> "WhittakerParams":
        return WhittakerParams(self.sector, tuple(-z for z in self.zeta))

    def cyclic(self) -> "ModuleVector":
        return ModuleVector(vacuum(self.sector), self)

    def vector(self, text: str) -> "ModuleVector":
        """Parse a module vector written with ``u`` as the cyclic vector."""
        return ModuleVector(parse_element(text, self.sector, cyclic="u"), self)

    def __str__(self) -> str:
        body = ",".join(str(z) for z in self.zeta)
        return f"M(1,({body}))" + ("(theta)" if self.sector is Sector.TWISTED else "")


@dataclass(frozen=True)
class ModuleVector:
    """A vector of M(1, zeta) or M(1, zeta)(theta): Fock monomials on the cyclic vector."""

    vector: FockVector
    params: WhittakerParams

    def __post_init__(self):
        if self.vector.sector is not self.params.sector:
            raise SectorError("vector and parameters belong to different sectors")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if other.params != self.params:
            raise ValueError("vectors live in different modules")
        return ModuleVector(self.vector + other.vector, self.params)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-1) * other

    def __mul__(self, scalar) -> "ModuleVector":
        return ModuleVector(self.vector * scalar, self.params)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.vector)

    def proportional_to_cyclic(self):
        """The scalar ``c`` with ``self == c*u``, or ``None`` if not in span(u)."""
        if not self.vector:
            return Fraction(0)
        if set(m for m, _ in self.vector.items()) == {()}:
            return self.vector.coefficient(())
        return None

    def __str__(self) -> str:
        return format_element(self.vector, cyclic="u")


# -- c_mn ------------------------------------------------------------------


class CmnTable(Mapping):
    """Coefficients ``c_mn`` for ``m + n <= maxdeg``.

    Indexing with ``(m, n)`` returns the full series coefficient (including the
    ``m = 0`` or ``n = 0`` row); :meth:`pairs` yields only ``m, n >= 1``, the
    entries that survive on M(1) where ``h(0) = 0``.
    """

    def __init__(self, coeffs: Dict[Tuple[int, int], Fraction], maxdeg: int):
        self._c = coeffs
        self.maxdeg = maxdeg

    def __getitem__(self, key):
        m, n = key
        if m < 0 or n < 0 or m + n > self.maxdeg:
            raise KeyError(key)
        return self._c.get((m, n), Fraction(0))

    def __iter__(self):
        return ((m, n) for m in range(self.maxdeg + 1) for n in range(self.maxdeg + 1 - m))

    def __len__(self):
        return (self.maxdeg + 1) * (self.maxdeg + 2) // 2

    def pairs(self) -> Iterator[Tuple[int, int, Fraction]]:
        for m in range(1, self.maxdeg):
            for n in range(1, self.maxdeg + 1 - m):
                c = self._c.get((m, n))
                if c:
                    yield m, n, c


def _series_mul(a, b, maxdeg):
    out: Dict[Tuple[int, int], Fraction] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            if i1 + i2 + j1 + j2 <= maxdeg:
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _compute_cmn(maxdeg: int) -> Dict[Tuple[int, int], Fraction]:
    half = Fraction(1, 2)
    # t = ((1+x)^(1/2) + (1+y)^(1/2))/2 - 1, no constant term
    t: Dict[Tuple[int, int], Fraction] = {}
    for k in range(1, maxdeg + 1):
        b = binomial(half, k) / 2
        t[(k, 0)] = b
        t[(0, k)] = b
    # -log(1 + t) = sum_{k>=1} (-1)^k t^k / k
    result: Dict[Tuple[int, int], Fraction] = {}
    power = {(0, 0): Fraction(1)}
    for k in range(1, maxdeg + 1):
        power = _series_mul(power, t, maxdeg)
        coef = Fraction((-1) ** k, k)
        for key, v in power.items():
            result[key] = result.get(key, 0) + coef * v
    return {k: v for k, v in result.items() if v}


_CMN_LOCK = threading.Lock()
_CMN_CACHE: Dict[str, CmnTable] = {}


def cmn_table(maxdeg: int) -> CmnTable:
    """Exact ``c_mn`` for all ``m + n <= maxdeg``; cached per process."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    with _CMN_LOCK:
        cached = _CMN_CACHE.get("table")
        if cached is None or cached.maxdeg < maxdeg:
            cached = CmnTable(_compute_cmn(maxdeg), maxdeg)
            _CMN_CACHE["table"] = cached
    if cached.maxdeg == maxdeg:
        return cached
    sub = {k: v for k, v in cached._c.items() if sum(k) <= maxdeg}
    return CmnTable(sub, maxdeg)


# -- e^{Delta_x} -----------------------------------------------------------


def _delta(v: FockVector, table: CmnTable) -> FockVector:
    out: Dict[tuple, Fraction] = {}
    for mono, c in v.items():
        for m, n, cmn in table.pairs():
            for m1, c1 in annihilate_monomial(2 * n, mono):
                for m2, c2 in annihilate_monomial(2 * m, m1):
                    out[(m + n, m2)] = out.get((m + n, m2), 0) + c * cmn * c1 * c2
    return out


def exp_delta(u: FockVector) -> Dict[int, FockVector]:
    """``e^{Delta_x} u`` as ``{d: v_d}`` meaning ``sum_d v_d x^{-d}``."""
    if u.sector is not Sector.UNTWISTED:
        raise SectorError("exp_delta acts on M(1)")
    table = cmn_table(max(u.max_weight2() // 2, 2))
    result: Dict[int, FockVector] = {0: u} if u else {}
    layer: Dict[int, FockVector] = {0: u}
    k = 0
    while layer:
        k += 1
        nxt: Dict[int, Dict[tuple, Fraction]] = {}
        for d, v in layer.items():
            for (off, mono), c in _delta(v, table).items():
                bucket = nxt.setdefault(d + off, {})
                bucket[mono] = bucket.get(mono, 0) + c / k
        layer = {}
        for d, terms in nxt.items():
            vec = FockVector(terms, Sector.UNTWISTED)
            if vec:
                layer[d] = vec
                result[d] = result.get(d, FockVector({}, Sector.UNTWISTED)) + vec
    return {d: v for d, v in sorted(result.items()) if v}


# -- module action ---------------------------------------------------------


def module_mode_action(u: FockVector, n, w: ModuleVector) -> ModuleVector:
    """``u_n w`` for ``u`` in M(1) and ``w`` in M(1, zeta) or M(1, zeta)(theta).

    ``n`` may be an integer or a half-integer; a mode that cannot contribute
    (half-integer on the untwisted module) gives zero.
    """
    if u.sector is not Sector.UNTWISTED:
        raise SectorError("the acting element must lie in M(1)")
    n2 = to_doubled(n)
    ctx = w.params.context()
    if w.params.sector is Sector.UNTWISTED:
        if n2 % 2:
            return ModuleVector(FockVector({}, Sector.UNTWISTED), w.params)
        return ModuleVector(field_mode(ctx, u, n2, w.vector), w.params)
    total = FockVector({}, Sector.TWISTED)
    for d, vd in exp_delta(u).items():
        total = total + field_mode(ctx, vd, n2 - 2 * d, w.vector)
    return ModuleVector(total, w.params)


def eigenvalue(u: FockVector, n, params: WhittakerParams):
    """Scalar ``c`` with ``u_n u_zeta = c u_zeta``, or ``None`` if not proportional."""
    return module_mode_action(u, n, params.cyclic()).proportional_to_cyclic()


# -- Whittaker types ---------------------------------------------------------


@dataclass(frozen=True)
class WhittakerType:
    """``s >= 2`` and ``lambda_i`` for ``i = floor(s/2)+1, ..., s``."""

    s: int
    lam: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.s < 2:
            raise NotWhittaker("Whittaker types need s >= 2")
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        if len(self.lam) != self.s - self.s // 2:
            raise ValueError(
                f"type with s={self.s} needs {self.s - self.s // 2} eigenvalues, got {len(self.lam)}")
        if self.lam[-1] == 0:
            raise DegenerateType("lambda_s must be nonzero")

    @property
    def indices(self) -> range:
        return range(self.s // 2 + 1, self.s + 1)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.indices, self.lam))

    def __getitem__(self, i: int) -> Fraction:
        return self.as_dict()[i]


def _pair_sum(zeta: Sequence[Fraction], total2: int, doubled: Sequence[int]) -> Fraction:
    # sum of zeta_j zeta_k over j + k = total (doubled units)
    lookup = dict(zip(doubled, zeta))
    return sum((lookup[d] * lookup.get(total2 - d, 0) for d in doubled), Fraction(0))


def whittaker_type_of(params: WhittakerParams) -> WhittakerType:
    """Type of the cyclic vector: ``lambda_i = 1/2 sum_{j+k=i-1} zeta_j zeta_k``."""
    if params.zeta[-1] == 0:
        raise DegenerateType("the last zeta entry must be nonzero")
    r = params.r
    if params.sector is Sector.UNTWISTED:
        if r == 0:
            raise NotWhittaker("r = 0 gives an ordinary module (s = 1)")
        s = 2 * r + 1
    else:
        s = 2 * r
    doubled = params.doubled_indices()
    lam = tuple(_pair_sum(params.zeta, 2 * (i - 1), doubled) / 2 for i in range(r + 1, s + 1))
    return WhittakerType(s, lam)


def j_eigenvalues(params: WhittakerParams, upto: int | None = None) -> Dict[int, Fraction]:
    """``{i: mu_i}`` for every ``0 <= i <= upto`` with ``J_i u = mu_i u``.

    Computed by acting with J; ``upto`` defaults to ``2s + 3`` so the top
    eigenvalue at ``2s + 1`` and the first vanishing modes are included.
    """
    from .identities import JAY

    s = whittaker_type_of(params).s
    upto = 2 * s + 3 if upto is None else upto
    out: Dict[int, Fraction] = {}
    for i in range(0, upto + 1):
        c = eigenvalue(JAY, i, params)
        if c is not None:
            out[i] = c
    return out
