"""The generators omega and J of M(1)^+ and exact checks of the relations they satisfy.

Nested mode words such as ``omega_{-1}^2 J_{-2} vac`` are read innermost first:
``omega_{-1}(omega_{-1}(J_{-2} vac))``.  A word is written as a compact string,
e.g. ``"o-1^2 J-2"``, where ``o`` is omega and ``J`` is J.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .errors import DegenerateInput
from .fock import FockVector, Sector, basis_upto, random_element, vacuum
from .grammar import parse_element
from .vertex_ops import binomial, borcherds_sides, nth_product

__all__ = [
    "OMEGA",
    "JAY",
    "VAC",
    "generator",
    "evaluate_word",
    "evaluate_combination",
    "RelationReport",
    "P9_TERMS",
    "P10_TERMS",
    "JJ_TERMS",
    "assemble_relation",
    "verify_lie_oj",
    "verify_lie_oj_operator",
    "verify_jj_commutator",
    "verify_jj_operator",
    "central_charge",
    "bareiss_det",
    "determinant_matrix",
    "determinant_closed_form",
    "verify_determinant_lemma",
    "run_all",
]

VAC = vacuum()
OMEGA = parse_element("1/2*h(-1)^2 vac")
JAY = parse_element("h(-1)^4 vac - 2*h(-3)h(-1) vac + 3/2*h(-2)^2 vac")

_GENERATORS = {"omega": OMEGA, "o": OMEGA, "jay": JAY, "J": JAY, "vac": VAC}


def generator(name: str) -> FockVector:
    """``omega``, ``jay`` (alias ``J``) or ``vac``."""
    try:
        return _GENERATORS[name]
    except KeyError:
        raise KeyError(f"unknown generator {name!r}") from None


def _parse_word(word: str) -> List[Tuple[str, int]]:
    ops: List[Tuple[str, int]] = []
    for tok in word.split():
        base, _, power = tok.partition("^")
        name = base[0]
        mode = int(base[1:])
        ops.extend([(name, mode)] * (int(power) if power else 1))
    return ops


def evaluate_word(word: str) -> FockVector:
    """Evaluate a mode word such as ``"o-2 o-1 J-1"`` applied to the vacuum."""
    v = VAC
    for name, mode in reversed(_parse_word(word)):
        v = nth_product(generator(name), mode, v)
    return v


def evaluate_combination(terms: Iterable[Tuple[Fraction, str]]) -> FockVector:
    total = FockVector({}, Sector.UNTWISTED)
    for coeff, word in terms:
        total = total + Fraction(coeff) * evaluate_word(word)
    return total


F = Fraction

P9_TERMS: Tuple[Tuple[Fraction, str], ...] = (
    (F(30), "J-6"),
    (F(-30), "o-1 J-4"),
    (F(27), "o-2 J-3"),
    (F(-39), "o-3 J-2"),
    (F(16), "o-1^2 J-2"),
    (F(52), "o-4 J-1"),
    (F(-32), "o-2 o-1 J-1"),
)

P10_TERMS: Tuple[Tuple[Fraction, str], ...] = (
    (F(8192, 525), "o-1^5"),
    (F(-2048, 525), "o-1^3 J-1"),
    (F(1), "J-2^2"),
    (F(-13856, 105), "o-2^2 o-1^2"),
    (F(-22528, 105), "o-3 o-1^3"),
    (F(-45624, 175), "o-3 o-2^2"),
    (F(-2304, 175), "o-3^2 o-1"),
    (F(-134224, 525), "o-4 o-2 o-1"),
    (F(-60848, 525), "o-4^2"),
    (F(-2176, 75), "o-5 o-1^2"),
    (F(-576, 175), "o-5 o-3"),
    (F(117664, 175), "o-6 o-2"),
    (F(436416, 175), "o-7 o-1"),
    (F(252832, 175), "o-9"),
    (F(24184, 1575), "o-2^2 J-1"),
    (F(65024, 1575), "o-3 o-1 J-1"),
    (F(-150176, 1575), "o-5 J-1"),
    (F(152, 525), "o-2 o-1 J-2"),
    (F(17102, 1575), "o-4 J-2"),
    (F(1024, 315), "o-1^2 J-3"),
    (F(2544, 175), "o-3 J-3"),
    (F(382, 525), "o-2 J-4"),
    (F(-1088, 525), "o-1 J-5"),
)

# J_k J for k = 0..7 written in terms of omega and J; binomial prefactors folded in.
JJ_TERMS: Dict[int, Tuple[Tuple[Fraction, str], ...]] = {
    0: ((F(-1392, 5), "o-6"), (F(-2784, 5), "o-4 o-1"), (F(120), "o-3 o-2"),
        (F(1632, 5), "o-2 o-1^2"), (F(-56, 5), "o-2 J-1"), (F(-56, 5), "o-1 J-2"),
        (F(6, 5), "J-4")),
    1: ((F(-1856, 5), "o-5"), (F(-2384, 5), "o-3 o-1"), (F(1316, 5), "o-2^2"),
        (F(1088, 5), "o-1^3"), (F(-112, 5), "o-1 J-1"), (F(-46, 5), "J-3")),
    2: ((F(-48), "o-4"), (F(336), "o-2 o-1"), (F(-30), "J-2")),
    3: ((F(-72), "o-3"), (F(336), "o-1^2"), (F(-60), "J-1")),
    4: ((F(216), "o-2"),),
    5: ((F(432), "o-1"),),
    6: (),
    7: ((F(54), ""),),
}


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one verification.

    ``details`` lists every sub-check as ``(label, residual)``; ``residual`` is
    the first nonzero one (the zero vector when everything passed).
    """

    name: str
    expected: object
    computed: FockVector
    residual: FockVector
    details: Tuple[Tuple[str, FockVector], ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    # alias for callers that expect a `pass_` attribute
    @property
    def pass_(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failing = sum(1 for _, r in self.details if r)
        extra = f" checks={len(self.details)} failing={failing}" if self.details else ""
        return f"{self.name}: {status} residual_terms={len(self.residual)}{extra}"


def _report(name, expected, computed, details) -> RelationReport:
    zero = FockVector({}, computed.sector)
    first = next((r for _, r in details if r), zero)
    return RelationReport(name, expected, computed, first, tuple(details))


def assemble_relation(name: str) -> RelationReport:
    """Expand ``P9`` or ``P10`` in the Fock basis; it should vanish."""
    terms = {"P9": P9_TERMS, "P10": P10_TERMS}.get(name)
    if terms is None:
        raise KeyError(f"unknown relation {name!r}; expected P9 or P10")
    computed = evaluate_combination(terms)
    zero = FockVector({}, Sector.UNTWISTED)
    return _report(name, zero, computed, [(name, computed)])


def verify_lie_oj_operator(i_range: Iterable[int], j_range: Iterable[int],
                           max_weight: int = 6) -> List[Tuple[str, FockVector]]:
    """``[omega_i, J_j] w - (3i - j) J_{i+j-1} w`` on every basis vector of weight <= max_weight."""
    details = []
    vectors = [FockVector({m: 1}) for m in basis_upto(max_weight)]
    for i in i_range:
        for j in j_range:
            res = FockVector({}, Sector.UNTWISTED)
            for w in vectors:
                lhs = nth_product(OMEGA, i, nth_product(JAY, j, w)) - nth_product(
                    JAY, j, nth_product(OMEGA, i, w))
                rhs = (3 * i - j) * nth_product(JAY, i + j - 1, w)
                if lhs != rhs and not res:
                    res = lhs - rhs
            details.append((f"[omega_{i}, J_{j}] on weight<={max_weight}", res))
    return details


def verify_lie_oj(i_range: Iterable[int] = range(-1, 4), j_range: Iterable[int] = range(-1, 4),
                  max_weight: int = 6) -> RelationReport:
    """Check ``[omega_i, J_j] = (3i - j) J_{i+j-1}``.

    Structurally via ``omega_0 J = L(-1)J``, ``omega_1 J = 4J``, ``omega_k J = 0``
    for ``2 <= k <= 7``; then as operators on a basis.
    """
    details = []
    l_minus_1 = FockVector({}, Sector.UNTWISTED)
    # L(-1) acts on a monomial by sum over parts i of i*h(-i-1) replacing h(-i)
    for mono, c in JAY.items():
        for pos, d in enumerate(mono):
            new = mono[:pos] + (d + 2,) + mono[pos + 1:]
            l_minus_1 = l_minus_1 + FockVector({new: c * (d // 2)})
    computed = nth_product(OMEGA, 0, JAY)
    details.append(("omega_0 J = L(-1) J", computed - l_minus_1))
    details.append(("omega_1 J = 4 J", nth_product(OMEGA, 1, JAY) - 4 * JAY))
    for k in range(2, 8):
        details.append((f"omega_{k} J = 0", nth_product(OMEGA, k, JAY)))
    details.extend(verify_lie_oj_operator(i_range, j_range, max_weight))
    return _report("lie_oj", "(3i-j) J_{i+j-1}", computed, details)


def jj_expected(k: int) -> FockVector:
    if k in JJ_TERMS:
        return evaluate_combination(JJ_TERMS[k])
    return FockVector({}, Sector.UNTWISTED)


def verify_jj_commutator(k_max: int = 10) -> RelationReport:
    """``J_k J`` against the displayed elements for ``k = 0..7`` and zero for ``k = 8..k_max``."""
    details = []
    for k in range(0, k_max + 1):
        got = nth_product(JAY, k, JAY)
        details.append((f"J_{k} J", got - jj_expected(k)))
    return _report("jj_commutator", "displayed J_k J", nth_product(JAY, 0, JAY), details)


def verify_jj_operator(pairs: Iterable[Tuple[int, int]], max_weight: int = 4) -> RelationReport:
    """``[J_i, J_j] w`` against ``sum_k C(i,k) (E_k)_{i+j-k} w`` with the displayed ``E_k``."""
    vectors = [FockVector({m: 1}) for m in basis_upto(max_weight)]
    expected = {k: jj_expected(k) for k in range(8)}
    details = []
    for i, j in pairs:
        res = FockVector({}, Sector.UNTWISTED)
        for w in vectors:
            lhs = nth_product(JAY, i, nth_product(JAY, j, w)) - nth_product(
                JAY, j, nth_product(JAY, i, w))
            rhs = FockVector({}, Sector.UNTWISTED)
            for k, e in expected.items():
                c = binomial(i, k)
                if c and e:
                    rhs = rhs + c * nth_product(e, i + j - k, w)
            if lhs != rhs and not res:
                res = lhs - rhs
        details.append((f"[J_{i}, J_{j}] on weight<={max_weight}", res))
    zero = FockVector({}, Sector.UNTWISTED)
    return _report("jj_operator", "commutator formula", zero, details)


def central_charge() -> Fraction:
    """Twice the vacuum coefficient of ``omega_3 omega``."""
    return 2 * nth_product(OMEGA, 3, OMEGA).coefficient(())


# -- determinant of the binomial matrix ------------------------------------


def _index_set(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]


def determinant_matrix(n: int, x: Sequence, y: Sequence) -> List[List[Fraction]]:
    """Rows ``(i, j)``, columns ``(k, l)`` over ``i + j <= n``: entry ``C(x_i, k) C(y_j, l)``."""
    s = _index_set(n)
    return [[binomial(Fraction(x[i]), k) * binomial(Fraction(y[j]), l) for k, l in s]
            for i, j in s]


def bareiss_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; all eliminations divide exactly.
    """
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    rows, scale = [], 1
    for row in matrix:
        row = [Fraction(a) for a in row]
        den = lcm(*(a.denominator for a in row))
        rows.append([int(a * den) for a in row])
        scale *= den
    sign, prev = 1, 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if rows[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                rows[r][c] = (rows[r][c] * pivot - rows[r][k] * rows[k][c]) // prev
            rows[r][k] = 0
        prev = pivot
    return Fraction(sign * rows[-1][-1], scale)


def determinant_closed_form(n: int, x: Sequence, y: Sequence) -> Fraction:
    num, den = Fraction(1), Fraction(1)
    for a, b in combinations(range(n + 1), 2):
        e = n + 1 - b
        num *= (Fraction(x[a]) - Fraction(x[b])) ** e * (Fraction(y[a]) - Fraction(y[b])) ** e
        den *= Fraction(a - b) ** (2 * e)
    return num / den


def verify_determinant_lemma(n: int, x: Sequence, y: Sequence) -> RelationReport:
    if len(x) != n + 1 or len(y) != n + 1:
        raise ValueError("need n+1 points in each coordinate")
    if len(set(map(Fraction, x))) != n + 1 or len(set(map(Fraction, y))) != n + 1:
        raise DegenerateInput("evaluation points must be pairwise distinct")
    det = bareiss_det(determinant_matrix(n, x, y))
    closed = determinant_closed_form(n, x, y)
    diff = FockVector({(): det - closed})
    return _report(f"determinant n={n}", closed, FockVector({(): det}), [("det - closed form", diff)])


def run_all(only: str | None = None) -> List[RelationReport]:
    """The full verification suite used by the command line ``verify``."""
    suite: Dict[str, Callable[[], RelationReport]] = {
        "P9": lambda: assemble_relation("P9"),
        "P10": lambda: assemble_relation("P10"),
        "jj_commutator": verify_jj_commutator,
        "jj_operator": lambda: verify_jj_operator(
            [(i, j) for i in range(-2, 5) for j in range(-2, 5)], 4),
        "lie_oj": verify_lie_oj,
        "central_charge": _central_charge_report,
        "determinant": _determinant_report,
        "borcherds": borcherds_report,
    }
    if only is not None:
        if only not in suite:
            raise KeyError(f"unknown verification {only!r}; choose from {', '.join(suite)}")
        return [suite[only]()]
    return [fn() for fn in suite.values()]


def _central_charge_report() -> RelationReport:
    got = nth_product(OMEGA, 3, OMEGA)
    expected = Fraction(1, 2) * VAC
    return _report("central_charge", "c = 1", got, [("omega_3 omega = 1/2 vac", got - expected)])


def _determinant_report() -> RelationReport:
    details = []
    samples = {0: ([F(3)], [F(-2)]),
               1: ([F(2), F(0)], [F(3), F(1)]),
               2: ([F(1, 2), F(-3), F(5, 7)], [F(2), F(-1, 3), F(4)]),
               3: ([F(1), F(-2), F(7, 3), F(0)], [F(5), F(1, 4), F(-3), F(2, 9)])}
    for n, (x, y) in samples.items():
        rep = verify_determinant_lemma(n, x, y)
        details.extend(rep.details)
    zero = FockVector({}, Sector.UNTWISTED)
    return _report("determinant", "closed form", zero, details)


def borcherds_report(count: int = 30, seed: int = 0, max_weight: int = 5) -> RelationReport:
    """Borcherds identity on seeded random triples with ``p, q, r`` in ``[-3, 3]``."""
    rng = random.Random(seed)
    details = []
    for _ in range(count):
        u, v, w = (random_element(rng, max_weight) for _ in range(3))
        p, q, r = (rng.randint(-3, 3) for _ in range(3))
        left, right = borcherds_sides(u, v, w, p, q, r)
        details.append((f"borcherds p={p} q={q} r={r}", left - right))
    zero = FockVector({}, Sector.UNTWISTED)
    return _report("borcherds", "left = right", zero, details)
