"""Exact fractional chromatic number.

``chi_f(G)`` is the optimum of the covering LP

    minimize  sum_S x_S   subject to  sum_{S containing v} x_S >= 1,  x >= 0

over maximal independent sets ``S``. We solve its dual (vertex weights, at
most 1 on every independent set) with the exact simplex in :mod:`.lp`; the
dual multipliers of that solve are the set weights, so both sides of the
certificate come out of one run and are checked independently afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HedetniemiError, InputError, PreconditionError, ResourceError
from .graph import Graph, bits
from .lp import solve_packing

#: Default hypothesis threshold on chi_f used by the verifier.
CHI_F_THRESHOLD = Fraction(31, 10)
MAX_COLUMNS = 10**5


class CertificateError(HedetniemiError):
    """An LP certificate failed its exact feasibility or duality check."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def maximal_independent_sets(G: Graph, cap: int = MAX_COLUMNS) -> list[int]:
    """All maximal independent sets as vertex bitsets, sorted by bitset value.

    Bron-Kerbosch with Tomita pivoting on the complement graph.
    """
    if G.loops:
        raise PreconditionError("maximal_independent_sets expects a loop-free graph")
    full = (1 << G.n) - 1
    comp = [full & ~G.adj[v] & ~(1 << v) for v in range(G.n)]
    found: list[int] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            found.append(R)
            if len(found) > cap:
                raise ResourceError(
                    f"more than {cap} maximal independent sets; column generation would be needed"
                )
            return
        pivot = max(bits(P | X), key=lambda u: (comp[u] & P).bit_count())
        for v in bits(P & ~comp[pivot]):
            expand(R | (1 << v), P & comp[v], X & comp[v])
            P &= ~(1 << v)
            X |= 1 << v

    expand(0, full, 0)
    return sorted(found)


@dataclass
class FractionalCertificate:
    value: Fraction
    primal: dict[int, Fraction]  # independent-set bitset -> weight
    dual: list[Fraction]  # per-vertex weight
    columns: list[int]

    def check(self, G: Graph) -> None:
        """Raise :class:`CertificateError` unless both sides are feasible with equal value."""
        _require(all(w >= 0 for w in self.primal.values()), "negative set weight")
        for S in self.primal:
            for u in bits(S):
                _require(not (G.adj[u] & S), f"set {S:#b} is not independent")
        for v in range(G.n):
            cover = sum((w for S, w in self.primal.items() if (S >> v) & 1), Fraction(0))
            _require(cover >= 1, f"vertex {v} is covered only {cover}")
        _require(all(y >= 0 for y in self.dual), "negative vertex weight")
        for S in self.columns:
            load = sum((self.dual[v] for v in bits(S)), Fraction(0))
            _require(load <= 1, f"independent set {S:#b} has load {load}")
        _require(sum(self.primal.values(), Fraction(0)) == self.value, "primal value mismatch")
        _require(sum(self.dual, Fraction(0)) == self.value, "dual value mismatch")

    def to_json(self, G: Graph) -> dict:
        return {
            "value": format_rational(self.value),
            "primal": [
                {"set": [v + 1 for v in bits(S)], "weight": format_rational(w)}
                for S, w in sorted(self.primal.items())
            ],
            "dual": [format_rational(y) for y in self.dual],
        }


def fractional_chromatic_number(G: Graph, cap: int = MAX_COLUMNS) -> FractionalCertificate:
    if G.loops:
        raise PreconditionError("fractional chromatic number needs a loop-free graph")
    columns = maximal_independent_sets(G, cap)
    A = [[(S >> v) & 1 for v in range(G.n)] for S in columns]
    sol = solve_packing(A, [1] * len(columns), [1] * G.n)
    primal = {S: w for S, w in zip(columns, sol.dual) if w}
    cert = FractionalCertificate(sol.value, primal, sol.primal, columns)
    cert.check(G)
    return cert


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def strong_product_chi_lower_bound(G: Graph, q: int, chi_f: Fraction | None = None) -> int:
    """``ceil(q * chi_f(G))``, a lower bound on ``chi(G [x] K_q)``."""
    if q < 1:
        raise InputError("q must be a positive integer")
    if chi_f is None:
        chi_f = fractional_chromatic_number(G).value
    return ceil_fraction(q * chi_f)


def default_palette(q: int, threshold: Fraction = CHI_F_THRESHOLD) -> int:
    """``c = ceil(threshold * q)``; with the default threshold, ``ceil(3.1 q)``."""
    return ceil_fraction(threshold * q)


__all__ = [
    "CHI_F_THRESHOLD",
    "CertificateError",
    "FractionalCertificate",
    "ceil_fraction",
    "default_palette",
    "format_rational",
    "fractional_chromatic_number",
    "maximal_independent_sets",
    "parse_rational",
    "strong_product_chi_lower_bound",
]

