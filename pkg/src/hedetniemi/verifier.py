"""Desk-scale checks of the individual steps behind the counterexample.

Nothing here certifies the full theorem (that needs astronomically large
``q``). Each step is checked at the given parameters and reported with a
machine-checkable witness or a counterexample.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .chromatic import Budget, Coloring, chromatic_number, find_proper_coloring, make_suited
from .errors import InputError, ResourceError, SearchTimeout
from .exponential import (
    ExponentialContext,
    Mapping,
    adjacency_obstruction,
    canonical_coloring,
    exp_adjacent,
    exponential_graph,
    restrict_to_clique_constant,
    sample_canonical_coloring,
)
from .fractional import (
    CHI_F_THRESHOLD,
    default_palette,
    format_rational,
    fractional_chromatic_number,
    strong_product_chi_lower_bound,
)
from .graph import INFINITE, Graph, add_loops, bfs_distances, bits, closed_neighborhood, girth
from .products import DEFAULT_VERTEX_GUARD, strong_product_kq, strong_vertex

PASS, FAIL, SKIPPED, VACUOUS = "PASS", "FAIL", "SKIPPED", "VACUOUS"
HYPOTHESIS, CHECK = "hypothesis", "check"

DEFAULT_SAMPLES = 10**5
#: Largest E_c(G [x] K_q) that step (f) will try to color.
TOY_LIMIT = 4096


# ---------------------------------------------------------------------------
# I(u, b) classes and robustness

def class_I(ctx: ExponentialContext, psi: Coloring, u: int, b: int) -> list[Mapping]:
    """Mappings ``phi`` with ``psi(phi) == b`` and ``phi(u) == b``, in index order."""
    ctx.gamma.check_vertex(u)
    _require_enumerable(ctx, psi)
    return [phi for idx, phi in enumerate(ctx.mappings()) if psi[idx] == b and phi[u] == b]


def _require_enumerable(ctx: ExponentialContext, psi: Coloring) -> None:
    if ctx.size > ctx.guard:
        raise ResourceError(f"E_c has {ctx.size} vertices, above the guard of {ctx.guard}")
    if len(psi) != ctx.size:
        raise InputError(f"coloring has {len(psi)} entries, E_c has {ctx.size} vertices")


def large_class_threshold(n: int, c: int) -> int | Fraction:
    """``n**2 * c**(n - 2)``; a class ``I(u, b)`` is large when it has more elements."""
    if n < 1 or c < 1:
        raise InputError("n and c must be positive")
    value = Fraction(n * n) * Fraction(c) ** (n - 2)
    return value.numerator if value.denominator == 1 else value


def robust_count_bound(n: int, c: int) -> float:
    """``c - (n**3 * c**(n-1)) ** (1/n)`` as a float no larger than the true value.

    Exact checks never use this float; see :func:`robust_count_satisfied`.
    """
    if n < 1 or c < 1:
        raise InputError("n and c must be positive")
    try:
        root = float(n**3 * c ** (n - 1)) ** (1.0 / n)
    except OverflowError:
        root = math.exp((3 * math.log(n) + (n - 1) * math.log(c)) / n)
    root = math.nextafter(math.nextafter(root, math.inf), math.inf)
    return math.nextafter(c - root, -math.inf)


def robust_count_satisfied(k: int, n: int, c: int) -> bool:
    """Exact test of ``k >= c - (n**3 c**(n-1))**(1/n)``.

    Equivalent to ``k >= c`` or ``(c - k)**n <= n**3 * c**(n-1)``.
    """
    if k >= c:
        return True
    return (c - k) ** n <= n**3 * c ** (n - 1)


def robust_bound_vacuous(n: int, c: int) -> bool:
    """True when the bound is ``<= 0``, i.e. ``c <= n**3``."""
    return c**n <= n**3 * c ** (n - 1)


@dataclass
class RobustnessReport:
    v: int
    robust_colors: list[int]
    bound: float
    satisfied: bool
    vacuous: bool

    def to_json(self) -> dict:
        return {
            "v": self.v + 1,
            "robust_colors": self.robust_colors,
            "robust_count": len(self.robust_colors),
            "bound": self.bound,
            "satisfied": self.satisfied,
            "vacuous": self.vacuous,
        }


def is_v_robust(ctx: ExponentialContext, psi: Coloring, v: int, b: int) -> bool:
    ball = list(bits(closed_neighborhood(ctx.gamma, v)))
    for idx, phi in enumerate(ctx.mappings()):
        if psi[idx] == b and not any(phi[w] == b for w in ball):
            return False
    return True


def robust_classes(ctx: ExponentialContext, psi: Coloring, v: int) -> RobustnessReport:
    """Which color classes of a suited coloring are ``v``-robust.

    Class ``b`` is ``v``-robust when every mapping colored ``b`` sends some
    vertex of the closed neighborhood of ``v`` to ``b``; an empty class is
    robust vacuously.
    """
    _require_enumerable(ctx, psi)
    ball = list(bits(closed_neighborhood(ctx.gamma, v)))
    robust = [True] * (ctx.c + 1)
    for idx, phi in enumerate(ctx.mappings()):
        b = psi[idx]
        if robust[b] and not any(phi[w] == b for w in ball):
            robust[b] = False
    colors = [b for b in range(1, ctx.c + 1) if robust[b]]
    return RobustnessReport(
        v=v,
        robust_colors=colors,
        bound=robust_count_bound(ctx.n, ctx.c),
        satisfied=robust_count_satisfied(len(colors), ctx.n, ctx.c),
        vacuous=robust_bound_vacuous(ctx.n, ctx.c),
    )


def robustness_sweep(ctx: ExponentialContext, psi: Coloring) -> list[RobustnessReport]:
    return [robust_classes(ctx, psi, v) for v in range(ctx.n)]


def color_in_image_violations(ctx: ExponentialContext, psi: Coloring) -> list[int]:
    """Indices of mappings whose color is not among their own values."""
    _require_enumerable(ctx, psi)
    return [idx for idx, phi in enumerate(ctx.mappings()) if psi[idx] not in phi]


def class_cover_violations(ctx: ExponentialContext, psi: Coloring) -> list[int]:
    """Indices of mappings lying in no class ``I(u, b)``."""
    _require_enumerable(ctx, psi)
    return [idx for idx, phi in enumerate(ctx.mappings()) if not any(phi[u] == psi[idx] for u in range(ctx.n))]


# ---------------------------------------------------------------------------
# the clique M and the mapping nu on G [x] K_q

@dataclass
class CliqueM:
    v: int
    q: int
    c: int
    ts: list[int]
    mappings: list[Mapping]
    girth_ok: bool
    warnings: list[str]
    violation: dict | None

    @property
    def is_clique(self) -> bool:
        return self.violation is None

    def mu(self, t: int) -> Mapping:
        return self.mappings[t - self.q - 1]


def _check_simple(G: Graph) -> None:
    if G.has_loops:
        raise InputError("the constructions expect a simple graph G")


def _strong_ctx(G: Graph, q: int, c: int) -> ExponentialContext:
    return ExponentialContext(strong_product_kq(G, q), c)


def _describe_obstruction(q: int, arc: tuple[int, int] | None) -> dict | None:
    if arc is None:
        return None
    x, y = (strong_vertex(q, a) for a in arc)
    return {"x": [x.left, x.right], "y": [y.left, y.right]}


def build_clique_M(G: Graph, q: int, c: int, v: int) -> CliqueM:
    """The maps ``mu_t``, ``t = q+1..c``, on ``G [x] K_q``.

    By distance from ``v``: ``(g, i) -> i`` at distance 0 or 2,
    ``(g, i) -> q + i`` at distance 1 and ``(g, i) -> t`` at distance 3 or more
    (including unreachable ``g``). Pairwise adjacency is checked; when it fails
    the first offending pair is kept in ``violation`` with product vertices as
    ``(g, i)``, ``g`` 0-based and ``i`` in ``1..q``.
    """
    _check_simple(G)
    G.check_vertex(v)
    if q < 1 or c <= q:
        raise InputError(f"need c > q >= 1, got q={q}, c={c}")
    if c < 2 * q:
        raise InputError(f"need c >= 2q so the ranges 1..q and q+1..2q fit, got q={q}, c={c}")
    warnings = []
    g_girth = girth(G)
    girth_ok = g_girth != INFINITE and g_girth >= 6
    if not girth_ok:
        warnings.append(f"girth(G) = {g_girth}; the clique property is only guaranteed for finite girth >= 6")
    d = bfs_distances(G, v)
    ts = list(range(q + 1, c + 1))
    maps = []
    for t in ts:
        values = []
        for g in range(G.n):
            for i in range(1, q + 1):
                if d[g] in (0, 2):
                    values.append(i)
                elif d[g] == 1:
                    values.append(q + i)
                else:
                    values.append(t)
        maps.append(tuple(values))
    ctx = _strong_ctx(G, q, c)
    violation = None
    for s in range(len(maps)):
        for t in range(s + 1, len(maps)):
            if not exp_adjacent(ctx, maps[s], maps[t]):
                arc = adjacency_obstruction(ctx, maps[s], maps[t])
                violation = {
                    "s": ts[s],
                    "t": ts[t],
                    "identical": maps[s] == maps[t],
                    "pair": _describe_obstruction(q, arc),
                }
                break
        if violation:
            break
    return CliqueM(v, q, c, ts, maps, girth_ok, warnings, violation)


@dataclass
class NuMapping:
    mapping: Mapping
    tau: int
    sigma: int
    adjacent_to_mu: bool
    obstruction: dict | None


def build_nu(G: Graph, q: int, c: int, v: int, tau: int, sigma: int) -> NuMapping:
    """``nu(g, i) = tau`` on the closed neighborhood of ``v``, ``sigma`` elsewhere.

    Adjacency to ``mu_tau`` in ``E_c(G [x] K_q)`` is evaluated by the oracle
    and recorded, not assumed.
    """
    _check_simple(G)
    G.check_vertex(v)
    if q < 1 or c <= q:
        raise InputError(f"need c > q >= 1, got q={q}, c={c}")
    if not q + 1 <= tau <= c:
        raise InputError(f"tau must lie in {q + 1}..{c}, got {tau}")
    if not 1 <= sigma <= c or sigma <= 2 * q or sigma == tau:
        raise InputError(f"sigma must lie in {2 * q + 1}..{c} and differ from tau, got {sigma}")
    ball = closed_neighborhood(G, v)
    values = tuple(tau if (ball >> g) & 1 else sigma for g in range(G.n) for _ in range(q))
    d = bfs_distances(G, v)
    mu = tuple(
        i if d[g] in (0, 2) else q + i if d[g] == 1 else tau
        for g in range(G.n) for i in range(1, q + 1)
    )
    ctx = _strong_ctx(G, q, c)
    adjacent = exp_adjacent(ctx, values, mu)
    obstruction = None
    if not adjacent:
        arc = adjacency_obstruction(ctx, values, mu)
        obstruction = {"identical": values == mu, "pair": _describe_obstruction(q, arc)}
    return NuMapping(values, tau, sigma, adjacent, obstruction)


# ---------------------------------------------------------------------------
# end-to-end report

@dataclass
class StepResult:
    step: str
    title: str
    kind: str
    status: str
    evidence: dict[str, Any] = field(default_factory=dict)
    violation: bool = False

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "title": self.title,
            "kind": self.kind,
            "status": self.status,
            "violation": self.violation,
            "evidence": self.evidence,
        }


@dataclass
class ClaimReport:
    params: dict[str, Any]
    seed: int
    steps: list[StepResult]

    @property
    def violations(self) -> list[StepResult]:
        """Failed checks whose guarantee was in force; hypothesis misses excluded."""
        return [s for s in self.steps if s.violation]

    def step(self, name: str) -> StepResult:
        return next(s for s in self.steps if s.step == name)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "params": self.params,
            "seed": self.seed,
            "steps": [s.to_json() for s in self.steps],
            "summary": {
                "hypotheses_met": all(s.status == PASS for s in self.steps if s.kind == HYPOTHESIS),
                "violations": [s.step for s in self.violations],
                "scope": "steps checked at these parameters only; the theorem needs sufficiently large q",
            },
        }


class _Argument:
    def __init__(self, G: Graph, q: int, c: int, budget: Budget, seed: int,
                 threshold: Fraction, samples: int, guard: int):
        self.G, self.q, self.c = G, q, c
        self.budget, self.seed = budget, seed
        self.threshold, self.samples, self.guard = threshold, samples, guard
        self.girth = girth(G)
        self.girth_ok = self.girth != INFINITE and self.girth >= 6

    # (a)
    def hypothesis_girth(self) -> StepResult:
        g = self.girth
        ev = {"girth": "infinite" if g == INFINITE else int(g), "required": ">= 6 and finite"}
        return StepResult("a", "G has finite girth >= 6", HYPOTHESIS, PASS if self.girth_ok else FAIL, ev)

    # (b)
    def hypothesis_chi_f(self) -> StepResult:
        try:
            cert = fractional_chromatic_number(self.G)
        except ResourceError as exc:
            return StepResult("b", "chi_f(G) > threshold", HYPOTHESIS, SKIPPED, {"reason": str(exc)})
        ok = cert.value > self.threshold
        ev = {
            "chi_f": format_rational(cert.value),
            "threshold": format_rational(self.threshold),
            "certificate": cert.to_json(self.G),
        }
        if not ok:
            ev["note"] = "hypothesis of the full theorem not met by this G; later steps still run"
        return StepResult("b", "chi_f(G) > threshold", HYPOTHESIS, PASS if ok else FAIL, ev)

    # (c)
    def strong_product_bound(self) -> StepResult:
        try:
            chi_f = fractional_chromatic_number(self.G).value
        except ResourceError as exc:
            return StepResult("c", "chi(G [x] K_q) >= ceil(q chi_f(G))", CHECK, SKIPPED, {"reason": str(exc)})
        bound = strong_product_chi_lower_bound(self.G, self.q, chi_f)
        ev: dict[str, Any] = {"lower_bound": bound, "chi_f": format_rational(chi_f), "q": self.q}
        P = strong_product_kq(self.G, self.q, guard=self.guard)
        try:
            cert = chromatic_number(P, self.budget)
        except SearchTimeout as exc:
            ev.update(chi="TIMEOUT", search_lower=exc.lower, search_upper=exc.upper)
            return StepResult("c", "chi(G [x] K_q) >= ceil(q chi_f(G))", CHECK, SKIPPED, ev)
        ev.update(chi=cert.value, witness=list(cert.witness.colors))
        ok = cert.value >= bound
        return StepResult("c", "chi(G [x] K_q) >= ceil(q chi_f(G))", CHECK, PASS if ok else FAIL, ev, violation=not ok)

    # (d)
    def clique_m(self) -> StepResult:
        title = "mu_{q+1..c} form a clique in E_c(G [x] K_q)"
        q, c = self.q, self.c
        if c < 2 * q or c <= q:
            return StepResult("d", title, CHECK, SKIPPED, {"reason": f"needs c >= 2q and c > q (q={q}, c={c})"})
        per_v = []
        first_bad = None
        for v in range(self.G.n):
            M = build_clique_M(self.G, q, c, v)
            per_v.append({"v": v + 1, "size": len(M.mappings), "clique": M.is_clique})
            if not M.is_clique and first_bad is None:
                bad = dict(M.violation)
                if bad["pair"] is not None:
                    bad["pair"] = {k: [g + 1, i] for k, (g, i) in bad["pair"].items()}
                first_bad = {"v": v + 1, **bad}
        ok = first_bad is None
        ev: dict[str, Any] = {"per_vertex": per_v, "pair_checks_per_vertex": (c - q) * (c - q - 1) // 2}
        if not ok:
            ev["counterexample"] = first_bad
            if not self.girth_ok:
                ev["note"] = "expected: girth hypothesis not met"
        return StepResult("d", title, CHECK, PASS if ok else FAIL, ev, violation=not ok and self.girth_ok)

    # (e)
    def nu_adjacency(self) -> StepResult:
        title = "nu is adjacent to mu_tau in E_c(G [x] K_q)"
        q, c = self.q, self.c
        pairs = [(t, s) for t in range(2 * q + 1, c + 1) for s in range(2 * q + 1, c + 1) if s != t]
        if c < 2 * q or not pairs:
            return StepResult("e", title, CHECK, SKIPPED, {"reason": f"no admissible (tau, sigma) with tau, sigma > 2q (q={q}, c={c})"})
        checked = 0
        first_bad = None
        for v in range(self.G.n):
            for tau, sigma in pairs:
                nu = build_nu(self.G, q, c, v, tau, sigma)
                checked += 1
                if not nu.adjacent_to_mu and first_bad is None:
                    first_bad = {"v": v + 1, "tau": tau, "sigma": sigma, "obstruction": nu.obstruction}
        ok = first_bad is None
        ev: dict[str, Any] = {"checked": checked, "tau_range": [2 * q + 1, c], "sigma_range": [2 * q + 1, c]}
        if not ok:
            ev["counterexample"] = first_bad
        return StepResult("e", title, CHECK, PASS if ok else FAIL, ev, violation=not ok and self.girth_ok)

    # (f)
    def toy_coloring(self) -> StepResult:
        title = "suited coloring of E_c(G [x] K_q): color-in-image rule, robust classes, final dichotomy"
        G, q, c = self.G, self.q, self.c
        P = strong_product_kq(G, q, guard=self.guard)
        ctx = ExponentialContext(P, c, guard=self.guard)
        if ctx.size > TOY_LIMIT:
            return StepResult("f", title, CHECK, SKIPPED,
                              {"reason": f"E_c(G [x] K_q) has {c}^{P.n} vertices; only instances up to {TOY_LIMIT} are attempted"})
        E = exponential_graph(ctx)
        try:
            lam = find_proper_coloring(E, c, self.budget)
        except SearchTimeout:
            return StepResult("f", title, CHECK, SKIPPED, {"reason": "coloring search timed out", "vertices": E.n})
        if lam is None:
            return StepResult("f", title, CHECK, VACUOUS,
                              {"coloring": "UNSAT", "note": f"E_{c}(G [x] K_q) has no proper {c}-coloring; nothing to sweep"})
        lam = make_suited(lam, ctx)
        ev: dict[str, Any] = {"vertices": E.n, "coloring": "SAT"}
        bad_obs = color_in_image_violations(ctx, lam)
        ev["color_in_image_violations"] = len(bad_obs)
        small = ExponentialContext(add_loops(G), c, guard=self.guard)
        psi = restrict_to_clique_constant(G, q, c, lam, guard=self.guard)
        reports = robustness_sweep(small, psi)
        good = [r for r in reports if r.satisfied]
        ev["robustness"] = [r.to_json() for r in reports]
        ev["robust_vertices"] = [r.v + 1 for r in good]
        ev["vacuous"] = bool(good) and all(r.vacuous for r in good)
        dichotomy = self._dichotomy(ctx, lam, reports)
        ev["dichotomy"] = dichotomy
        ok = not bad_obs and bool(good) and dichotomy["violations"] == 0
        status = PASS if ok else FAIL
        if ok and ev["vacuous"]:
            status = VACUOUS
        return StepResult("f", title, CHECK, status, ev, violation=not ok)

    def _dichotomy(self, ctx: ExponentialContext, lam: Coloring, reports: list[RobustnessReport]) -> dict:
        q, c = self.q, self.c
        checked = violations = 0
        first = None
        if c < 2 * q:
            return {"checked": 0, "violations": 0, "reason": "needs c >= 2q"}
        for rep in reports:
            for tau in range(q + 1, c + 1):
                for sigma in range(2 * q + 1, c + 1):
                    if sigma == tau:
                        continue
                    nu = build_nu(self.G, q, c, rep.v, tau, sigma).mapping
                    color = lam[ctx.encode(nu)]
                    checked += 1
                    bad = color not in nu or (sigma in rep.robust_colors and color == sigma)
                    if bad:
                        violations += 1
                        if first is None:
                            first = {"v": rep.v + 1, "tau": tau, "sigma": sigma, "color": color}
        return {"checked": checked, "violations": violations, "first_violation": first}

    # (g)
    def canonical(self) -> StepResult:
        title = "(h, psi) -> psi(h) properly colors (G [x] K_q) x E_c(G [x] K_q)"
        P = strong_product_kq(self.G, self.q, guard=self.guard)
        ctx = ExponentialContext(P, self.c, guard=self.guard)
        if ctx.size * P.n <= TOY_LIMIT:
            canonical_coloring(ctx)
            return StepResult("g", title, CHECK, PASS, {"mode": "exhaustive", "vertices": ctx.size * P.n})
        res = sample_canonical_coloring(ctx, self.samples, self.seed)
        ok = res["violations"] == 0
        return StepResult("g", title, CHECK, PASS if ok else FAIL, {"mode": "sampled", **res}, violation=not ok)


def verify_argument(G: Graph, q: int, c: int | None = None, budget: Budget | None = None,
                    seed: int = 0, threshold: Fraction = CHI_F_THRESHOLD,
                    samples: int = DEFAULT_SAMPLES, threads: int = 1,
                    guard: int = DEFAULT_VERTEX_GUARD) -> ClaimReport:
    """Run steps (a)-(g) and collect a :class:`ClaimReport`.

    Steps run on a thread pool of ``threads`` workers; results are assembled in
    step order, so the report does not depend on the worker count.
    """
    _check_simple(G)
    if q < 1:
        raise InputError("q must be a positive integer")
    if c is None:
        c = default_palette(q, threshold)
    if c < 1:
        raise InputError("c must be a positive integer")
    budget = budget or Budget()
    arg = _Argument(G, q, c, budget, seed, threshold, samples, guard)
    steps: list[Callable[[], StepResult]] = [
        arg.hypothesis_girth, arg.hypothesis_chi_f, arg.strong_product_bound,
        arg.clique_m, arg.nu_adjacency, arg.toy_coloring, arg.canonical,
    ]
    if threads <= 1:
        results = [step() for step in steps]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: f(), steps))
    params = {
        "n": G.n, "m": G.m, "q": q, "c": c,
        "threshold": format_rational(threshold),
        "budget_nodes": budget.nodes, "budget_ms": budget.time_ms,
        "samples": samples, "guard": guard,
    }
    return ClaimReport(params, seed, results)


__all__ = [
    "CliqueM",
    "ClaimReport",
    "NuMapping",
    "RobustnessReport",
    "StepResult",
    "build_clique_M",
    "build_nu",
    "class_I",
    "class_cover_violations",
    "is_v_robust",
    "large_class_threshold",
    "color_in_image_violations",
    "robust_bound_vacuous",
    "robust_classes",
    "robust_count_bound",
    "robust_count_satisfied",
    "robustness_sweep",
    "verify_argument",
]

