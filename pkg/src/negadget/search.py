"""Constrained equilibrium search: k-uniform enumeration, the ten
decision problems, well-supported feasibility via exact linear programs,
and exhaustive small-game oracles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, ResourceError, ShapeError, ValidationError
from .games import (
    BimatrixGame,
    MixedProfile,
    Rational,
    Vector,
    dot,
    frac,
    is_eps_ne,
    is_eps_wsne,
    mat_vec,
    regret_report,
    social_welfare,
    vec_mat,
)
from .linsolve import simplex_maximize, solve_linear

SEARCH_BUDGET_DEFAULT = 2**22

WITNESS_NE = "NE"
WITNESS_WSNE = "WSNE"

# problem id -> (parameter name, witness kind)
_PROBLEMS: dict[int, tuple[str | None, str]] = {
    1: ("u", WITNESS_NE),
    2: ("index_set", WITNESS_NE),
    3: ("d", WITNESS_NE),
    4: ("p", WITNESS_NE),
    5: ("v", WITNESS_NE),
    6: ("u", WITNESS_NE),
    7: ("k", WITNESS_WSNE),
    8: ("k", WITNESS_WSNE),
    9: ("k", WITNESS_WSNE),
    10: ("index_set", WITNESS_WSNE),
}


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a decision search.

    ``answer`` is "yes", "no", or "unknown"; a yes always carries a
    witness that re-verifies exactly.  For problem 3 the witness is the
    first profile of the far-apart pair and ``witness_pair`` holds both.
    """

    answer: str
    witness: MixedProfile | None = None
    witness_pair: tuple[MixedProfile, MixedProfile] | None = None
    checked_count: int = 0


@dataclass(frozen=True)
class DecisionInstance:
    """One of the ten decision problems, with its parameter.

    Problems 1-6 quantify over eps-NE; 7-10 over eps-WSNE.
    """

    problem_id: int
    game: BimatrixGame
    eps: Fraction
    u: Fraction | None = None
    d: Fraction | None = None
    p: Fraction | None = None
    v: Fraction | None = None
    k: int | None = None
    index_set: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.problem_id not in _PROBLEMS:
            raise ValidationError(f"unknown problem id {self.problem_id}")
        object.__setattr__(self, "eps", frac(self.eps))
        for name in ("u", "d", "p", "v"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, frac(value))
        if self.eps < 0:
            raise ValidationError("eps must be nonnegative")
        pid = self.problem_id
        param, _ = _PROBLEMS[pid]
        if param is not None and getattr(self, param) is None:
            raise ValidationError(f"problem {pid} requires parameter {param!r}")
        if pid == 1 and not (0 < self.u <= 1):
            raise ValidationError("problem 1 requires u in (0, 1]")
        if pid == 3 and not (0 < self.d <= 1):
            raise ValidationError("problem 3 requires d in (0, 1]")
        if pid == 4 and not (0 < self.p < 1):
            raise ValidationError("problem 4 requires p in (0, 1)")
        if pid == 5 and not (0 <= self.v < 2):
            raise ValidationError("problem 5 requires v in [0, 2)")
        if pid == 6 and not (0 <= self.u < 1):
            raise ValidationError("problem 6 requires u in [0, 1)")
        if pid in (7, 8, 9) and self.k < 1:
            raise ValidationError(f"problem {pid} requires k >= 1")
        if pid in (2, 10):
            idx = tuple(sorted(set(self.index_set)))
            object.__setattr__(self, "index_set", idx)
            if not idx:
                raise ValidationError("index set must be nonempty")
            if any(not (0 <= i < self.game.rows) for i in idx):
                raise ValidationError("index set out of row range")

    @property
    def witness_kind(self) -> str:
        return _PROBLEMS[self.problem_id][1]


def k_uniform_strategies(n: int, k: int) -> Iterator[Vector]:
    """All size-k multisets over [n] as probability vectors, lexicographic.

    Yields C(n+k-1, k) vectors; each entry is multiplicity/k.
    """
    if n < 1 or k < 1:
        raise ParameterError("n and k must be at least 1")
    for combo in itertools.combinations_with_replacement(range(n), k):
        v = [Fraction(0)] * n
        for i in combo:
            v[i] += Fraction(1, k)
        yield tuple(v)


def k_uniform_count(n: int, k: int) -> int:
    return comb(n + k - 1, k)


def default_k(n: int, eps: Rational, cap: int = 8) -> int:
    """ceil(log2(n)/eps^2), clamped to [1, cap]."""
    e = frac(eps)
    if e <= 0:
        return cap
    raw = math.ceil(math.log2(max(n, 2)) / float(e * e))
    return max(1, min(cap, raw))


def lmm_best_welfare(
    game: BimatrixGame,
    eps: Rational,
    k: int,
    budget: int = SEARCH_BUDGET_DEFAULT,
) -> SearchOutcome:
    """Maximize welfare over k-uniform eps-NE profiles.

    Returns "yes" with the best witness when any candidate passes,
    "no" when the whole family was scanned without a hit, and
    "unknown" (with the best partial witness) when the family exceeds
    the budget.
    """
    e = frac(eps)
    total = k_uniform_count(game.rows, k) * k_uniform_count(game.cols, k)
    best: MixedProfile | None = None
    best_w = None
    checked = 0
    # Precompute per-candidate payoff vectors once per side.
    xs = list(k_uniform_strategies(game.rows, k))
    ys = list(k_uniform_strategies(game.cols, k))
    x_rows = [vec_mat(x, game.C) for x in xs]  # column payoffs per x
    y_cols = [mat_vec(game.R, y) for y in ys]  # row payoffs per y
    truncated = total > budget
    for xi, x in enumerate(xs):
        if checked >= budget:
            break
        for yi, y in enumerate(ys):
            if checked >= budget:
                break
            checked += 1
            row_vals = y_cols[yi]
            col_vals = x_rows[xi]
            row_pay = dot(x, row_vals)
            col_pay = dot(y, col_vals)
            if max(row_vals) - row_pay > e or max(col_vals) - col_pay > e:
                continue
            welfare = row_pay + col_pay
            if best_w is None or welfare > best_w:
                best_w = welfare
                best = MixedProfile(x=x, y=y)
    if best is not None:
        answer = "unknown" if truncated else "yes"
        return SearchOutcome(answer=answer, witness=best, checked_count=checked)
    return SearchOutcome(
        answer="unknown" if truncated else "no", checked_count=checked
    )


def wsne_support_feasible(
    game: BimatrixGame,
    rows: Sequence[int],
    cols: Sequence[int],
    eps: Rational,
    strict: bool = False,
) -> MixedProfile | None:
    """Exact well-supported equilibrium with supports exactly (rows, cols).

    The two sides decouple: the row conditions constrain only y (every
    row in the support must be within eps of the best row against y) and
    the column conditions only x.  Each side is an exact linear program
    maximizing the minimum support coordinate; a positive optimum on both
    sides yields a witness.

    With ``strict`` set, both pure-strategy regrets must be strictly
    below eps, which excludes profiles sitting exactly on the regret
    boundary.
    """
    e = frac(eps)
    rows = tuple(sorted(set(rows)))
    cols = tuple(sorted(set(cols)))
    if not rows or not cols:
        raise ValidationError("supports must be nonempty")

    y = _one_side_feasible(game.R, rows, cols, e, strict)
    if y is None:
        return None
    ct = tuple(tuple(game.C[i][j] for i in range(game.rows)) for j in range(game.cols))
    x = _one_side_feasible(ct, cols, rows, e, strict)
    if x is None:
        return None
    x_full = [Fraction(0)] * game.rows
    for i, value in zip(rows, x):
        x_full[i] = value
    y_full = [Fraction(0)] * game.cols
    for j, value in zip(cols, y):
        y_full[j] = value
    return MixedProfile(x=tuple(x_full), y=tuple(y_full))


def _one_side_feasible(
    payoff: Sequence[Sequence[Fraction]],
    supp: Sequence[int],
    opp_supp: Sequence[int],
    eps: Fraction,
    strict: bool = False,
) -> list[Fraction] | None:
    """Find q in the simplex over opp_supp with min coordinate maximized,
    subject to: every row in supp is eps-best among all rows against q.

    Variables: q_j for j in opp_supp, then t (the min-coordinate slack).
    Maximize t; feasible with t > 0 means the exact support works.  In
    strict mode the slack t is also charged against every regret
    constraint, so a positive optimum certifies regret strictly below
    eps.
    """
    n_rows = len(payoff)
    m = len(opp_supp)
    nvars = m + 1
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    # For each support row i and each row r: (P_r - P_i) . q <= eps
    # (strict mode: (P_r - P_i) . q + t <= eps).
    slack = Fraction(1 if strict else 0)
    for i in supp:
        for r in range(n_rows):
            if r == i:
                continue
            row = [payoff[r][j] - payoff[i][j] for j in opp_supp] + [slack]
            a_ub.append(row)
            b_ub.append(eps)
    # t <= q_j for each j.
    for j in range(m):
        row = [Fraction(0)] * nvars
        row[j] = Fraction(-1)
        row[m] = Fraction(1)
        a_ub.append(row)
        b_ub.append(Fraction(0))
    a_eq = [[Fraction(1)] * m + [Fraction(0)]]
    b_eq = [Fraction(1)]
    c = [Fraction(0)] * m + [Fraction(1)]
    status, value, solution = simplex_maximize(c, a_ub, b_ub, a_eq, b_eq)
    if status != "optimal" or value is None or value <= 0:
        return None
    return solution[:m]


def enumerate_wsne_supports(
    game: BimatrixGame,
    eps: Rational,
    budget: int = SEARCH_BUDGET_DEFAULT,
    strict: bool = False,
) -> Iterator[MixedProfile]:
    """All feasible exact-support well-supported profiles, one witness per
    support pair, ordered by (total support size, lexicographic supports).

    ``strict`` restricts the enumeration to profiles whose pure-strategy
    regrets are strictly below eps.
    """
    e = frac(eps)
    total = (2 ** game.rows - 1) * (2 ** game.cols - 1)
    if total > budget:
        raise ResourceError(
            f"{total} support pairs exceed budget {budget}"
        )
    pairs = []
    for rs in range(1, game.rows + 1):
        for rows in itertools.combinations(range(game.rows), rs):
            pairs.append(rows)
    col_sets = []
    for cs in range(1, game.cols + 1):
        for cols in itertools.combinations(range(game.cols), cs):
            col_sets.append(cols)
    combos = sorted(
        ((r, c) for r in pairs for c in col_sets),
        key=lambda rc: (len(rc[0]) + len(rc[1]), rc[0], rc[1]),
    )
    for rows, cols in combos:
        witness = wsne_support_feasible(game, rows, cols, e, strict=strict)
        if witness is not None:
            yield witness


def decide(
    inst: DecisionInstance,
    k: int | None = None,
    budget: int = SEARCH_BUDGET_DEFAULT,
    hints: Iterable[MixedProfile | tuple[MixedProfile, MixedProfile]] = (),
) -> SearchOutcome:
    """Decide one of the ten problems by candidate enumeration.

    ``hints`` are candidate profiles (or pairs, for problem 3) checked
    before any enumeration; a hint that satisfies the predicate certifies
    a yes immediately.  Problems 1-6 scan k-uniform profiles, so their
    "no" means "no k-uniform witness"; problems 7-10 enumerate support
    patterns exactly, so their "no" is unconditional (within budget).
    """
    if k is None:
        k = default_k(max(inst.game.rows, inst.game.cols), inst.eps)
    for hint in hints:
        outcome = _check_hint(inst, hint)
        if outcome is not None:
            return outcome
    if inst.witness_kind == WITNESS_NE:
        if inst.problem_id == 3:
            return _decide_p3(inst, k, budget)
        return _decide_ne_scan(inst, k, budget)
    return _decide_wsne(inst, budget)


def _predicate_ne(inst: DecisionInstance, p: MixedProfile) -> bool:
    """The Table predicate for problems 1, 2, 4, 5, 6 (profile must also
    already be an eps-NE)."""
    pid = inst.problem_id
    if pid == 1:
        rep = regret_report(inst.game, p)
        return min(rep.row_payoff, rep.col_payoff) >= inst.u
    if pid == 2:
        allowed = set(inst.index_set)
        return all(i in allowed for i in p.support_x)
    if pid == 4:
        return max(p.x) <= inst.p
    if pid == 5:
        return social_welfare(inst.game, p) <= inst.v
    if pid == 6:
        rep = regret_report(inst.game, p)
        return rep.row_payoff <= inst.u
    raise ValidationError(f"not a scan problem: {pid}")


def _predicate_wsne(inst: DecisionInstance, p: MixedProfile) -> bool:
    pid = inst.problem_id
    sx, sy = len(p.support_x), len(p.support_y)
    if pid == 7:
        return sx + sy >= 2 * inst.k
    if pid == 8:
        return min(sx, sy) >= inst.k
    if pid == 9:
        return sx >= inst.k
    if pid == 10:
        return set(inst.index_set) <= set(p.support_x)
    raise ValidationError(f"not a support problem: {pid}")


def _check_hint(
    inst: DecisionInstance, hint: MixedProfile | tuple[MixedProfile, MixedProfile]
) -> SearchOutcome | None:
    if inst.problem_id == 3:
        if not isinstance(hint, tuple):
            return None
        p1, p2 = hint
        from .games import tv_distance

        if (
            is_eps_ne(inst.game, p1, inst.eps)
            and is_eps_ne(inst.game, p2, inst.eps)
            and tv_distance(p1, p2) >= inst.d
        ):
            return SearchOutcome(
                answer="yes", witness=p1, witness_pair=(p1, p2), checked_count=0
            )
        return None
    if isinstance(hint, tuple):
        return None
    if len(hint.x) != inst.game.rows or len(hint.y) != inst.game.cols:
        raise ShapeError("hint profile does not match the game")
    if inst.witness_kind == WITNESS_NE:
        if is_eps_ne(inst.game, hint, inst.eps) and _predicate_ne(inst, hint):
            return SearchOutcome(answer="yes", witness=hint, checked_count=0)
    else:
        if is_eps_wsne(inst.game, hint, inst.eps) and _predicate_wsne(inst, hint):
            return SearchOutcome(answer="yes", witness=hint, checked_count=0)
    return None


def _decide_ne_scan(inst: DecisionInstance, k: int, budget: int) -> SearchOutcome:
    total = k_uniform_count(inst.game.rows, k) * k_uniform_count(inst.game.cols, k)
    truncated = total > budget
    checked = 0
    for p in _bounded_pairs(inst.game, k, budget):
        checked += 1
        if is_eps_ne(inst.game, p, inst.eps) and _predicate_ne(inst, p):
            return SearchOutcome(answer="yes", witness=p, checked_count=checked)
    return SearchOutcome(
        answer="unknown" if truncated else "no", checked_count=checked
    )


def _bounded_pairs(
    game: BimatrixGame, k: int, budget: int
) -> Iterator[MixedProfile]:
    checked = 0
    ys = list(k_uniform_strategies(game.cols, k))
    for x in k_uniform_strategies(game.rows, k):
        for y in ys:
            if checked >= budget:
                return
            checked += 1
            yield MixedProfile(x=x, y=y)


def _decide_p3(inst: DecisionInstance, k: int, budget: int) -> SearchOutcome:
    from .games import tv_distance

    total = k_uniform_count(inst.game.rows, k) * k_uniform_count(inst.game.cols, k)
    truncated = total > budget
    found: list[MixedProfile] = []
    checked = 0
    for p in _bounded_pairs(inst.game, k, budget):
        checked += 1
        if not is_eps_ne(inst.game, p, inst.eps):
            continue
        for q in found:
            if tv_distance(p, q) >= inst.d:
                return SearchOutcome(
                    answer="yes",
                    witness=q,
                    witness_pair=(q, p),
                    checked_count=checked,
                )
        found.append(p)
    return SearchOutcome(
        answer="unknown" if truncated else "no", checked_count=checked
    )


def _decide_wsne(inst: DecisionInstance, budget: int) -> SearchOutcome:
    checked = 0
    for witness in enumerate_wsne_supports(inst.game, inst.eps, budget):
        checked += 1
        if _predicate_wsne(inst, witness):
            return SearchOutcome(
                answer="yes", witness=witness, checked_count=checked
            )
    return SearchOutcome(answer="no", checked_count=checked)


def exhaustive_ne_oracle(
    game: BimatrixGame, grid: int = 8
) -> list[MixedProfile]:
    """Independent oracle: exact equilibria of a small game.

    Combines support enumeration (solving the indifference systems
    exactly and validating best-response maximality) with a grid sweep
    that reports grid profiles of exactly zero regret.  Intended for
    games up to 5x5 only.
    """
    if game.rows > 5 or game.cols > 5:
        raise ResourceError("oracle supports games up to 5x5")
    out: list[MixedProfile] = []
    seen: set[tuple[Vector, Vector]] = set()

    def record(p: MixedProfile) -> None:
        key = (p.x, p.y)
        if key not in seen:
            seen.add(key)
            out.append(p)

    for size in range(1, min(game.rows, game.cols) + 1):
        for rows in itertools.combinations(range(game.rows), size):
            for cols in itertools.combinations(range(game.cols), size):
                p = _support_ne(game, rows, cols)
                if p is not None:
                    record(p)
    for p in _grid_profiles(game, grid):
        rep = regret_report(game, p)
        if rep.row_regret == 0 and rep.col_regret == 0:
            record(p)
    return out


def _support_ne(
    game: BimatrixGame, rows: Sequence[int], cols: Sequence[int]
) -> MixedProfile | None:
    """Solve the indifference system for equal-size supports; validate."""
    size = len(rows)
    # y makes all support rows indifferent at common value v.
    a = []
    b = []
    for i in rows:
        a.append([game.R[i][j] for j in cols] + [Fraction(-1)])
        b.append(Fraction(0))
    a.append([Fraction(1)] * size + [Fraction(0)])
    b.append(Fraction(1))
    sol_y = solve_linear(a, b)
    if sol_y is None or any(e <= 0 for e in sol_y[:size]):
        return None
    a = []
    b = []
    for j in cols:
        a.append([game.C[i][j] for i in rows] + [Fraction(-1)])
        b.append(Fraction(0))
    a.append([Fraction(1)] * size + [Fraction(0)])
    b.append(Fraction(1))
    sol_x = solve_linear(a, b)
    if sol_x is None or any(e <= 0 for e in sol_x[:size]):
        return None
    x = [Fraction(0)] * game.rows
    for i, value in zip(rows, sol_x[:size]):
        x[i] = value
    y = [Fraction(0)] * game.cols
    for j, value in zip(cols, sol_y[:size]):
        y[j] = value
    p = MixedProfile(x=tuple(x), y=tuple(y))
    rep = regret_report(game, p)
    if rep.row_regret == 0 and rep.col_regret == 0:
        return p
    return None


def _grid_profiles(game: BimatrixGame, grid: int) -> Iterator[MixedProfile]:
    for x in _grid_simplex(game.rows, grid):
        for y in _grid_simplex(game.cols, grid):
            yield MixedProfile(x=x, y=y)


def _grid_simplex(n: int, grid: int) -> Iterator[Vector]:
    for combo in itertools.combinations_with_replacement(range(n), grid):
        v = [Fraction(0)] * n
        for i in combo:
            v[i] += Fraction(1, grid)
        yield tuple(v)


def grid_eps_ne(
    game: BimatrixGame, grid: int, eps: Rational
) -> list[MixedProfile]:
    """All grid profiles (denominator ``grid``) with regret at most eps."""
    e = frac(eps)
    out = []
    for p in _grid_profiles(game, grid):
        if is_eps_ne(game, p, e):
            out.append(p)
    return out
