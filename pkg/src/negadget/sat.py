"""3SAT ingestion, satisfiability oracles, and the clause-variable free game.

The reduction path is: formula -> clause/variable incidence graph ->
balanced bipartite partition -> free game in which one prover answers with
an assignment to a variable block and the other with an assignment to the
variables of a clause block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    FormatError,
    InvariantError,
    ParameterError,
    ResourceError,
    ValidationError,
)
from .provers import ProverStrategy, TwoProverGame, duplicate_questions

Clause = tuple[int, int, int]

SAT_BUDGET_DEFAULT = 2**20
ANSWER_CAP_DEFAULT = 2**16


@dataclass(frozen=True)
class Cnf3Formula:
    """A 3SAT formula: clauses are triples of signed 1-based literals."""

    num_vars: int
    clauses: tuple[Clause, ...]
    max_var_degree: int = field(init=False)

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValidationError("formula needs at least one variable")
        object.__setattr__(
            self, "clauses", tuple(tuple(c) for c in self.clauses)
        )
        degree = [0] * (self.num_vars + 1)
        for c in self.clauses:
            if len(c) != 3:
                raise ValidationError(f"clause {c} does not have 3 literals")
            vs = [abs(l) for l in c]
            if any(l == 0 for l in c):
                raise ValidationError(f"clause {c} contains literal 0")
            if len(set(vs)) != 3:
                raise ValidationError(f"clause {c} repeats a variable")
            if any(v > self.num_vars for v in vs):
                raise ValidationError(f"clause {c} uses an undeclared variable")
            for v in vs:
                degree[v] += 1
        object.__setattr__(self, "max_var_degree", max(degree))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> Cnf3Formula:
    """Parse a DIMACS CNF file with exactly-3-literal clauses."""
    num_vars = None
    num_clauses = None
    literals: list[int] = []
    clauses: list[Clause] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line: {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise FormatError("clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if len(literals) != 3:
                    raise FormatError(
                        f"clause {tuple(literals)} has {len(literals)} literals"
                    )
                if any(abs(l) > num_vars for l in literals):
                    raise FormatError(
                        f"clause {tuple(literals)} uses an undeclared variable"
                    )
                clauses.append(tuple(literals))
                literals = []
            else:
                literals.append(lit)
    if num_vars is None:
        raise FormatError("missing problem line")
    if literals:
        raise FormatError("unterminated clause at end of input")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise FormatError(
            f"declared {num_clauses} clauses, found {len(clauses)}"
        )
    try:
        return Cnf3Formula(num_vars=num_vars, clauses=tuple(clauses))
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def _clause_satisfied(clause: Clause, assignment: int) -> bool:
    """assignment is a bitmask: bit v-1 set means variable v is true."""
    for lit in clause:
        value = (assignment >> (abs(lit) - 1)) & 1
        if (lit > 0) == bool(value):
            return True
    return False


def max_sat_fraction(
    f: Cnf3Formula, budget: int = SAT_BUDGET_DEFAULT
) -> Fraction:
    """Exact maximum fraction of simultaneously satisfiable clauses."""
    if not f.clauses:
        return Fraction(1)
    if 2**f.num_vars > budget:
        raise ResourceError(
            f"2^{f.num_vars} assignments exceed budget {budget}"
        )
    best = 0
    for mask in range(2**f.num_vars):
        hit = sum(1 for c in f.clauses if _clause_satisfied(c, mask))
        if hit > best:
            best = hit
            if best == f.num_clauses:
                break
    return Fraction(best, f.num_clauses)


def best_assignment(f: Cnf3Formula, budget: int = SAT_BUDGET_DEFAULT) -> int:
    """Lowest bitmask maximizing the number of satisfied clauses."""
    if 2**f.num_vars > budget:
        raise ResourceError(
            f"2^{f.num_vars} assignments exceed budget {budget}"
        )
    best_mask, best_hit = 0, -1
    for mask in range(2**f.num_vars):
        hit = sum(1 for c in f.clauses if _clause_satisfied(c, mask))
        if hit > best_hit:
            best_mask, best_hit = mask, hit
            if hit == f.num_clauses:
                break
    return best_mask


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices 0..left_count-1, right vertices 0..right_count-1."""

    left_count: int
    right_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (0 <= u < self.left_count and 0 <= v < self.right_count):
                raise ValidationError(f"edge ({u},{v}) out of range")

    def degree_bound(self) -> int:
        deg: dict[tuple[str, int], int] = {}
        for u, v in self.edges:
            deg[("l", u)] = deg.get(("l", u), 0) + 1
            deg[("r", v)] = deg.get(("r", v), 0) + 1
        return max(deg.values(), default=0)


def formula_degree(f: Cnf3Formula) -> int:
    """Max degree of the incidence graph: clauses always have degree 3."""
    return max(f.max_var_degree, 3 if f.clauses else 1)


def incidence_graph(f: Cnf3Formula) -> BipartiteGraph:
    """Variables on the left, clauses on the right; edge iff occurrence."""
    edges = frozenset(
        (abs(lit) - 1, ci)
        for ci, clause in enumerate(f.clauses)
        for lit in clause
    )
    return BipartiteGraph(
        left_count=f.num_vars, right_count=f.num_clauses, edges=edges
    )


@dataclass(frozen=True)
class BipartitePartition:
    """K blocks per side; sizes <= 2*ceil(sqrt(n)), cross-edges <= 2*d^2."""

    S: tuple[tuple[int, ...], ...]
    T: tuple[tuple[int, ...], ...]
    K: int


def partition_bipartite(graph: BipartiteGraph, d: int) -> BipartitePartition:
    """Split variables and clauses into K = ceil(sqrt(n)) balanced blocks.

    Left vertices (variables) are split into contiguous index blocks.
    Right vertices (clauses) are placed greedily, each into the
    lowest-index block that stays within the size bound 2*ceil(sqrt(n))
    and keeps every cross-block edge count at most 2*d^2.
    """
    if graph.left_count < 1 or graph.right_count < 1:
        raise ValidationError("both sides must be nonempty")
    if d < 1 or graph.degree_bound() > d:
        raise ParameterError(f"graph degree exceeds d={d}")
    n = graph.left_count + graph.right_count
    k = math.isqrt(n)
    if k * k < n:
        k += 1
    size_cap = 2 * k
    edge_cap = 2 * d * d

    left = graph.left_count
    s_blocks = tuple(
        tuple(range(i * left // k, (i + 1) * left // k)) for i in range(k)
    )
    block_of_var = [0] * left
    for i, block in enumerate(s_blocks):
        for v in block:
            block_of_var[v] = i

    neighbors: list[list[int]] = [[] for _ in range(graph.right_count)]
    for u, v in graph.edges:
        neighbors[v].append(u)

    t_blocks: list[list[int]] = [[] for _ in range(k)]
    # cross[j][i]: edges between clause block j and variable block i
    cross = [[0] * k for _ in range(k)]
    for clause in range(graph.right_count):
        demand = [0] * k
        for var in neighbors[clause]:
            demand[block_of_var[var]] += 1
        placed = False
        for j in range(k):
            if len(t_blocks[j]) >= size_cap:
                continue
            if all(cross[j][i] + demand[i] <= edge_cap for i in range(k)):
                t_blocks[j].append(clause)
                for i in range(k):
                    cross[j][i] += demand[i]
                placed = True
                break
        if not placed:
            raise InvariantError(
                f"no feasible block for clause {clause}; "
                "preconditions should rule this out"
            )
    return BipartitePartition(
        S=s_blocks, T=tuple(tuple(b) for b in t_blocks), K=k
    )


@dataclass(frozen=True)
class PcpResult:
    """Output of the gap-amplification extension point (identity by default)."""

    formula: Cnf3Formula
    requested_gap: Fraction
    achieved_gap: Fraction | None


def pcp_amplify(
    f: Cnf3Formula,
    eps: Fraction,
    sat_budget: int = SAT_BUDGET_DEFAULT,
) -> PcpResult:
    """Extension point for gap amplification; the default is the identity.

    The returned metadata records the requested gap and, when the
    brute-force oracle fits in budget, the achieved gap
    1 - max_sat_fraction(f).
    """
    try:
        achieved = Fraction(1) - max_sat_fraction(f, budget=sat_budget)
    except ResourceError:
        achieved = None
    return PcpResult(formula=f, requested_gap=Fraction(eps), achieved_gap=achieved)


@dataclass(frozen=True)
class FreeGameBuild:
    """A clause-variable free game together with its question indexing.

    ``x_vars[i]`` lists the variables (0-based) of X question i;
    ``y_vars[j]`` lists the distinct variables of Y question j's clauses,
    in sorted order, and ``y_clauses[j]`` the clause indices.  When the
    partition produced an odd number of questions per side, every question
    was duplicated (interleaved) and ``duplicated`` is True.
    """

    game: TwoProverGame
    x_vars: tuple[tuple[int, ...], ...]
    y_vars: tuple[tuple[int, ...], ...]
    y_clauses: tuple[tuple[int, ...], ...]
    duplicated: bool


def build_clause_variable_free_game(
    f: Cnf3Formula,
    partition: BipartitePartition,
    answer_cap: int = ANSWER_CAP_DEFAULT,
) -> FreeGameBuild:
    """Build the free game: X = variable blocks, Y = clause blocks.

    Answers on the X side are truth assignments to the block's variables
    (bit i of the answer index assigns the i-th variable in sorted order);
    answers on the Y side assign the distinct variables appearing in the
    block's clauses.  V = 1 iff the Y answer satisfies every clause of the
    block and agrees with the X answer on every shared variable.
    """
    x_vars = tuple(tuple(sorted(block)) for block in partition.S)
    y_clauses = tuple(tuple(sorted(block)) for block in partition.T)
    y_vars = tuple(
        tuple(
            sorted({abs(lit) - 1 for ci in block for lit in f.clauses[ci]})
        )
        for block in y_clauses
    )
    for i, vs in enumerate(x_vars):
        if 2 ** len(vs) > answer_cap:
            raise ResourceError(
                f"X question {i} has 2^{len(vs)} answers, cap {answer_cap}"
            )
    for j, vs in enumerate(y_vars):
        if 2 ** len(vs) > answer_cap:
            raise ResourceError(
                f"Y question {j} has 2^{len(vs)} answers, cap {answer_cap}"
            )

    def accepts(i: int, j: int, a: int, b: int) -> int:
        assign_b = {v: (b >> t) & 1 for t, v in enumerate(y_vars[j])}
        for ci in y_clauses[j]:
            if not any(
                (lit > 0) == bool(assign_b[abs(lit) - 1])
                for lit in f.clauses[ci]
            ):
                return 0
        for t, v in enumerate(x_vars[i]):
            if v in assign_b and ((a >> t) & 1) != assign_b[v]:
                return 0
        return 1

    nx, ny = len(x_vars), len(y_clauses)
    x_answers = tuple(2 ** len(vs) for vs in x_vars)
    y_answers = tuple(max(1, 2 ** len(vs)) for vs in y_vars)
    table = tuple(
        tuple(
            tuple(
                tuple(accepts(i, j, a, b) for b in range(y_answers[j]))
                for a in range(x_answers[i])
            )
            for j in range(ny)
        )
        for i in range(nx)
    )
    game = TwoProverGame(x_answers=x_answers, y_answers=y_answers, table=table)
    duplicated = False
    if nx % 2 == 1 or ny % 2 == 1:
        # Keep both sides even for the half-subset gadget downstream.
        game = duplicate_questions(game, dup_x=nx % 2 == 1, dup_y=ny % 2 == 1)
        if nx % 2 == 1:
            x_vars = tuple(vs for vs in x_vars for _ in range(2))
        if ny % 2 == 1:
            y_vars = tuple(vs for vs in y_vars for _ in range(2))
            y_clauses = tuple(cs for cs in y_clauses for _ in range(2))
        duplicated = True
    return FreeGameBuild(
        game=game,
        x_vars=x_vars,
        y_vars=y_vars,
        y_clauses=y_clauses,
        duplicated=duplicated,
    )


def winning_strategies(
    build: FreeGameBuild, assignment: int
) -> tuple[ProverStrategy, ProverStrategy]:
    """Encode a (satisfying) global assignment as a strategy per prover."""
    s1 = tuple(
        sum(((assignment >> v) & 1) << t for t, v in enumerate(vs))
        for vs in build.x_vars
    )
    s2 = tuple(
        sum(((assignment >> v) & 1) << t for t, v in enumerate(vs))
        for vs in build.y_vars
    )
    return ProverStrategy(answers=s1), ProverStrategy(answers=s2)
