"""Text formats: .bgm (bimatrix game), .fgm (free/two-prover game),
.prof (mixed profile), and .strat (deterministic prover strategies).

All numbers are exact rationals, written as `p/q` (or a plain integer);
decimal literals on input are parsed exactly.  Writers are deterministic:
identical values produce identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FormatError, ValidationError
from .games import BimatrixGame, MixedProfile
from .provers import ProverStrategy, TwoProverGame


def _parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {tok!r}") from exc


def _fmt(q: Fraction) -> str:
    return str(q)


def _data_lines(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip()]


def parse_bgm(text: str) -> BimatrixGame:
    lines = _data_lines(text)
    if not lines or lines[0] != "bgm 1":
        raise FormatError("missing 'bgm 1' header")
    body = [l for l in lines[1:] if not l.startswith("#")]
    block_lines = [l for l in lines[1:] if l.startswith("#block")]
    try:
        rows, cols = (int(t) for t in body[0].split())
    except (IndexError, ValueError) as exc:
        raise FormatError("bad dimension line") from exc
    if len(body) != 1 + rows * cols:
        raise FormatError(
            f"expected {rows * cols} entry lines, found {len(body) - 1}"
        )
    r = [[Fraction(0)] * cols for _ in range(rows)]
    c = [[Fraction(0)] * cols for _ in range(rows)]
    for idx, line in enumerate(body[1:]):
        toks = line.split()
        if len(toks) != 2:
            raise FormatError(f"entry line {line!r} needs two rationals")
        i, j = divmod(idx, cols)
        r[i][j] = _parse_rational(toks[0])
        c[i][j] = _parse_rational(toks[1])
    blocks = None
    if block_lines:
        parsed = []
        for line in block_lines:
            toks = line.split()
            if len(toks) != 6:
                raise FormatError(f"bad block line {line!r}")
            parsed.append(
                (toks[1], int(toks[2]), int(toks[3]), int(toks[4]), int(toks[5]))
            )
        blocks = tuple(parsed)
    try:
        return BimatrixGame(
            R=tuple(map(tuple, r)), C=tuple(map(tuple, c)), blocks=blocks
        )
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def write_bgm(game: BimatrixGame) -> str:
    out = ["bgm 1", f"{game.rows} {game.cols}"]
    for i in range(game.rows):
        for j in range(game.cols):
            out.append(f"{_fmt(game.R[i][j])} {_fmt(game.C[i][j])}")
    for name, r0, r1, c0, c1 in game.blocks or ():
        out.append(f"#block {name} {r0} {r1} {c0} {c1}")
    return "\n".join(out) + "\n"


def parse_prof(text: str, normalize: bool = False) -> MixedProfile:
    lines = _data_lines(text)
    if not lines or lines[0] != "prof 1":
        raise FormatError("missing 'prof 1' header")
    try:
        rows, cols = (int(t) for t in lines[1].split())
    except (IndexError, ValueError) as exc:
        raise FormatError("bad dimension line") from exc
    entries = [_parse_rational(l) for l in lines[2:]]
    if len(entries) != rows + cols:
        raise FormatError(
            f"expected {rows + cols} entries, found {len(entries)}"
        )
    x = entries[:rows]
    y = entries[rows:]
    if normalize:
        sx, sy = sum(x), sum(y)
        if sx <= 0 or sy <= 0:
            raise FormatError("cannot normalize a zero vector")
        x = [e / sx for e in x]
        y = [e / sy for e in y]
    try:
        return MixedProfile(x=tuple(x), y=tuple(y))
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def write_prof(p: MixedProfile) -> str:
    out = ["prof 1", f"{len(p.x)} {len(p.y)}"]
    out.extend(_fmt(e) for e in p.x)
    out.extend(_fmt(e) for e in p.y)
    return "\n".join(out) + "\n"


def parse_fgm(text: str) -> TwoProverGame:
    lines = _data_lines(text)
    if not lines or lines[0] != "fgm 1":
        raise FormatError("missing 'fgm 1' header")
    try:
        nx, ny = (int(t) for t in lines[1].split())
        x_answers = tuple(int(t) for t in lines[2].split())
        y_answers = tuple(int(t) for t in lines[3].split())
    except (IndexError, ValueError) as exc:
        raise FormatError("bad header lines") from exc
    if len(x_answers) != nx or len(y_answers) != ny:
        raise FormatError("answer-size lines do not match question counts")
    expected = sum(
        x_answers[x] * y_answers[y] for x in range(nx) for y in range(ny)
    )
    body = lines[4:]
    if len(body) < expected:
        raise FormatError(f"expected {expected} V entries")
    bits = body[:expected]
    rest = body[expected:]
    values = []
    for tok in bits:
        if tok not in ("0", "1"):
            raise FormatError(f"V entry must be 0 or 1, got {tok!r}")
        values.append(int(tok))
    table = []
    pos = 0
    for x in range(nx):
        per_y = []
        for y in range(ny):
            per_a = []
            for _a in range(x_answers[x]):
                per_a.append(tuple(values[pos : pos + y_answers[y]]))
                pos += y_answers[y]
            per_y.append(tuple(per_a))
        table.append(tuple(per_y))
    dist = None
    if rest:
        if rest[0] != "D":
            raise FormatError(f"unexpected trailing line {rest[0]!r}")
        d_entries = [_parse_rational(t) for t in rest[1:]]
        if len(d_entries) != nx * ny:
            raise FormatError(f"expected {nx * ny} distribution entries")
        dist = tuple(
            tuple(d_entries[x * ny + y] for y in range(ny)) for x in range(nx)
        )
    try:
        return TwoProverGame(
            x_answers=x_answers,
            y_answers=y_answers,
            table=tuple(table),
            dist=dist,
        )
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def write_fgm(t: TwoProverGame) -> str:
    out = [
        "fgm 1",
        f"{t.nx} {t.ny}",
        " ".join(str(a) for a in t.x_answers),
        " ".join(str(b) for b in t.y_answers),
    ]
    for x in range(t.nx):
        for y in range(t.ny):
            for a in range(t.x_answers[x]):
                for b in range(t.y_answers[y]):
                    out.append(str(t.table[x][y][a][b]))
    if t.dist is not None:
        out.append("D")
        for x in range(t.nx):
            for y in range(t.ny):
                out.append(_fmt(t.dist[x][y]))
    return "\n".join(out) + "\n"


def parse_strat(text: str) -> tuple[ProverStrategy, ProverStrategy]:
    lines = _data_lines(text)
    if not lines or lines[0] != "strat 1":
        raise FormatError("missing 'strat 1' header")
    if len(lines) != 3:
        raise FormatError("expected two answer lines")
    try:
        s1 = tuple(int(t) for t in lines[1].split())
        s2 = tuple(int(t) for t in lines[2].split())
    except ValueError as exc:
        raise FormatError("answers must be integers") from exc
    return ProverStrategy(answers=s1), ProverStrategy(answers=s2)


def write_strat(s1: ProverStrategy, s2: ProverStrategy) -> str:
    return (
        "strat 1\n"
        + " ".join(str(a) for a in s1.answers)
        + "\n"
        + " ".join(str(b) for b in s2.answers)
        + "\n"
    )
