"""Text and JSON-ready renderings of traces and verdicts. Column indices are shown 1-based."""

from typing import Callable

from dines.types import DinesTrace, Feasible, Indeterminate, Infeasible, ReductionLevel, Verdict
from exact.rational import format_rational
from gappoly.sign import Indeterminate as UndecidedSign
from gappoly.sign import Sign

RowLabel = Callable[[int], str]

_SIGN_CHARS = {Sign.NEGATIVE: "-", Sign.ZERO: "0", Sign.POSITIVE: "+"}


def default_row_label(origin: int) -> str:
    return f"row {origin}"


def sign_char(s) -> str:
    return "?" if isinstance(s, UndecidedSign) else _SIGN_CHARS[s]


def sign_int(s) -> int | None:
    return None if isinstance(s, UndecidedSign) else int(s)


def _entry_text(entry) -> str:
    return entry.render() if hasattr(entry, "render") else format_rational(entry)


def level_lines(
    level: ReductionLevel, row_label: RowLabel = default_row_label, entries: bool = False
) -> list[str]:
    m = level.matrix
    lines = [f"Level {level.index}: {len(level.active_rows())} equations, {m.cols} columns"]
    if level.index:
        pairs = " ".join(f"({i + 1},{j + 1})" for i, j in level.var_ancestry)
        lines.append(f"  columns: {pairs}")
    for r in range(m.rows):
        label = row_label(level.row_origin[r])
        if r in level.dropped_rows:
            lines.append(f"  {label}: dropped (all zero)")
            continue
        signs = " ".join(sign_char(s) for s in level.signs[r]) if level.signs else ""
        lines.append(f"  {label}: {signs}")
        if entries:
            for c, e in enumerate(m.row(r)):
                lines.append(f"    [{c + 1}] {_entry_text(e)}")
    if level.partition is not None:
        p = level.partition
        text = (
            f"  pivot {row_label(level.row_origin[p.pivot_row])}: "
            f"I={{{','.join(str(i + 1) for i in p.positive)}}} "
            f"J={{{','.join(str(j + 1) for j in p.negative)}}} P={p.P} Q={p.Q}"
        )
        if p.zero:
            text += f" K={{{','.join(str(k + 1) for k in p.zero)}}}"
        lines.append(text)
    return lines


def verdict_line(
    verdict: Verdict, trace: DinesTrace, row_label: RowLabel = default_row_label
) -> str:
    match verdict:
        case Feasible():
            return "feasible"
        case Infeasible(level=level, row=row, signs=signs, pf=pf):
            origin = trace.levels[level].row_origin[row]
            text = (
                f"infeasible at level {level} (step {verdict.step}), "
                f"{row_label(origin)} signs [{', '.join(str(s) for s in signs)}]"
            )
            return text + (" pf" if pf else "")
        case Indeterminate(level=level, position=position, detail=detail):
            where = ""
            if position is not None:
                origin = trace.levels[level].row_origin[position[0]]
                where = f" at {row_label(origin)} column {position[1] + 1}"
            described = f": {detail.describe()}" if detail is not None else ""
            return f"indeterminate at level {level}{where}{described}"
    raise TypeError(f"Unknown verdict {verdict!r}")


def trace_lines(
    trace: DinesTrace,
    verdict: Verdict,
    row_label: RowLabel = default_row_label,
    entries: bool = False,
) -> list[str]:
    lines = [f"Mode: {trace.mode}"]
    for level in trace.levels:
        lines.extend(level_lines(level, row_label, entries))
    lines.append(f"Stop: {trace.stop_reason}")
    lines.append(f"Verdict: {verdict_line(verdict, trace, row_label)}")
    return lines


def level_payload(
    level: ReductionLevel, row_label: RowLabel = default_row_label, entries: bool = False
) -> dict:
    payload = {
        "level": level.index,
        "rows": [row_label(o) for o in level.row_origin],
        "columns": [[i + 1, j + 1] for i, j in level.var_ancestry],
        "signs": [[sign_int(s) for s in row] for row in level.signs],
        "dropped": [row_label(level.row_origin[r]) for r in level.dropped_rows],
        "pivot": None,
    }
    if level.partition is not None:
        p = level.partition
        payload["pivot"] = {
            "row": row_label(level.row_origin[p.pivot_row]),
            "I": [i + 1 for i in p.positive],
            "J": [j + 1 for j in p.negative],
            "K": [k + 1 for k in p.zero],
        }
    if entries:
        payload["entries"] = [[_entry_text(e) for e in row] for row in level.matrix.to_rows()]
    return payload


def verdict_payload(
    verdict: Verdict, trace: DinesTrace, row_label: RowLabel = default_row_label
) -> dict:
    payload: dict = {"verdict": verdict.label}
    match verdict:
        case Infeasible():
            payload |= {
                "level": verdict.level,
                "step": verdict.step,
                "row": row_label(trace.levels[verdict.level].row_origin[verdict.row]),
                "signs": list(verdict.signs),
                "pf": verdict.pf,
            }
        case Indeterminate():
            payload["level"] = verdict.level
            if verdict.position is not None:
                row, column = verdict.position
                payload["row"] = row_label(trace.levels[verdict.level].row_origin[row])
                payload["column"] = column + 1
            if verdict.expression is not None:
                payload["expression"] = verdict.expression.render()
            if verdict.detail is not None:
                s = verdict.detail.summary
                payload["sampling"] = {
                    "samples": s.samples,
                    "positive": s.positive,
                    "negative": s.negative,
                    "zero": s.zero,
                    "status": s.status,
                    "seed": s.seed,
                }
    return payload
