import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from cli.schemas import RunConfig, TableRow
from config import get_logger, settings

logger = get_logger(__name__)


def rows_frame(rows: list[TableRow]) -> pd.DataFrame:
    df = pd.DataFrame([row.model_dump() for row in rows])
    if df.empty:
        return pd.DataFrame(columns=settings.csv_column_order)
    df = df.astype({"verdict": "Int64", "fail_level": "Int64"})
    existing_cols = [c for c in settings.csv_column_order if c in df.columns]
    return df[existing_cols]


def format_records(
    records: list[dict], fmt: str, config: RunConfig | None = None, key: str = "rows"
) -> str:
    """Render plain records as text (aligned), CSV or JSON with the run config echoed."""
    if fmt == "json":
        payload = {key: records}
        if config is not None:
            payload = {"config": config.model_dump(by_alias=True)} | payload
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    df = pd.DataFrame(records)
    if fmt == "csv":
        return df.to_csv(index=False)
    return df.to_string(index=False) + "\n"


def format_table(rows: list[TableRow], fmt: str, config: RunConfig) -> str:
    if fmt == "json":
        return format_records([row.model_dump() for row in rows], "json", config)
    df = rows_frame(rows)
    if fmt == "csv":
        return df.to_csv(index=False)
    # feasible rows have no fail level
    return df.astype(object).fillna("").to_string(index=False) + "\n"


def load_golden(path: str | Path) -> pd.DataFrame:
    logger.info(f"Loading golden table from {path}")
    df = pd.read_csv(path, dtype={"case": str})
    missing = [c for c in settings.golden_column_order if c not in df.columns]
    if missing:
        raise ValueError(f"Golden table {path} lacks columns {missing}")
    return df.astype({"verdict": "Int64", "step": "Int64", "pf": bool})


@dataclass
class GoldenComparison:
    compared: int = 0
    verdict_mismatches: list[str] = field(default_factory=list)
    step_differences: list[str] = field(default_factory=list)
    pf_differences: list[str] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return not self.verdict_mismatches and not self.missing

    def lines(self) -> list[str]:
        out = [
            f"golden: {self.compared - len(self.verdict_mismatches)}/{self.compared} verdicts match"
        ]
        out += [f"  verdict mismatch {m}" for m in self.verdict_mismatches]
        out += [f"  missing {m}" for m in self.missing]
        if self.step_differences:
            out.append(f"  step differs (informational): {', '.join(self.step_differences)}")
        if self.pf_differences:
            out.append(f"  pf differs (informational): {', '.join(self.pf_differences)}")
        return out


def _value(cell) -> int | None:
    return None if pd.isna(cell) else int(cell)


def compare_golden(rows: list[TableRow], golden: pd.DataFrame) -> GoldenComparison:
    """Verdicts are binding; step (fail level + 1) and pf are reported only."""
    ours = rows_frame(rows)
    ours = ours.assign(step=ours["fail_level"] + 1)
    merged = ours.merge(
        golden[settings.golden_column_order],
        on="case",
        how="outer",
        suffixes=("", "_golden"),
        indicator=True,
    )
    result = GoldenComparison()
    for record in merged.to_dict(orient="records"):
        case = record["case"]
        if record["_merge"] != "both":
            side = "from golden table" if record["_merge"] == "left_only" else "from run"
            result.missing.append(f"{case} ({side})")
            continue
        result.compared += 1
        verdict, golden_verdict = _value(record["verdict"]), _value(record["verdict_golden"])
        if verdict != golden_verdict:
            result.verdict_mismatches.append(
                f"{case}: got {verdict}, golden {golden_verdict}"
            )
        step, golden_step = _value(record["step"]), _value(record["step_golden"])
        if golden_verdict == 0 and step != golden_step:
            result.step_differences.append(f"{case} {step} vs {golden_step}")
        if golden_verdict == 0 and bool(record["pf"]) != bool(record["pf_golden"]):
            result.pf_differences.append(case)
    for line in result.verdict_mismatches:
        logger.warning(f"Golden verdict mismatch {line}")
    return result


def write_output(text: str, path: str | None = None) -> None:
    if not path:
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Saved output to {path}")
