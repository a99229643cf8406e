from pydantic import BaseModel, ConfigDict, Field
from typing import Any, Dict, List, Optional


class RunConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    command: str
    n: Optional[int] = None
    subset: Optional[List[int]] = None
    placement: Optional[List[int]] = None
    a: Optional[List[str]] = None
    lam: Optional[List[str]] = Field(default=None, alias="lambda")
    seed: int
    samples: int
    polya_max: int
    pivot: str
    format: str
    output: Optional[str] = None


class TableRow(BaseModel):
    case: str
    verdict: Optional[int] = None
    fail_level: Optional[int] = None
    pf: bool = False
    duration_ms: float = 0.0
    status: str = ""


class LevelReport(BaseModel):
    level: int
    rows: List[str]
    columns: List[List[int]]
    signs: List[List[Optional[int]]]
    dropped: List[str] = []
    pivot: Optional[Dict[str, Any]] = None
    entries: Optional[List[List[str]]] = None


class CheckReport(BaseModel):
    config: RunConfig
    case: str
    scene: str
    verdict: Dict[str, Any]
    stop_reason: str
    levels: Optional[List[LevelReport]] = None


class WitnessReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    config: RunConfig
    case: str
    a: List[str]
    lam: List[str] = Field(alias="lambda")
    qsq: List[str]
    constraint: str
    u: str
    counts: List[int]
    expected: List[int]
    real_roots: int
    matched: bool
    oracle_agrees: Optional[bool] = None
