from pydantic import BaseModel, ConfigDict, Field
from typing import List, Optional


class SampleReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    index: int
    attempt: int = 0
    a: List[str]
    lam: List[str] = Field(alias="lambda")
    verdict: str
    oracle: str
    witness: Optional[List[str]] = None
    witness_matches_oracle: Optional[bool] = None
    roots_matched: Optional[bool] = None
    lift_error: Optional[str] = None


class CrossCheckReport(BaseModel):
    case: str
    symbolic: str
    samples: List[SampleReport]
    agreement: bool
    singular_retries: int = 0
    nonpositive_lifts: int = 0
    witness_mismatches: int = 0
    root_mismatches: int = 0
    disagreements: List[str] = []

    @property
    def ok(self) -> bool:
        return (
            self.agreement
            and not self.nonpositive_lifts
            and not self.witness_mismatches
            and not self.root_mismatches
        )


class CrossCheckSummary(BaseModel):
    cases: int
    agreements: int
    disagreements: int
    singular_retries: int
    nonpositive_lifts: int
    witness_mismatches: int
    root_mismatches: int
