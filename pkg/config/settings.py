from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict


class NeumannSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="NEUMANN_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    seed: int = 42
    samples: int = 100
    polya_max: int = 4
    pivot_policy: str = "first"
    strip_row_factors: bool = True

    gap_low: str = "1/8"
    gap_high: str = "8"
    denominator_bound: int = 64
    singular_retries: int = 10
    sign_samples: int = 1000

    max_n: int = 5
    workers: int = 1

    log_level: str = "WARNING"
    output_format: str = "text"

    data_dir: str = "data"
    golden_table: str = "data/golden_tables_n2.csv"

    csv_column_order: list[str] = [
        "case",
        "verdict",
        "fail_level",
        "pf",
        "duration_ms",
    ]
    golden_column_order: list[str] = ["case", "verdict", "step", "pf"]


@lru_cache(maxsize=None)
def get_settings() -> NeumannSettings:
    return NeumannSettings()


settings = get_settings()
