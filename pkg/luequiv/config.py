from pydantic import computed_field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    COMPARISON_TOL: float = 1e-9
    WITNESS_TOL_FACTOR: float = 10.0
    RANK_TOL: float = 1e-8
    ALIGN_TOL: float = 1e-8
    DEGENERACY_TOL: float = 1e-7
    PARALLEL_TOL: float = 1e-10
    DENSITY_TOL: float = 1e-10
    LPS_TOL: float = 1e-12

    FAMILY_DEPTH: int = 2
    FAMILY_CAP: int = 200

    ORACLE_RESTARTS: int = 100
    ORACLE_MAX_ITER: int = 4000
    ORACLE_STOP_BELOW: float = 1e-9

    CLASSIFY_CONCURRENCY: int = 8

    LOG_LEVEL: str = "WARNING"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def WITNESS_TOL(self) -> float:
        """Tolerance a witness must meet on every tensor relation."""
        return self.COMPARISON_TOL * self.WITNESS_TOL_FACTOR

    model_config = {
        "env_prefix": "LUEQUIV_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }


settings = Settings()
