from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = "INFO"

    # Batch execution
    MAS_SIM_THREADS: int = 0  # 0 = sequential

    # Scenario and result locations
    SCENARIO_DIR: str = "data/scenarios"
    OUTPUT_DIR: str = "data/results"

    # Integration defaults
    DEFAULT_DT: float = 1e-3
    DEFAULT_RECORD_STRIDE: int = 100

    # Numerical tolerances
    EIGEN_TOL: float = 1e-9
    CONVERGENCE_TOL: float = 0.05

    # Charts
    SVG_MAX_POINTS: int = 2000

    # Violated gain conditions only warn unless strict
    STRICT_GAIN_CHECK: bool = False

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
