from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "Krylov Spread Complexity"

    # Numerics
    SYMMETRY_TOL: float = 1e-12
    LANCZOS_TOL: float = 1e-10  # scaled by max(1, max degree)
    DEGENERACY_TOL: float = 1e-8  # scaled by max(1, spectral range)
    IMPROVEMENT_TOL: float = 1e-12

    # Optimizer defaults
    CANDIDATE_COUNT: int = 20
    MAX_STALE_ROUNDS: int = 200
    RESTARTS: int = 8
    DEFAULT_SEED: int = 0
    BATCH_SIZE: int = 4096
    BRUTE_FORCE_MAX_D: int = 7

    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_prefix="SPREADCX_",
        extra="ignore",
    )


settings = Settings()
