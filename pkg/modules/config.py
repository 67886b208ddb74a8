"""
Configuration module for the cone certification toolkit
Numeric tolerances, sampling sizes and logging options, overridable via environment
"""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix CONECERT_)"""

    # Numeric tolerances
    TOLERANCE: float = 1e-9  # Power-iteration stop threshold on δ between iterates
    RESIDUAL_TOL: float = 1e-10  # Power iteration keeps polishing until ‖Av − λv‖/‖v‖ is below this
    ZERO_TOL: float = 1e-12  # Scale-free sign/zero tests (cone membership, disk contacts)

    # Sampling and iteration
    SAMPLES: int = 256  # Per-circle grid size for RHP diameters, Monte-Carlo pair count
    MAX_ITER: int = 10000  # Power iteration cap
    SEED: int = 0  # Seed for every random sampler

    # Eigenvalue oracle (verification only, never read by certification paths)
    ORACLE: bool = False
    ORACLE_MAX_DIM: int = 12

    # Hyperbolic gauge bounds
    ALPHA_CAP: float = 16.0  # Largest Ω_α exponent accepted by the sector bound

    # Logging Configuration
    # Options: "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"
    LOG_LEVEL: str = "WARNING"
    LOG_TO_FILE: bool = False
    LOG_DIR: str = "logs"

    model_config = SettingsConfigDict(
        env_prefix="CONECERT_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    @property
    def oracle_enabled(self) -> bool:
        """Whether certify should run the eigenvalue cross-check by default"""
        return self.ORACLE and self.ORACLE_MAX_DIM > 0


# Global settings instance
settings = Settings()
