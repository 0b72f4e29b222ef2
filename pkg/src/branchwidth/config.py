# src/branchwidth/config.py
import os
from typing import Optional
from pathlib import Path
import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings


class SolverConfig(BaseModel):
    """Full-set dynamic program configuration"""
    namu_cap: int = Field(default=64, gt=0)
    default_prime: int = 2
    trace: bool = False
    table_warning: int = 5000


class OracleConfig(BaseModel):
    """Brute-force oracle limits"""
    max_parts: int = Field(default=8, ge=1)
    fullset_max_parts: int = Field(default=5, ge=1)


class LoggingConfig(BaseModel):
    """Logging configuration"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseSettings):
    """Application settings"""
    solver: SolverConfig = SolverConfig()
    oracle: OracleConfig = OracleConfig()
    logging: LoggingConfig = LoggingConfig()

    class Config:
        env_file = ".env"
        env_nested_delimiter = "__"


def load_config(config_path: Optional[str] = None) -> Settings:
    """Load configuration from YAML file"""
    if config_path is None:
        config_path = Path(__file__).parent.parent.parent / "config" / "solver.yaml"

    if not Path(config_path).exists():
        # Return default configuration
        return Settings()

    with open(config_path, 'r') as f:
        config_data = yaml.safe_load(f) or {}

    # Get environment (default to development)
    environment = os.getenv('ENVIRONMENT', 'development')

    solver_config = config_data.get('solver', {}).get(environment, {})
    oracle_config = config_data.get('oracle', {})
    logging_config = config_data.get('logging', {})

    # Environment variables (SOLVER__NAMU_CAP=...) win over the YAML file
    from_env = Settings()

    return Settings(
        solver=SolverConfig(**{**solver_config, **from_env.solver.model_dump(exclude_unset=True)}),
        oracle=OracleConfig(**{**oracle_config, **from_env.oracle.model_dump(exclude_unset=True)}),
        logging=LoggingConfig(**{**logging_config, **from_env.logging.model_dump(exclude_unset=True)}),
    )


# Global configuration instance
settings = load_config()
