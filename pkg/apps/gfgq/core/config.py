"""
Configuration management for gfgq using pydantic-settings.

Every enumeration guard and state budget of the toolkit has a default here;
operations take an explicit override and fall back to the global `settings`.
"""

from __future__ import annotations
from typing import Dict
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """Toolkit settings; override with GFGQ_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="GFGQ_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Bounded-horizon oracle
    default_horizon: int = Field(2, description="Explicit time steps of oracle assignments")
    horizon_limit: int = Field(4, description="Largest horizon the oracle enumerates")
    dualize_guard: int = Field(1_000_000, description="Bound on choice functions in literal dualization")
    partition_guard: int = Field(16, description="Bound on |A| for partition enumeration")
    assignment_space_guard: int = Field(256, description="Bound on 2^(|P|*h) for functor enumeration")
    functor_guard: int = Field(100_000, description="Bound on sigma-functors enumerated at once")
    extension_guard: int = Field(200_000, description="Bound on sets produced by one extension step")

    # Automata and games
    automaton_state_budget: int = Field(1_000_000, description="Determinization/product state budget")
    subset_budget: int = Field(65_536, description="Kripke trace subset-construction budget")
    brute_force_positions: int = Field(12, description="Largest game handled by brute_solve")
    lasso_samples: int = Field(500, description="Default number of sampled lassos in checks")

    # Application
    log_level: str = Field("WARNING", description="Root log level for the CLI")

    @field_validator("default_horizon")
    @classmethod
    def validate_horizon(cls, v: int) -> int:
        """Horizon must be a positive number of steps."""
        if v < 1:
            raise ValueError("default_horizon must be at least 1")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Accept only standard logging level names."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return v.upper()

    @property
    def guards(self) -> Dict[str, int]:
        """All enumeration guards, keyed by the name used in error messages."""
        return {
            "dualize": self.dualize_guard,
            "partitions": self.partition_guard,
            "assignment_space": self.assignment_space_guard,
            "functors": self.functor_guard,
            "extension": self.extension_guard,
            "automaton_states": self.automaton_state_budget,
            "subsets": self.subset_budget,
            "brute_force_positions": self.brute_force_positions,
        }


# Global settings instance
settings = Settings()
