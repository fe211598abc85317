"""
Configuration d'une exécution du CLI.
"""
from typing import List, Optional

from pydantic import BaseModel, validator

from ..referentials import CORPUS_SELECTORS, OUTPUT_FORMATS

COMMANDS = ("mean", "rho", "bounds", "table", "verify")


class RunConfig(BaseModel):
    """Commande, générateurs, intervalle et options de sortie."""
    command: str
    f: Optional[str] = None
    g: Optional[str] = None
    gen: Optional[str] = None
    interval: Optional[str] = None
    values: Optional[List[float]] = None
    weights: Optional[List[float]] = None
    grid_n: Optional[int] = None
    grid_m: Optional[int] = None
    tol: Optional[float] = None
    format: str = "json"
    corpus: str = "default"

    @validator('command')
    def check_command(cls, v):
        if v not in COMMANDS:
            raise ValueError(f"Unknown command '{v}'")
        return v

    @validator('format')
    def check_format(cls, v):
        v = v.lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{v}', expected one of {OUTPUT_FORMATS}")
        return v

    @validator('corpus')
    def check_corpus(cls, v):
        if v not in CORPUS_SELECTORS:
            raise ValueError(f"Unknown corpus '{v}', expected one of {CORPUS_SELECTORS}")
        return v

    @validator('grid_n', 'grid_m')
    def check_grid(cls, v):
        if v is not None and v < 2:
            raise ValueError(f"Grid sizes must be >= 2, got {v}")
        return v

    @validator('tol')
    def check_tol(cls, v):
        if v is not None and not v > 0:
            raise ValueError(f"Tolerance must be positive, got {v}")
        return v


__all__ = ['RunConfig', 'COMMANDS']
