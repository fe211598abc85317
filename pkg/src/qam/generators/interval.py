"""
Intervalle réel borné, domaine commun U des générateurs.
"""
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, root_validator


class Interval(BaseModel):
    """
    Intervalle borné [lo, hi], chaque extrémité ouverte ou fermée.

    Les bornes doivent être finies et lo < hi.
    """
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    class Config:
        frozen = True
        allow_mutation = False

    def __init__(self, lo: float, hi: float, **data):
        super().__init__(lo=lo, hi=hi, **data)

    @root_validator(skip_on_failure=True)
    def check_bounds(cls, values):
        lo, hi = values['lo'], values['hi']
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"Interval endpoints must be finite, got ({lo}, {hi})")
        if not lo < hi:
            raise ValueError(f"Interval requires lo < hi, got ({lo}, {hi})")
        return values

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, lo_closed=False, hi_closed=False)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi)

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """
        Lit "lo,hi" (fermé), "(lo,hi)", "[lo,hi]", "(lo,hi]" ou "[lo,hi)".

        Raises:
            ValueError: Si le texte est mal formé ou les bornes invalides
        """
        body = text.strip()
        lo_closed = hi_closed = True
        if body and body[0] in "([":
            lo_closed = body[0] == "["
            body = body[1:]
        if body and body[-1] in ")]":
            hi_closed = body[-1] == "]"
            body = body[:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"Interval must be 'lo,hi', got '{text}'")
        lo, hi = (float(p) for p in parts)
        return cls(lo, hi, lo_closed=lo_closed, hi_closed=hi_closed)

    def length(self) -> float:
        return self.hi - self.lo

    def is_closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi)

    def contains(self, x: float) -> bool:
        """Appartenance à l'intervalle en respectant l'ouverture des bords."""
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return bool(above and below)

    def contains_closure(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def is_subset_of(self, other: "Interval") -> bool:
        """V ⊆ U, ouverture des bords comprise."""
        if self.lo < other.lo or self.hi > other.hi:
            return False
        if self.lo == other.lo and self.lo_closed and not other.lo_closed:
            return False
        if self.hi == other.hi and self.hi_closed and not other.hi_closed:
            return False
        return True

    def shrink(self, margin: float) -> Tuple[float, float]:
        """Bornes [lo + margin, hi - margin] utilisées pour les balayages."""
        return self.lo + margin, self.hi - margin

    def linspace(self, points: int) -> np.ndarray:
        return np.linspace(self.lo, self.hi, points)

    def split(self, n: int) -> Tuple["Interval", ...]:
        """Partition en n cellules fermées de même longueur."""
        edges = np.linspace(self.lo, self.hi, n + 1)
        return tuple(Interval(float(edges[i]), float(edges[i + 1])) for i in range(n))

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.17g},{self.hi:.17g}{right}"


UNIT_INTERVAL = Interval(0.0, 1.0)


__all__ = ['Interval', 'UNIT_INTERVAL']
