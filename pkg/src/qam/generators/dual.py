"""
Nombres duaux d'ordre 2 sur des tableaux numpy.

Un Dual2 porte (valeur, dérivée première, dérivée seconde) par rapport à une
variable. L'arithmétique propage les trois composantes exactement: d1 et d2
d'une expression sont justes à la précision machine.
"""
from typing import Union

import numpy as np

Number = Union[int, float, np.ndarray]


class Dual2:
    """Nombre dual tronqué à l'ordre 2: p + t·ε + ½ c·ε²."""
    __slots__ = ("p", "t", "c")

    def __init__(self, primal: Number, tangent: Number = 0.0, curvature: Number = 0.0):
        self.p = np.asarray(primal, dtype=float)
        self.t = np.asarray(tangent, dtype=float)
        self.c = np.asarray(curvature, dtype=float)

    @classmethod
    def variable(cls, x: Number) -> "Dual2":
        x = np.asarray(x, dtype=float)
        return cls(x, np.ones_like(x), np.zeros_like(x))

    @classmethod
    def constant(cls, value: float) -> "Dual2":
        return cls(value, 0.0, 0.0)

    # ---------- arithmétique ----------
    @staticmethod
    def _coerce(x: Union["Dual2", Number]) -> "Dual2":
        return x if isinstance(x, Dual2) else Dual2(x)

    def __add__(self, other):
        o = Dual2._coerce(other)
        return Dual2(self.p + o.p, self.t + o.t, self.c + o.c)

    __radd__ = __add__

    def __sub__(self, other):
        o = Dual2._coerce(other)
        return Dual2(self.p - o.p, self.t - o.t, self.c - o.c)

    def __rsub__(self, other):
        return Dual2._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = Dual2._coerce(other)
        return Dual2(
            self.p * o.p,
            self.t * o.p + self.p * o.t,
            self.c * o.p + 2.0 * self.t * o.t + self.p * o.c,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Dual2":
        inv = 1.0 / self.p
        return Dual2(
            inv,
            -self.t * inv * inv,
            -self.c * inv * inv + 2.0 * self.t * self.t * inv * inv * inv,
        )

    def __truediv__(self, other):
        o = Dual2._coerce(other)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return Dual2._coerce(other) * self.reciprocal()

    def __neg__(self):
        return Dual2(-self.p, -self.t, -self.c)

    def _chain(self, g0, g1, g2) -> "Dual2":
        # (g∘u)″ = g″(u)·u′² + g′(u)·u″
        return Dual2(g0, g1 * self.t, g2 * self.t * self.t + g1 * self.c)

    def __pow__(self, power: float) -> "Dual2":
        if isinstance(power, Dual2):
            raise TypeError("Dual2 exponent must be a constant")
        power = float(power)
        if power == 0.0:
            return Dual2(np.ones_like(self.p))
        if power == 1.0:
            return Dual2(self.p, self.t, self.c)
        if power == 2.0:
            return self * self
        return self._chain(
            np.power(self.p, power),
            power * np.power(self.p, power - 1.0),
            power * (power - 1.0) * np.power(self.p, power - 2.0),
        )

    # ---------- fonctions ----------
    def exp(self) -> "Dual2":
        e = np.exp(self.p)
        return self._chain(e, e, e)

    def log(self) -> "Dual2":
        inv = 1.0 / self.p
        return self._chain(np.log(self.p), inv, -inv * inv)

    def __repr__(self) -> str:
        return f"Dual2({self.p}, {self.t}, {self.c})"


__all__ = ['Dual2']
