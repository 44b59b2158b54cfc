"""Minimal forward-mode dual numbers.

Used to push exact first derivatives through the closed-form parametric
formulas: seed ``s`` with derivative 1 and ``w`` / ``w_s`` with their
derivatives taken from the governing linear ODE, evaluate, read ``.der``.
Only the operations the formulas actually use are provided.
"""

import math


class Dual:
    __slots__ = ("val", "der")

    def __init__(self, val, der=0.0):
        self.val = float(val)
        self.der = float(der)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.der!r})"

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.der + other.der)
        return Dual(self.val + other, self.der)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.der - other.der)
        return Dual(self.val - other, self.der)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.der)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val, self.der * other.val + self.val * other.der)
        return Dual(self.val * other, self.der * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            v = self.val / other.val
            return Dual(v, (self.der - v * other.der) / other.val)
        return Dual(self.val / other, self.der / other)

    def __rtruediv__(self, other):
        v = other / self.val
        return Dual(v, -v * self.der / self.val)

    def __neg__(self):
        return Dual(-self.val, -self.der)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.val < 0 else self

    def __pow__(self, p):
        if isinstance(p, Dual):
            raise TypeError("Dual exponents are not supported")
        if p == 0:
            return Dual(1.0, 0.0)
        if p == 1:
            return self
        if float(p).is_integer():
            v = self.val ** int(p)
            d = p * self.val ** (int(p) - 1) * self.der
            return Dual(v, d)
        if self.val < 0:
            raise ValueError("fractional power of a negative Dual")
        v = self.val ** p
        return Dual(v, p * self.val ** (p - 1) * self.der)

    def _cmp(self, other):
        return other.val if isinstance(other, Dual) else other

    def __lt__(self, other):
        return self.val < self._cmp(other)

    def __le__(self, other):
        return self.val <= self._cmp(other)

    def __gt__(self, other):
        return self.val > self._cmp(other)

    def __ge__(self, other):
        return self.val >= self._cmp(other)

    def __float__(self):
        return self.val


def value(x):
    return x.val if isinstance(x, Dual) else float(x)


def deriv(x):
    return x.der if isinstance(x, Dual) else 0.0


def sqrt(x):
    if isinstance(x, Dual):
        r = math.sqrt(x.val)
        return Dual(r, 0.5 * x.der / r)
    return math.sqrt(x)


def exp(x):
    if isinstance(x, Dual):
        e = math.exp(x.val)
        return Dual(e, e * x.der)
    return math.exp(x)


def log(x):
    if isinstance(x, Dual):
        return Dual(math.log(x.val), x.der / x.val)
    return math.log(x)


def sin(x):
    if isinstance(x, Dual):
        return Dual(math.sin(x.val), math.cos(x.val) * x.der)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual):
        return Dual(math.cos(x.val), -math.sin(x.val) * x.der)
    return math.cos(x)
