"""Elements of k[t]/(g) for a monic integral g irreducible modulo a prime.

Such an algebra is a field whose completion at v is the unramified extension
of k_v of degree deg g; the basis 1, t, ..., t^(f-1) is an integral basis
there, so valuations and residues are read off coefficientwise.
"""
from __future__ import annotations

from fractions import Fraction

from .arith import Eis


def _scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Eis))


class ExtElem:
    __slots__ = ("c", "g")

    def __init__(self, coeffs, g: tuple[int, ...]):
        f = len(g) - 1
        cs = list(coeffs) + [0] * (f - len(coeffs))
        self.c = tuple(cs[:f])
        self.g = g

    @property
    def degree(self) -> int:
        return len(self.g) - 1

    def _lift(self, o):
        if isinstance(o, ExtElem):
            return o
        if _scalar(o):
            return ExtElem([o], self.g)
        return None

    def __add__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return ExtElem([x + y for x, y in zip(self.c, o.c)], self.g)

    __radd__ = __add__

    def __neg__(self):
        return ExtElem([-x for x in self.c], self.g)

    def __sub__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if _scalar(o):
            return ExtElem([x * o for x in self.c], self.g)
        if not isinstance(o, ExtElem):
            return NotImplemented
        f = self.degree
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(o.c):
                if y != 0:
                    prod[i + j] = prod[i + j] + x * y
        for i in range(2 * f - 2, f - 1, -1):
            top = prod[i]
            if top == 0:
                continue
            for j in range(f + 1):
                prod[i - f + j] = prod[i - f + j] - top * self.g[j]
        return ExtElem(prod[:f], self.g)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if _scalar(o):
            return ExtElem([x / o if not isinstance(x, int) else Fraction(x) / o for x in self.c], self.g)
        return NotImplemented

    def __eq__(self, o):
        if _scalar(o):
            return self.c[0] == o and all(x == 0 for x in self.c[1:])
        if isinstance(o, ExtElem):
            return self.c == o.c and self.g == o.g
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.g))

    def __str__(self):
        terms = []
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            terms.append(str(x) if i == 0 else f"({x})t" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__
