"""Labeled triangle scaffold used by the configuration checks.

Vertex labels: ``x1, x2, x3 = 0, 1, 2`` (degree 2 in the triangle),
``y1, y2, y3 = 3, 4, 5`` (degree 1) and ``w_l = 5 + l`` for ``l = 1..s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import Hypergraph, Triple

X = (0, 1, 2)
Y = (3, 4, 5)


def _t(*vs) -> Triple:
    a, b, c = sorted(vs)
    return (a, b, c)


def x(i: int) -> int:
    return X[i - 1]


def y(i: int) -> int:
    return Y[i - 1]


@dataclass(frozen=True)
class TriangleFrame:
    s: int
    n: int = field(init=False)

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be non-negative")
        object.__setattr__(self, "n", 6 + self.s)

    @property
    def U(self) -> tuple[int, ...]:
        return X + Y

    @property
    def U1(self) -> tuple[int, ...]:
        return Y

    @property
    def U2(self) -> tuple[int, ...]:
        return X

    @property
    def W(self) -> tuple[int, ...]:
        return tuple(range(6, 6 + self.s))

    def w(self, l: int) -> int:
        if not 1 <= l <= self.s:
            raise IndexError(f"w_{l} does not exist for s={self.s}")
        return 5 + l

    @property
    def C(self) -> list[Triple]:
        # {x_i, y_j, x_k} for {i, j, k} = {1, 2, 3}
        return sorted(_t(x(i), y(j), x(k)) for i, j, k in ((1, 2, 3), (1, 3, 2), (2, 1, 3)))

    @property
    def T1(self) -> list[Triple]:
        return sorted(_t(x(i), y(i), w) for i in (1, 2, 3) for w in self.W)

    @property
    def T2(self) -> list[Triple]:
        return sorted(_t(x(i), x(j), w) for i, j in ((1, 2), (1, 3), (2, 3)) for w in self.W)

    @property
    def T(self) -> list[Triple]:
        return sorted(self.T1 + self.T2)

    @property
    def U_triples(self) -> list[Triple]:
        return list(combinations(self.U, 3))

    @property
    def W_triples(self) -> list[Triple]:
        return list(combinations(self.W, 3))

    @property
    def X1(self) -> list[Triple]:
        return sorted([
            _t(x(1), y(2), y(3)), _t(x(2), y(2), y(3)), _t(x(3), y(2), y(3)),
            _t(x(2), y(1), y(3)), _t(x(3), y(1), y(2)),
            _t(x(2), x(3), y(2)), _t(x(2), x(3), y(3)),
        ])

    @property
    def X2(self) -> list[Triple]:
        return sorted([
            _t(y(1), y(2), y(3)), _t(x(2), y(1), y(3)), _t(x(3), y(1), y(3)),
            _t(x(1), y(2), y(3)), _t(x(3), y(2), y(3)),
        ])

    @property
    def Y(self) -> list[Triple]:
        extra = [_t(x(2), y(2), y(3)), _t(x(2), y(1), y(2)), _t(x(3), y(1), y(2))]
        return sorted(set(self.X2) | set(extra))

    @property
    def Z1(self) -> list[Triple]:
        out = {_t(*Y)}
        for i, j in combinations((1, 2, 3), 2):
            for k in (1, 2, 3):
                out.add(_t(y(i), y(j), x(k)))
        return sorted(out)

    @property
    def Z2(self) -> list[Triple]:
        return sorted(set(self.Y) | {_t(x(2), x(3), y(2)), _t(x(2), x(3), y(3))})

    def classify(self, e: Triple) -> str:
        """``'U'``, ``'W'`` or ``'cross'`` for the edge partition H[U] / H[W] / H(U,W)."""
        inside = sum(v < 6 for v in e)
        return {3: "U", 0: "W"}.get(inside, "cross")

    def triangle(self) -> Hypergraph:
        return Hypergraph(self.n, tuple(self.C))

    def name(self, v: int) -> str:
        if v in X:
            return f"x{X.index(v) + 1}"
        if v in Y:
            return f"y{Y.index(v) + 1}"
        return f"w{v - 5}"
