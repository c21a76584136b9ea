"""Carriers: the cell sets configurations live on.

A carrier is the acting semigroup S seen as its own set of cells.  Cells
are hashable labels: tuples of generator indices for a free carrier, int
tuples for a grid carrier.  Two multiplications matter and they differ on
the free carrier:

* an action step moves the cell t to gen * t (prepend: step(i, t)),
* a pattern with domain D placed at position s occupies the cells
  {d * s : d in D} (append: place(d, s)); divide_left(d, w) solves
  d * s = w for s.

On grids both are coordinate addition.
"""

from __future__ import annotations

import itertools

from .errors import NatextError


class Carrier:
    n_gens: int
    kind: str

    def one(self):
        raise NotImplementedError

    def generator(self, i: int):
        raise NotImplementedError

    def step(self, i: int, t):
        """The cell gen_i * t (the action-edge target from t)."""
        raise NotImplementedError

    def place(self, d, s):
        """The cell d * s (domain cell d of a pattern placed at s)."""
        raise NotImplementedError

    def divide_left(self, d, w):
        """The s with d * s = w, or None."""
        raise NotImplementedError

    def is_cell(self, t) -> bool:
        raise NotImplementedError

    def sort_key(self, t):
        raise NotImplementedError

    def format_cell(self, t, names=None) -> str:
        raise NotImplementedError

    def parse_cell(self, obj, names=None):
        """Cell from its JSON form."""
        raise NotImplementedError

    def cell_json(self, t, names=None):
        raise NotImplementedError


class FreeCarrier(Carrier):
    """Free monoid on n generators; cells are words (index tuples)."""

    kind = "free"

    def __init__(self, n_gens: int):
        if n_gens < 1:
            raise ValueError("free carrier needs at least one generator")
        self.n_gens = n_gens

    def one(self):
        return ()

    def generator(self, i: int):
        return (i,)

    def step(self, i: int, t):
        return (i,) + t

    def place(self, d, s):
        return d + s

    def divide_left(self, d, w):
        k = len(d)
        if len(w) >= k and w[:k] == d:
            return w[k:]
        return None

    def is_cell(self, t) -> bool:
        return isinstance(t, tuple) and all(
            isinstance(g, int) and 0 <= g < self.n_gens for g in t
        )

    def sort_key(self, t):
        return (len(t), t)

    def ball(self, radius: int) -> list:
        """All words of length <= radius, shortlex order."""
        out = []
        for length in range(radius + 1):
            out.extend(itertools.product(range(self.n_gens), repeat=length))
        return out

    def format_cell(self, t, names=None) -> str:
        if not t:
            return "1"
        if names:
            return " ".join(names[g] for g in t)
        return " ".join(str(g) for g in t)

    def parse_cell(self, obj, names=None):
        if obj == [] or obj == "1" or obj == "":
            return ()
        if isinstance(obj, str):
            obj = obj.split()
        out = []
        for item in obj:
            if isinstance(item, int):
                out.append(item)
            elif names and item in names:
                out.append(list(names).index(item))
            else:
                raise NatextError(f"unknown generator name {item!r} in cell")
        return tuple(out)

    def cell_json(self, t, names=None):
        if names:
            return [names[g] for g in t]
        return list(t)


class GridCarrier(Carrier):
    """N^d (nonneg=True) or Z^d; cells are int tuples, all ops additive."""

    def __init__(self, d: int, nonneg: bool = True):
        if d < 1:
            raise ValueError("grid carrier needs dimension >= 1")
        self.d = d
        self.n_gens = d
        self.nonneg = nonneg
        self.kind = "grid" if nonneg else "grid-z"

    def one(self):
        return (0,) * self.d

    def generator(self, i: int):
        return tuple(1 if k == i else 0 for k in range(self.d))

    def step(self, i: int, t):
        return tuple(c + 1 if k == i else c for k, c in enumerate(t))

    def place(self, d, s):
        return tuple(a + b for a, b in zip(d, s))

    def divide_left(self, d, w):
        s = tuple(b - a for a, b in zip(d, w))
        if self.nonneg and any(c < 0 for c in s):
            return None
        return s

    def is_cell(self, t) -> bool:
        if not (isinstance(t, tuple) and len(t) == self.d):
            return False
        return all(isinstance(c, int) and (c >= 0 or not self.nonneg) for c in t)

    def sort_key(self, t):
        return t

    def box(self, shape) -> list:
        """All cells of the box prod [0, shape_i), row-major order."""
        if isinstance(shape, int):
            shape = (shape,) * self.d
        return list(itertools.product(*(range(n) for n in shape)))

    def format_cell(self, t, names=None) -> str:
        return "(" + ",".join(str(c) for c in t) + ")"

    def parse_cell(self, obj, names=None):
        return tuple(int(c) for c in obj)

    def cell_json(self, t, names=None):
        return list(t)


def carrier_for(kind: str, n_gens: int) -> Carrier:
    if kind == "free":
        return FreeCarrier(n_gens)
    if kind == "grid":
        return GridCarrier(n_gens, nonneg=True)
    if kind == "grid-z":
        return GridCarrier(n_gens, nonneg=False)
    raise NatextError(f"unknown carrier kind {kind!r}")
