"""Group models (Z^d and free groups F_k) and finite windows of group elements.

Elements are plain tuples of ints so they hash and compare cheaply:

* lattice Z^d: the coordinate vector, e.g. ``(2, -1)``;
* free group F_k: a reduced word of generator indices, ``i`` for the i-th
  generator and ``-i`` for its inverse (1-based), e.g. ``(1, -2)`` is ab^-1.
  The identity is the empty word ``()``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Tuple

from .errors import ResourceLimitError

Element = Tuple[int, ...]

DEFAULT_CAP = 10**6

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class GroupModel:
    """A finitely generated group with its standard symmetric generating set.

    Parameters
    ----------
    kind : {"lattice", "free"}
    rank : int
        Dimension ``d`` for the lattice Z^d, number of free generators ``k``
        for F_k (``k >= 2``).
    """

    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in ("lattice", "free"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "lattice" and self.rank < 1:
            raise ValueError("lattice dimension must be >= 1")
        if self.kind == "free" and not 2 <= self.rank <= len(_LETTERS):
            raise ValueError("free group rank must be in [2, 26]")

    @classmethod
    def lattice(cls, d: int = 1) -> "GroupModel":
        return cls("lattice", d)

    @classmethod
    def free(cls, k: int = 2) -> "GroupModel":
        return cls("free", k)

    @classmethod
    def parse(cls, name: str) -> "GroupModel":
        """Parse names such as ``"Z"``, ``"Z2"``, ``"F2"``."""
        name = name.strip()
        head, tail = name[:1].upper(), name[1:]
        if head == "Z":
            return cls.lattice(int(tail) if tail else 1)
        if head == "F" and tail:
            return cls.free(int(tail))
        raise ValueError(f"cannot parse group name {name!r}")

    @property
    def name(self) -> str:
        if self.kind == "lattice":
            return "Z" if self.rank == 1 else f"Z{self.rank}"
        return f"F{self.rank}"

    # -- group law -----------------------------------------------------------

    @property
    def identity(self) -> Element:
        return (0,) * self.rank if self.kind == "lattice" else ()

    def generators(self) -> list[Element]:
        """The symmetric generating set, in canonical order."""
        if self.kind == "lattice":
            gens = []
            for j in range(self.rank):
                for s in (1, -1):
                    v = [0] * self.rank
                    v[j] = s
                    gens.append(tuple(v))
        else:
            gens = [(s * i,) for i in range(1, self.rank + 1) for s in (1, -1)]
        return sorted(gens, key=self.sort_key)

    def multiply(self, a: Element, b: Element) -> Element:
        if self.kind == "lattice":
            return tuple(x + y for x, y in zip(a, b))
        i = 0
        while i < len(a) and i < len(b) and a[-1 - i] == -b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def inverse(self, g: Element) -> Element:
        if self.kind == "lattice":
            return tuple(-x for x in g)
        return tuple(-x for x in reversed(g))

    def length(self, g: Element) -> int:
        """Word length with respect to the standard generators."""
        if self.kind == "lattice":
            return sum(abs(x) for x in g)
        return len(g)

    def is_canonical(self, g: Element) -> bool:
        if self.kind == "lattice":
            return len(g) == self.rank and all(isinstance(x, int) for x in g)
        return all(0 < abs(x) <= self.rank for x in g) and all(
            g[j] != -g[j + 1] for j in range(len(g) - 1)
        )

    def sort_key(self, g: Element):
        if self.kind == "lattice":
            return g
        return (len(g), tuple((abs(x), x < 0) for x in g))

    # -- ball sizes ----------------------------------------------------------

    def ball_size(self, radius: int) -> int:
        """Closed-form cardinality of the word ball of the given radius."""
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.kind == "lattice":
            d = self.rank
            return sum(2**j * comb(d, j) * comb(radius, j) for j in range(min(d, radius) + 1))
        k = self.rank
        return 1 + 2 * k * ((2 * k - 1) ** radius - 1) // (2 * k - 2)

    # -- text form -----------------------------------------------------------

    def format(self, g: Element) -> str:
        """Canonical string: ``"1,-2"`` on lattices, ``"aB"`` (B = b^-1) on free groups."""
        if self.kind == "lattice":
            return ",".join(str(x) for x in g)
        if not g:
            return "e"
        return "".join(_LETTERS[x - 1] if x > 0 else _LETTERS[-x - 1].upper() for x in g)

    def parse_element(self, s: str) -> Element:
        if self.kind == "lattice":
            g = tuple(int(t) for t in s.split(","))
            if len(g) != self.rank:
                raise ValueError(f"expected {self.rank} coordinates, got {s!r}")
            return g
        if s == "e":
            return ()
        word: Element = ()
        for ch in s:
            idx = _LETTERS.index(ch.lower()) + 1
            if idx > self.rank:
                raise ValueError(f"letter {ch!r} not a generator of {self.name}")
            word = self.multiply(word, (idx if ch.islower() else -idx,))
        return word


@dataclass(frozen=True)
class Window:
    """A finite, deduplicated set of group elements kept in sorted canonical order."""

    model: GroupModel
    elements: Tuple[Element, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    @classmethod
    def from_elements(
        cls, model: GroupModel, elements: Iterable[Element], cap: int = DEFAULT_CAP
    ) -> "Window":
        members = set()
        for g in elements:
            members.add(g)
            if len(members) > cap:
                raise ResourceLimitError(f"window exceeds cardinality cap {cap}")
        return cls(model, tuple(sorted(members, key=model.sort_key)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._members

    def issubset(self, other: "Window") -> bool:
        return self._members <= other._members

    @property
    def cardinality(self) -> int:
        return len(self.elements)


def word_ball(model: GroupModel, radius: int, cap: int = DEFAULT_CAP) -> Window:
    """All elements of word length at most ``radius``.

    Raises
    ------
    ResourceLimitError
        If the ball has more than ``cap`` elements (checked from the closed
        form before anything is enumerated).
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    size = model.ball_size(radius)
    if size > cap:
        raise ResourceLimitError(
            f"ball of radius {radius} in {model.name} has {size} elements (cap {cap})"
        )
    if model.kind == "lattice":
        elems = list(_lattice_ball(model.rank, radius))
    else:
        elems = [()]
        frontier = [()]
        letters = [s * i for i in range(1, model.rank + 1) for s in (1, -1)]
        for _ in range(radius):
            frontier = [w + (x,) for w in frontier for x in letters if not (w and w[-1] == -x)]
            elems.extend(frontier)
    return Window(model, tuple(sorted(elems, key=model.sort_key)))


def _lattice_ball(d: int, radius: int) -> Iterator[Element]:
    if d == 1:
        yield from ((x,) for x in range(-radius, radius + 1))
        return
    for x in range(-radius, radius + 1):
        for rest in _lattice_ball(d - 1, radius - abs(x)):
            yield (x,) + rest


def invert_window(w: Window) -> Window:
    model = w.model
    return Window(model, tuple(sorted((model.inverse(g) for g in w), key=model.sort_key)))


def multiply_windows(a: Window, b: Window, cap: int = DEFAULT_CAP) -> Window:
    """The set product ``{x*y : x in a, y in b}``."""
    if a.model != b.model:
        raise ValueError("windows belong to different groups")
    model = a.model
    return Window.from_elements(
        model, (model.multiply(x, y) for x, y in itertools.product(a, b)), cap=cap
    )


@dataclass(frozen=True)
class BallRule:
    """Window sequence ``i -> word_ball(model, offset + step * i)`` for ``i >= 1``.

    The same rule type is used for the metric windows F_i and for the
    dynamical windows Omega_i. Sizes come from the closed form, so long
    sequences never need to be enumerated.
    """

    model: GroupModel
    step: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.step < 1 or self.offset < 0:
            raise ValueError("ball rule needs step >= 1 and offset >= 0")

    def radius(self, i: int) -> int:
        if i < 1:
            raise ValueError("window indices start at 1")
        return self.offset + self.step * i

    def size(self, i: int) -> int:
        return self.model.ball_size(self.radius(i))

    def window(self, i: int, cap: int = DEFAULT_CAP) -> Window:
        return word_ball(self.model, self.radius(i), cap=cap)

    def first_index_containing(self, length: int) -> int:
        """Smallest ``i >= 1`` whose ball contains every element of word length ``length``."""
        return max(1, -(-(length - self.offset) // self.step))

    def product_size(self, i: int, other: "BallRule", k: int) -> int:
        """``|B_{R(i)}^{-1} B_{R'(k)}|`` without enumeration.

        Word balls are symmetric and ``B_s * B_t = B_{s+t}`` for any group with
        a symmetric generating set, so the product is again a ball.
        """
        if other.model != self.model:
            raise ValueError("rules belong to different groups")
        return self.model.ball_size(self.radius(i) + other.radius(k))
