"""
Root systems and Weyl groups: Cartan data, positive roots, exact inner
products, BFS generation, lengths, Bruhat order and reduced words.

Conventions.  Roots live in simple-root coordinates.  The Cartan matrix is
``cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``, so the simple
reflection acts by ``s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i``.  The
symmetrizer ``d_i = (alpha_i, alpha_i) / 2`` makes ``d_i * cartan[i][j]``
the exact inner product ``(alpha_i, alpha_j)``.

Group elements are canonically represented by their integer action matrix
on simple-root coordinates (column j = image of alpha_j); reduced words are
derived data, not the identity of an element.  Generator indices are
1-based throughout the public surface, matching the usual s_1 ... s_r.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

QQ = Fraction

ActionMatrix = tuple[tuple[int, ...], ...]
RootVec = tuple[int, ...]


class InvalidRootSystem(ValueError):
    """Unknown or unsupported (type, rank) combination."""


class GroupTooLarge(ValueError):
    """Weyl group order exceeds the supported desk-scale bound."""


class MixedGroups(ValueError):
    """Operands belong to different Weyl groups."""


#: hard bound on |W|; keeps E-series monsters out without hardcoding types
MAX_GROUP_ORDER = 50000

_FACT = [1]
for _n in range(1, 13):
    _FACT.append(_FACT[-1] * _n)


def weyl_order(label: str, rank: int) -> int:
    """|W| from the classical order formulas, per type."""
    if label == "A":
        return _FACT[rank + 1] if rank + 1 < len(_FACT) else reduce(int.__mul__, range(1, rank + 2))
    if label in ("B", "C"):
        return 2**rank * reduce(int.__mul__, range(1, rank + 1))
    if label == "D":
        return 2 ** (rank - 1) * reduce(int.__mul__, range(1, rank + 1))
    if label == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if label == "F":
        return 1152
    if label == "G":
        return 12
    raise InvalidRootSystem(label)


def _chain_edges(rank: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(rank - 1)]


def _cartan_and_symmetrizer(label: str, rank: int) -> tuple[list[list[int]], list[Fraction]]:
    """Cartan matrix and d_i for the simple types (Bourbaki numbering)."""
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if label == "A":
        if n < 1:
            raise InvalidRootSystem("A_n needs n >= 1")
        for i, j in _chain_edges(n):
            bond(i, j)
        d = [QQ(1)] * n
    elif label == "B":
        if n < 2:
            raise InvalidRootSystem("B_n needs n >= 2")
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 2, n - 1, -1, -2)  # alpha_n short
        d = [QQ(1)] * (n - 1) + [QQ(1, 2)]
    elif label == "C":
        if n < 3:
            raise InvalidRootSystem("C_n needs n >= 3")
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 2, n - 1, -2, -1)  # alpha_n long
        d = [QQ(1)] * (n - 1) + [QQ(2)]
    elif label == "D":
        if n < 4:
            raise InvalidRootSystem("D_n needs n >= 4")
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 3, n - 1)  # fork
        d = [QQ(1)] * n
    elif label == "E":
        if n not in (6, 7, 8):
            raise InvalidRootSystem("E_n needs n in {6, 7, 8}")
        edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
        for i, j in edges:
            if i < n and j < n:
                bond(i, j)
        d = [QQ(1)] * n
    elif label == "F":
        if n != 4:
            raise InvalidRootSystem("F_n needs n = 4")
        bond(0, 1)
        bond(1, 2, -1, -2)  # alpha_3, alpha_4 short
        bond(2, 3)
        d = [QQ(1), QQ(1), QQ(1, 2), QQ(1, 2)]
    elif label == "G":
        if n != 2:
            raise InvalidRootSystem("G_n needs n = 2")
        bond(0, 1, -3, -1)  # alpha_1 short, alpha_2 long
        d = [QQ(1), QQ(3)]
    else:
        raise InvalidRootSystem(f"unknown type label {label!r}")
    return a, d


class RootSystem:
    """Cartan data plus the positive roots, with exact inner products."""

    __slots__ = ("type_label", "rank", "cartan", "symmetrizer", "positive_roots", "_root_index")

    def __init__(self, type_label: str, rank: int, cartan, symmetrizer, positive_roots):
        self.type_label = type_label
        self.rank = rank
        self.cartan: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in cartan)
        self.symmetrizer: tuple[Fraction, ...] = tuple(symmetrizer)
        self.positive_roots: tuple[RootVec, ...] = tuple(tuple(v) for v in positive_roots)
        self._root_index = {v: k for k, v in enumerate(self.positive_roots)}

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def inner(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        """Exact inner product of two vectors in simple-root coordinates."""
        total = QQ(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            di = self.symmetrizer[i]
            row = self.cartan[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * vj * di * row[j]
        return total

    def coroot_pairing(self, i: int, v: Sequence[int]) -> int:
        """<alpha_i–check, v> = 2 (alpha_i, v) / (alpha_i, alpha_i), 0-based i."""
        return sum(self.cartan[i][j] * vj for j, vj in enumerate(v) if vj)

    def simple_reflection_matrix(self, i: int) -> ActionMatrix:
        """Action of s_i (0-based) on simple-root coordinates."""
        n = self.rank
        rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for c in range(n):
            rows[i][c] -= self.cartan[i][c]
        return tuple(tuple(r) for r in rows)

    def reflection_matrix(self, root: Sequence[int]) -> ActionMatrix:
        """Action of s_alpha for any root alpha (not necessarily simple)."""
        root = tuple(root)
        if root not in self._root_index:
            raise InvalidRootSystem(f"{root} is not a positive root of {self.name}")
        norm = self.inner(root, root)
        n = self.rank
        cols = []
        for j in range(n):
            ej = tuple(1 if k == j else 0 for k in range(n))
            c = 2 * self.inner(root, ej) / norm
            if c.denominator != 1:
                raise InvalidRootSystem("non-integral coroot pairing")  # pragma: no cover
            cols.append([(1 if k == j else 0) - c.numerator * root[k] for k in range(n)])
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def is_positive(self, v: Sequence[int]) -> bool:
        return all(x >= 0 for x in v) and any(x > 0 for x in v)


def _positive_root_closure(cartan: Sequence[Sequence[int]]) -> list[RootVec]:
    """All positive roots by reflection closure from the simple roots."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * v[j] for j in range(n))
                w = tuple(v[k] - (pairing if k == i else 0) for k in range(n))
                if all(x >= 0 for x in w) and w not in roots:
                    roots.add(w)
                    new.append(w)
        frontier = new
    return sorted(roots, key=lambda v: (sum(v), v))


def parse_type(text: str) -> tuple[str, int]:
    """Parse "A2", "b2", "G 2" into (label, rank)."""
    t = text.strip().replace(" ", "").replace("_", "").upper()
    if len(t) < 2 or t[0] not in "ABCDEFG" or not t[1:].isdigit():
        raise InvalidRootSystem(f"cannot parse root system type {text!r}")
    return t[0], int(t[1:])


def build(type_label: str, rank: int | None = None) -> RootSystem:
    """Validated root system for a simple type, e.g. build("A", 2) or build("A2")."""
    if rank is None:
        type_label, rank = parse_type(type_label)
    label = type_label.strip().upper()
    cartan, d = _cartan_and_symmetrizer(label, rank)
    roots = _positive_root_closure(cartan)
    return RootSystem(label, rank, cartan, d, roots)


class WeylElement:
    """A Weyl group element: integer action matrix, cached length and word.

    `word` is the lexicographically least reduced word, as 1-based generator
    indices.  Elements are interned by their group; equality checks the
    action matrix and refuses cross-group comparisons.
    """

    __slots__ = ("group", "action", "length", "word", "idx", "_hash")

    def __init__(self, group: "WeylGroup", action: ActionMatrix, length: int, word: tuple[int, ...], idx: int):
        self.group = group
        self.action = action
        self.length = length
        self.word = word
        self.idx = idx
        self._hash = hash(action)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, WeylElement):
            return NotImplemented
        if self.group is not other.group:
            raise MixedGroups("elements of different root systems")
        return self.action == other.action

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def __str__(self) -> str:
        return element_str(self)

    def __repr__(self) -> str:
        return f"<{self.group.rootsystem.name} {element_str(self)}>"


def element_str(w: WeylElement) -> str:
    """Dot-separated generator indices, identity rendered as "e"."""
    return ".".join(str(i) for i in w.word) if w.word else "e"


class WeylGroup:
    """A finite Weyl group, generated once and then immutable.

    Elements sit in canonical order: by length, then by lexicographically
    least reduced word.  All multiplication goes through precomputed index
    tables, so group operations never touch matrices after generation.
    """

    def __init__(self, rootsystem: RootSystem):
        self.rootsystem = rootsystem
        order = weyl_order(rootsystem.type_label, rootsystem.rank)
        if order > MAX_GROUP_ORDER:
            raise GroupTooLarge(
                f"|W({rootsystem.name})| = {order} exceeds the supported bound {MAX_GROUP_ORDER}"
            )
        self._generate()
        if len(self.elements) != order:
            raise InvalidRootSystem(  # pragma: no cover - internal self-check
                f"BFS closure produced {len(self.elements)} elements, expected {order}"
            )
        self._bruhat_memo: dict[tuple[int, int], bool] = {}

    # -- generation -------------------------------------------------------

    def _generate(self) -> None:
        rs = self.rootsystem
        n = rs.rank
        gens = [rs.simple_reflection_matrix(i) for i in range(n)]
        identity = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))

        def matmul(a: ActionMatrix, b: ActionMatrix) -> ActionMatrix:
            return tuple(
                tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
                for r in range(n)
            )

        # BFS by length layers, right multiplication.
        layer_of: dict[ActionMatrix, int] = {identity: 0}
        layers: list[list[ActionMatrix]] = [[identity]]
        while layers[-1]:
            nxt = []
            for m in layers[-1]:
                for i in range(n):
                    # right ascent: w(alpha_i) > 0, i.e. column i nonnegative
                    if all(m[r][i] >= 0 for r in range(n)):
                        prod = matmul(m, gens[i])
                        if prod not in layer_of:
                            layer_of[prod] = len(layers)
                            nxt.append(prod)
            layers.append(nxt)
        layers.pop()

        # Lex-least reduced words by greedy smallest left descent.
        words: dict[ActionMatrix, tuple[int, ...]] = {identity: ()}
        for length in range(1, len(layers)):
            for m in layers[length]:
                for i in range(n):
                    prev = matmul(gens[i], m)
                    if layer_of[prev] == length - 1:
                        words[m] = (i + 1,) + words[prev]
                        break

        ordered = sorted(layer_of, key=lambda m: (layer_of[m], words[m]))
        self.elements: list[WeylElement] = [
            WeylElement(self, m, layer_of[m], words[m], k) for k, m in enumerate(ordered)
        ]
        self.index: dict[ActionMatrix, int] = {m: k for k, m in enumerate(ordered)}
        self.generators: list[WeylElement] = [
            self.elements[self.index[g]] for g in gens
        ]

        self._right: list[list[int]] = [
            [self.index[matmul(w.action, gens[i])] for i in range(n)] for w in self.elements
        ]
        self._left: list[list[int]] = [
            [self.index[matmul(gens[i], w.action)] for i in range(n)] for w in self.elements
        ]
        inv = []
        for w in self.elements:
            k = 0
            for i in reversed(w.word):
                k = self._right[k][i - 1]
            inv.append(k)
        self._inverse = inv

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def simple(self, i: int) -> WeylElement:
        """Generator s_i, 1-based."""
        return self.generators[i - 1]

    def _own(self, w: WeylElement) -> WeylElement:
        if w.group is not self:
            raise MixedGroups("element from a different Weyl group")
        return w

    def right_mult(self, w: WeylElement, i: int) -> WeylElement:
        return self.elements[self._right[self._own(w).idx][i - 1]]

    def left_mult(self, i: int, w: WeylElement) -> WeylElement:
        return self.elements[self._left[self._own(w).idx][i - 1]]

    def multiply(self, w1: WeylElement, w2: WeylElement) -> WeylElement:
        self._own(w1)
        self._own(w2)
        k = w1.idx
        for i in w2.word:
            k = self._right[k][i - 1]
        return self.elements[k]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.elements[self._inverse[self._own(w).idx]]

    def evaluate(self, word: Iterable[int]) -> WeylElement:
        """Product s_{i1} ... s_{il} of a (not necessarily reduced) word."""
        k = 0
        for i in word:
            if not 1 <= i <= self.rootsystem.rank:
                raise InvalidRootSystem(f"generator index {i} out of range")
            k = self._right[k][i - 1]
        return self.elements[k]

    def parse(self, text: str) -> WeylElement:
        """Accepts "e" or dot-separated generator indices like "1.2.1"."""
        t = text.strip()
        if t in ("e", ""):
            return self.identity
        try:
            word = [int(p) for p in t.split(".")]
        except ValueError:
            raise InvalidRootSystem(f"cannot parse element {text!r}") from None
        return self.evaluate(word)

    def right_descents(self, w: WeylElement) -> list[int]:
        widx = self._own(w).idx
        return [
            i
            for i in range(1, self.rootsystem.rank + 1)
            if self.elements[self._right[widx][i - 1]].length < w.length
        ]

    def left_descents(self, w: WeylElement) -> list[int]:
        widx = self._own(w).idx
        return [
            i
            for i in range(1, self.rootsystem.rank + 1)
            if self.elements[self._left[widx][i - 1]].length < w.length
        ]

    def reflection(self, root: Sequence[int]) -> WeylElement:
        """The reflection s_alpha for a positive root alpha."""
        m = self.rootsystem.reflection_matrix(root)
        return self.elements[self.index[m]]

    def bruhat_leq(self, y: WeylElement, w: WeylElement) -> bool:
        """Bruhat order via the descent-lifting recursion."""
        self._own(y)
        self._own(w)

        def go(yi: int, wi: int) -> bool:
            if yi == wi:
                return True
            ye, we = self.elements[yi], self.elements[wi]
            if ye.length >= we.length:
                return False
            key = (yi, wi)
            cached = self._bruhat_memo.get(key)
            if cached is not None:
                return cached
            s = we.word[0]  # a left descent of w
            swi = self._left[wi][s - 1]
            syi = self._left[yi][s - 1]
            if self.elements[syi].length < ye.length:
                result = go(syi, swi)
            else:
                result = go(yi, swi)
            self._bruhat_memo[key] = result
            return result

        return go(y.idx, w.idx)

    def bruhat_interval(self, w: WeylElement) -> list[WeylElement]:
        return [y for y in self.elements if self.bruhat_leq(y, w)]


def generate_weyl(rs: RootSystem) -> WeylGroup:
    """Generate the full Weyl group of a root system (BFS closure)."""
    return WeylGroup(rs)
