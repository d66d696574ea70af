"""
The cohomology ring of the full flag variety in the Schubert basis.

Everything is generated from Chevalley's rule for multiplying by a
degree-one class:

    sigma_{s_i} . sigma_w
        = sum over positive alpha with l(w s_alpha) = l(w) + 1
          of  c_i(alpha) (alpha_i, alpha_i)/(alpha, alpha) . sigma_{w s_alpha}

where c_i(alpha) is the alpha_i coordinate of alpha; the scalar is exactly
the pairing of the i-th fundamental coweight with alpha.  Products of two
arbitrary Schubert classes are forced by generator products: each degree-k
class is expressed as a rational combination of sigma_{s_i} . sigma_{u'}
with l(u') = k - 1 (a triangular solve over the degree-k block), and the
full multiplication table is then filled by iterated Chevalley steps.

Grading note: degrees here are l(w), i.e. half the cohomological degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import RowSpan, format_rational
from .rootsystem import WeylElement, WeylGroup

QQ = Fraction


class InternalConsistencyError(RuntimeError):
    """A mathematically impossible situation; indicates a bug, not bad input."""


class CohClass:
    """A vector in the Schubert basis, as a zero-free coefficient map."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[WeylElement, Fraction] | None = None):
        self.coeffs = {w: QQ(c) for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, w: WeylElement) -> "CohClass":
        return cls({w: QQ(1)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "CohClass") -> "CohClass":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, QQ(0)) + c
        return CohClass(out)

    def __sub__(self, other: "CohClass") -> "CohClass":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, QQ(0)) - c
        return CohClass(out)

    def scale(self, c: Fraction | int) -> "CohClass":
        c = QQ(c)
        return CohClass({w: c * v for w, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> set[WeylElement]:
        return set(self.coeffs)

    def coefficient(self, w: WeylElement) -> Fraction:
        return self.coeffs.get(w, QQ(0))

    def is_homogeneous(self) -> bool:
        degrees = {w.length for w in self.coeffs}
        return len(degrees) <= 1

    def __str__(self) -> str:
        return class_str(self)

    __repr__ = __str__


def class_str(c: CohClass) -> str:
    """Render like "σ[1.2] + 2 σ[2.1]"; the unit class prints as "1"."""
    if not c.coeffs:
        return "0"
    parts = []
    for w in sorted(c.coeffs, key=lambda w: w.idx):
        coeff = c.coeffs[w]
        term = "1" if w.length == 0 else f"σ[{w}]"
        if coeff == 1:
            parts.append(term)
        elif coeff == -1:
            parts.append(f"-{term}")
        else:
            parts.append(f"{format_rational(coeff)} {term}")
    return " + ".join(parts).replace("+ -", "- ")


class CohRing:
    """H*(G/B) with its full precomputed multiplication table.

    Also carries, per simple reflection, the invariant-subalgebra basis
    {sigma_w : w s_i > w} and the change-of-basis data realizing
    C = sigma_{s_i} C^{s_i} (+) C^{s_i}.
    """

    def __init__(self, group: WeylGroup, table: list[list["CohClass"]] | None = None):
        self.group = group
        self.rootsystem = group.rootsystem
        self._chevalley_data = self._prepare_chevalley()
        self._table: list[list[CohClass]] = []
        if table is not None:
            # restored from cache; the table is a unique mathematical object,
            # so trusting it cannot change any downstream result
            self._table = table
        else:
            self._build_table()
        self._invariant: list[list[WeylElement]] = []
        self._split_spans: list[RowSpan] = []
        self._prepare_split()

    # -- Chevalley rule ----------------------------------------------------

    def _prepare_chevalley(self):
        rs = self.rootsystem
        g = self.group
        data = []
        for alpha in rs.positive_roots:
            s_alpha = g.reflection(alpha)
            norm = rs.inner(alpha, alpha)
            coeffs = []
            for i in range(rs.rank):
                ei = tuple(1 if k == i else 0 for k in range(rs.rank))
                coeffs.append(alpha[i] * rs.inner(ei, ei) / norm)
            data.append((s_alpha, tuple(coeffs)))
        return data

    def chevalley_multiply(self, i: int, w: WeylElement) -> CohClass:
        """sigma_{s_i} . sigma_w straight from the Chevalley rule (i 1-based)."""
        g = self.group
        out: dict[WeylElement, Fraction] = {}
        for s_alpha, coeffs in self._chevalley_data:
            c = coeffs[i - 1]
            if not c:
                continue
            target = g.multiply(w, s_alpha)
            if target.length == w.length + 1:
                out[target] = out.get(target, QQ(0)) + c
        return CohClass(out)

    def chevalley_class(self, i: int, c: CohClass) -> CohClass:
        out = CohClass()
        for w, coeff in c.coeffs.items():
            out = out + self.chevalley_multiply(i, w).scale(coeff)
        return out

    # -- full multiplication table ------------------------------------------

    def _class_vector(self, c: CohClass) -> list[Fraction]:
        v = [QQ(0)] * len(self.group)
        for w, coeff in c.coeffs.items():
            v[w.idx] = coeff
        return v

    def _vector_class(self, v: Sequence[Fraction]) -> CohClass:
        return CohClass({self.group.elements[k]: c for k, c in enumerate(v) if c})

    def _build_table(self) -> None:
        g = self.group
        n = len(g)
        table = [[None] * n for _ in range(n)]
        for v in g.elements:
            table[0][v.idx] = CohClass.basis(v)  # unit row
        by_length: dict[int, list[WeylElement]] = {}
        for w in g.elements:
            by_length.setdefault(w.length, []).append(w)

        for k in range(1, g.longest.length + 1):
            # express each degree-k class through generator products
            sources: list[tuple[int, int]] = []  # (generator i, u'.idx)
            span = RowSpan(n, track=True)
            for u_prime in by_length[k - 1]:
                for i in range(1, self.rootsystem.rank + 1):
                    product = self.chevalley_multiply(i, u_prime)
                    sources.append((i, u_prime.idx))
                    span.add(self._class_vector(product))
            for u in by_length[k]:
                combo = span.coefficients(self._class_vector(CohClass.basis(u)))
                if combo is None:
                    raise InternalConsistencyError(
                        f"sigma_{u} not spanned by generator products in degree {k}"
                    )
                row = table[u.idx]
                for v in g.elements:
                    acc = CohClass()
                    for src, coeff in combo.items():
                        i, up_idx = sources[src]
                        acc = acc + self.chevalley_class(i, table[up_idx][v.idx]).scale(coeff)
                    row[v.idx] = acc
        self._table = table

    def multiply_basis(self, u: WeylElement, v: WeylElement) -> CohClass:
        return self._table[u.idx][v.idx]

    def multiply(self, a: CohClass, b: CohClass) -> CohClass:
        out = CohClass()
        for u, cu in a.coeffs.items():
            for v, cv in b.coeffs.items():
                out = out + self._table[u.idx][v.idx].scale(cu * cv)
        return out

    # -- invariants of a simple reflection and the splitting ---------------

    def _prepare_split(self) -> None:
        g = self.group
        n = len(g)
        for i in range(1, self.rootsystem.rank + 1):
            inv = [w for w in g.elements if g.right_mult(w, i).length > w.length]
            if 2 * len(inv) != n:  # pragma: no cover - internal self-check
                raise InternalConsistencyError("invariant basis is not half the group")
            span = RowSpan(n, track=True)
            si = g.simple(i)
            for w in inv:
                span.add(self._class_vector(CohClass.basis(w)))
            for w in inv:
                span.add(self._class_vector(self._table[si.idx][w.idx]))
            if span.rank != n:  # pragma: no cover - internal self-check
                raise InternalConsistencyError(
                    f"sigma_{i} C^s + C^s does not span C for i={i}"
                )
            self._invariant.append(inv)
            self._split_spans.append(span)

    def invariant_basis(self, i: int) -> list[WeylElement]:
        """{w : w s_i > w}, the Schubert support of C^{s_i} (i 1-based)."""
        return list(self._invariant[i - 1])

    def split(self, i: int, c: CohClass) -> tuple[CohClass, CohClass]:
        """Unique x, y with c = x + sigma_{s_i} y and x, y in C^{s_i}."""
        inv = self._invariant[i - 1]
        combo = self._split_spans[i - 1].coefficients(self._class_vector(c))
        if combo is None:  # pragma: no cover - internal self-check
            raise InternalConsistencyError("split solve failed on a full basis")
        m = len(inv)
        x: dict[WeylElement, Fraction] = {}
        y: dict[WeylElement, Fraction] = {}
        for src, coeff in combo.items():
            if src < m:
                x[inv[src]] = coeff
            else:
                y[inv[src - m]] = coeff
        return CohClass(x), CohClass(y)

    # -- presentation ----------------------------------------------------

    def generator_table(self) -> list[tuple[WeylElement, list[CohClass]]]:
        """Rows sigma_w, columns sigma_{s_1} ... sigma_{s_r}."""
        return [
            (w, [self._table[w.idx][self.group.simple(i).idx] for i in range(1, self.rootsystem.rank + 1)])
            for w in self.group.elements
        ]


def build_ring(group: WeylGroup) -> CohRing:
    return CohRing(group)
