"""
The quiver with quadratic relations underlying the regular block.

Vertices are the Weyl group elements, with dim Hom^1(V_y, V_w) arrows from
y to w bound to the canonical hom-basis matrices A^k_{y,w}.  Writing

    dtilde = sum over (y, w, k) of  a^k_{y,w} A^k_{y,w}

as a matrix over the free path algebra, every linear relation between
length-2 paths is a matrix entry of dtilde^2: the (p, q) entry of the
(w, y) block is the combination

    sum over (z, i, j) of  (A^i_{z,w} A^j_{y,z})[p, q] . path(y, j, z, i, w).

Stacking those rows over the path coordinates of one ordered pair and
taking the RREF row basis gives the canonical relator basis of that pair.
Relator spaces are only ever compared as subspaces: arrow rescaling moves
individual coefficients but not spans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import QMatrix, RowSpan, canonical_basis, format_rational
from .rootsystem import WeylElement
from .homspace import hom_basis
from .soergel import ModuleFamily

QQ = Fraction

# (y, j, z, i, w): first the j-th arrow y -> z, then the i-th arrow z -> w
PathKey = tuple[int, int, int, int, int]


class MalformedPath(ValueError):
    """A path reference names a missing vertex or arrow, or endpoints clash."""


@dataclass(frozen=True)
class Arrow:
    source: WeylElement
    target: WeylElement
    index: int
    matrix: QMatrix


class PathCombo:
    """A rational combination of length-2 paths sharing one (source, target)."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: int, target: int, terms: dict[PathKey, Fraction]):
        self.source = source
        self.target = target
        self.terms = {k: QQ(c) for k, c in terms.items() if c}
        for y, _, _, _, w in self.terms:
            if y != source or w != target:
                raise MalformedPath("path endpoints do not match the combination")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathCombo):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __repr__(self) -> str:
        return f"PathCombo({self.source}->{self.target}, {self.terms})"


class Quiver:
    """Arrows plus (lazily computed) per-pair relator bases."""

    def __init__(self, family: ModuleFamily):
        self.family = family
        self.group = family.group
        self.hom1: dict[tuple[int, int], tuple[QMatrix, ...]] = {}
        self.arrows: list[Arrow] = []
        g = self.group
        for y in g.elements:
            for w in g.elements:
                basis = hom_basis(family, y, w, 1).basis
                if basis:
                    self.hom1[(y.idx, w.idx)] = basis
                    for k, m in enumerate(basis):
                        self.arrows.append(Arrow(y, w, k, m))
        self._relators: dict[tuple[int, int], list[PathCombo]] | None = None

    # -- structure queries --------------------------------------------------

    def arrow_count(self, y: WeylElement, w: WeylElement) -> int:
        return len(self.hom1.get((y.idx, w.idx), ()))

    def paths(self, y_idx: int, w_idx: int) -> list[PathKey]:
        """Length-2 paths y -> z -> w, ordered by (z, j, i) canonically."""
        out: list[PathKey] = []
        for z in self.group.elements:
            first = self.hom1.get((y_idx, z.idx))
            second = self.hom1.get((z.idx, w_idx))
            if first and second:
                for j in range(len(first)):
                    for i in range(len(second)):
                        out.append((y_idx, j, z.idx, i, w_idx))
        return out

    # -- relators ------------------------------------------------------------

    def relators(self) -> dict[tuple[int, int], list[PathCombo]]:
        if self._relators is not None:
            return self._relators
        out: dict[tuple[int, int], list[PathCombo]] = {}
        g = self.group
        for y in g.elements:
            for w in g.elements:
                pair = (y.idx, w.idx)
                keys = self.paths(*pair)
                if not keys:
                    continue
                products = []
                for (_, j, z_idx, i, _) in keys:
                    products.append(
                        self.hom1[(z_idx, w.idx)][i] * self.hom1[(y.idx, z_idx)][j]
                    )
                dim_w = self.family[w].dim
                dim_y = self.family[y].dim
                rows = []
                for p in range(dim_w):
                    for q in range(dim_y):
                        row = [m.data[p][q] for m in products]
                        if any(row):
                            rows.append(row)
                basis_rows = canonical_basis(rows, len(keys))
                out[pair] = [
                    PathCombo(y.idx, w.idx, {k: c for k, c in zip(keys, vec) if c})
                    for vec in basis_rows
                ]
        self._relators = out
        return out

    def relator_dim(self) -> int:
        return sum(len(v) for v in self.relators().values())

    def quadratic_dims(self) -> dict:
        """Per ordered pair: (#length-2 paths, dim R, quotient dim), plus totals."""
        per_pair = {}
        totals = [0, 0, 0]
        rel = self.relators()
        g = self.group
        for y in g.elements:
            for w in g.elements:
                pair = (y.idx, w.idx)
                npaths = len(self.paths(*pair))
                nrel = len(rel.get(pair, []))
                if npaths or nrel:
                    per_pair[pair] = (npaths, nrel, npaths - nrel)
                    totals[0] += npaths
                    totals[1] += nrel
                    totals[2] += npaths - nrel
        return {"pairs": per_pair, "totals": tuple(totals)}

    def verify_relator_space(self, candidate: Sequence[PathCombo]) -> bool:
        """Subspace equality of the candidate with the computed relators.

        Grouped per ordered pair; list order, scaling and basis choice are
        irrelevant.  Raises MalformedPath on references to missing arrows.
        """
        grouped: dict[tuple[int, int], list[PathCombo]] = {}
        for combo in candidate:
            self._check_paths(combo)
            grouped.setdefault((combo.source, combo.target), []).append(combo)
        computed = self.relators()
        pairs = set(grouped) | {k for k, v in computed.items() if v}
        for pair in pairs:
            keys = self.paths(*pair)
            key_index = {k: n for n, k in enumerate(keys)}
            mine = [
                [combo.terms.get(k, QQ(0)) for k in keys]
                for combo in computed.get(pair, [])
            ]
            theirs = []
            for combo in grouped.get(pair, []):
                theirs.append([combo.terms.get(k, QQ(0)) for k in keys])
            if canonical_basis(mine, len(keys)) != canonical_basis(theirs, len(keys)):
                return False
        return True

    def _check_paths(self, combo: PathCombo) -> None:
        n = len(self.group)
        for (y, j, z, i, w) in combo.terms:
            if not (0 <= y < n and 0 <= z < n and 0 <= w < n):
                raise MalformedPath(f"vertex out of range in path {(y, j, z, i, w)}")
            if j >= len(self.hom1.get((y, z), ())):
                raise MalformedPath(f"no arrow #{j} from {y} to {z}")
            if i >= len(self.hom1.get((z, w), ())):
                raise MalformedPath(f"no arrow #{i} from {z} to {w}")

    def pm_one_report(self) -> dict:
        """Whether the canonical relator basis has all coefficients in {0, +-1}.

        Purely observational; nothing downstream depends on the outcome.
        """
        offending = []
        for pair, combos in self.relators().items():
            for combo in combos:
                for key, c in combo.terms.items():
                    if c not in (1, -1):
                        offending.append((pair, key, c))
        return {
            "system": self.group.rootsystem.name,
            "all_pm_one": not offending,
            "offending": offending,
        }

    def relator_span_contains_all_products(self) -> bool:
        """Regression check: every entry of dtilde^2 reduces to 0 mod relators."""
        rel = self.relators()
        g = self.group
        for y in g.elements:
            for w in g.elements:
                pair = (y.idx, w.idx)
                keys = self.paths(*pair)
                if not keys:
                    continue
                span = RowSpan(len(keys))
                for combo in rel.get(pair, []):
                    span.add([combo.terms.get(k, QQ(0)) for k in keys])
                products = [
                    self.hom1[(z_idx, w.idx)][i] * self.hom1[(y.idx, z_idx)][j]
                    for (_, j, z_idx, i, _) in keys
                ]
                for p in range(self.family[w].dim):
                    for q in range(self.family[y].dim):
                        row = [m.data[p][q] for m in products]
                        if any(row) and not span.contains(row):
                            return False
        return True


def build_quiver(family: ModuleFamily) -> Quiver:
    return Quiver(family)


# -- vertex numbering and rendering ------------------------------------------

#: the classical numbering of the A2 quiver (longest element first)
_A2_APPENDIX_IDS = {"1.2.1": 1, "1.2": 2, "2.1": 3, "1": 4, "2": 5, "e": 6}


def vertex_ids(q: Quiver, appendix_numbering: bool = False) -> list[int]:
    """Vertex id per canonical element index (1-based by default)."""
    g = q.group
    if not appendix_numbering:
        return [w.idx + 1 for w in g.elements]
    if g.rootsystem.name != "A2":
        raise ValueError("appendix numbering is only defined for A2")
    return [_A2_APPENDIX_IDS[str(w)] for w in g.elements]


def _token(ids: Sequence[int], *vs: int) -> str:
    parts = [str(ids[v]) for v in vs]
    if all(ids[v] <= 9 for v in vs):
        return "(" + "".join(parts) + ")"
    return "(" + ".".join(parts) + ")"


def arrow_token(ids: Sequence[int], arrow: Arrow) -> str:
    t = _token(ids, arrow.source.idx, arrow.target.idx)
    return t if arrow.index == 0 else f"{t[:-1]}#{arrow.index})"


def path_token(ids: Sequence[int], key: PathKey) -> str:
    y, j, z, i, w = key
    t = _token(ids, y, z, w)
    return t if i == 0 and j == 0 else f"{t[:-1]}#{j}.{i})"


def combo_str(ids: Sequence[int], combo: PathCombo) -> str:
    parts: list[str] = []
    for key, c in combo.terms.items():
        token = path_token(ids, key)
        if not parts:
            if c == 1:
                parts.append(token)
            elif c == -1:
                parts.append(f"-{token}")
            else:
                parts.append(f"{format_rational(c)} {token}")
        else:
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            term = token if mag == 1 else f"{format_rational(mag)} {token}"
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def to_json_doc(q: Quiver, appendix_numbering: bool = False) -> dict:
    """The machine-readable export; re-ingestable by :func:`parse_relations`."""
    g = q.group
    ids = vertex_ids(q, appendix_numbering)
    doc = {
        "system": {"type": g.rootsystem.type_label, "rank": g.rootsystem.rank},
        "vertices": [
            {"id": ids[w.idx], "word": str(w), "length": w.length} for w in g.elements
        ],
        "arrows": [
            {"from": ids[a.source.idx], "to": ids[a.target.idx], "index": a.index}
            for a in q.arrows
        ],
        "relations": [],
    }
    for (y_idx, w_idx), combos in q.relators().items():
        for combo in combos:
            doc["relations"].append(
                {
                    "source": ids[y_idx],
                    "target": ids[w_idx],
                    "terms": [
                        {
                            "path": [ids[y], j, ids[z], i, ids[w]],
                            "coeff": format_rational(c),
                        }
                        for (y, j, z, i, w), c in combo.terms.items()
                    ],
                }
            )
    return doc


def parse_relations(q: Quiver, doc: dict) -> list[PathCombo]:
    """Rebuild PathCombos from an exported document (ids resolved via vertices)."""
    by_id: dict[int, int] = {}
    for v in doc["vertices"]:
        by_id[v["id"]] = q.group.parse(v["word"]).idx
    combos = []
    for rel in doc["relations"]:
        terms: dict[PathKey, Fraction] = {}
        for term in rel["terms"]:
            y, j, z, i, w = term["path"]
            key = (by_id[y], j, by_id[z], i, by_id[w])
            terms[key] = Fraction(term["coeff"])
        combos.append(PathCombo(by_id[rel["source"]], by_id[rel["target"]], terms))
    return combos


def to_dot(q: Quiver, appendix_numbering: bool = False) -> str:
    g = q.group
    ids = vertex_ids(q, appendix_numbering)
    lines = [f'digraph "{g.rootsystem.name}" {{']
    for w in g.elements:
        lines.append(f'  v{ids[w.idx]} [label="{ids[w.idx]}: {w}"];')
    for a in q.arrows:
        label = f' [label="{a.index}"]' if a.index else ""
        lines.append(f"  v{ids[a.source.idx]} -> v{ids[a.target.idx]}{label};")
    lines.append("  // relations")
    for combos in q.relators().values():
        for combo in combos:
            lines.append(f"  // {combo_str(ids, combo)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(q: Quiver, appendix_numbering: bool = False) -> str:
    g = q.group
    ids = vertex_ids(q, appendix_numbering)
    nrel = q.relator_dim()
    lines = [
        f"quiver {g.rootsystem.name}: {len(g)} vertices, {len(q.arrows)} arrows, {nrel} relators"
    ]
    lines.append("vertices:")
    for w in g.elements:
        lines.append(f"  {ids[w.idx]} = {w}  (length {w.length})")
    lines.append("arrows:")
    lines.append("  " + " ".join(arrow_token(ids, a) for a in q.arrows))
    lines.append(f"relators ({nrel}):")
    for combos in q.relators().values():
        for combo in combos:
            lines.append(f"  {combo_str(ids, combo)}")
    verdict = "yes" if q.pm_one_report()["all_pm_one"] else "no"
    lines.append(f"all relator coefficients in {{0, +1, -1}}: {verdict}")
    return "\n".join(lines) + "\n"
