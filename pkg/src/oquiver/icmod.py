"""
IC-modules over a computed module family: a finite-dimensional stalk per
vertex and, per incident ordered pair, a boundary map expressed in the
canonical Hom^1 basis (index k plus a stalk matrix), subject to the chain
complex axiom d^2 = 0 for the assembled total differential

    d = sum over pairs of  sum_k  A^k_{y,w} (x) B^k : (+)_w V_w (x) M_w.

Representations of the quiver with the same shape data are exactly the
same thing: the translation in either direction is the identity on data.
Verdier duality dualizes stalks and transposes boundary maps against the
self-duality of each V_w, with no extra signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import QMatrix, canonical_basis, format_rational, in_span, parse_rational, rank
from .quiver import Quiver
from .schubert import InternalConsistencyError
from .soergel import GradedModule, graded_hom_basis

QQ = Fraction


class ShapeError(ValueError):
    """Stalk or boundary data does not fit the quiver; message names the pair."""


class InvalidModule(ValueError):
    """Operation requires the chain complex axiom but d^2 != 0."""


class ICModule:
    """Stalk dimensions plus boundary terms (hom index, stalk matrix).

    Zero stalk matrices and empty pairs are normalized away, so equality of
    the stored data is meaningful.
    """

    __slots__ = ("stalks", "boundary")

    def __init__(
        self,
        stalks: dict[int, int],
        boundary: dict[tuple[int, int], list[tuple[int, QMatrix]]],
    ):
        self.stalks = {w: int(d) for w, d in stalks.items() if d}
        self.boundary = {}
        for pair, terms in boundary.items():
            kept = [(k, m) for k, m in terms if not m.is_zero()]
            kept.sort(key=lambda km: km[0])
            if kept:
                self.boundary[pair] = kept

    def stalk_dim(self, idx: int) -> int:
        return self.stalks.get(idx, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ICModule):
            return NotImplemented
        return self.stalks == other.stalks and self.boundary == other.boundary


@dataclass
class QuiverRep:
    """A representation of the free path algebra: no relations imposed."""

    vertex_dims: dict[int, int]
    arrow_maps: dict[tuple[int, int, int], QMatrix] = field(default_factory=dict)

    def dim(self, idx: int) -> int:
        return self.vertex_dims.get(idx, 0)


def _check_shapes(q: Quiver, m: ICModule) -> None:
    for (y, w), terms in m.boundary.items():
        narrows = len(q.hom1.get((y, w), ()))
        if narrows == 0:
            raise ShapeError(f"boundary on non-incident pair ({y}, {w})")
        for k, mat in terms:
            if not 0 <= k < narrows:
                raise ShapeError(f"hom index {k} out of range on pair ({y}, {w})")
            if mat.rows != m.stalk_dim(w) or mat.cols != m.stalk_dim(y):
                raise ShapeError(
                    f"stalk matrix on pair ({y}, {w}) is {mat.rows}x{mat.cols}, "
                    f"expected {m.stalk_dim(w)}x{m.stalk_dim(y)}"
                )


def _total_layout(q: Quiver, m: ICModule):
    """Basis offsets of (+)_w V_w (x) M_w, in canonical vertex order."""
    offsets: dict[int, int] = {}
    degrees: list[int] = []
    total = 0
    for w in q.group.elements:
        s = m.stalk_dim(w.idx)
        if not s:
            continue
        offsets[w.idx] = total
        module = q.family.modules[w.idx]
        for a in range(module.dim):
            degrees.extend([module.degrees[a]] * s)
        total += module.dim * s
    return offsets, degrees, total


def assemble_differential(q: Quiver, m: ICModule) -> tuple[QMatrix, list[int]]:
    """The total differential and the degree of each total-complex basis vector."""
    _check_shapes(q, m)
    offsets, degrees, total = _total_layout(q, m)
    grid = [[QQ(0)] * total for _ in range(total)]
    for (y, w), terms in m.boundary.items():
        if y not in offsets or w not in offsets:
            continue  # a zero-dimensional stalk carries no maps
        block = None
        for k, stalk_map in terms:
            piece = q.hom1[(y, w)][k].kron(stalk_map)
            block = piece if block is None else block + piece
        oy, ow = offsets[y], offsets[w]
        for r in range(block.rows):
            row = block.data[r]
            target = grid[ow + r]
            for c in range(block.cols):
                if row[c]:
                    target[oy + c] = row[c]
    return QMatrix(grid, cols=total), degrees


def validate(q: Quiver, m: ICModule) -> bool:
    """The chain complex axiom: the assembled differential squares to zero."""
    d, degrees = assemble_differential(q, m)
    for p, c, _ in d.nonzero_items():
        if degrees[p] != degrees[c] + 1:  # pragma: no cover - structural
            raise InternalConsistencyError("differential is not of degree 1")
    return (d * d).is_zero()


@dataclass
class TotalComplex:
    degrees: tuple[int, ...]
    differentials: dict[int, QMatrix]  # degree n -> map from piece n to piece n+1


def total_complex(q: Quiver, m: ICModule) -> TotalComplex:
    d, degrees = assemble_differential(q, m)
    by_degree: dict[int, list[int]] = {}
    for idx, deg in enumerate(degrees):
        by_degree.setdefault(deg, []).append(idx)
    diffs = {}
    for n, cols in sorted(by_degree.items()):
        rows = by_degree.get(n + 1, [])
        diffs[n] = QMatrix([[d.data[r][c] for c in cols] for r in rows], cols=len(cols))
    return TotalComplex(tuple(degrees), diffs)


def total_cohomology(q: Quiver, m: ICModule) -> dict[int, int]:
    """Exact graded dimensions of ker/im of the total complex."""
    if not validate(q, m):
        raise InvalidModule("total cohomology requires d^2 = 0")
    tc = total_complex(q, m)
    sizes: dict[int, int] = {}
    for deg in tc.degrees:
        sizes[deg] = sizes.get(deg, 0) + 1
    ranks = {n: rank(d) for n, d in tc.differentials.items()}
    out = {}
    for n in sorted(sizes):
        h = sizes[n] - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if h:
            out[n] = h
    return out


def euler_characteristic(dims: dict[int, int]) -> int:
    return sum((-1) ** (n % 2) * d for n, d in dims.items())


# -- the dictionary with quiver representations --------------------------------


def _check_rep(q: Quiver, rep: QuiverRep) -> None:
    for (y, w, k), mat in rep.arrow_maps.items():
        narrows = len(q.hom1.get((y, w), ()))
        if k >= narrows:
            raise ShapeError(f"no arrow #{k} from {y} to {w}")
        if mat.rows != rep.dim(w) or mat.cols != rep.dim(y):
            raise ShapeError(
                f"arrow map ({y}, {w}, {k}) is {mat.rows}x{mat.cols}, "
                f"expected {rep.dim(w)}x{rep.dim(y)}"
            )


def from_quiver_rep(q: Quiver, rep: QuiverRep) -> ICModule:
    """Vertex spaces become stalks, arrow maps become boundary terms."""
    _check_rep(q, rep)
    boundary: dict[tuple[int, int], list[tuple[int, QMatrix]]] = {}
    for (y, w, k), mat in rep.arrow_maps.items():
        boundary.setdefault((y, w), []).append((k, mat))
    return ICModule(dict(rep.vertex_dims), boundary)


def to_quiver_rep(q: Quiver, m: ICModule) -> QuiverRep:
    maps = {}
    for (y, w), terms in m.boundary.items():
        for k, mat in terms:
            maps[(y, w, k)] = mat
    return QuiverRep(dict(m.stalks), maps)


def rep_satisfies_relations(q: Quiver, rep: QuiverRep) -> bool:
    """Evaluate every relator on the representation; True iff all act by zero."""
    _check_rep(q, rep)

    def arrow_map(y: int, w: int, k: int) -> QMatrix | None:
        mat = rep.arrow_maps.get((y, w, k))
        if mat is not None and not mat.is_zero():
            return mat
        return None

    for (y, w), combos in q.relators().items():
        dy, dw = rep.dim(y), rep.dim(w)
        if dy == 0 or dw == 0:
            continue
        for combo in combos:
            acc = QMatrix.zeros(dw, dy)
            for (_, j, z, i, _), coeff in combo.terms.items():
                first = arrow_map(y, z, j)
                second = arrow_map(z, w, i)
                if first is None or second is None or rep.dim(z) == 0:
                    continue
                acc = acc + (second * first).scale(coeff)
            if not acc.is_zero():
                return False
    return True


# -- Verdier duality ------------------------------------------------------------


def _invert(mat: QMatrix) -> QMatrix:
    augmented = QMatrix(
        [list(row) + [QQ(1) if i == j else QQ(0) for j in range(mat.rows)]
         for i, row in enumerate(mat.data)],
        cols=mat.cols + mat.rows,
    )
    rows = canonical_basis(augmented.data, augmented.cols)
    if len(rows) != mat.rows:
        raise InternalConsistencyError("matrix is singular")
    return QMatrix([row[mat.cols:] for row in rows], cols=mat.rows)


def _dual_module(module: GradedModule) -> GradedModule:
    return GradedModule(
        module.dim,
        tuple(-d for d in module.degrees),
        [a.transpose() for a in module.action],
        provenance=f"dual({module.provenance})",
    )


def _duality_isos(q: Quiver) -> list[QMatrix]:
    """Degree-0 isomorphisms V_w -> V_w* realizing Poincare self-duality."""
    cached = getattr(q, "_duality_isos", None)
    if cached is not None:
        return cached
    ring = q.family.ring
    g = q.group
    classes = [(g.simple(i).idx, 1) for i in range(1, g.rootsystem.rank + 1)]
    isos = []
    for w in g.elements:
        module = q.family.modules[w.idx]
        maps = graded_hom_basis(module, _dual_module(module), 0, classes)
        if len(maps) != 1 or rank(maps[0]) != module.dim:
            raise InternalConsistencyError(  # pragma: no cover - internal self-check
                f"self-duality pairing of V[{w}] is not unique and invertible"
            )
        isos.append(maps[0])
    q._duality_isos = isos
    return isos


def verdier_dual(q: Quiver, m: ICModule) -> ICModule:
    """Dual stalks; boundary (y, w) is the graded transpose of boundary (w, y),
    re-expressed in the canonical Hom^1 bases.  No sign is introduced."""
    _check_shapes(q, m)
    isos = _duality_isos(q)
    boundary: dict[tuple[int, int], list[tuple[int, QMatrix]]] = {}
    for (w, y), terms in m.boundary.items():
        # the stored pair maps stalk w -> stalk y; the dual pair is (y, w)
        basis = q.hom1[(y, w)]
        mod_w = q.family.modules[w]
        mod_y = q.family.modules[y]
        positions = [
            (p, c)
            for p in range(mod_w.dim)
            for c in range(mod_y.dim)
            if mod_w.degrees[p] == mod_y.degrees[c] + 1
        ]
        basis_vecs = [[b.data[p][c] for (p, c) in positions] for b in basis]
        phi_w_inv = _invert(isos[w])
        dual_terms: dict[int, QMatrix] = {}
        for k, stalk_map in terms:
            transported = phi_w_inv * q.hom1[(w, y)][k].transpose() * isos[y]
            ok, coeffs = in_span(
                [transported.data[p][c] for (p, c) in positions], basis_vecs
            )
            if not ok:  # pragma: no cover - internal self-check
                raise InternalConsistencyError("transposed boundary left Hom^1")
            for idx, coeff in enumerate(coeffs):
                if coeff:
                    piece = stalk_map.transpose().scale(coeff)
                    if idx in dual_terms:
                        dual_terms[idx] = dual_terms[idx] + piece
                    else:
                        dual_terms[idx] = piece
        if dual_terms:
            boundary[(y, w)] = sorted(dual_terms.items())
    return ICModule(dict(m.stalks), boundary)


# -- document format ------------------------------------------------------------


def icmodule_to_doc(q: Quiver, m: ICModule) -> dict:
    g = q.group
    return {
        "system": {"type": g.rootsystem.type_label, "rank": g.rootsystem.rank},
        "stalks": {str(g.elements[w]): d for w, d in sorted(m.stalks.items())},
        "boundary": [
            {
                "from": str(g.elements[y]),
                "to": str(g.elements[w]),
                "k": k,
                "matrix": [[format_rational(x) for x in row] for row in mat.data],
            }
            for (y, w), terms in sorted(m.boundary.items())
            for k, mat in terms
        ],
    }


def icmodule_from_doc(q: Quiver, doc: dict) -> ICModule:
    g = q.group
    rs = g.rootsystem
    system = doc.get("system", {})
    if system and (system.get("type") != rs.type_label or system.get("rank") != rs.rank):
        raise ShapeError(
            f"document is for {system.get('type')}{system.get('rank')}, quiver is {rs.name}"
        )
    stalks = {g.parse(el).idx: int(d) for el, d in doc["stalks"].items()}
    boundary: dict[tuple[int, int], list[tuple[int, QMatrix]]] = {}
    for entry in doc.get("boundary", []):
        y = g.parse(entry["from"]).idx
        w = g.parse(entry["to"]).idx
        mat = QMatrix(
            [[parse_rational(x) for x in row] for row in entry["matrix"]],
            cols=stalks.get(y, 0),
        )
        boundary.setdefault((y, w), []).append((int(entry["k"]), mat))
    m = ICModule(stalks, boundary)
    _check_shapes(q, m)
    return m
