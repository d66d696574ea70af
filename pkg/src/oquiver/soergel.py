"""
Graded modules over the Schubert-basis cohomology ring, and the inductive
construction of the intersection cohomology modules V_w = IH*(Xbar_w).

The building block is extension along a simple reflection,

    extend(i, M) = C (x)_{C^{s_i}} M,

with basis {1 (x) b, sigma_{s_i} (x) b} (interleaved per basis vector of M)
and degrees deg(1 (x) b) = deg b - 1, deg(sigma_i (x) b) = deg b + 1.  The
action of any sigma_u is computed by splitting sigma_u . a = x + sigma_i y
with x, y invariant under s_i, so that sigma_u . (a (x) m) =
1 (x) (x . m) + sigma_i (x) (y . m).

Iterating over a word gives the 2^l-dimensional tensor word module.  V_w is
then extracted from a word module for w (or, in shortcut mode, from
extend(i, V_{w s_i})): the copies of shorter V_y inside are located via
degree-0 commutant maps, and a homogeneous basis of the quotient is grown
from cyclic orbits of leftover basis vectors.

Degrees are symmetric around 0: V_w lives in [-l(w), l(w)] with parity
l(w) mod 2, and sigma_v shifts degree by +2 l(v).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import QMatrix, RowSpan, canonical_basis, nullspace_of_rows
from .rootsystem import WeylElement, WeylGroup
from .schubert import CohClass, CohRing, InternalConsistencyError

QQ = Fraction


class GradedModule:
    """A graded module over the cohomology ring, with one action matrix per
    Schubert class (all of them, so class actions never need re-expanding).
    """

    __slots__ = ("dim", "degrees", "action", "provenance")

    def __init__(self, dim: int, degrees: Sequence[int], action: Sequence[QMatrix], provenance: str = ""):
        self.dim = dim
        self.degrees = tuple(degrees)
        self.action = list(action)
        self.provenance = provenance

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def class_action(self, c: CohClass) -> QMatrix:
        out = QMatrix.zeros(self.dim, self.dim)
        for w, coeff in c.coeffs.items():
            out = out + self.action[w.idx].scale(coeff)
        return out


def trivial_module(ring: CohRing) -> GradedModule:
    """V_e: one dimension in degree 0; every sigma_v with v != e acts by 0."""
    n = len(ring.group)
    action = [QMatrix.zeros(1, 1) for _ in range(n)]
    action[0] = QMatrix.identity(1)
    return GradedModule(1, (0,), action, provenance="trivial")


def extend(ring: CohRing, i: int, module: GradedModule) -> GradedModule:
    """C tensored over the s_i-invariants with the given module (i 1-based)."""
    g = ring.group
    dim = 2 * module.dim
    degrees = []
    for d in module.degrees:
        degrees.extend((d - 1, d + 1))

    si = g.simple(i)
    action: list[QMatrix] = []
    for u in g.elements:
        x1, y1 = ring.split(i, CohClass.basis(u))
        x2, y2 = ring.split(i, ring.multiply_basis(u, si))
        x1m, y1m = module.class_action(x1), module.class_action(y1)
        x2m, y2m = module.class_action(x2), module.class_action(y2)
        rows = [[QQ(0)] * dim for _ in range(dim)]
        for m in range(module.dim):
            for j in range(module.dim):
                if x1m.data[m][j]:
                    rows[2 * m][2 * j] = x1m.data[m][j]
                if y1m.data[m][j]:
                    rows[2 * m + 1][2 * j] = y1m.data[m][j]
                if x2m.data[m][j]:
                    rows[2 * m][2 * j + 1] = x2m.data[m][j]
                if y2m.data[m][j]:
                    rows[2 * m + 1][2 * j + 1] = y2m.data[m][j]
        action.append(QMatrix(rows, cols=dim))
    return GradedModule(dim, degrees, action, provenance=f"extend({i}, {module.provenance})")


def word_module(ring: CohRing, word: Iterable[int]) -> GradedModule:
    """Iterated extension over a word (need not be reduced); dimension 2^l."""
    module = trivial_module(ring)
    for i in word:
        module = extend(ring, i, module)
    return module


def graded_hom_basis(
    source: GradedModule,
    target: GradedModule,
    degree: int,
    classes: Sequence[tuple[int, int]],
) -> list[QMatrix]:
    """Basis of degree-`degree` maps commuting with the given classes.

    `classes` lists (element index, length) pairs whose action matrices are
    imposed; ring generation in degree one means the simple reflections
    suffice, but callers may impose more as a cross-check.  The result is
    canonical: the RREF basis of the solution space over the matrix entries
    in the degree band, ordered row-major.
    """
    positions = [
        (p, q)
        for p in range(target.dim)
        for q in range(source.dim)
        if target.degrees[p] == source.degrees[q] + degree
    ]
    if not positions:
        return []
    nvars = len(positions)

    rows: list[list[Fraction]] = []
    for ci, length in classes:
        a_target = target.action[ci]
        a_source = source.action[ci]
        shift = 2 * length
        constraint: dict[tuple[int, int], dict[int, Fraction]] = {}
        for k, (m, q) in enumerate(positions):
            col = q
            for p in range(target.dim):
                a = a_target.data[p][m]
                if a:
                    cell = constraint.setdefault((p, col), {})
                    cell[k] = cell.get(k, QQ(0)) + a
        for k, (p, m) in enumerate(positions):
            row_s = a_source.data[m]
            for q in range(source.dim):
                a = row_s[q]
                if a:
                    cell = constraint.setdefault((p, q), {})
                    cell[k] = cell.get(k, QQ(0)) - a
        for key in sorted(constraint):
            p, q = key
            # sanity: constraints live in the degree + shift band
            assert target.degrees[p] == source.degrees[q] + degree + shift
            sparse = constraint[key]
            rows.append([sparse.get(k, QQ(0)) for k in range(nvars)])

    kernel = nullspace_of_rows(rows, nvars)
    out = []
    for vec in canonical_basis(kernel, nvars):
        grid = [[QQ(0)] * source.dim for _ in range(target.dim)]
        for k, value in enumerate(vec):
            if value:
                p, q = positions[k]
                grid[p][q] = value
        out.append(QMatrix(grid, cols=source.dim))
    return out


def _generator_classes(ring: CohRing) -> list[tuple[int, int]]:
    return [(ring.group.simple(i).idx, 1) for i in range(1, ring.rootsystem.rank + 1)]


def hom_degree0(ring: CohRing, source: GradedModule, target: GradedModule) -> list[QMatrix]:
    """Degree-0 maps commuting with the generator actions."""
    return graded_hom_basis(source, target, 0, _generator_classes(ring))


class CoverNotSeparable(InternalConsistencyError):
    """Degree-0 maps could not cleanly locate the lower summands of a cover.

    Covers built from a single extension decompose into unshifted lower
    modules, so this never fires in shortcut mode.  Full word modules of
    long elements, however, can contain grading-shifted copies of lower
    modules; degree-0 maps into those factor through positive-degree
    self-maps with kernels, which is exactly the dependence detected here.
    """


class ModuleFamily:
    """All V_w for one root system, keyed by element, built in length order."""

    def __init__(self, ring: CohRing, mode: str):
        self.ring = ring
        self.mode = mode
        self.modules: dict[int, GradedModule] = {}
        self.multiplicities: dict[int, dict[int, int]] = {}

    def __getitem__(self, w: WeylElement) -> GradedModule:
        return self.modules[w.idx]

    def __contains__(self, w: WeylElement) -> bool:
        return w.idx in self.modules

    @property
    def group(self) -> WeylGroup:
        return self.ring.group

    def graded_dims(self, w: WeylElement) -> dict[int, int]:
        return self.modules[w.idx].graded_dims()


def extract_top(
    ring: CohRing,
    module: GradedModule,
    built: dict[int, GradedModule],
    w: WeylElement,
) -> tuple[GradedModule, dict[int, int]]:
    """Peel the top summand V_w out of a module known to decompose as
    V_w plus copies of V_y for y < w.

    Returns the quotient module (basis grown from cyclic orbits, degrees
    inherited) together with the multiplicities n(y).
    """
    g = ring.group
    dim = module.dim

    # Step 1: locate the span of the lower summands via degree-0 maps.
    lower_vectors: list[tuple[Fraction, ...]] = []
    multiplicities: dict[int, int] = {}
    for y in g.elements:
        if y.length >= w.length or (y.length - w.length) % 2 != 0:
            continue
        if not g.bruhat_leq(y, w):
            continue
        maps = hom_degree0(ring, built[y.idx], module)
        if maps:
            multiplicities[y.idx] = len(maps)
            for f in maps:
                for q in range(built[y.idx].dim):
                    lower_vectors.append(f.col(q))

    span = RowSpan(dim)
    for v in lower_vectors:
        if not span.add(v):
            raise CoverNotSeparable(
                f"images of lower modules in the cover of {w} are dependent; "
                "the cover has grading-shifted lower summands (use a "
                "single-extension cover instead of the full word module)"
            )

    if not lower_vectors:
        # nothing to quotient by: the cover itself is V_w
        untouched = GradedModule(
            dim, module.degrees, module.action, provenance=f"{module.provenance} (identity)"
        )
        if len(hom_degree0(ring, untouched, untouched)) != 1:
            raise CoverNotSeparable(
                f"cover of {w} has no visible lower summands yet is decomposable"
            )
        return untouched, {}

    # Step 2: grow a complement basis from cyclic orbits of leftover vectors.
    chosen: list[tuple[Fraction, ...]] = []
    for x_idx in range(dim):
        if span.rank == dim:
            break
        unit = tuple(QQ(1) if k == x_idx else QQ(0) for k in range(dim))
        if span.contains(unit):
            continue
        for v in g.elements:
            vec = module.action[v.idx].col(x_idx)
            if any(vec) and span.add(vec):
                chosen.append(vec)
    if span.rank != dim:  # pragma: no cover - internal self-check
        raise InternalConsistencyError("orbit sweep failed to span the cover")

    # Step 3: action on the quotient, by solving against (chosen | lower).
    solver = RowSpan(dim, track=True)
    for vec in chosen + lower_vectors:
        if not solver.add(vec):  # pragma: no cover - internal self-check
            raise InternalConsistencyError("chosen + lower is not a basis")
    new_dim = len(chosen)

    degrees = []
    for vec in chosen:
        degs = {module.degrees[k] for k, value in enumerate(vec) if value}
        if len(degs) != 1:  # pragma: no cover - internal self-check
            raise InternalConsistencyError("chosen basis vector is not homogeneous")
        degrees.append(degs.pop())

    action = []
    for v in g.elements:
        mat = module.action[v.idx]
        rows = [[QQ(0)] * new_dim for _ in range(new_dim)]
        for j, cvec in enumerate(chosen):
            image = mat.matvec(cvec)
            combo = solver.coefficients(image)
            if combo is None:  # pragma: no cover - internal self-check
                raise InternalConsistencyError("image escaped the cover")
            for src, coeff in combo.items():
                if src < new_dim:
                    rows[src][j] = coeff
        action.append(QMatrix(rows, cols=new_dim))

    quotient = GradedModule(
        new_dim, degrees, action, provenance=f"{module.provenance} / lower terms"
    )
    if len(hom_degree0(ring, quotient, quotient)) != 1:
        raise CoverNotSeparable(
            f"extracted module for {w} is decomposable; the cover hid "
            "grading-shifted lower summands from the degree-0 solves"
        )
    return quotient, multiplicities


def build_all(ring: CohRing, shortcut: bool = True) -> ModuleFamily:
    """V_w for every w, ascending length.

    Shortcut mode covers V_w by extend(i, V_{w s_i}) with i the last letter
    of the canonical reduced word; full mode uses the whole 2^l word module
    and serves as a consistency oracle.
    """
    g = ring.group
    family = ModuleFamily(ring, mode="shortcut" if shortcut else "full")
    family.modules[0] = trivial_module(ring)
    family.multiplicities[0] = {}
    for w in g.elements[1:]:
        if shortcut:
            i = w.word[-1]
            parent = g.right_mult(w, i)
            cover = extend(ring, i, family.modules[parent.idx])
        else:
            cover = word_module(ring, w.word)
        module, mults = extract_top(ring, cover, family.modules, w)
        module.provenance = f"V[{w}] from {module.provenance}"
        family.modules[w.idx] = module
        family.multiplicities[w.idx] = mults
    return family
