"""
Graded Hom spaces between the intersection cohomology modules.

Hom^d(V_y, V_w) is the space of degree-d linear maps commuting with the
ring action; commuting with the degree-one generators is enough since they
generate, and imposing every class instead is available as a cross-check.
The canonical basis (RREF over the degree-band matrix entries, row-major)
is the declared arrow basis of the quiver: any other basis differs from it
by an invertible linear substitution, so nothing downstream depends on the
choice beyond determinism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import QMatrix
from .rootsystem import WeylElement
from .soergel import ModuleFamily, graded_hom_basis

__all__ = ["HomBasis", "hom_basis", "arrow_count"]


@dataclass(frozen=True)
class HomBasis:
    source: WeylElement
    target: WeylElement
    degree: int
    basis: tuple[QMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_basis(
    family: ModuleFamily,
    y: WeylElement,
    w: WeylElement,
    degree: int,
    all_classes: bool = False,
) -> HomBasis:
    """Canonical basis of Hom^degree(V_y, V_w).

    With all_classes=True the commutant constraints are imposed for every
    Schubert class rather than just the generators; the nullspace must not
    change (generation in degree one), so this is purely a debug check.
    """
    ring = family.ring
    g = ring.group
    if all_classes:
        classes = [(v.idx, v.length) for v in g.elements if v.length > 0]
    else:
        classes = [(g.simple(i).idx, 1) for i in range(1, g.rootsystem.rank + 1)]
    maps = graded_hom_basis(family[y], family[w], degree, classes)
    return HomBasis(y, w, degree, tuple(maps))


def arrow_count(family: ModuleFamily, y: WeylElement, w: WeylElement) -> int:
    """Number of quiver arrows y -> w, i.e. dim Hom^1(V_y, V_w)."""
    return hom_basis(family, y, w, 1).dim
