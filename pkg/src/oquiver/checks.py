"""
Seedable invariant battery over a computed pipeline, shared by the CLI
`check` subcommand and the test suite.

Each check returns quietly or raises CheckFailure with a short reason; the
battery runner turns that into one pass/fail line per check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable

from . import icmod, kl
from .homspace import hom_basis
from .linalg import QMatrix
from .quiver import Quiver
from .schubert import CohClass
from .soergel import build_all, hom_degree0

QQ = Fraction


class CheckFailure(AssertionError):
    pass


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


# -- random representations -----------------------------------------------------


def semisimple_rep(q: Quiver, rng: random.Random) -> icmod.QuiverRep:
    dims = {w.idx: rng.randint(0, 2) for w in q.group.elements}
    if not any(dims.values()):
        dims[rng.randrange(len(q.group))] = 1
    return icmod.QuiverRep(dims, {})


def one_way_rep(q: Quiver, rng: random.Random) -> icmod.QuiverRep:
    """One nonzero map on a single arrow: valid since no length-2 path survives."""
    arrow = rng.choice(q.arrows)
    y, w = arrow.source.idx, arrow.target.idx
    dims = {y: 1, w: 1}
    maps = {(y, w, arrow.index): QMatrix([[rng.choice([1, 2, -1])]])}
    return icmod.QuiverRep(dims, maps)


def generic_rep(q: Quiver, rng: random.Random, max_dim: int = 2) -> icmod.QuiverRep:
    dims = {w.idx: rng.randint(0, max_dim) for w in q.group.elements}
    maps = {}
    for arrow in q.arrows:
        dy, dw = dims[arrow.source.idx], dims[arrow.target.idx]
        if dy and dw and rng.random() < 0.8:
            maps[(arrow.source.idx, arrow.target.idx, arrow.index)] = QMatrix(
                [[rng.randint(-2, 2) for _ in range(dy)] for _ in range(dw)]
            )
    return icmod.QuiverRep(dims, maps)


def sample_reps(q: Quiver, seed: int, count: int) -> list[icmod.QuiverRep]:
    """A mix of valid-by-construction and generic representations."""
    rng = random.Random(seed)
    out = []
    for n in range(count):
        if n % 4 == 0:
            out.append(semisimple_rep(q, rng))
        elif n % 4 == 1:
            out.append(one_way_rep(q, rng))
        else:
            out.append(generic_rep(q, rng))
    return out


# -- individual checks -----------------------------------------------------------


def check_ring_unit(ring) -> None:
    g = ring.group
    for v in g.elements:
        _need(ring.multiply_basis(g.identity, v) == CohClass.basis(v), f"unit fails at {v}")


def check_ring_commutative(ring) -> None:
    g = ring.group
    for u in g.elements:
        for v in g.elements:
            _need(
                ring.multiply_basis(u, v) == ring.multiply_basis(v, u),
                f"commutativity fails at ({u}, {v})",
            )


def check_ring_associative(ring, rng: random.Random, samples: int = 20) -> None:
    g = ring.group
    for _ in range(samples):
        u, v, t = (rng.choice(g.elements) for _ in range(3))
        lhs = ring.multiply(ring.multiply_basis(u, v), CohClass.basis(t))
        rhs = ring.multiply(CohClass.basis(u), ring.multiply_basis(v, t))
        _need(lhs == rhs, f"associativity fails at ({u}, {v}, {t})")


def check_ring_homogeneous(ring) -> None:
    g = ring.group
    top = g.longest.length
    for u in g.elements:
        for v in g.elements:
            product = ring.multiply_basis(u, v)
            if u.length + v.length > top:
                _need(product.is_zero(), f"nonzero product above top degree ({u}, {v})")
            else:
                _need(
                    all(t.length == u.length + v.length for t in product.support()),
                    f"inhomogeneous product ({u}, {v})",
                )


def check_split_recombine(ring) -> None:
    g = ring.group
    for i in range(1, g.rootsystem.rank + 1):
        si = CohClass.basis(g.simple(i))
        inv = set(ring.invariant_basis(i))
        for w in g.elements:
            c = CohClass.basis(w)
            x, y = ring.split(i, c)
            _need(x + ring.multiply(si, y) == c, f"split recombine fails at ({i}, {w})")
            _need(x.support() <= inv and y.support() <= inv, f"split outside invariants ({i}, {w})")


def check_module_grading(family) -> None:
    g = family.group
    for w in g.elements:
        m = family[w]
        dims = m.graded_dims()
        for d, n in dims.items():
            _need(dims.get(-d) == n, f"graded dims of V[{w}] not symmetric")
            _need((d - w.length) % 2 == 0, f"degree parity broken in V[{w}]")
            _need(-w.length <= d <= w.length, f"degree range broken in V[{w}]")


def check_module_composition(family, rng: random.Random, samples: int = 20) -> None:
    g = family.group
    ring = family.ring
    for _ in range(samples):
        w = rng.choice(g.elements)
        u, v = rng.choice(g.elements), rng.choice(g.elements)
        m = family[w]
        left = m.action[u.idx] * m.action[v.idx]
        _need(left == m.action[v.idx] * m.action[u.idx], f"actions on V[{w}] do not commute")
        _need(
            left == m.class_action(ring.multiply_basis(u, v)),
            f"action of V[{w}] does not follow the product table",
        )


def check_kl_dims(family) -> None:
    g = family.group
    for w in g.elements:
        _need(
            family.graded_dims(w) == kl.ih_graded_dims(g, w),
            f"graded dims of V[{w}] disagree with the KL recursion",
        )


def check_kl_mu_vs_arrows(q: Quiver) -> None:
    g = q.group
    for y in g.elements:
        for w in g.elements:
            _need(
                q.arrow_count(y, w) == kl.mu(g, y, w),
                f"arrow count ({y}, {w}) != mu",
            )


def check_hom0_delta(family) -> None:
    g = family.group
    for y in g.elements:
        for w in g.elements:
            expected = 1 if y == w else 0
            _need(
                len(hom_degree0(family.ring, family[y], family[w])) == expected,
                f"Hom^0(V[{y}], V[{w}]) is not delta",
            )


def check_hom1_symmetry(q: Quiver) -> None:
    g = q.group
    for y in g.elements:
        for w in g.elements:
            _need(
                q.arrow_count(y, w) == q.arrow_count(w, y),
                f"arrow counts not symmetric at ({y}, {w})",
            )


def check_parity_vanishing(family, degrees: Iterable[int] = (0, 1, 2)) -> None:
    g = family.group
    for y in g.elements:
        for w in g.elements:
            for d in degrees:
                if (d - (w.length - y.length)) % 2 != 0:
                    _need(
                        hom_basis(family, y, w, d).dim == 0,
                        f"parity vanishing fails at ({y}, {w}, {d})",
                    )


def check_relators_complete(q: Quiver) -> None:
    _need(q.relator_span_contains_all_products(), "a dtilde^2 entry escapes the relator span")


def check_relator_homogeneity(q: Quiver) -> None:
    g = q.group
    for (y, w), combos in q.relators().items():
        if combos:
            _need(
                (g.elements[w].length - g.elements[y].length) % 2 == 0,
                f"relator pair ({y}, {w}) has odd length gap",
            )


def check_prop36(q: Quiver, seed: int, count: int = 200) -> tuple[int, int]:
    """Relator annihilation must coincide with d^2 = 0, rep by rep."""
    valid = invalid = 0
    for n, rep in enumerate(sample_reps(q, seed, count)):
        by_relators = icmod.rep_satisfies_relations(q, rep)
        by_d2 = icmod.validate(q, icmod.from_quiver_rep(q, rep))
        _need(
            by_relators == by_d2,
            f"sample {n}: relators say {by_relators} but d^2 says {by_d2}",
        )
        if by_d2:
            valid += 1
        else:
            invalid += 1
    _need(valid > 0 and invalid > 0, "sample did not exercise both outcomes")
    return valid, invalid


def check_verdier_involution(q: Quiver, seed: int, count: int = 50) -> None:
    for n, rep in enumerate(sample_reps(q, seed, count)):
        m = icmod.from_quiver_rep(q, rep)
        dual = icmod.verdier_dual(q, m)
        _need(icmod.verdier_dual(q, dual) == m, f"sample {n}: D(D(m)) != m")
        _need(
            icmod.validate(q, m) == icmod.validate(q, dual),
            f"sample {n}: validity not preserved by duality",
        )


def check_simple_cohomology(q: Quiver) -> None:
    g = q.group
    for w in g.elements:
        m = icmod.ICModule({w.idx: 1}, {})
        _need(
            icmod.total_cohomology(q, m) == q.family.graded_dims(w),
            f"cohomology of the simple at {w} is not V[{w}]",
        )


def check_shortcut_vs_full(ring) -> None:
    fast = build_all(ring, shortcut=True)
    full = build_all(ring, shortcut=False)
    for w in ring.group.elements:
        _need(
            fast.graded_dims(w) == full.graded_dims(w),
            f"shortcut and full dims differ at {w}",
        )
        maps = hom_degree0(ring, fast[w], full[w])
        _need(len(maps) == 1, f"shortcut/full comparison space at {w} is not a line")


# -- battery ---------------------------------------------------------------------

SUITES = ("ring", "modules", "kl", "hom", "quiver", "icmod", "all")


def run_suite(q: Quiver, suite: str, seed: int) -> list[tuple[str, str | None]]:
    """Run the named suite; returns (check name, failure or None) pairs."""
    family = q.family
    ring = family.ring
    rng = random.Random(seed)
    plan: list[tuple[str, Callable[[], object]]] = []

    def want(group: str) -> bool:
        return suite in (group, "all")

    if want("ring"):
        plan += [
            ("ring-unit", lambda: check_ring_unit(ring)),
            ("ring-commutative", lambda: check_ring_commutative(ring)),
            ("ring-associative", lambda: check_ring_associative(ring, rng)),
            ("ring-homogeneous", lambda: check_ring_homogeneous(ring)),
            ("ring-split-recombine", lambda: check_split_recombine(ring)),
        ]
    if want("modules"):
        plan += [
            ("module-grading", lambda: check_module_grading(family)),
            ("module-composition", lambda: check_module_composition(family, rng)),
        ]
        if q.group.longest.length <= 6:
            # full word modules are 2^l(w0)-dimensional; skip past desk scale
            plan.append(("module-shortcut-vs-full", lambda: check_shortcut_vs_full(ring)))
    if want("kl"):
        plan += [
            ("kl-graded-dims", lambda: check_kl_dims(family)),
            ("kl-mu-vs-arrows", lambda: check_kl_mu_vs_arrows(q)),
        ]
    if want("hom"):
        plan += [
            ("hom0-delta", lambda: check_hom0_delta(family)),
            ("hom1-symmetry", lambda: check_hom1_symmetry(q)),
            ("hom-parity-vanishing", lambda: check_parity_vanishing(family)),
        ]
    if want("quiver"):
        plan += [
            ("relators-complete", lambda: check_relators_complete(q)),
            ("relator-homogeneity", lambda: check_relator_homogeneity(q)),
        ]
    if want("icmod"):
        plan += [
            ("prop36-equivalence", lambda: check_prop36(q, seed)),
            ("verdier-involution", lambda: check_verdier_involution(q, seed)),
            ("simple-cohomology", lambda: check_simple_cohomology(q)),
        ]
    results: list[tuple[str, str | None]] = []
    for name, fn in plan:
        try:
            fn()
            results.append((name, None))
        except CheckFailure as exc:
            results.append((name, str(exc)))
    return results
