import json

from fractions import Fraction

import pytest

from oquiver.homspace import hom_basis
from oquiver.quiver import (
    MalformedPath,
    PathCombo,
    build_quiver,
    combo_str,
    parse_relations,
    to_dot,
    to_json_doc,
    to_text,
    vertex_ids,
)
from oquiver.rootsystem import build, generate_weyl
from oquiver.schubert import build_ring
from oquiver.soergel import build_all


@pytest.fixture(scope="module")
def a2_quiver():
    g = generate_weyl(build("A2"))
    family = build_all(build_ring(g), shortcut=True)
    return build_quiver(family)


@pytest.fixture(scope="module")
def a1_quiver():
    g = generate_weyl(build("A1"))
    family = build_all(build_ring(g), shortcut=True)
    return build_quiver(family)


from golden_a2 import RELATORS_A2, parse_appendix_relators


def test_a2_sixteen_arrows(a2_quiver):
    assert len(a2_quiver.group) == 6
    assert len(a2_quiver.arrows) == 16


def test_a2_relator_dimension_22(a2_quiver):
    assert a2_quiver.relator_dim() == 22


def test_a2_matches_classical_relator_list(a2_quiver):
    combos = parse_appendix_relators(a2_quiver, RELATORS_A2)
    assert len(combos) == 22
    assert a2_quiver.verify_relator_space(combos)


def test_a2_loop_pair_kills_both_loops(a2_quiver):
    g = a2_quiver.group
    w0 = g.longest
    rel = a2_quiver.relators()[(w0.idx, w0.idx)]
    assert len(rel) == 2
    assert len(a2_quiver.paths(w0.idx, w0.idx)) == 2


def test_a2_pair_23_span(a2_quiver):
    # relators from s1s2 (appendix 2) to s2s1 (appendix 3):
    # span{(243) + (213), (253) + (213)}
    g = a2_quiver.group
    y, w = g.parse("1.2"), g.parse("2.1")
    computed = a2_quiver.relators()[(y.idx, w.idx)]
    assert len(computed) == 2
    w0, s1, s2 = g.longest, g.simple(1), g.simple(2)
    want = [
        PathCombo(y.idx, w.idx, {(y.idx, 0, s1.idx, 0, w.idx): Fraction(1),
                                 (y.idx, 0, w0.idx, 0, w.idx): Fraction(1)}),
        PathCombo(y.idx, w.idx, {(y.idx, 0, s2.idx, 0, w.idx): Fraction(1),
                                 (y.idx, 0, w0.idx, 0, w.idx): Fraction(1)}),
    ]
    candidate = want + [
        c for (p, cs) in a2_quiver.relators().items() if p != (y.idx, w.idx) for c in cs
    ]
    assert a2_quiver.verify_relator_space(candidate)


def test_a1_projective_line(a1_quiver):
    g = a1_quiver.group
    assert len(a1_quiver.arrows) == 2
    dims = a1_quiver.quadratic_dims()
    s = g.longest  # the open-cell vertex
    e = g.identity
    assert dims["pairs"][(s.idx, s.idx)] == (1, 1, 0)
    assert dims["pairs"][(e.idx, e.idx)] == (1, 0, 1)
    assert dims["totals"] == (2, 1, 1)
    rel = a1_quiver.relators()
    assert list(rel[(s.idx, s.idx)][0].terms) == [(s.idx, 0, e.idx, 0, s.idx)]
    assert rel.get((e.idx, e.idx)) == []


def test_quadratic_dims_aggregate_matches_hom2(a2_quiver):
    g = a2_quiver.group
    fam = a2_quiver.family
    total_hom2 = sum(
        hom_basis(fam, y, w, 2).dim for y in g.elements for w in g.elements
    )
    dims = a2_quiver.quadratic_dims()
    assert dims["totals"][1] == 22
    assert total_hom2 == 22


def test_relator_pairs_have_even_gap(a2_quiver):
    g = a2_quiver.group
    for (y_idx, w_idx), combos in a2_quiver.relators().items():
        if combos:
            gap = g.elements[w_idx].length - g.elements[y_idx].length
            assert gap % 2 == 0


def test_arrow_symmetry(a2_quiver):
    g = a2_quiver.group
    for y in g.elements:
        for w in g.elements:
            assert a2_quiver.arrow_count(y, w) == a2_quiver.arrow_count(w, y)


def test_pm_one_reports(a2_quiver, a1_quiver):
    assert a2_quiver.pm_one_report()["all_pm_one"]
    assert a1_quiver.pm_one_report()["all_pm_one"]


def test_dsquared_entries_reduce_to_zero(a2_quiver):
    assert a2_quiver.relator_span_contains_all_products()


def test_verify_rejects_empty_and_accepts_self(a2_quiver):
    assert not a2_quiver.verify_relator_space([])
    everything = [c for combos in a2_quiver.relators().values() for c in combos]
    assert a2_quiver.verify_relator_space(everything)


def test_verify_malformed_path(a2_quiver):
    g = a2_quiver.group
    w0 = g.longest
    with pytest.raises(MalformedPath):
        a2_quiver.verify_relator_space(
            [PathCombo(w0.idx, w0.idx, {(w0.idx, 3, g.identity.idx, 0, w0.idx): Fraction(1)})]
        )
    with pytest.raises(MalformedPath):
        PathCombo(0, 0, {(0, 0, 1, 0, 2): Fraction(1)})


def test_json_round_trip(a2_quiver):
    for appendix in (False, True):
        doc = json.loads(json.dumps(to_json_doc(a2_quiver, appendix_numbering=appendix)))
        combos = parse_relations(a2_quiver, doc)
        assert a2_quiver.verify_relator_space(combos)
        assert len(doc["arrows"]) == 16
        assert len(doc["vertices"]) == 6


def test_vertex_ids(a2_quiver, a1_quiver):
    g = a2_quiver.group
    ids = vertex_ids(a2_quiver, appendix_numbering=True)
    assert ids == [6, 4, 5, 2, 3, 1]  # e, s1, s2, s1s2, s2s1, w0
    assert vertex_ids(a2_quiver) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        vertex_ids(a1_quiver, appendix_numbering=True)


def test_text_and_dot_exports(a2_quiver):
    text = to_text(a2_quiver, appendix_numbering=True)
    assert "quiver A2: 6 vertices, 16 arrows, 22 relators" in text
    assert "(121)" in text
    dot = to_dot(a2_quiver)
    assert dot.startswith('digraph "A2"')
    assert dot.count("->") == 16


def test_combo_rendering(a2_quiver):
    ids = vertex_ids(a2_quiver, appendix_numbering=True)
    g = a2_quiver.group
    w0 = g.longest
    loops = a2_quiver.relators()[(w0.idx, w0.idx)]
    rendered = {combo_str(ids, c) for c in loops}
    assert rendered == {"(121)", "(131)"}
