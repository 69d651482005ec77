"""Surfaces, dissections, quotients, powers, and the text format."""

import pytest

from artifact import (Arc, Dissection, annulus, build_dissection,
                      dissection_power, format_dissection, glue_ear,
                      make_quotient, parse_dissection_text, polygon,
                      punctured_disc, quiddity_of, rotate_dissection,
                      cover_window)

from conftest import ANNULUS_334_TEXT, cyc_eq


def quotient_28_fixture():
    """Annulus A_{2,6} with five bridging arcs whose 4-gons 2 and 3 share
    only the outer vertex v_2; identifying them drops one 4 from each of
    the two outer multisets."""
    return build_dissection(annulus(2, 6), [
        Arc("bridge", 1, 1, 0), Arc("bridge", 1, 2, 0), Arc("bridge", 1, 3, 0),
        Arc("bridge", 2, 4, 0), Arc("bridge", 2, 6, 0)])


def test_polygon_quiddity():
    D = build_dissection(polygon(6), [Arc("diag", 1, 3), Arc("diag", 3, 5)])
    assert list(quiddity_of(D).A) == [
        (3, 4), (3,), (3, 3, 4), (3,), (3, 4), (4,)]


def test_empty_polygon():
    D = build_dissection(polygon(5), [])
    assert list(quiddity_of(D).A) == [(5,)] * 5


def test_punctured_disc_quiddity():
    # the skeletal triangulated wheel of S_3
    D = build_dissection(punctured_disc(3), [
        Arc("bridge_disc", 1, 0, 0), Arc("bridge_disc", 2, 0, 0),
        Arc("bridge_disc", 3, 0, 0)])
    assert list(quiddity_of(D).A) == [(3, 3), (3, 3), (3, 3)]


def test_annulus_quiddity_both_boundaries(annulus_334):
    assert list(quiddity_of(annulus_334, "outer").A) == [
        (3, 3, 4), (3,), (3, 3, 4, 4)]
    assert cyc_eq(list(quiddity_of(annulus_334, "inner").A),
                  [(4,), (4, 4), (3, 4, 4)])


def test_crossing_arcs_rejected():
    with pytest.raises(ValueError):
        build_dissection(polygon(6),
                         [Arc("diag", 1, 4), Arc("diag", 3, 6)])


def test_quotient_identification():
    D = quotient_28_fixture()
    assert list(quiddity_of(D).A) == [(3, 3, 4, 4), (4, 4, 4)]
    QD = make_quotient(D, [(2, 3)])
    assert list(quiddity_of(QD).A) == [(3, 3, 4), (4, 4)]
    assert [2, 3] in QD.classes()


def test_quotient_restrictions():
    D = quotient_28_fixture()
    with pytest.raises(ValueError):
        make_quotient(D, [(0, 1)])     # triangles sharing an arc
    with pytest.raises(ValueError):
        make_quotient(D, [(3, 4)])     # 4-gons sharing an arc
    with pytest.raises(ValueError):
        make_quotient(D, [(1, 2)])     # unequal sizes
    with pytest.raises(ValueError):
        make_quotient(D, [(2, 2)])     # self, no offset
    with pytest.raises(ValueError):
        make_quotient(D, [(2, 3, 5)])  # offset with no shared vertex


def test_quotient_ear_identification_rejected(annulus_334):
    # the triangle ear has all vertices on the outer boundary and can
    # never be identified
    D = annulus_334
    ear = next(f.id for f in D.base_faces if not f.top_coords())
    other = next(f.id for f in D.base_faces
                 if f.id != ear and f.size == D.face(ear).size)
    with pytest.raises(ValueError):
        make_quotient(D, [(ear, other)])


def test_quotient_self_identification_with_offset():
    # a subgon glued to its own translate wraps around the annulus
    D = build_dissection(annulus(2, 7), [
        Arc("bridge", 2, 1, 0), Arc("bridge", 2, 3, 0), Arc("bridge", 2, 7, 0)])
    assert list(quiddity_of(D).A) == [(5,), (4, 5, 5, 6)]
    wrap = next(f.id for f in D.base_faces if f.size == 5)
    QD = make_quotient(D, [(wrap, wrap, 1)])
    assert list(quiddity_of(QD).A) == [(5,), (4, 5, 6)]


def test_quotient_requires_annulus():
    D = build_dissection(polygon(6), [Arc("diag", 1, 3), Arc("diag", 3, 5)])
    with pytest.raises(ValueError):
        make_quotient(D, [(0, 1)])


def test_format_parse_roundtrip(annulus_334):
    for D in (annulus_334,
              build_dissection(polygon(6), [Arc("diag", 1, 3)]),
              build_dissection(punctured_disc(3), [
                  Arc("bridge_disc", 1, 0, 0), Arc("bridge_disc", 2, 0, 0)]),
              make_quotient(quotient_28_fixture(), [(2, 3)])):
        text = format_dissection(D)
        D2 = parse_dissection_text(text)
        assert format_dissection(D2) == text
        assert list(quiddity_of(D2).A) == list(quiddity_of(D).A)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_dissection_text("")
    with pytest.raises(ValueError):
        parse_dissection_text("annulus 3\n")
    with pytest.raises(ValueError):
        parse_dissection_text("annulus 3 3\nbridge 1\n")
    with pytest.raises(ValueError):
        parse_dissection_text("torus 3 3\n")


def test_parse_comments_and_blank_lines(annulus_334):
    text = "# header\n\n" + ANNULUS_334_TEXT.replace(
        "peri 1 3", "peri 1 3   # the ear")
    D = parse_dissection_text(text)
    assert list(quiddity_of(D).A) == list(quiddity_of(annulus_334).A)


def test_rotate_dissection(annulus_334):
    Q = list(quiddity_of(annulus_334).A)
    for r in range(1, 4):
        Dr = rotate_dissection(annulus_334, r)
        assert list(quiddity_of(Dr).A) == Q[r % 3:] + Q[:r % 3]


def test_glue_ear(annulus_334):
    # attaching a 3-ear at position g inserts a singleton and adds a 3 to
    # the flanking multisets
    D2 = glue_ear(annulus_334, 1, 3)
    A = list(quiddity_of(D2).A)
    assert len(A) == 4
    assert A.count((3,)) >= 1


def test_dissection_power(annulus_334):
    D2 = dissection_power(annulus_334, 2)
    assert D2.surface.n == 6 and D2.surface.m == 6
    Q = list(quiddity_of(annulus_334).A)
    assert list(quiddity_of(D2).A) == Q + Q


def test_cover_window(annulus_334):
    W = cover_window(annulus_334, -1, 1)
    assert W.covers(-3) and W.covers(5) and not W.covers(6)
    # corner choices in the window agree with the underlying dissection
    assert W.corner_choices(0, "outer") == \
        annulus_334.corner_choices(0, "outer")


def test_face_geometry(annulus_334):
    sizes = sorted(f.size for f in annulus_334.base_faces)
    assert sizes == [3, 3, 4, 4]
    ear = next(f for f in annulus_334.base_faces if not f.top_coords())
    assert ear.size == 3
