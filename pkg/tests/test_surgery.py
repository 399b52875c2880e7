"""Connected sums, prism-order selection, drilling and annulus retiling."""

import math

import numpy as np
import pytest

from ccpforge import (DrillSpec, FaceCorrespondence, build_polyhedron,
                      choose_prism_order, classify, connect_sum,
                      defect_profile, drill, drill_repeat,
                      euler_characteristic, gen_cubohemioctahedron,
                      gen_p2_24, gen_q3_18, gen_r_block,
                      gen_tetrahedron, is_embedded, retile_pierced_face)
from ccpforge.errors import (AmbiguousCorrespondence, AxisObstructed,
                             BadOrder, FlatSeam, HoleNotInside,
                             NonNegativeChi, NotInteger, NotIsometric)

from conftest import cube_data

R_PARAMS = (0.5, 0.5 * math.sqrt(3 * (1 + math.sqrt(3))))


def scalene_tetra(offset=0.0):
    v = np.array([(0, 0, 0), (3, 0, 0), (0, 4, 0), (1.1, 1.3, 5)], float)
    v += offset
    return build_polyhedron(v, [(0, 2, 1), (0, 1, 3), (1, 2, 3), (2, 0, 3)])


class TestConnectSum:
    def test_tetra_pair_chi(self):
        t1, t2 = gen_tetrahedron(), gen_tetrahedron()
        out = connect_sum(t1, t2, FaceCorrespondence(0, 0, mapping=(0, 2, 1)))
        assert euler_characteristic(out) == 2
        assert out.n_vertices == 5 and out.n_faces == 6

    def test_q2_9_from_r_blocks(self):
        out = connect_sum(gen_r_block(*R_PARAMS), gen_r_block(*R_PARAMS),
                          FaceCorrespondence(0, 0, mapping=(0, 2, 1)))
        assert euler_characteristic(out) == 1 + 1 - 2
        assert (out.n_vertices, out.n_edges, out.n_faces) == (9, 21, 12)
        assert defect_profile(out).is_constant

    def test_q3_18_chi(self):
        out = gen_q3_18()
        assert euler_characteristic(out) == -1    # 2 + 3*1 - 3*2

    def test_vertex_count_identity(self):
        p1, p2 = gen_r_block(*R_PARAMS), gen_r_block(*R_PARAMS)
        out = connect_sum(p1, p2, FaceCorrespondence(0, 0, mapping=(0, 2, 1)))
        assert out.n_vertices == p1.n_vertices + p2.n_vertices - 3

    def test_auto_search_unique(self):
        out = connect_sum(scalene_tetra(), scalene_tetra(),
                          FaceCorrespondence(0, 0))
        assert euler_characteristic(out) == 2

    def test_auto_search_ambiguous(self):
        with pytest.raises(AmbiguousCorrespondence):
            connect_sum(gen_tetrahedron(), gen_tetrahedron(),
                        FaceCorrespondence(0, 0))

    def test_not_isometric(self):
        big = build_polyhedron(
            np.asarray([(1, 1, 1), (1, -1, -1), (-1, 1, -1),
                        (-1, -1, 1)], float) * 2.0,
            [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])
        with pytest.raises(NotIsometric):
            connect_sum(gen_tetrahedron(), big, FaceCorrespondence(0, 0))

    def test_flat_seam(self):
        verts, faces = cube_data()
        c1 = build_polyhedron(verts, faces)
        c2 = build_polyhedron(verts, faces)
        # stack the second cube on top, (x, y)-aligned: the side walls of
        # the two cubes become coplanar across the seam
        aligned = tuple(
            next(w for w in c2.faces[0]
                 if tuple(c2.vertices[w][:2]) == tuple(c1.vertices[v][:2]))
            for v in c1.faces[1])
        with pytest.raises(FlatSeam):
            connect_sum(c1, c2, FaceCorrespondence(1, 0, mapping=aligned))


class TestPrismOrder:
    def test_values(self):
        assert choose_prism_order(gen_p2_24()) == 12
        assert choose_prism_order(gen_cubohemioctahedron()) == 6
        assert choose_prism_order(gen_q3_18()) == 18

    def test_nonnegative_chi(self):
        with pytest.raises(NonNegativeChi):
            choose_prism_order(gen_tetrahedron())

    def test_not_integer(self):
        from ccpforge import gen_minimal
        with pytest.raises(NotInteger):
            choose_prism_order(gen_minimal(3))   # V=10, chi=-4


class TestRetile:
    def test_square_in_square(self):
        outer = np.array([(2, 2, 0), (-2, 2, 0), (-2, -2, 0), (2, -2, 0)],
                         float)
        hole = 0.5 * outer
        faces = retile_pierced_face(outer, hole)
        assert len(faces) == 4 and all(len(c) == 4 for c in faces)

    def test_twelve_gon_spokes(self):
        outer = np.array([(3 * math.cos(i * math.pi / 6),
                           3 * math.sin(i * math.pi / 6), 1)
                          for i in range(12)])
        hole = outer * (1 / 3, 1 / 3, 1)
        faces = retile_pierced_face(outer, hole)
        assert len(faces) == 12 and all(len(c) == 4 for c in faces)

    def test_mixed_counts_sweep(self):
        outer = np.array([(2, 2, 0), (-2, 2, 0), (-2, -2, 0), (2, -2, 0)],
                         float)
        hole = np.array([(math.cos(a), math.sin(a), 0)
                         for a in np.linspace(0.1, 0.1 + 2 * math.pi, 12,
                                              endpoint=False)])
        faces = retile_pierced_face(outer, hole)
        assert len(faces) == 16 and all(len(c) == 3 for c in faces)

    def test_hole_touching_boundary(self):
        outer = np.array([(2, 2, 0), (-2, 2, 0), (-2, -2, 0), (2, -2, 0)],
                         float)
        hole = np.array([(2, 0, 0), (0, 1, 0), (0, -1, 0)], float)
        with pytest.raises(HoleNotInside):
            retile_pierced_face(outer, hole)

    def test_hole_outside(self):
        outer = np.array([(2, 2, 0), (-2, 2, 0), (-2, -2, 0), (2, -2, 0)],
                         float)
        hole = np.array([(5, 0, 0), (6, 1, 0), (6, -1, 0)], float)
        with pytest.raises(HoleNotInside):
            retile_pierced_face(outer, hole)


class TestDrill:
    def test_cube_drill(self, cube):
        out = drill(cube, DrillSpec(face1=1, face2=0, n=4))
        assert out.n_vertices == cube.n_vertices + 8
        assert euler_characteristic(out) == 0
        tc = classify(out)
        assert tc.orientable and tc.genus == 1
        dp = defect_profile(out)
        assert np.abs(dp.per_vertex[8:] + math.pi / 2).max() < 1e-9
        assert np.abs(dp.per_vertex[:8] - math.pi / 2).max() < 1e-9
        assert is_embedded(out)

    def test_bad_order(self, cube):
        with pytest.raises(BadOrder):
            drill(cube, DrillSpec(1, 0, 2))

    def test_nonparallel_faces(self, cube):
        with pytest.raises(AxisObstructed):
            drill(cube, DrillSpec(0, 2, 4))

    def test_axis_point_outside(self, cube):
        with pytest.raises(AxisObstructed):
            drill(cube, DrillSpec(1, 0, 4, point=(3.0, 0.0, 1.0)))

    def test_footprint_too_large(self, cube):
        with pytest.raises(Exception) as exc:
            drill(cube, DrillSpec(1, 0, 4, radius=5.0))
        assert "FootprintTooLarge" in type(exc.value).__name__

    def test_defect_rule(self):
        p = gen_p2_24()
        n = choose_prism_order(p)
        out = drill(p, DrillSpec(0, 1, n))
        dp = defect_profile(out)
        assert dp.is_constant
        assert dp.mean == pytest.approx(-math.pi / 6, abs=1e-9)

    def test_chi_drop(self):
        p = gen_p2_24()
        out = drill(p, DrillSpec(0, 1, 12))
        assert euler_characteristic(out) == euler_characteristic(p) - 2

    def test_drill_preserves_old_defects(self):
        p = gen_cubohemioctahedron()
        from ccpforge.generators import _find_z_faces
        f1, f2 = _find_z_faces(p)
        out = drill(p, DrillSpec(f1, f2, 6))
        before = defect_profile(p).per_vertex
        after = defect_profile(out).per_vertex
        assert np.abs(after[:p.n_vertices] - before).max() < 1e-9
        assert np.abs(after[p.n_vertices:] + 2 * math.pi / 6).max() < 1e-9

    def test_drill_repeat(self):
        p = gen_p2_24()
        out = drill_repeat(p, DrillSpec(0, 1, 12), 3)
        assert out.n_vertices == 24 + 2 * 12 * 3
        tc = classify(out)
        assert tc.orientable and tc.genus == 5
        assert drill_repeat(p, DrillSpec(0, 1, 12), 1).n_vertices == 48

    def test_drill_repeat_nonorientable_step(self):
        p = gen_q3_18()
        out = drill_repeat(p, DrillSpec(1, 0, 18), 1)
        tc = classify(out)
        assert not tc.orientable and tc.genus == 3 + 2
