"""Topology-changing operations: connected sum along congruent faces, and
drilling a regular prism tunnel between two parallel faces."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _geom
from .errors import (AmbiguousCorrespondence, AxisObstructed, BadOrder,
                     FlatEdge, FlatSeam, FootprintTooLarge, HoleNotInside,
                     NonNegativeChi, NotInteger, NotIsometric,
                     SelfCrossingPartition)
from .mesh import (DEFAULT_TOLERANCES, HalfEdge, Polyhedron,
                   ToleranceSet, build_polyhedron, euler_characteristic,
                   replace_meta)

TAU = 2.0 * math.pi


# ---------------------------------------------------------------------------
# connected sum


@dataclass(frozen=True)
class FaceCorrespondence:
    """Gluing data for a connected sum.

    face1, face2 : face ids in the two meshes
    mapping      : optional explicit bijection, given as the vertex ids of
                   face2 aligned position-by-position with face1's stored
                   cycle.  When absent, all cyclic alignments of both
                   directions are searched for a unique isometric one.
    """
    face1: int
    face2: int
    mapping: tuple[int, ...] | None = None


def _cycle_lengths(pts: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)


def _alignments(cycle2: tuple[int, ...]):
    k = len(cycle2)
    for rev in (False, True):
        base = tuple(reversed(cycle2)) if rev else cycle2
        for shift in range(k):
            yield tuple(base[(i + shift) % k] for i in range(k))


def resolve_correspondence(p1: Polyhedron, p2: Polyhedron,
                           corr: FaceCorrespondence,
                           tolerances: ToleranceSet = DEFAULT_TOLERANCES
                           ) -> tuple[int, ...]:
    """The face2 vertex ids aligned with face1's stored cycle."""
    c1 = p1.faces[corr.face1]
    c2 = p2.faces[corr.face2]
    if len(c1) != len(c2):
        raise NotIsometric("face cycles have different lengths")
    scale = max(1.0, float(np.abs(p1.vertices).max()),
                float(np.abs(p2.vertices).max()))
    tol = tolerances.length * scale * 10

    if corr.mapping is not None:
        mapping = tuple(int(v) for v in corr.mapping)
        if sorted(mapping) != sorted(c2):
            raise NotIsometric("mapping is not a bijection onto face2")
        if mapping not in set(_alignments(c2)):
            raise NotIsometric("mapping does not respect the face2 cycle")
        return mapping

    len1 = _cycle_lengths(p1.vertices[list(c1)])
    found = []
    for cand in _alignments(c2):
        len2 = _cycle_lengths(p2.vertices[list(cand)])
        if np.abs(len1 - len2).max() < tol:
            found.append(cand)
    if not found:
        raise NotIsometric("no isometric alignment of the two face cycles")
    if len(found) > 1:
        raise AmbiguousCorrespondence(
            f"{len(found)} isometric alignments; pass an explicit mapping")
    return found[0]


def connect_sum(p1: Polyhedron, p2: Polyhedron, corr: FaceCorrespondence,
                tolerances: ToleranceSet = DEFAULT_TOLERANCES) -> Polyhedron:
    """Remove the two corresponding faces, rigidly move p2 so the cycles
    coincide, and identify them vertex by vertex.

    chi(result) = chi(p1) + chi(p2) - 2 by construction.  The edge-cell
    pairing is carried through explicitly, so segments of the two pieces
    that come to share both endpoints remain distinct 1-cells.
    """
    mapping = resolve_correspondence(p1, p2, corr, tolerances)
    c1 = p1.faces[corr.face1]
    k = len(c1)
    src = p2.vertices[list(mapping)]
    dst = p1.vertices[list(c1)]
    rot, tr = _geom.kabsch(src, dst)
    scale = max(1.0, float(np.abs(dst).max()))
    resid = float(np.abs(rot @ src.T + tr[:, None] - dst.T).max())
    if resid > 1e-9 * scale:
        raise NotIsometric(
            f"cycles are not congruent (rigid-fit residual {resid:.2e})")
    moved = (rot @ p2.vertices.T).T + tr

    n1 = p1.n_vertices
    seam = {v2: c1[i] for i, v2 in enumerate(mapping)}
    new_id: dict[int, int] = {}
    verts = [p1.vertices[i] for i in range(n1)]
    for v2 in range(p2.n_vertices):
        if v2 in seam:
            new_id[v2] = seam[v2]
        else:
            new_id[v2] = len(verts)
            verts.append(moved[v2])

    faces = [cyc for i, cyc in enumerate(p1.faces) if i != corr.face1]
    for i, cyc in enumerate(p2.faces):
        if i == corr.face2:
            continue
        faces.append(tuple(new_id[v] for v in cyc))

    def f1_new(f):
        return f - (1 if f > corr.face1 else 0)

    def f2_new(f):
        return (p1.n_faces - 1) + f - (1 if f > corr.face2 else 0)

    # seam position of a p2 half edge on face2: the index i of face1's
    # cycle whose image under the mapping is that segment
    seam_pos = {}
    for i in range(k):
        a, b = mapping[i], mapping[(i + 1) % k]
        seam_pos[frozenset((a, b))] = i

    seam_half1: list[HalfEdge | None] = [None] * k
    seam_half2: list[HalfEdge | None] = [None] * k
    slots: list[tuple[HalfEdge, HalfEdge]] = []
    for (fa, sa), (fb, sb) in p1.edge_slots:
        if fa == corr.face1:
            seam_half1[sa] = (f1_new(fb), sb)
        elif fb == corr.face1:
            seam_half1[sb] = (f1_new(fa), sa)
        else:
            slots.append(((f1_new(fa), sa), (f1_new(fb), sb)))
    for (fa, sa), (fb, sb) in p2.edge_slots:
        if fa == corr.face2 or fb == corr.face2:
            f, s = ((fb, sb) if fa == corr.face2 else (fa, sa))
            cyc2 = p2.faces[corr.face2]
            s_on_face2 = sa if fa == corr.face2 else sb
            key = frozenset((cyc2[s_on_face2],
                             cyc2[(s_on_face2 + 1) % k]))
            seam_half2[seam_pos[key]] = (f2_new(f), s)
        else:
            slots.append(((f2_new(fa), sa), (f2_new(fb), sb)))
    for i in range(k):
        if seam_half1[i] is None or seam_half2[i] is None:
            raise NotIsometric("seam pairing incomplete")
        slots.append((seam_half1[i], seam_half2[i]))

    seams = set(p1.metadata.seam_edges)
    for (u, w) in p2.metadata.seam_edges:
        a, b = new_id[u], new_id[w]
        seams.add((a, b) if a < b else (b, a))
    meta = replace_meta(p1.metadata, seam_edges=seams)
    meta.provenance.append(
        f"connect_sum(face {corr.face1} ~ face {corr.face2})")
    meta.genus = None
    meta.orientable = None
    try:
        return build_polyhedron(np.array(verts), faces, tolerances, meta,
                                edge_slots=tuple(slots))
    except FlatEdge as exc:
        raise FlatSeam(str(exc)) from exc


# ---------------------------------------------------------------------------
# drilling


@dataclass(frozen=True)
class DrillSpec:
    """Placement of one prism tunnel.

    face1, face2 : parallel pierced faces
    n            : prism order (>= 3)
    point        : axis base point in face1's interior; face1 centroid when
                   omitted
    radius       : prism circumradius; a safe radius is chosen when omitted
    phase        : angular offset of the first prism vertex in the face frame
    """
    face1: int
    face2: int
    n: int
    point: tuple[float, float, float] | None = None
    radius: float | None = None
    phase: float = 0.0


def choose_prism_order(p: Polyhedron) -> int:
    """Prism order -V/chi that keeps the defect constant under drilling."""
    chi = euler_characteristic(p)
    if chi >= 0:
        raise NonNegativeChi(f"chi = {chi} must be negative")
    if p.n_vertices % (-chi) != 0:
        raise NotInteger(f"chi = {chi} does not divide V = {p.n_vertices}")
    return p.n_vertices // (-chi)


def _face_frame(p: Polyhedron, f: int):
    pts = p.face_points(f)
    c, n, _ = _geom.plane_fit(pts)
    u, v = _geom.plane_basis(n)
    poly2 = _geom.project_2d(pts, c, u, v)
    return c, n, u, v, poly2


def retile_pierced_face(outer: np.ndarray, hole: np.ndarray
                        ) -> list[list[int]]:
    """Partition the annulus between an outer polygon and a strictly
    interior hole polygon into simple faces using only existing vertices.

    Both arguments are coplanar 3D cycles; the outer face must be
    star-shaped about the hole centre.  Returned cycles index the
    concatenation [outer, hole].  Equal vertex counts give a spoke
    partition into quads; otherwise a radial angular sweep produces
    triangles.
    """
    outer = np.asarray(outer, float)
    hole = np.asarray(hole, float)
    ko, kh = len(outer), len(hole)
    c, n, resid = _geom.plane_fit(np.vstack([outer, hole]))
    scale = max(1.0, float(np.abs(outer).max()))
    if resid > 1e-9 * scale:
        raise HoleNotInside("hole is not coplanar with the outer face")
    u, v = _geom.plane_basis(n)
    o2 = _geom.project_2d(outer, c, u, v)
    h2 = _geom.project_2d(hole, c, u, v)
    for q in h2:
        if not _geom.point_in_polygon(q, o2) or \
           _geom.dist_point_polygon_boundary(q, o2) < 1e-12 * scale:
            raise HoleNotInside("hole not strictly inside the outer polygon")

    # counterclockwise index sequences over the original cycles
    o_seq = list(range(ko)) if _geom.polygon_area_2d(o2) > 0 \
        else list(reversed(range(ko)))
    h_seq = list(range(kh)) if _geom.polygon_area_2d(h2) > 0 \
        else list(reversed(range(kh)))
    centre = h2.mean(axis=0)
    ang_o = [math.atan2(*(o2[i] - centre)[::-1]) % TAU for i in o_seq]
    ang_h = [math.atan2(*(h2[j] - centre)[::-1]) % TAU for j in h_seq]

    def spoke_quads():
        def mismatch(s):
            return sum(min((ang_o[(t + s) % ko] - ang_h[t]) % TAU,
                           (ang_h[t] - ang_o[(t + s) % ko]) % TAU)
                       for t in range(kh))
        s = min(range(ko), key=mismatch)
        return [[o_seq[(t + s) % ko], o_seq[(t + s + 1) % ko],
                 ko + h_seq[(t + 1) % kh], ko + h_seq[t]]
                for t in range(kh)]

    def circ_dist(a, b):
        d = (a - b) % TAU
        return min(d, TAU - d)

    def sweep_triangles():
        # Assign each hole edge to the outer corner nearest the edge's
        # angular midpoint; corner-to-corner transitions are bridged at
        # the shared hole vertex.  Every spoke then stays close to its
        # hole vertex and clear of the hole polygon.
        mu = [(ang_h[j] + 0.5 * ((ang_h[(j + 1) % kh] - ang_h[j]) % TAU))
              % TAU for j in range(kh)]
        owner = [min(range(ko), key=lambda t: circ_dist(ang_o[t], mu[j]))
                 for j in range(kh)]
        out: list[list[int]] = []
        for j in range(kh):
            jn = (j + 1) % kh
            out.append([o_seq[owner[j]], ko + h_seq[jn], ko + h_seq[j]])
            t = owner[j]
            while t != owner[jn]:
                nt = (t + 1) % ko
                out.append([o_seq[t], o_seq[nt], ko + h_seq[jn]])
                t = nt
        return out

    all2 = np.vstack([o2, h2])
    annulus_area = abs(_geom.polygon_area_2d(o2)) - abs(_geom.polygon_area_2d(h2))

    def valid(faces_local):
        total = 0.0
        for cyc in faces_local:
            pts = all2[cyc]
            area = abs(_geom.polygon_area_2d(pts))
            if area < 1e-12 * scale * scale or \
               not _geom.polygon_is_simple(pts):
                return False
            total += area
        # exact partitions tile the annulus; any overlap inflates the sum
        return abs(total - annulus_area) < 1e-9 * scale * scale

    if ko == kh:
        faces_local = spoke_quads()
        if not valid(faces_local):
            faces_local = sweep_triangles()
    else:
        faces_local = sweep_triangles()
    if not valid(faces_local):
        raise SelfCrossingPartition("degenerate sub-face in retiling")
    return faces_local


def drill(p: Polyhedron, spec: DrillSpec,
          tolerances: ToleranceSet = DEFAULT_TOLERANCES) -> Polyhedron:
    """Tunnel a regular n-gonal prism between two parallel faces.

    Adds 2n vertices of defect -2*pi/n each and lowers chi by 2.  The
    pierced faces are retiled over their existing vertices, so no other
    defect changes.  The axis may cross other faces of an immersed mesh;
    such crossings only add self-intersection witnesses.
    """
    if spec.n < 3:
        raise BadOrder(f"prism order {spec.n} < 3")
    if spec.face1 == spec.face2:
        raise AxisObstructed("face1 and face2 must differ")
    if p.has_multi_edges:
        raise AxisObstructed(
            "drilling meshes with doubled segments is not supported")
    c1, n1, u1, v1, poly1 = _face_frame(p, spec.face1)
    c2, n2, u2, v2, poly2 = _face_frame(p, spec.face2)
    if abs(abs(float(n1 @ n2)) - 1.0) > 1e-9:
        raise AxisObstructed("pierced faces are not parallel")
    scale = max(1.0, float(np.abs(p.vertices).max()))

    p1pt = c1 if spec.point is None else np.asarray(spec.point, float)
    q1 = _geom.project_2d(p1pt[None, :], c1, u1, v1)[0]
    if not _geom.point_in_polygon(q1, poly1):
        raise AxisObstructed("axis point is not interior to face1")
    # orthogonal projection onto face2's plane
    depth = float((p1pt - c2) @ n2)
    if abs(depth) < 1e-9 * scale:
        raise AxisObstructed("pierced faces are coplanar")
    p2pt = p1pt - depth * n2
    q2 = _geom.project_2d(p2pt[None, :], c2, u2, v2)[0]
    if not _geom.point_in_polygon(q2, poly2):
        raise AxisObstructed("axis exit point is not interior to face2")

    d1 = _geom.dist_point_polygon_boundary(q1, poly1)
    d2 = _geom.dist_point_polygon_boundary(q2, poly2)
    eps = spec.radius if spec.radius is not None else 0.25 * min(d1, d2)
    if eps <= 0 or eps >= min(d1, d2):
        raise FootprintTooLarge(
            f"prism radius {eps:.3g} does not fit (clearances {d1:.3g}, {d2:.3g})")

    ring1 = np.array([p1pt + eps * (math.cos(TAU * j / spec.n + spec.phase) * u1
                                    + math.sin(TAU * j / spec.n + spec.phase) * v1)
                      for j in range(spec.n)])
    ring2 = ring1 - depth * n2

    base1 = p.n_vertices
    base2 = base1 + spec.n
    verts = np.vstack([p.vertices, ring1, ring2])

    faces: list[tuple[int, ...]] = []
    for i, cyc in enumerate(p.faces):
        if i in (spec.face1, spec.face2):
            continue
        faces.append(cyc)
    seams = set(p.metadata.seam_edges)
    for cyc, base in ((p.faces[spec.face1], base1),
                      (p.faces[spec.face2], base2)):
        part = [tuple(cyc[i] if i < len(cyc) else base + i - len(cyc)
                      for i in local)
                for local in retile_pierced_face(p.vertices[list(cyc)],
                                                 verts[base:base + spec.n])]
        faces.extend(part)
        count: dict[tuple[int, int], int] = {}
        for sub in part:
            for t in range(len(sub)):
                u, w = sub[t], sub[(t + 1) % len(sub)]
                key = (u, w) if u < w else (w, u)
                count[key] = count.get(key, 0) + 1
        seams.update(k for k, c in count.items() if c == 2)
    for j in range(spec.n):
        k = (j + 1) % spec.n
        faces.append((base1 + j, base1 + k, base2 + k, base2 + j))

    meta = replace_meta(p.metadata, seam_edges=seams)
    meta.provenance.append(
        f"drill(n={spec.n}, faces=({spec.face1},{spec.face2}), eps={eps:.6g})")
    meta.genus = None
    return build_polyhedron(verts, faces, tolerances, meta)


def drill_repeat(p: Polyhedron, spec: DrillSpec, k: int,
                 tolerances: ToleranceSet = DEFAULT_TOLERANCES) -> Polyhedron:
    """Apply k parallel drills along offset copies of the axis.

    Axes are spread along a face-frame direction with spacing
    clearance/(2k); each subsequent drill locates the current sub-face
    containing its axis point.  If an offset line degenerates against the
    evolving retiling (axis on a seam), the next of a fixed set of offset
    directions is tried.
    """
    if k < 1:
        raise BadOrder("k must be >= 1")
    if k == 1:
        return drill(p, spec, tolerances)
    c1, n1, u1, v1, poly1 = _face_frame(p, spec.face1)
    p1pt = c1 if spec.point is None else np.asarray(spec.point, float)
    q1 = _geom.project_2d(p1pt[None, :], c1, u1, v1)[0]
    d0 = _geom.dist_point_polygon_boundary(q1, poly1)
    delta = d0 / (2 * k)
    plane1 = (float(n1 @ c1), n1)
    c2 = p.face_points(spec.face2).mean(axis=0)
    plane2 = (float(n1 @ c2), n1)

    last_err: Exception | None = None
    for theta in (t * math.pi / 7 for t in range(7)):
        u_dir = math.cos(theta) * u1 + math.sin(theta) * v1
        out = p
        try:
            for j in range(k):
                axis_pt = p1pt + (j - (k - 1) / 2) * delta * u_dir
                f1, clr1 = _locate_face(out, axis_pt, plane1)
                exit_pt = axis_pt - (float(axis_pt @ n1) - plane2[0]) * n1
                f2, clr2 = _locate_face(out, exit_pt, plane2)
                if f1 is None or f2 is None:
                    raise FootprintTooLarge(
                        f"drill {j + 1}/{k}: axis offset leaves the "
                        f"pierced faces")
                radius = spec.radius if spec.radius is not None else \
                    0.25 * min(clr1, clr2, delta / 2)
                out = drill(out, DrillSpec(f1, f2, spec.n, tuple(axis_pt),
                                           radius, spec.phase), tolerances)
            return out
        except (FootprintTooLarge, AxisObstructed,
                SelfCrossingPartition) as exc:
            last_err = exc
    raise FootprintTooLarge(
        f"no workable offset direction for {k} parallel drills: {last_err}")


def _locate_face(p: Polyhedron, point: np.ndarray,
                 plane) -> tuple[int | None, float]:
    """Face whose plane matches `plane` and whose polygon strictly contains
    the point, plus the point's clearance to that polygon's boundary."""
    d0, n = plane
    scale = max(1.0, float(np.abs(p.vertices).max()))
    for f in range(p.n_faces):
        pts = p.face_points(f)
        if np.abs(pts @ n - d0).max() > 1e-7 * scale:
            continue
        c, nf, _ = _geom.plane_fit(pts)
        u, v = _geom.plane_basis(nf)
        poly2 = _geom.project_2d(pts, c, u, v)
        q = _geom.project_2d(point[None, :], c, u, v)[0]
        clearance = _geom.dist_point_polygon_boundary(q, poly2)
        if _geom.point_in_polygon(q, poly2) and clearance > 1e-9 * scale:
            return f, clearance
    return None, 0.0
