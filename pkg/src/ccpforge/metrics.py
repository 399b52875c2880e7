"""Metric measurements on a mesh: edge lengths, interior corner angles,
per-vertex angular defects, the closed-surface defect identity, dihedral
angles, and global self-intersection detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _geom
from .errors import FlatEdge, IsolatedVertex, VertexNotOnFace
from .mesh import DEFAULT_TOLERANCES, Polyhedron, ToleranceSet, euler_characteristic


@dataclass(frozen=True)
class DefectProfile:
    per_vertex: np.ndarray           # radians, indexed by vertex id
    mean: float
    max_abs_deviation: float
    is_constant: bool

    def __getitem__(self, v: int) -> float:
        return float(self.per_vertex[v])


@dataclass(frozen=True)
class IntersectionWitness:
    faces: tuple[int, int]
    point: np.ndarray                # a representative common point
    kind: str                        # "transversal" | "coplanar-overlap"


def edge_length(p: Polyhedron, e: int) -> float:
    u, v = p.edges[e]
    return float(np.linalg.norm(p.vertices[u] - p.vertices[v]))


def corner_angle(p: Polyhedron, f: int, v: int) -> float:
    """Interior angle of face f's planar polygon at vertex v, in (0, 2*pi).

    Reflex corners are resolved against the polygon's own cycle normal, so
    dented polygons report angles above pi.
    """
    cyc = p.faces[f]
    if v not in cyc:
        raise VertexNotOnFace(f"vertex {v} not on face {f}")
    i = cyc.index(v)
    k = len(cyc)
    pv = p.vertices[v]
    nxt = p.vertices[cyc[(i + 1) % k]] - pv
    prv = p.vertices[cyc[(i - 1) % k]] - pv
    n = _geom.newell_normal(p.face_points(f))
    n = n / np.linalg.norm(n)
    cross = np.cross(nxt, prv)
    theta = float(np.arctan2(np.linalg.norm(cross),
                             float(np.dot(nxt, prv))))
    if np.dot(cross, n) < 0:
        theta = 2.0 * np.pi - theta
    return theta


def angular_defect(p: Polyhedron, v: int) -> float:
    """2*pi minus the sum of interior angles of all face corners at v."""
    faces = p.vertex_faces(v)
    if len(faces) < 3:
        raise IsolatedVertex(f"vertex {v} has {len(faces)} incident faces")
    total = sum(corner_angle(p, f, v) for f in faces)
    return 2.0 * np.pi - total


def defect_profile(p: Polyhedron, tol: float | None = None) -> DefectProfile:
    """Per-vertex defects with constancy statistics.

    tol defaults to the mesh tolerance set's defect band (1e-9 rad);
    surgery chains are usually checked at 1e-6.
    """
    if tol is None:
        tol = DEFAULT_TOLERANCES.defect
    d = np.array([angular_defect(p, v) for v in range(p.n_vertices)])
    mean = float(d.mean())
    dev = float(np.abs(d - mean).max())
    return DefectProfile(d, mean, dev, dev < tol)


def descartes_residual(p: Polyhedron) -> float:
    """|sum of defects - 2*pi*chi|; an identity of closed surfaces, so this
    measures only floating-point accumulation."""
    total = sum(angular_defect(p, v) for v in range(p.n_vertices))
    return abs(total - 2.0 * np.pi * euler_characteristic(p))


def dihedral_angle(p: Polyhedron, e: int,
                   tolerances: ToleranceSet = DEFAULT_TOLERANCES) -> float:
    """Dihedral angle at edge e in (0, 2*pi) \\ {pi}.

    Measured through the side opposite the first face's cycle normal, so
    reversing that face's stored cycle maps the value to 2*pi - value.
    Raises FlatEdge within the angle tolerance of pi.
    """
    f1, f2 = p.edge_faces(e)
    u, v = p.edges[e]
    a, b = p.vertices[u], p.vertices[v]
    # traverse the edge as f1 does
    if p.edge_direction(e, 0) < 0:
        a, b = b, a
    t = _geom.unit(b - a)
    n1 = _geom.unit(_geom.newell_normal(p.face_points(f1)))
    w1 = np.cross(n1, t)
    w2 = _face_inward(p, f2, a, t)
    ang = float(np.arctan2(-np.dot(n1, w2), np.dot(w1, w2)))
    if ang < 0:
        ang += 2.0 * np.pi
    if abs(ang - np.pi) < tolerances.angle:
        raise FlatEdge(f"edge {p.edges[e]} has dihedral angle pi")
    return ang


def _face_inward(p: Polyhedron, f: int, a: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Unit vector at edge point a, perpendicular to edge direction t, lying
    in face f's plane and pointing into the face."""
    n = _geom.unit(_geom.newell_normal(p.face_points(f)))
    w = np.cross(n, t)
    # sign from the face centroid side
    c = p.face_points(f).mean(axis=0)
    if np.dot(c - a, w) < 0:
        w = -w
    return _geom.unit(w - np.dot(w, t) * t)


# ---------------------------------------------------------------------------
# self-intersection detection


def _triangulated_faces(p: Polyhedron):
    """Per face: list of world-space triangles from ear clipping."""
    out = []
    for f in range(p.n_faces):
        fpts = p.face_points(f)
        c, n, _ = _geom.plane_fit(fpts)
        u, v = _geom.plane_basis(n)
        p2 = _geom.project_2d(fpts, c, u, v)
        tris = _geom.ear_clip(p2)
        out.append([fpts[list(t)] for t in tris])
    return out


def _shared_features(p: Polyhedron, f1: int, f2: int):
    """Shared vertices (as points) and shared whole edges between two faces."""
    s1, s2 = set(p.faces[f1]), set(p.faces[f2])
    shared_v = s1 & s2
    pts = [p.vertices[v] for v in shared_v]
    segs = []
    c1 = p.faces[f1]
    k = len(c1)
    for i in range(k):
        u, v = c1[i], c1[(i + 1) % k]
        if u in shared_v and v in shared_v:
            c2 = p.faces[f2]
            m = len(c2)
            for j in range(m):
                if {c2[j], c2[(j + 1) % m]} == {u, v}:
                    segs.append((p.vertices[u], p.vertices[v]))
                    break
    return pts, segs


def _clearance(point, shared_pts, shared_segs):
    d = np.inf
    for q in shared_pts:
        d = min(d, float(np.linalg.norm(point - q)))
    for a, b in shared_segs:
        d = min(d, _geom.dist_point_segment_3d(point, a, b))
    return d


def _tri_pair_contact(t1: np.ndarray, t2: np.ndarray, eps: float):
    """Contact between two triangles.

    Returns (kind, candidate points) or None.  Coplanar overlap reports the
    overlap centroid; transversal crossings report samples along the
    intersection segment.
    """
    n2 = np.cross(t2[1] - t2[0], t2[2] - t2[0])
    nn2 = np.linalg.norm(n2)
    if nn2 == 0:
        return None
    n2 /= nn2
    d2 = float(n2 @ t2[0])
    s1 = t1 @ n2 - d2
    if (s1 > eps).all() or (s1 < -eps).all():
        return None

    n1 = np.cross(t1[1] - t1[0], t1[2] - t1[0])
    nn1 = np.linalg.norm(n1)
    if nn1 == 0:
        return None
    n1 /= nn1
    d1 = float(n1 @ t1[0])
    s2 = t2 @ n1 - d1
    if (s2 > eps).all() or (s2 < -eps).all():
        return None

    if (np.abs(s1) <= eps).all():
        # coplanar: 2D polygon overlap area test
        u, v = _geom.plane_basis(n2)
        o = t2[0]
        a2 = _geom.project_2d(t1, o, u, v)
        b2 = _geom.project_2d(t2, o, u, v)
        inter = _geom.clip_polygon_2d(a2, b2)
        if len(inter) >= 3 and abs(_geom.polygon_area_2d(inter)) > 1e-12:
            c = inter.mean(axis=0)
            return "coplanar-overlap", [o + c[0] * u + c[1] * v]
        return None

    seg = _geom.segment_plane_clip(t1, n2, d2, eps)
    if seg is None:
        return None
    # restrict the segment to triangle t2 (2D clip in t2's plane)
    u, v = _geom.plane_basis(n2)
    o = t2[0]
    s2d = _geom.project_2d(seg, o, u, v)
    t2d = _geom.project_2d(t2, o, u, v)
    clipped = _clip_segment_to_triangle(s2d, t2d)
    if clipped is None:
        return None
    a, b = clipped
    pts3 = [o + q[0] * u + q[1] * v for q in
            (a, 0.75 * a + 0.25 * b, 0.5 * (a + b), 0.25 * a + 0.75 * b, b)]
    return "transversal", pts3


def _clip_segment_to_triangle(seg2d, tri2d):
    if _geom.polygon_area_2d(tri2d) < 0:
        tri2d = tri2d[::-1]
    a, b = seg2d[0], seg2d[1]
    t0, t1 = 0.0, 1.0
    d = b - a
    for i in range(3):
        p0, p1 = tri2d[i], tri2d[(i + 1) % 3]
        edge = p1 - p0
        num = _geom._cross2(edge, a - p0)
        den = -_geom._cross2(edge, d)
        if abs(den) < 1e-30:
            if num < 0:
                return None
            continue
        t = num / den
        if den > 0:
            t1 = min(t1, t)
        else:
            t0 = max(t0, t)
        if t0 > t1:
            return None
    return a + t0 * d, a + t1 * d


def self_intersections(p: Polyhedron) -> list[IntersectionWitness]:
    """Witnesses of genuine face-pair intersections.

    Faces are ear-clipped; triangle pairs from distinct faces are tested
    with plane-clipping predicates behind an axis-aligned bounding-box
    broad phase.  Contact within 1e-9 (relative) of a shared vertex or
    shared edge is a legitimate seam, not a witness.
    """
    tris = _triangulated_faces(p)
    scale = max(1.0, float(np.abs(p.vertices).max()))
    eps = 1e-12 * scale
    seam_tol = 1e-9 * scale

    fmin = np.array([np.min([t.min(axis=0) for t in ts], axis=0)
                     for ts in tris])
    fmax = np.array([np.max([t.max(axis=0) for t in ts], axis=0)
                     for ts in tris])

    witnesses: list[IntersectionWitness] = []
    nf = p.n_faces
    for f1 in range(nf):
        for f2 in range(f1 + 1, nf):
            if (fmin[f1] > fmax[f2] + eps).any() or \
               (fmin[f2] > fmax[f1] + eps).any():
                continue
            shared_pts, shared_segs = _shared_features(p, f1, f2)
            best = None
            for t1 in tris[f1]:
                for t2 in tris[f2]:
                    if (t1.min(axis=0) > t2.max(axis=0) + eps).any() or \
                       (t2.min(axis=0) > t1.max(axis=0) + eps).any():
                        continue
                    hit = _tri_pair_contact(t1, t2, eps)
                    if hit is None:
                        continue
                    kind, pts = hit
                    for q in pts:
                        clr = _clearance(q, shared_pts, shared_segs)
                        if clr > seam_tol and (best is None or clr > best[0]):
                            best = (clr, kind, q)
            if best is not None:
                witnesses.append(IntersectionWitness(
                    (f1, f2), np.asarray(best[2]), best[1]))
    witnesses.sort(key=lambda w: w.faces)
    return witnesses


def is_embedded(p: Polyhedron) -> bool:
    return not self_intersections(p)
