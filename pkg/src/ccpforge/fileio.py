"""Mesh serialization: a native JSON document that round-trips doubles
exactly, plus OBJ and binary STL export."""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from . import _geom
from .errors import IndexOutOfRange
from .mesh import (DEFAULT_TOLERANCES, MeshMetadata, Polyhedron,
                   ToleranceSet, build_polyhedron)

FORMAT_VERSION = 1


def mesh_to_document(p: Polyhedron) -> dict:
    meta = {
        "family": p.metadata.family,
        "genus": p.metadata.genus,
        "orientable": p.metadata.orientable,
        "expected_defect_radians": p.metadata.expected_defect,
        "provenance": list(p.metadata.provenance),
    }
    if p.metadata.vertex_labels:
        meta["vertex_labels"] = dict(p.metadata.vertex_labels)
    if p.metadata.seam_edges:
        meta["seam_edges"] = sorted(list(e) for e in p.metadata.seam_edges)
    doc = {
        "format_version": FORMAT_VERSION,
        "vertices": [[float(x) for x in row] for row in p.vertices],
        "faces": [list(cyc) for cyc in p.faces],
        "metadata": meta,
    }
    if p.has_multi_edges:
        doc["edge_cells"] = [[list(h) for h in cell]
                             for cell in p.edge_slots]
    return doc


def document_to_mesh(doc: dict,
                     tolerances: ToleranceSet = DEFAULT_TOLERANCES
                     ) -> Polyhedron:
    if doc.get("format_version") != FORMAT_VERSION:
        raise IndexOutOfRange(
            f"unsupported format_version {doc.get('format_version')!r}")
    m = doc.get("metadata", {})
    meta = MeshMetadata(
        family=m.get("family"),
        genus=m.get("genus"),
        orientable=m.get("orientable"),
        expected_defect=m.get("expected_defect_radians"),
        provenance=list(m.get("provenance", [])),
        vertex_labels=dict(m.get("vertex_labels", {})),
        seam_edges={tuple(e) for e in m.get("seam_edges", [])},
    )
    slots = None
    if "edge_cells" in doc:
        slots = tuple((tuple(c[0]), tuple(c[1])) for c in doc["edge_cells"])
    return build_polyhedron(np.array(doc["vertices"], float),
                            [tuple(f) for f in doc["faces"]],
                            tolerances, meta, edge_slots=slots)


def save_json(p: Polyhedron, path) -> None:
    Path(path).write_text(json.dumps(mesh_to_document(p), indent=1) + "\n")


def load_json(path, tolerances: ToleranceSet = DEFAULT_TOLERANCES
              ) -> Polyhedron:
    return document_to_mesh(json.loads(Path(path).read_text()), tolerances)


# ---------------------------------------------------------------------------
# OBJ


def write_obj(p: Polyhedron, path) -> None:
    """Wavefront OBJ with 1-based indices; polygons are preserved."""
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in p.vertices]
    lines += ["f " + " ".join(str(i + 1) for i in cyc) for cyc in p.faces]
    Path(path).write_text("\n".join(lines) + "\n")


def read_obj(path, tolerances: ToleranceSet = DEFAULT_TOLERANCES
             ) -> Polyhedron:
    """Read an OBJ file.  OBJ carries no metadata, so edges whose two faces
    are coplanar (subdivision seams, e.g. from a retiled drill) are detected
    geometrically and recorded as seams rather than rejected as flat."""
    verts, faces = [], []
    for raw in Path(path).read_text().splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append(tuple(int(tok.split("/")[0]) - 1
                               for tok in parts[1:]))
    pts = np.array(verts, float)
    meta = MeshMetadata(seam_edges=_coplanar_seams(pts, faces, tolerances))
    return build_polyhedron(pts, faces, tolerances, meta)


def _coplanar_seams(pts, faces, tolerances) -> set[tuple[int, int]]:
    """Vertex pairs shared by two coplanar faces.  Faces sharing an edge
    with parallel normals necessarily lie in one plane."""
    normals = []
    for cyc in faces:
        fp = pts[list(cyc)]
        n = _geom.newell_normal(fp)
        norm = np.linalg.norm(n)
        normals.append(n / norm if norm > 0 else n)
    incidence: dict[tuple[int, int], list[int]] = {}
    for fi, cyc in enumerate(faces):
        k = len(cyc)
        for s in range(k):
            u, v = cyc[s], cyc[(s + 1) % k]
            key = (u, v) if u < v else (v, u)
            incidence.setdefault(key, []).append(fi)
    seams = set()
    for key, fs in incidence.items():
        if len(fs) == 2 and \
           abs(abs(float(normals[fs[0]] @ normals[fs[1]])) - 1.0) < 1e-9:
            seams.add(key)
    return seams


# ---------------------------------------------------------------------------
# binary STL


def triangulate(p: Polyhedron) -> list[np.ndarray]:
    """Ear-clipped world-space triangles covering every face."""
    tris = []
    for f in range(p.n_faces):
        pts = p.face_points(f)
        c, n, _ = _geom.plane_fit(pts)
        u, v = _geom.plane_basis(n)
        p2 = _geom.project_2d(pts, c, u, v)
        for t in _geom.ear_clip(p2):
            tris.append(pts[list(t)])
    return tris


def write_stl(p: Polyhedron, path) -> None:
    """Binary little-endian STL; normals follow each triangle's winding
    (deterministic even for non-orientable meshes, where no global
    orientation exists)."""
    tris = triangulate(p)
    header = b"ccp-forge" + b" " * 71
    blob = bytearray(header)
    blob += struct.pack("<I", len(tris))
    for t in tris:
        n = np.cross(t[1] - t[0], t[2] - t[0])
        norm = np.linalg.norm(n)
        n = n / norm if norm > 0 else n
        blob += struct.pack("<3f", *n)
        for q in t:
            blob += struct.pack("<3f", *q)
        blob += struct.pack("<H", 0)
    Path(path).write_bytes(bytes(blob))


def save_mesh(p: Polyhedron, path) -> None:
    """Dispatch on extension: .json (native), .obj, .stl."""
    suffix = Path(path).suffix.lower()
    if suffix == ".obj":
        write_obj(p, path)
    elif suffix == ".stl":
        write_stl(p, path)
    else:
        save_json(p, path)


def load_mesh(path, tolerances: ToleranceSet = DEFAULT_TOLERANCES
              ) -> Polyhedron:
    """Dispatch on extension: .json (native) or .obj."""
    suffix = Path(path).suffix.lower()
    if suffix == ".obj":
        return read_obj(path, tolerances)
    if suffix == ".stl":
        raise IndexOutOfRange("STL is export-only (triangle soup loses "
                              "the face structure)")
    return load_json(path, tolerances)
