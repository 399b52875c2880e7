"""Low-level planar/3D geometry helpers shared by the mesh, metrics and
surgery layers.  Everything operates on float64 numpy arrays."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateFace


def newell_normal(pts: np.ndarray) -> np.ndarray:
    """Area-weighted normal of a closed polygon (right-hand rule w.r.t. the
    cycle order).  |result| = 2 * polygon area."""
    q = np.roll(pts, -1, axis=0)
    n = np.cross(pts, q).sum(axis=0)
    return n


def unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise DegenerateFace("zero-length vector")
    return v / norm


def plane_fit(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Best-fit plane of a point set.

    Returns (centroid, unit normal, max residual distance).  The normal is
    chosen to agree in direction with the Newell normal of the cycle.
    """
    c = pts.mean(axis=0)
    d = pts - c
    # smallest principal direction of the covariance
    _, _, vt = np.linalg.svd(d, full_matrices=False)
    n = vt[-1]
    nw = newell_normal(pts)
    if np.dot(n, nw) < 0:
        n = -n
    resid = float(np.abs(d @ n).max())
    return c, n, resid


def plane_basis(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal in-plane basis (u, v) with u x v = n."""
    n = unit(n)
    k = int(np.argmin(np.abs(n)))
    e = np.zeros(3)
    e[k] = 1.0
    u = unit(e - np.dot(e, n) * n)
    v = np.cross(n, u)
    return u, v


def project_2d(pts: np.ndarray, origin: np.ndarray, u: np.ndarray,
               v: np.ndarray) -> np.ndarray:
    d = pts - origin
    return np.column_stack([d @ u, d @ v])


def polygon_area_2d(p: np.ndarray) -> float:
    """Signed area; positive for counterclockwise cycles."""
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _segments_cross(a, b, c, d, eps=1e-12):
    """Proper or touching intersection of open segments ab and cd."""
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if ((o1 > eps and o2 < -eps) or (o1 < -eps and o2 > eps)) and \
       ((o3 > eps and o4 < -eps) or (o3 < -eps and o4 > eps)):
        return True
    return False


def polygon_is_simple(p: np.ndarray, eps=1e-12) -> bool:
    """Check that no two non-adjacent edges of the 2D cycle cross."""
    k = len(p)
    for i in range(k):
        a, b = p[i], p[(i + 1) % k]
        for j in range(i + 1, k):
            if j == i or (j + 1) % k == i or (i + 1) % k == j:
                continue
            c, d = p[j], p[(j + 1) % k]
            if _segments_cross(a, b, c, d, eps):
                return False
    return True


def point_in_polygon(pt: np.ndarray, poly: np.ndarray) -> bool:
    """Winding-number test for a point strictly inside a simple 2D polygon.
    Points on the boundary are reported as outside."""
    if dist_point_polygon_boundary(pt, poly) < 1e-14:
        return False
    wn = 0
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if a[1] <= pt[1]:
            if b[1] > pt[1]:
                if _cross2(b - a, pt - a) > 0:
                    wn += 1
        else:
            if b[1] <= pt[1]:
                if _cross2(b - a, pt - a) < 0:
                    wn -= 1
    return wn != 0


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dist_point_segment_2d(pt, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(pt - a))
    t = np.clip(float((pt - a) @ ab) / denom, 0.0, 1.0)
    return float(np.linalg.norm(pt - (a + t * ab)))


def dist_point_polygon_boundary(pt: np.ndarray, poly: np.ndarray) -> float:
    k = len(poly)
    return min(dist_point_segment_2d(pt, poly[i], poly[(i + 1) % k])
               for i in range(k))


def dist_point_segment_3d(pt, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(pt - a))
    t = np.clip(float((pt - a) @ ab) / denom, 0.0, 1.0)
    return float(np.linalg.norm(pt - (a + t * ab)))


def ear_clip(poly2d: np.ndarray, eps: float = 1e-12) -> list[tuple[int, int, int]]:
    """Triangulate a simple 2D polygon (reflex vertices allowed) by ear
    clipping.  Returns index triples into the input cycle."""
    k = len(poly2d)
    if k < 3:
        raise DegenerateFace("polygon with fewer than 3 vertices")
    if k == 3:
        return [(0, 1, 2)]
    idx = list(range(k))
    pts = poly2d
    ccw = polygon_area_2d(pts) > 0
    tris: list[tuple[int, int, int]] = []
    scale = max(1.0, float(np.abs(pts).max()))
    area_eps = eps * scale * scale
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 4 * k * k:
            raise DegenerateFace("ear clipping failed to converge")
        clipped = False
        m = len(idx)
        for ii in range(m):
            i0, i1, i2 = idx[(ii - 1) % m], idx[ii], idx[(ii + 1) % m]
            a, b, c = pts[i0], pts[i1], pts[i2]
            cross = _cross2(b - a, c - a)
            if not ccw:
                cross = -cross
            if cross <= area_eps:
                continue  # reflex or collinear corner
            # no other remaining vertex inside the candidate ear
            ok = True
            for jj in idx:
                if jj in (i0, i1, i2):
                    continue
                if _tri_contains(a, b, c, pts[jj], ccw, area_eps):
                    ok = False
                    break
            if ok:
                tris.append((i0, i1, i2))
                idx.pop(ii)
                clipped = True
                break
        if not clipped:
            raise DegenerateFace("no ear found; polygon may be non-simple")
    tris.append((idx[0], idx[1], idx[2]))
    return tris


def _tri_contains(a, b, c, p, ccw, eps):
    s = 1.0 if ccw else -1.0
    return (s * _cross2(b - a, p - a) >= -eps and
            s * _cross2(c - b, p - b) >= -eps and
            s * _cross2(a - c, p - c) >= -eps)


def clip_polygon_2d(subject: np.ndarray, clipper: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clip of a polygon by a convex polygon; both 2D.
    The clipper is reoriented counterclockwise internally."""
    if polygon_area_2d(clipper) < 0:
        clipper = clipper[::-1]
    out = [p for p in subject]
    k = len(clipper)
    for i in range(k):
        a, b = clipper[i], clipper[(i + 1) % k]
        if not out:
            break
        inp = out
        out = []
        for j in range(len(inp)):
            cur, nxt = inp[j], inp[(j + 1) % len(inp)]
            cur_in = _cross2(b - a, cur - a) >= 0
            nxt_in = _cross2(b - a, nxt - a) >= 0
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                d = nxt - cur
                denom = _cross2(b - a, d)
                if abs(denom) > 1e-30:
                    t = _cross2(b - a, a - cur) / denom
                    out.append(cur + t * d)
    return np.array(out) if out else np.zeros((0, 2))


def segment_plane_clip(tri: np.ndarray, n: np.ndarray, d0: float,
                       eps: float) -> np.ndarray | None:
    """Intersect a 3D triangle with the plane n.x = d0.

    Returns a 2-point segment, or None when the triangle lies strictly on
    one side.  A vertex exactly on the plane counts as a degenerate crossing.
    """
    s = tri @ n - d0
    pos = s > eps
    neg = s < -eps
    if pos.all() or neg.all():
        return None
    pts = []
    for i in range(3):
        j = (i + 1) % 3
        si, sj = s[i], s[j]
        if abs(si) <= eps:
            pts.append(tri[i])
            continue
        if (si > 0) != (sj > 0) and abs(sj) > eps:
            t = si / (si - sj)
            pts.append(tri[i] + t * (tri[j] - tri[i]))
    if len(pts) < 2:
        return None
    arr = np.array(pts)
    # keep the two farthest-apart points (duplicates collapse)
    if len(arr) > 2:
        best, pair = -1.0, (0, 1)
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                dd = float(np.linalg.norm(arr[i] - arr[j]))
                if dd > best:
                    best, pair = dd, (i, j)
        arr = arr[[pair[0], pair[1]]]
    return arr


def kabsch(src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Proper rigid motion (R, t) minimizing |R @ src + t - dst|."""
    cs, cd = src.mean(axis=0), dst.mean(axis=0)
    h = (src - cs).T @ (dst - cd)
    u, _, vt = np.linalg.svd(h)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    f = np.diag([1.0, 1.0, d])
    r = vt.T @ f @ u.T
    t = cd - r @ cs
    return r, t
