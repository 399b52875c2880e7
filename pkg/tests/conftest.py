import numpy as np
import pytest

from ccpforge import build_polyhedron


def cube_data():
    verts = np.array([(x, y, z) for x in (-1, 1) for y in (-1, 1)
                      for z in (-1, 1)], float)

    def vid(x, y, z):
        return 4 * (x > 0) + 2 * (y > 0) + (z > 0)

    faces = [
        [vid(-1, -1, -1), vid(-1, 1, -1), vid(1, 1, -1), vid(1, -1, -1)],
        [vid(-1, -1, 1), vid(1, -1, 1), vid(1, 1, 1), vid(-1, 1, 1)],
        [vid(-1, -1, -1), vid(1, -1, -1), vid(1, -1, 1), vid(-1, -1, 1)],
        [vid(-1, 1, -1), vid(-1, 1, 1), vid(1, 1, 1), vid(1, 1, -1)],
        [vid(-1, -1, -1), vid(-1, -1, 1), vid(-1, 1, 1), vid(-1, 1, -1)],
        [vid(1, -1, -1), vid(1, 1, -1), vid(1, 1, 1), vid(1, -1, 1)],
    ]
    return verts, faces


@pytest.fixture
def cube():
    return build_polyhedron(*cube_data())


def random_rigid_motion(rng):
    """Proper rotation plus translation."""
    m = rng.normal(size=(3, 3))
    q, r = np.linalg.qr(m)
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    t = rng.normal(size=3) * 3.0
    return q, t
