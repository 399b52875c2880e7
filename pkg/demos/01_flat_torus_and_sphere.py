# Constant-curvature basics: the regular tetrahedron (positive defect) and
# the nine-vertex flat torus (zero defect everywhere, embedded).

import math

import ccpforge as cf

print("=== regular tetrahedron ===")
tet = cf.gen_tetrahedron()
print("V, E, F:", tet.n_vertices, tet.n_edges, tet.n_faces)
print("chi:", cf.euler_characteristic(tet), "->", cf.classify(tet))
dp = cf.defect_profile(tet)
print("defect at every vertex:", cf.format_pi_multiple(dp.mean),
      "| constant:", dp.is_constant)
print("dihedral angle:", cf.dihedral_angle(tet, 0),
      "= arccos(1/3):", math.acos(1 / 3))
print("embedded:", cf.is_embedded(tet))

print("\n=== nine-vertex flat torus ===")
torus = cf.gen_flat_torus9()
print("V, E, F:", torus.n_vertices, torus.n_edges, torus.n_faces)
print(cf.classify(torus))

# six triangles meet at every vertex and their angles sum to 2*pi
dp = cf.defect_profile(torus)
print("max |defect|:", abs(dp.per_vertex).max())

# the construction is rigid enough to pin every edge length in closed form
lab = torus.label
for a, b, formula, value in [
    ("v1", "v3", "sqrt(3 - sqrt(2))", math.sqrt(3 - math.sqrt(2))),
    ("v1", "v3,1", "sqrt(3 + 2 cos(pi/12))",
     math.sqrt(3 + 2 * math.cos(math.pi / 12))),
    ("v2", "v1", "sqrt(9/4 - 2 cos(pi/8))",
     math.sqrt(9 / 4 - 2 * math.cos(math.pi / 8))),
    ("v1", "v1,1", "sqrt(3)", math.sqrt(3)),
]:
    got = cf.edge_length(torus, torus.edge_index(lab(a), lab(b)))
    print(f"|{a} {b}| = {got:.15f}  ({formula} = {value:.15f})")

print("embedded:", cf.is_embedded(torus))
print("\nThe sum of all defects always equals 2*pi*chi; the residual is "
      "pure floating point:")
print("tetrahedron:", cf.descartes_residual(tet),
      "| torus:", cf.descartes_residual(torus))
