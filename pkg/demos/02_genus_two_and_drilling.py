# Raising genus while keeping the defect constant: the doubly tunnelled
# cube (genus 2, defect -pi/6) and the prism-drilling rule n = -V/chi.

import numpy as np

import ccpforge as cf

p2 = cf.gen_p2_24()
print("genus-2 base:", p2.n_vertices, "vertices,", p2.n_faces, "faces")
print(cf.classify(p2))
dp = cf.defect_profile(p2)
print("defect:", cf.format_pi_multiple(dp.mean),
      "| deviation:", dp.max_abs_deviation)
print("embedded:", cf.is_embedded(p2))

# the defect is -pi/6 for EVERY admissible parameter pair, not just the
# default: the corner angles are arctangents of fixed coordinate ratios
rng = np.random.default_rng(1)
s3 = np.sqrt(3)
for _ in range(3):
    c = rng.uniform(0.01, 1 / (4 * s3) - 0.01)
    b = rng.uniform(c + 0.01, 1 / s3 - 0.01)
    q = cf.gen_p2_24(b, c)
    print(f"  (b={b:.3f}, c={c:.3f}) -> defect "
          f"{cf.defect_profile(q).mean:+.12f}")

# drilling: a regular n-gonal prism between the top and bottom faces adds
# 2n vertices of defect -2*pi/n; n = -V/chi keeps the profile constant
n = cf.choose_prism_order(p2)
print("\nprism order -V/chi =", n)
p3 = cf.drill(p2, cf.DrillSpec(face1=0, face2=1, n=n))
print("after one drill:", p3.n_vertices, "vertices,", cf.classify(p3))
dp3 = cf.defect_profile(p3)
print("defect still:", cf.format_pi_multiple(dp3.mean),
      "| constant:", dp3.is_constant, "| embedded:", cf.is_embedded(p3))

# repeating the drill along parallel axes walks up one genus per tunnel
for g in (4, 5):
    pg = cf.gen_orientable(g)
    print(f"genus {g}: {pg.n_vertices} vertices "
          f"(= 24(g-1) = {24 * (g - 1)}), "
          f"defect {cf.format_pi_multiple(cf.defect_profile(pg).mean)}, "
          f"embedded {cf.is_embedded(pg)}")
