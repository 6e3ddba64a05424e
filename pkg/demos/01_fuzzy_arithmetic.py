"""Tour of alpha-cut fuzzy numbers: construction, arithmetic, metrics.

Run:  python demos/01_fuzzy_arithmetic.py
"""

import fuzzyts as f

grid = f.AlphaGrid.uniform(11)

# A fuzzy number is a family of nested intervals indexed by alpha in [0, 1].
# The triangular number "about 0 with spread 1":
u = f.make_triangle(-1, 0, 1, grid)
print("triangular about 0:")
for alpha, lo, hi in u.to_records()[::5]:
    print(f"  alpha={alpha:.1f}  [{lo:+.2f}, {hi:+.2f}]")

# Trapezoids carry a whole plateau of fully-possible values.
v = f.make_trapezoid(1, 2, 3, 5, grid)
print("\ntrapezoid(1,2,3,5) at alpha=0.5:", v.cut(5))  # (1.5, 4.0)

# Addition is the level-wise interval (Minkowski) sum; scaling by a
# negative number flips the endpoints.
print("\nu + u          :", f.add(u, u).cut(0))        # support doubles
print("0.5 * u        :", f.scale(0.5, u).cut(0))
print("-1 * u         :", f.scale(-1, u).cut(0))       # symmetric: unchanged

# Ordinary interval subtraction would inflate uncertainty; the generalized
# Hukuhara difference is the inverse of addition instead, when it exists.
w = f.gh_difference(f.add(u, v), v)
print("\n(u + v) ghsub v == u?  distance:", f.dist(w, u))

# ... and it genuinely fails to exist when no nested family works:
flat = f.make_trapezoid(0, 0, 1, 1, grid)   # the crisp interval [0, 1]
try:
    f.gh_difference(flat, f.make_triangle(0, 0.5, 1, grid))
except f.GHDifferenceError as exc:
    print("expected failure:", exc)

# The metric takes the worst Hausdorff gap across levels.  Translating a
# fuzzy number moves it by exactly the translation distance:
print("\ndist(tri(0,1,2), tri(3,4,5)) =", f.dist(
    f.make_triangle(0, 1, 2, grid), f.make_triangle(3, 4, 5, grid)))

# Vectors are boxes of independent components; their distance decomposes
# component-wise, and distance to the crisp zero acts like a norm.
x = f.vector(u, f.crisp(2.0, grid))
print("norm of (u, crisp 2):", f.norm(x))
