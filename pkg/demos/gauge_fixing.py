"""Tree gauge fixing against brute force, and where the covariant gauge overcounts."""

import math
import time

from abelian_tv import builtin, covariant_gauge_partition, spanning_tree, tv_partition

c = builtin("s1xs2")
tree = spanning_tree(c)
print(f"s1xs2 spanning tree edges {tree.edges} rooted at vertex {tree.root}")
for strategy in ("brute", "constrained", "tree"):
    t0 = time.perf_counter()
    value = tv_partition(c, 3, strategy=strategy)
    print(f"  {strategy:12} Z_3 = {value.to_text():3}  ({time.perf_counter() - t0:.4f}s)")

print("\nCovariant gauge: fix the faces shared by both 3-cells, divide by the leftover degeneracy.")
print(" N  manifold  covariant  TV  raw  gcd(N,4)")
for N in range(1, 7):
    for name in ("s3", "s1xs2", "rp3"):
        r = covariant_gauge_partition(builtin(name), N)
        print(f"{N:2}  {name:8}  {r.value.to_text():>9}  {r.tv_value.to_text():>2}  {r.raw_count:3}  "
              f"{math.gcd(N, 4) if name == 'rp3' else '-'}")
