"""Reproduce the hand-computed expectation values on the three small builtin complexes."""

from abelian_tv import builtin, tv_expectation, tv_partition

print("Three-sphere: a primal loop linked once with a dual loop picks up one unit of phase.")
s3 = builtin("s3")
for N in range(1, 6):
    print(f"  N={N}:", tv_expectation(s3, N, (1, 0), (0, 1, 0)).to_text())

print("\nS1 x S2: the partition function equals the level; a free primal loop alone vanishes for N > 1.")
s1xs2 = builtin("s1xs2")
for N in range(1, 5):
    z = tv_partition(s1xs2, N)
    linked = tv_expectation(s1xs2, N, (1, 1, 1, 0, 0), (1, -1, 1, 1))
    free = tv_expectation(s1xs2, N, (0, 0, 0, 1, 0))
    print(f"  N={N}: Z={z.to_text()}  linked={linked.to_text()}  free loop={free.to_text()}")

print("\nProjective space: even levels kill every torsion observable.")
rp3 = builtin("rp3")
for N in range(1, 7):
    a = tv_expectation(rp3, N, (1, 0, 0, 1), (0, 0, 1, 1))
    b = tv_expectation(rp3, N, (1, 0, 0, 1), (0, 0, 1, 0))
    print(f"  N={N}: {a.to_text():>16}   {b.to_text()}")
