"""Linking forms of lens spaces and the resulting BF partition functions."""

from abelian_tv import bf_partition, builtin, homology_h1, linking_form, reciprocity_factor, tv_partition

for p in range(2, 8):
    c = builtin("lens", p)
    h = homology_h1(c)
    L = linking_form(h)
    row = []
    for N in range(1, 9):
        z_bf = bf_partition(h, L, N)
        assert tv_partition(c, N) == z_bf.scale(reciprocity_factor(h, N))
        row.append(z_bf.to_text())
    print(f"lens({p}) torsion={list(h.torsion)} form={[[str(x) for x in r] for r in L.form_matrix]}  Z_BF for N=1..8: {', '.join(row)}")
