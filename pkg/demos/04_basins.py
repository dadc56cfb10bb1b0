"""Map the basins of attraction over the simplex.

Each grid cell strictly inside the triangle is integrated forward until
it settles on an attractor; the resulting label field partitions the
simplex into basins separated by the saddle manifolds.  The ASCII
rendering below uses one character per cell (. for cells outside the
margin).
"""

from flagricci import basin_map, family_from_id


def show(family, resolution=32):
    grid = basin_map(family, resolution)
    print(f"{family.group_name} / {family.isotropy_name}"
          f"  ({resolution}x{resolution} cells)")
    for iy in range(resolution - 1, -1, -1):
        row = grid.labels[iy]
        line = "".join((lab or ".")[0] if lab != "Undetermined" else "?"
                       for lab in (row[ix] for ix in range(resolution)))
        print("  " + line)
    counts = grid.label_counts()
    total = sum(counts.values())
    for lab in sorted(counts):
        print(f"  {lab}: {counts[lab]} cells ({100 * counts[lab] / total:.1f}%)")
    print(f"  undetermined fraction: {grid.undetermined_fraction:.4f}")
    print()


if __name__ == "__main__":
    show(family_from_id("su", (2, 1, 1)))
    show(family_from_id("g2u2"))
