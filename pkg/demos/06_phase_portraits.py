"""Render phase portraits and basin heat maps as SVG files.

Writes one portrait (equilibria markers, separatrices, sample orbits)
and one basin heat map per family into demos/out/.  Circles mark
attractors, squares repellers, diamonds saddles; dashed red curves are
the saddle manifolds bounding the basins.
"""

import os

from flagricci import basin_map, family_from_id
from flagricci.render import basins_svg, portrait_svg


def render(family, tag, resolution=96):
    out_dir = os.path.join(os.path.dirname(__file__), "out")
    os.makedirs(out_dir, exist_ok=True)

    path = os.path.join(out_dir, f"portrait_{tag}.svg")
    with open(path, "w") as fh:
        fh.write(portrait_svg(family))
    print(f"wrote {path}")

    path = os.path.join(out_dir, f"basins_{tag}.svg")
    with open(path, "w") as fh:
        fh.write(basins_svg(basin_map(family, resolution)))
    print(f"wrote {path}")


if __name__ == "__main__":
    render(family_from_id("su", (2, 1, 1)), "su211")
    render(family_from_id("so", (6,)), "so12")
    render(family_from_id("g2u2"), "g2")
