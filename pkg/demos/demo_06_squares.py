"""
The triada of squares
=====================

The coin probabilities place three points on the sides of an equilateral
triangle. Squares on the sides of the inner triangle have a total area
that is at most 6 for classical coins and at most 3 for quantum states.
SVG figures are written to ``demo_output/``.
"""
from pathlib import Path

import numpy as np

from coinrep import suprematism as sup

p = np.array([0.6, 0.7, 0.8])
tri = sup.triada(p)
print("sides:", tri.sides, " areas:", tri.areas, " total:", tri.total)
print("closed form:", float(sup.area_closed_form(p)))

classical = sup.max_area("classical")
quantum = sup.max_area("quantum")
print(f"classical max {classical.s_max:.9f} at {classical.argmax}")
print(f"quantum max   {quantum.s_max:.9f} at {quantum.argmax}")
print(f"ratio {classical.s_max / quantum.s_max:.9f}")

out = Path("demo_output")
out.mkdir(exist_ok=True)
for layout in sup.LAYOUTS:
    path = out / f"squares_{layout}.svg"
    path.write_text(sup.render_svg(p, sup.RenderSpec(layout=layout)))
    print("wrote", path)
