"""Emit the data files behind the five standard plots via the CLI.

Writes CSVs under demos/output/ and prints a short profile of each.
Plotting is left to whatever tool you like, e.g.:

    python3 -c "import numpy, matplotlib.pyplot as p; \\
        d = numpy.loadtxt('demos/output/fig1.csv', delimiter=',', comments='#', skiprows=3); \\
        p.plot(d[:,0], d[:,1]); p.show()"

Run:  python3 demos/figure_data.py
"""
import pathlib

import numpy as np

from compmedia.cli import main

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

DESCRIPTIONS = {
    1: "1D wave x sin(1/x) on x in [-3, 3]",
    2: "1D wave over the (zeta, sqrt(E)) sheet",
    3: "radial wave on r in [0, 4]",
    4: "equatorial slice psi(sqrt(x^2 + y^2))",
    5: "radial wave over the (zeta, sqrt(E)) sheet",
}


def load(path):
    rows = []
    for line in path.read_text().splitlines():
        if line.startswith("#") or line[:1].isalpha():
            continue
        rows.append([float(v) for v in line.split(",")])
    return np.array(rows)


for fid, text in DESCRIPTIONS.items():
    path = OUT / f"fig{fid}.csv"
    code = main(["figure", "--id", str(fid), "--output", str(path)])
    assert code == 0, f"figure {fid} failed"
    data = load(path)
    psi = data[:, -1]
    print(f"fig{fid}: {text}")
    print(f"      {data.shape[0]} rows -> {path}")
    print(f"      psi range [{psi.min():+.6f}, {psi.max():+.6f}], "
          f"{np.sum(np.abs(np.diff(np.signbit(psi))))} sign changes")
print()
print("Rerunning any command reproduces its file byte for byte; the")
print("'#' header lines carry the exact command and version that made it.")
