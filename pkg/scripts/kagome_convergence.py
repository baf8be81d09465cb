"""Finite-section convergence for a built-in lattice.

    python3 scripts/kagome_convergence.py --jmax 8 --out results/kagome.json
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from flatband.bloch import build_bloch, flat_bands, realize_eigenfunction, specialize
from flatband.builtins import BUILTINS, load_builtin
from flatband.syzygy import density
from flatband.truncation import row_violations, support_width, truncation_row


@dataclass
class Config:
    lattice: str = "kagome"
    jmax: int = 6
    out: Path | None = None


def run(cfg: Config) -> list[dict]:
    g = load_builtin(cfg.lattice)
    system = build_bloch(g)
    results = []
    for band in flat_bands(system):
        res = density(specialize(system, band), g.n)
        j0 = support_width([realize_eigenfunction(v.components(), g) for v in res.generators])
        print(f"{cfg.lattice}: {band.describe()} = 0, density {res.density}, j0 = {j0}")
        print(f"{'j':>3} {'dim_fs':>7} {'shubin':>7} {'avg':>10} {'err':>10} {'bound':>10} {'sec':>6}")
        rows = []
        prev = None
        for j in range(1, cfg.jmax + 1):
            t0 = time.perf_counter()
            row = truncation_row(g, band, j, j0)
            dt = time.perf_counter() - t0
            err = abs(row.avg_density - res.density)
            ok = not row_violations(row, res.density, j0, prev)
            print(f"{j:>3} {row.dim_finite_support:>7} {row.shubin_mult:>7} "
                  f"{float(row.avg_density):>10.6f} {float(err):>10.6f} {float(row.bound):>10.6f} "
                  f"{dt:>6.2f}{'' if ok else '  VIOLATION'}")
            rows.append({**row.to_json(), "seconds": round(dt, 4)})
            prev = row
        results.append({"minpoly": band.describe(), "density": str(res.density), "rows": rows})
    if cfg.out:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(json.dumps(results, indent=2) + "\n")
    return results


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lattice", default="kagome", choices=sorted(BUILTINS))
    ap.add_argument("--jmax", type=int, default=6)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    run(Config(a.lattice, a.jmax, a.out))
