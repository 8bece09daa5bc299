"""Convergence sweeps, empirical rates, and CSV reports.

run_sweep evaluates a registered scenario along ascending resolutions,
fits the empirical order as the log-log slope of error against mesh, and
emit_csv freezes the rows into the fixed CSV schema. Equal seeds reproduce
the file byte for byte.
"""

import io

from riemannlab import FixedK, RandomPick, VariantSpec, emit_csv, run_sweep

print("midpoint box sums are second order in the mesh:")
rep = run_sweep("box.sinprod.2d", VariantSpec(), [16, 32, 64, 128, 256])
for row in rep.rows:
    print(f"  m={row.m:>6}  mesh={row.mesh:.5f}  |error|={row.abs_error:.3e}")
print(f"  fitted rate: {rep.fitted_rate:.3f}")

print()
print("a combined-variant sweep of the Green check (gap column is two-sided):")
spec = VariantSpec("combined", FixedK(4), RandomPick(0), gamma=0.5)
rep = run_sweep("green.disk.rotation", spec, [32, 64, 128, 256], seed=1)
for row in rep.rows:
    print(f"  m={row.m:>6}  gap={row.gap:.3e}  deleted={row.deleted_count}")

print()
print("the same sweep rendered as CSV (byte-reproducible):")
buf = io.StringIO()
emit_csv(rep, buf)
print(buf.getvalue())
