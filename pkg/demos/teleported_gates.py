#!/usr/bin/env python3
"""The measurement-angle dictionary: which gate do four homodyne angles buy?

A two-mode gate gadget measures four cluster modes at angles theta_1..4;
the conditional evolution on the two output modes is a symplectic gate
fixed by the angles alone.  This script prints the dictionary rows for the
reference layout, shows how the same gates are reached on the virtually
completed layouts, and ends with the one negative entry: a native angle
set whose commonly stated target is not the gate it actually implements.
"""

import math

import numpy as np

from foursplit import gates
from foursplit.gates import CHI, two_mode_gate, verify_dictionary

HALF_PI = math.pi / 2


def show(title, op):
    print(f"{title}:")
    for row in np.round(op.matrix, 6):
        print("   ", row)
    print()


print("=" * 72)
print("Reference layout: same four angles, different gates")
print("=" * 72)
print(f"(chi = arctan 2 = {CHI:.6f})")
print()

rows = [
    ("identity", (HALF_PI, 0.0, HALF_PI, 0.0)),
    ("CZ(+1)", (HALF_PI, HALF_PI + CHI, HALF_PI, HALF_PI - CHI)),
    ("SWAP", (0.0, HALF_PI, HALF_PI, 0.0)),
    ("shear pair", (HALF_PI, HALF_PI - CHI, HALF_PI, HALF_PI - CHI)),
]
for name, angles in rows:
    gate = two_mode_gate("QRL", angles)
    pretty = ", ".join(f"{a:+.4f}" for a in angles)
    show(f"{name}  at angles ({pretty})", gate.op)

print("=" * 72)
print("The same gates on other layouts")
print("=" * 72)
print()
print("Three of the incomplete layouts can be virtually completed by")
print("restricting two measurement angles to be equal and post-processing")
print("outcomes.  Reference angles are rearranged per layout; the gate")
print("comes back exactly, up to a fixed sign flip on output mode 2.")
print()

cz_row = (HALF_PI, HALF_PI + CHI, HALF_PI, HALF_PI - CHI)
for vc in ("vcBSL", "vcDBSL"):
    mapped = gates.map_reference_angles(vc, cz_row)
    gate = two_mode_gate(vc, mapped)
    pretty = ", ".join(f"{a:+.4f}" for a in mapped)
    show(f"CZ(+1) on {vc}  at angles ({pretty})  [with output parity]", gate.op)

print("=" * 72)
print("The dictionary, verified")
print("=" * 72)
print()

report = verify_dictionary()
width = max(len(e["gate"]) for e in report.entries)
for entry in report.entries:
    flag = "pass" if entry["pass"] else "FAIL"
    note = f"  ({entry['note']})" if "note" in entry else ""
    print(f"  [{flag}] {entry['gate']:<{width}} on {entry['architecture']:<6} "
          f"dev {entry['deviation']:.2e}{note}")
print()
print("The single failing row is deliberate.  At the native angles")
print("(-chi, 0, 0, chi) the MSG-family gadget is often credited with a")
print("Fourier-conjugated CZ(+1).  No angle vector can produce that gate:")
print("peeling the fixed splitters off it leaves local factors with unequal")
print("diagonals, and every measurable local gate has equal diagonals.  The")
print("entry after it records the gate those angles do produce, exactly:")
print()

native = (-CHI, 0.0, 0.0, CHI)
gate = two_mode_gate("vcMSG", native)
show("actual gate at (-chi, 0, 0, chi)", gate.op)
f, fd = gates.fourier(), gates.fourier().inverse()
dressed = fd.tensor(f) @ gates.cz(-1.0) @ f.tensor(f)
print(f"deviation from [Fdag x F] CZ(-1) [F x F]: "
      f"{gate.op.max_deviation(dressed):.2e}")
