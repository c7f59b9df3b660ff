#!/usr/bin/env python3
"""Smoke test for the bohrlab extension module.

Build the module first, then run from the repository root:

    cargo build -p bohr-py
    python3 python/smoke_test.py

The script stages the compiled cdylib under the importable name
``bohrlab.so`` in a temporary directory and exercises one call from each
part of the Python surface.
"""

import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libbohrlab.so"
        for profile in ("debug", "release")
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("libbohrlab.so not found; run `cargo build -p bohr-py` first")
    stage = Path(tempfile.mkdtemp(prefix="bohrlab-"))
    shutil.copy2(lib, stage / "bohrlab.so")
    sys.path.insert(0, str(stage))
    import bohrlab

    return bohrlab


def main():
    bl = load_module()
    failures = 0

    def check(name, ok, detail):
        nonlocal failures
        if not ok:
            failures += 1
        print(f"smoke: {'PASS' if ok else 'FAIL'} - {name}: {detail}")

    check("module import", bool(bl.__version__), f"bohrlab {bl.__version__}")

    plan = bl.Plan.for_dimension(1)

    # one-variable Moebius transform with a = 0.5 has individual radius 1/(1+2a)
    f = bl.Series(bl.mobius_coefficients(0.5, 200))
    out = bl.individual_radius(f, bl.Basis.monomial(1), plan)
    check(
        "Moebius radius",
        abs(out["radius"] - 0.5) <= 2e-3,
        f"radius {out['radius']:.6f} vs 0.5",
    )

    est = bl.kappa_upper(dim=1, budget=5, seed=7, plan=plan)
    check(
        "kappa upper bound",
        0.330 <= est["upper"] <= 0.337,
        f"upper {est['upper']:.6f} from {est['witness']}",
    )

    cert = bl.certify(bl.Basis.monomial(1), r=1.0, corpus=30, seed=7)
    report = bl.verify(cert, 99)
    check(
        "certify/verify roundtrip",
        cert.valid
        and cert.absolute_constant == 2.0
        and cert.radius_out == 10.0
        and report["valid"],
        f"C={cert.absolute_constant} R={cert.radius_out} fresh slack {report['worst_slack']:.3g}",
    )

    curve = bl.gamma_curve(exhaustion="plane", count=6, z=0.5, degree=10)
    decreasing = all(
        a >= b - 1e-12 for a, b in zip(curve["values"], curve["values"][1:])
    )
    check(
        "gamma curve",
        abs(curve["values"][0] - 0.5) < 1e-6 and decreasing,
        f"first {curve['values'][0]:.6f}, verdict {curve['verdict']['kind']}",
    )

    ell = bl.Compact.segment().dilate(2.0)
    s5 = bl.Basis.faber().member_sup(5, ell, plan)
    check(
        "Faber member sup",
        abs(s5 - (2.0**5 + 2.0**-5)) < 1e-8,
        f"sup {s5:.6f} vs {2.0**5 + 2.0**-5}",
    )

    g = bl.Series.from_json(f.to_json())
    check(
        "series JSON roundtrip",
        g.eval(0.25) == f.eval(0.25),
        f"f(0.25) = {f.eval(0.25):.12g}",
    )

    if failures:
        sys.exit(f"{failures} smoke check(s) failed")
    print("smoke: all checks passed")


if __name__ == "__main__":
    main()
