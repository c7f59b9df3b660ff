//! Imports the compiled module into an embedded interpreter and drives it
//! from actual Python code, so the conversion layer gets exercised end to end.

use bohrlab::bohrlab as pymod;
use pyo3::ffi::c_str;
use pyo3::prelude::*;

#[test]
fn python_surface_smoke() {
    pyo3::append_to_inittab!(pymod);
    Python::attach(|py| {
        let code = c_str!(
            r#"
import bohrlab as bl

plan = bl.Plan.for_dimension(1)
assert plan.boundary_count >= 8

f = bl.random_series(dim=1, degree_bound=12, decay=0.6, seed=7)
assert f.dimension == 1 and f.degree_bound == 12
v = f.eval(0.3 + 0.1j)
assert isinstance(v, complex)

g = bl.Series.from_json(f.to_json())
assert g.eval(0.25) == f.eval(0.25)

basis = bl.Basis.monomial(1)
ball = bl.Compact.ball(0.5)
m = bl.majorant(f, basis, ball, plan)
assert m >= abs(f.eval(0.5)) - 1e-9

out = bl.individual_radius(f, basis, plan)
assert 0.0 < out["radius"] <= 1.0

est = bl.kappa_upper(dim=1, budget=5, seed=7, plan=plan)
assert 0.330 <= est["upper"] <= 0.337

curve = bl.gamma_curve(exhaustion="plane", count=6, z=0.5, degree=10)
assert len(curve["values"]) == 6
assert abs(curve["values"][0] - 0.5) < 1e-6
assert curve["verdict"]["kind"] in ("DecayEvidence", "PlateauEvidence")

cert = bl.certify(basis, r=1.0, corpus=30, seed=7)
assert cert.valid and cert.absolute_constant == 2.0 and cert.radius_out == 10.0
report = bl.verify(cert, 99)
assert report["valid"] and report["checked_count"] == 30

cert2 = bl.Certificate.from_json(cert.to_json())
assert cert2.radius_out == cert.radius_out

seg = bl.Compact.segment()
ell = seg.dilate(2.0)
assert abs(ell.size_parameter - 2.0) < 1e-12
faber = bl.Basis.faber()
s5 = faber.member_sup(5, ell, plan)
assert abs(s5 - (2.0**5 + 2.0**-5)) < 1e-8
"#
        );
        if let Err(e) = py.run(code, None, None) {
            e.print(py);
            panic!("python smoke failed");
        }
    });
}
