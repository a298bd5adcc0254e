use rand::{rngs::StdRng, Rng, SeedableRng};
use twoorbit::dynamics::orbit::{liouville, omega, project_to_xi};
use twoorbit::dynamics::{
    contact_volume, contact_volume_at, find_planar_orbit, flow, reeb_field, relations_from_measurements, rotation_number,
    verify_theorem_relations, RotationKind, StarBody,
};
use twoorbit::Scalar;

fn body(s: &str) -> StarBody {
    s.parse().unwrap()
}

const PERTURBED: &str = "ellipsoid:1,sqrt2;perturb:0.001,cos(2*t1-2*t2)+0.5*cos(4*t2)+0.3*sin(2*t1+2*t2)";

fn random_surface_point(b: &StarBody, rng: &mut StdRng) -> [f64; 4] {
    let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let s = 1.0 / b.value(x).sqrt();
    x.map(|v| v * s)
}

#[test]
fn reeb_field_defining_identities() {
    let mut rng = StdRng::seed_from_u64(5);
    for b in [body("ellipsoid:1,sqrt2"), body("ellipsoid:2,3"), body(PERTURBED)] {
        for _ in 0..1000 {
            let z = random_surface_point(&b, &mut rng);
            let r = reeb_field(&b, z).unwrap();
            assert!((liouville(z, r) - 1.0).abs() < 1e-10);
            let v = project_to_xi(&b, z, std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
            assert!(omega(r, v).abs() < 1e-10);
            // the field is tangent to the level set
            let g = b.gradient(z);
            assert!((0..4).map(|i| g[i] * r[i]).sum::<f64>().abs() < 1e-10);
        }
    }
}

#[test]
fn ellipsoid_flow_matches_closed_form() {
    let b = body("ellipsoid:1,sqrt2");
    let (a, bb) = (1.0f64, 2f64.sqrt());
    let z0 = [0.3, 0.1, 0.0, 0.0];
    let r1 = (0.3f64.hypot(0.1)).powi(2);
    let r2 = (1.0 - std::f64::consts::PI * r1 / a) * bb / std::f64::consts::PI;
    let z0 = [z0[0], z0[1], r2.sqrt(), 0.0];
    let t = 0.77;
    let end = flow(&b, z0, t, 1600).end;
    let rot = |x: f64, y: f64, w: f64| (x * w.cos() - y * w.sin(), x * w.sin() + y * w.cos());
    let (x1, y1) = rot(z0[0], z0[1], std::f64::consts::TAU * t / a);
    let (x2, y2) = rot(z0[2], z0[3], std::f64::consts::TAU * t / bb);
    for (got, want) in end.iter().zip([x1, y1, x2, y2]) {
        assert!((got - want).abs() < 1e-12, "{end:?}");
    }
}

#[test]
fn energy_is_conserved_to_time_100() {
    let mut rng = StdRng::seed_from_u64(9);
    for b in [body("ellipsoid:1,sqrt2"), body(PERTURBED)] {
        let z0 = random_surface_point(&b, &mut rng);
        let r = flow(&b, z0, 100.0, 100 * 2048);
        assert!(r.max_energy_drift <= 1e-9, "{}", r.max_energy_drift);
    }
}

#[test]
fn forward_then_backward_returns() {
    let mut rng = StdRng::seed_from_u64(13);
    for b in [body("ellipsoid:2,3"), body(PERTURBED)] {
        let z0 = random_surface_point(&b, &mut rng);
        let fwd = flow(&b, z0, 3.0, 6000).end;
        let back = flow(&b, fwd, -3.0, 6000).end;
        let err = (0..4).map(|i| (back[i] - z0[i]).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-8, "{err}");
    }
}

#[test]
fn planar_orbits_of_e23() {
    let b = body("ellipsoid:2,3");
    let o1 = find_planar_orbit(&b, 1).unwrap();
    assert!((o1.period.value - 2.0).abs() <= 1e-9);
    let o2 = find_planar_orbit(&b, 2).unwrap();
    assert!((o2.period.value - 3.0).abs() <= 1e-9);
    let th1 = rotation_number(&b, &o1).unwrap().theta.unwrap();
    assert!((th1.value - 2.0 / 3.0).abs() <= 1e-6);
    for o in [&o1, &o2] {
        assert!((o.monodromy_det() - 1.0).abs() <= 1e-8);
        assert!(o.return_error <= 1e-9);
        assert!(o.energy_drift <= 1e-9);
    }
}

#[test]
fn round_sphere_takes_the_degenerate_path() {
    let b = body("ellipsoid:1,1");
    let r = rotation_number(&b, &find_planar_orbit(&b, 1).unwrap()).unwrap();
    assert_eq!(r.kind, RotationKind::Degenerate);
    assert!((r.theta.unwrap().value - 1.0).abs() <= 1e-6);
}

#[test]
fn rotation_numbers_move_continuously_under_perturbation() {
    let g = "cos(2*t1-2*t2)+0.5*cos(4*t2)+0.3*sin(2*t1+2*t2)";
    let base = body("ellipsoid:1,sqrt2");
    let theta = |b: &StarBody, plane| find_planar_orbit(b, plane).unwrap().rotation.unwrap().theta.unwrap().value;
    let t0 = [theta(&base, 1), theta(&base, 2)];
    for eps in [1e-4, 3e-4, 1e-3] {
        let b = body(&format!("ellipsoid:1,sqrt2;perturb:{eps},{g}"));
        for plane in [1u8, 2] {
            let d = (theta(&b, plane) - t0[plane as usize - 1]).abs();
            assert!(d <= 10.0 * eps, "eps={eps} plane={plane} moved {d}");
        }
    }
}

#[test]
fn quadrature_is_self_consistent() {
    for b in [body("ellipsoid:1,sqrt2"), body(PERTURBED), body("ellipsoid:2,3;perturb:0.05,cos(2*t1-2*t2)")] {
        let v = contact_volume(&b).unwrap();
        let finer = contact_volume_at(&b, 96, 64).unwrap();
        assert!((finer.value - v.value).abs() <= v.radius.max(finer.radius), "{v:?} {finer:?}");
    }
    let v = contact_volume(&body(PERTURBED)).unwrap();
    assert!((v.value - 2f64.sqrt()).abs() < 1e-2);
}

#[test]
fn volume_scales_quadratically() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..5 {
        let (a, b, t) = (rng.random_range(0.5..3.0), rng.random_range(0.5..3.0), rng.random_range(0.3..4.0));
        let v = contact_volume(&body(&format!("ellipsoid:{a},{b}"))).unwrap();
        let vt = contact_volume(&body(&format!("ellipsoid:{},{}", t * a, t * b))).unwrap();
        assert!((vt.value - t * t * v.value).abs() <= vt.radius + t * t * v.radius + 1e-12 * vt.value);
        assert!((v.value - a * b).abs() <= 1e-10 * a * b);
    }
}

#[test]
fn relations_hold_on_random_ellipsoids() {
    let mut rng = StdRng::seed_from_u64(23);
    for i in 0..20 {
        let text = if i % 2 == 0 {
            let (p, d) = (rng.random_range(1..4), [2, 3, 5, 7][rng.random_range(0..4)]);
            format!("ellipsoid:{p},sqrt{d}")
        } else {
            let a: f64 = rng.random_range(0.5..2.0);
            // keep away from the resonances a/b ∈ {1/2, 1, 2}
            let b = a * [0.61, 0.83, 1.37, 1.71][rng.random_range(0..4)];
            format!("ellipsoid:{a},{b}")
        };
        let report = verify_theorem_relations(&body(&text), 1e-5).unwrap();
        assert!(report.all_pass(), "{text}: {report:?}");
    }
}

#[test]
fn mismatched_measurements_fail() {
    let vol = Scalar::approx(2f64.sqrt(), 1e-12);
    let r = relations_from_measurements(
        &vol,
        [Scalar::approx(2.0, 0.0), Scalar::approx(3.0, 0.0)],
        [Scalar::approx(2.0 / 3.0, 0.0), Scalar::approx(1.5, 0.0)],
        1e-5,
    )
    .unwrap();
    assert!(!r.all_pass());
}
