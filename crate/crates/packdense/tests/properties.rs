//! Invariant and oracle tests across all modules.

mod common;

use common::{circle_triangle_area, incenter, tangency_triangle};
use packdense::packing::{build_f53, build_ft, build_hexagonal, TorusPacking, CONTACT_TOL};
use packdense::plot::{emit_csv, emit_plot_svg, sample_curve, CurveName, CurveSpec};
use packdense::symmetry::{self, IsometryKind, WallpaperGroup};
use packdense::triangle::{
    self, density_angles, density_radii, florian_bound, AngleTriple, RadiusTriple, HEX_DENSITY,
};
use packdense::{f53, ft, roots};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_cafe)
}

fn random_radii(rng: &mut ChaCha8Rng) -> RadiusTriple {
    let r = |rng: &mut ChaCha8Rng| rng.gen_range(0.05f64..1.0);
    RadiusTriple::new(r(rng), r(rng), r(rng)).unwrap()
}

// ---- triangle-local densities ----

#[test]
fn sector_area_matches_clipped_disc_area() {
    // the covered sector at each corner equals the geometric intersection
    // of the corner disc with the triangle in the incircle-1 normalization
    let theta: f64 = 0.5;
    let angles = AngleTriple::new(theta, 1.2, PI - theta - 1.2).unwrap();
    let radii: Vec<f64> = angles.angles().iter().map(|t| t.tan()).collect();
    let tri = tangency_triangle(radii[0], radii[1], radii[2]);
    let a = circle_triangle_area(tri[0], radii[0], tri);
    assert!(
        (a - triangle::sector_area(theta).unwrap()).abs() < 1e-9,
        "sector {} vs clipped {}",
        triangle::sector_area(theta).unwrap(),
        a
    );
}

#[test]
fn density_matches_geometric_quadrature() {
    let mut rng = rng();
    for _ in 0..50 {
        let radii = random_radii(&mut rng);
        let [r1, r2, r3] = radii.radii();
        let tri = tangency_triangle(r1, r2, r3);
        let covered: f64 = (0..3)
            .map(|i| circle_triangle_area(tri[i], radii.radii()[i], tri))
            .sum();
        let tri_area = triangle::triangle_area_heron(&radii);
        let expect = covered / tri_area;
        let angles = triangle::angles_from_radii(&radii).unwrap();
        assert!((density_angles(&angles) - expect).abs() < 1e-6);
        assert!((density_radii(&radii) - expect).abs() < 1e-6);
    }
}

#[test]
fn incircle_against_classical_inradius() {
    // the inradius of the side-5,6,7 triangle is Heron area / semiperimeter
    let radii = RadiusTriple::new(2.0, 3.0, 4.0).unwrap();
    let (a, b, c) = (5.0f64, 6.0, 7.0);
    let s = (a + b + c) / 2.0;
    let area = (s * (s - a) * (s - b) * (s - c)).sqrt();
    assert!((triangle::incircle_radius(&radii) - area / s).abs() < 1e-12);
    assert!((triangle::triangle_area_heron(&radii) - area).abs() < 1e-12);
    // geometric cross-check: the incenter's height over the base edge
    let tri = tangency_triangle(2.0, 3.0, 4.0);
    let ic = incenter(tri);
    assert!((ic[1] - triangle::incircle_radius(&radii)).abs() < 1e-12);
}

#[test]
fn cross_form_identity_bulk() {
    let mut rng = rng();
    for _ in 0..10_000 {
        let radii = random_radii(&mut rng);
        let via_angles = density_angles(&triangle::angles_from_radii(&radii).unwrap());
        assert!((density_radii(&radii) - via_angles).abs() < 1e-10);
    }
}

#[test]
fn florian_identity_bulk() {
    let mut rng = rng();
    for _ in 0..1_000 {
        let q = rng.gen_range(1e-3f64..=1.0);
        let direct = density_radii(&RadiusTriple::new(1.0, q, q).unwrap());
        assert!((florian_bound(q).unwrap() - direct).abs() < 1e-12);
    }
}

#[test]
fn florian_strictly_decreasing() {
    let n = 10_000;
    let mut prev = f64::INFINITY;
    for k in 0..=n {
        let q = 0.01 + (1.0 - 0.01) * k as f64 / n as f64;
        let v = florian_bound(q).unwrap();
        assert!(v < prev, "not decreasing at q = {q}");
        prev = v;
    }
}

#[test]
fn density_ordering_chain() {
    // delta_r(r1, r2, 1) <= delta_r(r1, r1, 1) for r1 <= r2 <= 1
    let mut rng = rng();
    for _ in 0..10_000 {
        let r1 = rng.gen_range(0.05f64..1.0);
        let r2 = rng.gen_range(r1..=1.0);
        let mid = density_radii(&RadiusTriple::new(r1, r2, 1.0).unwrap());
        let end = density_radii(&RadiusTriple::new(r1, r1, 1.0).unwrap());
        assert!(mid <= end + 1e-12, "violated at ({r1}, {r2})");
    }
}

proptest! {
    #[test]
    fn density_scale_invariant(r1 in 0.05f64..1.0, r2 in 0.05f64..1.0, r3 in 0.05f64..1.0, c in 0.1f64..10.0) {
        let base = density_radii(&RadiusTriple::new(r1, r2, r3).unwrap());
        let scaled = density_radii(&RadiusTriple::new(c * r1, c * r2, c * r3).unwrap());
        prop_assert!((base - scaled).abs() < 1e-12);
    }

    #[test]
    fn density_permutation_invariant(r1 in 0.05f64..1.0, r2 in 0.05f64..1.0, r3 in 0.05f64..1.0) {
        let base = density_radii(&RadiusTriple::new(r1, r2, r3).unwrap());
        for p in [[r1, r3, r2], [r2, r1, r3], [r2, r3, r1], [r3, r1, r2], [r3, r2, r1]] {
            let v = density_radii(&RadiusTriple::new(p[0], p[1], p[2]).unwrap());
            prop_assert!((base - v).abs() < 1e-12);
        }
    }
}

#[test]
fn min_density_grid_and_argmin() {
    let rep = triangle::check_min_density(200);
    assert!(rep.min_value >= HEX_DENSITY - 1e-12);
    for t in rep.argmin {
        assert!((t - PI / 3.0).abs() <= rep.grid_step + 1e-12);
    }
    // strictly above the minimum away from the equilateral point
    let off = AngleTriple::new(PI / 3.0 + 0.1, PI / 3.0 - 0.05, PI / 3.0 - 0.05).unwrap();
    assert!(density_angles(&off) > HEX_DENSITY + 1e-6);
}

#[test]
fn sector_area_concave() {
    // central finite differences of the analytic first derivative
    let h = 1e-5;
    let n = 1000;
    for k in 1..=n {
        let theta = FRAC_PI_2 * k as f64 / (n + 1) as f64;
        let dd = (triangle::sector_area_derivative(theta + h).unwrap()
            - triangle::sector_area_derivative(theta - h).unwrap())
            / (2.0 * h);
        assert!(dd < 0.0, "second derivative {dd} at theta = {theta}");
    }
}

#[test]
fn two_size_small_disc_fits_interstice() {
    // (3,6): the small disc radius equals the interstice of three tangent
    // unit discs, whose centers sit 2/sqrt(3) from their centroid
    let sols = triangle::enumerate_two_size();
    let s36 = sols.iter().find(|s| s.n == 3).unwrap();
    let tri = tangency_triangle(1.0, 1.0, 1.0);
    let centroid = [
        (tri[0][0] + tri[1][0] + tri[2][0]) / 3.0,
        (tri[0][1] + tri[1][1] + tri[2][1]) / 3.0,
    ];
    let dist = ((tri[0][0] - centroid[0]).powi(2) + (tri[0][1] - centroid[1]).powi(2)).sqrt();
    assert!((s36.ratio - (dist - 1.0)).abs() < 1e-12);
    for s in &sols {
        assert!((s.alpha - PI / s.n as f64).abs() < 1e-15);
        assert!(s.ratio > 0.0 && s.ratio <= 1.0);
    }
}

#[test]
fn intermediate_curve_endpoints_are_local_maxima() {
    let r0 = 0.4;
    let n = 1000;
    let vals: Vec<f64> = (0..=n)
        .map(|k| {
            let r = r0 + (1.0 - r0) * k as f64 / n as f64;
            triangle::intermediate_density_curve(r0, r).unwrap()
        })
        .collect();
    assert!(vals[0] > vals[1]);
    assert!(vals[n] > vals[n - 1]);
    // large-small-small end dominates globally
    assert!(vals[0] > vals[n]);
    assert!(vals.iter().all(|&v| v > 0.0 && v < 1.0));
}

// ---- two-disc family ----

#[test]
fn ft_forms_agree_on_grid() {
    let q1 = roots::q1();
    for k in 0..1000 {
        let q = q1 + (1.0 - q1) * k as f64 / 999.0;
        let a = ft::ft_density_closed(q).unwrap();
        let b = ft::ft_density_geometric(q).unwrap();
        assert!((a - b).abs() < 1e-10, "q = {q}");
    }
}

#[test]
fn ft_monotone_and_sign_pattern() {
    let q1 = roots::q1();
    let q2 = 0.6457072159165643;
    let mut prev = f64::INFINITY;
    for k in 0..1000 {
        let q = q1 + (q2 - q1) * k as f64 / 999.0;
        let v = ft::ft_density_closed(q).unwrap();
        assert!(v < prev);
        prev = v;
        if q < q2 - 1e-9 {
            assert!(v > HEX_DENSITY);
        }
    }
    for k in 1..100 {
        let q = q2 + (1.0 - q2) * k as f64 / 100.0;
        assert!(ft::ft_density_closed(q).unwrap() < HEX_DENSITY, "q = {q}");
    }
}

#[test]
fn ft_tangency_residuals_everywhere() {
    let q1 = roots::q1();
    for k in 0..200 {
        let q = q1 + (1.0 - q1) * k as f64 / 199.0;
        let g = ft::ft_geometry(q).unwrap();
        assert!(g.residual_unit_unit().abs() < 1e-10);
        assert!(g.residual_unit_small().abs() < 1e-10);
        if k > 0 {
            assert!(g.y >= 1.0 - 1e-9, "overlap at q = {q}");
        }
    }
}

// ---- three-disc family ----

#[test]
fn f53_contact_residual_on_grid() {
    let q53 = roots::q53();
    for k in 0..1000 {
        let q = q53 + (1.0 - q53) * k as f64 / 999.0;
        let p = f53::solve_p(q).unwrap();
        assert!(f53::medium_contact_residual(p, q).abs() < 1e-12, "q = {q}");
        assert!(q <= p && p <= 1.0);
    }
}

#[test]
fn f53_forms_agree_on_grid() {
    let q53 = roots::q53();
    for k in 0..1000 {
        let q = q53 + (1.0 - q53) * k as f64 / 999.0;
        let a = f53::f53_density_assembled(q).unwrap();
        let b = f53::f53_density_closed(q).unwrap();
        assert!((a - b).abs() < 1e-9, "q = {q}: {a} vs {b}");
    }
}

#[test]
fn f53_monotone_decrease_to_qft() {
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    let mut prev = f64::INFINITY;
    for k in 0..1000 {
        let q = q53 + (qft - q53) * k as f64 / 999.0;
        let v = f53::f53_density_closed(q).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn f53_geometry_identity_and_validity() {
    let mut rng = rng();
    for _ in 0..200 {
        let r1 = rng.gen_range(0.3f64..1.5);
        let r2 = rng.gen_range(0.3f64..1.5);
        let r3 = rng.gen_range(0.3f64..1.5);
        // impossible geometry (Err) is a legal outcome for random radii
        if let Ok(g) = f53::f53_geometry(r1, r2, r3) {
            let s = r1 + r3;
            assert!((g.x * g.x + g.y * g.y - s * s).abs() < 1e-10);
            assert!((g.d * g.d - ((g.x + s).powi(2) + g.y * g.y)).abs() < 1e-9);
        }
    }
}

#[test]
fn improvement_windows() {
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    let q0 = 0.6404568491758599;
    let d53 = f53::unperturbed_density();
    // perturbed three-disc beats the two-disc guess on (q53, qft]
    for k in 1..=100 {
        let q = q53 + (qft - q53) * k as f64 / 100.0;
        let delta = f53::f53_density_closed(q).unwrap();
        let dft = ft::ft_density_closed(q).unwrap();
        assert!(delta >= dft - 1e-10, "q = {q}");
    }
    // the constant base-packing guess beats the two-disc curve on (q0, q53]
    for k in 1..=100 {
        let q = q0 + (q53 - q0) * k as f64 / 100.0;
        assert!(d53 >= ft::ft_density_closed(q).unwrap() - 1e-10, "q = {q}");
    }
}

#[test]
fn density_sandwich() {
    // pi/sqrt(12) < Delta(q) <= s(q) on [q53, qft)
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    for k in 0..100 {
        let q = q53 + (qft - q53) * k as f64 / 100.0;
        let delta = f53::f53_density_closed(q).unwrap();
        assert!(delta > HEX_DENSITY);
        assert!(delta <= florian_bound(q).unwrap());
    }
}

// ---- certified constants ----

#[test]
fn critical_ratio_table() {
    let table = roots::critical_ratios().unwrap();
    assert_eq!(table.len(), 6);
    let values: Vec<f64> = table.iter().map(|r| r.value).collect();
    for w in values.windows(2) {
        assert!(w[0] < w[1]);
    }
    for r in &table {
        assert!(r.certificate_ok);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12 + 1e-15);
    }
    // q0 ties the two families together
    let q0 = table[1].value;
    assert!((ft::ft_density_closed(q0).unwrap() - f53::unperturbed_density()).abs() < 1e-10);
}

#[test]
fn qb_against_extended_precision() {
    // reference value computed with 50-digit arithmetic
    assert!((f53::qb_closed_form() - 0.742_990_963_266_319_8).abs() < 1e-12);
    let table = roots::critical_ratios().unwrap();
    let qb = table[5].value;
    let qft = table[4].value;
    assert!(qb < 1.0 && qb > qft);
}

#[test]
fn certificates_survive_paper_polynomials() {
    // degree-15 certificate has the same root as the defining equation
    let p15 = match &roots::critical_ratios().unwrap()[2].certificate {
        roots::Certificate::Polynomial(p) => p.clone(),
        _ => panic!("q2 carries a polynomial certificate"),
    };
    let root = roots::bisect(|x| p15.eval_compensated(x), 0.64, 0.65, 1e-13).unwrap();
    assert!((root - 0.6457072159165643).abs() < 1e-11);
}

// ---- packings ----

#[test]
fn constructed_density_consistency() {
    let q1 = roots::q1();
    for k in 0..100 {
        let q = q1 + (1.0 - q1) * k as f64 / 99.0;
        let p = build_ft(q).unwrap();
        let rep = p.verify();
        assert!(rep.ok);
        assert!((rep.density - ft::ft_density_closed(q).unwrap()).abs() < 1e-9);
    }
    let q53 = roots::q53();
    for k in 0..100 {
        let q = q53 + (1.0 - 1e-9 - q53) * k as f64 / 99.0;
        let p = build_f53(q).unwrap();
        let rep = p.verify();
        assert!(rep.ok);
        assert!((rep.density - f53::f53_density_closed(q).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn triangulated_exactly_at_base_points() {
    assert!(
        build_ft(roots::q1())
            .unwrap()
            .contact_graph(CONTACT_TOL)
            .triangulated
    );
    assert!(
        build_f53(roots::q53())
            .unwrap()
            .contact_graph(CONTACT_TOL)
            .triangulated
    );
    for q in [0.640, 0.6457, 0.65] {
        assert!(!build_ft(q).unwrap().contact_graph(CONTACT_TOL).triangulated);
    }
    for q in [0.6530, 0.6585, 0.68] {
        assert!(
            !build_f53(q)
                .unwrap()
                .contact_graph(CONTACT_TOL)
                .triangulated
        );
    }
}

#[test]
fn triangulated_two_radius_packings_beat_hexagonal() {
    // any constructed triangulated packing with >= 2 radii is denser than
    // the hexagonal packing
    for p in [
        build_ft(roots::q1()).unwrap(),
        build_f53(roots::q53()).unwrap(),
    ] {
        let g = p.contact_graph(CONTACT_TOL);
        assert!(g.triangulated);
        assert!(p.verify().density > HEX_DENSITY);
    }
}

#[test]
fn hexagonal_euler_census() {
    let g = build_hexagonal().contact_graph(CONTACT_TOL);
    let v = 1isize;
    let e = g.edges.len() as isize;
    let f: isize = g.face_sizes.values().map(|&c| c as isize).sum();
    assert_eq!(v - e + f, 0);
    assert_eq!(e, 3);
}

#[test]
fn json_round_trip_all_constructions() {
    for p in [
        build_hexagonal(),
        build_ft(roots::q1()).unwrap(),
        build_ft(0.65).unwrap(),
        build_f53(roots::q53()).unwrap(),
        build_f53(0.655).unwrap(),
    ] {
        let back = TorusPacking::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
        // bit-exact
        for (a, b) in p.disks.iter().zip(&back.disks) {
            assert_eq!(a.c[0].to_bits(), b.c[0].to_bits());
            assert_eq!(a.c[1].to_bits(), b.c[1].to_bits());
            assert_eq!(a.r.to_bits(), b.r.to_bits());
        }
    }
}

// ---- symmetry ----

#[test]
fn label_respect() {
    for p in [build_ft(0.645).unwrap(), build_f53(0.655).unwrap()] {
        let ops = symmetry::find_symmetries(&p);
        for op in &ops {
            for d in &p.disks {
                let img = [
                    op.linear[0][0] * d.c[0] + op.linear[0][1] * d.c[1] + op.translation[0],
                    op.linear[1][0] * d.c[0] + op.linear[1][1] * d.c[1] + op.translation[1],
                ];
                let hit = p.disks.iter().any(|e| {
                    let m = p.min_image(img, e.c);
                    (m[0] * m[0] + m[1] * m[1]).sqrt() < 1e-6
                        && (d.r - e.r).abs() < 1e-9
                        && d.label == e.label
                });
                assert!(hit, "op breaks labels");
            }
        }
    }
}

#[test]
fn perturbation_stability_of_groups() {
    let q1 = roots::q1();
    let q2 = 0.6457072159165643;
    for k in 1..=10 {
        let q = q1 + (q2 - q1) * k as f64 / 10.0;
        assert_eq!(
            symmetry::classify(&build_ft(q).unwrap()).unwrap(),
            WallpaperGroup::cmm,
            "q = {q}"
        );
    }
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    for k in 1..=10 {
        let q = q53 + (qft - q53) * k as f64 / 10.0;
        assert_eq!(
            symmetry::classify(&build_f53(q).unwrap()).unwrap(),
            WallpaperGroup::pgg,
            "q = {q}"
        );
    }
}

#[test]
fn hexagonal_symmetries_include_sixfold_and_mirrors() {
    let ops = symmetry::find_symmetries(&build_hexagonal());
    assert!(ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Rotation { order: 6, .. })));
    assert!(ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Reflection { .. })));
}

#[test]
fn f53_symmetries_are_glides_and_twofolds() {
    let ops = symmetry::find_symmetries(&build_f53(roots::q53()).unwrap());
    assert!(ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Glide { .. })));
    assert!(ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Rotation { order: 2, .. })));
    assert!(!ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Reflection { .. })));
    assert!(!ops
        .iter()
        .any(|o| matches!(o.kind, IsometryKind::Rotation { order: 3, .. })));
}

#[test]
fn ft_symmetries_have_two_mirror_families_and_offaxis_twofold() {
    let p = build_ft(roots::q1()).unwrap();
    let ops = symmetry::find_symmetries(&p);
    let mut dirs: Vec<f64> = Vec::new();
    for op in &ops {
        if let IsometryKind::Reflection { axis_dir, .. } = op.kind {
            let th = axis_dir[1].atan2(axis_dir[0]).rem_euclid(PI);
            if !dirs.iter().any(|&x| (x - th).abs() < 1e-6) {
                dirs.push(th);
            }
        }
    }
    assert_eq!(dirs.len(), 2);
    assert_eq!(symmetry::classify(&p).unwrap(), WallpaperGroup::cmm);
}

// ---- plotting ----

#[test]
fn ft_curve_endpoints() {
    let q1 = roots::q1();
    let q2 = 0.6457072159165643;
    let pts = sample_curve(&CurveSpec::new(CurveName::Ft, q1, q2, 200).unwrap()).unwrap();
    assert!((pts[0].1 - 0.9106832003).abs() < 1e-9);
    assert!((pts.last().unwrap().1 - HEX_DENSITY).abs() < 1e-8);
}

#[test]
fn delta53_curve_endpoints() {
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    let pts = sample_curve(&CurveSpec::new(CurveName::Delta53, q53, qft, 200).unwrap()).unwrap();
    assert!((pts[0].1 - 0.9093065016).abs() < 1e-9);
    assert!((pts.last().unwrap().1 - HEX_DENSITY).abs() < 1e-8);
}

#[test]
fn figure_ordering_reproduction() {
    // the bound strictly dominates both family curves everywhere sampled,
    // and the best available guess never drops below the hexagonal density:
    // the three-disc guess is the constant base density on (q0, q53] and
    // the perturbed-family curve above q53
    let q1 = roots::q1();
    let q0 = 0.6404568491758599;
    let q53 = roots::q53();
    let qft = 0.6585340820538465;
    let d53 = f53::unperturbed_density();
    for k in 0..=500 {
        let q = q1 + (qft - q1) * k as f64 / 500.0;
        let s = florian_bound(q).unwrap();
        let dft = ft::ft_density_closed(q).unwrap();
        assert!(dft < s);
        let delta = if q > q0 && q <= q53 {
            Some(d53)
        } else if q > q53 {
            Some(f53::f53_density_closed(q).unwrap())
        } else {
            None
        };
        if let Some(delta) = delta {
            assert!(delta < s);
        }
        let best = delta.map_or(dft, |d| d.max(dft));
        assert!(HEX_DENSITY <= best + 1e-12, "q = {q}");
    }
}

#[test]
fn crossing_point_matches() {
    // the two-disc curve meets the base three-disc density at q0
    let table = roots::critical_ratios().unwrap();
    let q0 = table[1].value;
    assert!((ft::ft_density_closed(q0).unwrap() - f53::unperturbed_density()).abs() < 1e-9);
}

#[test]
fn emitters_are_deterministic() {
    let pts = sample_curve(&CurveSpec::new(CurveName::Florian, 0.6, 0.7, 100).unwrap()).unwrap();
    assert_eq!(emit_csv(&pts), emit_csv(&pts));
    let curves = vec![("florian".to_string(), pts)];
    let a = emit_plot_svg(&curves, &[("q1".into(), roots::q1())]);
    let b = emit_plot_svg(&curves, &[("q1".into(), roots::q1())]);
    assert_eq!(a, b);
}
