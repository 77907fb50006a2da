use minorant::bounds::{disc_certificate, power_content_budget, DiscProblem};
use minorant::harnack::{ball_center_distance, disc_pair_distance, poisson_disc_distance};
use minorant::harness::{make_log_poly, problem_for, run_verification, GridSpec};
use minorant::hcontent::{content_upper, verify_sample_cover};
use minorant::riesz::integrated_counting;
use minorant::{Dimension, Gauge, Point};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn worked_disc_example_end_to_end() {
    let sample = make_log_poly(vec![(c(0.3, 0.0), 5)]).unwrap();
    let gauge = Gauge::power(1.0, 1.0).unwrap();
    let prob = problem_for(&sample, 0.5, 0.25, 1.0, gauge).unwrap();
    let sup = prob.boundary_sup;
    assert!((sup - 5.0 * (1.3f64 / 0.3).ln()).abs() < 1e-9);

    let cert = disc_certificate(&prob).unwrap();
    assert!((cert.terms.harnack_term - 2.0).abs() < 1e-12);
    assert_eq!(cert.terms.annulus_term, 0.0);
    assert!((cert.terms.gauge_term - 2.0).abs() < 1e-12);
    assert!((cert.lower_bound.to_f64() + 4.0 * sup).abs() < 1e-12);
    assert!((power_content_budget(&prob).unwrap() - 225.0 / 2f64.ln()).abs() < 1e-9);

    let rep = run_verification(&sample, &prob, &GridSpec { radii: 30, angles: 60 }, 1e-9).unwrap();
    assert_eq!(rep.pointwise_violations, 0);
    assert!(!rep.budget_exceeded);
    for &[re, im] in &rep.exceptional_points {
        assert!(sample.eval(c(re, im)).to_f64() < cert.lower_bound.to_f64());
    }
}

#[test]
fn harnack_closed_forms_agree_with_poisson_oracle() {
    for (x, y) in [(c(0.5, 0.0), c(0.0, 0.0)), (c(0.2, -0.3), c(-0.6, 0.1)), (c(0.0, 0.9), c(0.0, -0.9))] {
        let closed = disc_pair_distance(x, y).unwrap().value;
        let oracle = poisson_disc_distance(x, y, 1e-12).unwrap().value;
        assert!((closed - oracle).abs() <= 1e-8 * closed, "{x} {y}: {closed} vs {oracle}");
    }
    let centre = ball_center_distance(Dimension::PLANE, 1.0, 0.5).unwrap().value;
    assert!((centre - 3.0).abs() < 1e-15);
}

#[test]
fn counting_of_the_sample_measure() {
    // ln|z - a| has Riesz mass 1 at a, so a zero of multiplicity m counts m times.
    let sample = make_log_poly(vec![(c(0.1, 0.0), 3), (c(0.0, 0.7), 1)]).unwrap();
    let n = integrated_counting(sample.riesz(), &Point::origin(2), 0.5, Dimension::PLANE)
        .finite()
        .unwrap();
    assert!((n - 3.0 * 5f64.ln()).abs() < 1e-12);
}

#[test]
fn segment_content_through_public_api() {
    let pts: Vec<Point> = (0..=50).map(|i| Point::new(vec![0.0, i as f64 / 50.0])).collect();
    let g = Gauge::power(1.0, 1.0).unwrap();
    for r in [0.05, 0.2, 1.0] {
        let est = content_upper(&pts, &g, r).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12, "r = {r}: {}", est.value);
        assert!(verify_sample_cover(&pts, &est.cover, r));
    }
}

#[test]
fn invalid_problems_name_their_field() {
    let g = Gauge::power(1.0, 1.0).unwrap();
    let err = DiscProblem::new(0.5, 0.6, 1.0, g, 1.0).unwrap_err();
    assert!(err.to_string().contains("problem.s0"), "{err}");
}
