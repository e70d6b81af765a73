use std::path::PathBuf;

use soddy_core::{generate, initial_configuration, render_svg, Gasket, SvgOptions};

const SEED: [f64; 3] = [-1.0, 2.0, 2.0];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against the committed file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, svg: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, svg).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == svg, "{name} differs from the golden file");
}

#[test]
fn depth_3_matches_golden() {
    let svg = render_svg(&generate(SEED, 3).unwrap(), &SvgOptions::default()).unwrap();
    check_golden("gasket_-1_2_2_depth3.svg", &svg);
}

#[test]
fn depth_5_matches_golden() {
    let svg = render_svg(&generate(SEED, 5).unwrap(), &SvgOptions::default()).unwrap();
    check_golden("gasket_-1_2_2_depth5.svg", &svg);
}

#[test]
fn rendering_is_deterministic() {
    let a = render_svg(&generate(SEED, 4).unwrap(), &SvgOptions::default()).unwrap();
    let b = render_svg(&generate(SEED, 4).unwrap(), &SvgOptions::default()).unwrap();
    assert_eq!(a, b);
    let four = render_svg(&initial_configuration(SEED).unwrap(), &SvgOptions::default()).unwrap();
    assert_eq!(four.matches("<circle").count(), 4);
    assert_eq!(four.matches("fill=\"none\"").count(), 1);
}

fn audit_depth_5(g: &Gasket) {
    let (tangency, residual) = g.audit();
    assert!(tangency <= 1e-9, "tangency {tangency:e}");
    assert!(residual <= 1e-9, "residual {residual:e}");

    // Independent residual check per quadruple.
    for c in g.circles.iter().filter(|c| !c.parents.is_empty()) {
        let mut k: Vec<f64> = c.parents.iter().map(|&p| g.circles[p].curvature).collect();
        k.push(c.curvature);
        let sum: f64 = k.iter().sum();
        let sum_sq: f64 = k.iter().map(|v| v * v).sum();
        let k2_max = k.iter().map(|v| v * v).fold(0.0, f64::max);
        assert!((sum * sum - 2.0 * sum_sq).abs() <= 1e-9 * k2_max);
    }

    let outer = g.circles.iter().find(|c| c.curvature < 0.0).unwrap();
    for c in g.circles.iter().filter(|c| c.curvature > 0.0) {
        let dist = (c.center[0] - outer.center[0]).hypot(c.center[1] - outer.center[1]);
        assert!(dist + c.radius <= outer.radius.abs() + 1e-9);
        assert!((c.curvature - c.curvature.round()).abs() <= 1e-9, "{}", c.curvature);
    }
    for k in [3.0, 6.0, 15.0] {
        assert!(g.circles.iter().any(|c| c.curvature == k), "missing {k}");
    }
}

#[test]
fn depth_5_audits() {
    let g = generate(SEED, 5).unwrap();
    audit_depth_5(&g);
    assert_eq!(g, generate(SEED, 5).unwrap());
}

#[test]
fn other_integral_seeds() {
    for seed in [[-2.0, 3.0, 6.0], [-3.0, 5.0, 8.0], [-6.0, 11.0, 14.0]] {
        let g = generate(seed, 4).unwrap();
        let (tangency, residual) = g.audit();
        assert!(tangency <= 1e-9 && residual <= 1e-9, "{seed:?}: {tangency:e} {residual:e}");
        assert!(g.circles.iter().all(|c| (c.curvature - c.curvature.round()).abs() <= 1e-9));
    }
}
