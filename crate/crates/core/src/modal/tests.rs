use super::*;
use num_complex::Complex64;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Smooth compactly supported bump and its radial derivatives.
fn gaussian_bump(r: f64, r0: f64, beta: f64) -> (f64, f64, f64) {
    let d = r - r0;
    let g = (-beta * d * d).exp();
    (g, -2.0 * beta * d * g, (4.0 * beta * beta * d * d - 2.0 * beta) * g)
}

#[test]
fn manufactured_solution_recovered_to_grid_accuracy() {
    // Free space 3-d: choose u, compute f = (P - k^2)u analytically,
    // solve, compare.
    let spec = ScattererSpec::free(3);
    let k = c64(3.0, 0.0);
    let ell = 2u32;
    let r_chi = 1.5;
    let grid = RadialGrid::new(&spec, r_chi, 800).unwrap();
    let l = ell as f64;
    let f_u: Vec<Complex64> = grid
        .nodes
        .iter()
        .map(|&r| {
            let (g, gp, gpp) = gaussian_bump(r, 0.7, 40.0);
            // (P - k^2)u = -u'' - (2/r)u' + l(l+1)/r^2 u - k^2 u
            let val = -gpp - 2.0 / r * gp + l * (l + 1.0) / (r * r) * g - k.norm_sqr() * g;
            Complex64::new(val, 0.0)
        })
        .collect();
    let u = apply_resolvent(&spec, k, ell, &grid, &f_u).unwrap();
    let mut max_err = 0.0f64;
    for (i, &r) in grid.nodes.iter().enumerate() {
        let (g, _, _) = gaussian_bump(r, 0.7, 40.0);
        max_err = max_err.max((u[i] - g).norm());
    }
    assert!(max_err < 0.01, "max error {max_err}");
}

#[test]
fn zero_source_gives_zero() {
    let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
    let grid = RadialGrid::new(&spec, 1.5, 200).unwrap();
    let f = vec![c64(0.0, 0.0); grid.len()];
    let u = apply_resolvent(&spec, c64(4.0, 0.0), 3, &grid, &f).unwrap();
    assert!(u.iter().all(|v| v.norm() == 0.0));
}

#[test]
fn free_modal_green_function_matches_closed_form() {
    // Discrete point source vs G(r, r') = ik j_l(k r_<) h_l(k r_>).
    let spec = ScattererSpec::free(3);
    let k = c64(4.0, 0.0);
    let ell = 1u32;
    let grid = RadialGrid::new(&spec, 1.5, 1200).unwrap();
    let i_src = grid.nodes.iter().position(|&r| (r - 0.5).abs() < grid.dr).unwrap();
    let r_src = grid.nodes[i_src];
    let mut f_u = vec![c64(0.0, 0.0); grid.len()];
    // unit point mass in the r^2 dr measure
    f_u[i_src] = Complex64::new(1.0 / (r_src * r_src * grid.dr), 0.0);
    let u = apply_resolvent(&spec, k, ell, &grid, &f_u).unwrap();

    let mut checked = 0;
    for (i, &r) in grid.nodes.iter().enumerate() {
        if (r - r_src).abs() < 0.2 || r > 1.3 {
            continue;
        }
        let (lo, hi) = (r.min(r_src), r.max(r_src));
        let j = crate::special::sph_bessel(ell, k * lo).unwrap();
        let h = crate::special::sph_hankel1(ell, k * hi).unwrap();
        let g = Complex64::i() * k * j * h;
        assert!(
            (u[i] - g).norm() / g.norm() < 2e-2,
            "r = {r}: {} vs {g}",
            u[i]
        );
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn upper_half_plane_bound_holds() {
    // ||(P - k^2)^{-1}|| <= 1/Im(k^2) for Im k^2 > 0, inherited by the
    // symmetric discretisation up to a small margin.
    let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
    for &(re, im) in &[(4.0, 0.15), (6.0, 0.4), (9.0, 0.8), (3.0, 1.0)] {
        let k = c64(re, im);
        let est = resolvent_norm(&spec, k, 1.5, default_l_max(re, 1.5), default_n_r(&spec, re, 1.5))
            .unwrap();
        let bound = 1.0 / (k * k).im;
        assert!(
            est.norm <= bound * 1.01,
            "k = {k}: norm {} vs bound {bound}",
            est.norm
        );
    }
}

#[test]
fn mode_tail_decays_beyond_turning_point() {
    let spec = ScattererSpec::free(3);
    let k = 6.0;
    let est = resolvent_norm(&spec, c64(k, 0.0), 1.5, default_l_max(k, 1.5), 200).unwrap();
    let cut = (1.3 * k * 1.5

 + 10.0) as usize;
    for w in est.per_mode[cut.min(est.per_mode.len() - 1)..].windows(2) {
        assert!(w[1].1 <= w[0].1 * (1.0 + 1e-9), "tail not decaying: {w:?}");
    }
}

#[test]
fn cutoff_monotonicity() {
    let spec = ScattererSpec::dirichlet_ball(3, 1.0);
    let k = c64(5.0, 0.0);
    let n1 = resolvent_norm(&spec, k, 1.4, default_l_max(5.0, 1.4), 400).unwrap();
    let n2 = resolvent_norm(&spec, k, 1.9, default_l_max(5.0, 1.9), 540).unwrap();
    assert!(
        n2.norm >= n1.norm * (1.0 - 1e-3),
        "enlarging the cutoff decreased the norm: {} -> {}",
        n1.norm,
        n2.norm
    );
}

#[test]
fn grid_convergence_within_two_percent() {
    let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
    let k = c64(8.0, 0.0);
    let n = default_n_r(&spec, 8.0, 1.5);
    let a = resolvent_norm(&spec, k, 1.5, default_l_max(8.0, 1.5), n).unwrap();
    let b = resolvent_norm(&spec, k, 1.5, default_l_max(8.0, 1.5), 2 * n).unwrap();
    assert!(
        (a.norm - b.norm).abs() / b.norm < 0.02,
        "{} vs {}",
        a.norm,
        b.norm
    );
}

#[test]
fn free_space_norm_decays_like_one_over_k() {
    let spec = ScattererSpec::free(3);
    let mut pts = Vec::new();
    for &k in &[4.0f64, 8.0, 16.0, 32.0] {
        let est = resolvent_norm(
            &spec,
            c64(k, 0.0),
            1.5,
            default_l_max(k, 1.5),
            default_n_r(&spec, k, 1.5),
        )
        .unwrap();
        pts.push((k.ln(), est.norm.ln()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    assert!(
        (-1.15..=-0.85).contains(&slope),
        "free-space log-log slope {slope}"
    );
}
