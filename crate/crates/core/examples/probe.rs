use hypercon_core::geometry::cayley_halfplane_c;
use hypercon_core::quadrature::DiskGrid;
use hypercon_core::wavelet::{eigenfunction_psi, BergmanTransform};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let f = eigenfunction_psi(0, 0.0).unwrap();
    let bt = BergmanTransform::new(&f, 0.0, 160).unwrap();
    let grid = DiskGrid::build(128, 256, 0.0).unwrap();
    let mut worst = (0.0f64, 0usize);
    let mut count_bad = 0;
    for idx in 0..grid.len() {
        let w = grid.node(idx);
        let z = cayley_halfplane_c(w);
        let jac = 4.0 / (Complex64::new(1.0, 0.0) - w).norm_sqr().powi(2);
        let v = bt.eval_c(z).unwrap().norm_sqr() * z.im.powf(0.0) * jac;
        let dev = (v - 1.0 / PI).abs();
        if dev > 1e-6 { count_bad += 1; }
        if dev > worst.0 { worst = (dev, idx); }
    }
    let idx = worst.1;
    let w = grid.node(idx);
    let z = cayley_halfplane_c(w);
    println!("bad nodes: {count_bad}; worst dev {:.3e} at idx {idx} (ring {}, k {}), w=({:.9},{:.9}), z=({:.6e},{:.6e})",
        worst.0, idx / 256, idx % 256, w.re, w.im, z.re, z.im);
}
