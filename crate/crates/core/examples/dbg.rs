// debug mollifier quadrature at large radius
use dirac_resonances::potentials::*;
use dirac_resonances::quad::adaptive_gk;

fn main() {
    let v2 = ScalarPotential::lorentz(1.0, 4.0);
    let r: f64 = 395.395;
    let r_cut: f64 = 10.0;
    let lam = (1.0 + (r / r_cut) * (r / r_cut)).sqrt().powi(-4);
    println!("lam = {lam:.3e}");
    let lo = (r - 8.0 * lam).max(r_cut);
    let hi = r + 8.0 * lam;
    println!("interval [{lo}, {hi}] width {}", hi - lo);
    let f = |s: f64| {
        let w = (1.0 + s * s).sqrt().powi(-4);
        let em = (-(r - s) * (r - s) / (2.0 * lam * lam)).exp();
        let ep = (-(r + s) * (r + s) / (2.0 * lam * lam)).exp();
        s * w * (em - ep)
    };
    match adaptive_gk(f, lo, hi, 1e-12, 1e-300, &[]) {
        Ok(q) => println!("value {:.6e} err {:.3e} evals {}", q.value, q.abs_err, q.evals),
        Err(e) => println!("ERR: {e}"),
    }
}
