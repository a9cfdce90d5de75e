//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use dce_core::CovMatrix2Mode;
use nalgebra::Matrix4;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn omega() -> Matrix4<f64> {
    #[rustfmt::skip]
    let m = Matrix4::new(
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, -1.0, 0.0,
    );
    m
}

/// Symplectic eigenvalues from a dense eigensolve of `Ω·V`, whose
/// spectrum is `±iν`. Returned ascending.
pub fn dense_symplectic(v: &CovMatrix2Mode) -> (f64, f64) {
    let ev = (omega() * v.entries()).complex_eigenvalues();
    let mut nus: Vec<f64> = ev.iter().map(|z| z.im.abs()).collect();
    nus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Each ν shows up twice (±iν); average the pairs.
    (0.5 * (nus[0] + nus[1]), 0.5 * (nus[2] + nus[3]))
}

fn local(r0: f64, t0: f64, r1: f64, t1: f64) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (k, (r, t)) in [(r0, t0), (r1, t1)].into_iter().enumerate() {
        let (s, c) = t.sin_cos();
        let i = 2 * k;
        m[(i, i)] = r.exp() * c;
        m[(i, i + 1)] = r.exp() * s;
        m[(i + 1, i)] = -(-r).exp() * s;
        m[(i + 1, i + 1)] = (-r).exp() * c;
    }
    m
}

fn beam_splitter(theta: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        c, 0.0, s, 0.0,
        0.0, c, 0.0, s,
        -s, 0.0, c, 0.0,
        0.0, -s, 0.0, c,
    );
    m
}

pub fn random_symplectic(rng: &mut impl Rng) -> Matrix4<f64> {
    let mut s = Matrix4::identity();
    for _ in 0..3 {
        let l = local(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        s = beam_splitter(rng.gen_range(0.0..std::f64::consts::PI)) * l * s;
    }
    s
}

/// `S·diag(ν₁,ν₁,ν₂,ν₂)·Sᵀ` together with the ν it was built from.
pub fn random_physical_state(rng: &mut impl Rng) -> (CovMatrix2Mode, f64, f64) {
    let a: f64 = 0.5 + rng.gen_range(0.0..3.0);
    let b: f64 = 0.5 + rng.gen_range(0.0..3.0);
    let s = random_symplectic(rng);
    let d = Matrix4::from_diagonal(&nalgebra::Vector4::new(a, a, b, b));
    let v = CovMatrix2Mode::new(s * d * s.transpose()).expect("symmetric by construction");
    (v, a.min(b), a.max(b))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn f_entropy(x: f64) -> f64 {
    let up = 0.5 * (x + 1.0);
    let down = 0.5 * (x - 1.0);
    let tail = if down > 0.0 { down * down.log2() } else { 0.0 };
    up * up.log2() - tail
}

/// Gaussian discord in the determinant parametrisation, on `σ = 2V`
/// (vacuum = 1), measurement on the second mode. Symplectic eigenvalues
/// come from the dense eigensolve so nothing is shared with the library.
pub fn discord_oracle(v: &CovMatrix2Mode) -> f64 {
    let sigma = v.entries() * 2.0;
    let det2 = |i: usize, j: usize| {
        sigma[(i, j)] * sigma[(i + 1, j + 1)] - sigma[(i, j + 1)] * sigma[(i + 1, j)]
    };
    let a = det2(0, 0);
    let b = det2(2, 2);
    let c = det2(0, 2);
    let d = sigma.determinant();
    let e_min = if (d - a * b).powi(2) <= (1.0 + b) * c * c * (a + d) {
        let root = (c * c + (b - 1.0) * (d - a)).max(0.0).sqrt();
        (2.0 * c * c + (b - 1.0) * (d - a) + 2.0 * c.abs() * root) / (b - 1.0).powi(2)
    } else {
        let disc = c.powi(4) + (d - a * b).powi(2) - 2.0 * c * c * (a * b + d);
        (a * b - c * c + d - disc.max(0.0).sqrt()) / (2.0 * b)
    };
    let (nm, np) = dense_symplectic(v);
    f_entropy(b.sqrt()) - f_entropy(2.0 * nm) - f_entropy(2.0 * np) + f_entropy(e_min.sqrt())
}
