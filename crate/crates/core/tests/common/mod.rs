#![allow(dead_code)]

use cvsteady_core::{EffectiveParams, Matrix, OccupationMode};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const OMEGA_M_SI: f64 = 2.0 * std::f64::consts::PI * 1e6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Resonant working point at `T` kelvin with couplings in units of κ.
pub fn working_point(big_g: f64, g: f64, temperature: f64) -> EffectiveParams {
    let p = EffectiveParams::baseline();
    p.with_couplings(big_g * p.kappa, g * p.kappa)
        .with_temperature(temperature, OMEGA_M_SI, OccupationMode::HighTemperature)
        .unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let data = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Matrix::from_vec(n, n, data).unwrap()
}

/// `M - (1 + ‖M‖_F) I`; the Frobenius norm bounds the spectral radius.
pub fn random_stable(rng: &mut impl Rng, n: usize) -> Matrix {
    let m = random_matrix(rng, n);
    let shift = 1.0 + m.frobenius_norm();
    m.sub(&Matrix::identity(n).scale(shift))
}

/// `B Bᵀ`, positive semidefinite and possibly rank deficient.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize) -> Matrix {
    let data = (0..n * rank).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let b = Matrix::from_vec(n, rank, data).unwrap();
    b.matmul(&b.transpose()).symmetrized()
}

fn embed(n: usize, block: &[(usize, usize, f64)]) -> Matrix {
    let mut s = Matrix::identity(n);
    for &(i, j, v) in block {
        s[(i, j)] = v;
    }
    s
}

pub fn rotation(n: usize, mode: usize, theta: f64) -> Matrix {
    let (c, s) = (theta.cos(), theta.sin());
    let (x, p) = (2 * mode, 2 * mode + 1);
    embed(n, &[(x, x, c), (x, p, s), (p, x, -s), (p, p, c)])
}

pub fn squeezer(n: usize, mode: usize, r: f64) -> Matrix {
    let (x, p) = (2 * mode, 2 * mode + 1);
    embed(n, &[(x, x, r.exp()), (p, p, (-r).exp())])
}

pub fn beam_splitter(n: usize, a: usize, b: usize, theta: f64) -> Matrix {
    let (c, s) = (theta.cos(), theta.sin());
    let mut entries = Vec::new();
    for k in 0..2 {
        let (i, j) = (2 * a + k, 2 * b + k);
        entries.extend([(i, i, c), (i, j, s), (j, i, -s), (j, j, c)]);
    }
    embed(n, &entries)
}

pub fn two_mode_squeezer(n: usize, a: usize, b: usize, r: f64) -> Matrix {
    let (ch, sh) = (r.cosh(), r.sinh());
    let (xa, pa, xb, pb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
    embed(
        n,
        &[
            (xa, xa, ch),
            (xa, xb, sh),
            (pa, pa, ch),
            (pa, pb, -sh),
            (xb, xa, sh),
            (xb, xb, ch),
            (pb, pa, -sh),
            (pb, pb, ch),
        ],
    )
}

/// Random two-mode symplectic matrix built from elementary gates.
pub fn random_symplectic(rng: &mut impl Rng) -> Matrix {
    let mut s = Matrix::identity(4);
    for _ in 0..4 {
        let gate = match rng.gen_range(0..4) {
            0 => rotation(4, rng.gen_range(0..2), rng.gen_range(0.0..6.3)),
            1 => squeezer(4, rng.gen_range(0..2), rng.gen_range(-0.8..0.8)),
            2 => beam_splitter(4, 0, 1, rng.gen_range(0.0..6.3)),
            _ => two_mode_squeezer(4, 0, 1, rng.gen_range(-0.8..0.8)),
        };
        s = gate.matmul(&s);
    }
    s
}

/// `S V Sᵀ` with `V` a thermal product state.
pub fn random_two_mode_cm(rng: &mut impl Rng) -> Matrix {
    let n1 = rng.gen_range(0.0..3.0);
    let n2 = rng.gen_range(0.0..3.0);
    let v = Matrix::from_diag(&[n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5]);
    let s = random_symplectic(rng);
    s.matmul(&v).matmul(&s.transpose()).symmetrized()
}

pub fn local_symplectic(rng: &mut impl Rng) -> Matrix {
    let mut s = Matrix::identity(4);
    for mode in 0..2 {
        s = rotation(4, mode, rng.gen_range(0.0..6.3)).matmul(&s);
        s = squeezer(4, mode, rng.gen_range(-1.0..1.0)).matmul(&s);
        s = rotation(4, mode, rng.gen_range(0.0..6.3)).matmul(&s);
    }
    s
}
