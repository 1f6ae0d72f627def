// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with diagonal Padé approximants,
//! order selected from the 1-norm thresholds θ₃…θ₁₃.

use crate::linalg::{solve, ComplexMatrix};

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1_512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3_960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA3: f64 = 1.495_585_217_958_292e-2;
const THETA5: f64 = 2.539_398_330_063_23e-1;
const THETA7: f64 = 9.504_178_996_162_932e-1;
const THETA9: f64 = 2.097_847_961_257_068;
const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential e^A. Always defined; `expm(0) = I` exactly.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square(), "expm requires a square matrix");
    let norm = a.one_norm();

    if norm <= THETA9 {
        let a2 = a.matmul(a);
        let (u, v) = if norm <= THETA3 {
            pade_odd(a, &[&a2], &PADE3)
        } else if norm <= THETA5 {
            let a4 = a2.matmul(&a2);
            pade_odd(a, &[&a2, &a4], &PADE5)
        } else if norm <= THETA7 {
            let a4 = a2.matmul(&a2);
            let a6 = a2.matmul(&a4);
            pade_odd(a, &[&a2, &a4, &a6], &PADE7)
        } else {
            let a4 = a2.matmul(&a2);
            let a6 = a2.matmul(&a4);
            let a8 = a2.matmul(&a6);
            pade_odd(a, &[&a2, &a4, &a6, &a8], &PADE9)
        };
        return pade_solve(&u, &v);
    }

    // Scale so the 1-norm drops below θ₁₃, apply Padé(13), square back up.
    let s = ((norm / THETA13).log2().ceil() as u32).max(1);
    let scaled = a.scale_re(0.5f64.powi(s as i32));
    let mut x = pade13(&scaled);
    for _ in 0..s {
        x = x.matmul(&x);
    }
    x
}

/// U = A·(odd terms), V = even terms for the m ∈ {3,5,7,9} approximants.
fn pade_odd(a: &ComplexMatrix, powers: &[&ComplexMatrix], b: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let eye = ComplexMatrix::identity(n);
    let mut odd = eye.scale_re(b[1]);
    let mut even = eye.scale_re(b[0]);
    for (k, p) in powers.iter().enumerate() {
        odd = &odd + &p.scale_re(b[2 * k + 3]);
        even = &even + &p.scale_re(b[2 * k + 2]);
    }
    (a.matmul(&odd), even)
}

fn pade13(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let eye = ComplexMatrix::identity(n);
    let b = &PADE13;
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let w1 = &(&a6.scale_re(b[13]) + &a4.scale_re(b[11])) + &a2.scale_re(b[9]);
    let w2 = &(&(&a6.scale_re(b[7]) + &a4.scale_re(b[5])) + &a2.scale_re(b[3])) + &eye.scale_re(b[1]);
    let u = a.matmul(&(&w1.matmul(&a6) + &w2));

    let z1 = &(&a6.scale_re(b[12]) + &a4.scale_re(b[10])) + &a2.scale_re(b[8]);
    let z2 = &(&(&a6.scale_re(b[6]) + &a4.scale_re(b[4])) + &a2.scale_re(b[2])) + &eye.scale_re(b[0]);
    let v = &z1.matmul(&a6) + &z2;

    pade_solve(&u, &v)
}

/// (V - U)⁻¹(V + U); the denominator is provably nonsingular below the θ thresholds.
fn pade_solve(u: &ComplexMatrix, v: &ComplexMatrix) -> ComplexMatrix {
    solve(&(v - u), &(v + u)).expect("Pade denominator nonsingular within theta bounds")
}
