//! Channel action in the Pauli basis and the Fourier certificate.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::Rng;

use qrand::bitlin::BitVector;
use qrand::channel::{
    aghp_channel, aghp_parameters, channel_from_space, pauli_coefficients, qotp, random_pauli_channel, PauliChannel,
};
use qrand::linalg::{matrix_norm, random_density, rng_from_seed, ComplexMatrix, DensityMatrix, MatrixNorm};
use qrand::pauli::PauliOp;
use qrand::smallbias::{max_bias, SampleSpace};

fn random_space(bits: usize, size: usize, seed: u64) -> SampleSpace {
    let mut rng = rng_from_seed(seed);
    SampleSpace::from_u64s(bits, (0..size).map(|_| rng.random::<u64>() & ((1 << bits) - 1))).unwrap()
}

/// `tr(Z^v X^u ρ)` by dense multiplication.
fn dense_coefficient(rho: &ComplexMatrix, n: usize, u: u64, v: u64) -> C64 {
    let x = PauliOp::from_xz(BitVector::from_u64(u, n), BitVector::zeros(n))
        .unwrap()
        .to_matrix();
    let z = PauliOp::from_xz(BitVector::zeros(n), BitVector::from_u64(v, n))
        .unwrap()
        .to_matrix();
    (&(&z * &x) * rho).trace()
}

/// `Σ_k w_k P_k ρ P_k†` by dense multiplication.
fn dense_apply(ch: &PauliChannel, rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rho.dim());
    for (k, op) in ch.ops().iter().enumerate() {
        let p = op.to_matrix();
        let conj = &(&p * rho) * &p.adjoint();
        out = &out + &conj.scale(C64::new(ch.weight(k), 0.0));
    }
    out
}

#[test]
fn coefficients_match_dense_traces() {
    let rho = random_density(8, &mut rng_from_seed(1));
    let alpha = pauli_coefficients(&rho).unwrap();
    for u in 0..8 {
        for v in 0..8 {
            let d = dense_coefficient(rho.matrix(), 3, u, v);
            assert!((alpha[(u | v << 3) as usize] - d).norm() < 1e-12);
        }
    }
}

#[test]
fn channel_scales_each_pauli_component() {
    for (n, seed) in [(1, 1u64), (2, 2), (3, 3), (4, 4)] {
        let d = 1usize << n;
        let mut rng = rng_from_seed(seed);
        let size = rng.random_range(1..=40);
        let ch = channel_from_space(&random_space(2 * n, size, seed + 100)).unwrap();
        let table = ch.fourier().unwrap();
        let rho = random_density(d, &mut rng);
        let before = pauli_coefficients(&rho).unwrap();
        let after = pauli_coefficients(&ch.apply(&rho).unwrap()).unwrap();
        for u in 0..d {
            for v in 0..d {
                let i = u | v << n;
                assert!(
                    (after[i] - before[i] * table.at(u, v)).norm() < 1e-10,
                    "n={n} u={u} v={v}"
                );
            }
        }
    }
}

#[test]
fn apply_matches_dense_conjugation() {
    let mut rng = rng_from_seed(5);
    for n in 1..=3 {
        let ch = random_pauli_channel(n, 7, &mut rng).unwrap();
        let rho = random_density(1 << n, &mut rng);
        let fast = ch.apply(&rho).unwrap();
        assert!((fast.matrix() - &dense_apply(&ch, rho.matrix())).frobenius() < 1e-13);
        DensityMatrix::new(fast.into_matrix()).unwrap();
    }
    let weighted = PauliChannel::with_weights(
        2,
        vec!["IX".parse().unwrap(), "YZ".parse().unwrap(), "ZZ".parse().unwrap()],
        vec![0.5, 0.3, 0.2],
    )
    .unwrap();
    let rho = random_density(4, &mut rng);
    assert!((weighted.apply(&rho).unwrap().matrix() - &dense_apply(&weighted, rho.matrix())).frobenius() < 1e-13);
}

#[test]
fn purity_excess_is_squared_frobenius_distance() {
    let mut rng = rng_from_seed(6);
    for n in 1..=4 {
        let d = 1usize << n;
        let ch = random_pauli_channel(n, 5, &mut rng).unwrap();
        let out = ch.apply(&random_density(d, &mut rng)).unwrap();
        let lhs = out.purity() - 1.0 / d as f64;
        let diff = out.matrix() - DensityMatrix::maximally_mixed(d).matrix();
        let rhs = matrix_norm(&diff, MatrixNorm::Frobenius).unwrap().powi(2);
        assert!((lhs - rhs).abs() < 1e-10);
    }
}

#[test]
fn paulis_are_orthogonal() {
    for n in 1..=3 {
        let d = 1usize << n;
        let ops: Vec<ComplexMatrix> = (0..1u64 << (2 * n))
            .map(|l| PauliOp::from_label(&BitVector::from_u64(l, 2 * n)).unwrap().to_matrix())
            .collect();
        for (i, p) in ops.iter().enumerate() {
            for (j, q) in ops.iter().enumerate() {
                let t = (&p.adjoint() * q).trace();
                let expect = if i == j { d as f64 } else { 0.0 };
                assert!((t - C64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn aghp_search_respects_a_closed_form_ceiling() {
    // 2r is at most n + 2 log2(1/eps) plus the log of the string count
    for n in 2..=8usize {
        for eps in [1.0, 0.5, 0.25, 0.1] {
            if let Some((r, _)) = aghp_parameters(n, eps).unwrap() {
                let ceiling = n as f64 + 2.0 * (1.0 / eps).log2() + 2.0 * (2.0 * n as f64).log2() + 2.0;
                assert!(2.0 * f64::from(r) <= ceiling, "n={n} eps={eps} r={r}");
                assert!(aghp_channel(n, eps).unwrap().certified_epsilon().unwrap() <= eps + 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificate_is_scaled_bias(n in 1usize..=4, size in 1usize..=60, seed in any::<u64>()) {
        let space = random_space(2 * n, size, seed);
        let cert = channel_from_space(&space).unwrap().certified_epsilon().unwrap();
        let bias = max_bias(&space, None).unwrap().max_bias;
        prop_assert!((cert - 2f64.powf(n as f64 / 2.0) * bias).abs() < 1e-12);
    }

    #[test]
    fn channel_text_round_trip(n in 1usize..=4, m in 1usize..=20, seed in any::<u64>()) {
        let ch = random_pauli_channel(n, m, &mut rng_from_seed(seed)).unwrap();
        let text = ch.to_text();
        let back = PauliChannel::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, ch);
    }

    #[test]
    fn fourier_coefficients_are_bounded(n in 1usize..=4, m in 1usize..=30, seed in any::<u64>()) {
        let t = random_pauli_channel(n, m, &mut rng_from_seed(seed)).unwrap().fourier().unwrap();
        prop_assert!((t.at(0, 0) - 1.0).abs() < 1e-15);
        prop_assert!(t.coefficients().iter().all(|c| c.abs() <= 1.0 + 1e-15));
    }
}

#[test]
fn qotp_from_cube_and_identity_from_point() {
    assert_eq!(
        channel_from_space(&SampleSpace::full_cube(6).unwrap()).unwrap(),
        qotp(3).unwrap()
    );
    let id = channel_from_space(&SampleSpace::parse_strings(&["000000"]).unwrap()).unwrap();
    assert_eq!(id.certified_epsilon().unwrap(), 2f64.powf(1.5));
}
