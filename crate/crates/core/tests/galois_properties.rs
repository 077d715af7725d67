mod common;

use common::small_types;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidconn_core::arith::{cyclotomic, hnf, integer_kernel, q, Field, Q};
use rigidconn_core::galois::{
    coxeter_orbit_size, epsilon_plus_crosscheck, fixed_lattice, multiset, peel, projector_kernel,
    restrict, restriction_matrix,
};
use rigidconn_core::rootsys::{CartanType, RootSystem};
use rigidconn_core::weights::WeightSystem;

#[test]
fn epsilon_plus_crosscheck_twenty_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let types = small_types();
    let mut done = 0;
    while done < 20 {
        let (k, r) = types[rng.gen_range(0..types.len())];
        if k == CartanType::F {
            continue;
        }
        let rs = RootSystem::new(k, r).unwrap();
        let lambda: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
        let ws = WeightSystem::new(&rs, &lambda).unwrap();
        if ws.epsilon() != 1 {
            continue;
        }
        assert!(
            epsilon_plus_crosscheck(&rs, &ws).unwrap(),
            "{k}{r} {lambda:?}"
        );
        done += 1;
    }
}

fn span_rank(vs: &[Vec<BigInt>], r: usize) -> usize {
    let cols: Vec<Vec<Q>> = vs
        .iter()
        .map(|v| v.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    if cols.is_empty() {
        return 0;
    }
    rigidconn_core::arith::Matrix::from_cols(r, &cols).rank()
}

/// The weights killed by the primitive projector are, over ℚ, the sum of
/// the kernels of `Φ_d(w)` for the proper divisors `d` of `h`; the integer
/// kernel is saturated, so its Hermite form is determined by that span.
#[test]
fn projector_kernel_vs_cyclotomic_and_orbits() {
    for (k, r) in small_types() {
        let rs = RootSystem::new(k, r).unwrap();
        let h = rs.coxeter_number;
        let w = rs.coxeter_element().to_q();
        let pk = projector_kernel(&rs);
        let mut pieces: Vec<Vec<BigInt>> = Vec::new();
        for d in (1..h).filter(|d| h % d == 0) {
            pieces.extend(integer_kernel(&w.eval_poly(&cyclotomic(d as u32))));
        }
        assert_eq!(span_rank(&pk, r), span_rank(&pieces, r), "{k}{r}");
        let mut both = pk.clone();
        both.extend(pieces.iter().cloned());
        assert_eq!(span_rank(&both, r), span_rank(&pk, r), "{k}{r}");
        // saturation of the piece span is the projector kernel
        let sat = {
            let m = rigidconn_core::arith::Matrix::from_rows(
                pieces
                    .iter()
                    .map(|v| v.iter().map(|x| Q::from_integer(x.clone())).collect())
                    .collect(),
            );
            let ann = if pieces.is_empty() {
                rigidconn_core::arith::Matrix::<Q>::identity(r)
            } else {
                rigidconn_core::arith::Matrix::from_rows(m.nullspace())
            };
            integer_kernel(&ann)
        };
        assert_eq!(hnf(&sat), hnf(&pk), "{k}{r}");

        // weights fixed by a proper power of w have no primitive component
        for d in (1..h).filter(|d| h % d == 0) {
            for mu in fixed_lattice(&rs, d as u32) {
                let mu_q: Vec<Q> = mu.iter().map(|x| Q::from_integer(x.clone())).collect();
                let ok =
                    span_rank(&[pk.clone(), vec![mu.clone()]].concat(), r) == span_rank(&pk, r);
                assert!(ok, "{k}{r}: {mu_q:?} fixed by w^{d}");
            }
        }
        // a small box of weights: orbit size a proper divisor of h ⇒ killed
        let p = rs.coxeter_element().primitive_projector(h);
        let mut mu = vec![-1i64; r];
        loop {
            let size = coxeter_orbit_size(&rs, &mu);
            if size < h as usize {
                let v: Vec<Q> = mu.iter().map(|&x| q(x)).collect();
                assert!(p.mul_vec(&v).iter().all(|x| x.is_nil()), "{k}{r} {mu:?}");
            }
            let Some(i) = mu.iter().position(|&x| x < 1) else {
                break;
            };
            mu[i] += 1;
            for x in mu.iter_mut().take(i) {
                *x = -1;
            }
        }
    }
}

fn branch(kind: CartanType, rank: usize, lambda: &[i64]) -> Vec<(Vec<i64>, u64)> {
    let rs = RootSystem::new(kind, rank).unwrap();
    let ws = WeightSystem::new(&rs, lambda).unwrap();
    let m = restriction_matrix(kind, rank).unwrap().unwrap();
    let g2 = RootSystem::new(CartanType::G, 2).unwrap();
    let mut parts = peel(&g2, &restrict(&m, &multiset(&ws)), None).unwrap();
    parts.sort();
    parts
}

#[test]
fn b3_to_g2_branchings() {
    // 7 → 7
    assert_eq!(branch(CartanType::B, 3, &[1, 0, 0]), vec![(vec![1, 0], 1)]);
    // 8 → 7 ⊕ 1
    assert_eq!(
        branch(CartanType::B, 3, &[0, 0, 1]),
        vec![(vec![0, 0], 1), (vec![1, 0], 1)]
    );
    // 21 → 14 ⊕ 7
    assert_eq!(
        branch(CartanType::B, 3, &[0, 1, 0]),
        vec![(vec![0, 1], 1), (vec![1, 0], 1)]
    );
}

#[test]
fn d4_to_g2_branchings() {
    for lambda in [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
        assert_eq!(
            branch(CartanType::D, 4, &lambda),
            vec![(vec![0, 0], 1), (vec![1, 0], 1)]
        );
    }
    // 28 → 14 ⊕ 7 ⊕ 7
    assert_eq!(
        branch(CartanType::D, 4, &[0, 1, 0, 0]),
        vec![(vec![0, 1], 1), (vec![1, 0], 2)]
    );
}
