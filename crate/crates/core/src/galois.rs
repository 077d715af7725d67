//! Differential Galois data and cohomology dimensions from weights alone.
//!
//! Everything here is computed from a weight multiset: the Coxeter torus
//! `S` acts trivially on a weight iff the primitive-`h` projector kills it,
//! inertia at `0` is read off the principal `SL₂`, the element `n` fixes a
//! weight iff `⟨μ, 2ρ̌⟩ ≡ 0 (mod 2h)`, and a proper Galois group is handled
//! by restricting along a folding first.

use crate::arith::{integer_kernel, q, Field, Matrix, Q};
use crate::chevalley::folding;
use crate::error::{consistency, invalid, Result};
use crate::rootsys::{CartanType, RootSystem};
use crate::weights::{cached, WeightSystem};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;

/// A weight multiset `μ ↦ mult` in fundamental-weight coordinates.
pub type WeightMultiset = BTreeMap<Vec<i64>, u64>;

pub fn multiset(ws: &WeightSystem) -> WeightMultiset {
    ws.entries
        .iter()
        .map(|e| (e.weight.clone(), e.mult))
        .collect()
}

fn big_rank_system(kind: CartanType, rank: usize) -> Result<RootSystem> {
    RootSystem::with_bound(kind, rank, rank.max(crate::rootsys::DEFAULT_RANK_BOUND))
}

/// `dim V^S`: weights (with multiplicity) killed by the primitive projector.
pub fn coxeter_torus_invariants(rs: &RootSystem, weights: &WeightMultiset) -> u64 {
    let p = rs.coxeter_element().primitive_projector(rs.coxeter_number);
    weights
        .iter()
        .filter(|(mu, _)| {
            let v: Vec<Q> = mu.iter().map(|&x| q(x)).collect();
            p.mul_vec(&v).iter().all(|x| x.is_nil())
        })
        .map(|(_, m)| m)
        .sum()
}

/// `Irr_∞ = (dim V − dim V^S) / h`.
pub fn irregularity(rs: &RootSystem, weights: &WeightMultiset) -> Result<u64> {
    let dim: u64 = weights.values().sum();
    let fixed = coxeter_torus_invariants(rs, weights);
    let h = rs.coxeter_number as u64;
    if (dim - fixed) % h != 0 {
        return Err(consistency!(
            "{} non-trivial S-weights is not divisible by h = {h}",
            dim - fixed
        ));
    }
    Ok((dim - fixed) / h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaInvariants {
    pub i0: u64,
    pub n: u64,
    pub i_inf: u64,
}

fn a_histogram(rs: &RootSystem, weights: &WeightMultiset) -> BTreeMap<i64, u64> {
    let mut h = BTreeMap::new();
    for (mu, m) in weights {
        *h.entry(rs.a_value(mu)).or_insert(0) += m;
    }
    h
}

/// `dim V^{I₀}`, `dim V^{⟨n⟩}` and `dim V^{I_∞}`, given `Irr_∞` and `ε|_V`.
pub fn inertia_invariants(
    rs: &RootSystem,
    weights: &WeightMultiset,
    irr: u64,
    epsilon: i64,
) -> Result<InertiaInvariants> {
    let hist = a_histogram(rs, weights);
    let n_at = |j: i64| hist.get(&j).copied().unwrap_or(0);
    // Σ_k m(k) with m(k) = N_k − N_{k+2} telescopes to N_0 + N_1
    let i0 = n_at(0) + n_at(1);
    let two_h = 2 * rs.coxeter_number;
    let n: u64 = hist
        .iter()
        .filter(|(a, _)| a.rem_euclid(two_h) == 0)
        .map(|(_, m)| m)
        .sum();
    let i_inf = if epsilon == 1 {
        n.checked_sub(irr)
            .ok_or_else(|| consistency!("negative m(χ₀): dim V^<n> = {n} < Irr = {irr}"))?
    } else {
        0
    };
    Ok(InertiaInvariants { i0, n, i_inf })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisProfile {
    #[serde(rename = "type")]
    pub kind: CartanType,
    pub rank: usize,
    /// Type of the differential Galois group when it is a proper subgroup.
    pub target: Option<(CartanType, usize)>,
    pub coxeter_number: i64,
}

impl GaloisProfile {
    pub fn label(&self) -> String {
        match self.target {
            Some((k, r)) => format!("{k}{r}"),
            None => format!("{}{}", self.kind, self.rank),
        }
    }

    pub fn is_full(&self) -> bool {
        self.target.is_none()
    }
}

/// The differential Galois group of the connection for `G` of the given type.
pub fn galois_group(kind: CartanType, rank: usize) -> Result<GaloisProfile> {
    let rs = big_rank_system(kind, rank)?;
    use CartanType::*;
    let target = match (kind, rank) {
        (A, r) if r >= 3 && r % 2 == 1 => Some((C, r.div_ceil(2))),
        (B, 3) => Some((G, 2)),
        (D, 4) => Some((G, 2)),
        (D, r) => Some((B, r - 1)),
        (E, 6) => Some((F, 4)),
        _ => None,
    };
    Ok(GaloisProfile {
        kind,
        rank,
        target,
        coxeter_number: rs.coxeter_number,
    })
}

/// Integer matrix sending weights of `G` to weights of its Galois group, in
/// fundamental-weight coordinates.
pub fn restriction_matrix(kind: CartanType, rank: usize) -> Result<Option<Vec<Vec<i64>>>> {
    let profile = galois_group(kind, rank)?;
    let Some((tk, tr)) = profile.target else {
        return Ok(None);
    };
    if (kind, rank) == (CartanType::B, 3) {
        // G₂ ⊂ Spin₇ ⊂ Spin₈: the G₂ coroots are α̌₁ + α̌₃ and α̌₂ of B₃
        return Ok(Some(vec![vec![1, 0, 1], vec![0, 1, 0]]));
    }
    let (src_kind, src_rank, orbits) = folding(tk, tr);
    if (src_kind, src_rank) != (kind, rank) {
        return Err(consistency!(
            "folding for {tk}{tr} starts at {src_kind}{src_rank}, not {kind}{rank}"
        ));
    }
    Ok(Some(
        orbits
            .iter()
            .map(|orb| {
                let mut row = vec![0; rank];
                for &i in orb {
                    row[i - 1] = 1;
                }
                row
            })
            .collect(),
    ))
}

pub fn restrict(matrix: &[Vec<i64>], weights: &WeightMultiset) -> WeightMultiset {
    let mut out = WeightMultiset::new();
    for (mu, m) in weights {
        let b: Vec<i64> = matrix
            .iter()
            .map(|row| row.iter().zip(mu).map(|(x, y)| x * y).sum())
            .collect();
        *out.entry(b).or_insert(0) += m;
    }
    out
}

/// Irreducible constituents `(highest weight, multiplicity)` of a weight
/// multiset, peeled from the top with Freudenthal.
pub fn peel(
    rs: &RootSystem,
    weights: &WeightMultiset,
    cache_dir: Option<&Path>,
) -> Result<Vec<(Vec<i64>, u64)>> {
    let mut rest: BTreeMap<Vec<i64>, i64> = weights
        .iter()
        .map(|(k, v)| (k.clone(), *v as i64))
        .collect();
    rest.retain(|_, m| *m != 0);
    let mut parts: Vec<(Vec<i64>, u64)> = Vec::new();
    while let Some((top, count)) = rest
        .iter()
        .max_by(|a, b| {
            rs.a_value(a.0)
                .cmp(&rs.a_value(b.0))
                .then_with(|| b.0.cmp(a.0))
        })
        .map(|(k, v)| (k.clone(), *v))
    {
        if top.iter().any(|&x| x < 0) || count < 0 {
            return Err(consistency!(
                "peeling reached a non-dominant top weight {top:?} (mult {count})"
            ));
        }
        let ws = cached(rs, &top, cache_dir)?;
        for e in &ws.entries {
            let slot = rest.entry(e.weight.clone()).or_insert(0);
            *slot -= count * e.mult as i64;
            if *slot < 0 {
                return Err(consistency!(
                    "peeling {top:?} left weight {:?} with negative multiplicity",
                    e.weight
                ));
            }
        }
        rest.retain(|_, m| *m != 0);
        match parts.iter_mut().find(|(w, _)| *w == top) {
            Some(p) => p.1 += count as u64,
            None => parts.push((top, count as u64)),
        }
    }
    Ok(parts)
}

/// `dim V^{G_∇}`, together with the decomposition used (empty when the
/// Galois group is all of `G`).
pub fn dim_invariants_under_galois(
    ws: &WeightSystem,
    profile: &GaloisProfile,
    cache_dir: Option<&Path>,
) -> Result<(u64, Vec<(Vec<i64>, u64)>)> {
    let Some((tk, tr)) = profile.target else {
        let trivial = ws.highest.iter().all(|&x| x == 0);
        return Ok((trivial as u64, Vec::new()));
    };
    let m = restriction_matrix(profile.kind, profile.rank)?.expect("folded profile");
    let target = big_rank_system(tk, tr)?;
    let parts = peel(&target, &restrict(&m, &multiset(ws)), cache_dir)?;
    let trivial = parts
        .iter()
        .filter(|(w, _)| w.iter().all(|&x| x == 0))
        .map(|(_, c)| c)
        .sum();
    Ok((trivial, parts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub group: String,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub dim: u64,
    pub epsilon: i64,
    pub irr: u64,
    #[serde(rename = "inv_I0")]
    pub inv_i0: u64,
    pub inv_n: u64,
    #[serde(rename = "inv_Iinf")]
    pub inv_iinf: u64,
    pub inv_galois: u64,
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub galois_group: String,
    /// Constituents of the restriction to the Galois group, when proper.
    pub restriction: Vec<(Vec<i64>, u64)>,
    pub trace: Vec<String>,
}

impl CohomologyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "rank": self.rank,
            "lambda": self.lambda,
            "dim": self.dim,
            "epsilon": self.epsilon,
            "irr": self.irr,
            "inv_I0": self.inv_i0,
            "inv_n": self.inv_n,
            "inv_Iinf": self.inv_iinf,
            "inv_galois": self.inv_galois,
            "h0": self.h0,
            "h1": self.h1,
            "h2": self.h2,
            "galois_group": self.galois_group,
            "restriction": self.restriction.iter()
                .map(|(w, m)| json!({"lambda": w, "mult": m}))
                .collect::<Vec<_>>(),
            "trace": self.trace,
        })
    }
}

/// Cohomology dimensions of the intermediate extension for the irreducible
/// representation with highest weight `λ`.
pub fn cohomology_dims(
    rs: &RootSystem,
    lambda: &[i64],
    cache_dir: Option<&Path>,
) -> Result<CohomologyReport> {
    let ws = cached(rs, lambda, cache_dir)?;
    cohomology_from_weights(rs, &ws, cache_dir)
}

pub fn cohomology_from_weights(
    rs: &RootSystem,
    ws: &WeightSystem,
    cache_dir: Option<&Path>,
) -> Result<CohomologyReport> {
    if (ws.kind, ws.rank) != (rs.kind, rs.rank) {
        return Err(invalid!("weight system and root system disagree"));
    }
    let profile = galois_group(rs.kind, rs.rank)?;
    let epsilon = ws.epsilon();
    let mut trace = Vec::new();
    let (inv_galois, parts) = dim_invariants_under_galois(ws, &profile, cache_dir)?;
    let (local_rs, weights) = match profile.target {
        None => {
            trace.push(format!(
                "galois group {} is the full group",
                profile.label()
            ));
            trace.push("V^G = [λ = 0]".to_string());
            (rs.clone(), multiset(ws))
        }
        Some((tk, tr)) => {
            let m = restriction_matrix(rs.kind, rs.rank)?.unwrap();
            trace.push(format!(
                "galois group {}; restricted along {m:?} and peeled",
                profile.label()
            ));
            (big_rank_system(tk, tr)?, restrict(&m, &multiset(ws)))
        }
    };
    if local_rs.coxeter_number != rs.coxeter_number {
        return Err(consistency!("Coxeter number changed under restriction"));
    }
    let irr = irregularity(&local_rs, &weights)?;
    trace.push("h Irr = dim V - dim V^S (primitive projector)".to_string());
    let inv = inertia_invariants(&local_rs, &weights, irr, epsilon)?;
    trace.push("dim V^I0 = N_0 + N_1 of the a-histogram".to_string());
    trace.push(if epsilon == 1 {
        "eps = +1: dim V^Iinf = dim V^<n> - Irr".to_string()
    } else {
        "eps = -1: dim V^Iinf = 0".to_string()
    });
    let h1 = irr as i64 - inv.i0 as i64 - inv.i_inf as i64 + 2 * inv_galois as i64;
    if h1 < 0 {
        return Err(consistency!("negative d(V) = {h1}"));
    }
    trace.push("h1 = Irr - dim V^I0 - dim V^Iinf + 2 dim V^G".to_string());
    Ok(CohomologyReport {
        group: rs.label(),
        rank: rs.rank,
        lambda: ws.highest.clone(),
        dim: ws.dim,
        epsilon,
        irr,
        inv_i0: inv.i0,
        inv_n: inv.n,
        inv_iinf: inv.i_inf,
        inv_galois,
        h0: inv_galois,
        h1: h1 as u64,
        h2: inv_galois,
        galois_group: profile.label(),
        restriction: parts,
        trace,
    })
}

/// Recomputes `d(V)` for `ε|_V = +1` as
/// `2(#{μ : a(μ)/2 > 0, a(μ)/2 ≡ 0 mod h} − m(χ₀)) + 2 dim V^{G_∇}` and
/// checks it against the main formula, together with evenness.
pub fn epsilon_plus_crosscheck(rs: &RootSystem, ws: &WeightSystem) -> Result<bool> {
    if ws.epsilon() != 1 {
        return Err(invalid!("ε = -1 on {:?}", ws.highest));
    }
    let report = cohomology_from_weights(rs, ws, None)?;
    let h = rs.coxeter_number;
    let count: u64 = ws
        .entries
        .iter()
        .filter(|e| e.a > 0 && (e.a / 2) % h == 0)
        .map(|e| e.mult)
        .sum();
    let alt = 2 * (count as i64 - report.inv_iinf as i64) + 2 * report.inv_galois as i64;
    Ok(alt == report.h1 as i64 && report.h1 % 2 == 0)
}

/// Whether the central element `ε = (2ρ̌)(−1)` lies in the Coxeter torus
/// `S`: every weight killed by the projector must pair evenly with `2ρ̌`.
pub fn epsilon_in_s(rs: &RootSystem) -> bool {
    let p = rs.coxeter_element().primitive_projector(rs.coxeter_number);
    let c: Vec<BigInt> = rs.two_rho_check.iter().map(|&x| BigInt::from(x)).collect();
    integer_kernel(&p).iter().all(|mu| {
        let s: BigInt = mu.iter().zip(&c).map(|(a, b)| a * b).sum();
        s.is_even()
    })
}

/// For `ε|_V = −1` with `ε ∈ S`, compares the main formula with
/// `#{a(μ) = 2k+1 : k ≡ 0 mod h, k ≠ 0}`; `None` when the alternative does
/// not apply (ε ∉ S or the Galois group is proper).
pub fn epsilon_minus_crosscheck(rs: &RootSystem, ws: &WeightSystem) -> Result<Option<bool>> {
    if ws.epsilon() != -1 {
        return Err(invalid!("ε = +1 on {:?}", ws.highest));
    }
    if !galois_group(rs.kind, rs.rank)?.is_full() || !epsilon_in_s(rs) {
        return Ok(None);
    }
    let report = cohomology_from_weights(rs, ws, None)?;
    let h = rs.coxeter_number;
    let count: u64 = ws
        .entries
        .iter()
        .filter(|e| {
            let k = (e.a - 1).div_euclid(2);
            k != 0 && k.rem_euclid(h) == 0
        })
        .map(|e| e.mult)
        .sum();
    Ok(Some(count == report.h1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubregularRow {
    #[serde(rename = "type")]
    pub kind: CartanType,
    pub rank: usize,
    /// Largest coefficient of the highest root.
    pub m: i64,
    /// `h − m`.
    pub d: i64,
    /// `r·h/d`, the number of free orbits on the roots.
    pub orbits: i64,
    /// Characteristic polynomial of the regular element, as cyclotomic factors.
    pub f: &'static str,
    pub galois_group: &'static str,
}

pub fn subregular_table() -> Result<Vec<SubregularRow>> {
    use CartanType::*;
    let rows = [
        (G, 2, "F(3)", "SL3"),
        (F, 4, "F(8)", "Spin9"),
        (E, 6, "F(9)", "E6"),
        (E, 7, "F(14)*F(2)", "E7"),
        (E, 8, "F(24)", "E8"),
    ];
    rows.iter()
        .map(|&(kind, rank, f, gal)| {
            let rs = RootSystem::new(kind, rank)?;
            let m = *rs.highest_root().coeffs.iter().max().unwrap();
            let h = rs.coxeter_number;
            let d = h - m;
            let rh = rank as i64 * h;
            if rh % d != 0 || rh / d != rank as i64 + 2 {
                return Err(consistency!("{kind}{rank}: r*h/d = {rh}/{d} is not r + 2"));
            }
            Ok(SubregularRow {
                kind,
                rank,
                m,
                d,
                orbits: rh / d,
                f,
                galois_group: gal,
            })
        })
        .collect()
}

/// Orbit size of `μ` under the Coxeter element.
pub fn coxeter_orbit_size(rs: &RootSystem, mu: &[i64]) -> usize {
    let w = rs.coxeter_element();
    let apply = |v: &[i64]| -> Vec<i64> {
        w.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    };
    let mut cur = apply(mu);
    let mut k = 1;
    while cur != mu {
        cur = apply(&cur);
        k += 1;
    }
    k
}

/// `ker(P)` over ℤ as a matrix, for lattice comparisons.
pub fn projector_kernel(rs: &RootSystem) -> Vec<Vec<BigInt>> {
    integer_kernel(&rs.coxeter_element().primitive_projector(rs.coxeter_number))
}

/// `ker(w^k − 1)` over ℤ.
pub fn fixed_lattice(rs: &RootSystem, k: u32) -> Vec<Vec<BigInt>> {
    let w = rs.coxeter_element().to_q().pow(k);
    integer_kernel(&w.sub(&Matrix::identity(rs.rank)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CartanType::*;

    fn report(kind: CartanType, rank: usize, lambda: &[i64]) -> CohomologyReport {
        let rs = RootSystem::with_bound(kind, rank, 10).unwrap();
        cohomology_dims(&rs, lambda, None).unwrap()
    }

    #[test]
    fn adjoint_small() {
        for (k, r) in [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (D, 4), (G, 2)] {
            let rs = RootSystem::new(k, r).unwrap();
            let rep = report(k, r, &rs.highest_root().weight);
            assert_eq!(rep.irr as usize, r, "{k}{r}");
            assert_eq!(rep.inv_i0 as usize, r);
            assert_eq!(rep.inv_iinf, 0);
            assert_eq!((rep.h0, rep.h1, rep.h2), (0, 0, 0));
        }
    }

    #[test]
    fn sl2_sym() {
        for n in 1..=12i64 {
            let rep = report(A, 1, &[n]);
            let expect = if n % 2 == 1 {
                (n - 1) / 2
            } else if n % 4 == 2 {
                (n - 2) / 2
            } else {
                (n - 4) / 2
            };
            assert_eq!(rep.h1 as i64, expect, "Sym^{n}");
        }
    }

    #[test]
    fn g2_seven() {
        let rs = RootSystem::new(G, 2).unwrap();
        let ws = WeightSystem::new(&rs, &[1, 0]).unwrap();
        assert_eq!(coxeter_torus_invariants(&rs, &multiset(&ws)), 1);
        assert_eq!(irregularity(&rs, &multiset(&ws)).unwrap(), 1);
    }

    #[test]
    fn profiles() {
        assert!(galois_group(C, 5).unwrap().is_full());
        assert_eq!(galois_group(A, 5).unwrap().label(), "C3");
        assert_eq!(galois_group(E, 6).unwrap().label(), "F4");
        assert_eq!(galois_group(D, 6).unwrap().label(), "B5");
        assert!(galois_group(A, 1).unwrap().is_full());
    }

    #[test]
    fn a3_restricts_to_c2() {
        let rs = RootSystem::new(A, 3).unwrap();
        let ws = WeightSystem::new(&rs, &[1, 0, 1]).unwrap();
        let prof = galois_group(A, 3).unwrap();
        let (inv, parts) = dim_invariants_under_galois(&ws, &prof, None).unwrap();
        assert_eq!(inv, 0);
        let c2 = RootSystem::new(C, 2).unwrap();
        let mut dims: Vec<u64> = parts
            .iter()
            .map(|(w, m)| WeightSystem::new(&c2, w).unwrap().dim * m)
            .collect();
        dims.sort();
        assert_eq!(dims, vec![5, 10]);
    }

    #[test]
    fn subregular() {
        let t = subregular_table().unwrap();
        let got: Vec<(i64, i64, i64)> = t.iter().map(|r| (r.m, r.d, r.orbits)).collect();
        assert_eq!(
            got,
            vec![(3, 3, 4), (4, 8, 6), (3, 9, 8), (4, 14, 9), (6, 24, 10)]
        );
    }
}
