//! Weight multiplicities of irreducible highest-weight modules (Freudenthal),
//! the principal `SL₂` decomposition, and a process-wide plus on-disk cache.

use crate::error::{consistency, invalid, Error, Result};
use crate::rootsys::{CartanType, RootSystem};
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, LazyLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    /// Fundamental-weight coordinates.
    pub weight: Vec<i64>,
    pub mult: u64,
    /// `⟨μ, 2ρ̌⟩`.
    pub a: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub highest: Vec<i64>,
    /// All weights with positive multiplicity, sorted by decreasing `a`
    /// and then decreasing coordinates.
    pub entries: Vec<WeightEntry>,
    pub dim: u64,
}

/// Moves `mu` into the dominant chamber.
pub fn dominant_conjugate(rs: &RootSystem, mu: &[i64]) -> Vec<i64> {
    let mut v = mu.to_vec();
    while let Some(i) = v.iter().position(|&c| c < 0) {
        v = rs.reflect(i, &v);
    }
    v
}

/// Weyl-group orbit of a weight.
pub fn weyl_orbit(rs: &RootSystem, mu: &[i64]) -> Vec<Vec<i64>> {
    let start = dominant_conjugate(rs, mu);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank {
            // going down from the dominant weight suffices
            if v[i] > 0 {
                let w = rs.reflect(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        out.push(v);
    }
    out
}

/// Coefficients of an element of the root lattice on the simple roots,
/// from its fundamental-weight coordinates. `None` if not in the root lattice.
fn root_coords(rs: &RootSystem, v: &[i64]) -> Option<Vec<i64>> {
    use crate::arith::{q, q_to_i64, Matrix};
    // v_j = Σ_i a_ji k_i
    let k = Matrix::from_i64(&rs.cartan).solve(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())?;
    k.iter().map(q_to_i64).collect()
}

impl WeightSystem {
    pub fn new(rs: &RootSystem, lambda: &[i64]) -> Result<Self> {
        let r = rs.rank;
        if lambda.len() != r {
            return Err(invalid!(
                "highest weight {lambda:?} has {} coordinates, expected {r}",
                lambda.len()
            ));
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(invalid!("highest weight {lambda:?} is not dominant"));
        }
        let d = &rs.half_norms;

        // dominant weights below λ, reached by subtracting positive roots
        let mut dominant: Vec<Vec<i64>> = vec![lambda.to_vec()];
        let mut seen: HashSet<Vec<i64>> = HashSet::from([lambda.to_vec()]);
        let mut i = 0;
        while i < dominant.len() {
            let mu = dominant[i].clone();
            for root in &rs.positive_roots {
                let nu: Vec<i64> = (0..r).map(|j| mu[j] - root.weight[j]).collect();
                if nu.iter().all(|&c| c >= 0) && seen.insert(nu.clone()) {
                    dominant.push(nu);
                }
            }
            i += 1;
        }
        // depth = height of λ - μ
        let depth = |mu: &[i64]| -> i64 {
            let diff: Vec<i64> = (0..r).map(|j| lambda[j] - mu[j]).collect();
            root_coords(rs, &diff)
                .expect("λ-μ lies in the root lattice")
                .iter()
                .sum()
        };
        let mut order: Vec<(i64, Vec<i64>)> =
            dominant.into_iter().map(|m| (depth(&m), m)).collect();
        order.sort();

        // (λ+ρ,λ+ρ) - (μ+ρ,μ+ρ) = Σ_i c_i d_i (λ+μ+2ρ)_i with λ-μ = Σ c_i α_i
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        let lookup = |mult: &HashMap<Vec<i64>, u64>, nu: &[i64]| -> u64 {
            let dc = dominant_conjugate(rs, nu);
            mult.get(&dc).copied().unwrap_or(0)
        };
        for (dep, mu) in &order {
            if *dep == 0 {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let diff: Vec<i64> = (0..r).map(|j| lambda[j] - mu[j]).collect();
            let c = root_coords(rs, &diff).unwrap();
            let denom: i64 = (0..r).map(|i| c[i] * d[i] * (lambda[i] + mu[i] + 2)).sum();
            let mut num: i128 = 0;
            for root in &rs.positive_roots {
                let mu_alpha: i64 = (0..r).map(|j| mu[j] * root.coeffs[j] * d[j]).sum();
                let alpha_alpha = 2 * root.half_norm;
                let mut k = 1;
                loop {
                    let nu: Vec<i64> = (0..r).map(|j| mu[j] + k * root.weight[j]).collect();
                    let m = lookup(&mult, &nu);
                    if m == 0 {
                        break;
                    }
                    num += m as i128 * (mu_alpha + k * alpha_alpha) as i128;
                    k += 1;
                }
            }
            let num = 2 * num;
            if denom <= 0 || num % denom as i128 != 0 {
                return Err(consistency!(
                    "Freudenthal recursion gave {num}/{denom} at {mu:?}"
                ));
            }
            let m = (num / denom as i128) as u64;
            if m > 0 {
                mult.insert(mu.clone(), m);
            }
        }

        let mut entries = Vec::new();
        for (mu, &m) in &mult {
            for w in weyl_orbit(rs, mu) {
                let a = rs.a_value(&w);
                entries.push(WeightEntry {
                    weight: w,
                    mult: m,
                    a,
                });
            }
        }
        entries.sort_by(|x, y| y.a.cmp(&x.a).then_with(|| y.weight.cmp(&x.weight)));
        let dim = entries.iter().map(|e| e.mult).sum();
        Ok(WeightSystem {
            kind: rs.kind,
            rank: r,
            highest: lambda.to_vec(),
            entries,
            dim,
        })
    }

    /// `(−1)^{a(λ)}`, the value of the central element `(2ρ̌)(−1)`.
    pub fn epsilon(&self) -> i64 {
        let a = self.entries.first().map_or(0, |e| e.a);
        if a.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `N_j = Σ mult` over weights with `a(μ) = j`.
    pub fn a_histogram(&self) -> BTreeMap<i64, u64> {
        let mut h = BTreeMap::new();
        for e in &self.entries {
            *h.entry(e.a).or_insert(0) += e.mult;
        }
        h
    }

    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.entries
            .iter()
            .find(|e| e.weight == mu)
            .map_or(0, |e| e.mult)
    }

    /// Multiplicities of the principal `SL₂` decomposition
    /// `V = ⊕ Sym^k ⊗ C^{m(k)}`, via `m(k) = N_k − N_{k+2}`.
    pub fn principal_sl2(&self) -> Result<Sl2Decomposition> {
        let hist = self.a_histogram();
        let n = |j: i64| hist.get(&j).copied().unwrap_or(0) as i64;
        let top = hist.keys().next_back().copied().unwrap_or(0);
        let mut mult = BTreeMap::new();
        for k in 0..=top {
            let m = n(k) - n(k + 2);
            if m < 0 {
                return Err(consistency!("negative SL2 multiplicity m({k}) = {m}"));
            }
            if m > 0 {
                mult.insert(k, m as u64);
            }
        }
        Ok(Sl2Decomposition { mult })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Decomposition {
    /// `k ↦ m(k)`, nonzero entries only.
    pub mult: BTreeMap<i64, u64>,
}

impl Sl2Decomposition {
    pub fn dim(&self) -> u64 {
        self.mult.iter().map(|(k, m)| (*k as u64 + 1) * m).sum()
    }

    pub fn total(&self) -> u64 {
        self.mult.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(rename = "type")]
    kind: CartanType,
    rank: usize,
    lambda: Vec<i64>,
    entries: Vec<Vec<i64>>,
}

type Key = (CartanType, usize, Vec<i64>);

static MEMORY: LazyLock<RwLock<HashMap<Key, Arc<WeightSystem>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Looks up or computes a weight system, optionally persisting it as JSON
/// under `dir`. Concurrent callers may compute the same system twice; the
/// first stored value wins and both receive identical data.
pub fn cached(rs: &RootSystem, lambda: &[i64], dir: Option<&Path>) -> Result<Arc<WeightSystem>> {
    let key = (rs.kind, rs.rank, lambda.to_vec());
    if let Some(ws) = MEMORY.read().get(&key) {
        return Ok(ws.clone());
    }
    let from_disk = match dir {
        Some(d) => read_cache_file(&cache_path(d, &key), &key)?,
        None => None,
    };
    let ws = match from_disk {
        Some(ws) => ws,
        None => {
            let ws = WeightSystem::new(rs, lambda)?;
            if let Some(d) = dir {
                write_cache_file(d, &key, &ws)?;
            }
            ws
        }
    };
    let mut map = MEMORY.write();
    Ok(map.entry(key).or_insert_with(|| Arc::new(ws)).clone())
}

fn cache_path(dir: &Path, key: &Key) -> PathBuf {
    let coords: Vec<String> = key.2.iter().map(|c| c.to_string()).collect();
    dir.join(format!("{}{}_{}.json", key.0, key.1, coords.join("-")))
}

fn read_cache_file(path: &Path, key: &Key) -> Result<Option<WeightSystem>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let file: CacheFile = serde_json::from_str(&text)?;
    if (file.kind, file.rank, &file.lambda) != (key.0, key.1, &key.2) {
        return Err(consistency!(
            "cache file {} has mismatched key",
            path.display()
        ));
    }
    let r = key.1;
    let mut entries = Vec::with_capacity(file.entries.len());
    for row in file.entries {
        if row.len() != r + 2 || row[r] <= 0 {
            return Err(consistency!("malformed cache row in {}", path.display()));
        }
        entries.push(WeightEntry {
            weight: row[..r].to_vec(),
            mult: row[r] as u64,
            a: row[r + 1],
        });
    }
    let dim = entries.iter().map(|e| e.mult).sum();
    Ok(Some(WeightSystem {
        kind: key.0,
        rank: r,
        highest: key.2.clone(),
        entries,
        dim,
    }))
}

fn write_cache_file(dir: &Path, key: &Key, ws: &WeightSystem) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let file = CacheFile {
        kind: key.0,
        rank: key.1,
        lambda: key.2.clone(),
        entries: ws
            .entries
            .iter()
            .map(|e| {
                let mut row = e.weight.clone();
                row.push(e.mult as i64);
                row.push(e.a);
                row
            })
            .collect(),
    };
    let path = cache_path(dir, key);
    let tmp = dir.join(format!(
        ".{}.{}.{}.tmp",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
    std::fs::rename(&tmp, &path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::from(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use CartanType::*;

    #[test]
    fn sl2_symmetric_powers() {
        let rs = RootSystem::new(A, 1).unwrap();
        let ws = WeightSystem::new(&rs, &[5]).unwrap();
        let w: Vec<i64> = ws.entries.iter().map(|e| e.weight[0]).collect();
        assert_eq!(w, vec![5, 3, 1, -1, -3, -5]);
        assert!(ws.entries.iter().all(|e| e.mult == 1));
        assert_eq!(ws.epsilon(), -1);
        let sl2 = ws.principal_sl2().unwrap();
        assert_eq!(sl2.mult, BTreeMap::from([(5, 1)]));
    }

    #[test]
    fn g2_seven() {
        let rs = RootSystem::new(G, 2).unwrap();
        let ws = WeightSystem::new(&rs, &[1, 0]).unwrap();
        assert_eq!(ws.dim, 7);
        assert_eq!(ws.entries.len(), 7);
        assert_eq!(ws.multiplicity(&[0, 0]), 1);
    }

    #[test]
    fn adjoint_zero_weight() {
        let rs = RootSystem::new(B, 3).unwrap();
        let theta = rs.highest_root().weight.clone();
        let ws = WeightSystem::new(&rs, &theta).unwrap();
        assert_eq!(ws.dim, 21);
        assert_eq!(ws.multiplicity(&[0, 0, 0]), 3);
        assert_eq!(ws.epsilon(), 1);
    }

    #[test]
    fn rejects_non_dominant() {
        let rs = RootSystem::new(A, 2).unwrap();
        assert!(WeightSystem::new(&rs, &[1, -1]).is_err());
        assert!(WeightSystem::new(&rs, &[1]).is_err());
    }

    #[test]
    fn spin_epsilon_follows_triangular_numbers() {
        // a(ω_n) for B_n is n(n+1)/2
        for n in 2..=6 {
            let rs = RootSystem::new(B, n).unwrap();
            let mut lambda = vec![0; n];
            lambda[n - 1] = 1;
            let ws = WeightSystem::new(&rs, &lambda).unwrap();
            assert_eq!(ws.dim, 1 << n);
            let t = (n * (n + 1) / 2) as i64;
            assert_eq!(ws.entries[0].a, t);
            assert_eq!(ws.epsilon(), if t % 2 == 0 { 1 } else { -1 });
        }
    }
}
