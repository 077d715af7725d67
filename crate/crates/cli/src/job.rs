//! Resolution of command-line selectors into groups and representations.

use rigidconn_core::connection::ConnCase;
use rigidconn_core::rootsys::{validate_type, CartanType, RootSystem};
use rigidconn_core::{Error, Result};
use serde_json::{json, Value};

/// A group given as a Cartan type and Lie rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub kind: CartanType,
    pub rank: usize,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// Parses `--group` together with `--rank`.
///
/// For the classical names `sl`, `sp` and `so` the number (suffix or
/// `--rank`) is the matrix size, so `sl2` and `--group sl --rank 2` both mean
/// SL_2. For a bare Cartan letter `a`..`g` it is the Lie rank.
pub fn parse_group(name: &str, rank: Option<usize>, bound: usize) -> Result<Group> {
    let lower = name.trim().to_ascii_lowercase();
    let split = lower
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(lower.len());
    let (prefix, digits) = lower.split_at(split);
    let suffix: Option<usize> = if digits.is_empty() {
        None
    } else {
        Some(
            digits
                .parse()
                .map_err(|_| invalid(format!("bad group `{name}`")))?,
        )
    };
    let n = match (suffix, rank) {
        (Some(a), Some(b)) if a != b => {
            return Err(invalid(format!("group `{name}` conflicts with --rank {b}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(invalid(format!("group `{name}` needs --rank"))),
    };
    let (kind, r) = match prefix {
        "sl" if n >= 2 => (CartanType::A, n - 1),
        "sp" if n >= 4 && n % 2 == 0 => (CartanType::C, n / 2),
        "so" if n >= 5 && n % 2 == 1 => (CartanType::B, (n - 1) / 2),
        "so" if n >= 8 && n % 2 == 0 => (CartanType::D, n / 2),
        "sl" | "sp" | "so" => return Err(invalid(format!("no simple group {prefix}{n}"))),
        p if p.len() == 1 => (p.parse::<CartanType>()?, n),
        _ => return Err(invalid(format!("unknown group `{name}`"))),
    };
    validate_type(kind, r, bound)?;
    Ok(Group { kind, rank: r })
}

/// A representation selector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rep {
    Standard,
    Adjoint,
    Spin,
    Dim7,
    Sym(usize),
    Weight(Vec<i64>),
}

pub fn parse_rep(s: &str) -> Result<Rep> {
    let s = s.trim();
    match s {
        "standard" | "std" => return Ok(Rep::Standard),
        "adjoint" | "adj" => return Ok(Rep::Adjoint),
        "spin" => return Ok(Rep::Spin),
        "dim7" => return Ok(Rep::Dim7),
        _ => {}
    }
    if let Some(k) = s.strip_prefix("sym:") {
        let k = k
            .parse()
            .map_err(|_| invalid(format!("bad symmetric power `{s}`")))?;
        return Ok(Rep::Sym(k));
    }
    let coords = s.strip_prefix("w:").unwrap_or(s);
    coords
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Rep::Weight)
        .map_err(|_| {
            invalid(format!(
                "unknown representation `{s}`; use standard, adjoint, spin, dim7, sym:K or comma-separated weight coordinates"
            ))
        })
}

impl Rep {
    pub fn label(&self) -> String {
        match self {
            Rep::Standard => "standard".into(),
            Rep::Adjoint => "adjoint".into(),
            Rep::Spin => "spin".into(),
            Rep::Dim7 => "dim7".into(),
            Rep::Sym(k) => format!("sym:{k}"),
            Rep::Weight(w) => w
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    /// Highest weight in fundamental-weight coordinates.
    pub fn highest_weight(&self, rs: &RootSystem) -> Result<Vec<i64>> {
        let r = rs.rank;
        let mut lam = vec![0; r];
        match (self, rs.kind) {
            (Rep::Adjoint, _) => return Ok(rs.highest_root().weight.clone()),
            (Rep::Standard, CartanType::A | CartanType::B | CartanType::C | CartanType::D)
            | (Rep::Standard | Rep::Dim7, CartanType::G) => lam[0] = 1,
            (Rep::Spin, CartanType::B) => lam[r - 1] = 1,
            (Rep::Spin, CartanType::D) => lam[r - 1] = 1,
            (Rep::Sym(k), CartanType::A) if r == 1 => lam[0] = *k as i64,
            (Rep::Weight(w), _) => {
                if w.len() != r {
                    return Err(invalid(format!(
                        "weight has {} coordinates, rank is {r}",
                        w.len()
                    )));
                }
                return Ok(w.clone());
            }
            _ => {
                return Err(invalid(format!(
                    "representation `{}` is not defined for {}",
                    self.label(),
                    rs.label()
                )))
            }
        }
        // the standard module of SO_3 is Sym^2 of SL_2
        if matches!(self, Rep::Standard) && rs.kind == CartanType::B && r == 1 {
            lam[0] = 2;
        }
        Ok(lam)
    }

    /// The explicit connection for this representation, if one is built in.
    pub fn conn_case(&self, g: &Group) -> Result<ConnCase> {
        use CartanType::*;
        let case = match (self, g.kind) {
            (Rep::Adjoint, k) => ConnCase::Adjoint(k, g.rank),
            (Rep::Standard, A) => ConnCase::StandardSl(g.rank + 1),
            (Rep::Standard, C) => ConnCase::StandardSp(2 * g.rank),
            (Rep::Standard, B) => ConnCase::StandardSo(2 * g.rank + 1),
            (Rep::Standard | Rep::Dim7, G) => ConnCase::G2Seven,
            (Rep::Sym(k), A) if g.rank == 1 => ConnCase::Sl2Sym(*k),
            (Rep::Weight(w), _) => {
                let rs = RootSystem::with_bound(g.kind, g.rank, g.rank.max(8))?;
                let known = [Rep::Standard, Rep::Adjoint];
                for r in known {
                    if r.highest_weight(&rs).ok().as_deref() == Some(w.as_slice()) {
                        return r.conn_case(g);
                    }
                }
                if g.kind == A && g.rank == 1 && w[0] >= 1 {
                    return Ok(ConnCase::Sl2Sym(w[0] as usize));
                }
                return Err(unsupported(self, g));
            }
            _ => return Err(unsupported(self, g)),
        };
        Ok(case)
    }
}

fn unsupported(rep: &Rep, g: &Group) -> Error {
    Error::Invalid(format!(
        "no explicit connection for {} on {}{}; supported: {}",
        rep.label(),
        g.kind,
        g.rank,
        rigidconn_core::connection::SUPPORTED_CASES
    ))
}

/// The fully resolved job, echoed in every output.
pub fn echo(command: &str, fields: &[(&str, Value)]) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    for (k, v) in fields {
        m.insert((*k).into(), v.clone());
    }
    Value::Object(m)
}
