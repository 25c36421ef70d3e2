//! Job inputs: the algebra JSON schema, preset and representation selectors,
//! and the truncation default.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liecore::{omega_rep, presets, DRep, GlRep, LieData, TraceForm};
use crate::matrix::Mat;
use crate::rational::{fmt_q, parse_q, Q};

pub const DEFAULT_TRUNC: usize = 6;
pub const TRUNC_ENV: &str = "PSA_TRUNC";

/// Truncation degree: explicit value, else `PSA_TRUNC`, else the default.
pub fn resolve_trunc(explicit: Option<usize>) -> Result<usize> {
    if let Some(d) = explicit {
        return Ok(d);
    }
    match std::env::var(TRUNC_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Config(format!("{TRUNC_ENV} must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_TRUNC),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiSpec {
    Zero,
    TrAd,
    Explicit(Vec<Q>),
}

impl ChiSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(ChiSpec::Zero),
            "tr_ad" => Ok(ChiSpec::TrAd),
            _ => Ok(ChiSpec::Explicit(s.split(',').map(|t| parse_q(t.trim())).collect::<Result<_>>()?)),
        }
    }

    pub fn resolve(&self, lie: &LieData) -> Result<TraceForm> {
        let chi = match self {
            ChiSpec::Zero => TraceForm::zero(lie.dim()),
            ChiSpec::TrAd => lie.tr_ad(),
            ChiSpec::Explicit(v) => {
                if v.len() != lie.dim() {
                    return Err(Error::DimensionMismatch { expected: lie.dim(), found: v.len() });
                }
                TraceForm(v.clone())
            }
        };
        chi.validate(lie)?;
        Ok(chi)
    }

    fn to_json(&self) -> Value {
        match self {
            ChiSpec::Zero => json!("zero"),
            ChiSpec::TrAd => json!("tr_ad"),
            ChiSpec::Explicit(v) => json!(v.iter().map(fmt_q).collect::<Vec<_>>()),
        }
    }
}

/// Contents of an algebra JSON file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub lie: LieData,
    pub chi: Option<ChiSpec>,
    pub pi: Option<DRep>,
    pub u: Option<GlRep>,
}

fn as_q(v: &Value) -> Result<Q> {
    v.as_str().ok_or_else(|| Error::Config(format!("rational must be a \"p/q\" string, got {v}"))).and_then(parse_q)
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Config(format!("{what} must be a non-negative integer")))
}

fn parse_matrix(v: &Value, dim: usize) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| Error::Config("matrix must be an array of rows".into()))?;
    if rows.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
    }
    rows.iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| Error::Config("matrix row must be an array".into()))?;
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
            r.iter().map(as_q).collect()
        })
        .collect()
}

fn parse_mats(v: &Value, count: usize, dim: usize) -> Result<Vec<Mat>> {
    let arr = v.as_array().ok_or_else(|| Error::Config("\"mats\" must be an array".into()))?;
    if arr.len() != count {
        return Err(Error::DimensionMismatch { expected: count, found: arr.len() });
    }
    arr.iter().map(|m| parse_matrix(m, dim)).collect()
}

fn mats_to_json(ms: &[Mat]) -> Value {
    Value::Array(ms.iter().map(|m| json!(m.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())).collect())
}

/// Parses `{"dim", "brackets", "chi"?, "pi"?, "u"?}` with 1-based indices.
pub fn parse_algebra(v: &Value, name: &str) -> Result<AlgebraFile> {
    let obj = v.as_object().ok_or_else(|| Error::Config("algebra JSON must be an object".into()))?;
    for key in obj.keys() {
        if !["dim", "brackets", "chi", "pi", "u"].contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown key {key:?}")));
        }
    }
    let n = as_usize(obj.get("dim").ok_or_else(|| Error::Config("missing \"dim\"".into()))?, "\"dim\"")?;
    let mut entries = Vec::new();
    if let Some(b) = obj.get("brackets") {
        for e in b.as_array().ok_or_else(|| Error::Config("\"brackets\" must be an array".into()))? {
            let e = e.as_array().filter(|e| e.len() == 4).ok_or_else(|| Error::Config("bracket entry must be [i, j, k, \"p/q\"]".into()))?;
            let (i, j, k) = (as_usize(&e[0], "i")?, as_usize(&e[1], "j")?, as_usize(&e[2], "k")?);
            if i == 0 || j == 0 || k == 0 {
                return Err(Error::Config("bracket indices are 1-based".into()));
            }
            if i >= j {
                return Err(Error::Config(format!("bracket entry needs i < j, got ({i}, {j})")));
            }
            entries.push((i - 1, j - 1, k - 1, as_q(&e[3])?));
        }
    }
    let lie = LieData::from_entries(name, n, &entries)?;
    crate::liecore::validate_lie(&lie)?;
    let chi = match obj.get("chi") {
        None => None,
        Some(Value::String(s)) if s == "zero" => Some(ChiSpec::Zero),
        Some(Value::String(s)) if s == "tr_ad" => Some(ChiSpec::TrAd),
        Some(Value::Array(a)) => Some(ChiSpec::Explicit(a.iter().map(as_q).collect::<Result<_>>()?)),
        Some(other) => return Err(Error::Config(format!("\"chi\" must be \"zero\", \"tr_ad\" or a list, got {other}"))),
    };
    if let Some(c) = &chi {
        c.resolve(&lie)?;
    }
    let pi = match obj.get("pi") {
        None => None,
        Some(p) => {
            let dim = as_usize(p.get("dim").ok_or_else(|| Error::Config("\"pi\" needs \"dim\"".into()))?, "pi dim")?;
            let mats = parse_mats(p.get("mats").ok_or_else(|| Error::Config("\"pi\" needs \"mats\"".into()))?, n, dim)?;
            let rep = DRep { dim, mats };
            rep.validate(&lie)?;
            Some(rep)
        }
    };
    let u = match obj.get("u") {
        None => None,
        Some(p) => {
            let dim = as_usize(p.get("dim").ok_or_else(|| Error::Config("\"u\" needs \"dim\"".into()))?, "u dim")?;
            let mats = parse_mats(p.get("mats").ok_or_else(|| Error::Config("\"u\" needs \"mats\"".into()))?, n * n, dim)?;
            let id_scalar = p.get("id_scalar").map(as_q).transpose()?;
            let rep = GlRep { dim, n, mats, id_scalar };
            rep.validate()?;
            Some(rep)
        }
    };
    Ok(AlgebraFile { lie, chi, pi, u })
}

/// Serializes in the same schema; `parse_algebra ∘ algebra_json` is the identity.
pub fn algebra_json(lie: &LieData, chi: Option<&ChiSpec>, pi: Option<&DRep>, u: Option<&GlRep>) -> Value {
    let n = lie.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = lie.c(i, j, k);
                if !c.is_zero() {
                    brackets.push(json!([i + 1, j + 1, k + 1, fmt_q(c)]));
                }
            }
        }
    }
    let mut out = json!({"dim": n, "brackets": brackets});
    if let Some(c) = chi {
        out["chi"] = c.to_json();
    }
    if let Some(p) = pi {
        out["pi"] = json!({"dim": p.dim, "mats": mats_to_json(&p.mats)});
    }
    if let Some(u) = u {
        let mut uj = json!({"dim": u.dim, "mats": mats_to_json(&u.mats)});
        if let Some(c) = &u.id_scalar {
            uj["id_scalar"] = json!(fmt_q(c));
        }
        out["u"] = uj;
    }
    out
}

/// A preset name such as `abelian3`, `heis3`, `sl2`, `solv2`.
pub fn preset(name: &str) -> Result<LieData> {
    presets::by_name(name).ok_or_else(|| Error::Config(format!("unknown algebra preset {name:?}")))
}

/// `trivial`, `trivial:m`, `adjoint`, `nil2`, `tr_ad` (the character `k_{tr ad}`)
/// or `char:c1,…,cN`.
pub fn parse_pi(lie: &LieData, s: &str) -> Result<DRep> {
    let rep = match s {
        "trivial" => DRep::trivial(lie, 1),
        "adjoint" => DRep::adjoint(lie),
        "nil2" => DRep::nil2(lie),
        "tr_ad" => DRep::character(&lie.tr_ad()),
        _ => {
            if let Some(m) = s.strip_prefix("trivial:") {
                DRep::trivial(lie, m.parse().map_err(|_| Error::Config(format!("bad dimension in {s:?}")))?)
            } else if let Some(c) = s.strip_prefix("char:") {
                DRep::character(&ChiSpec::parse(c)?.resolve(lie)?)
            } else {
                return Err(Error::Config(format!("unknown Π selector {s:?}")));
            }
        }
    };
    rep.validate(lie)?;
    Ok(rep)
}

/// `omega:n`, `trivial`, `standard`, `sym2`, `sl_adjoint`, optionally followed
/// by `+t` to shift by the trace character, e.g. `trivial+1/2`.
pub fn parse_u(n: usize, s: &str) -> Result<GlRep> {
    let (base, shift) = match s.split_once('+') {
        Some((b, t)) => (b, Some(parse_q(t)?)),
        None => (s, None),
    };
    let rep = match base {
        "trivial" => GlRep::trivial(n, 1),
        "standard" => GlRep::standard(n),
        "sym2" => GlRep::sym2_dual(n),
        "sl_adjoint" => GlRep::sl_adjoint(n),
        _ => match base.strip_prefix("omega:") {
            Some(k) => match k.parse::<usize>() {
                Ok(k) if k <= n => omega_rep(n, k)?,
                _ => return Err(Error::Config(format!("bad form degree in {s:?}, need 0..={n}"))),
            },
            None => return Err(Error::Config(format!("unknown U selector {s:?}"))),
        },
    };
    let rep = match shift {
        Some(t) => rep.shift_trace(&t),
        None => rep,
    };
    rep.validate()?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn round_trip_preset_with_reps() {
        for lie in presets::all() {
            let n = lie.dim();
            let pi = DRep::adjoint(&lie);
            let u = omega_rep(n, 1).unwrap();
            let chi = ChiSpec::TrAd;
            let v = algebra_json(&lie, Some(&chi), Some(&pi), Some(&u));
            let back = parse_algebra(&v, &lie.name).unwrap();
            assert_eq!(back.lie.entries(), lie.entries());
            assert_eq!(back.pi.as_ref(), Some(&pi));
            assert_eq!(back.u.as_ref(), Some(&u));
            assert_eq!(back.chi, Some(chi));
            assert_eq!(algebra_json(&back.lie, back.chi.as_ref(), back.pi.as_ref(), back.u.as_ref()), v);
        }
    }

    #[test]
    fn schema_is_literal() {
        let v = algebra_json(&presets::solv2(), Some(&ChiSpec::Zero), None, None);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"brackets":[[1,2,2,"1/1"]],"chi":"zero","dim":2}"#);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            json!({"dim": 2, "brackets": [[2, 1, 1, "1"]]}),
            json!({"dim": 2, "brackets": [[1, 2, 3, "1"]]}),
            json!({"dim": 2, "brackets": [[1, 2, 1, 1]]}),
            json!({"dim": 2, "extra": 1}),
            json!({"dim": 3, "brackets": [[1, 2, 3, "1"]], "chi": ["0", "0", "1"]}),
            json!({"dim": 1, "pi": {"dim": 1, "mats": []}}),
        ];
        for b in bad {
            assert!(parse_algebra(&b, "x").is_err(), "{b}");
        }
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let v = json!({"dim": 3, "brackets": [[1, 2, 3, "1"], [2, 3, 2, "1"]]});
        assert!(parse_algebra(&v, "x").is_err());
    }

    #[test]
    fn selectors() {
        let lie = presets::abelian(2);
        assert_eq!(parse_u(2, "omega:1").unwrap(), omega_rep(2, 1).unwrap());
        assert_eq!(parse_u(2, "trivial+1").unwrap().id_scalar, Some(q(2)));
        assert!(parse_u(2, "omega:5").is_err());
        assert_eq!(parse_pi(&lie, "trivial:2").unwrap().dim, 2);
        assert_eq!(parse_pi(&lie, "char:1,0").unwrap().mats[0][0][0], q(1));
        assert!(parse_pi(&lie, "bogus").is_err());
        assert_eq!(ChiSpec::parse("1/2,0").unwrap(), ChiSpec::Explicit(vec![crate::rational::qf(1, 2), q(0)]));
    }

    #[test]
    fn trunc_resolution() {
        assert_eq!(resolve_trunc(Some(5)).unwrap(), 5);
    }
}
