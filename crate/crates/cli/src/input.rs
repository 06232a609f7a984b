//! JSON input document: parsing and validation with error messages that
//! name the offending key.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "seifert": { "matrix": [[-1, 1], [0, -1]], "mu": 1, "genus": 1 },
//!   "surgery": {
//!     "linking_matrix": [[2]],
//!     "cables": [{ "p": 1, "copies": 1, "twist": 2 }],
//!     "lprime": { "unknotted_split": true }
//!   },
//!   "character": { "p": [1], "q": 2, "r": 1 },
//!   "family": { "h": 1, "sigma_K": 2 },
//!   "query": { "genus": 0, "lambda_list": [[1, 2], [1, 3]] }
//! }
//! ```
//!
//! All integers may be given as JSON numbers or as decimal strings (for
//! values beyond 64 bits). The `lprime` signature source is one of
//! `{"unknotted_split": true}` (default), `{"seifert": {...}}`, or
//! `{"signatures": [{"r":1,"q":3,"signature":0,"nullity":0}]}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;
use std::collections::BTreeMap;

use slicebound::casson_gordon::{CableSpec, SignatureSource, SurgeryPresentation};
use slicebound::exact::IntMatrix;
use slicebound::forms::{SeifertMatrix, SigNull};

use crate::CliError;

pub struct InputDocument {
    root: Value,
}

fn schema_err(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

impl InputDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        let root: Value = serde_json::from_slice(bytes)
            .map_err(|e| schema_err(format!("invalid JSON: {e}")))?;
        if !root.is_object() {
            return Err(schema_err("input document must be a JSON object"));
        }
        if let Some(v) = root.get("schema") {
            if v.as_i64() != Some(1) {
                return Err(schema_err(format!(
                    "\"schema\" must be 1, got {v}"
                )));
            }
        }
        Ok(InputDocument { root })
    }

    fn section(&self, key: &str) -> Result<&Value, CliError> {
        self.root
            .get(key)
            .ok_or_else(|| schema_err(format!("missing required key \"{key}\"")))
    }

    pub fn seifert(&self) -> Result<SeifertMatrix, CliError> {
        parse_seifert(self.section("seifert")?, "seifert")
    }

    pub fn surgery_matrix(&self) -> Result<IntMatrix, CliError> {
        let s = self.section("surgery")?;
        let m = s
            .get("linking_matrix")
            .ok_or_else(|| schema_err("missing \"surgery.linking_matrix\""))?;
        let m = parse_int_matrix(m, "surgery.linking_matrix")?;
        m.require_square()
            .map_err(|e| schema_err(format!("\"surgery.linking_matrix\": {e}")))?;
        Ok(m)
    }

    /// Full surgery presentation; when `cables` is absent, the minimal
    /// cables realizing `default_p` (with the framings as twists) are used.
    pub fn surgery_presentation(
        &self,
        default_p: Option<&[BigInt]>,
    ) -> Result<SurgeryPresentation, CliError> {
        let s = self.section("surgery")?;
        let matrix = self.surgery_matrix()?;
        let n = matrix.rows();
        let cables: Vec<CableSpec> = match s.get("cables") {
            Some(v) => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| schema_err("\"surgery.cables\" must be an array"))?;
                if arr.len() != n {
                    return Err(schema_err(format!(
                        "\"surgery.cables\" has {} entries for {n} components",
                        arr.len()
                    )));
                }
                arr.iter()
                    .enumerate()
                    .map(|(i, c)| parse_cable(c, &format!("surgery.cables[{i}]")))
                    .collect::<Result<_, _>>()?
            }
            None => {
                let Some(p) = default_p else {
                    return Err(schema_err(
                        "missing \"surgery.cables\" and no character to derive them from",
                    ));
                };
                if p.len() != n {
                    return Err(schema_err(format!(
                        "\"character.p\" has {} entries for {n} components",
                        p.len()
                    )));
                }
                (0..n)
                    .map(|i| {
                        let twist = matrix[(i, i)].to_i64().ok_or_else(|| {
                            schema_err(format!("framing at component {i} out of range"))
                        })?;
                        let pi = p[i].to_i64().ok_or_else(|| {
                            schema_err(format!("\"character.p[{i}]\" out of range"))
                        })?;
                        Ok::<_, CliError>(CableSpec::minimal(pi, twist))
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        let source = match s.get("lprime") {
            None => SignatureSource::UnknottedSplit,
            Some(l) => parse_lprime(l)?,
        };
        SurgeryPresentation::new(matrix, cables, source).map_err(CliError::from)
    }

    pub fn character(&self) -> Result<(Vec<BigInt>, u64, i64), CliError> {
        let c = self.section("character")?;
        let p = c
            .get("p")
            .ok_or_else(|| schema_err("missing \"character.p\""))?;
        let p = p
            .as_array()
            .ok_or_else(|| schema_err("\"character.p\" must be an array"))?
            .iter()
            .enumerate()
            .map(|(i, v)| parse_bigint(v, &format!("character.p[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let q = parse_u64(
            c.get("q")
                .ok_or_else(|| schema_err("missing \"character.q\""))?,
            "character.q",
        )?;
        if q == 0 {
            return Err(schema_err("\"character.q\" must be positive"));
        }
        let r = match c.get("r") {
            Some(v) => parse_i64(v, "character.r")?,
            None => 1,
        };
        Ok((p, q, r))
    }

    pub fn family(&self) -> Result<(u32, FamilyCompanion), CliError> {
        let f = self.section("family")?;
        let h = parse_u64(
            f.get("h").ok_or_else(|| schema_err("missing \"family.h\""))?,
            "family.h",
        )?;
        if h == 0 {
            return Err(schema_err("\"family.h\" must be at least 1"));
        }
        let companion = match (f.get("sigma_K"), f.get("knot_seifert")) {
            (Some(s), None) => FamilyCompanion::SigmaK(parse_i64(s, "family.sigma_K")?),
            (None, Some(k)) => {
                let v = if k.is_array() {
                    let m = parse_int_matrix(k, "family.knot_seifert")?;
                    SeifertMatrix::new(m, 1, None)
                        .map_err(|e| schema_err(format!("\"family.knot_seifert\": {e}")))?
                } else {
                    parse_seifert(k, "family.knot_seifert")?
                };
                FamilyCompanion::Knot(v)
            }
            (Some(_), Some(_)) => {
                return Err(schema_err(
                    "\"family\" takes either \"sigma_K\" or \"knot_seifert\", not both",
                ))
            }
            (None, None) => {
                return Err(schema_err(
                    "\"family\" needs \"sigma_K\" or \"knot_seifert\"",
                ))
            }
        };
        Ok((h as u32, companion))
    }

    pub fn query_genus(&self) -> Result<u64, CliError> {
        let q = self.section("query")?;
        parse_u64(
            q.get("genus")
                .ok_or_else(|| schema_err("missing \"query.genus\""))?,
            "query.genus",
        )
    }

    pub fn lambda_list(&self, default: &[(i64, u64)]) -> Result<Vec<(i64, u64)>, CliError> {
        let Some(q) = self.root.get("query") else {
            return Ok(default.to_vec());
        };
        let Some(list) = q.get("lambda_list") else {
            return Ok(default.to_vec());
        };
        let arr = list
            .as_array()
            .ok_or_else(|| schema_err("\"query.lambda_list\" must be an array"))?;
        arr.iter()
            .enumerate()
            .map(|(i, pair)| {
                let key = format!("query.lambda_list[{i}]");
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| schema_err(format!("\"{key}\" must be a pair [r, q]")))?;
                let r = parse_i64(&pair[0], &format!("{key}[0]"))?;
                let q = parse_u64(&pair[1], &format!("{key}[1]"))?;
                if q == 0 {
                    return Err(schema_err(format!("\"{key}\": q must be positive")));
                }
                Ok((r, q))
            })
            .collect()
    }
}

pub enum FamilyCompanion {
    SigmaK(i64),
    Knot(SeifertMatrix),
}

fn parse_bigint(v: &Value, key: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema_err(format!("\"{key}\" must be an integer, got {n}")))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| schema_err(format!("\"{key}\" is not a decimal integer: {s:?}"))),
        other => Err(schema_err(format!(
            "\"{key}\" must be an integer, got {other}"
        ))),
    }
}

fn parse_i64(v: &Value, key: &str) -> Result<i64, CliError> {
    parse_bigint(v, key)?
        .to_i64()
        .ok_or_else(|| schema_err(format!("\"{key}\" out of range")))
}

fn parse_u64(v: &Value, key: &str) -> Result<u64, CliError> {
    parse_bigint(v, key)?
        .to_u64()
        .ok_or_else(|| schema_err(format!("\"{key}\" must be a nonnegative integer in range")))
}

fn parse_int_matrix(v: &Value, key: &str) -> Result<IntMatrix, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema_err(format!("\"{key}\" must be an array of rows")))?;
    let mut data = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| schema_err(format!("\"{key}[{i}]\" must be an array")))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            out.push(parse_bigint(cell, &format!("{key}[{i}][{j}]"))?);
        }
        data.push(out);
    }
    IntMatrix::from_rows(data).map_err(|e| schema_err(format!("\"{key}\": {e}")))
}

fn parse_seifert(v: &Value, key: &str) -> Result<SeifertMatrix, CliError> {
    let m = v
        .get("matrix")
        .ok_or_else(|| schema_err(format!("missing \"{key}.matrix\"")))?;
    let matrix = parse_int_matrix(m, &format!("{key}.matrix"))?;
    let mu = match v.get("mu") {
        Some(x) => parse_u64(x, &format!("{key}.mu"))? as u32,
        None => 1,
    };
    if mu == 0 {
        return Err(schema_err(format!("\"{key}.mu\" must be at least 1")));
    }
    let genus = match v.get("genus") {
        Some(x) => Some(parse_u64(x, &format!("{key}.genus"))? as u32),
        None => None,
    };
    SeifertMatrix::new(matrix, mu, genus).map_err(|e| schema_err(format!("\"{key}\": {e}")))
}

fn parse_cable(v: &Value, key: &str) -> Result<CableSpec, CliError> {
    let p = parse_i64(
        v.get("p")
            .ok_or_else(|| schema_err(format!("missing \"{key}.p\"")))?,
        &format!("{key}.p"),
    )?;
    let twist = parse_i64(
        v.get("twist")
            .ok_or_else(|| schema_err(format!("missing \"{key}.twist\"")))?,
        &format!("{key}.twist"),
    )?;
    let copies = match v.get("copies") {
        Some(c) => parse_u64(c, &format!("{key}.copies"))?,
        None => return Ok(CableSpec::minimal(p, twist)),
    };
    CableSpec::new(p, copies, twist).map_err(|e| schema_err(format!("\"{key}\": {e}")))
}

fn parse_lprime(v: &Value) -> Result<SignatureSource, CliError> {
    if let Some(s) = v.get("seifert") {
        return Ok(SignatureSource::Seifert(parse_seifert(
            s,
            "surgery.lprime.seifert",
        )?));
    }
    if let Some(arr) = v.get("signatures") {
        let arr = arr
            .as_array()
            .ok_or_else(|| schema_err("\"surgery.lprime.signatures\" must be an array"))?;
        let mut table = BTreeMap::new();
        for (i, entry) in arr.iter().enumerate() {
            let key = format!("surgery.lprime.signatures[{i}]");
            let r = parse_i64(
                entry
                    .get("r")
                    .ok_or_else(|| schema_err(format!("missing \"{key}.r\"")))?,
                &format!("{key}.r"),
            )?;
            let q = parse_u64(
                entry
                    .get("q")
                    .ok_or_else(|| schema_err(format!("missing \"{key}.q\"")))?,
                &format!("{key}.q"),
            )?;
            let signature = parse_i64(
                entry
                    .get("signature")
                    .ok_or_else(|| schema_err(format!("missing \"{key}.signature\"")))?,
                &format!("{key}.signature"),
            )?;
            let nullity = parse_u64(
                entry
                    .get("nullity")
                    .ok_or_else(|| schema_err(format!("missing \"{key}.nullity\"")))?,
                &format!("{key}.nullity"),
            )? as usize;
            if q == 0 {
                return Err(schema_err(format!("\"{key}.q\" must be positive")));
            }
            table.insert((r.rem_euclid(q as i64), q), SigNull { signature, nullity });
        }
        return Ok(SignatureSource::Tabulated(table));
    }
    if v.get("unknotted_split").is_some() {
        return Ok(SignatureSource::UnknottedSplit);
    }
    Err(schema_err(
        "\"surgery.lprime\" must contain \"unknotted_split\", \"seifert\", or \"signatures\"",
    ))
}
