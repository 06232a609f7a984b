//! Report assembly: every run produces either human-readable text or a
//! canonical JSON document. Output is byte-identical for identical input
//! (object keys are sorted, no floating point anywhere, exact rationals
//! serialize as "numerator/denominator" strings).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use slicebound::obstruction::{ObstructionReport, Verdict};

pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, input: &[u8], as_json: bool) -> String {
        if as_json {
            let envelope = json!({
                "schema": 1,
                "command": self.command,
                "input_digest": fnv1a_hex(input),
                "result": self.body,
            });
            let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// 64-bit FNV-1a over the raw input, as stable run provenance.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Exact rational as "numerator/denominator", always with the slash.
pub fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human-friendly rational: integers drop the denominator.
pub fn rat_pretty(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn big_str(b: &BigInt) -> String {
    b.to_string()
}

/// Shared rendering for obstruction reports (obstruct and family).
pub fn render_obstruction(
    report: &ObstructionReport,
    genus: u64,
    sigma_minus_one: i64,
    verbose: bool,
) -> (Value, String) {
    let failures = report.ledger.iter().filter(|l| !l.star_holds).count();
    let mut body = json!({
        "verdict": report.verdict.to_string(),
        "genus_tested": genus,
        "sigma_at_minus_one": sigma_minus_one,
        "rank": {
            "min_generators": report.rank.min_generators,
            "rank_bound": report.rank.rank_bound,
            "forces_nontrivial_summand": report.rank.forces_nontrivial_summand,
        },
        "ledger_summary": {
            "characters": report.ledger.len(),
            "star_failures": failures,
        },
    });
    let obj = body.as_object_mut().unwrap();
    if verbose {
        let lines: Vec<Value> = report
            .ledger
            .iter()
            .map(|l| {
                json!({
                    "character": l.character.exponents().iter().map(big_str).collect::<Vec<_>>(),
                    "order": big_str(&l.character.order()),
                    "sigma": rat_str(&l.value.sigma),
                    "eta": l.value.eta,
                    "star_holds": l.star_holds,
                })
            })
            .collect();
        obj.insert("ledger".into(), Value::Array(lines));
    }
    if let Some(survey) = &report.metabolizers {
        let lines: Vec<Value> = survey
            .lines
            .iter()
            .map(|l| {
                json!({
                    "generators": l.generators.iter()
                        .map(|g| g.iter().map(big_str).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "order": big_str(&l.order),
                    "survives": l.survives,
                })
            })
            .collect();
        obj.insert(
            "metabolizers".into(),
            json!({
                "note": survey.note,
                "lines": lines,
            }),
        );
    }

    let mut text = format!("genus tested: {genus}\n");
    text.push_str(&format!("sigma_L(-1) = {sigma_minus_one}\n"));
    text.push_str(&format!(
        "minimal generators: {} (admissible rank {})\n",
        report.rank.min_generators, report.rank.rank_bound
    ));
    text.push_str(&format!(
        "characters checked: {}, violating (*): {}\n",
        report.ledger.len(),
        failures
    ));
    if verbose {
        for l in &report.ledger {
            text.push_str(&format!(
                "  chi = {}  sigma = {}  eta = {}  (*) {}\n",
                l.character,
                rat_pretty(&l.value.sigma),
                l.value.eta,
                if l.star_holds { "holds" } else { "fails" }
            ));
        }
    }
    if let Some(survey) = &report.metabolizers {
        let surviving = survey.lines.iter().filter(|l| l.survives).count();
        text.push_str(&format!(
            "metabolizers of the odd part: {}, surviving (*): {}\n",
            survey.lines.len(),
            surviving
        ));
    }
    text.push_str(&format!("verdict: {}\n", report.verdict));
    if report.verdict == Verdict::Obstructed {
        text.push_str(&format!("no genus-{genus} surface exists\n"));
    }
    (body, text)
}
