//! Command-line front end: JSON in, deterministic reports out.
//!
//! Exit codes: 0 success, 2 malformed input (schema), 3 precondition
//! violated (valid JSON, invalid mathematics), 4 resource bound exceeded.

mod input;
mod report;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

use slicebound::casson_gordon::{link_cg, CharVector};
use slicebound::exact::poly::prime_power_base;
use slicebound::forms::{alexander_polynomial, tristram_levine};
use slicebound::homology::{
    beta_eval, enumerate_characters, linking_form_from_presentation,
    self_annihilating_characters, OrderFilter,
};
use slicebound::obstruction::family::{family_run, Companion};
use slicebound::obstruction::{
    murasugi_tristram_bound, theorem_main_check, GenusQuery, SurgeryCg,
};

use input::{FamilyCompanion, InputDocument};
use report::{big_str, rat_pretty, rat_str, render_obstruction, Report};

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Precondition(String),
    Resource(String),
}

impl From<slicebound::Error> for CliError {
    fn from(e: slicebound::Error) -> Self {
        if e.is_resource_bound() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Precondition(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(
    name = "slicebound",
    version,
    about = "Exact slice-genus obstructions for links: signatures, linking forms, and covering invariants"
)]
struct Cli {
    /// Input JSON document; reads stdin when absent or "-"
    #[arg(long, global = true)]
    input: Option<std::path::PathBuf>,
    /// Emit a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Include the full per-character ledger in reports
    #[arg(long, global = true)]
    verbose: bool,
    /// Bound for exhaustive subgroup searches
    #[arg(long, global = true, default_value_t = 6561)]
    max_group_order: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tristram-Levine signatures/nullities and the Alexander polynomial
    Tl,
    /// Alexander polynomial only
    Alexander,
    /// Classical slice-genus lower bound from prime-power signatures
    Mt,
    /// Linking form of the double branched cover from a surgery matrix
    LinkingForm,
    /// Enumerate characters of the linking-form group
    Characters {
        /// Keep characters of exactly this prime order
        #[arg(long)]
        prime: Option<u64>,
        /// Keep characters of prime-power order
        #[arg(long, conflicts_with = "prime")]
        prime_power: bool,
        /// Keep only self-annihilating characters (requires --prime)
        #[arg(long, requires = "prime")]
        self_annihilating: bool,
        /// List the metabolizers of the linking form instead
        #[arg(long, conflicts_with_all = ["prime", "prime_power", "self_annihilating"])]
        metabolizers: bool,
    },
    /// Covering invariants (sigma, eta) of one character via the surgery formula
    Cg,
    /// The covering-invariant slice-genus test on a surgery presentation
    Obstruct,
    /// Run both obstructions for the built-in example family
    Family,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Schema(m)) => {
            eprintln!("error (schema): {m}");
            ExitCode::from(2)
        }
        Err(CliError::Precondition(m)) => {
            eprintln!("error (precondition): {m}");
            ExitCode::from(3)
        }
        Err(CliError::Resource(m)) => {
            eprintln!("error (resource): {m}");
            ExitCode::from(4)
        }
    }
}

fn read_input(cli: &Cli) -> Result<Vec<u8>, CliError> {
    match &cli.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Schema(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let bytes = read_input(cli)?;
    let doc = InputDocument::parse(&bytes)?;
    let report = match &cli.command {
        Command::Tl => cmd_tl(&doc)?,
        Command::Alexander => cmd_alexander(&doc)?,
        Command::Mt => cmd_mt(&doc)?,
        Command::LinkingForm => cmd_linking_form(&doc)?,
        Command::Characters {
            prime,
            prime_power,
            self_annihilating,
            metabolizers,
        } => {
            if *metabolizers {
                cmd_metabolizers(&doc, cli)?
            } else {
                cmd_characters(&doc, *prime, *prime_power, *self_annihilating)?
            }
        }
        Command::Cg => cmd_cg(&doc)?,
        Command::Obstruct => cmd_obstruct(&doc, cli)?,
        Command::Family => cmd_family(&doc, cli)?,
    };
    print!("{}", report.render(&bytes, cli.json));
    Ok(())
}

fn cmd_tl(doc: &InputDocument) -> Result<Report, CliError> {
    let v = doc.seifert()?;
    let lambdas = doc.lambda_list(&[(1, 2)])?;
    let mut rows = Vec::new();
    let mut text = String::from("Tristram-Levine signatures\n");
    for &(r, q) in &lambdas {
        let sn = tristram_levine(&v, r, q)?;
        text.push_str(&format!(
            "  lambda = zeta_{q}^{r}: signature {}, nullity {}\n",
            sn.signature, sn.nullity
        ));
        rows.push(json!({
            "r": r,
            "q": q,
            "signature": sn.signature,
            "nullity": sn.nullity,
        }));
    }
    let delta = alexander_polynomial(&v);
    let at_minus_one = delta.eval(&BigInt::from(-1));
    text.push_str(&format!("Alexander polynomial: {delta}\n"));
    text.push_str(&format!("Delta(-1) = {at_minus_one}\n"));
    Ok(Report {
        command: "tl",
        body: json!({
            "table": rows,
            "alexander": delta.to_string(),
            "alexander_coeffs": delta.coeffs().iter().map(big_str).collect::<Vec<_>>(),
            "determinant_at_minus_one": big_str(&at_minus_one),
        }),
        text,
    })
}

fn cmd_alexander(doc: &InputDocument) -> Result<Report, CliError> {
    let v = doc.seifert()?;
    let delta = alexander_polynomial(&v);
    let at_minus_one = delta.eval(&BigInt::from(-1));
    Ok(Report {
        command: "alexander",
        body: json!({
            "alexander": delta.to_string(),
            "alexander_coeffs": delta.coeffs().iter().map(big_str).collect::<Vec<_>>(),
            "determinant_at_minus_one": big_str(&at_minus_one),
        }),
        text: format!("Alexander polynomial: {delta}\nDelta(-1) = {at_minus_one}\n"),
    })
}

fn cmd_mt(doc: &InputDocument) -> Result<Report, CliError> {
    let v = doc.seifert()?;
    let lambdas = doc.lambda_list(&[(1, 2)])?;
    for &(_, q) in &lambdas {
        if prime_power_base(q).is_none() {
            return Err(CliError::Precondition(format!(
                "q must be a prime power, got q = {q}"
            )));
        }
    }
    let mut rows = Vec::new();
    let mut text = String::from("classical signature bound\n");
    let mut best = 0u64;
    for &(r, q) in &lambdas {
        let bound = murasugi_tristram_bound(&v, &[(r, q)])?;
        best = best.max(bound);
        text.push_str(&format!("  lambda = zeta_{q}^{r}: genus >= {bound}\n"));
        rows.push(json!({"r": r, "q": q, "bound": bound}));
    }
    text.push_str(&format!("slice genus >= {best}\n"));
    Ok(Report {
        command: "mt",
        body: json!({"per_lambda": rows, "bound": best}),
        text,
    })
}

fn cmd_linking_form(doc: &InputDocument) -> Result<Report, CliError> {
    let m = doc.surgery_matrix()?;
    let form = linking_form_from_presentation(&m).map_err(|e| match e {
        slicebound::Error::SingularPresentation => CliError::Precondition(
            "linking matrix is singular: the double cover is not a rational homology sphere \
             (the determinant must be nonzero)"
                .into(),
        ),
        other => CliError::from(other),
    })?;
    let n = form.rank();
    let gram: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| form.gram_entry(i, j).to_string()).collect())
        .collect();
    let mut text = format!("group: {}\n", form.group());
    text.push_str("gram matrix (Q/Z):\n");
    for row in &gram {
        text.push_str(&format!("  [{}]\n", row.join(" ")));
    }
    Ok(Report {
        command: "linking-form",
        body: json!({
            "group": form.factors().iter().map(big_str).collect::<Vec<_>>(),
            "group_display": form.group().to_string(),
            "gram": gram,
        }),
        text,
    })
}

fn cmd_characters(
    doc: &InputDocument,
    prime: Option<u64>,
    prime_power: bool,
    self_annihilating: bool,
) -> Result<Report, CliError> {
    let m = doc.surgery_matrix()?;
    let form = linking_form_from_presentation(&m)?;
    let group = form.group();
    let chars = if self_annihilating {
        let p = prime.expect("clap enforces --prime with --self-annihilating");
        self_annihilating_characters(&form, p)
    } else {
        let filter = match (prime, prime_power) {
            (Some(p), _) => OrderFilter::Prime(p),
            (None, true) => OrderFilter::PrimePower,
            (None, false) => OrderFilter::All,
        };
        enumerate_characters(&group, filter)
    };
    let mut rows = Vec::new();
    let mut text = format!("group: {group}\n{} characters\n", chars.len());
    for chi in &chars {
        let beta = beta_eval(&form, chi, chi);
        text.push_str(&format!(
            "  {chi}  order {}  beta(chi,chi) = {beta}\n",
            chi.order()
        ));
        rows.push(json!({
            "exponents": chi.exponents().iter().map(big_str).collect::<Vec<_>>(),
            "order": big_str(&chi.order()),
            "beta_self": beta.to_string(),
        }));
    }
    Ok(Report {
        command: "characters",
        body: json!({
            "group": form.factors().iter().map(big_str).collect::<Vec<_>>(),
            "count": chars.len(),
            "characters": rows,
        }),
        text,
    })
}

fn cmd_metabolizers(doc: &InputDocument, cli: &Cli) -> Result<Report, CliError> {
    let m = doc.surgery_matrix()?;
    let form = linking_form_from_presentation(&m)?;
    let bound = BigInt::from(cli.max_group_order);
    let mets = slicebound::homology::enumerate_metabolizers(&form, &bound)?;
    let mut rows = Vec::new();
    let mut text = format!(
        "group: {}\n{} metabolizers\n",
        form.group(),
        mets.len()
    );
    for met in &mets {
        let gens: Vec<String> = met
            .generators()
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        text.push_str(&format!(
            "  order {}: generated by {}\n",
            met.order(),
            gens.join(", ")
        ));
        rows.push(json!({
            "order": big_str(&met.order()),
            "generators": met.generators().iter()
                .map(|g| g.iter().map(big_str).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }));
    }
    Ok(Report {
        command: "characters",
        body: json!({
            "group": form.factors().iter().map(big_str).collect::<Vec<_>>(),
            "count": mets.len(),
            "metabolizers": rows,
        }),
        text,
    })
}

fn cmd_cg(doc: &InputDocument) -> Result<Report, CliError> {
    let (p, q, r) = doc.character()?;
    let pres = doc.surgery_presentation(Some(&p))?;
    let chi = CharVector::new(p, q).map_err(CliError::from)?;
    let value = link_cg(&pres, &chi, r)?;
    let text = format!(
        "sigma(M, chi^{r}) = {}\neta(M, chi^{r}) = {}\n",
        rat_pretty(&value.sigma),
        value.eta
    );
    Ok(Report {
        command: "cg",
        body: json!({
            "r": r,
            "q": q,
            "sigma": rat_str(&value.sigma),
            "eta": value.eta,
        }),
        text,
    })
}

fn cmd_obstruct(doc: &InputDocument, cli: &Cli) -> Result<Report, CliError> {
    let seifert = doc.seifert()?;
    let genus = doc.query_genus()?;
    let matrix = doc.surgery_matrix()?;
    let source = SurgeryCg::new(matrix)?;
    let beta = source.form().clone();
    let sigma_minus_one = tristram_levine(&seifert, 1, 2)?.signature;
    let query = GenusQuery {
        genus,
        mu: seifert.mu(),
        sigma_minus_one,
        beta,
    };
    let bound = BigInt::from(cli.max_group_order);
    let report = theorem_main_check(&query, &source, &bound)?;
    let (body, text) = render_obstruction(&report, genus, sigma_minus_one, cli.verbose);
    Ok(Report {
        command: "obstruct",
        body,
        text,
    })
}

fn cmd_family(doc: &InputDocument, cli: &Cli) -> Result<Report, CliError> {
    let (h, companion) = doc.family()?;
    let companion = match companion {
        FamilyCompanion::SigmaK(s) => Companion::SigmaK(s),
        FamilyCompanion::Knot(v) => Companion::Knot(v),
    };
    let bound = BigInt::from(cli.max_group_order);
    let out = family_run(h, &companion, &bound)?;
    let (mut body, obstruction_text) = render_obstruction(
        &out.report,
        out.genus_tested,
        out.sigma_minus_one,
        cli.verbose,
    );
    let obj = body.as_object_mut().expect("render returns an object");
    obj.insert("h".into(), json!(out.h));
    obj.insert("sigma_K".into(), json!(out.sigma_k));
    obj.insert(
        "murasugi_tristram_bound".into(),
        json!(out.murasugi_tristram_bound),
    );
    obj.insert(
        "slice_genus".into(),
        match out.slice_genus {
            Some(g) => json!(g),
            None => Value::Null,
        },
    );
    let mut text = format!(
        "family member: h = {}, sigma_K(zeta_3) = {}\n",
        out.h, out.sigma_k
    );
    text.push_str(&format!(
        "classical signature bound: genus >= {} (silent for every root of unity)\n",
        out.murasugi_tristram_bound
    ));
    text.push_str(&obstruction_text);
    match out.slice_genus {
        Some(g) => text.push_str(&format!("slice genus = {g}\n")),
        None => text.push_str(&format!(
            "slice genus between {} and {} (this test is silent at genus {})\n",
            out.murasugi_tristram_bound, out.h, out.genus_tested
        )),
    }
    Ok(Report {
        command: "family",
        body,
        text,
    })
}
