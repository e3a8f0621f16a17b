//! Command-line front end: every operation exposed as a subcommand with a
//! structured, machine-readable report.
//!
//! Exit codes: 0 success (all checks pass), 1 a check failed, 2 invalid
//! input, 3 search budget exhausted, 4 theorem hypothesis violated.

use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contfrac::{dual, expand, point_rule_transcription, CfString, Fraction};
use crate::embedder::{
    canonical_form, count_orbits_mod_chain_reversal, enumerate_embeddings,
    minimal_embedding_rank, EmbedQuery, DEFAULT_NODE_BUDGET,
};
use crate::error::Error;
use crate::lattice::{is_isometric, orthogonal_complement, IntegralLattice};
use crate::lensspace::{
    complement_decomposition, explicit_dual_complement_basis, explicit_dual_embedding,
    lens_build, obstruct, rank_accounting,
};

#[derive(Parser, Debug)]
#[command(
    name = "lenslat",
    about = "Exact lattice-embedding obstructions for lens spaces bounding linear plumbings",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as JSON instead of the human-readable form.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Negative continued-fraction expansion of p/q, with the dual string.
    Expand { p: i64, q: i64 },
    /// Dual (point-rule) string of the expansion of p/q.
    Dual { p: i64, q: i64 },
    /// Enumerate embeddings of the dual plumbing lattice into (Z^N, Id).
    Embed {
        p: i64,
        q: i64,
        /// Rank of the diagonal target lattice.
        #[arg(long)]
        n: usize,
        /// List orbit representatives instead of just counting.
        #[arg(long)]
        list: bool,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Decide the embedding obstruction for #_n CP^2.
    Obstruct {
        p: i64,
        q: i64,
        #[arg(long)]
        n: u64,
        /// Run out-of-family inputs too (theorems not asserted).
        #[arg(long)]
        research: bool,
    },
    /// Orthogonal-complement decomposition of the dual embedding in Id_N.
    Complement {
        p: i64,
        q: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        research: bool,
    },
    /// Run the full proposition suite for one (p, q).
    Verify {
        p: i64,
        q: i64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Sweep coefficient strings and tabulate embedding data per row.
    Census {
        /// Coefficient range: --a <min> <max>.
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
        a: Vec<i64>,
        /// Maximal string length.
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Worker threads for the sweep; 0 means the rayon default.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Allow coefficients below 6 (theorems not asserted).
        #[arg(long)]
        research: bool,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, pass: bool) -> Check {
    Check { name: name.to_string(), pass }
}

fn gram_json(l: &IntegralLattice) -> Value {
    let entries: Vec<i64> = l.gram().iter().flatten().copied().collect();
    json!({ "rank": l.rank(), "entries": entries })
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExhausted { .. } => 3,
        Error::OutOfFamily { .. } => 4,
        _ => 2,
    }
}

/// Run a parsed command line; prints the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let outcome = dispatch(&cli.command);
    match outcome {
        Ok((mut report, code)) => {
            report.timing_ms = start.elapsed().as_millis() as u64;
            print_report(&report, cli.json);
            if code != 0 {
                code
            } else if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(err) => {
            let report = Report {
                command: command_name(&cli.command).to_string(),
                inputs: Value::Null,
                result: json!({ "error": err.to_string() }),
                checks: vec![],
                timing_ms: start.elapsed().as_millis() as u64,
            };
            print_report(&report, cli.json);
            exit_code_for(&err)
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Expand { .. } => "expand",
        Command::Dual { .. } => "dual",
        Command::Embed { .. } => "embed",
        Command::Obstruct { .. } => "obstruct",
        Command::Complement { .. } => "complement",
        Command::Verify { .. } => "verify",
        Command::Census { .. } => "census",
    }
}

type CmdResult = crate::error::Result<(Report, i32)>;

fn dispatch(cmd: &Command) -> CmdResult {
    match *cmd {
        Command::Expand { p, q } => cmd_expand(p, q, "expand"),
        Command::Dual { p, q } => cmd_expand(p, q, "dual"),
        Command::Embed { p, q, n, list, budget } => cmd_embed(p, q, n, list, budget),
        Command::Obstruct { p, q, n, research } => cmd_obstruct(p, q, n, research),
        Command::Complement { p, q, n, budget, research } => {
            cmd_complement(p, q, n, budget, research)
        }
        Command::Verify { p, q, budget } => cmd_verify(p, q, budget),
        Command::Census { ref a, m, budget, threads, research } => {
            let (a_min, a_max) = match a.as_slice() {
                [lo, hi] => (*lo, *hi),
                _ => {
                    return Err(Error::InvalidCfString(
                        "--a takes exactly two values: min max".into(),
                    ))
                }
            };
            cmd_census(a_min, a_max, m, budget, threads, research)
        }
    }
}

fn cmd_expand(p: i64, q: i64, command: &str) -> CmdResult {
    let f = Fraction::new(p, q)?;
    let s = expand(&f)?;
    let d = dual(&s)?;
    let acct = rank_accounting(&s)?;
    let round_trip = crate::contfrac::eval(&s)? == f;
    let dual_complement = crate::contfrac::eval(&d)? == f.complement();
    let mut checks = vec![
        check("eval(expand(p/q)) = p/q", round_trip),
        check("eval(dual) = p/(p-q)", dual_complement),
        check("dual(dual) = id", dual(&d)? == s),
    ];
    if s.coeffs().iter().all(|&a| a >= 3) && s.len() >= 2 {
        checks.push(check(
            "point rule transcription agrees",
            point_rule_transcription(&s)? == d,
        ));
    }
    let report = Report {
        command: command.to_string(),
        inputs: json!({ "p": p, "q": q }),
        result: json!({
            "fraction": f.to_string(),
            "coefficients": s.coeffs(),
            "m": s.len(),
            "dual_fraction": f.complement().to_string(),
            "dual_coefficients": d.coeffs(),
            "dual_rank": acct.dual_rank,
            "minimal_closed_rank": acct.minimal_closed_rank,
            "in_family": s.in_obstruction_family(),
        }),
        checks,
        timing_ms: 0,
    };
    Ok((report, 0))
}

fn cmd_embed(p: i64, q: i64, n: usize, list: bool, budget: u64) -> CmdResult {
    let data = lens_build(p, q)?;
    let query = EmbedQuery::new(
        data.dual_lattice.clone(),
        IntegralLattice::diagonal(n),
    )
    .with_budget(budget);
    let orbits = enumerate_embeddings(&query)?;
    let merged = count_orbits_mod_chain_reversal(&data.dual_lattice, &orbits);
    let mut result = json!({
        "source": "dual plumbing lattice",
        "dual_coefficients": data.dual_string.coeffs(),
        "target_rank": n,
        "orbit_count": orbits.len(),
        "orbit_count_mod_reversal": merged,
        "minimal_closed_rank": data.minimal_closed_rank(),
    });
    if list {
        let reps: Vec<Value> = orbits
            .iter()
            .map(|o| json!(o.representative.matrix()))
            .collect();
        result["orbits"] = Value::Array(reps);
    }
    let checks = vec![check(
        "all representatives verified as embeddings",
        orbits.iter().all(|o| o.representative.is_embedding()),
    )];
    let report = Report {
        command: "embed".to_string(),
        inputs: json!({ "p": p, "q": q, "n": n, "budget": budget }),
        result,
        checks,
        timing_ms: 0,
    };
    Ok((report, 0))
}

fn cmd_obstruct(p: i64, q: i64, n: u64, research: bool) -> CmdResult {
    let data = lens_build(p, q)?;
    let verdict = obstruct(&data, n, research)?;
    let report = Report {
        command: "obstruct".to_string(),
        inputs: json!({ "p": p, "q": q, "n": n, "research": research }),
        result: json!({
            "verdict": verdict.kind,
            "m": verdict.m,
            "n": verdict.n,
            "detail": verdict.detail,
            "in_family": data.in_family,
        }),
        checks: vec![],
        timing_ms: 0,
    };
    Ok((report, 0))
}

fn cmd_complement(p: i64, q: i64, n: usize, budget: u64, research: bool) -> CmdResult {
    let data = lens_build(p, q)?;
    let decomposition = complement_decomposition(&data.string, n, budget, research)?;
    let report = Report {
        command: "complement".to_string(),
        inputs: json!({ "p": p, "q": q, "n": n, "research": research }),
        result: json!({
            "complement_gram": gram_json(&decomposition),
            "chain_gram": gram_json(&data.lattice),
            "extra_diagonal_rank": n - data.minimal_closed_rank(),
        }),
        checks: vec![check("complement isometric to chain + Id", true)],
        timing_ms: 0,
    };
    Ok((report, 0))
}

fn cmd_verify(p: i64, q: i64, budget: u64) -> CmdResult {
    let data = lens_build(p, q)?;
    if !data.in_family {
        return Err(Error::OutOfFamily { coeffs: data.string.coeffs().to_vec() });
    }
    let mut checks = Vec::new();
    let s = &data.string;

    checks.push(check(
        "determinants of both plumbing lattices equal p",
        data.lattice.determinant() == *data.p() && data.dual_lattice.determinant() == *data.p(),
    ));
    let acct = rank_accounting(s)?;
    checks.push(check(
        "rank identity m + rk(dual) = sum(a) - m + 1",
        acct.minimal_closed_rank == data.minimal_closed_rank(),
    ));

    let min_n = data.minimal_closed_rank();
    let found = minimal_embedding_rank(&data.dual_lattice, min_n + 1, budget)?;
    checks.push(check("minimal embedding rank = sum(a) - m + 1", found == Some(min_n)));

    let query = EmbedQuery::new(data.dual_lattice.clone(), IntegralLattice::diagonal(min_n))
        .with_budget(budget);
    let orbits = enumerate_embeddings(&query)?;
    let merged = count_orbits_mod_chain_reversal(&data.dual_lattice, &orbits);
    checks.push(check("unique embedding orbit at the minimal rank", merged == 1));

    let explicit = explicit_dual_embedding(s)?;
    let canon = canonical_form(&explicit)?;
    checks.push(check(
        "explicit construction lies in the found orbit",
        orbits.iter().any(|o| o.representative.matrix() == canon.matrix()),
    ));

    let complement_ok = match orbits.first() {
        Some(orbit) => {
            let (_, complement) = orthogonal_complement(&orbit.representative)?;
            is_isometric(&complement, &data.lattice)?.is_some()
        }
        None => false,
    };
    checks.push(check("orthogonal complement isometric to the chain lattice", complement_ok));

    let basis = explicit_dual_complement_basis(s)?;
    checks.push(check(
        "explicit complement basis has the chain Gram exactly",
        basis.source().gram() == data.lattice.gram(),
    ));

    let report = Report {
        command: "verify".to_string(),
        inputs: json!({ "p": p, "q": q, "budget": budget }),
        result: json!({
            "coefficients": s.coeffs(),
            "dual_coefficients": data.dual_string.coeffs(),
            "m": data.m(),
            "minimal_closed_rank": min_n,
            "orbit_count": orbits.len(),
            "orbit_count_mod_reversal": merged,
        }),
        checks,
        timing_ms: 0,
    };
    Ok((report, 0))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CensusRow {
    coefficients: Vec<i64>,
    p: String,
    q: String,
    m: usize,
    min_n: Option<usize>,
    orbit_count: Option<usize>,
    complement_isometric: Option<bool>,
    budget_exhausted: bool,
}

fn census_row(coeffs: &[i64], budget: u64, research: bool) -> CensusRow {
    let s = CfString::new(coeffs.to_vec()).expect("census coefficients are >= 2");
    let f = crate::contfrac::eval(&s).expect("valid string evaluates");
    let dual_lattice = IntegralLattice::chain(&dual(&s).expect("dual of valid string"));
    let acct = rank_accounting(&s).expect("rank accounting");
    let mut row = CensusRow {
        coefficients: coeffs.to_vec(),
        p: f.p().to_string(),
        q: f.q().to_string(),
        m: s.len(),
        min_n: None,
        orbit_count: None,
        complement_isometric: None,
        budget_exhausted: false,
    };
    match minimal_embedding_rank(&dual_lattice, acct.minimal_closed_rank + 1, budget) {
        Ok(min_n) => row.min_n = min_n,
        Err(Error::BudgetExhausted { .. }) => {
            row.budget_exhausted = true;
            return row;
        }
        Err(_) => return row,
    }
    let Some(min_n) = row.min_n else { return row };
    let query = EmbedQuery::new(dual_lattice.clone(), IntegralLattice::diagonal(min_n))
        .with_budget(budget);
    match enumerate_embeddings(&query) {
        Ok(orbits) => {
            row.orbit_count = Some(count_orbits_mod_chain_reversal(&dual_lattice, &orbits))
        }
        Err(Error::BudgetExhausted { .. }) => {
            row.budget_exhausted = true;
            return row;
        }
        Err(_) => return row,
    }
    match complement_decomposition(&s, min_n, budget, research) {
        Ok(_) => row.complement_isometric = Some(true),
        Err(Error::BudgetExhausted { .. }) => row.budget_exhausted = true,
        Err(Error::ComplementMismatch(_)) => row.complement_isometric = Some(false),
        Err(_) => {}
    }
    row
}

fn census_strings(a_min: i64, a_max: i64, m_max: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let mut stack = vec![Vec::with_capacity(m)];
        while let Some(cur) = stack.pop() {
            if cur.len() == m {
                out.push(cur);
                continue;
            }
            // push in reverse so the pop order is lexicographic
            for a in (a_min..=a_max).rev() {
                let mut next = cur.clone();
                next.push(a);
                stack.push(next);
            }
        }
    }
    out.sort_by_key(|c| (c.len(), c.clone()));
    out
}

fn cmd_census(
    a_min: i64,
    a_max: i64,
    m_max: usize,
    budget: u64,
    threads: usize,
    research: bool,
) -> CmdResult {
    if a_min < 2 || a_min > a_max {
        return Err(Error::InvalidCfString(format!(
            "invalid coefficient range {a_min}..{a_max}"
        )));
    }
    if a_min < 6 && !research {
        return Err(Error::OutOfFamily { coeffs: vec![a_min] });
    }
    let strings = census_strings(a_min, a_max, m_max);
    let compute = |coeffs: &Vec<i64>| census_row(coeffs, budget, research);
    let mut rows: Vec<CensusRow> = if threads == 1 {
        strings.iter().map(compute).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| strings.par_iter().map(compute).collect())
    };
    rows.sort_by_key(|r| (r.m, r.coefficients.clone()));
    let exhausted = rows.iter().any(|r| r.budget_exhausted);
    let checks = vec![check("no budget exhaustion", !exhausted)];
    let report = Report {
        command: "census".to_string(),
        inputs: json!({
            "a_min": a_min, "a_max": a_max, "m_max": m_max,
            "budget": budget, "threads": threads, "research": research,
        }),
        result: json!({
            "row_count": rows.len(),
            "out_of_family": a_min < 6,
            "rows": rows,
        }),
        checks,
        timing_ms: 0,
    };
    Ok((report, if exhausted { 3 } else { 0 }))
}

fn print_report(report: &Report, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        return;
    }
    println!("command: {}", report.command);
    if !report.inputs.is_null() {
        println!("inputs:  {}", compact(&report.inputs));
    }
    if report.command == "census" {
        print_census_table(&report.result);
    } else if let Value::Object(map) = &report.result {
        for (k, v) in map {
            println!("  {k}: {}", compact(v));
        }
    } else {
        println!("  {}", compact(&report.result));
    }
    for c in &report.checks {
        println!("check {:<55} {}", c.name, if c.pass { "ok" } else { "FAIL" });
    }
    println!("elapsed: {} ms", report.timing_ms);
}

fn print_census_table(result: &Value) {
    let Some(rows) = result.get("rows").and_then(Value::as_array) else {
        println!("  {}", compact(result));
        return;
    };
    println!(
        "  {:<18} {:>8} {:>6} {:>3} {:>6} {:>7} {:>12} {:>10}",
        "coefficients", "p", "q", "m", "min-N", "orbits", "complement", "exhausted"
    );
    for row in rows {
        let get = |k: &str| row.get(k).cloned().unwrap_or(Value::Null);
        println!(
            "  {:<18} {:>8} {:>6} {:>3} {:>6} {:>7} {:>12} {:>10}",
            compact(&get("coefficients")),
            get("p").as_str().unwrap_or("?").to_string(),
            get("q").as_str().unwrap_or("?").to_string(),
            compact(&get("m")),
            compact(&get("min_n")),
            compact(&get("orbit_count")),
            compact(&get("complement_isometric")),
            compact(&get("budget_exhausted")),
        );
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => serde_json::to_string(other).expect("value serializes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let (report, code) = cmd_expand(35, 6, "expand").unwrap();
        assert_eq!(code, 0);
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn expand_report_contents() {
        let (report, _) = cmd_expand(35, 6, "expand").unwrap();
        assert_eq!(report.result["coefficients"], json!([6, 6]));
        assert_eq!(report.result["dual_coefficients"], json!([2, 2, 2, 2, 3, 2, 2, 2, 2]));
        assert!(report.all_pass());
    }

    #[test]
    fn invalid_input_is_an_error() {
        assert!(matches!(cmd_expand(6, 4, "expand"), Err(Error::InvalidFraction { .. })));
    }

    #[test]
    fn census_string_generation() {
        assert_eq!(
            census_strings(6, 7, 2),
            vec![
                vec![6],
                vec![7],
                vec![6, 6],
                vec![6, 7],
                vec![7, 6],
                vec![7, 7],
            ]
        );
        assert!(census_strings(6, 6, 0).is_empty());
    }

    #[test]
    fn census_empty_table() {
        let (report, code) = cmd_census(6, 6, 0, DEFAULT_NODE_BUDGET, 1, false).unwrap();
        assert_eq!(code, 0);
        assert_eq!(report.result["row_count"], json!(0));
    }

    #[test]
    fn census_small_sweep() {
        let (report, code) = cmd_census(6, 6, 2, DEFAULT_NODE_BUDGET, 1, false).unwrap();
        assert_eq!(code, 0);
        let rows = report.result["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["min_n"], json!(6));
        assert_eq!(rows[1]["min_n"], json!(11));
        assert_eq!(rows[0]["orbit_count"], json!(1));
        assert_eq!(rows[1]["orbit_count"], json!(1));
    }

    #[test]
    fn verify_passes_for_known_cases() {
        for (p, q) in [(6, 1), (35, 6)] {
            let (report, code) = cmd_verify(p, q, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(code, 0, "({p},{q})");
            assert!(report.all_pass(), "({p},{q}): {:?}", report.checks);
        }
    }

    #[test]
    fn obstruct_exit_code_for_out_of_family() {
        let err = dispatch(&Command::Obstruct { p: 3, q: 2, n: 1, research: false }).unwrap_err();
        assert_eq!(exit_code_for(&err), 4);
    }
}
