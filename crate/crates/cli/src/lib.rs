//! Command-line front end for `ringcodes`.
//!
//! Exit codes: 0 when every requested property holds, 1 when one fails,
//! 2 on input, parse or budget errors.

pub mod scenarios;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringcodes_core::{
    adiag1_matrix_a, adiag1_matrix_b, adiag3_matrix, block_adiag_matrix, diag1_matrix, resolve_u,
    Budget, CertifiedMatrix, Error, LinearCode, Matrix, MpcSpec, Result, Ring,
};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ringcodes",
    version,
    about = "Matrix-product codes over finite commutative rings"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of candidates any exhaustive search may visit.
    #[arg(long, global = true, env = "RINGCODES_BUDGET", default_value_t = Budget::DEFAULT.limit())]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    SelfOrthogonal,
    SelfDual,
    Equivalence,
}

impl Expect {
    fn name(self) -> &'static str {
        match self {
            Expect::SelfOrthogonal => "self-orthogonal",
            Expect::SelfDual => "self-dual",
            Expect::Equivalence => "equivalence",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build [C_1 ... C_s] A, evaluate every sufficient condition and check properties directly.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Property the code must have; repeatable.
        #[arg(long, value_enum)]
        expect: Vec<Expect>,
        /// Also compute the dual as [C_1^⊥ ... C_s^⊥](A^-1)^t and compare with brute force.
        #[arg(long)]
        use_dual_theorem: bool,
    },
    /// Run a named worked example and print each expectation.
    Reproduce {
        /// ex1, ex2, z25-selfdual, prime-square:<p>, lemma-diag1:<ring>:<u>, lemma-adiag1:<ring>, lemma-adiag3:<ring>
        scenario: String,
    },
    /// Build a special matrix and print its certificate.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        ring: String,
        /// Ring element `u`; defaults to 1 for diag1 and to a square root of -1 otherwise.
        #[arg(long)]
        u: Option<String>,
        /// Block size for `block`.
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Dual of a code, or of a matrix-product code when --matrix is given.
    Dual {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        use_dual_theorem: bool,
    },
    /// Exact minimum distance, with the row-code bound when --matrix is given.
    Distance {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Diag1,
    Adiag1a,
    Adiag1b,
    Adiag3,
    Block,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Ring description such as `Z/25` or `Z/9[x]/(x^2+x+2)`; defaults to the ring of the first code.
    #[arg(long)]
    pub ring: Option<String>,
    /// Code description `span <ring> len <m> { (..), .. }`; repeatable, one per matrix row.
    #[arg(long = "code", required = true)]
    pub codes: Vec<String>,
    /// Matrix literal such as `[[1,2],[0,0]]`.
    #[arg(long)]
    pub matrix: Option<String>,
}

/// Result of a command: both renderings and the exit code.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json renders"),
        }
    }
}

pub fn error_output(e: &Error) -> Output {
    Output {
        text: format!("error: {e}"),
        json: json!({ "error": e.to_string() }),
        code: EXIT_ERROR,
    }
}

pub fn run(cli: &Cli) -> Output {
    let budget = Budget::new(cli.budget);
    let result = match &cli.command {
        Command::Verify {
            spec,
            expect,
            use_dual_theorem,
        } => verify(spec, expect, *use_dual_theorem, budget),
        Command::Reproduce { scenario } => scenarios::reproduce(scenario, budget),
        Command::Construct { family, ring, u, s } => {
            construct(*family, ring, u.as_deref(), *s, budget)
        }
        Command::Dual {
            spec,
            use_dual_theorem,
        } => dual(spec, *use_dual_theorem, budget),
        Command::Distance { spec } => distance(spec, budget),
    };
    result.unwrap_or_else(|e| error_output(&e))
}

struct Inputs {
    ring: Ring,
    codes: Vec<LinearCode>,
    matrix: Option<Matrix>,
}

fn parse_inputs(args: &SpecArgs, budget: Budget) -> Result<Inputs> {
    let codes = args
        .codes
        .iter()
        .map(|t| LinearCode::parse(t, budget))
        .collect::<Result<Vec<_>>>()?;
    let ring = match &args.ring {
        Some(t) => Ring::parse(t)?,
        None => codes[0].ring().clone(),
    };
    for (i, c) in codes.iter().enumerate() {
        if c.ring() != &ring {
            return Err(Error::InvalidParameter(format!(
                "code {} is over {}, expected {ring}",
                i + 1,
                c.ring()
            )));
        }
    }
    let matrix = args
        .matrix
        .as_deref()
        .map(|t| Matrix::parse(&ring, t))
        .transpose()?;
    Ok(Inputs {
        ring,
        codes,
        matrix,
    })
}

fn need_matrix(inputs: Inputs) -> Result<(Ring, MpcSpec)> {
    let matrix = inputs
        .matrix
        .ok_or_else(|| Error::InvalidParameter("--matrix is required".into()))?;
    Ok((inputs.ring, MpcSpec::new(inputs.codes, matrix)?))
}

fn code_json(c: &LinearCode) -> Value {
    let mut v = c.to_json();
    v["cardinality"] = json!(c.cardinality());
    v["summary"] = json!(c.summary());
    v
}

fn verify(
    args: &SpecArgs,
    expect: &[Expect],
    use_dual_theorem: bool,
    budget: Budget,
) -> Result<Output> {
    let (ring, spec) = need_matrix(parse_inputs(args, budget)?)?;
    let report = spec.check_conditions(budget);
    let built = spec.build(budget)?;
    let self_orth = Some(built.is_self_orthogonal());
    let self_dual = built.is_self_dual(budget).ok();
    let a = spec.matrix();
    let equivalence = if a.is_square() && a.is_nonsingular()? {
        spec.with_matrix(Matrix::identity(&ring, a.rows()))?
            .build(budget)
            .ok()
            .map(|plain| plain == built)
    } else {
        Some(false)
    };
    let value = |p: Expect| match p {
        Expect::SelfOrthogonal => self_orth,
        Expect::SelfDual => self_dual,
        Expect::Equivalence => equivalence,
    };

    let mut text = vec![
        format!("ring: {ring}"),
        format!("matrix: {a}"),
        format!(
            "code: length {}, {} codewords",
            built.length(),
            built.cardinality()
        ),
        format!("words: {}", built.summary()),
        format!("gram: {}", report.gram),
        "conditions:".to_string(),
    ];
    for c in &report.conditions {
        let h = match c.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "indeterminate",
        };
        text.push(format!("  {:<16} {h:<13} {}", c.id.as_str(), c.detail));
    }
    text.push("conclusions:".to_string());
    for c in &report.conclusions {
        text.push(format!("  {:?} by {}", c.property, c.justified_by));
    }
    text.push("direct checks:".to_string());
    let show = |v: Option<bool>| v.map_or("indeterminate".to_string(), |b| b.to_string());
    for p in [
        Expect::SelfOrthogonal,
        Expect::SelfDual,
        Expect::Equivalence,
    ] {
        text.push(format!("  {:<16} {}", p.name(), show(value(p))));
    }

    let mut json = json!({
        "ring": ring.to_string(),
        "matrix": a.to_json(),
        "code": code_json(&built),
        "report": report.to_json(),
        "properties": {
            "self-orthogonal": self_orth,
            "self-dual": self_dual,
            "equivalence": equivalence,
        },
    });

    if use_dual_theorem {
        let theorem = spec.dual_by_theorem(budget)?;
        let agrees = built.dual_bruteforce(budget).ok().map(|d| d == theorem);
        text.push(format!("dual by theorem: {}", theorem.summary()));
        text.push(format!("dual agrees with brute force: {}", show(agrees)));
        json["dual_theorem"] =
            json!({ "dual": code_json(&theorem), "agrees_with_bruteforce": agrees });
    }

    let mut code = EXIT_PASS;
    let mut expectations = Vec::new();
    for &p in expect {
        let v = value(p).ok_or_else(|| {
            Error::InvalidParameter(format!("{} cannot be decided within the budget", p.name()))
        })?;
        if !v {
            code = EXIT_FAIL;
        }
        text.push(format!("{} {}", if v { "PASS" } else { "FAIL" }, p.name()));
        expectations.push(json!({ "property": p.name(), "holds": v }));
    }
    json["expectations"] = Value::Array(expectations);
    json["verdict"] = json!(if code == EXIT_PASS { "pass" } else { "fail" });
    text.push(format!(
        "verdict: {}",
        if code == EXIT_PASS { "pass" } else { "fail" }
    ));
    Ok(Output {
        text: text.join("\n"),
        json,
        code,
    })
}

pub fn certificate_text(c: &CertifiedMatrix) -> String {
    let deltas: Vec<String> = c.deltas.iter().map(ToString::to_string).collect();
    format!(
        "matrix: {}\ngram: {}\ndeltas: {}\nhypotheses: {}",
        c.matrix,
        c.gram,
        deltas.join(","),
        c.hypotheses.join("; ")
    )
}

/// `min(delta_i d_i)` over the rows, leaving out row `skip` when given.
fn bound_formula(deltas: &[usize], skip: Option<usize>) -> String {
    let terms: Vec<String> = deltas
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(i, &d)| {
            if d == 1 {
                format!("d_{}", i + 1)
            } else {
                format!("{d}d_{}", i + 1)
            }
        })
        .collect();
    format!("min({})", terms.join(","))
}

fn construct(
    family: Family,
    ring: &str,
    u: Option<&str>,
    s: usize,
    budget: Budget,
) -> Result<Output> {
    let ring = Ring::parse(ring)?;
    let u = u.map(|t| ring.parse_element(t)).transpose()?;
    let cert = match family {
        Family::Diag1 => diag1_matrix(&ring, &u.unwrap_or_else(|| ring.one()), budget)?,
        Family::Adiag1a => adiag1_matrix_a(&ring, &resolve_u(&ring, u)?, budget)?,
        Family::Adiag1b => adiag1_matrix_b(&ring, &resolve_u(&ring, u)?, budget)?,
        Family::Adiag3 => adiag3_matrix(&ring, &resolve_u(&ring, u)?, budget)?,
        Family::Block => block_adiag_matrix(&ring, &resolve_u(&ring, u)?, s, budget)?,
    };
    let mut json = cert.to_json();
    json["ring"] = json!(ring.to_string());
    let mut text = certificate_text(&cert);
    let bound = bound_formula(&cert.deltas, None);
    text.push_str(&format!("\nbound: {bound}"));
    json["bound"] = json!(bound);
    if family == Family::Block && s % 2 == 1 {
        let printed = bound_formula(&cert.deltas, Some(s / 2));
        text.push_str(&format!("\nprinted odd bound: {printed}"));
        json["printed_odd_bound"] = json!(printed);
    }
    Ok(Output {
        text,
        json,
        code: EXIT_PASS,
    })
}

fn dual(args: &SpecArgs, use_dual_theorem: bool, budget: Budget) -> Result<Output> {
    let inputs = parse_inputs(args, budget)?;
    let (code, theorem) = if inputs.matrix.is_some() {
        let (_, spec) = need_matrix(inputs)?;
        let theorem = if use_dual_theorem {
            Some(spec.dual_by_theorem(budget)?)
        } else {
            None
        };
        (spec.build(budget)?, theorem)
    } else {
        if inputs.codes.len() != 1 {
            return Err(Error::InvalidParameter(
                "give one --code, or --matrix with one code per row".into(),
            ));
        }
        if use_dual_theorem {
            return Err(Error::InvalidParameter(
                "--use-dual-theorem requires --matrix".into(),
            ));
        }
        (inputs.codes[0].clone(), None)
    };
    let d = code.dual_bruteforce(budget)?;
    let mut text = vec![
        format!(
            "code: length {}, {} codewords",
            code.length(),
            code.cardinality()
        ),
        format!("dual: {} codewords", d.cardinality()),
        format!("dual words: {}", d.summary()),
    ];
    let mut json = json!({ "code": code_json(&code), "dual": code_json(&d) });
    if let Some(t) = theorem {
        let agrees = t == d;
        text.push(format!("dual by theorem agrees: {agrees}"));
        json["dual_theorem_agrees"] = json!(agrees);
    }
    Ok(Output {
        text: text.join("\n"),
        json,
        code: EXIT_PASS,
    })
}

fn distance(args: &SpecArgs, budget: Budget) -> Result<Output> {
    let inputs = parse_inputs(args, budget)?;
    if inputs.matrix.is_none() {
        if inputs.codes.len() != 1 {
            return Err(Error::InvalidParameter(
                "give one --code, or --matrix with one code per row".into(),
            ));
        }
        let c = &inputs.codes[0];
        let d = c.min_distance()?;
        return Ok(Output {
            text: format!("length: {}\nminimum distance: {d}", c.length()),
            json: json!({ "length": c.length(), "min_distance": d }),
            code: EXIT_PASS,
        });
    }
    let (_, spec) = need_matrix(inputs)?;
    let built = spec.build(budget)?;
    let d = built.min_distance()?;
    let terms = spec.distance_terms(budget)?;
    let bound = terms.iter().map(|(a, b)| a * b).min().expect("s >= 1");
    let ds: Vec<usize> = terms.iter().map(|t| t.0).collect();
    let deltas: Vec<usize> = terms.iter().map(|t| t.1).collect();
    Ok(Output {
        text: format!(
            "length: {}\nminimum distance: {d}\ninput distances: {ds:?}\nrow-code distances: {deltas:?}\nbound min d_i*delta_i: {bound}",
            built.length()
        ),
        json: json!({
            "length": built.length(),
            "min_distance": d,
            "input_distances": ds,
            "row_code_distances": deltas,
            "bound": bound,
        }),
        code: EXIT_PASS,
    })
}
