//! Command execution, independent of process IO so it can be tested directly.

use std::collections::BTreeSet;

use qhd_core::{
    build_fd_algebra, complete, decide_monomial_qh, decide_qh, minimal_tipset, quotient_algebra, verify_chain,
    AdmissibleOrder, Element, Field, Fp, GroebnerError, HeredityChainReport, HeredityError, Path, PrimeModulus,
    Quiver, Rational, Verdict, VertexId, VertexSet,
};
use thiserror::Error;

use crate::presentation::{parse_order, FieldMode, ParseError, Presentation};
use crate::report::{gb_json, gb_text, qh_json, qh_text, DimJson};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Command {
    Gb,
    Dim,
    Qh { monomial: bool },
    Verify { ordering: Vec<String> },
    Quotient { remove: Vec<String> },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Options {
    pub order: Option<String>,
    /// Semicolon-separated list of orders.
    pub orders: Option<String>,
    pub cap: Option<usize>,
    /// Cap taken from the environment, used when neither the command line nor
    /// the file sets one.
    pub env_cap: Option<usize>,
    pub json: bool,
    pub field: Option<FieldMode>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Groebner(#[from] GroebnerError),
    #[error("{0}")]
    Heredity(#[from] HeredityError),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

/// `2 · (longest relation term) + |Q_0|`.
pub fn default_cap(p: &Presentation) -> usize {
    let longest = p
        .relations
        .iter()
        .flat_map(|r| r.paths().map(Path::len))
        .max()
        .unwrap_or(0);
    2 * longest + p.quiver.vertex_count()
}

/// Orders to try, first one primary. An explicit `--orders` or `--order`
/// wins; several `order` lines in the file are used as given; otherwise the
/// single declared (or default) order is followed by its reverse.
pub fn order_list(p: &Presentation, opts: &Options) -> Result<Vec<AdmissibleOrder>, RunError> {
    if let Some(list) = &opts.orders {
        let orders = list
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_order(&p.quiver, s))
            .collect::<Result<Vec<_>, _>>()?;
        if orders.is_empty() {
            return Err(RunError::Usage("--orders lists no order".into()));
        }
        return Ok(orders);
    }
    if let Some(o) = &opts.order {
        return Ok(vec![parse_order(&p.quiver, o)?]);
    }
    if p.orders.len() > 1 {
        return Ok(p.orders.clone());
    }
    let primary = p.primary_order();
    let reversed = primary.reversed();
    if reversed == primary {
        Ok(vec![primary])
    } else {
        Ok(vec![primary, reversed])
    }
}

fn lookup_vertices(q: &Quiver, names: &[String]) -> Result<Vec<VertexId>, RunError> {
    names
        .iter()
        .map(|n| {
            q.vertex_by_name(n.trim())
                .ok_or_else(|| RunError::Usage(format!("unknown vertex `{}`", n.trim())))
        })
        .collect()
}

fn convert<F: Field>(relations: &[Element<Rational>], ctx: &F::Context) -> Result<Vec<Element<F>>, RunError> {
    relations
        .iter()
        .map(|r| {
            let mut out = Element::zero();
            for (p, c) in r.terms() {
                let v = F::from_ratio(c.numer(), c.denom(), ctx)
                    .ok_or_else(|| RunError::Usage(format!("coefficient {c} is undefined in the chosen field")))?;
                out.add_term(p.clone(), v);
            }
            Ok(out)
        })
        .collect()
}

/// Coefficients of a field element read back as a rational.
fn to_rational<F: Field>(c: &F) -> Rational {
    let s = c.to_canonical_string();
    let (n, d) = s.split_once('/').unwrap_or((&s, "1"));
    let n: num_bigint::BigInt = n.parse().expect("canonical numerator");
    let d: num_bigint::BigInt = d.parse().expect("canonical denominator");
    Rational::from_ratio(&n, &d, &()).expect("nonzero denominator")
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::QuasiHereditary => EXIT_OK,
        Verdict::NotQuasiHereditary => EXIT_REJECTED,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn render_qh(q: &Quiver, r: &HeredityChainReport, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&qh_json(q, r)).expect("serializable");
        s.push('\n');
        s
    } else {
        qh_text(q, r)
    }
}

pub fn run(cmd: &Command, p: &Presentation, opts: &Options) -> Result<Outcome, RunError> {
    match opts.field.or(p.field).unwrap_or(FieldMode::Rational) {
        FieldMode::Rational => run_in::<Rational>(cmd, p, opts, ()),
        FieldMode::Prime(m) => {
            let ctx = PrimeModulus::new(m).ok_or_else(|| RunError::Usage(format!("{m} is not a prime")))?;
            run_in::<Fp>(cmd, p, opts, ctx)
        }
    }
}

fn run_in<F: Field>(cmd: &Command, p: &Presentation, opts: &Options, ctx: F::Context) -> Result<Outcome, RunError> {
    let q = &p.quiver;
    let cap = opts.cap.or(p.cap).or(opts.env_cap).unwrap_or_else(|| default_cap(p));
    let orders = order_list(p, opts)?;
    let gens = convert::<F>(&p.relations, &ctx)?;
    let ok = |stdout: String| Ok(Outcome { stdout, exit: EXIT_OK });
    match cmd {
        Command::Gb => {
            let data = complete(q, &gens, &orders[0], cap, ctx)?;
            let j = gb_json(q, &data);
            if opts.json {
                ok(serde_json::to_string_pretty(&j).expect("serializable") + "\n")
            } else {
                ok(gb_text(&j))
            }
        }
        Command::Dim => {
            let data = complete(q, &gens, &orders[0], cap, ctx)?;
            if opts.json {
                ok(serde_json::to_string_pretty(&DimJson { dim: data.dimension() }).expect("serializable") + "\n")
            } else {
                ok(format!("{}\n", data.dimension()))
            }
        }
        Command::Qh { monomial: true } => {
            if let Some(r) = gens.iter().find(|g| !g.is_monomial()) {
                return Err(RunError::Usage(format!(
                    "relation `{}` is not monomial",
                    r.display(q, &orders[0])
                )));
            }
            let words: Vec<Path> = gens.iter().flat_map(|g| g.paths().cloned().collect::<Vec<_>>()).collect();
            if let Some(w) = words.iter().find(|w| w.len() < 2) {
                return Err(GroebnerError::ShortTerm(w.len()).into());
            }
            let tips = minimal_tipset(words.iter());
            let report = decide_monomial_qh::<F>(q, &tips, ctx)?;
            Ok(Outcome {
                stdout: render_qh(q, &report, opts.json),
                exit: verdict_exit(report.verdict),
            })
        }
        Command::Qh { monomial: false } => {
            let report = decide_qh(q, &gens, &orders, cap, ctx)?;
            Ok(Outcome {
                stdout: render_qh(q, &report, opts.json),
                exit: verdict_exit(report.verdict),
            })
        }
        Command::Verify { ordering } => {
            let ordering = lookup_vertices(q, ordering)?;
            let data = complete(q, &gens, &orders[0], cap, ctx)?;
            let a = build_fd_algebra(q, data);
            let report = verify_chain(&a, &ordering)?;
            let exit = if report.certified() { EXIT_OK } else { EXIT_REJECTED };
            Ok(Outcome {
                stdout: render_qh(q, &report, opts.json),
                exit,
            })
        }
        Command::Quotient { remove } => {
            let removed: BTreeSet<VertexId> = lookup_vertices(q, remove)?.into_iter().collect();
            let data = complete(q, &gens, &orders[0], cap, ctx)?;
            let a = build_fd_algebra(q, data);
            let (quot, emb) = quotient_algebra(&a, &VertexSet(removed))?;
            let order = orders[0].restrict(&emb);
            let relations = quot
                .data()
                .basis_elements()
                .iter()
                .map(|g| Element::from_terms(g.terms().map(|(p, c)| (p.clone(), to_rational(c)))))
                .collect();
            let presentation = Presentation {
                quiver: quot.quiver().clone(),
                relations,
                orders: if quot.quiver().arrow_count() > 0 { vec![order] } else { Vec::new() },
                cap: None,
                field: opts.field.or(p.field).filter(|f| *f != FieldMode::Rational),
            };
            ok(presentation.to_string())
        }
    }
}
