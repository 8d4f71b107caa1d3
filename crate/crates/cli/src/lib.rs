//! The `qiso` command line. [`run`] does all the work so tests can call it in-process.
//!
//! Exit codes: `0` success (including "indistinguishable"), `2` a separating
//! witness was found, `1` usage or validation error.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qiso_core::charspec::{self, Distinction};
use qiso_core::invariants::{
    self, check_collapsed_reciprocity, check_diagram_reciprocity, check_self_reciprocity,
    check_w_invariance, IndependenceVerdict, InvariantElement,
};
use qiso_core::ncalgebra::{self, Strategy};
use qiso_core::rational::format_rational;
use qiso_core::rootdata::{closed_form_even_basis, intersect_2lambda, lattice_equal};
use qiso_core::{Error, Gen, NCElement, QScalar, RootSystem, Specialization, Word};

#[derive(Parser, Debug)]
#[command(
    name = "qiso",
    version,
    about = "Exact computations with centers of U_q(sl_{n+1})"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RankArg {
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis of the lattice ZΦ ∩ 2Λ, compared with the closed form.
    Lattice(RankArg),
    /// The twisted invariant σ_m as a Laurent polynomial in K_1..K_n.
    Sigma {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        m: usize,
    },
    /// W-invariance and reciprocity checks for σ_m (all indices by default).
    Symmetry {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Jacobian test for algebraic independence of the σ_m (even rank).
    Independence {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        attempts: usize,
    },
    /// Central characters of σ_m on L(λ) for 0 ≤ m_i ≤ max-coord.
    Char {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        max_coord: i64,
        /// Also specialize at this value of q.
        #[arg(long)]
        q: Option<String>,
    },
    /// Search for a weight where the characters at q and p differ.
    #[command(alias = "charspec")]
    Distinguish {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 3)]
        max_coord: i64,
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
    },
    /// Rational solutions p of p² + p⁻² = q² + q⁻² and the factorization.
    Force {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Rank-1 rewriting checks, or the normal form of one expression.
    NcCheck {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Defining relations on the natural representation.
    RepCheck(RankArg),
}

struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            code: 0,
            text,
            json,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the result. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let res = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("serializable")
                )
            } else {
                write!(out, "{}", o.text)
            };
            if res.is_err() {
                return 1;
            }
            o.code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn parse_spec(s: &str) -> Result<Specialization, Error> {
    Specialization::parse(s)
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Lattice(RankArg { rank }) => lattice(*rank),
        Command::Sigma { rank, m } => sigma(*rank, *m),
        Command::Symmetry { rank, m } => symmetry(*rank, *m),
        Command::Independence {
            rank,
            seed,
            attempts,
        } => independence_cmd(*rank, *seed, *attempts),
        Command::Char {
            rank,
            indices,
            max_coord,
            q,
        } => char_table(*rank, indices.as_deref(), *max_coord, q.as_deref()),
        Command::Distinguish {
            rank,
            q,
            p,
            max_coord,
            indices,
        } => distinguish(*rank, q, p, *max_coord, indices.as_deref()),
        Command::Force { q } => force(q),
        Command::NcCheck { expr: Some(e), .. } => nc_expr(e),
        Command::NcCheck { expr: None, seed } => nc_suite(*seed),
        Command::RepCheck(RankArg { rank }) => rep_check(*rank),
    }
}

fn lattice(n: usize) -> Result<Outcome, Error> {
    let sys = RootSystem::new(n)?;
    let basis = intersect_2lambda(&sys);
    let closed = closed_form_even_basis(&sys);
    let equal = lattice_equal(&basis, &closed)?;
    let rows = basis.alpha_rows();
    let mut text = format!(
        "ZΦ ∩ 2Λ for A_{n} (α-coordinates, index {}):\n",
        basis.index()
    );
    for r in &rows {
        text.push_str(&format!("  {r:?}\n"));
    }
    text.push_str(&format!(
        "closed form: {:?}\nequal: {equal}\n",
        closed.alpha_rows()
    ));
    Ok(Outcome::ok(
        text,
        json!({
            "rank": n,
            "basis": rows,
            "closed_form": closed.alpha_rows(),
            "equal": equal,
            "index": basis.index(),
        }),
    ))
}

fn sigma(n: usize, m: usize) -> Result<Outcome, Error> {
    let inv = InvariantElement::sigma(n, m)?;
    let text = format!(
        "σ_{m} (n = {n}, {} terms)\n{}\n",
        inv.body().num_terms(),
        inv.body()
    );
    let json = serde_json::to_value(&inv).expect("serializable");
    Ok(Outcome::ok(text, json))
}

fn symmetry(n: usize, m: Option<usize>) -> Result<Outcome, Error> {
    let indices = match m {
        Some(m) => vec![m],
        None => (1..=n + 1).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for m in indices {
        let inv = InvariantElement::sigma(n, m)?;
        let w = check_w_invariance(&inv);
        let selfr = check_self_reciprocity(&inv);
        let diag = check_diagram_reciprocity(&inv);
        let coll = check_collapsed_reciprocity(&inv);
        text.push_str(&format!(
            "m={m}: w_invariant={w} self_reciprocal={selfr} diagram_reciprocal={diag} collapsed_reciprocal={coll}\n"
        ));
        rows.push(json!({
            "m": m,
            "w_invariant": w,
            "self_reciprocal": selfr,
            "diagram_reciprocal": diag,
            "collapsed_reciprocal": coll,
        }));
    }
    Ok(Outcome::ok(text, json!({ "rank": n, "results": rows })))
}

fn independence_cmd(n: usize, seed: u64, attempts: usize) -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verdict = invariants::check_algebraic_independence(n, &mut rng, attempts)?;
    let indices = invariants::sigma_indices(n);
    Ok(match verdict {
        IndependenceVerdict::Independent {
            point,
            determinant,
            attempts,
        } => {
            let det = determinant.as_ref().map(format_rational);
            let text = format!(
                "independent: σ_m for m in {indices:?} (attempt {attempts}, q = {}, K = {:?}, det = {})\n",
                format_rational(&point.q),
                point.k.iter().map(format_rational).collect::<Vec<_>>(),
                det.clone().unwrap_or_else(|| "-".into()),
            );
            Outcome::ok(
                text,
                json!({
                    "rank": n, "indices": indices, "result": "independent",
                    "attempts": attempts, "point": point, "determinant": det,
                }),
            )
        }
        IndependenceVerdict::Inconclusive { attempts } => Outcome::ok(
            format!("inconclusive after {attempts} attempts\n"),
            json!({ "rank": n, "indices": indices, "result": "inconclusive", "attempts": attempts }),
        ),
    })
}

fn char_table(
    n: usize,
    indices: Option<&[usize]>,
    bound: i64,
    q: Option<&str>,
) -> Result<Outcome, Error> {
    let default = if n.is_multiple_of(2) {
        invariants::sigma_indices(n)
    } else {
        (1..=n + 1).collect()
    };
    let indices = indices.unwrap_or(&default);
    let spec = q.map(parse_spec).transpose()?;
    let table = charspec::character_table(n, indices, bound)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (w, vals) in table.weights.iter().zip(&table.values) {
        let mut cells = Vec::new();
        for (&m, v) in table.indices.iter().zip(vals) {
            let at = spec.as_ref().map(|s| v.specialize(s)).transpose()?;
            text.push_str(&format!("λ={:?} m={m}: {v}", w.coords()));
            if let Some(a) = &at {
                text.push_str(&format!("  [= {}]", format_rational(a)));
            }
            text.push('\n');
            cells.push(
                json!({ "m": m, "value": v, "specialized": at.as_ref().map(format_rational) }),
            );
        }
        rows.push(json!({ "weight": w, "characters": cells }));
    }
    Ok(Outcome::ok(
        text,
        json!({ "rank": n, "indices": indices, "max_coord": bound, "q": q, "rows": rows }),
    ))
}

fn distinguish(
    n: usize,
    q: &str,
    p: &str,
    bound: i64,
    indices: Option<&[usize]>,
) -> Result<Outcome, Error> {
    let (qs, ps) = (parse_spec(q)?, parse_spec(p)?);
    Ok(match charspec::distinguish(n, &qs, &ps, bound, indices)? {
        Distinction::Witness(w) => Outcome {
            code: 2,
            text: format!(
                "witness: λ = {:?}, m = {}: {} at q = {} vs {} at p = {}\n",
                w.weight.coords(),
                w.m_index,
                format_rational(&w.lhs),
                format_rational(&w.q_value),
                format_rational(&w.rhs),
                format_rational(&w.p_value),
            ),
            json: json!({ "result": "witness", "witness": w }),
        },
        Distinction::Indistinguishable { max_coord } => Outcome::ok(
            format!("indistinguishable up to max-coord {max_coord}\n"),
            json!({ "result": "indistinguishable", "max_coord": max_coord }),
        ),
    })
}

fn force(q: &str) -> Result<Outcome, Error> {
    let spec = parse_spec(q)?;
    let sols: Vec<String> = charspec::forcing_solutions(&spec)?
        .iter()
        .map(format_rational)
        .collect();
    let poly = charspec::forcing_polynomial();
    let factors: Vec<String> = charspec::factor_forcing_polynomial()?
        .iter()
        .map(ToString::to_string)
        .collect();
    let text = format!(
        "p with p² + p⁻² = q² + q⁻² at q = {}: {}\n{} = {}\n",
        format_rational(spec.q()),
        sols.join(", "),
        poly,
        factors
            .iter()
            .map(|f| format!("[{f}]"))
            .collect::<Vec<_>>()
            .join(" · "),
    );
    Ok(Outcome::ok(
        text,
        json!({
            "q": format_rational(spec.q()),
            "solutions": sols,
            "polynomial": poly.to_string(),
            "factors": factors,
        }),
    ))
}

fn nc_expr(src: &str) -> Result<Outcome, Error> {
    let e = ncalgebra::parse_element(src)?;
    let degrees: Vec<i64> = e.degrees().into_iter().collect();
    let pi = if degrees.iter().all(|&d| d == 0) {
        Some(e.pi_projection()?)
    } else {
        None
    };
    let unit = e.is_unit();
    let central = e.is_central();
    let mut text =
        format!("normal form: {e}\ndegrees: {degrees:?}\nunit: {unit}\ncentral: {central}\n");
    if let Some(p) = &pi {
        text.push_str(&format!("π: {p}\n"));
    }
    Ok(Outcome::ok(
        text,
        json!({
            "input": src, "normal_form": e, "degrees": degrees,
            "is_unit": unit, "is_central": central, "pi": pi,
        }),
    ))
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| [Gen::E, Gen::F, Gen::K, Gen::KInv][rng.gen_range(0..4)])
            .collect(),
    )
}

fn nc_suite(seed: u64) -> Result<Outcome, Error> {
    let ef = ncalgebra::parse_element("E*F")?;
    let ef_ok = ef == ncalgebra::parse_element("F*E + (K - K^-1)/(q - q^-1)")?;
    let c = ncalgebra::casimir();
    let central = c.is_central();
    let pi_ok = c.pi_projection()?
        == ncalgebra::parse_element("(q*K + q^-1*K^-1)/(q - q^-1)^2")?.pi_projection()?;
    let hc = ncalgebra::casimir_hc_image()?;
    let hc_ok = ncalgebra::rank_one_reflection(&hc)? == hc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut confluent = 0;
    let mut within_bound = 0;
    let words = 100;
    for _ in 0..words {
        let w = random_word(&mut rng, 12);
        let e = NCElement::term(QScalar::one(), w.clone());
        let (l, sl) = e.normalize_with(Strategy::Leftmost);
        let (r, sr) = e.normalize_with(Strategy::Rightmost);
        confluent += usize::from(l == r);
        within_bound += usize::from(u128::from(sl.max(sr)) <= w.step_bound());
    }
    let checks = [
        ("EF normal form", ef_ok),
        ("Casimir central", central),
        ("π(C)", pi_ok),
        ("shifted π(C) fixed by K ↦ K⁻¹", hc_ok),
        ("confluence on random words", confluent == words),
        ("step bound on random words", within_bound == words),
    ];
    let mut text = String::new();
    for (name, ok) in checks {
        text.push_str(&format!("{}: {name}\n", if ok { "ok" } else { "FAILED" }));
    }
    let all = checks.iter().all(|(_, ok)| *ok);
    let json = json!({
        "seed": seed,
        "checks": checks.iter().map(|(n, ok)| json!({ "name": n, "ok": ok })).collect::<Vec<_>>(),
        "casimir": c,
        "words": words,
        "all": all,
    });
    Ok(Outcome {
        code: if all { 0 } else { 1 },
        text,
        json,
    })
}

fn rep_check(n: usize) -> Result<Outcome, Error> {
    let report = ncalgebra::check_relations(n)?;
    let mut text = String::new();
    for (name, ok) in report.families() {
        text.push_str(&format!("{}: {name}\n", if ok { "ok" } else { "FAILED" }));
    }
    let code = if report.all() { 0 } else { 1 };
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["all"] = Value::Bool(report.all());
    Ok(Outcome { code, text, json })
}
