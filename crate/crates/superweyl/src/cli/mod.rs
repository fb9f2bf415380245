//! Command-line jobs: building and checking algebras, folding, root data,
//! map algebras, Weyl modules and the Garland identities. Every job writes
//! line-oriented text with exact scalars.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classical::{build_osp, build_sl, distinguished_simple_roots, triangular_decomposition};
use crate::equivariant::{check_condition_c, identify_type, root_data, structural_checks};
use crate::error::{Error, Result};
use crate::exactcore::CycScalar;
use crate::liesuper::SuperAlgebra;
use crate::mapweyl::{
    build_global_weyl, build_truncated_algebra, check_garland, default_cap, equivariant_map_subalgebra,
    filtration_stabilization, garland_series, highest_weight_algebra, osp12_even_sl2, Folding, GammaAlgebra,
    GarlandSetting, GeneratorKind,
};

/// Exit status for a completed job.
pub const EXIT_OK: i32 = 0;
/// Exit status for errors and failed checks.
pub const EXIT_ERROR: i32 = 1;
/// Exit status for results whose certificate did not converge.
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Parser, Clone, Debug, PartialEq, Eq)]
#[command(name = "superweyl", version, about = "Exact Lie superalgebra, folding and Weyl module computations")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sl,
    Osp,
}

/// Where an algebra comes from: a file written by `build-algebra` or a
/// family literal such as `sl:3:2` or `osp:3:2`.
#[derive(Args, Clone, Debug, Default, PartialEq, Eq)]
pub struct Source {
    /// Algebra file.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Family literal sl:M:N or osp:M:2N.
    #[arg(long)]
    pub family: Option<String>,
}

/// Coefficient algebra options shared by `map`, `weyl` and `verify-garland`.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    /// Coefficient algebra trunc:N, the polynomials modulo t^N.
    #[arg(long = "A", default_value = "trunc:1")]
    pub coefficients: String,
    /// Order m of the cyclic group acting by t -> z t.
    #[arg(long, default_value_t = 1)]
    pub gamma: u32,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Build sl(M|N) or osp(M|2N) and write its text form.
    BuildAlgebra {
        family: Family,
        first: usize,
        second: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the axioms and the text round trip of an algebra.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Fold by a diagram automorphism and report the fixed subalgebra.
    Fold {
        #[command(flatten)]
        source: Source,
        /// "flip", "id" or a comma-separated node permutation.
        #[arg(long, default_value = "flip")]
        perm: String,
    },
    /// Distinguished base, Cartan matrix, positive roots and condition C.
    Roots {
        #[command(flatten)]
        source: Source,
    },
    /// The equivariant map superalgebra (g (x) A)^Gamma.
    Map {
        #[command(flatten)]
        source: Source,
        /// "id", "flip" or a comma-separated node permutation.
        #[arg(long, default_value = "id")]
        perm: String,
        #[command(flatten)]
        coefficients: Coefficients,
    },
    /// The global Weyl module of a highest weight.
    Weyl {
        #[command(flatten)]
        source: Source,
        /// "id", "flip" or a comma-separated node permutation.
        #[arg(long, default_value = "id")]
        perm: String,
        #[command(flatten)]
        coefficients: Coefficients,
        /// Values on the simple coroots of the fixed algebra, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        /// Degree cap; the environment default when absent.
        #[arg(long)]
        cap: Option<usize>,
        /// Print the weight multiplicities.
        #[arg(long)]
        character: bool,
        /// Print the finite-generation filtration.
        #[arg(long)]
        filtration: bool,
        /// Print the multiplication table of the highest-weight algebra.
        #[arg(long = "hw-algebra")]
        hw_algebra: bool,
    },
    /// The Garland identities over the even sl2 of osp(1|2).
    VerifyGarland {
        /// Single r in 1..=3; all three when absent.
        #[arg(long)]
        r: Option<usize>,
        /// Invariant coefficient label; 1 and the loop parameter when absent.
        #[arg(long)]
        a: Option<String>,
        #[arg(long = "A", default_value = "trunc:4")]
        coefficients: String,
        #[arg(long, default_value_t = 1)]
        gamma: u32,
        /// Use plain powers instead of divided powers.
        #[arg(long)]
        plain: bool,
    },
    /// Computed versus expected rows of the folding table.
    FoldingTable,
}

/// Runs a job, writing its report to `out`, and returns the exit status.
pub fn run(config: &JobConfig, out: &mut dyn Write) -> i32 {
    let mut report = String::new();
    let status = match execute(&config.command, &mut report) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(report, "error {e}");
            EXIT_ERROR
        }
    };
    if out.write_all(report.as_bytes()).and_then(|_| out.flush()).is_err() {
        return EXIT_ERROR;
    }
    status
}

fn execute(command: &Command, out: &mut String) -> Result<i32> {
    match command {
        Command::BuildAlgebra { family, first, second, out: path } => {
            let g = build_family(*family, *first, *second)?;
            match path {
                Some(p) => {
                    std::fs::write(p, g.to_text())?;
                    let (even, odd) = g.super_dim();
                    line(out, format_args!("algebra {}", g.name()));
                    line(out, format_args!("dimension {}", g.dim()));
                    line(out, format_args!("superdimension {even}|{odd}"));
                    line(out, format_args!("written {}", p.display()));
                }
                None => out.push_str(&g.to_text()),
            }
            Ok(EXIT_OK)
        }
        Command::Check { source } => check(&load(source)?, out),
        Command::Fold { source, perm } => fold(&load(source)?, perm, out),
        Command::Roots { source } => roots(&load(source)?, out),
        Command::Map { source, perm, coefficients } => map(&load(source)?, perm, coefficients, out),
        Command::Weyl { source, perm, coefficients, lambda, cap, character, filtration, hw_algebra } => {
            let options = WeylOptions {
                cap: cap.unwrap_or_else(default_cap),
                character: *character,
                filtration: *filtration,
                hw_algebra: *hw_algebra,
            };
            weyl(&load(source)?, perm, coefficients, lambda, &options, out)
        }
        Command::VerifyGarland { r, a, coefficients, gamma, plain } => {
            let coefficients = parse_coefficients(coefficients, *gamma)?;
            verify_garland(&coefficients, *r, a.as_deref(), !*plain, out)
        }
        Command::FoldingTable => {
            let table = emit_folding_table()?;
            out.push_str(&table.to_string());
            Ok(if table.passed() { EXIT_OK } else { EXIT_ERROR })
        }
    }
}

fn line(out: &mut String, args: fmt::Arguments<'_>) {
    out.write_fmt(args).expect("writing to a string");
    out.push('\n');
}

fn build_family(family: Family, first: usize, second: usize) -> Result<SuperAlgebra> {
    match family {
        Family::Sl => build_sl(first, second),
        Family::Osp => build_osp(first, second),
    }
}

/// Parses `sl:M:N` or `osp:M:2N`.
pub fn parse_family(text: &str) -> Result<SuperAlgebra> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    let number = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad family '{text}'")));
    match parts.as_slice() {
        ["sl", m, n] => build_sl(number(m)?, number(n)?),
        ["osp", m, n] => build_osp(number(m)?, number(n)?),
        _ => Err(Error::Parse(format!("family '{text}' is not sl:M:N or osp:M:2N"))),
    }
}

/// Parses `trunc:N` with the cyclic group of order `gamma`.
pub fn parse_coefficients(text: &str, gamma: u32) -> Result<GammaAlgebra> {
    let n = text
        .trim()
        .strip_prefix("trunc:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("coefficient algebra '{text}' is not trunc:N")))?;
    build_truncated_algebra(n, gamma)
}

fn load(source: &Source) -> Result<SuperAlgebra> {
    match (&source.algebra, &source.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            SuperAlgebra::from_text(&text)
        }
        (None, Some(text)) => parse_family(text),
        (Some(_), Some(_)) => Err(Error::Invalid("give either --algebra or --family, not both".into())),
        (None, None) => Err(Error::Invalid("an algebra is required: --algebra FILE or --family sl:M:N".into())),
    }
}

fn check(g: &SuperAlgebra, out: &mut String) -> Result<i32> {
    let (even, odd) = g.super_dim();
    line(out, format_args!("algebra {}", g.name()));
    line(out, format_args!("dimension {}", g.dim()));
    line(out, format_args!("superdimension {even}|{odd}"));
    let axioms = g.check_axioms();
    out.push_str(&axioms.to_string());
    let text = g.to_text();
    let reread = SuperAlgebra::from_text(&text)?;
    let round_trip = reread.same_structure(g) && reread.to_text() == text;
    line(out, format_args!("round_trip {}", if round_trip { "identical" } else { "differs" }));
    Ok(if axioms.passed() && round_trip { EXIT_OK } else { EXIT_ERROR })
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn fold(g: &SuperAlgebra, perm: &str, out: &mut String) -> Result<i32> {
    let folding = Folding::from_permutation(g, perm)?;
    let dims = folding.decomposition.dims();
    let fixed = &folding.fixed.algebra;
    let identified = identify_type(fixed)?;
    line(out, format_args!("algebra {}", g.name()));
    line(out, format_args!("permutation {:?}", folding.automorphism.permutation));
    line(out, format_args!("order {}", folding.order()));
    line(out, format_args!("eigenspaces {}", dims_text(&dims)));
    line(out, format_args!("eigenspace_sum {}", dims.iter().sum::<usize>()));
    line(out, format_args!("fixed_dimension {}", fixed.dim()));
    line(out, format_args!("fixed_type {}", identified.label_or_unknown()));
    let axioms = fixed.check_axioms();
    line(out, format_args!("fixed_axioms {}", if axioms.passed() { "pass" } else { "fail" }));
    let report = structural_checks(g, &folding.automorphism, &folding.decomposition, &folding.fixed)?;
    line(out, format_args!("form {}", report.form));
    out.push_str(&report.to_string());
    Ok(if report.passed() && axioms.passed() { EXIT_OK } else { EXIT_ERROR })
}

fn roots(g: &SuperAlgebra, out: &mut String) -> Result<i32> {
    let (rs, _) = root_data(g)?;
    let base = distinguished_simple_roots(g, &rs)?;
    let td = triangular_decomposition(g, &rs, &base)?;
    line(out, format_args!("algebra {}", g.name()));
    line(out, format_args!("rank {}", td.rank()));
    line(out, format_args!("roots {}", rs.len()));
    let parities: Vec<&str> = td.parities.iter().map(|p| p.name()).collect();
    line(out, format_args!("simple_parities {}", parities.join(" ")));
    line(out, format_args!("cartan_matrix"));
    for row in &td.cartan_matrix {
        let entries: Vec<String> = row.iter().map(CycScalar::to_compact_string).collect();
        line(out, format_args!("  {}", entries.join(" ")));
    }
    let mut positive: Vec<usize> = (0..rs.len()).filter(|&i| base.positive[i]).collect();
    positive.sort_by_key(|&i| (base.height(i), base.coefficients[i].clone()));
    line(out, format_args!("positive_roots {}", positive.len()));
    for i in positive {
        line(out, format_args!("  {:?} {}", base.coefficients[i], rs.roots[i].parity.name()));
    }
    let c = check_condition_c(g, &rs, &base)?;
    line(out, format_args!("lowest_root {:?} {}", c.coefficients, c.parity.name()));
    line(out, format_args!("condition_c {}", c.holds));
    Ok(EXIT_OK)
}

fn map(g: &SuperAlgebra, perm: &str, coefficients: &Coefficients, out: &mut String) -> Result<i32> {
    let folding = Folding::from_permutation(g, perm)?;
    let a = parse_coefficients(&coefficients.coefficients, coefficients.gamma)?;
    let eq = equivariant_map_subalgebra(&folding, &a)?;
    let (even, odd) = eq.algebra.super_dim();
    line(out, format_args!("algebra {}", g.name()));
    line(out, format_args!("order {}", folding.order()));
    line(out, format_args!("fixed_type {}", identify_type(&folding.fixed.algebra)?.label_or_unknown()));
    line(out, format_args!("coefficients {}", a.describe()));
    line(out, format_args!("dimension {}", eq.dim()));
    line(out, format_args!("superdimension {even}|{odd}"));
    for (kind, name) in [
        (GeneratorKind::Lowering, "lowering"),
        (GeneratorKind::Loop, "loop"),
        (GeneratorKind::Cartan, "cartan"),
        (GeneratorKind::Raising, "raising"),
    ] {
        line(out, format_args!("{name} {}", eq.of_kind(kind).len()));
    }
    let axioms = eq.algebra.check_axioms();
    out.push_str(&axioms.to_string());
    Ok(if axioms.passed() { EXIT_OK } else { EXIT_ERROR })
}

struct WeylOptions {
    cap: usize,
    character: bool,
    filtration: bool,
    hw_algebra: bool,
}

fn weyl(
    g: &SuperAlgebra,
    perm: &str,
    coefficients: &Coefficients,
    lambda: &[i64],
    options: &WeylOptions,
    out: &mut String,
) -> Result<i32> {
    if options.cap == 0 {
        return Err(Error::Invalid("the cap must be positive".into()));
    }
    let folding = Folding::from_permutation(g, perm)?;
    let a = parse_coefficients(&coefficients.coefficients, coefficients.gamma)?;
    let eq = equivariant_map_subalgebra(&folding, &a)?;
    let module = build_global_weyl(&eq, lambda, options.cap)?;
    line(out, format_args!("algebra {}", g.name()));
    line(out, format_args!("fixed_type {}", identify_type(&folding.fixed.algebra)?.label_or_unknown()));
    line(out, format_args!("coefficients {}", a.describe()));
    line(out, format_args!("lambda {:?}", module.lambda));
    for relation in &module.power_relations {
        line(
            out,
            format_args!(
                "power_relation {:?} exponent {}",
                folding.base.coefficients[relation.root], relation.exponent
            ),
        );
    }
    out.push_str(&module.certificate.to_string());
    line(out, format_args!("dimension {}", module.dim()));
    let converged = module.certificate.converged;
    if !converged {
        line(out, format_args!("warning not converged within cap {}; the module shown is partial", options.cap));
    }
    if options.character {
        line(out, format_args!("character"));
        for row in module.character_text().lines() {
            line(out, format_args!("  {row}"));
        }
    }
    if options.hw_algebra {
        if converged {
            let algebra = highest_weight_algebra(&module)?;
            line(out, format_args!("hw_algebra"));
            for row in algebra.to_string().lines() {
                line(out, format_args!("  {row}"));
            }
        } else {
            line(out, format_args!("hw_algebra skipped not-converged"));
        }
    }
    if options.filtration {
        if converged {
            let f = filtration_stabilization(&module, options.cap)?;
            line(out, format_args!("filtration {}", dims_text(&f.dims)));
            line(out, format_args!("filtration_stable_from {}", f.stable_from));
            line(out, format_args!("filtration_certified {}", f.certified));
        } else {
            line(out, format_args!("filtration skipped not-converged"));
        }
    }
    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn verify_garland(
    coefficients: &GammaAlgebra,
    r: Option<usize>,
    a: Option<&str>,
    divided: bool,
    out: &mut String,
) -> Result<i32> {
    let sl2 = osp12_even_sl2()?;
    let mut setting = GarlandSetting::new(&sl2, coefficients, 8)?;
    let labels: Vec<String> = match a {
        Some(label) => vec![label.to_string()],
        None => {
            let invariant = &setting.coefficients;
            let mut labels = vec![invariant.labels[invariant.unit].clone()];
            labels.extend(invariant.invariant_generator().map(|j| invariant.labels[j].clone()));
            labels
        }
    };
    let rs: Vec<usize> = r.map_or_else(|| vec![1, 2, 3], |r| vec![r]);
    line(out, format_args!("coefficients {}", coefficients.describe()));
    let mut all = true;
    for label in &labels {
        for k in 0..=2 {
            let p = garland_series(&mut setting, label, k)?;
            line(out, format_args!("series a {label} k {k} {}", p.render(&setting.envelope.labels())));
        }
        for &r in &rs {
            let report = check_garland(&mut setting, label, r, divided)?;
            all &= report.holds;
            out.push_str(&report.to_string());
        }
    }
    line(out, format_args!("all_members {all}"));
    Ok(if all { EXIT_OK } else { EXIT_ERROR })
}

/// One row of the folding table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingRow {
    pub algebra: String,
    pub permutation: String,
    pub expected: String,
    pub expected_dim: usize,
    pub computed: String,
    pub computed_dim: usize,
    pub eigenspaces: Vec<usize>,
    pub total_dim: usize,
}

impl FoldingRow {
    pub fn passed(&self) -> bool {
        self.computed == self.expected
            && self.computed_dim == self.expected_dim
            && self.eigenspaces.iter().sum::<usize>() == self.total_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingTable {
    pub rows: Vec<FoldingRow>,
}

impl FoldingTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(FoldingRow::passed)
    }
}

impl fmt::Display for FoldingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "row {} {} computed {} dim {} expected {} dim {} eigenspaces {} of {} {}",
                row.algebra,
                row.permutation,
                row.computed,
                row.computed_dim,
                row.expected,
                row.expected_dim,
                dims_text(&row.eigenspaces),
                row.total_dim,
                if row.passed() { "match" } else { "MISMATCH" }
            )?;
        }
        writeln!(f, "table {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Builds each in-scope row by construction, folding and identification.
pub fn emit_folding_table() -> Result<FoldingTable> {
    let rows = [
        (build_sl(3, 2)?, "flip", "osp(3|2)", 12),
        (build_osp(2, 2)?, "flip", "osp(1|2)", 5),
        (build_osp(3, 2)?, "id", "osp(3|2)", 12),
    ];
    let mut out = Vec::new();
    for (g, perm, expected, expected_dim) in rows {
        let folding = Folding::from_permutation(&g, perm)?;
        let fixed = &folding.fixed.algebra;
        out.push(FoldingRow {
            algebra: g.name().to_string(),
            permutation: perm.to_string(),
            expected: expected.to_string(),
            expected_dim,
            computed: identify_type(fixed)?.label_or_unknown().to_string(),
            computed_dim: fixed.dim(),
            eigenspaces: folding.decomposition.dims(),
            total_dim: g.dim(),
        });
    }
    Ok(FoldingTable { rows: out })
}
