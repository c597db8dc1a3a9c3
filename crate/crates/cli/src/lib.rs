//! The `origami` command: analysis, certificates, verification and diagrams.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 usage or parse error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use origami_core::descriptor::parse_group;
use origami_core::format::{
    parse_origami, verify_certificate, write_certificate, CertificateError,
};
use origami_core::group::{catalogue, th_witness_search, FiniteGroup, ThWitness, CATALOGUE_ORDERS};
use origami_core::hurwitz::{
    hurwitz_genus_witness, is_th_order, th_witness_for_order, verify_negative_orders,
    verify_theorem_range, GenusVerdict, HurwitzError, Limits, VerdictBasis,
};
use origami_core::origami::Origami;
use origami_core::render::{render_ascii, render_svg};

/// Environment variable overriding the group order cap.
pub const CAP_VAR: &str = "ORIGAMI_GROUP_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "origami",
    version,
    about = "Square-tiled surfaces and Hurwitz translation surfaces"
)]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, stratum, translation group and canonical form of an origami file.
    Analyze { file: PathBuf },
    /// Build a Hurwitz translation surface certificate.
    #[command(group(ArgGroup::new("target").required(true).args(["genus", "order"])))]
    Construct {
        #[arg(long)]
        genus: Option<usize>,
        /// Order of the group, 4g - 4.
        #[arg(long)]
        order: Option<usize>,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is there a group of order N generated by two elements whose commutator has order 2?
    #[command(group(ArgGroup::new("target").required(true).args(["order", "group"])))]
    Th {
        order: Option<usize>,
        /// Search a specific group exhaustively, e.g. `Q8`, `A4xC3`, `SD(8,5)`.
        #[arg(long)]
        group: Option<String>,
    },
    /// Re-check a certificate file, a genus range, or the catalogue orders.
    #[command(group(ArgGroup::new("target").required(true).args(["file", "range", "negative"])))]
    Verify {
        file: Option<PathBuf>,
        /// Check every genus from 2 up to this value.
        #[arg(long)]
        range: Option<usize>,
        /// Search every catalogue group whose order is not divisible by 8 or 12.
        #[arg(long)]
        negative: bool,
    },
    /// Draw the squares with their edge gluings.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// List the catalogue groups of order N.
    Catalogue { order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed input.
    Usage(String),
    /// A check ran and failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Failure(m) => write!(f, "FAIL: {m}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> Self {
        match e {
            HurwitzError::InvalidParameter(_) | HurwitzError::Group(_) => {
                CliError::Usage(e.to_string())
            }
            HurwitzError::Certificate(_) | HurwitzError::Contradiction(_) => {
                CliError::Failure(e.to_string())
            }
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Limits from the environment: `ORIGAMI_GROUP_CAP` or the default cap.
pub fn limits_from_env() -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(CAP_VAR) {
        limits.group_cap = v
            .trim()
            .parse()
            .ok()
            .filter(|&c: &usize| c > 0)
            .ok_or_else(|| {
                CliError::Usage(format!("{CAP_VAR} must be a positive integer, got '{v}'"))
            })?;
    }
    Ok(limits)
}

/// Runs a parsed command, writing the report to `out`.
pub fn run(cli: &Cli, limits: Limits, out: &mut dyn Write) -> Result<()> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze { file } => analyze(&read_origami(file)?, json, out),
        Command::Construct {
            genus,
            order,
            out: path,
        } => construct(*genus, *order, path.as_deref(), limits, json, out),
        Command::Th { order, group } => match (order, group) {
            (Some(n), _) => th_order(*n, limits, json, out),
            (_, Some(desc)) => th_group(desc, limits, json, out),
            _ => unreachable!("clap requires one of the two"),
        },
        Command::Verify {
            file,
            range,
            negative,
        } => {
            if let Some(path) = file {
                verify_file(path, limits, json, out)
            } else if let Some(g) = range {
                verify_range(*g, limits, json, out)
            } else {
                debug_assert!(*negative);
                verify_negative(json, out)
            }
        }
        Command::Render { file, format } => {
            let o = read_origami(file)?;
            let text = match format {
                Format::Ascii => render_ascii(&o),
                Format::Svg => render_svg(&o),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            out.write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Catalogue { order } => list_catalogue(*order, json, out),
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_origami(path: &Path) -> Result<Origami> {
    let text = read_file(path)?;
    parse_origami(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn analyze(o: &Origami, json: bool, out: &mut dyn Write) -> Result<()> {
    let a = o.analyze();
    if json {
        return print_json(out, &a);
    }
    writeln!(out, "degree: {}", a.degree)?;
    writeln!(out, "genus: {}", a.genus)?;
    writeln!(out, "stratum: {}", a.stratum)?;
    writeln!(out, "translations: {}", a.translations)?;
    writeln!(out, "normal: {}", yes_no(a.normal))?;
    writeln!(out, "hurwitz: {}", yes_no(a.hurwitz))?;
    writeln!(out, "canonical a: {}", a.canonical_a)?;
    writeln!(out, "canonical b: {}", a.canonical_b)?;
    Ok(())
}

/// Why genus `g` has no Hurwitz translation surface.
pub fn non_realizable_reason(g: usize) -> String {
    format!(
        "genus {g} is not realizable: g is even and 3 does not divide g - 1 = {}, \
         so 4g - 4 = {} is divisible by neither 8 nor 12",
        g - 1,
        4 * g - 4
    )
}

fn construct(
    genus: Option<usize>,
    order: Option<usize>,
    path: Option<&Path>,
    limits: Limits,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let g = match (genus, order) {
        (Some(g), _) => g,
        (_, Some(n)) => {
            if n == 0 || n % 4 != 0 {
                return Err(CliError::Usage(format!(
                    "order {n} is not of the form 4g - 4 with g >= 2"
                )));
            }
            n / 4 + 1
        }
        _ => unreachable!("clap requires one of the two"),
    };
    if g < 2 {
        return Err(CliError::Usage(format!(
            "genus must be at least 2, got {g}"
        )));
    }
    let verdict: GenusVerdict = hurwitz_genus_witness(g, limits)?;
    let Some(cert) = verdict.certificate else {
        let reason = non_realizable_reason(g);
        if json {
            return print_json(
                out,
                &json!({ "genus": g, "order": 4 * g - 4, "realizable": false, "reason": reason }),
            );
        }
        writeln!(out, "{reason}")?;
        return Ok(());
    };
    let text = write_certificate(&cert);
    if let Some(p) = path {
        fs::write(p, &text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
    }
    let w = cert.witness();
    let grp = w.group();
    if json {
        return print_json(
            out,
            &json!({
                "genus": g,
                "order": grp.order(),
                "realizable": true,
                "group_name": grp.name(),
                "a": grp.label(w.a()),
                "b": grp.label(w.b()),
                "commutator": grp.label(w.commutator()),
                "analyzed": cert.analyzed(),
                "certificate": if path.is_none() { Some(&text) } else { None },
            }),
        );
    }
    match path {
        Some(p) => writeln!(
            out,
            "genus {g}: certificate in {} (order {}) written to {}{}",
            grp.name(),
            grp.order(),
            p.display(),
            if cert.analyzed() {
                ""
            } else {
                "; translation count not recomputed (over analysis budget)"
            }
        )?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn witness_json(w: &ThWitness) -> serde_json::Value {
    let g = w.group();
    json!({
        "group_name": g.name(),
        "order": g.order(),
        "a": g.label(w.a()),
        "b": g.label(w.b()),
        "commutator": g.label(w.commutator()),
    })
}

fn witness_line(w: &ThWitness) -> String {
    let g = w.group();
    format!(
        "witness in {}: a = {}, b = {}, [a,b] = {}",
        g.name(),
        g.label(w.a()),
        g.label(w.b()),
        g.label(w.commutator())
    )
}

fn th_order(n: usize, limits: Limits, json: bool, out: &mut dyn Write) -> Result<()> {
    if n == 0 {
        return Err(CliError::Usage("order must be positive".into()));
    }
    let witness = th_witness_for_order(n, limits.group_cap)?;
    let searched = if witness.is_none() && CATALOGUE_ORDERS.contains(&n) {
        let groups = catalogue(n).map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(g) = groups.iter().find(|g| th_witness_search(g).is_some()) {
            return Err(CliError::Failure(format!(
                "contradiction: catalogue group {} of order {n} has a witness",
                g.name()
            )));
        }
        Some(groups.len())
    } else {
        None
    };
    if json {
        return print_json(
            out,
            &json!({
                "order": n,
                "th": witness.is_some(),
                "witness": witness.as_ref().map(witness_json),
                "catalogue_groups_searched": searched,
            }),
        );
    }
    match &witness {
        Some(w) => {
            writeln!(out, "order {n}: tH")?;
            writeln!(out, "{}", witness_line(w))?;
        }
        None => {
            writeln!(out, "order {n}: not tH (divisible by neither 8 nor 12)")?;
            if let Some(k) = searched {
                writeln!(
                    out,
                    "catalogue: {k} groups of order {n} searched, no witness"
                )?;
            }
        }
    }
    Ok(())
}

fn th_group(desc: &str, limits: Limits, json: bool, out: &mut dyn Write) -> Result<()> {
    let g = parse_group(desc, limits.group_cap).map_err(|e| CliError::Usage(e.to_string()))?;
    let witness = th_witness_search(&g);
    if json {
        return print_json(
            out,
            &json!({
                "group_name": g.name(),
                "order": g.order(),
                "th": witness.is_some(),
                "witness": witness.as_ref().map(witness_json),
            }),
        );
    }
    match &witness {
        Some(w) => writeln!(
            out,
            "{} (order {}): tH\n{}",
            g.name(),
            g.order(),
            witness_line(w)
        )?,
        None => writeln!(
            out,
            "{} (order {}): no generating pair with commutator of order 2",
            g.name(),
            g.order()
        )?,
    }
    Ok(())
}

fn verify_file(path: &Path, limits: Limits, json: bool, out: &mut dyn Write) -> Result<()> {
    let text = read_file(path)?;
    let report = verify_certificate(&text, limits).map_err(|e| match e {
        CertificateError::Format(f) => CliError::Usage(format!("{}: {f}", path.display())),
        CertificateError::Check(m) => CliError::Failure(m),
    })?;
    if json {
        return print_json(out, &report);
    }
    let counted = match report.translations {
        Some(t) => format!("{t} translations, Hurwitz"),
        None => "translation count skipped (over analysis budget)".to_string(),
    };
    writeln!(
        out,
        "ok: genus {} certificate in {} (order {}), [a,b] = {} of order 2, {counted}",
        report.genus, report.group, report.order, report.commutator
    )?;
    Ok(())
}

fn verify_range(g_max: usize, limits: Limits, json: bool, out: &mut dyn Write) -> Result<()> {
    let rows = verify_theorem_range(g_max, limits)?;
    for r in &rows {
        let expected = r.genus % 2 == 1 || (r.genus - 1) % 3 == 0;
        if r.realizable != expected {
            return Err(CliError::Failure(format!(
                "genus {}: verdict disagrees with arithmetic",
                r.genus
            )));
        }
    }
    if json {
        for r in &rows {
            print_json(out, r)?;
        }
        return Ok(());
    }
    writeln!(out, "{:>5}  {:>5}  {:<3}  basis", "genus", "order", "hts")?;
    for r in &rows {
        let basis = match &r.basis {
            VerdictBasis::Certificate {
                group,
                analyzed: true,
            } => format!("certificate {group}, fully analyzed"),
            VerdictBasis::Certificate {
                group,
                analyzed: false,
            } => {
                format!("certificate {group}, translation count skipped")
            }
            VerdictBasis::Exhaustive { groups } => {
                format!("exhaustive over {groups} catalogue groups")
            }
            VerdictBasis::Arithmetic => "arithmetic (divisible by neither 8 nor 12)".to_string(),
        };
        writeln!(
            out,
            "{:>5}  {:>5}  {:<3}  {basis}",
            r.genus,
            r.order,
            yes_no(r.realizable)
        )?;
    }
    Ok(())
}

fn verify_negative(json: bool, out: &mut dyn Write) -> Result<()> {
    let rows = verify_negative_orders()?;
    if json {
        for r in &rows {
            print_json(out, r)?;
        }
        return Ok(());
    }
    for r in &rows {
        writeln!(
            out,
            "order {:>2}: {} groups, no witness ({})",
            r.order,
            r.groups.len(),
            r.groups.join(", ")
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogueEntry {
    group_name: String,
    abelian: bool,
    order_statistics: Vec<(usize, usize)>,
    th: bool,
    witness: Option<serde_json::Value>,
}

fn list_catalogue(n: usize, json: bool, out: &mut dyn Write) -> Result<()> {
    let groups: Vec<FiniteGroup> = catalogue(n)
        .map_err(|e| CliError::Usage(format!("{e}; supported orders: {CATALOGUE_ORDERS:?}")))?;
    let entries: Vec<CatalogueEntry> = groups
        .iter()
        .map(|g| {
            let w = th_witness_search(g);
            CatalogueEntry {
                group_name: g.name().to_string(),
                abelian: g.is_abelian(),
                order_statistics: g.order_statistics(),
                th: w.is_some(),
                witness: w.as_ref().map(witness_json),
            }
        })
        .collect();
    if json {
        for e in &entries {
            print_json(out, e)?;
        }
    } else {
        writeln!(out, "order {n}: {} groups", entries.len())?;
        for e in &entries {
            let stats: Vec<String> = e
                .order_statistics
                .iter()
                .map(|(o, c)| format!("{o}:{c}"))
                .collect();
            writeln!(
                out,
                "  {:<12} {:<10} element orders {}  tH: {}",
                e.group_name,
                if e.abelian { "abelian" } else { "nonabelian" },
                stats.join(" "),
                yes_no(e.th)
            )?;
        }
    }
    if entries.iter().any(|e| e.th) && !is_th_order(n) {
        return Err(CliError::Failure(format!(
            "contradiction: a group of order {n} has a witness"
        )));
    }
    Ok(())
}
