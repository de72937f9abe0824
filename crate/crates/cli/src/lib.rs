//! Command-line front end over the `idealmut` library.
//!
//! Exit codes: `0` success, `1` a mathematical "no" (see each subcommand), `2` bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use idealmut::approx::{left_approximation, minimize, right_approximation, IrreducibleSpaces, Side};
use idealmut::bundle::{fixtures, Bundle};
use idealmut::catcore::FormalObject;
use idealmut::ghost::{coghost_ideal, ghost_ideal};
use idealmut::ideals::Ideal;
use idealmut::mutation::{detect_ar_ideal, mutation_quiver, tau_stable, verify_multiplicity, verify_mutation_triangle};

#[derive(Parser, Debug)]
#[command(name = "idealmut", version, about = "Ideal mutations in finite Hom-finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the category of a bundle and check its tables and functors.
    Validate { bundle: String },
    /// Describe a named ideal.
    Ideal {
        bundle: String,
        #[arg(long)]
        name: String,
        /// Per-pair dimensions (the default).
        #[arg(long, conflicts_with_all = ["basis", "json"])]
        dims: bool,
        /// A basis per pair, as expressions.
        #[arg(long, conflicts_with = "json")]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Ghost (or coghost) ideal of a named ideal. Exit 1 when it is zero.
    Ghost {
        bundle: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        co: bool,
    },
    /// Right or left approximation of an object by a named ideal.
    Approx {
        bundle: String,
        #[arg(long)]
        ideal: String,
        /// Summands separated by commas, e.g. `X,Y`.
        #[arg(long)]
        object: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        minimal: bool,
    },
    /// Decide whether a named ideal is an Auslander-Reiten ideal. Exit 1 when it is not.
    DetectAr {
        bundle: String,
        #[arg(long)]
        ideal: String,
    },
    /// Valued mutation quiver of a named ideal.
    Quiver {
        bundle: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Verify the bundle's triangle table against a named ideal. Exit 1 on any failure.
    VerifyTriangles {
        bundle: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        multiplicity: bool,
    },
    /// Jacobson radical dimensions and irreducible counts.
    Radical { bundle: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => (2, format!("error: {e:#}\n")),
    }
}

/// A path on disk, or the short name of a shipped fixture such as `lhat2`.
pub fn load_bundle(spec: &str) -> Result<Bundle> {
    let path = PathBuf::from(spec);
    if path.exists() {
        return Bundle::from_path(&path).with_context(|| format!("loading `{spec}`"));
    }
    let stem = Path::new(spec).file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
    if fixtures::NAMES.contains(&stem) {
        return fixtures::load(stem).with_context(|| format!("loading fixture `{stem}`"));
    }
    Err(anyhow!("no bundle at `{spec}`"))
}

fn execute(cmd: &Command) -> Result<(i32, String)> {
    let mut out = String::new();
    let code = match cmd {
        Command::Validate { bundle } => {
            let b = load_bundle(bundle)?;
            let cat = &b.category;
            let total: usize = cat.objects().flat_map(|x| cat.objects().map(move |y| (x, y))).map(|(x, y)| cat.hom_dim_ind(x, y)).sum();
            writeln!(out, "valid: {} objects, total Hom dimension {}", cat.object_count(), total)?;
            for f in cat.functors() {
                writeln!(out, "functor {}: ok", f.name)?;
            }
            for (name, ideal) in &b.ideals {
                writeln!(out, "ideal {name}: dimension {}", ideal.total_dim())?;
            }
            if !b.triangles.is_empty() {
                writeln!(out, "triangles: {}", b.triangles.len())?;
            }
            0
        }
        Command::Ideal { bundle, name, dims: _, basis, json } => {
            let b = load_bundle(bundle)?;
            let ideal = b.ideal(name)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&ideal.to_json())?)?;
            } else if *basis {
                write_basis(&mut out, ideal)?;
            } else {
                write_dims(&mut out, ideal)?;
            }
            0
        }
        Command::Ghost { bundle, ideal, co } => {
            let b = load_bundle(bundle)?;
            let i = b.ideal(ideal)?;
            let g = if *co { coghost_ideal(i) } else { ghost_ideal(i) };
            write_basis(&mut out, &g)?;
            i32::from(g.is_zero())
        }
        Command::Approx { bundle, ideal, object, side, minimal } => {
            let b = load_bundle(bundle)?;
            let i = b.ideal(ideal)?;
            let names: Vec<&str> = object.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let anchor: FormalObject = b.category.formal(&names)?;
            let mut a = match side {
                SideArg::Right => right_approximation(i, &anchor),
                SideArg::Left => left_approximation(i, &anchor),
            };
            if *minimal {
                a = minimize(&b.category, &a);
            }
            let cat = &b.category;
            let kind = match (a.side, a.minimal) {
                (Side::Right, true) => "sink map",
                (Side::Right, false) => "right approximation",
                (Side::Left, true) => "source map",
                (Side::Left, false) => "left approximation",
            };
            let (from, to) = (cat.format_object(a.map.source()), cat.format_object(a.map.target()));
            writeln!(out, "{kind} of {}: {from} -> {to}", cat.format_object(&anchor))?;
            writeln!(out, "{}", cat.format_morphism(&a.map))?;
            0
        }
        Command::DetectAr { bundle, ideal } => {
            let b = load_bundle(bundle)?;
            let i = b.ideal(ideal)?;
            let shift = b.functor("shift")?;
            let cat = &b.category;
            let v = detect_ar_ideal(i, shift);
            match v.condition2_failures.first() {
                _ if v.is_ar_ideal => writeln!(out, "AR ideal: YES")?,
                Some(f) => writeln!(
                    out,
                    "AR ideal: NO; witness: {} at {} ({})",
                    cat.format_morphism(&f.witness),
                    cat.object_name(f.anchor),
                    f.clause
                )?,
                None => writeln!(out, "AR ideal: NO; witness: ghost and shifted coghost ideals differ")?,
            }
            writeln!(out, "condition (1): {}", if v.condition1 { "holds" } else { "fails" })?;
            if v.condition2_failures.is_empty() {
                writeln!(out, "condition (2): holds")?;
            }
            for f in &v.condition2_failures {
                writeln!(out, "condition (2) fails at {}: {}", cat.object_name(f.object), f.describe(cat))?;
            }
            writeln!(out, "functorially finite: {}", v.functorially_finite)?;
            if let Ok(tau) = b.functor("tau") {
                writeln!(out, "tau-stable: {}", if tau_stable(i, tau) { "yes" } else { "no" })?;
            }
            i32::from(!v.is_ar_ideal)
        }
        Command::Quiver { bundle, ideal, format } => {
            let b = load_bundle(bundle)?;
            let i = b.ideal(ideal)?;
            let mut q = mutation_quiver(i);
            if let Ok(shift) = b.functor("shift") {
                q = q.with_tau(i, shift, &b.triangles_for(ideal));
            }
            match format {
                Format::Dot => out.push_str(&q.to_dot()),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&q.to_json())?)?,
            }
            0
        }
        Command::VerifyTriangles { bundle, ideal, multiplicity } => {
            let b = load_bundle(bundle)?;
            let i = b.ideal(ideal)?;
            let shift = b.functor("shift")?;
            let cat = &b.category;
            let triangles = b.triangles_for(ideal);
            if triangles.is_empty() {
                return Err(anyhow!("no triangles for ideal `{ideal}`"));
            }
            let mut failed = false;
            for t in &triangles {
                match verify_mutation_triangle(i, shift, t) {
                    Err(e) => {
                        failed = true;
                        writeln!(out, "{}: FAIL ({e})", t.label)?;
                    }
                    Ok(c) if !c.is_mutation_triangle() => {
                        failed = true;
                        writeln!(
                            out,
                            "{}: FAIL (u left approximation: {}, v right approximation: {}, w ghost: {})",
                            t.label, c.u_left_approximation, c.v_right_approximation, c.w_in_ghosts
                        )?;
                    }
                    Ok(c) => {
                        let f = c.forms;
                        writeln!(
                            out,
                            "{}: OK ({} non-trivial, {} identity-first, {} identity-last)",
                            t.label, f.nontrivial, f.identity_first, f.identity_last
                        )?;
                        if *multiplicity && c.is_nontrivial() {
                            for row in verify_multiplicity(i, shift, t)? {
                                if row.multiplicity == 0 && row.holds() {
                                    continue;
                                }
                                failed |= !row.holds();
                                writeln!(
                                    out,
                                    "  {}: multiplicity {}, Irr- {}, Irr+ {} {}",
                                    cat.object_name(row.object),
                                    row.multiplicity,
                                    row.irr_minus,
                                    row.irr_plus,
                                    if row.holds() { "ok" } else { "MISMATCH" }
                                )?;
                            }
                        }
                    }
                }
            }
            i32::from(failed)
        }
        Command::Radical { bundle } => {
            let b = load_bundle(bundle)?;
            let cat = &b.category;
            let spaces = IrreducibleSpaces::new(&Ideal::jacobson(cat));
            for x in cat.objects() {
                for y in cat.objects() {
                    writeln!(
                        out,
                        "{} -> {}: radical {}, irreducible {}",
                        cat.object_name(x),
                        cat.object_name(y),
                        spaces.ideal.dim_at(x, y),
                        spaces.irr_minus(x, y)
                    )?;
                }
            }
            0
        }
    };
    Ok((code, out))
}

fn write_dims(out: &mut String, ideal: &Ideal) -> std::fmt::Result {
    for ((x, y), d) in ideal.dims() {
        writeln!(out, "{x} -> {y}: {d}")?;
    }
    Ok(())
}

/// One line per nonzero pair: `X -> Y: f, g`.
fn write_basis(out: &mut String, ideal: &Ideal) -> std::fmt::Result {
    for (x, y, exprs) in ideal.basis_expressions() {
        if !exprs.is_empty() {
            writeln!(out, "{x} -> {y}: {}", exprs.join(", "))?;
        }
    }
    Ok(())
}
