//! `stringbv`: the dual loop coproduct, BV operator and Gerstenhaber bracket
//! on `H^{*+d}(LBG)`, Hochschild cohomology models, and bounded-degree
//! isomorphism search, from presentations of `H^*(BG)`.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use report::{emit, Format, Table};
use stringbv::element::Element;
use stringbv::hochschild::{
    derivation_commuting_with_trace, hh_of_loop_homology, FrobeniusAlgebra,
};
use stringbv::iso::{
    free_loop_presentation, generator_list, relabeling_candidate, search, BvSide, IsoLevel,
    IsoProblem, Transport,
};
use stringbv::loop_model::{preset, validate_presentation, LoopModel, Presentation};
use stringbv::monomial::Monomial;
use stringbv::par::ExecMode;
use stringbv::string_bv::BvContext;
use stringbv::verify::{run_verify, Check};
use stringbv::Generator;

#[derive(Parser)]
#[command(
    name = "stringbv",
    about = "BV algebra of free loop space cohomology of classifying spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Shipped presentation: so3, g2, tN (torus), suN.
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Presentation file (JSON).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Coefficient prime override for presets without Steenrod data (0 = Q).
    #[arg(long)]
    prime: Option<u32>,
}

impl InputArgs {
    fn presentation(&self) -> anyhow::Result<Presentation> {
        match (&self.preset, &self.file) {
            (Some(name), None) => Ok(preset(name, self.prime)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                Ok(Presentation::from_json(&text)?)
            }
            _ => anyhow::bail!("exactly one of --preset or --file is required"),
        }
    }

    fn model(&self) -> anyhow::Result<LoopModel> {
        Ok(validate_presentation(&self.presentation()?)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full table of the dual loop coproduct on exterior monomial pairs.
    Dlcop {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// The BV operator on the loop algebra basis over a degree range.
    Delta {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Run the BV property suites on seeded pseudo-random elements.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Exhaustive isomorphism search between the loop algebra and the
    /// Hochschild model of the loop-group homology.
    Iso {
        #[command(flatten)]
        input: InputArgs,
        /// Filter depth: algebra, gerstenhaber or bv.
        #[arg(long, default_value = "bv")]
        level: String,
        #[arg(long)]
        max_degree: Option<i64>,
        /// `search` enumerates every candidate; `relabeling` checks the
        /// canonical generator relabeling only.
        #[arg(long, default_value = "search")]
        mode: String,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// The Hochschild cohomology model of H_*(G) and the trace criteria
    /// for 1 in Im Delta.
    Hochschild {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Transport of the BV operator onto the free presentation
    /// K[V] (x) Lambda(sV)^v.
    Transport {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long, default_value = "md")]
        format: String,
    },
}

fn main() -> ExitCode {
    init_thread_pool();
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn init_thread_pool() {
    if let Ok(v) = std::env::var("STRINGBV_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn init_thread_pool() {}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Dlcop { input, format } => cmd_dlcop(&input, Format::parse(&format)?),
        Command::Delta {
            input,
            max_degree,
            format,
        } => cmd_delta(&input, max_degree, Format::parse(&format)?),
        Command::Verify {
            input,
            checks,
            samples,
            seed,
            max_degree,
            format,
        } => cmd_verify(
            &input,
            &checks,
            samples,
            seed,
            max_degree,
            Format::parse(&format)?,
        ),
        Command::Iso {
            input,
            level,
            max_degree,
            mode,
            format,
        } => cmd_iso(&input, &level, max_degree, &mode, Format::parse(&format)?),
        Command::Hochschild {
            input,
            max_degree,
            format,
        } => cmd_hochschild(&input, max_degree, Format::parse(&format)?),
        Command::Transport {
            input,
            max_degree,
            format,
        } => cmd_transport(&input, max_degree, Format::parse(&format)?),
    }
}

/// Exterior subsets of `{1..n}` in canonical order (size, then lex).
fn subsets_in_order(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    subsets
}

fn cmd_dlcop(input: &InputArgs, format: Format) -> anyhow::Result<ExitCode> {
    let ctx = BvContext::new(input.model()?)?;
    let spec = ctx.model.loop_spec.clone();
    let subsets = subsets_in_order(ctx.model.n);
    let mut table = Table::new(&["a", "b", "Dlcop(a (x) b)"]);
    let mut entries = Vec::new();
    let mut zero_pairs = 0u64;
    for i_set in &subsets {
        for j_set in &subsets {
            let a = Element::monomial(Monomial::ext_set(i_set), ctx.prime());
            let b = Element::monomial(Monomial::ext_set(j_set), ctx.prime());
            let value = ctx.dlcop(&a, &b)?;
            if value.is_zero() {
                zero_pairs += 1;
                continue;
            }
            let (sa, sb, sv) = (
                spec.element_string(&a),
                spec.element_string(&b),
                spec.element_string(&value),
            );
            table.row(vec![sa.clone(), sb.clone(), sv.clone()]);
            entries.push(json!({ "a": sa, "b": sb, "value": sv }));
        }
    }
    let md = format!(
        "# Dlcop on exterior monomial pairs\n\nunit: {}\n\n{}\n{} zero pairs omitted\n",
        spec.element_string(ctx.unit()),
        table.to_markdown(),
        zero_pairs
    );
    let json = json!({
        "unit": spec.element_string(ctx.unit()),
        "entries": entries,
        "zero_pairs": zero_pairs,
    });
    emit(format, md, json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_delta(input: &InputArgs, max_degree: Option<i64>, format: Format) -> anyhow::Result<ExitCode> {
    let model = input.model()?;
    let hi = max_degree.unwrap_or(2 * model.d);
    let spec = &model.loop_spec;
    let mut table = Table::new(&["degree", "monomial", "Delta"]);
    let mut entries = Vec::new();
    for n in 0..=hi {
        for m in spec.basis_of_degree(n)? {
            let e = Element::monomial(m, model.prime());
            let d = model.delta(&e)?;
            let (sm, sd) = (spec.element_string(&e), spec.element_string(&d));
            table.row(vec![n.to_string(), sm.clone(), sd.clone()]);
            entries.push(json!({ "degree": n, "monomial": sm, "delta": sd }));
        }
    }
    let md = format!("# BV operator on the loop algebra\n\n{}", table.to_markdown());
    emit(format, md, json!({ "max_degree": hi, "entries": entries }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    input: &InputArgs,
    checks: &str,
    samples: usize,
    seed: u64,
    max_degree: Option<i64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let ctx = BvContext::new(input.model()?)?;
    let list: Vec<Check> = if checks == "all" {
        Check::ALL.to_vec()
    } else {
        checks
            .split(',')
            .map(|s| Check::from_name(s.trim()))
            .collect::<Result<_, _>>()?
    };
    let report = run_verify(&ctx, &list, samples, seed, max_degree, ExecMode::Parallel)?;
    let mut table = Table::new(&["check", "samples", "failures", "status"]);
    for o in &report.outcomes {
        let status = if let Some(reason) = &o.skipped {
            format!("skipped ({reason})")
        } else if o.passed {
            "pass".to_string()
        } else {
            "FAIL".to_string()
        };
        table.row(vec![
            o.check.clone(),
            o.samples.to_string(),
            o.failures.to_string(),
            status,
        ]);
    }
    let mut md = format!(
        "# Verification report (seed {seed}, {} samples, max degree {})\n\n{}",
        report.samples,
        report.max_degree,
        table.to_markdown()
    );
    for o in &report.outcomes {
        if let Some(ce) = &o.counterexample {
            md.push_str(&format!("\ncounterexample [{}]: {}\n", o.check, ce));
        }
    }
    let ok = report.all_passed();
    emit(format, md, serde_json::to_value(&report)?);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Both sides of the comparison: the Hochschild model of `H_*(G)` and the
/// loop algebra transported onto its free presentation.
fn build_sides(ctx: &BvContext, max_degree: i64) -> anyhow::Result<(BvSide, BvSide)> {
    let (spec, images) = free_loop_presentation(ctx)?;
    let max_gen = generator_list(&spec)
        .iter()
        .map(|(_, d)| d.abs())
        .max()
        .unwrap_or(1);
    let lo = -ctx.model.d;
    let hi = max_degree.max(2 * max_gen).max(1);
    let transport = Transport::new(ctx, spec, images)?;
    transport.validate(lo, hi)?;
    let target = transport.transported_delta(lo, hi)?;
    let source = BvSide::from_hochschild(hh_of_loop_homology(&ctx.model)?)?;
    Ok((source, target))
}

fn default_iso_degree(ctx: &BvContext) -> i64 {
    // twice the top relation degree, or twice the shift when no relations
    let top_relation = ctx
        .model
        .loop_spec
        .ext_gens()
        .iter()
        .map(|g| 2 * g.degree)
        .max()
        .unwrap_or(ctx.model.d);
    2 * top_relation.max(ctx.model.d)
}

fn cmd_iso(
    input: &InputArgs,
    level: &str,
    max_degree: Option<i64>,
    mode: &str,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let ctx = BvContext::new(input.model()?)?;
    let level = IsoLevel::from_name(level)?;
    let max_degree = max_degree.unwrap_or_else(|| default_iso_degree(&ctx));
    let (source, target) = build_sides(&ctx, max_degree)?;
    let source_names: Vec<(String, String)> = generator_list(&source.spec)
        .into_iter()
        .map(|(n, d)| (n, d.to_string()))
        .collect();
    let problem = IsoProblem::new(source, target, max_degree);

    match mode {
        "search" => {
            let report = search(&problem, level, ExecMode::Parallel)?;
            let mut table = Table::new(&["filter", "count"]);
            table.row(vec!["scanned".into(), report.scanned.to_string()]);
            table.row(vec![
                "algebra morphisms".into(),
                report.algebra_morphisms.to_string(),
            ]);
            table.row(vec!["surjective".into(), report.surjective.to_string()]);
            if let Some(g) = report.gerstenhaber {
                table.row(vec!["gerstenhaber".into(), g.to_string()]);
            }
            if let Some(b) = report.bv {
                table.row(vec!["bv".into(), b.to_string()]);
            }
            let mut md = format!(
                "# Isomorphism search (level {:?}, max degree {})\n\n{}\n\
                 unit in Im Delta: hochschild side = {}, loop side = {}\n",
                report.level,
                report.max_degree,
                table.to_markdown(),
                report.unit_in_im_delta_source,
                report.unit_in_im_delta_target
            );
            if !report.dims_match {
                md.push_str("\ndimension mismatch: structurally non-isomorphic\n");
            }
            for (i, survivor) in report.survivors.iter().enumerate() {
                md.push_str(&format!("\nsurvivor {}:\n", i + 1));
                for (gen, img) in survivor {
                    md.push_str(&format!("  {gen} -> {img}\n"));
                }
            }
            emit(format, md, serde_json::to_value(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        "relabeling" => {
            let cand = relabeling_candidate(&problem.source.spec, &problem.target.spec, 0);
            let mut outcome = problem.check_candidate(&cand)?;
            let mut used_sign = 0i64;
            if !outcome.bv && problem.source.prime() != 2 {
                let flipped = relabeling_candidate(&problem.source.spec, &problem.target.spec, 1);
                let second = problem.check_candidate(&flipped)?;
                if second.bv {
                    outcome = second;
                    used_sign = 1;
                }
            }
            let md = format!(
                "# Relabeling candidate (max degree {max_degree})\n\n\
                 generators: {}\n\
                 dual sign: {}\n\
                 algebra morphism: {}\nsurjective: {}\ngerstenhaber: {}\nbv: {}\n",
                source_names
                    .iter()
                    .map(|(n, d)| format!("{n} (deg {d})"))
                    .collect::<Vec<_>>()
                    .join(", "),
                if used_sign == 0 { "+1" } else { "-1" },
                outcome.algebra_morphism,
                outcome.surjective,
                outcome.gerstenhaber,
                outcome.bv
            );
            let json = json!({
                "max_degree": max_degree,
                "dual_sign": if used_sign == 0 { 1 } else { -1 },
                "algebra_morphism": outcome.algebra_morphism,
                "surjective": outcome.surjective,
                "gerstenhaber": outcome.gerstenhaber,
                "bv": outcome.bv,
            });
            emit(format, md, json);
            Ok(ExitCode::SUCCESS)
        }
        _ => anyhow::bail!("unknown mode `{mode}` (search, relabeling)"),
    }
}

fn cmd_hochschild(
    input: &InputArgs,
    max_degree: Option<i64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let model = input.model()?;
    let hh = hh_of_loop_homology(&model)?;
    let side = BvSide::from_hochschild(hh.clone())?;
    let spec = &side.spec;

    let mut gen_table = Table::new(&["generator", "degree", "dual", "dual degree"]);
    for g in hh.generators() {
        gen_table.row(vec![
            g.name.clone(),
            g.degree.to_string(),
            g.dual_name.clone(),
            (1 - g.degree).to_string(),
        ]);
    }

    // Delta on a basis range and the 1 in Im Delta criteria
    let lo: i64 = spec.ext_gens().iter().map(|g| g.degree.min(0)).sum();
    let hi = max_degree.unwrap_or(2 * model.d);
    let mut delta_table = Table::new(&["degree", "monomial", "Delta"]);
    let mut entries = Vec::new();
    for (m, v) in side.delta_table(lo, hi)? {
        let n = spec.monomial_degree(&m);
        let (sm, sv) = (
            spec.monomial_string(&m),
            spec.element_string(&v),
        );
        delta_table.row(vec![n.to_string(), sm.clone(), sv.clone()]);
        entries.push(json!({ "degree": n, "monomial": sm, "delta": sv }));
    }

    let unit_in_im = side.unit_in_image_delta()?;
    // trace criterion on H_*(G) itself
    let gens: Vec<Generator> = hh
        .generators()
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let fa = FrobeniusAlgebra::exterior(gens, model.prime())?;
    let witness = derivation_commuting_with_trace(&fa)?;
    let witness_str = witness.as_ref().map(|t| {
        let mut parts = Vec::new();
        for (i, g) in fa.spec.ext_gens().iter().enumerate() {
            parts.push(format!("d({}) = {}", g.name, fa.spec.element_string(&t.ext_images[i])));
        }
        parts.join(", ")
    });

    let md = format!(
        "# Hochschild model of H_*(G)\n\n{}\n## BV operator (degrees {lo}..{hi})\n\n{}\n\
         1 in Im Delta (exact solve): {unit_in_im}\n\
         trace-commuting degree-0 derivation: {}\n",
        gen_table.to_markdown(),
        delta_table.to_markdown(),
        witness_str.as_deref().unwrap_or("none"),
    );
    let json = json!({
        "generators": hh.generators().iter().map(|g| json!({
            "name": g.name, "degree": g.degree,
            "dual": g.dual_name, "dual_degree": 1 - g.degree,
        })).collect::<Vec<_>>(),
        "delta": entries,
        "unit_in_image_delta": unit_in_im,
        "trace_derivation": witness_str,
    });
    emit(format, md, json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_transport(
    input: &InputArgs,
    max_degree: Option<i64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let ctx = BvContext::new(input.model()?)?;
    let hi = max_degree.unwrap_or_else(|| default_iso_degree(&ctx));
    let lo = -ctx.model.d;
    let (spec, images) = free_loop_presentation(&ctx)?;
    let gens = generator_list(&spec);
    let transport = Transport::new(&ctx, spec.clone(), images.clone())?;
    transport.validate(lo, hi)?;
    let side = transport.transported_delta(lo, hi)?;

    let mut image_table = Table::new(&["generator", "degree", "image in H^{*+d}(LX)"]);
    for ((name, degree), img) in gens.iter().zip(&images) {
        image_table.row(vec![
            name.clone(),
            degree.to_string(),
            ctx.model.loop_spec.element_string(img),
        ]);
    }
    let mut delta_table = Table::new(&["degree", "monomial", "Delta"]);
    let mut entries = Vec::new();
    for (m, v) in side.delta_table(lo, hi)? {
        let n = spec.monomial_degree(&m);
        let (sm, sv) = (spec.monomial_string(&m), spec.element_string(&v));
        delta_table.row(vec![n.to_string(), sm.clone(), sv.clone()]);
        entries.push(json!({ "degree": n, "monomial": sm, "delta": sv }));
    }
    let md = format!(
        "# Transported BV operator on K[V] (x) Lambda(sV)^v\n\n\
         ## Generator images\n\n{}\n## Delta (degrees {lo}..{hi})\n\n{}",
        image_table.to_markdown(),
        delta_table.to_markdown()
    );
    let json = json!({
        "generators": gens.iter().zip(&images).map(|((n, d), img)| json!({
            "name": n, "degree": d,
            "image": ctx.model.loop_spec.element_string(img),
        })).collect::<Vec<_>>(),
        "delta": entries,
    });
    emit(format, md, json);
    Ok(ExitCode::SUCCESS)
}
