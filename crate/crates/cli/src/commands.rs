use std::time::{Duration, Instant};

use clap::ValueEnum;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use setpair_core::constructions::{
    all_full_dpartitions, full_power_set_system, furedi_construction, lex_full_dpartitions, t_system_construction,
};
use setpair_core::exterior::{certify_skew_system, lift_set_system, PrimeField};
use setpair_core::search::{
    equality_structure, max_dpartition_weight, max_skew_weight, max_strong_weight, max_t_system_size, SearchLimits,
    SearchReport, SkewMode,
};
use setpair_core::count::rational_from_int;
use setpair_core::{binomial, format_rational, to_json_line, AnySystem, Cell, Rational, Variant};

use crate::config::{for_each_system, report, write_file, write_report, CmdResult, Failure, RunConfig, Status};
use crate::{CertifyArgs, ConstructArgs, Construction, ModeArg, Problem, SearchArgs, VerifyArgs, WeightArgs};

fn cell_json(cell: Option<Cell>) -> Value {
    match cell {
        Some(c) => json!({ "i": c.i + 1, "j": c.j + 1 }),
        None => Value::Null,
    }
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let started = Instant::now();
    let variant = args.variant();
    let mut config = RunConfig::new("verify");
    config.input = Some(args.input.clone());
    config.output = args.out.output.clone();
    config.variant = Some(variant);
    config.t = Some(args.t);

    let mut results = Vec::new();
    let mut all_pass = true;
    for_each_system(&args.input, |line, system| {
        let (kind, m, cell) = match &system {
            AnySystem::Pairs(s) => ("pairs", s.len(), s.t_violation(args.t, variant)),
            AnySystem::DPartitions(s) => {
                if args.t > 0 {
                    return Err(Failure::input(format!("line {line}: --t applies to set-pair systems only")));
                }
                ("dpartitions", s.len(), s.violation(variant))
            }
        };
        match cell {
            None => println!("line {line}: PASS ({variant}, m = {m})"),
            Some(c) => {
                all_pass = false;
                println!("line {line}: FAIL ({variant}) at cell ({}, {})", c.i + 1, c.j + 1);
            }
        }
        results.push(json!({ "line": line, "kind": kind, "m": m, "pass": cell.is_none(), "cell": cell_json(cell) }));
        Ok(())
    })?;
    write_report(args.out.output.as_deref(), &report(&config, "results", Value::Array(results), started.elapsed()))?;
    Ok(if all_pass { Status::Pass } else { Status::Fail })
}

/// Weight line such as `4/1 of bound 4 (TIGHT)`.
fn weight_summary(system: &AnySystem) -> (Rational, Option<Rational>, String) {
    let (weight, bound, suffix) = match system {
        AnySystem::Pairs(s) => {
            let w = s.weight();
            if s.is_empty() {
                return (w.clone(), None, format_rational(&w));
            }
            let bound = if s.is_bollobas() {
                Some(rational_from_int(1))
            } else if s.is_skew_bollobas() {
                Some(rational_from_int(s.ground().get() as u64 + 1))
            } else {
                None
            };
            (w, bound, String::new())
        }
        AnySystem::DPartitions(s) => {
            let w = s.weight();
            if s.is_empty() {
                return (w.clone(), None, format_rational(&w));
            }
            let (n, d) = (s.ground().get() as u64, s.d() as u64);
            if d >= 2 && s.is_bollobas(false) {
                (w, Some(rational_from_int(d - 1)), format!(" for d={d} strong"))
            } else if s.is_bollobas(true) {
                (w, Some(rational_from_int(binomial(n + d - 1, d as i64 - 1))), format!(" for d={d} skew"))
            } else {
                (w, None, String::new())
            }
        }
    };
    let text = match &bound {
        None => format!("{} (not a Bollobás system)", format_rational(&weight)),
        Some(b) => {
            let flag = match weight.cmp(b) {
                std::cmp::Ordering::Equal => " (TIGHT)",
                std::cmp::Ordering::Greater => " (ABOVE)",
                std::cmp::Ordering::Less => "",
            };
            format!("{} of bound {}{suffix}{flag}", format_rational(&weight), b.to_integer())
        }
    };
    (weight, bound, text)
}

pub fn weight(args: &WeightArgs) -> CmdResult {
    let started = Instant::now();
    let mut config = RunConfig::new("weight");
    config.input = Some(args.input.clone());
    config.output = args.out.output.clone();

    let mut results = Vec::new();
    for_each_system(&args.input, |line, system| {
        let (w, bound, text) = weight_summary(&system);
        println!("line {line}: {text}");
        results.push(json!({
            "line": line,
            "weight": format_rational(&w),
            "bound": bound.as_ref().map(format_rational),
            "tight": bound.as_ref() == Some(&w),
            "summary": text,
        }));
        Ok(())
    })?;
    write_report(args.out.output.as_deref(), &report(&config, "results", Value::Array(results), started.elapsed()))?;
    Ok(Status::Pass)
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::input(format!("construct {kind} needs --{flag}")))
}

pub fn construct(args: &ConstructArgs) -> CmdResult {
    let mut config = RunConfig::new("construct");
    config.output = args.out.output.clone();
    let system = match args.kind {
        Construction::FullPowerSet => {
            let n = need(args.n, "n", "full-power-set")?;
            config.n = Some(n);
            AnySystem::Pairs(full_power_set_system(n)?)
        }
        Construction::Furedi => {
            let (a, b, t) = (need(args.a, "a", "furedi")?, need(args.b, "b", "furedi")?, need(args.t, "t", "furedi")?);
            (config.a, config.b, config.t) = (Some(a), Some(b), Some(t));
            AnySystem::Pairs(furedi_construction(a, b, t)?)
        }
        Construction::TSystem => {
            let (n, t) = (need(args.n, "n", "t-system")?, need(args.t, "t", "t-system")?);
            (config.n, config.t) = (Some(n), Some(t));
            AnySystem::Pairs(t_system_construction(n, t)?)
        }
        Construction::LexDpartitions => {
            let (n, d) = (need(args.n, "n", "lex-dpartitions")?, need(args.d, "d", "lex-dpartitions")?);
            (config.n, config.d) = (Some(n), Some(d));
            AnySystem::DPartitions(lex_full_dpartitions(n, d)?)
        }
        Construction::FullDpartitions => {
            let parts = args.parts.clone().ok_or_else(|| Failure::input("construct full-dpartitions needs --parts"))?;
            config.parts = Some(parts.clone());
            AnySystem::DPartitions(all_full_dpartitions(&parts)?)
        }
    };
    config.target = Some(value_name(args.kind));
    let mut value = serde_json::to_value(&system).expect("systems serialize");
    value
        .as_object_mut()
        .expect("systems are objects")
        .insert("config".into(), serde_json::to_value(&config).expect("config serializes"));
    let line = serde_json::to_string(&value).expect("systems serialize");
    match &args.out.output {
        Some(path) => {
            write_file(path, &line)?;
            let (m, n) = match &system {
                AnySystem::Pairs(s) => (s.len(), s.ground().get()),
                AnySystem::DPartitions(s) => (s.len(), s.ground().get()),
            };
            println!("wrote a {m}-member system on [{n}] to {path}");
        }
        None => println!("{line}"),
    }
    Ok(Status::Pass)
}

pub fn certify(args: &CertifyArgs) -> CmdResult {
    let started = Instant::now();
    let mut config = RunConfig::new("certify");
    config.input = Some(args.input.clone());
    config.output = args.out.output.clone();
    config.t = Some(args.t);
    config.field_modulus = args.field_prime;
    config.seed = args.seed;
    config.max_tries = Some(args.max_tries);

    let field = PrimeField::new(args.field_prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut certificates = Vec::new();
    let mut all_pass = true;
    for_each_system(&args.input, |line, system| {
        let AnySystem::Pairs(system) = system else {
            return Err(Failure::input(format!("line {line}: certificates apply to set-pair systems only")));
        };
        let lifted = lift_set_system(&system, &field)?;
        let c = certify_skew_system(&lifted, args.t, &field, &mut rng, args.max_tries)?.with_seed(args.seed);
        if c.verdict {
            let rank = c.rank.map_or("-".to_string(), |r| r.to_string());
            println!(
                "line {line}: CERTIFIED m = {} <= {} = 2^({}-{}), rank {rank}",
                c.m, c.bound, c.ambient, c.t
            );
        } else {
            all_pass = false;
            match &c.failure {
                Some(f) => println!("line {line}: NOT CERTIFIED at cell ({}, {}): {}", f.i + 1, f.j + 1, f.reason),
                None => println!("line {line}: NOT CERTIFIED: m = {} exceeds {}", c.m, c.bound),
            }
        }
        certificates.push(json!({ "line": line, "certificate": c }));
        Ok(())
    })?;
    write_report(
        args.out.output.as_deref(),
        &report(&config, "certificates", Value::Array(certificates), started.elapsed()),
    )?;
    Ok(if all_pass { Status::Pass } else { Status::Fail })
}

fn print_table(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:<width$}  {v}");
    }
}

fn search_rows(r: &SearchReport) -> Vec<(&'static str, String)> {
    let mut rows = vec![
        ("optimum", r.optimum.to_string()),
        ("reference bound", format!("{} ({})", r.reference_bound, r.comparison)),
    ];
    if let Some(size) = r.max_size {
        rows.push(("max size", size.to_string()));
    }
    rows.push(("exhaustive", r.exhaustive.to_string()));
    rows.push(("nodes", r.nodes_explored.to_string()));
    rows.push(("witness", to_json_line(&r.witness)));
    rows
}

pub fn search(args: &SearchArgs) -> CmdResult {
    let mut config = RunConfig::new("search");
    config.target = Some(value_name(args.problem));
    config.output = args.out.output.clone();
    config.n = Some(args.n);
    config.node_budget = args.node_budget;
    config.time_budget_seconds = args.time_budget;
    if args.time_budget.is_some_and(|s| !s.is_finite() || s < 0.0) {
        return Err(Failure::input("--time-budget must be a nonnegative number of seconds"));
    }
    let limits = SearchLimits {
        node_budget: args.node_budget,
        time_budget: args.time_budget.map(Duration::from_secs_f64),
    };

    let (body, exhaustive, elapsed) = match args.problem {
        Problem::EqualityStructure => {
            let e = equality_structure(args.n, limits)?;
            print_table(&[
                ("n", args.n.to_string()),
                ("optimum", format_rational(&e.optimum)),
                ("all optima complementary", e.holds.to_string()),
                ("optimal systems", e.optimal_systems.to_string()),
                ("exhaustive", e.exhaustive.to_string()),
                ("nodes", e.nodes_explored.to_string()),
            ]);
            if let Some(c) = &e.counterexample {
                println!("counterexample  {}", to_json_line(&AnySystem::Pairs(c.clone())));
            }
            (serde_json::to_value(&e).expect("serializes"), e.exhaustive, e.wall_time)
        }
        problem => {
            let r = match problem {
                Problem::SkewWeight => {
                    let mode = match args.mode {
                        ModeArg::Unrestricted => SkewMode::Unrestricted,
                        ModeArg::FullPairs => SkewMode::FullPairs,
                    };
                    config.mode = Some(value_name(args.mode));
                    max_skew_weight(args.n, mode, limits)?
                }
                Problem::StrongWeight => max_strong_weight(args.n, limits)?,
                Problem::TSystemSize => {
                    let t = args.t.ok_or_else(|| Failure::input("search t-system-size needs --t"))?;
                    config.t = Some(t);
                    max_t_system_size(args.n, t, limits)?
                }
                Problem::DpartitionWeight => {
                    let d = args.d.ok_or_else(|| Failure::input("search dpartition-weight needs --d"))?;
                    let variant: Variant = args.variant.into();
                    config.d = Some(d);
                    config.variant = Some(variant);
                    max_dpartition_weight(args.n, d, variant, limits)?
                }
                Problem::EqualityStructure => unreachable!("handled above"),
            };
            let mut rows = vec![("problem", config.target.clone().unwrap_or_default()), ("n", args.n.to_string())];
            rows.extend(search_rows(&r));
            print_table(&rows);
            (serde_json::to_value(&r).expect("serializes"), r.exhaustive, r.wall_time)
        }
    };
    write_report(args.out.output.as_deref(), &report(&config, "report", body, elapsed))?;
    if exhaustive {
        Ok(Status::Pass)
    } else {
        eprintln!("budget exhausted before the search space was covered");
        Ok(Status::CapExceeded)
    }
}
