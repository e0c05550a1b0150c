use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;

use mdtw_core::certify::{self, Refutation};
use mdtw_core::graph::{io, metric_dimension_tiny, validate_path_decomposition, LabeledGraph};
use mdtw_core::md::{self, MdInstance};
use mdtw_core::mrs;
use mdtw_core::sidecar;
use mdtw_core::width::{self, NodeSearchStrategy, SearchOutcome};
use mdtw_core::ThreeDMInstance;

use crate::output::{Failure, Sheet};
use crate::{CertifyWhat, Cli, Command, Guards, SolveCommand, Target, WidthCommand};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// The seed recorded by `gen3dm` in the instance header, if any.
fn recorded_seed(text: &str) -> Option<u64> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .find_map(|w| w.strip_prefix("seed=")?.parse().ok())
}

fn load_instance(path: &Path, guards: &Guards) -> Result<(ThreeDMInstance, Option<u64>), Failure> {
    let text = read(path)?;
    let inst = ThreeDMInstance::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if inst.n > guards.max_n || inst.m() > guards.max_m {
        return Err(Failure::input(format!(
            "instance n={} m={} exceeds the guard n<={} m<={}",
            inst.n,
            inst.m(),
            guards.max_n,
            guards.max_m
        )));
    }
    Ok((inst, recorded_seed(&text)))
}

fn load_graph(graph: &Path, labels: Option<&PathBuf>) -> Result<LabeledGraph, Failure> {
    let g = read(graph)?;
    let l = labels.map(|p| read(p)).transpose()?;
    io::read_graph(&g, l.as_deref()).map_err(|e| Failure::input(format!("{}: {e}", graph.display())))
}

fn build(inst: &ThreeDMInstance) -> Result<MdInstance, Failure> {
    md::build_md(inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let guards = &cli.guards;
    match &cli.command {
        Command::Gen3dm {
            n,
            m,
            seed,
            planted,
            out,
        } => {
            if *n > guards.max_n || *m > guards.max_m {
                return Err(Failure::input(format!("n={n} m={m} exceeds the guard")));
            }
            let inst = ThreeDMInstance::generate(*n, *m, *seed, *planted).map_err(Failure::input)?;
            let text = format!("# mdtw gen3dm n={n} m={m} seed={seed} planted={planted}\n{}", inst.to_text());
            match out {
                Some(p) => write(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Solve3dm { input } => {
            let (inst, seed) = load_instance(input, guards)?;
            let mut sheet = Sheet::new("solve3dm", seed);
            match inst.solve() {
                Some(cover) => {
                    sheet.line("answer yes");
                    for j in cover {
                        let [x, y, z] = inst.tuple(j);
                        sheet.line(format!("use {j} {x} {y} {z}"));
                    }
                }
                None => sheet.line("answer no"),
            }
            sheet.finish(None)
        }
        Command::Reduce { target, input, out } => {
            let (inst, seed) = load_instance(input, guards)?;
            let mut sheet = Sheet::new(&format!("reduce {}", target_name(*target)), seed);
            let (g, side) = match target {
                Target::Mrs => {
                    let mrs = mrs::build_mrs(&inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))?;
                    let side = sidecar::write_mrs_sidecar(&mrs);
                    (mrs.graph, side)
                }
                Target::Md => {
                    let md = build(&inst)?;
                    let st = md::md_stats(&md);
                    sheet.line(format!("k={} gadgets={} paths={}", st.k, st.gadget_count, st.path_count));
                    let side = sidecar::write_md_sidecar(&md);
                    (md.graph, side)
                }
            };
            sheet.line(format!("vertices={} edges={}", g.vertex_count(), g.edge_count()));
            write(&out.join("graph.txt"), &io::write_graph(&g))?;
            write(&out.join("labels.txt"), &io::write_labels(&g))?;
            write(&out.join("sidecar.txt"), &side)?;
            sheet.line(format!("wrote {}", out.display()));
            sheet.finish(None)
        }
        Command::Solve { what } => solve(what, guards),
        Command::Certify { what, input, facts } => {
            let (inst, seed) = load_instance(input, guards)?;
            certify_cmd(*what, &inst, seed, facts.as_deref())
        }
        Command::Width { what } => width_cmd(what, guards),
        Command::Export { input, out } => export(input, out, guards),
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Mrs => "mrs",
        Target::Md => "md",
    }
}

fn solve(what: &SolveCommand, guards: &Guards) -> Result<(), Failure> {
    match what {
        SolveCommand::Mrs { input } => {
            let (inst, seed) = load_instance(input, guards)?;
            let mut sheet = Sheet::new("solve mrs", seed);
            let mrs = mrs::build_mrs(&inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))?;
            match mrs::solve_mrs(&mrs).map_err(Failure::input)? {
                Some(set) => {
                    sheet.line("answer yes");
                    for v in set {
                        sheet.line(format!("select {}", mrs.graph.label_string(v)));
                    }
                }
                None => sheet.line("answer no"),
            }
            sheet.finish(None)
        }
        SolveCommand::Tiny { graph, labels, max_k } => {
            let g = load_graph(graph, labels.as_ref())?;
            if g.vertex_count() > guards.max_tiny_vertices {
                return Err(Failure::input(format!(
                    "graph has {} vertices, guard is {}",
                    g.vertex_count(),
                    guards.max_tiny_vertices
                )));
            }
            let mut sheet = Sheet::new("solve tiny", None);
            match metric_dimension_tiny(&g, *max_k).map_err(Failure::input)? {
                Some(set) => {
                    sheet.line(format!("dimension {}", set.len()));
                    let names: Vec<String> = set.iter().map(|&v| g.label_string(v)).collect();
                    sheet.line(format!("basis {}", names.join(" ")));
                }
                None => sheet.line(format!("dimension > {max_k}")),
            }
            sheet.finish(None)
        }
    }
}

fn certify_cmd(what: CertifyWhat, inst: &ThreeDMInstance, seed: Option<u64>, facts: Option<&Path>) -> Result<(), Failure> {
    let name = match what {
        CertifyWhat::Lemma1 => "lemma1",
        CertifyWhat::Forcedset => "forcedset",
        CertifyWhat::Forcedvertex => "forcedvertex",
        CertifyWhat::Yes => "yes",
        CertifyWhat::No => "no",
        CertifyWhat::All => "all",
    };
    let mut sheet = Sheet::new(&format!("certify {name}"), seed);
    sheet.line(format!("instance n={} m={}", inst.n, inst.m()));
    if what == CertifyWhat::Lemma1 {
        let mrs = mrs::build_mrs(inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))?;
        sheet.report("lemma1", &mrs::verify_lemma_resolve(&mrs, inst));
        return sheet.finish(facts);
    }
    let md = build(inst)?;
    sheet.line(format!("k={} vertices={}", md.k, md.graph.vertex_count()));
    let all = what == CertifyWhat::All;
    if all {
        let mrs = mrs::build_mrs(inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))?;
        sheet.report("distance-identities", &mrs::verify_distance_identities(&mrs));
        sheet.report("lemma1", &mrs::verify_lemma_resolve(&mrs, inst));
        let fvs = mrs::verify_fvs(&mrs);
        let cycle = fvs.as_ref().err().map(|c| format!("cycle of {} vertices", c.len()));
        sheet.fact("fvs", fvs.is_ok(), cycle.as_deref());
        sheet.report("structure", &md::audit_structure(&md));
        sheet.report("distance-preservation", &md::verify_distance_preservation(&md).map_err(Failure::violation)?);
        sheet.report("twin-exclusivity", &certify::verify_twin_exclusivity(&md));
        sheet.report("pair-resolvers", &certify::verify_pair_resolvers(&md));
    }
    if all || what == CertifyWhat::Forcedset {
        sheet.report("forcedset", &certify::verify_forced_set_lemma(&md));
    }
    if all || what == CertifyWhat::Forcedvertex {
        sheet.report("forcedvertex", &certify::verify_forced_vertex_lemma(&md));
    }
    let cover = inst.solve();
    if what == CertifyWhat::Yes || (all && cover.is_some()) {
        match &cover {
            Some(c) => {
                let cert = certify::certify_yes(&md, c).map_err(Failure::input)?;
                sheet.line(format!("cover {c:?} |S'|={}", cert.set.len()));
                let w = cert.witness.as_ref().map(|w| w.to_string());
                sheet.fact("yes-certificate", cert.is_valid(), w.as_deref());
            }
            None => sheet.fact("yes-certificate", false, Some("instance has no perfect matching")),
        }
    }
    if what == CertifyWhat::No || (all && cover.is_none()) {
        match certify::certify_no(&md, inst) {
            Ok(cert) => {
                for f in &cert.facts {
                    sheet.fact(&f.name, f.holds, f.witness.first().map(String::as_str));
                }
                for step in &cert.chain {
                    sheet.line(format!("  {step}"));
                }
                sheet.fact("no-certificate", true, None);
            }
            Err(Refutation::FactFailed(f)) => {
                sheet.fact(&f.name, false, f.witness.first().map(String::as_str));
            }
            Err(r @ Refutation::OracleYes(_)) => sheet.fact("no-certificate", false, Some(&r.to_string())),
        }
    }
    if all {
        let strat = width::synth_strategy(&md);
        let out = width::verify_strategy(&md.graph, &strat).map_err(Failure::violation)?;
        strategy_facts(&mut sheet, &md.graph, &strat, &out, width::SEARCHER_BUDGET);
    }
    sheet.finish(facts)
}

fn strategy_facts(sheet: &mut Sheet, g: &LabeledGraph, strat: &NodeSearchStrategy, out: &SearchOutcome, budget: usize) {
    sheet.line(format!(
        "maxSearchers={} monotone={} allCleared={} smooth={} moves={}",
        out.max_searchers,
        out.monotone,
        out.all_cleared,
        out.smooth,
        strat.moves.len()
    ));
    let within = out.max_searchers <= budget;
    let w = format!("{} searchers, budget {budget}", out.max_searchers);
    sheet.fact("search-budget", within, Some(&w));
    sheet.fact("search-monotone", out.monotone, Some("recontamination occurred"));
    sheet.fact("search-cleared", out.all_cleared, Some("edges remain contaminated"));
    if out.monotone && out.smooth {
        match width::strategy_to_decomposition(g, strat) {
            Ok(bags) => match validate_path_decomposition(g, &bags) {
                Ok(wd) => {
                    sheet.line(format!("pathwidth<={wd}"));
                    sheet.fact("decomposition", wd + 1 == out.max_searchers, Some("width mismatch"));
                }
                Err(e) => sheet.fact("decomposition", false, Some(&e.to_string())),
            },
            Err(e) => sheet.fact("decomposition", false, Some(&e.to_string())),
        }
    }
}

fn width_cmd(what: &WidthCommand, guards: &Guards) -> Result<(), Failure> {
    match what {
        WidthCommand::Synth { input, out } => {
            let (inst, seed) = load_instance(input, guards)?;
            let md = build(&inst)?;
            let strat = width::synth_strategy(&md);
            write(out, &strat.to_text())?;
            let mut sheet = Sheet::new("width synth", seed);
            let res = width::verify_strategy(&md.graph, &strat).map_err(Failure::violation)?;
            strategy_facts(&mut sheet, &md.graph, &strat, &res, width::SEARCHER_BUDGET);
            sheet.finish(None)
        }
        WidthCommand::Verify {
            graph,
            labels,
            strategy,
            budget,
        } => {
            let g = load_graph(graph, labels.as_ref())?;
            let strat = NodeSearchStrategy::parse(&read(strategy)?).map_err(Failure::input)?;
            let res = width::verify_strategy(&g, &strat).map_err(Failure::input)?;
            let mut sheet = Sheet::new("width verify", None);
            strategy_facts(&mut sheet, &g, &strat, &res, *budget);
            sheet.finish(None)
        }
    }
}

fn export(input: &Path, out: &Path, guards: &Guards) -> Result<(), Failure> {
    let (inst, seed) = load_instance(input, guards)?;
    let mrs = mrs::build_mrs(&inst).map_err(|e| Failure::violation(format!("construction failed: {e}")))?;
    let md = build(&inst)?;
    write(&out.join("instance.3dm"), &inst.to_text())?;
    write(&out.join("mrs.graph"), &io::write_graph(&mrs.graph))?;
    write(&out.join("mrs.labels"), &io::write_labels(&mrs.graph))?;
    write(&out.join("mrs.sidecar"), &sidecar::write_mrs_sidecar(&mrs))?;
    write(&out.join("md.graph"), &io::write_graph(&md.graph))?;
    write(&out.join("md.labels"), &io::write_labels(&md.graph))?;
    write(&out.join("md.sidecar"), &sidecar::write_md_sidecar(&md))?;
    let strat = width::synth_strategy(&md);
    write(&out.join("md.strategy"), &strat.to_text())?;
    let mut sheet = Sheet::new("export", seed);
    match width::strategy_to_decomposition(&md.graph, &strat) {
        Ok(bags) => {
            let mut text = String::new();
            for bag in &bags {
                let ids: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(text, "bag {}", ids.join(" "));
            }
            write(&out.join("md.bags"), &text)?;
        }
        Err(e) => sheet.fact("decomposition", false, Some(&e.to_string())),
    }
    sheet.line(format!("wrote {}", out.display()));
    sheet.finish(None)
}
