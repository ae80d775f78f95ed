//! Rendering of command results as text tables or JSON.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use smca::core_constraints::ConstraintView;
use smca::instances::Instance;
use smca::lab::{
    check_overbid_dominance, random_bid_profile, sweep_nondecreasing, BidGrid, Opponents, OverbidOutcome,
    OverbidReport, ViolationReport,
};
use smca::rational::{display_decimal, format_rational};
use smca::{
    build_conflict_graph, classify, detect_secc, enumerate_core_constraints, maximal_independent_sets, minimum_revenue,
    reported_welfare, winner_determination, BidderSet, CoreConstraint, PaymentRule, Rational, Result, ValuationProfile,
};

fn names(inst: &Instance, set: BidderSet) -> Vec<String> {
    set.iter().map(|i| inst.bidder_names[i].clone()).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn constraint_text(c: &CoreConstraint) -> String {
    let lhs: Vec<String> = c.payer_set.iter().map(|i| format!("p{}", i + 1)).collect();
    let mut line = format!("{} >= {}", lhs.join(" + "), display_decimal(&c.bound));
    if c.vcg_constraint {
        line.push_str("  (vcg)");
    }
    line
}

fn print_table(rows: &[Vec<String>]) {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<width$}", width = widths[c]))
            .collect();
        println!("{}", cells.join("  ").trim_end());
    }
}

pub fn solve(inst: &Instance, as_json: bool) -> Result<()> {
    let alloc = winner_determination(&inst.profile, &inst.bids, None)?;
    let welfare = reported_welfare(&inst.bids, &alloc)?;
    let system = enumerate_core_constraints(&inst.profile, &inst.bids, &alloc)?;
    let min_revenue = minimum_revenue(&system)?;
    let secc = detect_secc(&system)?;
    let mut payments = Vec::new();
    for rule in PaymentRule::ALL {
        payments.push((rule, rule.compute(&inst.profile, &inst.bids, &alloc)?));
    }
    if as_json {
        let mut by_rule = serde_json::Map::new();
        for (rule, p) in &payments {
            by_rule.insert(rule.name().to_string(), json!(strings(p.as_slice())));
        }
        let doc = json!({
            "instance": inst.name,
            "bidders": inst.bidder_names,
            "bids": strings(inst.bids.as_slice()),
            "winners": names(inst, alloc.winners()),
            "winner_indices": alloc.winners().iter().map(|i| i + 1).collect::<Vec<_>>(),
            "welfare": format_rational(&welfare),
            "minimum_revenue": format_rational(&min_revenue),
            "core_constraints": system.constraints.iter().map(ConstraintView::from).collect::<Vec<_>>(),
            "secc": secc.as_ref().map(ConstraintView::from),
            "payments": by_rule,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        return Ok(());
    }
    println!(
        "instance: {} ({} bidders, {} items)",
        inst.name,
        inst.profile.bidder_count(),
        inst.items.len()
    );
    println!("allocation: {{{}}}", names(inst, alloc.winners()).join(", "));
    println!("welfare: {}", display_decimal(&welfare));
    println!("minimum core revenue: {}", display_decimal(&min_revenue));
    if system.constraints.is_empty() {
        println!("core constraints: none");
    } else {
        println!("core constraints:");
        for c in &system.constraints {
            println!("  {}", constraint_text(c));
        }
    }
    match &secc {
        Some(c) => println!("SECC: {}", constraint_text(c)),
        None if system.constraints.is_empty() => println!("SECC: vacuous"),
        None => println!("SECC: none"),
    }
    println!();
    let mut header = vec!["rule".to_string()];
    header.extend(inst.bidder_names.iter().cloned());
    header.push("total".to_string());
    let mut bids_row = vec!["bid".to_string()];
    bids_row.extend(inst.bids.as_slice().iter().map(display_decimal));
    bids_row.push(display_decimal(&inst.bids.sum_over(inst.profile.all_bidders())));
    let mut rows = vec![header, bids_row];
    for (rule, p) in &payments {
        let mut row = vec![rule.name().to_string()];
        row.extend(p.as_slice().iter().map(display_decimal));
        row.push(display_decimal(&p.total()));
        rows.push(row);
    }
    print_table(&rows);
    Ok(())
}

pub fn graph(inst: &Instance, as_json: bool) -> Result<()> {
    let g = build_conflict_graph(&inst.profile);
    let mis = maximal_independent_sets(&g)?;
    let class = classify(&g)?;
    let one_based = |s: &BidderSet| s.iter().map(|i| i + 1).collect::<Vec<_>>();
    if as_json {
        let doc = json!({
            "instance": inst.name,
            "bidders": inst.bidder_names,
            "adjacency": (0..g.node_count()).map(|i| one_based(&g.neighbors(i))).collect::<Vec<_>>(),
            "maximal_independent_sets": mis.iter().map(one_based).collect::<Vec<_>>(),
            "complete_multipartite": class.complete_multipartite,
            "partition": class.partition.as_ref().map(|p| p.iter().map(one_based).collect::<Vec<_>>()),
            "max_mis_size": class.max_mis_size,
            "secc_guaranteed": class.secc_guaranteed,
            "vn_nondecreasing_guaranteed": class.vn_nondecreasing_guaranteed,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        return Ok(());
    }
    println!("conflict graph: {} nodes, {} edges", g.node_count(), g.edge_count());
    for i in 0..g.node_count() {
        println!("  {} {}: {}", i + 1, inst.bidder_names[i], g.neighbors(i));
    }
    let sets: Vec<String> = mis.iter().map(|s| s.to_string()).collect();
    println!("maximal independent sets: {}", sets.join(" "));
    println!("max MIS size: {}", class.max_mis_size);
    match &class.partition {
        Some(parts) => {
            let parts: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
            println!("complete multipartite: yes, parts {}", parts.join(" "));
        }
        None => println!("complete multipartite: no"),
    }
    if class.secc_guaranteed {
        println!("SECC guaranteed for every bid profile");
    }
    if class.vn_nondecreasing_guaranteed {
        println!("VN payments guaranteed non-decreasing");
    }
    if !class.secc_guaranteed && !class.vn_nondecreasing_guaranteed {
        println!("no sufficient condition applies");
    }
    Ok(())
}

pub struct CheckSettings {
    pub rule: PaymentRule,
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
    pub budget: usize,
    pub seed: Option<u64>,
    pub samples: usize,
}

fn violation_json(inst: &Instance, v: &ViolationReport) -> Value {
    json!({
        "kind": "nondecreasing",
        "rule": v.rule.name(),
        "bidder": v.bidder + 1,
        "bidder_name": inst.bidder_names[v.bidder],
        "allocation": v.allocation.winners().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "lower_bids": strings(v.lower_bids.as_slice()),
        "higher_bids": strings(v.higher_bids.as_slice()),
        "payment_at_lower": format_rational(&v.payment_at_lower),
        "payment_at_higher": format_rational(&v.payment_at_higher),
    })
}

fn overbid_json(inst: &Instance, v: &OverbidReport) -> Value {
    json!({
        "kind": "overbid",
        "rule": v.rule.name(),
        "bidder": v.bidder + 1,
        "bidder_name": inst.bidder_names[v.bidder],
        "value": format_rational(&v.value),
        "truthful_bids": strings(v.truthful_bids.as_slice()),
        "overbid": format_rational(&v.overbid),
        "truthful_allocation": v.truthful_allocation.winners().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "overbid_allocation": v.overbid_allocation.winners().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "utility_truthful": format_rational(&v.utility_truthful),
        "utility_overbid": format_rational(&v.utility_overbid),
        "path": match v.path {
            smca::lab::OverbidPath::WinningTruthful => "winning",
            smca::lab::OverbidPath::LosingTruthful => "losing",
        },
    })
}

pub fn check_nondecreasing(inst: &Instance, s: &CheckSettings, as_json: bool) -> Result<bool> {
    let grid = BidGrid::uniform(inst.profile.bidder_count(), s.lo, s.hi, s.step)?;
    let report = sweep_nondecreasing(&inst.profile, s.rule, &grid, s.budget)?;
    let violation = report.violation.as_ref().map(|v| violation_json(inst, v));
    if as_json {
        let doc = json!({
            "mode": "nondecreasing",
            "rule": s.rule.name(),
            "grid": {"lo": format_rational(&s.lo), "hi": format_rational(&s.hi), "step": format_rational(&s.step)},
            "profiles": report.profiles,
            "evaluations": report.evaluations,
            "violation": violation,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!(
            "{} on {}: grid [{}, {}] step {}, {} profiles, {} payment evaluations",
            s.rule,
            inst.name,
            display_decimal(&s.lo),
            display_decimal(&s.hi),
            display_decimal(&s.step),
            report.profiles,
            report.evaluations
        );
        match &violation {
            None => println!("no violation"),
            Some(v) => println!("violation:\n{}", serde_json::to_string_pretty(v).expect("json")),
        }
    }
    Ok(violation.is_none())
}

pub fn check_overbid(inst: &Instance, s: &CheckSettings, as_json: bool) -> Result<bool> {
    let n = inst.profile.bidder_count();
    let grid = BidGrid::uniform(n, s.lo, s.hi, s.step)?;
    let mut valuations = vec![match &inst.values {
        Some(v) => v.clone(),
        None => ValuationProfile::new(inst.bids.as_slice().to_vec())?,
    }];
    if let Some(seed) = s.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..s.samples {
            let draw = random_bid_profile(&mut rng, n, s.lo, s.hi, 8)?;
            valuations.push(ValuationProfile::new(draw.as_slice().to_vec())?);
        }
    }
    let mut total = OverbidOutcome::default();
    let mut spent = 0usize;
    for v in &valuations {
        let out = check_overbid_dominance(
            &inst.profile,
            s.rule,
            v,
            &grid,
            Opponents::Truthful,
            s.budget.saturating_sub(spent),
        )?;
        spent += out.overbids_checked + n;
        total.overbids_checked += out.overbids_checked;
        total.winning_truthful += out.winning_truthful;
        total.losing_truthful += out.losing_truthful;
        if out.violation.is_some() {
            total.violation = out.violation;
            break;
        }
    }
    let violation = total.violation.as_ref().map(|v| overbid_json(inst, v));
    if as_json {
        let doc = json!({
            "mode": "overbid",
            "rule": s.rule.name(),
            "valuation_profiles": valuations.len(),
            "overbids_checked": total.overbids_checked,
            "winning_truthful": total.winning_truthful,
            "losing_truthful": total.losing_truthful,
            "violation": violation,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!(
            "{} on {}: {} valuation profiles, {} overbids checked ({} from a winning bid, {} from a losing bid)",
            s.rule,
            inst.name,
            valuations.len(),
            total.overbids_checked,
            total.winning_truthful,
            total.losing_truthful
        );
        match &violation {
            None => println!("no profitable overbid"),
            Some(v) => println!("violation:\n{}", serde_json::to_string_pretty(v).expect("json")),
        }
    }
    Ok(violation.is_none())
}
