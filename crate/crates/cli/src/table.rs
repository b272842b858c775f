//! The built-in regression over the rank-2 classification table.

use diagroot::rank2::{Param, Params};
use diagroot::{
    figure1_classify, figure1_rows, generate, weyl_equivalent, Figure1Row, OrderedBasis, ValueGroup,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub row: u8,
    pub instances: usize,
    pub finite: usize,
    pub recognised: usize,
    pub equivalent_pairs: usize,
    pub pairs: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn instances(row: &Figure1Row) -> Vec<(String, Vec<(String, diagroot::BraidingMatrix)>)> {
    let group = ValueGroup::new(row.generic.len(), row.torsion()).expect("positive torsion");
    let zetas: Vec<Option<diagroot::GroupValue>> = if row.zeta_orders.is_empty() {
        vec![None]
    } else {
        row.zeta_orders
            .iter()
            .flat_map(|&n| group.primitive_roots(n))
            .map(Some)
            .collect()
    };
    let has = |p: Param| row.generic.iter().any(|g| g.param == p);
    zetas
        .into_iter()
        .map(|zeta| {
            let tag = zeta
                .as_ref()
                .map_or_else(|| "generic".to_string(), |z| format!("zeta={z}"));
            let params = Params {
                zeta,
                q: has(Param::Q).then(|| group.generic(0).expect("free rank")),
                r: has(Param::R).then(|| group.generic(1).expect("free rank")),
            };
            let mut members = Vec::new();
            let alternatives = row
                .alternative_params(group, &params)
                .expect("row constants fit the group");
            for (a, p) in alternatives.iter().enumerate() {
                for v in 0..row.variants.len() {
                    let m = row
                        .instantiate(v, group, p)
                        .expect("row constants fit the group");
                    members.push((format!("{tag} alt{a} v{}", v + 1), m));
                }
            }
            (tag, members)
        })
        .collect()
}

fn check_row(row: &Figure1Row, cap: usize) -> RowCheck {
    let mut check = RowCheck {
        row: row.id,
        instances: 0,
        finite: 0,
        recognised: 0,
        equivalent_pairs: 0,
        pairs: 0,
        failures: Vec::new(),
        pass: false,
    };
    for (_, members) in instances(row) {
        for (label, m) in &members {
            check.instances += 1;
            match generate(m, &OrderedBasis::standard(2), cap) {
                Ok(o) if o.is_finite() => check.finite += 1,
                Ok(o) => check.failures.push(format!("{label}: {}", o.label())),
                Err(e) => check.failures.push(format!("{label}: {e}")),
            }
            match figure1_classify(m) {
                Ok(Some(hit)) if hit.row == row.id => check.recognised += 1,
                Ok(hit) => check
                    .failures
                    .push(format!("{label}: matched {:?}", hit.map(|h| h.row))),
                Err(e) => check.failures.push(format!("{label}: {e}")),
            }
        }
        for (i, (la, a)) in members.iter().enumerate() {
            for (lb, b) in &members[i + 1..] {
                check.pairs += 1;
                match weyl_equivalent(a, b, cap) {
                    Ok(true) => check.equivalent_pairs += 1,
                    Ok(false) => check
                        .failures
                        .push(format!("{la} and {lb} are not equivalent")),
                    Err(e) => check.failures.push(format!("{la} vs {lb}: {e}")),
                }
            }
        }
    }
    check.pass = check.failures.is_empty();
    check
}

/// Checks every row in parallel; results come back in row order.
pub fn run_table(cap: usize) -> Vec<RowCheck> {
    figure1_rows()
        .par_iter()
        .map(|row| check_row(row, cap))
        .collect()
}

pub fn table_text(checks: &[RowCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        s.push_str(&format!(
            "row {:>2} {} instances {}/{} finite, {}/{} recognised, {}/{} pairs equivalent\n",
            c.row,
            if c.pass { "ok  " } else { "FAIL" },
            c.finite,
            c.instances,
            c.recognised,
            c.instances,
            c.equivalent_pairs,
            c.pairs
        ));
        for f in &c.failures {
            s.push_str(&format!("    {f}\n"));
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    s.push_str(&format!("{passed}/{} rows pass\n", checks.len()));
    s
}
