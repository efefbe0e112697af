//! Batch sampling of Perazzo forms: Hilbert function strata, Lefschetz
//! verdicts and checks against the extremal Hilbert functions.

use std::collections::BTreeMap;

use apolar::inverse::{h_vector_with, HVector};
use apolar::lefschetz::{has_slp_with, has_wlp_with};
use apolar::perazzo::{classify, max_hvector, min_hvector, PerazzoForm};
use apolar::poly::{parse_poly, VariableSet};
use apolar::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::commands::{case_name, Ctx};
use crate::report::{Outcome, Table};

#[derive(Debug, Clone)]
struct Task {
    degree: u32,
    source: String,
    sample: usize,
    seed: u64,
    form: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub degree: u32,
    pub source: String,
    pub sample: usize,
    pub seed: u64,
    pub form: String,
    pub h_vector: Vec<usize>,
    pub stratum: &'static str,
    pub within_bounds: Option<bool>,
    pub wlp: bool,
    pub wlp_failing_degree: Option<usize>,
    pub slp: bool,
    pub slp_failing_degree: Option<usize>,
    pub case: Option<&'static str>,
}

#[derive(Debug, Default, Serialize)]
struct DegreeSummary {
    samples: usize,
    strata: BTreeMap<&'static str, usize>,
    wlp_holds: usize,
    slp_holds: usize,
    violations: usize,
    cases: BTreeMap<&'static str, usize>,
}

/// Per-sample seed, independent of scheduling.
fn sample_seed(seed: u64, degree: u32, sample: usize) -> u64 {
    let mut z = seed ^ (u64::from(degree) << 40) ^ sample as u64;
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The three families with minimal Hilbert function, with all free
/// coefficients set to 1.
fn normal_forms(d: u32) -> [String; 3] {
    let (a, b, c) = (d - 1, d - 2, d - 3);
    [
        format!("u^{a}*x0 + u^{b}*v*x1 + u^{c}*v^2*x2 + u^{d} + u^{a}*v + u^{b}*v^2"),
        format!("u^{a}*x0 + u^{b}*v*x1 + v^{a}*x2 + u^{d} + u^{a}*v + v^{d}"),
        format!("u^{a}*x0 + (u + v)^{a}*x1 + v^{a}*x2 + u^{d} + (u + v)^{d} + v^{d}"),
    ]
}

fn stratum(h: &HVector, d: u32) -> Result<&'static str> {
    if d < 4 {
        return Ok("n/a");
    }
    let (lo, hi) = (min_hvector(d)?, max_hvector(d)?);
    Ok(match (h == &lo, h == &hi) {
        (true, true) => "unique",
        (true, false) => "min",
        (false, true) => "max",
        _ => "intermediate",
    })
}

fn run_task(task: &Task, ctx: &Ctx, with_g: bool) -> Result<Row> {
    let pf = match &task.form {
        Some(text) => PerazzoForm::from_poly(&parse_poly(text, &VariableSet::perazzo())?)?,
        None => PerazzoForm::random(task.degree, ctx.bound, task.seed, with_g)?,
    };
    let f = pf.to_poly();
    let d = task.degree;
    let h = h_vector_with(&f, &ctx.limits)?;
    let within = if d >= 4 {
        Some(min_hvector(d)?.le_termwise(&h) && h.le_termwise(&max_hvector(d)?))
    } else {
        None
    };
    let wlp = has_wlp_with(&f, task.seed, &ctx.limits)?;
    let slp = has_slp_with(&f, &ctx.limits)?;
    let case = if d >= 5 {
        Some(case_name(classify(&pf)?.case))
    } else {
        None
    };
    Ok(Row {
        degree: d,
        source: task.source.clone(),
        sample: task.sample,
        seed: task.seed,
        form: f.to_string(),
        stratum: stratum(&h, d)?,
        h_vector: h.entries().to_vec(),
        within_bounds: within,
        wlp: wlp.holds,
        wlp_failing_degree: wlp.failing_degree,
        slp: slp.holds,
        slp_failing_degree: slp.failing_degree,
        case,
    })
}

/// Runs the survey. Returns the report and whether any sample broke the
/// extremal bounds.
pub fn survey(
    (lo, hi): (u32, u32),
    samples: usize,
    with_g: bool,
    with_normal_forms: bool,
    ctx: &Ctx,
) -> Result<(Outcome, bool)> {
    if lo < 3 {
        return Err(Error::OutOfRange {
            what: "degree",
            value: lo.into(),
            range: "3..".into(),
        });
    }
    if hi > ctx.limits.max_degree {
        return Err(Error::Guard(format!(
            "degree {hi} exceeds the limit {}",
            ctx.limits.max_degree
        )));
    }
    let mut tasks = Vec::new();
    for d in lo..=hi {
        for s in 0..samples {
            tasks.push(Task {
                degree: d,
                source: "random".into(),
                sample: s,
                seed: sample_seed(ctx.seed, d, s),
                form: None,
            });
        }
        if with_normal_forms && d >= 5 {
            for (i, text) in normal_forms(d).into_iter().enumerate() {
                tasks.push(Task {
                    degree: d,
                    source: format!("normal-{}", ["i", "ii", "iii"][i]),
                    sample: i,
                    seed: ctx.seed,
                    form: Some(text),
                });
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Invariant(format!("worker pool: {e}")))?;
    let results: Vec<Result<Row>> =
        pool.install(|| tasks.par_iter().map(|t| run_task(t, ctx, with_g)).collect());
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    rows.sort_by(|a, b| (a.degree, &a.source, a.sample).cmp(&(b.degree, &b.source, b.sample)));

    let mut summary: BTreeMap<u32, DegreeSummary> = BTreeMap::new();
    for row in &rows {
        let s = summary.entry(row.degree).or_default();
        s.samples += 1;
        *s.strata.entry(row.stratum).or_default() += 1;
        s.wlp_holds += usize::from(row.wlp);
        s.slp_holds += usize::from(row.slp);
        s.violations += usize::from(row.within_bounds == Some(false));
        if let Some(c) = row.case {
            *s.cases.entry(c).or_default() += 1;
        }
    }
    let violations: usize = summary.values().map(|s| s.violations).sum();

    let mut text = Vec::new();
    for (d, s) in &summary {
        let strata: Vec<String> = s.strata.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let mut line = format!(
            "d={d}: {} forms; {}; WLP holds {}; SLP holds {}; bound violations {}",
            s.samples,
            strata.join(", "),
            s.wlp_holds,
            s.slp_holds,
            s.violations
        );
        if !s.cases.is_empty() {
            let cases: Vec<String> = s.cases.iter().map(|(k, v)| format!("{k} {v}")).collect();
            line.push_str(&format!("; cases: {}", cases.join(", ")));
        }
        text.push(line);
    }
    text.push(format!(
        "total: {} forms, {violations} bound violations",
        rows.len()
    ));

    let header = [
        "degree",
        "source",
        "sample",
        "seed",
        "h_vector",
        "stratum",
        "within_bounds",
        "wlp",
        "wlp_failing_degree",
        "slp",
        "slp_failing_degree",
        "case",
        "form",
    ];
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let table_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.source.clone(),
                r.sample.to_string(),
                r.seed.to_string(),
                HVector::new(r.h_vector.clone()).to_string(),
                r.stratum.to_string(),
                r.within_bounds.map(|b| b.to_string()).unwrap_or_default(),
                r.wlp.to_string(),
                opt(r.wlp_failing_degree),
                r.slp.to_string(),
                opt(r.slp_failing_degree),
                r.case.unwrap_or("").to_string(),
                r.form.clone(),
            ]
        })
        .collect();
    let result = json!({
        "degrees": [lo, hi],
        "samples_per_degree": samples,
        "with_g": with_g,
        "normal_forms": with_normal_forms,
        "summary": summary,
        "violations": violations,
        "rows": rows,
    });
    Ok((
        Outcome {
            result,
            text,
            table: Some(Table {
                header: header.iter().map(|s| s.to_string()).collect(),
                rows: table_rows,
            }),
        },
        violations > 0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_spread() {
        let a = sample_seed(0, 5, 0);
        assert_ne!(a, sample_seed(0, 5, 1));
        assert_ne!(a, sample_seed(0, 6, 0));
        assert_ne!(a, sample_seed(1, 5, 0));
        assert_eq!(a, sample_seed(0, 5, 0));
    }

    #[test]
    fn normal_forms_parse() {
        for d in 5..9 {
            for text in normal_forms(d) {
                let f = parse_poly(&text, &VariableSet::perazzo()).unwrap();
                assert!(PerazzoForm::from_poly(&f).is_ok());
            }
        }
    }
}
