use std::sync::Arc;

use apolar::inverse::{ann_basis, h_vector_with, HVector, Limits};
use apolar::lefschetz::{has_slp_with, has_wlp_with, hessian};
use apolar::perazzo::{
    algebraic_relation, classify_poly, h_via_ranks, max_hvector, min_hvector, secant_membership,
    waring_rank, Case, PerazzoForm,
};
use apolar::poly::{HomogeneousPoly, Monomial, VariableSet};
use apolar::{Rational, Result};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::report::Outcome;

pub struct Ctx {
    pub limits: Limits,
    pub seed: u64,
    pub bound: u64,
    pub matrix: bool,
    pub jobs: Option<usize>,
}

fn outcome(result: Value, text: Vec<String>) -> Outcome {
    Outcome {
        result,
        text,
        table: None,
    }
}

pub fn rat(r: &Rational) -> String {
    r.to_string()
}

pub fn hv(h: &HVector) -> Value {
    json!(h.entries())
}

pub fn case_name(case: Case) -> &'static str {
    match case {
        Case::CaseI => "I",
        Case::CaseII => "II",
        Case::CaseIII => "III",
        Case::NonMinimal => "non-minimal",
        Case::NotPerazzo => "not-perazzo",
    }
}

fn monomial(vars: &Arc<VariableSet>, m: &Monomial) -> String {
    HomogeneousPoly::monomial(vars.clone(), m.clone(), Rational::one()).to_string()
}

fn linear_form(vars: &Arc<VariableSet>, coeffs: &[Rational]) -> String {
    let n = vars.len();
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (Monomial::var(n, i), c.clone()));
    HomogeneousPoly::from_terms(vars.clone(), 1, terms)
        .map(|l| l.to_string())
        .unwrap_or_default()
}

fn vector(v: &[usize]) -> String {
    HVector::new(v.to_vec()).to_string()
}

pub fn hvector(f: &HomogeneousPoly, ctx: &Ctx) -> Result<Outcome> {
    let h = h_vector_with(f, &ctx.limits)?;
    let mut text = vec![format!("h-vector: {h}")];
    let mut result = json!({
        "degree": f.degree(),
        "h_vector": hv(&h),
        "symmetric": h.is_symmetric(),
        "osequence": h.is_osequence(),
    });
    if let Ok(pf) = PerazzoForm::from_poly(f) {
        let ranks = h_via_ranks(&pf)?;
        let mut p = json!({
            "lower": ranks.lower,
            "upper": ranks.upper,
            "exact": ranks.exact.as_ref().map(hv),
        });
        text.push(format!(
            "rank bounds: {} <= h <= {}",
            vector(&ranks.lower),
            vector(&ranks.upper)
        ));
        if pf.degree() >= 4 {
            let (lo, hi) = (min_hvector(pf.degree())?, max_hvector(pf.degree())?);
            let within = lo.le_termwise(&h) && h.le_termwise(&hi);
            p["min"] = hv(&lo);
            p["max"] = hv(&hi);
            p["within_bounds"] = json!(within);
            text.push(format!(
                "extremal: min {lo}, max {hi}, within bounds: {within}"
            ));
        }
        result["perazzo"] = p;
    }
    Ok(outcome(result, text))
}

pub fn ann(f: &HomogeneousPoly, t: u32, ctx: &Ctx) -> Result<Outcome> {
    ctx.limits.check(f)?;
    let ops = ann_basis(f, t)?;
    let names: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
    let mut text = vec![format!("Ann(f) in degree {t}: dimension {}", ops.len())];
    text.extend(names.iter().map(|o| format!("  {o}")));
    Ok(outcome(
        json!({
            "degree": t,
            "dimension": ops.len(),
            "operators": names,
            "dual_vars": f.vars().dual().names(),
        }),
        text,
    ))
}

pub fn wlp(f: &HomogeneousPoly, ctx: &Ctx) -> Result<Outcome> {
    let v = has_wlp_with(f, ctx.seed, &ctx.limits)?;
    let dual = f.vars().dual();
    let witness = v.witness.as_ref().map(|w| linear_form(&dual, w));
    let stages: Vec<Value> = v
        .stages
        .iter()
        .map(|s| json!({"degree": s.degree, "rank": s.rank, "max": s.max}))
        .collect();
    let mut text = vec![match v.failing_degree {
        None => "WLP holds".to_string(),
        Some(j) => format!("WLP fails in degree {j}"),
    }];
    text.push(format!(
        "certificate: {}",
        serde_json::to_value(v.certificate)
            .unwrap_or_default()
            .as_str()
            .unwrap_or("")
    ));
    if let Some(w) = &witness {
        text.push(format!("Lefschetz element: {w}"));
    }
    for s in &v.stages {
        text.push(format!(
            "  x L: [A]_{} -> [A]_{}  rank {} of {}",
            s.degree,
            s.degree + 1,
            s.rank,
            s.max
        ));
    }
    Ok(outcome(
        json!({
            "holds": v.holds,
            "failing_degree": v.failing_degree,
            "certificate": v.certificate,
            "witness": witness,
            "stages": stages,
        }),
        text,
    ))
}

pub fn slp(f: &HomogeneousPoly, ctx: &Ctx) -> Result<Outcome> {
    let v = has_slp_with(f, &ctx.limits)?;
    let hessians: Vec<Value> = v
        .hessians
        .iter()
        .map(|(order, vanishes)| json!({"order": order, "vanishes": vanishes}))
        .collect();
    let vanishing: Vec<usize> = v.hessians.iter().filter(|h| h.1).map(|h| h.0).collect();
    let mut text = vec![match v.failing_degree {
        None => "SLP holds".to_string(),
        Some(t) => format!("SLP fails: hessian of order {t} vanishes"),
    }];
    for (order, vanishes) in &v.hessians {
        text.push(format!(
            "  hess^{order}: {}",
            if *vanishes { "vanishes" } else { "nonzero" }
        ));
    }
    Ok(outcome(
        json!({
            "holds": v.holds,
            "failing_degree": v.failing_degree,
            "certificate": v.certificate,
            "hessians": hessians,
            "vanishing_orders": vanishing,
        }),
        text,
    ))
}

pub fn hessian_cmd(f: &HomogeneousPoly, t: u32, ctx: &Ctx) -> Result<Outcome> {
    ctx.limits.check(f)?;
    let h = hessian(f, t)?;
    let dual = f.vars().dual();
    let basis: Vec<String> = h.basis.iter().map(|m| monomial(&dual, m)).collect();
    let mut text = vec![
        format!(
            "hess^{t}: {}x{} over the basis {}",
            basis.len(),
            basis.len(),
            basis.join(", ")
        ),
        format!("vanishes identically: {}", h.vanishes),
    ];
    let mut result = json!({
        "order": t,
        "basis": basis,
        "size": h.basis.len(),
        "vanishes": h.vanishes,
    });
    if ctx.matrix {
        let rows: Vec<Vec<String>> = (0..h.matrix.rows())
            .map(|i| h.matrix.row(i).iter().map(|e| e.to_string()).collect())
            .collect();
        for row in &rows {
            text.push(format!("  [{}]", row.join(", ")));
        }
        text.push(format!("det = {}", h.det));
        result["matrix"] = json!(rows);
        result["det"] = json!(h.det.to_string());
        result["parameters"] = json!(h.matrix.vars().names());
    }
    Ok(outcome(result, text))
}

pub fn classify(f: &HomogeneousPoly, ctx: &Ctx) -> Result<Outcome> {
    ctx.limits.check(f)?;
    let c = classify_poly(f)?;
    let normalization = c.normalization.as_ref().map(|n| {
        json!({
            "l1": n.l1.to_string(),
            "l2": n.l2.to_string(),
            "lambda": n.lambda_mu.as_ref().map(|(l, _)| rat(l)),
            "mu": n.lambda_mu.as_ref().map(|(_, m)| rat(m)),
        })
    });
    let mut text = vec![format!("case: {}", case_name(c.case))];
    if let (Some(d), Some(p)) = (&c.divisor, &c.divisor_pattern) {
        text.push(format!("intersection divisor: {d}  (multiplicities {p:?})"));
    }
    text.push(format!("g compatible: {}", c.g_compatible));
    if let Some(h) = &c.h_vector {
        text.push(format!("h-vector: {h}"));
    }
    if let Some(n) = &c.normalization {
        text.push(format!("contact points: l1 = {}, l2 = {}", n.l1, n.l2));
        if let Some((l, m)) = &n.lambda_mu {
            text.push(format!("third point: {} l1 + {} l2", rat(l), rat(m)));
        }
    }
    if let Some(r) = &c.reason {
        text.push(format!("reason: {r}"));
    }
    Ok(outcome(
        json!({
            "case": case_name(c.case),
            "divisor": c.divisor.as_ref().map(|d| d.to_string()),
            "divisor_vars": apolar::perazzo::curve_parameters().names(),
            "divisor_pattern": c.divisor_pattern,
            "g_compatible": c.g_compatible,
            "h_vector": c.h_vector.as_ref().map(hv),
            "normalization": normalization,
            "reason": c.reason,
        }),
        text,
    ))
}

pub fn waring(f: &HomogeneousPoly, secant: Option<usize>, ctx: &Ctx) -> Result<Outcome> {
    ctx.limits.check(f)?;
    let w = waring_rank(f)?;
    let decomposition = w.decomposition.as_ref().map(|parts| {
        parts
            .iter()
            .map(|(l, c)| json!({"form": l.to_string(), "coefficient": rat(c)}))
            .collect::<Vec<_>>()
    });
    let mut text = vec![format!(
        "Waring rank {}, border rank {}",
        w.rank, w.border_rank
    )];
    if let Some(parts) = &w.decomposition {
        let e = f.degree();
        let sum: Vec<String> = parts
            .iter()
            .map(|(l, c)| format!("{}*({l})^{e}", rat(c)))
            .collect();
        text.push(format!("decomposition: {}", sum.join(" + ")));
    }
    let mut result = json!({
        "rank": w.rank,
        "border_rank": w.border_rank,
        "decomposition": decomposition,
        "decomposition_vars": VariableSet::binary().names(),
    });
    if let Some(r) = secant {
        let member = secant_membership(f, r)?;
        text.push(format!("in the {r}-th secant variety: {member}"));
        result["secant"] = json!({"r": r, "member": member});
    }
    Ok(outcome(result, text))
}

pub fn relation(f: &HomogeneousPoly, cap: Option<u32>, ctx: &Ctx) -> Result<Outcome> {
    ctx.limits.check(f)?;
    let pf = PerazzoForm::from_poly(f)?;
    let ps = pf.ps();
    let rel = algebraic_relation([&ps[0], &ps[1], &ps[2]], cap)?;
    let text = vec![match &rel {
        Some(r) => format!("relation of degree {}: {r} = 0", r.degree()),
        None => "no relation up to the degree cap".to_string(),
    }];
    Ok(outcome(
        json!({
            "relation": rel.as_ref().map(|r| r.to_string()),
            "degree": rel.as_ref().map(|r| r.degree()),
            "forms": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "relation_vars": VariableSet::relation().names(),
        }),
        text,
    ))
}
