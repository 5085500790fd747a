//! Plain-text renderings of reports.

use std::fmt::Write;

use concordia::amphicheiral::LongCertificate;
use concordia::concordance::{Check, CrossingDifferenceCertificate, MutationReport};
use concordia::covers::CoverReport;
use concordia::gilmer::{GenusGapReport, GrowthReport};
use concordia::signatures::SignatureSample;
use concordia::witt::Step;
use concordia::RatFunc;

use crate::selftest::SelftestReport;

fn diag(entries: &[RatFunc]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| format!("({e})")).collect();
    format!("diag[{}]", parts.join(", "))
}

fn checks(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(
            out,
            "  [{}] {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name
        );
    }
}

fn chain(out: &mut String, steps: &[Step]) {
    if steps.is_empty() {
        return;
    }
    let _ = writeln!(out, "reduction:");
    for s in steps {
        let _ = writeln!(out, "  {s}");
    }
}

pub fn profile(samples: &[SignatureSample], singular: &[(i64, u64)]) -> String {
    let mut out = String::new();
    for s in samples {
        let _ = writeln!(out, "{}/{}\t{}", s.a, s.b, s.value);
    }
    for (a, b) in singular {
        let _ = writeln!(out, "{a}/{b}\tsingular");
    }
    out
}

pub fn cover(r: &CoverReport) -> String {
    let mut out = String::new();
    let snf: Vec<String> = r.snf.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "q = {}", r.q);
    let _ = writeln!(out, "snf = diag({})", snf.join(", "));
    match r.order.finite() {
        Some(n) => {
            let _ = writeln!(out, "order = {n}");
        }
        None => {
            let _ = writeln!(out, "order = INFINITE");
        }
    }
    if let Some(p) = r.p {
        let ev: Vec<String> = r.eigenvalues.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "deck eigenvalues mod {p} = {{{}}}", ev.join(", "));
    }
    if let Some(m) = r.metabolizer_count {
        let _ = writeln!(out, "metabolizers = {m}");
    }
    out
}

pub fn crossing(c: &CrossingDifferenceCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {:?}", c.verdict);
    let _ = writeln!(out, "Delta+ = {}", c.delta_plus);
    let _ = writeln!(out, "Delta- = {}", c.delta_minus);
    let _ = writeln!(out, "c(t) = {}", c.c_of_t);
    let _ = writeln!(
        out,
        "W(K+) - W(K-) = {}",
        diag(&c.claimed_class.matrix().diag())
    );
    checks(&mut out, &c.checks);
    let _ = writeln!(out, "signature samples: {}", c.samples);
    chain(&mut out, &c.reduction_log);
    out
}

pub fn mutation(r: &MutationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {:?}", r.verdict);
    let _ = writeln!(out, "Delta(V)  = {}", r.delta);
    let _ = writeln!(out, "Delta(V*) = {}", r.delta_star);
    let _ = writeln!(out, "alpha(t) = {}", r.alpha);
    let _ = writeln!(out, "E ~ {}", diag(&r.e_diag));
    checks(&mut out, &r.checks);
    let _ = writeln!(out, "signature samples: {}", r.samples);
    chain(&mut out, &r.reduction_log);
    out
}

pub fn long(c: &LongCertificate) -> String {
    let mut out = String::new();
    let hk = &c.hk;
    let _ = writeln!(out, "verdict: {:?}", c.verdict);
    let _ = writeln!(out, "c(t) = {}", hk.c_of_t);
    let _ = writeln!(out, "d(t) = {}", hk.d_of_t);
    if let Some(f) = &hk.f {
        let _ = writeln!(out, "F(t) = {f}");
    }
    let _ = writeln!(out, "Delta(V^-1) = {}", hk.delta_plus_minus);
    let _ = writeln!(out, "Delta(V^0)  = {}", hk.delta_minus_plus);
    let _ = writeln!(out, "Delta(K--)  = {}", c.delta_minus_minus);
    let _ = writeln!(out, "identities:");
    checks(&mut out, &hk.identities);
    let _ = writeln!(out, "form = {}", diag(&c.form));
    let _ = writeln!(
        out,
        "metabolizer = {}",
        diag(&c.metabolizer).replacen("diag", "span", 1)
    );
    let _ = writeln!(out, "checks:");
    checks(&mut out, &c.checks);
    let _ = writeln!(out, "signature samples: {}", c.samples);
    chain(&mut out, &c.reduction_log);
    out
}

pub fn genus_gap(r: &GenusGapReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, s7(J) = {}", r.n, r.s7);
    let _ = writeln!(out, "hypothesis: {}", r.hypothesis);
    for c in &r.certificates {
        let _ = writeln!(out, "m = {}:", c.m);
        for rec in &c.records {
            let _ = writeln!(
                out,
                "  k = {}: dim D >= {}, min |cg| = {}, bound 6k = {}, {}",
                rec.k,
                rec.dim_d_min,
                rec.cg_min,
                rec.bound,
                if rec.contradiction {
                    "contradiction"
                } else {
                    "no contradiction"
                }
            );
        }
        let _ = writeln!(
            out,
            "  g4 >= {}; upper bound {} ({})",
            c.lower_bound, c.asserted_upper_bound.value, c.asserted_upper_bound.source
        );
    }
    out
}

pub fn growth(r: &GrowthReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "epsilon = {}, n = {}", r.epsilon, r.n);
    for line in &r.chain {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "certifies: {}", r.certifies);
    out
}

pub fn selftest(r: &SelftestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed {}", r.seed);
    for p in &r.properties {
        let _ = writeln!(
            out,
            "{:<28} {:>5} passed {:>3} failed {:>3} skipped",
            p.name, p.passed, p.failed, p.skipped
        );
        if let Some(e) = &p.first_failure {
            let _ = writeln!(out, "  first failure: {e}");
        }
    }
    out
}
