//! Report emission: a stable line-oriented text format and a
//! byte-deterministic JSON format.

use crate::fixtures::{FixtureBundle, NamedMap};
use crate::lambda::CheckMode;
use crate::verify::VerifyReport;
use serde_json::Value;

/// Stable text rendering: one `CHECK <name> ... PASS/FAIL` line per report,
/// sub-verdicts and witnesses indented beneath it.
pub fn emit_text(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    let mut all_pass = true;
    for report in reports {
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        all_pass &= report.passed();
        let params: Vec<String> =
            report.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        out.push_str(&format!(
            "CHECK {} [{}] ... {} ({} subchecks, {} ms)\n",
            report.check,
            params.join(", "),
            verdict,
            report.subchecks.len(),
            report.elapsed.as_millis(),
        ));
        for sub in &report.subchecks {
            let mode = match sub.mode {
                CheckMode::Exact => "exact",
                CheckMode::ProbeVerified => "probe-verified",
                CheckMode::Skipped => "skipped",
            };
            let verdict = if sub.verdict.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("  [{}] {} ({})\n", verdict, sub.label, mode));
            for w in &sub.witnesses {
                out.push_str(&format!(
                    "      witness {}: {} -> {} vs {}\n",
                    w.location, w.element, w.lhs, w.rhs
                ));
            }
        }
    }
    out.push_str(&format!(
        "SUMMARY {} of {} checks passed: {}\n",
        reports.iter().filter(|r| r.passed()).count(),
        reports.len(),
        if all_pass { "PASS" } else { "FAIL" }
    ));
    out
}

/// JSON rendering mirroring the report fields (except elapsed time, which
/// would break byte-determinism); identical inputs produce identical bytes.
pub fn emit_json(reports: &[VerifyReport]) -> String {
    let all_pass = reports.iter().all(VerifyReport::passed);
    let value = serde_json::json!({
        "schema": 1,
        "reports": reports,
        "verdict": if all_pass { "pass" } else { "fail" },
    });
    serde_json::to_string_pretty(&value).expect("reports serialize") + "\n"
}

/// JSON description of a fixture bundle: the graded groups, the scale, the
/// cone, and the distinguished map names.
pub fn bundle_to_json(bundle: &FixtureBundle) -> Value {
    let tk = &bundle.totalk;
    let mut levels = serde_json::Map::new();
    for j in [0u8, 1] {
        for n in std::iter::once(0u64).chain(tk.coeff_levels()) {
            let key = format!("K_{}(;Z_{})", j, n);
            let rendered = match tk.group(j, n) {
                None => Value::String("absent".to_string()),
                Some(g) => Value::String(render_group(g)),
            };
            levels.insert(key, rendered);
        }
    }
    let maps: Vec<Value> = bundle
        .named_maps
        .iter()
        .map(|(name, map)| {
            let kind = match map {
                NamedMap::Graded(_) => "graded",
                NamedMap::Level(_) => "level",
            };
            serde_json::json!({ "name": name, "kind": kind })
        })
        .collect();
    serde_json::json!({
        "name": bundle.name.as_str(),
        "bound": tk.bound(),
        "levels": levels,
        "scale": bundle.scale.as_ref().map(|s| s.to_string()),
        "cone": bundle.cone.as_str(),
        "maps": maps,
        "ideal": bundle.ideal.as_ref().map(|i| i.name.as_str()),
    })
}

pub fn bundle_to_text(bundle: &FixtureBundle) -> String {
    let value = bundle_to_json(bundle);
    let mut out = String::new();
    out.push_str(&format!("fixture {}\n", bundle.name.as_str()));
    out.push_str(&format!("  bound: {}\n", bundle.totalk.bound()));
    if let Some(scale) = &bundle.scale {
        out.push_str(&format!("  scale: {}\n", scale));
    }
    out.push_str(&format!("  cone: {}\n", bundle.cone.as_str()));
    if let Some(Value::Object(levels)) = value.get("levels") {
        for (k, v) in levels {
            out.push_str(&format!("  {} = {}\n", k, v.as_str().unwrap_or("?")));
        }
    }
    for name in bundle.named_maps.keys() {
        out.push_str(&format!("  map {}\n", name));
    }
    out
}

/// Human-readable description of a group expression.
pub fn render_group(g: &crate::groupexpr::GroupExpr) -> String {
    use crate::groupexpr::{GroupExpr, TailMaps};
    match g {
        GroupExpr::Fg(fg) => fg.to_string(),
        GroupExpr::Dyadic => "Z[1/2]".to_string(),
        GroupExpr::Rational => "Q".to_string(),
        GroupExpr::DirectSum(parts) => {
            let shown: Vec<String> = parts
                .iter()
                .filter(|p| !p.is_trivial())
                .map(render_group)
                .collect();
            if shown.is_empty() {
                "0".to_string()
            } else {
                shown.join("+")
            }
        }
        GroupExpr::TailProduct(t) => {
            if g.is_trivial() {
                return "0".to_string();
            }
            let tail = match &t.rule.tail {
                TailMaps::Periodic(maps) => format!("periodic({})", maps.len()),
                TailMaps::LFact(_) => "odd-factorial".to_string(),
            };
            format!(
                "tail({}; {} from {}, rule {})",
                render_group(&t.base),
                render_group(&t.component),
                t.rule.start,
                tail
            )
        }
        GroupExpr::Quotient(q) => {
            format!("{}/{}", render_group(&q.ambient), render_group(&q.sub))
        }
    }
}
