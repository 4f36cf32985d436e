//! Plain-text rendering: aligned check tables and weight-multiplicity
//! grids. All output is deterministic; rows follow the already-sorted
//! order of their sources.

use divzero::algebra::AlgebraElement;
use divzero::lattice::LatticeVector;
use divzero::report::Check;

/// One line per term, in canonical (sorted) term order.
pub fn element(el: &AlgebraElement) -> String {
    format!("{el}\n")
}

/// Aligned `status | check | cases | witness` rows.
pub fn checks(checks: &[Check]) -> String {
    let name_w = checks.iter().map(|c| c.check.len()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    for c in checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("{status}  {:<name_w$}  {:>8}", c.check, c.cases));
        if let Some(w) = &c.witness {
            out.push_str(&format!("  {w}"));
        }
        out.push('\n');
    }
    out
}

/// Weight-multiplicity table. Two-dimensional degrees render as a grid
/// with the first coordinate increasing to the right and the second
/// increasing upward; other ranks render as aligned `degree dim` rows.
/// Absent degrees print as dots.
pub fn dims(rows: &[(LatticeVector, usize)]) -> String {
    if rows.is_empty() {
        return "(no stored weights)\n".into();
    }
    let n = rows[0].0.coords().len();
    if n != 2 {
        let mut out = String::new();
        for (w, d) in rows {
            out.push_str(&format!("{w}  {d}\n"));
        }
        return out;
    }
    let xs: Vec<i64> = {
        let mut v: Vec<i64> = rows.iter().map(|(w, _)| w.coords()[0]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let ys: Vec<i64> = {
        let mut v: Vec<i64> = rows.iter().map(|(w, _)| w.coords()[1]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let cell = rows
        .iter()
        .map(|(_, d)| d.to_string().len())
        .chain(xs.iter().map(|x| x.to_string().len()))
        .max()
        .unwrap()
        .max(1);
    let head = ys.iter().map(|y| y.to_string().len()).max().unwrap().max(3);
    let mut out = format!("{:>head$} |", "y\\x");
    for x in &xs {
        out.push_str(&format!(" {x:>cell$}"));
    }
    out.push('\n');
    out.push_str(&format!("{:->head$}-+{:-<w$}\n", "", "", w = (cell + 1) * xs.len()));
    for y in ys.iter().rev() {
        out.push_str(&format!("{y:>head$} |"));
        for x in &xs {
            let found = rows
                .iter()
                .find(|(w, _)| w.coords() == [*x, *y])
                .map(|(_, d)| *d);
            match found {
                Some(d) => out.push_str(&format!(" {d:>cell$}")),
                None => out.push_str(&format!(" {:>cell$}", ".")),
            }
        }
        out.push('\n');
    }
    out
}

/// Aligned `key: value` rows in the given order.
pub fn kv(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<w$}  {v}\n"));
    }
    out
}
