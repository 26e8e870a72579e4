//! Golden validation grid: CSV of `(n, M, q, a, b, c, P_s)` rows with every
//! real formatted to 15 significant digits.
//!
//! Rows are produced from the closed-form model and checked against the
//! state-vector simulator.

use crate::analytic::{
    grid_matches, iteration_count, success_probability, trajectory, SearchParams,
};
use crate::validate::{simulate_groups, AMPLITUDE_TOLERANCE, PROBABILITY_TOLERANCE};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::io::{Read, Write};

pub const HEADER: [&str; 7] = ["n", "M", "q", "a", "b", "c", "P_s"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub n: usize,
    pub matches: u64,
    pub q: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p_success: f64,
}

/// A golden row the simulator disagrees with.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// 1-based data row (the header is row 0).
    pub row: usize,
    pub n: usize,
    pub matches: u64,
    pub q: u64,
    pub field: &'static str,
    pub golden: f64,
    pub simulated: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "row {} (n={}, M={}, q={}): {} golden {:.14e} vs simulated {:.14e}",
            self.row, self.n, self.matches, self.q, self.field, self.golden, self.simulated
        )
    }
}

/// Rows for `n in 2..=max_n`, the standard match counts, `q in 0..=2 q*`.
pub fn generate_rows(max_n: usize) -> Result<Vec<GridRow>> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for m in grid_matches(n) {
            let p = SearchParams::for_width(n, m)?;
            let q_max = 2 * iteration_count(&p)?;
            for t in trajectory(&p, q_max)? {
                rows.push(GridRow {
                    n,
                    matches: m,
                    q: t.q,
                    a: t.a,
                    b: t.b,
                    c: t.c,
                    p_success: success_probability(&p, t.q)?,
                });
            }
        }
    }
    Ok(rows)
}

fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn write_csv<W: Write>(rows: &[GridRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(HEADER)?;
    for r in rows {
        out.write_record([
            r.n.to_string(),
            r.matches.to_string(),
            r.q.to_string(),
            fmt15(r.a),
            fmt15(r.b),
            fmt15(r.c),
            fmt15(r.p_success),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<GridRow>> {
    let mut reader = csv::Reader::from_reader(r);
    let bad = |line: usize, message: String| Error::Parse {
        line,
        column: 1,
        message,
    };
    let headers = reader.headers().map_err(|e| bad(1, e.to_string()))?;
    if headers.iter().ne(HEADER) {
        return Err(bad(1, format!("expected header {}", HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let line = k + 2;
        let record = record.map_err(|e| bad(line, e.to_string()))?;
        if record.len() != HEADER.len() {
            return Err(bad(line, format!("expected {} fields", HEADER.len())));
        }
        let field = |i: usize| record[i].trim();
        let int = |i: usize| {
            field(i)
                .parse::<u64>()
                .map_err(|_| bad(line, format!("bad {} `{}`", HEADER[i], field(i))))
        };
        let real = |i: usize| {
            field(i)
                .parse::<f64>()
                .map_err(|_| bad(line, format!("bad {} `{}`", HEADER[i], field(i))))
        };
        rows.push(GridRow {
            n: int(0)? as usize,
            matches: int(1)?,
            q: int(2)?,
            a: real(3)?,
            b: real(4)?,
            c: real(5)?,
            p_success: real(6)?,
        });
    }
    Ok(rows)
}

/// Simulates every `(n, M)` group of `rows` and reports each disagreement
/// beyond tolerance (amplitudes `1e-10`, probabilities `1e-9`).
pub fn check_against_simulation(rows: &[GridRow]) -> Result<Vec<Violation>> {
    let mut groups: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    for r in rows {
        let q = groups.entry((r.n, r.matches)).or_default();
        *q = (*q).max(r.q);
    }
    let mut simulated = BTreeMap::new();
    for (&(n, m), &q_max) in &groups {
        simulated.insert((n, m), simulate_groups(n, m, q_max)?);
    }

    let mut violations = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let sim = &simulated[&(r.n, r.matches)][r.q as usize];
        let checks = [
            ("a", r.a, sim.grouped.triple.a, AMPLITUDE_TOLERANCE),
            ("b", r.b, sim.grouped.triple.b, AMPLITUDE_TOLERANCE),
            ("c", r.c, sim.grouped.triple.c, AMPLITUDE_TOLERANCE),
            ("P_s", r.p_success, sim.success_mass, PROBABILITY_TOLERANCE),
        ];
        let empty = |field: &str| match field {
            "a" => r.matches == 1u64 << r.n,
            "b" | "c" => r.matches == 0,
            _ => false,
        };
        for (field, golden, simulated, tol) in checks {
            let within = (golden - simulated).abs() <= tol;
            if !empty(field) && !within {
                violations.push(Violation {
                    row: k + 1,
                    n: r.n,
                    matches: r.matches,
                    q: r.q,
                    field,
                    golden,
                    simulated,
                });
            }
        }
    }
    Ok(violations)
}
