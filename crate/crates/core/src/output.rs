//! CSV writers for solutions and iteration histories.
//!
//! Numbers are printed with 17 significant digits so files round-trip exactly
//! and repeated runs produce byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::solver::PropagatorSolution;

fn num(out: &mut String, x: f64) {
    if x.is_nan() {
        out.push_str("nan");
    } else {
        let _ = write!(out, "{x:.16e}");
    }
}

/// `log10 p` label for a probe given as `p²`, e.g. `-2.5` or `0`.
pub fn probe_label(p2: f64) -> String {
    let log_p = 0.5 * p2.log10();
    let rounded = (log_p * 1e6).round() / 1e6;
    format!("{}", rounded + 0.0)
}

/// One row per external momentum: `log10_p2,A,B`.
pub fn solution_csv(sol: &PropagatorSolution) -> String {
    let mut out = String::from("log10_p2,A,B\n");
    for ((&p2, &a), &b) in sol.p2.iter().zip(&sol.a).zip(&sol.b) {
        num(&mut out, p2.log10());
        out.push(',');
        num(&mut out, a);
        out.push(',');
        num(&mut out, b);
        out.push('\n');
    }
    out
}

/// One row per iteration, starting with the initial state (deltas `nan`),
/// followed by A and B at every probe momentum.
pub fn history_csv(sol: &PropagatorSolution) -> String {
    let mut out = String::from("iteration,max_delta_a,max_delta_b");
    for &p2 in &sol.probes_p2 {
        let _ = write!(out, ",A(log10p={})", probe_label(p2));
    }
    for &p2 in &sol.probes_p2 {
        let _ = write!(out, ",B(log10p={})", probe_label(p2));
    }
    out.push('\n');
    for rec in &sol.history {
        let _ = write!(out, "{}", rec.iteration);
        for x in [rec.max_delta_a, rec.max_delta_b]
            .into_iter()
            .chain(rec.probe_a.iter().copied())
            .chain(rec.probe_b.iter().copied())
        {
            out.push(',');
            num(&mut out, x);
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)
}

pub fn write_solution(path: &Path, sol: &PropagatorSolution) -> io::Result<()> {
    write_file(path, &solution_csv(sol))
}

pub fn write_history(path: &Path, sol: &PropagatorSolution) -> io::Result<()> {
    write_file(path, &history_csv(sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::HistoryRecord;

    fn tiny() -> PropagatorSolution {
        PropagatorSolution {
            p2: vec![0.01, 1.0],
            a: vec![1.5, 1.0],
            b: vec![0.25, 0.0],
            iterations: 1,
            converged: true,
            probes_p2: vec![1e-5, 1.0],
            history: vec![
                HistoryRecord {
                    iteration: 0,
                    max_delta_a: f64::NAN,
                    max_delta_b: f64::NAN,
                    probe_a: vec![1.0, 1.0],
                    probe_b: vec![1.0, 1.0],
                },
                HistoryRecord {
                    iteration: 1,
                    max_delta_a: 0.5,
                    max_delta_b: 0.75,
                    probe_a: vec![1.5, 1.0],
                    probe_b: vec![0.25, 0.0],
                },
            ],
        }
    }

    #[test]
    fn labels() {
        assert_eq!(probe_label(1e-5), "-2.5");
        assert_eq!(probe_label(1.0), "0");
        assert_eq!(probe_label(100.0), "1");
    }

    #[test]
    fn solution_rows() {
        let csv = solution_csv(&tiny());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "log10_p2,A,B");
        assert_eq!(lines.len(), 3);
        let row: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, vec![-2.0, 1.5, 0.25]);
    }

    #[test]
    fn history_rows() {
        let csv = history_csv(&tiny());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "iteration,max_delta_a,max_delta_b,A(log10p=-2.5),A(log10p=0),B(log10p=-2.5),B(log10p=0)"
        );
        assert!(lines[1].starts_with("0,nan,nan,"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn unwritable_path_errors() {
        let dir = std::env::temp_dir().join(format!("dse-out-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        // A directory cannot be written as a file.
        assert!(write_solution(&dir, &tiny()).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
