use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{ExperimentConfig, Frame};
use super::runner::{RunRecord, RwaPoint};
use crate::dynamics::{DEFAULT_DEGENERACY_TOL, NORM_TOL, RK4_DRIFT_TOL};
use crate::error::{Error, Result};
use crate::symmetry::{SymmetryReport, DEFAULT_COMMUTATION_TOL, SECTOR_GAP_THRESHOLD};

pub const CSV_HEADER: &str = "time_ns,fidelity";
pub const INDEX_HEADER: &str = "case,frame,omega_ghz,final_fidelity,degeneracy,steps,file";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `git describe` of the build, or the package version outside a checkout.
pub fn version_string() -> &'static str {
    match option_env!("SPINLOCK_QA_GIT_DESCRIBE") {
        Some(v) if !v.is_empty() => v,
        _ => concat!("v", env!("CARGO_PKG_VERSION")),
    }
}

/// `printf("%.12g")`: 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (p as i32 - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn fidelity_csv(record: &RunRecord) -> String {
    let mut s = String::with_capacity(32 * record.times.len());
    s.push_str(CSV_HEADER);
    s.push('\n');
    for (t, f) in record.times.iter().zip(&record.fidelities) {
        let _ = writeln!(s, "{},{}", format_sig(*t), format_sig(*f));
    }
    s
}

pub fn index_csv(records: &[RunRecord]) -> String {
    let mut s = String::from(INDEX_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}.csv",
            r.case,
            r.frame.name(),
            format_sig(r.omega),
            format_sig(r.final_fidelity),
            r.degeneracy,
            r.diagnostics.steps,
            r.stem()
        );
    }
    s
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 400.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Fidelity against time, one polyline per record.
pub fn fidelity_svg(title: &str, records: &[&RunRecord]) -> String {
    let t_max = records
        .iter()
        .filter_map(|r| r.times.last().copied())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let (pw, ph) = (SVG_W - 2.0 * MARGIN, SVG_H - 2.0 * MARGIN);
    let x = |t: f64| MARGIN + pw * t / t_max;
    let y = |f: f64| SVG_H - MARGIN - ph * f;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#,
        SVG_W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<path d="M{MARGIN} {MARGIN} V{} H{}" fill="none" stroke="black"/>"#,
        SVG_H - MARGIN,
        SVG_W - MARGIN
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{f}</text>"#,
            MARGIN - 6.0,
            y(f) + 4.0
        );
        let t = t_max * f;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            x(t),
            SVG_H - MARGIN + 16.0,
            format_sig(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">time (ns)</text>"#,
        SVG_W / 2.0,
        SVG_H - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">fidelity</text>"#,
        SVG_H / 2.0,
        SVG_H / 2.0
    );
    for (i, r) in records.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = r
            .times
            .iter()
            .zip(&r.fidelities)
            .map(|(&t, &f)| format!("{:.2},{:.2}", x(t), y(f)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            points.join(" ")
        );
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">ω = {} GHz</text>"#,
            SVG_W - MARGIN - 110.0,
            SVG_W - MARGIN - 90.0,
            SVG_W - MARGIN - 84.0,
            ly + 4.0,
            format_sig(r.omega)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[derive(Serialize)]
struct Tolerances {
    norm: f64,
    rk4_norm_drift: f64,
    degeneracy: f64,
    commutation: f64,
    sector_gap: f64,
}

#[derive(Serialize)]
struct RecordSummary<'a> {
    case: &'a str,
    frame: Frame,
    omega: f64,
    final_fidelity: f64,
    degeneracy: usize,
    epsilon: f64,
    delta_g: f64,
    g: f64,
    wall_time_s: f64,
    diagnostics: &'a crate::dynamics::SolverDiagnostics,
}

#[derive(Serialize)]
struct Summary<'a> {
    version: &'a str,
    tolerances: Tolerances,
    configs: &'a [ExperimentConfig],
    runs: Vec<RecordSummary<'a>>,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    rwa_convergence: &'a [RwaPoint],
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    symmetry: Vec<ReportSummary<'a>>,
}

#[derive(Serialize)]
struct ReportSummary<'a> {
    case: &'a str,
    operator: &'a str,
    driver_residual: f64,
    problem_residual: f64,
    initial_sector: f64,
    target_sector: f64,
    target_per_state: &'a [f64],
    target_mixed: bool,
    obstructed: bool,
}

/// Everything one CLI invocation produced.
#[derive(Default)]
pub struct Outputs {
    pub configs: Vec<ExperimentConfig>,
    pub records: Vec<RunRecord>,
    pub rwa: Vec<RwaPoint>,
    /// `(case, reports)` pairs.
    pub symmetry: Vec<(String, Vec<SymmetryReport>)>,
}

pub fn summary_toml(out: &Outputs) -> Result<String> {
    let summary = Summary {
        version: version_string(),
        tolerances: Tolerances {
            norm: NORM_TOL,
            rk4_norm_drift: RK4_DRIFT_TOL,
            degeneracy: out
                .configs
                .first()
                .map_or(DEFAULT_DEGENERACY_TOL, |c| c.solver.degeneracy_tol),
            commutation: DEFAULT_COMMUTATION_TOL,
            sector_gap: SECTOR_GAP_THRESHOLD,
        },
        configs: &out.configs,
        runs: out
            .records
            .iter()
            .map(|r| RecordSummary {
                case: &r.case,
                frame: r.frame,
                omega: r.omega,
                final_fidelity: r.final_fidelity,
                degeneracy: r.degeneracy,
                epsilon: r.params.epsilon,
                delta_g: r.params.delta_g,
                g: r.params.g,
                wall_time_s: r.wall_time_s,
                diagnostics: &r.diagnostics,
            })
            .collect(),
        rwa_convergence: &out.rwa,
        symmetry: out
            .symmetry
            .iter()
            .flat_map(|(case, reports)| {
                reports.iter().map(move |r| ReportSummary {
                    case,
                    operator: &r.label,
                    driver_residual: r.driver_residual,
                    problem_residual: r.problem_residual,
                    initial_sector: r.initial_sector,
                    target_sector: r.target_sector,
                    target_per_state: &r.target.per_state,
                    target_mixed: r.target.mixed,
                    obstructed: r.obstructed,
                })
            })
            .collect(),
    };
    toml::to_string(&summary).map_err(|e| Error::Config(format!("summary serialisation: {e}")))
}

pub fn rwa_csv(points: &[RwaPoint]) -> String {
    let mut s = String::from("omega_ghz,trace_distance,lab_fidelity,rwa_fidelity\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            format_sig(p.omega),
            format_sig(p.trace_distance),
            format_sig(p.lab_fidelity),
            format_sig(p.rwa_fidelity)
        );
    }
    s
}

/// Writes per-run CSVs, `index.csv`, one SVG per (case, frame), and `summary.toml`.
///
/// Returns the written paths in write order.
pub fn emit_outputs(out: &Outputs, dir: &Path, svg: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut put = |name: String, contents: String| -> Result<()> {
        let path = dir.join(name);
        write_file(&path, &contents)?;
        written.push(path);
        Ok(())
    };
    for r in &out.records {
        put(format!("{}.csv", r.stem()), fidelity_csv(r))?;
    }
    put("index.csv".into(), index_csv(&out.records))?;
    if svg {
        let mut groups: Vec<(&str, Frame)> = Vec::new();
        for r in &out.records {
            if !groups.contains(&(r.case.as_str(), r.frame)) {
                groups.push((r.case.as_str(), r.frame));
            }
        }
        for (case, frame) in groups {
            let members: Vec<&RunRecord> = out
                .records
                .iter()
                .filter(|r| r.case == case && r.frame == frame)
                .collect();
            put(
                format!("{case}_{}.svg", frame.name()),
                fidelity_svg(&format!("{case} ({} frame)", frame.name()), &members),
            )?;
        }
    }
    if !out.rwa.is_empty() {
        put("rwa_convergence.csv".into(), rwa_csv(&out.rwa))?;
    }
    put("summary.toml".into(), summary_toml(out)?)?;
    Ok(written)
}
