//! Numerical campaigns: configs, sweeps and persisted outputs.

mod config;
mod output;
mod runner;

pub use config::{
    label_to_site, preset, preset_fig3, preset_fig4, AnnealConfig, DeviceConfig, DriverConfig,
    DriverMode, ExperimentConfig, Frame, Labelling, LatticeConfig, OutputConfig, ProblemConfig,
    SolverConfig, RANDOM_DRIVER_RANGE, TABLE1_COEFFS,
};
pub use output::{
    emit_outputs, fidelity_csv, fidelity_svg, format_sig, index_csv, rwa_csv, summary_toml,
    version_string, Outputs, CSV_HEADER, INDEX_HEADER, SIGNIFICANT_DIGITS,
};
pub use runner::{
    driver_operator, prepare_run, problem_hamiltonian, run_fidelity_curve, run_obstruction_scan,
    run_rwa_convergence, step_size, PreparedRun, RunRecord, RwaPoint,
};
