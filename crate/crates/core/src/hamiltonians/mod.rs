//! Hamiltonian builders: conventional and spin-lock annealing, the lab-frame
//! flux-qubit register, its rotated and rotating-wave forms, device mapping
//! and annealing schedules.

mod builders;
mod device;
mod models;
mod schedule;

pub use builders::{
    conventional_qa_hamiltonian, driver_hamiltonian, effective_hamiltonian, frame_rotation,
    lab_frame_hamiltonian, lab_frame_operator, pauli_coefficient, rotated_hamiltonian,
    spin_lock_driver, xxz_hamiltonian, XxzParams,
};
pub use device::{
    map_device, map_xxz_exact, map_xxz_to_device, DeviceMapping, DeviceParams, UnitConvention,
};
pub use models::{ConventionalModel, LabFrameModel, RotatingFrameModel};
pub use schedule::{schedule_linear, Schedule, ScheduleDirection};
