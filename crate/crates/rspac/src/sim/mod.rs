//! Monte-Carlo BER/FER/ANV measurement: channel model, configuration,
//! the seeded runner, and CSV emission.

pub mod channel;
pub mod config;
pub mod record;
pub mod runner;

pub use channel::{awgn_llrs, bpsk_modulate, q_function, ChannelSpec};
pub use config::{SchemeKind, SimConfig};
pub use record::{parse_csv, render_csv, write_csv, SimRecord, CSV_HEADER};
pub use runner::{run_all, run_point, SchemeInstance};
