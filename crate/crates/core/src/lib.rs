//! Exact and statistical tools for elementary cellular automaton 18.
//!
//! Rule 18 maps the neighbourhoods `001` and `100` to 1 and everything else to
//! 0. Its persistent defects are *kinks*, occurrences of `1 0^{2k} 1`. This
//! crate steps words and configurations, classifies words by their kinks,
//! enumerates preimages and kink-preserving extensions, runs a battery of
//! bounded-scale checks of the combinatorial facts about kinks, and measures
//! kink density decay from uniformly random configurations.

pub mod classes;
pub mod config;
pub mod density;
pub mod dynamics;
pub mod error;
pub mod extension;
pub mod kink;
pub mod oracle;
pub mod preimage;
pub mod render;
pub mod word;

pub use classes::{classify_stability, in_b, in_p, is_left_kink_word, is_stable, reverse, StabilityClass};
pub use config::{step_cyclic, step_support, CyclicConfig, FiniteSupportConfig};
pub use density::{density_trajectory, fit_power_law, word_frequency_trajectory, DensitySeries, PowerLawFit};
pub use dynamics::{iterate_word, rule18_local, rule90_local, step_word, step_word_scalar, Rule};
pub use error::{Error, Result};
pub use extension::{check_stable_extension, enumerate_extensions, unique_lift, ExtensionFamily, StableExtensionReport};
pub use kink::{count_kinks, count_kinks_cyclic, find_kinks, kink_parity, two_kink_decompose, KinkOccurrence, TwoKinkDecomposition};
pub use oracle::{run_all, run_all_with, OracleReport, Profile, Status};
pub use preimage::{preimage_depth, preimages, two_kink_preimage, PreimageSet};
pub use render::{render_spacetime, Geometry, RenderFormat, SpacetimeDiagram};
pub use word::Word;
