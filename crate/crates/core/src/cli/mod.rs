//! Front end behind `fbcheck`: the identity registry, option resolution,
//! dumps and sampler output. The binary only parses arguments.

mod options;
mod output;
mod registry;

pub use options::{Alphabet, CliError, ParamValue, ParamsArg, RunOptions, MAX_ALPHABET, MAX_CAP};
pub use output::{dump_distribution, dump_series, dump_zn, layout, sample, SampleOutput, SERIES_KINDS};
pub use registry::{run, run_all, DEFAULT_SEED, IDENTITIES};
