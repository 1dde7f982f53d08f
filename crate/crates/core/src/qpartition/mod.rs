//! Partitions, q-series primitives, Rogers–Szegő polynomials, `h_λ`, and
//! one-parameter skew q-Whittaker / Hall–Littlewood functions.

mod identities;
mod partition;
mod qseries;
mod skew;

pub use identities::{cd_equiv_check, littlewood_check, mehler_check};
pub use partition::{partitions_of, partitions_up_to, Partition, PartitionChain, PartitionError};
pub use qseries::{pochhammer, pochhammer_inf, pochhammer_inf_inv, HPoly, QBase};
pub use skew::{b_hall_littlewood, b_qwhittaker, grow, skew_coefficient, skew_multi, skew_one_var, Family};
