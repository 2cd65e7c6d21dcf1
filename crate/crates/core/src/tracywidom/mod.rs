//! Tracy-Widom distributions for β = 1, 2, 4 from the Hastings-McLeod
//! solution of Painlevé II, plus an independent Fredholm determinant route
//! for β = 2.

pub mod airy;
pub mod distribution;
pub mod fredholm;
pub mod painleve;

pub use airy::airy;
pub use distribution::{default_solution, tw_cdf, tw_distribution, tw_pdf, GseConvention, TWDistribution, TwValue};
pub use fredholm::{fredholm_f2_oracle, FredholmEstimate};
pub use painleve::{solve_hastings_mcleod, PainleveSolution};
